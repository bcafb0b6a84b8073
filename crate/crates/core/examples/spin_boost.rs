use qfract::clifford::exp_boost;
use qfract::conformal::{act, stereo_project, SpinBoost};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alpha = 0.6;
    let n = vec![0.0, 0.0, 1.0];
    let b = SpinBoost::new(alpha, n.clone())?;
    println!("rapidity η = {:.6}, exp route agrees: {:.1e}", b.rapidity(),
        exp_boost(b.rapidity(), &n)?.distance(&b.multivector()));

    let x = [0.6, 0.0, -0.8];
    let closed = b.apply(&x);
    let clifford = act(&b.multivector(), &x)?;
    let lorentz = b.lorentz().apply(&x);
    println!("x'  closed form {closed:?}");
    println!("    Clifford    {clifford:?}");
    println!("    Lorentz     {lorentz:?}");
    println!("ρ(x) = {:.6}, surface RN = {:.6}, volume RN = {:.6}",
        b.conformal_factor(&x), b.rn_surface(&x), b.rn_volume(&[0.1, 0.2, 0.3]));

    let before = stereo_project(&n, &x)?;
    let after = stereo_project(&n, &closed)?;
    println!("stereographic dilation {:.6} (expected {:.6})",
        after[0] / before[0], (1.0 + alpha) / (1.0 - alpha));
    Ok(())
}
