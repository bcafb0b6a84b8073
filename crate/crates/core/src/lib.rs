pub mod clifford;
pub mod tol;
pub mod conformal;
pub mod polytopes;
pub mod ifs;
pub mod markov;
pub mod fracdim;
pub mod verify;
pub mod cli;
