pub mod algebra;
pub mod audit;
pub mod calculus;
pub mod cli;
pub mod dirac;
pub mod fixtures;
pub mod linalg;
pub mod qparams;
pub mod riemannian;
pub mod scalars;
pub mod verify;
