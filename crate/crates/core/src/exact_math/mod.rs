//! Prime-field and cyclotomic arithmetic, and echelon linear algebra over `F_p`.

mod cyclotomic;
mod fp;
mod matrix;

pub use cyclotomic::{cyc_normalize, cyclotomic_polynomial, euler_phi, Cyclotomic};
pub use fp::{is_prime, Fp, PrimeField, SUPPORTED_PRIMES};
pub use matrix::{solve_echelon, EchelonForm, Matrix};
