//! Constructive decomposition of irreducible characters of unit groups as
//! characters induced from linear characters of unit groups of subalgebras,
//! with the supporting computations and an exhaustive cross-check.

mod brute;
mod certify;
mod decompose;
mod frame;
mod report;
mod sigma;

pub use brute::{verify_gutkin_brute, BruteReport, BruteWitness};
pub use certify::{certify_stabilizer_subalgebra, diag_centraliser};
pub use decompose::{as_linear, gutkin_decompose, Branch, ChainStep, GutkinWitness};
pub use frame::Frame;
pub use report::{BruteSummary, GutkinReport, LambdaRecord, WitnessChecks, WitnessRecord, REPORT_SCHEMA};
pub use sigma::{
    extend_character, ideal_intersection_test, j_sigma, largest_ideal_within, phi_sigma, scalar_relation_holds,
    sigma_instances, Extensions, SigmaData,
};
