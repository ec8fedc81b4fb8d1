//! Majority closures of symmetric tournament families.
//!
//! Given a generator tournament `d*`, its relabeling orbit is a symmetric
//! family of voter preference patterns. This crate decides which target
//! tournaments arise as the strict pairwise majority of some finite profile
//! drawn from that family, and builds explicit profiles when they do.
//!
//! * [`tournament`]: tournaments, relabelings, valencies and valency point sets.
//! * [`table`]: fractional pair tables, weighted profiles and the gadget tables.
//! * [`characterize`]: the membership decision.
//! * [`lp`]: exact rational simplex, hull membership and the valency-point witness.
//! * [`synth`]: voter-profile synthesis and the McGarvey baseline.
//! * [`oracle`]: independent LP oracle, enumeration and cross-validation.
//! * [`format`]: text file formats.

pub mod characterize;
pub mod error;
pub mod format;
pub mod lp;
pub mod oracle;
pub mod synth;
pub mod table;
pub mod tournament;

pub use characterize::{decide_membership, CycleCertificate, CycleCover, Decision, Reason};
pub use error::{Error, Result};
pub use lp::{find_f_witness, hull_membership_2d, lp_solve, FWitness, LinearProgram, LpOutcome};
pub use oracle::{cross_validate, oracle_membership, profile_majority, ValidationReport};
pub use synth::{mcgarvey_profile, synthesize, IntegerProfile};
pub use table::{FractionalTable, WeightedProfile};
pub use tournament::{Permutation, PointSet2D, Tournament};

/// Exact rational numbers with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn half() -> Rational {
    rat(1, 2)
}
