//! Exact simulation of passive linear-optical Bell measurements assisted by
//! single-photon ancillae.
//!
//! States are sparse polynomials in creation operators with coefficients in
//! Q(i, √2) ([`field::Amplitude`]), evolved through balanced beam-splitter
//! networks ([`interferometer`]) with no floating point. Outcome
//! probabilities come out as exact rationals, so success probabilities such
//! as 3/4, 7/8 and 25/32 are checked by equality.
//!
//! The main entry points:
//!
//! - [`states`]: Bell states, arm states, the ancillae `Υ_j`, and the
//!   `Ξ`/`Γ` decomposition components.
//! - [`schemes`]: the simple, arm, full and 25/32 measurement schemes and
//!   their success reports.
//! - [`discrimination`]: brute-force unambiguous classifiers, the parity
//!   decision rule, block-set parities and the propagation lemma check.
//! - [`imperfections`]: lossy sources and detectors, symbolic in the
//!   efficiencies.
//! - [`checks`]: the named verification suites behind `fockbell verify`.
//!
//! Runnable walkthroughs live in this crate's `examples/` directory.

pub mod checks;
pub mod discrimination;
pub mod error;
pub mod field;
pub mod fock;
pub mod imperfections;
pub mod interferometer;
pub mod labels;
pub mod permanent;
pub mod report;
pub mod schemes;
pub mod states;

pub use error::{Error, Result};
pub use field::{Amplitude, GaussianRational, Rational, RealSqrt2};
pub use fock::{amp_norm_sq, Convention, Limits, Occupation, SparseState};
pub use interferometer::{beam_splitter, build_s, evolve, permanent_amplitude, Interferometer};
pub use labels::{ArmLabel, BellLabel, Label, Sign};
