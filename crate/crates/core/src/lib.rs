//! Exact symbolic engine for characteristic classes of super vector bundles.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`]: the coefficient ring `Q[P]/(P^2 - 1)` ([`SuperScalar`]).
//! * [`chowring`]: truncated graded rings for a point, a curve and `P^r`.
//! * [`bundle`]: split super vector bundles given by formal Chern roots, with
//!   Chern character, total Chern class, Todd class and `sigma_1`.
//! * [`ktheory`]: K-classes through their Chern character, the map `j`, the
//!   twisted product and the twisted Chern character.
//! * [`grr`]: Riemann-Roch on split supercurves of dimension 1|1, computed
//!   through the Todd class and through componentwise curve Riemann-Roch.
//! * [`modulidim`]: virtual dimension of the stack of stable supermaps.
//! * [`suite`]: seeded randomized identity suites shared by the CLI and tests.
//!
//! All arithmetic is exact over big rationals.

pub mod bundle;
pub mod chowring;
pub mod error;
pub mod grr;
pub mod ktheory;
pub mod modulidim;
pub mod scalar;
pub mod suite;

pub use bundle::SuperBundle;
pub use chowring::{ChowModel, GradedElement};
pub use error::{Error, Result};
pub use grr::{SplitSupercurve, SuperEuler};
pub use ktheory::{KClass, NormalData};
pub use modulidim::{
    ModuliParams, OddPartConvention, Properness, SuperCycleClass, TargetSpec, VdimReport,
};
pub use scalar::{Rational, SuperScalar};
