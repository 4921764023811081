//! Sparse linear sensor arrays with contiguous sum co-arrays.
//!
//! The crate covers four layers:
//!
//! - [`coarray`] and [`metrics`]: exact integer-set algebra for sum and difference
//!   co-arrays, and the figures of merit (contiguous DoFs, redundancy, `S(d)`, and the
//!   exact spacing regularizer used for tie-breaking).
//! - [`constructions`]: nested, concatenated nested (CNA), Kløve-Mossige (KMA) and
//!   Kløve (KA) arrays, the symmetric generator framework `G ∪ (max G - G + λ)` with
//!   its contiguity conditions, and reduced-redundancy arrays.
//! - [`optimize`]: minimum-redundancy parameters in closed form and by search,
//!   including exhaustive minimum-redundancy array (MRA) search.
//! - [`sensing`]: the active-sensing measurement model and OMP scatterer recovery.

pub mod array;
pub mod asymptotic;
pub mod coarray;
pub mod constructions;
pub mod error;
pub mod metrics;
pub mod optimize;
pub mod sensing;

pub use array::SensorArray;
pub use coarray::{contiguous_dof, diff_coarray, first_hole, sum_coarray, CoArray, CoArrayKind, ContiguousRun};
pub use constructions::{KloveParams, NestedParams, RraParams, ShiftedGenerator};
pub use error::{Error, Result};
pub use metrics::{metrics, varsigma, ArrayMetrics, Varsigma};
