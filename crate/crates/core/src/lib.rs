//! Exact conjugacy machinery for one-bump piecewise-linear homeomorphisms of `[0, 1]`.
//!
//! * [`pl`]: the maps themselves, with exact composition, inversion, powers
//!   and classification relative to the diagonal.
//! * [`stair`]: linearity boxes and the stair algorithm, which builds the
//!   unique candidate conjugator of a prescribed initial slope.
//! * [`mather`]: Mather invariants as exact equivariant germs, and the
//!   rotation-equivalence test between them.
//! * [`solver`]: conjugacy decisions with certificates, centralizers, roots.
//!
//! All arithmetic is over arbitrary-precision rationals; every positive
//! answer comes with a certificate that is checked by exact map equality.

pub mod error;
pub mod mather;
pub mod pl;
#[cfg(feature = "random")]
pub mod random;
pub mod rat;
pub mod solver;
pub mod stair;

pub use error::{EndSlopes, Error, Result};
pub use mather::{
    germ_breakpoint_classes, germ_eval, mather_invariant, mather_invariant_with,
    rotation_equivalences, rotation_equivalent, MatherGerm, RotationPair,
};
pub use pl::{BumpClass, FixedSet, PlMap, Point, Polyline};
pub use rat::{rat, Rat};
pub use solver::{
    are_conjugate, centralizer_generator, nth_root, slope_exponent, CentralizerDescription,
    ConjugacyOutcome, NonConjugacy, RootOutcome,
};
pub use stair::{
    canonical_seed, conjugates_powers, conjugator_with_slope, identification_step, linearity_boxes,
    stair_candidate, stair_candidate_with_seed, stair_run, stair_steps, verify_conjugator,
    LinearityBoxes, Side, StairRun,
};
