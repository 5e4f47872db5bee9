//! Verification toolkit for generalized multi-qubit Hardy paradoxes on GHZ
//! states.
//!
//! A paradox instance `[n;ka,kb]` demands that every size-`ka` subset
//! measured with `b` (and every size-`kb` subset measured with `b̄`, the
//! rest with `a`) succeeds with probability zero, which classically forces
//! the all-`a` event to probability zero as well — while the GHZ state under
//! solved equatorial settings gives it strictly positive probability. The
//! crate computes the quantum side exactly from state vectors, certifies the
//! classical side by exhaustive deterministic-strategy enumeration, evaluates
//! the accompanying inequality on theory or measured probability tables with
//! counting-statistics error propagation, and analyzes white-noise
//! robustness and polytope tightness.
//!
//! Modules:
//! - [`qstate`]: GHZ state vectors, rank-1 projectors, joint probabilities.
//! - [`scenario`]: scenario bounds and symbolic projector strings.
//! - [`settings`]: the measurement-direction solver and wave-plate angles.
//! - [`inequality`]: the F coefficient and inequality evaluation.
//! - [`lhv`]: strategy enumeration, classical bound, paradox and facet tests.
//! - [`noise`]: white-noise visibility thresholds.
//! - [`ingest`]: coincidence-count files, estimates, witness/fidelity.
//! - [`reference`]: the benchmark tables and reported values.

pub mod error;
pub mod inequality;
pub mod ingest;
pub mod lhv;
pub mod noise;
pub mod qstate;
pub mod reference;
pub mod scenario;
pub mod settings;

pub use error::{Error, Result};
pub use scenario::{ProjectorString, Rational, Scenario, Symbol};
