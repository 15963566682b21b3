//! Pseudo-unitary tools for free relativistic particle-antiparticle pairs.
//!
//! The crate models a four-dimensional complex space split into a particle
//! and an antiparticle sector. States are row vectors acted on from the
//! right; every operator carries intrinsic, covariant and adjoint entry
//! arrays that interconvert through scalar sector metrics. On top of that
//! sit pseudo-Hermitian observables with real spectra, projective
//! measurements, state and evolution machinery, density operators with
//! entropy accounting, ordered multi-factor composites, a pseudo-unitary
//! group layer with two matrix realizations and translation dressing, and
//! frame-correlation transforms that tell invariant structure apart from
//! frame-dependent bookkeeping.
//!
//! [`verify`] packages every structural law as a measurable check so a
//! build can certify itself numerically.

pub mod cartan;
pub mod correlations;
pub mod density;
pub mod error;
pub mod group;
pub mod measurement;
pub mod numerics;
pub mod observables;
pub mod sampling;
pub mod states;
pub mod verify;

pub use error::{Error, Result};
