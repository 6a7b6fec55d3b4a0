//! Conformable fractional Laplace transform calculus.
//!
//! The transform `L_0^α{f}(s) = ∫₀^∞ e^{-s t^α/α} f(t) t^{α-1} dt` reduces to
//! the classical Laplace transform of `f ∘ φ⁻¹` under the substitution
//! `u = t^α/α`, where `φ(t) = t^α/α`. This crate builds a numeric calculus
//! on that bridge:
//!
//! - [`calculus`]: orders, substitution maps, conformable derivative and
//!   integral operators.
//! - [`transform`]: the forward transform, the closed-form pair table, and
//!   checkers for the transform identities (properties, derivative and
//!   integral rules, initial/final value theorems).
//! - [`inverse`]: inversion by the substitution bridge, by numeric Bromwich
//!   contour, and by exact residue summation for rational transforms.
//! - [`conv`]: the fractional convolution, weighted norms, and the algebra,
//!   Young and convolution-theorem checks.
//! - [`diffusion`]: closed-form evaluators for four fractional
//!   initial-boundary value problems.
//! - [`fd`]: independent finite-difference solvers used to validate the
//!   closed forms.
//! - [`expr`]: the CLI expression grammar (`u` denotes t^α/α).
//! - [`verify`]: the named invariant suites behind `confract verify`.
//!
//! Run `cargo run --example inversion` (or any other file under
//! `examples/`) for worked end-to-end usage, or the `confract` binary for
//! the command-line front end.

// Guards written as `!(x > 0.0)` are deliberate: they reject NaN along
// with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod calculus;
pub mod conv;
pub mod diffusion;
pub mod error;
pub mod expr;
pub mod fd;
pub mod inverse;
pub mod poly;
pub mod quad;
pub mod special;
pub mod transform;
pub mod verify;

pub mod cli;

pub use calculus::{FractionalOrder, GrowthBound, SubstitutionMap, TimeFunction};
pub use error::{Error, Result};
pub use quad::{QuadScheme, QuadratureSpec};
