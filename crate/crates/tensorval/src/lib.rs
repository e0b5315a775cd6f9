//! Exact and Monte Carlo verification of integral-geometric identities for
//! Minkowski tensors of convex polytopes in dimensions 2 and 3.
//!
//! The crate has three layers:
//!
//! * exact scalar and tensor algebra ([`coefficients`], [`symtensor`]);
//! * a polytope geometry backend with full face lattices, normal cones,
//!   clipping and flat sections ([`polytope`]);
//! * valuations (Minkowski tensors, total generalized tensorial curvature
//!   measures, McMullen identities, closed-form kinematic/Crofton right-hand
//!   sides) in [`valuations`], with seeded Monte Carlo counterparts of the
//!   motion-group and flat integrals in [`mc`].
//!
//! The `tensorval` binary drives configuration-based verification suites on
//! top of these layers ([`harness`]).

pub mod coefficients;
pub mod harness;
pub mod mc;
pub mod polytope;
pub mod symtensor;
pub mod valuations;
