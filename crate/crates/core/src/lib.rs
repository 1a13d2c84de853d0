//! Exact-arithmetic verification toolkit for two bielliptic modular curves.
//!
//! The library recomputes, from scratch and in exact arithmetic, the models,
//! torsion subgroups and quadratic points of the genus-2 curves X1(13) (over
//! the totally real sextic field K) and X0(37) (over Q), together with the
//! family of elliptic curves with 37-isogenies over quadratic fields that the
//! second curve parameterizes.
//!
//! Layering, bottom up:
//! - [`arith`]: rationals, the sextic field K, quadratic extensions, finite
//!   fields, square roots, factorization mod p.
//! - [`poly`]: dense univariate polynomials over any supported exact field,
//!   Moebius transforms, resultants, the even-model linear solves.
//! - [`ellcurve`]: general Weierstrass curves, group law, division polynomials.
//! - [`genus2`]: split-model genus-2 Jacobian arithmetic in balanced Mumford
//!   form, point counting, L-polynomials.
//! - [`bielliptic`]: even models, genus-1 quotients and fiberwise pullback.
//! - [`pipelines`]: the end-to-end verification suites and the quadratic-point
//!   table generator, plus report serialization.
//! - [`cli`]: the command-line front end over the pipelines.

pub mod arith;
pub mod bielliptic;
pub mod cli;
pub mod ellcurve;
pub mod genus2;
pub mod pipelines;
pub mod poly;
