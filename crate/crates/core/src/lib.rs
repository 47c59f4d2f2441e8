//! Exact analysis of planar polynomial differential systems.
//!
//! The crate builds up, in layers:
//!
//! * [`poly`] — sparse multivariate polynomials over arbitrary-precision
//!   rationals, with a canonical graded-reverse-lexicographic term order,
//!   an expression parser and a stable JSON form;
//! * [`roots`] — Sturm-sequence real-root isolation and exact real
//!   algebraic numbers (defining polynomial + isolating interval);
//! * [`ideals`] — Buchberger's algorithm, normal forms, radical-membership
//!   via the auxiliary-variable trick, and ideal intersection;
//! * [`lyapunov`] — Lyapunov constants of a monodromic equilibrium through
//!   a truncated formal first integral, plus reversibility and weak-focus
//!   order helpers;
//! * [`compactify`] — Poincaré compactification local charts and the
//!   equilibria on the circle at infinity;
//! * [`desing`] — blow-up desingularization: characteristic directions,
//!   twists, time rescalings, semi-hyperbolic series classification and a
//!   depth-limited local-portrait resolver;
//! * [`globalcenter`] — the decision pipeline for centers whose period
//!   annulus covers the whole plane, specialized to a quintic family;
//! * [`portrait`] — adaptive Runge–Kutta orbit integration, Poincaré
//!   section bookkeeping and deterministic SVG phase portraits on the
//!   Poincaré disc.
//!
//! Every symbolic computation is exact; floating point appears only in
//! [`portrait`]. The `examples/` directory contains one runnable example
//! per capability, and the single `planar-centers` binary exposes the same
//! operations as subcommands.

pub mod checks;
pub mod cli;
pub mod compactify;
pub mod config;
pub mod desing;
pub mod field2;
pub mod fixtures;
pub mod globalcenter;
pub mod ideals;
pub mod jsonio;
pub mod lyapunov;
pub mod parse;
pub mod poly;
pub mod portrait;
pub mod roots;
pub mod system;
pub mod vars;

pub use poly::{MultiPoly, PolyError, Rat};
pub use system::PlanarSystem;
pub use vars::VariableTable;
