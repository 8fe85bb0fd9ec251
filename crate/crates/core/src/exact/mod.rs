//! Exact arithmetic kernel: polynomials, fractional-exponent polynomials with
//! the integral projector, cyclotomic-denominator rational functions, and
//! polynomials in `u, v`.

pub mod bipoly;
pub mod cyclotomic;
pub mod frac;
pub mod poly;
pub mod rational;

pub use bipoly::{mirror_transform, BiPoly};
pub use frac::{integral_project, reynolds_factor_property, FracPoly, FracRational};
pub use poly::Poly;
pub use rational::{rational_from_counts, RationalT};
