//! Stringy E-functions of Calabi-Yau hypersurfaces in weighted projective
//! spaces, their mirror orbifold E-functions, and exact checks that the two
//! agree.
//!
//! Arithmetic is exact throughout. The core routines are generic over a
//! [`Scalar`] coefficient field; the aliases below fix it to big rationals.

pub mod efunction;
pub mod error;
pub mod exact;
pub mod face;
pub mod orbifold;
pub mod scalar;
pub mod stringy;
pub mod verify;
pub mod weights;

pub use efunction::EFunction;
pub use error::{Error, Result};
pub use face::{face_e, psi, FaceEPolynomial};
pub use orbifold::{
    mirror_orbifold_e, q_identity_check, vafa_euler, vafa_poincare, OrbifoldEResult,
};
pub use scalar::Scalar;
pub use stringy::{
    bracket, hodge_table, stringy_e, stringy_e_per_l, stringy_euler, HodgeTable,
};
pub use verify::{per_l_check, verify, VerificationReport};
pub use weights::{FaceSet, OrbifoldElement, WeightVector};

/// Default coefficient field: arbitrary precision rationals.
pub type Q = num_rational::BigRational;

pub type Poly = exact::Poly<Q>;
pub type BiPoly = exact::BiPoly<Q>;
pub type RationalT = exact::RationalT<Q>;
pub type FracPoly = exact::FracPoly<Q>;
pub type EFn = EFunction<Q>;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
