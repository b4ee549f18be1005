//! Exact integrating factors for first-order ODEs `y' = M(x,y)/N(x,y)` with
//! polynomial `M`, `N`.
//!
//! The pipeline: parse an ODE ([`parse`]), search for Darboux polynomials of
//! the field operator `D = N ∂x + M ∂y` ([`darboux`]), then solve for an
//! integrating factor of the form `R = e^{r0} · ∏ p_i^{c_i}` ([`psengine`])
//! and certify it symbolically and numerically ([`verify`]).
//!
//! All symbolic computation is over exact rationals; floating point only
//! appears in the numeric cross-checks of [`verify`].

pub mod arith;
pub mod darboux;
pub mod linalg;
pub mod parse;
pub mod psengine;
mod univar;
pub mod verify;

pub use arith::{Monomial, Poly, Rational, RationalFunction};
pub use darboux::{DarbouxPair, VectorField};
pub use psengine::IntegratingFactor;
