//! Exact spectral-synthesis workbench on the groups `Z^d`.

pub mod algebra;
pub mod derivations;
pub mod error;
pub mod exppoly;
pub mod fourier;
pub mod groebner;
pub mod ideals;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod synthesis;
pub mod univariate;
pub mod verify;

pub use algebra::{Exponential, GroupElement, Measure};
pub use error::{Error, Result};
pub use exppoly::ExpPolynomial;
pub use fourier::LaurentPoly;
pub use ideals::IdealHandle;
pub use poly::Polynomial;
pub use scalar::Scalar;
