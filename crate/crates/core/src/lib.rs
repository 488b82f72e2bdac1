//! Local fractional vector calculus on Cantor-type coordinates in the
//! algebra of complex quaternions.
//!
//! The crate has an exact symbolic side and a numeric side:
//!
//! - [`expr`] parses the expression language and [`canonical`] reduces it
//!   to a unique normal form, so identities are checked by equality of maps.
//! - [`derivative`] differentiates symbolically; [`vector_ops`] and
//!   [`operators`] build grad, div, curl, the Moisil-Teodorescu operator,
//!   Laplacians, the Bitsadze operator and Helmholtz residuals on top.
//! - [`verify`] checks the operator identities on the fully abstract field.
//! - [`special`] and [`numeric`] evaluate the fractal special functions and
//!   canonical expressions at points.

pub mod canonical;
pub mod coeff;
pub mod derivative;
pub mod expr;
pub mod field_doc;
pub mod frame;
pub mod numeric;
pub mod operators;
pub mod par;
pub mod quaternion;
pub mod special;
pub mod vector_ops;
pub mod verify;

pub use canonical::{equal, normalize, CanonicalExpr, NormalizeError};
pub use coeff::{Coeff, GaussRational};
pub use derivative::{d_alpha, d_alpha_gamma, nth_d_alpha, DerivativeMode, JPolynomial};
pub use expr::{parse, ComponentSymbol, Expr, ParseError};
pub use frame::{Frame, Var};
pub use operators::{bitsadze, helmholtz_residual, laplacian, mt_apply, Lambda, Operator, Side};
pub use quaternion::ComplexQuaternion;
pub use special::Alpha;
pub use vector_ops::{curl_alpha, div_alpha, grad_alpha, QuaternionField};
pub use verify::{verify_identity, IdentityName, IdentityReport};
