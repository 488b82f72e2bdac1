//! Symbolic local fractional differentiation.
//!
//! Two semantics are available and never mixed within one computation:
//!
//! - [`DerivativeMode::Derivation`] (default): `D` is a derivation, with the
//!   sum, product and quotient rules and `D[P(v,n)] = n P(v,n-1)`. All frame
//!   operators and identity checks use this mode.
//! - [`DerivativeMode::GammaNormalized`]: the index shift
//!   `D[J_n] = J_(n-1)` on `J_n(x) = x^(n alpha) / Gamma(1 + n alpha)`, linear
//!   only. Combining it with the product rule is inconsistent for
//!   `alpha < 1`; see [`gamma_leibniz_conflict`].

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical::{normalize, CanonicalExpr, NormalizeError};
use crate::coeff::GaussRational;
use crate::expr::Expr;
use crate::frame::Var;
use crate::special::{gamma_one_plus, shift_coefficients, Alpha, JSeries, SeriesError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DerivativeMode {
    #[default]
    Derivation,
    #[serde(rename = "gamma")]
    GammaNormalized,
}

impl fmt::Display for DerivativeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DerivativeMode::Derivation => "derivation",
            DerivativeMode::GammaNormalized => "gamma",
        })
    }
}

impl FromStr for DerivativeMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "derivation" => Ok(DerivativeMode::Derivation),
            "gamma" => Ok(DerivativeMode::GammaNormalized),
            other => Err(format!(
                "unknown mode `{other}` (expected derivation or gamma)"
            )),
        }
    }
}

/// Applies the sum, product, quotient and generator rules to the tree.
pub fn differentiate_tree(e: &Expr, v: Var) -> Expr {
    let zero = || Expr::int(0);
    match e {
        Expr::Number(_) | Expr::Lambda => zero(),
        Expr::Power { var, exp } if *var == v => {
            Expr::product(Expr::int((*exp).into()), Expr::power(v, exp - 1))
        }
        Expr::Sin(var) if *var == v => Expr::Cos(v),
        Expr::Cos(var) if *var == v => Expr::negation(Expr::Sin(v)),
        Expr::Exp { scale, var } if *var == v => Expr::product((**scale).clone(), e.clone()),
        Expr::Power { .. } | Expr::Sin(_) | Expr::Cos(_) | Expr::Exp { .. } => zero(),
        Expr::Component(sym) => Expr::Component(sym.with_derivative(v, 1)),
        Expr::Neg(a) => Expr::negation(differentiate_tree(a, v)),
        Expr::Add(a, b) => Expr::sum(differentiate_tree(a, v), differentiate_tree(b, v)),
        Expr::Sub(a, b) => Expr::difference(differentiate_tree(a, v), differentiate_tree(b, v)),
        Expr::Mul(a, b) => Expr::sum(
            Expr::product(differentiate_tree(a, v), (**b).clone()),
            Expr::product((**a).clone(), differentiate_tree(b, v)),
        ),
        Expr::Div(a, b) => Expr::quotient(
            Expr::difference(
                Expr::product(differentiate_tree(a, v), (**b).clone()),
                Expr::product((**a).clone(), differentiate_tree(b, v)),
            ),
            Expr::pow((**b).clone(), 2),
        ),
        Expr::Pow(a, n) => match n {
            0 => zero(),
            n => Expr::product(
                Expr::product(Expr::int((*n).into()), Expr::pow((**a).clone(), n - 1)),
                differentiate_tree(a, v),
            ),
        },
    }
}

/// Derivation-mode derivative of `e` with respect to `v`, in canonical form.
pub fn d_alpha(e: &Expr, v: Var) -> Result<CanonicalExpr, NormalizeError> {
    // validates the input's own divisions before differentiating
    normalize(e)?;
    normalize(&differentiate_tree(e, v))
}

/// `order`-fold derivation-mode derivative.
pub fn nth_d_alpha(e: &Expr, v: Var, order: u32) -> Result<CanonicalExpr, NormalizeError> {
    Ok(normalize(e)?.nth_derivative(v, order))
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModeError {
    #[error("gamma-normalized mode is linear only; found a product of non-constant factors")]
    Product,
    #[error("gamma-normalized mode is linear only; found a quotient by a non-constant expression")]
    Quotient,
    #[error("`{0}` is not a Gamma-normalized basis element")]
    NotJBasis(String),
    #[error("gamma-normalized input must use a single variable, found {0} and {1}")]
    MixedVariables(Var, Var),
    #[error("negative basis index in P({0},{1})")]
    NegativeIndex(Var, i32),
}

/// A finite combination `sum_k coeffs[k] J_k(var)` with exact coefficients.
///
/// Written in the expression grammar with `P(v,k)` standing for the basis
/// element `J_k(v)`, e.g. `3*P(x,2) - P(x,0) + 1/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JPolynomial {
    pub var: Option<Var>,
    pub coeffs: Vec<GaussRational>,
}

impl JPolynomial {
    pub fn zero() -> Self {
        Self {
            var: None,
            coeffs: vec![GaussRational::zero()],
        }
    }

    pub fn single(var: Var, k: usize, c: GaussRational) -> Self {
        let mut coeffs = vec![GaussRational::zero(); k + 1];
        coeffs[k] = c;
        Self {
            var: Some(var),
            coeffs,
        }
    }

    /// `E_alpha`, `sin_alpha`, `cos_alpha` truncated at `J_order`.
    pub fn exp_truncated(var: Var, order: usize) -> Self {
        Self {
            var: Some(var),
            coeffs: vec![GaussRational::one(); order + 1],
        }
    }

    pub fn sin_truncated(var: Var, order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| match k % 4 {
                1 => GaussRational::one(),
                3 => GaussRational::from_integer(-1),
                _ => GaussRational::zero(),
            })
            .collect();
        Self {
            var: Some(var),
            coeffs,
        }
    }

    pub fn cos_truncated(var: Var, order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| match k % 4 {
                0 => GaussRational::one(),
                2 => GaussRational::from_integer(-1),
                _ => GaussRational::zero(),
            })
            .collect();
        Self {
            var: Some(var),
            coeffs,
        }
    }

    pub fn to_series(&self, alpha: Alpha) -> JSeries {
        JSeries::new(
            alpha,
            self.coeffs.iter().map(GaussRational::to_complex).collect(),
        )
    }

    fn combine(mut self, other: Self, sign: i64) -> Result<Self, ModeError> {
        let var = match (self.var, other.var) {
            (Some(a), Some(b)) if a != b => return Err(ModeError::MixedVariables(a, b)),
            (a, b) => a.or(b),
        };
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs
                .resize(other.coeffs.len(), GaussRational::zero());
        }
        let s = GaussRational::from_integer(sign);
        for (k, c) in other.coeffs.iter().enumerate() {
            self.coeffs[k] = &self.coeffs[k] + &(&s * c);
        }
        self.var = var;
        Ok(self)
    }

    fn scaled(mut self, c: &GaussRational) -> Self {
        for x in &mut self.coeffs {
            *x = &*x * c;
        }
        self
    }

    fn as_constant(&self) -> Option<GaussRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Reads a linear combination of `P(v,k)`, `k >= 0`, as `J`-basis input.
    pub fn from_expr(e: &Expr) -> Result<Self, ModeError> {
        match e {
            Expr::Number(c) => Ok(Self {
                var: None,
                coeffs: vec![c.clone()],
            }),
            Expr::Power { var, exp } => {
                if *exp < 0 {
                    return Err(ModeError::NegativeIndex(*var, *exp));
                }
                Ok(Self::single(*var, *exp as usize, GaussRational::one()))
            }
            Expr::Neg(a) => Ok(Self::from_expr(a)?.scaled(&GaussRational::from_integer(-1))),
            Expr::Add(a, b) => Self::from_expr(a)?.combine(Self::from_expr(b)?, 1),
            Expr::Sub(a, b) => Self::from_expr(a)?.combine(Self::from_expr(b)?, -1),
            Expr::Mul(a, b) => {
                let (pa, pb) = (Self::from_expr(a)?, Self::from_expr(b)?);
                match (pa.as_constant(), pb.as_constant()) {
                    (Some(c), _) => Ok(pb.scaled(&c)),
                    (_, Some(c)) => Ok(pa.scaled(&c)),
                    _ => Err(ModeError::Product),
                }
            }
            Expr::Div(a, b) => {
                let pb = Self::from_expr(b)?;
                let inv = pb
                    .as_constant()
                    .and_then(|c| c.inv())
                    .ok_or(ModeError::Quotient)?;
                Ok(Self::from_expr(a)?.scaled(&inv))
            }
            Expr::Pow(a, n) => {
                let pa = Self::from_expr(a)?;
                match (pa.as_constant(), n) {
                    (Some(c), n) if *n >= 0 => Ok(Self {
                        var: None,
                        coeffs: vec![c.pow(*n as u32)],
                    }),
                    (Some(c), n) => {
                        let inv = c.inv().ok_or(ModeError::Quotient)?;
                        Ok(Self {
                            var: None,
                            coeffs: vec![inv.pow(n.unsigned_abs())],
                        })
                    }
                    (None, 1) => Ok(pa),
                    (None, _) => Err(ModeError::Product),
                }
            }
            other => Err(ModeError::NotJBasis(other.to_string())),
        }
    }

    /// Renders back into the grammar with `P(v,k)` for `J_k(v)`.
    pub fn render(&self) -> String {
        let v = self.var.map(|v| v.name()).unwrap_or("x");
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let negative = c.is_negative_like();
            let magnitude = if negative { -c } else { c.clone() };
            let term = match k {
                0 => format!("{magnitude}"),
                _ if magnitude.is_one() => format!("P({v},{k})"),
                _ => format!("{magnitude}*P({v},{k})"),
            };
            match (out.is_empty(), negative) {
                (true, false) => out = term,
                (true, true) => out = format!("-{term}"),
                (false, false) => out = format!("{out} + {term}"),
                (false, true) => out = format!("{out} - {term}"),
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

/// Gamma-normalized derivative: `D[J_n] = J_(n-1)`, `D[J_0] = 0`.
pub fn d_alpha_gamma(p: &JPolynomial) -> JPolynomial {
    JPolynomial {
        var: p.var,
        coeffs: shift_coefficients(&p.coeffs),
    }
}

/// Parses and differentiates Gamma-normalized input; `var` must match.
pub fn d_alpha_gamma_expr(e: &Expr, var: Var) -> Result<JPolynomial, ModeError> {
    let p = JPolynomial::from_expr(e)?;
    if let Some(v) = p.var {
        if v != var {
            return Ok(JPolynomial::zero());
        }
    }
    Ok(d_alpha_gamma(&p))
}

/// The two candidate values of `D[(x^alpha)^2]` in the `J` basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ConflictWitness {
    pub alpha: Alpha,
    /// Product rule with `D[x^alpha] = Gamma(1+alpha)`: `2 Gamma(1+alpha)^2 J_1`.
    pub leibniz: JSeries,
    /// Index shift on `x^(2 alpha) = Gamma(1+2 alpha) J_2`: `Gamma(1+2 alpha) J_1`.
    pub index_shift: JSeries,
    /// `leibniz - index_shift`.
    pub difference: JSeries,
}

impl ConflictWitness {
    pub fn difference_norm(&self) -> f64 {
        self.difference.coeffs().iter().map(|c| c.norm()).sum()
    }
}

/// Computes `D[(x^alpha)^2]` with the product rule and with the index shift.
/// The two agree at `alpha = 1` and differ otherwise.
pub fn gamma_leibniz_conflict(alpha: Alpha) -> Result<ConflictWitness, SeriesError> {
    let g1 = gamma_one_plus(alpha, 1)?;
    let g2 = gamma_one_plus(alpha, 2)?;
    // x^alpha = g1 J_1, so D[x^alpha] = g1 J_0, and the product rule gives
    // 2 (g1 J_0)(g1 J_1) = 2 g1^2 J_1.
    let on_j1 = |c: f64| JSeries::new(alpha, vec![Complex64::zero(), Complex64::new(c, 0.0)]);
    let leibniz = on_j1(2.0 * g1 * g1);
    let index_shift = on_j1(g2);
    let difference = on_j1(2.0 * g1 * g1 - g2);
    Ok(ConflictWitness {
        alpha,
        leibniz,
        index_shift,
        difference,
    })
}
