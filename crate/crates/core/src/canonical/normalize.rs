use thiserror::Error;

use super::CanonicalExpr;
use crate::expr::Expr;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("division by an expression whose canonical form is zero: {0}")]
    SingularDivision(String),
    /// Only single monomials built from fractal powers, fractal sines and
    /// nonzero constants can be inverted.
    #[error("denominator `{0}` is not an invertible monomial")]
    NonInvertibleDenominator(String),
    #[error("exponential scale `{0}` must be a constant (possibly in lam)")]
    NonConstantScale(String),
}

/// Maps a syntax tree to its canonical form.
pub fn normalize(e: &Expr) -> Result<CanonicalExpr, NormalizeError> {
    Ok(match e {
        Expr::Number(c) => CanonicalExpr::gauss(c.clone()),
        Expr::Lambda => CanonicalExpr::lambda(),
        Expr::Power { var, exp } => CanonicalExpr::power(*var, *exp),
        Expr::Sin(v) => CanonicalExpr::sin(*v),
        Expr::Cos(v) => CanonicalExpr::cos(*v),
        Expr::Exp { scale, var } => {
            let s = normalize(scale)?;
            let c = s
                .as_constant()
                .ok_or_else(|| NormalizeError::NonConstantScale(s.to_string()))?;
            CanonicalExpr::ea(c, *var)
        }
        Expr::Component(sym) => CanonicalExpr::symbol(*sym),
        Expr::Neg(a) => -normalize(a)?,
        Expr::Add(a, b) => normalize(a)? + normalize(b)?,
        Expr::Sub(a, b) => normalize(a)? - normalize(b)?,
        Expr::Mul(a, b) => normalize(a)? * normalize(b)?,
        Expr::Div(a, b) => {
            let num = normalize(a)?;
            let den = normalize(b)?;
            num * invert(&den, b)?
        }
        Expr::Pow(a, n) => {
            let base = normalize(a)?;
            if *n < 0 {
                invert(&base, a)?.pow(-n).expect("nonnegative power")
            } else {
                base.pow(*n).expect("nonnegative power")
            }
        }
    })
}

fn invert(den: &CanonicalExpr, source: &Expr) -> Result<CanonicalExpr, NormalizeError> {
    if den.is_zero() {
        return Err(NormalizeError::SingularDivision(source.to_string()));
    }
    den.inverse()
        .ok_or_else(|| NormalizeError::NonInvertibleDenominator(den.to_string()))
}

/// True iff `a - b` normalizes to the empty map.
pub fn equal(a: &Expr, b: &Expr) -> Result<bool, NormalizeError> {
    Ok((normalize(a)? - normalize(b)?).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::frame::{Frame, Var};

    fn norm(text: &str) -> CanonicalExpr {
        normalize(&parse(text, Frame::Spherical).unwrap()).unwrap()
    }

    fn eq(a: &str, b: &str) -> bool {
        let f = Frame::Cylindrical;
        equal(&parse(a, f).unwrap(), &parse(b, f).unwrap()).unwrap()
    }

    #[test]
    fn pythagorean_sum_is_one() {
        assert_eq!(
            norm("cosa(theta)^2 + sina(theta)^2"),
            CanonicalExpr::constant_int(1)
        );
    }

    #[test]
    fn mixed_partials_commute() {
        assert_eq!(norm("d(f1,theta,r)"), norm("d(f1,r,theta)"));
    }

    #[test]
    fn exponent_addition() {
        assert_eq!(norm("P(r,2) * P(r,-1)"), CanonicalExpr::power(Var::R, 1));
    }

    #[test]
    fn equality_examples() {
        assert!(eq("f0 + f0", "2*f0"));
        assert!(!eq("sina(theta)", "cosa(theta)"));
        assert!(eq("cosa(theta)^2", "1 - sina(theta)^2"));
    }

    #[test]
    fn division_by_monomials() {
        assert_eq!(norm("1/P(r,1)"), CanonicalExpr::power(Var::R, -1));
        assert_eq!(
            norm("f1 / (2*sina(theta))"),
            norm("1/2 * sina(theta)^-1 * f1")
        );
        assert_eq!(norm("(i*f2)/i"), norm("f2"));
    }

    #[test]
    fn division_errors() {
        let f = Frame::Cylindrical;
        let singular = parse("f1 / (sina(theta)^2 + cosa(theta)^2 - 1)", f).unwrap();
        assert!(matches!(
            normalize(&singular),
            Err(NormalizeError::SingularDivision(_))
        ));
        let cos = parse("1/cosa(theta)", f).unwrap();
        assert!(matches!(
            normalize(&cos),
            Err(NormalizeError::NonInvertibleDenominator(_))
        ));
        let sum = parse("1/(1 + P(r,1))", f).unwrap();
        assert!(matches!(
            normalize(&sum),
            Err(NormalizeError::NonInvertibleDenominator(_))
        ));
        let zero_pow = parse("(P(r,1) - P(r,1))^-1", f).unwrap();
        assert!(matches!(
            normalize(&zero_pow),
            Err(NormalizeError::SingularDivision(_))
        ));
    }

    #[test]
    fn exponential_scales() {
        assert_eq!(norm("Ea(0, r)"), CanonicalExpr::constant_int(1));
        assert_eq!(norm("Ea(1/2 + 1/2, r)"), norm("Ea(1, r)"));
        let bad = parse("Ea(P(r,1), r)", Frame::Spherical).unwrap();
        assert!(matches!(
            normalize(&bad),
            Err(NormalizeError::NonConstantScale(_))
        ));
    }

    #[test]
    fn idempotent_on_rendering() {
        let e = norm("(cosa(theta) + sina(psi))^3 * d(f3,psi) - lam^2 * f1 / P(r,2)");
        assert_eq!(norm(&e.to_string()), e);
    }
}
