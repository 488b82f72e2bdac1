use std::fmt::{self, Write as _};

use num_traits::{One, Zero};

use super::{CanonicalExpr, Monomial};
use crate::coeff::{Coeff, GaussRational};
use crate::frame::Var;

const RENDER_ORDER: [Var; 6] = [Var::R, Var::Theta, Var::Psi, Var::X, Var::Y, Var::Z];

fn pow_suffix(out: &mut String, n: i64) {
    if n != 1 {
        write!(out, "^{n}").unwrap();
    }
}

/// Writes `lam`-polynomial scales such as `i*lam` or `1 + 2*lam^2`.
pub(crate) fn render_coeff(c: &Coeff) -> String {
    if c.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (k, g)) in c.terms().enumerate() {
        let lam = match k {
            0 => String::new(),
            1 => "lam".into(),
            k => format!("lam^{k}"),
        };
        let (neg, mag) = if g.is_negative_like() {
            (true, -g)
        } else {
            (false, g.clone())
        };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if lam.is_empty() {
            write!(out, "{mag}").unwrap();
        } else if mag.is_one() {
            out.push_str(&lam);
        } else {
            write!(out, "{mag}*{lam}").unwrap();
        }
    }
    out
}

fn monomial_factors(m: &Monomial) -> Vec<String> {
    let mut factors = Vec::new();
    for v in RENDER_ORDER {
        let n = m.fractal[v.index()];
        if n != 0 {
            factors.push(format!("P({v},{n})"));
        }
    }
    for v in RENDER_ORDER {
        let s = m.sin[v.index()];
        if s != 0 {
            let mut f = format!("sina({v})");
            pow_suffix(&mut f, s.into());
            factors.push(f);
        }
        if m.cos[v.index()] != 0 {
            factors.push(format!("cosa({v})"));
        }
    }
    for (key, k) in &m.exps {
        let mut f = format!("Ea({},{})", render_coeff(&key.scale), key.var);
        pow_suffix(&mut f, (*k).into());
        factors.push(f);
    }
    // symbols are sorted; group repeats into powers
    let mut i = 0;
    while i < m.derivs.len() {
        let sym = m.derivs[i];
        let mut j = i;
        while j < m.derivs.len() && m.derivs[j] == sym {
            j += 1;
        }
        let mut f = sym.to_string();
        pow_suffix(&mut f, (j - i) as i64);
        factors.push(f);
        i = j;
    }
    factors
}

/// Renders a sum in the expression grammar; the output parses and
/// normalizes back to the same map.
impl fmt::Display for CanonicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, coeff) in self.terms() {
            let factors = monomial_factors(m);
            for (k, g) in coeff.terms() {
                let (neg, mag): (bool, GaussRational) = if g.is_negative_like() {
                    (true, -g)
                } else {
                    (false, g.clone())
                };
                match (first, neg) {
                    (true, true) => f.write_str("-")?,
                    (true, false) => {}
                    (false, true) => f.write_str(" - ")?,
                    (false, false) => f.write_str(" + ")?,
                }
                first = false;
                let mut parts = Vec::new();
                if !mag.is_one() || (k == 0 && factors.is_empty()) {
                    parts.push(mag.to_string());
                }
                match k {
                    0 => {}
                    1 => parts.push("lam".into()),
                    k => parts.push(format!("lam^{k}")),
                }
                parts.extend(factors.iter().cloned());
                f.write_str(&parts.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use crate::canonical::normalize;
    use crate::expr::parse;
    use crate::frame::Frame;

    fn render(text: &str) -> String {
        normalize(&parse(text, Frame::Cylindrical).unwrap())
            .unwrap()
            .to_string()
    }

    #[test]
    fn simple_renderings() {
        assert_eq!(render("0*f1"), "0");
        assert_eq!(render("1/P(r,1)"), "P(r,-1)");
        assert_eq!(render("-f1 + f1*f1"), "-f1 + f1^2");
        assert_eq!(render("2*lam^2*d(f2,theta,r)"), "2*lam^2*d(f2,r,theta)");
        assert_eq!(render("Ea(i*lam, z)"), "Ea(i*lam,z)");
        assert_eq!(render("-i/2"), "-i/2");
    }

    #[test]
    fn coefficient_polynomials_render_as_sums() {
        let s = render("(1 - lam)*sina(theta)");
        assert_eq!(render(&s), s);
        assert!(s.contains("lam*sina(theta)"), "{s}");
    }
}
