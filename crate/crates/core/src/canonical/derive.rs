//! Local fractional partial differentiation on canonical forms.
//!
//! The derivative is the derivation fixed by
//! `D[P(v,n)] = n P(v,n-1)`, `D[sina(v)] = cosa(v)`, `D[cosa(v)] = -sina(v)`,
//! `D[Ea(c,v)] = c Ea(c,v)`, and `D[d^a f_k] = d^(a+e_v) f_k`. It respects
//! `sina^2 + cosa^2 = 1`, so it is well defined on canonical maps.

use super::{CanonicalExpr, Monomial};
use crate::coeff::{Coeff, GaussRational};
use crate::frame::Var;

impl Monomial {
    /// Terms of the derivative of this monomial with respect to `v`.
    fn derivative(&self, v: Var) -> Vec<(Monomial, Coeff)> {
        let k = v.index();
        let mut out = Vec::new();
        let int = |n: i64| Coeff::from_integer(n);

        let n = self.fractal[k];
        if n != 0 {
            let mut m = self.clone();
            m.fractal[k] -= 1;
            out.push((m, int(n.into())));
        }

        let s = self.sin[k];
        match self.cos[k] {
            0 if s != 0 => {
                // d sin^s = s sin^(s-1) cos
                let mut m = self.clone();
                m.sin[k] -= 1;
                m.cos[k] = 1;
                out.push((m, int(s.into())));
            }
            1 => {
                // d (sin^s cos) = s sin^(s-1) - (s+1) sin^(s+1)
                if s != 0 {
                    let mut m = self.clone();
                    m.cos[k] = 0;
                    m.sin[k] -= 1;
                    out.push((m, int(s.into())));
                }
                let mut m = self.clone();
                m.cos[k] = 0;
                m.sin[k] += 1;
                out.push((m, int(-(i64::from(s) + 1))));
            }
            _ => {}
        }

        for (key, power) in &self.exps {
            if key.var == v {
                let factor = key
                    .scale
                    .scale(&GaussRational::from_integer((*power).into()));
                out.push((self.clone(), factor));
            }
        }

        let mut i = 0;
        while i < self.derivs.len() {
            let sym = self.derivs[i];
            let mut j = i;
            while j < self.derivs.len() && self.derivs[j] == sym {
                j += 1;
            }
            let mut m = self.clone();
            m.derivs[i] = sym.with_derivative(v, 1);
            m.derivs.sort();
            out.push((m, int((j - i) as i64)));
            i = j;
        }
        out
    }
}

impl CanonicalExpr {
    /// `d^alpha / d v^alpha` in derivation mode.
    pub fn derivative(&self, v: Var) -> CanonicalExpr {
        let mut out = CanonicalExpr::zero();
        for (m, c) in self.terms() {
            for (dm, factor) in m.derivative(v) {
                out.add_term(dm, c * &factor);
            }
        }
        out
    }

    /// `order`-fold derivative with respect to `v`.
    pub fn nth_derivative(&self, v: Var, order: u32) -> CanonicalExpr {
        (0..order).fold(self.clone(), |acc, _| acc.derivative(v))
    }
}
