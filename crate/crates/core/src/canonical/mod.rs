//! Canonical forms.
//!
//! A [`CanonicalExpr`] is a finite map from [`Monomial`] to a nonzero
//! [`Coeff`]. A monomial is a product of
//!
//! - fractal powers `P(v,n)`, `n` any integer,
//! - fractal trig signatures `sina(v)^m * cosa(v)^e` with `m` any integer
//!   and `e` in `{0, 1}`,
//! - exponential generators `Ea(c,v)^k`, `k >= 1`,
//! - a sorted multiset of derivative symbols `d(f_k, ...)`.
//!
//! Products are reduced with `cosa(v)^2 = 1 - sina(v)^2`, so two expressions
//! are equal exactly when their maps are identical.

mod derive;
mod normalize;
mod render;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::coeff::{forward_owned, Coeff, GaussRational};
use crate::expr::ComponentSymbol;
use crate::frame::Var;

pub use normalize::{equal, normalize, NormalizeError};

/// Key of an exponential generator `Ea(scale, var)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpKey {
    pub var: Var,
    pub scale: Coeff,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub(crate) derivs: Vec<ComponentSymbol>,
    pub(crate) exps: Vec<(ExpKey, u32)>,
    pub(crate) fractal: [i32; 6],
    pub(crate) sin: [i32; 6],
    pub(crate) cos: [u8; 6],
}

impl Monomial {
    pub fn is_one(&self) -> bool {
        *self == Monomial::default()
    }

    pub fn fractal_exponent(&self, v: Var) -> i32 {
        self.fractal[v.index()]
    }

    /// `(sin exponent, cos exponent)` for `v`.
    pub fn trig_signature(&self, v: Var) -> (i32, u8) {
        (self.sin[v.index()], self.cos[v.index()])
    }

    pub fn exponentials(&self) -> &[(ExpKey, u32)] {
        &self.exps
    }

    pub fn symbols(&self) -> &[ComponentSymbol] {
        &self.derivs
    }

    fn invert(&self) -> Option<Monomial> {
        if !self.derivs.is_empty() || !self.exps.is_empty() || self.cos.iter().any(|&e| e != 0) {
            return None;
        }
        let mut out = self.clone();
        for k in 0..6 {
            out.fractal[k] = -out.fractal[k];
            out.sin[k] = -out.sin[k];
        }
        Some(out)
    }

    /// Product with Pythagorean reduction; returns monomials with integer
    /// multipliers.
    pub(crate) fn mul(&self, other: &Monomial) -> Vec<(Monomial, i64)> {
        let mut raw = Monomial::default();
        for k in 0..6 {
            raw.fractal[k] = self.fractal[k] + other.fractal[k];
            raw.sin[k] = self.sin[k] + other.sin[k];
            raw.cos[k] = self.cos[k] + other.cos[k];
        }
        raw.derivs = merge_sorted(&self.derivs, &other.derivs);
        raw.exps = self.exps.clone();
        for (key, k) in &other.exps {
            raw.add_exp(key.clone(), *k);
        }
        raw.reduce()
    }

    pub(crate) fn add_exp(&mut self, key: ExpKey, power: u32) {
        match self.exps.binary_search_by(|(k, _)| k.cmp(&key)) {
            Ok(i) => self.exps[i].1 += power,
            Err(i) => self.exps.insert(i, (key, power)),
        }
    }

    /// Expands every `cos^2` into `1 - sin^2`.
    pub(crate) fn reduce(self) -> Vec<(Monomial, i64)> {
        let mut out = vec![(self, 1i64)];
        for k in 0..6 {
            if out[0].0.cos[k] < 2 {
                continue;
            }
            debug_assert_eq!(out[0].0.cos[k], 2);
            let mut next = Vec::with_capacity(out.len() * 2);
            for (mut m, c) in out {
                m.cos[k] = 0;
                let mut shifted = m.clone();
                shifted.sin[k] += 2;
                next.push((m, c));
                next.push((shifted, -c));
            }
            out = next;
        }
        out
    }
}

fn merge_sorted(a: &[ComponentSymbol], b: &[ComponentSymbol]) -> Vec<ComponentSymbol> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out.sort();
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CanonicalExpr {
    terms: BTreeMap<Monomial, Coeff>,
}

impl CanonicalExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Coeff) -> Self {
        Self::from_monomial(Monomial::default(), c)
    }

    pub fn constant_int(n: i64) -> Self {
        Self::constant(Coeff::from_integer(n))
    }

    pub fn gauss(c: GaussRational) -> Self {
        Self::constant(Coeff::constant(c))
    }

    pub fn lambda() -> Self {
        Self::constant(Coeff::lambda())
    }

    pub fn from_monomial(m: Monomial, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// `P(v, n)`.
    pub fn power(v: Var, n: i32) -> Self {
        let mut m = Monomial::default();
        m.fractal[v.index()] = n;
        Self::from_monomial(m, Coeff::one())
    }

    pub fn sin(v: Var) -> Self {
        let mut m = Monomial::default();
        m.sin[v.index()] = 1;
        Self::from_monomial(m, Coeff::one())
    }

    /// `sina(v)^n`, negative `n` allowed.
    pub fn sin_pow(v: Var, n: i32) -> Self {
        let mut m = Monomial::default();
        m.sin[v.index()] = n;
        Self::from_monomial(m, Coeff::one())
    }

    pub fn cos(v: Var) -> Self {
        let mut m = Monomial::default();
        m.cos[v.index()] = 1;
        Self::from_monomial(m, Coeff::one())
    }

    /// `Ea(scale, v)`; a zero scale gives the constant 1.
    pub fn ea(scale: Coeff, v: Var) -> Self {
        if scale.is_zero() {
            return Self::constant_int(1);
        }
        let mut m = Monomial::default();
        m.add_exp(ExpKey { var: v, scale }, 1);
        Self::from_monomial(m, Coeff::one())
    }

    pub fn symbol(sym: ComponentSymbol) -> Self {
        let m = Monomial {
            derivs: vec![sym],
            ..Monomial::default()
        };
        Self::from_monomial(m, Coeff::one())
    }

    /// The underived abstract component `f_k`.
    pub fn component(k: u8) -> Self {
        Self::symbol(ComponentSymbol::new(k))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    /// The coefficient when the expression has no generators.
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => self.terms.get(&Monomial::default()).cloned(),
            _ => None,
        }
    }

    /// True when no abstract component symbol occurs.
    pub fn is_concrete(&self) -> bool {
        self.terms.keys().all(|m| m.derivs.is_empty())
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero();
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Inverse of a single invertible monomial with constant coefficient.
    pub fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        let inv_c = c.as_constant()?.inv()?;
        Some(Self::from_monomial(m.invert()?, Coeff::constant(inv_c)))
    }

    /// Integer power; negative exponents require [`inverse`](Self::inverse).
    pub fn pow(&self, n: i32) -> Option<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut exp = n.unsigned_abs();
        let mut acc = Self::constant_int(1);
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &sq;
            }
            exp >>= 1;
            if exp > 0 {
                sq = &sq * &sq;
            }
        }
        Some(acc)
    }

    /// Exact substitution of a value for `lam`, in coefficients and in
    /// exponential scales.
    pub fn substitute_lambda(&self, value: &GaussRational) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let k = Coeff::constant(c.substitute(value));
            let mut bare = m.clone();
            let exps = std::mem::take(&mut bare.exps);
            let mut term = Self::from_monomial(bare, k);
            for (key, power) in exps {
                let scale = Coeff::constant(key.scale.substitute(value));
                let factor = Self::ea(scale, key.var)
                    .pow(power as i32)
                    .expect("nonnegative power");
                term = &term * &factor;
            }
            out = &out + &term;
        }
        out
    }

    /// Replaces every symbol `d^a f_k` by the corresponding derivative of
    /// `fields[k]`.
    pub fn substitute_components(&self, fields: &[CanonicalExpr; 4]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut bare = m.clone();
            let symbols = std::mem::take(&mut bare.derivs);
            let mut term = Self::from_monomial(bare, c.clone());
            for sym in symbols {
                let mut value = fields[sym.index as usize].clone();
                for v in Var::ALL {
                    for _ in 0..sym.order(v) {
                        value = value.derivative(v);
                    }
                }
                term = &term * &value;
            }
            out = &out + &term;
        }
        out
    }

    /// Highest total derivative order carried by any component symbol.
    pub fn max_symbol_order(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.derivs.iter().map(|s| s.total_order()))
            .max()
            .unwrap_or(0)
    }
}

impl<'a> Add<&'a CanonicalExpr> for &'a CanonicalExpr {
    type Output = CanonicalExpr;
    fn add(self, rhs: &CanonicalExpr) -> CanonicalExpr {
        let (mut out, other) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a CanonicalExpr> for &'a CanonicalExpr {
    type Output = CanonicalExpr;
    fn sub(self, rhs: &CanonicalExpr) -> CanonicalExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a CanonicalExpr> for &'a CanonicalExpr {
    type Output = CanonicalExpr;
    fn mul(self, rhs: &CanonicalExpr) -> CanonicalExpr {
        let mut out = CanonicalExpr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let c = ca * cb;
                for (m, k) in ma.mul(mb) {
                    out.add_term(m, c.scale(&GaussRational::from_integer(k)));
                }
            }
        }
        out
    }
}

impl Neg for &CanonicalExpr {
    type Output = CanonicalExpr;
    fn neg(self) -> CanonicalExpr {
        CanonicalExpr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

forward_owned!(CanonicalExpr, Add add, Sub sub, Mul mul);

impl Neg for CanonicalExpr {
    type Output = CanonicalExpr;
    fn neg(self) -> CanonicalExpr {
        -&self
    }
}

impl Zero for CanonicalExpr {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for CanonicalExpr {
    fn one() -> Self {
        Self::constant_int(1)
    }
}
