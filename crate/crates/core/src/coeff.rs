//! Exact coefficients: Gaussian rationals and polynomials in the formal
//! parameter `lam` over them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A complex number `re + im*i` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        )
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn imaginary_unit() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return None;
        }
        Some(Self::new(&self.re / &norm, -(&self.im / &norm)))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// True when the value prints with a leading minus sign and can be
    /// rendered as `- |value|` in a sum.
    pub fn is_negative_like(&self) -> bool {
        (self.im.is_zero() && self.re.is_negative()) || (self.re.is_zero() && self.im.is_negative())
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        Self::from_integer(1)
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(GaussRational, Add add, Sub sub, Mul mul);

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        -&self
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

fn fmt_imag(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.numer().is_one() {
        write!(f, "i")?;
    } else if (-r.numer()).is_one() {
        write!(f, "-i")?;
    } else {
        write!(f, "{}i", r.numer())?;
    }
    if !r.denom().is_one() {
        write!(f, "/{}", r.denom())?;
    }
    Ok(())
}

/// Renders in the expression grammar: `3/2`, `-i`, `5i/3`, `(1/2-3i)`.
impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_rational(&self.re, f),
            (true, false) => fmt_imag(&self.im, f),
            (false, false) => {
                write!(f, "(")?;
                fmt_rational(&self.re, f)?;
                if !self.im.is_negative() {
                    write!(f, "+")?;
                }
                fmt_imag(&self.im, f)?;
                write!(f, ")")
            }
        }
    }
}

/// Polynomial in the formal parameter `lam` with Gaussian-rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coeff {
    terms: BTreeMap<u32, GaussRational>,
}

impl Coeff {
    pub fn constant(c: GaussRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        Self { terms }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::constant(GaussRational::from_integer(n))
    }

    /// `c * lam^power`.
    pub fn monomial(c: GaussRational, power: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(power, c);
        }
        Self { terms }
    }

    pub fn lambda() -> Self {
        Self::monomial(GaussRational::one(), 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &GaussRational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    /// The value when the polynomial has no `lam` dependence.
    pub fn as_constant(&self) -> Option<GaussRational> {
        match self.terms.len() {
            0 => Some(GaussRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Exact substitution `lam := value`.
    pub fn substitute(&self, value: &GaussRational) -> GaussRational {
        self.terms
            .iter()
            .fold(GaussRational::zero(), |acc, (k, c)| {
                &acc + &(c * &value.pow(*k))
            })
    }

    pub fn evaluate(&self, lambda: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(k, c)| c.to_complex() * lambda.powu(*k))
            .sum()
    }

    fn add_term(&mut self, power: u32, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(power).or_insert_with(GaussRational::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&power);
        }
    }
}

impl Zero for Coeff {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Coeff {
    fn one() -> Self {
        Self::from_integer(1)
    }
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        let mut out = Coeff::default();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(ka + kb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

forward_owned!(Coeff, Add add, Sub sub, Mul mul);

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}
