//! Complex quaternions `H(C)` over an arbitrary commutative coefficient ring.
//!
//! `q = q0 + q1 i1 + q2 i2 + q3 i3`, with the complex unit `i` (living in the
//! coefficients) commuting with `i1, i2, i3`.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Coefficient rings usable inside a quaternion: `CanonicalExpr`,
/// `Complex64`, `GaussRational`, ...
pub trait Ring:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + Zero + One + Neg<Output = T> + Sub<Output = T> + Mul<Output = T>
{
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexQuaternion<C> {
    pub q: [C; 4],
}

impl<C: Ring> ComplexQuaternion<C> {
    pub fn new(q0: C, q1: C, q2: C, q3: C) -> Self {
        Self {
            q: [q0, q1, q2, q3],
        }
    }

    pub fn zero() -> Self {
        Self::new(C::zero(), C::zero(), C::zero(), C::zero())
    }

    pub fn scalar(c: C) -> Self {
        Self::new(c, C::zero(), C::zero(), C::zero())
    }

    pub fn vector(v1: C, v2: C, v3: C) -> Self {
        Self::new(C::zero(), v1, v2, v3)
    }

    /// Basis element `i_k` for `k` in `0..4` (`i_0 = 1`).
    pub fn basis(k: usize) -> Self {
        let mut q = Self::zero();
        q.q[k] = C::one();
        q
    }

    pub fn sc(&self) -> C {
        self.q[0].clone()
    }

    pub fn vec(&self) -> Self {
        Self::vector(self.q[1].clone(), self.q[2].clone(), self.q[3].clone())
    }

    pub fn is_pure_vector(&self) -> bool {
        self.q[0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.q.iter().all(Zero::is_zero)
    }

    /// Coefficientwise multiplication by `c` from the left.
    pub fn scale(&self, c: &C) -> Self {
        Self {
            q: std::array::from_fn(|k| c.clone() * self.q[k].clone()),
        }
    }

    /// `pq = p0 q0 - <p, q> + p0 q_vec + q0 p_vec + [p, q]`.
    pub fn qmul(&self, other: &Self) -> Self {
        let p0 = self.q[0].clone();
        let q0 = other.q[0].clone();
        let scalar = p0.clone() * q0.clone() - dot(self, other);
        let cr = cross(self, other);
        let part = |k: usize| {
            p0.clone() * other.q[k].clone() + q0.clone() * self.q[k].clone() + cr.q[k].clone()
        };
        Self::new(scalar, part(1), part(2), part(3))
    }
}

/// Complex-bilinear (not Hermitian) product of the vector parts.
pub fn dot<C: Ring>(p: &ComplexQuaternion<C>, q: &ComplexQuaternion<C>) -> C {
    (1..4).fold(C::zero(), |acc, k| acc + p.q[k].clone() * q.q[k].clone())
}

/// Determinant bracket `[p, q]` of the vector parts.
pub fn cross<C: Ring>(p: &ComplexQuaternion<C>, q: &ComplexQuaternion<C>) -> ComplexQuaternion<C> {
    let [_, p1, p2, p3] = p.q.clone();
    let [_, q1, q2, q3] = q.q.clone();
    ComplexQuaternion::vector(
        p2.clone() * q3.clone() - p3.clone() * q2.clone(),
        p3 * q1.clone() - p1.clone() * q3,
        p1 * q2 - p2 * q1,
    )
}

impl<C: Ring> Add for ComplexQuaternion<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.q;
        let [b0, b1, b2, b3] = rhs.q;
        Self::new(a0 + b0, a1 + b1, a2 + b2, a3 + b3)
    }
}

impl<C: Ring> Sub for ComplexQuaternion<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.q;
        let [b0, b1, b2, b3] = rhs.q;
        Self::new(a0 - b0, a1 - b1, a2 - b2, a3 - b3)
    }
}

impl<C: Ring> Neg for ComplexQuaternion<C> {
    type Output = Self;
    fn neg(self) -> Self {
        let [a0, a1, a2, a3] = self.q;
        Self::new(-a0, -a1, -a2, -a3)
    }
}

impl<C: Ring> Mul for ComplexQuaternion<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.qmul(&rhs)
    }
}
