//! Quaternion-valued fields and the local fractional gradient, divergence
//! and curl in Cartesian, Cantor-type cylindrical and spherical frames.
//!
//! Every operator is a linear differential template written in the
//! expression language over the abstract components `f0..f3`. Applying a
//! template to a field substitutes each `d^a f_k` by the corresponding
//! derivative of the field's `k`-th component.

use std::fmt;

use crate::canonical::{normalize, CanonicalExpr};
use crate::expr::{parse, ParseError};
use crate::frame::Frame;
use crate::quaternion::ComplexQuaternion;

pub type Components = [CanonicalExpr; 4];

/// A frame together with the four components `f0 + f1 e1 + f2 e2 + f3 e3`
/// in the frame's local basis.
#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionField {
    pub frame: Frame,
    pub value: ComplexQuaternion<CanonicalExpr>,
}

impl QuaternionField {
    pub fn new(frame: Frame, components: Components) -> Self {
        Self {
            frame,
            value: ComplexQuaternion { q: components },
        }
    }

    pub fn zero(frame: Frame) -> Self {
        Self::new(frame, std::array::from_fn(|_| CanonicalExpr::zero()))
    }

    /// `f0 + f1 e1 + f2 e2 + f3 e3` with all four components abstract.
    pub fn abstract_field(frame: Frame) -> Self {
        Self::new(
            frame,
            std::array::from_fn(|k| CanonicalExpr::component(k as u8)),
        )
    }

    pub fn scalar(frame: Frame, f0: CanonicalExpr) -> Self {
        let z = CanonicalExpr::zero;
        Self::new(frame, [f0, z(), z(), z()])
    }

    pub fn vector(frame: Frame, f1: CanonicalExpr, f2: CanonicalExpr, f3: CanonicalExpr) -> Self {
        Self::new(frame, [CanonicalExpr::zero(), f1, f2, f3])
    }

    /// Parses four component strings in `frame`.
    pub fn parse(frame: Frame, components: [&str; 4]) -> Result<Self, FieldError> {
        let mut out = Self::zero(frame);
        for (k, text) in components.iter().enumerate() {
            let e = parse(text, frame).map_err(|source| FieldError::Parse {
                component: k,
                source,
            })?;
            out.value.q[k] = normalize(&e).map_err(|e| FieldError::Normalize {
                component: k,
                message: e.to_string(),
            })?;
        }
        Ok(out)
    }

    pub fn components(&self) -> &Components {
        &self.value.q
    }

    pub fn component(&self, k: usize) -> &CanonicalExpr {
        &self.value.q[k]
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// The same field expanded on `1, i1, i2, i3`.
    pub fn to_standard_basis(&self) -> ComplexQuaternion<CanonicalExpr> {
        let [e1, e2, e3] = self.frame.frame_vectors();
        let q = &self.value.q;
        ComplexQuaternion::scalar(q[0].clone())
            + e1.scale(&q[1])
            + e2.scale(&q[2])
            + e3.scale(&q[3])
    }

    pub fn map(&self, f: impl Fn(&CanonicalExpr) -> CanonicalExpr) -> Self {
        Self::new(self.frame, std::array::from_fn(|k| f(&self.value.q[k])))
    }
}

impl std::ops::Add for QuaternionField {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.frame, rhs.frame);
        Self {
            frame: self.frame,
            value: self.value + rhs.value,
        }
    }
}

impl std::ops::Sub for QuaternionField {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.frame, rhs.frame);
        Self {
            frame: self.frame,
            value: self.value - rhs.value,
        }
    }
}

impl std::ops::Neg for QuaternionField {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            frame: self.frame,
            value: -self.value,
        }
    }
}

impl fmt::Display for QuaternionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.value.q.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "f{k} = {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FieldError {
    #[error("component f{component}: {source}")]
    Parse {
        component: usize,
        #[source]
        source: ParseError,
    },
    #[error("component f{component}: {message}")]
    Normalize { component: usize, message: String },
}

/// Parses a fixed operator template. The strings are part of the crate, so
/// failure is a programming error.
pub(crate) fn template(frame: Frame, parts: [&str; 4]) -> Components {
    parts.map(|text| {
        let e = parse(text, frame).unwrap_or_else(|e| panic!("template `{text}`: {e}"));
        normalize(&e).unwrap_or_else(|e| panic!("template `{text}`: {e}"))
    })
}

pub(crate) fn scalar_template(frame: Frame, text: &str) -> CanonicalExpr {
    let [t, ..] = template(frame, [text, "0", "0", "0"]);
    t
}

/// Applies a template to the components of `fields`.
pub(crate) fn instantiate(t: &Components, fields: &Components) -> Components {
    std::array::from_fn(|k| t[k].substitute_components(fields))
}

fn scalar_only(f0: &CanonicalExpr) -> Components {
    let z = CanonicalExpr::zero;
    [f0.clone(), z(), z(), z()]
}

fn grad_template(frame: Frame) -> Components {
    match frame {
        Frame::Cartesian => template(frame, ["0", "d(f0,x)", "d(f0,y)", "d(f0,z)"]),
        Frame::Cylindrical => template(frame, ["0", "d(f0,r)", "P(r,-1)*d(f0,theta)", "d(f0,z)"]),
        Frame::Spherical => template(
            frame,
            [
                "0",
                "d(f0,r)",
                "P(r,-1)*d(f0,theta)",
                "P(r,-1)/sina(theta)*d(f0,psi)",
            ],
        ),
    }
}

fn div_template(frame: Frame) -> CanonicalExpr {
    scalar_template(
        frame,
        match frame {
            Frame::Cartesian => "d(f1,x) + d(f2,y) + d(f3,z)",
            Frame::Cylindrical => "d(f1,r) + P(r,-1)*d(f2,theta) + f1/P(r,1) + d(f3,z)",
            Frame::Spherical => {
                "d(f1,r) + 2*f1/P(r,1) + P(r,-1)*d(f2,theta) \
                 + 1/(P(r,1)*sina(theta))*(d(f3,psi) + f2*cosa(theta))"
            }
        },
    )
}

fn curl_template(frame: Frame) -> Components {
    match frame {
        Frame::Cartesian => template(
            frame,
            [
                "0",
                "d(f3,y) - d(f2,z)",
                "d(f1,z) - d(f3,x)",
                "d(f2,x) - d(f1,y)",
            ],
        ),
        Frame::Cylindrical => template(
            frame,
            [
                "0",
                "P(r,-1)*d(f3,theta) - d(f2,z)",
                "d(f1,z) - d(f3,r)",
                "d(f2,r) - P(r,-1)*d(f1,theta) + f2/P(r,1)",
            ],
        ),
        Frame::Spherical => template(
            frame,
            [
                "0",
                "P(r,-1)*d(f3,theta) - 1/(P(r,1)*sina(theta))*d(f2,psi) \
                 + f3*cosa(theta)/(P(r,1)*sina(theta))",
                "1/(P(r,1)*sina(theta))*d(f1,psi) - d(f3,r) - f3/P(r,1)",
                "d(f2,r) - P(r,-1)*d(f1,theta) + f2/P(r,1)",
            ],
        ),
    }
}

/// `grad f0` as a pure vector field.
pub fn grad_alpha(f0: &CanonicalExpr, frame: Frame) -> QuaternionField {
    QuaternionField::new(frame, instantiate(&grad_template(frame), &scalar_only(f0)))
}

/// `div` of the vector part of `v`; the scalar part is ignored.
pub fn div_alpha(v: &QuaternionField) -> CanonicalExpr {
    div_template(v.frame).substitute_components(v.components())
}

/// `curl` of the vector part of `v`; the scalar part is ignored.
pub fn curl_alpha(v: &QuaternionField) -> QuaternionField {
    QuaternionField::new(
        v.frame,
        instantiate(&curl_template(v.frame), v.components()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Var;

    fn n(frame: Frame, text: &str) -> CanonicalExpr {
        normalize(&parse(text, frame).unwrap()).unwrap()
    }

    #[test]
    fn gradient_examples() {
        for frame in Frame::ALL {
            assert!(grad_alpha(&CanonicalExpr::constant_int(7), frame).is_zero());
        }
        let g = grad_alpha(&CanonicalExpr::power(Var::R, 2), Frame::Cylindrical);
        let expected = QuaternionField::vector(
            Frame::Cylindrical,
            n(Frame::Cylindrical, "2*P(r,1)"),
            CanonicalExpr::zero(),
            CanonicalExpr::zero(),
        );
        assert_eq!(g, expected);

        let s = Frame::Spherical;
        let g = grad_alpha(&CanonicalExpr::component(0), s);
        assert_eq!(g.component(1), &n(s, "d(f0,r)"));
        assert_eq!(g.component(2), &n(s, "P(r,-1)*d(f0,theta)"));
        assert_eq!(g.component(3), &n(s, "P(r,-1)*sina(theta)^-1*d(f0,psi)"));
    }

    #[test]
    fn divergence_examples() {
        let c = Frame::Cylindrical;
        let radial = QuaternionField::parse(c, ["0", "P(r,1)", "0", "0"]).unwrap();
        assert_eq!(div_alpha(&radial), CanonicalExpr::constant_int(2));
        let s = Frame::Spherical;
        let radial = QuaternionField::parse(s, ["0", "P(r,1)", "0", "0"]).unwrap();
        assert_eq!(div_alpha(&radial), CanonicalExpr::constant_int(3));
        assert!(div_alpha(&QuaternionField::zero(s)).is_zero());
    }

    #[test]
    fn curl_examples() {
        let c = Frame::Cylindrical;
        let axial = QuaternionField::parse(c, ["0", "0", "0", "1"]).unwrap();
        assert!(curl_alpha(&axial).is_zero());
        let swirl = QuaternionField::parse(c, ["0", "0", "P(r,1)", "0"]).unwrap();
        let expected = QuaternionField::parse(c, ["0", "0", "0", "2"]).unwrap();
        assert_eq!(curl_alpha(&swirl), expected);
    }

    #[test]
    fn curl_of_gradient_vanishes() {
        for frame in Frame::ALL {
            let g = grad_alpha(&CanonicalExpr::component(0), frame);
            assert!(curl_alpha(&g).is_zero(), "{frame}");
        }
    }

    #[test]
    fn divergence_of_curl_vanishes() {
        for frame in Frame::ALL {
            let c = curl_alpha(&QuaternionField::abstract_field(frame));
            assert!(div_alpha(&c).is_zero(), "{frame}");
        }
    }

    #[test]
    fn parse_reports_component() {
        let err =
            QuaternionField::parse(Frame::Cylindrical, ["0", "P(x,1)", "0", "0"]).unwrap_err();
        assert!(err.to_string().starts_with("component f1:"));
        let err = QuaternionField::parse(Frame::Cylindrical, ["1/0", "0", "0", "0"]).unwrap_err();
        assert!(matches!(err, FieldError::Normalize { component: 0, .. }));
    }

    #[test]
    fn standard_basis_expansion() {
        let c = Frame::Cylindrical;
        let f = QuaternionField::parse(c, ["0", "1", "0", "0"]).unwrap();
        let q = f.to_standard_basis();
        assert_eq!(q.q[1], n(c, "cosa(theta)"));
        assert_eq!(q.q[2], n(c, "sina(theta)"));
    }
}
