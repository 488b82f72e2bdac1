//! The Moisil-Teodorescu operator, the scalar and vector Laplacians, the
//! Bitsadze operator and the Helmholtz residual in all three frames.
//!
//! The curvilinear Laplacian and Bitsadze operators are the displayed
//! component formulas, not compositions; the identity checks in
//! [`crate::verify`] compare them against compositions of grad, div and curl.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canonical::CanonicalExpr;
use crate::coeff::{Coeff, GaussRational};
use crate::frame::Frame;
use crate::vector_ops::{
    curl_alpha, div_alpha, grad_alpha, instantiate, scalar_template, template, Components,
    QuaternionField,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// `D f` (left) or `f D` (right).
///
/// Left: scalar `-div f`, vector `grad f0 + curl f`. Right: the curl term
/// changes sign.
pub fn mt_apply(f: &QuaternionField, side: Side) -> QuaternionField {
    let grad = grad_alpha(f.component(0), f.frame);
    let curl = curl_alpha(f);
    let mut out = match side {
        Side::Left => grad + curl,
        Side::Right => grad - curl,
    };
    out.value.q[0] = -div_alpha(f);
    out
}

fn delta0_template(frame: Frame) -> CanonicalExpr {
    scalar_template(
        frame,
        match frame {
            Frame::Cartesian => "d(f0,x,x) + d(f0,y,y) + d(f0,z,z)",
            Frame::Cylindrical => {
                "d(f0,r,r) + P(r,-2)*d(f0,theta,theta) + P(r,-1)*d(f0,r) + d(f0,z,z)"
            }
            Frame::Spherical => {
                "d(f0,r,r) + 2*P(r,-1)*d(f0,r) + P(r,-2)*d(f0,theta,theta) \
                 + cosa(theta)/(P(r,2)*sina(theta))*d(f0,theta) \
                 + 1/(P(r,2)*sina(theta)^2)*d(f0,psi,psi)"
            }
        },
    )
}

/// The scalar Laplacian `Delta_0` of a scalar expression.
pub fn delta0(f0: &CanonicalExpr, frame: Frame) -> CanonicalExpr {
    let z = CanonicalExpr::zero;
    delta0_template(frame).substitute_components(&[f0.clone(), z(), z(), z()])
}

fn vector_laplacian_template(frame: Frame) -> Components {
    match frame {
        Frame::Cartesian => template(
            frame,
            [
                "0",
                "d(f1,x,x) + d(f1,y,y) + d(f1,z,z)",
                "d(f2,x,x) + d(f2,y,y) + d(f2,z,z)",
                "d(f3,x,x) + d(f3,y,y) + d(f3,z,z)",
            ],
        ),
        Frame::Cylindrical => template(
            frame,
            [
                "0",
                "d(f1,r,r) + P(r,-1)*d(f1,r) - f1/P(r,2) + P(r,-2)*d(f1,theta,theta) \
                 - 2*P(r,-2)*d(f2,theta) + d(f1,z,z)",
                "d(f2,r,r) + P(r,-1)*d(f2,r) - f2/P(r,2) + P(r,-2)*d(f2,theta,theta) \
                 + 2*P(r,-2)*d(f1,theta) + d(f2,z,z)",
                "d(f3,r,r) + P(r,-1)*d(f3,r) + P(r,-2)*d(f3,theta,theta) + d(f3,z,z)",
            ],
        ),
        Frame::Spherical => template(
            frame,
            [
                "0",
                "d(f1,r,r) + 2*P(r,-1)*d(f1,r) - 2*P(r,-2)*f1 + P(r,-2)*d(f1,theta,theta) \
                 + cosa(theta)/(P(r,2)*sina(theta))*d(f1,theta) \
                 + 1/(P(r,2)*sina(theta)^2)*d(f1,psi,psi) - 2*P(r,-2)*d(f2,theta) \
                 - 2*cosa(theta)/(P(r,2)*sina(theta))*f2 \
                 - 2/(P(r,2)*sina(theta))*d(f3,psi)",
                "d(f2,r,r) + 2*P(r,-1)*d(f2,r) - 1/(P(r,2)*sina(theta)^2)*f2 \
                 + P(r,-2)*d(f2,theta,theta) + cosa(theta)/(P(r,2)*sina(theta))*d(f2,theta) \
                 + 1/(P(r,2)*sina(theta)^2)*d(f2,psi,psi) + 2*P(r,-2)*d(f1,theta) \
                 - 2*cosa(theta)/(P(r,2)*sina(theta)^2)*d(f3,psi)",
                "d(f3,r,r) + 2*P(r,-1)*d(f3,r) - 1/(P(r,2)*sina(theta)^2)*f3 \
                 + P(r,-2)*d(f3,theta,theta) + cosa(theta)/(P(r,2)*sina(theta))*d(f3,theta) \
                 + 1/(P(r,2)*sina(theta)^2)*d(f3,psi,psi) \
                 + 2/(P(r,2)*sina(theta))*d(f1,psi) \
                 + 2*cosa(theta)/(P(r,2)*sina(theta)^2)*d(f2,psi)",
            ],
        ),
    }
}

fn bitsadze_vector_template(frame: Frame) -> Option<Components> {
    match frame {
        Frame::Cartesian => None,
        Frame::Cylindrical => Some(template(
            frame,
            [
                "0",
                "d(f1,r,r) + 2*P(r,-1)*d(f2,r,theta) + P(r,-1)*d(f1,r) - f1/P(r,2) \
                 + 2*d(f3,r,z) - P(r,-2)*d(f1,theta,theta) - d(f1,z,z)",
                "2*P(r,-1)*d(f1,r,theta) + P(r,-2)*d(f2,theta,theta) \
                 + 2*P(r,-1)*d(f3,theta,z) - d(f2,z,z) - d(f2,r,r) \
                 - P(r,-1)*d(f2,r) + f2/P(r,2)",
                "2*d(f1,r,z) + 2*P(r,-1)*d(f2,theta,z) + 2*P(r,-1)*d(f1,z) + d(f3,z,z) \
                 - d(f3,r,r) - P(r,-2)*d(f3,theta,theta) - P(r,-1)*d(f3,r)",
            ],
        )),
        Frame::Spherical => Some(template(
            frame,
            [
                "0",
                "d(f1,r,r) + 2*P(r,-1)*d(f1,r) - 2*P(r,-2)*f1 - P(r,-2)*d(f1,theta,theta) \
                 - cosa(theta)/(P(r,2)*sina(theta))*d(f1,theta) \
                 - 1/(P(r,2)*sina(theta)^2)*d(f1,psi,psi) + 2*P(r,-1)*d(f2,r,theta) \
                 + 2*cosa(theta)/(P(r,1)*sina(theta))*d(f2,r) \
                 + 2/(P(r,1)*sina(theta))*d(f3,r,psi)",
                "-d(f2,r,r) - 2*P(r,-1)*d(f2,r) - 1/(P(r,2)*sina(theta)^2)*f2 \
                 + P(r,-2)*d(f2,theta,theta) + cosa(theta)/(P(r,2)*sina(theta))*d(f2,theta) \
                 - 1/(P(r,2)*sina(theta)^2)*d(f2,psi,psi) + 2*P(r,-2)*d(f1,theta) \
                 + 2*P(r,-1)*d(f1,r,theta) + 2/(P(r,2)*sina(theta))*d(f3,theta,psi)",
                "-d(f3,r,r) - 2*P(r,-1)*d(f3,r) + 1/(P(r,2)*sina(theta)^2)*f3 \
                 - P(r,-2)*d(f3,theta,theta) - cosa(theta)/(P(r,2)*sina(theta))*d(f3,theta) \
                 + 1/(P(r,2)*sina(theta)^2)*d(f3,psi,psi) \
                 + 2/(P(r,2)*sina(theta))*d(f1,psi) + 2/(P(r,1)*sina(theta))*d(f1,r,psi) \
                 + 2/(P(r,2)*sina(theta))*d(f2,theta,psi)",
            ],
        )),
    }
}

/// `grad div f - curl curl f` on the vector part.
pub fn vector_laplacian(f: &QuaternionField) -> QuaternionField {
    let mut out = QuaternionField::new(
        f.frame,
        instantiate(&vector_laplacian_template(f.frame), f.components()),
    );
    out.value.q[0] = CanonicalExpr::zero();
    out
}

/// `Delta_H f = Delta_0 f0 + vec Delta f`.
pub fn laplacian(f: &QuaternionField) -> QuaternionField {
    let mut out = vector_laplacian(f);
    out.value.q[0] = delta0(f.component(0), f.frame);
    out
}

/// `grad div f + curl curl f` on the vector part. Cartesian coordinates
/// have no separate display; there it is computed by composition.
pub fn bitsadze_vector(f: &QuaternionField) -> QuaternionField {
    match bitsadze_vector_template(f.frame) {
        Some(t) => QuaternionField::new(f.frame, instantiate(&t, f.components())),
        None => {
            let gd = grad_alpha(&div_alpha(f), f.frame);
            let cc = curl_alpha(&curl_alpha(f));
            gd + cc
        }
    }
}

/// `Delta_0 f0 + (grad div + curl curl) f`.
pub fn bitsadze(f: &QuaternionField) -> QuaternionField {
    let mut out = bitsadze_vector(f);
    out.value.q[0] = delta0(f.component(0), f.frame);
    out
}

/// The Helmholtz parameter: the formal symbol `lam` or an exact value.
#[derive(Clone, Debug, PartialEq)]
pub enum Lambda {
    Formal,
    Value(GaussRational),
}

impl Lambda {
    pub fn coeff(&self) -> Coeff {
        match self {
            Lambda::Formal => Coeff::lambda(),
            Lambda::Value(v) => Coeff::constant(v.clone()),
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Formal => f.write_str("lam"),
            Lambda::Value(v) => write!(f, "{v}"),
        }
    }
}

/// `Delta_H f + lambda^2 f`.
pub fn helmholtz_residual(f: &QuaternionField, lambda: &Lambda) -> QuaternionField {
    let l = lambda.coeff();
    let l2 = &l * &l;
    let lap = laplacian(f);
    QuaternionField::new(
        f.frame,
        std::array::from_fn(|k| lap.component(k) + &f.component(k).scale(&l2)),
    )
}

/// The four component equations of `Delta_H f + lam^2 f = 0` for the
/// abstract field, written as `Delta_0 f_k` plus coupling terms.
pub fn helmholtz_component_system(frame: Frame) -> Components {
    let coupling = match frame {
        Frame::Cartesian => template(frame, ["lam^2*f0", "lam^2*f1", "lam^2*f2", "lam^2*f3"]),
        Frame::Cylindrical => template(
            frame,
            [
                "lam^2*f0",
                "-2*P(r,-2)*d(f2,theta) + (lam^2 - P(r,-2))*f1",
                "2*P(r,-2)*d(f1,theta) + (lam^2 - P(r,-2))*f2",
                "lam^2*f3",
            ],
        ),
        Frame::Spherical => template(
            frame,
            [
                "lam^2*f0",
                "-2*P(r,-2)*d(f2,theta) - 2*cosa(theta)/(P(r,2)*sina(theta))*f2 \
                 - 2/(P(r,2)*sina(theta))*d(f3,psi) + (lam^2 - 2*P(r,-2))*f1",
                "2*P(r,-2)*d(f1,theta) - 2*cosa(theta)/(P(r,2)*sina(theta)^2)*d(f3,psi) \
                 + (lam^2 - 1/(P(r,2)*sina(theta)^2))*f2",
                "2/(P(r,2)*sina(theta))*d(f1,psi) \
                 + 2*cosa(theta)/(P(r,2)*sina(theta)^2)*d(f2,psi) \
                 + (lam^2 - 1/(P(r,2)*sina(theta)^2))*f3",
            ],
        ),
    };
    std::array::from_fn(|k| &delta0(&CanonicalExpr::component(k as u8), frame) + &coupling[k])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operator {
    Mt,
    MtRight,
    Laplacian,
    Bitsadze,
    Helmholtz,
}

impl Operator {
    pub const ALL: [Operator; 5] = [
        Operator::Mt,
        Operator::MtRight,
        Operator::Laplacian,
        Operator::Bitsadze,
        Operator::Helmholtz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operator::Mt => "mt",
            Operator::MtRight => "mt-right",
            Operator::Laplacian => "laplacian",
            Operator::Bitsadze => "bitsadze",
            Operator::Helmholtz => "helmholtz",
        }
    }

    /// Applies the operator; `lambda` is only used by `Helmholtz`.
    pub fn apply(self, f: &QuaternionField, lambda: &Lambda) -> QuaternionField {
        match self {
            Operator::Mt => mt_apply(f, Side::Left),
            Operator::MtRight => mt_apply(f, Side::Right),
            Operator::Laplacian => laplacian(f),
            Operator::Bitsadze => bitsadze(f),
            Operator::Helmholtz => helmholtz_residual(f, lambda),
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operator {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Operator::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| format!("unknown operator `{s}`"))
    }
}
