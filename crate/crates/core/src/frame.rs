//! Coordinate variables and the three supported frames.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canonical::CanonicalExpr;
use crate::quaternion::ComplexQuaternion;

/// A coordinate variable. The discriminant indexes per-variable arrays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
    R = 3,
    Theta = 4,
    Psi = 5,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::X, Var::Y, Var::Z, Var::R, Var::Theta, Var::Psi];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::R => "r",
            Var::Theta => "theta",
            Var::Psi => "psi",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    Cartesian,
    Cylindrical,
    Spherical,
}

impl Frame {
    pub const ALL: [Frame; 3] = [Frame::Cartesian, Frame::Cylindrical, Frame::Spherical];

    /// Coordinate variables in the order of the local basis vectors.
    pub fn vars(self) -> [Var; 3] {
        match self {
            Frame::Cartesian => [Var::X, Var::Y, Var::Z],
            Frame::Cylindrical => [Var::R, Var::Theta, Var::Z],
            Frame::Spherical => [Var::R, Var::Theta, Var::Psi],
        }
    }

    pub fn contains(self, v: Var) -> bool {
        self.vars().contains(&v)
    }

    pub fn name(self) -> &'static str {
        match self {
            Frame::Cartesian => "cartesian",
            Frame::Cylindrical => "cylindrical",
            Frame::Spherical => "spherical",
        }
    }

    /// Local basis vectors written over `i1, i2, i3`.
    ///
    /// Cylindrical: `e_r = cos i1 + sin i2`, `e_theta = -sin i1 + cos i2`,
    /// `e_z = i3`. Spherical uses the polar angle `theta` and azimuth `psi`.
    pub fn frame_vectors(self) -> [ComplexQuaternion<CanonicalExpr>; 3] {
        let zero = CanonicalExpr::zero;
        let one = || CanonicalExpr::constant_int(1);
        let vector = |a: CanonicalExpr, b: CanonicalExpr, c: CanonicalExpr| {
            ComplexQuaternion::new(zero(), a, b, c)
        };
        match self {
            Frame::Cartesian => [
                vector(one(), zero(), zero()),
                vector(zero(), one(), zero()),
                vector(zero(), zero(), one()),
            ],
            Frame::Cylindrical => {
                let s = CanonicalExpr::sin(Var::Theta);
                let c = CanonicalExpr::cos(Var::Theta);
                [
                    vector(c.clone(), s.clone(), zero()),
                    vector(-&s, c, zero()),
                    vector(zero(), zero(), one()),
                ]
            }
            Frame::Spherical => {
                let st = CanonicalExpr::sin(Var::Theta);
                let ct = CanonicalExpr::cos(Var::Theta);
                let sp = CanonicalExpr::sin(Var::Psi);
                let cp = CanonicalExpr::cos(Var::Psi);
                [
                    vector(&st * &cp, &st * &sp, ct.clone()),
                    vector(&ct * &cp, &ct * &sp, -&st),
                    vector(-&sp, cp, zero()),
                ]
            }
        }
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Frame {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cartesian" => Ok(Frame::Cartesian),
            "cylindrical" => Ok(Frame::Cylindrical),
            "spherical" => Ok(Frame::Spherical),
            other => Err(format!(
                "unknown frame `{other}` (expected cartesian, cylindrical or spherical)"
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::{cross, dot};

    #[test]
    fn frame_vectors_are_orthonormal() {
        for frame in Frame::ALL {
            let e = frame.frame_vectors();
            for i in 0..3 {
                for j in 0..3 {
                    let expected = CanonicalExpr::constant_int(i64::from(i == j));
                    assert_eq!(dot(&e[i], &e[j]), expected, "{frame} e{i}.e{j}");
                }
            }
        }
    }

    #[test]
    fn frames_are_right_handed() {
        for frame in Frame::ALL {
            let [e1, e2, e3] = frame.frame_vectors();
            assert_eq!(e1.qmul(&e2), e3, "{frame}: e1 e2 = e3");
            assert_eq!(cross(&e2, &e3), e1, "{frame}: e2 x e3 = e1");
        }
    }

    #[test]
    fn frame_names_round_trip() {
        for frame in Frame::ALL {
            assert_eq!(frame.name().parse::<Frame>().unwrap(), frame);
        }
        assert!("polar".parse::<Frame>().is_err());
    }
}
