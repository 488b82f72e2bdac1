//! Mechanical verification of the operator identities on the fully
//! abstract field `f0 + f1 e1 + f2 e2 + f3 e3`.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::canonical::CanonicalExpr;
use crate::derivative::DerivativeMode;
use crate::frame::Frame;
use crate::operators::{bitsadze, delta0, helmholtz_residual, laplacian, mt_apply, Lambda, Side};
use crate::par;
use crate::vector_ops::{curl_alpha, div_alpha, grad_alpha, QuaternionField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityName {
    /// `D D f = -Delta_H f`
    MtSquared,
    /// `D (f D) = -Bitsadze f`
    BitsadzeFactorization,
    /// `-(D - lam)(D + lam) f = Delta_H f + lam^2 f`
    HelmholtzFactorization,
    /// `curl grad f0 = 0`
    CurlGrad,
    /// `div curl f = 0`
    DivCurl,
    /// `div grad f0 = Delta_0 f0`
    DivGradDelta0,
}

impl IdentityName {
    pub const ALL: [IdentityName; 6] = [
        IdentityName::MtSquared,
        IdentityName::BitsadzeFactorization,
        IdentityName::HelmholtzFactorization,
        IdentityName::CurlGrad,
        IdentityName::DivCurl,
        IdentityName::DivGradDelta0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityName::MtSquared => "mt_squared",
            IdentityName::BitsadzeFactorization => "bitsadze_factorization",
            IdentityName::HelmholtzFactorization => "helmholtz_factorization",
            IdentityName::CurlGrad => "curl_grad",
            IdentityName::DivCurl => "div_curl",
            IdentityName::DivGradDelta0 => "div_grad_delta0",
        }
    }

    /// Frames checked when running the whole suite.
    pub fn default_frames(self) -> &'static [Frame] {
        match self {
            IdentityName::MtSquared | IdentityName::HelmholtzFactorization => &Frame::ALL,
            _ => &[Frame::Cylindrical, Frame::Spherical],
        }
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityName {
    type Err = UnknownIdentity;
    fn from_str(s: &str) -> Result<Self, UnknownIdentity> {
        IdentityName::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| UnknownIdentity(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown identity `{0}`")]
pub struct UnknownIdentity(pub String);

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub identity: IdentityName,
    pub frame: Frame,
    pub mode: DerivativeMode,
    /// Scalar residual followed by the three vector residuals.
    pub residuals: [CanonicalExpr; 4],
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.residuals.iter().all(CanonicalExpr::is_empty)
    }

    /// One-line JSON document.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl Serialize for IdentityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("IdentityReport", 5)?;
        s.serialize_field("identity", self.identity.name())?;
        s.serialize_field("frame", &self.frame)?;
        s.serialize_field("mode", &self.mode)?;
        s.serialize_field("pass", &self.pass())?;
        let residuals: Vec<String> = self.residuals.iter().map(ToString::to_string).collect();
        s.serialize_field("residuals", &residuals)?;
        s.end()
    }
}

fn residual_field(frame: Frame, name: IdentityName) -> QuaternionField {
    let f = QuaternionField::abstract_field(frame);
    match name {
        IdentityName::MtSquared => {
            let dd = mt_apply(&mt_apply(&f, Side::Left), Side::Left);
            dd + laplacian(&f)
        }
        IdentityName::BitsadzeFactorization => {
            let dd = mt_apply(&mt_apply(&f, Side::Right), Side::Left);
            dd + bitsadze(&f)
        }
        IdentityName::HelmholtzFactorization => {
            let lam = Lambda::Formal.coeff();
            let plus = mt_apply(&f, Side::Left) + f.map(|c| c.scale(&lam));
            let minus = mt_apply(&plus, Side::Left) - plus.map(|c| c.scale(&lam));
            -minus - helmholtz_residual(&f, &Lambda::Formal)
        }
        IdentityName::CurlGrad => curl_alpha(&grad_alpha(f.component(0), frame)),
        IdentityName::DivCurl => QuaternionField::scalar(frame, div_alpha(&curl_alpha(&f))),
        IdentityName::DivGradDelta0 => {
            let f0 = f.component(0);
            let dg = div_alpha(&grad_alpha(f0, frame));
            QuaternionField::scalar(frame, &dg - &delta0(f0, frame))
        }
    }
}

/// Left side minus right side of `name` in `frame`, fully normalized.
pub fn verify_identity(name: IdentityName, frame: Frame) -> IdentityReport {
    IdentityReport {
        identity: name,
        frame,
        mode: DerivativeMode::Derivation,
        residuals: residual_field(frame, name).value.q,
    }
}

/// Every identity in its default frames: 14 checks.
pub fn default_matrix() -> Vec<(IdentityName, Frame)> {
    IdentityName::ALL
        .into_iter()
        .flat_map(|id| id.default_frames().iter().map(move |&f| (id, f)))
        .collect()
}

/// Selects checks: `None` means every identity, or every default frame.
pub fn select(identity: Option<IdentityName>, frame: Option<Frame>) -> Vec<(IdentityName, Frame)> {
    match (identity, frame) {
        (Some(id), Some(f)) => vec![(id, f)],
        (Some(id), None) => id.default_frames().iter().map(|&f| (id, f)).collect(),
        (None, Some(f)) => default_matrix()
            .into_iter()
            .filter(|&(_, g)| g == f)
            .collect(),
        (None, None) => default_matrix(),
    }
}

/// Runs the checks concurrently when the `parallel` feature is enabled.
pub fn verify_matrix(checks: &[(IdentityName, Frame)]) -> Vec<IdentityReport> {
    par::map_slice(checks, |&(id, f)| verify_identity(id, f))
}

pub fn verify_matrix_sequential(checks: &[(IdentityName, Frame)]) -> Vec<IdentityReport> {
    par::map_slice_sequential(checks, |&(id, f)| verify_identity(id, f))
}
