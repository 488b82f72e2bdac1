//! Field specification documents (JSON or TOML).
//!
//! ```toml
//! alpha = 0.5
//! frame = "cylindrical"
//! lambda = "formal"        # optional; or an exact constant such as "3/2 + 2i"
//!
//! [components]
//! f0 = "P(r,1)"
//! f2 = "sina(theta)*f2"    # missing components default to "0"
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical::normalize;
use crate::expr::parse;
use crate::frame::Frame;
use crate::operators::Lambda;
use crate::special::Alpha;
use crate::vector_ops::{FieldError, QuaternionField};

fn zero() -> String {
    "0".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentStrings {
    #[serde(default = "zero")]
    pub f0: String,
    #[serde(default = "zero")]
    pub f1: String,
    #[serde(default = "zero")]
    pub f2: String,
    #[serde(default = "zero")]
    pub f3: String,
}

impl Default for ComponentStrings {
    fn default() -> Self {
        Self {
            f0: zero(),
            f1: zero(),
            f2: zero(),
            f3: zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LambdaValue {
    Number(f64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpecDocument {
    pub alpha: f64,
    pub frame: String,
    #[serde(default)]
    pub components: ComponentStrings,
    #[serde(default)]
    pub lambda: Option<LambdaValue>,
}

/// A validated document.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldSpec {
    pub alpha: Alpha,
    pub field: QuaternionField,
    pub lambda: Lambda,
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid TOML: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("alpha must lie in (0, 1], got {0}")]
    Alpha(f64),
    #[error("{0}")]
    Frame(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("lambda: {0}")]
    Lambda(String),
}

impl FieldSpecDocument {
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_toml(text: &str) -> Result<Self, SpecError> {
        Ok(toml::from_str(text)?)
    }

    /// Reads a file; `.toml` files are TOML, everything else is JSON.
    pub fn load(path: &Path) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
            path: path.display().to_string(),
            source,
        })?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => Self::from_toml(&text),
            _ => Self::from_json(&text),
        }
    }

    pub fn validate(&self) -> Result<FieldSpec, SpecError> {
        let alpha = Alpha::new(self.alpha).map_err(|_| SpecError::Alpha(self.alpha))?;
        let frame: Frame = self.frame.parse().map_err(SpecError::Frame)?;
        let c = &self.components;
        let field = QuaternionField::parse(frame, [&c.f0, &c.f1, &c.f2, &c.f3])?;
        let lambda = match &self.lambda {
            None => Lambda::Formal,
            Some(LambdaValue::Text(t)) if t.trim() == "formal" => Lambda::Formal,
            Some(LambdaValue::Text(t)) => parse_lambda(t, frame)?,
            Some(LambdaValue::Number(x)) => parse_lambda(&x.to_string(), frame)?,
        };
        // `lam` inside the components denotes the document's lambda
        let field = match &lambda {
            Lambda::Value(v) => field.map(|c| c.substitute_lambda(v)),
            Lambda::Formal => field,
        };
        Ok(FieldSpec {
            alpha,
            field,
            lambda,
        })
    }
}

/// An exact constant such as `2`, `0.25`, `1/2 - 3i`.
pub fn parse_lambda(text: &str, frame: Frame) -> Result<Lambda, SpecError> {
    let e = parse(text, frame).map_err(|e| SpecError::Lambda(e.to_string()))?;
    let c = normalize(&e).map_err(|e| SpecError::Lambda(e.to_string()))?;
    c.as_constant()
        .and_then(|k| k.as_constant())
        .map(Lambda::Value)
        .ok_or_else(|| SpecError::Lambda(format!("`{text}` is not a constant")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::CanonicalExpr;
    use crate::coeff::{Coeff, GaussRational};
    use crate::frame::Var;

    #[test]
    fn json_with_defaults() {
        let doc = FieldSpecDocument::from_json(
            r#"{"alpha": 0.5, "frame": "cylindrical", "components": {"f0": "P(r,1)"}}"#,
        )
        .unwrap();
        let spec = doc.validate().unwrap();
        assert_eq!(spec.alpha, Alpha::HALF);
        assert_eq!(spec.field.frame, Frame::Cylindrical);
        assert!(spec.field.component(1).is_zero());
        assert_eq!(spec.lambda, Lambda::Formal);
    }

    #[test]
    fn toml_with_lambda() {
        let doc = FieldSpecDocument::from_toml(
            "alpha = 1.0\nframe = \"spherical\"\nlambda = \"1/2 + i\"\n[components]\nf3 = \"f3\"\n",
        )
        .unwrap();
        let spec = doc.validate().unwrap();
        let expected = &GaussRational::from_ratio(1, 2) + &GaussRational::imaginary_unit();
        assert_eq!(spec.lambda, Lambda::Value(expected));
        let numeric =
            FieldSpecDocument::from_json(r#"{"alpha": 1, "frame": "cartesian", "lambda": 0.25}"#)
                .unwrap()
                .validate()
                .unwrap();
        assert_eq!(
            numeric.lambda,
            Lambda::Value(GaussRational::from_ratio(1, 4))
        );
    }

    #[test]
    fn lambda_value_reaches_components() {
        let spec = FieldSpecDocument::from_json(
            r#"{"alpha": 1, "frame": "cylindrical", "lambda": 2, "components": {"f0": "Ea(i*lam, z)"}}"#,
        )
        .unwrap()
        .validate()
        .unwrap();
        let two_i = &GaussRational::from_integer(2) * &GaussRational::imaginary_unit();
        assert_eq!(
            spec.field.component(0),
            &CanonicalExpr::ea(Coeff::constant(two_i), Var::Z)
        );
    }

    #[test]
    fn validation_errors() {
        let bad_alpha =
            FieldSpecDocument::from_json(r#"{"alpha": 1.5, "frame": "cartesian"}"#).unwrap();
        assert!(matches!(bad_alpha.validate(), Err(SpecError::Alpha(_))));
        let bad_frame =
            FieldSpecDocument::from_json(r#"{"alpha": 0.5, "frame": "polar"}"#).unwrap();
        assert!(matches!(bad_frame.validate(), Err(SpecError::Frame(_))));
        let bad_var = FieldSpecDocument::from_json(
            r#"{"alpha": 0.5, "frame": "cartesian", "components": {"f1": "P(r,1)"}}"#,
        )
        .unwrap();
        assert!(matches!(bad_var.validate(), Err(SpecError::Field(_))));
        let bad_lambda =
            FieldSpecDocument::from_json(r#"{"alpha": 0.5, "frame": "cartesian", "lambda": "f1"}"#)
                .unwrap();
        assert!(matches!(bad_lambda.validate(), Err(SpecError::Lambda(_))));
        assert!(
            FieldSpecDocument::from_json(r#"{"alpha": 0.5, "frame": "x", "extra": 1}"#).is_err()
        );
    }
}
