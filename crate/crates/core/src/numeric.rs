//! Numeric evaluation of canonical expressions at a point.
//!
//! `P(v,n)` becomes `u^n` with `u = v^alpha`, the trigonometric and
//! exponential generators are summed as series at `u` (times the scale for
//! `Ea`), and component symbols are looked up in [`Bindings`].
//! Canonicalization happens before evaluation, so the Pythagorean reduction
//! is already applied.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::canonical::CanonicalExpr;
use crate::expr::ComponentSymbol;
use crate::frame::Var;
use crate::par;
use crate::special::{cos_alpha, ml_exp, sin_alpha, Alpha, SeriesError};

/// Coordinate values, one slot per variable.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point {
    values: [Option<f64>; 6],
}

impl Point {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Var, value: f64) -> Self {
        self.set(v, value);
        self
    }

    pub fn set(&mut self, v: Var, value: f64) {
        self.values[v.index()] = Some(value);
    }

    pub fn get(&self, v: Var) -> Option<f64> {
        self.values[v.index()]
    }
}

pub type SymbolFn = Arc<dyn Fn(&Point) -> Complex64 + Send + Sync>;

#[derive(Clone)]
pub enum Binding {
    Constant(Complex64),
    Function(SymbolFn),
}

impl fmt::Debug for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Binding::Constant(c) => write!(f, "Constant({c})"),
            Binding::Function(_) => f.write_str("Function(..)"),
        }
    }
}

/// Values for `lam` and for component symbols such as `f1` or `d(f1,r)`.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    pub lambda: Option<Complex64>,
    symbols: HashMap<ComponentSymbol, Binding>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_lambda(mut self, lambda: Complex64) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn constant(mut self, sym: ComponentSymbol, value: Complex64) -> Self {
        self.symbols.insert(sym, Binding::Constant(value));
        self
    }

    pub fn function(
        mut self,
        sym: ComponentSymbol,
        f: impl Fn(&Point) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        self.symbols.insert(sym, Binding::Function(Arc::new(f)));
        self
    }

    fn lookup(&self, sym: &ComponentSymbol, point: &Point) -> Option<Complex64> {
        self.symbols.get(sym).map(|b| match b {
            Binding::Constant(c) => *c,
            Binding::Function(f) => f(point),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum EvalError {
    #[error("variable {0} has no value")]
    UnboundVariable(Var),
    #[error("symbol {0} has no binding")]
    UnboundSymbol(String),
    #[error("lam has no value")]
    UnboundLambda,
    #[error("{var} = {value} is negative; fractal powers of negative bases are only defined for alpha = 1")]
    NegativeBase { var: Var, value: f64 },
    #[error("expression is singular at {var} = {value}")]
    Singular { var: Var, value: f64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

struct Evaluator<'a> {
    point: &'a Point,
    alpha: Alpha,
    tol: f64,
    args: HashMap<Var, f64>,
    trig: HashMap<Var, (Complex64, Complex64)>,
}

impl Evaluator<'_> {
    /// `v^alpha` at the point.
    fn arg(&mut self, v: Var) -> Result<f64, EvalError> {
        if let Some(u) = self.args.get(&v) {
            return Ok(*u);
        }
        let x = self.point.get(v).ok_or(EvalError::UnboundVariable(v))?;
        let u = if x >= 0.0 {
            x.powf(self.alpha.value())
        } else if self.alpha == Alpha::ONE {
            x
        } else {
            return Err(EvalError::NegativeBase { var: v, value: x });
        };
        self.args.insert(v, u);
        Ok(u)
    }

    fn trig(&mut self, v: Var) -> Result<(Complex64, Complex64), EvalError> {
        if let Some(sc) = self.trig.get(&v) {
            return Ok(*sc);
        }
        let u = Complex64::new(self.arg(v)?, 0.0);
        let s = sin_alpha(self.alpha, u, self.tol)?.value;
        let c = cos_alpha(self.alpha, u, self.tol)?.value;
        self.trig.insert(v, (s, c));
        Ok((s, c))
    }

    fn singular(&self, v: Var) -> EvalError {
        EvalError::Singular {
            var: v,
            value: self.point.get(v).unwrap_or(f64::NAN),
        }
    }
}

/// Evaluates `e` at `point`. Every variable and symbol that occurs must be
/// bound, and `lam` must be bound if it occurs.
pub fn eval_numeric(
    e: &CanonicalExpr,
    point: &Point,
    bindings: &Bindings,
    alpha: Alpha,
    tol: f64,
) -> Result<Complex64, EvalError> {
    let mut ev = Evaluator {
        point,
        alpha,
        tol,
        args: HashMap::new(),
        trig: HashMap::new(),
    };
    let lam = |c: &crate::coeff::Coeff| -> Result<Complex64, EvalError> {
        match (c.as_constant(), bindings.lambda) {
            (Some(k), _) => Ok(k.to_complex()),
            (None, Some(l)) => Ok(c.evaluate(l)),
            (None, None) => Err(EvalError::UnboundLambda),
        }
    };
    let mut total = Complex64::new(0.0, 0.0);
    for (m, c) in e.terms() {
        let mut term = lam(c)?;
        for v in Var::ALL {
            let n = m.fractal_exponent(v);
            if n != 0 {
                let u = ev.arg(v)?;
                if u == 0.0 && n < 0 {
                    return Err(ev.singular(v));
                }
                term *= u.powi(n);
            }
            let (s_exp, c_exp) = m.trig_signature(v);
            if s_exp != 0 || c_exp != 0 {
                let (s, co) = ev.trig(v)?;
                if s_exp < 0 && s.norm() == 0.0 {
                    return Err(ev.singular(v));
                }
                term *= s.powi(s_exp) * co.powu(c_exp.into());
            }
        }
        for (key, power) in m.exponentials() {
            let scale = lam(&key.scale)?;
            let u = ev.arg(key.var)?;
            let value = ml_exp(alpha, scale * u, tol)?.value;
            term *= value.powu(*power);
        }
        for sym in m.symbols() {
            let value = bindings
                .lookup(sym, point)
                .ok_or_else(|| EvalError::UnboundSymbol(sym.to_string()))?;
            term *= value;
        }
        total += term;
    }
    Ok(total)
}

/// Evaluates `e` at many points, in parallel when enabled.
pub fn eval_batch(
    e: &CanonicalExpr,
    points: &[Point],
    bindings: &Bindings,
    alpha: Alpha,
    tol: f64,
) -> Vec<Result<Complex64, EvalError>> {
    par::map_slice(points, |p| eval_numeric(e, p, bindings, alpha, tol))
}

pub fn eval_batch_sequential(
    e: &CanonicalExpr,
    points: &[Point],
    bindings: &Bindings,
    alpha: Alpha,
    tol: f64,
) -> Vec<Result<Complex64, EvalError>> {
    par::map_slice_sequential(points, |p| eval_numeric(e, p, bindings, alpha, tol))
}
