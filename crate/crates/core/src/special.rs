//! Gamma function, the Cantor-set functions `E_alpha`, `sin_alpha`,
//! `cos_alpha` as truncated series, and series in the Gamma-normalized basis
//! `J_k(x) = x^(k alpha) / Gamma(1 + k alpha)`.
//!
//! Every function takes the fractal argument `u` (standing for `c x^alpha`)
//! rather than `x`. Sums are exact to within `tol` for `|u|` up to about 10;
//! larger arguments lose digits to cancellation before the 500-term cap is
//! reached.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 500;

/// Largest `x` with finite `Gamma(x)` in double precision.
const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SeriesError {
    #[error("fractal order {0} outside (0, 1]")]
    InvalidAlpha(f64),
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("Gamma({0}) overflows double precision")]
    GammaRange(f64),
    #[error("series did not converge within {terms} terms (last term magnitude {last_term:e})")]
    NotConverged { terms: usize, last_term: f64 },
}

/// The fractal order, `0 < alpha <= 1`. `alpha = 1` reduces every function
/// to its classical counterpart.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self, SeriesError> {
        if value > 0.0 && value <= 1.0 {
            Ok(Self(value))
        } else {
            Err(SeriesError::InvalidAlpha(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub const ONE: Alpha = Alpha(1.0);
    pub const HALF: Alpha = Alpha(0.5);
}

impl TryFrom<f64> for Alpha {
    type Error = SeriesError;
    fn try_from(v: f64) -> Result<Self, Self::Error> {
        Alpha::new(v)
    }
}

impl From<Alpha> for f64 {
    fn from(a: Alpha) -> f64 {
        a.0
    }
}

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(x: f64) -> f64 {
    // x already shifted by -1
    LANCZOS_COEF[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEF[0], |acc, (i, c)| {
            acc + c / (x + (i + 1) as f64)
        })
}

/// Euler's gamma function for real arguments.
pub fn gamma(x: f64) -> Result<f64, SeriesError> {
    if x > GAMMA_MAX_ARG {
        return Err(SeriesError::GammaRange(x));
    }
    if x >= 1.0 && x.fract() == 0.0 {
        // (x-1)! by running product, exact through 22!
        return Ok((2..x as u32).fold(1.0, |acc, k| acc * f64::from(k)));
    }
    if x < 0.5 {
        // reflection
        let s = (PI * x).sin();
        return Ok(PI / (s * gamma(1.0 - x)?));
    }
    let x = x - 1.0;
    let t = x + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * lanczos_sum(x))
}

/// `ln Gamma(x)` for `x >= 0.5`, finite far beyond the range of [`gamma`].
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x >= 0.5);
    let x = x - 1.0;
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + lanczos_sum(x).ln()
}

/// `Gamma(1 + k alpha)`.
pub fn gamma_one_plus(alpha: Alpha, k: u32) -> Result<f64, SeriesError> {
    gamma(1.0 + f64::from(k) * alpha.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesSum {
    pub value: Complex64,
    /// Number of terms added.
    pub terms: usize,
}

/// Sums `sum_k s_k u^(n_k) / Gamma(1 + n_k alpha)` with `n_k = first + step k`
/// and `s_k = (-1)^k` when `alternating`.
fn fractal_series(
    alpha: Alpha,
    u: Complex64,
    tol: f64,
    first: u32,
    step: u32,
    alternating: bool,
) -> Result<SeriesSum, SeriesError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(SeriesError::InvalidTolerance(tol));
    }
    let a = alpha.0;
    let mut sum = Complex64::zero();
    let mut prev_mag = f64::INFINITY;
    let ln_abs_u = u.norm().ln();
    let phase = if u.is_zero() {
        Complex64::zero()
    } else {
        u / u.norm()
    };
    for k in 0..MAX_TERMS {
        let n = first + step * k as u32;
        let arg = 1.0 + f64::from(n) * a;
        let term = if n == 0 {
            Complex64::new(1.0, 0.0)
        } else if u.is_zero() {
            Complex64::zero()
        } else if arg < 150.0 && f64::from(n) * ln_abs_u < 600.0 {
            u.powu(n) / gamma(arg)?
        } else {
            let mag = (f64::from(n) * ln_abs_u - ln_gamma(arg)).exp();
            phase.powu(n) * mag
        };
        let term = if alternating && k % 2 == 1 {
            -term
        } else {
            term
        };
        sum += term;
        let mag = term.norm();
        if !mag.is_finite() {
            return Err(SeriesError::NotConverged {
                terms: k + 1,
                last_term: mag,
            });
        }
        if mag < tol && mag <= prev_mag {
            return Ok(SeriesSum {
                value: sum,
                terms: k + 1,
            });
        }
        prev_mag = mag;
    }
    Err(SeriesError::NotConverged {
        terms: MAX_TERMS,
        last_term: prev_mag,
    })
}

/// `E_alpha(u) = sum_k u^k / Gamma(1 + k alpha)`.
pub fn ml_exp(alpha: Alpha, u: Complex64, tol: f64) -> Result<SeriesSum, SeriesError> {
    fractal_series(alpha, u, tol, 0, 1, false)
}

/// `sin_alpha(u) = sum_k (-1)^k u^(2k+1) / Gamma(1 + (2k+1) alpha)`.
pub fn sin_alpha(alpha: Alpha, u: Complex64, tol: f64) -> Result<SeriesSum, SeriesError> {
    fractal_series(alpha, u, tol, 1, 2, true)
}

/// `cos_alpha(u) = sum_k (-1)^k u^(2k) / Gamma(1 + 2k alpha)`.
pub fn cos_alpha(alpha: Alpha, u: Complex64, tol: f64) -> Result<SeriesSum, SeriesError> {
    fractal_series(alpha, u, tol, 0, 2, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesFunction {
    Ea,
    Sina,
    Cosa,
}

impl SeriesFunction {
    pub fn eval(self, alpha: Alpha, u: Complex64, tol: f64) -> Result<SeriesSum, SeriesError> {
        match self {
            SeriesFunction::Ea => ml_exp(alpha, u, tol),
            SeriesFunction::Sina => sin_alpha(alpha, u, tol),
            SeriesFunction::Cosa => cos_alpha(alpha, u, tol),
        }
    }
}

impl std::str::FromStr for SeriesFunction {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "Ea" | "ea" => Ok(SeriesFunction::Ea),
            "sina" => Ok(SeriesFunction::Sina),
            "cosa" => Ok(SeriesFunction::Cosa),
            other => Err(format!(
                "unknown series function `{other}` (expected Ea, sina or cosa)"
            )),
        }
    }
}

/// Evaluates `function` at every argument, in parallel when available.
pub fn eval_batch(
    function: SeriesFunction,
    alpha: Alpha,
    us: &[Complex64],
    tol: f64,
) -> Vec<Result<SeriesSum, SeriesError>> {
    crate::par::map_slice(us, |&u| function.eval(alpha, u, tol))
}

pub fn eval_batch_sequential(
    function: SeriesFunction,
    alpha: Alpha,
    us: &[Complex64],
    tol: f64,
) -> Vec<Result<SeriesSum, SeriesError>> {
    crate::par::map_slice_sequential(us, |&u| function.eval(alpha, u, tol))
}

/// Index shift `c_k <- c_(k+1)`: the local fractional derivative acting on
/// the `J` basis. A length-one input maps to the zero constant.
pub fn shift_coefficients<T: Clone + Zero>(coeffs: &[T]) -> Vec<T> {
    if coeffs.len() <= 1 {
        return vec![T::zero()];
    }
    coeffs[1..].to_vec()
}

/// A truncated series `sum_k coeffs[k] J_k(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct JSeries {
    pub alpha: Alpha,
    coeffs: Vec<Complex64>,
}

impl JSeries {
    /// An empty coefficient list is stored as the zero constant.
    pub fn new(alpha: Alpha, mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex64::zero());
        }
        Self { alpha, coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `E_alpha` truncated at `J_order`.
    pub fn exp(alpha: Alpha, order: usize) -> Self {
        Self::new(alpha, vec![Complex64::new(1.0, 0.0); order + 1])
    }

    pub fn sin(alpha: Alpha, order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| match k % 4 {
                1 => Complex64::new(1.0, 0.0),
                3 => Complex64::new(-1.0, 0.0),
                _ => Complex64::zero(),
            })
            .collect();
        Self::new(alpha, coeffs)
    }

    pub fn cos(alpha: Alpha, order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| match k % 4 {
                0 => Complex64::new(1.0, 0.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::zero(),
            })
            .collect();
        Self::new(alpha, coeffs)
    }

    /// Sum at `x >= 0`.
    pub fn evaluate(&self, x: f64) -> Result<Complex64, SeriesError> {
        let xa = x.powf(self.alpha.0);
        let mut sum = Complex64::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let basis = if k == 0 {
                1.0
            } else {
                xa.powi(k as i32) / gamma_one_plus(self.alpha, k as u32)?
            };
            sum += c * basis;
        }
        Ok(sum)
    }
}

/// `D[J_k] = J_(k-1)`, `D[J_0] = 0`.
pub fn series_shift_derivative(s: &JSeries) -> JSeries {
    JSeries::new(s.alpha, shift_coefficients(&s.coeffs))
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum LimitError {
    #[error("need at least three step sizes, got {0}")]
    TooFewSteps(usize),
    #[error("step sizes must be positive and strictly decreasing")]
    BadSteps,
    #[error("difference quotients diverge; the local fractional derivative does not exist")]
    Divergent { quotients: Vec<Complex64> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    /// Extrapolated value of the limit.
    pub estimate: Complex64,
    pub steps: Vec<f64>,
    pub quotients: Vec<Complex64>,
}

/// Geometric steps `h0 / 2^n`, `n = 0..count`.
pub fn halving_steps(h0: f64, count: usize) -> Vec<f64> {
    (0..count).map(|n| h0 / 2f64.powi(n as i32)).collect()
}

/// Estimates `D f(0) = lim Gamma(1+alpha) (f(h) - f(0)) / h^alpha`.
///
/// Quotients are extrapolated to `h = 0` by polynomial extrapolation in
/// `t = h^alpha` over the last four steps.
pub fn limit_definition_derivative_at_zero<F>(
    f: F,
    alpha: Alpha,
    steps: &[f64],
) -> Result<LimitReport, LimitError>
where
    F: Fn(f64) -> Complex64,
{
    if steps.len() < 3 {
        return Err(LimitError::TooFewSteps(steps.len()));
    }
    if steps.iter().any(|&h| h.is_nan() || h <= 0.0) || steps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(LimitError::BadSteps);
    }
    let a = alpha.0;
    let g = gamma(1.0 + a).expect("alpha <= 1");
    let f0 = f(0.0);
    let quotients: Vec<Complex64> = steps.iter().map(|&h| (f(h) - f0) * g / h.powf(a)).collect();

    let divergent = || LimitError::Divergent {
        quotients: quotients.clone(),
    };
    if quotients.iter().any(|q| !q.is_finite()) {
        return Err(divergent());
    }
    // growing magnitudes with non-shrinking increments
    let n = quotients.len();
    let diffs: Vec<f64> = quotients.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    let tail = &diffs[diffs.len().saturating_sub(3)..];
    let increments_grow = tail.len() >= 2 && tail.windows(2).all(|w| w[1] >= w[0] && w[1] > 0.0);
    let magnitudes_grow = quotients[n - 3..]
        .windows(2)
        .all(|w| w[1].norm() > w[0].norm());
    if increments_grow && magnitudes_grow {
        return Err(divergent());
    }

    let m = n.min(4);
    let ts: Vec<f64> = steps[n - m..].iter().map(|h| h.powf(a)).collect();
    let mut table: Vec<Complex64> = quotients[n - m..].to_vec();
    // Neville's scheme evaluated at t = 0
    for level in 1..m {
        for i in 0..m - level {
            let (ti, tj) = (ts[i], ts[i + level]);
            table[i] = (table[i + 1] * ti - table[i] * tj) / (ti - tj);
        }
    }
    Ok(LimitReport {
        estimate: table[0],
        steps: steps.to_vec(),
        quotients,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn gamma_known_values() {
        assert_eq!(gamma_one_plus(Alpha::new(0.7).unwrap(), 0).unwrap(), 1.0);
        assert!((gamma_one_plus(Alpha::HALF, 2).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma_one_plus(Alpha::HALF, 1).unwrap() - 0.886_226_925_452_758).abs() < 1e-14);
        assert!((gamma(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn gamma_overflow_is_a_range_error() {
        assert!(matches!(
            gamma_one_plus(Alpha::ONE, 200),
            Err(SeriesError::GammaRange(_))
        ));
        assert!(gamma_one_plus(Alpha::ONE, 170).is_ok());
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for x in [0.5, 1.0, 2.5, 10.0, 100.0] {
            assert!((ln_gamma(x) - gamma(x).unwrap().ln()).abs() < 1e-12, "{x}");
        }
    }

    #[test]
    fn alpha_bounds() {
        assert!(Alpha::new(0.0).is_err());
        assert!(Alpha::new(1.5).is_err());
        assert!(Alpha::new(f64::NAN).is_err());
        assert!(Alpha::new(1.0).is_ok());
    }

    #[test]
    fn series_at_zero() {
        let a = Alpha::new(0.3).unwrap();
        assert_eq!(ml_exp(a, re(0.0), 1e-12).unwrap().value, re(1.0));
        assert_eq!(sin_alpha(a, re(0.0), 1e-12).unwrap().value, re(0.0));
        assert_eq!(cos_alpha(a, re(0.0), 1e-12).unwrap().value, re(1.0));
    }

    #[test]
    fn classical_limit() {
        let e = ml_exp(Alpha::ONE, re(1.0), 1e-15).unwrap().value;
        assert!((e.re - std::f64::consts::E).abs() < 1e-14);
        let s = sin_alpha(Alpha::ONE, re(1.0), 1e-15).unwrap().value;
        let c = cos_alpha(Alpha::ONE, re(1.0), 1e-15).unwrap().value;
        assert!((s.re - 0.841_470_984_807_896_5).abs() < 1e-14);
        assert!((c.re - 0.540_302_305_868_139_8).abs() < 1e-14);
    }

    #[test]
    fn complex_argument_gives_euler_formula() {
        // E_1(i u) = cos u + i sin u
        let z = ml_exp(Alpha::ONE, Complex64::new(0.0, 0.8), 1e-15)
            .unwrap()
            .value;
        assert!((z - Complex64::new(0.8f64.cos(), 0.8f64.sin())).norm() < 1e-14);
    }

    #[test]
    fn invalid_tolerance_and_non_convergence() {
        assert!(matches!(
            ml_exp(Alpha::ONE, re(1.0), 0.0),
            Err(SeriesError::InvalidTolerance(_))
        ));
        // alpha small makes Gamma(1 + k alpha) grow too slowly for |u| = 50
        assert!(matches!(
            ml_exp(Alpha::new(0.05).unwrap(), re(50.0), 1e-12),
            Err(SeriesError::NotConverged { .. })
        ));
    }

    #[test]
    fn shift_derivative_examples() {
        let a = Alpha::HALF;
        let e = JSeries::exp(a, 8);
        let de = series_shift_derivative(&e);
        assert_eq!(de.truncation_order(), 7);
        assert!(de.coeffs().iter().all(|c| *c == re(1.0)));
        assert_eq!(
            series_shift_derivative(&JSeries::sin(a, 9)),
            JSeries::cos(a, 8)
        );
        let j3 = JSeries::new(a, vec![re(0.0), re(0.0), re(0.0), re(1.0)]);
        let j2 = JSeries::new(a, vec![re(0.0), re(0.0), re(1.0)]);
        assert_eq!(series_shift_derivative(&j3), j2);
    }

    #[test]
    fn repeated_shift_reaches_zero() {
        let s = JSeries::cos(Alpha::HALF, 6);
        let mut t = s.clone();
        for _ in 0..=s.truncation_order() {
            t = series_shift_derivative(&t);
        }
        assert!(t.is_zero());
    }

    #[test]
    fn truncated_series_evaluate_near_closed_forms() {
        let s = JSeries::sin(Alpha::ONE, 30);
        assert!((s.evaluate(1.2).unwrap().re - 1.2f64.sin()).abs() < 1e-14);
    }

    #[test]
    fn limit_of_power_functions() {
        let a = Alpha::HALF;
        let steps = halving_steps(0.1, 20);
        let r = limit_definition_derivative_at_zero(|x| re(x.powf(0.5)), a, &steps).unwrap();
        assert!((r.estimate.re - 0.886_226_925_452_758).abs() < 1e-12);
        let r = limit_definition_derivative_at_zero(re, a, &steps).unwrap();
        assert!(r.estimate.norm() < 1e-9, "{:?}", r.estimate);
    }

    #[test]
    fn limit_of_fractal_exponential() {
        let a = Alpha::HALF;
        let steps = halving_steps(0.01, 30);
        let r = limit_definition_derivative_at_zero(
            |x| ml_exp(a, re(x.powf(0.5)), 1e-16).unwrap().value,
            a,
            &steps,
        )
        .unwrap();
        assert!((r.estimate.re - 1.0).abs() < 1e-6, "{:?}", r.estimate);
    }

    #[test]
    fn divergent_quotients_are_reported() {
        let a = Alpha::HALF;
        let steps = halving_steps(0.1, 12);
        let err = limit_definition_derivative_at_zero(|x| re(x.powf(0.25)), a, &steps).unwrap_err();
        assert!(matches!(err, LimitError::Divergent { .. }));
    }

    #[test]
    fn step_validation() {
        let a = Alpha::HALF;
        let f = |x: f64| re(x);
        assert!(matches!(
            limit_definition_derivative_at_zero(f, a, &[0.1, 0.05]),
            Err(LimitError::TooFewSteps(2))
        ));
        assert!(matches!(
            limit_definition_derivative_at_zero(f, a, &[0.1, 0.2, 0.05]),
            Err(LimitError::BadSteps)
        ));
    }
}
