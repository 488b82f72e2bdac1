use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fracquat::derivative::{d_alpha_gamma, JPolynomial};
use fracquat::field_doc::FieldSpecDocument;
use fracquat::numeric::{eval_numeric, Bindings, Point};
use fracquat::special::SeriesFunction;
use fracquat::verify::{select, verify_matrix, IdentityName};
use fracquat::{d_alpha, normalize, parse, Alpha, DerivativeMode, Expr, Frame, Operator, Var};
use num_complex::Complex64;
use serde_json::json;

const USAGE: u8 = 2;
const FAILURE: u8 = 1;

#[derive(Parser)]
#[command(
    name = "fracquat",
    version,
    about = "Local fractional quaternionic operators on Cantor-type coordinates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operator to the field described by a spec file (JSON or TOML).
    Apply {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_parser = parse_operator)]
        op: Operator,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check operator identities on the abstract field.
    Verify {
        /// Identity name or "all".
        #[arg(default_value = "all", value_parser = parse_identity)]
        identity: Selection<IdentityName>,
        /// Frame name or "all".
        #[arg(long, default_value = "all", value_parser = parse_frame_selection)]
        frame: Selection<Frame>,
        #[arg(long, value_enum, default_value = "structured")]
        format: Format,
    },
    /// Differentiate an expression.
    Diff {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        var: String,
        #[arg(long, value_parser = parse_frame)]
        frame: Frame,
        #[arg(long, default_value = "derivation", value_parser = parse_mode)]
        mode: DerivativeMode,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        order: u32,
    },
    /// Evaluate an expression numerically at a point.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_parser = parse_frame)]
        frame: Frame,
        #[arg(long, value_parser = parse_alpha)]
        alpha: Alpha,
        /// Coordinates, e.g. "r=1.5,theta=0.3,z=0".
        #[arg(long, default_value = "")]
        at: String,
        /// Value of lam, e.g. "2" or "1+0.5i".
        #[arg(long, value_parser = parse_complex)]
        lam: Option<Complex64>,
        /// Component values, e.g. "f1=2" or "d(f1,r)=0.5-1i"; repeatable.
        #[arg(long)]
        bind: Vec<String>,
        #[arg(long, default_value_t = 1e-12, value_parser = parse_tol)]
        tol: f64,
    },
    /// Sum E_alpha, sin_alpha or cos_alpha at a fractal argument u.
    Series {
        #[arg(value_parser = parse_series_function)]
        function: SeriesFunction,
        #[arg(long, value_parser = parse_alpha)]
        alpha: Alpha,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        u: Complex64,
        #[arg(long, default_value_t = 1e-12, value_parser = parse_tol)]
        tol: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Clone, Copy)]
enum Selection<T> {
    All,
    One(T),
}

impl<T: Copy> Selection<T> {
    fn get(self) -> Option<T> {
        match self {
            Selection::All => None,
            Selection::One(t) => Some(t),
        }
    }
}

fn parse_identity(s: &str) -> Result<Selection<IdentityName>, String> {
    if s == "all" {
        return Ok(Selection::All);
    }
    s.parse().map(Selection::One).map_err(|e| {
        let names: Vec<_> = IdentityName::ALL.iter().map(|i| i.name()).collect();
        format!("{e}; expected all, {}", names.join(", "))
    })
}

fn parse_frame(s: &str) -> Result<Frame, String> {
    s.parse()
}

fn parse_frame_selection(s: &str) -> Result<Selection<Frame>, String> {
    if s == "all" {
        Ok(Selection::All)
    } else {
        parse_frame(s).map(Selection::One)
    }
}

fn parse_operator(s: &str) -> Result<Operator, String> {
    s.parse()
}

fn parse_mode(s: &str) -> Result<DerivativeMode, String> {
    s.parse()
}

fn parse_alpha(s: &str) -> Result<Alpha, String> {
    let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    Alpha::new(x).map_err(|e| e.to_string())
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("`{s}` is not a positive tolerance")),
    }
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a complex number (try 1.5 or 1-2i)"))
}

fn parse_series_function(s: &str) -> Result<SeriesFunction, String> {
    s.parse()
}

fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Apply { spec, op, format } => cmd_apply(&spec, op, format),
        Command::Verify {
            identity,
            frame,
            format,
        } => cmd_verify(identity.get(), frame.get(), format),
        Command::Diff {
            expr,
            var,
            frame,
            mode,
            order,
        } => cmd_diff(&expr, &var, frame, mode, order),
        Command::Eval {
            expr,
            frame,
            alpha,
            at,
            lam,
            bind,
            tol,
        } => cmd_eval(&expr, frame, alpha, &at, lam, &bind, tol),
        Command::Series {
            function,
            alpha,
            u,
            tol,
            format,
        } => cmd_series(function, alpha, u, tol, format),
    }
}

fn cmd_apply(path: &std::path::Path, op: Operator, format: Format) -> ExitCode {
    let spec = match FieldSpecDocument::load(path).and_then(|d| d.validate()) {
        Ok(s) => s,
        Err(e) => return fail(USAGE, e),
    };
    let out = op.apply(&spec.field, &spec.lambda);
    match format {
        Format::Text => println!("{out}"),
        Format::Structured => {
            let components: Vec<String> =
                out.components().iter().map(ToString::to_string).collect();
            let doc = json!({
                "operator": op.name(),
                "frame": spec.field.frame,
                "alpha": spec.alpha.value(),
                "lambda": spec.lambda.to_string(),
                "components": components,
            });
            println!("{doc}");
        }
    }
    ExitCode::SUCCESS
}

fn cmd_verify(identity: Option<IdentityName>, frame: Option<Frame>, format: Format) -> ExitCode {
    let checks = select(identity, frame);
    let reports = verify_matrix(&checks);
    for r in &reports {
        match format {
            Format::Structured => println!("{}", r.to_json()),
            Format::Text => {
                let status = if r.pass() { "PASS" } else { "FAIL" };
                println!("{status} {} {}", r.identity, r.frame);
                if !r.pass() {
                    for (k, res) in r.residuals.iter().enumerate() {
                        println!("  residual[{k}] = {res}");
                    }
                }
            }
        }
    }
    if reports.iter().all(|r| r.pass()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(FAILURE)
    }
}

fn cmd_diff(text: &str, var: &str, frame: Frame, mode: DerivativeMode, order: u32) -> ExitCode {
    let v = match Var::from_name(var) {
        Some(v) if frame.contains(v) => v,
        _ => {
            return fail(
                USAGE,
                format!("`{var}` is not a variable of the {frame} frame"),
            )
        }
    };
    let e = match parse(text, frame) {
        Ok(e) => e,
        Err(e) => return fail(USAGE, e),
    };
    match mode {
        DerivativeMode::Derivation => match d_alpha(&e, v) {
            Ok(first) => println!("{}", first.nth_derivative(v, order - 1)),
            Err(err) => return fail(USAGE, err),
        },
        DerivativeMode::GammaNormalized => {
            let p = match JPolynomial::from_expr(&e) {
                Ok(p) => p,
                Err(err) => return fail(USAGE, err),
            };
            let out = match p.var {
                Some(w) if w != v => JPolynomial::zero(),
                _ => (0..order).fold(p, |acc, _| d_alpha_gamma(&acc)),
            };
            println!("{}", out.render());
        }
    }
    ExitCode::SUCCESS
}

fn parse_point(at: &str) -> Result<Point, String> {
    let mut point = Point::new();
    for pair in at.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = pair
            .split_once('=')
            .ok_or_else(|| format!("expected name=value, got `{pair}`"))?;
        let v = Var::from_name(name.trim()).ok_or_else(|| format!("unknown variable `{name}`"))?;
        let x: f64 = value
            .trim()
            .parse()
            .map_err(|_| format!("`{value}` is not a number"))?;
        point.set(v, x);
    }
    Ok(point)
}

fn parse_bindings(
    binds: &[String],
    frame: Frame,
    lam: Option<Complex64>,
) -> Result<Bindings, String> {
    let mut bindings = Bindings::new();
    if let Some(l) = lam {
        bindings = bindings.with_lambda(l);
    }
    for b in binds {
        let (name, value) = b
            .rsplit_once('=')
            .ok_or_else(|| format!("expected symbol=value, got `{b}`"))?;
        let sym = match parse(name.trim(), frame).map_err(|e| e.to_string())? {
            Expr::Component(sym) => sym,
            _ => return Err(format!("`{name}` is not a component symbol")),
        };
        bindings = bindings.constant(sym, parse_complex(value)?);
    }
    Ok(bindings)
}

fn cmd_eval(
    text: &str,
    frame: Frame,
    alpha: Alpha,
    at: &str,
    lam: Option<Complex64>,
    binds: &[String],
    tol: f64,
) -> ExitCode {
    let canonical = match parse(text, frame)
        .map_err(|e| e.to_string())
        .and_then(|e| normalize(&e).map_err(|e| e.to_string()))
    {
        Ok(c) => c,
        Err(e) => return fail(USAGE, e),
    };
    let (point, bindings) =
        match parse_point(at).and_then(|p| Ok((p, parse_bindings(binds, frame, lam)?))) {
            Ok(pb) => pb,
            Err(e) => return fail(USAGE, e),
        };
    match eval_numeric(&canonical, &point, &bindings, alpha, tol) {
        Ok(z) => {
            println!("{}", format_complex(z));
            ExitCode::SUCCESS
        }
        Err(e) => fail(FAILURE, e),
    }
}

fn cmd_series(
    function: SeriesFunction,
    alpha: Alpha,
    u: Complex64,
    tol: f64,
    format: Format,
) -> ExitCode {
    match function.eval(alpha, u, tol) {
        Ok(sum) => {
            match format {
                Format::Text => println!("{} (terms: {})", format_complex(sum.value), sum.terms),
                Format::Structured => println!(
                    "{}",
                    json!({
                        "function": function,
                        "alpha": alpha.value(),
                        "u": {"re": u.re, "im": u.im},
                        "value": {"re": sum.value.re, "im": sum.value.im},
                        "terms": sum.terms,
                    })
                ),
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(FAILURE, e),
    }
}
