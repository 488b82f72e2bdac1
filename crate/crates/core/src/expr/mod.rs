//! Expression syntax trees for the fractal expression language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' integer)?
//! atom   := number | 'i' | 'lam' | 'P(' var ',' integer ')'
//!         | 'sina(' var ')' | 'cosa(' var ')' | 'Ea(' expr ',' var ')'
//!         | 'f0' | 'f1' | 'f2' | 'f3' | 'd(' component (',' var)+ ')'
//!         | '(' expr ')'
//! ```
//!
//! `P(v,n)` is `v^(n alpha)`, `sina(v)`/`cosa(v)` are the fractal sine and
//! cosine of `v^alpha`, and `Ea(c,v)` is `E_alpha(c v^alpha)`. Numbers are
//! exact: `3`, `0.25`, `2i`, and rationals via division.

mod lexer;
mod parser;

use std::fmt;

use crate::coeff::GaussRational;
use crate::frame::Var;

pub use parser::{parse, ParseError, ParseErrorKind};

/// An abstract component `f_k` carrying a partial-derivative multi-index.
///
/// The multi-index is stored per variable, so mixed partials commute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentSymbol {
    pub index: u8,
    pub orders: [u8; 6],
}

impl ComponentSymbol {
    pub fn new(index: u8) -> Self {
        assert!(index < 4, "component index must be 0..=3");
        Self {
            index,
            orders: [0; 6],
        }
    }

    pub fn with_derivative(mut self, v: Var, times: u8) -> Self {
        self.orders[v.index()] += times;
        self
    }

    pub fn order(&self, v: Var) -> u8 {
        self.orders[v.index()]
    }

    pub fn total_order(&self) -> u32 {
        self.orders.iter().map(|&o| u32::from(o)).sum()
    }

    pub fn is_underived(&self) -> bool {
        self.total_order() == 0
    }
}

/// Renders as `f1` or `d(f1,r,r,theta)`.
impl fmt::Display for ComponentSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_underived() {
            return write!(f, "f{}", self.index);
        }
        write!(f, "d(f{}", self.index)?;
        // frame order reads better than enum order
        for v in [Var::R, Var::Theta, Var::Psi, Var::X, Var::Y, Var::Z] {
            for _ in 0..self.order(v) {
                write!(f, ",{v}")?;
            }
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Number(GaussRational),
    Lambda,
    /// `P(var, exp)`.
    Power {
        var: Var,
        exp: i32,
    },
    Sin(Var),
    Cos(Var),
    Exp {
        scale: Box<Expr>,
        var: Var,
    },
    Component(ComponentSymbol),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Number(GaussRational::from_integer(n))
    }

    pub fn component(index: u8) -> Expr {
        Expr::Component(ComponentSymbol::new(index))
    }

    pub fn power(var: Var, exp: i32) -> Expr {
        Expr::Power { var, exp }
    }

    pub fn ea(scale: Expr, var: Var) -> Expr {
        Expr::Exp {
            scale: Box::new(scale),
            var,
        }
    }

    pub fn sum(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn difference(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn product(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn quotient(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn negation(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }

    pub fn pow(a: Expr, n: i32) -> Expr {
        Expr::Pow(Box::new(a), n)
    }

    /// Variables referenced anywhere in the tree, including derivative
    /// multi-indices.
    pub fn variables(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Expr::Number(_) | Expr::Lambda => {}
            Expr::Power { var, .. } | Expr::Sin(var) | Expr::Cos(var) => out.push(*var),
            Expr::Exp { scale, var } => {
                out.push(*var);
                scale.collect_vars(out);
            }
            Expr::Component(sym) => {
                out.extend(Var::ALL.into_iter().filter(|v| sym.order(*v) > 0));
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

/// Fully parenthesised rendering that parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(c) => write!(f, "{c}"),
            Expr::Lambda => write!(f, "lam"),
            Expr::Power { var, exp } => write!(f, "P({var},{exp})"),
            Expr::Sin(v) => write!(f, "sina({v})"),
            Expr::Cos(v) => write!(f, "cosa({v})"),
            Expr::Exp { scale, var } => write!(f, "Ea({scale},{var})"),
            Expr::Component(sym) => write!(f, "{sym}"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, n) => write!(f, "({a})^({n})"),
        }
    }
}
