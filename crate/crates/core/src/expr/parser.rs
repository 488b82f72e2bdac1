use thiserror::Error;

use super::lexer::{tokenize, Spanned, Token};
use super::{ComponentSymbol, Expr};
use crate::frame::{Frame, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    EmptyInput,
    UnexpectedChar(char),
    UnexpectedToken { found: String, expected: String },
    UnexpectedEnd { expected: String },
    UnknownIdentifier(String),
    VariableNotInFrame { var: String, frame: Frame },
    BareVariable(String),
    ExponentNotInteger(String),
}

impl std::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseErrorKind::EmptyInput => write!(f, "empty input"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "expected {expected}, found {found}")
            }
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "unexpected end of input, expected {expected}")
            }
            ParseErrorKind::UnknownIdentifier(s) => write!(f, "unknown identifier `{s}`"),
            ParseErrorKind::VariableNotInFrame { var, frame } => {
                write!(
                    f,
                    "variable `{var}` is not a coordinate of the {frame} frame"
                )
            }
            ParseErrorKind::BareVariable(v) => {
                write!(
                    f,
                    "bare variable `{v}`; write its fractal power as P({v},1)"
                )
            }
            ParseErrorKind::ExponentNotInteger(s) => {
                write!(f, "exponent must be an integer, found {s}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the source text.
    pub position: usize,
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, position: usize) -> Self {
        Self { kind, position }
    }
}

/// Parses `text` with identifiers resolved against the variables of `frame`.
pub fn parse(text: &str, frame: Frame) -> Result<Expr, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError::new(ParseErrorKind::EmptyInput, 0));
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        frame,
    };
    let expr = parser.expr()?;
    if let Some(tok) = parser.peek() {
        return Err(ParseError::new(
            ParseErrorKind::UnexpectedToken {
                found: tok.token.describe(),
                expected: "operator or end of input".into(),
            },
            tok.pos,
        ));
    }
    Ok(expr)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    end: usize,
    frame: Frame,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self, expected: &str) -> Result<Spanned, ParseError> {
        match self.tokens.get(self.pos) {
            Some(tok) => {
                self.pos += 1;
                Ok(tok.clone())
            }
            None => Err(ParseError::new(
                ParseErrorKind::UnexpectedEnd {
                    expected: expected.into(),
                },
                self.end,
            )),
        }
    }

    fn expect(&mut self, want: Token) -> Result<(), ParseError> {
        let expected = want.describe();
        let tok = self.next(&expected)?;
        if tok.token == want {
            Ok(())
        } else {
            Err(ParseError::new(
                ParseErrorKind::UnexpectedToken {
                    found: tok.token.describe(),
                    expected,
                },
                tok.pos,
            ))
        }
    }

    fn eat(&mut self, want: &Token) -> bool {
        if self.peek().is_some_and(|t| &t.token == want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Token::Plus) {
                lhs = Expr::sum(lhs, self.term()?);
            } else if self.eat(&Token::Minus) {
                lhs = Expr::difference(lhs, self.term()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&Token::Star) {
                lhs = Expr::product(lhs, self.unary()?);
            } else if self.eat(&Token::Slash) {
                lhs = Expr::quotient(lhs, self.unary()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Token::Minus) {
            return Ok(Expr::negation(self.unary()?));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat(&Token::Caret) {
            let n = if self.eat(&Token::LParen) {
                let n = self.integer()?;
                self.expect(Token::RParen)?;
                n
            } else {
                self.integer()?
            };
            return Ok(Expr::pow(base, n));
        }
        Ok(base)
    }

    /// Optionally signed integer literal.
    fn integer(&mut self) -> Result<i32, ParseError> {
        let negative = self.eat(&Token::Minus);
        let tok = self.next("integer")?;
        match tok.token {
            Token::Number {
                value,
                is_integer_literal: true,
            } => {
                let n: i32 = value.re.to_integer().try_into().map_err(|_| {
                    ParseError::new(
                        ParseErrorKind::ExponentNotInteger(format!("out-of-range `{value}`")),
                        tok.pos,
                    )
                })?;
                Ok(if negative { -n } else { n })
            }
            other => Err(ParseError::new(
                ParseErrorKind::ExponentNotInteger(other.describe()),
                tok.pos,
            )),
        }
    }

    fn variable(&mut self) -> Result<Var, ParseError> {
        let tok = self.next("coordinate variable")?;
        match &tok.token {
            Token::Ident(name) => match Var::from_name(name) {
                Some(v) if self.frame.contains(v) => Ok(v),
                Some(_) => Err(ParseError::new(
                    ParseErrorKind::VariableNotInFrame {
                        var: name.clone(),
                        frame: self.frame,
                    },
                    tok.pos,
                )),
                None => Err(ParseError::new(
                    ParseErrorKind::UnknownIdentifier(name.clone()),
                    tok.pos,
                )),
            },
            other => Err(ParseError::new(
                ParseErrorKind::UnexpectedToken {
                    found: other.describe(),
                    expected: "coordinate variable".into(),
                },
                tok.pos,
            )),
        }
    }

    fn component_index(name: &str) -> Option<u8> {
        match name {
            "f0" => Some(0),
            "f1" => Some(1),
            "f2" => Some(2),
            "f3" => Some(3),
            _ => None,
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let tok = self.next("expression")?;
        match tok.token {
            Token::Number { value, .. } => Ok(Expr::Number(value)),
            Token::LParen => {
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Token::Ident(name) => self.identifier(&name, tok.pos),
            other => Err(ParseError::new(
                ParseErrorKind::UnexpectedToken {
                    found: other.describe(),
                    expected: "expression".into(),
                },
                tok.pos,
            )),
        }
    }

    fn identifier(&mut self, name: &str, pos: usize) -> Result<Expr, ParseError> {
        match name {
            "i" => Ok(Expr::Number(crate::coeff::GaussRational::imaginary_unit())),
            "lam" => Ok(Expr::Lambda),
            "P" => {
                self.expect(Token::LParen)?;
                let var = self.variable()?;
                self.expect(Token::Comma)?;
                let exp = self.integer()?;
                self.expect(Token::RParen)?;
                Ok(Expr::Power { var, exp })
            }
            "sina" | "cosa" => {
                self.expect(Token::LParen)?;
                let var = self.variable()?;
                self.expect(Token::RParen)?;
                Ok(if name == "sina" {
                    Expr::Sin(var)
                } else {
                    Expr::Cos(var)
                })
            }
            "Ea" => {
                self.expect(Token::LParen)?;
                let scale = self.expr()?;
                self.expect(Token::Comma)?;
                let var = self.variable()?;
                self.expect(Token::RParen)?;
                Ok(Expr::ea(scale, var))
            }
            "d" => {
                self.expect(Token::LParen)?;
                let tok = self.next("component f0..f3")?;
                let index = match &tok.token {
                    Token::Ident(s) => Self::component_index(s),
                    _ => None,
                }
                .ok_or_else(|| {
                    ParseError::new(
                        ParseErrorKind::UnexpectedToken {
                            found: tok.token.describe(),
                            expected: "component f0..f3".into(),
                        },
                        tok.pos,
                    )
                })?;
                let mut sym = ComponentSymbol::new(index);
                self.expect(Token::Comma)?;
                loop {
                    let v = self.variable()?;
                    sym = sym.with_derivative(v, 1);
                    if !self.eat(&Token::Comma) {
                        break;
                    }
                }
                self.expect(Token::RParen)?;
                Ok(Expr::Component(sym))
            }
            other => {
                if let Some(k) = Self::component_index(other) {
                    return Ok(Expr::component(k));
                }
                let kind = match Var::from_name(other) {
                    Some(_) => ParseErrorKind::BareVariable(other.into()),
                    None => ParseErrorKind::UnknownIdentifier(other.into()),
                };
                Err(ParseError::new(kind, pos))
            }
        }
    }
}
