use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::parser::{ParseError, ParseErrorKind};
use crate::coeff::GaussRational;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Token {
    /// Exact literal; `is_integer_literal` is true when written without a
    /// decimal point or imaginary suffix.
    Number {
        value: GaussRational,
        is_integer_literal: bool,
    },
    Ident(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

impl Token {
    pub(crate) fn describe(&self) -> String {
        match self {
            Token::Number { value, .. } => format!("number `{value}`"),
            Token::Ident(s) => format!("identifier `{s}`"),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Comma => "`,`".into(),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::Star => "`*`".into(),
            Token::Slash => "`/`".into(),
            Token::Caret => "`^`".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub token: Token,
    pub pos: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match ch {
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            ',' => Some(Token::Comma),
            '+' => Some(Token::Plus),
            '-' | '\u{2212}' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '/' => Some(Token::Slash),
            '^' => Some(Token::Caret),
            _ => None,
        };
        if let Some(token) = simple {
            out.push(Spanned { token, pos });
            i += 1;
            continue;
        }
        if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let int_part: String = chars[start..i].iter().map(|c| c.1).collect();
            let mut frac_part = String::new();
            let mut has_point = false;
            if i < chars.len() && chars[i].1 == '.' {
                has_point = true;
                i += 1;
                let fstart = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                frac_part = chars[fstart..i].iter().map(|c| c.1).collect();
            }
            if int_part.is_empty() && frac_part.is_empty() {
                return Err(ParseError::new(ParseErrorKind::UnexpectedChar('.'), pos));
            }
            let digits = format!("{int_part}{frac_part}");
            let numer: BigInt = digits.parse().expect("digits only");
            let denom = num_traits::pow(BigInt::from(10), frac_part.len());
            let value = BigRational::new(numer, denom);
            // imaginary suffix: `2i`, but not the start of an identifier
            let imaginary = i < chars.len()
                && chars[i].1 == 'i'
                && !chars
                    .get(i + 1)
                    .is_some_and(|c| c.1.is_ascii_alphanumeric() || c.1 == '_');
            let value = if imaginary {
                i += 1;
                GaussRational::new(BigRational::zero(), value)
            } else {
                GaussRational::new(value, BigRational::zero())
            };
            out.push(Spanned {
                token: Token::Number {
                    value,
                    is_integer_literal: !has_point && !imaginary,
                },
                pos,
            });
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let ident: String = chars[start..i].iter().map(|c| c.1).collect();
            out.push(Spanned {
                token: Token::Ident(ident),
                pos,
            });
            continue;
        }
        return Err(ParseError::new(ParseErrorKind::UnexpectedChar(ch), pos));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<Token> {
        tokenize(text)
            .unwrap()
            .into_iter()
            .map(|s| s.token)
            .collect()
    }

    #[test]
    fn decimal_is_exact() {
        let toks = kinds("0.25");
        assert_eq!(
            toks,
            vec![Token::Number {
                value: GaussRational::from_ratio(1, 4),
                is_integer_literal: false
            }]
        );
    }

    #[test]
    fn imaginary_suffix_and_identifiers() {
        let toks = kinds("3i*i");
        assert_eq!(toks.len(), 3);
        assert!(matches!(&toks[0], Token::Number { value, .. } if !value.is_real()));
        assert_eq!(toks[2], Token::Ident("i".into()));
    }

    #[test]
    fn rejects_unknown_characters() {
        let err = tokenize("P(r,1) # 2").unwrap_err();
        assert_eq!(err.position, 7);
        assert_eq!(err.kind, ParseErrorKind::UnexpectedChar('#'));
    }
}
