//! Text syntax for polynomials: variables `x y z t`, integer or rational
//! coefficients, `+ - * ^` and parentheses. Juxtaposition is rejected.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::field::Field;
use super::mono::{Mono, VAR_NAMES};
use super::poly::Poly;
use super::AlgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    /// One-based character column.
    pub column: usize,
    pub message: String,
}

type Terms = BTreeMap<Mono, BigRational>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((col, Tok::Num(digits.parse().unwrap())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => match VAR_NAMES.iter().position(|v| v.starts_with(c)) {
                Some(v) => Tok::Var(v),
                None => return Err(ParseError { column: col, message: format!("unexpected character '{c}'") }),
            },
        };
        out.push((col, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end_col)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: self.column(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Terms, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = add(acc, t, false);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = add(acc, t, true);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Terms, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let f = self.unary()?;
            acc = mul(&acc, &f);
        }
        match self.peek() {
            Some(Tok::Num(_) | Tok::Var(_) | Tok::LParen) => self.err("missing '*' between factors"),
            _ => Ok(acc),
        }
    }

    fn unary(&mut self) -> Result<Terms, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            let t = self.unary()?;
            return Ok(add(Terms::new(), t, true));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Terms, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return self.err("expected a nonnegative integer exponent");
            };
            let Ok(e) = u32::try_from(n) else {
                return self.err("exponent too large");
            };
            if e > 255 {
                return self.err("exponent too large");
            }
            self.pos += 1;
            let mut acc = constant(BigRational::one());
            for _ in 0..e {
                acc = mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Terms, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut value = BigRational::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    let Some(Tok::Num(d)) = self.peek().cloned() else {
                        return self.err("expected an integer denominator");
                    };
                    if d.is_zero() {
                        return self.err("zero denominator");
                    }
                    self.pos += 1;
                    value /= BigRational::from_integer(d);
                }
                Ok(constant(value))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                let mut t = Terms::new();
                t.insert(Mono::var(v, 1), BigRational::one());
                Ok(t)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Some(_) => self.err("expected a number, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn constant(c: BigRational) -> Terms {
    let mut t = Terms::new();
    if !c.is_zero() {
        t.insert(Mono::ONE, c);
    }
    t
}

fn add(mut a: Terms, b: Terms, negate: bool) -> Terms {
    for (m, c) in b {
        let c = if negate { -c } else { c };
        let entry = a.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            a.remove(&m);
        }
    }
    a
}

fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (m, c) in a {
        for (n, d) in b {
            let mn = m.mul(*n);
            let entry = out.entry(mn).or_insert_with(BigRational::zero);
            *entry += c * d;
            if entry.is_zero() {
                out.remove(&mn);
            }
        }
    }
    out
}

/// Parse to rational coefficients.
pub fn parse_rational_terms(text: &str) -> Result<BTreeMap<Mono, BigRational>, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end_col: text.chars().count() + 1 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

/// Parse a polynomial and map its coefficients into `field`.
pub fn parse_poly<F: Field>(field: &F, text: &str) -> Result<Poly<F>, AlgError> {
    let terms = parse_rational_terms(text)?;
    Poly::from_rational_terms(field, &terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{Gf, Rationals};

    #[test]
    fn parses_rational_coefficients() {
        let p = parse_poly(&Rationals, "-3/2*x^2 + y - 1/2").unwrap();
        assert_eq!(p.to_string(), "-3/2*x^2 + y - 1/2");
    }

    #[test]
    fn parentheses_expand() {
        let p = parse_poly(&Rationals, "(x + y)^2 - x*(x + 2*y)").unwrap();
        assert_eq!(p.to_string(), "y^2");
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_poly(&Rationals, "2x").unwrap_err();
        assert_eq!(e, AlgError::Parse(ParseError { column: 2, message: "missing '*' between factors".into() }));
        let AlgError::Parse(e) = parse_poly(&Rationals, "x + w").unwrap_err() else { panic!() };
        assert_eq!(e.column, 5);
        let AlgError::Parse(e) = parse_poly(&Rationals, "x^").unwrap_err() else { panic!() };
        assert_eq!(e.column, 3);
        assert!(parse_poly(&Rationals, "(x").is_err());
        assert!(parse_poly(&Rationals, "x )").is_err());
    }

    #[test]
    fn denominators_must_be_invertible() {
        let f = Gf::prime(5).unwrap();
        assert!(matches!(parse_poly(&f, "x/5"), Err(AlgError::Parse(_))));
        assert!(matches!(parse_poly(&f, "1/5*x"), Err(AlgError::BadCoefficient(_))));
        assert_eq!(parse_poly(&f, "1/2*x").unwrap().to_string(), "3*x");
    }
}
