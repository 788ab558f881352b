//! Canonical ASCII rendering of polynomials and rational functions, and a
//! small expression parser that accepts it back.
//!
//! Rendering uses ascending powers: `1 + 3*q - 2/5*q^4`. A rational function
//! with a non-trivial denominator is written `(num) / (den)`. The parser takes
//! any arithmetic expression over `q` built from integers, `+ - * /`, integer
//! powers `^` and parentheses, so the rendered form round-trips.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{BigRational, RationalFunction};
use crate::error::{Error, Result};

fn write_term<T>(f: &mut fmt::Formatter<'_>, c: &T, exp: usize) -> fmt::Result
where
    T: fmt::Display + One + PartialEq,
{
    match (exp, c.is_one()) {
        (0, _) => write!(f, "{c}"),
        (1, true) => write!(f, "q"),
        (1, false) => write!(f, "{c}*q"),
        (_, true) => write!(f, "q^{exp}"),
        (_, false) => write!(f, "{c}*q^{exp}"),
    }
}

fn write_terms<T>(f: &mut fmt::Formatter<'_>, coeffs: &[T]) -> fmt::Result
where
    T: fmt::Display + One + PartialEq + Zero + Signed,
{
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if first {
            write_term(f, c, i)?;
            first = false;
        } else if c.is_negative() {
            f.write_str(" - ")?;
            write_term(f, &c.abs(), i)?;
        } else {
            f.write_str(" + ")?;
            write_term(f, c, i)?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

pub(crate) fn write_polynomial(f: &mut fmt::Formatter<'_>, coeffs: &[BigRational]) -> fmt::Result {
    write_terms(f, coeffs)
}

pub(crate) fn write_rational_function(f: &mut fmt::Formatter<'_>, num: &[BigInt], den: &[BigInt]) -> fmt::Result {
    if den.len() == 1 && den[0].is_one() {
        return write_terms(f, num);
    }
    f.write_str("(")?;
    write_terms(f, num)?;
    f.write_str(") / (")?;
    write_terms(f, den)?;
    f.write_str(")")
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Q,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => {}
            '+' => out.push(Token::Plus),
            '-' => out.push(Token::Minus),
            '*' => out.push(Token::Star),
            '/' => out.push(Token::Slash),
            '^' => out.push(Token::Caret),
            '(' => out.push(Token::LParen),
            ')' => out.push(Token::RParen),
            'q' => out.push(Token::Q),
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                let n = digits
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("bad integer {digits:?}: {e}")))?;
                out.push(Token::Int(n));
            }
            other => {
                return Err(Error::Parse(format!("unexpected character {other:?} at {i}")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    acc = acc.checked_div(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let exp = match self.next() {
            Some(Token::Int(n)) => i64::try_from(n).map_err(|_| Error::Parse("exponent out of range".into()))?,
            other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
        };
        base.pow(if negative { -exp } else { exp })
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.next() {
            Some(Token::Int(n)) => Ok(RationalFunction::from_integer(n)),
            Some(Token::Q) => Ok(RationalFunction::q()),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    other => Err(Error::Parse(format!("expected ')', found {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub(crate) fn parse(s: &str) -> Result<RationalFunction> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut parser = Parser { tokens, pos: 0 };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!("trailing input at token {}", parser.pos)));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Polynomial;

    #[test]
    fn renders_canonical_examples() {
        let xi1: RationalFunction = "-q/(1+q^2)".parse().unwrap();
        assert_eq!(xi1.to_string(), "(-1*q) / (1 + q^2)");
        let p: RationalFunction = "1 - 2*q + q^3".parse().unwrap();
        assert_eq!(p.to_string(), "1 - 2*q + q^3");
        assert_eq!(RationalFunction::zero().to_string(), "0");
        assert_eq!(RationalFunction::one().to_string(), "1");
        let half: RationalFunction = "q/2".parse().unwrap();
        assert_eq!(half.to_string(), "(q) / (2)");
    }

    #[test]
    fn renders_rational_coefficients_in_polynomials() {
        let p = Polynomial::new(vec![
            BigRational::new((-3).into(), 2.into()),
            BigRational::zero(),
            BigRational::new((-1).into(), 1.into()),
        ]);
        assert_eq!(p.to_string(), "-3/2 - q^2");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn parses_rational_coefficient_terms() {
        let f = parse("3/2*q - 1/2").unwrap();
        assert_eq!(f, parse("(3*q - 1)/2").unwrap());
    }

    #[test]
    fn parses_negative_exponents() {
        assert_eq!(parse("q^-3").unwrap(), RationalFunction::q_pow(-3));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse("q +"), Err(Error::Parse(_))));
        assert!(matches!(parse("x"), Err(Error::Parse(_))));
        assert!(matches!(parse("(1"), Err(Error::Parse(_))));
        assert!(matches!(parse(""), Err(Error::Parse(_))));
        assert!(matches!(parse("1 2"), Err(Error::Parse(_))));
        assert_eq!(parse("1/(q - q)"), Err(Error::DivisionByZero));
    }
}
