//! Text form of polynomials.
//!
//! ```text
//! poly   := ['-'] term (('+' | '-') term)*
//! term   := coeff | coeff '*' powers | powers
//! coeff  := integer | integer '/' positive-integer
//! powers := power ('*' power)*
//! power  := 'x' index | 'x' index '^' exponent
//! ```
//!
//! Whitespace is ignored everywhere. Printing uses the same grammar with
//! terms in descending graded-lex order, so `parse_poly(format_poly(p)) == p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{Monomial, Polynomial};
use crate::scalar::Scalar;

pub const DEFAULT_MAX_EXPONENT: u32 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    pub max_exponent: u32,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self { max_exponent: DEFAULT_MAX_EXPONENT }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable index at position {pos} is zero or too large")]
    IndexOverflow { pos: usize },
    #[error("exponent at position {pos} exceeds the limit {limit}")]
    ExponentOverflow { pos: usize, limit: u32 },
}

pub fn parse_poly<T: Scalar>(text: &str) -> Result<Polynomial<T>, ParseError> {
    parse_poly_with(text, ParseOptions::default())
}

pub fn parse_poly_with<T: Scalar>(text: &str, opts: ParseOptions) -> Result<Polynomial<T>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut parser = Parser { chars, pos: 0, end: text.len(), opts };
    let exact = parser.poly()?;
    Ok(exact.map_coeffs(T::from_rational))
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
    opts: ParseOptions,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(i, _)| i)
    }

    fn syntax<R>(&self, msg: &str) -> Result<R, ParseError> {
        Err(ParseError::Syntax { pos: self.offset(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn poly(&mut self) -> Result<Polynomial<BigRational>, ParseError> {
        if self.chars.is_empty() {
            return self.syntax("empty input");
        }
        let mut out = Polynomial::zero();
        let mut negative = self.eat('-');
        loop {
            let (m, mut c) = self.term()?;
            if negative {
                c = -c;
            }
            out.add_term(m, c);
            match self.peek() {
                None => return Ok(out),
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(_) => return self.syntax("expected '+', '-' or end of input"),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Monomial, BigRational), ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.coeff()?;
                if self.eat('*') {
                    Ok((self.powers()?, coeff))
                } else {
                    Ok((Monomial::one(), coeff))
                }
            }
            Some('x') => Ok((self.powers()?, BigRational::one())),
            _ => self.syntax("expected a coefficient or a variable"),
        }
    }

    fn digits(&mut self) -> Result<(usize, String), ParseError> {
        let start = self.offset();
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        if s.is_empty() {
            return self.syntax("expected digits");
        }
        Ok((start, s))
    }

    fn coeff(&mut self) -> Result<BigRational, ParseError> {
        let (_, num) = self.digits()?;
        let num: BigInt = num.parse().expect("digits parse as an integer");
        if self.eat('/') {
            let (pos, den) = self.digits()?;
            let den: BigInt = den.parse().expect("digits parse as an integer");
            if den.is_zero() {
                return Err(ParseError::Syntax { pos, msg: "zero denominator".into() });
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn powers(&mut self) -> Result<Monomial, ParseError> {
        let mut m = self.power()?;
        while self.eat('*') {
            let next = self.power()?;
            m = m.mul(&next);
            if m.iter().any(|(_, e)| e > self.opts.max_exponent) {
                return Err(ParseError::ExponentOverflow { pos: self.offset(), limit: self.opts.max_exponent });
            }
        }
        Ok(m)
    }

    fn power(&mut self) -> Result<Monomial, ParseError> {
        if !self.eat('x') {
            return self.syntax("expected 'x'");
        }
        let (pos, idx) = self.digits()?;
        let index: u32 = match idx.parse() {
            Ok(i) if i >= 1 => i,
            _ => return Err(ParseError::IndexOverflow { pos }),
        };
        let exp = if self.eat('^') {
            let (pos, e) = self.digits()?;
            let limit = self.opts.max_exponent;
            match e.parse::<u32>() {
                Ok(0) => return Err(ParseError::Syntax { pos, msg: "exponent must be positive".into() }),
                Ok(e) if e <= limit => e,
                _ => return Err(ParseError::ExponentOverflow { pos, limit }),
            }
        } else {
            1
        };
        Ok(Monomial::var_pow(index, exp))
    }
}

/// Canonical text: descending graded-lex, signs folded into the joins.
pub fn format_poly<T: Scalar>(p: &Polynomial<T>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        if m.is_one() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&m.to_string());
        } else {
            out.push_str(&format!("{mag}*{m}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn parse_examples() {
        let p: Polynomial<Rational> = parse_poly("x1^2 - 1").unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&Monomial::var_pow(1, 2)), q(1, 1));
        assert_eq!(p.coeff(&Monomial::one()), q(-1, 1));

        let p: Polynomial<Rational> = parse_poly("3/2*x1*x2 + x1*x2").unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(&Monomial::from_pairs([(1, 1), (2, 1)])), q(5, 2));

        let p: Polynomial<Rational> = parse_poly("0*x3 + 7").unwrap();
        assert_eq!(p, Polynomial::constant(q(7, 1)));
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_poly(&Polynomial::<Rational>::zero()), "0");
        assert_eq!(format_poly(&parse_poly::<Rational>("-1 + x1^2").unwrap()), "x1^2 - 1");
        assert_eq!(format_poly(&parse_poly::<Rational>("5/2 * x2*x1").unwrap()), "5/2*x1*x2");
        assert_eq!(format_poly(&parse_poly::<Rational>("-x2 + x1^3 - 3*x1").unwrap()), "x1^3 - 3*x1 - x2");
        assert_eq!(format_poly(&parse_poly::<Rational>("- 4/6").unwrap()), "-2/3");
    }

    #[test]
    fn whitespace_and_repeated_factors() {
        let a: Polynomial<Rational> = parse_poly(" x 1 ^ 2 *x1 ").unwrap();
        assert_eq!(format_poly(&a), "x1^3");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse_poly::<Rational>(""), Err(ParseError::Syntax { .. })));
        assert_eq!(
            parse_poly::<Rational>("x1 + + x2"),
            Err(ParseError::Syntax { pos: 5, msg: "expected a coefficient or a variable".into() })
        );
        assert!(matches!(parse_poly::<Rational>("x1 x"), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly::<Rational>("1/0"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly::<Rational>("x1^0"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly::<Rational>("y1"), Err(ParseError::Syntax { pos: 0, .. })));
    }

    #[test]
    fn overflow_errors() {
        assert_eq!(parse_poly::<Rational>("x0"), Err(ParseError::IndexOverflow { pos: 1 }));
        assert_eq!(parse_poly::<Rational>("x99999999999"), Err(ParseError::IndexOverflow { pos: 1 }));
        assert_eq!(
            parse_poly::<Rational>("x1^70000"),
            Err(ParseError::ExponentOverflow { pos: 3, limit: DEFAULT_MAX_EXPONENT })
        );
        let tight = ParseOptions { max_exponent: 3 };
        assert!(parse_poly_with::<Rational>("x1^3", tight).is_ok());
        assert!(matches!(
            parse_poly_with::<Rational>("x1^2*x1^2", tight),
            Err(ParseError::ExponentOverflow { limit: 3, .. })
        ));
    }

    #[test]
    fn float_coefficients() {
        let p: Polynomial<f64> = parse_poly("1/4*x1 - 2").unwrap();
        assert_eq!(p.evaluate_dense(&[4.0]).unwrap(), -1.0);
    }
}
