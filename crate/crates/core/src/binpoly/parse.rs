//! Text grammar for binary forms:
//!
//! ```text
//! form     := sign? term (('+'|'-') term)*
//! term     := coeff? '*'? monomial?        (at least one of the two)
//! monomial := var ('^' uint)? ('*'? var ('^' uint)?)*
//! var      := 'x' | 'y' | 'u' | 'v'
//! coeff    := int | int '/' uint
//! ```
//!
//! Whitespace is insignificant. `x`/`y` give a primal form, `u`/`v` a dual
//! one; mixing the two sets is an error. Every monomial must have the same
//! total degree.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{BinaryForm, VarTag};
use crate::error::{Error, Result};
use crate::scalar::Field;

struct Term {
    position: usize,
    num: BigInt,
    den: BigInt,
    first: usize,
    second: usize,
    text: String,
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    idx: usize,
    source: &'a str,
    tag: Option<(VarTag, usize)>,
}

impl<'a> Parser<'a> {
    fn new(source: &'a str) -> Self {
        Parser {
            chars: source.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            idx: 0,
            source,
            tag: None,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn position(&self) -> usize {
        self.chars.get(self.idx).map_or(self.source.len(), |&(p, _)| p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.position(),
            message: message.into(),
        })
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.idx;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.idx += 1;
        }
        if start == self.idx {
            return self.error("expected an unsigned integer");
        }
        let digits: String = self.chars[start..self.idx].iter().map(|&(_, c)| c).collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<usize> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.idx += 1;
        let e = self.uint()?;
        usize::try_from(&e).or_else(|_| self.error("exponent too large"))
    }

    fn var(&mut self) -> Option<(VarTag, bool)> {
        let v = match self.peek()? {
            'x' => (VarTag::Primal, true),
            'y' => (VarTag::Primal, false),
            'u' => (VarTag::Dual, true),
            'v' => (VarTag::Dual, false),
            _ => return None,
        };
        Some(v)
    }

    fn term(&mut self, negative: bool) -> Result<Term> {
        let position = self.position();
        let start_idx = self.idx;
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut has_coeff = false;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            num = self.uint()?;
            has_coeff = true;
            if self.peek() == Some('/') {
                self.idx += 1;
                den = self.uint()?;
                if den.is_zero() {
                    return self.error("zero denominator");
                }
            }
            if self.peek() == Some('*') {
                self.idx += 1;
                if self.var().is_none() {
                    return self.error("expected a variable after '*'");
                }
            }
        }
        let (mut first, mut second) = (0usize, 0usize);
        let mut has_mono = false;
        loop {
            let Some((tag, is_first)) = self.var() else {
                break;
            };
            let here = self.position();
            match self.tag {
                None => self.tag = Some((tag, here)),
                Some((t, _)) if t != tag => {
                    return self.error("cannot mix x/y with u/v in one form");
                }
                _ => {}
            }
            self.idx += 1;
            let e = self.exponent()?;
            if is_first {
                first += e;
            } else {
                second += e;
            }
            has_mono = true;
            if self.peek() == Some('*') {
                self.idx += 1;
                if self.var().is_none() {
                    return self.error("expected a variable after '*'");
                }
            }
        }
        if !has_coeff && !has_mono {
            return self.error("expected a coefficient or a monomial");
        }
        if negative {
            num = -num;
        }
        let text: String = self.chars[start_idx..self.idx].iter().map(|&(_, c)| c).collect();
        Ok(Term {
            position,
            num,
            den,
            first,
            second,
            text,
        })
    }

    fn form(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        let mut negative = false;
        match self.peek() {
            Some('-') => {
                negative = true;
                self.idx += 1;
            }
            Some('+') => self.idx += 1,
            None => return self.error("empty input"),
            _ => {}
        }
        loop {
            terms.push(self.term(negative)?);
            match self.peek() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(c) => return self.error(format!("unexpected character '{c}'")),
            }
            self.idx += 1;
        }
        Ok(terms)
    }
}

/// Parses a binary form over `field`.
pub fn parse_form(text: &str, field: Field) -> Result<BinaryForm> {
    let mut parser = Parser::new(text);
    let terms = parser.form()?;
    let tag = parser.tag.map_or(VarTag::Primal, |(t, _)| t);

    let degree = terms[0].first + terms[0].second;
    let offending: Vec<String> = terms
        .iter()
        .filter(|t| t.first + t.second != degree)
        .map(|t| format!("{} (degree {}, at {})", t.text, t.first + t.second, t.position))
        .collect();
    if !offending.is_empty() {
        return Err(Error::Inhomogeneous {
            expected: degree,
            offending,
        });
    }

    let mut form = BinaryForm::zero(field, tag, degree);
    for t in terms {
        let c = field.ratio(&t.num, &t.den)?;
        form.coeffs[t.second] = &form.coeffs[t.second] + c;
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(f: &BinaryForm) -> Vec<String> {
        f.coeffs().iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn parses_examples() {
        let q = Field::Rationals;
        let f = parse_form("x^5*y", q).unwrap();
        assert_eq!(f.degree(), 6);
        assert_eq!(ints(&f), ["0", "1", "0", "0", "0", "0", "0"]);
        let g = parse_form("3x^2 - 2*x*y + y^2", q).unwrap();
        assert_eq!(ints(&g), ["3", "-2", "1"]);
        assert_eq!(g.tag(), VarTag::Primal);
        let h = parse_form(" - u v + 1/2 v^2 ", q).unwrap();
        assert_eq!(h.tag(), VarTag::Dual);
        assert_eq!(ints(&h), ["0", "-1", "1/2"]);
        let r = parse_form("x*x*y + x^2 y", q).unwrap();
        assert_eq!(ints(&r), ["0", "2", "0", "0"]);
        assert_eq!(parse_form("7", q).unwrap().degree(), 0);
    }

    #[test]
    fn rejects_inhomogeneous() {
        let err = parse_form("x^2 + y", Field::Rationals).unwrap_err();
        match err {
            Error::Inhomogeneous { expected, offending } => {
                assert_eq!(expected, 2);
                assert_eq!(offending.len(), 1);
                assert!(offending[0].starts_with('y'));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let q = Field::Rationals;
        match parse_form("x^2 + * y^2", q).unwrap_err() {
            Error::Parse { position, .. } => assert_eq!(position, 6),
            e => panic!("{e:?}"),
        }
        assert_eq!(parse_form("x^2 + u^2", q).unwrap_err().kind(), "parse");
        assert_eq!(parse_form("x^", q).unwrap_err().kind(), "parse");
        assert_eq!(parse_form("", q).unwrap_err().kind(), "parse");
        assert_eq!(parse_form("x + z", q).unwrap_err().kind(), "parse");
        assert_eq!(parse_form("1/0 x", q).unwrap_err().kind(), "parse");
        // denominator divisible by p
        let f5 = Field::prime(5).unwrap();
        assert_eq!(parse_form("1/5 x", f5).unwrap_err().kind(), "field");
        assert_eq!(ints(&parse_form("1/2 x", f5).unwrap()), ["3", "0"]);
    }
}
