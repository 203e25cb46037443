//! Exact literals: surds `(p+q*sqrt(d))/r`, forms `form(a,b,c)`, sequences
//! `per(..);core;per(..)` and geodesics `<α, β>`. Every printed value
//! parses back to itself. Decimal points are rejected.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::billiard::{Billiard, Geodesic};
use crate::cfrac::BilliardSeq;
use crate::exact::{ExtendedReal, QuadSurd};
use crate::forms::BinaryForm;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LiteralError {
    #[error("{0}: unexpected input at byte {1}")]
    Syntax(String, usize),
    #[error("{0}: decimal literals are not accepted, write an exact fraction")]
    Decimal(String),
    #[error("{0}: {1}")]
    Value(String, String),
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self) -> LiteralError {
        LiteralError::Syntax(self.src.to_string(), self.pos)
    }

    fn value_err(&self, e: impl ToString) -> LiteralError {
        LiteralError::Value(self.src.to_string(), e.to_string())
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), LiteralError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err())
        }
    }

    fn done(&mut self) -> Result<(), LiteralError> {
        if self.peek().is_some() {
            Err(self.err())
        } else {
            Ok(())
        }
    }

    fn integer(&mut self) -> Result<BigInt, LiteralError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err());
        }
        if self.bytes.get(self.pos) == Some(&b'.') {
            return Err(LiteralError::Decimal(self.src.to_string()));
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn expr(&mut self) -> Result<QuadSurd, LiteralError> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") {
                let t = self.term()?;
                acc = acc.checked_add(&t).map_err(|e| self.value_err(e))?;
            } else if self.peek() == Some(b'-') {
                self.pos += 1;
                let t = self.term()?;
                acc = acc.checked_sub(&t).map_err(|e| self.value_err(e))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QuadSurd, LiteralError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat("*") {
                let t = self.factor()?;
                acc = acc.checked_mul(&t).map_err(|e| self.value_err(e))?;
            } else if self.eat("/") {
                let t = self.factor()?;
                acc = acc.checked_div(&t).map_err(|e| self.value_err(e))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<QuadSurd, LiteralError> {
        if self.eat("-") {
            return Ok(-self.factor()?);
        }
        if self.eat("sqrt(") {
            let x = self.expr()?;
            self.expect(")")?;
            let r = x
                .to_rational()
                .ok_or_else(|| self.value_err("sqrt needs a rational argument"))?;
            return QuadSurd::sqrt_rational(&r).map_err(|e| self.value_err(e));
        }
        if self.eat("(") {
            let x = self.expr()?;
            self.expect(")")?;
            return Ok(x);
        }
        let n = self.integer()?;
        Ok(QuadSurd::from_rational(&BigRational::from_integer(n)))
    }

    fn extended(&mut self) -> Result<ExtendedReal, LiteralError> {
        if self.eat("inf") || self.eat("∞") {
            Ok(ExtendedReal::Infinity)
        } else {
            Ok(ExtendedReal::Finite(self.expr()?))
        }
    }

    fn int_list(&mut self) -> Result<Vec<u64>, LiteralError> {
        let mut out = Vec::new();
        if matches!(self.peek(), Some(b')') | Some(b';') | None) {
            return Ok(out);
        }
        loop {
            let n = self.integer()?;
            out.push(u64::try_from(n).map_err(|_| self.value_err("entry out of range"))?);
            if !self.eat(",") {
                return Ok(out);
            }
        }
    }
}

pub fn parse_surd(s: &str) -> Result<QuadSurd, LiteralError> {
    let mut p = Parser::new(s);
    let x = p.expr()?;
    p.done()?;
    Ok(x)
}

/// A surd or `inf`.
pub fn parse_extended(s: &str) -> Result<ExtendedReal, LiteralError> {
    let mut p = Parser::new(s);
    let x = p.extended()?;
    p.done()?;
    Ok(x)
}

/// `form(a,b,c)` or `(a,b,c)`.
pub fn parse_form(s: &str) -> Result<BinaryForm, LiteralError> {
    let mut p = Parser::new(s);
    p.eat("form");
    p.expect("(")?;
    let a = p.expr()?;
    p.expect(",")?;
    let b = p.expr()?;
    p.expect(",")?;
    let c = p.expr()?;
    p.expect(")")?;
    p.done()?;
    BinaryForm::new(a, b, c).map_err(|e| p.value_err(e))
}

/// `per(l..);core;per(r..)` with optional `@origin`, or `per(k..)` for a
/// purely periodic sequence.
pub fn parse_seq(s: &str) -> Result<BilliardSeq, LiteralError> {
    let mut p = Parser::new(s);
    p.expect("per(")?;
    let left = p.int_list()?;
    p.expect(")")?;
    if p.peek().is_none() {
        return BilliardSeq::periodic(left).map_err(|e| p.value_err(e));
    }
    p.expect(";")?;
    let core = p.int_list()?;
    p.expect(";")?;
    p.expect("per(")?;
    let right = p.int_list()?;
    p.expect(")")?;
    let origin = if p.eat("@") {
        let neg = p.eat("-");
        let n = i64::try_from(p.integer()?).map_err(|_| p.value_err("origin out of range"))?;
        if neg {
            -n
        } else {
            n
        }
    } else {
        0
    };
    p.done()?;
    BilliardSeq::with_origin(left, core, right, origin).map_err(|e| p.value_err(e))
}

/// `<α, β>` with `inf` allowed at one end.
pub fn parse_geodesic(s: &str) -> Result<Geodesic, LiteralError> {
    let mut p = Parser::new(s);
    if !p.eat("<") && !p.eat("⟨") {
        return Err(p.err());
    }
    let a = p.extended()?;
    p.expect(",")?;
    let b = p.extended()?;
    if !p.eat(">") && !p.eat("⟩") {
        return Err(p.err());
    }
    p.done()?;
    Geodesic::new(a, b).map_err(|e| p.value_err(e))
}

/// A billiard from any of the form, sequence or geodesic literals.
pub fn parse_billiard(s: &str) -> Result<Billiard, LiteralError> {
    let t = s.trim();
    let wrap = |e: String| LiteralError::Value(s.to_string(), e);
    if t.starts_with("per(") {
        let k = parse_seq(t)?;
        crate::spectra::sequence_billiard(&k).map_err(|e| wrap(e.to_string()))
    } else if t.starts_with('<') || t.starts_with('⟨') {
        Billiard::from_geodesic(&parse_geodesic(t)?).map_err(|e| wrap(e.to_string()))
    } else {
        Billiard::from_form(&parse_form(t)?).map_err(|e| wrap(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surds_round_trip() {
        for s in ["(1+sqrt(21))/2", "-sqrt(5)", "4*sqrt(13)", "20/3", "(42-8*sqrt(21))/15", "-7"] {
            let x = parse_surd(s).unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!(parse_surd("sqrt(8)/2").unwrap(), QuadSurd::sqrt_int(2).unwrap());
        assert_eq!(parse_surd("(3/1) / ((3+sqrt(21))/6)").unwrap().to_string(), "(-9+3*sqrt(21))/2");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_surd("1.5"), Err(LiteralError::Decimal(_))));
        assert!(matches!(parse_surd("sqrt(2)+sqrt(3)"), Err(LiteralError::Value(..))));
        assert!(parse_surd("2+").is_err());
        assert!(parse_form("form(1,2)").is_err());
    }

    #[test]
    fn structured_literals() {
        let f = parse_form("form(1,-5,-1)").unwrap();
        assert_eq!(f.to_string(), "form(1,-5,-1)");
        let k = parse_seq("per(3,1);4;per(1,3)").unwrap();
        assert_eq!(parse_seq(&k.to_string()).unwrap(), k);
        let k = parse_seq("per(1,3)").unwrap();
        assert!(k.is_periodic());
        let shifted = k.shift(1);
        assert_eq!(parse_seq(&shifted.to_string()).unwrap(), shifted);
        let g = parse_geodesic("<1/2, inf>").unwrap();
        assert_eq!(g.to_string(), "<1/2, inf>");
        assert!(!parse_billiard("<0, inf>").unwrap().proper);
        assert!(parse_billiard("form(1,-1,-5)").unwrap().proper);
    }
}
