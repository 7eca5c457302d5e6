//! Arithmetic expressions over a number field: `+ - * / ^`, parentheses, rationals,
//! named constants and `conj(...)`.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{FieldElem, NumberField};
use super::AlgebraError;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    field: &'a Arc<NumberField>,
    names: &'a HashMap<String, FieldElem>,
}

/// Parses `src` into an element of `field`; `names` maps identifiers (including the
/// generator name) to elements.
pub fn parse_element(src: &str, field: &Arc<NumberField>, names: &HashMap<String, FieldElem>) -> Result<FieldElem, AlgebraError> {
    let mut p = Parser { s: src.as_bytes(), pos: 0, field, names };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

impl Parser<'_> {
    fn err(&self, what: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{what} at column {} in '{}'", self.pos + 1, String::from_utf8_lossy(self.s)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<FieldElem, AlgebraError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.try_add(&self.term()?)?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElem, AlgebraError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.try_mul(&self.unary()?)?;
                }
                b'/' => {
                    self.pos += 1;
                    acc = acc.try_div(&self.unary()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<FieldElem, AlgebraError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer(true)?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn integer(&mut self, signed: bool) -> Result<i64, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        if signed && self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| self.err("expected integer"))
    }

    fn atom(&mut self) -> Result<FieldElem, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap();
                Ok(FieldElem::from_rational_in(self.field, BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap().to_string();
                if name == "conj" {
                    if self.peek() != Some(b'(') {
                        return Err(self.err("expected '(' after conj"));
                    }
                    return Ok(self.atom()?.conj());
                }
                if name == self.field.gen_name() {
                    return Ok(FieldElem::generator_in(self.field));
                }
                self.names.get(&name).cloned().ok_or_else(|| self.err(&format!("unknown name '{name}'")))
            }
            _ => Err(self.err("expected a value")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cyclotomic_expressions() {
        let k = NumberField::cyclotomic(3);
        let mut names = HashMap::new();
        let w = FieldElem::generator_in(&k);
        names.insert("w".to_string(), w.clone());
        let e = parse_element("w^2 + w + 1", &k, &names).unwrap();
        assert!(e.is_zero());
        let e = parse_element("conj(w) - w^-1", &k, &names).unwrap();
        assert!(e.is_zero());
        let e = parse_element("-(2+w)/3 * 3", &k, &names).unwrap();
        assert_eq!(e, -(&w + &FieldElem::from_int_in(&k, 2)));
        assert!(parse_element("w +", &k, &names).is_err());
        assert!(parse_element("q", &k, &names).is_err());
    }
}
