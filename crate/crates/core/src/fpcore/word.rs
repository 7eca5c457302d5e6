//! Free-group words over numbered generators, and the digit notation used in catalogs:
//! `1` is generator 1, `1'` its inverse, `(12)^3`, `br3(1,2)`, `[1,2]`. An exponent
//! followed by more letters needs braces: `2^{2}1`.

use std::fmt;

use serde::{Serialize, Serializer};

use super::GroupError;

/// A freely reduced word; letters are signed 1-based generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Word {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "generator 0 does not exist");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn gen(g: i32) -> Word {
        Word::new([g])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn mul(&self, o: &Word) -> Word {
        Word::new(self.0.iter().chain(o.0.iter()).copied())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        Word::new(out)
    }

    /// x^-1 w x
    pub fn conjugate_by(&self, x: &Word) -> Word {
        x.inverse().mul(self).mul(x)
    }

    /// [u, v] = u v u^-1 v^-1
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// The braid relator: the alternating product u v u ... of length n times the
    /// inverse of v u v ... of length n.
    pub fn braid(n: usize, u: &Word, v: &Word) -> Word {
        let alt = |a: &Word, b: &Word| {
            let mut w = Word::identity();
            for k in 0..n {
                w = w.mul(if k % 2 == 0 { a } else { b });
            }
            w
        };
        alt(u, v).mul(&alt(v, u).inverse())
    }

    /// Removes matching letters from both ends.
    pub fn cyclically_reduced(&self) -> Word {
        let mut s = 0;
        let mut e = self.0.len();
        while e - s >= 2 && self.0[s] == -self.0[e - 1] {
            s += 1;
            e -= 1;
        }
        Word(self.0[s..e].to_vec())
    }

    /// Replaces each letter g by `images[g-1]` (or its inverse).
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Vec::new();
        for &l in &self.0 {
            let img = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                out.extend_from_slice(&img.0);
            } else {
                out.extend(img.0.iter().rev().map(|x| -x));
            }
        }
        Word::new(out)
    }

    /// Parses digit notation; `ngens` bounds the allowed generator digits.
    pub fn parse(src: &str, ngens: usize) -> Result<Word, GroupError> {
        let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = WordParser { c: &chars, pos: 0, ngens, src };
        let w = p.word()?;
        if p.pos != chars.len() {
            return Err(p.err("unexpected character"));
        }
        Ok(w)
    }

    /// Parses a comma-separated list of words, ignoring commas nested in brackets.
    pub fn parse_list(src: &str, ngens: usize) -> Result<Vec<Word>, GroupError> {
        split_top_level(src).into_iter().filter(|s| !s.trim().is_empty()).map(|s| Word::parse(s, ngens)).collect()
    }
}

/// Splits on commas at bracket depth zero.
pub fn split_top_level(src: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in src.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&src[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&src[start..]);
    out
}

struct WordParser<'a> {
    c: &'a [char],
    pos: usize,
    ngens: usize,
    src: &'a str,
}

fn is_inverse_mark(c: char) -> bool {
    matches!(c, '\'' | '\u{0304}' | '\u{0305}')
}

impl WordParser<'_> {
    fn err(&self, what: &str) -> GroupError {
        GroupError::Parse(format!("{what} at position {} in '{}'", self.pos + 1, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.c.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Word, GroupError> {
        let mut w = Word::identity();
        while let Some(c) = self.peek() {
            if c == ')' || c == ']' || c == ',' {
                break;
            }
            let item = self.item()?;
            w = w.mul(&item);
        }
        Ok(w)
    }

    fn item(&mut self) -> Result<Word, GroupError> {
        let mut a = self.atom()?;
        while self.peek().is_some_and(is_inverse_mark) {
            self.pos += 1;
            a = a.inverse();
        }
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = if self.peek() == Some('{') {
                self.pos += 1;
                let e = self.integer(true)?;
                self.expect('}')?;
                e
            } else {
                self.integer(true)?
            };
            a = a.pow(e);
        }
        Ok(a)
    }

    fn integer(&mut self, signed: bool) -> Result<i64, GroupError> {
        let start = self.pos;
        if signed && self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.c[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("expected integer"))
    }

    fn expect(&mut self, ch: char) -> Result<(), GroupError> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{ch}'")))
        }
    }

    fn atom(&mut self) -> Result<Word, GroupError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(']')?;
                Ok(Word::commutator(&u, &v))
            }
            Some('b') => {
                let rest: String = self.c[self.pos..].iter().take(2).collect();
                if rest != "br" {
                    return Err(self.err("expected 'br'"));
                }
                self.pos += 2;
                if self.peek() == Some('_') {
                    self.pos += 1;
                }
                let n = self.integer(false)?;
                if n < 1 {
                    return Err(self.err("braid length must be positive"));
                }
                self.expect('(')?;
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(')')?;
                Ok(Word::braid(n as usize, &u, &v))
            }
            Some('e') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(c) if c.is_ascii_digit() => {
                self.pos += 1;
                let g = c.to_digit(10).unwrap() as usize;
                if g == 0 || g > self.ngens {
                    self.pos -= 1;
                    return Err(self.err(&format!("generator {g} out of range 1..={}", self.ngens)));
                }
                Ok(Word::gen(g as i32))
            }
            _ => Err(self.err("expected a generator")),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for &l in &self.0 {
            let g = l.unsigned_abs();
            if g < 10 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{{{g}}}")?;
            }
            if l < 0 {
                write!(f, "'")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w = Word::parse("12142'", 4).unwrap();
        assert_eq!(w.letters(), &[1, 2, 1, 4, -2]);
        assert_eq!(w.to_string(), "12142'");
        assert_eq!(Word::parse("(112)^2", 4).unwrap().to_string(), "112112");
        assert_eq!(Word::parse("(14)^-1", 4).unwrap().to_string(), "4'1'");
        assert_eq!(Word::parse("2^{2}1^{-2}", 4).unwrap().to_string(), "221'1'");
        assert_eq!(Word::parse("11'", 4).unwrap(), Word::identity());
        assert!(Word::parse("15", 4).is_err());
        assert!(Word::parse("1)", 4).is_err());
    }

    #[test]
    fn braid_relators() {
        let a = Word::gen(1);
        let b = Word::gen(2);
        assert_eq!(Word::braid(3, &a, &b).to_string(), "1212'1'2'");
        assert_eq!(Word::braid(4, &a, &b).to_string(), "12121'2'1'2'");
        assert_eq!(Word::parse("br3(1,2)", 2).unwrap(), Word::braid(3, &a, &b));
        assert_eq!(Word::parse("br_2(1,2)", 2).unwrap(), Word::commutator(&a, &b));
        assert_eq!(Word::parse("[1,2]", 2).unwrap().to_string(), "121'2'");
    }

    #[test]
    fn split_respects_brackets() {
        let v = Word::parse_list("1^6, br3(1,2), [1,2]", 2).unwrap();
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn cyclic_reduction_and_substitution() {
        let w = Word::new([2, 1, 3, -2]);
        assert_eq!(w.cyclically_reduced(), Word::new([1, 3]));
        let images = vec![Word::new([1, 1]), Word::new([-1])];
        assert_eq!(Word::new([1, -2]).substitute(&images), Word::new([1, 1, 1]));
    }
}
