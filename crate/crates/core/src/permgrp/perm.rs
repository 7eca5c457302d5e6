use std::fmt;

use super::PermError;

/// A permutation of {0..n-1}; `a.mul(&b)` applies a first, then b.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || std::mem::replace(&mut seen[i as usize], true) {
                return Err(PermError::NotBijective);
            }
        }
        Ok(Perm(images))
    }

    /// Images given 1-based, as in text exports.
    pub fn from_one_based(images: &[u32]) -> Result<Perm, PermError> {
        if images.contains(&0) {
            return Err(PermError::NotBijective);
        }
        Self::from_images(images.iter().map(|i| i - 1).collect())
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4,5)`; `()` is the identity.
    pub fn parse_cycles(src: &str, n: usize) -> Result<Perm, PermError> {
        let mut img: Vec<u32> = (0..n as u32).collect();
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| PermError::Parse(src.into()))?;
            let end = body.find(')').ok_or_else(|| PermError::Parse(src.into()))?;
            let pts: Vec<u32> = if body[..end].is_empty() {
                Vec::new()
            } else {
                body[..end]
                    .split(',')
                    .map(|t| t.parse::<u32>().ok().filter(|&v| v >= 1 && v as usize <= n).map(|v| v - 1))
                    .collect::<Option<_>>()
                    .ok_or_else(|| PermError::Parse(src.into()))?
            };
            for k in 0..pts.len() {
                img[pts[k] as usize] = pts[(k + 1) % pts.len()];
            }
            rest = &body[end + 1..];
        }
        Self::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn image(&self, i: u32) -> u32 {
        self.0[i as usize]
    }

    pub fn mul(&self, o: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| o.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.0.iter().enumerate().find(|&(i, &j)| i as u32 != j).map(|(i, _)| i as u32)
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for s in 0..self.0.len() {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i as u32);
                i = self.0[i] as usize;
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> u128 {
        self.cycles().iter().fold(1u128, |acc, c| num_integer::lcm(acc, c.len() as u128))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cyc = self.cycles();
        if cyc.is_empty() {
            return write!(f, "()");
        }
        for c in cyc {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_and_products() {
        let a = Perm::parse_cycles("(1,2,3)", 4).unwrap();
        let b = Perm::parse_cycles("(3,4)", 4).unwrap();
        // 1 -> 2 under a, then 2 fixed by b
        assert_eq!(a.mul(&b).image(0), 1);
        assert_eq!(a.mul(&b).to_string(), "(1,2,4,3)");
        assert_eq!(a.order(), 3);
        assert!(a.pow(3).is_identity());
        assert_eq!(a.pow(-1), a.inverse());
        assert!(Perm::parse_cycles("(1,5)", 4).is_err());
        assert!(Perm::from_images(vec![0, 0]).is_err());
    }
}
