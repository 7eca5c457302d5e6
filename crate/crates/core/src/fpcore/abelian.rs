//! Abelianization: sparse elimination of unit pivots, then Smith normal form of the rest.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::coset::CosetTable;
use super::presentation::Presentation;
use super::word::Word;
use crate::exactalg::{smith_normal_form, smith_with_column_transform, IntMatrix};

/// Torsion divisors (all > 1, each dividing the next) and free rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn b1(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Parses `Z3+Z6+Z^2`, `Z3^2`, `1` or `0` (the trivial group).
    pub fn parse(src: &str) -> Option<AbelianInvariants> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "1" || s == "0" {
            return Some(AbelianInvariants { torsion: vec![], free_rank: 0 });
        }
        let mut torsion = Vec::new();
        let mut free_rank = 0;
        for part in s.split(['+', '⊕']) {
            let body = part.strip_prefix('Z')?;
            let (base, mult) = match body.split_once('^') {
                Some((b, m)) => (b, m.parse::<usize>().ok()?),
                None => (body, 1),
            };
            if base.is_empty() {
                free_rank += mult;
            } else {
                let d: BigInt = base.parse().ok()?;
                torsion.extend(std::iter::repeat_n(d, mult));
            }
        }
        Some(Self::from_orders(torsion, free_rank))
    }

    /// Normalizes arbitrary cyclic orders (0 meaning infinite) into invariant factors.
    pub fn from_orders(orders: Vec<BigInt>, free_rank: usize) -> AbelianInvariants {
        let n = orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, d) in orders.into_iter().enumerate() {
            m.set(i, i, d);
        }
        let f = smith_normal_form(&m);
        AbelianInvariants { torsion: f.torsion(), free_rank: free_rank + f.free_rank }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.torsion.len() {
            let mut j = i;
            while j < self.torsion.len() && self.torsion[j] == self.torsion[i] {
                j += 1;
            }
            parts.push(if j - i == 1 { format!("Z{}", self.torsion[i]) } else { format!("Z{}^{}", self.torsion[i], j - i) });
            i = j;
        }
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl Serialize for AbelianInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

type SparseRow = Vec<(usize, BigInt)>;

fn add_scaled(a: &SparseRow, b: &SparseRow, q: &BigInt) -> SparseRow {
    // a + q*b, both sorted by column
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, q * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + q * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn coeff(row: &SparseRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|k| &row[k].1)
}

/// The abelianization of a presentation together with the map from generators to
/// coordinates (torsion coordinates first, reduced mod their divisor, then free ones).
#[derive(Clone, Debug)]
pub struct AbelianQuotient {
    pub invariants: AbelianInvariants,
    images: Vec<Vec<BigInt>>,
}

impl AbelianQuotient {
    pub fn new(p: &Presentation) -> AbelianQuotient {
        let rows = p.relators().iter().map(|r| exponent_row(r, p.ngens())).collect();
        Self::from_rows(p.ngens(), rows)
    }

    /// Quotient of Z^ngens by the given sparse relation rows (sorted by column).
    fn from_rows(ngens: usize, rows: Vec<SparseRow>) -> AbelianQuotient {
        let mut rows: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        let mut eliminated: Vec<(usize, SparseRow)> = Vec::new();
        let mut alive = vec![true; ngens];
        loop {
            let pick = rows
                .iter()
                .enumerate()
                .filter_map(|(ri, r)| r.iter().find(|(_, v)| v.abs().is_one()).map(|(c, _)| (r.len(), ri, *c)))
                .min();
            let Some((_, ri, col)) = pick else { break };
            let pivot = rows.swap_remove(ri);
            let eps = coeff(&pivot, col).unwrap().clone();
            for r in rows.iter_mut() {
                if let Some(a) = coeff(r, col) {
                    let q = -(a * &eps);
                    *r = add_scaled(r, &pivot, &q);
                }
            }
            rows.retain(|r| !r.is_empty());
            // e_col = -eps * sum of the other terms of the pivot row
            let expr: SparseRow = pivot.iter().filter(|(c, _)| *c != col).map(|(c, v)| (*c, -(v * &eps))).collect();
            eliminated.push((col, expr));
            alive[col] = false;
        }
        let remaining: Vec<usize> = (0..ngens).filter(|&g| alive[g]).collect();
        let mut pos = vec![usize::MAX; ngens];
        for (k, &g) in remaining.iter().enumerate() {
            pos[g] = k;
        }
        let r = remaining.len();
        let mut m = IntMatrix::zeros(rows.len(), r);
        for (i, row) in rows.iter().enumerate() {
            for (c, v) in row {
                m.set(i, pos[*c], v.clone());
            }
        }
        let (form, v) = smith_with_column_transform(&m);
        // expressions of every generator over the remaining ones
        let mut expr: Vec<Vec<BigInt>> = vec![Vec::new(); ngens];
        for &g in &remaining {
            let mut e = vec![BigInt::zero(); r];
            e[pos[g]] = BigInt::one();
            expr[g] = e;
        }
        for (col, row) in eliminated.iter().rev() {
            let mut e = vec![BigInt::zero(); r];
            for (c, a) in row {
                for (x, y) in e.iter_mut().zip(&expr[*c]) {
                    if !y.is_zero() {
                        *x += a * y;
                    }
                }
            }
            expr[*col] = e;
        }
        let rank = form.divisors.len();
        let keep: Vec<usize> = (0..r).filter(|&i| i >= rank || !form.divisors[i].is_one()).collect();
        let mods: Vec<Option<BigInt>> = keep.iter().map(|&i| (i < rank).then(|| form.divisors[i].clone())).collect();
        let images = expr
            .iter()
            .map(|e| {
                keep.iter()
                    .zip(&mods)
                    .map(|(&i, m)| {
                        let y: BigInt = (0..r).filter(|&k| !e[k].is_zero()).map(|k| &e[k] * v.get(k, i)).sum();
                        match m {
                            Some(d) => y.mod_floor(d),
                            None => y,
                        }
                    })
                    .collect()
            })
            .collect();
        let torsion = form.divisors.iter().filter(|d| !d.is_one()).cloned().collect();
        AbelianQuotient { invariants: AbelianInvariants { torsion, free_rank: form.free_rank }, images }
    }

    /// Coordinates of a word: torsion coordinates (reduced) followed by free ones.
    pub fn image(&self, w: &Word) -> Vec<BigInt> {
        let k = self.invariants.torsion.len() + self.invariants.free_rank;
        let mut out = vec![BigInt::zero(); k];
        for &l in w.letters() {
            let img = &self.images[l.unsigned_abs() as usize - 1];
            for (o, x) in out.iter_mut().zip(img) {
                if l > 0 {
                    *o += x;
                } else {
                    *o -= x;
                }
            }
        }
        for (o, d) in out.iter_mut().zip(&self.invariants.torsion) {
            *o = o.mod_floor(d);
        }
        out
    }

    pub fn free_part(&self, w: &Word) -> Vec<BigInt> {
        self.image(w).split_off(self.invariants.torsion.len())
    }

    pub fn generator_image(&self, g: usize) -> &[BigInt] {
        &self.images[g - 1]
    }
}

fn exponent_row(r: &Word, ngens: usize) -> SparseRow {
    let mut e = vec![0i64; ngens];
    for &l in r.letters() {
        e[l.unsigned_abs() as usize - 1] += l.signum() as i64;
    }
    e.into_iter().enumerate().filter(|(_, v)| *v != 0).map(|(c, v)| (c, BigInt::from(v))).collect()
}

pub fn abelian_invariants(p: &Presentation) -> AbelianInvariants {
    AbelianQuotient::new(p).invariants
}

/// Abelian invariants of the subgroup with coset table `t`, read directly off the
/// table: one generator per non-tree edge, one relation per relator and coset.
pub fn abelian_invariants_of_subgroup(p: &Presentation, t: &CosetTable) -> AbelianInvariants {
    let n = t.index();
    let ng = p.ngens();
    let mut tree = vec![false; n * ng];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for g in 1..=ng as i32 {
            for l in [g, -g] {
                let d = t.image(c, l);
                if !seen[d] {
                    seen[d] = true;
                    let (from, gen) = if l > 0 { (c, g) } else { (d, g) };
                    tree[from * ng + gen as usize - 1] = true;
                    queue.push_back(d);
                }
            }
        }
    }
    let mut col = vec![usize::MAX; n * ng];
    let mut k = 0;
    for (i, is_tree) in tree.iter().enumerate() {
        if !is_tree {
            col[i] = k;
            k += 1;
        }
    }
    let mut rows = Vec::new();
    for c in 0..n {
        for r in p.relators() {
            let mut acc: std::collections::BTreeMap<usize, i64> = Default::default();
            let mut cur = c;
            for &l in r.letters() {
                let g = l.unsigned_abs() as usize;
                let (from, sign) = if l > 0 { (cur, 1) } else { (t.image(cur, l), -1) };
                let idx = from * ng + g - 1;
                if !tree[idx] {
                    *acc.entry(col[idx]).or_default() += sign;
                }
                cur = t.image(cur, l);
            }
            rows.push(acc.into_iter().filter(|(_, v)| *v != 0).map(|(c, v)| (c, BigInt::from(v))).collect());
        }
    }
    AbelianQuotient::from_rows(k, rows).invariants
}

/// Index of the lattice spanned by `vectors` in Z^dim, or None if it has lower rank.
pub fn sublattice_index(vectors: &[Vec<BigInt>], dim: usize) -> Option<BigInt> {
    let mut m = IntMatrix::zeros(vectors.len(), dim);
    for (i, v) in vectors.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    let f = smith_normal_form(&m);
    (f.rank() == dim).then(|| f.divisors.iter().product())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_and_free() {
        let p = Presentation::new(2, vec![]);
        assert_eq!(abelian_invariants(&p).to_string(), "Z^2");
        let h = Presentation::parse(3, "[1,2]3^-12, [1,3], [2,3]").unwrap();
        let inv = abelian_invariants(&h);
        assert_eq!(inv.to_string(), "Z12+Z^2");
        assert_eq!(inv, AbelianInvariants::parse("Z12+Z^2").unwrap());
    }

    #[test]
    fn parse_and_normalize() {
        let a = AbelianInvariants::parse("Z2+Z3").unwrap();
        assert_eq!(a.to_string(), "Z6");
        assert_eq!(AbelianInvariants::parse("Z3^2").unwrap().to_string(), "Z3^2");
        assert!(AbelianInvariants::parse("1").unwrap().is_trivial());
        assert!(AbelianInvariants::parse("Q").is_none());
    }

    #[test]
    fn images_respect_relations() {
        let p = Presentation::parse(3, "1111 2'2', 23^3, 1 2 1' 2'").unwrap();
        let q = AbelianQuotient::new(&p);
        for r in p.relators() {
            assert!(q.image(r).iter().all(Zero::is_zero), "relator {r}");
        }
        assert_eq!(q.invariants, abelian_invariants(&p));
    }

    #[test]
    fn lattice_index() {
        let v = vec![vec![BigInt::from(2), BigInt::from(0)], vec![BigInt::from(1), BigInt::from(6)]];
        assert_eq!(sublattice_index(&v, 2), Some(BigInt::from(12)));
        assert_eq!(sublattice_index(&v[..1], 2), None);
    }
}
