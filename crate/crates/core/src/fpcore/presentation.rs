use std::collections::HashSet;
use std::fmt;

use super::word::Word;
use super::GroupError;

/// A finite presentation on generators 1..=ngens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    ngens: usize,
    relators: Vec<Word>,
    names: Vec<String>,
}

/// Bounds for generator elimination.
#[derive(Clone, Copy, Debug)]
pub struct TietzeOptions {
    /// Relators longer than this are never used to eliminate a generator.
    pub max_relator_len: usize,
    /// Total relator length may grow to this multiple of the starting length.
    pub max_growth: f64,
    pub max_steps: usize,
}

impl Default for TietzeOptions {
    fn default() -> Self {
        TietzeOptions { max_relator_len: 24, max_growth: 1.5, max_steps: 10_000 }
    }
}

/// Result of simplification. `old_to_new[g-1]` expresses old generator g in the new
/// generators; `new_to_old[h-1]` is the old generator that survived as h.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub presentation: Presentation,
    pub old_to_new: Vec<Word>,
    pub new_to_old: Vec<Word>,
}

fn canonical_relator(w: &Word) -> Word {
    let r = w.cyclically_reduced();
    if r.is_empty() {
        return r;
    }
    let mut best: Option<Vec<i32>> = None;
    for cand in [r.letters().to_vec(), r.inverse().letters().to_vec()] {
        let n = cand.len();
        for s in 0..n {
            let rot: Vec<i32> = cand[s..].iter().chain(&cand[..s]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    Word::new(best.unwrap())
}

impl Presentation {
    pub fn new(ngens: usize, relators: Vec<Word>) -> Presentation {
        let names = (1..=ngens).map(|g| g.to_string()).collect();
        Self::with_names(ngens, relators, names)
    }

    pub fn with_names(ngens: usize, relators: Vec<Word>, names: Vec<String>) -> Presentation {
        assert_eq!(names.len(), ngens, "one name per generator");
        let mut out = Vec::with_capacity(relators.len());
        for r in relators {
            assert!(r.max_generator() <= ngens, "relator {r} uses an undeclared generator");
            let r = r.cyclically_reduced();
            if !r.is_empty() {
                out.push(r);
            }
        }
        Presentation { ngens, relators: out, names }
    }

    /// Parses a comma-separated relator list in digit notation.
    pub fn parse(ngens: usize, relators: &str) -> Result<Presentation, GroupError> {
        Ok(Self::new(ngens, Word::parse_list(relators, ngens)?))
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn add_relators(&self, extra: impl IntoIterator<Item = Word>) -> Presentation {
        let mut rels = self.relators.clone();
        rels.extend(extra);
        Self::with_names(self.ngens, rels, self.names.clone())
    }

    /// Drops duplicate relators (up to rotation and inversion).
    pub fn deduplicated(&self) -> Presentation {
        let mut seen = HashSet::new();
        let rels = self.relators.iter().filter(|r| seen.insert(canonical_relator(r))).cloned().collect();
        Presentation { ngens: self.ngens, relators: rels, names: self.names.clone() }
    }

    /// Eliminates generators that occur exactly once in a short relator, cheapest
    /// substitution first, while the total length stays within budget.
    pub fn simplify(&self, opts: &TietzeOptions) -> Simplified {
        let n = self.ngens;
        let mut rels: Vec<Word> = self.deduplicated().relators;
        let mut expr: Vec<Option<Word>> = vec![None; n];
        let budget = ((self.total_length().max(1) as f64) * opts.max_growth).ceil() as usize;
        for _ in 0..opts.max_steps {
            let mut occ = vec![0usize; n + 1];
            for r in &rels {
                for &l in r.letters() {
                    occ[l.unsigned_abs() as usize] += 1;
                }
            }
            let total: usize = rels.iter().map(Word::len).sum();
            let mut best: Option<(usize, usize, usize, i32)> = None;
            for (ri, r) in rels.iter().enumerate() {
                if r.len() > opts.max_relator_len {
                    continue;
                }
                let mut local = vec![0usize; n + 1];
                for &l in r.letters() {
                    local[l.unsigned_abs() as usize] += 1;
                }
                for (g, &c) in local.iter().enumerate() {
                    if c != 1 {
                        continue;
                    }
                    let others = occ[g] - 1;
                    let new_total = total - r.len() + others * (r.len() - 1) - others;
                    if r.len() > 2 && new_total > budget {
                        continue;
                    }
                    let key = (r.len(), new_total);
                    if best.is_none_or(|(bl, bt, _, _)| key < (bl, bt)) {
                        best = Some((r.len(), new_total, ri, g as i32));
                    }
                }
            }
            let Some((_, _, ri, g)) = best else { break };
            let r = rels.remove(ri);
            let pos = r.letters().iter().position(|l| l.abs() == g).unwrap();
            let rot: Vec<i32> = r.letters()[pos..].iter().chain(&r.letters()[..pos]).copied().collect();
            let rest = Word::new(rot[1..].iter().copied());
            // rot = g^e rest, so g = rest^-1 when e = 1 and g = rest when e = -1
            let value = if rot[0] > 0 { rest.inverse() } else { rest };
            let mut images: Vec<Word> = (1..=n as i32).map(Word::gen).collect();
            images[g as usize - 1] = value.clone();
            rels = rels.iter().map(|w| w.substitute(&images).cyclically_reduced()).filter(|w| !w.is_empty()).collect();
            for e in expr.iter_mut().flatten() {
                *e = e.substitute(&images);
            }
            expr[g as usize - 1] = Some(value);
            let mut seen = HashSet::new();
            rels.retain(|r| seen.insert(canonical_relator(r)));
        }
        let survivors: Vec<usize> = (0..n).filter(|&i| expr[i].is_none()).collect();
        let mut renumber = vec![0i32; n];
        for (k, &i) in survivors.iter().enumerate() {
            renumber[i] = k as i32 + 1;
        }
        let to_new = |w: &Word| Word::new(w.letters().iter().map(|&l| l.signum() * renumber[l.unsigned_abs() as usize - 1]));
        let old_to_new = (0..n)
            .map(|i| match &expr[i] {
                Some(e) => to_new(e),
                None => Word::gen(renumber[i]),
            })
            .collect();
        let new_to_old = survivors.iter().map(|&i| Word::gen(i as i32 + 1)).collect();
        let names = survivors.iter().map(|&i| self.names[i].clone()).collect();
        let rels = rels.iter().map(to_new).collect();
        Simplified { presentation: Self::with_names(survivors.len(), rels, names), old_to_new, new_to_old }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | ", self.names.join(", "))?;
        let rels: Vec<String> = self.relators.iter().map(Word::to_string).collect();
        write!(f, "{} >", rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eliminates_conjugate_generators() {
        // 1,2,3,4 = R1,R2,R3,J with R2 = J R1 J^-1, R3 = J^-1 R1 J
        let p = Presentation::parse(4, "1^3, 4^3, 2'414', 3'4'14, br3(1,2)").unwrap();
        let s = p.simplify(&TietzeOptions { max_growth: 4.0, ..Default::default() });
        assert_eq!(s.presentation.ngens(), 2);
        assert_eq!(s.old_to_new[1], Word::parse("212'", 2).unwrap());
        for (old, img) in s.new_to_old.iter().zip(1..) {
            assert_eq!(old.substitute(&s.old_to_new), Word::gen(img));
        }
    }

    #[test]
    fn removes_trivial_generators() {
        let p = Presentation::parse(3, "2, 31', 1^5").unwrap();
        let s = p.simplify(&TietzeOptions::default());
        assert_eq!(s.presentation.ngens(), 1);
        assert_eq!(s.presentation.relators(), &[Word::new([1, 1, 1, 1, 1])]);
        assert!(s.old_to_new[1].is_empty());
    }

    #[test]
    fn dedup_up_to_rotation() {
        let p = Presentation::parse(2, "12, 21, 2'1'").unwrap();
        assert_eq!(p.deduplicated().relators().len(), 1);
    }
}
