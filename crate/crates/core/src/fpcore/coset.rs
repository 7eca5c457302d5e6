//! Coset tables and Todd-Coxeter enumeration.

use std::collections::VecDeque;
use std::fmt;

use super::presentation::Presentation;
use super::word::Word;
use super::GroupError;

/// A closed coset table. Cosets are 0-based internally (coset 0 is the subgroup);
/// text and permutation exports are 1-based. Column 2(g-1) is generator g, column
/// 2(g-1)+1 its inverse.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CosetTable {
    ngens: usize,
    n: usize,
    data: Vec<u32>,
}

pub(crate) fn col_of(l: i32) -> usize {
    let g = l.unsigned_abs() as usize - 1;
    2 * g + usize::from(l < 0)
}

impl CosetTable {
    /// Builds a table from forward generator actions (0-based images). Inverse columns
    /// are derived.
    pub fn from_actions(actions: &[Vec<u32>]) -> Result<CosetTable, GroupError> {
        let ngens = actions.len();
        let n = actions.first().map_or(1, Vec::len);
        let mut data = vec![u32::MAX; n * 2 * ngens];
        for (g, act) in actions.iter().enumerate() {
            if act.len() != n {
                return Err(GroupError::Invalid("actions of different degrees".into()));
            }
            for (c, &d) in act.iter().enumerate() {
                if d as usize >= n || data[d as usize * 2 * ngens + 2 * g + 1] != u32::MAX {
                    return Err(GroupError::Invalid(format!("generator {} does not act bijectively", g + 1)));
                }
                data[c * 2 * ngens + 2 * g] = d;
                data[d as usize * 2 * ngens + 2 * g + 1] = c as u32;
            }
        }
        Ok(CosetTable { ngens, n, data })
    }

    pub(crate) fn from_raw(ngens: usize, n: usize, data: Vec<u32>) -> CosetTable {
        debug_assert_eq!(data.len(), n * 2 * ngens);
        CosetTable { ngens, n, data }
    }

    pub fn trivial(ngens: usize) -> CosetTable {
        CosetTable { ngens, n: 1, data: vec![0; 2 * ngens] }
    }

    pub fn index(&self) -> usize {
        self.n
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn image(&self, coset: usize, letter: i32) -> usize {
        self.data[coset * 2 * self.ngens + col_of(letter)] as usize
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.image(c, l))
    }

    /// The 0-based action of generator g (1-based).
    pub fn action(&self, g: usize) -> Vec<u32> {
        (0..self.n).map(|c| self.data[c * 2 * self.ngens + 2 * (g - 1)]).collect()
    }

    pub fn actions(&self) -> Vec<Vec<u32>> {
        (1..=self.ngens).map(|g| self.action(g)).collect()
    }

    /// Relabels cosets in order of first appearance scanning rows from coset 0.
    pub fn standardize(&self) -> CosetTable {
        let w = 2 * self.ngens;
        let mut new_of = vec![u32::MAX; self.n];
        let mut order = Vec::with_capacity(self.n);
        new_of[0] = 0;
        order.push(0usize);
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for x in 0..w {
                let d = self.data[c * w + x] as usize;
                if new_of[d] == u32::MAX {
                    new_of[d] = order.len() as u32;
                    order.push(d);
                }
            }
            i += 1;
        }
        let mut data = Vec::with_capacity(self.data.len());
        for &c in &order {
            data.extend(self.data[c * w..(c + 1) * w].iter().map(|&d| new_of[d as usize]));
        }
        CosetTable { ngens: self.ngens, n: order.len(), data }
    }

    pub fn is_transitive(&self) -> bool {
        self.standardize().n == self.n
    }

    /// Checks closure, bijectivity, relators at every coset, and subgroup words at coset 0.
    pub fn verify(&self, p: &Presentation, subgens: &[Word]) -> Result<(), GroupError> {
        let w = 2 * self.ngens;
        if p.ngens() != self.ngens {
            return Err(GroupError::Invalid("generator count mismatch".into()));
        }
        for c in 0..self.n {
            for x in 0..w {
                let d = self.data[c * w + x] as usize;
                if d >= self.n || self.data[d * w + (x ^ 1)] as usize != c {
                    return Err(GroupError::Invalid(format!("table not closed at coset {}", c + 1)));
                }
            }
        }
        if !self.is_transitive() {
            return Err(GroupError::Invalid("action is not transitive".into()));
        }
        for r in p.relators() {
            if let Some(c) = (0..self.n).find(|&c| self.trace(c, r) != c) {
                return Err(GroupError::Invalid(format!("relator {r} moves coset {}", c + 1)));
            }
        }
        for h in subgens {
            if self.trace(0, h) != 0 {
                return Err(GroupError::Invalid(format!("subgroup generator {h} moves coset 1")));
            }
        }
        Ok(())
    }

    /// One row per coset, one 1-based column per signed generator.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.ngens, self.n);
        let w = 2 * self.ngens;
        for c in 0..self.n {
            let row: Vec<String> = self.data[c * w..(c + 1) * w].iter().map(|d| (d + 1).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(src: &str) -> Result<CosetTable, GroupError> {
        let bad = |m: &str| GroupError::Parse(format!("coset table: {m}"));
        let mut lines = src.lines().filter(|l| !l.trim().is_empty());
        let head: Vec<usize> = lines
            .next()
            .ok_or_else(|| bad("empty input"))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("bad header")))
            .collect::<Result<_, _>>()?;
        let [ngens, n] = head[..] else { return Err(bad("header must be 'ngens index'")) };
        let mut data = Vec::with_capacity(n * 2 * ngens);
        for line in lines {
            for t in line.split_whitespace() {
                let v: usize = t.parse().map_err(|_| bad("bad entry"))?;
                if v == 0 || v > n {
                    return Err(bad("entry out of range"));
                }
                data.push(v as u32 - 1);
            }
        }
        if data.len() != n * 2 * ngens {
            return Err(bad("wrong number of entries"));
        }
        let t = CosetTable { ngens, n, data };
        let w = 2 * ngens;
        for c in 0..n {
            for x in 0..w {
                if t.data[t.data[c * w + x] as usize * w + (x ^ 1)] as usize != c {
                    return Err(bad("inverse columns disagree"));
                }
            }
        }
        Ok(t)
    }
}

impl fmt::Debug for CosetTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CosetTable(index {})", self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Relator-based (HLT) with lookahead when the coset limit is reached.
    #[default]
    Hlt,
    Felsch,
}

#[derive(Clone, Copy, Debug)]
pub struct EnumLimits {
    /// Maximum number of simultaneously live cosets.
    pub max_cosets: usize,
    /// Maximum number of coset definitions.
    pub max_steps: u64,
    pub strategy: Strategy,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits { max_cosets: 2_000_000, max_steps: 200_000_000, strategy: Strategy::Hlt }
    }
}

impl EnumLimits {
    pub fn felsch() -> Self {
        EnumLimits { strategy: Strategy::Felsch, ..Default::default() }
    }
}

const UNDEF: u32 = 0;

struct Enumerator {
    w: usize,
    tab: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    // ceiling on allocated rows before compaction is attempted
    cap: usize,
    defined: u64,
    max_steps: u64,
    queue: VecDeque<u32>,
    deductions: Vec<(u32, u32)>,
    track_deductions: bool,
    relators: Vec<Vec<u32>>,
    // for each column, relator rotations (and inverse rotations) starting with it
    by_first: Vec<Vec<Vec<u32>>>,
}

enum Stop {
    Limit(String),
}

impl Enumerator {
    fn new(p: &Presentation, limits: &EnumLimits) -> Self {
        let w = 2 * p.ngens();
        let relators: Vec<Vec<u32>> =
            p.relators().iter().map(|r| r.letters().iter().map(|&l| col_of(l) as u32).collect()).collect();
        let mut by_first = vec![Vec::new(); w];
        for r in &relators {
            let inv: Vec<u32> = r.iter().rev().map(|&x| x ^ 1).collect();
            for cand in [r, &inv] {
                for s in 0..cand.len() {
                    let rot: Vec<u32> = cand[s..].iter().chain(&cand[..s]).copied().collect();
                    let list: &mut Vec<Vec<u32>> = &mut by_first[rot[0] as usize];
                    if !list.contains(&rot) {
                        list.push(rot);
                    }
                }
            }
        }
        // row 0 is a sentinel; coset numbering starts at 1
        Enumerator {
            w,
            tab: vec![UNDEF; 2 * w],
            parent: vec![0, 1],
            live: 1,
            cap: limits.max_cosets.max(2),
            defined: 1,
            max_steps: limits.max_steps,
            queue: VecDeque::new(),
            deductions: Vec::new(),
            track_deductions: limits.strategy == Strategy::Felsch,
            relators,
            by_first,
        }
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, x: u32) -> u32 {
        self.tab[c as usize * self.w + x as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, x: u32, d: u32) {
        self.tab[c as usize * self.w + x as usize] = d;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn define(&mut self, c: u32, x: u32) -> Result<u32, Stop> {
        if self.live >= self.cap || self.rows() >= 2 * self.cap {
            return Err(Stop::Limit(format!("more than {} live cosets", self.cap)));
        }
        if self.defined >= self.max_steps {
            return Err(Stop::Limit(format!("more than {} coset definitions", self.max_steps)));
        }
        let d = self.rows() as u32;
        self.parent.push(d);
        self.tab.extend(std::iter::repeat_n(UNDEF, self.w));
        self.live += 1;
        self.defined += 1;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        if self.track_deductions {
            self.deductions.push((c, x));
        }
        Ok(d)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        self.live -= 1;
        self.queue.push_back(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(e) = self.queue.pop_front() {
            for x in 0..self.w as u32 {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                if self.get(f, x ^ 1) == e {
                    self.set(f, x ^ 1, UNDEF);
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let t = self.get(e1, x);
                if t != UNDEF {
                    self.merge(f1, t);
                } else {
                    let s = self.get(f1, x ^ 1);
                    if s != UNDEF {
                        self.merge(e1, s);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, x ^ 1, e1);
                        if self.track_deductions {
                            self.deductions.push((e1, x));
                        }
                    }
                }
            }
        }
    }

    /// Scans `word` at coset c, defining cosets to close gaps when `fill` is set.
    fn scan(&mut self, c: u32, word: &[u32], fill: bool) -> Result<(), Stop> {
        let n = word.len();
        let (mut f, mut i) = (c, 0usize);
        let (mut b, mut j) = (c, n);
        loop {
            while i < j {
                let t = self.get(f, word[i]);
                if t == UNDEF {
                    break;
                }
                f = t;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let t = self.get(b, word[j - 1] ^ 1);
                if t == UNDEF {
                    break;
                }
                b = t;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, word[i], b);
                self.set(b, word[i] ^ 1, f);
                if self.track_deductions {
                    self.deductions.push((f, word[i]));
                }
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    fn process_deductions(&mut self) -> Result<(), Stop> {
        while let Some((a, x)) = self.deductions.pop() {
            if !self.alive(a) {
                continue;
            }
            for k in 0..self.by_first[x as usize].len() {
                if !self.alive(a) {
                    break;
                }
                let rot = std::mem::take(&mut self.by_first[x as usize][k]);
                self.scan(a, &rot, false)?;
                self.by_first[x as usize][k] = rot;
            }
            let b = self.get(a, x);
            if b == UNDEF || !self.alive(b) {
                continue;
            }
            let y = x ^ 1;
            for k in 0..self.by_first[y as usize].len() {
                if !self.alive(b) {
                    break;
                }
                let rot = std::mem::take(&mut self.by_first[y as usize][k]);
                self.scan(b, &rot, false)?;
                self.by_first[y as usize][k] = rot;
            }
        }
        Ok(())
    }

    /// Scans every relator at every live coset without defining new cosets.
    fn lookahead(&mut self) {
        let rels = std::mem::take(&mut self.relators);
        let mut c = 1u32;
        while (c as usize) < self.rows() {
            for r in &rels {
                if !self.alive(c) {
                    break;
                }
                // scanning without fill cannot hit a limit
                let _ = self.scan(c, r, false);
            }
            c += 1;
        }
        self.relators = rels;
    }

    /// Renumbers live cosets consecutively, preserving order. Returns the new index of
    /// the live coset at or after `cursor`.
    fn compact(&mut self, cursor: u32) -> u32 {
        let rows = self.rows();
        let mut new_of = vec![UNDEF; rows];
        let mut next = 1u32;
        for c in 1..rows {
            if self.parent[c] == c as u32 {
                new_of[c] = next;
                next += 1;
            }
        }
        let mut tab = vec![UNDEF; next as usize * self.w];
        for c in 1..rows {
            let nc = new_of[c];
            if nc == UNDEF {
                continue;
            }
            for x in 0..self.w {
                let d = self.tab[c * self.w + x];
                if d != UNDEF {
                    tab[nc as usize * self.w + x] = new_of[d as usize];
                }
            }
        }
        let new_cursor = (cursor as usize..rows).map(|c| new_of[c]).find(|&v| v != UNDEF).unwrap_or(next);
        self.tab = tab;
        self.parent = (0..next).collect();
        new_cursor
    }

    fn hlt(&mut self, subgens: &[Vec<u32>]) -> Result<(), Stop> {
        for h in subgens {
            self.scan(1, h, true)?;
        }
        let mut c = 1u32;
        while (c as usize) < self.rows() {
            if self.alive(c) {
                if let Err(stop) = self.hlt_step(c) {
                    c = self.recover(c, stop, true)?;
                    continue;
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn hlt_step(&mut self, c: u32) -> Result<(), Stop> {
        let rels = std::mem::take(&mut self.relators);
        let mut res = Ok(());
        for r in &rels {
            if !self.alive(c) {
                break;
            }
            res = self.scan(c, r, true);
            if res.is_err() {
                break;
            }
        }
        self.relators = rels;
        res?;
        for x in 0..self.w as u32 {
            if !self.alive(c) {
                break;
            }
            if self.get(c, x) == UNDEF {
                self.define(c, x)?;
            }
        }
        Ok(())
    }

    /// On hitting the coset ceiling: optionally scan everything without defining,
    /// compact, and report where to resume.
    fn recover(&mut self, c: u32, stop: Stop, lookahead: bool) -> Result<u32, Stop> {
        if self.defined >= self.max_steps {
            return Err(stop);
        }
        if lookahead {
            self.lookahead();
        }
        let c = self.compact(c);
        if self.live * 20 > self.cap * 19 {
            return Err(stop);
        }
        Ok(c)
    }

    fn felsch(&mut self, subgens: &[Vec<u32>]) -> Result<(), Stop> {
        for h in subgens {
            self.scan(1, h, true)?;
            self.process_deductions()?;
        }
        let mut c = 1u32;
        'rows: while (c as usize) < self.rows() {
            for x in 0..self.w as u32 {
                if !self.alive(c) {
                    break;
                }
                if self.get(c, x) == UNDEF {
                    if let Err(stop) = self.define(c, x) {
                        c = self.recover(c, stop, false)?;
                        continue 'rows;
                    }
                    self.process_deductions()?;
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn finish(mut self, ngens: usize) -> CosetTable {
        self.compact(1);
        let n = self.rows() - 1;
        let data = self.tab[self.w..].iter().map(|&d| d.wrapping_sub(1)).collect();
        CosetTable { ngens, n, data }.standardize()
    }
}

/// Enumerates the cosets of the subgroup generated by `subgens`.
pub fn todd_coxeter(p: &Presentation, subgens: &[Word], limits: &EnumLimits) -> Result<CosetTable, GroupError> {
    if limits.max_cosets == 0 || limits.max_steps == 0 {
        return Err(GroupError::Invalid("enumeration limits must be positive".into()));
    }
    if p.ngens() == 0 {
        return Ok(CosetTable::trivial(0));
    }
    let mut e = Enumerator::new(p, limits);
    let hs: Vec<Vec<u32>> = subgens.iter().map(|h| h.letters().iter().map(|&l| col_of(l) as u32).collect()).collect();
    let res = match limits.strategy {
        Strategy::Hlt => e.hlt(&hs),
        Strategy::Felsch => e.felsch(&hs),
    };
    if let Err(Stop::Limit(why)) = res {
        return Err(GroupError::Undecided(why));
    }
    let t = e.finish(p.ngens());
    t.verify(p, subgens)?;
    Ok(t)
}

/// Index of the subgroup generated by `subgens`.
pub fn subgroup_index(p: &Presentation, subgens: &[Word], limits: &EnumLimits) -> Result<usize, GroupError> {
    todd_coxeter(p, subgens, limits).map(|t| t.index())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both(p: &Presentation, h: &[Word]) -> usize {
        let a = todd_coxeter(p, h, &EnumLimits::default()).unwrap();
        let b = todd_coxeter(p, h, &EnumLimits::felsch()).unwrap();
        assert_eq!(a.index(), b.index());
        a.index()
    }

    #[test]
    fn small_indices() {
        assert_eq!(both(&Presentation::parse(1, "1^5").unwrap(), &[]), 5);
        let p = Presentation::parse(2, "(12)^2, 1^3, 2^4").unwrap();
        assert_eq!(both(&p, &[]), 24);
        assert_eq!(both(&p, &[Word::gen(2)]), 6);
        let a5 = Presentation::parse(2, "1^2, 2^3, (12)^5").unwrap();
        assert_eq!(both(&a5, &[]), 60);
        assert_eq!(both(&a5, &[Word::gen(1)]), 30);
    }

    #[test]
    fn trivial_group_collapses() {
        let p = Presentation::parse(2, "1, 2^7").unwrap();
        assert_eq!(both(&p, &[Word::gen(2)]), 1);
        let p = Presentation::parse(2, "121'2'2', 212'1'1'").unwrap();
        assert_eq!(both(&p, &[]), 1);
    }

    #[test]
    fn limits_give_undecided() {
        let p = Presentation::parse(2, "1^2, 2^3").unwrap();
        let lim = EnumLimits { max_cosets: 1000, max_steps: 5000, strategy: Strategy::Hlt };
        assert!(matches!(todd_coxeter(&p, &[], &lim), Err(GroupError::Undecided(_))));
    }

    #[test]
    fn lookahead_recovers_under_tight_limit() {
        let p = Presentation::parse(2, "1^2, 2^3, (12)^5").unwrap();
        let lim = EnumLimits { max_cosets: 80, ..Default::default() };
        assert_eq!(todd_coxeter(&p, &[], &lim).unwrap().index(), 60);
    }

    #[test]
    fn text_roundtrip() {
        let p = Presentation::parse(2, "1^2, 2^3, (12)^3").unwrap();
        let t = todd_coxeter(&p, &[Word::gen(2)], &EnumLimits::default()).unwrap();
        assert_eq!(t.index(), 4);
        assert_eq!(CosetTable::from_text(&t.to_text()).unwrap(), t);
        assert_eq!(t.standardize(), t);
    }
}
