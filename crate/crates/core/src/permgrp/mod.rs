//! Permutation groups via a deterministic Schreier-Sims base and strong generating set.

mod perm;

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use thiserror::Error;

pub use perm::Perm;

#[derive(Debug, Error)]
pub enum PermError {
    #[error("not a permutation")]
    NotBijective,
    #[error("cannot parse permutation '{0}'")]
    Parse(String),
    #[error("degree mismatch: {0} vs {1}")]
    Degree(usize, usize),
    #[error("{0} is not an element of the group")]
    NotMember(String),
    #[error("group has {0} elements, more than the bound {1}")]
    TooLarge(u128, u128),
}

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    gens: Vec<Perm>,
    orbit: Vec<u32>,
    // transversal[p] maps the base point to p
    trans: HashMap<u32, Perm>,
}

impl Level {
    fn new(base: u32) -> Level {
        Level { base, gens: Vec::new(), orbit: Vec::new(), trans: HashMap::new() }
    }

    fn rebuild(&mut self, n: usize) {
        self.orbit.clear();
        self.trans.clear();
        self.orbit.push(self.base);
        self.trans.insert(self.base, Perm::identity(n));
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            for s in &self.gens {
                let q = s.image(p);
                if !self.trans.contains_key(&q) {
                    let u = self.trans[&p].mul(s);
                    self.trans.insert(q, u);
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }
}

/// A permutation group given by generators; the stabilizer chain is built on first use.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    prefix: Vec<u32>,
    chain: OnceLock<Vec<Level>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup { degree: self.degree, gens: self.gens.clone(), prefix: self.prefix.clone(), chain: self.chain.clone() }
    }
}

fn sift(chain: &[Level], g: &Perm, from: usize) -> (Perm, usize) {
    let mut h = g.clone();
    for (l, lev) in chain.iter().enumerate().skip(from) {
        let q = h.image(lev.base);
        match lev.trans.get(&q) {
            Some(u) => h = h.mul(&u.inverse()),
            None => return (h, l),
        }
    }
    (h, chain.len())
}

fn schreier_sims(n: usize, gens: &[Perm], prefix: &[u32]) -> Vec<Level> {
    let mut chain: Vec<Level> = prefix.iter().map(|&b| Level::new(b)).collect();
    for g in gens.iter().filter(|g| !g.is_identity()) {
        if chain.iter().all(|l| g.image(l.base) == l.base) {
            chain.push(Level::new(g.smallest_moved_point().unwrap()));
        }
    }
    for g in gens.iter().filter(|g| !g.is_identity()) {
        for lev in chain.iter_mut() {
            lev.gens.push(g.clone());
            if g.image(lev.base) != lev.base {
                break;
            }
        }
    }
    for lev in chain.iter_mut() {
        lev.rebuild(n);
    }
    let mut i = chain.len() as isize - 1;
    while i >= 0 {
        let iu = i as usize;
        let mut restart = None;
        let orbit = chain[iu].orbit.clone();
        let sgens = chain[iu].gens.clone();
        'scan: for &p in &orbit {
            for s in &sgens {
                let up = &chain[iu].trans[&p];
                let q = s.image(p);
                let h = up.mul(s).mul(&chain[iu].trans[&q].inverse());
                if h.is_identity() {
                    continue;
                }
                let (res, j) = sift(&chain, &h, iu + 1);
                if res.is_identity() {
                    continue;
                }
                if j == chain.len() {
                    chain.push(Level::new(res.smallest_moved_point().unwrap()));
                }
                for lev in chain.iter_mut().take(j + 1).skip(iu + 1) {
                    lev.gens.push(res.clone());
                    lev.rebuild(n);
                }
                restart = Some(j);
                break 'scan;
            }
        }
        i = match restart {
            Some(j) => j as isize,
            None => i - 1,
        };
    }
    chain
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup, PermError> {
        Self::with_base_prefix(degree, gens, Vec::new())
    }

    /// A group whose stabilizer chain starts with the given base points.
    pub fn with_base_prefix(degree: usize, gens: Vec<Perm>, prefix: Vec<u32>) -> Result<PermGroup, PermError> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(PermError::Degree(g.degree(), degree));
        }
        Ok(PermGroup { degree, gens, prefix, chain: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup { degree, gens: Vec::new(), prefix: Vec::new(), chain: OnceLock::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    fn chain(&self) -> &[Level] {
        self.chain.get_or_init(|| schreier_sims(self.degree, &self.gens, &self.prefix))
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain().iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> u128 {
        self.chain().iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && sift(self.chain(), g, 0).0.is_identity()
    }

    /// Orbits on the whole domain, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for s in 0..self.degree as u32 {
            if !seen[s as usize] {
                let mut o = self.orbit(s);
                for &p in &o {
                    seen[p as usize] = true;
                }
                o.sort_unstable();
                out.push(o);
            }
        }
        out
    }

    pub fn orbit(&self, point: u32) -> Vec<u32> {
        let mut seen = HashSet::from([point]);
        let mut out = vec![point];
        let mut i = 0;
        while i < out.len() {
            for g in &self.gens {
                let q = g.image(out[i]);
                if seen.insert(q) {
                    out.push(q);
                }
            }
            i += 1;
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// The stabilizer of a point, generated by the second level of a chain based there.
    pub fn stabilizer(&self, point: u32) -> PermGroup {
        let g = PermGroup::with_base_prefix(self.degree, self.gens.clone(), vec![point]).unwrap();
        let gens = g.chain().get(1).map(|l| l.gens.clone()).unwrap_or_default();
        let gens = gens.into_iter().filter(|s| s.image(point) == point).collect();
        PermGroup::new(self.degree, gens).unwrap()
    }

    /// The element of the right coset `self * x` whose base images are lexicographically least.
    pub fn canonical_coset_rep(&self, x: &Perm) -> Perm {
        let chain = self.chain();
        let mut cur = x.clone();
        for lev in chain {
            let best = lev.orbit.iter().min_by_key(|&&p| cur.image(p)).copied().unwrap();
            cur = lev.trans[&best].mul(&cur);
        }
        cur
    }

    pub fn is_subgroup_of(&self, g: &PermGroup) -> bool {
        self.degree == g.degree && self.gens.iter().all(|s| g.contains(s))
    }

    /// Right transversal of `sub` in `self`, starting with the identity.
    pub fn transversal(&self, sub: &PermGroup) -> Result<Vec<Perm>, PermError> {
        if let Some(s) = sub.gens.iter().find(|s| !self.contains(s)) {
            return Err(PermError::NotMember(s.to_string()));
        }
        let id = Perm::identity(self.degree);
        let mut reps = vec![id.clone()];
        let mut seen = HashSet::from([sub.canonical_coset_rep(&id)]);
        let mut i = 0;
        while i < reps.len() {
            for g in &self.gens {
                let y = reps[i].mul(g);
                if seen.insert(sub.canonical_coset_rep(&y)) {
                    reps.push(y);
                }
            }
            i += 1;
        }
        Ok(reps)
    }

    /// All elements, refusing groups larger than `bound`.
    pub fn elements(&self, bound: u128) -> Result<Vec<Perm>, PermError> {
        let ord = self.order();
        if ord > bound {
            return Err(PermError::TooLarge(ord, bound));
        }
        let mut out = vec![Perm::identity(self.degree)];
        for lev in self.chain().iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lev.orbit.len());
            for p in &lev.orbit {
                let u = &lev.trans[p];
                next.extend(out.iter().map(|e| e.mul(u)));
            }
            out = next;
        }
        Ok(out)
    }
}

/// Checks that x^-1 S x meets I trivially for every x in `reps`; on failure returns
/// the representative and a nontrivial element of the intersection.
pub fn conj_intersection_trivial(s: &PermGroup, i: &PermGroup, reps: &[Perm]) -> Result<(), (Perm, Perm)> {
    let elems = i.elements(u128::MAX).unwrap_or_default();
    for x in reps {
        let xi = x.inverse();
        for e in elems.iter().filter(|e| !e.is_identity()) {
            if s.contains(&x.mul(e).mul(&xi)) {
                return Err((x.clone(), e.clone()));
            }
        }
    }
    Ok(())
}

/// Elements reachable from the generators, for cross-checking small groups.
pub fn closure(degree: usize, gens: &[Perm], bound: usize) -> Option<HashSet<Perm>> {
    let id = Perm::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(a) = queue.pop_front() {
        for g in gens {
            let b = a.mul(g);
            if seen.insert(b.clone()) {
                if seen.len() > bound {
                    return None;
                }
                queue.push_back(b);
            }
        }
    }
    Some(seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pg(n: usize, cyc: &[&str]) -> PermGroup {
        PermGroup::new(n, cyc.iter().map(|c| Perm::parse_cycles(c, n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(PermGroup::trivial(5).order(), 1);
        assert_eq!(pg(5, &["(1,2,3,4,5)", "(1,2)"]).order(), 120);
        assert_eq!(pg(5, &["(1,2,3)", "(3,4,5)"]).order(), 60);
        assert_eq!(pg(8, &["(1,2)(3,4)", "(5,6,7,8)"]).order(), 8);
        let m24ish = pg(12, &["(1,2,3,4,5,6,7,8,9,10,11,12)", "(1,2)"]);
        assert_eq!(m24ish.order(), 479001600);
    }

    #[test]
    fn membership_and_stabilizer() {
        let a5 = pg(5, &["(1,2,3)", "(3,4,5)"]);
        assert!(a5.contains(&Perm::parse_cycles("(1,2)(3,4)", 5).unwrap()));
        assert!(!a5.contains(&Perm::parse_cycles("(1,2)", 5).unwrap()));
        let st = a5.stabilizer(0);
        assert_eq!(st.order(), 12);
        assert_eq!(a5.orbit(0).len() as u128 * st.order(), a5.order());
    }

    #[test]
    fn transversal_and_canonical_reps() {
        let s4 = pg(4, &["(1,2,3,4)", "(1,2)"]);
        let v4 = pg(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let t = s4.transversal(&v4).unwrap();
        assert_eq!(t.len(), 6);
        let x = Perm::parse_cycles("(1,2,3)", 4).unwrap();
        let y = Perm::parse_cycles("(1,2)(3,4)", 4).unwrap().mul(&x);
        assert_eq!(v4.canonical_coset_rep(&x), v4.canonical_coset_rep(&y));
        let c4 = pg(4, &["(1,2,3,4)"]);
        assert!(c4.transversal(&pg(4, &["(1,2)"])).is_err());
    }

    #[test]
    fn conjugate_intersections() {
        let s3 = pg(3, &["(1,2,3)", "(1,2)"]);
        let t = pg(3, &["(1,2)"]);
        let reps = s3.transversal(&t).unwrap();
        assert!(conj_intersection_trivial(&t, &PermGroup::trivial(3), &reps).is_ok());
        assert!(conj_intersection_trivial(&s3, &t, &[Perm::identity(3)]).is_err());
        let c3 = pg(3, &["(1,2,3)"]);
        assert!(conj_intersection_trivial(&t, &c3, &reps).is_ok());
    }
}
