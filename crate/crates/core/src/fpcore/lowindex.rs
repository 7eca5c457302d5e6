//! Conjugacy classes of subgroups of small index, by backtracking over standardized
//! partial coset tables and keeping only the least table in each conjugacy class.

use super::coset::{col_of, CosetTable};
use super::presentation::Presentation;

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
pub struct LowIndexOptions {
    /// Search nodes visited before giving up with a partial result.
    pub max_nodes: u64,
}

impl Default for LowIndexOptions {
    fn default() -> Self {
        LowIndexOptions { max_nodes: 50_000_000 }
    }
}

#[derive(Clone, Debug)]
pub struct LowIndexResult {
    /// One canonical table per conjugacy class, ordered by index then table.
    pub tables: Vec<CosetTable>,
    /// False when the node budget ran out.
    pub complete: bool,
    pub nodes: u64,
}

struct Search {
    n: usize,
    w: usize,
    ngens: usize,
    tab: Vec<u32>,
    log: Vec<usize>,
    deductions: Vec<(u32, u32)>,
    by_first: Vec<Vec<Vec<u32>>>,
    relators: Vec<Vec<u32>>,
    nodes: u64,
    max_nodes: u64,
    aborted: bool,
    found: Vec<CosetTable>,
}

impl Search {
    #[inline]
    fn get(&self, c: u32, x: u32) -> u32 {
        self.tab[c as usize * self.w + x as usize]
    }

    fn put(&mut self, c: u32, x: u32, d: u32) {
        let i = c as usize * self.w + x as usize;
        self.tab[i] = d;
        self.log.push(i);
    }

    fn assign(&mut self, c: u32, x: u32, d: u32) -> bool {
        let cur = self.get(c, x);
        if cur != UNDEF {
            return cur == d;
        }
        let back = self.get(d, x ^ 1);
        if back != UNDEF {
            return back == c;
        }
        self.put(c, x, d);
        self.put(d, x ^ 1, c);
        self.deductions.push((c, x));
        true
    }

    fn scan(&mut self, c: u32, word: &[u32]) -> bool {
        let (mut f, mut i) = (c, 0usize);
        let (mut b, mut j) = (c, word.len());
        while i < j {
            let t = self.get(f, word[i]);
            if t == UNDEF {
                break;
            }
            f = t;
            i += 1;
        }
        if i == j {
            return f == b;
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
            return f == b;
        }
        if j == i + 1 {
            return self.assign(f, word[i], b);
        }
        true
    }

    fn propagate(&mut self) -> bool {
        while let Some((a, x)) = self.deductions.pop() {
            for k in 0..self.by_first[x as usize].len() {
                let rot = std::mem::take(&mut self.by_first[x as usize][k]);
                let ok = self.scan(a, &rot);
                self.by_first[x as usize][k] = rot;
                if !ok {
                    return false;
                }
            }
            let b = self.get(a, x);
            let y = x ^ 1;
            for k in 0..self.by_first[y as usize].len() {
                let rot = std::mem::take(&mut self.by_first[y as usize][k]);
                let ok = self.scan(b, &rot);
                self.by_first[y as usize][k] = rot;
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.log.len() > mark {
            let i = self.log.pop().unwrap();
            self.tab[i] = UNDEF;
        }
        self.deductions.clear();
    }

    /// False if relabeling from some other coset gives a smaller table on the
    /// entries decided so far.
    fn canonical(&self, k: usize) -> bool {
        let w = self.w;
        let mut map = vec![UNDEF; k];
        let mut back = vec![UNDEF; k];
        'base: for b in 1..k {
            map.fill(UNDEF);
            back.fill(UNDEF);
            map[b] = 0;
            back[0] = b as u32;
            let mut next = 1u32;
            for c in 0..k {
                let old = back[c];
                if old == UNDEF {
                    continue 'base;
                }
                for x in 0..w {
                    let t = self.tab[old as usize * w + x];
                    let orig = self.tab[c * w + x];
                    if t == UNDEF || orig == UNDEF {
                        continue 'base;
                    }
                    if map[t as usize] == UNDEF {
                        map[t as usize] = next;
                        back[next as usize] = t;
                        next += 1;
                    }
                    let m = map[t as usize];
                    if m < orig {
                        return false;
                    }
                    if m > orig {
                        continue 'base;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.aborted = true;
            return;
        }
        let hole = (0..k * self.w).find(|&i| self.tab[i] == UNDEF);
        let Some(hole) = hole else {
            self.record(k);
            return;
        };
        let (c, x) = ((hole / self.w) as u32, (hole % self.w) as u32);
        let limit = if k < self.n { k + 1 } else { k };
        for d in 0..limit {
            if self.aborted {
                return;
            }
            let mark = self.log.len();
            let nk = if d == k { k + 1 } else { k };
            if self.assign(c, x, d as u32) && self.propagate() && self.canonical(nk) {
                self.run(nk);
            }
            self.undo(mark);
        }
    }

    fn record(&mut self, k: usize) {
        let data = self.tab[..k * self.w].to_vec();
        let t = CosetTable::from_raw(self.ngens, k, data);
        debug_assert!(self.relators.iter().all(|r| (0..k).all(|c| {
            r.iter().fold(c, |d, &x| t_image(&t, d, x)) == c
        })));
        self.found.push(t);
    }
}

fn t_image(t: &CosetTable, c: usize, x: u32) -> usize {
    let l = (x / 2 + 1) as i32;
    t.image(c, if x % 2 == 0 { l } else { -l })
}

/// All subgroups of index at most `n`, one per conjugacy class.
pub fn low_index_subgroups(p: &Presentation, n: usize) -> LowIndexResult {
    low_index_subgroups_with(p, n, &LowIndexOptions::default())
}

pub fn low_index_subgroups_with(p: &Presentation, n: usize, opts: &LowIndexOptions) -> LowIndexResult {
    assert!(n >= 1, "maximal index must be positive");
    let w = 2 * p.ngens();
    if w == 0 {
        return LowIndexResult { tables: vec![CosetTable::trivial(0)], complete: true, nodes: 1 };
    }
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
    let mut s = Search {
        n,
        w,
        ngens: p.ngens(),
        tab: vec![UNDEF; n * w],
        log: Vec::new(),
        deductions: Vec::new(),
        by_first,
        relators,
        nodes: 0,
        max_nodes: opts.max_nodes,
        aborted: false,
        found: Vec::new(),
    };
    s.run(1);
    let mut tables = std::mem::take(&mut s.found);
    tables.sort_by(|a, b| a.index().cmp(&b.index()).then_with(|| a.to_text().cmp(&b.to_text())));
    LowIndexResult { tables, complete: !s.aborted, nodes: s.nodes }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group() {
        let p = Presentation::parse(1, "1^6").unwrap();
        let r = low_index_subgroups(&p, 3);
        assert!(r.complete);
        let idx: Vec<usize> = r.tables.iter().map(CosetTable::index).collect();
        assert_eq!(idx, vec![1, 2, 3]);
    }

    #[test]
    fn free_group_rank_two() {
        // conjugacy classes of index <= 2 in F2: the group itself and three of index 2
        let p = Presentation::new(2, vec![]);
        let r = low_index_subgroups(&p, 2);
        assert_eq!(r.tables.len(), 4);
        // index 3: 7 normal-or-not classes (13 subgroups)
        let r = low_index_subgroups(&p, 3);
        assert_eq!(r.tables.iter().filter(|t| t.index() == 3).count(), 7);
    }

    #[test]
    fn symmetric_group_s3() {
        let p = Presentation::parse(2, "1^2, 2^3, (12)^2").unwrap();
        let r = low_index_subgroups(&p, 6);
        let idx: Vec<usize> = r.tables.iter().map(CosetTable::index).collect();
        assert_eq!(idx, vec![1, 2, 3, 6]);
        for t in &r.tables {
            t.verify(&p, &[]).unwrap();
        }
    }
}
