//! Reidemeister-Schreier presentations for finite-index subgroups.

use std::collections::VecDeque;

use super::coset::CosetTable;
use super::presentation::{Presentation, TietzeOptions};
use super::word::Word;
use super::GroupError;

/// A subgroup presentation together with what is needed to rewrite parent words.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    presentation: Presentation,
    table: CosetTable,
    ngens_parent: usize,
    // Schreier generator (signed, 1-based) crossed by each (coset, letter column); 0 on tree edges
    edge_gen: Vec<i32>,
    // coset representatives along the spanning tree
    reps: Vec<Word>,
    // Schreier generators in terms of the current generators, once simplified
    subst: Option<Vec<Word>>,
    gens_as_parent: Vec<Word>,
}

pub fn reidemeister_schreier(p: &Presentation, t: &CosetTable) -> SubgroupPresentation {
    let n = t.index();
    let ng = p.ngens();
    let w = 2 * ng;
    let mut edge_gen = vec![0i32; n * w];
    let mut reps = vec![Word::identity(); n];
    let mut is_tree = vec![false; n * w];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for x in 0..w {
            let l = if x % 2 == 0 { (x / 2 + 1) as i32 } else { -((x / 2 + 1) as i32) };
            let d = t.image(c, l);
            if !seen[d] {
                seen[d] = true;
                reps[d] = reps[c].mul(&Word::gen(l));
                is_tree[c * w + x] = true;
                is_tree[d * w + (x ^ 1)] = true;
                queue.push_back(d);
            }
        }
    }
    let mut gens_as_parent = Vec::new();
    for c in 0..n {
        for g in 0..ng {
            let x = 2 * g;
            if !is_tree[c * w + x] {
                let l = (g + 1) as i32;
                let d = t.image(c, l);
                gens_as_parent.push(reps[c].mul(&Word::gen(l)).mul(&reps[d].inverse()));
                let s = gens_as_parent.len() as i32;
                edge_gen[c * w + x] = s;
                edge_gen[d * w + x + 1] = -s;
            }
        }
    }
    let mut sp = SubgroupPresentation {
        presentation: Presentation::new(gens_as_parent.len(), vec![]),
        table: t.clone(),
        ngens_parent: ng,
        edge_gen,
        reps,
        subst: None,
        gens_as_parent,
    };
    let mut rels = Vec::with_capacity(n * p.relators().len());
    for c in 0..n {
        for r in p.relators() {
            let (word, end) = sp.schreier_trace(c, r);
            debug_assert_eq!(end, c);
            rels.push(word);
        }
    }
    sp.presentation = Presentation::new(sp.gens_as_parent.len(), rels);
    sp
}

/// Rewrites a parent word lying in the subgroup as a word in the subgroup generators.
pub fn rewrite_word(w: &Word, sp: &SubgroupPresentation) -> Result<Word, GroupError> {
    sp.rewrite(w)
}

impl SubgroupPresentation {
    fn schreier_trace(&self, start: usize, w: &Word) -> (Word, usize) {
        let wd = 2 * self.ngens_parent;
        let mut cur = start;
        let mut out = Vec::new();
        for &l in w.letters() {
            let x = 2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0);
            let s = self.edge_gen[cur * wd + x];
            if s != 0 {
                out.push(s);
            }
            cur = self.table.image(cur, l);
        }
        (Word::new(out), cur)
    }

    pub fn rewrite(&self, w: &Word) -> Result<Word, GroupError> {
        if w.max_generator() > self.ngens_parent {
            return Err(GroupError::Invalid(format!("{w} uses an unknown generator")));
        }
        let (word, end) = self.schreier_trace(0, w);
        if end != 0 {
            return Err(GroupError::NotInSubgroup { coset: end + 1 });
        }
        Ok(match &self.subst {
            Some(s) => word.substitute(s),
            None => word,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    /// Subgroup generators written as words in the parent generators.
    pub fn generators_as_parent_words(&self) -> &[Word] {
        &self.gens_as_parent
    }

    /// Transversal word for coset `c` (0-based).
    pub fn coset_rep(&self, c: usize) -> &Word {
        &self.reps[c]
    }

    /// Applies Tietze elimination and composes the rewriting map accordingly.
    pub fn simplified(&self, opts: &TietzeOptions) -> SubgroupPresentation {
        let s = self.presentation.simplify(opts);
        let subst = match &self.subst {
            Some(old) => old.iter().map(|w| w.substitute(&s.old_to_new)).collect(),
            None => s.old_to_new.clone(),
        };
        let gens_as_parent = s.new_to_old.iter().map(|w| w.substitute(&self.gens_as_parent)).collect();
        SubgroupPresentation {
            presentation: s.presentation,
            table: self.table.clone(),
            ngens_parent: self.ngens_parent,
            edge_gen: self.edge_gen.clone(),
            reps: self.reps.clone(),
            subst: Some(subst),
            gens_as_parent,
        }
    }
}
