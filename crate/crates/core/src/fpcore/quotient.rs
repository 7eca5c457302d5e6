//! Finite quotients: permutation representations, normal cores, preimages of
//! subgroups, and homomorphism checks into groups with decidable equality.

use std::collections::HashMap;

use super::coset::CosetTable;
use super::presentation::Presentation;
use super::word::Word;
use super::GroupError;
use crate::permgrp::{Perm, PermGroup};

/// A group in which products can be computed and the identity recognized exactly.
pub trait GroupTarget {
    type Elem: Clone;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
    fn is_identity(&self, a: &Self::Elem) -> bool;
}

/// Permutations of a fixed degree.
#[derive(Clone, Copy, Debug)]
pub struct PermTarget {
    pub degree: usize,
}

impl GroupTarget for PermTarget {
    type Elem = Perm;
    fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }
    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.mul(b)
    }
    fn inverse(&self, a: &Perm) -> Perm {
        a.inverse()
    }
    fn is_identity(&self, a: &Perm) -> bool {
        a.is_identity()
    }
}

/// Image of a word under generator images (products taken left to right).
pub fn evaluate<T: GroupTarget>(target: &T, images: &[T::Elem], w: &Word) -> T::Elem {
    let inverses: Vec<Option<T::Elem>> = {
        let mut used = vec![false; images.len()];
        for &l in w.letters() {
            if l < 0 {
                used[l.unsigned_abs() as usize - 1] = true;
            }
        }
        images.iter().zip(used).map(|(g, u)| u.then(|| target.inverse(g))).collect()
    };
    w.letters().iter().fold(target.identity(), |acc, &l| {
        let k = l.unsigned_abs() as usize - 1;
        let g = if l > 0 { &images[k] } else { inverses[k].as_ref().unwrap() };
        target.mul(&acc, g)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpimorphismCheck {
    pub ok: bool,
    /// First relator (0-based position, word) whose image is not the identity.
    pub failing: Option<(usize, Word)>,
}

/// Checks that the generator images satisfy every relator.
pub fn epimorphism_check<T: GroupTarget>(p: &Presentation, target: &T, images: &[T::Elem]) -> Result<EpimorphismCheck, GroupError> {
    if images.len() != p.ngens() {
        return Err(GroupError::Invalid(format!("{} images for {} generators", images.len(), p.ngens())));
    }
    for (i, r) in p.relators().iter().enumerate() {
        if !target.is_identity(&evaluate(target, images, r)) {
            return Ok(EpimorphismCheck { ok: false, failing: Some((i, r.clone())) });
        }
    }
    Ok(EpimorphismCheck { ok: true, failing: None })
}

/// One permutation per generator, from a closed table.
pub fn permutation_rep(t: &CosetTable) -> Vec<Perm> {
    t.actions().into_iter().map(|a| Perm::from_images(a).expect("closed coset table")).collect()
}

/// The core of the subgroup, as the regular action of the image group.
pub fn normal_core(p: &Presentation, t: &CosetTable, bound: u128) -> Result<CosetTable, GroupError> {
    let perms = permutation_rep(t);
    let g = PermGroup::new(t.index(), perms.clone()).map_err(|e| GroupError::Invalid(e.to_string()))?;
    let order = g.order();
    if order > bound {
        return Err(GroupError::TooLarge { order, bound });
    }
    let table = regular_table(t.index(), &perms, order as usize);
    table.verify(p, &[])?;
    Ok(table)
}

fn regular_table(degree: usize, perms: &[Perm], order: usize) -> CosetTable {
    let mut index: HashMap<Perm, u32> = HashMap::with_capacity(order);
    let mut elems = vec![Perm::identity(degree)];
    index.insert(elems[0].clone(), 0);
    let mut actions = vec![Vec::with_capacity(order); perms.len()];
    let mut i = 0;
    while i < elems.len() {
        for (g, s) in perms.iter().enumerate() {
            let y = elems[i].mul(s);
            let next = index.len() as u32;
            let k = *index.entry(y.clone()).or_insert_with(|| {
                elems.push(y);
                next
            });
            actions[g].push(k);
        }
        i += 1;
    }
    CosetTable::from_actions(&actions).expect("regular action").standardize()
}

/// The preimage of S under the map onto the image of `t`'s permutation representation.
pub fn preimage_subgroup(p: &Presentation, t: &CosetTable, s_gens: &[Perm]) -> Result<CosetTable, GroupError> {
    let perms = permutation_rep(t);
    let f = PermGroup::new(t.index(), perms.clone()).map_err(|e| GroupError::Invalid(e.to_string()))?;
    let s = PermGroup::new(t.index(), s_gens.to_vec()).map_err(|e| GroupError::NotSubgroup(e.to_string()))?;
    if let Some(x) = s_gens.iter().find(|x| !f.contains(x)) {
        return Err(GroupError::NotSubgroup(format!("{x} is not in the image")));
    }
    let id = Perm::identity(t.index());
    let mut reps = vec![id.clone()];
    let mut index: HashMap<Perm, u32> = HashMap::from([(s.canonical_coset_rep(&id), 0)]);
    let mut actions = vec![Vec::new(); perms.len()];
    let mut i = 0;
    while i < reps.len() {
        for (g, a) in perms.iter().enumerate() {
            let y = reps[i].mul(a);
            let key = s.canonical_coset_rep(&y);
            let next = index.len() as u32;
            let k = *index.entry(key).or_insert_with(|| {
                reps.push(y);
                next
            });
            actions[g].push(k);
        }
        i += 1;
    }
    let table = CosetTable::from_actions(&actions)?.standardize();
    debug_assert_eq!(table.index() as u128 * s.order(), f.order());
    table.verify(p, &[])?;
    Ok(table)
}
