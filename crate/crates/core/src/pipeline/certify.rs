use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{Limits, PipelineError};
use crate::cxhyp::{congruence_image, cusp_analyze, self_intersection_from_abelianization, CongruenceImage, Mat3};
use crate::exactalg::ResidueField;
use crate::fpcore::{
    abelian_invariants_of_subgroup, evaluate, low_index_subgroups_with, permutation_rep, reidemeister_schreier, todd_coxeter,
    AbelianInvariants, CosetTable, LowIndexOptions, PermTarget, Presentation, Word,
};
use crate::latcat::{check_torsion_free_index, euler_of_index, format_rational, LatticeRecord};
use crate::permgrp::{conj_intersection_trivial, Perm, PermGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Neatness {
    Yes,
    No,
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspReport {
    /// Cusp class of the parent lattice this cusp lies over (0-based).
    pub class: usize,
    /// Number of cosets in the orbit of the parent cusp group.
    pub width: usize,
    /// First coset of the orbit (0-based).
    pub coset: usize,
    pub abelianization: String,
    pub self_intersection: Option<i64>,
    /// Whether every generator is unipotent in the matrix model.
    pub unipotent: Option<bool>,
    #[serde(skip)]
    pub invariants: AbelianInvariants,
    /// Generators of the cusp subgroup as parent words lying in the subgroup.
    #[serde(skip)]
    pub generators: Vec<Word>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupReport {
    pub group: String,
    pub method: String,
    pub index: u64,
    pub core_index: Option<u128>,
    pub quotient: Option<String>,
    pub abelianization: String,
    pub b1: usize,
    pub chi: String,
    pub kernel_torsion_free: Option<bool>,
    pub torsion_free: Option<bool>,
    pub torsion_witness: Option<String>,
    pub neat: Neatness,
    pub cusp_count: usize,
    pub cusps: Vec<CuspReport>,
    /// Failed divisibility constraint for a subgroup certified torsion-free.
    pub index_check: Option<String>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub invariants: AbelianInvariants,
    #[serde(skip)]
    pub table: CosetTable,
}

impl SubgroupReport {
    pub fn self_intersections(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.cusps.iter().filter_map(|c| c.self_intersection).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Schreier generators of the subgroup, as parent words.
    pub fn generator_words(&self, p: &Presentation) -> Vec<Word> {
        reidemeister_schreier(p, &self.table).generators_as_parent_words().to_vec()
    }
}

/// Spanning-tree words reaching each coset from coset 0.
pub(crate) fn coset_reps(t: &CosetTable) -> Vec<Word> {
    let mut reps: Vec<Option<Word>> = vec![None; t.index()];
    reps[0] = Some(Word::identity());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for g in 1..=t.ngens() as i32 {
            for l in [g, -g] {
                let d = t.image(c, l);
                if reps[d].is_none() {
                    reps[d] = Some(reps[c].as_ref().unwrap().mul(&Word::gen(l)));
                    queue.push_back(d);
                }
            }
        }
    }
    reps.into_iter().map(|r| r.expect("transitive table")).collect()
}

/// Orbits of the parent's cusp groups on the cosets of `t`: `(class, orbit)` pairs,
/// each orbit listed in breadth-first order from its least coset.
pub fn cusp_orbits(rec: &LatticeRecord, t: &CosetTable) -> Vec<(usize, Vec<usize>)> {
    let perms = permutation_rep(t);
    let target = PermTarget { degree: t.index() };
    let mut out = Vec::new();
    for (class, cusp) in rec.cusps.iter().enumerate() {
        if cusp.words.is_empty() {
            continue;
        }
        let gens: Vec<Perm> = cusp.words.iter().map(|w| evaluate(&target, &perms, w)).collect();
        let mut seen = vec![false; t.index()];
        for start in 0..t.index() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                for g in &gens {
                    for d in [g.image(orbit[i] as u32), g.inverse().image(orbit[i] as u32)] {
                        if !seen[d as usize] {
                            seen[d as usize] = true;
                            orbit.push(d as usize);
                        }
                    }
                }
                i += 1;
            }
            out.push((class, orbit));
        }
    }
    out
}

fn analyze_cusp(
    rec: &LatticeRecord,
    t: &CosetTable,
    reps: &[Word],
    class: usize,
    orbit: &[usize],
) -> Result<CuspReport, PipelineError> {
    let cusp = &rec.cusps[class];
    let perms = permutation_rep(t);
    let target = PermTarget { degree: t.index() };
    let local: HashMap<usize, u32> = orbit.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
    let actions: Vec<Vec<u32>> = cusp
        .words
        .iter()
        .map(|w| {
            let g = evaluate(&target, &perms, w);
            orbit.iter().map(|&c| local[&(g.image(c as u32) as usize)]).collect()
        })
        .collect();
    let table = CosetTable::from_actions(&actions)?;
    let cp = cusp.presentation();
    table.verify(&cp, &[]).map_err(|e| PipelineError::Invalid(format!("cusp {} relations fail on the subgroup: {e}", class + 1)))?;
    let invariants = abelian_invariants_of_subgroup(&cp, &table);
    let r = &reps[orbit[0]];
    let generators = reidemeister_schreier(&cp, &table)
        .generators_as_parent_words()
        .iter()
        .map(|w| r.mul(&w.substitute(&cusp.words)).mul(&r.inverse()))
        .collect();
    Ok(CuspReport {
        class,
        width: orbit.len(),
        coset: orbit[0],
        abelianization: invariants.to_string(),
        self_intersection: self_intersection_from_abelianization(&invariants).ok(),
        unipotent: None,
        invariants,
        generators,
    })
}

fn isotropy_group(rec: &LatticeRecord, perms: &[Perm], degree: usize, k: usize) -> Result<PermGroup, PipelineError> {
    let target = PermTarget { degree };
    let gens = rec.isotropy[k].words.iter().map(|w| evaluate(&target, perms, w)).collect();
    Ok(PermGroup::new(degree, gens)?)
}

/// Certifies the subgroup with coset table `t`.
///
/// With `F` the permutation image of the action on cosets and `K` its kernel, `K` is
/// torsion-free when every isotropy group maps injectively into `F`; the subgroup is
/// then torsion-free when no conjugate of an isotropy image meets the point stabilizer.
pub fn certify(rec: &LatticeRecord, t: &CosetTable, method: &str, limits: &Limits) -> Result<SubgroupReport, PipelineError> {
    let p = rec.presentation()?;
    t.verify(p, &[])?;
    let n = t.index();
    let mut notes = Vec::new();
    let perms = permutation_rep(t);
    let f = PermGroup::new(n, perms.clone())?;
    let core = f.order();
    let mut kernel_tf = None;
    let mut torsion_free = None;
    let mut witness = None;
    if rec.isotropy.is_empty() {
        notes.push("no isotropy data; torsion not examined".into());
    } else {
        let images: Vec<PermGroup> =
            (0..rec.isotropy.len()).map(|k| isotropy_group(rec, &perms, n, k)).collect::<Result<_, _>>()?;
        let bad = images.iter().zip(&rec.isotropy).find(|(g, iso)| g.order() != iso.order as u128);
        kernel_tf = Some(bad.is_none());
        if let Some((g, iso)) = bad {
            torsion_free = Some(false);
            let names: Vec<String> = iso.words.iter().map(|w| w.to_string()).collect();
            witness = Some(format!("<{}> of order {} maps to a group of order {}", names.join(", "), iso.order, g.order()));
        } else if core > limits.max_quotient {
            notes.push(format!("quotient of order {core} too large for the conjugacy test"));
        } else {
            let s = f.stabilizer(0);
            torsion_free = Some(true);
            for (img, iso) in images.iter().zip(&rec.isotropy) {
                let reps: Vec<Perm> = f.transversal(img)?.iter().map(Perm::inverse).collect();
                if let Err((_, e)) = conj_intersection_trivial(&s, img, &reps) {
                    torsion_free = Some(false);
                    let names: Vec<String> = iso.words.iter().map(|w| w.to_string()).collect();
                    witness = Some(format!("a conjugate of <{}> meets the subgroup in an element of order {}", names.join(", "), e.order()));
                    break;
                }
            }
        }
    }
    let reps = coset_reps(t);
    let mut cusps = Vec::new();
    for (class, orbit) in cusp_orbits(rec, t) {
        cusps.push(analyze_cusp(rec, t, &reps, class, &orbit)?);
    }
    let has_unknown_cusps = rec.cusps.iter().any(|c| c.words.is_empty());
    if has_unknown_cusps {
        notes.push("some cusp classes have no generators; cusp data is partial".into());
    }
    let mut neat = match torsion_free {
        Some(false) => Neatness::No,
        None => Neatness::Undetermined,
        Some(true) if rec.cusps.is_empty() => Neatness::Yes,
        Some(true) => Neatness::Undetermined,
    };
    if let (Some(model), Some(true), false) = (&rec.model, torsion_free, rec.cusps.is_empty() || has_unknown_cusps) {
        let mut all = true;
        for c in cusps.iter_mut() {
            let mats: Vec<Mat3> = c.generators.iter().map(|w| model.eval(w)).collect();
            match cusp_analyze(&mats, &model.form, None) {
                Ok(a) => {
                    c.unipotent = Some(a.neat);
                    all &= a.neat;
                }
                Err(e) => {
                    notes.push(format!("cusp at coset {}: {e}", c.coset));
                    all = false;
                }
            }
        }
        neat = if all { Neatness::Yes } else if cusps.iter().any(|c| c.unipotent == Some(false)) { Neatness::No } else { Neatness::Undetermined };
    } else if neat == Neatness::Undetermined && torsion_free == Some(true) {
        notes.push("no matrix model for the cusp groups; neatness undetermined".into());
    }
    let invariants = abelian_invariants_of_subgroup(p, t);
    if !rec.complete {
        notes.push("relations are partial; the abelianization is that of the group they define".into());
    }
    let index_check = match torsion_free {
        Some(true) => check_torsion_free_index(rec, n as u64).err().map(|e| e.to_string()),
        _ => None,
    };
    Ok(SubgroupReport {
        group: rec.name.clone(),
        method: method.into(),
        index: n as u64,
        core_index: Some(core),
        quotient: None,
        abelianization: invariants.to_string(),
        b1: invariants.free_rank,
        chi: format_rational(&euler_of_index(rec, n as u64)),
        kernel_torsion_free: kernel_tf,
        torsion_free,
        torsion_witness: witness,
        neat,
        cusp_count: cusps.len(),
        cusps,
        index_check,
        notes,
        invariants,
        table: t.clone(),
    })
}

/// Enumerates the subgroup generated by `words` and certifies it.
pub fn certify_words(rec: &LatticeRecord, words: &[Word], limits: &Limits) -> Result<SubgroupReport, PipelineError> {
    let t = todd_coxeter(rec.presentation()?, words, &limits.enumeration)?;
    certify(rec, &t, "words", limits)
}

/// The action of the lattice on the orbit of `point` in the projective plane over the
/// residue field of `prime` (and the chosen factor), as a coset table of the point stabilizer.
pub fn congruence_table(
    rec: &LatticeRecord,
    prime: u64,
    factor: Option<Vec<u64>>,
    point: usize,
) -> Result<(CongruenceImage, CosetTable), PipelineError> {
    let model = rec.model.as_ref().ok_or_else(|| PipelineError::Invalid(format!("{} has no matrix model", rec.name)))?;
    let rf = ResidueField::new(&model.field, prime, factor).map_err(|e| PipelineError::Invalid(e.to_string()))?;
    let img = congruence_image(&model.generators, &rf)?;
    if point >= img.degree() {
        return Err(PipelineError::Invalid(format!("point {point} out of range")));
    }
    let orbit = img.group.orbit(point as u32);
    let local: HashMap<u32, u32> = orbit.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
    let actions: Vec<Vec<u32>> =
        img.images.iter().map(|g| orbit.iter().map(|&c| local[&g.image(c)]).collect()).collect();
    let t = CosetTable::from_actions(&actions)?.standardize();
    t.verify(rec.presentation()?, &[])?;
    Ok((img, t))
}

/// Conjugacy classes of subgroups of index at most `max_index`.
pub fn low_index_candidates(rec: &LatticeRecord, max_index: usize, opts: &LowIndexOptions) -> Result<(Vec<CosetTable>, bool), PipelineError> {
    let r = low_index_subgroups_with(rec.presentation()?, max_index, opts);
    Ok((r.tables, r.complete))
}

/// Searches the subgroups between the kernel of `normal` and the whole group, up to
/// index `max_index`, for torsion-free ones.
pub fn promote(
    rec: &LatticeRecord,
    normal: &CosetTable,
    max_index: usize,
    limits: &Limits,
) -> Result<Vec<SubgroupReport>, PipelineError> {
    let p = rec.presentation()?;
    let kernel = reidemeister_schreier(p, normal);
    let mut rels = p.relators().to_vec();
    rels.extend(kernel.generators_as_parent_words().iter().filter(|w| !w.is_empty()).cloned());
    let quotient = Presentation::new(p.ngens(), rels);
    let r = low_index_subgroups_with(&quotient, max_index, &LowIndexOptions::default());
    if !r.complete {
        return Err(PipelineError::Invalid("subgroup search ran out of budget".into()));
    }
    let mut out = Vec::new();
    for t in &r.tables {
        let rep = certify(rec, t, "promote", limits)?;
        if rep.torsion_free == Some(true) {
            out.push(rep);
        }
    }
    Ok(out)
}
