use serde::Serialize;

use super::{Limits, PipelineError};
use crate::fpcore::{
    epimorphism_check, evaluate, reidemeister_schreier, todd_coxeter, EnumLimits, GroupTarget, SubgroupPresentation, Word,
};
use crate::latcat::{
    gamma_mu_subgroup, torsion_free_index, triangle_target, LatticeRecord, Mat2, MapKernel, TriangleGroup, TriangleMapRow,
};

/// Images of `R1, R2, R3, J` in the (p,3,2) triangle group: `R1 -> γ`, `J -> β` with
/// `γ = x` of order p and `β = y` of order 3.
pub fn basic_23p_images(p: u32) -> Result<(TriangleGroup, [Mat2; 4]), PipelineError> {
    let t = triangle_target(p, 3, 2);
    let (target, [g, b]) = t.model.clone().ok_or_else(|| PipelineError::Invalid(format!("(2,3,{p}) is not hyperbolic")))?;
    let bi = target.inverse(&b);
    let r2 = b.mul(&g).mul(&bi);
    let r3 = bi.mul(&g).mul(&b);
    Ok((t, [g, r2, r3, b]))
}

#[derive(Clone, Debug, Serialize)]
pub struct Basic23pVerdict {
    pub ok: bool,
    pub failing: Option<String>,
    /// `φ(R1 R2) = β`.
    pub r1r2_is_beta: bool,
    /// `φ(R1 R2 J) = γ^-2`; this fails, the product is `β^-1`.
    pub r1r2j_is_gamma_inv2: bool,
    /// `φ(R2 R1 J) = γ^-2`, which makes the `(J R2 R1)` power relator compatible.
    pub r2r1j_is_gamma_inv2: bool,
}

pub fn verify_basic_23p(rec: &LatticeRecord) -> Result<Basic23pVerdict, PipelineError> {
    let p = rec.mostow_p().ok_or_else(|| PipelineError::Invalid(format!("{} is not a Mostow group", rec.name)))?;
    let pres = rec.presentation()?;
    let (t, images) = basic_23p_images(p)?;
    let (target, [g, b]) = t.model.as_ref().expect("hyperbolic");
    let check = epimorphism_check(pres, target, &images)?;
    let ev = |s: &str| evaluate(target, &images, &Word::parse(s, 4).expect("fixed word"));
    let eq = |a: &Mat2, b: &Mat2| target.is_identity(&a.mul(&target.inverse(b)));
    Ok(Basic23pVerdict {
        ok: check.ok,
        failing: check.failing.map(|(_, w)| w.to_string()),
        r1r2_is_beta: eq(&ev("12"), b),
        r1r2j_is_gamma_inv2: eq(&ev("124"), &target.inverse(&g.mul(g))),
        r2r1j_is_gamma_inv2: eq(&ev("214"), &target.inverse(&g.mul(g))),
    })
}

/// Extends images of the subgroup generators `sub` to images of the Schreier generators
/// of `sp`, solving relator cycles and generator paths that contain a single unknown.
pub fn propagate_images<T: GroupTarget>(
    sp: &SubgroupPresentation,
    sub: &[Word],
    images: &[T::Elem],
    target: &T,
) -> Result<Vec<T::Elem>, PipelineError>
where
    T::Elem: Clone,
{
    let n = sp.presentation().ngens();
    let mut eqs: Vec<(Word, T::Elem)> = Vec::new();
    for (w, img) in sub.iter().zip(images) {
        eqs.push((sp.rewrite(w)?, img.clone()));
    }
    eqs.extend(sp.presentation().relators().iter().map(|r| (r.clone(), target.identity())));
    let mut known: Vec<Option<T::Elem>> = vec![None; n];
    let mut done = vec![false; eqs.len()];
    loop {
        let mut progress = false;
        for (k, (w, rhs)) in eqs.iter().enumerate() {
            if done[k] {
                continue;
            }
            let letters = w.letters();
            let unknown: Vec<usize> =
                (0..letters.len()).filter(|&i| known[letters[i].unsigned_abs() as usize - 1].is_none()).collect();
            if unknown.is_empty() {
                done[k] = true;
                continue;
            }
            let g = letters[unknown[0]].unsigned_abs() as usize;
            if unknown.iter().any(|&i| letters[i].unsigned_abs() as usize != g) || unknown.len() > 1 {
                continue;
            }
            let i = unknown[0];
            let val = |ls: &[i32]| {
                ls.iter().fold(target.identity(), |acc, &l| {
                    let x = known[l.unsigned_abs() as usize - 1].as_ref().unwrap();
                    target.mul(&acc, &if l > 0 { x.clone() } else { target.inverse(x) })
                })
            };
            let left = val(&letters[..i]);
            let right = val(&letters[i + 1..]);
            let u = target.mul(&target.mul(&target.inverse(&left), rhs), &target.inverse(&right));
            known[g - 1] = Some(if letters[i] > 0 { u } else { target.inverse(&u) });
            done[k] = true;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let missing = known.iter().filter(|x| x.is_none()).count();
    if missing > 0 {
        return Err(PipelineError::Invalid(format!("{missing} Schreier generators are not determined by the given images")));
    }
    Ok(known.into_iter().map(Option::unwrap).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct MapVerdict {
    pub kernel: MapKernel,
    pub orders: (u32, u32, u32),
    pub gamma_mu_index: usize,
    pub homomorphism: Option<bool>,
    pub failing: Option<String>,
    /// Index of the image in the triangle group, when the enumeration closes.
    pub image_index: Option<usize>,
    pub surjective: Option<bool>,
    pub triangle_index: Option<u64>,
    pub index: Option<u64>,
    pub isomorphism: &'static str,
    pub note: Option<String>,
}

/// Which of `A1, A2, A3, B1, B2, B3` the map keeps (in the order the catalog lists images).
fn kept(kernel: MapKernel) -> [usize; 3] {
    match kernel {
        MapKernel::K => [3, 4, 5],
        MapKernel::L => [1, 2, 3],
    }
}

/// Checks a map from the subgroup `<A_j, B_j>` onto a triangle group that kills `K`
/// (the normal closure of the `A_j`) or `L` (that of `A1, B2, B3`).
pub fn verify_triangle_map(rec: &LatticeRecord, row: &TriangleMapRow, limits: &Limits) -> Result<MapVerdict, PipelineError> {
    let p = rec.presentation()?;
    let sub = gamma_mu_subgroup();
    let table = todd_coxeter(p, &sub, &limits.enumeration)?;
    let (a, b, c) = row.orders;
    let triangle_index = torsion_free_index(a, b, c);
    let mut v = MapVerdict {
        kernel: row.kernel,
        orders: row.orders,
        gamma_mu_index: table.index(),
        homomorphism: None,
        failing: None,
        image_index: None,
        surjective: None,
        triangle_index,
        index: triangle_index.map(|i| 6 * i),
        isomorphism: "unverified",
        note: None,
    };
    let Some(words) = &row.images else {
        v.note = Some("no images recorded".into());
        return Ok(v);
    };
    let t = triangle_target(a, b, c);
    let Some((target, gens)) = &t.model else {
        v.note = Some("spherical target".into());
        return Ok(v);
    };
    let mut images = vec![target.identity(); 6];
    for (slot, w) in kept(row.kernel).into_iter().zip(words) {
        images[slot] = evaluate(target, gens, w);
    }
    let sp = reidemeister_schreier(p, &table);
    match propagate_images(&sp, &sub, &images, target) {
        Ok(schreier) => {
            let check = epimorphism_check(sp.presentation(), target, &schreier)?;
            let consistent = sub.iter().zip(&images).all(|(w, img)| {
                let got = evaluate(target, &schreier, &sp.rewrite(w).expect("subgroup generator"));
                target.is_identity(&got.mul(&target.inverse(img)))
            });
            v.homomorphism = Some(check.ok && consistent);
            v.failing = check.failing.map(|(_, w)| w.to_string());
        }
        Err(e) => v.note = Some(e.to_string()),
    }
    let words: Vec<Word> = words.iter().filter(|w| !w.is_empty()).cloned().collect();
    if words.is_empty() {
        v.surjective = Some(false);
    } else {
        let lim = EnumLimits { max_cosets: 200_000, max_steps: 5_000_000, ..EnumLimits::default() };
        if let Ok(tt) = todd_coxeter(&t.presentation, &words, &lim) {
            v.image_index = Some(tt.index());
            v.surjective = Some(tt.index() == 1);
        }
    }
    Ok(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct LargenessVerdict {
    pub group: String,
    pub basic_23p: Option<Basic23pVerdict>,
    pub maps: Vec<MapVerdict>,
    /// 6 times the least torsion-free index among verified non-spherical targets.
    pub map_index: Option<u64>,
    pub stored_map_index: Option<u64>,
    pub diagnostics: Vec<String>,
}

pub fn verify_largeness_maps(records: &[&LatticeRecord], limits: &Limits) -> Vec<LargenessVerdict> {
    let mut out = Vec::new();
    for rec in records {
        if !rec.basic_23p && rec.triangle_maps.is_empty() {
            continue;
        }
        let mut diagnostics = Vec::new();
        let basic_23p = if rec.basic_23p {
            match verify_basic_23p(rec) {
                Ok(v) => Some(v),
                Err(e) => {
                    diagnostics.push(e.to_string());
                    None
                }
            }
        } else {
            None
        };
        let mut maps = Vec::new();
        for row in &rec.triangle_maps {
            match verify_triangle_map(rec, row, limits) {
                Ok(m) => maps.push(m),
                Err(e) => diagnostics.push(format!("{:?} {:?}: {e}", row.kernel, row.orders)),
            }
        }
        let map_index = maps.iter().filter(|m| m.homomorphism == Some(true) && m.surjective == Some(true)).filter_map(|m| m.index).min();
        out.push(LargenessVerdict {
            group: rec.name.clone(),
            basic_23p,
            maps,
            map_index,
            stored_map_index: rec.map_index,
            diagnostics,
        });
    }
    out
}
