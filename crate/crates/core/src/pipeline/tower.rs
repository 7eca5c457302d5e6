use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::certify::{cusp_orbits, SubgroupReport};
use super::PipelineError;
use crate::fpcore::{reidemeister_schreier, sublattice_index, AbelianQuotient, CosetTable, Word};
use crate::latcat::{euler_of_index, format_rational, LatticeRecord};

#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub group: String,
    pub n: u64,
    pub index: u64,
    pub cusp_count: usize,
    pub chi: String,
    /// Coefficients of the map to Z on the free part of the abelianization.
    pub functional: Vec<i64>,
    /// Distinct nonzero free-part images of the cusp generators, per cusp.
    pub cusp_images: Vec<Vec<Vec<i64>>>,
    /// Index of the span of all cusp images in the free part, if of full rank.
    pub cusp_lattice_index: Option<u64>,
    #[serde(skip)]
    pub table: CosetTable,
}

fn dot(f: &[i64], v: &[BigInt]) -> BigInt {
    f.iter().zip(v).map(|(a, b)| BigInt::from(*a) * b).sum()
}

fn small_vectors(dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|v| (-bound..=bound).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out.sort_by_key(|v| (v.iter().map(|x| x.abs()).max().unwrap_or(0), v.iter().map(|x| x.abs()).sum::<i64>()));
    out
}

/// The subgroup `ψ^-1(nZ)` of a certified subgroup `H`, where `ψ: H -> Z` factors through
/// the free abelianization and maps every cusp group onto `2Z`.
pub fn tower(rec: &LatticeRecord, h: &SubgroupReport, n: u64) -> Result<TowerReport, PipelineError> {
    if n == 0 {
        return Err(PipelineError::Invalid("n must be positive".into()));
    }
    let p = rec.presentation()?;
    let t = &h.table;
    let sp = reidemeister_schreier(p, t);
    let q = AbelianQuotient::new(sp.presentation());
    let r = q.invariants.free_rank;
    if r == 0 {
        return Err(PipelineError::Invalid("the subgroup has finite abelianization".into()));
    }
    let mut images: Vec<Vec<Vec<BigInt>>> = Vec::new();
    for c in &h.cusps {
        images.push(c.generators.iter().map(|w| Ok(q.free_part(&sp.rewrite(w)?))).collect::<Result<_, PipelineError>>()?);
    }
    let all: Vec<Vec<BigInt>> = images.iter().flatten().cloned().collect();
    let cusp_lattice_index = sublattice_index(&all, r).and_then(|x| x.to_u64());
    let two = BigInt::from(2);
    let functional = small_vectors(r, 4)
        .into_iter()
        .filter(|f| f.iter().fold(0i64, |a, b| a.gcd(b)) == 1)
        .find(|f| {
            images.iter().all(|cusp| cusp.iter().fold(BigInt::zero(), |a, v| a.gcd(&dot(f, v))) == two)
        })
        .ok_or_else(|| PipelineError::Invalid("no map to Z sends the cusp groups onto 2Z".into()))?;
    let index = t.index();
    let ng = p.ngens();
    let nn = n as usize;
    let mut actions = vec![vec![0u32; index * nn]; ng];
    for c in 0..index {
        for (g, act) in actions.iter_mut().enumerate() {
            let l = (g + 1) as i32;
            let d = t.image(c, l);
            let s = sp.coset_rep(c).mul(&Word::gen(l)).mul(&sp.coset_rep(d).inverse());
            let psi = dot(&functional, &q.free_part(&sp.rewrite(&s)?)).mod_floor(&BigInt::from(n)).to_usize().unwrap();
            for k in 0..nn {
                act[c * nn + k] = (d * nn + (k + psi) % nn) as u32;
            }
        }
    }
    let table = CosetTable::from_actions(&actions)?;
    table.verify(p, &[])?;
    let cusp_count = cusp_orbits(rec, &table).len();
    let total = (index * nn) as u64;
    let to_i64 = |v: &Vec<BigInt>| v.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect::<Vec<_>>();
    Ok(TowerReport {
        group: rec.name.clone(),
        n,
        index: total,
        cusp_count,
        chi: format_rational(&euler_of_index(rec, total)),
        functional,
        cusp_images: images
            .iter()
            .map(|c| {
                let mut v: Vec<Vec<i64>> = c.iter().map(to_i64).filter(|x| x.iter().any(|a| *a != 0)).collect();
                v.sort();
                v.dedup();
                v
            })
            .collect(),
        cusp_lattice_index,
        table,
    })
}
