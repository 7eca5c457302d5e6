//! The lattice catalog: records for the known triangle lattices, their presentations,
//! isotropy and cusp data, optional matrix models, and the derived quantities used by
//! the search pipeline.

mod mostow;
mod parse;
mod triangle;
mod validate;

pub use mostow::{gamma_mu_subgroup, mostow_presentation, Exponent};
pub use parse::parse_catalog;
pub use triangle::{geometry, torsion_free_index, triangle_target, Geometry, Mat2, Psl2, TriangleGroup};
pub use validate::{closure_order, validate, Diagnostic, Severity};

use std::collections::HashMap;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::cxhyp::{HermitianForm, Mat3, ProjectiveMatrices};
use crate::exactalg::NumberField;
use crate::fpcore::{AbelianInvariants, GroupError, Presentation, Word};

#[derive(Debug, Error)]
pub enum LatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{record}: {field}: {msg}")]
    Record { record: String, field: String, msg: String },
    #[error("unknown record {0}")]
    Unknown(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `p` and `t` (kept as the printed label).
    Mostow { p: u32, t: String },
    Sporadic { p: u32, sigma: String },
    Thompson { p: u32, triple: String },
    Triangle { orders: (u32, u32, u32) },
    Other,
}

#[derive(Clone, Debug)]
pub struct Isotropy {
    pub words: Vec<Word>,
    pub order: u64,
}

/// Cusp stabilizer: generator words and relations among them (letters index the words).
#[derive(Clone, Debug)]
pub struct CuspEntry {
    pub words: Vec<Word>,
    pub relations: Vec<Word>,
}

impl CuspEntry {
    pub fn presentation(&self) -> Presentation {
        Presentation::new(self.words.len(), self.relations.clone())
    }
}

#[derive(Clone, Debug)]
pub struct CongruenceNote {
    pub prime: Option<u64>,
    pub factor: Option<Vec<u64>>,
    pub order: u128,
    pub name: Option<String>,
}

/// One printed row of a neat-subgroup table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub index: u64,
    pub core: Option<u64>,
    pub quotient: Option<String>,
    pub abelianization: AbelianInvariants,
    pub self_intersections: Vec<i64>,
    pub b1: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum MapKernel {
    K,
    L,
}

/// A claimed epimorphism from the subgroup generated by `A_j, B_j` onto a triangle group.
#[derive(Clone, Debug)]
pub struct TriangleMapRow {
    pub kernel: MapKernel,
    pub orders: (u32, u32, u32),
    /// Images of `B1, B2, B3` as words in the triangle generators, when known.
    pub images: Option<[Word; 3]>,
}

#[derive(Clone, Debug)]
pub struct MatrixModel {
    pub field: Arc<NumberField>,
    pub form: HermitianForm,
    /// One matrix per presentation generator.
    pub generators: Vec<Mat3>,
    /// Further named matrices (changes of basis, expected normal forms).
    pub named: HashMap<String, Mat3>,
}

impl MatrixModel {
    pub fn target(&self) -> ProjectiveMatrices {
        ProjectiveMatrices { field: self.field.clone() }
    }

    pub fn eval(&self, w: &Word) -> Mat3 {
        crate::fpcore::evaluate(&self.target(), &self.generators, w)
    }

    pub fn is_identity(&self, w: &Word) -> bool {
        self.eval(w).is_projective_identity()
    }
}

#[derive(Clone, Debug)]
pub struct LatticeRecord {
    pub name: String,
    pub family: Family,
    pub generator_names: Vec<String>,
    pub presentation: Option<Presentation>,
    /// `(2k, e1, e2)` as stored for Mostow records.
    pub mostow: Option<(u32, Exponent, Exponent)>,
    pub chi_orb: BigRational,
    pub cocompact: bool,
    pub arithmetic: bool,
    pub lcm: Option<u64>,
    pub abelianization: Option<AbelianInvariants>,
    /// Presentation known to define the group (as opposed to a set of relations that hold).
    pub complete: bool,
    pub isotropy: Vec<Isotropy>,
    pub cusps: Vec<CuspEntry>,
    pub congruence: Vec<CongruenceNote>,
    pub subgroups: Vec<(String, Vec<Word>)>,
    pub golden: Vec<GoldenRow>,
    pub triangle_maps: Vec<TriangleMapRow>,
    pub map_index: Option<u64>,
    pub basic_23p: bool,
    pub model: Option<MatrixModel>,
}

impl LatticeRecord {
    pub fn ngens(&self) -> usize {
        self.generator_names.len()
    }

    pub fn presentation(&self) -> Result<&Presentation, LatError> {
        self.presentation.as_ref().ok_or_else(|| self.err("relators", "record has no presentation"))
    }

    pub fn subgroup(&self, name: &str) -> Option<&[Word]> {
        self.subgroups.iter().find(|(n, _)| n == name).map(|(_, w)| w.as_slice())
    }

    pub fn mostow_p(&self) -> Option<u32> {
        match self.family {
            Family::Mostow { p, .. } => Some(p),
            _ => None,
        }
    }

    /// LCM of the isotropy orders, or the stored value when no isotropy list is present.
    pub fn isotropy_lcm(&self) -> Option<u64> {
        if self.isotropy.is_empty() {
            self.lcm
        } else {
            Some(self.isotropy.iter().fold(1u64, |a, i| a.lcm(&i.order)))
        }
    }

    pub(crate) fn err(&self, field: &str, msg: impl Into<String>) -> LatError {
        LatError::Record { record: self.name.clone(), field: field.into(), msg: msg.into() }
    }
}

/// Every compact manifold quotient has Euler characteristic divisible by this number:
/// 3 for ball quotients, 2 for the Fuchsian demo records.
pub fn euler_divisor(rec: &LatticeRecord) -> u64 {
    match rec.family {
        Family::Triangle { .. } => 2,
        _ => 3,
    }
}

/// The smallest index a torsion-free subgroup can have, from the isotropy orders and
/// the Euler characteristic.
pub fn lopt(rec: &LatticeRecord) -> Result<u64, LatError> {
    let l = rec.isotropy_lcm().ok_or_else(|| rec.err("lcm", "no isotropy data"))?;
    let lchi = &rec.chi_orb * BigRational::from_integer(l.into());
    if !lchi.is_integer() {
        return Err(rec.err("chi_orb", format!("{l} * chi = {lchi} is not an integer")));
    }
    let d = euler_divisor(rec);
    let divisible = lchi.to_integer().is_multiple_of(&d.into());
    Ok(if rec.cocompact && !divisible { d * l } else { l })
}

pub fn euler_of_index(rec: &LatticeRecord, index: u64) -> BigRational {
    &rec.chi_orb * BigRational::from_integer(index.into())
}

/// Checks the divisibility constraints on a torsion-free subgroup of the given index.
pub fn check_torsion_free_index(rec: &LatticeRecord, index: u64) -> Result<(), LatError> {
    let l = lopt(rec)?;
    if index % l != 0 {
        return Err(rec.err("index", format!("torsion-free index {index} is not a multiple of {l}")));
    }
    let chi = euler_of_index(rec, index);
    if !chi.is_integer() {
        return Err(rec.err("chi_orb", format!("Euler characteristic {chi} of a torsion-free subgroup")));
    }
    if rec.cocompact && !chi.to_integer().is_multiple_of(&euler_divisor(rec).into()) {
        return Err(rec.err("chi_orb", format!("compact quotient with Euler characteristic {chi}")));
    }
    Ok(())
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// An immutable set of records and fields.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub fields: HashMap<String, Arc<NumberField>>,
    pub records: Vec<LatticeRecord>,
}

const BUILTIN: &str = include_str!("../../data/catalog.txt");

impl Catalog {
    pub fn builtin() -> Result<Catalog, LatError> {
        parse_catalog(BUILTIN)
    }

    pub fn load(path: &std::path::Path) -> Result<Catalog, LatError> {
        let src = std::fs::read_to_string(path).map_err(|e| LatError::Invalid(format!("{}: {e}", path.display())))?;
        parse_catalog(&src)
    }

    pub fn get(&self, name: &str) -> Result<&LatticeRecord, LatError> {
        self.records.iter().find(|r| r.name == name).ok_or_else(|| LatError::Unknown(name.into()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.records.iter().map(|r| r.name.as_str()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_loads() {
        let c = Catalog::builtin().unwrap();
        let g = c.get("Mostow(6,0)").unwrap();
        assert_eq!(g.isotropy.iter().map(|i| i.order).collect::<Vec<_>>(), vec![3, 12, 36, 12, 36, 36]);
        assert_eq!(lopt(g).unwrap(), 36);
        assert_eq!(euler_of_index(g, 72), BigRational::from_integer(6.into()));
        assert_eq!(euler_of_index(g, 1), g.chi_orb);
        let s = c.get("Sporadic(3,sigma1)").unwrap();
        assert_eq!(euler_of_index(s, 864), BigRational::from_integer(192.into()));
        assert_eq!(s.cusps[0].relations.len(), 3);
        assert!(c.get("Sporadic(3,sigma5)").unwrap().model.is_some());
        assert!(c.records.iter().all(|r| r.cocompact || !r.cusps.is_empty()));
    }

    #[test]
    fn lopt_examples() {
        let c = Catalog::builtin().unwrap();
        let l = |n: &str| lopt(c.get(n).unwrap()).unwrap();
        assert_eq!(l("Mostow(6,1/3)"), 18);
        assert_eq!(l("Mostow(4,5/12)"), 864);
        assert_eq!(l("Mostow(10,0)"), 150);
        assert_eq!(l("Triangle(2,3,7)"), 84);
    }
}
