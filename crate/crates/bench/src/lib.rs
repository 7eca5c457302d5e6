//! Benchmark inputs shared by the criterion targets.

use ballquot_core::fpcore::{Presentation, Word};
use ballquot_core::latcat::{Catalog, LatticeRecord};

pub fn catalog() -> Catalog {
    Catalog::builtin().expect("built-in catalog")
}

pub fn record<'a>(c: &'a Catalog, name: &str) -> &'a LatticeRecord {
    c.get(name).expect("catalog record")
}

pub fn subgroup(rec: &LatticeRecord, name: &str) -> Vec<Word> {
    rec.subgroup(name).expect("stored subgroup").to_vec()
}

/// The (2,3,7) triangle group, a small presentation with large finite quotients.
pub fn triangle_237() -> Presentation {
    Presentation::parse(2, "1^2, 2^3, (12)^7").expect("presentation")
}
