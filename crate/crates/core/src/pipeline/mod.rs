//! Subgroup certification: torsion-freeness, cusps, abelianization and Euler
//! characteristic of finite-index subgroups of catalog lattices, plus the tower and
//! largeness constructions built on top of them.

mod certify;
mod facet;
mod largeness;
mod report;
mod tower;

pub use certify::{
    certify, certify_words, congruence_table, cusp_orbits, low_index_candidates, promote, CuspReport, Neatness,
    SubgroupReport,
};
pub use facet::{facet_stabilizer, FacetEdge, FacetGraph};
pub use largeness::{
    basic_23p_images, propagate_images, verify_basic_23p, verify_largeness_maps, verify_triangle_map, LargenessVerdict,
    MapVerdict,
};
pub use report::{golden_diff, header_row, report_tables, GoldenMismatch, HeaderRow};
pub use tower::{tower, TowerReport};

use thiserror::Error;

use crate::cxhyp::CxError;
use crate::fpcore::{EnumLimits, GroupError};
use crate::latcat::LatError;
use crate::permgrp::PermError;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Catalog(#[from] LatError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Matrix(#[from] CxError),
    #[error("{0}")]
    Invalid(String),
}

/// Resource bounds for one job.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub enumeration: EnumLimits,
    /// Largest finite quotient `Γ/K` that is handled as a permutation group.
    pub max_quotient: u128,
    /// Largest matrix group enumerated by closure.
    pub closure_bound: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: EnumLimits { max_steps: 10_000_000, ..EnumLimits::default() },
            max_quotient: 10_000_000,
            closure_bound: 100_000,
        }
    }
}
