//! Finitely presented groups: words, coset enumeration, low-index subgroups,
//! Reidemeister-Schreier rewriting, abelian invariants and finite quotients.

mod abelian;
mod coset;
mod lowindex;
mod presentation;
mod quotient;
mod rewrite;
mod word;

pub use abelian::{abelian_invariants, abelian_invariants_of_subgroup, sublattice_index, AbelianInvariants, AbelianQuotient};
pub use coset::{subgroup_index, todd_coxeter, CosetTable, EnumLimits, Strategy};
pub use lowindex::{low_index_subgroups, low_index_subgroups_with, LowIndexOptions, LowIndexResult};
pub use presentation::{Presentation, Simplified, TietzeOptions};
pub use quotient::{
    epimorphism_check, evaluate, normal_core, permutation_rep, preimage_subgroup, EpimorphismCheck, GroupTarget,
    PermTarget,
};
pub use rewrite::{reidemeister_schreier, rewrite_word, SubgroupPresentation};
pub use word::{split_top_level, Word};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("word is not in the subgroup: it ends at coset {coset}")]
    NotInSubgroup { coset: usize },
    #[error("quotient of order {order} exceeds the bound {bound}")]
    TooLarge { order: u128, bound: u128 },
    #[error("not a subgroup of the image: {0}")]
    NotSubgroup(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
