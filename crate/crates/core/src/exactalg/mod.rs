//! Exact arithmetic: number fields, residue fields and integer Smith normal form.

mod approx;
mod expr;
pub mod field;
mod poly;
pub mod residue;
pub mod snf;

pub use expr::parse_element;
pub use field::{field_arith, is_irreducible, sign_of_real, FieldElem, FieldOp, FieldSpec, NumberField};
pub use residue::{prime_factors_mod, Fq, ResidueField};
pub use snf::{smith_normal_form, smith_with_column_transform, smith_with_transforms, IntMatrix, SmithForm};


use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("defining polynomial of {0} is not irreducible")]
    NotIrreducible(String),
    #[error("bad defining polynomial: {0}")]
    BadModulus(String),
    #[error("embedding of {0} is not close to a root")]
    BadEmbedding(String),
    #[error("bad conjugation: {0}")]
    BadConjugation(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("bad prime ideal: {0}")]
    BadFactor(String),
    #[error("{value} is not integral at {p}")]
    NotIntegralAt { p: u64, value: String },
    #[error("{0} is not real")]
    NotReal(String),
    #[error("sign of {0} undecided at maximal precision")]
    Undecided(String),
    #[error("parse error: {0}")]
    Parse(String),
}
