//! Complex hyperbolic geometry over number fields: Hermitian forms, unitary matrices,
//! complex reflections, Heisenberg cusp coordinates and congruence images.

mod congruence;
mod cusp;
mod form;
mod heisenberg;
mod matrix;

pub use congruence::{congruence_image, projective_points, reduce_matrix, CongruenceImage};
pub use cusp::{commutator_power_triangular, cusp_analyze, CuspAnalysis, CuspElementKind, CuspGenerator};
pub use form::{build_reflection, point_distance, signature, verify_unitary, HermitianForm};
pub use heisenberg::{
    commutator_power, self_intersection_from_abelianization, self_intersection_from_commutator, HeisenbergElement,
};
pub use matrix::{hermitian_product, Mat3, Vec3};

use std::sync::Arc;

use thiserror::Error;

use crate::exactalg::{AlgebraError, NumberField};
use crate::fpcore::GroupTarget;
use crate::permgrp::PermError;

#[derive(Debug, Error)]
pub enum CxError {
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("form has signature ({pos},{neg}) with {zero} null directions, expected (2,1)")]
    Signature { pos: usize, neg: usize, zero: usize },
    #[error("multiplier does not have absolute value 1")]
    NotUnitModulus,
    #[error("vector is null")]
    NullVector,
    #[error("vector is not negative")]
    NotNegative,
    #[error("{0} is not purely imaginary")]
    NotImaginary(String),
    #[error("matrix is not of upper triangular Heisenberg shape")]
    NotTriangular,
    #[error("element is not a nontrivial vertical translation")]
    NotVertical,
    #[error("element has a rotation part")]
    NotTranslation,
    #[error("translations have real-dependent horizontal parts")]
    Dependent,
    #[error("commutator is not a power of the central generator: {0}")]
    NotPower(String),
    #[error("not a neat cusp abelianization: {0}")]
    NotNeatCusp(String),
    #[error("not a cusp group: {0}")]
    NotCuspGroup(String),
    #[error("generator {generator} is loxodromic")]
    Loxodromic { generator: usize },
    #[error("generator {generator} is singular modulo the prime")]
    Singular { generator: usize },
    #[error("projective plane has {points} points")]
    TooLarge { points: u64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Projective matrix group: elements are equal when they differ by a scalar.
#[derive(Clone, Debug)]
pub struct ProjectiveMatrices {
    pub field: Arc<NumberField>,
}

impl GroupTarget for ProjectiveMatrices {
    type Elem = Mat3;
    fn identity(&self) -> Mat3 {
        Mat3::identity(&self.field)
    }
    fn mul(&self, a: &Mat3, b: &Mat3) -> Mat3 {
        a.mul(b)
    }
    fn inverse(&self, a: &Mat3) -> Mat3 {
        a.adjugate()
    }
    fn is_identity(&self, a: &Mat3) -> bool {
        a.is_projective_identity()
    }
}
