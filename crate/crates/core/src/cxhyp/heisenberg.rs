//! Heisenberg translations and screw motions fixing the null vector e1 of the form with
//! ones on the antidiagonal.
//!
//! An element is stored as `(z, v, zeta)` with `v = i t` purely imaginary, so that
//! everything stays inside a CM field without adjoining `i`. The law for pure
//! translations reads `(z, v) * (z', v') = (z + z', v + v' + z conj(z') - conj(z) z')`,
//! which is `t'' = t + t' + 2 Im(z conj(z'))`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::matrix::Mat3;
use super::CxError;
use crate::exactalg::FieldElem;
use crate::fpcore::AbelianInvariants;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergElement {
    pub z: FieldElem,
    pub v: FieldElem,
    pub zeta: FieldElem,
}

impl HeisenbergElement {
    /// A translation; `v` must satisfy `conj(v) = -v`.
    pub fn translation(z: FieldElem, v: FieldElem) -> Result<HeisenbergElement, CxError> {
        let zeta = z.one();
        HeisenbergElement::screw(z, v, zeta)
    }

    pub fn screw(z: FieldElem, v: FieldElem, zeta: FieldElem) -> Result<HeisenbergElement, CxError> {
        if v.conj() != -&v {
            return Err(CxError::NotImaginary(v.to_string()));
        }
        if !(&zeta * &zeta.conj()).is_one() {
            return Err(CxError::NotUnitModulus);
        }
        Ok(HeisenbergElement { z, v, zeta })
    }

    /// Translation by `(z, t)` given `i` in the field.
    pub fn from_t(z: FieldElem, t: &FieldElem, i: &FieldElem) -> Result<HeisenbergElement, CxError> {
        if !t.is_real() {
            return Err(CxError::NotImaginary(t.to_string()));
        }
        HeisenbergElement::translation(z, i * t)
    }

    pub fn identity_like(x: &FieldElem) -> HeisenbergElement {
        HeisenbergElement { z: x.zero(), v: x.zero(), zeta: x.one() }
    }

    pub fn is_translation(&self) -> bool {
        self.zeta.is_one()
    }

    pub fn is_vertical(&self) -> bool {
        self.is_translation() && self.z.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.is_vertical() && self.v.is_zero()
    }

    pub fn mul(&self, o: &HeisenbergElement) -> HeisenbergElement {
        let rz = &self.zeta * &o.z;
        let cross = &(&self.z * &rz.conj()) - &(&self.z.conj() * &rz);
        HeisenbergElement { z: &self.z + &rz, v: &(&self.v + &o.v) + &cross, zeta: &self.zeta * &o.zeta }
    }

    pub fn inverse(&self) -> HeisenbergElement {
        let zb = self.zeta.conj();
        HeisenbergElement { z: -(&zb * &self.z), v: -&self.v, zeta: zb }
    }

    pub fn pow(&self, e: i64) -> HeisenbergElement {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(HeisenbergElement::identity_like(&self.z), |acc, _| acc.mul(&base))
    }

    pub fn commutator(&self, o: &HeisenbergElement) -> HeisenbergElement {
        self.mul(o).mul(&self.inverse()).mul(&o.inverse())
    }

    /// Unitary representative for the form with ones on the antidiagonal.
    pub fn to_matrix(&self) -> Mat3 {
        let z0 = self.z.zero();
        let half = FieldElem::from_rational_in(self.z.field(), num_rational::BigRational::new(1.into(), 2.into()));
        let corner = &(&self.v - &(&self.z * &self.z.conj())) * &half;
        Mat3::from_rows([
            [z0.one(), -(&self.zeta * &self.z.conj()), corner],
            [z0.clone(), self.zeta.clone(), self.z.clone()],
            [z0.clone(), z0.clone(), z0.one()],
        ])
    }

    /// Reads an element back from a (projective) upper triangular representative.
    pub fn from_matrix(m: &Mat3) -> Result<HeisenbergElement, CxError> {
        let a = m.get(0, 0);
        if a.is_zero() {
            return Err(CxError::NotTriangular);
        }
        let m = m.scale(&a.inv()?);
        let lower_zero = m.get(1, 0).is_zero() && m.get(2, 0).is_zero() && m.get(2, 1).is_zero();
        if !lower_zero || !m.get(2, 2).is_one() {
            return Err(CxError::NotTriangular);
        }
        let zeta = m.get(1, 1).clone();
        let z = m.get(1, 2).clone();
        let v = &(m.get(0, 2) + m.get(0, 2)) + &(&z * &z.conj());
        let h = HeisenbergElement::screw(z, v, zeta)?;
        if h.to_matrix() != m {
            return Err(CxError::NotTriangular);
        }
        Ok(h)
    }
}

/// The integer `k` with `[a, b] = z^k`.
pub fn commutator_power(a: &HeisenbergElement, b: &HeisenbergElement, z: &HeisenbergElement) -> Result<i64, CxError> {
    if !z.is_vertical() || z.is_identity() {
        return Err(CxError::NotVertical);
    }
    if !a.is_translation() || !b.is_translation() {
        return Err(CxError::NotTranslation);
    }
    if (&(&a.z * &b.z.conj()) - &(&a.z.conj() * &b.z)).is_zero() {
        return Err(CxError::Dependent);
    }
    let c = a.commutator(b);
    integral_ratio(&c.v, &z.v)
}

pub(super) fn integral_ratio(a: &FieldElem, b: &FieldElem) -> Result<i64, CxError> {
    let q = (a / b).as_rational().ok_or_else(|| CxError::NotPower(format!("{a} / {b} is irrational")))?;
    if !q.is_integer() {
        return Err(CxError::NotPower(format!("ratio {q} is not an integer")));
    }
    q.to_integer().to_i64().ok_or_else(|| CxError::NotPower("ratio out of range".into()))
}

/// Self-intersection `-|k|` of the compactifying curve, from `[a, b] = z^k`.
pub fn self_intersection_from_commutator(a: &HeisenbergElement, b: &HeisenbergElement, z: &HeisenbergElement) -> Result<i64, CxError> {
    Ok(-commutator_power(a, b, z)?.abs())
}

/// Self-intersection `-q` from a cusp abelianization `Z^2 + Z_q`.
pub fn self_intersection_from_abelianization(inv: &AbelianInvariants) -> Result<i64, CxError> {
    if inv.free_rank != 2 || inv.torsion.len() > 1 {
        return Err(CxError::NotNeatCusp(inv.to_string()));
    }
    let q = inv.torsion.first().cloned().unwrap_or_else(|| BigInt::from(1));
    q.abs().to_i64().map(|q| -q).ok_or_else(|| CxError::NotNeatCusp(inv.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cxhyp::{verify_unitary, HermitianForm};
    use crate::exactalg::NumberField;

    fn gauss(re: i64, im: i64) -> FieldElem {
        let k = NumberField::gaussian();
        let i = FieldElem::generator_in(&k);
        &FieldElem::from_int_in(&k, re) + &(&FieldElem::from_int_in(&k, im) * &i)
    }

    fn t(zr: i64, zi: i64, t: i64) -> HeisenbergElement {
        HeisenbergElement::from_t(gauss(zr, zi), &gauss(t, 0), &gauss(0, 1)).unwrap()
    }

    #[test]
    fn law_and_commutator() {
        assert_eq!(t(0, 0, 3).mul(&t(0, 0, 4)), t(0, 0, 7));
        assert_eq!(t(1, 0, 0).mul(&t(0, 1, 0)), t(1, 1, -2));
        assert_eq!(t(1, 0, 0).commutator(&t(0, 1, 0)), t(0, 0, -4));
        assert_eq!(t(2, 1, 5).inverse(), t(-2, -1, -5));
        assert_eq!(self_intersection_from_commutator(&t(1, 0, 0), &t(0, 1, 0), &t(0, 0, -4)).unwrap(), -1);
        assert_eq!(commutator_power(&t(1, 0, 0), &t(0, 1, 0), &t(0, 0, 2)).unwrap(), -2);
        assert!(commutator_power(&t(1, 0, 0), &t(0, 1, 0), &t(0, 0, 3)).is_err());
        assert!(commutator_power(&t(1, 0, 0), &t(2, 0, 0), &t(0, 0, 1)).is_err());
    }

    #[test]
    fn matrices_are_unitary() {
        let k = NumberField::gaussian();
        let j = HermitianForm::standard_antidiagonal(&k);
        let s = HeisenbergElement::screw(gauss(1, 2), gauss(0, 3), gauss(0, 1)).unwrap();
        assert!(verify_unitary(&s.to_matrix(), &j));
        let b = t(-1, 1, 2);
        assert_eq!(s.mul(&b).to_matrix(), s.to_matrix().mul(&b.to_matrix()));
        assert_eq!(HeisenbergElement::from_matrix(&s.to_matrix().scale(&gauss(2, 1))).unwrap(), s);
        assert!(s.mul(&s.inverse()).is_identity());
    }

    #[test]
    fn abelianization_route() {
        let f = |s: &str| self_intersection_from_abelianization(&AbelianInvariants::parse(s).unwrap());
        assert_eq!(f("Z12+Z^2").unwrap(), -12);
        assert_eq!(f("Z^2").unwrap(), -1);
        assert!(f("Z3+Z^3").is_err());
    }
}
