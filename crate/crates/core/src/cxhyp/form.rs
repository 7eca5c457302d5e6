use std::cmp::Ordering;

use super::matrix::{hermitian_product, Mat3, Vec3};
use super::CxError;
use crate::exactalg::FieldElem;

/// A Hermitian form of signature (2,1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    h: Mat3,
}

impl HermitianForm {
    pub fn new(h: Mat3) -> Result<HermitianForm, CxError> {
        if h.star() != h {
            return Err(CxError::NotHermitian);
        }
        let sig = signature(&h)?;
        if sig != (2, 1, 0) {
            return Err(CxError::Signature { pos: sig.0, neg: sig.1, zero: sig.2 });
        }
        Ok(HermitianForm { h })
    }

    /// The antidiagonal form with ones on the antidiagonal and on the centre.
    pub fn standard_antidiagonal(field: &std::sync::Arc<crate::exactalg::NumberField>) -> HermitianForm {
        let o = FieldElem::one_in(field);
        let z = o.zero();
        let h = Mat3::from_rows([[z.clone(), z.clone(), o.clone()], [z.clone(), o.clone(), z.clone()], [o, z.clone(), z]]);
        HermitianForm { h }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.h
    }

    pub fn product(&self, v: &Vec3, w: &Vec3) -> FieldElem {
        hermitian_product(&self.h, v, w)
    }

    /// Sign of `<v, v>`.
    pub fn norm_sign(&self, v: &Vec3) -> Result<Ordering, CxError> {
        Ok(self.product(v, v).sign()?)
    }

    /// The scalar `l` with `A* H A = l H`, if any.
    pub fn multiplier(&self, a: &Mat3) -> Option<FieldElem> {
        let m = a.star().mul(&self.h).mul(a);
        let (i, j) = (0..9).map(|k| (k / 3, k % 3)).find(|&(i, j)| !self.h.get(i, j).is_zero())?;
        let l = m.get(i, j) / self.h.get(i, j);
        (self.h.scale(&l) == m).then_some(l)
    }
}

/// Whether `A* H A = H` exactly.
pub fn verify_unitary(a: &Mat3, h: &HermitianForm) -> bool {
    a.star().mul(&h.h).mul(a) == h.h
}

/// Counts (positive, negative, zero) of a Hermitian matrix: leading principal minors when
/// none vanishes, otherwise an exact orthogonal diagonalization.
pub fn signature(h: &Mat3) -> Result<(usize, usize, usize), CxError> {
    let d1 = h.get(0, 0).clone();
    let d2 = &(h.get(0, 0) * h.get(1, 1)) - &(h.get(0, 1) * h.get(1, 0));
    let d3 = h.det();
    if !d1.is_zero() && !d2.is_zero() && !d3.is_zero() {
        let s = [FieldElem::one_in(h.field()), d1, d2, d3].map(|x| x.sign());
        let s: Vec<Ordering> = s.into_iter().collect::<Result<_, _>>()?;
        let neg = s.windows(2).filter(|w| w[0] != w[1]).count();
        return Ok((3 - neg, neg, 0));
    }
    diagonal_signature(h)
}

fn diagonal_signature(h: &Mat3) -> Result<(usize, usize, usize), CxError> {
    let f = h.field().clone();
    let unit = |i: usize| -> Vec3 { std::array::from_fn(|k| if k == i { FieldElem::one_in(&f) } else { FieldElem::zero_in(&f) }) };
    let mut basis: Vec<Vec3> = (0..3).map(unit).collect();
    let (mut pos, mut neg) = (0, 0);
    loop {
        let pivot = anisotropic(h, &basis);
        let Some(x) = pivot else { break };
        let n = hermitian_product(h, &x, &x);
        match n.sign()? {
            Ordering::Greater => pos += 1,
            _ => neg += 1,
        }
        let rest: Vec<Vec3> = basis
            .iter()
            .map(|y| {
                let c = &hermitian_product(h, y, &x) / &n;
                std::array::from_fn(|k| &y[k] - &(&c * &x[k]))
            })
            .filter(|y: &Vec3| y.iter().any(|c| !c.is_zero()))
            .collect();
        basis = independent(rest);
    }
    Ok((pos, neg, 3 - pos - neg))
}

// A vector in the span of `basis` with nonzero norm, if the restricted form is nonzero.
fn anisotropic(h: &Mat3, basis: &[Vec3]) -> Option<Vec3> {
    for b in basis {
        if !hermitian_product(h, b, b).is_zero() {
            return Some(b.clone());
        }
    }
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            let hab = hermitian_product(h, a, b);
            if hab.is_zero() {
                continue;
            }
            for t in [hab.one(), hab.conj(), hab.clone()] {
                let x: Vec3 = std::array::from_fn(|k| &a[k] + &(&t * &b[k]));
                if !hermitian_product(h, &x, &x).is_zero() {
                    return Some(x);
                }
            }
        }
    }
    None
}

// Drops vectors dependent on earlier ones.
fn independent(vs: Vec<Vec3>) -> Vec<Vec3> {
    let mut rows: Vec<Vec3> = Vec::new();
    let mut out = Vec::new();
    for v in vs {
        let mut r = v.clone();
        for b in &rows {
            let p = b.iter().position(|x| !x.is_zero()).unwrap();
            if !r[p].is_zero() {
                let c = &r[p] / &b[p];
                r = std::array::from_fn(|k| &r[k] - &(&c * &b[k]));
            }
        }
        if r.iter().any(|x| !x.is_zero()) {
            rows.push(r);
            out.push(v);
        }
    }
    out
}

/// The complex reflection with multiplier `zeta` about the polar vector `v0`.
pub fn build_reflection(v0: &Vec3, zeta: &FieldElem, h: &HermitianForm) -> Result<Mat3, CxError> {
    if !(zeta * &zeta.conj()).is_one() {
        return Err(CxError::NotUnitModulus);
    }
    let n = h.product(v0, v0);
    if n.is_zero() {
        return Err(CxError::NullVector);
    }
    let c = &(zeta - &zeta.one()) / &n;
    // row vector v0* H
    let hs = h.h.star();
    let row = hs.apply(v0).map(|x| x.conj());
    let outer = Mat3::from_rows(std::array::from_fn(|i| std::array::from_fn(|j| &(&c * &v0[i]) * &row[j])));
    Ok(Mat3::identity(zeta.field()).add(&outer))
}

/// Hyperbolic distance between the points spanned by two negative vectors.
pub fn point_distance(v: &Vec3, w: &Vec3, h: &HermitianForm) -> Result<f64, CxError> {
    let vv = h.product(v, v);
    let ww = h.product(w, w);
    for n in [&vv, &ww] {
        if n.sign()? != Ordering::Less {
            return Err(CxError::NotNegative);
        }
    }
    let vw = h.product(v, w);
    let r = &(&vw * &vw.conj()) / &(&vv * &ww);
    let one = r.one();
    if r == one {
        return Ok(0.0);
    }
    let x = r.embed().re.max(1.0).sqrt();
    Ok(2.0 * x.acosh())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::NumberField;

    fn int_rows(rows: [[i64; 3]; 3]) -> Mat3 {
        let k = NumberField::gaussian();
        Mat3::from_rows(rows.map(|r| r.map(|x| FieldElem::from_int_in(&k, x))))
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&int_rows([[1, 0, 0], [0, 1, 0], [0, 0, -1]])).unwrap(), (2, 1, 0));
        assert_eq!(signature(&int_rows([[0, 0, 1], [0, 1, 0], [1, 0, 0]])).unwrap(), (2, 1, 0));
        assert_eq!(signature(&int_rows([[0, 1, 0], [1, 0, 0], [0, 0, 0]])).unwrap(), (1, 1, 1));
        assert_eq!(signature(&int_rows([[-1, 0, 0], [0, -2, 0], [0, 0, 3]])).unwrap(), (1, 2, 0));
        assert!(HermitianForm::new(int_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])).is_err());
    }

    #[test]
    fn reflection_in_standard_form() {
        let k = NumberField::gaussian();
        let h = HermitianForm::standard_antidiagonal(&k);
        let o = FieldElem::one_in(&k);
        let z = o.zero();
        let v0 = [z.clone(), o.clone(), z.clone()];
        let r = build_reflection(&v0, &-o.clone(), &h).unwrap();
        assert_eq!(r, Mat3::diag([o.clone(), -o.clone(), o.clone()]));
        assert!(verify_unitary(&r, &h));
        let null = [o.clone(), z.clone(), z.clone()];
        assert!(matches!(build_reflection(&null, &o, &h), Err(CxError::NullVector)));
        assert_eq!(build_reflection(&v0, &o, &h).unwrap(), Mat3::identity(&k));
    }

    #[test]
    fn distance_is_scale_invariant() {
        let k = NumberField::gaussian();
        let h = HermitianForm::standard_antidiagonal(&k);
        let c = |x: i64| FieldElem::from_int_in(&k, x);
        let v = [c(1), c(0), c(-1)];
        let w = [c(1), c(1), c(-3)];
        assert_eq!(point_distance(&v, &v, &h).unwrap(), 0.0);
        let d = point_distance(&v, &w, &h).unwrap();
        let i = FieldElem::generator_in(&k);
        let w2 = w.clone().map(|x| &x * &(&i + &c(2)));
        assert!((point_distance(&v, &w2, &h).unwrap() - d).abs() < 1e-12);
        assert!(d > 0.0);
        assert!(point_distance(&[c(1), c(0), c(0)], &w, &h).is_err());
    }
}
