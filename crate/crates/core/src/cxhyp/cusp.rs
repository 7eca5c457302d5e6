use serde::Serialize;

use super::form::HermitianForm;
use super::heisenberg::integral_ratio;
use super::matrix::{Mat3, Vec3};
use super::CxError;
use crate::exactalg::FieldElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CuspElementKind {
    Unipotent,
    /// Nontrivial rotation part: screw-parabolic or elliptic fixing the ideal point.
    Rotational,
}

/// A cusp generator in a basis where it is upper triangular with top-left entry 1.
#[derive(Clone, Debug)]
pub struct CuspGenerator {
    pub triangular: Mat3,
    /// Euclidean part `w -> zeta w + z` on the boundary complex line.
    pub zeta: FieldElem,
    pub z: FieldElem,
    pub kind: CuspElementKind,
}

#[derive(Clone, Debug)]
pub struct CuspAnalysis {
    pub fixed_vector: Vec3,
    pub q: Mat3,
    /// `Q* H Q`.
    pub form_in_basis: Mat3,
    pub generators: Vec<CuspGenerator>,
    pub neat: bool,
}

impl CuspAnalysis {
    pub fn report(&self) -> String {
        let mut out = format!("fixed null vector: ({}, {}, {})\n", self.fixed_vector[0], self.fixed_vector[1], self.fixed_vector[2]);
        for (i, g) in self.generators.iter().enumerate() {
            out.push_str(&format!("generator {}: {:?}, w -> ({}) w + ({})\n{}\n", i + 1, g.kind, g.zeta, g.z, g.triangular));
        }
        out.push_str(&format!("neat: {}\n", self.neat));
        out
    }
}

fn projectively_fixes(a: &Mat3, v: &Vec3) -> bool {
    let w = a.apply(v);
    // w parallel to v
    (0..3).all(|i| (0..3).all(|j| (&w[i] * &v[j]) == (&w[j] * &v[i])))
}

fn is_zero_vec(v: &Vec3) -> bool {
    v.iter().all(|x| x.is_zero())
}

// The fixed null line of a non-scalar element that is unipotent up to a scalar.
fn parabolic_fixed_vector(u: &Mat3) -> Option<Vec3> {
    if u.is_scalar() {
        return None;
    }
    let f = u.field();
    let mu = &u.trace() / &FieldElem::from_int_in(f, 3);
    let n = u.sub(&Mat3::scalar(&mu));
    let n2 = n.mul(&n);
    if !n2.mul(&n).is_zero() {
        return None;
    }
    let m = if n2.is_zero() { n } else { n2 };
    (0..3).map(|j| m.column(j)).find(|c| !is_zero_vec(c))
}

fn candidates(gens: &[Mat3]) -> Vec<Mat3> {
    let mut out: Vec<Mat3> = gens.to_vec();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            out.push(a.mul(b));
            if let (Ok(ai), Ok(bi)) = (a.inverse(), b.inverse()) {
                out.push(a.mul(b).mul(&ai).mul(&bi));
            }
        }
    }
    let base = out.clone();
    for a in base {
        let mut p = a.clone();
        for _ in 2..=12 {
            p = p.mul(&a).normalized();
            out.push(p.clone());
        }
    }
    out
}

fn common_null_vector(gens: &[Mat3], h: &HermitianForm) -> Result<Vec3, CxError> {
    for c in candidates(gens) {
        if let Some(v) = parabolic_fixed_vector(&c) {
            if h.product(&v, &v).is_zero() && gens.iter().all(|g| projectively_fixes(g, &v)) {
                return Ok(v);
            }
        }
    }
    Err(CxError::NotCuspGroup("no parabolic element with a common fixed null line".into()))
}

fn unit(f: &std::sync::Arc<crate::exactalg::NumberField>, i: usize) -> Vec3 {
    std::array::from_fn(|k| if k == i { FieldElem::one_in(f) } else { FieldElem::zero_in(f) })
}

// Columns (v, w, u) with w orthogonal to v and u, and u null.
fn adapted_basis(v: &Vec3, h: &HermitianForm) -> Mat3 {
    let f = v[0].field().clone();
    let w = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .filter(|(i, j)| i < j)
        .map(|(i, j)| {
            // e_i <e_j, v> - e_j <e_i, v> is orthogonal to v
            let (ei, ej) = (unit(&f, i), unit(&f, j));
            let (a, b) = (h.product(&ej, v), h.product(&ei, v));
            let x: Vec3 = std::array::from_fn(|k| &(&ei[k] * &a) - &(&ej[k] * &b));
            x
        })
        .find(|x| !is_zero_vec(x) && !h.product(x, x).is_zero())
        .expect("the orthogonal complement of a null vector contains a positive vector");
    let u0 = (0..3).map(|i| unit(&f, i)).find(|e| !h.product(e, v).is_zero()).expect("nondegenerate form");
    let ww = h.product(&w, &w);
    let c = &h.product(&u0, &w) / &ww;
    let u1: Vec3 = std::array::from_fn(|k| &u0[k] - &(&c * &w[k]));
    let half = FieldElem::from_rational_in(&f, num_rational::BigRational::new(1.into(), 2.into()));
    let d = -(&(&h.product(&u1, &u1) / &h.product(&v.clone(), &u1)) * &half);
    let u: Vec3 = std::array::from_fn(|k| &u1[k] + &(&d * &v[k]));
    Mat3::from_columns([v, &w, &u])
}

/// Triangularizes the stabilizer of an ideal point; `q` overrides the automatic basis.
pub fn cusp_analyze(gens: &[Mat3], h: &HermitianForm, q: Option<&Mat3>) -> Result<CuspAnalysis, CxError> {
    if gens.is_empty() {
        return Err(CxError::NotCuspGroup("no generators".into()));
    }
    let q = match q {
        Some(q) => q.clone(),
        None => adapted_basis(&common_null_vector(gens, h)?, h),
    };
    let qi = q.inverse()?;
    let fixed_vector = q.column(0);
    if !h.product(&fixed_vector, &fixed_vector).is_zero() {
        return Err(CxError::NotCuspGroup("first basis vector is not null".into()));
    }
    let mut generators = Vec::with_capacity(gens.len());
    for (idx, g) in gens.iter().enumerate() {
        let t = qi.mul(g).mul(&q);
        if !(t.get(1, 0).is_zero() && t.get(2, 0).is_zero() && t.get(2, 1).is_zero()) {
            return Err(CxError::NotCuspGroup(format!("generator {} does not fix the cusp", idx + 1)));
        }
        if t.get(0, 0).is_zero() {
            return Err(CxError::NotCuspGroup(format!("generator {} is singular", idx + 1)));
        }
        let t = t.scale(&t.get(0, 0).inv()?);
        if !t.get(2, 2).is_one() {
            return Err(CxError::Loxodromic { generator: idx + 1 });
        }
        let zeta = t.get(1, 1).clone();
        let z = t.get(1, 2).clone();
        let id = Mat3::identity(t.field());
        let n = t.sub(&id);
        let kind = if zeta.is_one() && n.mul(&n).mul(&n).is_zero() { CuspElementKind::Unipotent } else { CuspElementKind::Rotational };
        generators.push(CuspGenerator { triangular: t, zeta, z, kind });
    }
    let neat = generators.iter().all(|g| g.kind == CuspElementKind::Unipotent);
    let form_in_basis = q.star().mul(h.matrix()).mul(&q);
    Ok(CuspAnalysis { fixed_vector, q, form_in_basis, generators, neat })
}

/// The integer `k` with `[a, b] = c^k` for upper unitriangular (projective) matrices,
/// `c` a nontrivial central element.
pub fn commutator_power_triangular(a: &Mat3, b: &Mat3, c: &Mat3) -> Result<i64, CxError> {
    let comm = a.mul(b).mul(&a.inverse()?).mul(&b.inverse()?);
    let vertical = |m: &Mat3| -> Option<FieldElem> {
        let m = m.scale(&m.get(0, 0).inv().ok()?);
        let id = Mat3::identity(m.field());
        let n = m.sub(&id);
        let only_corner = (0..3).all(|i| (0..3).all(|j| (i, j) == (0, 2) || n.get(i, j).is_zero()));
        only_corner.then(|| n.get(0, 2).clone())
    };
    let x = vertical(&comm).ok_or(CxError::NotVertical)?;
    let y = vertical(c).filter(|y| !y.is_zero()).ok_or(CxError::NotVertical)?;
    integral_ratio(&x, &y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cxhyp::HeisenbergElement;
    use crate::exactalg::NumberField;

    fn g(re: i64, im: i64) -> FieldElem {
        let k = NumberField::gaussian();
        &FieldElem::from_int_in(&k, re) + &(&FieldElem::from_int_in(&k, im) * &FieldElem::generator_in(&k))
    }

    #[test]
    fn translations_are_neat() {
        let k = NumberField::gaussian();
        let h = HermitianForm::standard_antidiagonal(&k);
        let a = HeisenbergElement::translation(g(1, 0), g(0, 0)).unwrap().to_matrix();
        let b = HeisenbergElement::translation(g(0, 1), g(0, 0)).unwrap().to_matrix();
        let res = cusp_analyze(&[a.clone(), b.clone()], &h, None).unwrap();
        assert!(res.neat);
        for (m, gen) in [a.clone(), b.clone()].iter().zip(&res.generators) {
            let back = res.q.mul(&gen.triangular).mul(&res.q.inverse().unwrap());
            assert!(back.eq_projective(m));
        }
        let z = HeisenbergElement::translation(g(0, 0), g(0, -4)).unwrap().to_matrix();
        assert_eq!(commutator_power_triangular(&a, &b, &z).unwrap(), 1);
    }

    #[test]
    fn rotation_detected() {
        let k = NumberField::gaussian();
        let h = HermitianForm::standard_antidiagonal(&k);
        let a = HeisenbergElement::translation(g(1, 0), g(0, 0)).unwrap().to_matrix();
        let r = HeisenbergElement::screw(g(0, 0), g(0, 0), g(0, 1)).unwrap().to_matrix();
        let res = cusp_analyze(&[a, r], &h, None).unwrap();
        assert!(!res.neat);
        assert_eq!(res.generators[1].kind, CuspElementKind::Rotational);
        let one = Mat3::identity(&k);
        let sw = Mat3::from_rows([[g(0, 0), g(0, 0), g(1, 0)], [g(0, 0), g(1, 0), g(0, 0)], [g(1, 0), g(0, 0), g(0, 0)]]);
        assert!(cusp_analyze(&[one, sw], &h, None).is_err());
    }
}
