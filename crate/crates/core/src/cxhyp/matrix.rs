use std::fmt;
use std::sync::Arc;

use crate::exactalg::{AlgebraError, FieldElem, NumberField};

/// Column vector of length 3.
pub type Vec3 = [FieldElem; 3];

/// A 3x3 matrix over a number field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat3 {
    e: [[FieldElem; 3]; 3],
}

impl Mat3 {
    pub fn from_rows(e: [[FieldElem; 3]; 3]) -> Mat3 {
        Mat3 { e }
    }

    /// Builds a matrix from nine entries in row-major order.
    pub fn from_vec(v: Vec<FieldElem>) -> Result<Mat3, AlgebraError> {
        if v.len() != 9 {
            return Err(AlgebraError::Parse(format!("expected 9 matrix entries, got {}", v.len())));
        }
        let f = v[0].field().clone();
        let mut it = v.into_iter();
        let mut row = || -> Result<[FieldElem; 3], AlgebraError> {
            let r = [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()];
            for x in &r {
                if x.field().name() != f.name() {
                    return Err(AlgebraError::FieldMismatch { left: x.field().name().into(), right: f.name().into() });
                }
            }
            Ok(r)
        };
        Ok(Mat3 { e: [row()?, row()?, row()?] })
    }

    pub fn identity(field: &Arc<NumberField>) -> Mat3 {
        Mat3::scalar(&FieldElem::one_in(field))
    }

    pub fn scalar(x: &FieldElem) -> Mat3 {
        let z = x.zero();
        Mat3 {
            e: [[x.clone(), z.clone(), z.clone()], [z.clone(), x.clone(), z.clone()], [z.clone(), z, x.clone()]],
        }
    }

    pub fn diag(d: [FieldElem; 3]) -> Mat3 {
        let z = d[0].zero();
        let [a, b, c] = d;
        Mat3 { e: [[a, z.clone(), z.clone()], [z.clone(), b, z.clone()], [z.clone(), z, c]] }
    }

    /// Matrix with the given vectors as columns.
    pub fn from_columns(c: [&Vec3; 3]) -> Mat3 {
        Mat3 { e: std::array::from_fn(|i| std::array::from_fn(|j| c[j][i].clone())) }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.e[0][0].field()
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.e[i][j]
    }

    pub fn rows(&self) -> &[[FieldElem; 3]; 3] {
        &self.e
    }

    pub fn column(&self, j: usize) -> Vec3 {
        std::array::from_fn(|i| self.e[i][j].clone())
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        Mat3 {
            e: std::array::from_fn(|i| {
                std::array::from_fn(|j| &(&(&self.e[i][0] * &o.e[0][j]) + &(&self.e[i][1] * &o.e[1][j])) + &(&self.e[i][2] * &o.e[2][j]))
            }),
        }
    }

    pub fn add(&self, o: &Mat3) -> Mat3 {
        Mat3 { e: std::array::from_fn(|i| std::array::from_fn(|j| &self.e[i][j] + &o.e[i][j])) }
    }

    pub fn sub(&self, o: &Mat3) -> Mat3 {
        Mat3 { e: std::array::from_fn(|i| std::array::from_fn(|j| &self.e[i][j] - &o.e[i][j])) }
    }

    pub fn scale(&self, x: &FieldElem) -> Mat3 {
        Mat3 { e: std::array::from_fn(|i| std::array::from_fn(|j| &self.e[i][j] * x)) }
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        std::array::from_fn(|i| &(&(&self.e[i][0] * &v[0]) + &(&self.e[i][1] * &v[1])) + &(&self.e[i][2] * &v[2]))
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3 { e: std::array::from_fn(|i| std::array::from_fn(|j| self.e[j][i].clone())) }
    }

    /// Conjugate transpose.
    pub fn star(&self) -> Mat3 {
        Mat3 { e: std::array::from_fn(|i| std::array::from_fn(|j| self.e[j][i].conj())) }
    }

    pub fn trace(&self) -> FieldElem {
        &(&self.e[0][0] + &self.e[1][1]) + &self.e[2][2]
    }

    fn minor(&self, i: usize, j: usize) -> FieldElem {
        let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
        let c: Vec<usize> = (0..3).filter(|&k| k != j).collect();
        &(&self.e[r[0]][c[0]] * &self.e[r[1]][c[1]]) - &(&self.e[r[0]][c[1]] * &self.e[r[1]][c[0]])
    }

    pub fn det(&self) -> FieldElem {
        let a = &self.e[0][0] * &self.minor(0, 0);
        let b = &self.e[0][1] * &self.minor(0, 1);
        let c = &self.e[0][2] * &self.minor(0, 2);
        &(&a - &b) + &c
    }

    pub fn adjugate(&self) -> Mat3 {
        Mat3 {
            e: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    let m = self.minor(j, i);
                    if (i + j) % 2 == 0 {
                        m
                    } else {
                        -m
                    }
                })
            }),
        }
    }

    pub fn inverse(&self) -> Result<Mat3, AlgebraError> {
        let d = self.det().inv()?;
        Ok(self.adjugate().scale(&d))
    }

    pub fn pow(&self, e: i64) -> Result<Mat3, AlgebraError> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Mat3::identity(self.field());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(|x| x.is_zero())
    }

    pub fn is_scalar(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| if i == j { self.e[i][i] == self.e[0][0] } else { self.e[i][j].is_zero() }))
    }

    /// Rescaled so that the first nonzero entry in row-major order is 1.
    pub fn normalized(&self) -> Mat3 {
        match self.e.iter().flatten().find(|x| !x.is_zero()) {
            Some(p) => self.scale(&p.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Equality up to a nonzero scalar.
    pub fn eq_projective(&self, o: &Mat3) -> bool {
        !self.is_zero() && !o.is_zero() && self.normalized() == o.normalized()
    }

    /// Whether the matrix is a nonzero scalar.
    pub fn is_projective_identity(&self) -> bool {
        self.is_scalar() && !self.e[0][0].is_zero()
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.e.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}, {}, {}]", r[0], r[1], r[2])?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Hermitian product of vectors, `<v, w> = w* H v`.
pub fn hermitian_product(h: &Mat3, v: &Vec3, w: &Vec3) -> FieldElem {
    let hv = h.apply(v);
    &(&(&w[0].conj() * &hv[0]) + &(&w[1].conj() * &hv[1])) + &(&w[2].conj() * &hv[2])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(k: &Arc<NumberField>, rows: [[i64; 3]; 3]) -> Mat3 {
        Mat3::from_rows(rows.map(|r| r.map(|x| FieldElem::from_int_in(k, x))))
    }

    #[test]
    fn inverse_and_powers() {
        let k = NumberField::gaussian();
        let a = m(&k, [[2, 1, 0], [0, 1, 3], [1, 0, 1]]);
        let id = Mat3::identity(&k);
        assert_eq!(a.mul(&a.inverse().unwrap()), id);
        assert_eq!(a.pow(3).unwrap(), a.mul(&a).mul(&a));
        assert_eq!(a.pow(-2).unwrap().mul(&a.pow(2).unwrap()), id);
        assert_eq!(a.det(), FieldElem::from_int_in(&k, 5));
        assert!(a.scale(&FieldElem::from_int_in(&k, -3)).eq_projective(&a));
        assert!(!a.eq_projective(&id));
        assert!(id.scale(&FieldElem::generator_in(&k)).is_projective_identity());
    }
}
