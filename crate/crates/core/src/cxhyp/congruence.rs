use std::collections::HashMap;

use super::matrix::Mat3;
use super::CxError;
use crate::exactalg::{Fq, ResidueField};
use crate::permgrp::{Perm, PermGroup};

const MAX_POINTS: u64 = 4_000_000;

/// Image of a matrix group under reduction modulo a prime ideal, acting on the points of
/// the projective plane over the residue field.
#[derive(Clone, Debug)]
pub struct CongruenceImage {
    pub group: PermGroup,
    /// Permutation induced by each input matrix.
    pub images: Vec<Perm>,
    pub field_order: u64,
}

impl CongruenceImage {
    pub fn degree(&self) -> usize {
        self.group.degree()
    }
}

type Point = [Fq; 3];

fn normalize(rf: &ResidueField, v: Point) -> Option<Point> {
    let lead = v.iter().find(|x| **x != rf.zero())?;
    let inv = rf.inv(*lead).ok()?;
    Some(v.map(|x| rf.mul(x, inv)))
}

/// Points of P^2(F_q), each with first nonzero coordinate 1.
pub fn projective_points(rf: &ResidueField) -> Vec<Point> {
    let q = rf.order() as u32;
    let (zero, one) = (rf.zero(), rf.one());
    let mut pts = Vec::with_capacity((q * q + q + 1) as usize);
    for a in 0..q {
        for b in 0..q {
            pts.push([one, Fq(a), Fq(b)]);
        }
    }
    for a in 0..q {
        pts.push([zero, one, Fq(a)]);
    }
    pts.push([zero, zero, one]);
    pts
}

/// Reduces a matrix entrywise.
pub fn reduce_matrix(m: &Mat3, rf: &ResidueField) -> Result<[[Fq; 3]; 3], CxError> {
    let mut out = [[rf.zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = rf.reduce(m.get(i, j))?;
        }
    }
    Ok(out)
}

/// The permutation group induced on projective points by the reductions of `gens`.
/// Points are row vectors acted on from the right, so products of matrices map to
/// products of permutations in the same order.
pub fn congruence_image(gens: &[Mat3], rf: &ResidueField) -> Result<CongruenceImage, CxError> {
    let q = rf.order();
    let n = q * q + q + 1;
    if n > MAX_POINTS {
        return Err(CxError::TooLarge { points: n });
    }
    let pts = projective_points(rf);
    let key = |p: &Point| (p[0].0 as u64 * q + p[1].0 as u64) * q + p[2].0 as u64;
    let index: HashMap<u64, u32> = pts.iter().enumerate().map(|(i, p)| (key(p), i as u32)).collect();
    let mut images = Vec::with_capacity(gens.len());
    for (g, m) in gens.iter().enumerate() {
        let a = reduce_matrix(m, rf)?;
        let mut img = Vec::with_capacity(pts.len());
        for p in &pts {
            let r: Point = std::array::from_fn(|j| {
                let s = rf.add(rf.mul(p[0], a[0][j]), rf.mul(p[1], a[1][j]));
                rf.add(s, rf.mul(p[2], a[2][j]))
            });
            let r = normalize(rf, r).ok_or(CxError::Singular { generator: g + 1 })?;
            img.push(index[&key(&r)]);
        }
        images.push(Perm::from_images(img).map_err(|_| CxError::Singular { generator: g + 1 })?);
    }
    let group = PermGroup::new(pts.len(), images.clone())?;
    Ok(CongruenceImage { group, images, field_order: q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{FieldElem, NumberField};

    #[test]
    fn gl3_over_f2() {
        let k = NumberField::rationals();
        let rf = ResidueField::new(&k, 2, None).unwrap();
        let c = |x: i64| FieldElem::from_int_in(&k, x);
        let e = |i: usize, j: usize| {
            let mut id = Mat3::identity(&k).rows().clone();
            id[i][j] = c(1);
            Mat3::from_rows(id)
        };
        let img = congruence_image(&[e(0, 1), e(1, 2), e(2, 0)], &rf).unwrap();
        assert_eq!(img.degree(), 7);
        assert_eq!(img.group.order(), 168);
        let triv = congruence_image(&[Mat3::identity(&k)], &rf).unwrap();
        assert_eq!(triv.group.order(), 1);
        let half = Mat3::scalar(&FieldElem::from_rational_in(&k, num_rational::BigRational::new(1.into(), 2.into())));
        assert!(congruence_image(&[half], &rf).is_err());
    }
}
