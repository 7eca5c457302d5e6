//! Triangle groups `<x, y | x^p, y^q, (xy)^r>` with an exact 2x2 model in which words are
//! compared up to sign.

use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;

use crate::exactalg::{FieldElem, NumberField};
use crate::fpcore::{GroupTarget, Presentation, Word};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub e: [[FieldElem; 2]; 2],
}

impl Mat2 {
    pub fn identity(k: &Arc<NumberField>) -> Mat2 {
        let (o, z) = (FieldElem::one_in(k), FieldElem::zero_in(k));
        Mat2 { e: [[o.clone(), z.clone()], [z, o]] }
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let e = &self.e;
        Mat2 {
            e: std::array::from_fn(|i| std::array::from_fn(|j| &(&e[i][0] * &o.e[0][j]) + &(&e[i][1] * &o.e[1][j]))),
        }
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Mat2 {
        let e = &self.e;
        Mat2 { e: [[e[1][1].clone(), -&e[0][1]], [-&e[1][0], e[0][0].clone()]] }
    }

    pub fn trace(&self) -> FieldElem {
        &self.e[0][0] + &self.e[1][1]
    }

    pub fn det(&self) -> FieldElem {
        &(&self.e[0][0] * &self.e[1][1]) - &(&self.e[0][1] * &self.e[1][0])
    }

    pub fn is_plus_minus_identity(&self) -> bool {
        let e = &self.e;
        e[0][1].is_zero() && e[1][0].is_zero() && e[0][0] == e[1][1] && (&e[0][0] * &e[0][0]).is_one()
    }
}

impl std::fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}; {}, {}]", self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1])
    }
}

/// PSL(2) over a number field.
#[derive(Clone, Debug)]
pub struct Psl2 {
    pub field: Arc<NumberField>,
}

impl GroupTarget for Psl2 {
    type Elem = Mat2;
    fn identity(&self) -> Mat2 {
        Mat2::identity(&self.field)
    }
    fn mul(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        a.mul(b)
    }
    fn inverse(&self, a: &Mat2) -> Mat2 {
        a.inverse()
    }
    fn is_identity(&self, a: &Mat2) -> bool {
        a.is_plus_minus_identity()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Spherical,
    Euclidean,
    Hyperbolic,
}

#[derive(Clone, Debug)]
pub struct TriangleGroup {
    pub orders: (u32, u32, u32),
    pub presentation: Presentation,
    pub geometry: Geometry,
    /// Exact images of x and y, present for non-spherical triples.
    pub model: Option<(Psl2, [Mat2; 2])>,
}

impl TriangleGroup {
    pub fn eval(&self, w: &Word) -> Option<Mat2> {
        let (t, g) = self.model.as_ref()?;
        Some(crate::fpcore::evaluate(t, g, w))
    }

    pub fn is_identity(&self, w: &Word) -> Option<bool> {
        self.eval(w).map(|m| m.is_plus_minus_identity())
    }
}

pub fn geometry(p: u32, q: u32, r: u32) -> Geometry {
    let s = BigRational::new(1.into(), p.into()) + BigRational::new(1.into(), q.into()) + BigRational::new(1.into(), r.into());
    let one = BigRational::from_integer(1.into());
    match s.cmp(&one) {
        std::cmp::Ordering::Greater => Geometry::Spherical,
        std::cmp::Ordering::Equal => Geometry::Euclidean,
        std::cmp::Ordering::Less => Geometry::Hyperbolic,
    }
}

/// The triangle group with `x` of order p, `y` of order q and `xy` of order r. `x` is
/// diagonal with eigenvalues `exp(+-i pi/p)`. In the hyperbolic case `y`, `xy` have
/// traces `2cos(pi/q)` and `-2cos(pi/r)`; in the Euclidean case `y` is upper triangular
/// and the group acts on C by rotations.
pub fn triangle_target(p: u32, q: u32, r: u32) -> TriangleGroup {
    let presentation =
        Presentation::parse(2, &format!("1^{p}, 2^{q}, (12)^{r}")).expect("triangle relators are well formed");
    let geometry = geometry(p, q, r);
    let model = (geometry != Geometry::Spherical).then(|| {
        let n = [2 * p, 2 * q, 2 * r].into_iter().fold(1u64, |a, b| a.lcm(&(b as u64)));
        let k = NumberField::cyclotomic(n);
        let z = FieldElem::generator_in(&k);
        let root = |m: u32| z.pow((n / (2 * m as u64)) as i64).expect("root of unity");
        let twocos = |m: u32| {
            let u = root(m);
            &u + &u.inv().expect("unit")
        };
        let zp = root(p);
        let zpi = zp.inv().expect("unit");
        let zero = zp.zero();
        let x = Mat2 { e: [[zp.clone(), zero.clone()], [zero.clone(), zpi.clone()]] };
        if geometry == Geometry::Euclidean {
            let zq = root(q);
            let y = Mat2 { e: [[zq.clone(), zq.one()], [zero, zq.inv().expect("unit")]] };
            return (Psl2 { field: k }, [x, y]);
        }
        let (cq, cr) = (twocos(q), twocos(r));
        // y = [[a, 1], [a d - 1, d]] with a + d = cq and zp a + zp^-1 d = -cr
        let a = &(&(-&cr) - &(&zpi * &cq)) / &(&zp - &zpi);
        let d = &cq - &a;
        let c = &(&a * &d) - &a.one();
        let y = Mat2 { e: [[a.clone(), a.one()], [c, d]] };
        (Psl2 { field: k }, [x, y])
    });
    TriangleGroup { orders: (p, q, r), presentation, geometry, model }
}

/// Smallest index of a torsion-free subgroup of the (p,q,r) triangle group, for
/// non-spherical triples.
pub fn torsion_free_index(p: u32, q: u32, r: u32) -> Option<u64> {
    let l = [p, q, r].into_iter().fold(1u64, |a, b| a.lcm(&(b as u64)));
    match geometry(p, q, r) {
        Geometry::Spherical => None,
        Geometry::Euclidean => Some(l),
        Geometry::Hyperbolic => {
            let chi = BigRational::new(1.into(), p.into()) + BigRational::new(1.into(), q.into())
                + BigRational::new(1.into(), r.into())
                - BigRational::from_integer(1.into());
            let lchi = chi * BigRational::from_integer(l.into());
            let even = lchi.is_integer() && lchi.to_integer().is_even();
            Some(if even { l } else { 2 * l })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relators_die_and_powers_do_not() {
        let t = triangle_target(7, 3, 2);
        assert_eq!(t.geometry, Geometry::Hyperbolic);
        for r in t.presentation.relators() {
            assert_eq!(t.is_identity(r), Some(true), "{r}");
        }
        for k in 1..7 {
            assert_eq!(t.is_identity(&Word::gen(1).pow(k)), Some(false));
        }
        assert_eq!(t.is_identity(&Word::parse("12", 2).unwrap()), Some(false));
        assert!(triangle_target(2, 3, 5).model.is_none());
        for (p, q, r) in [(3, 3, 3), (2, 4, 4), (2, 3, 6)] {
            let t = triangle_target(p, q, r);
            assert!(t.presentation.relators().iter().all(|w| t.is_identity(w) == Some(true)));
            assert_eq!(t.is_identity(&Word::parse("12", 2).unwrap().pow(r as i64 - 1)), Some(false));
        }
        // in (3,3,3) the translations x y^-1 and y^-1 x commute
        let t = triangle_target(3, 3, 3);
        let u = Word::parse("12'", 2).unwrap();
        let v = Word::parse("2'1", 2).unwrap();
        assert_eq!(t.is_identity(&Word::commutator(&u, &v)), Some(true));
        assert_eq!(t.is_identity(&u), Some(false));
        assert_eq!(triangle_target(2, 3, 5).geometry, Geometry::Spherical);
    }

    #[test]
    fn torsion_free_indices() {
        let got: Vec<u64> = [7, 8, 9, 10, 12, 18].iter().map(|&p| torsion_free_index(2, 3, p).unwrap()).collect();
        assert_eq!(got, vec![84, 48, 36, 30, 24, 18]);
        assert_eq!(torsion_free_index(3, 3, 3), Some(3));
        assert_eq!(torsion_free_index(5, 5, 5), Some(5));
        assert_eq!(torsion_free_index(2, 3, 5), None);
    }
}
