//! Number fields given by a primitive element, with a fixed complex conjugation and
//! a designated complex embedding.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::approx;
use super::poly::{self, QPoly};
use super::AlgebraError;

/// Q(theta) with theta a root of a monic irreducible integer polynomial.
#[derive(Debug)]
pub struct NumberField {
    name: String,
    gen_name: String,
    modulus: Vec<BigInt>,
    degree: usize,
    reduction: Vec<Vec<BigRational>>,
    conj_image: Vec<BigRational>,
    conj_powers: Vec<Vec<BigRational>>,
    embedding: Complex64,
}

/// Construction data for [`NumberField::new`].
#[derive(Clone, Debug)]
pub struct FieldSpec {
    pub name: String,
    pub gen_name: String,
    /// Monic defining polynomial, constant term first.
    pub modulus: Vec<BigInt>,
    /// Image of the generator under complex conjugation.
    pub conjugation: Option<Vec<BigRational>>,
    /// Approximate value of the generator under the designated embedding.
    pub embedding: Option<Complex64>,
}

/// An element of a number field: coefficients on 1, theta, ..., theta^(n-1).
#[derive(Clone)]
pub struct FieldElem {
    field: Arc<NumberField>,
    c: Vec<BigRational>,
}

/// Binary operations accepted by [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl NumberField {
    pub fn new(spec: FieldSpec) -> Result<Arc<NumberField>, AlgebraError> {
        let f = spec.modulus;
        if f.len() < 2 || !f.last().unwrap().is_one() {
            return Err(AlgebraError::BadModulus(format!("{}: defining polynomial must be monic of degree >= 1", spec.name)));
        }
        let n = f.len() - 1;
        if !is_irreducible(&f) {
            return Err(AlgebraError::NotIrreducible(spec.name));
        }
        let fq = poly::q_from_int(&f);
        let mut reduction = Vec::with_capacity(n);
        // x^n = -(f_0 + ... + f_{n-1} x^{n-1})
        let mut cur: Vec<BigRational> = f[..n].iter().map(|c| BigRational::from_integer(-c)).collect();
        for _ in 0..n {
            reduction.push(cur.clone());
            let top = cur[n - 1].clone();
            let mut next = vec![BigRational::zero(); n];
            next[1..n].clone_from_slice(&cur[..n - 1]);
            for i in 0..n {
                next[i] += &top * &reduction[0][i];
            }
            cur = next;
        }
        let fl: Vec<f64> = f.iter().map(|c| c.to_f64().unwrap()).collect();
        let roots = approx::roots(&fl);
        let embedding = match spec.embedding {
            Some(z) => {
                let mut sorted = roots.clone();
                sorted.sort_by(|a, b| (a - z).norm().partial_cmp(&(b - z).norm()).unwrap());
                let best = sorted[0];
                let d0 = (best - z).norm();
                let unambiguous = sorted.get(1).is_none_or(|s| d0 < 0.5 * (s - z).norm());
                if !unambiguous || d0 > 1e-2 * (1.0 + z.norm()) {
                    return Err(AlgebraError::BadEmbedding(spec.name));
                }
                approx::polish(&fl, best)
            }
            None => roots
                .iter()
                .copied()
                .max_by(|a, b| (a.im, a.re).partial_cmp(&(b.im, b.re)).unwrap())
                .unwrap(),
        };
        let conj_image = match spec.conjugation {
            Some(mut c) => {
                poly::q_trim(&mut c);
                let (_, r) = poly::q_divrem(&c, &fq);
                let mut c = r;
                c.resize(n, BigRational::zero());
                c
            }
            None if roots.iter().all(|r| r.im.abs() < 1e-9) => {
                let mut c = vec![BigRational::zero(); n];
                if n > 1 {
                    c[1] = BigRational::one();
                } else {
                    c[0] = BigRational::from_integer(-f[0].clone());
                }
                c
            }
            None => return Err(AlgebraError::BadConjugation(format!("{}: conjugation required for a non-real field", spec.name))),
        };
        let mut field = NumberField {
            name: spec.name,
            gen_name: spec.gen_name,
            modulus: f,
            degree: n,
            reduction,
            conj_image: conj_image.clone(),
            conj_powers: Vec::new(),
            embedding,
        };
        let tmp = Arc::new(NumberField { conj_powers: Vec::new(), ..field.clone_shallow() });
        let c = FieldElem { field: tmp.clone(), c: conj_image };
        let mut powers = Vec::with_capacity(n);
        let mut acc = FieldElem::one_in(&tmp);
        for _ in 0..n {
            powers.push(acc.c.clone());
            acc = &acc * &c;
        }
        // conj must send theta to a root of f and be an involution compatible with the embedding
        if !acc_eval_modulus(&tmp, &c).is_zero() {
            return Err(AlgebraError::BadConjugation(format!("{}: image is not a root", tmp.name)));
        }
        field.conj_powers = powers;
        let field = Arc::new(field);
        let theta = FieldElem::generator_in(&field);
        if theta.conj().conj() != theta {
            return Err(AlgebraError::BadConjugation(format!("{}: not an involution", field.name)));
        }
        let img = theta.conj().embed();
        if (img - field.embedding.conj()).norm() > 1e-8 * (1.0 + img.norm()) {
            return Err(AlgebraError::BadConjugation(format!("{}: incompatible with embedding", field.name)));
        }
        Ok(field)
    }

    fn clone_shallow(&self) -> NumberField {
        NumberField {
            name: self.name.clone(),
            gen_name: self.gen_name.clone(),
            modulus: self.modulus.clone(),
            degree: self.degree,
            reduction: self.reduction.clone(),
            conj_image: self.conj_image.clone(),
            conj_powers: self.conj_powers.clone(),
            embedding: self.embedding,
        }
    }

    /// Q(zeta_n) with zeta_n embedded as exp(2 pi i / n).
    pub fn cyclotomic(n: u64) -> Arc<NumberField> {
        let modulus = poly::cyclotomic(n);
        let deg = modulus.len() - 1;
        let mut conj = vec![BigRational::zero(); n as usize];
        conj[n as usize - 1] = BigRational::one();
        if n <= 2 {
            conj = vec![BigRational::from_integer(-modulus[0].clone())];
        }
        let angle = std::f64::consts::TAU / n as f64;
        let spec = FieldSpec {
            name: format!("Q(zeta{n})"),
            gen_name: "z".into(),
            modulus,
            conjugation: Some(conj),
            embedding: Some(Complex64::from_polar(1.0, angle)),
        };
        let f = NumberField::new(spec).expect("cyclotomic polynomials are irreducible");
        debug_assert_eq!(f.degree, deg);
        f
    }

    /// The Gaussian rationals Q(i).
    pub fn gaussian() -> Arc<NumberField> {
        let spec = FieldSpec {
            name: "Q(i)".into(),
            gen_name: "i".into(),
            modulus: vec![BigInt::one(), BigInt::zero(), BigInt::one()],
            conjugation: Some(vec![rat(0), rat(-1)]),
            embedding: Some(Complex64::new(0.0, 1.0)),
        };
        NumberField::new(spec).unwrap()
    }

    pub fn rationals() -> Arc<NumberField> {
        let spec = FieldSpec {
            name: "Q".into(),
            gen_name: "x".into(),
            modulus: vec![BigInt::zero(), BigInt::one()],
            conjugation: None,
            embedding: None,
        };
        NumberField::new(spec).unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gen_name(&self) -> &str {
        &self.gen_name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    pub fn embedding(&self) -> Complex64 {
        self.embedding
    }

    fn same(&self, other: &NumberField) -> bool {
        std::ptr::eq(self, other) || (self.name == other.name && self.modulus == other.modulus && self.conj_image == other.conj_image)
    }
}

fn acc_eval_modulus(field: &Arc<NumberField>, x: &FieldElem) -> FieldElem {
    let mut acc = FieldElem::zero_in(field);
    for c in field.modulus.iter().rev() {
        acc = &(&acc * x) + &FieldElem::from_rational_in(field, BigRational::from_integer(c.clone()));
    }
    acc
}

/// Irreducibility over Q of a monic integer polynomial: degree patterns modulo small
/// primes, then an exhaustive numeric search for factors over subsets of roots, each
/// candidate confirmed by exact division.
pub fn is_irreducible(f: &[BigInt]) -> bool {
    let n = f.len() - 1;
    if n <= 1 {
        return true;
    }
    let mut possible: BTreeSet<usize> = (0..=n).collect();
    let mut used = 0;
    let mut p = 2u64;
    while used < 16 && p < 400 {
        if poly::is_prime(p) {
            let fp = poly::fp_from_int(f, p);
            if fp.len() == n + 1 {
                let fac = poly::fp_factor(&fp, p);
                if fac.iter().all(|(_, m)| *m == 1) {
                    used += 1;
                    let mut sums: BTreeSet<usize> = [0].into_iter().collect();
                    for (g, _) in &fac {
                        let d = g.len() - 1;
                        let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
                        sums.extend(next);
                    }
                    possible = possible.intersection(&sums).copied().collect();
                    if possible.len() == 2 {
                        return true;
                    }
                }
            }
        }
        p += 1;
    }
    let fl: Vec<f64> = f.iter().map(|c| c.to_f64().unwrap()).collect();
    let roots = approx::roots(&fl);
    for &d in possible.iter().filter(|&&d| d >= 1 && d <= n / 2) {
        let mut idx: Vec<usize> = (0..d).collect();
        loop {
            let mut prod = vec![Complex64::new(1.0, 0.0)];
            for &i in &idx {
                let mut next = vec![Complex64::new(0.0, 0.0); prod.len() + 1];
                for (k, c) in prod.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * roots[i];
                }
                prod = next;
            }
            let close = prod.iter().all(|c| c.im.abs() < 1e-6 * (1.0 + c.re.abs()) && (c.re - c.re.round()).abs() < 1e-6 * (1.0 + c.re.abs()));
            if close {
                let g: Vec<BigInt> = prod.iter().map(|c| BigInt::from(c.re.round() as i64)).collect();
                if poly::z_divides(f, &g) {
                    return false;
                }
            }
            // next combination
            let mut i = d;
            while i > 0 && idx[i - 1] == n - d + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..d {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    true
}

impl FieldElem {
    pub fn zero_in(field: &Arc<NumberField>) -> FieldElem {
        FieldElem { field: field.clone(), c: vec![BigRational::zero(); field.degree] }
    }

    pub fn one_in(field: &Arc<NumberField>) -> FieldElem {
        Self::from_rational_in(field, BigRational::one())
    }

    pub fn from_int_in(field: &Arc<NumberField>, n: i64) -> FieldElem {
        Self::from_rational_in(field, rat(n))
    }

    pub fn from_rational_in(field: &Arc<NumberField>, q: BigRational) -> FieldElem {
        let mut e = Self::zero_in(field);
        e.c[0] = q;
        e
    }

    pub fn generator_in(field: &Arc<NumberField>) -> FieldElem {
        let mut c = vec![BigRational::zero(); field.degree.max(2)];
        c[1] = BigRational::one();
        Self::from_coeffs(field, c)
    }

    /// Reduces an arbitrary-length coefficient vector modulo the defining polynomial.
    pub fn from_coeffs(field: &Arc<NumberField>, mut c: Vec<BigRational>) -> FieldElem {
        let n = field.degree;
        if c.len() > n {
            poly::q_trim(&mut c);
            c = poly::q_divrem(&c, &poly::q_from_int(&field.modulus)).1;
        }
        c.resize(n, BigRational::zero());
        FieldElem { field: field.clone(), c }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn zero(&self) -> FieldElem {
        Self::zero_in(&self.field)
    }

    pub fn one(&self) -> FieldElem {
        Self::one_in(&self.field)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    fn check(&self, other: &FieldElem) -> Result<(), AlgebraError> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch { left: self.field.name.clone(), right: other.field.name.clone() })
        }
    }

    pub fn try_add(&self, o: &FieldElem) -> Result<FieldElem, AlgebraError> {
        self.check(o)?;
        let c = self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect();
        Ok(FieldElem { field: self.field.clone(), c })
    }

    pub fn try_sub(&self, o: &FieldElem) -> Result<FieldElem, AlgebraError> {
        self.check(o)?;
        let c = self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect();
        Ok(FieldElem { field: self.field.clone(), c })
    }

    pub fn try_mul(&self, o: &FieldElem) -> Result<FieldElem, AlgebraError> {
        self.check(o)?;
        let n = self.field.degree;
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let high = prod.split_off(n);
        for (k, coef) in high.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (i, r) in self.field.reduction[k].iter().enumerate() {
                prod[i] += coef * r;
            }
        }
        Ok(FieldElem { field: self.field.clone(), c: prod })
    }

    pub fn inv(&self) -> Result<FieldElem, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational_in(&self.field, q.recip()));
        }
        let f = poly::q_from_int(&self.field.modulus);
        let mut a: QPoly = self.c.clone();
        poly::q_trim(&mut a);
        let inv = poly::q_inverse_mod(&a, &f).ok_or(AlgebraError::DivisionByZero)?;
        Ok(Self::from_coeffs(&self.field, inv))
    }

    pub fn try_div(&self, o: &FieldElem) -> Result<FieldElem, AlgebraError> {
        self.check(o)?;
        self.try_mul(&o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<FieldElem, AlgebraError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Image under the field's complex conjugation.
    pub fn conj(&self) -> FieldElem {
        let n = self.field.degree;
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in self.field.conj_powers[i].iter().enumerate() {
                out[j] += a * b;
            }
        }
        FieldElem { field: self.field.clone(), c: out }
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Numerical value under the designated embedding.
    pub fn embed(&self) -> Complex64 {
        let z = self.field.embedding;
        self.c
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, q| acc * z + q.to_f64().unwrap_or(f64::NAN))
    }

    /// Sign of a real element: exact zero test, then interval refinement of the
    /// designated embedding starting at 64 bits and doubling.
    pub fn sign(&self) -> Result<Ordering, AlgebraError> {
        if !self.is_real() {
            return Err(AlgebraError::NotReal(self.to_string()));
        }
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        let den = self.c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let g: Vec<BigInt> = self.c.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect();
        let mut prec = 64;
        while prec <= 1 << 14 {
            if let Some(s) = approx::sign_at_root(&g, &self.field.modulus, self.field.embedding, prec) {
                return Ok(s);
            }
            prec *= 2;
        }
        Err(AlgebraError::Undecided(self.to_string()))
    }
}

/// Spec-level binary operation with explicit field-mismatch and division errors.
pub fn field_arith(a: &FieldElem, b: &FieldElem, op: FieldOp) -> Result<FieldElem, AlgebraError> {
    match op {
        FieldOp::Add => a.try_add(b),
        FieldOp::Sub => a.try_sub(b),
        FieldOp::Mul => a.try_mul(b),
        FieldOp::Div => a.try_div(b),
    }
}

/// Sign of a real element, see [`FieldElem::sign`].
pub fn sign_of_real(a: &FieldElem) -> Result<Ordering, AlgebraError> {
    a.sign()
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.c == other.c
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                self.$f(o).expect("field arithmetic")
            }
        }
        impl std::ops::$tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                (&self).$f(&o).expect("field arithmetic")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl std::ops::Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { field: self.field.clone(), c: self.c.iter().map(|x| -x).collect() }
    }
}

impl std::ops::Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, q) in self.c.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let a = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let g = &self.field.gen_name;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "{g}")?,
                (1, false) => write!(f, "{a}*{g}")?,
                (_, true) => write!(f, "{g}^{i}")?,
                (_, false) => write!(f, "{a}*{g}^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_omega_phi() -> Arc<NumberField> {
        let spec = FieldSpec {
            name: "K".into(),
            gen_name: "t".into(),
            modulus: [4, 0, -1, 0, 1].iter().map(|&c| BigInt::from(c)).collect(),
            conjugation: Some(vec![rat(0), BigRational::new(1.into(), 2.into()), rat(0), BigRational::new((-1).into(), 2.into())]),
            embedding: Some(Complex64::new(1.118, 0.866)),
        };
        NumberField::new(spec).unwrap()
    }

    fn omega(k: &Arc<NumberField>) -> FieldElem {
        let h = BigRational::new(1.into(), 4.into());
        FieldElem::from_coeffs(k, vec![BigRational::new((-1).into(), 2.into()), h.clone(), rat(0), h])
    }

    fn phi(k: &Arc<NumberField>) -> FieldElem {
        FieldElem::from_coeffs(
            k,
            vec![BigRational::new(1.into(), 2.into()), BigRational::new(3.into(), 4.into()), rat(0), BigRational::new((-1).into(), 4.into())],
        )
    }

    #[test]
    fn omega_phi_relations() {
        let k = q_omega_phi();
        let w = omega(&k);
        let p = phi(&k);
        let one = w.one();
        assert!((&(&(&w * &w) + &w) + &one).is_zero());
        assert!((&(&(&p * &p) - &p) - &one).is_zero());
        assert_eq!(w.conj(), &w * &w);
        assert_eq!(p.conj(), p);
        let lhs = &(&w + &p) * &(&w - &p);
        let rhs = &(&(&w * &w) - &p) - &one;
        assert_eq!(lhs, rhs);
        assert!((w.embed() - Complex64::new(-0.5, 0.75f64.sqrt())).norm() < 1e-12);
        assert!((p.embed().re - 1.618033988749895).abs() < 1e-12);
    }

    #[test]
    fn inverse_and_signs() {
        let k = q_omega_phi();
        let p = phi(&k);
        let inv = p.inv().unwrap();
        assert!((&inv * &p).is_one());
        assert_eq!(p.sign().unwrap(), Ordering::Greater);
        assert_eq!((&p.one() - &p).sign().unwrap(), Ordering::Less);
        assert!(omega(&k).sign().is_err());
        assert!(matches!(p.zero().inv(), Err(AlgebraError::DivisionByZero)));
    }

    #[test]
    fn mismatch_is_error() {
        let a = FieldElem::one_in(&NumberField::gaussian());
        let b = FieldElem::one_in(&NumberField::cyclotomic(3));
        assert!(matches!(field_arith(&a, &b, FieldOp::Add), Err(AlgebraError::FieldMismatch { .. })));
    }

    #[test]
    fn cyclotomic_conjugation() {
        let k = NumberField::cyclotomic(18);
        let z = FieldElem::generator_in(&k);
        assert!((&z * &z.conj()).is_one());
        assert!(z.pow(18).unwrap().is_one());
        assert!(!z.pow(9).unwrap().is_one());
        let c = &z + &z.conj();
        assert!(c.is_real());
        assert_eq!(c.sign().unwrap(), Ordering::Greater);
    }

    #[test]
    fn irreducibility() {
        let v = |s: &[i64]| s.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        assert!(is_irreducible(&v(&[4, 0, -1, 0, 1])));
        assert!(!is_irreducible(&v(&[-1, 0, 0, 0, 1])));
        // x^4 - 10x^2 + 1 splits mod every prime but is irreducible
        assert!(is_irreducible(&v(&[1, 0, -10, 0, 1])));
        assert!(!is_irreducible(&v(&[6, -5, 1])));
        assert!(!is_irreducible(&v(&[1, 0, 1, 0, 1, 0, 1])));
        assert!(NumberField::new(FieldSpec {
            name: "bad".into(),
            gen_name: "x".into(),
            modulus: v(&[-1, 0, 1]),
            conjugation: None,
            embedding: None
        })
        .is_err());
    }
}
