//! Residue fields O_K / P for P = (p, g(theta)) with g an irreducible factor of the
//! defining polynomial mod p.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::field::{FieldElem, NumberField};
use super::poly::{self, FpPoly};
use super::AlgebraError;

/// Element of F_q, stored as the base-p digit encoding of a polynomial of degree < d.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub u32);

const MAX_ORDER: u64 = 1 << 22;

#[derive(Debug)]
pub struct ResidueField {
    field: Arc<NumberField>,
    p: u64,
    factor: FpPoly,
    degree: usize,
    order: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// All monic irreducible factors of the defining polynomial modulo `p`, with multiplicities.
pub fn prime_factors_mod(field: &NumberField, p: u64) -> Result<Vec<(Vec<u64>, usize)>, AlgebraError> {
    if !poly::is_prime(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    Ok(poly::fp_factor(&poly::fp_from_int(field.modulus(), p), p))
}

impl ResidueField {
    /// The residue field for the prime ideal (p, factor(theta)); `factor` is given
    /// constant term first and defaults to the first factor in sorted order.
    pub fn new(field: &Arc<NumberField>, p: u64, factor: Option<Vec<u64>>) -> Result<Arc<ResidueField>, AlgebraError> {
        let factors = prime_factors_mod(field, p)?;
        let g = match factor {
            Some(mut g) => {
                g.iter_mut().for_each(|c| *c %= p);
                poly::fp_trim(&mut g);
                let g = poly::fp_monic(&g, p);
                if !factors.iter().any(|(h, _)| *h == g) {
                    return Err(AlgebraError::BadFactor(format!("{g:?} is not an irreducible factor mod {p}")));
                }
                g
            }
            None => factors[0].0.clone(),
        };
        let degree = g.len() - 1;
        let order = p.checked_pow(degree as u32).filter(|&q| q <= MAX_ORDER).ok_or_else(|| {
            AlgebraError::BadFactor(format!("residue field of order {p}^{degree} is too large"))
        })?;
        let mut rf = ResidueField { field: field.clone(), p, factor: g, degree, order, exp: Vec::new(), log: Vec::new() };
        rf.build_tables();
        Ok(Arc::new(rf))
    }

    fn build_tables(&mut self) {
        let q = self.order;
        let mut gen = 1u64;
        'search: while gen < q {
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut log = vec![u32::MAX; q as usize];
            let mut cur = 1u32;
            for k in 0..q - 1 {
                if log[cur as usize] != u32::MAX {
                    gen += 1;
                    continue 'search;
                }
                log[cur as usize] = k as u32;
                exp.push(cur);
                cur = self.mul_slow(Fq(cur), Fq(gen as u32)).0;
            }
            self.exp = exp;
            self.log = log;
            return;
        }
        unreachable!("finite fields have primitive elements");
    }

    fn decode(&self, a: Fq) -> FpPoly {
        let mut v = Vec::with_capacity(self.degree);
        let mut x = a.0 as u64;
        for _ in 0..self.degree {
            v.push(x % self.p);
            x /= self.p;
        }
        poly::fp_trim(&mut v);
        v
    }

    fn encode(&self, v: &FpPoly) -> Fq {
        let mut x = 0u64;
        for c in v.iter().rev() {
            x = x * self.p + c;
        }
        Fq(x as u32)
    }

    fn mul_slow(&self, a: Fq, b: Fq) -> Fq {
        let prod = poly::fp_mul(&self.decode(a), &self.decode(b), self.p);
        self.encode(&poly::fp_divrem(&prod, &self.factor, self.p).1)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn factor(&self) -> &[u64] {
        &self.factor
    }

    pub fn number_field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn zero(&self) -> Fq {
        Fq(0)
    }

    pub fn one(&self) -> Fq {
        Fq(1)
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let (mut out, mut scale) = (0u64, 1u64);
        for _ in 0..self.degree {
            out += ((x % self.p + y % self.p) % self.p) * scale;
            x /= self.p;
            y /= self.p;
            scale *= self.p;
        }
        Fq(out as u32)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        let mut x = a.0 as u64;
        let (mut out, mut scale) = (0u64, 1u64);
        for _ in 0..self.degree {
            out += ((self.p - x % self.p) % self.p) * scale;
            x /= self.p;
            scale *= self.p;
        }
        Fq(out as u32)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq(0);
        }
        let k = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % (self.order - 1);
        Fq(self.exp[k as usize])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq, AlgebraError> {
        if a.0 == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        let k = (self.order - 1 - self.log[a.0 as usize] as u64) % (self.order - 1);
        Ok(Fq(self.exp[k as usize]))
    }

    pub fn from_int(&self, n: i64) -> Fq {
        Fq((n.rem_euclid(self.p as i64)) as u32)
    }

    /// The reduction map O_K -> O_K / P. Elements with a denominator divisible by p
    /// are rejected.
    pub fn reduce(&self, a: &FieldElem) -> Result<Fq, AlgebraError> {
        if !Arc::ptr_eq(a.field(), &self.field) && a.field().name() != self.field.name() {
            return Err(AlgebraError::FieldMismatch { left: a.field().name().into(), right: self.field.name().into() });
        }
        let pb = BigInt::from(self.p);
        let mut v: FpPoly = Vec::with_capacity(a.coeffs().len());
        for q in a.coeffs() {
            let n = ((q.numer() % &pb) + &pb) % &pb;
            let d = ((q.denom() % &pb) + &pb) % &pb;
            let d = d.to_u64().unwrap();
            if d == 0 {
                return Err(AlgebraError::NotIntegralAt { p: self.p, value: a.to_string() });
            }
            v.push(n.to_u64().unwrap() * poly::mod_inv(d, self.p) % self.p);
        }
        poly::fp_trim(&mut v);
        Ok(self.encode(&poly::fp_divrem(&v, &self.factor, self.p).1))
    }
}
