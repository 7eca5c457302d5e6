//! Dense univariate polynomials over Q and over F_p, coefficients low to high.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type QPoly = Vec<BigRational>;
pub(crate) type FpPoly = Vec<u64>;

pub(crate) fn q_trim(a: &mut QPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub(crate) fn q_from_int(a: &[BigInt]) -> QPoly {
    let mut v: QPoly = a.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    q_trim(&mut v);
    v
}

fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        out.push(x - y);
    }
    q_trim(&mut out);
    out
}

fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    q_trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn q_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut r = a.clone();
    q_trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        q[shift] = c;
        r.pop();
        q_trim(&mut r);
    }
    q_trim(&mut q);
    (q, r)
}

/// Inverse of `a` modulo `f`, if gcd(a, f) = 1.
pub(crate) fn q_inverse_mod(a: &QPoly, f: &QPoly) -> Option<QPoly> {
    let (mut r0, mut r1) = (f.clone(), a.clone());
    q_trim(&mut r1);
    let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = q_divrem(&r0, &r1);
        let s2 = q_sub(&s0, &q_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    let mut inv: QPoly = s0.into_iter().map(|x| x / &c).collect();
    let (_, rem) = q_divrem(&inv, f);
    inv = rem;
    Some(inv)
}

/// Exact division of integer polynomials; `None` if it does not divide.
pub(crate) fn z_divides(f: &[BigInt], g: &[BigInt]) -> bool {
    let (_, r) = q_divrem(&q_from_int(f), &q_from_int(g));
    r.is_empty()
}

pub(crate) fn cyclotomic(n: u64) -> Vec<BigInt> {
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num: QPoly = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    for d in 1..n {
        if n % d == 0 {
            let phi = q_from_int(&cyclotomic(d));
            num = q_divrem(&num, &phi).0;
        }
    }
    num.into_iter().map(|c| c.to_integer()).collect()
}

// ---- F_p ----

pub(crate) fn fp_trim(a: &mut FpPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a % p, p - 2, p)
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn fp_from_int(a: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    let mut v: FpPoly = a
        .iter()
        .map(|c| {
            let r = ((c % &pb) + &pb) % &pb;
            u64::try_from(r).unwrap()
        })
        .collect();
    fp_trim(&mut v);
    v
}

pub(crate) fn fp_add(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out: FpPoly = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    fp_trim(&mut out);
    out
}

pub(crate) fn fp_sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out: FpPoly = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    fp_trim(&mut out);
    out
}

pub(crate) fn fp_mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(&mut out);
    out
}

pub(crate) fn fp_divrem(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let mut r = a.clone();
    fp_trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let inv = mod_inv(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * inv % p;
        for (j, &y) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * y % p) % p;
        }
        q[shift] = c;
        r.pop();
        fp_trim(&mut r);
    }
    fp_trim(&mut q);
    (q, r)
}

pub(crate) fn fp_monic(a: &FpPoly, p: u64) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = mod_inv(l, p);
            a.iter().map(|&c| c * inv % p).collect()
        }
    }
}

pub(crate) fn fp_gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    fp_trim(&mut x);
    fp_trim(&mut y);
    while !y.is_empty() {
        let r = fp_divrem(&x, &y, p).1;
        x = std::mem::replace(&mut y, r);
    }
    fp_monic(&x, p)
}

fn fp_derivative(a: &FpPoly, p: u64) -> FpPoly {
    let mut out: FpPoly = a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect();
    fp_trim(&mut out);
    out
}

pub(crate) fn fp_powmod(base: &FpPoly, mut e: u128, m: &FpPoly, p: u64) -> FpPoly {
    let mut result: FpPoly = vec![1];
    let mut b = fp_divrem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            result = fp_divrem(&fp_mul(&result, &b, p), m, p).1;
        }
        b = fp_divrem(&fp_mul(&b, &b, p), m, p).1;
        e >>= 1;
    }
    result
}

fn is_one(a: &FpPoly) -> bool {
    a.len() == 1 && a[0] == 1
}

/// Square-free decomposition of a monic polynomial: pairs (factor, multiplicity).
fn fp_squarefree(f: &FpPoly, p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let d = fp_derivative(f, p);
    let mut c = fp_gcd(f, &d, p);
    let mut w = fp_divrem(f, &c, p).0;
    let mut i = 1;
    while !is_one(&w) && !w.is_empty() {
        let y = fp_gcd(&w, &c, p);
        let fac = fp_divrem(&w, &y, p).0;
        if fac.len() > 1 {
            out.push((fp_monic(&fac, p), i));
        }
        w = y;
        c = fp_divrem(&c, &w, p).0;
        i += 1;
    }
    if c.len() > 1 {
        let root: FpPoly = c.iter().step_by(p as usize).copied().collect();
        for (g, m) in fp_squarefree(&root, p) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// Distinct-degree factorization of a square-free monic polynomial.
fn fp_ddf(f: &FpPoly, p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x: FpPoly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1;
    while rest.len() > 1 && 2 * d < rest.len() {
        h = fp_powmod(&h, p as u128, &rest, p);
        let g = fp_gcd(&rest, &fp_sub(&h, &x, p), p);
        if g.len() > 1 {
            out.push((g.clone(), d));
            rest = fp_divrem(&rest, &g, p).0;
            h = fp_divrem(&h, &rest, p).1;
        }
        d += 1;
    }
    if rest.len() > 1 {
        let deg = rest.len() - 1;
        out.push((rest, deg));
    }
    out
}

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }
}

/// Equal-degree splitting (Cantor-Zassenhaus), deterministic seed.
fn fp_edf(f: &FpPoly, d: usize, p: u64, rng: &mut XorShift) -> Vec<FpPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let mut a: FpPoly = (0..n).map(|_| rng.next() % p).collect();
        fp_trim(&mut a);
        if a.len() < 2 {
            continue;
        }
        let t = if p == 2 {
            let mut acc = a.clone();
            let mut sq = a.clone();
            for _ in 1..d {
                sq = fp_divrem(&fp_mul(&sq, &sq, p), f, p).1;
                acc = fp_add(&acc, &sq, p);
            }
            acc
        } else {
            let e = ((p as u128).pow(d as u32) - 1) / 2;
            fp_sub(&fp_powmod(&a, e, f, p), &vec![1], p)
        };
        let g = fp_gcd(f, &t, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = fp_monic(&fp_divrem(f, &g, p).0, p);
            let mut out = fp_edf(&g, d, p, rng);
            out.extend(fp_edf(&h, d, p, rng));
            return out;
        }
    }
}

/// Complete factorization of a nonzero polynomial mod p into monic irreducibles
/// with multiplicities, sorted by (degree, coefficients).
pub(crate) fn fp_factor(f: &FpPoly, p: u64) -> Vec<(FpPoly, usize)> {
    let f = fp_monic(f, p);
    let mut rng = XorShift(0x9e37_79b9_7f4a_7c15);
    let mut out = Vec::new();
    for (sf, mult) in fp_squarefree(&f, p) {
        for (g, d) in fp_ddf(&sf, p) {
            for h in fp_edf(&g, d, p, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    out.sort_by(|a, b| {
        a.0.len().cmp(&b.0.len()).then_with(|| a.0.iter().rev().cmp(b.0.iter().rev()))
    });
    out
}

#[cfg(test)]
pub(crate) fn fp_is_irreducible(f: &FpPoly, p: u64) -> bool {
    let fac = fp_factor(f, p);
    fac.len() == 1 && fac[0].1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(18).len(), 7);
        assert_eq!(cyclotomic(30).len(), 9);
    }

    #[test]
    fn factor_mod_five() {
        let f = fp_from_int(&ints(&[4, 0, -1, 0, 1]), 5);
        let fac = fp_factor(&f, 5);
        assert_eq!(fac, vec![(vec![2, 0, 1], 2)]);
        let g = fp_from_int(&ints(&[-1, -1, 1]), 5);
        assert_eq!(fp_factor(&g, 5), vec![(vec![2, 1], 2)]);
    }

    #[test]
    fn factor_product_roundtrip() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = fp_from_int(&cyclotomic(36), p);
            let mut prod: FpPoly = vec![1];
            for (g, m) in fp_factor(&f, p) {
                assert!(fp_is_irreducible(&g, p) || g.len() == 2);
                for _ in 0..m {
                    prod = fp_mul(&prod, &g, p);
                }
            }
            assert_eq!(prod, fp_monic(&f, p));
        }
    }

    #[test]
    fn inverse_mod() {
        let f = q_from_int(&ints(&[1, 0, 1]));
        let a = q_from_int(&ints(&[1, 1]));
        let inv = q_inverse_mod(&a, &f).unwrap();
        let prod = q_divrem(&q_mul(&a, &inv), &f).1;
        assert_eq!(prod, vec![BigRational::one()]);
    }
}
