//! Floating root approximation and fixed-point root refinement for exact sign decisions.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

fn eval_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots by Aberth-Ehrlich iteration, followed by Newton polishing.
pub(crate) fn roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let bound = 1.0 + coeffs[..n].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(0.5 * bound, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..1000 {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * sum);
            z[i] -= w;
            worst = worst.max(w.norm() / (1.0 + z[i].norm()));
        }
        if worst < 1e-15 {
            break;
        }
    }
    for r in z.iter_mut() {
        *r = polish(coeffs, *r);
    }
    z
}

pub(crate) fn polish(coeffs: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        let (p, dp) = eval_with_derivative(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        z -= p / dp;
    }
    z
}

/// Complex number with real and imaginary parts stored as integers scaled by 2^prec.
#[derive(Clone, Debug)]
pub(crate) struct Fixed {
    pub re: BigInt,
    pub im: BigInt,
}

fn from_f64(x: f64, prec: u32) -> BigInt {
    if x == 0.0 {
        return BigInt::zero();
    }
    let m = (x * 2f64.powi(52)).round() as i64;
    let v = BigInt::from(m);
    if prec >= 52 {
        v << (prec - 52)
    } else {
        v >> (52 - prec)
    }
}

fn to_f64(x: &BigInt, prec: u32) -> f64 {
    let bits = x.bits() as i64;
    if bits <= 60 {
        return x.to_f64().unwrap() * 2f64.powi(-(prec as i32));
    }
    let shift = bits - 60;
    let top = (x >> shift as usize).to_f64().unwrap();
    top * 2f64.powi(shift as i32 - prec as i32)
}

impl Fixed {
    fn mul(&self, o: &Fixed, prec: u32) -> Fixed {
        Fixed {
            re: (&self.re * &o.re - &self.im * &o.im) >> prec as usize,
            im: (&self.re * &o.im + &self.im * &o.re) >> prec as usize,
        }
    }

    fn norm_f64(&self, prec: u32) -> f64 {
        to_f64(&self.re, prec).hypot(to_f64(&self.im, prec))
    }

    fn ulps_f64(&self) -> f64 {
        to_f64(&self.re, 0).hypot(to_f64(&self.im, 0))
    }
}

/// Horner evaluation of an integer polynomial; returns the value and a bound on the
/// accumulated rounding error in ulps.
fn horner(coeffs: &[BigInt], z: &Fixed, prec: u32) -> (Fixed, f64) {
    let mut acc = Fixed { re: BigInt::zero(), im: BigInt::zero() };
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, prec);
        acc.re += c << prec as usize;
    }
    let n = coeffs.len() as f64;
    let r = z.norm_f64(prec) + 1.0;
    (acc, 2.0 * (n + 1.0) * r.powf(n))
}

fn derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// A root of `f` refined from `approx` to `prec` bits, with a rigorous-in-spirit radius
/// (in ulps) containing a true root.
pub(crate) fn refine_root(f: &[BigInt], approx: Complex64, prec: u32) -> (Fixed, f64) {
    let df = derivative(f);
    let mut z = Fixed { re: from_f64(approx.re, prec), im: from_f64(approx.im, prec) };
    let iterations = 4 + (prec as f64 / 40.0).log2().ceil().max(0.0) as usize;
    for _ in 0..iterations {
        let (v, _) = horner(f, &z, prec);
        let (d, _) = horner(&df, &z, prec);
        let den = &d.re * &d.re + &d.im * &d.im;
        if den.is_zero() {
            break;
        }
        let num_re = (&v.re * &d.re + &v.im * &d.im) << prec as usize;
        let num_im = (&v.im * &d.re - &v.re * &d.im) << prec as usize;
        z.re -= num_re / &den;
        z.im -= num_im / &den;
    }
    let (v, ev) = horner(f, &z, prec);
    let (d, ed) = horner(&df, &z, prec);
    let dmag = (d.norm_f64(prec) - ed * 2f64.powi(-(prec as i32))).max(f64::MIN_POSITIVE);
    let n = (f.len() - 1) as f64;
    let radius = n * (v.ulps_f64() + ev) / dmag;
    (z, radius)
}

/// Sign of the real value g(alpha), where alpha is the root of `f` near `approx`.
/// `None` if the precision was insufficient.
pub(crate) fn sign_at_root(
    g: &[BigInt],
    f: &[BigInt],
    approx: Complex64,
    prec: u32,
) -> Option<std::cmp::Ordering> {
    let (z, radius) = refine_root(f, approx, prec);
    let (v, ev) = horner(g, &z, prec);
    let zr = z.norm_f64(prec) + 1.0;
    let slope: f64 = g
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| i as f64 * to_f64(&c.abs(), 0) * zr.powi(i as i32 - 1))
        .sum();
    let err = ev + radius * slope + 2.0;
    if !err.is_finite() {
        return None;
    }
    let bound = BigInt::from(err.ceil() as u128);
    if v.re.abs() > bound {
        Some(if v.re.is_positive() { std::cmp::Ordering::Greater } else { std::cmp::Ordering::Less })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_cyclotomic() {
        let r = roots(&[1.0, -1.0, 1.0]);
        assert_eq!(r.len(), 2);
        for z in r {
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!((z.re - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn sign_of_sqrt2_minus_rational() {
        let f: Vec<BigInt> = [-2, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        let approx = Complex64::new(1.414, 0.0);
        // 99 * x - 140 is positive at sqrt(2) (99*sqrt2 = 140.007...)
        let g: Vec<BigInt> = [-140, 99].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(sign_at_root(&g, &f, approx, 96), Some(std::cmp::Ordering::Greater));
        let h: Vec<BigInt> = [140, -99].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(sign_at_root(&h, &f, approx, 96), Some(std::cmp::Ordering::Less));
    }
}
