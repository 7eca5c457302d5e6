//! Smith normal form over the integers, minimal-absolute-value pivoting.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds from rows of equal length; `cols` is needed when there are no rows.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i * o.cols + j] += a * o.get(k, j);
                }
            }
        }
        out
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    fn from_nested(cols: usize, rows: Vec<Vec<BigInt>>) -> IntMatrix {
        let n = rows.len();
        IntMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Nonzero elementary divisors d_1 | d_2 | ... | d_r and the number of zero columns
/// of the diagonal form (the free rank of the cokernel).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    #[serde(serialize_with = "ser_bigints")]
    pub divisors: Vec<BigInt>,
    pub free_rank: usize,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// Divisors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    cols: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut() {
            r.swap(i, j);
        }
        if let Some(v) = self.v.as_mut() {
            for r in v.iter_mut() {
                r.swap(i, j);
            }
        }
    }

    // row_i += q * row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        let src = self.a[j].clone();
        for (x, y) in self.a[i].iter_mut().zip(&src) {
            if !y.is_zero() {
                *x += q * y;
            }
        }
        if let Some(u) = self.u.as_mut() {
            let src = u[j].clone();
            for (x, y) in u[i].iter_mut().zip(&src) {
                if !y.is_zero() {
                    *x += q * y;
                }
            }
        }
    }

    // col_i += q * col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in self.a.iter_mut() {
            if !r[j].is_zero() {
                let t = q * &r[j];
                r[i] += t;
            }
        }
        if let Some(v) = self.v.as_mut() {
            for r in v.iter_mut() {
                if !r[j].is_zero() {
                    let t = q * &r[j];
                    r[i] += t;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if let Some(u) = self.u.as_mut() {
            for x in u[i].iter_mut() {
                *x = -&*x;
            }
        }
    }

    fn run(&mut self) -> SmithForm {
        let rows = self.a.len();
        let cols = self.cols;
        let mut divisors = Vec::new();
        for t in 0..rows.min(cols) {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..rows {
                    for j in t..cols {
                        let x = &self.a[i][j];
                        if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((bi, bj)) = best else {
                    return SmithForm { divisors, free_rank: cols - t };
                };
                self.swap_rows(t, bi);
                self.swap_cols(t, bj);
                let p = self.a[t][t].clone();
                let mut clean = true;
                for i in t + 1..rows {
                    if !self.a[i][t].is_zero() {
                        let q = -self.a[i][t].div_floor(&p);
                        self.add_row(i, t, &q);
                        clean &= self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..cols {
                    if !self.a[t][j].is_zero() {
                        let q = -self.a[t][j].div_floor(&p);
                        self.add_col(j, t, &q);
                        clean &= self.a[t][j].is_zero();
                    }
                }
                if !clean {
                    continue;
                }
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&self.a[i][j] % &p).is_zero()));
                if let Some(i) = bad {
                    self.add_row(t, i, &BigInt::one());
                    continue;
                }
                break;
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            divisors.push(self.a[t][t].clone());
        }
        let rank = divisors.len();
        SmithForm { divisors, free_rank: cols - rank }
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    Work { a: m.to_rows(), u: None, v: None, cols: m.cols }.run()
}

/// Smith form together with unimodular U, V such that U * M * V is diagonal.
pub fn smith_with_transforms(m: &IntMatrix) -> (SmithForm, IntMatrix, IntMatrix) {
    let mut w = Work {
        a: m.to_rows(),
        u: Some(IntMatrix::identity(m.rows).to_rows()),
        v: Some(IntMatrix::identity(m.cols).to_rows()),
        cols: m.cols,
    };
    let form = w.run();
    let u = IntMatrix::from_nested(m.rows, w.u.take().unwrap());
    let v = IntMatrix::from_nested(m.cols, w.v.take().unwrap());
    (form, u, v)
}

/// Smith form with only the column transform V (the row transform is discarded).
pub fn smith_with_column_transform(m: &IntMatrix) -> (SmithForm, IntMatrix) {
    let mut w = Work { a: m.to_rows(), u: None, v: Some(IntMatrix::identity(m.cols).to_rows()), cols: m.cols };
    let form = w.run();
    (form, IntMatrix::from_nested(m.cols, w.v.take().unwrap()))
}
