#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use ballquot_core::cxhyp::{verify_unitary, HeisenbergElement, HermitianForm, Mat3};
use ballquot_core::exactalg::{smith_normal_form, FieldElem, IntMatrix, NumberField};
use ballquot_core::fpcore::{todd_coxeter, EnumLimits, Presentation, Word};
use ballquot_core::permgrp::{Perm, PermGroup};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

type P = Vec<u32>;

/// `a` then `b`.
fn compose(a: &P, b: &P) -> P {
    a.iter().map(|&i| b[i as usize]).collect()
}

fn invert(a: &P) -> P {
    let mut r = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        r[x as usize] = i as u32;
    }
    r
}

fn brute_closure(degree: usize, gens: &[P]) -> HashSet<P> {
    let id: P = (0..degree as u32).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn eval_word(degree: usize, gens: &[P], w: &Word) -> P {
    w.letters().iter().fold((0..degree as u32).collect(), |acc, &l| {
        let g = &gens[l.unsigned_abs() as usize - 1];
        compose(&acc, &if l > 0 { g.clone() } else { invert(g) })
    })
}

fn all_perms(n: usize) -> Vec<P> {
    let mut out = vec![vec![]];
    for k in 0..n as u32 {
        out = out
            .into_iter()
            .flat_map(|p: P| (0..=p.len()).map(move |i| [&p[..i], &[k], &p[i..]].concat()))
            .collect();
    }
    out
}

/// A finite two-generator presentation with a faithful permutation representation.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub relators: String,
    pub degree: usize,
    pub gens: Vec<P>,
    pub order: usize,
}

fn von_dyck(q: u32, r: u32, order: usize) -> FiniteGroup {
    let degree = if order == 12 || order == 24 { 4 } else { 5 };
    let perms = all_perms(degree);
    let ord = |p: &P| {
        let mut x = p.clone();
        let mut k = 1;
        while x.iter().enumerate().any(|(i, &y)| y != i as u32) {
            x = compose(&x, p);
            k += 1;
        }
        k
    };
    for a in perms.iter().filter(|p| ord(p) == 2) {
        for b in perms.iter().filter(|p| ord(p) == q) {
            if ord(&compose(a, b)) == r && brute_closure(degree, &[a.clone(), b.clone()]).len() == order {
                return FiniteGroup {
                    relators: format!("1^2, 2^{q}, (12)^{r}"),
                    degree,
                    gens: vec![a.clone(), b.clone()],
                    order,
                };
            }
        }
    }
    unreachable!("no permutation representation found")
}

/// Abelian `Z_m x Z_n`, dihedral groups and the tetrahedral, octahedral and icosahedral groups.
pub fn finite_groups() -> &'static [FiniteGroup] {
    static GROUPS: std::sync::OnceLock<Vec<FiniteGroup>> = std::sync::OnceLock::new();
    GROUPS.get_or_init(build_finite_groups)
}

fn build_finite_groups() -> Vec<FiniteGroup> {
    let mut out = Vec::new();
    for m in 1..=5u32 {
        for n in 1..=5u32 {
            let cyc = |k: u32, off: u32| -> P {
                (0..m + n).map(|i| if i >= off && i < off + k { off + (i - off + 1) % k } else { i }).collect()
            };
            out.push(FiniteGroup {
                relators: format!("1^{m}, 2^{n}, [1,2]"),
                degree: (m + n) as usize,
                gens: vec![cyc(m, 0), cyc(n, m)],
                order: (m * n) as usize,
            });
        }
    }
    for n in 3..=9u32 {
        let refl: P = (0..n).map(|i| (n - i) % n).collect();
        let rot: P = (0..n).map(|i| (i + 1) % n).collect();
        out.push(FiniteGroup { relators: format!("1^2, 2^{n}, (12)^2"), degree: n as usize, gens: vec![refl, rot], order: 2 * n as usize });
    }
    out.push(von_dyck(3, 3, 12));
    out.push(von_dyck(3, 4, 24));
    out.push(von_dyck(3, 5, 60));
    out
}

pub fn word_strategy(len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 0..=len).prop_map(Word::new)
}

/// Coset enumeration against the order of the subgroup generated in a faithful representation.
pub fn check_todd_coxeter(g: &FiniteGroup, sub: &[Word]) -> Result<(), TestCaseError> {
    let p = Presentation::parse(2, &g.relators).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let t = todd_coxeter(&p, sub, &EnumLimits::default()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let images: Vec<P> = sub.iter().map(|w| eval_word(g.degree, &g.gens, w)).collect();
    let h = brute_closure(g.degree, &images).len();
    prop_assert_eq!(t.index() * h, g.order, "relators {} subgroup {:?}", g.relators, sub);
    Ok(())
}

fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| [&r[..j], &r[j + 1..]].concat()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] as i128 * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = subsets(n - 1, k - 1).into_iter().map(|mut s| {
        s.push(n - 1);
        s
    }).collect();
    with.extend(subsets(n - 1, k));
    with
}

pub fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

/// Products of elementary divisors against gcds of minors.
pub fn check_smith(rows: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let (r, c) = (rows.len(), rows[0].len());
    let s = smith_normal_form(&IntMatrix::from_rows(c, rows));
    let mut rank = 0;
    let mut prod = BigInt::from(1);
    for k in 1..=r.min(c) {
        let mut g = 0i128;
        for ri in subsets(r, k) {
            for ci in subsets(c, k) {
                let sub: Vec<Vec<i64>> = ri.iter().map(|&i| ci.iter().map(|&j| rows[i][j]).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        rank = k;
        prop_assert!(s.divisors.len() >= k, "{rows:?}: {s:?}");
        prop_assert!(s.divisors[k - 1].is_positive());
        prod *= &s.divisors[k - 1];
        prop_assert_eq!(&prod, &BigInt::from(g), "{:?}: {:?}", rows, s);
    }
    prop_assert_eq!(s.divisors.len(), rank, "{:?}: {:?}", rows, s);
    prop_assert_eq!(s.free_rank, c - rank, "{:?}: {:?}", rows, s);
    Ok(())
}

/// Degree, generators and membership probes.
pub fn perm_group_strategy() -> impl Strategy<Value = (usize, Vec<P>, Vec<P>)> {
    (2usize..=7).prop_flat_map(|n| {
        let perm = Just((0..n as u32).collect::<P>()).prop_shuffle();
        (Just(n), prop::collection::vec(perm.clone(), 1..=3), prop::collection::vec(perm, 6))
    })
}

/// Schreier-Sims order, membership and stabilizer order against breadth-first closure.
pub fn check_schreier_sims(degree: usize, gens: &[P], probes: &[P]) -> Result<(), TestCaseError> {
    let elems = brute_closure(degree, gens);
    let to_perm = |p: &P| Perm::from_images(p.clone()).unwrap();
    let g = PermGroup::new(degree, gens.iter().map(to_perm).collect()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(g.order(), elems.len() as u128);
    for p in probes {
        prop_assert_eq!(g.contains(&to_perm(p)), elems.contains(p));
    }
    let fixed = elems.iter().filter(|x| x[0] == 0).count();
    prop_assert_eq!(g.stabilizer(0).order(), fixed as u128);
    Ok(())
}

fn gaussian(a: (i64, i64), b: (i64, i64)) -> FieldElem {
    let k = NumberField::gaussian();
    FieldElem::from_coeffs(&k, vec![BigRational::new(a.0.into(), a.1.into()), BigRational::new(b.0.into(), b.1.into())])
}

pub type HeisenbergSeed = ((i64, i64), (i64, i64), (i64, i64), usize);

pub fn heisenberg_strategy() -> impl Strategy<Value = HeisenbergSeed> {
    let q = || (-6i64..=6, 1i64..=4);
    (q(), q(), q(), 0usize..4)
}

fn heisenberg(seed: &HeisenbergSeed) -> HeisenbergElement {
    let (x, y, t, u) = *seed;
    let zeta = [gaussian((1, 1), (0, 1)), gaussian((0, 1), (1, 1)), gaussian((-1, 1), (0, 1)), gaussian((0, 1), (-1, 1))][u].clone();
    HeisenbergElement::screw(gaussian(x, y), gaussian((0, 1), t), zeta).unwrap()
}

/// The group law on `(z, v, zeta)` against products of unitary matrices.
pub fn check_heisenberg(a: &HeisenbergSeed, b: &HeisenbergSeed) -> Result<(), TestCaseError> {
    let (a, b) = (heisenberg(a), heisenberg(b));
    let k = NumberField::gaussian();
    let o = FieldElem::zero_in(&k);
    let l = FieldElem::one_in(&k);
    let form = HermitianForm::new(Mat3::from_rows([[o.clone(), o.clone(), l.clone()], [o.clone(), l.clone(), o.clone()], [l, o.clone(), o]]))
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    let (ma, mb) = (a.to_matrix(), b.to_matrix());
    prop_assert!(verify_unitary(&ma, &form));
    prop_assert!(a.mul(&b).to_matrix().eq_projective(&ma.mul(&mb)));
    prop_assert!(a.inverse().to_matrix().eq_projective(&ma.inverse().unwrap()));
    let c = a.commutator(&b);
    prop_assert!(c.is_translation());
    if a.is_translation() && b.is_translation() {
        prop_assert!(c.is_vertical());
    }
    Ok(())
}
