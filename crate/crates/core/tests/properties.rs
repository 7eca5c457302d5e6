mod common;

use ballquot_core::exactalg::{FieldElem, NumberField};
use ballquot_core::fpcore::{abelian_invariants, low_index_subgroups, CosetTable, Presentation, Word};
use ballquot_core::permgrp::Perm;
use common::*;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

fn cyclotomic_elem(c: &[(i64, i64)]) -> FieldElem {
    let k = NumberField::cyclotomic(12);
    FieldElem::from_coeffs(&k, c.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect())
}

fn elem() -> impl Strategy<Value = FieldElem> {
    prop::collection::vec((-5i64..=5, 1i64..=3), 4).prop_map(|c| cyclotomic_elem(&c))
}

fn relator() -> impl Strategy<Value = Word> {
    word_strategy(8).prop_filter("nontrivial", |w| !w.is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn todd_coxeter_matches_brute_force(g in 0..finite_groups().len(), sub in prop::collection::vec(word_strategy(6), 1..=2)) {
        check_todd_coxeter(&finite_groups()[g], &sub)?;
    }

    #[test]
    fn smith_matches_minor_gcds(m in matrix_strategy()) {
        check_smith(&m)?;
    }

    #[test]
    fn heisenberg_law_matches_matrices(a in heisenberg_strategy(), b in heisenberg_strategy()) {
        check_heisenberg(&a, &b)?;
    }

    #[test]
    fn field_axioms(a in elem(), b in elem(), c in elem()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn index_two_subgroups_match_abelianization(rels in prop::collection::vec(relator(), 1..=3)) {
        let p = Presentation::new(2, rels);
        let lis = low_index_subgroups(&p, 2);
        prop_assert!(lis.complete);
        let ab = abelian_invariants(&p);
        let r = ab.free_rank + ab.torsion.iter().filter(|d| d.is_even()).count();
        let two = lis.tables.iter().filter(|t| t.index() == 2).count();
        prop_assert_eq!(two, (1usize << r) - 1);
        for t in &lis.tables {
            prop_assert!(t.is_transitive());
            prop_assert!(t.verify(&p, &[]).is_ok());
        }
    }

    #[test]
    fn low_index_classes_are_distinct(g in 0..finite_groups().len()) {
        let fg = &finite_groups()[g];
        let p = Presentation::parse(2, &fg.relators).unwrap();
        let lis = low_index_subgroups(&p, 4);
        let mut seen = std::collections::HashSet::new();
        for t in &lis.tables {
            prop_assert!(t.index() <= 4 && fg.order % t.index() == 0);
            let mut forms: Vec<String> = Vec::new();
            let n = t.index() as u32;
            for c in 0..n {
                let shifted: Vec<Vec<u32>> =
                    t.actions().iter().map(|a| (0..n).map(|i| (a[((i + c) % n) as usize] + n - c) % n).collect()).collect();
                forms.push(CosetTable::from_actions(&shifted).unwrap().standardize().to_text());
            }
            forms.sort();
            prop_assert!(seen.insert(forms[0].clone()), "conjugate classes listed twice");
        }
    }

    #[test]
    fn perm_order_is_lcm_of_cycles(p in Just((0..9u32).collect::<Vec<u32>>()).prop_shuffle(), e in -5i64..=5) {
        let p = Perm::from_images(p).unwrap();
        let lcm = p.cycles().iter().fold(1u128, |a, c| a.lcm(&(c.len() as u128)));
        prop_assert_eq!(p.order(), lcm);
        prop_assert!(p.pow(lcm as i64).is_identity());
        prop_assert_eq!(p.pow(e).mul(&p.pow(-e)), Perm::identity(9));
    }

    #[test]
    fn word_inverse_reverses_products(u in word_strategy(10), v in word_strategy(10)) {
        prop_assert_eq!(u.mul(&v).inverse(), v.inverse().mul(&u.inverse()));
        prop_assert!(u.mul(&u.inverse()).is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn schreier_sims_matches_closure((d, gens, probes) in perm_group_strategy()) {
        check_schreier_sims(d, &gens, &probes)?;
    }
}
