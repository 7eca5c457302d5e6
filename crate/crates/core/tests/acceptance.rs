mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use ballquot_core::cxhyp::{cusp_analyze, Mat3};
use ballquot_core::exactalg::parse_element;
use ballquot_core::fpcore::{abelian_invariants, epimorphism_check, AbelianInvariants, PermTarget, Word};
use ballquot_core::latcat::{lopt, Catalog, LatticeRecord, MapKernel};
use ballquot_core::pipeline::{certify_words, congruence_table, tower, verify_basic_23p, verify_triangle_map, Limits};
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

type Check = fn(&Catalog) -> Result<Outcome, String>;

fn ab(s: &str) -> AbelianInvariants {
    AbelianInvariants::parse(s).expect("invariants")
}

fn words(rec: &LatticeRecord, name: &str) -> Result<Vec<Word>, String> {
    rec.subgroup(name).map(<[Word]>::to_vec).ok_or_else(|| format!("{} has no subgroup {name}", rec.name))
}

fn flagship(c: &Catalog) -> Result<Outcome, String> {
    let rec = c.get("Mostow(6,0)").map_err(|e| e.to_string())?;
    let start = Instant::now();
    let r = certify_words(rec, &words(rec, "H")?, &Limits::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let cusp_ok = r.cusp_count == 1
        && r.cusps[0].invariants == ab("Z12+Z^2")
        && r.cusps[0].self_intersection == Some(-12);
    let pass = r.index == 72
        && r.core_index == Some(864)
        && r.kernel_torsion_free == Some(true)
        && r.torsion_free == Some(true)
        && cusp_ok
        && r.invariants == ab("Z3+Z^2")
        && r.b1 == 2
        && r.chi == "6"
        && elapsed < Duration::from_secs(300);
    Ok(outcome(
        pass,
        format!(
            "index {} core {:?} tf {:?}/{:?} cusps {} [{}] self-int {:?} ab {} b1 {} chi {} in {:.2?}",
            r.index,
            r.core_index,
            r.kernel_torsion_free,
            r.torsion_free,
            r.cusp_count,
            r.cusps.iter().map(|c| c.abelianization.as_str()).collect::<Vec<_>>().join(", "),
            r.self_intersections(),
            r.abelianization,
            r.b1,
            r.chi,
            elapsed
        ),
    ))
}

fn abelianization(c: &Catalog) -> Result<Outcome, String> {
    let rec = c.get("Mostow(6,0)").map_err(|e| e.to_string())?;
    let p = rec.presentation().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let a = abelian_invariants(p);
    let elapsed = start.elapsed();
    Ok(outcome(a == ab("Z3+Z6") && elapsed < Duration::from_secs(1), format!("{a:?} in {elapsed:.2?}")))
}

fn cusp_example(c: &Catalog) -> Result<Outcome, String> {
    let rec = c.get("Sporadic(3,sigma5)").map_err(|e| e.to_string())?;
    let model = rec.model.as_ref().ok_or("no matrix model")?;
    let named = |n: &str| model.named.get(n).cloned().ok_or(format!("no matrix {n}"));
    let q = named("q")?;
    let qi = q.inverse().map_err(|e| e.to_string())?;
    let [a, b]: [Mat3; 2] = words(rec, "cusp_ab")?.iter().map(|w| model.eval(w)).collect::<Vec<_>>().try_into().map_err(|_| "cusp_ab")?;
    let conj_a = qi.mul(&a).mul(&q).eq_projective(&named("cusp_a")?);
    let conj_b = qi.mul(&b).mul(&q).eq_projective(&named("cusp_b")?);
    let field = model.field.clone();
    let mut names = HashMap::new();
    names.insert("w".to_string(), parse_element("-1/2 + t/4 + t^3/4", &field, &names).map_err(|e| e.to_string())?);
    let e = |s: &str| parse_element(s, &field, &names).map_err(|e| e.to_string());
    let mat = |v: [&str; 9]| -> Result<Mat3, String> {
        Mat3::from_vec(v.iter().map(|s| e(s)).collect::<Result<_, _>>()?).map_err(|e| e.to_string())
    };
    let pw = |m: &Mat3, k: i64| m.pow(k).expect("invertible");
    let in_q = |m: &Mat3| qi.mul(m).mul(&q);
    let ba2 = pw(&b.mul(&a), 2);
    let a6 = in_q(&pw(&a, 6)).eq_projective(&mat(["1", "0", "-6*conj(w)", "0", "1", "0", "0", "0", "1"])?);
    let b3 = pw(&b, 3).is_projective_identity();
    let ba2_form = in_q(&ba2).eq_projective(&mat(["1", "0", "-conj(w)", "0", "1", "0", "0", "0", "1"])?);
    let central = a.mul(&ba2).eq_projective(&ba2.mul(&a)) && b.mul(&ba2).eq_projective(&ba2.mul(&b));
    let powers = a6 && b3 && ba2_form && central;

    let x: Vec<Mat3> = words(rec, "xi")?.iter().map(|w| model.eval(w)).collect();
    let inv = |m: &Mat3| m.inverse().expect("invertible");
    let ids = [
        x[2].eq_projective(&x[1].mul(&x[0]).mul(&inv(&x[1]))),
        x[3].eq_projective(&x[1].mul(&x[0]).mul(&x[1]).mul(&inv(&x[0])).mul(&inv(&x[1]))),
        x[4].eq_projective(&inv(&x[0]).mul(&inv(&x[1])).mul(&x[0]).mul(&x[1]).mul(&x[0])),
        x[5].eq_projective(&inv(&x[0]).mul(&x[1]).mul(&x[0])),
        x[1].eq_projective(&x[6].mul(&x[0]).mul(&inv(&x[6]))),
    ];

    let cusp = cusp_analyze(&[a.clone(), b.clone()], &model.form, Some(&q)).map_err(|e| e.to_string())?;
    let ga = &cusp.generators[0];
    let gb = &cusp.generators[1];
    let rotations = ga.zeta == e("-conj(w)")? && ga.z.is_zero() && gb.zeta == e("w")? && gb.z.is_one();
    let pass = conj_a && conj_b && powers && ids.iter().all(|x| *x) && rotations;
    Ok(outcome(
        pass,
        format!(
            "Q^-1AQ {conj_a} Q^-1BQ {conj_b} A^6 {a6} B^3=Id {b3} (BA)^2 {ba2_form} central {central} x-identities {ids:?} A~(z) = ({})z + {}, B~(z) = ({})z + {}",
            ga.zeta, ga.z, gb.zeta, gb.z
        ),
    ))
}

fn congruence(c: &Catalog) -> Result<Outcome, String> {
    let rec = c.get("Sporadic(3,sigma5)").map_err(|e| e.to_string())?;
    let (img, _) = congruence_table(rec, 5, None, 0).map_err(|e| e.to_string())?;
    let p = rec.presentation().map_err(|e| e.to_string())?;
    let check = epimorphism_check(p, &PermTarget { degree: img.degree() }, &img.images).map_err(|e| e.to_string())?;
    let order = img.group.order();
    Ok(outcome(
        img.degree() == 651 && order == 378000 && check.ok,
        format!("{} points, order {order}, relators trivial {}", img.degree(), check.ok),
    ))
}

fn lopt_table(c: &Catalog) -> Result<Outcome, String> {
    let expected = [
        ("Sporadic(4,sigma1)", 96),
        ("Sporadic(3,sigma5)", 360),
        ("Sporadic(5,sigma10)", 600),
        ("Sporadic(10,sigma10)", 300),
        ("Thompson(3,S2)", 360),
        ("Thompson(3,E2)", 72),
        ("Thompson(4,E2)", 96),
        ("Thompson(5,H2)", 600),
        ("Mostow(4,5/12)", 864),
        ("Mostow(6,1/3)", 18),
        ("Mostow(3,1/3)", 864),
        ("Mostow(4,1/4)", 96),
        ("Mostow(5,1/10)", 600),
        ("Mostow(10,0)", 150),
        ("Mostow(3,1/6)", 72),
        ("Mostow(4,1/12)", 864),
    ];
    let mut bad = Vec::new();
    for (name, want) in expected {
        let got = c.get(name).map_err(|e| e.to_string()).and_then(|r| lopt(r).map_err(|e| e.to_string()));
        if got.as_ref().ok() != Some(&want) {
            bad.push(format!("{name}: {got:?} != {want}"));
        }
    }
    let detail = if bad.is_empty() { format!("{} groups match", expected.len()) } else { bad.join("; ") };
    Ok(outcome(bad.is_empty(), detail))
}

fn basic_23p(c: &Catalog) -> Result<Outcome, String> {
    let mut pass = true;
    let mut parts = Vec::new();
    for name in ["Mostow(8,5/8)", "Mostow(12,7/12)", "Mostow(18,5/9)", "Mostow(10,0)"] {
        let v = verify_basic_23p(c.get(name).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        pass &= v.ok && v.r1r2_is_beta && v.r1r2j_is_gamma_inv2;
        parts.push(format!(
            "{name}: hom {} R1R2=b {} R1R2J=g^-2 {} R2R1J=g^-2 {}",
            v.ok, v.r1r2_is_beta, v.r1r2j_is_gamma_inv2, v.r2r1j_is_gamma_inv2
        ));
    }
    if !pass {
        parts.push("R1R2 = b and J -> b force R1R2J = b^2 = b^-1; the stated identity holds for R2R1J".into());
    }
    Ok(outcome(pass, parts.join("; ")))
}

fn triangle_maps(c: &Catalog) -> Result<Outcome, String> {
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, kernel, orders, want) in
        [("Mostow(10,0)", MapKernel::K, (5, 5, 5), 30), ("Mostow(18,2/9)", MapKernel::L, (3, 3, 3), 18)]
    {
        let rec = c.get(name).map_err(|e| e.to_string())?;
        let row = rec
            .triangle_maps
            .iter()
            .find(|r| r.kernel == kernel && r.orders == orders)
            .ok_or(format!("{name} has no {kernel:?} {orders:?} row"))?;
        let v = verify_triangle_map(rec, row, &Limits::default()).map_err(|e| e.to_string())?;
        pass &= 6 % v.gamma_mu_index == 0
            && v.homomorphism == Some(true)
            && v.surjective == Some(true)
            && v.index == Some(want)
            && v.isomorphism == "unverified";
        parts.push(format!(
            "{name} {kernel:?} onto {orders:?}: Gamma_mu index {} hom {:?} onto {:?} index {:?} isomorphism {}",
            v.gamma_mu_index, v.homomorphism, v.surjective, v.index, v.isomorphism
        ));
    }
    Ok(outcome(pass, parts.join("; ")))
}

fn towers(c: &Catalog) -> Result<Outcome, String> {
    let rec = c.get("Mostow(6,0)").map_err(|e| e.to_string())?;
    let h = certify_words(rec, &words(rec, "H")?, &Limits::default()).map_err(|e| e.to_string())?;
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [3u64, 5, 7] {
        let t = tower(rec, &h, n).map_err(|e| e.to_string())?;
        pass &= t.cusp_count == 1 && t.index == 72 * n && t.cusp_lattice_index == Some(12);
        parts.push(format!("n={n}: index {} cusps {} cusp lattice index {:?}", t.index, t.cusp_count, t.cusp_lattice_index));
    }
    Ok(outcome(pass, parts.join("; ")))
}

fn run_suite<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
) -> Result<String, String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map(|_| format!("{name} {cases} ok")).map_err(|e| format!("{name}: {e}"))
}

fn properties(_: &Catalog) -> Result<Outcome, String> {
    use common::*;
    use proptest::prelude::*;
    let groups = finite_groups();
    let n = groups.len();
    let results = [
        run_suite(
            "coset enumeration vs brute force",
            200,
            (0..n, prop::collection::vec(word_strategy(6), 1..=2)),
            |(g, sub)| check_todd_coxeter(&groups[g], &sub),
        ),
        run_suite("Smith form vs minor gcds", 500, matrix_strategy(), |m| check_smith(&m)),
        run_suite("Schreier-Sims vs closure", 100, perm_group_strategy(), |(d, g, p)| check_schreier_sims(d, &g, &p)),
        run_suite("Heisenberg law vs matrices", 500, (heisenberg_strategy(), heisenberg_strategy()), |(a, b)| {
            check_heisenberg(&a, &b)
        }),
    ];
    let pass = results.iter().all(Result::is_ok);
    let detail = results.iter().map(|r| r.clone().unwrap_or_else(|e| e)).collect::<Vec<_>>().join("; ");
    Ok(outcome(pass, detail))
}

fn main() {
    let catalog = match Catalog::builtin() {
        Ok(c) => c,
        Err(e) => {
            println!("FAIL catalog: {e}");
            std::process::exit(1);
        }
    };
    let criteria: [(&str, Check); 9] = [
        ("flagship subgroup of Mostow(6,0)", flagship),
        ("abelianization of Mostow(6,0)", abelianization),
        ("cusp of Sporadic(3,sigma5)", cusp_example),
        ("congruence image of Sporadic(3,sigma5) mod 5", congruence),
        ("optimal torsion-free index bounds", lopt_table),
        ("maps to (2,3,p) triangle groups", basic_23p),
        ("maps to (5,5,5) and (3,3,3)", triangle_maps),
        ("tower over the flagship subgroup", towers),
        ("property suites", properties),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check(&catalog).unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        failures += usize::from(!o.pass);
        println!("{} {}. {name}: {}", if o.pass { "PASS" } else { "FAIL" }, k + 1, o.detail);
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
