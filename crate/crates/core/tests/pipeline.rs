use ballquot_core::fpcore::AbelianInvariants;
use ballquot_core::latcat::{Catalog, LatticeRecord};
use ballquot_core::pipeline::*;

fn catalog() -> Catalog {
    Catalog::builtin().unwrap()
}

fn flagship(c: &Catalog) -> (&LatticeRecord, SubgroupReport) {
    let rec = c.get("Mostow(6,0)").unwrap();
    let r = certify_words(rec, rec.subgroup("H").unwrap(), &Limits::default()).unwrap();
    (rec, r)
}

#[test]
fn certify_is_stable_on_its_own_table() {
    let c = catalog();
    let (rec, r) = flagship(&c);
    let again = certify(rec, &r.table, "table", &Limits::default()).unwrap();
    assert_eq!(again.index, r.index);
    assert_eq!(again.invariants, r.invariants);
    assert_eq!(again.self_intersections(), r.self_intersections());
    assert_eq!(again.torsion_free, r.torsion_free);
}

#[test]
fn generator_words_lie_in_the_subgroup() {
    let c = catalog();
    let (rec, r) = flagship(&c);
    let words = r.generator_words(rec.presentation().unwrap());
    let again = certify_words(rec, &words, &Limits::default()).unwrap();
    assert_eq!(again.index, 72);
    assert_eq!(again.invariants, r.invariants);
}

#[test]
fn flagship_cusp_generators_fix_their_coset() {
    let c = catalog();
    let (_, r) = flagship(&c);
    for cusp in &r.cusps {
        for w in &cusp.generators {
            assert_eq!(r.table.trace(0, w), 0, "{w}");
        }
    }
}

#[test]
fn double_cover_of_flagship_has_two_cusps() {
    let c = catalog();
    let (rec, r) = flagship(&c);
    let t = tower(rec, &r, 2).unwrap();
    assert_eq!(t.index, 144);
    assert_eq!(t.cusp_count, 2);
    assert_eq!(t.chi, "12");
}

#[test]
fn tower_rejects_zero() {
    let c = catalog();
    let (rec, r) = flagship(&c);
    assert!(tower(rec, &r, 0).is_err());
}

#[test]
fn stored_rows_reproduce() {
    let c = catalog();
    for rec in c.records.iter().filter(|r| !r.golden.is_empty()) {
        let Some(words) = rec.subgroup("H") else { continue };
        let r = certify_words(rec, words, &Limits::default()).unwrap();
        assert!(golden_diff(rec, &[r]).is_empty(), "{}", rec.name);
    }
}

#[test]
fn torsion_is_detected() {
    let c = catalog();
    let rec = c.get("Mostow(6,0)").unwrap();
    let (tables, complete) = low_index_candidates(rec, 6, &Default::default()).unwrap();
    assert!(complete);
    for t in &tables {
        let r = certify(rec, t, "lis", &Limits::default()).unwrap();
        assert_eq!(r.torsion_free, Some(false), "index {}", r.index);
        assert!(r.torsion_witness.is_some());
    }
}

#[test]
fn recorded_triangle_maps_verify() {
    let c = catalog();
    let recs: Vec<&LatticeRecord> = ["Mostow(10,0)", "Mostow(18,2/9)", "Mostow(6,0)"].iter().map(|n| c.get(n).unwrap()).collect();
    for v in verify_largeness_maps(&recs, &Limits::default()) {
        assert!(v.diagnostics.is_empty(), "{}: {:?}", v.group, v.diagnostics);
        for m in v.maps.iter().filter(|m| m.note.is_none()) {
            assert_eq!(m.homomorphism, Some(true), "{} {:?}", v.group, m.orders);
            assert_eq!(m.surjective, Some(true), "{} {:?}", v.group, m.orders);
            assert_eq!(6 % m.gamma_mu_index, 0);
        }
        assert!(v.map_index.is_some(), "{}", v.group);
    }
}

#[test]
fn header_rows_use_stored_invariants() {
    let c = catalog();
    let h = header_row(c.get("Mostow(6,0)").unwrap());
    assert_eq!(h.abelianization.as_deref().and_then(AbelianInvariants::parse), AbelianInvariants::parse("Z3+Z6"));
    assert_eq!(h.lcm, Some(36));
    assert_eq!(h.cusps, 1);
}
