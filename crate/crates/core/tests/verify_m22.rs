use symgen_core::verify_m22::{
    build_model, run_all, verify_maximal_subgroups, verify_prop21, verify_relation_families,
    verify_s_structure, Family, COVER_MAX_COSETS,
};

#[test]
fn every_claim_passes_without_covers() {
    let r = run_all(false, COVER_MAX_COSETS).unwrap();
    for c in &r.claims {
        println!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.id, c.detail);
    }
    assert!(r.passed());
}

#[test]
fn family_counts() {
    let m = build_model().unwrap();
    let f = verify_s_structure(&m).unwrap();
    let r = verify_relation_families(&m, &f).unwrap();
    assert!(r.holds(), "{:?}", r.failures);
    assert_eq!(r.count(Family::Alpha), 168);
    assert_eq!(r.count(Family::Beta), 168);
    assert_eq!(r.count(Family::Delta), 168);
    assert_eq!(r.count(Family::Gamma), 336);
    assert_eq!(r.count(Family::Sigma), 336);
    assert_eq!(r.count(Family::Epsilon), 168);
    assert_eq!(r.gamma_separated, 1344);
    assert_eq!(r.find(Family::Alpha, &[2, 3]).unwrap().element, m.y);
    assert_eq!(r.find(Family::Beta, &[1, 12, 8]).unwrap().order, 4);
    assert!(r
        .witnesses
        .iter()
        .filter(|w| w.family == Family::Sigma)
        .all(|w| w.order == 2));
}

#[test]
fn prop21() {
    let m = build_model().unwrap();
    let p = verify_prop21(&m).unwrap();
    assert!(p.holds(), "{:?}", p.failures);
}

#[test]
fn maximal_subgroups() {
    let m = build_model().unwrap();
    let rows = verify_maximal_subgroups(&m).unwrap();
    let orders: Vec<u64> = rows.iter().map(|r| r.order).collect();
    assert_eq!(orders, [20160, 5760, 2520, 2520, 1920, 1344, 720, 660]);
    for r in &rows {
        assert!(r.holds(), "{r:?}");
    }
    assert_eq!(rows[2].printed_stabilized, Some(false));
}
