//! Worked examples across the layers, each checked against a known value.

use eichler_core::eichler::*;
use eichler_core::mnec::{gamma_levels, is_minimal_nec, is_non_eichler_cover};
use eichler_core::quotient::{has_quotient, is_isomorphic, verify_witness};
use eichler_core::verdict::*;
use eichler_core::zoo::{build_str, GroupSpec};
use eichler_core::{coset_enumerate, Presentation};

fn lib() -> Library {
    Library::default()
}

#[test]
fn presentations() {
    let p = Presentation::parse("x | x").unwrap();
    assert_eq!(coset_enumerate(&p, 100).unwrap().order(), 1);
    let q8 = Presentation::parse("x,y | x^4, x^2*Y^2, Y*x*y*x").unwrap();
    assert_eq!(coset_enumerate(&q8, 100).unwrap().order(), 8);
    assert_eq!(build_str("SG(64,14)").unwrap().order(), 64);
}

#[test]
fn specs_and_orders() {
    assert_eq!(build_str("C(1)").unwrap().order(), 1);
    let q24 = build_str("Q(24)").unwrap();
    let involutions = q24.group.elements(100).unwrap().iter().filter(|g| g.order() == 2).count();
    assert_eq!((q24.order(), involutions), (24, 1));
    assert_eq!(build_str("BT x C(2)").unwrap().order(), 48);
    assert_eq!(GroupSpec::parse("Q(24) x C(2)").unwrap().declared_order(), Some(48));
    assert_eq!(build_str("BI").unwrap().order(), 120);
    assert!(GroupSpec::parse("Q(24) x").is_err());
}

#[test]
fn classes_and_sylow() {
    let cap = 1000;
    let sizes = |s: &str| build_str(s).unwrap().group.conjugacy_classes(cap).unwrap().sizes;
    assert_eq!(sizes("C(4)"), vec![1, 1, 1, 1]);
    let mut q8 = sizes("Q(8)");
    q8.sort();
    assert_eq!(q8, vec![1, 1, 2, 2, 2]);
    assert_eq!(sizes("BT").len(), 7);
    let sylow = |s: &str, p| build_str(s).unwrap().group.sylow_subgroup(p, cap).unwrap();
    let s = sylow("C(6)", 2);
    assert!(s.order() == 2 && s.is_cyclic(cap).unwrap());
    let s = sylow("Q(28)", 2);
    assert!(s.order() == 4 && s.is_cyclic(cap).unwrap());
    let s = sylow("Q(24)", 2);
    assert!(s.order() == 8 && !s.is_cyclic(cap).unwrap() && s.is_generalized_quaternion(cap).unwrap());
}

#[test]
fn quaternionic_counts() {
    let l = lib();
    for (s, m) in [
        ("C(12)", 0),
        ("C(2) x C(2) x C(3)", 0),
        ("BT x C(2)", 2),
        ("BI x BI", 4),
        ("SG(100,7)", 12),
        ("BT x BI", 3),
    ] {
        assert_eq!(l.get(s).unwrap().m_quaternionic(), m, "{s}");
    }
    let q8 = l.get("Q(8)").unwrap();
    let mut degrees = q8.table.degrees.clone();
    degrees.sort();
    assert_eq!(degrees, vec![1, 1, 1, 1, 2]);
    let bt = l.get("BT").unwrap();
    let quaternionic = (0..7).filter(|&i| bt.table.degrees[i] == 2 && bt.table.indicators[i] == -1).count();
    assert_eq!(quaternionic, 1);
}

#[test]
fn lattices() {
    let l = lib();
    assert_eq!(l.get("C(7)").unwrap().lattice.len(), 2);
    let orders: Vec<u64> = l.get("Q(8)").unwrap().lattice.iter().map(|n| n.order).collect();
    assert_eq!(orders, vec![1, 2, 4, 4, 4, 8]);
    // Q16: 1, Z, C4, C8, two Q8, Q16
    assert_eq!(l.get("Q(16)").unwrap().lattice.len(), 7);
}

#[test]
fn isomorphism_and_quotients() {
    let l = lib();
    let caps = l.caps;
    let q8 = l.get("Q(8)").unwrap();
    assert!(!is_isomorphic(&q8, &l.get("C(8)").unwrap(), &caps).unwrap());
    assert!(!is_isomorphic(&q8, &l.get("perm[4]: (1,2,3,4);(1,3)").unwrap(), &caps).unwrap());
    assert!(is_isomorphic(&q8, &l.get("x,y | x^4, x^2*Y^2, Y*x*y*x").unwrap(), &caps).unwrap());
    let g32 = l.get("SG(32,14)").unwrap();
    let w = has_quotient(&g32, &l.get("C(1)").unwrap(), &caps).unwrap().unwrap();
    assert_eq!(w.kernel.order, 32);
    let w = has_quotient(&g32, &q8, &caps).unwrap().unwrap();
    assert!(verify_witness(&g32, &q8, &w, &caps).unwrap());
    assert!(has_quotient(&l.get("Q(12)").unwrap(), &q8, &caps).unwrap().is_none());
    assert!(has_quotient(&q8, &l.get("C(2) x C(2)").unwrap(), &caps).unwrap().is_some());
}

#[test]
fn eichler_predicates() {
    let l = lib();
    let caps = l.caps;
    assert!(is_eichler(&l.get("C(6)").unwrap()));
    let bt = l.get("BT").unwrap();
    assert!(is_eichler_quotient(&l.get("BT x C(3)").unwrap(), &bt, &caps).unwrap().is_some());
    assert!(is_eichler_simple(&l.get("Q(8)").unwrap()));
    assert!(is_eichler_simple(&l.get("SG(32,14)").unwrap()));
    assert!(binary_polyhedral_quotients(&l.get("C(12)").unwrap(), &l).unwrap().is_empty());
    let targets: Vec<_> = pc_targets(48).iter().map(|e| l.get(e).unwrap()).collect();
    assert!(is_s_eichler(&l.get("BT x C(2)").unwrap(), &targets, &caps).unwrap().is_none());
    let targets: Vec<_> = pc_targets(24).iter().map(|e| l.get(e).unwrap()).collect();
    let (i, _) = is_s_eichler(&l.get("Q(8) x C(3)").unwrap(), &targets, &caps).unwrap().unwrap();
    assert_eq!(targets[i].name, "Q(8)");
}

#[test]
fn covers() {
    let l = lib();
    let caps = l.caps;
    let c1 = l.get("C(1)").unwrap();
    let q8 = l.get("Q(8)").unwrap();
    assert!(is_non_eichler_cover(&q8, &c1, &caps).unwrap());
    assert!(!is_non_eichler_cover(&q8, &q8, &caps).unwrap());
    assert!(!is_non_eichler_cover(&l.get("BT x C(3)").unwrap(), &l.get("BT").unwrap(), &caps).unwrap());
    assert!(is_minimal_nec(&q8, &c1, &caps).unwrap());
    assert!(is_minimal_nec(&l.get("SG(32,14)").unwrap(), &q8, &caps).unwrap());
    assert!(!is_minimal_nec(&l.get("Q(8) x C(2)").unwrap(), &c1, &caps).unwrap());
    let g = gamma_levels(&[l.get("Q(8)").unwrap(), l.get("C(5)").unwrap()], 0, &l).unwrap();
    assert_eq!(g.nodes.len(), 1);
}

#[test]
fn verdicts() {
    let l = lib();
    let st = |f: fn(&eichler_core::info::GroupInfo, &Library) -> eichler_core::Result<Verdict>, s: &str| {
        f(&l.get(s).unwrap(), &l).unwrap().status
    };
    assert_eq!(st(classify, "Q(8)"), Status::Pc);
    assert_eq!(st(classify, "Q(24)"), Status::FailsSfc);
    assert_eq!(st(classify, "SG(32,14)"), Status::FailsSfc);
    assert_eq!(st(classify, "BT x C(2)"), Status::Pc);
    assert_eq!(st(classify, "SG(384,18129)"), Status::Open);
    assert_eq!(st(classify_two_group, "C(16)"), Status::Pc);
    assert_eq!(st(classify_two_group, "Q(32)"), Status::FailsSfc);
    assert_eq!(st(classify_two_group, "Q(16) x C(2)"), Status::FailsSfc);
    assert_eq!(st(classify_c22, "Q(8)"), Status::Pc);
    assert_eq!(st(classify_c22, "Q(8) x C(2)"), Status::FailsSfc);
    assert_eq!(st(classify_c22, "Q(24)"), Status::FailsSfc);
    assert_eq!(st(classify_periodic, "Q(20)"), Status::Pc);
    assert_eq!(st(classify_periodic, "Q(36)"), Status::FailsSfc);
    assert!(classify_two_group(&l.get("C(6)").unwrap(), &l).is_err());
    assert!(classify_periodic(&l.get("C(2) x C(2)").unwrap(), &l).is_err());
}

#[test]
fn txc2_criterion() {
    let l = lib();
    let r = txc2_equivalence_check(&l.get("BT x C(2)").unwrap(), &l).unwrap();
    assert!(r.eichler_quotient.is_some() && r.blockers.is_empty());
    for s in ["BT x C(2) x C(2)", "BT x Q(12)"] {
        let r = txc2_equivalence_check(&l.get(s).unwrap(), &l).unwrap();
        assert!(r.eichler_quotient.is_none() && !r.blockers.is_empty() && r.agrees(), "{s}");
    }
}
