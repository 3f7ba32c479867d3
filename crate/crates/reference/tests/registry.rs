use std::collections::BTreeSet;

use frw_spin_core::charts::transition;
use frw_spin_core::spin_lift::SpinMatrix2;
use frw_spin_core::{ChartId, Point, ScaleFactor};
use frw_spin_reference::registry::{engine_phi, entry, homomorphism_of};
use frw_spin_reference::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn models() -> Vec<ScaleFactor> {
    ["const:1", "const:2.5", "cosh:1", "linear:1.5,0.3"].iter().map(|s| s.parse().unwrap()).collect()
}

fn axis() -> impl Strategy<Value = f64> {
    (0.2f64..3.0, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v })
}

fn sample_point() -> impl Strategy<Value = Point> {
    let sph = (-1.0f64..1.0, 0.2f64..2.94, 0.2f64..2.94, 0.0f64..std::f64::consts::TAU)
        .prop_map(|(e, a, b, c)| Point::new(ChartId::Spherical, [e, a, b, c]).unwrap());
    let north = (-1.0f64..1.0, axis(), axis(), axis())
        .prop_map(|(e, a, b, c)| Point::new(ChartId::NorthStereo, [e, a, b, c]).unwrap());
    let south = (-1.0f64..1.0, axis(), axis(), axis())
        .prop_map(|(e, a, b, c)| Point::new(ChartId::SouthStereo, [e, a, b, c]).unwrap());
    prop_oneof![sph, north, south]
}

/// Carries the point into the quantity's home chart when it has one.
fn placed(id: &str, p: &Point) -> Point {
    match entry(id).unwrap().home {
        Home::Chart(c) => transition(p, c).unwrap(),
        Home::Native => *p,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn every_table_agrees_with_the_engine(p in sample_point()) {
        for sf in models() {
            for e in REGISTRY {
                let q = placed(e.id, &p);
                let r = compare(e.id, &q, &sf, 1e-9).unwrap();
                let bad: Vec<_> = r.entries.iter().filter(|x| x.status == Status::Mismatch).collect();
                prop_assert!(bad.is_empty(), "{} at {:?} with {}: {:?}", e.id, q, sf, bad);
            }
        }
    }
}

proptest! {
    #[test]
    fn componentwise_homomorphism_matches_engine(
        a in -2.0f64..2.0, b in -2.0f64..2.0, c in -2.0f64..2.0, d in -2.0f64..2.0,
        e in -2.0f64..2.0, f in -2.0f64..2.0,
    ) {
        let m11 = Complex64::new(1.0 + a.abs(), b);
        let m12 = Complex64::new(c, d);
        let m21 = Complex64::new(e, f);
        let m22 = (Complex64::new(1.0, 0.0) + m12 * m21) / m11;
        let s = SpinMatrix2::new(m11, m12, m21, m22);
        let table = homomorphism_of(&s);
        let engine = engine_phi(&s).unwrap();
        for (x, y) in table.values.iter().zip(&engine) {
            prop_assert!((x - y).norm() < 1e-9 * (1.0 + y.norm()));
        }
    }
}

#[test]
fn suspected_errata_are_exactly_the_flagged_entries() {
    let p = Point::new(ChartId::Spherical, [0.35, 1.2, 0.9, 2.0]).unwrap();
    let sf: ScaleFactor = "cosh:1".parse().unwrap();
    let mut seen = BTreeSet::new();
    for e in REGISTRY {
        let q = placed(e.id, &p);
        let table = evaluate_reference(e.id, &q, &sf).unwrap();
        let r = compare(e.id, &q, &sf, 1e-9).unwrap();
        assert!(r.passed(), "{}", e.id);
        let flagged: BTreeSet<Vec<usize>> =
            table.errata.iter().map(|x| x.index.iter().zip(&table.axes).map(|(i, a)| a.report(*i)).collect()).collect();
        for x in r.entries.iter().filter(|x| x.status == Status::SuspectedErratum) {
            assert!(flagged.contains(&x.indices), "{} {:?}", e.id, x.indices);
            seen.insert(e.id);
        }
    }
    let expected: BTreeSet<&str> = [
        "c.X",
        "c.Y",
        "Ttilde",
        "Dirac.Ttilde",
        "Gamma.X",
        "Gamma.Y",
        "A.X",
        "A.Y",
        "Riemann",
        "Spinor",
    ]
    .into_iter()
    .collect();
    assert_eq!(seen, expected);
}

#[test]
fn radius_one_hides_dimension_errata() {
    let p = Point::new(ChartId::NorthStereo, [0.0, 0.7, -0.4, 1.3]).unwrap();
    let sf = ScaleFactor::constant(1.0).unwrap();
    for id in ["c.X", "c.E"] {
        let q = placed(id, &p);
        let r = compare(id, &q, &sf, 1e-9).unwrap();
        assert_eq!(r.count(Status::SuspectedErratum), 0, "{id}");
    }
    let r = compare("Gamma.X", &p, &sf, 1e-9).unwrap();
    let odd: Vec<_> = r.entries.iter().filter(|e| e.status != Status::Match).collect();
    assert_eq!(odd.len(), 1);
    assert_eq!(odd[0].indices, vec![1, 1, 3]);
}

#[test]
fn second_a_component_reports_the_half_factor() {
    let p = Point::new(ChartId::NorthStereo, [0.5, 0.3, 0.9, -1.1]).unwrap();
    let sf: ScaleFactor = "cosh:1".parse().unwrap();
    let r = compare("A.X", &p, &sf, 1e-9).unwrap();
    let e = r.entries.iter().find(|e| e.indices == vec![2, 1, 1]).unwrap();
    assert_eq!(e.status, Status::SuspectedErratum);
    let jet = sf.evaluate(0.5).unwrap();
    let want = jet.dr / (2.0 * jet.r * jet.r) - (-1.1) / (2.0 * jet.r);
    assert!((e.computed.re - want).abs() < 1e-12);
}

#[test]
fn unknown_id_and_domain_errors() {
    let p = Point::new(ChartId::Spherical, [0.0, 1.0, 1.0, 1.0]).unwrap();
    let sf = ScaleFactor::constant(1.0).unwrap();
    assert!(evaluate_reference("nope", &p, &sf).is_err());
    let axis = Point::new(ChartId::NorthStereo, [0.0, 0.0, 0.0, 1.0]).unwrap();
    assert!(evaluate_reference("Shat", &axis, &sf).is_err());
}

#[test]
fn registry_ids_are_unique() {
    let ids: BTreeSet<_> = REGISTRY.iter().map(|e| e.id).collect();
    assert_eq!(ids.len(), REGISTRY.len());
}
