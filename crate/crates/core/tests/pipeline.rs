//! Cross-module properties exercised through the public API only.

use frw_spin_core::charts::transition;
use frw_spin_core::curvature::ricci_and_scalar;
use frw_spin_core::frames::{frame_transition, metric_in_frame, minkowski};
use frw_spin_core::spin_lift::{
    closed_form_lift, is_sl2c, is_special_orthochronous, lift, phi, LiftPair, SignConvention,
};
use frw_spin_core::{ChartId, FrameId, Point, ScaleFactor};
use proptest::prelude::*;

fn models() -> Vec<ScaleFactor> {
    ["const:1", "const:2.5", "cosh:1", "linear:1.5,0.3"].iter().map(|s| s.parse().unwrap()).collect()
}

/// Spherical points away from the coordinate and stereographic poles.
fn point() -> impl Strategy<Value = Point> {
    (-1.0f64..1.0, 0.3f64..2.8, 0.3f64..2.8, 0.0f64..std::f64::consts::TAU)
        .prop_map(|(e, chi, th, ph)| Point::new(ChartId::Spherical, [e, chi, th, ph]).unwrap())
}

fn max_abs(m: &nalgebra::Matrix4<f64>) -> f64 {
    m.iter().fold(0.0, |a, v| a.max(v.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chart_round_trip_returns_the_point(p in point()) {
        for c in ChartId::ALL {
            let back = transition(&transition(&p, c).unwrap(), ChartId::Spherical).unwrap();
            for (a, b) in back.coords().iter().zip(p.coords()) {
                prop_assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn every_frame_is_orthonormal_wherever_it_is_defined(p in point()) {
        for sf in models() {
            for f in FrameId::ALL {
                let q = transition(&p, f.home()).unwrap();
                let g = metric_in_frame(f, &q, &sf).unwrap();
                prop_assert!(max_abs(&(g - minkowski())) < 1e-10);
            }
        }
    }

    #[test]
    fn transitions_compose(p in point()) {
        for (a, b, c) in [
            (FrameId::E, FrameId::Ytilde, FrameId::X),
            (FrameId::Y, FrameId::X, FrameId::E),
            (FrameId::X, FrameId::E, FrameId::Ytilde),
        ] {
            let direct = frame_transition(a, c, &p).unwrap();
            let via = frame_transition(b, c, &p).unwrap() * frame_transition(a, b, &p).unwrap();
            prop_assert!(max_abs(&(direct - via)) < 1e-9);
        }
    }

    #[test]
    fn scalar_curvature_does_not_depend_on_the_frame(p in point()) {
        for sf in models() {
            let values: Vec<f64> = FrameId::ALL
                .iter()
                .map(|f| ricci_and_scalar(f, &transition(&p, f.home()).unwrap(), &sf).unwrap().1)
                .collect();
            for v in &values {
                prop_assert!((v - values[0]).abs() < 1e-9 * (1.0 + values[0].abs()));
            }
        }
    }

    #[test]
    fn closed_form_lifts_cover_the_frame_transitions(p in point()) {
        for pair in [LiftPair::YtildeToX, LiftPair::XToYtilde, LiftPair::EToX, LiftPair::EToYtilde] {
            let (from, to) = pair.frames();
            let s = closed_form_lift(pair, &p).unwrap();
            prop_assert!(is_sl2c(&s));
            let l = phi(&s).unwrap();
            prop_assert!(is_special_orthochronous(&l));
            prop_assert!(max_abs(&(l - frame_transition(from, to, &p).unwrap())) < 1e-9);
            let again = lift(&l, SignConvention::FirstNonzeroPositive).unwrap();
            let err = (again - s).norm().min((again + s).norm());
            prop_assert!(err < 1e-9);
        }
    }
}
