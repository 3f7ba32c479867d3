//! The double cover `phi: SL(2,C) -> SO+(1,3)` and its inverse up to sign.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex64;

use crate::charts::{self, ChartId, Point};
use crate::error::GeometryError;
use crate::frames::{minkowski, FrameId};
use crate::Result;

pub type SpinMatrix2 = Matrix2<Complex64>;
pub type SpinMatrix4 = Matrix4<Complex64>;
pub type LorentzMatrix = Matrix4<f64>;

/// Absolute tolerance of every group-membership predicate.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-10;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `sigma_0 = I` followed by the three Pauli matrices.
pub fn pauli() -> [SpinMatrix2; 4] {
    let (o, z) = (c(1.0), c(0.0));
    [
        Matrix2::new(o, z, z, o),
        Matrix2::new(z, o, o, z),
        Matrix2::new(z, -I, I, z),
        Matrix2::new(o, z, z, -o),
    ]
}

pub fn is_sl2c(s: &SpinMatrix2) -> bool {
    (s.determinant() - c(1.0)).norm() <= MEMBERSHIP_TOLERANCE
}

/// `L^T eta L = eta`, `det L = 1` and `L^0_0 >= 1`.
pub fn is_special_orthochronous(l: &LorentzMatrix) -> bool {
    let eta = minkowski();
    (l.transpose() * eta * l - eta).abs().max() <= MEMBERSHIP_TOLERANCE
        && (l.determinant() - 1.0).abs() <= MEMBERSHIP_TOLERANCE
        && l[(0, 0)] >= 1.0 - MEMBERSHIP_TOLERANCE
}

fn phi_raw(s: &SpinMatrix2) -> LorentzMatrix {
    let sg = pauli();
    let sd = s.adjoint();
    let images: Vec<SpinMatrix2> = sg.iter().map(|q| s * q * sd).collect();
    Matrix4::from_fn(|p, q| 0.5 * (sg[p] * images[q]).trace().re)
}

/// `L^p_q = tr(sigma_p s sigma_q s^dagger) / 2`, i.e.
/// `s sigma_q s^dagger = sum_p L^p_q sigma_p`.
pub fn phi(s: &SpinMatrix2) -> Result<LorentzMatrix> {
    if !is_sl2c(s) {
        return Err(GeometryError::Membership(format!("det = {} is not 1", s.determinant())));
    }
    Ok(phi_raw(s))
}

/// How the sign ambiguity of the lift is resolved.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SignConvention {
    /// The first entry (row-major) with modulus above `1e-12` gets a positive
    /// real part, or a positive imaginary part when the real part is within
    /// `1e-12` of zero.
    #[default]
    FirstNonzeroPositive,
}

impl SignConvention {
    pub fn apply(&self, s: SpinMatrix2) -> SpinMatrix2 {
        let first = [s[(0, 0)], s[(0, 1)], s[(1, 0)], s[(1, 1)]].into_iter().find(|z| z.norm() > 1e-12);
        match first {
            Some(z) if z.re < -1e-12 || (z.re.abs() <= 1e-12 && z.im < 0.0) => -s,
            _ => s,
        }
    }
}

fn unpack(v: &[f64]) -> SpinMatrix2 {
    Matrix2::new(
        Complex64::new(v[0], v[1]),
        Complex64::new(v[2], v[3]),
        Complex64::new(v[4], v[5]),
        Complex64::new(v[6], v[7]),
    )
}

/// Solves `phi(s) = L` for `s` in `SL(2,C)`.
///
/// With `H_q = sum_p L^p_q sigma_p` the condition `s sigma_q s^dagger = H_q`
/// is rewritten as `s sigma_q = H_q eps conj(s) eps^-1`, which is real-linear
/// in the entries of `s` and homogeneous.  Its real null space is one
/// dimensional; the null vector is found by SVD and normalised to `det = 1`.
pub fn lift(l: &LorentzMatrix, sign: SignConvention) -> Result<SpinMatrix2> {
    if !is_special_orthochronous(l) {
        return Err(GeometryError::Membership("matrix is not in SO+(1,3)".into()));
    }
    let sg = pauli();
    let h: Vec<SpinMatrix2> =
        (0..4).map(|q| (0..4).fold(SpinMatrix2::zeros(), |acc, p| acc + sg[p] * c(l[(p, q)]))).collect();
    let eps = Matrix2::new(c(0.0), c(1.0), c(-1.0), c(0.0));
    let eps_inv = -eps;
    let mut a = DMatrix::<f64>::zeros(32, 8);
    for k in 0..8 {
        let mut v = [0.0; 8];
        v[k] = 1.0;
        let s = unpack(&v);
        let sbar = s.map(|z| z.conj());
        for q in 0..4 {
            let r = s * sg[q] - h[q] * eps * sbar * eps_inv;
            for (e, z) in r.iter().enumerate() {
                a[(8 * q + 2 * e, k)] = z.re;
                a[(8 * q + 2 * e + 1, k)] = z.im;
            }
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.ok_or_else(|| GeometryError::Conditioning("SVD failed".into()))?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let smax = svd.singular_values[order[7]];
    let (s0, s1) = (svd.singular_values[order[0]], svd.singular_values[order[1]]);
    if s0 > 1e-8 * smax || s1 < 1e-6 * smax {
        return Err(GeometryError::Conditioning(format!(
            "null space not one dimensional (singular values {s0:e}, {s1:e})"
        )));
    }
    let null: Vec<f64> = v_t.row(order[0]).iter().copied().collect();
    let s = unpack(&null);
    let s = s / s.determinant().sqrt();
    let s = sign.apply(s);
    if (phi_raw(&s) - l).abs().max() > 1e-9 {
        return Err(GeometryError::Conditioning("lift does not reproduce the input".into()));
    }
    Ok(s)
}

/// Tangent-frame pairs with an explicit spin lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiftPair {
    /// `PhiTilde_i = sum_j S^j_i Psi_j`, covering `Ytilde -> X`.
    YtildeToX,
    /// The inverse, covering `X -> Ytilde`.
    XToYtilde,
    /// `Xi -> Psi`, covering `E -> X`.
    EToX,
    /// `Xi -> PhiTilde`, covering `E -> Ytilde`.
    EToYtilde,
}

impl LiftPair {
    pub const ALL: [LiftPair; 4] = [
        LiftPair::YtildeToX,
        LiftPair::XToYtilde,
        LiftPair::EToX,
        LiftPair::EToYtilde,
    ];

    /// `(from, to)` tangent frames; `phi(lift)` equals
    /// `frame_transition(from, to)`.
    pub fn frames(&self) -> (FrameId, FrameId) {
        match self {
            LiftPair::YtildeToX => (FrameId::Ytilde, FrameId::X),
            LiftPair::XToYtilde => (FrameId::X, FrameId::Ytilde),
            LiftPair::EToX => (FrameId::E, FrameId::X),
            LiftPair::EToYtilde => (FrameId::E, FrameId::Ytilde),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LiftPair::YtildeToX => "Ytilde->X",
            LiftPair::XToYtilde => "X->Ytilde",
            LiftPair::EToX => "E->X",
            LiftPair::EToYtilde => "E->Ytilde",
        }
    }
}

impl fmt::Display for LiftPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LiftPair {
    type Err = GeometryError;
    fn from_str(s: &str) -> Result<Self> {
        LiftPair::ALL
            .into_iter()
            .find(|p| p.name() == s.trim())
            .ok_or_else(|| GeometryError::Usage(format!("unknown lift pair '{s}'")))
    }
}

fn stereo_lift(x: &[f64; 4], sign: f64) -> SpinMatrix2 {
    let n = (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt();
    Matrix2::new(I * x[3], I * x[1] + x[2], I * x[1] - x[2], -I * x[3]) * c(sign / n)
}

fn half_phase(a: f64) -> Complex64 {
    Complex64::from_polar(1.0, a / 2.0)
}

/// Explicit spin lift of a tangent-frame transition.
pub fn closed_form_lift(pair: LiftPair, p: &Point) -> Result<SpinMatrix2> {
    match pair {
        LiftPair::YtildeToX => {
            let q = charts::transition(p, ChartId::SouthStereo)?;
            require_overlap(&q)?;
            Ok(stereo_lift(&q.coords(), 1.0))
        }
        LiftPair::XToYtilde => {
            let q = charts::transition(p, ChartId::NorthStereo)?;
            require_overlap(&q)?;
            Ok(stereo_lift(&q.coords(), -1.0))
        }
        LiftPair::EToX | LiftPair::EToYtilde => {
            let q = charts::transition(p, ChartId::Spherical)?;
            let [_, _, theta, ph] = q.coords();
            let m = if pair == LiftPair::EToX {
                Matrix2::new(
                    half_phase(ph + theta),
                    -half_phase(ph - theta),
                    half_phase(theta - ph),
                    half_phase(-theta - ph),
                ) * c(FRAC_1_SQRT_2)
            } else {
                Matrix2::new(
                    -half_phase(ph - theta),
                    half_phase(ph + theta),
                    half_phase(-theta - ph),
                    half_phase(theta - ph),
                ) * (I * FRAC_1_SQRT_2)
            };
            Ok(m)
        }
    }
}

fn require_overlap(q: &Point) -> Result<()> {
    if q.spatial_norm() < charts::POLE_TOLERANCE {
        return Err(GeometryError::ChartDomain("spin lift undefined at the stereographic origin".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::frame_transition;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    fn sl2c() -> impl Strategy<Value = SpinMatrix2> {
        proptest::array::uniform8(-2.0..2.0f64)
            .prop_map(|v| unpack(&v))
            .prop_filter("well conditioned", |m| m.determinant().norm() > 0.05)
            .prop_map(|m| m / m.determinant().sqrt())
    }

    fn max_diff2(a: &SpinMatrix2, b: &SpinMatrix2) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn phi_examples() {
        assert!((phi(&SpinMatrix2::identity()).unwrap() - Matrix4::identity()).abs().max() < 1e-15);
        let d = Matrix2::new(I, c(0.0), c(0.0), -I);
        let expect = Matrix4::from_diagonal(&[1.0, -1.0, -1.0, 1.0].into());
        assert!((phi(&d).unwrap() - expect).abs().max() < 1e-15);
        assert!(matches!(phi(&(SpinMatrix2::identity() * c(2.0))), Err(GeometryError::Membership(_))));
    }

    #[test]
    fn lift_examples() {
        let id = lift(&Matrix4::identity(), SignConvention::default()).unwrap();
        assert!(max_diff2(&id, &SpinMatrix2::identity()) < 1e-12);
        let p = Point::new(ChartId::SouthStereo, [0.0, 0.0, 0.0, 1.0]).unwrap();
        let st = frame_transition(FrameId::Ytilde, FrameId::X, &p).unwrap();
        let s = lift(&st, SignConvention::default()).unwrap();
        assert!(max_diff2(&s, &Matrix2::new(I, c(0.0), c(0.0), -I)) < 1e-12);
        let bad = Matrix4::from_diagonal(&[1.0, 1.0, 1.0, -1.0].into());
        assert!(matches!(lift(&bad, SignConvention::default()), Err(GeometryError::Membership(_))));
    }

    #[test]
    fn predicates() {
        assert!(is_special_orthochronous(&Matrix4::identity()));
        assert!(!is_special_orthochronous(&Matrix4::from_diagonal(&[1.0, 1.0, 1.0, -1.0].into())));
        assert!(!is_special_orthochronous(&Matrix4::from_diagonal(&[-1.0, -1.0, 1.0, 1.0].into())));
        let p = Point::new(ChartId::SouthStereo, [0.0, 0.3, 1.2, -0.7]).unwrap();
        assert!(!is_special_orthochronous(&frame_transition(FrameId::Y, FrameId::X, &p).unwrap()));
        assert!(is_special_orthochronous(&frame_transition(FrameId::Ytilde, FrameId::X, &p).unwrap()));
        assert!(is_sl2c(&SpinMatrix2::identity()));
        assert!(!is_sl2c(&(SpinMatrix2::identity() * I)));
    }

    #[test]
    fn closed_form_example() {
        let p = Point::new(ChartId::SouthStereo, [0.0, 0.0, 0.0, 1.0]).unwrap();
        let s = closed_form_lift(LiftPair::YtildeToX, &p).unwrap();
        assert!(max_diff2(&s, &Matrix2::new(I, c(0.0), c(0.0), -I)) < 1e-15);
        let origin = Point::new(ChartId::SouthStereo, [0.0; 4]).unwrap();
        assert!(closed_form_lift(LiftPair::YtildeToX, &origin).is_err());
    }

    fn spherical_point() -> impl Strategy<Value = Point> {
        (-1.0..1.0f64, 0.2..PI - 0.2, 0.2..PI - 0.2, 0.0..TAU)
            .prop_map(|(t, a, b, c)| Point::new(ChartId::Spherical, [t, a, b, c]).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn phi_is_a_homomorphism(a in sl2c(), b in sl2c()) {
            let lhs = phi(&(a * b)).unwrap();
            let rhs = phi(&a).unwrap() * phi(&b).unwrap();
            prop_assert!((lhs - rhs).abs().max() < 1e-9);
            prop_assert!((phi(&-a).unwrap() - phi(&a).unwrap()).abs().max() < 1e-12);
            prop_assert!(is_special_orthochronous(&phi(&a).unwrap()));
        }

        #[test]
        fn lift_round_trip(s in sl2c()) {
            let l = phi(&s).unwrap();
            let up = lift(&l, SignConvention::default()).unwrap();
            prop_assert!((phi(&up).unwrap() - l).abs().max() < 1e-9);
            prop_assert!(max_diff2(&up, &s).min(max_diff2(&up, &-s)) < 1e-8);
            prop_assert!((up.determinant() - c(1.0)).norm() < 1e-10);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn closed_forms_cover_frame_transitions(p in spherical_point()) {
            for pair in LiftPair::ALL {
                let s = closed_form_lift(pair, &p).unwrap();
                let (from, to) = pair.frames();
                let l = frame_transition(from, to, &p).unwrap();
                prop_assert!(is_sl2c(&s));
                prop_assert!((phi(&s).unwrap() - l).abs().max() < 1e-9, "{pair}");
            }
            let st = closed_form_lift(LiftPair::YtildeToX, &p).unwrap();
            let tt = closed_form_lift(LiftPair::XToYtilde, &p).unwrap();
            prop_assert!(max_diff2(&st, &-tt) < 1e-12);
            prop_assert!(max_diff2(&(st * st), &-SpinMatrix2::identity()) < 1e-12);
            prop_assert!(max_diff2(&(st * tt), &SpinMatrix2::identity()) < 1e-12);
            let shat = closed_form_lift(LiftPair::EToX, &p).unwrap();
            let scheck = closed_form_lift(LiftPair::EToYtilde, &p).unwrap();
            prop_assert!(max_diff2(&shat, &(st * scheck)) < 1e-9);
        }
    }
}
