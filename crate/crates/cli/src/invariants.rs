//! Invariant suites run by `verify` alongside the table comparisons.
//!
//! Each check yields a residual and a base tolerance; the base tolerances
//! are stated for a run tolerance of `1e-9` and scale with it.

use nalgebra::Matrix4;
use num_complex::Complex64;

use frw_spin_core::connection::{
    gamma_general, gamma_special, metric_compatibility_residual, parallel_residuals, torsion_residual,
};
use frw_spin_core::curvature::{
    antisymmetry_residual, bianchi_residual, check_intertwining, curvature, ricci_off_diagonal,
};
use frw_spin_core::frames::{
    commutators, commutators_fd, frame_transition, jacobi_residual, metric_in_frame, minkowski,
};
use frw_spin_core::spin_bundles::{basic_field, dirac_matrices, BasicField, Variant};
use frw_spin_core::spin_lift::{closed_form_lift, is_special_orthochronous, lift, phi, LiftPair, SignConvention};
use frw_spin_core::{ChartId, FrameId, FramePair, Point, Result, ScaleFactor, SpinMatrix2, SpinMatrix4, MINKOWSKI};

/// The run tolerance the base tolerances are stated for.
pub const NOMINAL_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    /// Base tolerance; zero means the identity must hold exactly.
    pub tolerance: f64,
}

impl Check {
    fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Check { name: name.into(), residual, tolerance }
    }

    fn boolean(name: impl Into<String>, ok: bool) -> Self {
        Check::new(name, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    pub fn scaled_tolerance(&self, run_tol: f64) -> f64 {
        self.tolerance * (run_tol / NOMINAL_TOLERANCE)
    }

    pub fn passes(&self, run_tol: f64) -> bool {
        self.residual.is_finite() && self.residual <= self.scaled_tolerance(run_tol)
    }
}

fn max_abs(m: &Matrix4<f64>) -> f64 {
    m.iter().fold(0.0, |a, v| a.max(v.abs()))
}

fn max_abs_c<const N: usize>(m: &nalgebra::SMatrix<Complex64, N, N>) -> f64 {
    m.iter().fold(0.0, |a, v| a.max(v.norm()))
}

/// Frames living on a chart.
pub fn frames_on(chart: ChartId) -> Vec<FrameId> {
    FrameId::ALL.into_iter().filter(|f| f.home() == chart).collect()
}

fn frame_checks(frame: FrameId, p: &Point, sf: &ScaleFactor, out: &mut Vec<Check>) -> Result<()> {
    let n = frame.name();
    let g = metric_in_frame(frame, p, sf)?;
    out.push(Check::new(format!("inv.frame-metric.{n}"), max_abs(&(g - minkowski())), 1e-10));

    let ad = commutators(frame, p, sf)?.c;
    let fd = commutators_fd(frame, p, sf, 1e-5)?.c;
    let mut diff = 0.0f64;
    for k in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                diff = diff.max((ad[k][i][j] - fd[k][i][j]).abs());
            }
        }
    }
    out.push(Check::new(format!("inv.commutator-fd.{n}"), diff, 1e-6));
    out.push(Check::new(format!("inv.jacobi.{n}"), jacobi_residual(frame, p, sf)?, 1e-9));
    out.push(Check::new(format!("inv.torsion.{n}"), torsion_residual(&frame, p, sf)?, 1e-10));
    out.push(Check::new(format!("inv.metric-compatibility.{n}"), metric_compatibility_residual(&frame, p, sf)?, 1e-10));

    let general = gamma_general(&frame, p, sf)?;
    let special = gamma_special(frame, p, sf)?;
    let mut d = 0.0f64;
    for k in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                d = d.max((general[k][i][j] - special[k][i][j]).abs());
            }
        }
    }
    out.push(Check::new(format!("inv.gamma-general-vs-special.{n}"), d, 1e-9));
    Ok(())
}

fn pair_checks(frame: FrameId, p: &Point, sf: &ScaleFactor, out: &mut Vec<Check>) -> Result<()> {
    let pair = FramePair::for_frame(frame);
    let n = frame.name();
    out.push(Check::new(format!("inv.parallel-fields.{n}"), parallel_residuals(pair, p, sf)?.max(), 1e-9));

    let reps = pair.basic_field_reps(p)?;
    let canonical = basic_field(BasicField::Gamma, Variant::Standard);
    out.push(Check::new(format!("inv.gamma-equivariance.{n}"), reps.gamma.max_abs_diff(&canonical)?, 1e-9));
    out.push(Check::boolean(format!("inv.classification.{n}"), pair.classify_at(p)? == pair.class()));
    out.push(Check::new(format!("inv.intertwining.{n}"), check_intertwining(pair, p, sf)?, 1e-9));

    let c = curvature(pair, p, sf)?;
    out.push(Check::new(format!("inv.bianchi.{n}"), bianchi_residual(&c.riemann), 1e-9));
    out.push(Check::new(format!("inv.antisymmetry.{n}"), antisymmetry_residual(&c), 1e-9));
    out.push(Check::new(format!("inv.ricci-off-diagonal.{n}"), ricci_off_diagonal(&c.ricci), 1e-10));
    Ok(())
}

fn lorentz_residual(l: &Matrix4<f64>) -> f64 {
    let g = minkowski();
    max_abs(&(l.transpose() * g * l - g))
}

fn transition_checks(p: &Point, out: &mut Vec<Check>) -> Result<()> {
    let s = frame_transition(FrameId::Y, FrameId::X, p)?;
    let st = frame_transition(FrameId::Ytilde, FrameId::X, p)?;
    let id = Matrix4::<f64>::identity();
    out.push(Check::new("inv.det.Y->X", (s.determinant() + 1.0).abs(), 1e-10));
    out.push(Check::new("inv.det.Ytilde->X", (st.determinant() - 1.0).abs(), 1e-10));
    out.push(Check::new("inv.lorentz.Ytilde->X", lorentz_residual(&st), 1e-10));
    out.push(Check::boolean("inv.orthochronous.Ytilde->X", is_special_orthochronous(&st)));
    out.push(Check::new("inv.square.Y->X", max_abs(&(s * s - id)), 1e-10));
    out.push(Check::new("inv.square.Ytilde->X", max_abs(&(st * st - id)), 1e-10));
    for pair in [LiftPair::YtildeToX, LiftPair::XToYtilde] {
        double_cover(pair, p, out)?;
    }
    Ok(())
}

fn double_cover(pair: LiftPair, p: &Point, out: &mut Vec<Check>) -> Result<()> {
    let (from, to) = pair.frames();
    let s = closed_form_lift(pair, p)?;
    let l = frame_transition(from, to, p)?;
    out.push(Check::new(format!("inv.double-cover.{}", pair.name()), max_abs(&(phi(&s)? - l)), 1e-9));
    Ok(())
}

fn spherical_checks(p: &Point, out: &mut Vec<Check>) -> Result<()> {
    for pair in [LiftPair::EToX, LiftPair::EToYtilde] {
        double_cover(pair, p, out)?;
        let (from, to) = pair.frames();
        let l = frame_transition(from, to, p)?;
        out.push(Check::new(format!("inv.lorentz.{}", pair.name()), lorentz_residual(&l), 1e-10));
        out.push(Check::boolean(format!("inv.orthochronous.{}", pair.name()), is_special_orthochronous(&l)));
    }
    let hat = closed_form_lift(LiftPair::EToX, p)?;
    let tilde = closed_form_lift(LiftPair::YtildeToX, p)?;
    let check = closed_form_lift(LiftPair::EToYtilde, p)?;
    out.push(Check::new("inv.factorization.spin", max_abs_c(&(hat - tilde * check)), 1e-9));
    let l_hat = frame_transition(FrameId::E, FrameId::X, p)?;
    let l_tilde = frame_transition(FrameId::Ytilde, FrameId::X, p)?;
    let l_check = frame_transition(FrameId::E, FrameId::Ytilde, p)?;
    out.push(Check::new("inv.factorization.lorentz", max_abs(&(l_hat - l_tilde * l_check)), 1e-9));
    Ok(())
}

/// Every per-point check for a point sampled in `chart`.
pub fn point_checks(chart: ChartId, p: &Point, sf: &ScaleFactor, frame_filter: Option<FrameId>) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for frame in frames_on(chart).into_iter().filter(|f| frame_filter.is_none_or(|g| g == *f)) {
        frame_checks(frame, p, sf, &mut out)?;
        pair_checks(frame, p, sf, &mut out)?;
    }
    match chart {
        ChartId::Spherical => spherical_checks(p, &mut out)?,
        _ => transition_checks(p, &mut out)?,
    }
    Ok(out)
}

/// Clifford relations of the constant Dirac matrices, checked exactly.
pub fn clifford_check() -> Check {
    let gam = dirac_matrices();
    let mut worst = 0.0f64;
    for m in 0..4 {
        for n in 0..4 {
            let anti = gam[m] * gam[n] + gam[n] * gam[m];
            let g = if m == n { MINKOWSKI[m] } else { 0.0 };
            let want = SpinMatrix4::identity() * Complex64::new(2.0 * g, 0.0);
            worst = worst.max(max_abs_c(&(anti - want)));
        }
    }
    Check::new("inv.clifford", worst, 0.0)
}

/// `phi(lift(L)) = L` and `lift(L) = +-s` for `L = phi(s)`.
pub fn lift_round_trip(s: &SpinMatrix2) -> Result<(f64, f64)> {
    let l = phi(s)?;
    let back = lift(&l, SignConvention::FirstNonzeroPositive)?;
    let scale = max_abs(&l).max(1.0);
    let lorentz = max_abs(&(phi(&back)? - l)) / scale;
    let spin = max_abs_c(&(back - s)).min(max_abs_c(&(back + s))) / max_abs_c(s).max(1.0);
    Ok((lorentz, spin))
}
