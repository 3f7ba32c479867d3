//! Catalogue of reference quantities and their engine counterparts.

use num_complex::Complex64;

use frw_spin_core::charts::{self, ChartId};
use frw_spin_core::connection::{a_components, gamma_special};
use frw_spin_core::curvature::{ricci_and_scalar, riemann, spinor_curvature};
use frw_spin_core::frames::{commutators, frame_transition, FrameId};
use frw_spin_core::spin_bundles::{
    basic_field, dirac_transition, transform, BasicField, FramePair, SpinTensorComponents, SpinorFrame, Variant,
};
use frw_spin_core::spin_lift::{closed_form_lift, lift, phi, LiftPair, SignConvention, SpinMatrix2};
use frw_spin_core::{GeometryError, LorentzMatrix, Point, Result, ScaleFactor, SpinMatrix4};

use crate::coords::{coords_of, Coords};
use crate::tables::{self, ReferenceTensor};

/// Where the sampled points of a quantity live.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Home {
    /// The quantity is tied to one chart.
    Chart(ChartId),
    /// Evaluated in the native frame of whatever chart the point is in.
    Native,
}

/// One closed-form table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReferenceEntry {
    pub id: &'static str,
    pub home: Home,
    /// Which printed table the evaluator transcribes.
    pub source: &'static str,
}

const N: Home = Home::Chart(ChartId::NorthStereo);
const S: Home = Home::Chart(ChartId::SouthStereo);
const E: Home = Home::Chart(ChartId::Spherical);

macro_rules! entry {
    ($id:expr, $home:expr, $src:expr) => {
        ReferenceEntry { id: $id, home: $home, source: $src }
    };
}

/// Every reference quantity, in a fixed order.
pub const REGISTRY: &[ReferenceEntry] = &[
    entry!("c.X", N, "commutation coefficients of the north frame"),
    entry!("c.Y", S, "commutation coefficients of the south frame"),
    entry!("c.E", E, "commutation coefficients of the spherical frame"),
    entry!("S", S, "Y -> X transition matrix"),
    entry!("T", N, "X -> Y transition matrix"),
    entry!("Stilde", S, "Ytilde -> X transition matrix"),
    entry!("Ttilde", N, "X -> Ytilde transition matrix"),
    entry!("Shat", E, "E -> X transition matrix"),
    entry!("Scheck", E, "E -> Ytilde transition matrix"),
    entry!("phi.Stilde", S, "homomorphism written componentwise, applied to the Ytilde -> X lift"),
    entry!("phi.Shat", E, "homomorphism written componentwise, applied to the E -> X lift"),
    entry!("phi.Scheck", E, "homomorphism written componentwise, applied to the E -> Ytilde lift"),
    entry!("lift.Stilde", S, "Weyl lift of Ytilde -> X"),
    entry!("lift.Ttilde", N, "Weyl lift of X -> Ytilde"),
    entry!("lift.Shat", E, "Weyl lift of E -> X"),
    entry!("lift.Scheck", E, "Weyl lift of E -> Ytilde"),
    entry!("lift.Stilde.sph", E, "Weyl lift of Ytilde -> X in angular variables"),
    entry!("G", S, "Infeld-van der Waerden symbols in the (PhiTilde, Ytilde) pair"),
    entry!("G.Y", S, "Infeld-van der Waerden symbols in the (PhiTilde, Y) pair"),
    entry!("d2", S, "Weyl skew metric in the PhiTilde frame"),
    entry!("d4", S, "Dirac skew metric in the (PhiTilde, Ytilde) pair"),
    entry!("H", S, "chirality operator in the (PhiTilde, Ytilde) pair"),
    entry!("D", S, "Dirac form in the (PhiTilde, Ytilde) pair"),
    entry!("gamma", S, "Dirac matrices in the (PhiTilde, Ytilde) pair"),
    entry!("gamma.E", E, "Dirac matrices in the (Xi, E) pair"),
    entry!("d4.Phi", S, "Dirac skew metric in the (Phi, Y) pair"),
    entry!("H.Phi", S, "chirality operator in the (Phi, Y) pair"),
    entry!("D.Phi", S, "Dirac form in the (Phi, Y) pair"),
    entry!("gamma.Phi", S, "Dirac matrices in the (Phi, Y) pair"),
    entry!("Dirac.Stilde", S, "Dirac transition PhiTilde -> Psi"),
    entry!("Dirac.Ttilde", N, "Dirac transition Psi -> PhiTilde"),
    entry!("Dirac.S", S, "Dirac transition Phi -> Psi"),
    entry!("Dirac.T", N, "Dirac transition Psi -> Phi"),
    entry!("Dirac.Shat", E, "Dirac transition Xi -> Psi"),
    entry!("Dirac.Scheck", E, "Dirac transition Xi -> PhiTilde"),
    entry!("Dirac.Stilde.sph", E, "Dirac transition PhiTilde -> Psi in angular variables"),
    entry!("Dirac.Scheck.Phi", E, "Dirac transition Xi -> Phi"),
    entry!("Gamma.X", N, "Levi-Civita components in the north frame"),
    entry!("Gamma.Y", S, "Levi-Civita components in the south frame"),
    entry!("Gamma.E", E, "Levi-Civita components in the spherical frame"),
    entry!("A.X", N, "spinor connection in the (Psi, X) pair"),
    entry!("A.Y", S, "spinor connection in the (Phi, Y) pair"),
    entry!("A.E", E, "spinor connection in the (Xi, E) pair"),
    entry!("Riemann", Home::Native, "Riemann tensor"),
    entry!("Spinor", Home::Native, "spinor curvature"),
    entry!("Ricci", Home::Native, "Ricci tensor"),
    entry!("Scalar", Home::Native, "scalar curvature"),
];

pub fn entry(id: &str) -> Result<&'static ReferenceEntry> {
    REGISTRY
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| GeometryError::Usage(format!("unknown reference quantity '{id}'")))
}

fn native_frame(p: &Point) -> FrameId {
    FrameId::native(p.chart())
}

/// The printed table evaluated at `p`.
pub fn evaluate_reference(id: &str, p: &Point, sf: &ScaleFactor) -> Result<ReferenceTensor> {
    entry(id)?;
    let c: Coords = coords_of(p);
    let jet = || sf.evaluate(c.eta);
    Ok(match id {
        "c.X" => tables::commutators_stereo(c.north()?, &jet()?),
        "c.Y" => tables::commutators_stereo(c.south()?, &jet()?),
        "c.E" => tables::commutators_spherical(c.spherical()?, &jet()?),
        "S" => tables::transition_s(c.south()?),
        "T" => tables::transition_t(c.north()?),
        "Stilde" => tables::transition_s_tilde(c.south()?),
        "Ttilde" => tables::transition_t_tilde(c.north()?),
        "Shat" => tables::transition_s_hat(c.spherical()?),
        "Scheck" => tables::transition_s_check(c.spherical()?),
        "phi.Stilde" => tables::homomorphism_s_tilde(c.south()?),
        "phi.Shat" => tables::homomorphism_s_hat(c.spherical()?),
        "phi.Scheck" => tables::homomorphism_s_check(c.spherical()?),
        "lift.Stilde" => tables::lift_s_tilde(c.south()?),
        "lift.Ttilde" => tables::lift_t_tilde(c.north()?),
        "lift.Shat" => tables::lift_s_hat(c.spherical()?),
        "lift.Scheck" => tables::lift_s_check(c.spherical()?),
        "lift.Stilde.sph" => tables::lift_s_tilde_spherical(c.spherical()?),
        "G" => tables::g_canonical(),
        "G.Y" => tables::g_left(),
        "d2" => tables::d_weyl(),
        "d4" => tables::d_dirac(1.0),
        "H" => tables::chirality(1.0),
        "D" | "D.Phi" => tables::dirac_form(1.0),
        "gamma" | "gamma.E" | "gamma.Phi" => tables::dirac_gamma(),
        "d4.Phi" => tables::d_dirac(-1.0),
        "H.Phi" => tables::chirality(-1.0),
        "Dirac.Stilde" => tables::dirac_s_tilde(c.south()?),
        "Dirac.Ttilde" => tables::dirac_t_tilde(c.north()?),
        "Dirac.S" => tables::dirac_s(c.south()?),
        "Dirac.T" => tables::dirac_t(c.north()?),
        "Dirac.Shat" => tables::dirac_s_hat(c.spherical()?),
        "Dirac.Scheck" => tables::dirac_s_check(c.spherical()?),
        "Dirac.Stilde.sph" => tables::dirac_s_tilde_spherical(c.spherical()?),
        "Dirac.Scheck.Phi" => tables::dirac_s_check_phi(c.spherical()?),
        "Gamma.X" => tables::gamma_stereo(c.north()?, &jet()?),
        "Gamma.Y" => tables::gamma_stereo(c.south()?, &jet()?),
        "Gamma.E" => tables::gamma_spherical(c.spherical()?, &jet()?),
        "A.X" => tables::a_stereo(c.north()?, &jet()?),
        "A.Y" => tables::a_stereo(c.south()?, &jet()?),
        "A.E" => tables::a_spherical(c.spherical()?, &jet()?),
        "Riemann" => tables::riemann(&jet()?),
        "Spinor" => tables::spinor_curvature(&jet()?),
        "Ricci" => tables::ricci(&jet()?),
        "Scalar" => tables::scalar(&jet()?),
        _ => unreachable!("registry and evaluator out of sync"),
    })
}

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn lorentz(m: &LorentzMatrix) -> Vec<Complex64> {
    (0..4).flat_map(|i| (0..4).map(move |j| re(m[(i, j)]))).collect()
}

fn weyl(m: &SpinMatrix2) -> Vec<Complex64> {
    (0..2).flat_map(|i| (0..2).map(move |j| m[(i, j)])).collect()
}

fn dirac(m: &SpinMatrix4) -> Vec<Complex64> {
    (0..4).flat_map(|i| (0..4).map(move |j| m[(i, j)])).collect()
}

fn flat3<T: Copy>(a: &[[[T; 4]; 4]; 4], f: impl Fn(T) -> Complex64) -> Vec<Complex64> {
    a.iter().flatten().flatten().map(|v| f(*v)).collect()
}

fn flat4<T: Copy>(a: &[[[[T; 4]; 4]; 4]; 4], f: impl Fn(T) -> Complex64) -> Vec<Complex64> {
    a.iter().flatten().flatten().flatten().map(|v| f(*v)).collect()
}

fn inverse(m: &LorentzMatrix) -> Result<LorentzMatrix> {
    m.try_inverse().ok_or_else(|| GeometryError::Conditioning("singular frame transition".into()))
}

/// Weyl field components in the `PhiTilde` frame against a chosen tangent
/// frame, obtained from the canonical `(Psi, X)` ones.
fn weyl_field(field: BasicField, tangent: FrameId, p: &Point) -> Result<SpinTensorComponents> {
    let m = closed_form_lift(LiftPair::YtildeToX, p)?;
    let m_inv = m.try_inverse().ok_or_else(|| GeometryError::Conditioning("singular spin transition".into()))?;
    let l_inv = inverse(&frame_transition(tangent, FrameId::X, p)?)?;
    transform(&basic_field(field, Variant::Standard), &m_inv, &l_inv)
}

/// Engine lift of a tangent transition, with the overall sign chosen to
/// sit closest to `reference`; the lift is only defined up to sign.
fn aligned_lift(from: FrameId, to: FrameId, p: &Point, reference: &[Complex64]) -> Result<Vec<Complex64>> {
    let s = lift(&frame_transition(from, to, p)?, SignConvention::FirstNonzeroPositive)?;
    let v = weyl(&s);
    let dist = |sign: f64| -> f64 { v.iter().zip(reference).map(|(a, b)| (a * sign - b).norm()).fold(0.0, f64::max) };
    let sign = if dist(-1.0) < dist(1.0) { -1.0 } else { 1.0 };
    Ok(v.into_iter().map(|z| z * sign).collect())
}

/// The engine's value of a quantity at `p`, laid out like the reference
/// table of the same id.
pub fn evaluate_engine(id: &str, p: &Point, sf: &ScaleFactor) -> Result<Vec<Complex64>> {
    let home = entry(id)?.home;
    let q = match home {
        Home::Chart(chart) => charts::transition(p, chart)?,
        Home::Native => *p,
    };
    let p = &q;
    use FrameId::{Ytilde, E as Ef, X, Y};
    let lift_ref = |id: &str| evaluate_reference(id, p, sf).map(|t| t.values);
    Ok(match id {
        "c.X" | "c.Y" | "c.E" => {
            let frame = native_frame(p);
            flat3(&commutators(frame, p, sf)?.c, re)
        }
        "S" => lorentz(&frame_transition(Y, X, p)?),
        "T" => lorentz(&frame_transition(X, Y, p)?),
        "Stilde" | "phi.Stilde" => lorentz(&frame_transition(Ytilde, X, p)?),
        "Ttilde" => lorentz(&frame_transition(X, Ytilde, p)?),
        "Shat" | "phi.Shat" => lorentz(&frame_transition(Ef, X, p)?),
        "Scheck" | "phi.Scheck" => lorentz(&frame_transition(Ef, Ytilde, p)?),
        "lift.Stilde" | "lift.Stilde.sph" => aligned_lift(Ytilde, X, p, &lift_ref(id)?)?,
        "lift.Ttilde" => aligned_lift(X, Ytilde, p, &lift_ref(id)?)?,
        "lift.Shat" => aligned_lift(Ef, X, p, &lift_ref(id)?)?,
        "lift.Scheck" => aligned_lift(Ef, Ytilde, p, &lift_ref(id)?)?,
        "G" => weyl_field(BasicField::G, Ytilde, p)?.values().to_vec(),
        "G.Y" => weyl_field(BasicField::G, Y, p)?.values().to_vec(),
        "d2" => weyl_field(BasicField::D2, Ytilde, p)?.values().to_vec(),
        "d4" | "H" | "D" | "gamma" | "gamma.E" | "d4.Phi" | "H.Phi" | "D.Phi" | "gamma.Phi" => {
            let tangent = match id {
                "gamma.E" => Ef,
                "d4.Phi" | "H.Phi" | "D.Phi" | "gamma.Phi" => Y,
                _ => Ytilde,
            };
            let reps = FramePair::for_frame(tangent).basic_field_reps(p)?;
            let field = match id.split('.').next().unwrap_or(id) {
                "d4" => reps.d,
                "H" => reps.h,
                "D" => reps.dirac_form,
                _ => reps.gamma,
            };
            field.values().to_vec()
        }
        "Dirac.Stilde" | "Dirac.Stilde.sph" => dirac(&dirac_transition(SpinorFrame::PhiTilde, SpinorFrame::Psi, p)?),
        "Dirac.Ttilde" => dirac(&dirac_transition(SpinorFrame::Psi, SpinorFrame::PhiTilde, p)?),
        "Dirac.S" => dirac(&dirac_transition(SpinorFrame::Phi, SpinorFrame::Psi, p)?),
        "Dirac.T" => dirac(&dirac_transition(SpinorFrame::Psi, SpinorFrame::Phi, p)?),
        "Dirac.Shat" => dirac(&dirac_transition(SpinorFrame::Xi, SpinorFrame::Psi, p)?),
        "Dirac.Scheck" => dirac(&dirac_transition(SpinorFrame::Xi, SpinorFrame::PhiTilde, p)?),
        "Dirac.Scheck.Phi" => dirac(&dirac_transition(SpinorFrame::Xi, SpinorFrame::Phi, p)?),
        "Gamma.X" | "Gamma.Y" | "Gamma.E" => flat3(&gamma_special(native_frame(p), p, sf)?, re),
        "A.X" | "A.Y" | "A.E" => {
            let pair = FramePair::for_frame(native_frame(p));
            flat3(&a_components(pair, p, sf)?.a, |z| z)
        }
        "Riemann" => flat4(&riemann(&native_frame(p), p, sf)?, re),
        "Spinor" => flat4(&spinor_curvature(FramePair::for_frame(native_frame(p)), p, sf)?, |z| z),
        "Ricci" => {
            let (ricci, _) = ricci_and_scalar(&native_frame(p), p, sf)?;
            ricci.iter().flatten().map(|v| re(*v)).collect()
        }
        "Scalar" => vec![re(ricci_and_scalar(&native_frame(p), p, sf)?.1)],
        _ => unreachable!("registry and evaluator out of sync"),
    })
}

/// Applies the componentwise homomorphism table to an arbitrary matrix;
/// exposed so the table can be checked against the engine's `phi`.
pub fn homomorphism_of(s: &SpinMatrix2) -> ReferenceTensor {
    tables::homomorphism([[s[(0, 0)], s[(0, 1)]], [s[(1, 0)], s[(1, 1)]]])
}

/// Engine `phi` laid out as a table, for the same comparison.
pub fn engine_phi(s: &SpinMatrix2) -> Result<Vec<Complex64>> {
    Ok(lorentz(&phi(s)?))
}
