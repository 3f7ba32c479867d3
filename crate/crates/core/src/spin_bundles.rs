//! Basic fields of the Weyl and Dirac bundles, their transformation law,
//! frame-pair classification and Dirac-frame transition matrices.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::charts::Point;
use crate::error::GeometryError;
use crate::frames::{frame_transition, FrameId};
use crate::spin_lift::{closed_form_lift, pauli, LiftPair, LorentzMatrix, SpinMatrix2, SpinMatrix4};
use crate::Result;

/// Tolerance used to recognise `+canonical` or `-canonical` component arrays.
pub const CLASSIFICATION_TOLERANCE: f64 = 1e-9;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Index counts `(r, s | rho, sigma | m, n)`: upper and lower spinor, upper
/// and lower conjugate-spinor, upper and lower spatial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinTensorType {
    pub r: usize,
    pub s: usize,
    pub rho: usize,
    pub sigma: usize,
    pub m: usize,
    pub n: usize,
}

impl SpinTensorType {
    pub const fn new(r: usize, s: usize, rho: usize, sigma: usize, m: usize, n: usize) -> Self {
        SpinTensorType { r, s, rho, sigma, m, n }
    }

    pub fn rank(&self) -> usize {
        self.r + self.s + self.rho + self.sigma + self.m + self.n
    }

    fn slots(&self) -> Vec<Slot> {
        let mut v = Vec::with_capacity(self.rank());
        v.extend(std::iter::repeat_n(Slot::UpperSpinor, self.r));
        v.extend(std::iter::repeat_n(Slot::LowerSpinor, self.s));
        v.extend(std::iter::repeat_n(Slot::UpperConj, self.rho));
        v.extend(std::iter::repeat_n(Slot::LowerConj, self.sigma));
        v.extend(std::iter::repeat_n(Slot::UpperSpatial, self.m));
        v.extend(std::iter::repeat_n(Slot::LowerSpatial, self.n));
        v
    }
}

impl fmt::Display for SpinTensorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}|{},{}|{},{})", self.r, self.s, self.rho, self.sigma, self.m, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    UpperSpinor,
    LowerSpinor,
    UpperConj,
    LowerConj,
    UpperSpatial,
    LowerSpatial,
}

impl Slot {
    fn is_spatial(self) -> bool {
        matches!(self, Slot::UpperSpatial | Slot::LowerSpatial)
    }
}

/// Dense component array of a spin-tensorial field.
///
/// Indices are stored in the order upper spinor, lower spinor, upper
/// conjugate, lower conjugate, upper spatial, lower spatial, row-major.
/// Spinor indices run over `0..spin_dim`, spatial ones over `0..4`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinTensorComponents {
    ty: SpinTensorType,
    spin_dim: usize,
    values: Vec<Complex64>,
}

impl SpinTensorComponents {
    pub fn new(ty: SpinTensorType, spin_dim: usize, values: Vec<Complex64>) -> Result<Self> {
        if spin_dim != 2 && spin_dim != 4 {
            return Err(GeometryError::Shape(format!("spinor dimension must be 2 or 4, got {spin_dim}")));
        }
        let out = SpinTensorComponents { ty, spin_dim, values: Vec::new() };
        let len = out.shape().iter().product::<usize>();
        if values.len() != len {
            return Err(GeometryError::Shape(format!(
                "type {ty} with spinor dimension {spin_dim} needs {len} values, got {}",
                values.len()
            )));
        }
        Ok(SpinTensorComponents { values, ..out })
    }

    pub fn zeros(ty: SpinTensorType, spin_dim: usize) -> Result<Self> {
        let len = SpinTensorComponents { ty, spin_dim, values: Vec::new() }.shape().iter().product();
        Self::new(ty, spin_dim, vec![c(0.0); len])
    }

    pub fn tensor_type(&self) -> SpinTensorType {
        self.ty
    }

    pub fn spin_dim(&self) -> usize {
        self.spin_dim
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn shape(&self) -> Vec<usize> {
        self.ty.slots().into_iter().map(|s| if s.is_spatial() { 4 } else { self.spin_dim }).collect()
    }

    fn offset(&self, idx: &[usize]) -> Result<usize> {
        let shape = self.shape();
        if idx.len() != shape.len() || idx.iter().zip(&shape).any(|(i, n)| i >= n) {
            return Err(GeometryError::Shape(format!("index {idx:?} out of range for shape {shape:?}")));
        }
        Ok(idx.iter().zip(&shape).fold(0, |acc, (i, n)| acc * n + i))
    }

    pub fn get(&self, idx: &[usize]) -> Result<Complex64> {
        Ok(self.values[self.offset(idx)?])
    }

    pub fn set(&mut self, idx: &[usize], v: Complex64) -> Result<()> {
        let k = self.offset(idx)?;
        self.values[k] = v;
        Ok(())
    }

    /// All multi-indices in storage order.
    pub fn indices(&self) -> Vec<Vec<usize>> {
        let shape = self.shape();
        (0..self.values.len())
            .map(|mut k| {
                let mut idx = vec![0; shape.len()];
                for (slot, n) in shape.iter().enumerate().rev() {
                    idx[slot] = k % n;
                    k /= n;
                }
                idx
            })
            .collect()
    }

    pub fn scaled(&self, f: Complex64) -> Self {
        SpinTensorComponents { values: self.values.iter().map(|v| v * f).collect(), ..self.clone() }
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.ty != other.ty || self.spin_dim != other.spin_dim {
            return Err(GeometryError::Shape("component arrays of different type".into()));
        }
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// Contracts slot `slot` with `m`: `out[.., a, ..] = sum_b m[a, b] in[.., b, ..]`.
    fn mode_product(&self, slot: usize, m: &DMatrix<Complex64>) -> Self {
        let shape = self.shape();
        let n = shape[slot];
        let inner: usize = shape[slot + 1..].iter().product();
        let outer: usize = shape[..slot].iter().product();
        let mut out = vec![c(0.0); self.values.len()];
        for o in 0..outer {
            for a in 0..n {
                for k in 0..inner {
                    let mut acc = c(0.0);
                    for b in 0..n {
                        acc += m[(a, b)] * self.values[(o * n + b) * inner + k];
                    }
                    out[(o * n + a) * inner + k] = acc;
                }
            }
        }
        SpinTensorComponents { values: out, ..self.clone() }
    }
}

/// Spinor transition matrices accepted by [`transform`].
pub trait SpinTransform {
    fn to_dynamic(&self) -> DMatrix<Complex64>;
}

impl SpinTransform for SpinMatrix2 {
    fn to_dynamic(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(2, 2, |i, j| self[(i, j)])
    }
}

impl SpinTransform for SpinMatrix4 {
    fn to_dynamic(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(4, 4, |i, j| self[(i, j)])
    }
}

/// Applies the index transformation law: upper spinor indices are contracted
/// with `spin`, lower ones with its inverse, conjugate indices with the
/// complex conjugates, and spatial indices with `lorentz` or its inverse.
///
/// For a transition `from_i = sum_k M^k_i to_k` with tangent part `L`,
/// the components in the `from` pair are `transform(to_components, M^-1, L^-1)`.
pub fn transform<S: SpinTransform>(
    comp: &SpinTensorComponents,
    spin: &S,
    lorentz: &LorentzMatrix,
) -> Result<SpinTensorComponents> {
    let t = spin.to_dynamic();
    if t.nrows() != comp.spin_dim {
        return Err(GeometryError::Shape(format!(
            "{}x{} spin matrix for spinor dimension {}",
            t.nrows(),
            t.ncols(),
            comp.spin_dim
        )));
    }
    let t_inv_tr =
        t.clone().try_inverse().ok_or_else(|| GeometryError::Conditioning("singular spin matrix".into()))?.transpose();
    let l = DMatrix::from_fn(4, 4, |i, j| c(lorentz[(i, j)]));
    let l_inv_tr = lorentz
        .try_inverse()
        .ok_or_else(|| GeometryError::Conditioning("singular Lorentz matrix".into()))?
        .transpose()
        .map(c);
    let l_inv_tr = DMatrix::from_fn(4, 4, |i, j| l_inv_tr[(i, j)]);
    let mut out = comp.clone();
    for (k, slot) in comp.ty.slots().into_iter().enumerate() {
        let m = match slot {
            Slot::UpperSpinor => t.clone(),
            Slot::LowerSpinor => t_inv_tr.clone(),
            Slot::UpperConj => t.map(|z| z.conj()),
            Slot::LowerConj => t_inv_tr.map(|z| z.conj()),
            Slot::UpperSpatial => l.clone(),
            Slot::LowerSpatial => l_inv_tr.clone(),
        };
        out = out.mode_product(k, &m);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasicField {
    /// Weyl skew metric `d_ij`.
    D2,
    /// Dirac skew metric `d_ij`.
    D4,
    /// Chirality operator `H^i_j`.
    H,
    /// Dirac form `D_{i jbar}`.
    D,
    /// Infeld-van der Waerden field `G^{i ibar}_q`.
    G,
    /// Dirac field `gamma^a_{bq}`.
    Gamma,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Variant {
    #[default]
    Standard,
    /// The negated array, as in anti-orthonormal, antichiral and
    /// anti-self-adjoint frames.
    Opposite,
}

impl BasicField {
    pub const ALL: [BasicField; 6] = [
        BasicField::D2,
        BasicField::D4,
        BasicField::H,
        BasicField::D,
        BasicField::G,
        BasicField::Gamma,
    ];

    pub fn tensor_type(&self) -> SpinTensorType {
        match self {
            BasicField::D2 | BasicField::D4 => SpinTensorType::new(0, 2, 0, 0, 0, 0),
            BasicField::H => SpinTensorType::new(1, 1, 0, 0, 0, 0),
            BasicField::D => SpinTensorType::new(0, 1, 0, 1, 0, 0),
            BasicField::G => SpinTensorType::new(1, 0, 1, 0, 0, 1),
            BasicField::Gamma => SpinTensorType::new(1, 1, 0, 0, 0, 1),
        }
    }

    pub fn spin_dim(&self) -> usize {
        match self {
            BasicField::D2 | BasicField::G => 2,
            _ => 4,
        }
    }
}

fn weyl_metric() -> Matrix2<Complex64> {
    Matrix2::new(c(0.0), c(1.0), c(-1.0), c(0.0))
}

fn block_diag(a: &SpinMatrix2, b: &SpinMatrix2) -> SpinMatrix4 {
    let mut m = SpinMatrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(b);
    m
}

fn block_antidiag(a: &SpinMatrix2, b: &SpinMatrix2) -> SpinMatrix4 {
    let mut m = SpinMatrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(a);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(b);
    m
}

/// The four Dirac matrices `gamma_q`, with `gamma_q[(a, b)] = gamma^a_{bq}`.
pub fn dirac_matrices() -> [SpinMatrix4; 4] {
    let s = pauli();
    let mut out = [SpinMatrix4::zeros(); 4];
    out[0] = block_antidiag(&s[0], &s[0]);
    for q in 1..4 {
        out[q] = block_antidiag(&s[q], &(-s[q]));
    }
    out
}

fn from_matrix4(ty: SpinTensorType, m: &SpinMatrix4) -> SpinTensorComponents {
    let values = (0..4).flat_map(|i| (0..4).map(move |j| m[(i, j)])).collect();
    SpinTensorComponents { ty, spin_dim: 4, values }
}

/// Canonical component array of a basic field.
pub fn basic_field(name: BasicField, variant: Variant) -> SpinTensorComponents {
    let ty = name.tensor_type();
    let comp = match name {
        BasicField::D2 => {
            let e = weyl_metric();
            SpinTensorComponents { ty, spin_dim: 2, values: vec![e[(0, 0)], e[(0, 1)], e[(1, 0)], e[(1, 1)]] }
        }
        BasicField::D4 => {
            let e = weyl_metric();
            from_matrix4(ty, &block_diag(&e, &(-e)))
        }
        BasicField::H => {
            let id = SpinMatrix2::identity();
            from_matrix4(ty, &block_diag(&id, &(-id)))
        }
        BasicField::D => {
            let id = SpinMatrix2::identity();
            from_matrix4(ty, &block_antidiag(&id, &id))
        }
        BasicField::G => {
            let s = pauli();
            let mut values = Vec::with_capacity(16);
            for i in 0..2 {
                for ib in 0..2 {
                    for q in 0..4 {
                        values.push(s[q][(i, ib)]);
                    }
                }
            }
            SpinTensorComponents { ty, spin_dim: 2, values }
        }
        BasicField::Gamma => {
            let g = dirac_matrices();
            let mut values = Vec::with_capacity(64);
            for a in 0..4 {
                for b in 0..4 {
                    for q in 0..4 {
                        values.push(g[q][(a, b)]);
                    }
                }
            }
            SpinTensorComponents { ty, spin_dim: 4, values }
        }
    };
    match variant {
        Variant::Standard => comp,
        Variant::Opposite => comp.scaled(c(-1.0)),
    }
}

/// Extends a Weyl transition matrix to the Dirac bundle as
/// `diag(s, (s^dagger)^-1)`; for unitary `s` this is `diag(s, s)`.
///
/// The second block acts on the conjugate-dual half of the Dirac bundle, so
/// it must be the contragredient conjugate of `s` for the extension to
/// preserve `gamma` for every `s` in `SL(2,C)`.
pub fn chiral_extension(s: &SpinMatrix2) -> SpinMatrix4 {
    let lower = s.adjoint().try_inverse().unwrap_or_else(|| Matrix2::from_element(c(f64::NAN)));
    block_diag(s, &lower)
}

/// Which side of a transition is the P-reversed frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReversedFrame {
    From,
    To,
}

/// The frame-label permutation `1<->3, 2<->4`.
pub fn p_permutation() -> SpinMatrix4 {
    let id = SpinMatrix2::identity();
    block_antidiag(&id, &id)
}

/// Re-expresses a transition `from_i = sum_k t^k_i to_k` after P-reversing
/// one of its frames: the columns are permuted when the reversed frame is the
/// source and the rows when it is the target.
pub fn p_reversion(t: &SpinMatrix4, reversed: ReversedFrame) -> SpinMatrix4 {
    match reversed {
        ReversedFrame::From => t * p_permutation(),
        ReversedFrame::To => p_permutation() * t,
    }
}

/// The four rows of the special-frame diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FramePairClass {
    /// Orthonormal, chiral, self-adjoint.
    CanonChiral,
    /// Anti-orthonormal, antichiral, self-adjoint.
    PReverseAntichiral,
    /// Orthonormal, antichiral, anti-self-adjoint.
    TReverseAntichiral,
    /// Anti-orthonormal, chiral, anti-self-adjoint.
    PTReverseChiral,
}

impl fmt::Display for FramePairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn sign_against(rep: &SpinTensorComponents, field: BasicField) -> Result<bool> {
    let canon = basic_field(field, Variant::Standard);
    let plus = rep.max_abs_diff(&canon)?;
    let minus = rep.max_abs_diff(&canon.scaled(c(-1.0)))?;
    if plus <= CLASSIFICATION_TOLERANCE {
        Ok(true)
    } else if minus <= CLASSIFICATION_TOLERANCE {
        Ok(false)
    } else {
        Err(GeometryError::Classification(format!(
            "{field:?} is not +/- its canonical matrix (deviation {:e})",
            plus.min(minus)
        )))
    }
}

/// Classifies a Dirac frame by the signs of `d`, `H` and `D` relative to
/// their canonical arrays.
pub fn classify_frame_pair(
    d_rep: &SpinTensorComponents,
    h_rep: &SpinTensorComponents,
    dirac_rep: &SpinTensorComponents,
) -> Result<FramePairClass> {
    let signs = (
        sign_against(d_rep, BasicField::D4)?,
        sign_against(h_rep, BasicField::H)?,
        sign_against(dirac_rep, BasicField::D)?,
    );
    match signs {
        (true, true, true) => Ok(FramePairClass::CanonChiral),
        (false, false, true) => Ok(FramePairClass::PReverseAntichiral),
        (true, false, false) => Ok(FramePairClass::TReverseAntichiral),
        (false, true, false) => Ok(FramePairClass::PTReverseChiral),
        (d, h, dd) => Err(GeometryError::Classification(format!(
            "sign pattern (d {}, H {}, D {}) matches no frame type",
            if d { '+' } else { '-' },
            if h { '+' } else { '-' },
            if dd { '+' } else { '-' }
        ))),
    }
}

/// Dirac frames constructed on the three charts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpinorFrame {
    Psi,
    PhiTilde,
    /// P-reversion of `PhiTilde`.
    Phi,
    Xi,
}

impl SpinorFrame {
    pub const ALL: [SpinorFrame; 4] = [
        SpinorFrame::Psi,
        SpinorFrame::PhiTilde,
        SpinorFrame::Phi,
        SpinorFrame::Xi,
    ];

    /// The tangent frame this spinor frame is associated with.
    pub fn tangent(&self) -> FrameId {
        match self {
            SpinorFrame::Psi => FrameId::X,
            SpinorFrame::PhiTilde => FrameId::Ytilde,
            SpinorFrame::Phi => FrameId::Y,
            SpinorFrame::Xi => FrameId::E,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SpinorFrame::Psi => "Psi",
            SpinorFrame::PhiTilde => "PhiTilde",
            SpinorFrame::Phi => "Phi",
            SpinorFrame::Xi => "Xi",
        }
    }

    /// `M` with `self_i = sum_k M^k_i Psi_k`.
    fn to_psi(self, p: &Point) -> Result<SpinMatrix4> {
        Ok(match self {
            SpinorFrame::Psi => SpinMatrix4::identity(),
            SpinorFrame::PhiTilde => chiral_extension(&closed_form_lift(LiftPair::YtildeToX, p)?),
            SpinorFrame::Phi => {
                p_reversion(&chiral_extension(&closed_form_lift(LiftPair::YtildeToX, p)?), ReversedFrame::From)
            }
            SpinorFrame::Xi => chiral_extension(&closed_form_lift(LiftPair::EToX, p)?),
        })
    }
}

impl fmt::Display for SpinorFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Transition between Dirac frames: `from_i = sum_k M^k_i to_k`.
pub fn dirac_transition(from: SpinorFrame, to: SpinorFrame, p: &Point) -> Result<SpinMatrix4> {
    let a = from.to_psi(p)?;
    let b = to.to_psi(p)?;
    let b_inv = b.try_inverse().ok_or_else(|| GeometryError::Conditioning("singular Dirac transition".into()))?;
    Ok(b_inv * a)
}

/// An associated pair of a Dirac frame and a tangent frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FramePair {
    spinor: SpinorFrame,
    tangent: FrameId,
}

/// Basic fields expressed in a frame pair.
#[derive(Clone, Debug, PartialEq)]
pub struct BasicFieldReps {
    pub d: SpinTensorComponents,
    pub h: SpinTensorComponents,
    pub dirac_form: SpinTensorComponents,
    pub gamma: SpinTensorComponents,
}

impl FramePair {
    pub const ALL: [FramePair; 4] = [
        FramePair { spinor: SpinorFrame::Psi, tangent: FrameId::X },
        FramePair { spinor: SpinorFrame::PhiTilde, tangent: FrameId::Ytilde },
        FramePair { spinor: SpinorFrame::Phi, tangent: FrameId::Y },
        FramePair { spinor: SpinorFrame::Xi, tangent: FrameId::E },
    ];

    pub fn new(spinor: SpinorFrame, tangent: FrameId) -> Result<Self> {
        if spinor.tangent() != tangent {
            return Err(GeometryError::Usage(format!("{spinor} is not associated with the tangent frame {tangent}")));
        }
        Ok(FramePair { spinor, tangent })
    }

    /// The associated pair built on a tangent frame.
    pub fn for_frame(tangent: FrameId) -> Self {
        FramePair::ALL.into_iter().find(|p| p.tangent == tangent).expect("every tangent frame has an associated pair")
    }

    pub fn spinor(&self) -> SpinorFrame {
        self.spinor
    }

    pub fn tangent(&self) -> FrameId {
        self.tangent
    }

    pub fn class(&self) -> FramePairClass {
        match self.spinor {
            SpinorFrame::Phi => FramePairClass::PReverseAntichiral,
            _ => FramePairClass::CanonChiral,
        }
    }

    /// `d`, `H`, `D` and `gamma` in this pair, obtained by transforming the
    /// canonical arrays from the `(Psi, X)` pair.
    pub fn basic_field_reps(&self, p: &Point) -> Result<BasicFieldReps> {
        let m = dirac_transition(self.spinor, SpinorFrame::Psi, p)?;
        let l = frame_transition(self.tangent, FrameId::X, p)?;
        let m_inv = m.try_inverse().ok_or_else(|| GeometryError::Conditioning("singular Dirac transition".into()))?;
        let l_inv = l.try_inverse().ok_or_else(|| GeometryError::Conditioning("singular frame transition".into()))?;
        let rep = |f| transform(&basic_field(f, Variant::Standard), &m_inv, &l_inv);
        Ok(BasicFieldReps {
            d: rep(BasicField::D4)?,
            h: rep(BasicField::H)?,
            dirac_form: rep(BasicField::D)?,
            gamma: rep(BasicField::Gamma)?,
        })
    }

    /// Classification computed from the transformed basic fields at `p`.
    pub fn classify_at(&self, p: &Point) -> Result<FramePairClass> {
        let reps = self.basic_field_reps(p)?;
        classify_frame_pair(&reps.d, &reps.h, &reps.dirac_form)
    }
}

impl fmt::Display for FramePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tangent.name())
    }
}

impl FromStr for FramePair {
    type Err = GeometryError;
    fn from_str(s: &str) -> Result<Self> {
        let t: FrameId = s.parse()?;
        Ok(FramePair::for_frame(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::ChartId;
    use crate::spin_lift::phi;
    use crate::MINKOWSKI;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    fn sl2c() -> impl Strategy<Value = SpinMatrix2> {
        proptest::array::uniform8(-2.0..2.0f64)
            .prop_map(|v| {
                Matrix2::new(
                    Complex64::new(v[0], v[1]),
                    Complex64::new(v[2], v[3]),
                    Complex64::new(v[4], v[5]),
                    Complex64::new(v[6], v[7]),
                )
            })
            .prop_filter("well conditioned", |m| m.determinant().norm() > 0.05)
            .prop_map(|m| m / m.determinant().sqrt())
    }

    fn spherical_point() -> impl Strategy<Value = Point> {
        (-1.0..1.0f64, 0.2..PI - 0.2, 0.2..PI - 0.2, 0.0..TAU)
            .prop_map(|(t, a, b, c)| Point::new(ChartId::Spherical, [t, a, b, c]).unwrap())
    }

    fn max4(a: &SpinMatrix4, b: &SpinMatrix4) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn basic_field_examples() {
        let d2 = basic_field(BasicField::D2, Variant::Standard);
        assert_eq!(d2.values(), &[c(0.0), c(1.0), c(-1.0), c(0.0)]);
        let g = basic_field(BasicField::G, Variant::Standard);
        let g3: Vec<_> = g.indices().into_iter().filter(|i| i[2] == 3).map(|i| g.get(&i).unwrap()).collect();
        assert_eq!(g3, vec![c(1.0), c(0.0), c(0.0), c(-1.0)]);
        let gam = basic_field(BasicField::Gamma, Variant::Standard);
        for a in 0..4 {
            for b in 0..4 {
                let expect = if (a + 2) % 4 == b { 1.0 } else { 0.0 };
                assert_eq!(gam.get(&[a, b, 0]).unwrap(), c(expect));
            }
        }
        let opp = basic_field(BasicField::H, Variant::Opposite);
        assert_eq!(opp.get(&[2, 2]).unwrap(), c(1.0));
        assert!(matches!(
            SpinTensorComponents::new(BasicField::H.tensor_type(), 4, vec![c(0.0); 3]),
            Err(GeometryError::Shape(_))
        ));
    }

    #[test]
    fn clifford_relation_is_exact() {
        let g = dirac_matrices();
        for m in 0..4 {
            for n in 0..4 {
                let lhs = g[m] * g[n] + g[n] * g[m];
                let rhs = if m == n { SpinMatrix4::identity() * c(2.0 * MINKOWSKI[m]) } else { SpinMatrix4::zeros() };
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn pauli_trace() {
        let s = pauli();
        for p in 1..4 {
            for q in 1..4 {
                let expect = if p == q { 2.0 } else { 0.0 };
                assert_eq!((s[p] * s[q]).trace(), c(expect));
            }
        }
    }

    #[test]
    fn inversion_of_spatial_vectors_negates_g() {
        let lambda = LorentzMatrix::from_diagonal(&[1.0, -1.0, -1.0, -1.0].into());
        let g = basic_field(BasicField::G, Variant::Standard);
        let out = transform(&g, &SpinMatrix2::identity(), &lambda).unwrap();
        let s = pauli();
        for idx in out.indices() {
            let sign = if idx[2] == 0 { 1.0 } else { -1.0 };
            assert_eq!(out.get(&idx).unwrap(), s[idx[2]][(idx[0], idx[1])] * sign);
        }
        let same = transform(&g, &SpinMatrix2::identity(), &LorentzMatrix::identity()).unwrap();
        assert_eq!(same, g);
        assert!(matches!(transform(&g, &SpinMatrix4::identity(), &lambda), Err(GeometryError::Shape(_))));
    }

    #[test]
    fn classification_table() {
        let f = |b: BasicField, plus: bool| basic_field(b, if plus { Variant::Standard } else { Variant::Opposite });
        let cases = [
            ((true, true, true), Some(FramePairClass::CanonChiral)),
            ((false, false, true), Some(FramePairClass::PReverseAntichiral)),
            ((true, false, false), Some(FramePairClass::TReverseAntichiral)),
            ((false, true, false), Some(FramePairClass::PTReverseChiral)),
            ((true, true, false), None),
            ((false, false, false), None),
        ];
        for ((d, h, dd), expect) in cases {
            let got = classify_frame_pair(&f(BasicField::D4, d), &f(BasicField::H, h), &f(BasicField::D, dd));
            match expect {
                Some(cls) => assert_eq!(got.unwrap(), cls),
                None => assert!(matches!(got, Err(GeometryError::Classification(_)))),
            }
        }
        let junk = basic_field(BasicField::D, Variant::Standard);
        assert!(classify_frame_pair(&junk, &junk, &junk).is_err());
    }

    #[test]
    fn frame_pairs() {
        assert!(matches!(FramePair::new(SpinorFrame::Psi, FrameId::Y), Err(GeometryError::Usage(_))));
        assert_eq!("Y".parse::<FramePair>().unwrap().spinor(), SpinorFrame::Phi);
        let id = SpinMatrix4::identity();
        let t = SpinMatrix4::from_fn(|i, j| c((4 * i + j) as f64));
        for side in [ReversedFrame::From, ReversedFrame::To] {
            assert_eq!(p_reversion(&p_reversion(&t, side), side), t);
        }
        assert_eq!(chiral_extension(&SpinMatrix2::identity()), id);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn canonical_pairs_preserve_gamma(s in sl2c()) {
            let t = chiral_extension(&s);
            let l = phi(&s).unwrap();
            let gam = basic_field(BasicField::Gamma, Variant::Standard);
            let out = transform(&gam, &t, &l).unwrap();
            prop_assert!(out.max_abs_diff(&gam).unwrap() < 1e-9);
            for f in [BasicField::D4, BasicField::H, BasicField::D] {
                let canon = basic_field(f, Variant::Standard);
                prop_assert!(transform(&canon, &t, &l).unwrap().max_abs_diff(&canon).unwrap() < 1e-9);
            }
            let g = basic_field(BasicField::G, Variant::Standard);
            prop_assert!(transform(&g, &s, &l).unwrap().max_abs_diff(&g).unwrap() < 1e-9);
        }

        #[test]
        fn chiral_extension_is_a_homomorphism(a in sl2c(), b in sl2c()) {
            let lhs = chiral_extension(&(a * b));
            let rhs = chiral_extension(&a) * chiral_extension(&b);
            prop_assert!(max4(&lhs, &rhs) < 1e-9);
        }

        #[test]
        fn frame_pairs_classify(p in spherical_point()) {
            for pair in FramePair::ALL {
                prop_assert_eq!(pair.classify_at(&p).unwrap(), pair.class());
                let reps = pair.basic_field_reps(&p).unwrap();
                let gam = basic_field(BasicField::Gamma, Variant::Standard);
                prop_assert!(reps.gamma.max_abs_diff(&gam).unwrap() < 1e-9);
            }
        }

        #[test]
        fn dirac_transitions_compose(p in spherical_point()) {
            for a in SpinorFrame::ALL {
                for b in SpinorFrame::ALL {
                    let ab = dirac_transition(a, b, &p).unwrap();
                    let ba = dirac_transition(b, a, &p).unwrap();
                    prop_assert!(max4(&(ab * ba), &SpinMatrix4::identity()) < 1e-9);
                }
            }
            let st = closed_form_lift(LiftPair::YtildeToX, &p).unwrap();
            let scheck = closed_form_lift(LiftPair::EToYtilde, &p).unwrap();
            let xi_phi = dirac_transition(SpinorFrame::Xi, SpinorFrame::Phi, &p).unwrap();
            prop_assert!(max4(&xi_phi, &p_reversion(&chiral_extension(&scheck), ReversedFrame::To)) < 1e-9);
            let psi_phi = dirac_transition(SpinorFrame::Psi, SpinorFrame::Phi, &p).unwrap();
            let tt = closed_form_lift(LiftPair::XToYtilde, &p).unwrap();
            prop_assert!(max4(&psi_phi, &p_reversion(&chiral_extension(&tt), ReversedFrame::To)) < 1e-9);
            let phit_psi = dirac_transition(SpinorFrame::PhiTilde, SpinorFrame::Psi, &p).unwrap();
            prop_assert!(max4(&phit_psi, &chiral_extension(&st)) < 1e-12);
        }
    }
}
