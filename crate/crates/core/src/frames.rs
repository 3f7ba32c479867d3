//! Orthonormal tangent frames, their commutation coefficients and the
//! Lorentz matrices relating them.
//!
//! A frame matrix `F` holds the frame vectors as columns in the holonomic
//! basis of the home chart: `X_i = sum_mu F[mu][i] d/dx^mu`.  Commutators are
//! Lie brackets of these vector fields, differentiated with dual numbers.

use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix4;

use crate::charts::{self, ChartId, Point, POLE_TOLERANCE};
use crate::dual::{invert4, seed, Scalar};
use crate::error::GeometryError;
use crate::scale_factor::ScaleFactor;
use crate::spin_lift::LorentzMatrix;
use crate::{Result, MINKOWSKI};

/// Frame matrix over a generic scalar, `m[mu][i]`.
pub type Mat4<T> = [[T; 4]; 4];
/// Three-index array `a[k][i][j]`.
pub type Arr3<T> = [[[T; 4]; 4]; 4];

/// The four orthonormal frames.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FrameId {
    /// North stereographic frame.
    X,
    /// South stereographic frame (left oriented).
    Y,
    /// South frame with inverted spatial legs.
    Ytilde,
    /// Spherical frame.
    E,
}

impl FrameId {
    pub const ALL: [FrameId; 4] = [FrameId::X, FrameId::Y, FrameId::Ytilde, FrameId::E];

    pub fn home(&self) -> ChartId {
        match self {
            FrameId::X => ChartId::NorthStereo,
            FrameId::Y | FrameId::Ytilde => ChartId::SouthStereo,
            FrameId::E => ChartId::Spherical,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FrameId::X => "X",
            FrameId::Y => "Y",
            FrameId::Ytilde => "Ytilde",
            FrameId::E => "E",
        }
    }

    /// The frame the engine uses by default in a chart.
    pub fn native(chart: ChartId) -> FrameId {
        match chart {
            ChartId::NorthStereo => FrameId::X,
            ChartId::SouthStereo => FrameId::Y,
            ChartId::Spherical => FrameId::E,
        }
    }
}

impl fmt::Display for FrameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FrameId {
    type Err = GeometryError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "X" => Ok(FrameId::X),
            "Y" => Ok(FrameId::Y),
            "Ytilde" => Ok(FrameId::Ytilde),
            "E" => Ok(FrameId::E),
            other => Err(GeometryError::Usage(format!("unknown frame '{other}'"))),
        }
    }
}

/// A field of frames on one chart, evaluated at generic coordinates.
///
/// The four orthonormal frames implement it, and so does the holonomic
/// [`CoordinateFrame`], which exercises the non-orthonormal parts of the
/// connection formulas.
pub trait FrameField {
    fn home(&self) -> ChartId;
    fn matrix<T: Scalar>(&self, c: &[T; 4], sf: &ScaleFactor) -> Result<Mat4<T>>;

    /// Whether the frame metric is the constant Minkowski matrix.
    fn is_orthonormal(&self) -> bool {
        false
    }
}

impl FrameField for FrameId {
    fn home(&self) -> ChartId {
        FrameId::home(self)
    }

    fn is_orthonormal(&self) -> bool {
        true
    }

    fn matrix<T: Scalar>(&self, c: &[T; 4], sf: &ScaleFactor) -> Result<Mat4<T>> {
        let r = sf.radius(c[0])?;
        let inv_r = T::one() / r;
        let diag = match self {
            FrameId::X | FrameId::Y | FrameId::Ytilde => {
                let f = (T::one() + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]) / (T::from_f64(2.0) * r);
                let f = if *self == FrameId::Ytilde { -f } else { f };
                [inv_r, f, f, f]
            }
            FrameId::E => {
                let sc = c[1].sin();
                let st = c[2].sin();
                if (sc * st).value().abs() < POLE_TOLERANCE {
                    return Err(GeometryError::ChartDomain("spherical frame undefined on the polar axis".into()));
                }
                [inv_r, inv_r, inv_r / sc, inv_r / (sc * st)]
            }
        };
        Ok(diagonal(diag))
    }
}

/// Holonomic frame `d/dx^mu` of a chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoordinateFrame(pub ChartId);

impl FrameField for CoordinateFrame {
    fn home(&self) -> ChartId {
        self.0
    }

    fn matrix<T: Scalar>(&self, _c: &[T; 4], _sf: &ScaleFactor) -> Result<Mat4<T>> {
        Ok(diagonal([T::one(); 4]))
    }
}

fn diagonal<T: Scalar>(d: [T; 4]) -> Mat4<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { d[i] } else { T::zero() }))
}

pub(crate) fn to_matrix4(m: &Mat4<f64>) -> Matrix4<f64> {
    Matrix4::from_fn(|i, j| m[i][j])
}

fn check_chart(home: ChartId, p: &Point) -> Result<()> {
    if p.chart() != home {
        return Err(GeometryError::Usage(format!(
            "frame lives on the {home} chart but the point is given in the {} chart",
            p.chart()
        )));
    }
    Ok(())
}

/// Commutation coefficients `c[k][i][j]` with `[X_i, X_j] = c^k_ij X_k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CommutationCoefficients {
    pub c: Arr3<f64>,
}

impl CommutationCoefficients {
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.c[k][i][j]
    }
}

/// Frame matrix at a point.
pub fn frame_coefficients(frame: FrameId, p: &Point, sf: &ScaleFactor) -> Result<Matrix4<f64>> {
    check_chart(frame.home(), p)?;
    Ok(to_matrix4(&frame.matrix(&p.coords(), sf)?))
}

/// `F^T g F`; equals the Minkowski matrix for every orthonormal frame.
pub fn metric_in_frame(frame: FrameId, p: &Point, sf: &ScaleFactor) -> Result<Matrix4<f64>> {
    let f = frame_coefficients(frame, p, sf)?;
    let g = charts::holonomic_metric(p, sf)?;
    Ok(f.transpose() * g * f)
}

/// Derivatives `d[nu][mu][i] = d_nu F[mu][i]`.
fn frame_derivatives<F: FrameField, T: Scalar>(frame: &F, c: &[T; 4], sf: &ScaleFactor) -> Result<Arr3<T>> {
    let mut d = [[[T::zero(); 4]; 4]; 4];
    for (nu, dn) in d.iter_mut().enumerate() {
        let m = frame.matrix(&seed(c, nu), sf)?;
        for mu in 0..4 {
            for i in 0..4 {
                dn[mu][i] = m[mu][i].eps;
            }
        }
    }
    Ok(d)
}

fn bracket_coefficients<T: Scalar>(f: &Mat4<T>, d: &Arr3<T>) -> Result<Arr3<T>> {
    let finv = invert4(f).ok_or_else(|| GeometryError::ChartDomain("singular frame matrix".into()))?;
    let mut out = [[[T::zero(); 4]; 4]; 4];
    for i in 0..4 {
        for j in (i + 1)..4 {
            let mut br = [T::zero(); 4];
            for (mu, b) in br.iter_mut().enumerate() {
                for nu in 0..4 {
                    *b = *b + f[nu][i] * d[nu][mu][j] - f[nu][j] * d[nu][mu][i];
                }
            }
            for k in 0..4 {
                let mut v = T::zero();
                for mu in 0..4 {
                    v = v + finv[k][mu] * br[mu];
                }
                out[k][i][j] = v;
                out[k][j][i] = -v;
            }
        }
    }
    Ok(out)
}

/// Commutation coefficients at generic coordinates.
pub fn commutators_at<F: FrameField, T: Scalar>(frame: &F, c: &[T; 4], sf: &ScaleFactor) -> Result<Arr3<T>> {
    let f = frame.matrix(c, sf)?;
    let d = frame_derivatives(frame, c, sf)?;
    bracket_coefficients(&f, &d)
}

/// Lie derivatives `X_i(h)` of scalar data given by its coordinate gradient
/// `grad[nu]`.
pub fn along_frame<T: Scalar>(f: &Mat4<T>, grad: &[T; 4]) -> [T; 4] {
    std::array::from_fn(|i| {
        let mut v = T::zero();
        for nu in 0..4 {
            v = v + f[nu][i] * grad[nu];
        }
        v
    })
}

/// Commutation coefficients via forward-mode differentiation.
pub fn commutators(frame: FrameId, p: &Point, sf: &ScaleFactor) -> Result<CommutationCoefficients> {
    check_chart(frame.home(), p)?;
    Ok(CommutationCoefficients { c: commutators_at(&frame, &p.coords(), sf)? })
}

/// Central-difference cross-check of [`commutators`] with step `h`.
pub fn commutators_fd(frame: FrameId, p: &Point, sf: &ScaleFactor, h: f64) -> Result<CommutationCoefficients> {
    check_chart(frame.home(), p)?;
    let c = p.coords();
    let f = frame.matrix(&c, sf)?;
    let mut d = [[[0.0; 4]; 4]; 4];
    for (nu, dn) in d.iter_mut().enumerate() {
        let mut a = c;
        let mut b = c;
        a[nu] += h;
        b[nu] -= h;
        let fa = frame.matrix(&a, sf)?;
        let fb = frame.matrix(&b, sf)?;
        for mu in 0..4 {
            for i in 0..4 {
                dn[mu][i] = (fa[mu][i] - fb[mu][i]) / (2.0 * h);
            }
        }
    }
    Ok(CommutationCoefficients { c: bracket_coefficients(&f, &d)? })
}

/// Largest component of the Jacobi identity
/// `sum_cyc(i,j,k) (c^l_ij c^m_lk - X_k(c^m_ij)) = 0`.
pub fn jacobi_residual(frame: FrameId, p: &Point, sf: &ScaleFactor) -> Result<f64> {
    check_chart(frame.home(), p)?;
    let x = p.coords();
    let f = frame.matrix(&x, sf)?;
    let c = commutators_at(&frame, &x, sf)?;
    let mut grads = [[[[0.0; 4]; 4]; 4]; 4];
    for nu in 0..4 {
        let cd = commutators_at(&frame, &seed(&x, nu), sf)?;
        for m in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    grads[m][i][j][nu] = cd[m][i][j].eps;
                }
            }
        }
    }
    let term = |i: usize, j: usize, k: usize, m: usize| {
        let quad: f64 = (0..4).map(|l| c[l][i][j] * c[m][l][k]).sum();
        quad - along_frame(&f, &grads[m][i][j])[k]
    };
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for m in 0..4 {
                    let s = term(i, j, k, m) + term(j, k, i, m) + term(k, i, j, m);
                    worst = worst.max(s.abs());
                }
            }
        }
    }
    Ok(worst)
}

/// Lorentz matrix `M` with `from_i = sum_k M[k][i] to_k`.
///
/// Computed as `F_to^-1 J F_from`.  The radius cancels, so unit radius is
/// used and no scale factor is needed.
pub fn frame_transition(from: FrameId, to: FrameId, p: &Point) -> Result<LorentzMatrix> {
    let unit = ScaleFactor::constant(1.0)?;
    let pf = charts::transition(p, from.home())?;
    let pt = charts::transition(p, to.home())?;
    let j = charts::jacobian(&pf, to.home())?;
    let f_from = to_matrix4(&from.matrix(&pf.coords(), &unit)?);
    let f_to = to_matrix4(&to.matrix(&pt.coords(), &unit)?);
    let f_to_inv = f_to.try_inverse().ok_or_else(|| GeometryError::ChartDomain("singular frame matrix".into()))?;
    Ok(f_to_inv * j * f_from)
}

/// Minkowski matrix as an nalgebra value.
pub fn minkowski() -> Matrix4<f64> {
    Matrix4::from_diagonal(&MINKOWSKI.into())
}
