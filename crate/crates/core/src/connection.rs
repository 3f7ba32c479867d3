//! Levi-Civita connection components in a frame and their spinor extension.
//!
//! `Gamma^k_ij` is defined by `nabla_{X_i} X_j = sum_k Gamma^k_ij X_k`.  The
//! spinor components `A^a_ib` are linear in `Gamma` with a constant complex
//! kernel built from the Dirac matrices, so every derivative of `A` is the
//! same kernel applied to the matching derivative of `Gamma`.

use num_complex::Complex64;

use crate::charts::{self, Point};
use crate::dual::{invert4, seed, Scalar};
use crate::error::GeometryError;
use crate::frames::{along_frame, commutators_at, Arr3, FrameField, FrameId, Mat4};
use crate::scale_factor::ScaleFactor;
use crate::spin_bundles::{dirac_matrices, FramePair};
use crate::{Result, MINKOWSKI};

/// Complex three-index array `a[a][i][b]`.
pub type CArr3 = [[[Complex64; 4]; 4]; 4];

/// Connection components in an associated frame pair.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionComponents {
    pub gamma: Arr3<f64>,
    pub a: CArr3,
    pub abar: CArr3,
}

/// Frame metric `g_ij = sum F[mu][i] F[mu][j] g_mu_mu` at generic coordinates.
pub fn frame_metric_at<F: FrameField, T: Scalar>(frame: &F, c: &[T; 4], sf: &ScaleFactor) -> Result<Mat4<T>> {
    let f = frame.matrix(c, sf)?;
    let h = charts::holonomic_metric_diag(frame.home(), c, sf)?;
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut v = T::zero();
            for mu in 0..4 {
                v = v + f[mu][i] * f[mu][j] * h[mu];
            }
            v
        })
    }))
}

fn minkowski_t<T: Scalar>() -> Mat4<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| T::from_f64(if i == j { MINKOWSKI[i] } else { 0.0 })))
}

/// `Gamma` at generic coordinates.
///
/// With `general` set, the full formula including the frame derivatives of
/// `g_ij` is used; otherwise `g` is taken to be the Minkowski matrix and only
/// the commutator terms remain.
pub fn gamma_at<F: FrameField, T: Scalar>(frame: &F, c: &[T; 4], sf: &ScaleFactor, general: bool) -> Result<Arr3<T>> {
    let cc = commutators_at(frame, c, sf)?;
    let (g, lie_g) = if general {
        let g = frame_metric_at(frame, c, sf)?;
        let f = frame.matrix(c, sf)?;
        let mut grads = [[[T::zero(); 4]; 4]; 4];
        for nu in 0..4 {
            let gd = frame_metric_at(frame, &seed(c, nu), sf)?;
            for i in 0..4 {
                for j in 0..4 {
                    grads[i][j][nu] = gd[i][j].eps;
                }
            }
        }
        // lie_g[r][i][j] = X_r(g_ij)
        let mut lie = [[[T::zero(); 4]; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let d = along_frame(&f, &grads[i][j]);
                for r in 0..4 {
                    lie[r][i][j] = d[r];
                }
            }
        }
        (g, Some(lie))
    } else {
        (minkowski_t(), None)
    };
    let ginv = invert4(&g).ok_or_else(|| GeometryError::ChartDomain("degenerate frame metric".into()))?;
    let half = T::from_f64(0.5);
    let mut out = [[[T::zero(); 4]; 4]; 4];
    for k in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                let mut v = cc[k][i][j];
                for r in 0..4 {
                    for s in 0..4 {
                        v = v - (cc[s][i][r] * g[s][j] + cc[s][j][r] * g[i][s]) * ginv[k][r];
                    }
                    if let Some(l) = &lie_g {
                        v = v + ginv[k][r] * (l[i][r][j] + l[j][i][r] - l[r][i][j]);
                    }
                }
                out[k][i][j] = v * half;
            }
        }
    }
    Ok(out)
}

fn coords_in<F: FrameField>(frame: &F, p: &Point) -> Result<[f64; 4]> {
    Ok(charts::transition(p, frame.home())?.coords())
}

/// `Gamma^k_ij` including the derivative terms of the frame metric.
pub fn gamma_general<F: FrameField>(frame: &F, p: &Point, sf: &ScaleFactor) -> Result<Arr3<f64>> {
    gamma_at(frame, &coords_in(frame, p)?, sf, true)
}

/// `Gamma^k_ij` of an orthonormal frame from its commutators alone.
pub fn gamma_special(frame: FrameId, p: &Point, sf: &ScaleFactor) -> Result<Arr3<f64>> {
    gamma_at(&frame, &coords_in(&frame, p)?, sf, false)
}

/// `Gamma` in the form appropriate for the frame.
pub(crate) fn gamma_auto<F: FrameField, T: Scalar>(frame: &F, c: &[T; 4], sf: &ScaleFactor) -> Result<Arr3<T>> {
    gamma_at(frame, c, sf, !frame.is_orthonormal())
}

/// Kernel `K[a][b][n][s]` with `A^a_ib = sum_{n,s} K[a][b][n][s] Gamma^n_is`.
pub fn spinor_kernel() -> [[[[Complex64; 4]; 4]; 4]; 4] {
    let g = dirac_matrices();
    let mut k = [[[[Complex64::new(0.0, 0.0); 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for n in 0..4 {
                for s in 0..4 {
                    // g^ms is diagonal, so m = s.
                    let mut v = Complex64::new(0.0, 0.0);
                    for al in 0..4 {
                        v += g[s][(al, b)] * g[n][(a, al)] * MINKOWSKI[s];
                    }
                    k[a][b][n][s] = v * 0.25;
                }
            }
        }
    }
    k
}

/// Applies the spinor kernel to a real three-index array shaped like
/// `Gamma^n_is`.
pub fn spinor_from_gamma(gamma: &Arr3<f64>) -> CArr3 {
    let k = spinor_kernel();
    let mut a = [[[Complex64::new(0.0, 0.0); 4]; 4]; 4];
    for ai in 0..4 {
        for i in 0..4 {
            for b in 0..4 {
                let mut v = Complex64::new(0.0, 0.0);
                for n in 0..4 {
                    for s in 0..4 {
                        v += k[ai][b][n][s] * gamma[n][i][s];
                    }
                }
                a[ai][i][b] = v;
            }
        }
    }
    a
}

fn conj3(a: &CArr3) -> CArr3 {
    std::array::from_fn(|i| std::array::from_fn(|j| std::array::from_fn(|k| a[i][j][k].conj())))
}

/// `Gamma`, `A` and `Abar` in an associated frame pair.
pub fn a_components(pair: FramePair, p: &Point, sf: &ScaleFactor) -> Result<ConnectionComponents> {
    let gamma = gamma_special(pair.tangent(), p, sf)?;
    let a = spinor_from_gamma(&gamma);
    Ok(ConnectionComponents { gamma, abar: conj3(&a), a })
}

/// `max |Gamma^k_ij - Gamma^k_ji - c^k_ij|`.
pub fn torsion_residual<F: FrameField>(frame: &F, p: &Point, sf: &ScaleFactor) -> Result<f64> {
    let c = coords_in(frame, p)?;
    let g = gamma_auto(frame, &c, sf)?;
    let cc = commutators_at(frame, &c, sf)?;
    let mut worst = 0.0f64;
    for k in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((g[k][i][j] - g[k][j][i] - cc[k][i][j]).abs());
            }
        }
    }
    Ok(worst)
}

/// `max |nabla_i g_jk|` with `nabla_i g_jk = X_i(g_jk) - Gamma^r_ij g_rk - Gamma^r_ik g_jr`.
pub fn metric_compatibility_residual<F: FrameField>(frame: &F, p: &Point, sf: &ScaleFactor) -> Result<f64> {
    let c = coords_in(frame, p)?;
    let gam = gamma_auto(frame, &c, sf)?;
    let g = frame_metric_at(frame, &c, sf)?;
    let f = frame.matrix(&c, sf)?;
    let mut grads = [[[0.0; 4]; 4]; 4];
    for nu in 0..4 {
        let gd = frame_metric_at(frame, &seed(&c, nu), sf)?;
        for j in 0..4 {
            for k in 0..4 {
                grads[j][k][nu] = gd[j][k].eps;
            }
        }
    }
    let mut worst = 0.0f64;
    for j in 0..4 {
        for k in 0..4 {
            let lie = along_frame(&f, &grads[j][k]);
            for i in 0..4 {
                let mut v = lie[i];
                for r in 0..4 {
                    v -= gam[r][i][j] * g[r][k] + gam[r][i][k] * g[j][r];
                }
                worst = worst.max(v.abs());
            }
        }
    }
    Ok(worst)
}

/// Largest covariant derivative of the basic fields `gamma`, `d`, `H` and
/// `D` built from `(Gamma, A, Abar)`; all four are parallel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParallelResiduals {
    pub gamma: f64,
    pub d: f64,
    pub h: f64,
    pub dirac_form: f64,
}

impl ParallelResiduals {
    pub fn max(&self) -> f64 {
        self.gamma.max(self.d).max(self.h).max(self.dirac_form)
    }
}

pub fn parallel_residuals(pair: FramePair, p: &Point, sf: &ScaleFactor) -> Result<ParallelResiduals> {
    let conn = a_components(pair, p, sf)?;
    let reps = pair.basic_field_reps(p)?;
    let (a, abar, gam) = (&conn.a, &conn.abar, &conn.gamma);
    let get2 = |t: &crate::spin_bundles::SpinTensorComponents, i: usize, j: usize| t.get(&[i, j]).expect("rank two");
    let gmat = |a: usize, b: usize, q: usize| reps.gamma.get(&[a, b, q]).expect("rank three");
    let mut out = ParallelResiduals { gamma: 0.0, d: 0.0, h: 0.0, dirac_form: 0.0 };
    for i in 0..4 {
        for x in 0..4 {
            for y in 0..4 {
                let zero = Complex64::new(0.0, 0.0);
                let (mut nd, mut nh, mut ndd) = (zero, zero, zero);
                for c in 0..4 {
                    nd -= a[c][i][x] * get2(&reps.d, c, y) + a[c][i][y] * get2(&reps.d, x, c);
                    nh += a[x][i][c] * get2(&reps.h, c, y) - a[c][i][y] * get2(&reps.h, x, c);
                    ndd -= a[c][i][x] * get2(&reps.dirac_form, c, y) + abar[c][i][y] * get2(&reps.dirac_form, x, c);
                }
                out.d = out.d.max(nd.norm());
                out.h = out.h.max(nh.norm());
                out.dirac_form = out.dirac_form.max(ndd.norm());
                for q in 0..4 {
                    let mut v = Complex64::new(0.0, 0.0);
                    for c in 0..4 {
                        v += a[x][i][c] * gmat(c, y, q) - a[c][i][y] * gmat(x, c, q);
                    }
                    for r in 0..4 {
                        v -= gmat(x, y, r) * gam[r][i][q];
                    }
                    out.gamma = out.gamma.max(v.norm());
                }
            }
        }
    }
    Ok(out)
}
