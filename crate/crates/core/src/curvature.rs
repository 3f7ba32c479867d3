//! Riemann curvature, spinor curvature, Ricci tensor and scalar curvature.
//!
//! Second derivatives come from evaluating `Gamma` on dual-number
//! coordinates; `Gamma` itself already differentiates the frame once, so the
//! frame is differentiated twice through nested duals.

use num_complex::Complex64;

use crate::charts::{self, Point};
use crate::connection::{frame_metric_at, gamma_auto, spinor_from_gamma, CArr3};
use crate::dual::{invert4, seed};
use crate::error::GeometryError;
use crate::frames::{along_frame, commutators_at, Arr3, FrameField};
use crate::scale_factor::ScaleFactor;
use crate::spin_bundles::{dirac_matrices, FramePair};
use crate::{Result, MINKOWSKI};

/// `r[p][q][i][j] = R^p_qij`.
pub type Riemann = [[[[f64; 4]; 4]; 4]; 4];
/// `s[p][q][i][j]` with spinor `p, q` and spatial `i, j`.
pub type SpinorCurvature = [[[[Complex64; 4]; 4]; 4]; 4];

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureComponents {
    pub riemann: Riemann,
    pub spinor: SpinorCurvature,
    pub ricci: [[f64; 4]; 4],
    pub scalar: f64,
}

/// `Gamma`, its frame derivatives `xg[i] = X_i(Gamma)` and the commutators.
struct Jet {
    gamma: Arr3<f64>,
    xg: [Arr3<f64>; 4],
    c: Arr3<f64>,
}

fn jet<F: FrameField>(frame: &F, x: &[f64; 4], sf: &ScaleFactor) -> Result<Jet> {
    let gamma = gamma_auto(frame, x, sf)?;
    let f = frame.matrix(x, sf)?;
    let mut grad = [[[[0.0; 4]; 4]; 4]; 4];
    for nu in 0..4 {
        let gd = gamma_auto(frame, &seed(x, nu), sf)?;
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    grad[k][i][j][nu] = gd[k][i][j].eps;
                }
            }
        }
    }
    let mut xg = [[[[0.0; 4]; 4]; 4]; 4];
    for k in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                let d = along_frame(&f, &grad[k][i][j]);
                for (dir, v) in d.into_iter().enumerate() {
                    xg[dir][k][i][j] = v;
                }
            }
        }
    }
    let c = commutators_at(frame, x, sf)?;
    Ok(Jet { gamma, xg, c })
}

fn riemann_from(j: &Jet) -> Riemann {
    let (g, xg, c) = (&j.gamma, &j.xg, &j.c);
    let mut r = [[[[0.0; 4]; 4]; 4]; 4];
    for p in 0..4 {
        for q in 0..4 {
            for i in 0..4 {
                for jj in 0..4 {
                    let mut v = xg[i][p][jj][q] - xg[jj][p][i][q];
                    for s in 0..4 {
                        v += g[p][i][s] * g[s][jj][q] - g[p][jj][s] * g[s][i][q];
                        v -= c[s][i][jj] * g[p][s][q];
                    }
                    r[p][q][i][jj] = v;
                }
            }
        }
    }
    r
}

fn spinor_from(j: &Jet) -> SpinorCurvature {
    let a = spinor_from_gamma(&j.gamma);
    let xa: [CArr3; 4] = std::array::from_fn(|i| spinor_from_gamma(&j.xg[i]));
    let c = &j.c;
    let zero = Complex64::new(0.0, 0.0);
    let mut out = [[[[zero; 4]; 4]; 4]; 4];
    for p in 0..4 {
        for q in 0..4 {
            for i in 0..4 {
                for jj in 0..4 {
                    let mut v = xa[i][p][jj][q] - xa[jj][p][i][q];
                    for s in 0..4 {
                        v += a[p][i][s] * a[s][jj][q] - a[p][jj][s] * a[s][i][q];
                        v -= a[p][s][q] * c[s][i][jj];
                    }
                    out[p][q][i][jj] = v;
                }
            }
        }
    }
    out
}

fn coords_in<F: FrameField>(frame: &F, p: &Point) -> Result<[f64; 4]> {
    Ok(charts::transition(p, frame.home())?.coords())
}

/// `R^p_qij = X_i(Gamma^p_jq) - X_j(Gamma^p_iq) + Gamma^p_is Gamma^s_jq
/// - Gamma^p_js Gamma^s_iq - c^s_ij Gamma^p_sq`.
pub fn riemann<F: FrameField>(frame: &F, p: &Point, sf: &ScaleFactor) -> Result<Riemann> {
    Ok(riemann_from(&jet(frame, &coords_in(frame, p)?, sf)?))
}

/// Curvature of the spinor connection `A`, same formula as [`riemann`].
pub fn spinor_curvature(pair: FramePair, p: &Point, sf: &ScaleFactor) -> Result<SpinorCurvature> {
    let frame = pair.tangent();
    Ok(spinor_from(&jet(&frame, &coords_in(&frame, p)?, sf)?))
}

/// `(1/4) sum R^r_mij gamma^alpha_qn g^mn gamma^p_alpha r`.
pub fn intertwine(r: &Riemann) -> SpinorCurvature {
    let g = dirac_matrices();
    let zero = Complex64::new(0.0, 0.0);
    let mut out = [[[[zero; 4]; 4]; 4]; 4];
    for p in 0..4 {
        for q in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    let mut v = zero;
                    for rr in 0..4 {
                        for m in 0..4 {
                            let coeff = r[rr][m][i][j] * MINKOWSKI[m];
                            if coeff == 0.0 {
                                continue;
                            }
                            for al in 0..4 {
                                v += g[m][(al, q)] * g[rr][(p, al)] * coeff;
                            }
                        }
                    }
                    out[p][q][i][j] = v * 0.25;
                }
            }
        }
    }
    out
}

/// Largest entry of `spinor - intertwine(riemann)`.
pub fn check_intertwining(pair: FramePair, p: &Point, sf: &ScaleFactor) -> Result<f64> {
    let frame = pair.tangent();
    let j = jet(&frame, &coords_in(&frame, p)?, sf)?;
    let lhs = spinor_from(&j);
    let rhs = intertwine(&riemann_from(&j));
    let mut worst = 0.0f64;
    for a in 0..4 {
        for b in 0..4 {
            for i in 0..4 {
                for k in 0..4 {
                    worst = worst.max((lhs[a][b][i][k] - rhs[a][b][i][k]).norm());
                }
            }
        }
    }
    Ok(worst)
}

fn ricci_from(r: &Riemann) -> [[f64; 4]; 4] {
    std::array::from_fn(|q| std::array::from_fn(|j| (0..4).map(|p| r[p][q][p][j]).sum()))
}

/// `R_qj = sum_p R^p_qpj` and its trace with the inverse frame metric.
pub fn ricci_and_scalar<F: FrameField>(frame: &F, p: &Point, sf: &ScaleFactor) -> Result<([[f64; 4]; 4], f64)> {
    let x = coords_in(frame, p)?;
    let r = riemann_from(&jet(frame, &x, sf)?);
    let ric = ricci_from(&r);
    let ginv = invert4(&frame_metric_at(frame, &x, sf)?)
        .ok_or_else(|| GeometryError::ChartDomain("degenerate frame metric".into()))?;
    let mut scalar = 0.0;
    for q in 0..4 {
        for j in 0..4 {
            scalar += ginv[q][j] * ric[q][j];
        }
    }
    Ok((ric, scalar))
}

/// All curvature data of an associated frame pair.
pub fn curvature(pair: FramePair, p: &Point, sf: &ScaleFactor) -> Result<CurvatureComponents> {
    let frame = pair.tangent();
    let j = jet(&frame, &coords_in(&frame, p)?, sf)?;
    let riemann = riemann_from(&j);
    let ricci = ricci_from(&riemann);
    let scalar = (0..4).map(|q| MINKOWSKI[q] * ricci[q][q]).sum();
    Ok(CurvatureComponents { spinor: spinor_from(&j), riemann, ricci, scalar })
}

/// `max |sum_cyc(q,i,j) R^p_qij|`.
pub fn bianchi_residual(r: &Riemann) -> f64 {
    let mut worst = 0.0f64;
    for p in 0..4 {
        for q in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    worst = worst.max((r[p][q][i][j] + r[p][i][j][q] + r[p][j][q][i]).abs());
                }
            }
        }
    }
    worst
}

/// Largest symmetric part in the last index pair of both curvature arrays.
pub fn antisymmetry_residual(c: &CurvatureComponents) -> f64 {
    let mut worst = 0.0f64;
    for p in 0..4 {
        for q in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    worst = worst
                        .max((c.riemann[p][q][i][j] + c.riemann[p][q][j][i]).abs())
                        .max((c.spinor[p][q][i][j] + c.spinor[p][q][j][i]).norm());
                }
            }
        }
    }
    worst
}

/// Largest off-diagonal Ricci entry.
pub fn ricci_off_diagonal(ricci: &[[f64; 4]; 4]) -> f64 {
    let mut worst = 0.0f64;
    for q in 0..4 {
        for j in 0..4 {
            if q != j {
                worst = worst.max(ricci[q][j].abs());
            }
        }
    }
    worst
}
