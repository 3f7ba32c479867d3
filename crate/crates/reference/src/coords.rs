//! Coordinate conversions used by the reference tables.
//!
//! These are written out independently of the engine's chart module so that
//! a bug there cannot hide in a comparison.

use frw_spin_core::{ChartId, GeometryError, Point, Result};

/// All coordinate forms of a point that the tables need.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coords {
    pub eta: f64,
    /// North stereographic spatial coordinates.
    pub x: Option<[f64; 3]>,
    /// South stereographic spatial coordinates.
    pub y: Option<[f64; 3]>,
    /// `(chi, theta, phi)`.
    pub sph: Option<[f64; 3]>,
}

fn norm2(u: &[f64; 3]) -> f64 {
    u[0] * u[0] + u[1] * u[1] + u[2] * u[2]
}

fn invert(u: &[f64; 3]) -> Option<[f64; 3]> {
    let n2 = norm2(u);
    (n2 > 1e-24).then(|| [u[0] / n2, u[1] / n2, u[2] / n2])
}

/// Angles from the cosine of `chi` and a direction vector.
fn angles(cos_chi: f64, dir: &[f64; 3]) -> Option<[f64; 3]> {
    let n = norm2(dir).sqrt();
    if n < 1e-12 {
        return None;
    }
    let chi = cos_chi.clamp(-1.0, 1.0).acos();
    let theta = (dir[2] / n).clamp(-1.0, 1.0).acos();
    let phi = dir[0].atan2(dir[1]).rem_euclid(std::f64::consts::TAU);
    let ok = (chi.sin() * theta.sin()).abs() > 1e-12;
    ok.then_some([chi, theta, phi])
}

pub fn coords_of(p: &Point) -> Coords {
    let c = p.coords();
    let eta = c[0];
    let u = [c[1], c[2], c[3]];
    match p.chart() {
        ChartId::NorthStereo => {
            let n2 = norm2(&u);
            Coords { eta, x: Some(u), y: invert(&u), sph: angles((n2 - 1.0) / (n2 + 1.0), &u) }
        }
        ChartId::SouthStereo => {
            let n2 = norm2(&u);
            Coords { eta, x: invert(&u), y: Some(u), sph: angles((1.0 - n2) / (1.0 + n2), &u) }
        }
        ChartId::Spherical => {
            let [chi, theta, phi] = u;
            let dir = [
                chi.sin() * theta.sin() * phi.sin(),
                chi.sin() * theta.sin() * phi.cos(),
                chi.sin() * theta.cos(),
            ];
            let x = dir.map(|v| v / (1.0 - chi.cos()));
            let y = dir.map(|v| v / (1.0 + chi.cos()));
            Coords { eta, x: Some(x), y: Some(y), sph: Some(u) }
        }
    }
}

fn missing(what: &str) -> GeometryError {
    GeometryError::ChartDomain(format!("point has no {what} coordinates"))
}

impl Coords {
    pub fn north(&self) -> Result<[f64; 3]> {
        self.x.ok_or_else(|| missing("north stereographic"))
    }

    pub fn south(&self) -> Result<[f64; 3]> {
        self.y.ok_or_else(|| missing("south stereographic"))
    }

    pub fn spherical(&self) -> Result<[f64; 3]> {
        self.sph.ok_or_else(|| missing("spherical"))
    }
}
