//! Coordinate charts on `R x S^3`.
//!
//! Two stereographic charts (projection from the north and south poles) and
//! one spherical chart `(eta, chi, theta, phi)`.  All three share the time
//! coordinate.  The stereographic spatial origin is inside its chart (it is
//! the opposite pole); only operations that need both stereographic charts
//! at once exclude it.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix4;

use crate::dual::{seed, Scalar};
use crate::error::GeometryError;
use crate::scale_factor::ScaleFactor;
use crate::Result;

/// Norm below which a point counts as lying on an excluded pole or axis.
pub const POLE_TOLERANCE: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChartId {
    NorthStereo,
    SouthStereo,
    Spherical,
}

impl ChartId {
    pub const ALL: [ChartId; 3] = [
        ChartId::NorthStereo,
        ChartId::SouthStereo,
        ChartId::Spherical,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ChartId::NorthStereo => "north",
            ChartId::SouthStereo => "south",
            ChartId::Spherical => "spherical",
        }
    }

    fn is_stereo(&self) -> bool {
        !matches!(self, ChartId::Spherical)
    }
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChartId {
    type Err = GeometryError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "north" | "northstereo" => Ok(ChartId::NorthStereo),
            "south" | "southstereo" => Ok(ChartId::SouthStereo),
            "spherical" | "sph" => Ok(ChartId::Spherical),
            other => Err(GeometryError::Usage(format!("unknown chart '{other}'"))),
        }
    }
}

/// An event given in one chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    chart: ChartId,
    coords: [f64; 4],
}

impl Point {
    /// Validates the chart domain.  Spherical `phi` is reduced to `[0, 2pi)`.
    pub fn new(chart: ChartId, coords: [f64; 4]) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::ChartDomain(format!("non-finite coordinates {coords:?}")));
        }
        let mut coords = coords;
        if chart == ChartId::Spherical {
            let [_, chi, theta, phi] = coords;
            if !(chi > 0.0 && chi < PI && theta > 0.0 && theta < PI) {
                return Err(GeometryError::ChartDomain(format!(
                    "spherical angles chi={chi}, theta={theta} outside (0, pi)"
                )));
            }
            if chi.sin() * theta.sin() < POLE_TOLERANCE {
                return Err(GeometryError::ChartDomain(format!(
                    "spherical point chi={chi}, theta={theta} is on the polar axis"
                )));
            }
            coords[3] = normalize_angle(phi);
        }
        Ok(Self { chart, coords })
    }

    pub fn chart(&self) -> ChartId {
        self.chart
    }

    pub fn coords(&self) -> [f64; 4] {
        self.coords
    }

    pub fn time(&self) -> f64 {
        self.coords[0]
    }

    /// Euclidean norm of the spatial part (meaningful for stereographic charts).
    pub fn spatial_norm(&self) -> f64 {
        spatial_norm(&self.coords)
    }
}

/// Point of the sphere of radius `R` in Euclidean `R^4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmbeddedPoint {
    pub z: [f64; 4],
    pub radius: f64,
}

impl EmbeddedPoint {
    /// Relative deviation of `|z|` from the radius.
    pub fn sphere_residual(&self) -> f64 {
        let n = self.z.iter().map(|v| v * v).sum::<f64>().sqrt();
        (n - self.radius).abs() / self.radius
    }
}

fn normalize_angle(phi: f64) -> f64 {
    let r = phi.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

fn spatial_norm(c: &[f64; 4]) -> f64 {
    (c[1] * c[1] + c[2] * c[2] + c[3] * c[3]).sqrt()
}

fn require_off_origin(p: &Point) -> Result<()> {
    if p.chart.is_stereo() && p.spatial_norm() < POLE_TOLERANCE {
        return Err(GeometryError::ChartDomain(format!(
            "{} chart spatial origin is outside the chart overlap",
            p.chart
        )));
    }
    Ok(())
}

/// Coordinate maps that are smooth and closed-form in the direction given;
/// generic so that jacobians come from dual numbers.  Returns `None` for the
/// directions that need an angle inversion (stereographic to spherical).
pub fn map_coords<T: Scalar>(from: ChartId, to: ChartId, c: &[T; 4]) -> Option<[T; 4]> {
    use ChartId::*;
    match (from, to) {
        _ if from == to => Some(*c),
        (NorthStereo, SouthStereo) | (SouthStereo, NorthStereo) => {
            let n2 = c[1] * c[1] + c[2] * c[2] + c[3] * c[3];
            Some([c[0], c[1] / n2, c[2] / n2, c[3] / n2])
        }
        (Spherical, NorthStereo) | (Spherical, SouthStereo) => {
            let [eta, chi, theta, phi] = *c;
            let denom = if to == NorthStereo { T::one() - chi.cos() } else { T::one() + chi.cos() };
            let s = chi.sin();
            Some([
                eta,
                s * theta.sin() * phi.sin() / denom,
                s * theta.sin() * phi.cos() / denom,
                s * theta.cos() / denom,
            ])
        }
        _ => None,
    }
}

fn unit_embedding<T: Scalar>(chart: ChartId, c: &[T; 4]) -> [T; 4] {
    match chart {
        ChartId::NorthStereo | ChartId::SouthStereo => {
            let n2 = c[1] * c[1] + c[2] * c[2] + c[3] * c[3];
            let one = T::one();
            let k = T::from_f64(2.0) / (n2 + one);
            let w = (n2 - one) / (n2 + one);
            let w = if chart == ChartId::NorthStereo { w } else { -w };
            [k * c[1], k * c[2], k * c[3], w]
        }
        ChartId::Spherical => {
            let [_, chi, theta, phi] = *c;
            [
                chi.sin() * theta.sin() * phi.sin(),
                chi.sin() * theta.sin() * phi.cos(),
                chi.sin() * theta.cos(),
                chi.cos(),
            ]
        }
    }
}

/// Same event in the target chart.
pub fn transition(p: &Point, target: ChartId) -> Result<Point> {
    if p.chart == target {
        return Ok(*p);
    }
    require_off_origin(p)?;
    if let Some(c) = map_coords(p.chart, target, &p.coords) {
        return Point::new(target, c);
    }
    // Stereographic to spherical: invert the unit embedding.
    let z = unit_embedding(p.chart, &p.coords);
    let rho = (z[0] * z[0] + z[1] * z[1]).sqrt();
    let chi = (rho * rho + z[2] * z[2]).sqrt().atan2(z[3]);
    let theta = rho.atan2(z[2]);
    let phi = z[0].atan2(z[1]);
    Point::new(ChartId::Spherical, [p.coords[0], chi, theta, phi])
}

/// Embeds the spatial position into the sphere of radius `R(eta)` in `R^4`.
pub fn embed(p: &Point, sf: &ScaleFactor) -> Result<EmbeddedPoint> {
    let r = sf.evaluate(p.time())?.r;
    let z = unit_embedding(p.chart, &p.coords).map(|v| r * v);
    Ok(EmbeddedPoint { z, radius: r })
}

/// Diagonal of the holonomic metric at generic coordinates.
pub fn holonomic_metric_diag<T: Scalar>(chart: ChartId, c: &[T; 4], sf: &ScaleFactor) -> Result<[T; 4]> {
    let r = sf.radius(c[0])?;
    let r2 = r * r;
    Ok(match chart {
        ChartId::NorthStereo | ChartId::SouthStereo => {
            let n2p1 = T::one() + c[1] * c[1] + c[2] * c[2] + c[3] * c[3];
            let s = -(T::from_f64(4.0) * r2 / (n2p1 * n2p1));
            [r2, s, s, s]
        }
        ChartId::Spherical => {
            let sc = c[1].sin();
            let st = c[2].sin();
            [r2, -r2, -(r2 * sc * sc), -(r2 * sc * sc * st * st)]
        }
    })
}

/// Holonomic metric `g_{mu nu}` of the point's chart.
pub fn holonomic_metric(p: &Point, sf: &ScaleFactor) -> Result<Matrix4<f64>> {
    let d = holonomic_metric_diag(p.chart, &p.coords, sf)?;
    Ok(Matrix4::from_diagonal(&d.into()))
}

/// `J[(nu, mu)] = d target^nu / d source^mu` at `p`.
pub fn jacobian(p: &Point, target: ChartId) -> Result<Matrix4<f64>> {
    if p.chart == target {
        return Ok(Matrix4::identity());
    }
    require_off_origin(p)?;
    let q = transition(p, target)?;
    if map_coords::<f64>(p.chart, target, &p.coords).is_some() {
        let mut j = Matrix4::zeros();
        for mu in 0..4 {
            let out = map_coords(p.chart, target, &seed(&p.coords, mu)).expect("direction is closed-form");
            for nu in 0..4 {
                j[(nu, mu)] = out[nu].eps;
            }
        }
        return Ok(j);
    }
    let back = jacobian(&q, p.chart)?;
    back.try_inverse().ok_or_else(|| GeometryError::ChartDomain("singular chart jacobian".into()))
}
