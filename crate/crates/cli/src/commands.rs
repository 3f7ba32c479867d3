//! The three subcommands.

use std::collections::BTreeSet;

use nalgebra::Matrix4;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use frw_spin_core::charts::transition;
use frw_spin_core::connection::{a_components, gamma_special};
use frw_spin_core::curvature::{ricci_and_scalar, riemann, spinor_curvature};
use frw_spin_core::frames::{commutators, frame_coefficients, frame_transition, metric_in_frame};
use frw_spin_core::spin_bundles::{basic_field, transform, BasicField, Variant};
use frw_spin_core::spin_lift::{closed_form_lift, lift, phi, LiftPair, SignConvention};
use frw_spin_core::{ChartId, FrameId, FramePair, LorentzMatrix, Point, ScaleFactor, SpinMatrix2};
use frw_spin_reference::{compare, Home, REGISTRY};

use crate::config::{ConfigEcho, Format, PointSpec, RunConfig};
use crate::error::CliError;
use crate::invariants::{clifford_check, lift_round_trip, point_checks, Check};
use crate::report::{aggregate, emit, render, summarize, ReportEntry, Summary, VerifyReport};
use crate::sampling::Sampler;

/// Number of random SL(2,C) samples in the lift round-trip suite.
pub const LIFT_SAMPLES: usize = 1000;

pub const QUANTITIES: [&str; 12] = [
    "metric",
    "frames",
    "commutators",
    "transition",
    "gamma",
    "A",
    "riemann",
    "spinor-curvature",
    "ricci",
    "scalar",
    "G",
    "dirac-gamma",
];

/// Points of a run, in a fixed order: chart by chart, then the draw order.
fn run_points(cfg: &RunConfig, sampler: &mut Option<Sampler>) -> Vec<(ChartId, Point)> {
    match &cfg.points {
        PointSpec::Given(p) => vec![(p.chart(), *p)],
        PointSpec::Sampled { count, seed } => {
            let s = sampler.insert(Sampler::new(*seed));
            cfg.charts.iter().flat_map(|&c| s.points(c, *count).into_iter().map(move |p| (c, p))).collect()
        }
    }
}

fn verification_error(what: &str, p: &Point, e: impl std::fmt::Display) -> CliError {
    CliError::Failure(format!("{what} failed at {:?} in the {} chart: {e}", p.coords(), p.chart()))
}

fn verify_point(
    chart: ChartId,
    p: &Point,
    sf: &ScaleFactor,
    tol: f64,
    frame: Option<FrameId>,
) -> Result<(Vec<ReportEntry>, Vec<&'static str>), CliError> {
    let mut out = Vec::new();
    let mut ids = Vec::new();
    for e in REGISTRY {
        let q = match e.home {
            Home::Chart(c) if c == chart => *p,
            Home::Native => *p,
            Home::Chart(_) => continue,
        };
        let r = compare(e.id, &q, sf, tol).map_err(|err| verification_error(e.id, p, err))?;
        out.extend(r.entries.iter().map(ReportEntry::from_comparison));
        ids.push(e.id);
    }
    let checks = point_checks(chart, p, sf, frame).map_err(|err| verification_error("invariants", p, err))?;
    out.extend(checks.iter().map(|c| ReportEntry::from_check(c, tol)));
    Ok((out, ids))
}

/// Runs the full comparison and returns the rendered report and summary.
pub fn run_verify(cfg: &RunConfig) -> Result<(String, Summary), CliError> {
    let frame = cfg.frame.as_ref().map(|_| cfg.tangent_frame(cfg.charts[0])).transpose()?;
    let mut sampler = None;
    let points = run_points(cfg, &mut sampler);
    let per_point: Vec<_> =
        points.par_iter().map(|(c, p)| verify_point(*c, p, &cfg.scale, cfg.tol, frame)).collect::<Result<_, _>>()?;

    let mut entries = Vec::new();
    let mut exercised = BTreeSet::new();
    for (e, ids) in per_point {
        entries.extend(e);
        exercised.extend(ids);
    }
    entries.push(ReportEntry::from_check(&clifford_check(), cfg.tol));

    let samples: Vec<SpinMatrix2> = match sampler.as_mut() {
        Some(s) => (0..LIFT_SAMPLES).map(|_| s.sl2c()).collect(),
        None => Vec::new(),
    };
    let round_trips: Vec<(f64, f64)> = samples
        .par_iter()
        .map(|s| lift_round_trip(s).map_err(|e| CliError::Failure(format!("lift round trip: {e}"))))
        .collect::<Result<_, _>>()?;
    for (lorentz, spin) in round_trips {
        entries.push(ReportEntry::from_check(
            &Check { name: "inv.lift-round-trip.lorentz".into(), residual: lorentz, tolerance: 1e-9 },
            cfg.tol,
        ));
        entries.push(ReportEntry::from_check(
            &Check { name: "inv.lift-round-trip.spin".into(), residual: spin, tolerance: 1e-9 },
            cfg.tol,
        ));
    }

    if cfg.charts.len() == ChartId::ALL.len() && cfg.frame.is_none() {
        let missing = REGISTRY.iter().filter(|e| !exercised.contains(e.id)).count();
        entries.push(ReportEntry::from_check(
            &Check { name: "inv.coverage".into(), residual: missing as f64, tolerance: 0.0 },
            cfg.tol,
        ));
    }

    let entries = aggregate(entries);
    let summary = summarize(&entries);
    let report = VerifyReport { config: cfg.echo("verify", None), entries, summary };
    let text = render(&report, &report.entries, cfg.format)?;
    Ok((text, summary))
}

pub fn verify(cfg: &RunConfig) -> Result<Summary, CliError> {
    let (text, summary) = run_verify(cfg)?;
    emit(&text, cfg.out.as_deref())?;
    eprintln!(
        "verify: {} match, {} mismatch, {} suspected erratum",
        summary.matches, summary.mismatches, summary.errata
    );
    if summary.mismatches > 0 {
        return Err(CliError::Failure(format!("{} unflagged mismatch(es)", summary.mismatches)));
    }
    Ok(summary)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalEntry {
    pub point: usize,
    pub quantity: String,
    pub indices: Vec<usize>,
    pub value: [f64; 2],
}

#[derive(Serialize)]
pub struct EvalPoint {
    pub chart: String,
    pub coords: [f64; 4],
}

#[derive(Serialize)]
pub struct EvalReport {
    pub config: ConfigEcho,
    pub points: Vec<EvalPoint>,
    pub entries: Vec<EvalEntry>,
}

struct Collector<'a> {
    point: usize,
    quantity: &'a str,
    out: Vec<EvalEntry>,
}

impl Collector<'_> {
    fn push(&mut self, indices: Vec<usize>, z: Complex64) {
        self.out.push(EvalEntry {
            point: self.point,
            quantity: self.quantity.to_string(),
            indices,
            value: [z.re, z.im],
        });
    }

    fn real(&mut self, indices: Vec<usize>, v: f64) {
        self.push(indices, Complex64::new(v, 0.0));
    }

    fn matrix(&mut self, m: &Matrix4<f64>) {
        for i in 0..4 {
            for j in 0..4 {
                self.real(vec![i, j], m[(i, j)]);
            }
        }
    }

    /// Three-index array; `spinor` marks which positions count from one.
    fn arr3<T: Copy + Into<Complex64>>(&mut self, a: &[[[T; 4]; 4]; 4], spinor: [bool; 3]) {
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let idx = [i, j, k].iter().zip(spinor).map(|(v, s)| v + usize::from(s)).collect();
                    self.push(idx, a[i][j][k].into());
                }
            }
        }
    }

    fn arr4<T: Copy + Into<Complex64>>(&mut self, a: &[[[[T; 4]; 4]; 4]; 4], shift: usize) {
        for p in 0..4 {
            for q in 0..4 {
                for i in 0..4 {
                    for j in 0..4 {
                        self.push(vec![p + shift, q + shift, i, j], a[p][q][i][j].into());
                    }
                }
            }
        }
    }
}

fn parse_transition(spec: Option<&str>) -> Result<(FrameId, FrameId), CliError> {
    let spec = spec.ok_or_else(|| CliError::Usage("transition needs --frame-pair FROM->TO".into()))?;
    let (a, b) = spec.split_once("->").ok_or_else(|| CliError::Usage(format!("expected FROM->TO, got '{spec}'")))?;
    let parse = |s: &str| s.trim().parse::<FrameId>().map_err(|e| CliError::Usage(e.to_string()));
    Ok((parse(a)?, parse(b)?))
}

/// Weyl transition from the spinor frame over `frame` to `Psi`.
fn weyl_to_psi(frame: FrameId, p: &Point) -> Result<SpinMatrix2, CliError> {
    Ok(match frame {
        FrameId::X => SpinMatrix2::identity(),
        FrameId::Y | FrameId::Ytilde => closed_form_lift(LiftPair::YtildeToX, p)?,
        FrameId::E => closed_form_lift(LiftPair::EToX, p)?,
    })
}

fn eval_point(quantity: &str, cfg: &RunConfig, k: usize, p: &Point) -> Result<Vec<EvalEntry>, CliError> {
    let sf = &cfg.scale;
    let mut col = Collector { point: k, quantity, out: Vec::new() };
    if quantity == "transition" {
        let (from, to) = parse_transition(cfg.frame.as_deref())?;
        let l = frame_transition(from, to, p)?;
        col.matrix(&l);
        col.quantity = "transition.det";
        col.real(Vec::new(), l.determinant());
        return Ok(col.out);
    }
    let frame = cfg.tangent_frame(p.chart())?;
    let q = transition(p, frame.home())?;
    let pair = FramePair::for_frame(frame);
    match quantity {
        "metric" => col.matrix(&metric_in_frame(frame, &q, sf)?),
        "frames" => col.matrix(&frame_coefficients(frame, &q, sf)?),
        "commutators" => col.arr3(&commutators(frame, &q, sf)?.c, [false; 3]),
        "gamma" => col.arr3(&gamma_special(frame, &q, sf)?, [false; 3]),
        "A" => col.arr3(&a_components(pair, &q, sf)?.a, [true, false, true]),
        "riemann" => col.arr4(&riemann(&frame, &q, sf)?, 0),
        "spinor-curvature" => col.arr4(&spinor_curvature(pair, &q, sf)?, 1),
        "ricci" | "scalar" => {
            let (ricci, scalar) = ricci_and_scalar(&frame, &q, sf)?;
            if quantity == "scalar" {
                col.real(Vec::new(), scalar);
            } else {
                for i in 0..4 {
                    for j in 0..4 {
                        col.real(vec![i, j], ricci[i][j]);
                    }
                }
            }
        }
        "G" => {
            let m = weyl_to_psi(frame, &q)?;
            let m_inv = m.try_inverse().ok_or_else(|| CliError::Failure("singular spin transition".into()))?;
            let l_inv = frame_transition(frame, FrameId::X, &q)?
                .try_inverse()
                .ok_or_else(|| CliError::Failure("singular frame transition".into()))?;
            let g = transform(&basic_field(BasicField::G, Variant::Standard), &m_inv, &l_inv)?;
            for idx in g.indices() {
                let z = g.get(&idx)?;
                col.push(vec![idx[0] + 1, idx[1] + 1, idx[2]], z);
            }
        }
        "dirac-gamma" => {
            let g = pair.basic_field_reps(&q)?.gamma;
            for idx in g.indices() {
                let z = g.get(&idx)?;
                col.push(vec![idx[0] + 1, idx[1] + 1, idx[2]], z);
            }
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown quantity '{other}'; expected one of {}",
                QUANTITIES.join(", ")
            )))
        }
    }
    Ok(col.out)
}

fn eval_csv(report: &EvalReport) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record([
        "point", "chart", "coords", "quantity", "indices", "re", "im",
    ])
    .map_err(io)?;
    for e in &report.entries {
        let pt = &report.points[e.point];
        let coords = pt.coords.iter().map(f64::to_string).collect::<Vec<_>>().join(" ");
        let idx = e.indices.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        w.write_record([
            e.point.to_string(),
            pt.chart.clone(),
            coords,
            e.quantity.clone(),
            idx,
            e.value[0].to_string(),
            e.value[1].to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

pub fn run_eval(quantity: &str, cfg: &RunConfig) -> Result<String, CliError> {
    if !QUANTITIES.contains(&quantity) {
        return Err(CliError::Usage(format!(
            "unknown quantity '{quantity}'; expected one of {}",
            QUANTITIES.join(", ")
        )));
    }
    let mut sampler = None;
    let points = run_points(cfg, &mut sampler);
    let mut entries = Vec::new();
    for (k, (_, p)) in points.iter().enumerate() {
        entries.extend(eval_point(quantity, cfg, k, p)?);
    }
    let report = EvalReport {
        config: cfg.echo("eval", Some(quantity)),
        points: points.iter().map(|(c, p)| EvalPoint { chart: c.name().to_string(), coords: p.coords() }).collect(),
        entries,
    };
    match cfg.format {
        Format::Json => render(&report, &[], Format::Json),
        Format::Csv => eval_csv(&report),
    }
}

pub fn eval(quantity: &str, cfg: &RunConfig) -> Result<(), CliError> {
    let text = run_eval(quantity, cfg)?;
    emit(&text, cfg.out.as_deref())
}

#[derive(Serialize)]
pub struct LiftReport {
    pub input: [[f64; 4]; 4],
    pub lift: [[[f64; 2]; 2]; 2],
    pub det: [f64; 2],
    pub residual: f64,
}

pub fn parse_lorentz(text: &str) -> Result<LorentzMatrix, CliError> {
    let nums = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Usage(format!("bad matrix entry '{s}'")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if nums.len() != 16 {
        return Err(CliError::Usage(format!("a Lorentz matrix needs 16 entries, got {}", nums.len())));
    }
    Ok(LorentzMatrix::from_row_slice(&nums))
}

pub fn run_lift(text: &str, format: Format) -> Result<String, CliError> {
    let l = parse_lorentz(text)?;
    let s = lift(&l, SignConvention::FirstNonzeroPositive)?;
    let residual = (phi(&s)? - l).abs().max();
    let det = s.determinant();
    let report = LiftReport {
        input: std::array::from_fn(|i| std::array::from_fn(|j| l[(i, j)])),
        lift: std::array::from_fn(|i| std::array::from_fn(|j| [s[(i, j)].re, s[(i, j)].im])),
        det: [det.re, det.im],
        residual,
    };
    let mut rows = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            rows.push(ReportEntry {
                quantity: "lift".into(),
                indices: vec![i + 1, j + 1],
                computed: report.lift[i][j],
                reference: [0.0, 0.0],
                abs_err: 0.0,
                status: "match".into(),
            });
        }
    }
    rows.push(ReportEntry {
        quantity: "det".into(),
        indices: Vec::new(),
        computed: report.det,
        reference: [1.0, 0.0],
        abs_err: (det - Complex64::new(1.0, 0.0)).norm(),
        status: "match".into(),
    });
    rows.push(ReportEntry {
        quantity: "residual".into(),
        indices: Vec::new(),
        computed: [residual, 0.0],
        reference: [0.0, 0.0],
        abs_err: residual,
        status: "match".into(),
    });
    render(&report, &rows, format)
}
