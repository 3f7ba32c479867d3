//! Command-line arguments and the validated run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use frw_spin_core::{ChartId, FrameId, Point, ScaleFactor};

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "frw-spin", version, about = "Spin geometry of the closed universe R x S^3: evaluate, verify, lift")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one quantity at a point or at sampled points.
    Eval {
        /// metric, frames, commutators, transition, gamma, A, riemann,
        /// spinor-curvature, ricci, scalar, G or dirac-gamma.
        quantity: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare the engine against every closed-form table and run the
    /// invariant suites.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Lift a Lorentz matrix to SL(2,C).
    Lift {
        /// Sixteen reals, row by row, separated by commas or spaces.
        matrix: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// north, south or spherical.
    #[arg(long)]
    pub chart: Option<String>,
    /// Tangent frame of the pair (X, Y, Ytilde, E); `transition` takes `FROM->TO`.
    #[arg(long)]
    pub frame_pair: Option<String>,
    /// Four comma-separated coordinates in the chart.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Scale-factor model, e.g. `const:1`, `cosh:1`, `linear:1.5,0.3`.
    #[arg(long, default_value = "cosh:1")]
    pub scale: String,
    /// Number of sampled points per chart.
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Where the points of a run come from.
#[derive(Clone, Debug, PartialEq)]
pub enum PointSpec {
    Given(Point),
    Sampled { count: usize, seed: u64 },
}

/// A validated configuration.  The output path is kept out of the echoed
/// form so that reports written to different files stay identical.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub charts: Vec<ChartId>,
    pub frame: Option<String>,
    pub scale: ScaleFactor,
    pub points: PointSpec,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

#[derive(Serialize)]
pub struct ConfigEcho {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantity: Option<String>,
    pub charts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame_pair: Option<String>,
    pub scale: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<[f64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tol: f64,
    pub format: Format,
}

fn parse_point(chart: ChartId, text: &str) -> Result<Point, CliError> {
    let nums = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| CliError::Usage(format!("bad coordinate '{s}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    let coords: [f64; 4] = nums
        .try_into()
        .map_err(|v: Vec<f64>| CliError::Usage(format!("a point needs 4 coordinates, got {}", v.len())))?;
    Point::new(chart, coords).map_err(|e| CliError::Usage(e.to_string()))
}

impl RunConfig {
    /// Validates the shared flags.  `default_count` applies when neither
    /// `--point` nor `--points` is given; `default_charts` when `--chart`
    /// is absent.
    pub fn from_args(args: &CommonArgs, default_count: usize, default_charts: &[ChartId]) -> Result<Self, CliError> {
        if !(args.tol > 0.0 && args.tol.is_finite()) {
            return Err(CliError::Usage(format!("tolerance must be positive, got {}", args.tol)));
        }
        let scale: ScaleFactor = args.scale.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
        let charts = match &args.chart {
            Some(c) => vec![c.parse::<ChartId>().map_err(|e| CliError::Usage(e.to_string()))?],
            None => default_charts.to_vec(),
        };
        let points = match (&args.point, args.points) {
            (Some(_), Some(_)) => return Err(CliError::Usage("--point and --points are mutually exclusive".into())),
            (Some(text), None) => PointSpec::Given(parse_point(charts[0], text)?),
            (None, Some(0)) => return Err(CliError::Usage("--points must be at least 1".into())),
            (None, n) => PointSpec::Sampled { count: n.unwrap_or(default_count), seed: args.seed },
        };
        Ok(RunConfig {
            charts,
            frame: args.frame_pair.clone(),
            scale,
            points,
            tol: args.tol,
            out: args.out.clone(),
            format: args.format,
        })
    }

    /// Tangent frame named by `--frame-pair`, or the chart's native one.
    pub fn tangent_frame(&self, chart: ChartId) -> Result<FrameId, CliError> {
        match &self.frame {
            Some(name) => name.parse().map_err(|e: frw_spin_core::GeometryError| CliError::Usage(e.to_string())),
            None => Ok(FrameId::native(chart)),
        }
    }

    pub fn echo(&self, command: &str, quantity: Option<&str>) -> ConfigEcho {
        let (point, points, seed) = match &self.points {
            PointSpec::Given(p) => (Some(p.coords()), None, None),
            PointSpec::Sampled { count, seed } => (None, Some(*count), Some(*seed)),
        };
        ConfigEcho {
            command: command.to_string(),
            quantity: quantity.map(str::to_string),
            charts: self.charts.iter().map(|c| c.name().to_string()).collect(),
            frame_pair: self.frame.clone(),
            scale: self.scale.to_string(),
            point,
            points,
            seed,
            tol: self.tol,
            format: self.format,
        }
    }
}
