//! Plot data for the digit functions `a_1`, `a_2` and the components `f_1`, `f_2`.
//!
//! Grid cells are `(m, m + 1) / 10^12` with a seeded jitter on `m`. Each point
//! is a random dyadic sub-bracket of its cell of relative width `2^-bits`,
//! expanded with certified digits; the emitted `x` is the 12-decimal
//! truncation of that point. Cells where `a_1` jumps are skipped.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{gen, OutputFormat, RunConfig};
use crate::cantor::forward_value;
use crate::error::{CfError, Result};
use crate::sample::uniform_bracket;
use crate::stream::{digit_at, DigitStream};
use crate::text::{format_decimal, format_rational, format_sig12, parse_decimal};

const GRID_SCALE: u64 = 1_000_000_000_000;
const GRID_PLACES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlotWhich {
    A1,
    A2GivenA1Eq1,
    F1,
    F2,
}

impl PlotWhich {
    pub const ALL: [PlotWhich; 4] = [
        PlotWhich::A1,
        PlotWhich::A2GivenA1Eq1,
        PlotWhich::F1,
        PlotWhich::F2,
    ];

    fn as_str(self) -> &'static str {
        match self {
            PlotWhich::A1 => "a1",
            PlotWhich::A2GivenA1Eq1 => "a2_given_a1_eq_1",
            PlotWhich::F1 => "f1",
            PlotWhich::F2 => "f2",
        }
    }

    /// Grid domain `(lo, hi)` in units of `10^-12`.
    fn domain(self) -> (u64, u64) {
        match self {
            PlotWhich::A2GivenA1Eq1 => (GRID_SCALE / 2, GRID_SCALE),
            _ => (0, GRID_SCALE),
        }
    }
}

impl fmt::Display for PlotWhich {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PlotWhich {
    type Err = CfError;

    fn from_str(s: &str) -> Result<Self> {
        PlotWhich::ALL
            .into_iter()
            .find(|w| w.as_str() == s)
            .ok_or_else(|| CfError::parse(format!("unknown plot series {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlotPoint {
    pub x: String,
    pub y: String,
    /// Digits (for `a_j`) or component depth (for `f_i`) used for this point.
    pub depth: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_lo: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_hi: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlotSeries {
    pub schema_version: u32,
    pub which: PlotWhich,
    pub points: Vec<PlotPoint>,
}

/// Jittered grid abscissae `m` (for `x = m / 10^12`), strictly increasing.
fn grid(seed: u64, which: PlotWhich, points: usize) -> Vec<u64> {
    let (lo, hi) = which.domain();
    let span = hi - lo;
    let points = points as u64;
    (0..points)
        .map(|i| {
            let center = lo + ((2 * i + 1) * span) / (2 * points);
            let quarter = (span / points / 4).max(1) as i64;
            let mut rng = gen::rng(seed, i);
            loop {
                let jitter = rng.gen_range(-quarter..=quarter);
                let m = (center as i64 + jitter).clamp(lo as i64 + 1, hi as i64 - 1) as u64;
                if a1_constant_on_cell(m) || quarter == 0 {
                    break m;
                }
            }
        })
        .collect()
}

/// True when `floor(1/y) = floor(10^12 / m)` for every `y` in the cell of `m`.
fn a1_constant_on_cell(m: u64) -> bool {
    let k = GRID_SCALE / m;
    u128::from(k) * u128::from(m + 1) <= u128::from(GRID_SCALE)
}

const OFFSET_SEED: u64 = 0x9e37_79b9_7f4a_7c15;

fn plot_point(seed: u64, index: u64, m: u64, which: PlotWhich, config: &RunConfig) -> Result<PlotPoint> {
    let (u_lo, u_hi) = uniform_bracket(seed ^ OFFSET_SEED, index, config.bits);
    let cell = |u: BigRational| {
        (BigRational::from_integer(BigInt::from(m)) + u) / BigRational::from_integer(BigInt::from(GRID_SCALE))
    };
    let lo = cell(u_lo);
    let stream = DigitStream::certified(lo.clone(), cell(u_hi))?;
    let x_text = format_decimal(&lo, GRID_PLACES);
    let digit_point = |j: usize| -> Result<PlotPoint> {
        Ok(PlotPoint {
            x: x_text.clone(),
            y: digit_at(&stream, j)?.to_string(),
            depth: j,
            y_lo: None,
            y_hi: None,
        })
    };
    match which {
        PlotWhich::A1 => digit_point(1),
        PlotWhich::A2GivenA1Eq1 => digit_point(2),
        PlotWhich::F1 | PlotWhich::F2 => {
            let (depth, (e1, e2)) = match forward_value(&stream, config.depth) {
                Ok(value) => (config.depth, value),
                Err(CfError::DepthExhausted { max_depth }) if max_depth >= 1 => {
                    (max_depth, forward_value(&stream, max_depth)?)
                }
                Err(e) => return Err(e),
            };
            let e = if which == PlotWhich::F1 { e1 } else { e2 };
            let mid: f64 = format_decimal(&e.midpoint(), 20)
                .parse()
                .expect("decimal text parses as f64");
            Ok(PlotPoint {
                x: x_text,
                y: format_sig12(mid),
                depth,
                y_lo: Some(format_rational(&e.lo)),
                y_hi: Some(format_rational(&e.hi)),
            })
        }
    }
}

/// Computes a plot series of `points` grid points.
pub fn plot_series(config: &RunConfig, which: PlotWhich, points: usize) -> Result<PlotSeries> {
    config.validate()?;
    if points < 2 {
        return Err(CfError::domain("a plot needs at least 2 points"));
    }
    if points as u64 > GRID_SCALE / 8 {
        return Err(CfError::domain("too many points for a 12-decimal grid"));
    }
    let points = grid(config.seed, which, points)
        .into_iter()
        .enumerate()
        .map(|(i, m)| plot_point(config.seed, i as u64, m, which, config))
        .collect::<Result<Vec<_>>>()?;
    Ok(PlotSeries {
        schema_version: 1,
        which,
        points,
    })
}

/// Computes a series and writes it in the configured format.
pub fn cmd_plot(config: &RunConfig, which: PlotWhich, points: usize) -> Result<PlotSeries> {
    let series = plot_series(config, which, points)?;
    config.emit(&series.render(config.output_format))?;
    Ok(series)
}

impl PlotSeries {
    pub const CSV_HEADER: &'static str = "x,y,depth";

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for p in &self.points {
            out.push_str(&format!("{},{},{}\n", p.x, p.y, p.depth));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("plot series serializes");
        out.push('\n');
        out
    }

    pub fn from_csv(which: PlotWhich, text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next() != Some(Self::CSV_HEADER) {
            return Err(CfError::parse(format!(
                "plot CSV must start with {:?}",
                Self::CSV_HEADER
            )));
        }
        let points = lines
            .map(|line| {
                let fields: Vec<&str> = line.split(',').collect();
                match fields.as_slice() {
                    [x, y, depth] => Ok(PlotPoint {
                        x: x.to_string(),
                        y: y.to_string(),
                        depth: depth
                            .parse()
                            .map_err(|_| CfError::parse(format!("bad depth in {line:?}")))?,
                        y_lo: None,
                        y_hi: None,
                    }),
                    _ => Err(CfError::parse(format!("bad plot row {line:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PlotSeries {
            schema_version: 1,
            which,
            points,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CfError::parse(e.to_string()))
    }

    /// Exact abscissae of the grid.
    pub fn xs(&self) -> Result<Vec<BigRational>> {
        self.points.iter().map(|p| parse_decimal(&p.x)).collect()
    }
}
