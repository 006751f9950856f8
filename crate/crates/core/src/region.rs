//! Grid sampling of ℓ with CSV and SVG output.

use std::fmt::Write as _;

use num_traits::{ToPrimitive, Zero};

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::rational::{ceil_to_int, floor_to_int, format_rational, int, parse_rational, Rational};
use crate::structure::RRStructure;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionSpec {
    intervals: Vec<(Rational, Rational)>,
    resolution: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionTable {
    pub n: usize,
    pub rows: Vec<(Divisor, Rational)>,
}

impl RegionSpec {
    pub fn new(intervals: Vec<(Rational, Rational)>, resolution: usize) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::InvalidRegion("box has no axes".into()));
        }
        if resolution < 2 {
            return Err(Error::InvalidRegion(format!("resolution must be at least 2, got {resolution}")));
        }
        for (lo, hi) in &intervals {
            if lo >= hi {
                return Err(Error::InvalidRegion(format!("empty interval {lo}..{hi}")));
            }
        }
        Ok(RegionSpec { intervals, resolution })
    }

    /// Same interval on every axis.
    pub fn cube(n: usize, lo: Rational, hi: Rational, resolution: usize) -> Result<Self> {
        RegionSpec::new(vec![(lo, hi); n], resolution)
    }

    pub fn dimension(&self) -> usize {
        self.intervals.len()
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    /// Grid values along one axis.
    pub fn axis(&self, i: usize) -> Vec<Rational> {
        let (lo, hi) = &self.intervals[i];
        let steps = int(self.resolution as i64 - 1);
        (0..self.resolution)
            .map(|t| lo + (hi - lo) * int(t as i64) / &steps)
            .collect()
    }

    /// Grid points in row-major order (last axis varies fastest).
    pub fn points(&self) -> Vec<Divisor> {
        let axes: Vec<Vec<Rational>> = (0..self.dimension()).map(|i| self.axis(i)).collect();
        let total = self.resolution.pow(self.dimension() as u32);
        (0..total)
            .map(|mut idx| {
                let mut coords = vec![Rational::zero(); axes.len()];
                for (axis, slot) in axes.iter().zip(coords.iter_mut()).rev() {
                    *slot = axis[idx % self.resolution].clone();
                    idx /= self.resolution;
                }
                Divisor::new(coords).expect("dimension >= 1")
            })
            .collect()
    }
}

/// Parses `lo..hi` (applied to every axis) or `lo..hi,lo..hi,...` (one per axis).
pub fn parse_box(text: &str, n: usize) -> Result<Vec<(Rational, Rational)>> {
    let bad = |why: &str| Error::InvalidRegion(format!("box {text:?}: {why}"));
    let intervals = text
        .split(',')
        .map(|part| {
            let (lo, hi) = part.split_once("..").ok_or_else(|| bad("expected lo..hi"))?;
            Ok((parse_rational(lo)?, parse_rational(hi)?))
        })
        .collect::<Result<Vec<_>>>()?;
    match intervals.len() {
        1 => Ok(vec![intervals[0].clone(); n]),
        k if k == n => Ok(intervals),
        k => Err(bad(&format!("{k} intervals for dimension {n}"))),
    }
}

pub fn sample_region(s: &RRStructure, spec: &RegionSpec) -> Result<RegionTable> {
    if spec.dimension() != s.n() {
        return Err(Error::LengthMismatch { expected: s.n(), got: spec.dimension() });
    }
    let rows = spec
        .points()
        .into_iter()
        .map(|x| {
            let v = s.ell(&x)?;
            Ok((x, v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionTable { n: s.n(), rows })
}

pub fn emit_csv(table: &RegionTable) -> String {
    let mut out = String::new();
    let header: Vec<String> = (1..=table.n).map(|i| format!("x{i}")).chain(["ell".to_string()]).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for (x, v) in &table.rows {
        let _ = writeln!(out, "{},{}", x, format_rational(v));
    }
    out
}

pub fn parse_csv(text: &str) -> Result<RegionTable> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Csv("missing header".into()))?;
    let cols: Vec<&str> = header.split(',').collect();
    let n = cols.len().checked_sub(1).filter(|&n| n >= 1).ok_or_else(|| Error::Csv("header too short".into()))?;
    let expected: Vec<String> = (1..=n).map(|i| format!("x{i}")).chain(["ell".to_string()]).collect();
    if cols != expected {
        return Err(Error::Csv(format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != n + 1 {
            return Err(Error::Csv(format!("line {}: expected {} fields", lineno + 2, n + 1)));
        }
        let values = fields
            .iter()
            .map(|f| parse_rational(f))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Csv(format!("line {}: {e}", lineno + 2)))?;
        let (coords, ell) = values.split_at(n);
        rows.push((Divisor::new(coords.to_vec())?, ell[0].clone()));
    }
    Ok(RegionTable { n, rows })
}

const MARGIN: i64 = 40;
const PLOT: i64 = 480;

/// Heatmap of a 2-D table: cells with ℓ = 0 are filled, integer ticks drawn
/// on both axes. The x axis is the first coordinate, y the second (upward).
pub fn emit_svg(table: &RegionTable) -> Result<String> {
    if table.n != 2 {
        return Err(Error::SvgDimension(table.n));
    }
    let mut xs: Vec<Rational> = table.rows.iter().map(|(p, _)| p[0].clone()).collect();
    let mut ys: Vec<Rational> = table.rows.iter().map(|(p, _)| p[1].clone()).collect();
    xs.sort();
    xs.dedup();
    ys.sort();
    ys.dedup();
    let cols = xs.len().max(1) as i64;
    let rows = ys.len().max(1) as i64;
    let cell = (PLOT / cols.max(rows)).max(2);
    let width = 2 * MARGIN + cell * cols;
    let height = 2 * MARGIN + cell * rows;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>"##);
    for (p, v) in &table.rows {
        if !v.is_zero() {
            continue;
        }
        let i = xs.binary_search(&p[0]).expect("collected") as i64;
        let j = ys.binary_search(&p[1]).expect("collected") as i64;
        let x = MARGIN + i * cell;
        let y = MARGIN + (rows - 1 - j) * cell;
        let _ = writeln!(
            out,
            r##"<rect class="zero" x="{x}" y="{y}" width="{cell}" height="{cell}" fill="#7f7f7f"/>"##
        );
    }
    let _ = writeln!(
        out,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="#000000"/>"##,
        cell * cols,
        cell * rows
    );
    if let (Some(x0), Some(x1), Some(y0), Some(y1)) = (xs.first(), xs.last(), ys.first(), ys.last()) {
        let bottom = MARGIN + cell * rows;
        for t in integers_between(x0, x1) {
            let px = tick_position(&t, x0, x1, cols, cell);
            let _ = writeln!(
                out,
                r##"<line class="tick" x1="{px:.2}" y1="{bottom}" x2="{px:.2}" y2="{}" stroke="#000000"/><text x="{px:.2}" y="{}" font-size="10" text-anchor="middle">{t}</text>"##,
                bottom + 5,
                bottom + 17
            );
        }
        for t in integers_between(y0, y1) {
            let offset = tick_position(&t, y0, y1, rows, cell) - MARGIN as f64;
            let py = (MARGIN + cell * rows) as f64 - offset;
            let _ = writeln!(
                out,
                r##"<line class="tick" x1="{}" y1="{py:.2}" x2="{MARGIN}" y2="{py:.2}" stroke="#000000"/><text x="{}" y="{:.2}" font-size="10" text-anchor="end">{t}</text>"##,
                MARGIN - 5,
                MARGIN - 7,
                py + 3.0
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn integers_between(lo: &Rational, hi: &Rational) -> Vec<Rational> {
    let (a, b) = (ceil_to_int(lo), floor_to_int(hi));
    let mut out = Vec::new();
    let mut t = a;
    while t <= b {
        out.push(Rational::from_integer(t.clone()));
        t += 1;
    }
    out
}

/// Pixel offset of value `t` measured from the cell centers of the first and last samples.
fn tick_position(t: &Rational, lo: &Rational, hi: &Rational, count: i64, cell: i64) -> f64 {
    let first = Rational::from_integer((MARGIN * 2 + cell).into()) / int(2);
    if lo == hi {
        return first.to_f64().unwrap_or(0.0);
    }
    let span = int((count - 1) * cell);
    let pos = first + (t - lo) / (hi - lo) * span;
    pos.to_f64().unwrap_or(0.0)
}
