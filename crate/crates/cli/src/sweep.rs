//! Two-dimensional parameter sweeps, figure presets and CSV output.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt::Write as _;
use std::io::{self, Write};
use std::str::FromStr;

use clap::ValueEnum;
use qtele_core::QuadratureSpec;
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::quantity::{Param, Point, Quantity};

pub const MAX_AXIS_POINTS: usize = 2001;

/// Lower end of every preset temperature axis.
pub const PRESET_T_MIN: f64 = 0.01;
pub const PRESET_T_MAX: f64 = 2.0;
pub const PRESET_D_MAX: f64 = 5.0;
pub const DEFAULT_GRID: usize = 51;

/// Uniform axis `name:lo:hi:count`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: Param,
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(param: Param, lo: f64, hi: f64, count: usize) -> Self {
        Axis {
            param,
            lo,
            hi,
            count,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * (k as f64 / last)
                }
            })
            .collect()
    }

    pub fn to_radians(self) -> Self {
        if self.param.is_angle() {
            Axis {
                lo: self.lo.to_radians(),
                hi: self.hi.to_radians(),
                ..self
            }
        } else {
            self
        }
    }

    fn validate(&self, base: &Point) -> Result<()> {
        if !(2..=MAX_AXIS_POINTS).contains(&self.count) {
            return Err(CliError::Usage(format!(
                "axis {}: count {} outside 2..={MAX_AXIS_POINTS}",
                self.param, self.count
            )));
        }
        if self.lo.partial_cmp(&self.hi) != Some(std::cmp::Ordering::Less) {
            return Err(CliError::Usage(format!(
                "axis {}: need lo < hi, got {}..{}",
                self.param, self.lo, self.hi
            )));
        }
        base.with(self.param, self.lo).validate()?;
        base.with(self.param, self.hi).validate()
    }
}

impl FromStr for Axis {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || CliError::Usage(format!("malformed axis `{s}`, expected name:lo:hi:count"));
        let parts: Vec<&str> = s.split(':').collect();
        let [name, lo, hi, count] = parts[..] else {
            return Err(bad());
        };
        Ok(Axis {
            param: name.parse()?,
            lo: lo.trim().parse().map_err(|_| bad())?,
            hi: hi.trim().parse().map_err(|_| bad())?,
            count: count.trim().parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub quantity: Quantity,
    pub x: Axis,
    pub y: Axis,
    /// Values of every parameter not on an axis.
    pub fixed: Point,
    pub quad: QuadratureSpec,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.x.param == self.y.param {
            return Err(CliError::Usage(format!(
                "x and y axes both sweep {}",
                self.x.param
            )));
        }
        self.fixed.validate()?;
        self.x.validate(&self.fixed)?;
        self.y.validate(&self.fixed)
    }

    /// Points in row-major order: `y` outer, `x` inner.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let xs = self.x.values();
        self.y
            .values()
            .into_iter()
            .flat_map(|y| xs.iter().map(move |&x| (x, y)))
            .collect()
    }

    /// Evaluates every grid point. Work is spread over the rayon pool but the
    /// result keeps grid order, so output never depends on scheduling.
    pub fn run(&self) -> Result<Vec<SweepRow>> {
        self.validate()?;
        self.points()
            .into_par_iter()
            .map(|(x, y)| {
                let pt = self.fixed.with(self.x.param, x).with(self.y.param, y);
                let value = self.quantity.evaluate(&pt, &self.quad)?;
                Ok(SweepRow { x, y, value })
            })
            .collect()
    }

    /// `# qtele <quantity> k=v ...` listing the fixed inputs of the quantity.
    pub fn header(&self) -> String {
        let mut h = format!("# qtele {}", self.quantity);
        for &p in self.quantity.inputs() {
            if p != self.x.param && p != self.y.param {
                let _ = write!(h, " {}={}", p, self.fixed.get(p));
            }
        }
        if self.quantity.uses_quadrature() {
            let _ = write!(
                h,
                " quad-theta={} quad-phi={}",
                self.quad.n_theta(),
                self.quad.n_phi()
            );
        }
        h
    }

    pub fn write_csv(&self, rows: &[SweepRow], mut w: impl Write) -> io::Result<()> {
        writeln!(w, "{}", self.header())?;
        writeln!(w, "x,y,value")?;
        for row in rows {
            writeln!(w, "{:.16e},{:.16e},{:.16e}", row.x, row.y, row.value)?;
        }
        w.flush()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum FigurePreset {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

impl FigurePreset {
    pub const ALL: [FigurePreset; 7] = [
        FigurePreset::Fig1,
        FigurePreset::Fig2,
        FigurePreset::Fig3,
        FigurePreset::Fig4,
        FigurePreset::Fig5,
        FigurePreset::Fig6,
        FigurePreset::Fig7,
    ];

    pub fn quantity(self) -> Quantity {
        match self {
            FigurePreset::Fig1 => Quantity::Cin,
            FigurePreset::Fig2 | FigurePreset::Fig3 | FigurePreset::Fig4 => Quantity::Cout,
            FigurePreset::Fig5 | FigurePreset::Fig6 | FigurePreset::Fig7 => Quantity::Fa,
        }
    }

    /// `(x, y)` parameters with their preset ranges.
    pub fn axes(self) -> ((Param, f64, f64), (Param, f64, f64)) {
        let theta = (Param::Theta, 0.0, PI);
        let r = (Param::R, 0.0, FRAC_PI_4);
        let t = (Param::T, PRESET_T_MIN, PRESET_T_MAX);
        let d = (Param::D, 0.0, PRESET_D_MAX);
        match self {
            FigurePreset::Fig1 | FigurePreset::Fig2 => (theta, r),
            FigurePreset::Fig3 => (t, r),
            FigurePreset::Fig4 | FigurePreset::Fig6 | FigurePreset::Fig7 => (r, d),
            FigurePreset::Fig5 => (r, t),
        }
    }

    /// Parameters pinned by the preset. Anything else that the quantity
    /// depends on and that is not an axis keeps its [`Point::default`] value.
    pub fn pinned(self) -> &'static [(Param, f64)] {
        use Param::*;
        match self {
            FigurePreset::Fig1 => &[],
            FigurePreset::Fig2 => &[(J, 1.0), (D, 0.0), (T, 0.1), (Phi, 0.0)],
            FigurePreset::Fig3 => &[(J, 1.0), (D, 0.0), (Theta, FRAC_PI_4), (Phi, 0.0)],
            FigurePreset::Fig4 => &[(J, -1.0), (T, 0.1), (Theta, FRAC_PI_4), (Phi, 0.0)],
            FigurePreset::Fig5 => &[(J, 1.0), (D, 0.0)],
            FigurePreset::Fig6 => &[(J, 1.0), (T, 0.1)],
            FigurePreset::Fig7 => &[(J, -1.0), (T, 0.1)],
        }
    }

    pub fn spec(self, grid: usize) -> SweepSpec {
        let ((xp, xlo, xhi), (yp, ylo, yhi)) = self.axes();
        let fixed = self
            .pinned()
            .iter()
            .fold(Point::default(), |pt, &(p, v)| pt.with(p, v));
        SweepSpec {
            quantity: self.quantity(),
            x: Axis::new(xp, xlo, xhi, grid),
            y: Axis::new(yp, ylo, yhi, grid),
            fixed,
            quad: QuadratureSpec::default(),
        }
    }
}
