//! Averaged model of the oscillatory phase above the diagonal.
//!
//! Locally the level curves `xy = C` are replaced by parallel lines
//! `x + alpha y = D`, turning the problem into `y' = cos(omega (x + alpha y))`.
//! In `X = x + alpha y` the slope is `cos(omega X) / (1 + alpha cos(omega X))`
//! and its mean over one cycle gives the slope of the mean path. Identifying
//! `alpha = x / y` yields the averaged ODE
//! `dy/dx = sqrt((y/x)^2 - 1) - y/x`, whose solutions satisfy
//! `y^3 + 3x^2 y + (y^2 - x^2)^(3/2) = 2 y(0)^3` and meet the diagonal at
//! `x = y = 2^(-1/3) y(0)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::sqrt;

use crate::dopri::{DenseStep, Stepper};
use crate::integrator::{integrate, EventKind, SolverConfig};
use crate::ivp::{Point, ProblemParams};
use crate::Error;

/// `2^(5/6)`, the leading coefficient of `a_n ~ 2^(5/6) sqrt(n)`.
pub const A_N_COEFFICIENT: f64 = 1.781_797_436_280_678_5;

/// `2^(1/3)`, ratio between an initial value and its mean-path diagonal
/// crossing.
pub const CROSSING_RATIO: f64 = 1.259_921_049_894_873_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftParams {
    pub alpha: f64,
    pub omega: f64,
}

impl DriftParams {
    pub fn new(alpha: f64, omega: f64) -> Result<Self, Error> {
        check_open_unit(alpha)?;
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::Domain { what: "omega", value: omega });
        }
        Ok(Self { alpha, omega })
    }
}

fn check_open_unit(alpha: f64) -> Result<(), Error> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain { what: "alpha", value: alpha })
    }
}

/// Change in `y` over one cycle of `X`, from the residue evaluation:
/// `(2 pi / omega) (1/alpha - 1/(alpha sqrt(1 - alpha^2)))`.
pub fn drift_per_cycle(p: DriftParams) -> Result<f64, Error> {
    let slope = mean_slope_x(p.alpha)?;
    if !(p.omega.is_finite() && p.omega > 0.0) {
        return Err(Error::Domain { what: "omega", value: p.omega });
    }
    Ok(2.0 * PI / p.omega * slope)
}

/// Mean slope `dy/dX` of the path in the sheared coordinate.
///
/// Evaluated as `-alpha / (r (1 + r))` with `r = sqrt(1 - alpha^2)`, which is
/// algebraically equal to `1/alpha - 1/(alpha r)` but free of cancellation
/// for small `alpha`.
pub fn mean_slope_x(alpha: f64) -> Result<f64, Error> {
    check_open_unit(alpha)?;
    let r = sqrt((1.0 - alpha) * (1.0 + alpha));
    Ok(-alpha / (r * (1.0 + r)))
}

/// Mean slope `dy/dx = (sqrt(1 - alpha^2) - 1) / alpha`, with `-1` at
/// `alpha = 1`.
pub fn mean_slope_xy(alpha: f64) -> Result<f64, Error> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain { what: "alpha", value: alpha });
    }
    if alpha == 1.0 {
        return Ok(-1.0);
    }
    let r = sqrt((1.0 - alpha) * (1.0 + alpha));
    Ok(-alpha / (1.0 + r))
}

/// Slope of the averaged ODE at `(x, y)` with `y >= x >= 0`, written as
/// `-x / (y + sqrt(y^2 - x^2))`. Finite at `x = 0`; the radicand is clamped
/// so that stages slightly past the diagonal stay defined.
pub fn averaged_slope(x: f64, y: f64) -> f64 {
    let r = sqrt(((y - x) * (y + x)).max(0.0));
    let denom = y + r;
    if denom == 0.0 {
        -1.0
    } else {
        -x / denom
    }
}

/// `y^3 + 3x^2 y + (y^2 - x^2)^(3/2) - 2a^3`, zero on the mean path from
/// `(0, a)`.
pub fn implicit_residual(p: Point, a: f64) -> Result<f64, Error> {
    if p.y < p.x {
        return Err(Error::Domain { what: "implicit relation (y < x)", value: p.y - p.x });
    }
    if a.is_nan() || a <= 0.0 {
        return Err(Error::Domain { what: "initial value", value: a });
    }
    let (x, y) = (p.x, p.y);
    let r2 = (y - x) * (y + x);
    Ok(y * y * y + 3.0 * x * x * y + r2 * sqrt(r2) - 2.0 * a * a * a)
}

/// `2^(5/6) sqrt(n)`.
pub fn predict_a_n(n: u32) -> f64 {
    A_N_COEFFICIENT * sqrt(f64::from(n))
}

/// Point where the mean path from `(0, a)` meets the diagonal.
pub fn predicted_crossing(a: f64) -> f64 {
    a / CROSSING_RATIO
}

/// Averaged curve from `(0, a)` to the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanPath {
    pub a: f64,
    pub samples: Vec<Point>,
    steps: Vec<DenseStep>,
}

impl MeanPath {
    pub fn terminal(&self) -> Point {
        *self.samples.last().expect("mean path has at least two samples")
    }

    /// Mean-path ordinate at `x` for `0 <= x <= terminal().x`.
    pub fn y_at(&self, x: f64) -> Result<f64, Error> {
        let hi = self.terminal().x;
        if !(x >= 0.0 && x <= hi) {
            return Err(Error::OutOfRange { x, lo: 0.0, hi });
        }
        let last = self.steps.last().expect("mean path has at least one step");
        if x > last.x1 {
            // Linear closure of the final sub-tolerance gap.
            let end = self.terminal();
            let t = (x - last.x1) / (end.x - last.x1);
            return Ok(last.y1 + t * (end.y - last.y1));
        }
        let idx = self.steps.partition_point(|s| s.x1 < x);
        Ok(self.steps[idx].eval(x))
    }

    /// Largest `|implicit_residual| / a^3` over the samples.
    pub fn max_relative_residual(&self) -> f64 {
        let a3 = self.a * self.a * self.a;
        self.samples
            .iter()
            .map(|&p| implicit_residual(p, self.a).map_or(f64::INFINITY, |r| r.abs() / a3))
            .fold(0.0, f64::max)
    }
}

/// Integrate the averaged ODE from `(0, a)` until the path meets `x = y`.
///
/// The slope has a square-root singularity on the diagonal, so no step is
/// allowed to cross it: `y - x` decreases at a rate between 1 and 2, hence a
/// step shorter than half the remaining gap stays above. Once the gap is
/// below `1e-13 a` it is closed by a linear step.
pub fn solve_mean_path(a: f64, cfg: &SolverConfig) -> Result<MeanPath, Error> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::Domain { what: "initial value", value: a });
    }
    cfg.validate()?;
    let h_max = cfg.max_step.min(a / 50.0);
    let mut stepper = Stepper::new(averaged_slope, 0.0, a, h_max, cfg.step_control());
    let mut samples = alloc::vec![Point::new(0.0, a)];
    let mut steps = Vec::new();
    // y' <= 0 throughout, so the diagonal is met before x = a.
    let x_end = 2.0 * a;
    loop {
        let (x, y) = (stepper.x(), stepper.y());
        let gap = y - x;
        if gap < 0.0 {
            return Err(Error::Domain { what: "mean path below diagonal", value: gap });
        }
        if gap <= 1e-13 * a {
            let x_end = x + gap / (1.0 - averaged_slope(x, y));
            samples.push(Point::new(x_end, x_end));
            break;
        }
        let step = stepper.step(h_max.min(0.45 * gap), x_end)?;
        samples.push(Point::new(step.x1, step.y1));
        steps.push(step);
    }
    Ok(MeanPath { a, samples, steps })
}

/// Agreement between the oscillation midline of the direct solution and the
/// mean path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanPathFidelity {
    pub a: f64,
    /// Number of max/min pairs compared.
    pub pairs: usize,
    pub max_relative_deviation: f64,
    pub mean_relative_deviation: f64,
}

/// Compare midpoints of consecutive extrema above the diagonal with the mean
/// path ordinate at the same abscissa.
pub fn mean_path_fidelity(a: f64, cfg: &SolverConfig) -> Result<MeanPathFidelity, Error> {
    let path = solve_mean_path(a, cfg)?;
    let traj = integrate(ProblemParams::new(a)?, cfg)?;
    let extrema: Vec<Point> = traj
        .events()
        .iter()
        .filter(|e| matches!(e.kind, EventKind::Maximum | EventKind::Minimum))
        .map(|e| e.location)
        .filter(|p| p.y > p.x)
        .collect();
    let mut pairs = 0usize;
    let mut worst: f64 = 0.0;
    let mut total = 0.0;
    for w in extrema.windows(2) {
        let mid = Point::new(0.5 * (w[0].x + w[1].x), 0.5 * (w[0].y + w[1].y));
        if let Ok(y_mean) = path.y_at(mid.x) {
            let dev = (mid.y - y_mean).abs() / y_mean;
            worst = worst.max(dev);
            total += dev;
            pairs += 1;
        }
    }
    Ok(MeanPathFidelity {
        a,
        pairs,
        max_relative_deviation: worst,
        mean_relative_deviation: if pairs > 0 { total / pairs as f64 } else { 0.0 },
    })
}

/// Initial value whose mean path meets the diagonal at `x = y = b`.
pub fn a_from_crossing(b: f64) -> f64 {
    CROSSING_RATIO * b
}
