//! Reduction of a trajectory to its classification data.

use crate::integrator::{EventKind, Trajectory, SETTLE_SPAN};
use crate::ivp::{BandIndex, Point};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassificationResult {
    /// Initial point of the classified trajectory.
    pub start: Point,
    pub maxima_count: usize,
    pub maxima_x_less_y: usize,
    pub maxima_x_greater_y: usize,
    pub settled: bool,
    pub terminal_band: Option<BandIndex>,
    /// Extrapolated `lim xy` as `x -> infinity`.
    pub terminal_constant: Option<f64>,
    /// First crossing of `x = y`.
    pub diagonal_crossing: Option<Point>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    XLessY,
    XGreaterY,
}

pub fn classify(traj: &Trajectory) -> ClassificationResult {
    let maxima_x_less_y = maxima_in_region(traj, Region::XLessY);
    let maxima_x_greater_y = maxima_in_region(traj, Region::XGreaterY);
    let diagonal_crossing = traj
        .events_of(EventKind::DiagonalCrossing)
        .next()
        .map(|e| e.location);
    let (terminal_band, terminal_constant) = match traj.settled_band() {
        Some(band) => {
            let c = terminal_constant(traj);
            (Some(c.map_or(band, BandIndex::nearest)), c)
        }
        None => (None, None),
    };
    ClassificationResult {
        start: traj.start(),
        maxima_count: maxima_x_less_y + maxima_x_greater_y,
        maxima_x_less_y,
        maxima_x_greater_y,
        settled: traj.settled(),
        terminal_band,
        terminal_constant,
        diagonal_crossing,
    }
}

/// Maximum events on one side of the diagonal. Ties (`y == x` at the
/// refined location) count as `XLessY`.
pub fn maxima_in_region(traj: &Trajectory, region: Region) -> usize {
    traj.events_of(EventKind::Maximum)
        .filter(|e| {
            let above = e.location.y >= e.location.x;
            match region {
                Region::XLessY => above,
                Region::XGreaterY => !above,
            }
        })
        .count()
}

/// Least-squares fit `xy ~ C + c / x^2` over the final settled span,
/// returning `C`.
///
/// Inside a trapping band the quasi-static balance `cos(pi xy) = -xy / x^2`
/// gives `xy - (2n + 1/2) ~ (2n + 1/2) / (pi x^2)`, so the leading
/// correction is in `1/x^2`.
fn terminal_constant(traj: &Trajectory) -> Option<f64> {
    let x_end = traj.x_end();
    let from = x_end - SETTLE_SPAN;
    let (mut n, mut st, mut su, mut stt, mut stu) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for node in traj.nodes().filter(|p| p.x >= from && p.x > 0.0) {
        let t = 1.0 / (node.x * node.x);
        let u = node.x * node.y;
        n += 1.0;
        st += t;
        su += u;
        stt += t * t;
        stu += t * u;
    }
    if n < 2.0 {
        return None;
    }
    let det = n * stt - st * st;
    if det.abs() <= f64::EPSILON * n * stt {
        return Some(su / n);
    }
    Some((su * stt - st * stu) / det)
}
