//! Adaptive integration of `y' = cos(pi x y)` with dense output and event
//! detection.
//!
//! After every accepted step the interpolant is scanned for sign changes of
//! `y'` (extrema) and of `y - x` (diagonal crossing). Roots are refined by
//! bisection on the interpolant. Integration stops at `x_max` or as soon as
//! the solution is certified to have settled into a trapping band
//! `2n + 1/2 <= xy <= 2n + 1`.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::dopri::{bisect_root, DenseStep, StepControl, Stepper};
use crate::ivp::{rhs, second_derivative, BandIndex, Point, ProblemParams};
use crate::Error;

/// Lower slack below `2n + 1/2` still counted as inside band `n`.
pub const SETTLE_DELTA: f64 = 0.05;
/// Minimum span in `x` over which `xy` must stay inside one band.
pub const SETTLE_SPAN: f64 = 5.0;

const MAX_STEPS: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: f64,
    /// Integration horizon.
    pub x_max: f64,
    /// Abscissa tolerance for event localisation.
    pub event_refine_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-10,
            max_step: 0.5,
            x_max: 100.0,
            event_refine_tol: 1e-12,
        }
    }
}

impl SolverConfig {
    /// Same configuration with the tolerances (including event refinement)
    /// scaled by `factor`.
    pub fn scaled_tolerances(&self, factor: f64) -> Self {
        Self {
            rel_tol: self.rel_tol * factor,
            abs_tol: self.abs_tol * factor,
            event_refine_tol: self.event_refine_tol * factor,
            ..*self
        }
    }

    pub fn with_x_max(&self, x_max: f64) -> Self {
        Self { x_max, ..*self }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.rel_tol) || self.rel_tol > 1e-3 {
            return Err(Error::InvalidConfig("rel_tol must lie in (0, 1e-3]"));
        }
        if !positive(self.abs_tol) || self.abs_tol > 1e-3 {
            return Err(Error::InvalidConfig("abs_tol must lie in (0, 1e-3]"));
        }
        if !positive(self.max_step) {
            return Err(Error::InvalidConfig("max_step must be positive"));
        }
        if !positive(self.x_max) {
            return Err(Error::InvalidConfig("x_max must be positive"));
        }
        if !positive(self.event_refine_tol) || self.event_refine_tol > self.abs_tol {
            return Err(Error::InvalidConfig(
                "event_refine_tol must be positive and no larger than abs_tol",
            ));
        }
        Ok(())
    }

    pub(crate) fn step_control(&self) -> StepControl {
        StepControl {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_steps: MAX_STEPS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Maximum,
    Minimum,
    DiagonalCrossing,
    BandSettled,
}

impl EventKind {
    pub fn name(self) -> &'static str {
        match self {
            EventKind::Maximum => "Maximum",
            EventKind::Minimum => "Minimum",
            EventKind::DiagonalCrossing => "DiagonalCrossing",
            EventKind::BandSettled => "BandSettled",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "Maximum" => EventKind::Maximum,
            "Minimum" => EventKind::Minimum,
            "DiagonalCrossing" => EventKind::DiagonalCrossing,
            "BandSettled" => EventKind::BandSettled,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub kind: EventKind,
    pub location: Point,
    pub band: Option<BandIndex>,
}

/// Node of the discrete solution: `dy` is `rhs(x, y)` evaluated exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    pub y: f64,
    pub dy: f64,
}

/// Dense numerical solution together with its events.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    start: Point,
    steps: Vec<DenseStep>,
    events: Vec<Event>,
    settled: Option<BandIndex>,
}

impl Trajectory {
    pub fn start(&self) -> Point {
        self.start
    }

    pub fn x_end(&self) -> f64 {
        self.steps.last().map_or(self.start.x, |s| s.x1)
    }

    pub fn end(&self) -> Point {
        self.steps
            .last()
            .map_or(self.start, |s| Point::new(s.x1, s.y1))
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn steps(&self) -> &[DenseStep] {
        &self.steps
    }

    /// `true` when integration ended on a `BandSettled` event rather than at
    /// the horizon.
    pub fn settled(&self) -> bool {
        self.settled.is_some()
    }

    pub fn settled_band(&self) -> Option<BandIndex> {
        self.settled
    }

    pub fn node_count(&self) -> usize {
        self.steps.len() + 1
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        let first = Node {
            x: self.start.x,
            y: self.start.y,
            dy: rhs(self.start),
        };
        core::iter::once(first).chain(self.steps.iter().map(|s| Node {
            x: s.x1,
            y: s.y1,
            dy: s.dy1,
        }))
    }

    /// Dense evaluation on `[start.x, x_end]`.
    pub fn evaluate(&self, x: f64) -> Result<Point, Error> {
        let (lo, hi) = (self.start.x, self.x_end());
        if !(x >= lo && x <= hi) {
            return Err(Error::OutOfRange { x, lo, hi });
        }
        if x == lo {
            return Ok(self.start);
        }
        let idx = self.steps.partition_point(|s| s.x1 < x);
        let step = &self.steps[idx.min(self.steps.len() - 1)];
        Ok(Point::new(x, step.eval(x)))
    }

    pub fn events_of(&self, kind: EventKind) -> impl Iterator<Item = &Event> + '_ {
        self.events.iter().filter(move |e| e.kind == kind)
    }
}

/// Integrate from `(0, a)`.
pub fn integrate(params: ProblemParams, cfg: &SolverConfig) -> Result<Trajectory, Error> {
    ProblemParams::new(params.a)?;
    integrate_from(params.start(), cfg)
}

/// Integrate forward from an arbitrary starting point with `x >= 0`.
pub fn integrate_from(start: Point, cfg: &SolverConfig) -> Result<Trajectory, Error> {
    cfg.validate()?;
    if !(start.x.is_finite() && start.y.is_finite()) || start.x < 0.0 {
        return Err(Error::InvalidConfig("start point must be finite with x >= 0"));
    }
    if start.x >= cfg.x_max {
        return Err(Error::InvalidConfig("x_max must exceed the starting abscissa"));
    }

    let f = |x: f64, y: f64| rhs(Point::new(x, y));
    let mut stepper = Stepper::new(f, start.x, start.y, step_cap(start, cfg), cfg.step_control());
    let mut steps = Vec::new();
    let mut events = Vec::new();
    let mut tracker = SettleTracker::default();
    tracker.push(start);

    if start.x == start.y {
        events.push(Event {
            kind: EventKind::DiagonalCrossing,
            location: start,
            band: None,
        });
    }

    let mut settled = None;
    while stepper.x() < cfg.x_max {
        let here = Point::new(stepper.x(), stepper.y());
        let step = stepper.step(step_cap(here, cfg), cfg.x_max)?;
        detect_events(&step, cfg, &mut events);
        steps.push(step);

        let node = Point::new(step.x1, step.y1);
        if let Some(band) = tracker.push(node) {
            events.push(Event {
                kind: EventKind::BandSettled,
                location: node,
                band: Some(band),
            });
            settled = Some(band);
            break;
        }
    }

    Ok(Trajectory {
        start,
        steps,
        events,
        settled,
    })
}

/// Largest step allowed from `p`. Above the diagonal the solution oscillates
/// with a period in `x` of about `2 / y`, so the step is kept well below it.
fn step_cap(p: Point, cfg: &SolverConfig) -> f64 {
    if p.y > p.x {
        cfg.max_step.min(0.25 / (p.y * p.y).max(1.0))
    } else {
        cfg.max_step
    }
}

fn detect_events(step: &DenseStep, cfg: &SolverConfig, out: &mut Vec<Event>) {
    let mark = out.len();
    let slope = |x: f64| rhs(Point::new(x, step.eval(x)));

    // Sample densely enough that at most one level xy = k + 1/2 is crossed
    // between samples.
    let du = (step.x1 * step.y1 - step.x0 * step.y0).abs();
    let pieces = 2 + (4.0 * du) as usize;
    let pieces = pieces.min(4096);
    let mut x_prev = step.x0;
    let mut g_prev = step.dy0;
    for i in 1..=pieces {
        let (x, g) = if i == pieces {
            (step.x1, step.dy1)
        } else {
            let x = step.x0 + step.h() * i as f64 / pieces as f64;
            (x, slope(x))
        };
        if g_prev != 0.0 && (g == 0.0 || (g > 0.0) != (g_prev > 0.0)) {
            let (lo, hi) = bisect_root(slope, x_prev, x, cfg.event_refine_tol);
            let xe = if g == 0.0 && hi == x { x } else { 0.5 * (lo + hi) };
            let loc = Point::new(xe, step.eval(xe));
            let curvature = second_derivative(loc);
            let is_max = if curvature != 0.0 {
                curvature < 0.0
            } else {
                g_prev > 0.0
            };
            out.push(Event {
                kind: if is_max {
                    EventKind::Maximum
                } else {
                    EventKind::Minimum
                },
                location: loc,
                band: None,
            });
        }
        x_prev = x;
        g_prev = g;
    }

    // y - x is non-increasing (|y'| <= 1), so endpoint signs suffice.
    let d0 = step.y0 - step.x0;
    let d1 = step.y1 - step.x1;
    if d0 > 0.0 && d1 <= 0.0 {
        let gap = |x: f64| step.eval(x) - x;
        let (lo, hi) = if d1 == 0.0 {
            (step.x1, step.x1)
        } else {
            bisect_root(gap, step.x0, step.x1, cfg.event_refine_tol)
        };
        let xe = 0.5 * (lo + hi);
        out.push(Event {
            kind: EventKind::DiagonalCrossing,
            location: Point::new(xe, step.eval(xe)),
            band: None,
        });
    }

    out[mark..].sort_by(|a, b| a.location.x.total_cmp(&b.location.x));
}

/// Certifies entry into a trapping band: `xy` must stay inside
/// `[2n + 1/2 - delta, 2n + 1]` below the diagonal for a span of at least
/// `SETTLE_SPAN`, with total variation over the trailing span under
/// `delta / 10`.
#[derive(Default)]
struct SettleTracker {
    band: Option<BandIndex>,
    run_start: f64,
    window: VecDeque<(f64, f64)>,
    variation: f64,
}

impl SettleTracker {
    fn push(&mut self, p: Point) -> Option<BandIndex> {
        let band = band_of(p);
        if band.is_none() || band != self.band {
            self.band = band;
            self.window.clear();
            self.variation = 0.0;
            self.run_start = p.x;
        }
        let band = band?;
        let u = p.x * p.y;
        if let Some(&(_, u_last)) = self.window.back() {
            self.variation += (u - u_last).abs();
        }
        self.window.push_back((p.x, u));
        while self.window.len() > 2 && self.window[1].0 <= p.x - SETTLE_SPAN {
            let (_, u0) = self.window.pop_front().unwrap();
            self.variation -= (self.window[0].1 - u0).abs();
        }
        let spanned = p.x - self.run_start >= SETTLE_SPAN;
        (spanned && self.variation < SETTLE_DELTA / 10.0).then_some(band)
    }
}

fn band_of(p: Point) -> Option<BandIndex> {
    if p.y >= p.x {
        return None;
    }
    let u = p.x * p.y;
    let band = BandIndex::nearest(u);
    (u >= band.asymptote() - SETTLE_DELTA && u <= band.upper_edge()).then_some(band)
}
