//! Critical initial values `a_n` and separatrix diagonal crossings `b_n`.
//!
//! `a_n` is the initial value at which the total maxima count steps from `n`
//! to `n + 1`. `b_n` is the point `x = y = b_n` where the separatrix between
//! the bands with asymptotes `2n + 1/2` and `2n + 5/2` crosses the diagonal.

use alloc::vec::Vec;

use libm::sqrt;

use crate::averaging::predict_a_n;
use crate::classify::{classify, ClassificationResult};
use crate::integrator::{integrate_from, SolverConfig};
use crate::ivp::{BandIndex, Point, ProblemParams};
use crate::Error;

/// Default bracket width for threshold searches.
pub const DEFAULT_WIDTH: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult {
    pub index: u32,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub value: f64,
    pub certified_width: f64,
    /// Classification at `bracket_lo`.
    pub lo: ClassificationResult,
    /// Classification at `bracket_hi`.
    pub hi: ClassificationResult,
    /// Number of classified probes, bracketing included.
    pub probes: usize,
}

impl ThresholdResult {
    fn new(index: u32, lo: (f64, ClassificationResult), hi: (f64, ClassificationResult), probes: usize) -> Self {
        Self {
            index,
            bracket_lo: lo.0,
            bracket_hi: hi.0,
            value: 0.5 * (lo.0 + hi.0),
            certified_width: hi.0 - lo.0,
            lo: lo.1,
            hi: hi.1,
            probes,
        }
    }
}

/// Classify the forward solution from `start`. A solution that has not
/// settled by `x_max` is retried once with the horizon doubled.
pub fn probe(start: Point, cfg: &SolverConfig) -> Result<ClassificationResult, Error> {
    let first = classify(&integrate_from(start, cfg)?);
    if first.settled {
        return Ok(first);
    }
    let retry = classify(&integrate_from(start, &cfg.with_x_max(2.0 * cfg.x_max))?);
    if retry.settled {
        Ok(retry)
    } else {
        let value = if start.x == 0.0 { start.y } else { start.x };
        Err(Error::NearSeparatrixIndecision { value })
    }
}

fn check_width(width: f64, cfg: &SolverConfig) -> Result<(), Error> {
    cfg.validate()?;
    if width.is_nan() || width < 100.0 * cfg.event_refine_tol {
        return Err(Error::InvalidConfig("width must be at least 100 * event_refine_tol"));
    }
    Ok(())
}

/// Probes of `a` with their maxima counts; enforces that the count is a
/// non-decreasing function of `a`.
struct CountProbes {
    seen: Vec<(f64, usize)>,
    cfg: SolverConfig,
}

impl CountProbes {
    fn classify(&mut self, a: f64) -> Result<ClassificationResult, Error> {
        let c = probe(ProblemParams::new(a)?.start(), &self.cfg)?;
        let count = c.maxima_count;
        let pos = self.seen.partition_point(|&(x, _)| x < a);
        if let Some(&(a_lo, count_lo)) = pos.checked_sub(1).map(|i| &self.seen[i]) {
            if count_lo > count {
                return Err(Error::NonMonotoneCount { a_lo, count_lo, a_hi: a, count_hi: count });
            }
        }
        if let Some(&(a_hi, count_hi)) = self.seen.get(pos) {
            if count > count_hi {
                return Err(Error::NonMonotoneCount { a_lo: a, count_lo: count, a_hi, count_hi });
            }
        }
        self.seen.insert(pos, (a, count));
        Ok(c)
    }
}

/// Bracket and bisect the step of the maxima count from `n` to `n + 1`.
///
/// The search starts from `2^(5/6) sqrt(n)` widened by 30% on each side and
/// expands geometrically inside `[0, 4 * 2^(5/6) sqrt(n + 2)]` if that does
/// not bracket.
pub fn find_a_n(n: u32, cfg: &SolverConfig, width: f64) -> Result<ThresholdResult, Error> {
    if n == 0 {
        return Err(Error::InvalidConfig("a_n is defined for n >= 1"));
    }
    check_width(width, cfg)?;
    let mut probes = CountProbes {
        seen: Vec::new(),
        cfg: *cfg,
    };
    let guess = predict_a_n(n);
    let limit = 4.0 * predict_a_n(n + 2);
    let n_us = n as usize;

    let mut lo = (0.7 * guess, probes.classify(0.7 * guess)?);
    let mut hi = (1.3 * guess, probes.classify(1.3 * guess)?);
    let mut step = hi.0 - lo.0;
    while lo.1.maxima_count > n_us {
        hi = lo;
        if lo.0 == 0.0 {
            return Err(Error::BracketFailure { n, lo: 0.0, hi: limit });
        }
        let a = (lo.0 - step).max(0.0);
        lo = (a, probes.classify(a)?);
        step *= 2.0;
    }
    while hi.1.maxima_count <= n_us {
        lo = hi;
        if hi.0 >= limit {
            return Err(Error::BracketFailure { n, lo: 0.0, hi: limit });
        }
        let a = (hi.0 + step).min(limit);
        hi = (a, probes.classify(a)?);
        step *= 2.0;
    }

    while hi.0 - lo.0 > width {
        let mid = 0.5 * (lo.0 + hi.0);
        if mid <= lo.0 || mid >= hi.0 {
            break;
        }
        let c = probes.classify(mid)?;
        if c.maxima_count <= n_us {
            lo = (mid, c);
        } else {
            hi = (mid, c);
        }
    }

    if lo.1.maxima_count != n_us || hi.1.maxima_count != n_us + 1 {
        return Err(Error::UnexpectedClasses {
            n,
            lo: lo.1.maxima_count,
            hi: hi.1.maxima_count,
        });
    }
    Ok(ThresholdResult::new(n, lo, hi, probes.seen.len()))
}

/// Bounds `((2n+1)^(1/2), (2n+3/2)^(1/2))` that enclose `b_n`.
pub fn b_n_bounds(n: u32) -> (f64, f64) {
    let n = f64::from(n);
    (sqrt(2.0 * n + 1.0), sqrt(2.0 * n + 1.5))
}

/// Bisect on the diagonal starting point `(s, s)` between the solutions
/// that settle to `xy -> 2n + 1/2` and those that settle to `2n + 5/2`.
pub fn find_b_n(n: u32, cfg: &SolverConfig, width: f64) -> Result<ThresholdResult, Error> {
    check_width(width, cfg)?;
    let (lo_bound, hi_bound) = b_n_bounds(n);
    let below = BandIndex(n);
    let above = BandIndex(n + 1);
    let mut probes = 0usize;
    let mut side = |s: f64| -> Result<(bool, ClassificationResult), Error> {
        probes += 1;
        let c = probe(Point::new(s, s), cfg)?;
        match c.terminal_band {
            Some(b) if b == below => Ok((false, c)),
            Some(b) if b == above => Ok((true, c)),
            _ => Err(Error::BracketFailure { n, lo: lo_bound, hi: hi_bound }),
        }
    };

    let (lo_above, lo_c) = side(lo_bound)?;
    let (hi_above, hi_c) = side(hi_bound)?;
    if lo_above || !hi_above {
        return Err(Error::BracketFailure { n, lo: lo_bound, hi: hi_bound });
    }
    let mut lo = (lo_bound, lo_c);
    let mut hi = (hi_bound, hi_c);
    while hi.0 - lo.0 > width {
        let mid = 0.5 * (lo.0 + hi.0);
        if mid <= lo.0 || mid >= hi.0 {
            break;
        }
        let (is_above, c) = side(mid)?;
        if is_above {
            hi = (mid, c);
        } else {
            lo = (mid, c);
        }
    }
    Ok(ThresholdResult::new(n, lo, hi, probes))
}

/// Classify each initial value in order. Errors are kept per entry.
pub fn sweep(a_values: &[f64], cfg: &SolverConfig) -> Vec<Result<ClassificationResult, Error>> {
    a_values
        .iter()
        .map(|&a| {
            let params = ProblemParams::new(a)?;
            Ok(classify(&crate::integrator::integrate(params, cfg)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_bounds_enclose() {
        let (lo, hi) = b_n_bounds(0);
        assert_eq!(lo, 1.0);
        assert!((hi - 1.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_arguments() {
        let cfg = SolverConfig::default();
        assert!(find_a_n(0, &cfg, 1e-9).is_err());
        assert!(matches!(find_a_n(1, &cfg, 1e-12), Err(Error::InvalidConfig(_))));
        assert!(matches!(find_b_n(1, &cfg, 0.0), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn empty_sweep() {
        assert!(sweep(&[], &SolverConfig::default()).is_empty());
    }

    #[test]
    fn sweep_keeps_errors_in_place() {
        let out = sweep(&[1.0, -1.0, 2.0], &SolverConfig::default());
        assert_eq!(out.len(), 3);
        assert!(out[0].is_ok() && out[2].is_ok());
        assert_eq!(out[1], Err(Error::InvalidInitialValue(-1.0)));
    }

    #[test]
    fn first_threshold_brackets_unit_step() {
        let r = find_a_n(1, &SolverConfig::default(), 1e-6).unwrap();
        assert_eq!(r.lo.maxima_count, 1);
        assert_eq!(r.hi.maxima_count, 2);
        assert!(r.certified_width <= 1e-6);
        assert!(r.bracket_lo < r.value && r.value < r.bracket_hi);
    }

    #[test]
    fn first_separatrix_inside_bounds() {
        let r = find_b_n(0, &SolverConfig::default(), 1e-6).unwrap();
        let (lo, hi) = b_n_bounds(0);
        assert!(lo < r.bracket_lo && r.bracket_hi < hi);
        assert_eq!(r.lo.terminal_band, Some(BandIndex(0)));
        assert_eq!(r.hi.terminal_band, Some(BandIndex(1)));
    }
}
