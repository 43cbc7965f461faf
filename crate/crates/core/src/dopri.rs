//! Dormand-Prince 5(4) stepping for scalar ODEs, with the free 4th order
//! interpolant attached to every accepted step.

use crate::Error;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

/// One accepted step with its continuous extension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseStep {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub dy0: f64,
    pub dy1: f64,
    cont: [f64; 4],
}

impl DenseStep {
    pub fn h(&self) -> f64 {
        self.x1 - self.x0
    }

    /// Interpolated `y(x)` for `x` in `[x0, x1]`. Endpoints return the node
    /// values exactly.
    pub fn eval(&self, x: f64) -> f64 {
        if x == self.x0 {
            return self.y0;
        }
        if x == self.x1 {
            return self.y1;
        }
        let s = (x - self.x0) / self.h();
        let s1 = 1.0 - s;
        let [ydiff, bspl, c4, c5] = self.cont;
        self.y0 + s * (ydiff + s1 * (bspl + s * (c4 + s1 * c5)))
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.x0 && x <= self.x1
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

/// Adaptive stepper for `y' = f(x, y)`.
pub struct Stepper<F> {
    f: F,
    ctl: StepControl,
    x: f64,
    y: f64,
    dy: f64,
    h: f64,
    steps: usize,
}

impl<F: Fn(f64, f64) -> f64> Stepper<F> {
    pub fn new(f: F, x0: f64, y0: f64, h_max: f64, ctl: StepControl) -> Self {
        let dy = f(x0, y0);
        let h = initial_step(&f, x0, y0, dy, h_max, &ctl);
        Self {
            f,
            ctl,
            x: x0,
            y: y0,
            dy,
            h,
            steps: 0,
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// Take one accepted step of length at most `h_max`, never stepping past
    /// `x_end`.
    pub fn step(&mut self, h_max: f64, x_end: f64) -> Result<DenseStep, Error> {
        if self.steps >= self.ctl.max_steps {
            return Err(Error::TooManySteps {
                x: self.x,
                limit: self.ctl.max_steps,
            });
        }
        let mut h = self.h.min(h_max);
        let mut rejected = false;
        loop {
            let mut last = false;
            if self.x + h >= x_end || self.x + 1.01 * h >= x_end {
                h = x_end - self.x;
                last = true;
            }
            if h <= 16.0 * f64::EPSILON * self.x.abs().max(1.0) {
                return Err(Error::StepUnderflow { x: self.x, h });
            }
            let (step, err) = self.attempt(h, last, x_end);
            if err <= 1.0 {
                let grow = if err == 0.0 {
                    MAX_FACTOR
                } else {
                    (SAFETY * libm::pow(err, -0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
                };
                self.h = if rejected { h.min(h * grow) } else { h * grow };
                self.x = step.x1;
                self.y = step.y1;
                self.dy = step.dy1;
                self.steps += 1;
                return Ok(step);
            }
            rejected = true;
            h *= (SAFETY * libm::pow(err, -0.2)).max(MIN_FACTOR);
        }
    }

    fn attempt(&self, h: f64, last: bool, x_end: f64) -> (DenseStep, f64) {
        let f = &self.f;
        let (x, y, k1) = (self.x, self.y, self.dy);
        let k2 = f(x + C2 * h, y + h * (A21 * k1));
        let k3 = f(x + C3 * h, y + h * (A31 * k1 + A32 * k2));
        let k4 = f(x + C4 * h, y + h * (A41 * k1 + A42 * k2 + A43 * k3));
        let k5 = f(x + C5 * h, y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
        let k6 = f(
            x + h,
            y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5),
        );
        let y1 = y + h * (A71 * k1 + A73 * k3 + A74 * k4 + A75 * k5 + A76 * k6);
        let x1 = if last { x_end } else { x + h };
        let k7 = f(x1, y1);

        let err_raw = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
        let scale = self.ctl.abs_tol + self.ctl.rel_tol * y.abs().max(y1.abs());
        let err = (err_raw / scale).abs();

        let ydiff = y1 - y;
        let bspl = h * k1 - ydiff;
        let c4 = ydiff - h * k7 - bspl;
        let c5 = h * (D1 * k1 + D3 * k3 + D4 * k4 + D5 * k5 + D6 * k6 + D7 * k7);
        let step = DenseStep {
            x0: x,
            x1,
            y0: y,
            y1,
            dy0: k1,
            dy1: k7,
            cont: [ydiff, bspl, c4, c5],
        };
        (step, if err.is_nan() { f64::INFINITY } else { err })
    }
}

fn initial_step<F: Fn(f64, f64) -> f64>(
    f: &F,
    x0: f64,
    y0: f64,
    dy0: f64,
    h_max: f64,
    ctl: &StepControl,
) -> f64 {
    let scale = ctl.abs_tol + ctl.rel_tol * y0.abs();
    let d0 = y0.abs() / scale;
    let d1 = dy0.abs() / scale;
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    let h0 = h0.min(h_max);
    let y1 = y0 + h0 * dy0;
    let d2 = (f(x0 + h0, y1) - dy0).abs() / scale / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        libm::pow(0.01 / d1.max(d2), 0.2)
    };
    (100.0 * h0).min(h1).min(h_max)
}

/// Bisection for a sign change of `g` on `[lo, hi]` down to width `tol`.
/// Requires `g(lo)` and `g(hi)` to have opposite signs (or `g(hi) == 0`).
pub(crate) fn bisect_root<G: Fn(f64) -> f64>(g: G, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut g_lo = g(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = g(mid);
        if g_mid == 0.0 {
            return (mid, mid);
        }
        if (g_mid > 0.0) == (g_lo > 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctl(tol: f64) -> StepControl {
        StepControl {
            rel_tol: tol,
            abs_tol: tol,
            max_steps: 1_000_000,
        }
    }

    #[test]
    fn exponential_decay() {
        let mut s = Stepper::new(|_, y| -y, 0.0, 1.0, 1.0, ctl(1e-10));
        while s.x() < 2.0 {
            s.step(1.0, 2.0).unwrap();
        }
        assert_eq!(s.x(), 2.0);
        assert!((s.y() - libm::exp(-2.0)).abs() < 1e-9);
    }

    #[test]
    fn interpolant_matches_endpoints_and_interior() {
        let mut s = Stepper::new(|x, _| libm::cos(x), 0.0, 0.0, 0.5, ctl(1e-11));
        let mut worst: f64 = 0.0;
        while s.x() < 3.0 {
            let st = s.step(0.5, 3.0).unwrap();
            assert_eq!(st.eval(st.x0), st.y0);
            assert_eq!(st.eval(st.x1), st.y1);
            for k in 1..8 {
                let x = st.x0 + st.h() * k as f64 / 8.0;
                worst = worst.max((st.eval(x) - libm::sin(x)).abs());
            }
        }
        assert!(worst < 1e-9, "{worst}");
    }

    #[test]
    fn underflow_is_reported() {
        // A singular right-hand side drives the step below representable size.
        let mut s = Stepper::new(|x, _| 1.0 / (1.0 - x), 0.0, 0.0, 0.1, ctl(1e-12));
        let mut result = Ok(());
        for _ in 0..100_000 {
            if let Err(e) = s.step(0.1, 2.0) {
                result = Err(e);
                break;
            }
        }
        assert!(matches!(result, Err(Error::StepUnderflow { .. })), "{result:?}");
    }

    #[test]
    fn bisection_width() {
        let (lo, hi) = bisect_root(|x| x * x - 2.0, 0.0, 2.0, 1e-13);
        assert!(hi - lo <= 1e-13);
        assert!((lo - core::f64::consts::SQRT_2).abs() < 1e-12);
    }
}
