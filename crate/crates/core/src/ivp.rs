//! The initial-value problem `y'(x) = cos(pi x y)`, `y(0) = a`, and the exact
//! quantities derived from it.
//!
//! Everything downstream is organised by the product `xy`: the slope of a
//! solution is `+1` on `xy = 2n`, `-1` on `xy = 2n + 1` and `0` on
//! `xy = 2n +- 1/2`.

use core::f64::consts::PI;

use libm::{cos, sin};

/// Initial value `y(0) = a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams {
    pub a: f64,
}

impl ProblemParams {
    pub fn new(a: f64) -> Result<Self, crate::Error> {
        if !a.is_finite() || a < 0.0 {
            return Err(crate::Error::InvalidInitialValue(a));
        }
        Ok(Self { a })
    }

    pub fn start(&self) -> Point {
        Point::new(0.0, self.a)
    }
}

/// A point in the `(x, y)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// `true` when strictly above the diagonal `x = y`.
    pub fn above_diagonal(&self) -> bool {
        self.y > self.x
    }
}

/// Index `n` of the trapping band `2n + 1/2 <= xy <= 2n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BandIndex(pub u32);

impl BandIndex {
    /// The level `2n + 1/2` that solutions in this band approach.
    pub fn asymptote(self) -> f64 {
        2.0 * f64::from(self.0) + 0.5
    }

    /// Upper edge `2n + 1` of the band.
    pub fn upper_edge(self) -> f64 {
        2.0 * f64::from(self.0) + 1.0
    }

    /// Band whose asymptote is closest to `c`.
    pub fn nearest(c: f64) -> Self {
        let n = libm::round((c - 0.5) / 2.0);
        BandIndex(if n <= 0.0 { 0 } else { n as u32 })
    }
}

/// Slope of the solution through `p`: `cos(pi x y)`.
#[inline]
pub fn rhs(p: Point) -> f64 {
    cos(PI * p.x * p.y)
}

/// Analytic `y''` along a solution: `-pi (y + x y') sin(pi x y)`.
///
/// Negative at a stationary point means a local maximum.
#[inline]
pub fn second_derivative(p: Point) -> f64 {
    -PI * (p.y + p.x * rhs(p)) * sin(PI * p.x * p.y)
}

/// The product `xy` whose half-integer levels organise the classification.
#[inline]
pub fn grad_line_value(p: Point) -> f64 {
    p.x * p.y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rhs_at_origin_is_one() {
        for a in [0.0, 1.0, 7.5] {
            assert_eq!(rhs(Point::new(0.0, a)), 1.0);
        }
    }

    #[test]
    fn rhs_on_level_lines() {
        for n in 0..6 {
            let x = 1.7;
            let zero = Point::new(x, (2.0 * n as f64 + 0.5) / x);
            let minus = Point::new(x, (2.0 * n as f64 + 1.0) / x);
            let plus = Point::new(x, (2.0 * n as f64) / x);
            assert!(rhs(zero).abs() < 1e-13);
            assert!((rhs(minus) + 1.0).abs() < 1e-13);
            assert!((rhs(plus) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn second_derivative_sign_at_extrema() {
        for m in 0..5 {
            let x = 0.9;
            let y = (2.0 * m as f64 + 0.5) / x;
            let d = second_derivative(Point::new(x, y));
            assert!((d + PI * y).abs() < 1e-9 * y, "{d}");
            let y = (2.0 * m as f64 + 1.5) / x;
            let d = second_derivative(Point::new(x, y));
            assert!((d - PI * y).abs() < 1e-9 * y, "{d}");
        }
        assert_eq!(second_derivative(Point::new(0.0, 0.0)), 0.0);
    }

    #[test]
    fn grad_line_examples() {
        assert_eq!(grad_line_value(Point::new(2.0, 3.0)), 6.0);
        assert_eq!(grad_line_value(Point::new(0.0, 4.0)), 0.0);
        let s = 2.0 * libm::pow(2.0, -1.0 / 3.0);
        assert!((grad_line_value(Point::new(s, s)) - 2.519_842_099_789_746).abs() < 1e-12);
    }

    #[test]
    fn params_reject_negative() {
        assert!(ProblemParams::new(-1.0).is_err());
        assert!(ProblemParams::new(f64::NAN).is_err());
        assert!(ProblemParams::new(0.0).is_ok());
    }

    #[test]
    fn nearest_band() {
        assert_eq!(BandIndex::nearest(0.5), BandIndex(0));
        assert_eq!(BandIndex::nearest(0.49), BandIndex(0));
        assert_eq!(BandIndex::nearest(6.5002), BandIndex(3));
        assert_eq!(BandIndex(3).asymptote(), 6.5);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn rhs_bounded(x in 0.0f64..100.0, y in -50.0f64..50.0) {
                prop_assert!(rhs(Point::new(x, y)).abs() <= 1.0);
            }

            #[test]
            fn rhs_two_periodic_in_product(x in 0.1f64..10.0, y in 0.0f64..10.0, k in 1i32..20) {
                let shifted = Point::new(x, y + 2.0 * f64::from(k) / x);
                prop_assert!((rhs(Point::new(x, y)) - rhs(shifted)).abs() < 1e-9);
            }
        }
    }
}
