#![allow(clippy::excessive_precision)]

//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use oscillode_core::{classify, integrate_from, ClassificationResult, Point, SolverConfig};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let s = f(c - h * XGK[i]) + f(c + h * XGK[i]);
        kronrod += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss-Kronrod (7, 15) quadrature by recursive bisection to an
/// absolute tolerance.
pub fn quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (v, err) = gk15(f, a, b);
        if err <= tol || depth == 0 {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, 0.5 * tol, depth - 1) + rec(f, m, b, 0.5 * tol, depth - 1)
    }
    rec(&f, a, b, abs_tol, 40)
}

/// Direct quadrature of the per-cycle drift
/// `int_0^{2 pi / omega} cos(omega X) / (1 + alpha cos(omega X)) dX`.
pub fn drift_by_quadrature(alpha: f64, omega: f64) -> f64 {
    let period = 2.0 * std::f64::consts::PI / omega;
    quad(
        |x| {
            let c = (omega * x).cos();
            c / (1.0 + alpha * c)
        },
        0.0,
        period,
        1e-13,
    )
}

pub fn config(tol: f64) -> SolverConfig {
    SolverConfig {
        rel_tol: tol,
        abs_tol: tol,
        event_refine_tol: tol / 100.0,
        ..SolverConfig::default()
    }
}

pub fn classify_start(start: Point, cfg: &SolverConfig) -> ClassificationResult {
    let mut c = classify(&integrate_from(start, cfg).unwrap());
    if !c.settled {
        c = classify(&integrate_from(start, &cfg.with_x_max(4.0 * cfg.x_max)).unwrap());
    }
    assert!(c.settled, "no settlement from {start:?}");
    c
}

/// Plain bisection on a boolean predicate that is false at `lo` and true at
/// `hi`.
pub fn bisect_predicate<P: FnMut(f64) -> bool>(mut pred: P, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    assert!(!pred(lo) && pred(hi));
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Brute-force a_n: scan `a` on a uniform grid, then bisect every interval
/// where the maxima count changes. Returns `(n, lo, hi)` for each step from
/// `n` to `n + 1` maxima found in `[a_lo, a_hi]`.
pub fn scan_a_thresholds(a_lo: f64, a_hi: f64, step: f64, cfg: &SolverConfig, tol: f64) -> Vec<(usize, f64, f64)> {
    let count = |a: f64| classify_start(Point::new(0.0, a), cfg).maxima_count;
    let mut out = Vec::new();
    let k_max = ((a_hi - a_lo) / step).round() as usize;
    let mut prev = (a_lo, count(a_lo));
    for k in 1..=k_max {
        let a = a_lo + k as f64 * step;
        let c = count(a);
        assert!(c >= prev.1, "count decreased between {} and {a}", prev.0);
        assert!(c <= prev.1 + 1, "two thresholds inside one scan cell at {a}");
        if c == prev.1 + 1 {
            let n = prev.1;
            let (lo, hi) = bisect_predicate(|x| count(x) > n, prev.0, a, tol);
            out.push((n, lo, hi));
        }
        prev = (a, c);
    }
    out
}

/// Brute-force b_n: scan diagonal starts over the band bounds, then bisect
/// the change of terminal band.
pub fn scan_b_threshold(n: u32, step: f64, cfg: &SolverConfig, tol: f64) -> (f64, f64) {
    let lo_bound = (2.0 * n as f64 + 1.0).sqrt();
    let hi_bound = (2.0 * n as f64 + 1.5).sqrt();
    let band = |s: f64| classify_start(Point::new(s, s), cfg).terminal_band.unwrap().0;
    let mut prev = lo_bound;
    let mut s = lo_bound + step;
    let mut found = None;
    while s < hi_bound + step {
        let s_clamped = s.min(hi_bound);
        let b = band(s_clamped);
        assert!(b == n || b == n + 1, "unexpected band {b} at {s_clamped}");
        if b == n + 1 {
            found = Some((prev, s_clamped));
            break;
        }
        prev = s_clamped;
        s += step;
    }
    let (lo, hi) = found.expect("no band change inside the bounds");
    bisect_predicate(|s| band(s) > n, lo, hi, tol)
}
