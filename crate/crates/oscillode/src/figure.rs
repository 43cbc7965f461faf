//! Plot-ready data files.
//!
//! Figure 1 (`fig1_*`), for each `a` in {2, 4, 6, 8}:
//! * `fig1_trajectory_a{a}.csv` (`x,y,dy`): the direct solution;
//! * `fig1_meanpath_a{a}.csv` (`x,y`): the averaged mean path to the
//!   diagonal;
//! * `fig1_hyperbola_a{a}.csv` (`x,y`): the curve `xy = C` for the
//!   solution's terminal constant, from the diagonal to the end of the
//!   trajectory.
//!
//! Figure 2 (`fig2_*`) for band family `n`:
//! * `fig2_bands_n{n}.csv` (`c,x,y`): level curves `xy = c` for
//!   `c` in {2n, 2n+1/2, 2n+1, 2n+3/2, 2n+2, 2n+5/2} in the region `x > y`;
//! * `fig2_separatrix_below_n{n}.csv`, `fig2_separatrix_above_n{n}.csv`
//!   (`x,y,dy`): solutions started on the diagonal just below and just above
//!   `b_n`, which follow the separatrix before splitting towards `2n + 1/2`
//!   and `2n + 5/2`.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use oscillode_core::averaging::solve_mean_path;
use oscillode_core::thresholds::find_b_n;
use oscillode_core::{classify, integrate, integrate_from, Point, ProblemParams};

use crate::config::Settings;
use crate::error::Result;
use crate::formats::{fmt_real, write_mean_path, write_points, write_trajectory};

pub const FIGURE1_VALUES: [f64; 4] = [2.0, 4.0, 6.0, 8.0];
const CURVE_SAMPLES: usize = 400;

fn create(dir: &Path, name: String, written: &mut Vec<PathBuf>) -> Result<BufWriter<File>> {
    let path = dir.join(name);
    let file = File::create(&path)?;
    written.push(path);
    Ok(BufWriter::new(file))
}

/// Points on `xy = c` for `x` in `[x0, x1]`, spaced geometrically.
fn hyperbola(c: f64, x0: f64, x1: f64) -> Vec<Point> {
    let ratio = (x1 / x0).ln();
    (0..=CURVE_SAMPLES)
        .map(|k| {
            let x = x0 * (ratio * k as f64 / CURVE_SAMPLES as f64).exp();
            Point::new(x, c / x)
        })
        .collect()
}

pub fn figure1(dir: &Path, settings: &Settings) -> Result<Vec<PathBuf>> {
    let cfg = &settings.solver;
    let mut written = Vec::new();
    for a in FIGURE1_VALUES {
        let tag = format!("{a}");
        let traj = integrate(ProblemParams::new(a)?, cfg)?;
        write_trajectory(create(dir, format!("fig1_trajectory_a{tag}.csv"), &mut written)?, &traj)?;

        let path = solve_mean_path(a, cfg)?;
        write_mean_path(create(dir, format!("fig1_meanpath_a{tag}.csv"), &mut written)?, &path)?;

        let c = classify(&traj);
        let constant = c
            .terminal_constant
            .unwrap_or_else(|| traj.end().x * traj.end().y);
        let curve = hyperbola(constant, constant.sqrt(), traj.x_end().max(constant.sqrt() * 2.0));
        write_points(create(dir, format!("fig1_hyperbola_a{tag}.csv"), &mut written)?, &curve)?;
    }
    Ok(written)
}

pub fn figure2(dir: &Path, n: u32, settings: &Settings) -> Result<Vec<PathBuf>> {
    let cfg = &settings.solver;
    let mut written = Vec::new();
    let base = 2.0 * f64::from(n);
    let levels = [base, base + 0.5, base + 1.0, base + 1.5, base + 2.0, base + 2.5];
    let x_far = 3.0 * (base + 3.0).sqrt();

    let mut out = csv::Writer::from_writer(create(dir, format!("fig2_bands_n{n}.csv"), &mut written)?);
    out.write_record(["c", "x", "y"])?;
    for c in levels.into_iter().filter(|&c| c > 0.0) {
        for p in hyperbola(c, c.sqrt(), x_far) {
            out.write_record([fmt_real(c), fmt_real(p.x), fmt_real(p.y)])?;
        }
    }
    out.flush()?;
    drop(out);

    let b = find_b_n(n, cfg, settings.width)?;
    for (side, s) in [("below", b.bracket_lo), ("above", b.bracket_hi)] {
        let traj = integrate_from(Point::new(s, s), cfg)?;
        write_trajectory(
            create(dir, format!("fig2_separatrix_{side}_n{n}.csv"), &mut written)?,
            &traj,
        )?;
    }
    Ok(written)
}
