//! CSV and JSON file formats. Every real is written with 17 significant
//! digits so that it parses back to the same double.

use std::io::{Read, Write};

use oscillode_core::averaging::{
    drift_per_cycle, mean_slope_x, mean_slope_xy, DriftParams, MeanPath,
};
use oscillode_core::thresholds::b_n_bounds;
use oscillode_core::{
    BandIndex, ClassificationResult, Event, EventKind, Node, Point, ThresholdResult, Trajectory,
};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_real(field: &str) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::Format(format!("`{field}` is not a number")))
}

fn writer<W: Write>(w: W, header: &[&str]) -> Result<csv::Writer<W>> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header)?;
    Ok(out)
}

fn reader<R: Read>(r: R, header: &[&str]) -> Result<csv::Reader<R>> {
    let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(r);
    let found: Vec<String> = rd.headers()?.iter().map(str::to_owned).collect();
    if found != header {
        return Err(Error::Format(format!("expected header {header:?}, found {found:?}")));
    }
    Ok(rd)
}

pub const TRAJECTORY_HEADER: [&str; 3] = ["x", "y", "dy"];
pub const EVENTS_HEADER: [&str; 4] = ["kind", "x", "y", "band"];
pub const POINTS_HEADER: [&str; 2] = ["x", "y"];
pub const A_N_HEADER: [&str; 3] = ["n", "a_n", "width"];
pub const B_N_HEADER: [&str; 5] = ["n", "b_n", "lo_bound", "hi_bound", "width"];
pub const DRIFT_HEADER: [&str; 4] = ["alpha", "drift", "slope_X", "slope_xy"];

/// One row per node: `x,y,dy`.
pub fn write_trajectory<W: Write>(w: W, traj: &Trajectory) -> Result<()> {
    let mut out = writer(w, &TRAJECTORY_HEADER)?;
    for n in traj.nodes() {
        out.write_record([fmt_real(n.x), fmt_real(n.y), fmt_real(n.dy)])?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_trajectory<R: Read>(r: R) -> Result<Vec<Node>> {
    let mut rd = reader(r, &TRAJECTORY_HEADER)?;
    let mut nodes = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        nodes.push(Node {
            x: parse_real(&rec[0])?,
            y: parse_real(&rec[1])?,
            dy: parse_real(&rec[2])?,
        });
    }
    Ok(nodes)
}

/// `kind,x,y,band` with an empty band field when not applicable.
pub fn write_events<W: Write>(w: W, events: &[Event]) -> Result<()> {
    let mut out = writer(w, &EVENTS_HEADER)?;
    for e in events {
        let band = e.band.map_or_else(String::new, |b| b.0.to_string());
        out.write_record([
            e.kind.name().to_owned(),
            fmt_real(e.location.x),
            fmt_real(e.location.y),
            band,
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_events<R: Read>(r: R) -> Result<Vec<Event>> {
    let mut rd = reader(r, &EVENTS_HEADER)?;
    let mut events = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        let kind = EventKind::from_name(&rec[0])
            .ok_or_else(|| Error::Format(format!("unknown event kind `{}`", &rec[0])))?;
        let band = match rec[3].trim() {
            "" => None,
            s => Some(BandIndex(
                s.parse()
                    .map_err(|_| Error::Format(format!("`{s}` is not a band index")))?,
            )),
        };
        events.push(Event {
            kind,
            location: Point::new(parse_real(&rec[1])?, parse_real(&rec[2])?),
            band,
        });
    }
    Ok(events)
}

pub fn write_points<W: Write>(w: W, points: &[Point]) -> Result<()> {
    let mut out = writer(w, &POINTS_HEADER)?;
    for p in points {
        out.write_record([fmt_real(p.x), fmt_real(p.y)])?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_points<R: Read>(r: R) -> Result<Vec<Point>> {
    let mut rd = reader(r, &POINTS_HEADER)?;
    rd.records()
        .map(|rec| {
            let rec = rec?;
            Ok(Point::new(parse_real(&rec[0])?, parse_real(&rec[1])?))
        })
        .collect()
}

pub fn write_mean_path<W: Write>(w: W, path: &MeanPath) -> Result<()> {
    write_points(w, &path.samples)
}

/// `n,a_n,width`.
pub fn write_a_thresholds<W: Write>(w: W, rows: &[ThresholdResult]) -> Result<()> {
    let mut out = writer(w, &A_N_HEADER)?;
    for r in rows {
        out.write_record([r.index.to_string(), fmt_real(r.value), fmt_real(r.certified_width)])?;
    }
    out.flush()?;
    Ok(())
}

/// `n,b_n,lo_bound,hi_bound,width`, the bounds being `(2n+1)^(1/2)` and
/// `(2n+3/2)^(1/2)`.
pub fn write_b_thresholds<W: Write>(w: W, rows: &[ThresholdResult]) -> Result<()> {
    let mut out = writer(w, &B_N_HEADER)?;
    for r in rows {
        let (lo, hi) = b_n_bounds(r.index);
        out.write_record([
            r.index.to_string(),
            fmt_real(r.value),
            fmt_real(lo),
            fmt_real(hi),
            fmt_real(r.certified_width),
        ])?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftRow {
    pub alpha: f64,
    pub drift: f64,
    pub slope_x: f64,
    pub slope_xy: f64,
}

pub fn drift_table(alphas: &[f64], omega: f64) -> Result<Vec<DriftRow>> {
    alphas
        .iter()
        .map(|&alpha| {
            Ok(DriftRow {
                alpha,
                drift: drift_per_cycle(DriftParams::new(alpha, omega)?)?,
                slope_x: mean_slope_x(alpha)?,
                slope_xy: mean_slope_xy(alpha)?,
            })
        })
        .collect()
}

/// `alpha = 0.05, 0.10, ..., 0.95`.
pub fn default_alphas() -> Vec<f64> {
    (1..20).map(|k| f64::from(k) * 0.05).collect()
}

pub fn write_drift_table<W: Write>(w: W, rows: &[DriftRow]) -> Result<()> {
    let mut out = writer(w, &DRIFT_HEADER)?;
    for r in rows {
        out.write_record([
            fmt_real(r.alpha),
            fmt_real(r.drift),
            fmt_real(r.slope_x),
            fmt_real(r.slope_xy),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// JSON form of a classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub a: f64,
    pub maxima_count: usize,
    pub settled: bool,
    pub terminal_band: Option<u32>,
    pub terminal_constant: Option<f64>,
    pub crossing_x: Option<f64>,
}

impl From<&ClassificationResult> for ClassificationRecord {
    fn from(c: &ClassificationResult) -> Self {
        Self {
            a: c.start.y,
            maxima_count: c.maxima_count,
            settled: c.settled,
            terminal_band: c.terminal_band.map(|b| b.0),
            terminal_constant: c.terminal_constant,
            crossing_x: c.diagonal_crossing.map(|p| p.x),
        }
    }
}

pub fn classification_json(c: &ClassificationResult) -> Result<String> {
    Ok(serde_json::to_string(&ClassificationRecord::from(c))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use oscillode_core::{integrate, ProblemParams, SolverConfig};

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_real(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_real(-2.5), "-2.5000000000000000e0");
        assert_eq!(parse_real(&fmt_real(std::f64::consts::PI)).unwrap(), std::f64::consts::PI);
    }

    #[test]
    fn trajectory_round_trip() {
        let t = integrate(ProblemParams::new(2.0).unwrap(), &SolverConfig::default()).unwrap();
        let mut buf = Vec::new();
        write_trajectory(&mut buf, &t).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("x,y,dy\n"));
        let nodes = read_trajectory(buf.as_slice()).unwrap();
        assert_eq!(nodes, t.nodes().collect::<Vec<_>>());

        let mut buf = Vec::new();
        write_events(&mut buf, t.events()).unwrap();
        assert_eq!(read_events(buf.as_slice()).unwrap(), t.events());
    }

    #[test]
    fn wrong_header_rejected() {
        assert!(read_points("a,b\n1,2\n".as_bytes()).is_err());
        assert!(read_events("kind,x,y,band\nPeak,1,2,\n".as_bytes()).is_err());
    }

    #[test]
    fn drift_table_rows() {
        let rows = drift_table(&default_alphas(), 1.0).unwrap();
        assert_eq!(rows.len(), 19);
        assert!((rows[0].alpha - 0.05).abs() < 1e-15 && (rows[18].alpha - 0.95).abs() < 1e-15);
        assert!(rows.iter().all(|r| r.drift < 0.0 && r.slope_xy < 0.0));
        assert!(drift_table(&[1.0], 1.0).is_err());
    }

    #[test]
    fn classification_json_fields() {
        let t = integrate(ProblemParams::new(4.0).unwrap(), &SolverConfig::default()).unwrap();
        let c = oscillode_core::classify(&t);
        let v: serde_json::Value = serde_json::from_str(&classification_json(&c).unwrap()).unwrap();
        for key in ["a", "maxima_count", "settled", "terminal_band", "terminal_constant", "crossing_x"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["a"], 4.0);
        assert_eq!(v["settled"], true);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn points_round_trip(pts in proptest::collection::vec((-1e6f64..1e6, -1e-300f64..1e300), 0..20)) {
                let points: Vec<Point> = pts.into_iter().map(|(x, y)| Point::new(x, y)).collect();
                let mut buf = Vec::new();
                write_points(&mut buf, &points).unwrap();
                prop_assert_eq!(read_points(buf.as_slice()).unwrap(), points);
            }
        }
    }
}
