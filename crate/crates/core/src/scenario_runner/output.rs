//! CSV and SVG emission.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::dynamics::Trajectory;
use crate::error::Result;

use super::{RunResult, Table};

pub const CSV_HEADER: &str = "t,I,phi,region,K,C,Y,w,R,labor_share,savings_rate";

/// 17 significant digits; plain decimal for moderate magnitudes.
pub fn fmt17(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    if (-5..=16).contains(&exp) {
        format!("{:.*}", (16 - exp).max(0) as usize, x)
    } else {
        sci
    }
}

pub fn trajectory_csv(t: &Trajectory) -> String {
    let mut s = String::with_capacity(t.points.len() * 200);
    s.push_str(CSV_HEADER);
    s.push('\n');
    for p in &t.points {
        let cols = [p.t, p.index, p.phi];
        let rest = [p.k, p.c, p.y, p.w, p.r, p.labor_share, p.savings_rate];
        let head: Vec<String> = cols.iter().map(|&v| fmt17(v)).collect();
        let tail: Vec<String> = rest.iter().map(|&v| fmt17(v)).collect();
        let _ = writeln!(s, "{},{},{}", head.join(","), p.region.code(), tail.join(","));
    }
    s
}

pub fn events_csv(t: &Trajectory) -> String {
    let mut s = String::from("kind,t\n");
    for e in &t.events {
        let _ = writeln!(s, "{},{}", e.kind.name(), fmt17(e.t));
    }
    s
}

pub fn table_csv(t: &Table) -> String {
    let mut s = t.header.join(",");
    s.push('\n');
    for r in &t.rows {
        let cols: Vec<String> = r.iter().map(|&v| fmt17(v)).collect();
        s.push_str(&cols.join(","));
        s.push('\n');
    }
    s
}

/// `foo.csv` -> `foo.<suffix>.csv`.
pub fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}.csv"))
}

/// Writes the trajectory, its events sidecar and any extension tables.
/// Returns every path written.
pub fn emit_csv(result: &RunResult, path: &Path) -> Result<Vec<PathBuf>> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    let mut written = vec![path.to_path_buf()];
    fs::write(path, trajectory_csv(&result.trajectory))?;
    let ev = sidecar(path, "events");
    fs::write(&ev, events_csv(&result.trajectory))?;
    written.push(ev);
    for t in &result.tables {
        let p = sidecar(path, &t.suffix);
        fs::write(&p, table_csv(t))?;
        written.push(p);
    }
    Ok(written)
}

/// Log-scale line chart of output, labor income and capital income.
pub fn trajectory_svg(t: &Trajectory, title: &str) -> String {
    let (w, h, pad) = (720.0, 420.0, 50.0);
    let series: [(&str, &str, Box<dyn Fn(&crate::dynamics::TrajectoryPoint) -> f64>); 3] = [
        ("Y", "#222222", Box::new(|p| p.y)),
        ("wL", "#1f77b4", Box::new(|p| p.labor_share * p.y)),
        ("RK", "#d62728", Box::new(|p| (1.0 - p.labor_share) * p.y)),
    ];
    let t_max = t.points.last().map(|p| p.t).unwrap_or(1.0).max(1e-9);
    let logs: Vec<f64> = t
        .points
        .iter()
        .flat_map(|p| series.iter().map(move |s| (s.2)(p)))
        .filter(|v| *v > 0.0 && v.is_finite())
        .map(f64::log10)
        .collect();
    let lo = logs.iter().cloned().fold(f64::INFINITY, f64::min).floor();
    let hi = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max).ceil().max(lo + 1.0);
    let x = |tt: f64| pad + (w - 2.0 * pad) * tt / t_max;
    let y = |v: f64| h - pad - (h - 2.0 * pad) * (v.log10() - lo) / (hi - lo);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{pad}" y="20">{title}</text>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{pad} {} H{} M{pad} {pad} V{}" stroke="black" fill="none"/>"#,
        h - pad,
        w - pad,
        h - pad
    );
    for (i, (name, color, f)) in series.iter().enumerate() {
        let mut d = String::new();
        for p in &t.points {
            let v = f(p);
            if v > 0.0 && v.is_finite() {
                let _ = write!(d, "{}{:.2} {:.2} ", if d.is_empty() { "M" } else { "L" }, x(p.t), y(v));
            }
        }
        let _ = writeln!(s, r#"<path d="{d}" stroke="{color}" fill="none" stroke-width="1.5"/>"#);
        let _ = writeln!(s, r#"<text x="{}" y="{}" fill="{color}">{name}</text>"#, w - pad + 5.0, pad + 15.0 * i as f64);
    }
    let _ = writeln!(s, r#"<text x="{pad}" y="{}">t = 0 .. {t_max}, log10 scale {lo} .. {hi}</text>"#, h - 15.0);
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(0.0), "0");
        assert_eq!(fmt17(0.1), "0.10000000000000001");
        assert_eq!(fmt17(4.6), "4.5999999999999996");
        assert_eq!(fmt17(1.0), "1.0000000000000000");
        assert_eq!(fmt17(1e-30), "1.0000000000000001e-30");
        for &v in &[0.1, 4.6, 1.0 / 3.0, 12345.678, 3.2e-7, 9.99e20] {
            assert_eq!(fmt17(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn sidecar_names() {
        assert_eq!(sidecar(Path::new("out/a.csv"), "events"), PathBuf::from("out/a.events.csv"));
    }
}
