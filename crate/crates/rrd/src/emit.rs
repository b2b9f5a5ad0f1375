//! Writes an [`ExperimentReport`] to a directory.
//!
//! Every CSV depends only on the configuration, so two runs with the same
//! config and seed produce identical bytes. The wall-clock time goes to
//! `summary.txt` alone.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rrd_core::EvalGrid;

use crate::harness::{ExperimentReport, Outcome};
use crate::{io, HarnessError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formats {
    pub csv: bool,
    pub svg: bool,
}

impl Default for Formats {
    fn default() -> Self {
        Formats {
            csv: true,
            svg: true,
        }
    }
}

/// Writes the report and returns the paths created.
pub fn emit(
    report: &ExperimentReport,
    dir: &Path,
    formats: Formats,
) -> Result<Vec<PathBuf>, HarnessError> {
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let mut written = Vec::new();
    let mut put = |name: &str, body: String| -> Result<(), HarnessError> {
        let path = dir.join(name);
        fs::write(&path, body).map_err(|e| HarnessError::io(&path, e))?;
        written.push(path);
        Ok(())
    };

    if formats.csv {
        put("report.csv", report_csv(report))?;
        put("replicates.csv", replicates_csv(report))?;
        put("pm_table.csv", pm_csv(report))?;
        for (summary, est) in report.estimators.iter().zip(&report.representative) {
            if let Some(est) = est {
                let mut buf = Vec::new();
                io::write_density(est, &mut buf)?;
                put(
                    &format!("estimates_{}.csv", summary.name()),
                    String::from_utf8(buf).unwrap(),
                )?;
            }
        }
        put("config.toml", report.config.to_toml_string())?;
    }
    if formats.svg {
        put("overlay.svg", overlay_svg(report))?;
    }
    put("summary.txt", summary_text(report))?;
    Ok(written)
}

pub fn report_csv(report: &ExperimentReport) -> String {
    let mut s = String::from("estimator,mean_l2,std_l2,n_ok,n_failed,kappa\n");
    for e in &report.estimators {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            e.name(),
            e.mean_l2,
            e.std_l2,
            e.n_ok,
            e.n_failed,
            report.kappa()
        );
    }
    s
}

pub fn replicates_csv(report: &ExperimentReport) -> String {
    let mut s = String::from("replicate,seed,estimator,l2,error\n");
    for (r, seed) in report.seeds.iter().enumerate() {
        for e in &report.estimators {
            match &e.outcomes[r] {
                Outcome::Ok(v) => {
                    let _ = writeln!(s, "{r},{seed},{},{v},", e.name());
                }
                Outcome::Failed(msg) => {
                    let _ = writeln!(s, "{r},{seed},{},,\"{}\"", e.name(), msg.replace('"', "'"));
                }
            }
        }
    }
    s
}

pub fn pm_csv(report: &ExperimentReport) -> String {
    let mut s = String::from("m,quadrature,empirical_mean,empirical_std\n");
    for row in &report.pm_table {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            row.m, row.quadrature, row.empirical_mean, row.empirical_std
        );
    }
    s
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

/// Line plot of the replicate-0 estimates over the true density.
pub fn overlay_svg(report: &ExperimentReport) -> String {
    let (width, height, pad) = (800.0, 450.0, 40.0);
    let grid = match report.representative.iter().flatten().next() {
        Some(e) => e.grid,
        None => report
            .config
            .wavelet_config()
            .map(|w| w.eval_grid)
            .unwrap_or(EvalGrid::benchmark()),
    };
    let truth: Vec<f64> = match report.config.mixture() {
        Ok(m) => grid.nodes().map(|x| m.pdf(x)).collect(),
        Err(_) => vec![0.0; grid.len()],
    };
    let mut lo = 0.0f64;
    let mut hi = 0.0f64;
    for v in truth.iter().chain(
        report
            .representative
            .iter()
            .flatten()
            .flat_map(|e| &e.values),
    ) {
        lo = lo.min(*v);
        hi = hi.max(*v);
    }
    if hi <= lo {
        hi = lo + 1.0;
    }
    let sx = |x: f64| pad + (x - grid.lo) / (grid.hi - grid.lo) * (width - 2.0 * pad);
    let sy = |y: f64| height - pad - (y - lo) / (hi - lo) * (height - 2.0 * pad);
    let polyline = |name: &str, color: &str, values: &[f64]| -> String {
        let mut pts = String::new();
        for (x, y) in grid.nodes().zip(values) {
            let _ = write!(pts, "{:.2},{:.2} ", sx(x), sy(*y));
        }
        format!(
            "  <polyline data-name=\"{name}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.2\" points=\"{}\"/>\n",
            pts.trim_end()
        )
    };

    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    );
    s.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    let _ = writeln!(
        s,
        "  <line x1=\"{pad}\" y1=\"{y0:.2}\" x2=\"{x1}\" y2=\"{y0:.2}\" stroke=\"#999\"/>",
        y0 = sy(0.0),
        x1 = width - pad
    );
    s.push_str(&polyline("truth", "black", &truth));
    let mut legend = Vec::new();
    for (i, (summary, est)) in report
        .estimators
        .iter()
        .zip(&report.representative)
        .enumerate()
    {
        if let Some(est) = est {
            let color = PALETTE[i % PALETTE.len()];
            s.push_str(&polyline(&summary.name(), color, &est.values));
            legend.push((summary.name(), color));
        }
    }
    legend.insert(0, ("truth".into(), "black"));
    for (i, (name, color)) in legend.iter().enumerate() {
        let _ = writeln!(
            s,
            "  <text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"{color}\">{name}</text>",
            width - pad - 110.0,
            pad + 14.0 * i as f64
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn summary_text(report: &ExperimentReport) -> String {
    let cfg = &report.config;
    let mut s = format!(
        "horizon {} delta {} replicates {} base_seed {} kappa {}\n",
        cfg.horizon,
        cfg.delta,
        cfg.replicates,
        cfg.base_seed,
        report.kappa()
    );
    for e in &report.estimators {
        let _ = writeln!(
            s,
            "{:<14} mean {:.4e}  std {:.4e}  ok {}  failed {}",
            e.name(),
            e.mean_l2,
            e.std_l2,
            e.n_ok,
            e.n_failed
        );
    }
    let _ = writeln!(s, "wall clock {:.3} s", report.wall_clock.as_secs_f64());
    s
}
