//! JSON and CSV renderings of a [`Report`].
//!
//! Both are pure functions of the report. Timing and host details live only
//! in [`Meta`], which callers leave out for byte-stable output.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use crate::harness::{Meta, Report};

pub const CSV_COLUMNS: [&str; 10] = [
    "experiment",
    "cell",
    "r",
    "k_r",
    "h_r",
    "kind",
    "value",
    "verdict",
    "expected",
    "pass",
];

pub fn meta(elapsed_ms: u128) -> Meta {
    Meta {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        threads: rayon::current_num_threads(),
        generated_unix_ms: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis())
            .unwrap_or(0),
        elapsed_ms,
    }
}

pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> serde_json::Result<Report> {
    serde_json::from_str(text)
}

fn num(x: f64) -> String {
    format!("{x}")
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// One row per series point, check row and oracle deviation, after `# key=value`
/// lines for the metadata when present.
pub fn to_csv(report: &Report) -> String {
    let mut out = String::new();
    if let Some(m) = &report.meta {
        out.push_str(&format!(
            "# tool={} version={} threads={} generated_unix_ms={} elapsed_ms={}\n",
            m.tool, m.version, m.threads, m.generated_unix_ms, m.elapsed_ms
        ));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).expect("in-memory write");
    let exp = report.experiment.as_str();
    for c in &report.cells {
        let verdict = c
            .verdict
            .as_ref()
            .map(|v| v.kind.as_str())
            .unwrap_or("none");
        let expected = c.expected.join("|");
        for s in &c.series {
            w.write_record([
                exp,
                &c.key,
                &s.r.to_string(),
                &s.k_r.to_string(),
                &s.h_r.to_string(),
                &c.kind,
                &num(s.value),
                verdict,
                &expected,
                c.status.name(),
            ])
            .expect("in-memory write");
        }
    }
    for c in &report.checks {
        w.write_record([
            exp,
            &format!("{}:{}", c.name, c.instance),
            &opt(c.r),
            "",
            "",
            "check",
            &num(c.lhs),
            &format!("{} {}", c.op, num(c.rhs)),
            if c.expected { "holds" } else { "fails" },
            if c.pass { "pass" } else { "fail" },
        ])
        .expect("in-memory write");
    }
    for d in &report.deviations {
        let cell = format!(
            "oracle:{};m={};class={};alpha={}",
            d.example,
            d.m,
            d.class,
            num(d.alpha)
        );
        let pass = if d.pass { "pass" } else { "fail" };
        w.write_record([
            exp,
            &cell,
            "",
            "",
            "",
            "deviation-lo",
            &num(d.lo_deviation),
            "",
            "0",
            pass,
        ])
        .expect("in-memory write");
        w.write_record([
            exp,
            &cell,
            "",
            "",
            "",
            "deviation-hi",
            &num(d.hi_deviation),
            "",
            &num(d.expected_hi),
            pass,
        ])
        .expect("in-memory write");
    }
    let body = w.into_inner().expect("in-memory flush");
    out.push_str(std::str::from_utf8(&body).expect("utf-8 fields"));
    out
}

/// Writes `<dir>/<experiment>.json` and `<dir>/<experiment>.csv`.
pub fn write(dir: &Path, report: &Report) -> io::Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(dir)?;
    let json = dir.join(format!("{}.json", report.experiment));
    let csv = dir.join(format!("{}.csv", report.experiment));
    fs::write(&json, to_json(report))?;
    fs::write(&csv, to_csv(report))?;
    Ok((json, csv))
}
