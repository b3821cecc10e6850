//! Tabulation of I(lambda) over a grid, with an optional SVG plot.

use std::fmt::Write as _;

use hyperchow_numerics::{i_of_lambda, Complex64, QuadOptions};
use serde::Serialize;

use crate::config::format_complex;
use crate::report::Status;
use crate::suites::FUNCTIONAL_BOUND;

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub lambda: String,
    pub status: Status,
    pub value: Option<f64>,
    pub error: Option<f64>,
    pub cells: Option<usize>,
    /// Filled for paired scans: `I(1/lambda)`, its error, and the residual
    /// `I(lambda) - I(1/lambda) - log|lambda|`.
    pub inverse: Option<f64>,
    pub inverse_error: Option<f64>,
    pub log_abs_lambda: Option<f64>,
    pub residual: Option<f64>,
    pub note: String,
    #[serde(skip)]
    pub point: Complex64,
}

fn blank(l: Complex64, status: Status, note: &str) -> ScanRow {
    ScanRow {
        lambda: format_complex(l),
        status,
        value: None,
        error: None,
        cells: None,
        inverse: None,
        inverse_error: None,
        log_abs_lambda: None,
        residual: None,
        note: note.to_string(),
        point: l,
    }
}

pub fn scan(grid: &[Complex64], paired: bool, opts: &QuadOptions) -> Vec<ScanRow> {
    grid.iter().map(|&l| row(l, paired, opts)).collect()
}

fn row(l: Complex64, paired: bool, opts: &QuadOptions) -> ScanRow {
    if !l.is_finite() || l == Complex64::new(0.0, 0.0) || l == Complex64::new(1.0, 0.0) {
        return blank(l, Status::Fail, "invalid: lambda must avoid 0 and 1");
    }
    let r = match i_of_lambda(l, opts) {
        Ok(r) => r,
        Err(e) => return blank(l, Status::Fail, &format!("invalid: {e}")),
    };
    let mut row = blank(l, Status::Pass, "");
    row.value = Some(r.value.value);
    row.error = Some(r.value.error_estimate);
    row.cells = Some(r.value.cells_used);
    let mut converged = r.value.converged;
    if paired {
        match i_of_lambda(l.inv(), opts) {
            Ok(inv) => {
                let log = l.norm().ln();
                let residual = r.value.value - inv.value.value - log;
                row.inverse = Some(inv.value.value);
                row.inverse_error = Some(inv.value.error_estimate);
                row.log_abs_lambda = Some(log);
                row.residual = Some(residual);
                converged &= inv.value.converged;
                if residual.abs() > FUNCTIONAL_BOUND {
                    row.status = Status::Fail;
                    row.note = format!("residual above {FUNCTIONAL_BOUND:e}");
                }
            }
            Err(e) => return blank(l, Status::Fail, &format!("invalid: {e}")),
        }
    }
    if !converged && row.status == Status::Pass {
        row.status = Status::Indeterminate;
        row.note = "not converged within the cell budget".into();
    }
    row
}

pub fn exit_code(rows: &[ScanRow]) -> i32 {
    if rows.iter().any(|r| r.status == Status::Fail) {
        1
    } else if rows.iter().any(|r| r.status == Status::Indeterminate) {
        2
    } else {
        0
    }
}

pub fn csv(rows: &[ScanRow], paired: bool) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["lambda", "status", "I", "error", "cells"];
    if paired {
        header.extend(["I_inverse", "error_inverse", "log_abs_lambda", "residual"]);
    }
    header.push("note");
    w.write_record(&header).expect("in-memory write");
    let f = |v: Option<f64>| v.map(|x| format!("{x:.15e}")).unwrap_or_default();
    for r in rows {
        let mut rec = vec![r.lambda.clone(), r.status.label().into(), f(r.value), f(r.error)];
        rec.push(r.cells.map(|c| c.to_string()).unwrap_or_default());
        if paired {
            rec.extend([f(r.inverse), f(r.inverse_error), f(r.log_abs_lambda), f(r.residual)]);
        }
        rec.push(r.note.clone());
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

pub fn text(rows: &[ScanRow]) -> String {
    let mut s = String::new();
    for r in rows {
        let _ = write!(s, "{:<13} lambda = {:<12}", r.status.label().to_uppercase(), r.lambda);
        if let (Some(v), Some(e)) = (r.value, r.error) {
            let _ = write!(s, " I = {v:+.12} ± {e:.1e}");
        }
        if let Some(res) = r.residual {
            let _ = write!(s, "  I - I(1/lambda) - log|lambda| = {res:+.2e}");
        }
        if !r.note.is_empty() {
            let _ = write!(s, "  ({})", r.note);
        }
        s.push('\n');
    }
    s
}

/// I against |lambda| on a log axis, with error bars; invalid rows are skipped.
pub fn svg(rows: &[ScanRow]) -> String {
    let pts: Vec<(f64, f64, f64)> = rows
        .iter()
        .filter_map(|r| Some((r.point.norm().ln(), r.value?, r.error.unwrap_or(0.0))))
        .collect();
    let (w, h, m) = (640.0, 400.0, 50.0);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13">log |lambda|</text>"#,
        w / 2.0,
        h - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="14" y="{}" font-family="sans-serif" font-size="13" transform="rotate(-90 14 {})">I(lambda)</text>"#,
        h / 2.0,
        h / 2.0
    );
    if !pts.is_empty() {
        let range = |v: Vec<f64>| {
            let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if hi - lo < 1e-12 {
                (lo - 1.0, hi + 1.0)
            } else {
                let pad = 0.05 * (hi - lo);
                (lo - pad, hi + pad)
            }
        };
        let (x0, x1) = range(pts.iter().map(|p| p.0).collect());
        let (y0, y1) = range(pts.iter().flat_map(|p| [p.1 - p.2, p.1 + p.2]).collect());
        let sx = |x: f64| m + (x - x0) / (x1 - x0) * (w - 2.0 * m);
        let sy = |y: f64| h - m - (y - y0) / (y1 - y0) * (h - 2.0 * m);
        let _ = writeln!(
            s,
            r#"<rect x="{m}" y="{m}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            w - 2.0 * m,
            h - 2.0 * m
        );
        for (label, v, pos) in [(x0, sx(x0), true), (x1, sx(x1), true), (y0, sy(y0), false), (y1, sy(y1), false)] {
            if pos {
                let _ = writeln!(s, r#"<text x="{v:.2}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11">{label:.3}</text>"#, h - m + 16.0);
            } else {
                let _ = writeln!(s, r#"<text x="{}" y="{v:.2}" text-anchor="end" font-family="sans-serif" font-size="11">{label:.3}</text>"#, m - 4.0);
            }
        }
        for (x, y, e) in &pts {
            let (px, py) = (sx(*x), sy(*y));
            let _ = writeln!(
                s,
                r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="gray"/>"#,
                sy(y - e),
                sy(y + e)
            );
            let _ = writeln!(s, r#"<circle cx="{px:.2}" cy="{py:.2}" r="3" fill="steelblue"/>"#);
        }
    }
    s.push_str("</svg>\n");
    s
}
