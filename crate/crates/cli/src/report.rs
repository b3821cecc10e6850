use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Indeterminate => "indeterminate",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub name: String,
    /// The statement this record checks, in words.
    pub anchor: String,
    pub status: Status,
    pub value: Option<f64>,
    pub error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
    pub detail: String,
}

impl Record {
    pub fn new(name: impl Into<String>, anchor: &str, status: Status) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.to_string(),
            status,
            value: None,
            error: None,
            runtime_ms: None,
            detail: String::new(),
        }
    }

    pub fn exact(name: impl Into<String>, anchor: &str, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(name, anchor, Status::from_bool(ok)).detail(detail)
    }

    /// `|value| <= bound` for a quadrature result; unconverged runs are indeterminate.
    pub fn bounded(
        name: impl Into<String>,
        anchor: &str,
        value: f64,
        error: f64,
        bound: f64,
        converged: bool,
    ) -> Self {
        let status = if !converged || !value.is_finite() {
            Status::Indeterminate
        } else {
            Status::from_bool(value.abs() <= bound)
        };
        Self::new(name, anchor, status)
            .value(value, error)
            .detail(format!("bound {bound:.1e}"))
    }

    pub fn failed(name: impl Into<String>, anchor: &str, err: impl std::fmt::Display) -> Self {
        Self::new(name, anchor, Status::Fail).detail(format!("error: {err}"))
    }

    pub fn value(mut self, value: f64, error: f64) -> Self {
        self.value = Some(value);
        self.error = Some(error);
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }

    pub fn note(mut self, d: impl AsRef<str>) -> Self {
        if !self.detail.is_empty() {
            self.detail.push_str("; ");
        }
        self.detail.push_str(d.as_ref());
        self
    }
}

/// Runs `f` and stamps the wall time on every record it returns.
pub fn timed(f: impl FnOnce() -> Vec<Record>) -> Vec<Record> {
    let start = Instant::now();
    let mut out = f();
    let ms = start.elapsed().as_secs_f64() * 1e3;
    for r in &mut out {
        r.runtime_ms = Some(ms);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(serialize_with = "as_map")]
    pub settings: Vec<(String, String)>,
    pub records: Vec<Record>,
    pub summary: Summary,
}

fn as_map<S: serde::Serializer>(v: &[(String, String)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(v.len()))?;
    for (k, x) in v {
        m.serialize_entry(k, x)?;
    }
    m.end()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Report {
    pub fn new(command: &str, settings: Vec<(String, String)>, records: Vec<Record>) -> Self {
        let count = |s| records.iter().filter(|r| r.status == s).count();
        let summary = Summary {
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            indeterminate: count(Status::Indeterminate),
        };
        Self { command: command.to_string(), settings, records, summary }
    }

    /// 0 all pass, 1 any fail, 2 some indeterminate and none failed.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.indeterminate > 0 {
            2
        } else {
            0
        }
    }

    /// Drops wall times so that identical inputs give identical bytes.
    pub fn without_timings(mut self) -> Self {
        for r in &mut self.records {
            r.runtime_ms = None;
        }
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "anchor", "status", "value", "error", "runtime_ms", "detail"])
            .expect("in-memory write");
        let opt = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
        for r in &self.records {
            w.write_record([
                r.name.as_str(),
                &r.anchor,
                r.status.label(),
                &opt(r.value),
                &opt(r.error),
                &opt(r.runtime_ms),
                &r.detail,
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.command);
        for (k, v) in &self.settings {
            let _ = writeln!(s, "  {k} = {v}");
        }
        let width = self.records.iter().map(|r| r.name.chars().count()).max().unwrap_or(0);
        for r in &self.records {
            let status = r.status.label().to_uppercase();
            let _ = write!(s, "{status:<13} {:<width$}", r.name);
            if let (Some(v), Some(e)) = (r.value, r.error) {
                let _ = write!(s, "  {v:+.12e} ± {e:.1e}");
            }
            if let Some(ms) = r.runtime_ms {
                let _ = write!(s, "  [{ms:.0} ms]");
            }
            if !r.detail.is_empty() {
                let _ = write!(s, "  ({})", r.detail);
            }
            let _ = writeln!(s, "  <{}>", r.anchor);
        }
        let _ = writeln!(
            s,
            "{} pass, {} fail, {} indeterminate",
            self.summary.pass, self.summary.fail, self.summary.indeterminate
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let pass = Record::new("a", "x", Status::Pass);
        let fail = Record::new("b", "x", Status::Fail);
        let ind = Record::new("c", "x", Status::Indeterminate);
        assert_eq!(Report::new("t", vec![], vec![pass.clone()]).exit_code(), 0);
        assert_eq!(Report::new("t", vec![], vec![pass.clone(), ind.clone()]).exit_code(), 2);
        assert_eq!(Report::new("t", vec![], vec![ind, fail, pass]).exit_code(), 1);
        assert_eq!(Report::new("t", vec![], vec![]).exit_code(), 0);
    }

    #[test]
    fn bounded_records() {
        assert_eq!(Record::bounded("r", "x", 1e-7, 1e-9, 1e-6, true).status, Status::Pass);
        assert_eq!(Record::bounded("r", "x", 1e-5, 1e-9, 1e-6, true).status, Status::Fail);
        assert_eq!(Record::bounded("r", "x", 1e-7, 1e-9, 1e-6, false).status, Status::Indeterminate);
        assert_eq!(Record::bounded("r", "x", f64::NAN, 1e-9, 1e-6, true).status, Status::Indeterminate);
    }

    #[test]
    fn csv_quotes_fields() {
        let r = Record::exact("a, b", "x", true, "say \"hi\"");
        let out = Report::new("t", vec![], vec![r]).render(Format::Csv);
        assert!(out.lines().nth(1).unwrap().starts_with("\"a, b\",x,pass"));
    }
}
