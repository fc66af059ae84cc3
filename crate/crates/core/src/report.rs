//! CSV result files with an embedded run-configuration header.
//!
//! ```text
//! # spamfilter report v1
//! # corpus: data/lingspam
//! # ...
//! classifier,lambda,m,k,seed,sr,sp,wacc_mean,werr_mean,baseline_werr,tcr,fold_waccs
//! nb,1,100,,0,0.823285,0.990000,0.969000,0.031000,0.166264,5.363355,0.965398;...
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::evaluate::AggregateResult;

pub const FORMAT_LINE: &str = "# spamfilter report v1";
pub const CSV_HEADER: &str =
    "classifier,lambda,m,k,seed,sr,sp,wacc_mean,werr_mean,baseline_werr,tcr,fold_waccs";

/// Keys that must agree for two reports to share a fold plan.
pub const FOLD_PLAN_KEYS: [&str; 5] = ["corpus", "layout", "stemming", "seed", "folds"];

fn fraction(x: f64) -> String {
    if x.is_infinite() {
        "inf".to_string()
    } else {
        format!("{x:.6}")
    }
}

pub fn csv_row(result: &AggregateResult) -> String {
    let folds: Vec<String> = result.folds.iter().map(|f| format!("{:.6}", f.wacc)).collect();
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        result.classifier.id(),
        result.lambda,
        result.m,
        result.classifier.k().map(|k| k.to_string()).unwrap_or_default(),
        result.seed,
        fraction(result.spam_recall),
        result.spam_precision.map_or_else(|| "inf".to_string(), fraction),
        fraction(result.mean_wacc),
        fraction(result.mean_werr),
        fraction(result.baseline_werr),
        fraction(result.tcr),
        folds.join(";"),
    )
}

/// Renders a full report: format line, `# key: value` config echo, CSV.
pub fn render(config: &[(String, String)], results: &[AggregateResult]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{FORMAT_LINE}");
    for (key, value) in config {
        let _ = writeln!(out, "# {key}: {value}");
    }
    let _ = writeln!(out, "{CSV_HEADER}");
    for r in results {
        let _ = writeln!(out, "{}", csv_row(r));
    }
    out
}

/// One parsed CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub classifier: String,
    pub lambda: f64,
    pub m: usize,
    pub k: Option<usize>,
    pub seed: u64,
    pub fold_waccs: Vec<f64>,
    pub fields: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub config: Vec<(String, String)>,
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn config_value(&self, key: &str) -> Option<&str> {
        self.config
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// Whether both reports were produced on the same corpus and fold plan.
    pub fn same_fold_plan(&self, other: &Report) -> bool {
        FOLD_PLAN_KEYS
            .iter()
            .all(|key| self.config_value(key) == other.config_value(key))
    }

    pub fn parse(text: &str) -> Result<Report> {
        let bad = |msg: String| Error::Parse(format!("report: {msg}"));
        let mut lines = text.lines();
        if lines.next() != Some(FORMAT_LINE) {
            return Err(bad("missing format line".into()));
        }
        let mut config = Vec::new();
        let mut rows = Vec::new();
        let mut seen_header = false;
        for line in lines {
            if let Some(entry) = line.strip_prefix("# ") {
                let (key, value) = entry
                    .split_once(": ")
                    .ok_or_else(|| bad(format!("bad config line `{line}`")))?;
                config.push((key.to_string(), value.to_string()));
            } else if line == CSV_HEADER {
                seen_header = true;
            } else if !line.trim().is_empty() {
                if !seen_header {
                    return Err(bad("data before CSV header".into()));
                }
                rows.push(parse_row(line).map_err(bad)?);
            }
        }
        if !seen_header {
            return Err(bad("missing CSV header".into()));
        }
        Ok(Report { config, rows })
    }
}

fn parse_row(line: &str) -> std::result::Result<ReportRow, String> {
    let fields: Vec<String> = line.split(',').map(str::to_string).collect();
    if fields.len() != 12 {
        return Err(format!("expected 12 columns, found {}", fields.len()));
    }
    let num = |i: usize| -> std::result::Result<f64, String> {
        fields[i]
            .parse()
            .map_err(|_| format!("bad number `{}`", fields[i]))
    };
    let fold_waccs = fields[11]
        .split(';')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| format!("bad fold score `{s}`")))
        .collect::<std::result::Result<_, _>>()?;
    Ok(ReportRow {
        classifier: fields[0].clone(),
        lambda: num(1)?,
        m: fields[2].parse().map_err(|_| format!("bad m `{}`", fields[2]))?,
        k: if fields[3].is_empty() {
            None
        } else {
            Some(fields[3].parse().map_err(|_| format!("bad k `{}`", fields[3]))?)
        },
        seed: fields[4].parse().map_err(|_| format!("bad seed `{}`", fields[4]))?,
        fold_waccs,
        fields,
    })
}
