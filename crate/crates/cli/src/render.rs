use std::fmt::Write as _;

use num_traits::Signed;
use serde::Serialize;

use crate::args::Format;
use crate::commands::{ExpandReport, OracleOutput, ScanOutput, VerifyReport};

pub enum Report {
    Expand(ExpandReport),
    Verify(VerifyReport),
    Scan(ScanOutput),
    Oracle(OracleOutput),
}

impl Report {
    /// Exit status contract: false maps to exit code 1.
    pub fn passed(&self) -> bool {
        match self {
            Report::Expand(_) => true,
            Report::Verify(v) => v.passed(),
            Report::Scan(s) => s.passed(),
            Report::Oracle(o) => o.first_mismatch.is_none(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => match self {
                Report::Expand(r) => json(r),
                Report::Verify(r) => json(r),
                Report::Scan(r) => json(r),
                Report::Oracle(r) => json(r),
            },
            Format::Csv => csv_text(self),
            Format::Plain => plain(self),
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_text(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let res: csv::Result<()> = (|| {
        match report {
            Report::Expand(r) => {
                w.write_record(["index", "coefficient"])?;
                for (i, c) in r.coefficients.iter().enumerate() {
                    w.write_record([i.to_string(), c.clone()])?;
                }
            }
            Report::Scan(r) => {
                let with_series = r.preset.is_some();
                if with_series {
                    w.write_record(["series", "index", "coefficient", "negative"])?;
                } else {
                    w.write_record(["index", "coefficient", "negative"])?;
                }
                for entry in &r.scans {
                    for (i, c) in entry.coefficients.coeffs().iter().enumerate() {
                        let mut row = Vec::with_capacity(4);
                        if with_series {
                            row.push(entry.series.clone());
                        }
                        row.push(i.to_string());
                        row.push(c.to_string());
                        row.push(c.is_negative().to_string());
                        w.write_record(&row)?;
                    }
                }
            }
            Report::Verify(r) => {
                w.write_record(["check", "passed", "detail"])?;
                for c in &r.checks {
                    w.write_record([
                        c.label.as_str(),
                        if c.passed { "true" } else { "false" },
                        c.detail.as_deref().unwrap_or(""),
                    ])?;
                }
            }
            Report::Oracle(r) => {
                w.write_record(["n", "even_weight", "odd_weight", "enumerated", "series"])?;
                for row in &r.rows {
                    w.write_record([
                        row.n.to_string(),
                        row.even_weight.to_string(),
                        row.odd_weight.to_string(),
                        row.enumerated.to_string(),
                        row.series.clone(),
                    ])?;
                }
            }
        }
        Ok(())
    })();
    res.expect("writing csv to memory");
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
}

fn plain(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Expand(r) => {
            let kind = if r.kind.is_signed() { "" } else { " unsigned" };
            let _ = writeln!(out, "{}{kind} to order {}", r.series, r.order);
            let _ = writeln!(out, "{}", r.coefficients.join(" "));
        }
        Report::Verify(r) => {
            let _ = writeln!(out, "{} (order {}): {}", r.identity, r.order, r.verdict);
            for c in &r.checks {
                match (&c.detail, c.passed) {
                    (_, true) => {
                        let _ = writeln!(out, "  ok    {}", c.label);
                    }
                    (Some(d), false) => {
                        let _ = writeln!(out, "  FAIL  {}: {d}", c.label);
                    }
                    (None, false) => {
                        let _ = writeln!(out, "  FAIL  {}", c.label);
                    }
                }
            }
        }
        Report::Scan(r) => {
            for s in &r.scans {
                if s.report.negative_indices.is_empty() {
                    let _ = writeln!(out, "{} to {}: no negative coefficients", s.series, r.order);
                } else {
                    let list: Vec<String> = s
                        .report
                        .negative_indices
                        .iter()
                        .map(|i| i.to_string())
                        .collect();
                    let _ = writeln!(
                        out,
                        "{} to {}: {} negative, at {}",
                        s.series,
                        r.order,
                        list.len(),
                        list.join(", ")
                    );
                }
            }
        }
        Report::Oracle(r) => {
            let _ = writeln!(
                out,
                "{} {} up to n={}: {}",
                r.series,
                r.kind.name(),
                r.nmax,
                r.verdict
            );
            let _ = writeln!(
                out,
                "{:>4} {:>10} {:>10} {:>10} {:>10}",
                "n", "even", "odd", "oracle", "series"
            );
            for row in &r.rows {
                let _ = writeln!(
                    out,
                    "{:>4} {:>10} {:>10} {:>10} {:>10}",
                    row.n, row.even_weight, row.odd_weight, row.enumerated, row.series
                );
            }
        }
    }
    out
}
