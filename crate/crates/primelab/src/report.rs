//! Report types and deterministic CSV/JSON serialization.
//!
//! Real numbers are rendered with 12 significant digits through one shared
//! formatter, so repeated runs with the same configuration produce
//! byte-identical files. CSV headers are fixed:
//!
//! ```text
//! identities: x,lhs,rhs,diff,exact_match
//! scans:      x,pi,theta,estimate,raw_error,scaled_error
//! dusart:     x,pi,lower_bound,upper_bound,lower_margin,upper_margin,lower_holds,upper_holds
//! ```

use std::io::{self, Write};

use crate::identities::DusartCheck;

pub const IDENTITY_CSV_HEADER: &str = "x,lhs,rhs,diff,exact_match";
pub const SCAN_CSV_HEADER: &str = "x,pi,theta,estimate,raw_error,scaled_error";
pub const DUSART_CSV_HEADER: &str =
    "x,pi,lower_bound,upper_bound,lower_margin,upper_margin,lower_holds,upper_holds";

/// Render a finite f64 with 12 significant digits, `%.12g`-style: plain
/// decimal while the exponent is moderate, scientific otherwise, trailing
/// zeros trimmed. `0` for zero.
pub fn format_significant(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        // not produced by any evaluator; keep serialization total anyway
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.11e}", v.abs());
    let (mantissa, exp) = sci.split_once('e').expect("{:e} always contains 'e'");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let digits: Vec<u8> = mantissa.bytes().filter(|&b| b != b'.').collect();
    debug_assert_eq!(digits.len(), 12);
    let digit_str = std::str::from_utf8(&digits).unwrap();

    let body = if !(-4..12).contains(&exp) {
        let trimmed = digit_str.trim_end_matches('0');
        let trimmed = if trimmed.is_empty() { "0" } else { trimmed };
        if trimmed.len() == 1 {
            format!("{trimmed}e{exp}")
        } else {
            format!("{}.{}e{exp}", &trimmed[..1], &trimmed[1..])
        }
    } else if exp >= 0 {
        let split = exp as usize + 1;
        let int_part = &digit_str[..split];
        let frac = digit_str[split..].trim_end_matches('0');
        if frac.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac}")
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        let all = format!("{zeros}{digit_str}");
        format!("0.{}", all.trim_end_matches('0'))
    };
    if v < 0.0 {
        format!("-{body}")
    } else {
        body
    }
}

/// One side of an identity row: exact integers stay integers so that
/// integer identities are compared and serialized without going through
/// floating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SideValue {
    Int(u64),
    Real(f64),
}

impl SideValue {
    fn render(&self) -> String {
        match self {
            SideValue::Int(v) => v.to_string(),
            SideValue::Real(v) => format_significant(*v),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityRow {
    pub x: u64,
    pub lhs: SideValue,
    pub rhs: SideValue,
    pub diff: f64,
    pub exact_match: bool,
}

/// Per-x record of both sides of an identity plus the mismatch tally.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    identity: String,
    rows: Vec<IdentityRow>,
    mismatch_count: usize,
}

impl IdentityReport {
    /// The mismatch count is derived from the rows, never stored separately.
    pub fn new(identity: impl Into<String>, rows: Vec<IdentityRow>) -> Self {
        let mismatch_count = rows.iter().filter(|r| !r.exact_match).count();
        IdentityReport {
            identity: identity.into(),
            rows,
            mismatch_count,
        }
    }

    pub fn identity(&self) -> &str {
        &self.identity
    }

    pub fn rows(&self) -> &[IdentityRow] {
        &self.rows
    }

    pub fn mismatch_count(&self) -> usize {
        self.mismatch_count
    }
}

/// Per-x record of an estimator scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateRecord {
    pub x: u64,
    pub pi: u64,
    pub theta: f64,
    pub estimate: f64,
    /// π(x) − estimate.
    pub raw_error: f64,
    /// (π(x) − estimate)·ln x.
    pub scaled_error: f64,
}

impl EstimateRecord {
    pub fn new(x: u64, pi: u64, theta: f64, estimate: f64) -> Self {
        let raw_error = pi as f64 - estimate;
        EstimateRecord {
            x,
            pi,
            theta,
            estimate,
            raw_error,
            scaled_error: raw_error * (x as f64).ln(),
        }
    }
}

/// Summary of one verify or scan run. Wall time is printed with the
/// summary but never serialized into row exports, which must stay
/// byte-identical across runs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub identity: String,
    pub rows_evaluated: u64,
    pub mismatches: u64,
    pub max_abs_diff: f64,
    pub max_scaled_diff: f64,
    pub wall_time_seconds: f64,
}

impl std::fmt::Display for RunSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "identity:        {}", self.identity)?;
        writeln!(f, "rows evaluated:  {}", self.rows_evaluated)?;
        writeln!(f, "mismatches:      {}", self.mismatches)?;
        writeln!(
            f,
            "max |diff|:      {}",
            format_significant(self.max_abs_diff)
        )?;
        writeln!(
            f,
            "max scaled diff: {}",
            format_significant(self.max_scaled_diff)
        )?;
        write!(f, "wall time:       {:.3} s", self.wall_time_seconds)
    }
}

/// Output format for row exports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

/// Everything a run can export.
#[derive(Debug, Clone, PartialEq)]
pub enum ReportPayload {
    Identity(IdentityReport),
    Estimates {
        estimator: String,
        records: Vec<EstimateRecord>,
    },
    Dusart {
        records: Vec<DusartCheck>,
    },
}

/// Serialize a payload in the requested format. Line separator is a single
/// `\n`; output is a pure function of the payload.
pub fn export_report<W: Write>(
    payload: &ReportPayload,
    format: ExportFormat,
    w: &mut W,
) -> io::Result<()> {
    match (payload, format) {
        (ReportPayload::Identity(r), ExportFormat::Csv) => write_identity_csv(r, w),
        (ReportPayload::Identity(r), ExportFormat::Json) => write_identity_json(r, w),
        (ReportPayload::Estimates { records, .. }, ExportFormat::Csv) => {
            write_estimates_csv(records, w)
        }
        (ReportPayload::Estimates { estimator, records }, ExportFormat::Json) => {
            write_estimates_json(estimator, records, w)
        }
        (ReportPayload::Dusart { records }, ExportFormat::Csv) => write_dusart_csv(records, w),
        (ReportPayload::Dusart { records }, ExportFormat::Json) => write_dusart_json(records, w),
    }
}

pub fn write_identity_csv<W: Write>(report: &IdentityReport, w: &mut W) -> io::Result<()> {
    writeln!(w, "{IDENTITY_CSV_HEADER}")?;
    for row in report.rows() {
        writeln!(
            w,
            "{},{},{},{},{}",
            row.x,
            row.lhs.render(),
            row.rhs.render(),
            format_significant(row.diff),
            row.exact_match
        )?;
    }
    Ok(())
}

pub fn write_estimates_csv<W: Write>(records: &[EstimateRecord], w: &mut W) -> io::Result<()> {
    writeln!(w, "{SCAN_CSV_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.x,
            r.pi,
            format_significant(r.theta),
            format_significant(r.estimate),
            format_significant(r.raw_error),
            format_significant(r.scaled_error)
        )?;
    }
    Ok(())
}

pub fn write_dusart_csv<W: Write>(records: &[DusartCheck], w: &mut W) -> io::Result<()> {
    writeln!(w, "{DUSART_CSV_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            r.x,
            r.pi,
            format_significant(r.lower_bound),
            format_significant(r.upper_bound),
            format_significant(r.lower_margin),
            format_significant(r.upper_margin),
            r.lower_holds.as_str(),
            r.upper_holds.as_str()
        )?;
    }
    Ok(())
}

fn json_value(v: &SideValue) -> String {
    v.render()
}

pub fn write_identity_json<W: Write>(report: &IdentityReport, w: &mut W) -> io::Result<()> {
    writeln!(w, "{{")?;
    writeln!(w, "  \"identity\": \"{}\",", report.identity())?;
    writeln!(w, "  \"mismatch_count\": {},", report.mismatch_count())?;
    writeln!(w, "  \"rows\": [")?;
    let last = report.rows().len().saturating_sub(1);
    for (i, row) in report.rows().iter().enumerate() {
        let comma = if i == last { "" } else { "," };
        writeln!(
            w,
            "    {{\"x\": {}, \"lhs\": {}, \"rhs\": {}, \"diff\": {}, \"exact_match\": {}}}{comma}",
            row.x,
            json_value(&row.lhs),
            json_value(&row.rhs),
            format_significant(row.diff),
            row.exact_match
        )?;
    }
    writeln!(w, "  ]")?;
    writeln!(w, "}}")
}

pub fn write_estimates_json<W: Write>(
    estimator: &str,
    records: &[EstimateRecord],
    w: &mut W,
) -> io::Result<()> {
    writeln!(w, "{{")?;
    writeln!(w, "  \"estimator\": \"{estimator}\",")?;
    writeln!(w, "  \"records\": [")?;
    let last = records.len().saturating_sub(1);
    for (i, r) in records.iter().enumerate() {
        let comma = if i == last { "" } else { "," };
        writeln!(
            w,
            "    {{\"x\": {}, \"pi\": {}, \"theta\": {}, \"estimate\": {}, \"raw_error\": {}, \"scaled_error\": {}}}{comma}",
            r.x,
            r.pi,
            format_significant(r.theta),
            format_significant(r.estimate),
            format_significant(r.raw_error),
            format_significant(r.scaled_error)
        )?;
    }
    writeln!(w, "  ]")?;
    writeln!(w, "}}")
}

pub fn write_dusart_json<W: Write>(records: &[DusartCheck], w: &mut W) -> io::Result<()> {
    writeln!(w, "{{")?;
    writeln!(w, "  \"estimator\": \"dusart\",")?;
    writeln!(w, "  \"records\": [")?;
    let last = records.len().saturating_sub(1);
    for (i, r) in records.iter().enumerate() {
        let comma = if i == last { "" } else { "," };
        writeln!(
            w,
            "    {{\"x\": {}, \"pi\": {}, \"lower_bound\": {}, \"upper_bound\": {}, \"lower_margin\": {}, \"upper_margin\": {}, \"lower_holds\": \"{}\", \"upper_holds\": \"{}\"}}{comma}",
            r.x,
            r.pi,
            format_significant(r.lower_bound),
            format_significant(r.upper_bound),
            format_significant(r.lower_margin),
            format_significant(r.upper_margin),
            r.lower_holds.as_str(),
            r.upper_holds.as_str()
        )?;
    }
    writeln!(w, "  ]")?;
    writeln!(w, "}}")
}
