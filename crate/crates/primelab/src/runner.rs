//! Run drivers: exhaustive identity verification, estimator error scans,
//! and the per-point quantity table.

use std::path::PathBuf;
use std::time::Instant;

use crate::identities::{
    self, big_theta, dusart_check, eta_estimate, integral_pi_closed, integral_theta_closed, nu,
    pi_exact_formula, r_estimate, BoundStatus, DusartCheck, FracResidualSweep, HgtTriple,
    FRAC_RESIDUAL_BOUND, INTEGRAL_REL_TOL,
};
use crate::report::{
    EstimateRecord, ExportFormat, IdentityReport, IdentityRow, RunSummary, SideValue,
};
use crate::sieve::{OmegaTable, PrimeTable};
use crate::{Error, Result};

/// Largest x the driver will sieve for without an explicit override.
pub const DEFAULT_SIEVE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Verify,
    Scan,
    Table,
}

/// The identity/estimator labels accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityKind {
    General,
    PiFormula,
    FracSum,
    Integrals,
    ThetaEstimate,
    Nu,
    R,
    Eta,
    Dusart,
}

impl IdentityKind {
    pub fn label(self) -> &'static str {
        match self {
            IdentityKind::General => "general",
            IdentityKind::PiFormula => "pi-formula",
            IdentityKind::FracSum => "frac-sum",
            IdentityKind::Integrals => "integrals",
            IdentityKind::ThetaEstimate => "theta-estimate",
            IdentityKind::Nu => "nu",
            IdentityKind::R => "r",
            IdentityKind::Eta => "eta",
            IdentityKind::Dusart => "dusart",
        }
    }

    /// True for the exact identities `verify` accepts; the rest are
    /// estimators for `scan`.
    pub fn is_exact_identity(self) -> bool {
        matches!(
            self,
            IdentityKind::General
                | IdentityKind::PiFormula
                | IdentityKind::FracSum
                | IdentityKind::Integrals
        )
    }

    /// True when evaluation reads the Ω table.
    pub fn needs_omega(self) -> bool {
        matches!(
            self,
            IdentityKind::PiFormula
                | IdentityKind::ThetaEstimate
                | IdentityKind::Nu
                | IdentityKind::R
                | IdentityKind::Eta
        )
    }
}

impl std::str::FromStr for IdentityKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "general" => IdentityKind::General,
            "pi-formula" => IdentityKind::PiFormula,
            "frac-sum" => IdentityKind::FracSum,
            "integrals" => IdentityKind::Integrals,
            "theta-estimate" => IdentityKind::ThetaEstimate,
            "nu" => IdentityKind::Nu,
            "r" => IdentityKind::R,
            "eta" => IdentityKind::Eta,
            "dusart" => IdentityKind::Dusart,
            other => {
                return Err(Error::Config(format!(
                    "unknown identity '{other}' (expected one of: general, pi-formula, \
                     frac-sum, integrals, theta-estimate, nu, r, eta, dusart)"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grid {
    EveryInteger,
    Geometric { points: u32 },
}

/// Full configuration of one run.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub mode: Mode,
    pub identity: IdentityKind,
    pub from: u64,
    pub to: u64,
    pub grid: Grid,
    pub format: Option<ExportFormat>,
    /// None means standard output.
    pub output: Option<PathBuf>,
    pub sieve_budget: u64,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.from < 1 || self.from > self.to {
            return Err(Error::Config(format!(
                "invalid range: need 1 <= from <= to, got from={} to={}",
                self.from, self.to
            )));
        }
        if let Grid::Geometric { points } = self.grid {
            if points < 2 {
                return Err(Error::Config(format!(
                    "geometric grid needs at least 2 points, got {points}"
                )));
            }
        }
        if self.to > self.sieve_budget {
            return Err(Error::Config(format!(
                "range end {} exceeds the sieve budget {}; raise it explicitly with \
                 --sieve-budget if the run is intended",
                self.to, self.sieve_budget
            )));
        }
        Ok(())
    }

    pub fn grid_points(&self) -> Result<Vec<u64>> {
        match self.grid {
            Grid::EveryInteger => Ok((self.from..=self.to).collect()),
            Grid::Geometric { points } => geometric_grid(self.from, self.to, points),
        }
    }
}

/// Geometric grid of integers: `points` values log-spaced over [from, to],
/// rounded to the nearest integer, deduplicated. Deterministic for a fixed
/// request.
pub fn geometric_grid(from: u64, to: u64, points: u32) -> Result<Vec<u64>> {
    if from < 1 || from > to {
        return Err(Error::Config(format!(
            "invalid grid range [{from}, {to}]"
        )));
    }
    if points < 2 {
        return Err(Error::Config("geometric grid needs >= 2 points".into()));
    }
    let la = (from as f64).ln();
    let lb = (to as f64).ln();
    let steps = f64::from(points - 1);
    let mut out = Vec::with_capacity(points as usize);
    for i in 0..points {
        let v = (la + (lb - la) * f64::from(i) / steps).exp().round() as u64;
        let v = v.clamp(from, to);
        if out.last() != Some(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Exhaustively evaluate an exact identity over the configured grid.
///
/// Exit semantics for the caller: success iff the returned summary has zero
/// mismatches. Integer identities compare integers; the tolerance checks
/// (`pi-formula` rounding, the integral cross-checks, the frac-sum residual
/// bound) mark a row as mismatched when the check fails.
pub fn run_verify(
    config: &ScanConfig,
    primes: &PrimeTable,
    omegas: &OmegaTable,
) -> Result<(RunSummary, IdentityReport)> {
    if config.mode != Mode::Verify {
        return Err(Error::Config("run_verify requires mode = verify".into()));
    }
    config.validate()?;
    if !config.identity.is_exact_identity() {
        return Err(Error::Config(format!(
            "'{}' is an estimator, not an exact identity; use `scan`",
            config.identity.label()
        )));
    }
    let started = Instant::now();
    let rows = match config.identity {
        IdentityKind::General => verify_general(config)?,
        IdentityKind::PiFormula => verify_pi_formula(config, primes, omegas)?,
        IdentityKind::FracSum => verify_frac_sum(config)?,
        IdentityKind::Integrals => verify_integrals(config, primes)?,
        _ => unreachable!("filtered above"),
    };
    let report = IdentityReport::new(config.identity.label(), rows);
    let mut max_abs = 0.0f64;
    let mut max_scaled = 0.0f64;
    for row in report.rows() {
        max_abs = max_abs.max(row.diff.abs());
        max_scaled = max_scaled.max(row.diff.abs() * (row.x as f64).ln());
    }
    let summary = RunSummary {
        identity: config.identity.label().into(),
        rows_evaluated: report.rows().len() as u64,
        mismatches: report.mismatch_count() as u64,
        max_abs_diff: max_abs,
        max_scaled_diff: max_scaled,
        wall_time_seconds: started.elapsed().as_secs_f64(),
    };
    Ok((summary, report))
}

fn verify_general(config: &ScanConfig) -> Result<Vec<IdentityRow>> {
    let mut rows = Vec::new();
    for x in config.grid_points()? {
        let lhs = identities::odd_floor_sum(x);
        let rhs = identities::rhs_general(x);
        rows.push(IdentityRow {
            x,
            lhs: SideValue::Int(lhs),
            rhs: SideValue::Int(rhs),
            diff: lhs as f64 - rhs as f64,
            exact_match: lhs == rhs,
        });
    }
    Ok(rows)
}

fn verify_pi_formula(
    config: &ScanConfig,
    primes: &PrimeTable,
    omegas: &OmegaTable,
) -> Result<Vec<IdentityRow>> {
    if config.from < 2 {
        return Err(Error::Config(
            "pi-formula verification requires from >= 2".into(),
        ));
    }
    let mut rows = Vec::new();
    for x in config.grid_points()? {
        let raw = pi_exact_formula(x, primes, omegas)?;
        let pi = primes.pi_of(x)?;
        let diff = raw - pi as f64;
        rows.push(IdentityRow {
            x,
            lhs: SideValue::Real(raw),
            rhs: SideValue::Int(pi),
            diff,
            // rounds to pi(x) exactly
            exact_match: diff.abs() < 0.5,
        });
    }
    Ok(rows)
}

fn verify_frac_sum(config: &ScanConfig) -> Result<Vec<IdentityRow>> {
    // the sweep must advance x by 1 to keep its log-factorial running; a
    // sparse grid just filters which points become rows
    let mut rows = Vec::new();
    let wanted = config.grid_points()?;
    let mut wanted_iter = wanted.iter().copied().peekable();
    for point in FracResidualSweep::new().take(config.to as usize) {
        let Some(&next) = wanted_iter.peek() else {
            break;
        };
        if point.x != next {
            continue;
        }
        wanted_iter.next();
        rows.push(IdentityRow {
            x: point.x,
            lhs: SideValue::Real(point.frac_sum_all),
            rhs: SideValue::Real(point.main_terms),
            diff: point.residual,
            exact_match: point.residual.abs() <= FRAC_RESIDUAL_BOUND,
        });
    }
    Ok(rows)
}

fn verify_integrals(config: &ScanConfig, primes: &PrimeTable) -> Result<Vec<IdentityRow>> {
    if config.from < 2 {
        return Err(Error::Config(
            "integral verification requires from >= 2".into(),
        ));
    }
    let mut rows = Vec::new();
    for x in config.grid_points()? {
        let lx = (x as f64).ln();
        let pi = primes.pi_of(x)? as f64;
        let theta = primes.theta_of(x)?;

        let theta_integral = integral_theta_closed(x, primes)?;
        let theta_ref = pi - theta / lx;
        let rel_theta = (theta_integral - theta_ref).abs() / theta_ref.abs().max(1.0);

        let pi_integral = integral_pi_closed(x, primes)?;
        let pi_ref = pi * lx - theta;
        let rel_pi = (pi_integral - pi_ref).abs() / pi_ref.abs().max(1.0);

        // the row reports the θ-integral; the π-integral participates in
        // the pass/fail flag and the diff is the worse relative deviation
        rows.push(IdentityRow {
            x,
            lhs: SideValue::Real(theta_integral),
            rhs: SideValue::Real(theta_ref),
            diff: rel_theta.max(rel_pi),
            exact_match: rel_theta <= INTEGRAL_REL_TOL && rel_pi <= INTEGRAL_REL_TOL,
        });
    }
    Ok(rows)
}

/// Rows produced by a scan.
#[derive(Debug, Clone, PartialEq)]
pub enum ScanRecords {
    Estimates(Vec<EstimateRecord>),
    Dusart(Vec<DusartCheck>),
}

/// Evaluate an estimator over the configured grid. The Ω table is only
/// needed by the estimators that sum over odd n with Ω ≥ 2; the Dusart scan
/// runs without it.
pub fn run_scan(
    config: &ScanConfig,
    primes: &PrimeTable,
    omegas: Option<&OmegaTable>,
) -> Result<(RunSummary, ScanRecords)> {
    if config.mode != Mode::Scan {
        return Err(Error::Config("run_scan requires mode = scan".into()));
    }
    config.validate()?;
    if config.identity.is_exact_identity() {
        return Err(Error::Config(format!(
            "'{}' is an exact identity, not an estimator; use `verify`",
            config.identity.label()
        )));
    }
    if config.from < 2 {
        return Err(Error::Config("scans require from >= 2".into()));
    }
    let started = Instant::now();
    let points = config.grid_points()?;

    if config.identity == IdentityKind::Dusart {
        let mut records = Vec::with_capacity(points.len());
        let mut violated = 0u64;
        for x in points {
            let check = dusart_check(x, primes)?;
            if check.lower_holds == BoundStatus::Violated
                || check.upper_holds == BoundStatus::Violated
            {
                violated += 1;
            }
            records.push(check);
        }
        let summary = RunSummary {
            identity: config.identity.label().into(),
            rows_evaluated: records.len() as u64,
            mismatches: violated,
            max_abs_diff: 0.0,
            max_scaled_diff: 0.0,
            wall_time_seconds: started.elapsed().as_secs_f64(),
        };
        return Ok((summary, ScanRecords::Dusart(records)));
    }

    let omegas = omegas.ok_or_else(|| {
        Error::Config(format!(
            "estimator '{}' requires the Ω table",
            config.identity.label()
        ))
    })?;
    let mut records = Vec::with_capacity(points.len());
    let mut max_raw = 0.0f64;
    let mut max_scaled = 0.0f64;
    for x in points {
        let estimate = match config.identity {
            IdentityKind::ThetaEstimate => big_theta(x, primes, omegas)?,
            IdentityKind::Nu => nu(x, omegas)?,
            IdentityKind::R => r_estimate(x, omegas)?,
            IdentityKind::Eta => eta_estimate(x, omegas)?,
            _ => unreachable!("filtered above"),
        };
        let record = EstimateRecord::new(x, primes.pi_of(x)?, primes.theta_of(x)?, estimate);
        max_raw = max_raw.max(record.raw_error.abs());
        max_scaled = max_scaled.max(record.scaled_error.abs());
        records.push(record);
    }
    let summary = RunSummary {
        identity: config.identity.label().into(),
        rows_evaluated: records.len() as u64,
        mismatches: 0,
        max_abs_diff: max_raw,
        max_scaled_diff: max_scaled,
        wall_time_seconds: started.elapsed().as_secs_f64(),
    };
    Ok((summary, ScanRecords::Estimates(records)))
}

/// Every quantity the `table` subcommand prints at one x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TablePoint {
    pub x: u64,
    pub pi: u64,
    pub theta: f64,
    pub h: f64,
    pub g: u64,
    pub t: u32,
    pub big_theta: f64,
    pub nu: f64,
    pub r: f64,
    pub eta: f64,
    pub integral_theta: f64,
    pub integral_pi: f64,
}

/// Evaluate the full quantity set at each listed x (each x ≥ 2 and within
/// both tables).
pub fn run_table(
    xs: &[u64],
    primes: &PrimeTable,
    omegas: &OmegaTable,
) -> Result<Vec<TablePoint>> {
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        if x < 2 {
            return Err(Error::Config(format!("table requires x >= 2, got {x}")));
        }
        let HgtTriple { h, g, t } = identities::hgt(x, primes, omegas)?;
        out.push(TablePoint {
            x,
            pi: primes.pi_of(x)?,
            theta: primes.theta_of(x)?,
            h,
            g,
            t,
            big_theta: big_theta(x, primes, omegas)?,
            nu: nu(x, omegas)?,
            r: r_estimate(x, omegas)?,
            eta: eta_estimate(x, omegas)?,
            integral_theta: integral_theta_closed(x, primes)?,
            integral_pi: integral_pi_closed(x, primes)?,
        });
    }
    Ok(out)
}
