//! Exact floor-logarithm arithmetic and compensated real summation.
//!
//! Every floor ⌊log₂(x/n)⌋ is computed from integer divisions, shifts and
//! comparisons alone. Floating logarithms misround exactly where these
//! identities are sensitive — when x/n sits next to a power of two — so they
//! are never consulted for a floor. Real-valued quantities (fractional
//! parts, log-factorials, Stirling terms) are evaluated in double precision
//! with Kahan-compensated accumulation.

use std::f64::consts::LN_2;
use std::ops::AddAssign;

use crate::{Error, Result};

/// ln √(2π), the constant term of Stirling's approximation.
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

/// ⌊log₂(x/n)⌋ together with a flag recording whether the ratio is an exact
/// power of two.
///
/// The defining bracket `n·2^k ≤ x < n·2^(k+1)` always holds for the stored
/// `k`; `exact_power_hit` is true when `n·2^k == x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FloorLogResult {
    pub k: u32,
    pub exact_power_hit: bool,
}

/// Largest k ≥ 0 with n·2^k ≤ x, by integer arithmetic only.
///
/// Since 2^k is an integer, 2^k ≤ x/n holds iff 2^k ≤ ⌊x/n⌋, so
/// k = ⌊x/n⌋.ilog2(). The shift `n << k` cannot overflow: n·2^k ≤ x ≤ u64::MAX.
pub fn floor_log2_ratio(x: u64, n: u64) -> Result<FloorLogResult> {
    if n == 0 || n > x {
        return Err(Error::InvalidArgument(format!(
            "floor_log2_ratio requires 1 <= n <= x, got x={x}, n={n}"
        )));
    }
    let k = (x / n).ilog2();
    Ok(FloorLogResult {
        k,
        exact_power_hit: (n << k) == x,
    })
}

/// Fractional part {log₂(x/n)}, always in [0, 1).
///
/// Exact power-of-two ratios return a literal 0.0 instead of whatever the
/// log difference rounds to, so downstream sums are reproducible. Otherwise
/// the value is (ln x − ln n)/ln 2 − k, clamped against one-ulp spill past
/// either end of [0, 1).
pub fn frac_log2_ratio(x: u64, n: u64) -> Result<f64> {
    let fl = floor_log2_ratio(x, n)?;
    if fl.exact_power_hit {
        return Ok(0.0);
    }
    let v = ((x as f64).ln() - (n as f64).ln()) / LN_2 - f64::from(fl.k);
    Ok(v.clamp(0.0, 1.0 - f64::EPSILON / 2.0))
}

/// Kahan-compensated running sum.
///
/// Keeps accumulation error near one rounding unit of the total regardless
/// of the number of terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    err: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let y = v - self.err;
        let t = self.sum + y;
        self.err = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

impl AddAssign<f64> for KahanSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

/// ln x! = Σ_{n≤x} ln n by compensated summation. O(x).
pub fn log_factorial_exact(x: u64) -> Result<f64> {
    if x == 0 {
        return Err(Error::InvalidArgument(
            "log_factorial_exact requires x >= 1".into(),
        ));
    }
    let mut acc = KahanSum::new();
    for n in 2..=x {
        acc.add((n as f64).ln());
    }
    Ok(acc.value())
}

/// x·ln x − x + ½·ln x + ln √(2π): Stirling's approximation for ln x!
/// without the O(1/x) tail. Requires x ≥ 1.
pub fn stirling_main_terms(x: u64) -> f64 {
    debug_assert!(x >= 1);
    let xf = x as f64;
    let lx = xf.ln();
    xf * lx - xf + 0.5 * lx + LN_SQRT_2PI
}

/// One step of the Stirling residual recurrence for x ≥ 2:
///
/// r(x) − r(x−1) = 1 − (x−½)·ln(x/(x−1)) = −Σ_{j≥1} u^(2j)/(2j+1)
///
/// with u = 1/(2x−1), where r(x) = ln x! − stirling_main_terms(x). Each step
/// is a small negative number near −1/(3(2x−1)²), and the series form gives
/// it to full relative precision where the defining difference of large
/// terms would cancel catastrophically.
pub fn stirling_residual_delta(x: u64) -> f64 {
    debug_assert!(x >= 2);
    let u = 1.0 / (2 * x - 1) as f64;
    let u2 = u * u;
    let mut term = u2;
    let mut sum = 0.0;
    let mut j = 3u32;
    loop {
        let add = term / f64::from(j);
        sum += add;
        if add <= sum * 1e-18 {
            break;
        }
        term *= u2;
        j += 2;
    }
    -sum
}

/// ln x! − stirling_main_terms(x), evaluated without cancellation.
///
/// Accumulates r(1) = 1 − ln √(2π) plus the per-step deltas, so the result
/// carries only a few units of 1e-16 absolute error. That accuracy matters:
/// the true residual approaches the upper edge of Robbins' bracket
/// (1/(12x+1), 1/(12x)) to within 1/(360x³) ≈ 3e-15 at x = 10⁴, a gap a
/// direct f64 subtraction of the two ~x·ln x-sized quantities cannot resolve
/// once x is in the thousands (one ulp of ln 10⁴! alone is ≈ 1.5e-11).
pub fn stirling_residual(x: u64) -> Result<f64> {
    if x == 0 {
        return Err(Error::InvalidArgument(
            "stirling_residual requires x >= 1".into(),
        ));
    }
    let mut acc = KahanSum::new();
    acc.add(1.0 - LN_SQRT_2PI);
    for m in 2..=x {
        acc.add(stirling_residual_delta(m));
    }
    Ok(acc.value())
}
