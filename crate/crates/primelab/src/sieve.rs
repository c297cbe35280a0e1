//! Prime and Ω tables — the exhaustive number-theoretic infrastructure
//! behind every identity evaluator.
//!
//! [`PrimeTable`] stores every prime up to a limit, found by a segmented
//! sieve of Eratosthenes over odd numbers with cache-sized segments, plus a
//! compensated running prefix of ln p so that both π(x) and the Chebyshev
//! θ(x) = Σ_{p≤x} ln p are O(log π) queries.
//!
//! [`OmegaTable`] stores Ω(n) — the number of prime factors of n counted
//! with multiplicity — for every n up to a limit, computed by a linear
//! sieve, plus a prefix count of the odd n with Ω(n) ≥ 2 that the floor-log
//! identities repeatedly sum over.
//!
//! Tables are built once and immutable afterwards; all queries are pure, so
//! unlimited concurrent readers are fine.

use crate::exact_math::KahanSum;
use crate::{Error, Result};

/// Numbers spanned by one sieve segment. 2^20 keeps the odd-candidate
/// buffer at 512 KiB, comfortably inside a typical L2 cache; tune here if
/// the target machine differs.
const SEGMENT_SPAN: u64 = 1 << 20;

/// Every prime in [2, limit], ascending, with a compensated prefix of ln p.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    cumulative_log: Vec<f64>,
}

impl PrimeTable {
    /// Sieve all primes up to `limit` (inclusive).
    ///
    /// The prefix `cumulative_log[i] = Σ_{j≤i} ln p_j` is accumulated with
    /// Kahan compensation, so each stored prefix is within a couple of ulps
    /// of the exact sum of the rounded logs (absolute error ≲ 2ε·θ(limit),
    /// far below the 1e-9 relative slack the identity checks run at).
    pub fn build(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::InvalidArgument(
                "prime table limit must be >= 1".into(),
            ));
        }
        let mut primes = Vec::with_capacity(capacity_hint(limit));
        if limit >= 2 {
            primes.push(2);
        }

        let base = small_odd_primes(limit.isqrt());
        let mut flags = vec![false; (SEGMENT_SPAN / 2) as usize];
        let mut low = 3u64;
        while low <= limit {
            // segment covers the odd numbers in [low, high)
            let high = low.saturating_add(SEGMENT_SPAN).min(limit + 1);
            let count = ((high - low) / 2 + (high - low) % 2) as usize;
            flags[..count].fill(false);
            for &p in &base {
                let mut start = p * p;
                if start >= high {
                    break; // base is ascending
                }
                if start < low {
                    start = low.div_ceil(p) * p;
                    if start % 2 == 0 {
                        start += p;
                    }
                }
                let mut idx = ((start - low) / 2) as usize;
                while idx < count {
                    flags[idx] = true;
                    idx += p as usize;
                }
            }
            for (i, &composite) in flags[..count].iter().enumerate() {
                if !composite {
                    primes.push(low + 2 * i as u64);
                }
            }
            low += SEGMENT_SPAN;
        }

        let mut cumulative_log = Vec::with_capacity(primes.len());
        let mut acc = KahanSum::new();
        for &p in &primes {
            acc.add((p as f64).ln());
            cumulative_log.push(acc.value());
        }
        Ok(PrimeTable {
            limit,
            primes,
            cumulative_log,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn cumulative_log(&self) -> &[f64] {
        &self.cumulative_log
    }

    /// Number of primes ≤ m for any m ≤ limit. Internal rank query used by
    /// the amortized identity evaluators; no range validation.
    pub fn count_le(&self, m: u64) -> u64 {
        debug_assert!(m <= self.limit);
        self.primes.partition_point(|&p| p <= m) as u64
    }

    /// The primes ≤ x as a slice.
    pub fn primes_up_to(&self, x: u64) -> &[u64] {
        &self.primes[..self.count_le(x) as usize]
    }

    /// π(x): exact count of primes ≤ x. Requires 1 ≤ x ≤ limit.
    pub fn pi_of(&self, x: u64) -> Result<u64> {
        self.check_range(x)?;
        Ok(self.count_le(x))
    }

    /// θ(x) = Σ_{p≤x} ln p via the compensated prefix. Requires 1 ≤ x ≤ limit.
    pub fn theta_of(&self, x: u64) -> Result<f64> {
        self.check_range(x)?;
        let c = self.count_le(x) as usize;
        Ok(if c == 0 {
            0.0
        } else {
            self.cumulative_log[c - 1]
        })
    }

    fn check_range(&self, x: u64) -> Result<()> {
        if x == 0 {
            return Err(Error::InvalidArgument("query requires x >= 1".into()));
        }
        if x > self.limit {
            return Err(Error::OutOfRange {
                x,
                limit: self.limit,
            });
        }
        Ok(())
    }
}

fn capacity_hint(limit: u64) -> usize {
    let lf = limit.max(3) as f64;
    (lf / lf.ln() * 1.15) as usize + 16
}

/// Odd primes in [3, root] by a plain odd-only sieve; used to seed segments.
fn small_odd_primes(root: u64) -> Vec<u64> {
    if root < 3 {
        return Vec::new();
    }
    let count = ((root - 3) / 2 + 1) as usize; // index i <-> value 3 + 2i
    let mut composite = vec![false; count];
    let mut primes = Vec::new();
    for i in 0..count {
        if composite[i] {
            continue;
        }
        let p = 3 + 2 * i as u64;
        primes.push(p);
        let mut v = p * p;
        while v <= root {
            composite[((v - 3) / 2) as usize] = true;
            v += 2 * p;
        }
    }
    primes
}

/// Ω(n) for every n in [1, limit], plus a prefix count of odd n with Ω ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaTable {
    limit: u64,
    omega: Vec<u8>,
    odd_multi_prefix: Vec<u32>,
}

impl OmegaTable {
    /// Linear sieve: every composite is visited exactly once, through its
    /// smallest prime factor, and Ω(p·i) = Ω(i) + 1 holds unconditionally.
    ///
    /// Ω fits in a u8 for any n below 2^64 (Ω(n) < 64). The prefix count
    /// `odd_multi_prefix[m] = #{odd n ≤ m : Ω(n) ≥ 2}` costs 4 bytes per n
    /// and turns the odd floor-log sums of the identity evaluators into
    /// O(log x) lookups instead of O(x) scans.
    pub fn build(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::InvalidArgument(
                "omega table limit must be >= 1".into(),
            ));
        }
        let n = limit as usize;
        let mut omega = vec![0u8; n + 1];
        let mut primes: Vec<u64> = Vec::with_capacity(capacity_hint(limit));
        for i in 2..=n {
            if omega[i] == 0 {
                primes.push(i as u64);
                omega[i] = 1;
            }
            let iu = i as u64;
            for &p in &primes {
                let Some(v) = p.checked_mul(iu).filter(|&v| v <= limit) else {
                    break;
                };
                omega[v as usize] = omega[i] + 1;
                if iu.is_multiple_of(p) {
                    break;
                }
            }
        }

        let mut odd_multi_prefix = Vec::with_capacity(n + 1);
        let mut c: u32 = 0;
        for (m, &w) in omega.iter().enumerate() {
            if m % 2 == 1 && w >= 2 {
                c += 1;
            }
            odd_multi_prefix.push(c);
        }
        Ok(OmegaTable {
            limit,
            omega,
            odd_multi_prefix,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Ω(n), exact. Requires 1 ≤ n ≤ limit.
    pub fn omega_of(&self, n: u64) -> Result<u8> {
        if n == 0 {
            return Err(Error::InvalidArgument("omega_of requires n >= 1".into()));
        }
        if n > self.limit {
            return Err(Error::OutOfRange {
                x: n,
                limit: self.limit,
            });
        }
        Ok(self.omega[n as usize])
    }

    /// Unchecked Ω(n) for internal hot loops; n must be ≤ limit.
    pub(crate) fn get(&self, n: u64) -> u8 {
        self.omega[n as usize]
    }

    /// #{odd n ≤ m : Ω(n) ≥ 2} — equivalently the odd composites ≤ m,
    /// prime powers included. Requires m ≤ limit.
    pub fn odd_composite_count_le(&self, m: u64) -> u64 {
        debug_assert!(m <= self.limit);
        u64::from(self.odd_multi_prefix[m as usize])
    }
}
