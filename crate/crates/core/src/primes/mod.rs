//! Exact π(x) and compensated ψ(x).
//!
//! Range queries go through a segmented sieve ([`PrimeCounter::pi_table`]),
//! point queries above the scan cap through Legendre's formula
//! ([`pi_point_legendre`]). Both are exact; ψ is a floating-point sum and
//! carries an explicit error bound.

mod legendre;
mod oracle;
mod sieve;

use rayon::prelude::*;

pub use legendre::{phi, pi_point_legendre, LEGENDRE_LIMIT};
pub use oracle::{pi_oracle_trial_division, ORACLE_LIMIT};
pub use sieve::{primes_up_to, sieve_segment};

use crate::sum::CompensatedSum;
use crate::{Error, Result};

pub const DEFAULT_SCAN_CAP: u64 = 5_000_000;
pub const DEFAULT_SEGMENT_LEN: u64 = 1 << 20;

/// Largest `k` with `p^k <= x`, by repeated multiplication.
///
/// Returns 0 when `x < p`. Panics if `p < 2`.
pub fn max_power_le(p: u64, x: u64) -> u32 {
    assert!(p >= 2, "max_power_le needs p >= 2, got {p}");
    let mut k = 0;
    let mut power = 1u64;
    while let Some(next) = power.checked_mul(p) {
        if next > x {
            break;
        }
        power = next;
        k += 1;
    }
    k
}

/// Cumulative prime counts: `get(n) = π(n)` for `n` in `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiTable {
    lo: u64,
    counts: Vec<u32>,
}

impl PiTable {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.lo + self.counts.len() as u64 - 1
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn get(&self, n: u64) -> Option<u64> {
        let i = n.checked_sub(self.lo)?;
        self.counts.get(usize::try_from(i).ok()?).map(|&c| c as u64)
    }

    /// Whether `n` is prime, for `lo < n <= hi`.
    pub fn is_prime(&self, n: u64) -> Option<bool> {
        if n <= self.lo {
            return None;
        }
        Some(self.get(n)? > self.get(n - 1)?)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (self.lo + i as u64, c as u64))
    }

    /// Consecutive counts differ by 0 or 1.
    pub fn is_step_monotone(&self) -> bool {
        self.counts
            .windows(2)
            .all(|w| w[1] == w[0] || w[1] == w[0] + 1)
    }
}

/// ψ(x) with the number of prime powers `<= x` and a bound on the
/// accumulated floating-point error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiValue {
    pub x: u64,
    pub value: f64,
    pub term_count: u64,
    pub error_bound: f64,
}

/// ψ(n) and its error bound for every integer `n` in `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiTable {
    lo: u64,
    values: Vec<f64>,
    // low-order parts dropped when rounding the compensated sums
    tails: Vec<f64>,
    error_bounds: Vec<f64>,
}

impl PsiTable {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.lo + self.values.len() as u64 - 1
    }

    /// `(ψ(n), error bound)`.
    pub fn get(&self, n: u64) -> Option<(f64, f64)> {
        let i = usize::try_from(n.checked_sub(self.lo)?).ok()?;
        Some((*self.values.get(i)?, self.error_bounds[i]))
    }

    /// ψ(n) − ψ(n − 1) from the unrounded compensated sums, for
    /// `lo < n <= hi`.
    pub fn step(&self, n: u64) -> Option<f64> {
        let i = usize::try_from(n.checked_sub(self.lo)?).ok()?;
        if i == 0 || i >= self.values.len() {
            return None;
        }
        Some((self.values[i] - self.values[i - 1]) + (self.tails[i] - self.tails[i - 1]))
    }
}

/// Sieve-backed counter limited to `[0, cap]` for table construction.
#[derive(Debug, Clone)]
pub struct PrimeCounter {
    cap: u64,
    segment_len: u64,
}

impl Default for PrimeCounter {
    fn default() -> Self {
        Self::new(DEFAULT_SCAN_CAP)
    }
}

impl PrimeCounter {
    pub fn new(cap: u64) -> Self {
        PrimeCounter {
            cap,
            segment_len: DEFAULT_SEGMENT_LEN,
        }
    }

    pub fn with_segment_len(mut self, segment_len: u64) -> Self {
        self.segment_len = segment_len.max(1);
        self
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    fn check_cap(&self, what: &'static str, value: u64) -> Result<()> {
        if value > self.cap {
            return Err(Error::CapExceeded {
                what,
                value,
                cap: self.cap,
            });
        }
        Ok(())
    }

    fn segments(&self, lo: u64, hi: u64) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        let mut start = lo;
        while start <= hi {
            let end = hi.min(start.saturating_add(self.segment_len - 1));
            out.push((start, end));
            if end == u64::MAX {
                break;
            }
            start = end + 1;
        }
        out
    }

    /// Primality bitmaps for `[lo, hi]` (lo >= 2), one per segment, in order.
    fn sieve_range(&self, lo: u64, hi: u64) -> Result<Vec<(u64, Vec<bool>)>> {
        let base = primes_up_to(hi.isqrt());
        self.segments(lo, hi)
            .into_par_iter()
            .map(|(a, b)| sieve_segment(a, b, &base).map(|bits| (a, bits)))
            .collect()
    }

    fn count_primes_upto(&self, x: u64) -> Result<u64> {
        if x < 2 {
            return Ok(0);
        }
        let base = primes_up_to(x.isqrt());
        let counts: Result<Vec<u64>> = self
            .segments(2, x)
            .into_par_iter()
            .map(|(a, b)| {
                sieve_segment(a, b, &base).map(|bits| bits.iter().filter(|&&p| p).count() as u64)
            })
            .collect();
        Ok(counts?.into_iter().sum())
    }

    /// Primes in `[lo, hi]`, ascending.
    pub fn primes_between(&self, lo: u64, hi: u64) -> Result<Vec<u64>> {
        self.check_cap("range end", hi)?;
        let lo = lo.max(2);
        if lo > hi {
            return Ok(Vec::new());
        }
        let mut primes = Vec::new();
        for (start, bits) in self.sieve_range(lo, hi)? {
            primes.extend(
                bits.iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(i, _)| start + i as u64),
            );
        }
        Ok(primes)
    }

    /// `π(n)` for every `n` in `[lo, hi]`.
    pub fn pi_table(&self, lo: u64, hi: u64) -> Result<PiTable> {
        if lo > hi {
            return Err(Error::InvalidRange { lo, hi });
        }
        self.check_cap("range end", hi)?;
        let len = usize::try_from(hi - lo + 1).map_err(|_| Error::Overflow("table length"))?;
        let mut counts = Vec::with_capacity(len);

        let mut running = if lo >= 2 {
            self.count_primes_upto(lo - 1)?
        } else {
            0
        };
        counts.resize((lo.max(2).min(hi + 1) - lo) as usize, 0);
        let sieve_lo = lo.max(2);
        if sieve_lo <= hi {
            for (_, bits) in self.sieve_range(sieve_lo, hi)? {
                for b in bits {
                    running += b as u64;
                    counts
                        .push(u32::try_from(running).map_err(|_| Error::Overflow("prime count"))?);
                }
            }
        }
        let table = PiTable { lo, counts };
        debug_assert!(table.is_step_monotone());
        Ok(table)
    }

    /// π(⌊x⌋). Uses the sieve up to the cap and Legendre's formula above it.
    pub fn pi_at(&self, x: f64) -> Result<u64> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::InvalidArgument(format!("pi needs x >= 0, got {x}")));
        }
        if x >= LEGENDRE_LIMIT as f64 + 1.0 {
            return Err(Error::MethodLimit {
                method: "Legendre",
                x: x as u64,
                limit: LEGENDRE_LIMIT,
            });
        }
        let n = x.floor() as u64;
        if n <= self.cap {
            self.count_primes_upto(n)
        } else {
            pi_point_legendre(n)
        }
    }

    /// ψ(x) = Σ_{p <= x} ⌊log x / log p⌋ · log p with integer exponents.
    pub fn psi_at(&self, x: u64) -> Result<PsiValue> {
        self.check_cap("psi argument", x)?;
        let mut sum = CompensatedSum::new();
        let mut term_count = 0u64;
        for p in self.primes_between(2, x)? {
            let k = max_power_le(p, x);
            term_count += k as u64;
            sum.add(k as f64 * (p as f64).ln());
        }
        // each term: ln within one ulp plus one rounding for the product
        let error_bound = sum.rounding_bound() + 2.0 * f64::EPSILON * sum.abs_total();
        Ok(PsiValue {
            x,
            value: sum.value(),
            term_count,
            error_bound,
        })
    }

    /// ψ(n) for every `n` in `[lo, hi]`, accumulated as Σ Λ(m) over m <= n.
    pub fn psi_table(&self, lo: u64, hi: u64) -> Result<PsiTable> {
        if lo > hi {
            return Err(Error::InvalidRange { lo, hi });
        }
        self.check_cap("range end", hi)?;
        let size = usize::try_from(hi + 1).map_err(|_| Error::Overflow("table length"))?;
        // prime_base[n] = p if n = p^k, else 0
        let mut prime_base = vec![0u64; size];
        for p in self.primes_between(2, hi)? {
            let mut q = p;
            loop {
                prime_base[q as usize] = p;
                match q.checked_mul(p) {
                    Some(next) if next <= hi => q = next,
                    _ => break,
                }
            }
        }
        let len = (hi - lo + 1) as usize;
        let mut values = Vec::with_capacity(len);
        let mut tails = Vec::with_capacity(len);
        let mut error_bounds = Vec::with_capacity(len);
        let mut sum = CompensatedSum::new();
        for n in 0..=hi {
            let p = prime_base[n as usize];
            if p != 0 {
                sum.add((p as f64).ln());
            }
            if n >= lo {
                let (head, tail) = sum.value_parts();
                values.push(head);
                tails.push(tail);
                error_bounds.push(sum.rounding_bound() + f64::EPSILON * sum.abs_total());
            }
        }
        Ok(PsiTable {
            lo,
            values,
            tails,
            error_bounds,
        })
    }
}
