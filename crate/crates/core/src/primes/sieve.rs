use crate::{Error, Result};

/// All primes `<= limit`, by a plain (unsegmented) sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        if let Some(sq) = i.checked_mul(i) {
            for m in (sq..=n).step_by(i) {
                composite[m] = true;
            }
        }
    }
    primes
}

fn is_prime_by_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primality bitmap for `[lo, hi]`: entry `i` is true iff `lo + i` is prime.
///
/// `base_primes` must contain every prime `<= isqrt(hi)`; extra primes are
/// ignored and the order does not matter.
pub fn sieve_segment(lo: u64, hi: u64, base_primes: &[u64]) -> Result<Vec<bool>> {
    if lo < 2 || lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    let root = hi.isqrt();
    let largest = base_primes.iter().copied().max().unwrap_or(0);
    if largest < root {
        let mut next = largest + 1;
        while !is_prime_by_trial(next) {
            next += 1;
        }
        if next <= root {
            return Err(Error::MissingBasePrimes {
                largest,
                missing: next,
                hi,
            });
        }
    }

    let len = usize::try_from(hi - lo + 1).map_err(|_| Error::Overflow("segment length"))?;
    let mut bits = vec![true; len];
    for &p in base_primes {
        let Some(sq) = p.checked_mul(p) else { continue };
        if p < 2 || sq > hi {
            continue;
        }
        let start = sq.max(lo.div_ceil(p) * p);
        if start > hi {
            continue;
        }
        for m in (start..=hi).step_by(p as usize) {
            bits[(m - lo) as usize] = false;
        }
    }
    Ok(bits)
}
