//! Legendre's formula π(x) = φ(x, a) + a − 1 with a = π(√x).

use std::collections::HashMap;

use super::sieve::primes_up_to;
use crate::{Error, Result};

/// Largest x accepted by [`pi_point_legendre`]. The recursion itself only
/// subtracts and divides `u64`s, so the limit is set by running time.
pub const LEGENDRE_LIMIT: u64 = 1_000_000_000_000;

const WHEEL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
const MEMO_BELOW: u64 = 1 << 16;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// φ(x, a) for a <= 6 via periodicity modulo the primorial.
struct Wheel {
    // (primorial, counts) where counts[r] = #{1 <= n <= r : gcd(n, primorial) = 1}
    levels: Vec<(u64, Vec<u64>)>,
}

impl Wheel {
    fn new() -> Self {
        let mut levels = Vec::with_capacity(WHEEL_PRIMES.len() + 1);
        let mut primorial = 1u64;
        levels.push((1, vec![0]));
        for &p in &WHEEL_PRIMES {
            primorial *= p;
            let mut counts = Vec::with_capacity(primorial as usize);
            let mut c = 0;
            counts.push(0);
            for r in 1..primorial {
                if gcd(r, primorial) == 1 {
                    c += 1;
                }
                counts.push(c);
            }
            levels.push((primorial, counts));
        }
        Wheel { levels }
    }

    fn phi(&self, x: u64, a: usize) -> u64 {
        if a == 0 {
            return x;
        }
        let (primorial, counts) = &self.levels[a];
        let full = counts[*primorial as usize - 1];
        (x / primorial) * full + counts[(x % primorial) as usize]
    }
}

struct Phi {
    primes: Vec<u64>,
    wheel: Wheel,
    memo: HashMap<(u64, usize), u64>,
}

impl Phi {
    fn new(primes: Vec<u64>) -> Self {
        Phi {
            primes,
            wheel: Wheel::new(),
            memo: HashMap::new(),
        }
    }

    /// φ(x, a) = φ(x, 6) − Σ_{i=7..a} φ(x / p_i, i − 1), unrolled so the
    /// recursion depth is bounded by the number of divisions of x.
    fn eval(&mut self, x: u64, a: usize) -> u64 {
        let a = a.min(self.primes.len());
        if a <= WHEEL_PRIMES.len() {
            return self.wheel.phi(x, a);
        }
        if x == 0 {
            return 0;
        }
        if self.primes[a - 1] >= x {
            return 1;
        }
        if x < MEMO_BELOW {
            if let Some(&v) = self.memo.get(&(x, a)) {
                return v;
            }
        }
        let mut result = self.wheel.phi(x, WHEEL_PRIMES.len());
        for i in WHEEL_PRIMES.len()..a {
            let p = self.primes[i];
            let y = x / p;
            if y == 0 {
                break;
            }
            result -= self.eval(y, i);
        }
        if x < MEMO_BELOW {
            self.memo.insert((x, a), result);
        }
        result
    }
}

/// Number of `n <= x` not divisible by any of the first `a` primes.
pub fn phi(x: u64, a: usize) -> u64 {
    // Primes above x never remove anything, so stop once the list covers x.
    let mut limit = 64u64;
    let primes = loop {
        let primes = primes_up_to(limit);
        if primes.len() >= a || limit >= x {
            break primes;
        }
        limit = limit.saturating_mul(2);
    };
    let mut phi = Phi::new(primes);
    phi.eval(x, a)
}

/// π(x) by Legendre's formula, independent of the segmented sieve.
pub fn pi_point_legendre(x: u64) -> Result<u64> {
    if x > LEGENDRE_LIMIT {
        return Err(Error::MethodLimit {
            method: "Legendre",
            x,
            limit: LEGENDRE_LIMIT,
        });
    }
    if x < 2 {
        return Ok(0);
    }
    let base = primes_up_to(x.isqrt());
    let a = base.len();
    let mut phi = Phi::new(base);
    let count = phi.eval(x, a);
    count
        .checked_add(a as u64)
        .and_then(|v| v.checked_sub(1))
        .ok_or(Error::Overflow("Legendre sum"))
}
