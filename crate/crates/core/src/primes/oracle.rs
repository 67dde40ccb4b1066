use crate::{Error, Result};

pub const ORACLE_LIMIT: u64 = 100_000;

/// π(x) by trial division of every candidate. Slow, independent of the sieve;
/// meant for tests only.
pub fn pi_oracle_trial_division(x: u64) -> Result<u64> {
    if x > ORACLE_LIMIT {
        return Err(Error::MethodLimit {
            method: "trial division",
            x,
            limit: ORACLE_LIMIT,
        });
    }
    let count = (2..=x)
        .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .count();
    Ok(count as u64)
}
