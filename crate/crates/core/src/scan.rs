//! Range verification of π/ψ inequalities under real-number semantics, and
//! crossover search between two analytic bounds.
//!
//! π and ψ are constant on every cell `[n, n + 1)`, so an inequality against a
//! continuous bound B holds for all real x in `[lo, hi + 1)` iff it holds
//! against the infimum (upper bounds) or supremum (lower bounds) of B on each
//! cell. Those extremes are attained at the cell ends or at a critical point of
//! B inside the cell; for increasing B they are simply `B(n)` and `B(n + 1)`.
//!
//! Every comparison carries a guard band: the evaluation error of B plus the
//! summation error of ψ. A point whose margin lies inside its guard is reported
//! as ambiguous rather than decided.

use rayon::prelude::*;
use rayon::ThreadPool;
use serde::Serialize;

use crate::bounds::{BoundExpr, EvalResult};
use crate::primes::{PrimeCounter, DEFAULT_SCAN_CAP};
use crate::{Error, Result};

const CHUNK_LEN: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    /// `f(x) < B(x)`
    UpperStrict,
    /// `B(x) < f(x)`
    LowerStrict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Ambiguous,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Ambiguous => "AMBIGUOUS",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Decision {
    Holds,
    Fails,
    Ambiguous,
}

fn classify(margin: f64, guard: f64) -> Decision {
    if margin > guard {
        Decision::Holds
    } else if margin < -guard {
        Decision::Fails
    } else {
        Decision::Ambiguous
    }
}

/// Outcome of checking one integer cell.
#[derive(Debug, Clone, Copy)]
struct Point {
    margin: f64,
    guard: f64,
    decision: Decision,
    exact: bool,
}

impl Point {
    fn guarded(margin: f64, guard: f64) -> Self {
        Point {
            margin,
            guard,
            decision: classify(margin, guard),
            exact: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub status: Status,
    /// Last violating point for FAIL, closest-margin point otherwise.
    pub witness: Option<u64>,
    /// Signed margin at the witness; positive means the inequality holds there.
    pub witness_margin: f64,
    /// Guard band at the witness (zero when decided in exact arithmetic).
    pub guard_at_witness: f64,
    /// Smallest signed margin over the whole range.
    pub min_margin: f64,
    pub points_checked: u64,
    pub violations: u64,
    pub ambiguous_points: Vec<u64>,
    /// Points decided in exact integer arithmetic because their float margin
    /// fell inside the guard.
    pub exact_points: Vec<u64>,
}

impl Verdict {
    /// Whether the witness decision clears its guard by the given factor, or
    /// was made exactly.
    pub fn witness_clears_guard(&self, factor: f64) -> bool {
        match self.witness {
            None => true,
            Some(w) if self.exact_points.contains(&w) => true,
            Some(_) => self.witness_margin.abs() > factor * self.guard_at_witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossoverResult {
    /// Smallest n in range from which the relation holds at every scanned
    /// point; `None` when it fails at the range end.
    pub threshold: Option<u64>,
    pub last_failure: Option<u64>,
    pub sign_changes: u64,
    /// Signed margin and guard at the threshold point.
    pub margin_at_threshold: f64,
    pub guard_at_threshold: f64,
    pub points_checked: u64,
    pub ambiguous_points: Vec<u64>,
}

#[derive(Debug, Clone, Default)]
struct Summary {
    points: u64,
    // (margin, n, guard)
    min: Option<(f64, u64, f64)>,
    last_fail: Option<(u64, f64, f64)>,
    fails: u64,
    ambiguous: Vec<u64>,
    exact: Vec<u64>,
    first_sign: Option<bool>,
    last_sign: Option<bool>,
    sign_changes: u64,
}

impl Summary {
    fn push(&mut self, n: u64, p: Point) {
        self.points += 1;
        if self.min.is_none_or(|(m, _, _)| p.margin < m) {
            self.min = Some((p.margin, n, p.guard));
        }
        if p.exact {
            self.exact.push(n);
        }
        let sign = match p.decision {
            Decision::Holds => true,
            Decision::Fails => {
                self.fails += 1;
                self.last_fail = Some((n, p.margin, p.guard));
                false
            }
            Decision::Ambiguous => {
                self.ambiguous.push(n);
                return;
            }
        };
        if let Some(prev) = self.last_sign {
            self.sign_changes += (prev != sign) as u64;
        } else {
            self.first_sign = Some(sign);
        }
        self.last_sign = Some(sign);
    }

    /// `self` covers points before `later`.
    fn merge(mut self, later: Summary) -> Summary {
        self.points += later.points;
        if let Some((m, n, g)) = later.min {
            if self.min.is_none_or(|(cur, _, _)| m < cur) {
                self.min = Some((m, n, g));
            }
        }
        if later.last_fail.is_some() {
            self.last_fail = later.last_fail;
        }
        self.fails += later.fails;
        self.ambiguous.extend(later.ambiguous);
        self.exact.extend(later.exact);
        self.sign_changes += later.sign_changes;
        if let (Some(a), Some(b)) = (self.last_sign, later.first_sign) {
            self.sign_changes += (a != b) as u64;
        }
        if self.first_sign.is_none() {
            self.first_sign = later.first_sign;
        }
        if later.last_sign.is_some() {
            self.last_sign = later.last_sign;
        }
        self
    }

    fn into_verdict(self) -> Verdict {
        let (min_margin, min_at, min_guard) = self.min.unwrap_or((f64::INFINITY, 0, 0.0));
        let (status, witness, witness_margin, guard_at_witness) = match self.last_fail {
            Some((n, m, g)) => (Status::Fail, Some(n), m, g),
            None if !self.ambiguous.is_empty() => (
                Status::Ambiguous,
                Some(self.ambiguous[0]),
                min_margin,
                min_guard,
            ),
            None => (
                Status::Pass,
                self.min.map(|_| min_at),
                min_margin,
                min_guard,
            ),
        };
        Verdict {
            status,
            witness,
            witness_margin,
            guard_at_witness,
            min_margin,
            points_checked: self.points,
            violations: self.fails,
            ambiguous_points: self.ambiguous,
            exact_points: self.exact,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    pub cap: u64,
    /// Worker threads; 0 picks the rayon default.
    pub threads: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            cap: DEFAULT_SCAN_CAP,
            threads: 0,
        }
    }
}

/// Cell-wise view of a bound: infimum and supremum over `[n, n + 1]`.
struct Cells<'a> {
    bound: &'a BoundExpr,
    critical: Vec<f64>,
}

impl<'a> Cells<'a> {
    fn new(bound: &'a BoundExpr) -> Self {
        Cells {
            bound,
            critical: bound.critical_points(),
        }
    }

    /// `(inf, sup)` of B over `[n, n + 1]`.
    fn extremes(&self, n: u64) -> Result<(EvalResult, EvalResult)> {
        let (a, b) = (n as f64, (n + 1) as f64);
        let left = self.bound.eval(a)?;
        let right = self.bound.eval(b)?;
        let (mut lo, mut hi) = if left.value <= right.value {
            (left, right)
        } else {
            (right, left)
        };
        for &c in self.critical.iter().filter(|&&c| a < c && c < b) {
            let v = self.bound.eval(c)?;
            if v.value < lo.value {
                lo = v;
            }
            if v.value > hi.value {
                hi = v;
            }
        }
        Ok((lo, hi))
    }

    fn check(&self, dir: Direction, n: u64, f: f64, f_err: f64) -> Result<Point> {
        let (inf, sup) = self.extremes(n)?;
        Ok(match dir {
            Direction::UpperStrict => Point::guarded(inf.value - f, inf.abs_error_bound + f_err),
            Direction::LowerStrict => Point::guarded(f - sup.value, sup.abs_error_bound + f_err),
        })
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// lcm(1, …, n), or `None` on u128 overflow.
fn lcm_upto(n: u64) -> Option<u128> {
    (2..=n as u128).try_fold(1u128, |acc, m| (acc / gcd(acc, m)).checked_mul(m))
}

/// Exact `(ψ(n) <= π(n)·log n, π(n)·log n <= 2ψ(n))` via
/// `lcm(1..n) <= n^π(n) <= lcm(1..n)²`, when it fits in u128.
fn sandwich_exact(n: u64, pi: u64) -> Option<(bool, bool)> {
    let lcm = lcm_upto(n)?;
    let power = (n as u128).checked_pow(u32::try_from(pi).ok()?)?;
    let lcm_sq = lcm.checked_mul(lcm)?;
    Some((lcm <= power, power <= lcm_sq))
}

pub struct Scanner {
    counter: PrimeCounter,
    pool: ThreadPool,
    cap: u64,
}

impl Default for Scanner {
    fn default() -> Self {
        Scanner::new(ScanConfig::default()).expect("default thread pool")
    }
}

impl Scanner {
    pub fn new(config: ScanConfig) -> Result<Self> {
        if config.cap < 2 {
            return Err(Error::InvalidArgument(format!(
                "cap must be >= 2, got {}",
                config.cap
            )));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        Ok(Scanner {
            counter: PrimeCounter::new(config.cap),
            pool,
            cap: config.cap,
        })
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn counter(&self) -> &PrimeCounter {
        &self.counter
    }

    /// Runs `op` inside this scanner's thread pool.
    pub fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        self.pool.install(op)
    }

    fn check_range(&self, lo: u64, hi: u64) -> Result<()> {
        if lo < 2 || lo > hi {
            return Err(Error::InvalidRange { lo, hi });
        }
        if hi > self.cap {
            return Err(Error::CapExceeded {
                what: "range end",
                value: hi,
                cap: self.cap,
            });
        }
        Ok(())
    }

    fn check_bound(b: &BoundExpr, lo: u64) -> Result<()> {
        if !b.in_domain(lo as f64) {
            return Err(Error::Domain {
                name: b.name().to_string(),
                x: lo as f64,
            });
        }
        Ok(())
    }

    /// Checks every integer of `[lo, hi]` in fixed-size chunks; the merge runs
    /// in chunk order so the result does not depend on scheduling.
    fn run<F>(&self, lo: u64, hi: u64, check: F) -> Result<Summary>
    where
        F: Fn(u64) -> Result<Point> + Sync,
    {
        let chunks: Vec<(u64, u64)> = (0..=(hi - lo) / CHUNK_LEN)
            .map(|i| {
                let a = lo + i * CHUNK_LEN;
                (a, hi.min(a + CHUNK_LEN - 1))
            })
            .collect();
        let parts: Vec<Summary> = self.pool.install(|| {
            chunks
                .into_par_iter()
                .map(|(a, b)| {
                    let mut s = Summary::default();
                    for n in a..=b {
                        s.push(n, check(n)?);
                    }
                    Ok(s)
                })
                .collect::<Result<_>>()
        })?;
        Ok(parts.into_iter().fold(Summary::default(), Summary::merge))
    }

    fn pi_summary(&self, b: &BoundExpr, dir: Direction, lo: u64, hi: u64) -> Result<Summary> {
        self.check_range(lo, hi)?;
        Self::check_bound(b, lo)?;
        let table = self.pool.install(|| self.counter.pi_table(lo, hi))?;
        let cells = Cells::new(b);
        self.run(lo, hi, |n| {
            let pi = table.get(n).expect("n within table") as f64;
            cells.check(dir, n, pi, 0.0)
        })
    }

    /// Checks `π(x) < B(x)` (upper) or `B(x) < π(x)` (lower) for every real
    /// x in `[lo, hi + 1)`.
    pub fn verify_pi(&self, b: &BoundExpr, dir: Direction, lo: u64, hi: u64) -> Result<Verdict> {
        Ok(self.pi_summary(b, dir, lo, hi)?.into_verdict())
    }

    /// As [`Scanner::verify_pi`] with ψ in place of π.
    pub fn verify_psi(&self, b: &BoundExpr, dir: Direction, lo: u64, hi: u64) -> Result<Verdict> {
        self.check_range(lo, hi)?;
        Self::check_bound(b, lo)?;
        let table = self.pool.install(|| self.counter.psi_table(lo, hi))?;
        let cells = Cells::new(b);
        let summary = self.run(lo, hi, |n| {
            let (psi, err) = table.get(n).expect("n within table");
            cells.check(dir, n, psi, err)
        })?;
        Ok(summary.into_verdict())
    }

    /// Largest violating integer in `[lo, hi]` and the threshold after it.
    pub fn last_violation(
        &self,
        b: &BoundExpr,
        dir: Direction,
        lo: u64,
        hi: u64,
    ) -> Result<CrossoverResult> {
        let s = self.pi_summary(b, dir, lo, hi)?;
        let last_failure = s.last_fail.map(|(n, _, _)| n);
        let threshold = match last_failure {
            None => Some(lo),
            Some(n) if n < hi => Some(n + 1),
            Some(_) => None,
        };
        let (margin_at_threshold, guard_at_threshold) = match threshold {
            Some(t) => {
                let v = self.verify_pi(b, dir, t, t)?;
                (v.witness_margin, v.guard_at_witness)
            }
            None => (f64::NAN, f64::NAN),
        };
        Ok(CrossoverResult {
            threshold,
            last_failure,
            sign_changes: s.sign_changes,
            margin_at_threshold,
            guard_at_threshold,
            points_checked: s.points,
            ambiguous_points: s.ambiguous,
        })
    }

    pub fn count_violations(&self, b: &BoundExpr, dir: Direction, lo: u64, hi: u64) -> Result<u64> {
        Ok(self.pi_summary(b, dir, lo, hi)?.fails)
    }

    fn difference(f: &BoundExpr, g: &BoundExpr, n: u64) -> Result<Point> {
        let x = n as f64;
        let (fv, gv) = (f.eval(x)?, g.eval(x)?);
        Ok(Point::guarded(
            gv.value - fv.value,
            fv.abs_error_bound + gv.abs_error_bound,
        ))
    }

    fn check_pair(&self, f: &BoundExpr, g: &BoundExpr, lo: u64, hi: u64) -> Result<()> {
        if lo < 1 || lo > hi {
            return Err(Error::InvalidRange { lo, hi });
        }
        if hi > self.cap {
            return Err(Error::CapExceeded {
                what: "range end",
                value: hi,
                cap: self.cap,
            });
        }
        Self::check_bound(f, lo)?;
        Self::check_bound(g, lo)
    }

    /// Smallest n in `[lo, hi]` with `f(m) <= g(m)` for every integer
    /// `m >= n` in range, by a full scan of the sign of `g − f`.
    pub fn analytic_crossover(
        &self,
        f: &BoundExpr,
        g: &BoundExpr,
        lo: u64,
        hi: u64,
    ) -> Result<CrossoverResult> {
        self.check_pair(f, g, lo, hi)?;
        if f.kind() == g.kind() {
            return Ok(CrossoverResult {
                threshold: Some(lo),
                last_failure: None,
                sign_changes: 0,
                margin_at_threshold: 0.0,
                guard_at_threshold: 0.0,
                points_checked: 0,
                ambiguous_points: Vec::new(),
            });
        }
        let s = self.run(lo, hi, |n| Self::difference(f, g, n))?;
        let last_failure = s.last_fail.map(|(n, _, _)| n);
        let threshold = match last_failure {
            None => Some(lo),
            Some(n) if n < hi => Some(n + 1),
            Some(_) => None,
        };
        let (margin_at_threshold, guard_at_threshold) = match threshold {
            Some(t) => {
                let p = Self::difference(f, g, t)?;
                (p.margin, p.guard)
            }
            None => (f64::NAN, f64::NAN),
        };
        Ok(CrossoverResult {
            threshold,
            last_failure,
            sign_changes: s.sign_changes,
            margin_at_threshold,
            guard_at_threshold,
            points_checked: s.points,
            ambiguous_points: s.ambiguous,
        })
    }

    /// Same threshold as [`Scanner::analytic_crossover`], found by walking
    /// down from `hi` until the first decided failure.
    pub fn crossover_descending(
        &self,
        f: &BoundExpr,
        g: &BoundExpr,
        lo: u64,
        hi: u64,
    ) -> Result<Option<u64>> {
        self.check_pair(f, g, lo, hi)?;
        if f.kind() == g.kind() {
            return Ok(Some(lo));
        }
        for n in (lo..=hi).rev() {
            if Self::difference(f, g, n)?.decision == Decision::Fails {
                return Ok((n < hi).then_some(n + 1));
            }
        }
        Ok(Some(lo))
    }

    /// Checks `ψ(n) <= π(n)·log n <= 2ψ(n)` for every integer n in
    /// `[lo, hi]`. Ties inside the guard band are settled exactly.
    pub fn verify_sandwich(&self, lo: u64, hi: u64) -> Result<Verdict> {
        self.check_range(lo, hi)?;
        let (pi, psi) = self.pool.install(|| {
            rayon::join(
                || self.counter.pi_table(lo, hi),
                || self.counter.psi_table(lo, hi),
            )
        });
        let (pi, psi) = (pi?, psi?);
        let summary = self.run(lo, hi, |n| {
            let count = pi.get(n).expect("n within table");
            let (psi_n, psi_err) = psi.get(n).expect("n within table");
            let mid = count as f64 * (n as f64).ln();
            let mid_err = 2.0 * f64::EPSILON * mid.abs();
            let sides = [
                Point::guarded(mid - psi_n, psi_err + mid_err),
                Point::guarded(2.0 * psi_n - mid, 2.0 * psi_err + mid_err),
            ];
            let tight = if sides[0].margin <= sides[1].margin {
                sides[0]
            } else {
                sides[1]
            };
            if sides.iter().all(|p| p.decision != Decision::Ambiguous) {
                let decision = if sides.iter().all(|p| p.decision == Decision::Holds) {
                    Decision::Holds
                } else {
                    Decision::Fails
                };
                return Ok(Point { decision, ..tight });
            }
            Ok(match sandwich_exact(n, count) {
                Some((left, right)) => Point {
                    margin: tight.margin,
                    guard: 0.0,
                    decision: if left && right {
                        Decision::Holds
                    } else {
                        Decision::Fails
                    },
                    exact: true,
                },
                None => Point {
                    decision: Decision::Ambiguous,
                    ..tight
                },
            })
        })?;
        Ok(summary.into_verdict())
    }
}

/// `exp(shift · coef / (coef − 1))`: the point from which
/// `x / (log x − shift) <= coef · x / log x`.
pub fn exp_threshold(shift: f64, coef: f64) -> Result<f64> {
    if coef.is_nan() || coef <= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "exp_threshold needs coef > 1, got {coef}"
        )));
    }
    Ok((shift * coef / (coef - 1.0)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{builtin_bounds, chebyshev_constants, BoundKind};
    use crate::primes::{max_power_le, primes_up_to};

    fn psi_naive(x: u64) -> f64 {
        primes_up_to(x)
            .into_iter()
            .map(|p| max_power_le(p, x) as f64 * (p as f64).ln())
            .sum()
    }

    fn bound(name: &str) -> BoundExpr {
        builtin_bounds().get(name).unwrap().clone()
    }

    #[test]
    fn chebyshev_upper_window() {
        let s = Scanner::default();
        let b = bound("cheb_upper");
        let v = s
            .verify_pi(&b, Direction::UpperStrict, 96098, 112006)
            .unwrap();
        assert_eq!(v.status, Status::Pass);
        assert_eq!(v.points_checked, 112006 - 96098 + 1);
        assert_eq!(v.witness, Some(96098));

        let v = s
            .verify_pi(&b, Direction::UpperStrict, 96097, 96097)
            .unwrap();
        assert_eq!(v.status, Status::Fail);
        assert_eq!(v.witness, Some(96097));
        assert!((0.07..=0.09).contains(&v.witness_margin.abs()));
        assert!(v.witness_clears_guard(1e3));
    }

    #[test]
    fn unit_lower_edge() {
        let s = Scanner::default();
        let b = bound("unit_lower");
        let v = s.verify_pi(&b, Direction::LowerStrict, 16, 16).unwrap();
        assert_eq!((v.status, v.witness), (Status::Fail, Some(16)));
        let v = s
            .verify_pi(&b, Direction::LowerStrict, 17, 100_000)
            .unwrap();
        assert_eq!(v.status, Status::Pass);
    }

    #[test]
    fn violation_counts() {
        let s = Scanner::default();
        let b = bound("cheb_upper");
        assert_eq!(
            s.count_violations(&b, Direction::UpperStrict, 96098, 112006)
                .unwrap(),
            0
        );
        assert_eq!(
            s.count_violations(&b, Direction::UpperStrict, 96097, 96097)
                .unwrap(),
            1
        );
        // regression constant, cross-checked against an independent sieve script
        assert_eq!(
            s.count_violations(&b, Direction::UpperStrict, 30, 96097)
                .unwrap(),
            83411
        );
    }

    #[test]
    fn last_violation_examples() {
        let s = Scanner::default();
        let r = s
            .last_violation(&bound("cheb_upper"), Direction::UpperStrict, 30, 200_000)
            .unwrap();
        assert_eq!((r.last_failure, r.threshold), (Some(96097), Some(96098)));
        let r = s
            .last_violation(&bound("d125506"), Direction::UpperStrict, 17, 1_000_000)
            .unwrap();
        assert_eq!((r.last_failure, r.threshold), (None, Some(17)));
        let r = s
            .last_violation(&bound("cheb_upper"), Direction::UpperStrict, 96000, 96097)
            .unwrap();
        assert_eq!((r.last_failure, r.threshold), (Some(96097), None));
    }

    #[test]
    fn non_monotone_cells_use_interior_minimum() {
        // x / (log x − 1.11) has its minimum inside [8, 9]
        let s = Scanner::default();
        let b = bound("pan_upper");
        let v = s.verify_pi(&b, Direction::UpperStrict, 4, 20).unwrap();
        assert_eq!(v.status, Status::Pass);
        let inf = b.extrema_on(8.0, 9.0).unwrap().min.value;
        let direct = s.verify_pi(&b, Direction::UpperStrict, 8, 8).unwrap();
        assert!((direct.witness_margin - (inf - 4.0)).abs() < 1e-12);
    }

    #[test]
    fn psi_lower_at_two() {
        let s = Scanner::default();
        let b = bound("psi_lower");
        let v = s.verify_psi(&b, Direction::LowerStrict, 2, 2).unwrap();
        // B is decreasing then increasing on [2, 3]; the supremum is B(2)
        let (c1, _) = chebyshev_constants();
        let b2 = 2.0 * c1 - 2.5 * 2f64.ln() - 1.0;
        assert_eq!(v.status, Status::Pass);
        assert!((v.witness_margin - (2f64.ln() - b2)).abs() < 1e-12);
    }

    #[test]
    fn sandwich_tie_at_two_is_exact() {
        let s = Scanner::default();
        let v = s.verify_sandwich(2, 5000).unwrap();
        assert_eq!(v.status, Status::Pass);
        assert_eq!(v.exact_points, vec![2]);
        assert_eq!((v.witness, v.min_margin), (Some(2), 0.0));
        assert!(v.ambiguous_points.is_empty());
    }

    #[test]
    fn sandwich_exact_helper() {
        assert_eq!(lcm_upto(10), Some(2520));
        assert_eq!(sandwich_exact(2, 1), Some((true, true)));
        assert_eq!(sandwich_exact(10, 4), Some((true, true)));
        // a wrong π makes the left side fail
        assert_eq!(sandwich_exact(10, 3), Some((false, true)));
        assert_eq!(sandwich_exact(200, 46), None);
        assert!((psi_naive(10) - 2520f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn crossover_examples() {
        let s = Scanner::default();
        let r = s
            .analytic_crossover(&bound("dusart_upper"), &bound("pan_upper"), 30, 50_000)
            .unwrap();
        assert_eq!((r.threshold, r.sign_changes), (Some(28516), 1));
        assert!(r.ambiguous_points.is_empty());
        assert!(r.margin_at_threshold > 1e3 * r.guard_at_threshold);
        let d = bound("dusart_upper");
        let r = s.analytic_crossover(&d, &d, 100, 200).unwrap();
        assert_eq!((r.threshold, r.sign_changes), (Some(100), 0));
    }

    #[test]
    fn crossover_not_found() {
        let s = Scanner::default();
        // pan_upper stays below dusart_upper before 28516
        let r = s
            .analytic_crossover(&bound("dusart_upper"), &bound("pan_upper"), 30, 1000)
            .unwrap();
        assert_eq!((r.threshold, r.last_failure), (None, Some(1000)));
        assert_eq!(
            s.crossover_descending(&bound("dusart_upper"), &bound("pan_upper"), 30, 1000)
                .unwrap(),
            None
        );
    }

    #[test]
    fn exp_threshold_values() {
        let (_, c2) = chebyshev_constants();
        let t = exp_threshold(1.11, c2).unwrap();
        assert!((t - 112005.18).abs() < 0.01);
        assert_eq!(exp_threshold(0.0, 3.0).unwrap(), 1.0);
        assert!(exp_threshold(1.0, 1.0).is_err());
        assert!(exp_threshold(1.0, 0.5).is_err());

        let shifted = bound("pan_upper");
        let scaled = bound("cheb_upper");
        let above = t.ceil();
        let below = t.floor() - 1.0;
        assert!(shifted.eval(above).unwrap().value <= scaled.eval(above).unwrap().value);
        assert!(shifted.eval(below).unwrap().value > scaled.eval(below).unwrap().value);
    }

    #[test]
    fn range_errors() {
        let s = Scanner::new(ScanConfig {
            cap: 1000,
            threads: 1,
        })
        .unwrap();
        let b = bound("unit_lower");
        assert!(matches!(
            s.verify_pi(&b, Direction::UpperStrict, 10, 1001),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            s.verify_pi(&b, Direction::UpperStrict, 1, 10),
            Err(Error::InvalidRange { .. })
        ));
        assert!(matches!(
            s.verify_pi(&bound("pan_upper"), Direction::UpperStrict, 3, 10),
            Err(Error::Domain { .. })
        ));
        assert!(Scanner::new(ScanConfig { cap: 1, threads: 1 }).is_err());
    }

    #[test]
    fn custom_bound_scan() {
        let s = Scanner::default();
        let b = BoundExpr::new("half", BoundKind::ScaledLog { coef: 0.5 }, 3.0).unwrap();
        let v = s.verify_pi(&b, Direction::LowerStrict, 3, 10_000).unwrap();
        assert_eq!(v.status, Status::Pass);
    }
}
