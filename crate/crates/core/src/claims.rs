//! The claim suite: every numerical statement about π, ψ and the bound
//! families, encoded as a runnable check with its expected outcome.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bounds::{builtin_bounds, chebyshev_constants, BoundKind, Registry};
use crate::scan::{exp_threshold, CrossoverResult, Direction, Scanner, Status, Verdict};
use crate::{Error, Result};

/// Factor by which every decision margin must exceed its guard band.
pub const GUARD_AUDIT_FACTOR: f64 = 1e3;

pub const GUARD_POLICY: &str = "ambiguous iff |margin| <= bound eval error + psi summation error; \
     non-strict ties settled in exact integer arithmetic";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClaimKind {
    PiCheck,
    PsiCheck,
    Crossover,
    PointValue,
    ConstantValue,
}

/// Expected decimal with absolute tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Approx {
    pub expected: f64,
    pub tol: f64,
}

impl Approx {
    pub const fn new(expected: f64, tol: f64) -> Self {
        Approx { expected, tol }
    }

    fn slack(&self, value: f64) -> f64 {
        self.tol - (value - self.expected).abs()
    }

    fn matches(&self, value: f64) -> bool {
        self.slack(value) >= 0.0
    }
}

/// The point just below a lower-bound threshold where the bound exceeds π.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeFailure {
    pub n: u64,
    pub real_x: f64,
    pub pi: u64,
    pub value: Approx,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Check {
    /// An upper bound that fails at `x`: π(x) = `pi` exceeds B(x).
    PointFailure {
        bound: &'static str,
        x: u64,
        pi: u64,
        value: Approx,
        /// Accepted range for |B(x) − π(x)|.
        margin: Option<(f64, f64)>,
    },
    /// Every listed inequality holds on `[lo, hi]`.
    PiPass {
        checks: Vec<(&'static str, Direction)>,
        lo: u64,
        hi: u64,
        /// `(shifted, scaled)`: discharge x > hi through the shifted bound
        /// dropping below the scaled one.
        tail: Option<(&'static str, &'static str)>,
        edge: Option<EdgeFailure>,
        /// Report the last violation in `[from, lo − 1]` (informational).
        sharpness_from: Option<u64>,
    },
    PsiPass {
        bound: &'static str,
        dir: Direction,
        lo: u64,
        hi: u64,
    },
    /// ψ(x) <= π(x)·log x <= 2ψ(x) on `[lo, hi]`.
    Sandwich {
        lo: u64,
        hi: u64,
    },
    Crossover {
        left: &'static str,
        right: &'static str,
        lo: u64,
        hi: u64,
        threshold: u64,
        sign_changes: u64,
    },
    /// exp(shift · C / (C − 1)) for the shifted and scaled bounds named.
    ExpThreshold {
        shifted: &'static str,
        scaled: &'static str,
        value: Approx,
    },
    ChebyshevConstants {
        c1: Approx,
        c2: Approx,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Claim {
    pub id: &'static str,
    pub description: &'static str,
    pub kind: ClaimKind,
    pub check: Check,
}

impl Claim {
    /// Verified horizon `[lo, hi]`; `[0, 0]` for pure constants.
    pub fn range(&self) -> (u64, u64) {
        match &self.check {
            Check::PointFailure { x, .. } => (*x, *x),
            Check::PiPass { lo, hi, .. }
            | Check::PsiPass { lo, hi, .. }
            | Check::Sandwich { lo, hi }
            | Check::Crossover { lo, hi, .. } => (*lo, *hi),
            Check::ExpThreshold { .. } | Check::ChebyshevConstants { .. } => (0, 0),
        }
    }

    /// Largest argument the claim needs from the sieve or scanner.
    pub fn required_cap(&self) -> u64 {
        match &self.check {
            Check::ExpThreshold { .. } | Check::ChebyshevConstants { .. } => 2,
            _ => self.range().1,
        }
    }
}

pub fn builtin_claims() -> Vec<Claim> {
    use ClaimKind::*;
    use Direction::*;
    let pass = |checks: Vec<(&'static str, Direction)>, lo, hi| Check::PiPass {
        checks,
        lo,
        hi,
        tail: None,
        edge: None,
        sharpness_from: None,
    };
    let sharp = |bound, dir, lo, hi, from| Check::PiPass {
        checks: vec![(bound, dir)],
        lo,
        hi,
        tail: None,
        edge: None,
        sharpness_from: Some(from),
    };
    vec![
        Claim {
            id: "C1",
            description: "pi(x) < c2 x/log x fails at x = 100: pi(100) = 25 > 24.0067...",
            kind: PointValue,
            check: Check::PointFailure {
                bound: "cheb_upper",
                x: 100,
                pi: 25,
                value: Approx::new(24.006_722_506_905_585, 1e-9),
                margin: None,
            },
        },
        Claim {
            id: "C2",
            description:
                "pi(x) < c2 x/log x on [96098, 112006], tail x >= 112006 via x/(log x - 1.11)",
            kind: PiCheck,
            check: Check::PiPass {
                checks: vec![("cheb_upper", UpperStrict)],
                lo: 96098,
                hi: 112006,
                tail: Some(("pan_upper", "cheb_upper")),
                edge: None,
                sharpness_from: None,
            },
        },
        Claim {
            id: "C3",
            description:
                "x/(log x - 1.11) <= c2 x/log x iff x >= exp(1.11 c2/(c2 - 1)) ~ 112005.18",
            kind: ConstantValue,
            check: Check::ExpThreshold {
                shifted: "pan_upper",
                scaled: "cheb_upper",
                value: Approx::new(112005.18, 0.01),
            },
        },
        Claim {
            id: "C4",
            description: "pi(96097) = 9260 > c2 x/log x ~ 9259.92",
            kind: PointValue,
            check: Check::PointFailure {
                bound: "cheb_upper",
                x: 96097,
                pi: 9260,
                value: Approx::new(9259.92, 0.005),
                margin: Some((0.07, 0.09)),
            },
        },
        Claim {
            id: "C5",
            description:
                "x/log x < pi(x) for x >= 17; fails on [16, 17) (x = 16.999 gives 6.0000257 > 6)",
            kind: PiCheck,
            check: Check::PiPass {
                checks: vec![("unit_lower", LowerStrict)],
                lo: 17,
                hi: 1_000_000,
                tail: None,
                edge: Some(EdgeFailure {
                    n: 16,
                    real_x: 16.999,
                    pi: 6,
                    value: Approx::new(6.0000257, 5e-8),
                }),
                sharpness_from: None,
            },
        },
        Claim {
            id: "C6a",
            description: "pi(x) >= (x/log x)(1 + 1/log x + 1.8/log^2 x) for x >= 32299",
            kind: PiCheck,
            check: sharp("dusart_lower", LowerStrict, 32299, 1_000_000, 2),
        },
        Claim {
            id: "C6b",
            description: "pi(x) <= (x/log x)(1 + 1/log x + 2.51/log^2 x) for x >= 355991",
            kind: PiCheck,
            check: sharp("dusart_upper", UpperStrict, 355991, 5_000_000, 2),
        },
        Claim {
            id: "C7a",
            description: "pi(x) < 1.095 x/log x for x >= 284860",
            kind: PiCheck,
            check: sharp("d1095", UpperStrict, 284860, 5_000_000, 2),
        },
        Claim {
            id: "C7b",
            description: "pi(x) < 1.25506 x/log x for x >= 17",
            kind: PiCheck,
            check: sharp("d125506", UpperStrict, 17, 1_000_000, 2),
        },
        Claim {
            id: "C8a",
            description: "pi(x) > x/(log x - 28/29) for x >= 3299",
            kind: PiCheck,
            check: pass(vec![("pan_lower", LowerStrict)], 3299, 1_000_000),
        },
        Claim {
            id: "C8b",
            description: "pi(x) < x/(log x - 1.11) for x >= 4",
            kind: PiCheck,
            check: pass(vec![("pan_upper", UpperStrict)], 4, 1_000_000),
        },
        Claim {
            id: "C9",
            description: "psi(x) < (6/5)c1 x + 5/(4 log 6) log^2 x + (5/4) log x + 1 for x >= 30",
            kind: PsiCheck,
            check: Check::PsiPass {
                bound: "psi_upper",
                dir: UpperStrict,
                lo: 30,
                hi: 1_000_000,
            },
        },
        Claim {
            id: "C10",
            description: "psi(x) > c1 x - (5/2) log x - 1 for x >= 30",
            kind: PsiCheck,
            check: Check::PsiPass {
                bound: "psi_lower",
                dir: LowerStrict,
                lo: 30,
                hi: 1_000_000,
            },
        },
        Claim {
            id: "C11",
            description: "psi(x) <= pi(x) log x <= 2 psi(x) for x >= 2",
            kind: PsiCheck,
            check: Check::Sandwich {
                lo: 2,
                hi: 1_000_000,
            },
        },
        Claim {
            id: "C12",
            description: "c1 x/log x < pi(x) < 2 c2 x/log x for x >= 30",
            kind: PiCheck,
            check: pass(
                vec![("cheb_lower", LowerStrict), ("cheb_upper_2x", UpperStrict)],
                30,
                1_000_000,
            ),
        },
        Claim {
            id: "C13",
            description: "(x/log x)(1 + 1/log x + 2.51/log^2 x) < x/(log x - 1.11) for x >= 28516",
            kind: Crossover,
            check: Check::Crossover {
                left: "dusart_upper",
                right: "pan_upper",
                lo: 30,
                hi: 50_000,
                threshold: 28516,
                sign_changes: 1,
            },
        },
        Claim {
            id: "C14",
            description:
                "(x/log x)(1 + 1/log x + 2.51/log^2 x) < x/(log x - 1.08366) for x >= 2846396",
            kind: Crossover,
            check: Check::Crossover {
                left: "dusart_upper",
                right: "legendre_a",
                lo: 1_000_001,
                hi: 5_000_000,
                threshold: 2846396,
                sign_changes: 1,
            },
        },
        Claim {
            id: "C15",
            description: "c1 ~ 0.921292022934 and c2 = (6/5)c1 ~ 1.10555042752",
            kind: ConstantValue,
            check: Check::ChebyshevConstants {
                c1: Approx::new(0.921292022934, 1e-11),
                c2: Approx::new(1.10555042752, 1e-10),
            },
        },
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum MatchStatus {
    Match,
    Mismatch,
    Skipped,
}

impl MatchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            MatchStatus::Match => "MATCH",
            MatchStatus::Mismatch => "MISMATCH",
            MatchStatus::Skipped => "SKIPPED",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimOutcome {
    pub id: &'static str,
    pub kind: ClaimKind,
    pub status: MatchStatus,
    /// `None` when skipped or when the check could not run.
    pub verdict: Option<Verdict>,
    pub range: (u64, u64),
    pub elapsed: Duration,
    pub notes: Vec<String>,
}

impl ClaimOutcome {
    /// Guard-band audit for this claim's witness decision.
    pub fn clears_guard(&self, factor: f64) -> bool {
        self.verdict
            .as_ref()
            .is_none_or(|v| v.witness_clears_guard(factor))
    }
}

fn scalar_verdict(ok: bool, slack: f64, guard: f64, points: u64) -> Verdict {
    Verdict {
        status: if ok { Status::Pass } else { Status::Fail },
        witness: None,
        witness_margin: slack,
        guard_at_witness: guard,
        min_margin: slack,
        points_checked: points,
        violations: (!ok) as u64,
        ambiguous_points: Vec::new(),
        exact_points: Vec::new(),
    }
}

/// Joins verdicts over the same range: FAIL dominates AMBIGUOUS dominates PASS.
fn combine(verdicts: Vec<Verdict>) -> Verdict {
    let rank = |s: Status| match s {
        Status::Pass => 0,
        Status::Ambiguous => 1,
        Status::Fail => 2,
    };
    let mut it = verdicts.into_iter();
    let mut out = it.next().expect("at least one verdict");
    for v in it {
        let take_witness = match rank(v.status).cmp(&rank(out.status)) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => v.witness_margin < out.witness_margin,
            std::cmp::Ordering::Less => false,
        };
        if take_witness {
            out.status = v.status;
            out.witness = v.witness;
            out.witness_margin = v.witness_margin;
            out.guard_at_witness = v.guard_at_witness;
        }
        out.min_margin = out.min_margin.min(v.min_margin);
        out.points_checked += v.points_checked;
        out.violations += v.violations;
        out.ambiguous_points.extend(v.ambiguous_points);
        out.exact_points.extend(v.exact_points);
    }
    out.ambiguous_points.sort_unstable();
    out.ambiguous_points.dedup();
    out.exact_points.sort_unstable();
    out.exact_points.dedup();
    out
}

fn crossover_verdict(r: &CrossoverResult) -> Verdict {
    let status = if !r.ambiguous_points.is_empty() {
        Status::Ambiguous
    } else if r.threshold.is_some() {
        Status::Pass
    } else {
        Status::Fail
    };
    let margin = if r.margin_at_threshold.is_finite() {
        r.margin_at_threshold
    } else {
        0.0
    };
    let guard = if r.guard_at_threshold.is_finite() {
        r.guard_at_threshold
    } else {
        0.0
    };
    Verdict {
        status,
        witness: r.threshold,
        witness_margin: margin,
        guard_at_witness: guard,
        min_margin: margin,
        points_checked: r.points_checked,
        violations: 0,
        ambiguous_points: r.ambiguous_points.clone(),
        exact_points: Vec::new(),
    }
}

struct Evaluation {
    matched: bool,
    verdict: Verdict,
    notes: Vec<String>,
}

fn scaled_coef(bounds: &Registry, name: &str) -> Result<f64> {
    match bounds.get(name)?.kind() {
        BoundKind::ScaledLog { coef } => Ok(coef),
        k => Err(Error::InvalidArgument(format!(
            "`{name}` is not a scaled-log bound: {k}"
        ))),
    }
}

fn shift_of(bounds: &Registry, name: &str) -> Result<f64> {
    match bounds.get(name)?.kind() {
        BoundKind::ShiftedLog { shift } => Ok(shift),
        k => Err(Error::InvalidArgument(format!(
            "`{name}` is not a shifted-log bound: {k}"
        ))),
    }
}

fn evaluate(scanner: &Scanner, bounds: &Registry, check: &Check) -> Result<Evaluation> {
    let mut notes = Vec::new();
    match check {
        Check::PointFailure {
            bound,
            x,
            pi,
            value,
            margin,
        } => {
            let b = bounds.get(bound)?;
            let verdict = scanner.verify_pi(b, Direction::UpperStrict, *x, *x)?;
            let count = scanner.counter().pi_at(*x as f64)?;
            let bx = b.eval(*x as f64)?.value;
            notes.push(format!("pi({x}) = {count}, {bound}({x}) = {bx:.10}"));
            let margin_ok = margin.is_none_or(|(lo, hi)| {
                let m = verdict.witness_margin.abs();
                lo <= m && m <= hi
            });
            let matched = verdict.status == Status::Fail
                && verdict.witness == Some(*x)
                && count == *pi
                && value.matches(bx)
                && margin_ok;
            Ok(Evaluation {
                matched,
                verdict,
                notes,
            })
        }
        Check::PiPass {
            checks,
            lo,
            hi,
            tail,
            edge,
            sharpness_from,
        } => {
            let mut verdicts = Vec::with_capacity(checks.len());
            for (name, dir) in checks {
                let v = scanner.verify_pi(bounds.get(name)?, *dir, *lo, *hi)?;
                if v.status == Status::Fail {
                    notes.push(format!(
                        "{name}: {} violating points, last at {}",
                        v.violations,
                        v.witness.unwrap_or(0)
                    ));
                }
                verdicts.push(v);
            }
            let verdict = combine(verdicts);
            let mut matched = verdict.status == Status::Pass;

            if let Some((shifted, scaled)) = tail {
                let shift = shift_of(bounds, shifted)?;
                let t = exp_threshold(shift, scaled_coef(bounds, scaled)?)?;
                let (sb, cb) = (bounds.get(shifted)?, bounds.get(scaled)?);
                let above = t.ceil();
                let below = t.floor() - 1.0;
                let crosses = sb.eval(above)?.value <= cb.eval(above)?.value
                    && sb.eval(below)?.value > cb.eval(below)?.value;
                let covered = t <= *hi as f64;
                notes.push(format!("tail: {shifted} <= {scaled} for x >= {t:.2}"));
                matched &= crosses && covered;
            }
            if let Some(e) = edge {
                let (name, dir) = checks[0];
                let b = bounds.get(name)?;
                let at_edge = scanner.verify_pi(b, dir, e.n, e.n)?;
                let count = scanner.counter().pi_at(e.real_x)?;
                let bx = b.eval(e.real_x)?.value;
                notes.push(format!(
                    "edge: {} on [{}, {}), pi({}) = {count}, {name}({}) = {bx:.7}",
                    at_edge.status.as_str(),
                    e.n,
                    e.n + 1,
                    e.real_x,
                    e.real_x
                ));
                matched &= at_edge.status == Status::Fail
                    && at_edge.witness == Some(e.n)
                    && count == e.pi
                    && e.value.matches(bx);
            }
            if let (Some(from), Some((name, dir))) = (sharpness_from, checks.first()) {
                if *from < *lo {
                    let r = scanner.last_violation(bounds.get(name)?, *dir, *from, lo - 1)?;
                    match r.last_failure {
                        Some(n) => {
                            notes.push(format!("sharpness: last violation below {lo} at {n}"))
                        }
                        None => notes.push(format!("sharpness: no violation in [{from}, {lo})")),
                    }
                }
            }
            Ok(Evaluation {
                matched,
                verdict,
                notes,
            })
        }
        Check::PsiPass { bound, dir, lo, hi } => {
            let verdict = scanner.verify_psi(bounds.get(bound)?, *dir, *lo, *hi)?;
            Ok(Evaluation {
                matched: verdict.status == Status::Pass,
                verdict,
                notes,
            })
        }
        Check::Sandwich { lo, hi } => {
            let verdict = scanner.verify_sandwich(*lo, *hi)?;
            if !verdict.exact_points.is_empty() {
                notes.push(format!(
                    "exact tie resolution at {:?}",
                    verdict.exact_points
                ));
            }
            Ok(Evaluation {
                matched: verdict.status == Status::Pass,
                verdict,
                notes,
            })
        }
        Check::Crossover {
            left,
            right,
            lo,
            hi,
            threshold,
            sign_changes,
        } => {
            let r = scanner.analytic_crossover(bounds.get(left)?, bounds.get(right)?, *lo, *hi)?;
            let found = r.threshold.map_or("none".to_string(), |t| t.to_string());
            notes.push(format!(
                "threshold {found}, {} sign change(s), margin {:.3e} at threshold",
                r.sign_changes, r.margin_at_threshold
            ));
            let verdict = crossover_verdict(&r);
            let matched = verdict.status == Status::Pass
                && r.threshold == Some(*threshold)
                && r.sign_changes == *sign_changes;
            Ok(Evaluation {
                matched,
                verdict,
                notes,
            })
        }
        Check::ExpThreshold {
            shifted,
            scaled,
            value,
        } => {
            let t = exp_threshold(shift_of(bounds, shifted)?, scaled_coef(bounds, scaled)?)?;
            notes.push(format!("exp threshold = {t:.6}"));
            let guard = 8.0 * f64::EPSILON * t;
            let ok = value.matches(t);
            Ok(Evaluation {
                matched: ok,
                verdict: scalar_verdict(ok, value.slack(t), guard, 1),
                notes,
            })
        }
        Check::ChebyshevConstants { c1, c2 } => {
            let (v1, v2) = chebyshev_constants();
            notes.push(format!("c1 = {v1:.13}, c2 = {v2:.12}"));
            let ok = c1.matches(v1) && c2.matches(v2);
            let slack = c1.slack(v1).min(c2.slack(v2));
            let guard = 8.0 * f64::EPSILON * v2;
            Ok(Evaluation {
                matched: ok,
                verdict: scalar_verdict(ok, slack, guard, 2),
                notes,
            })
        }
    }
}

/// Runs one claim. Claims that need more than the scanner's cap are
/// SKIPPED; a check that errors is a MISMATCH with the error in its notes.
pub fn run_claim(scanner: &Scanner, claim: &Claim) -> ClaimOutcome {
    let start = Instant::now();
    let mut outcome = ClaimOutcome {
        id: claim.id,
        kind: claim.kind,
        status: MatchStatus::Skipped,
        verdict: None,
        range: claim.range(),
        elapsed: Duration::ZERO,
        notes: Vec::new(),
    };
    if claim.required_cap() > scanner.cap() {
        outcome.notes.push(format!(
            "needs cap {} but the cap is {}",
            claim.required_cap(),
            scanner.cap()
        ));
        return outcome;
    }
    match evaluate(scanner, &builtin_bounds(), &claim.check) {
        Ok(eval) => {
            outcome.status = if eval.matched {
                MatchStatus::Match
            } else {
                MatchStatus::Mismatch
            };
            outcome.verdict = Some(eval.verdict);
            outcome.notes = eval.notes;
        }
        Err(e) => {
            outcome.status = MatchStatus::Mismatch;
            outcome.notes.push(format!("error: {e}"));
        }
    }
    outcome.elapsed = start.elapsed();
    outcome
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportConfig {
    pub cap: u64,
    pub guard_policy: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub config: ReportConfig,
    pub claims: Vec<ClaimOutcome>,
    pub total_elapsed: Duration,
}

#[derive(Serialize)]
struct JsonClaim<'a> {
    id: &'a str,
    status: MatchStatus,
    verdict: Option<Status>,
    witness: Option<u64>,
    min_margin: Option<f64>,
    range: [u64; 2],
    elapsed_ms: u64,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    config: &'a ReportConfig,
    claims: Vec<JsonClaim<'a>>,
    all_match: bool,
}

impl Report {
    pub fn all_match(&self) -> bool {
        self.claims.iter().all(|c| c.status == MatchStatus::Match)
    }

    pub fn get(&self, id: &str) -> Option<&ClaimOutcome> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        let claims = self
            .claims
            .iter()
            .map(|c| JsonClaim {
                id: c.id,
                status: c.status,
                verdict: c.verdict.as_ref().map(|v| v.status),
                witness: c.verdict.as_ref().and_then(|v| v.witness),
                min_margin: c
                    .verdict
                    .as_ref()
                    .map(|v| v.min_margin)
                    .filter(|m| m.is_finite()),
                range: [c.range.0, c.range.1],
                elapsed_ms: c.elapsed.as_millis() as u64,
            })
            .collect();
        let report = JsonReport {
            config: &self.config,
            claims,
            all_match: self.all_match(),
        };
        serde_json::to_string_pretty(&report).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let (verdict, witness, margin) = match &c.verdict {
                Some(v) => (
                    v.status.as_str(),
                    v.witness.map_or("-".to_string(), |w| w.to_string()),
                    format!("{:.6e}", v.min_margin),
                ),
                None => ("-", "-".to_string(), "-".to_string()),
            };
            let _ = writeln!(
                out,
                "{:<5} {:<8} {:<9} witness={:<9} min_margin={:<14} range=[{}, {}] {} ms",
                c.id,
                c.status.as_str(),
                verdict,
                witness,
                margin,
                c.range.0,
                c.range.1,
                c.elapsed.as_millis()
            );
            for note in &c.notes {
                let _ = writeln!(out, "      {note}");
            }
        }
        let count = |s| self.claims.iter().filter(|c| c.status == s).count();
        let _ = writeln!(
            out,
            "{} claims: {} MATCH, {} MISMATCH, {} SKIPPED (cap {}, {} ms)",
            self.claims.len(),
            count(MatchStatus::Match),
            count(MatchStatus::Mismatch),
            count(MatchStatus::Skipped),
            self.config.cap,
            self.total_elapsed.as_millis()
        );
        out
    }
}

/// Runs the selected claims (all when `ids` is `None`) in registry order.
pub fn run_all(scanner: &Scanner, ids: Option<&[&str]>) -> Result<Report> {
    let registry = builtin_claims();
    if let Some(ids) = ids {
        for id in ids {
            if !registry.iter().any(|c| c.id == *id) {
                let valid: Vec<&str> = registry.iter().map(|c| c.id).collect();
                return Err(Error::UnknownClaim {
                    id: id.to_string(),
                    valid: valid.join(", "),
                });
            }
        }
    }
    let start = Instant::now();
    let claims = registry
        .iter()
        .filter(|c| ids.is_none_or(|ids| ids.contains(&c.id)))
        .map(|c| run_claim(scanner, c))
        .collect();
    Ok(Report {
        config: ReportConfig {
            cap: scanner.cap(),
            guard_policy: GUARD_POLICY.to_string(),
        },
        claims,
        total_elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scan::ScanConfig;

    #[test]
    fn registry_shape() {
        let claims = builtin_claims();
        assert_eq!(claims.len(), 18);
        let ids: Vec<&str> = claims.iter().map(|c| c.id).collect();
        let mut dedup = ids.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), ids.len());
        let bounds = builtin_bounds();
        for c in &claims {
            assert!(
                c.required_cap() <= crate::primes::DEFAULT_SCAN_CAP,
                "{}",
                c.id
            );
            let names: Vec<&str> = match &c.check {
                Check::PointFailure { bound, .. } | Check::PsiPass { bound, .. } => vec![bound],
                Check::PiPass { checks, .. } => checks.iter().map(|(b, _)| *b).collect(),
                Check::Crossover { left, right, .. } => vec![left, right],
                Check::ExpThreshold {
                    shifted, scaled, ..
                } => vec![shifted, scaled],
                Check::Sandwich { .. } | Check::ChebyshevConstants { .. } => vec![],
            };
            for n in names {
                assert!(bounds.get(n).is_ok(), "{}: {n}", c.id);
            }
        }
    }

    #[test]
    fn expected_values() {
        let claims = builtin_claims();
        let c13 = claims.iter().find(|c| c.id == "C13").unwrap();
        assert!(matches!(
            c13.check,
            Check::Crossover {
                threshold: 28516,
                ..
            }
        ));
        let c3 = claims.iter().find(|c| c.id == "C3").unwrap();
        assert!(matches!(
            c3.check,
            Check::ExpThreshold {
                value: Approx {
                    expected: 112005.18,
                    tol: 0.01
                },
                ..
            }
        ));
    }

    #[test]
    fn cheap_claims_match() {
        let scanner = Scanner::default();
        let report = run_all(&scanner, Some(&["C1", "C3", "C4", "C15"])).unwrap();
        assert_eq!(report.claims.len(), 4);
        assert!(report.all_match(), "{}", report.to_text());
        let c1 = report.get("C1").unwrap().verdict.as_ref().unwrap();
        assert_eq!((c1.status, c1.witness), (Status::Fail, Some(100)));
        let c4 = report.get("C4").unwrap().verdict.as_ref().unwrap();
        assert!((0.07..=0.09).contains(&c4.witness_margin.abs()));
    }

    #[test]
    fn filter_keeps_registry_order() {
        let scanner = Scanner::default();
        let report = run_all(&scanner, Some(&["C15", "C3"])).unwrap();
        let ids: Vec<&str> = report.claims.iter().map(|c| c.id).collect();
        assert_eq!(ids, ["C3", "C15"]);
    }

    #[test]
    fn unknown_id() {
        let err = run_all(&Scanner::default(), Some(&["C99"])).unwrap_err();
        match err {
            Error::UnknownClaim { id, valid } => {
                assert_eq!(id, "C99");
                assert!(valid.starts_with("C1, C2, C3"));
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn low_cap_skips() {
        let scanner = Scanner::new(ScanConfig {
            cap: 50_000,
            threads: 2,
        })
        .unwrap();
        let report = run_all(&scanner, Some(&["C2", "C6b", "C13", "C15"])).unwrap();
        let status: Vec<MatchStatus> = report.claims.iter().map(|c| c.status).collect();
        assert_eq!(
            status,
            [
                MatchStatus::Skipped,
                MatchStatus::Skipped,
                MatchStatus::Match,
                MatchStatus::Match
            ]
        );
        assert!(report.get("C2").unwrap().verdict.is_none());
        assert!(!report.all_match());
    }

    #[test]
    fn combine_prefers_failures() {
        let pass = scalar_verdict(true, 1.0, 0.0, 3);
        let fail = scalar_verdict(false, -2.0, 0.0, 1);
        let v = combine(vec![pass.clone(), fail]);
        assert_eq!(
            (v.status, v.points_checked, v.min_margin),
            (Status::Fail, 4, -2.0)
        );
        let v = combine(vec![pass.clone(), scalar_verdict(true, 0.5, 0.0, 1)]);
        assert_eq!((v.status, v.witness_margin), (Status::Pass, 0.5));
    }

    #[test]
    fn json_field_order() {
        let report = run_all(&Scanner::default(), Some(&["C1"])).unwrap();
        let json = report.to_json();
        let keys = [
            "\"config\"",
            "\"cap\"",
            "\"guard_policy\"",
            "\"claims\"",
            "\"id\"",
            "\"status\"",
            "\"verdict\"",
            "\"witness\"",
            "\"min_margin\"",
            "\"range\"",
            "\"elapsed_ms\"",
            "\"all_match\"",
        ];
        let mut last = 0;
        for k in keys {
            let at = json[last..]
                .find(k)
                .map(|i| i + last)
                .unwrap_or_else(|| panic!("{k} in {json}"));
            last = at;
        }
        assert!(json.contains("\"verdict\": \"FAIL\""));
        assert!(json.contains("\"witness\": 100"));
    }
}
