//! Analytic bound expressions for π(x) and ψ(x).
//!
//! Every bound in the registry belongs to one of four families, see
//! [`BoundKind`]. Evaluation returns the value together with a conservative
//! bound on its rounding error, which the scanner uses as a guard band.

use std::f64::consts::E;
use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

const EPS: f64 = f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family")]
pub enum BoundKind {
    /// `coef · x / log x`
    ScaledLog { coef: f64 },
    /// `x / (log x − shift)`
    ShiftedLog { shift: f64 },
    /// `(x / log x) · (1 + 1/log x + k/log² x)`
    DusartSeries { k: f64 },
    /// `linear·x + log_sq·log² x + log·log x + constant`
    PsiAffine {
        linear: f64,
        log_sq: f64,
        log: f64,
        constant: f64,
    },
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BoundKind::ScaledLog { coef } => write!(f, "{coef} * x / log x"),
            BoundKind::ShiftedLog { shift } => write!(f, "x / (log x - {shift})"),
            BoundKind::DusartSeries { k } => {
                write!(f, "(x / log x) * (1 + 1/log x + {k}/log^2 x)")
            }
            BoundKind::PsiAffine {
                linear,
                log_sq,
                log,
                constant,
            } => {
                write!(
                    f,
                    "{linear}*x + {log_sq}*log^2 x + {log}*log x + {constant}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub abs_error_bound: f64,
}

/// Smallest and largest value of a bound over a closed interval, with the
/// points where they occur.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrema {
    pub min: EvalResult,
    pub min_at: f64,
    pub max: EvalResult,
    pub max_at: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundExpr {
    name: String,
    kind: BoundKind,
    valid_from: f64,
}

impl BoundExpr {
    pub fn new(name: impl Into<String>, kind: BoundKind, valid_from: f64) -> Result<Self> {
        let b = BoundExpr {
            name: name.into(),
            kind,
            valid_from,
        };
        if valid_from.is_nan() || valid_from <= b.domain_start() {
            return Err(Error::Domain {
                name: b.name,
                x: valid_from,
            });
        }
        Ok(b)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> BoundKind {
        self.kind
    }

    pub fn valid_from(&self) -> f64 {
        self.valid_from
    }

    /// The domain is the open half-line `(domain_start, ∞)`.
    pub fn domain_start(&self) -> f64 {
        match self.kind {
            BoundKind::ShiftedLog { shift } => shift.exp().max(1.0),
            _ => 1.0,
        }
    }

    pub fn in_domain(&self, x: f64) -> bool {
        if !x.is_finite() || x <= 1.0 {
            return false;
        }
        match self.kind {
            BoundKind::ShiftedLog { shift } => x.ln() - shift > 0.0,
            _ => true,
        }
    }

    fn domain_error(&self, x: f64) -> Error {
        Error::Domain {
            name: self.name.clone(),
            x,
        }
    }

    pub fn eval(&self, x: f64) -> Result<EvalResult> {
        if !self.in_domain(x) {
            return Err(self.domain_error(x));
        }
        let l = x.ln();
        let (value, abs_error_bound) = match self.kind {
            BoundKind::ScaledLog { coef } => {
                let v = coef * (x / l);
                (v, 6.0 * EPS * v.abs())
            }
            BoundKind::ShiftedLog { shift } => {
                let d = l - shift;
                let v = x / d;
                let rel = 2.0 * EPS + 2.0 * EPS * (l.abs() + shift.abs()) / d;
                (v, rel * v.abs())
            }
            BoundKind::DusartSeries { k } => {
                let t = 1.0 / l;
                let head = x / l;
                let v = head * (1.0 + t + k * t * t);
                (
                    v,
                    10.0 * EPS * head.abs() * (1.0 + t.abs() + k.abs() * t * t),
                )
            }
            BoundKind::PsiAffine {
                linear,
                log_sq,
                log,
                constant,
            } => {
                let terms = [linear * x, log_sq * l * l, log * l, constant];
                let v = terms[0] + terms[1] + terms[2] + terms[3];
                (v, 6.0 * EPS * terms.iter().map(|t| t.abs()).sum::<f64>())
            }
        };
        Ok(EvalResult {
            value,
            abs_error_bound,
        })
    }

    /// dB/dx at `x` (no domain check).
    pub fn derivative(&self, x: f64) -> f64 {
        let l = x.ln();
        match self.kind {
            BoundKind::ScaledLog { coef } => coef * (l - 1.0) / (l * l),
            BoundKind::ShiftedLog { shift } => {
                let d = l - shift;
                (d - 1.0) / (d * d)
            }
            BoundKind::DusartSeries { k } => {
                let t = 1.0 / l;
                t + (k - 2.0) * t * t * t - 3.0 * k * t * t * t * t
            }
            BoundKind::PsiAffine {
                linear,
                log_sq,
                log,
                ..
            } => linear + (2.0 * log_sq * l + log) / x,
        }
    }

    /// Points of the domain where dB/dx changes sign, ascending.
    pub fn critical_points(&self) -> Vec<f64> {
        let start = self.domain_start();
        let points = match self.kind {
            BoundKind::ScaledLog { coef } if coef != 0.0 => vec![E],
            BoundKind::ScaledLog { .. } => vec![],
            BoundKind::ShiftedLog { shift } => vec![(shift + 1.0).exp()],
            BoundKind::DusartSeries { k } => {
                // x^{-1}·L⁴·B' = L³ + (k − 2)L − 3k with L = log x
                let cubic = |l: f64| l * l * l + (k - 2.0) * l - 3.0 * k;
                let l_max = 1.0 + (k - 2.0).abs().max(3.0 * k.abs());
                let mut breaks = vec![0.0];
                if k < 2.0 {
                    let turn = ((2.0 - k) / 3.0).sqrt();
                    if turn < l_max {
                        breaks.push(turn);
                    }
                }
                breaks.push(l_max);
                roots_on_monotone_pieces(cubic, &breaks)
                    .into_iter()
                    .map(f64::exp)
                    .collect()
            }
            BoundKind::PsiAffine {
                linear,
                log_sq,
                log,
                ..
            } => {
                // x·B' = linear·e^L + 2·log_sq·L + log, monotone between turns of its derivative
                let h = |l: f64| linear * l.exp() + 2.0 * log_sq * l + log;
                let l_max = 45.0;
                let mut breaks = vec![0.0];
                if linear != 0.0 && -2.0 * log_sq / linear > 1.0 {
                    let turn = (-2.0 * log_sq / linear).ln();
                    if turn < l_max {
                        breaks.push(turn);
                    }
                }
                breaks.push(l_max);
                roots_on_monotone_pieces(h, &breaks)
                    .into_iter()
                    .map(f64::exp)
                    .collect()
            }
        };
        points.into_iter().filter(|&c| c > start).collect()
    }

    fn check_interval(&self, lo: f64, hi: f64) -> Result<()> {
        if !self.in_domain(lo) {
            return Err(self.domain_error(lo));
        }
        if !hi.is_finite() || hi < lo {
            return Err(self.domain_error(hi));
        }
        Ok(())
    }

    /// Whether B is strictly increasing on `[lo, hi]`, decided from the sign
    /// of the derivative between critical points.
    pub fn is_increasing_on(&self, lo: f64, hi: f64) -> Result<bool> {
        self.check_interval(lo, hi)?;
        let crosses = self.critical_points().iter().any(|&c| lo <= c && c <= hi);
        Ok(!crosses && self.derivative(lo) > 0.0)
    }

    /// Minimum and maximum of B over the closed interval `[lo, hi]`.
    pub fn extrema_on(&self, lo: f64, hi: f64) -> Result<Extrema> {
        self.check_interval(lo, hi)?;
        let mut candidates = vec![lo];
        candidates.extend(
            self.critical_points()
                .into_iter()
                .filter(|&c| lo < c && c < hi),
        );
        candidates.push(hi);
        let mut out: Option<Extrema> = None;
        for x in candidates {
            let r = self.eval(x)?;
            out = Some(match out {
                None => Extrema {
                    min: r,
                    min_at: x,
                    max: r,
                    max_at: x,
                },
                Some(mut e) => {
                    if r.value < e.min.value {
                        e.min = r;
                        e.min_at = x;
                    }
                    if r.value > e.max.value {
                        e.max = r;
                        e.max_at = x;
                    }
                    e
                }
            });
        }
        Ok(out.expect("at least two candidates"))
    }
}

/// Roots of `f` on each piece `[breaks[i], breaks[i+1]]`, assuming `f` is
/// monotone on every piece.
fn roots_on_monotone_pieces(f: impl Fn(f64) -> f64, breaks: &[f64]) -> Vec<f64> {
    let mut roots: Vec<f64> = Vec::new();
    for w in breaks.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (fa, fb) = (f(a), f(b));
        if fa == 0.0 {
            roots.push(a);
            continue;
        }
        if fa.signum() == fb.signum() {
            continue;
        }
        let rising = fb > fa;
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if (f(mid) < 0.0) == rising {
                a = mid;
            } else {
                b = mid;
            }
        }
        roots.push(0.5 * (a + b));
    }
    roots.dedup();
    roots
}

/// Chebyshev's constants `(c1, c2)` with
/// `c1 = log(2^{1/2} 3^{1/3} 5^{1/5} 30^{-1/30})` and `c2 = 6/5 · c1`.
pub fn chebyshev_constants() -> (f64, f64) {
    let c1 = 2f64.ln() / 2.0 + 3f64.ln() / 3.0 + 5f64.ln() / 5.0 - 30f64.ln() / 30.0;
    (c1, 6.0 * c1 / 5.0)
}

/// Named bounds; names are unique.
#[derive(Debug, Clone, PartialEq)]
pub struct Registry {
    bounds: Vec<BoundExpr>,
}

impl Registry {
    pub fn new(bounds: Vec<BoundExpr>) -> Result<Self> {
        for (i, b) in bounds.iter().enumerate() {
            if bounds[..i].iter().any(|o| o.name == b.name) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate bound name `{}`",
                    b.name
                )));
            }
        }
        Ok(Registry { bounds })
    }

    pub fn get(&self, name: &str) -> Result<&BoundExpr> {
        self.bounds
            .iter()
            .find(|b| b.name == name)
            .ok_or_else(|| Error::UnknownBound {
                name: name.to_string(),
                valid: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&str> {
        self.bounds.iter().map(|b| b.name.as_str()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BoundExpr> {
        self.bounds.iter()
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }
}

pub fn builtin_bounds() -> Registry {
    use BoundKind::*;
    let (c1, c2) = chebyshev_constants();
    let defs = [
        ("cheb_upper", ScaledLog { coef: c2 }, 96098.0),
        ("cheb_lower", ScaledLog { coef: c1 }, 30.0),
        ("cheb_upper_2x", ScaledLog { coef: 2.0 * c2 }, 30.0),
        ("unit_lower", ScaledLog { coef: 1.0 }, 17.0),
        ("d1095", ScaledLog { coef: 1.095 }, 284860.0),
        ("d125506", ScaledLog { coef: 1.25506 }, 17.0),
        ("dusart_lower", DusartSeries { k: 1.8 }, 32299.0),
        ("dusart_upper", DusartSeries { k: 2.51 }, 355991.0),
        ("pan_lower", ShiftedLog { shift: 28.0 / 29.0 }, 3299.0),
        ("pan_upper", ShiftedLog { shift: 1.11 }, 4.0),
        ("legendre_a", ShiftedLog { shift: 1.08366 }, 1e6),
        (
            "psi_upper",
            PsiAffine {
                linear: c2,
                log_sq: 5.0 / (4.0 * 6f64.ln()),
                log: 1.25,
                constant: 1.0,
            },
            30.0,
        ),
        (
            "psi_lower",
            PsiAffine {
                linear: c1,
                log_sq: 0.0,
                log: -2.5,
                constant: -1.0,
            },
            30.0,
        ),
    ];
    let bounds = defs
        .into_iter()
        .map(|(name, kind, from)| BoundExpr::new(name, kind, from).expect("builtin bound"))
        .collect();
    Registry::new(bounds).expect("builtin names are unique")
}
