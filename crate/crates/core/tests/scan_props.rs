use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use pibounds_core::bounds::{builtin_bounds, BoundExpr, BoundKind};
use pibounds_core::claims::{builtin_claims, Check};
use pibounds_core::primes::{
    pi_oracle_trial_division, pi_point_legendre, primes_up_to, ORACLE_LIMIT,
};
use pibounds_core::scan::{Direction, ScanConfig, Scanner, Status};

fn scanner(threads: usize) -> Scanner {
    Scanner::new(ScanConfig {
        cap: 5_000_000,
        threads,
    })
    .unwrap()
}

fn bound(name: &str) -> BoundExpr {
    builtin_bounds().get(name).unwrap().clone()
}

#[test]
fn sieve_matches_independent_counts_at_random_reals() {
    let s = scanner(0);
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..200 {
        let x: f64 = rng.gen_range(2.0..=5e6);
        let n = x.floor() as u64;
        let expected = if n <= ORACLE_LIMIT {
            pi_oracle_trial_division(n).unwrap()
        } else {
            pi_point_legendre(n).unwrap()
        };
        assert_eq!(s.counter().pi_at(x).unwrap(), expected, "x = {x}");
    }
}

#[test]
fn pass_verdicts_hold_at_random_reals() {
    let s = scanner(0);
    let mut rng = StdRng::seed_from_u64(17);
    let mut checked = 0;
    for claim in builtin_claims() {
        let Check::PiPass { checks, lo, hi, .. } = &claim.check else {
            continue;
        };
        for (name, dir) in checks {
            let b = bound(name);
            let verdict = s.verify_pi(&b, *dir, *lo, *hi).unwrap();
            if verdict.status != Status::Pass {
                continue;
            }
            checked += 1;
            let table = s.counter().pi_table(*lo, *hi).unwrap();
            for _ in 0..1000 {
                let x: f64 = rng.gen_range(*lo as f64..=*hi as f64);
                let pi = table.get(x.floor() as u64).unwrap() as f64;
                let bx = b.eval(x).unwrap().value;
                let holds = match dir {
                    Direction::UpperStrict => pi < bx,
                    Direction::LowerStrict => bx < pi,
                };
                assert!(
                    holds,
                    "{}: {name} at x = {x}: pi = {pi}, B = {bx}",
                    claim.id
                );
            }
        }
    }
    // C8b fails; every other pi inequality in the suite passes
    assert_eq!(checked, 9);
}

#[test]
fn psi_pass_verdicts_hold_at_random_reals() {
    let s = scanner(0);
    let mut rng = StdRng::seed_from_u64(29);
    for (name, dir) in [
        ("psi_upper", Direction::UpperStrict),
        ("psi_lower", Direction::LowerStrict),
    ] {
        let b = bound(name);
        assert_eq!(
            s.verify_psi(&b, dir, 30, 1_000_000).unwrap().status,
            Status::Pass
        );
        let table = s.counter().psi_table(30, 1_000_000).unwrap();
        for _ in 0..1000 {
            let x: f64 = rng.gen_range(30.0..=1e6);
            let (psi, _) = table.get(x.floor() as u64).unwrap();
            let bx = b.eval(x).unwrap().value;
            match dir {
                Direction::UpperStrict => assert!(psi < bx, "{name} at {x}"),
                Direction::LowerStrict => assert!(bx < psi, "{name} at {x}"),
            }
        }
    }
}

#[test]
fn thread_count_does_not_change_verdicts() {
    let (one, many) = (scanner(1), scanner(8));
    for (name, dir, lo, hi) in [
        ("cheb_upper", Direction::UpperStrict, 30, 200_000),
        ("pan_upper", Direction::UpperStrict, 4, 1_000_000),
        ("dusart_lower", Direction::LowerStrict, 2, 1_000_000),
    ] {
        let b = bound(name);
        assert_eq!(
            one.verify_pi(&b, dir, lo, hi).unwrap(),
            many.verify_pi(&b, dir, lo, hi).unwrap(),
            "{name}"
        );
    }
    let b = bound("psi_lower");
    assert_eq!(
        one.verify_psi(&b, Direction::LowerStrict, 30, 500_000)
            .unwrap(),
        many.verify_psi(&b, Direction::LowerStrict, 30, 500_000)
            .unwrap()
    );
    assert_eq!(
        one.verify_sandwich(2, 300_000).unwrap(),
        many.verify_sandwich(2, 300_000).unwrap()
    );
    let (f, g) = (bound("dusart_upper"), bound("pan_upper"));
    assert_eq!(
        one.analytic_crossover(&f, &g, 30, 50_000).unwrap(),
        many.analytic_crossover(&f, &g, 30, 50_000).unwrap()
    );
}

#[test]
fn last_violation_agrees_with_verify() {
    let s = scanner(0);
    let cases = [
        (
            "dusart_upper",
            Direction::UpperStrict,
            2,
            400_000,
            Some(355_990),
        ),
        (
            "dusart_lower",
            Direction::LowerStrict,
            2,
            100_000,
            Some(32_298),
        ),
        ("d1095", Direction::UpperStrict, 2, 400_000, Some(284_859)),
        ("pan_lower", Direction::LowerStrict, 3, 100_000, Some(3_298)),
        ("unit_lower", Direction::LowerStrict, 2, 100_000, Some(16)),
        ("d125506", Direction::UpperStrict, 2, 100_000, None),
    ];
    for (name, dir, lo, hi, expected) in cases {
        let b = bound(name);
        let r = s.last_violation(&b, dir, lo, hi).unwrap();
        assert_eq!(r.last_failure, expected, "{name}");
        let start = r.last_failure.map_or(lo, |n| n + 1);
        assert_eq!(
            s.verify_pi(&b, dir, start, hi).unwrap().status,
            Status::Pass,
            "{name}"
        );
        if let Some(n) = r.last_failure {
            let at = s.verify_pi(&b, dir, n, n).unwrap();
            assert_eq!((at.status, at.witness), (Status::Fail, Some(n)), "{name}");
        }
    }
}

#[test]
fn chebyshev_upper_violation_count() {
    let s = scanner(0);
    assert_eq!(
        s.count_violations(&bound("cheb_upper"), Direction::UpperStrict, 30, 96_097)
            .unwrap(),
        83_411
    );
}

#[test]
fn shifted_upper_with_111_fails_on_a_short_window() {
    let s = scanner(0);
    let v = s
        .verify_pi(&bound("pan_upper"), Direction::UpperStrict, 4, 1_000_000)
        .unwrap();
    assert_eq!(
        (v.status, v.violations, v.witness),
        (Status::Fail, 19, Some(24_254))
    );
    assert_eq!(pi_oracle_trial_division(24_137).unwrap(), 2688);
    assert!(bound("pan_upper").eval(24_137.0).unwrap().value < 2687.5);

    let wider = BoundExpr::new("shift_1112", BoundKind::ShiftedLog { shift: 1.112 }, 4.0).unwrap();
    let v = s
        .verify_pi(&wider, Direction::UpperStrict, 4, 1_000_000)
        .unwrap();
    assert_eq!(v.status, Status::Pass);
}

/// ψ(n) by trial factorisation of every m <= n.
fn psi_independent(n: u64) -> Vec<f64> {
    let mut out = vec![0.0; n as usize + 1];
    let mut acc = 0.0;
    for m in 2..=n {
        let p = (2..=m).find(|d| m % d == 0).unwrap();
        let mut r = m;
        while r % p == 0 {
            r /= p;
        }
        if r == 1 {
            acc += (p as f64).ln();
        }
        out[m as usize] = acc;
    }
    out
}

#[test]
fn sandwich_small_range_against_independent_psi() {
    let s = scanner(0);
    let psi = psi_independent(3000);
    let primes = primes_up_to(3000);
    for n in 3..=3000u64 {
        let pi = primes.iter().take_while(|&&p| p <= n).count() as f64;
        let mid = pi * (n as f64).ln();
        assert!(
            psi[n as usize] < mid && mid < 2.0 * psi[n as usize],
            "n = {n}"
        );
    }
    let v = s.verify_sandwich(2, 3000).unwrap();
    assert_eq!(
        (v.status, v.exact_points.as_slice()),
        (Status::Pass, &[2u64][..])
    );
}

#[test]
fn sandwich_up_to_a_million() {
    let v = scanner(0).verify_sandwich(2, 1_000_000).unwrap();
    assert_eq!(v.status, Status::Pass);
    assert!(v.ambiguous_points.is_empty());
    assert_eq!(v.points_checked, 999_999);
}

#[test]
fn crossover_scan_order() {
    let s = scanner(0);
    for (l, r, lo, hi, expected) in [
        ("dusart_upper", "pan_upper", 30, 50_000, 28_516),
        (
            "dusart_upper",
            "legendre_a",
            1_000_001,
            5_000_000,
            2_846_396,
        ),
    ] {
        let (f, g) = (bound(l), bound(r));
        let fwd = s.analytic_crossover(&f, &g, lo, hi).unwrap();
        assert_eq!((fwd.threshold, fwd.sign_changes), (Some(expected), 1));
        assert_eq!(
            s.crossover_descending(&f, &g, lo, hi).unwrap(),
            Some(expected)
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn crossover_forward_matches_backward(i in 0usize..13, j in 0usize..13, lo in 5u64..200_000, len in 1u64..20_000) {
        let reg = builtin_bounds();
        let names = reg.names();
        let (f, g) = (reg.get(names[i]).unwrap(), reg.get(names[j]).unwrap());
        prop_assume!(f.in_domain(lo as f64) && g.in_domain(lo as f64));
        let s = scanner(0);
        let fwd = s.analytic_crossover(f, g, lo, lo + len).unwrap();
        prop_assume!(fwd.ambiguous_points.is_empty());
        prop_assert_eq!(fwd.threshold, s.crossover_descending(f, g, lo, lo + len).unwrap());
    }
}
