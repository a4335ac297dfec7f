//! Acceptance run: one PASS/FAIL line per criterion, each with its time limit.
//! The lines go straight to stderr so they show without `--nocapture`.

macro_rules! report {
    ($($arg:tt)*) => {
        let _ = writeln!(std::io::stderr(), $($arg)*);
    };
}

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use iwasawa_core::arith::{legendre, v2};
use iwasawa_core::lambda::{lambda2_imaginary_quadratic, lambda2_multiquad_imaginary};
use iwasawa_core::oracle::{run_sweeps, sieve, SweepConfig};
use iwasawa_core::parity::classify;
use iwasawa_core::{LambdaPlus, MultiQuadField, ParityCase, Verdict};

const GREENBERG: LambdaPlus = LambdaPlus::AssumeGreenberg;

fn field(rads: &[i64]) -> MultiQuadField {
    MultiQuadField::from_radicands(rads).unwrap()
}

fn lambda(rads: &[i64]) -> u64 {
    lambda2_multiquad_imaginary(&field(rads), GREENBERG).unwrap().lambda2
}

struct Outcome {
    checked: u64,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { checked: 0, failures: Vec::new() }
    }

    fn check<T: PartialEq + std::fmt::Debug>(&mut self, what: impl FnOnce() -> String, expected: T, got: T) {
        self.checked += 1;
        if expected != got {
            self.failures.push(format!("{}: expected {expected:?}, got {got:?}", what()));
        }
    }
}

fn sweep(suites: &[&str], edit: impl FnOnce(&mut SweepConfig)) -> Outcome {
    let mut cfg = SweepConfig {
        suites: suites.iter().map(|s| s.to_string()).collect(),
        ..SweepConfig::default()
    };
    edit(&mut cfg);
    let report = run_sweeps(&cfg);
    Outcome {
        checked: report.checked,
        failures: report
            .failures
            .iter()
            .map(|f| format!("[{}] {}: expected {}, got {}", f.suite, f.input, f.expected, f.got))
            .collect(),
    }
}

fn criterion(id: u32, name: &str, limit: Duration, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = run();
    let elapsed = start.elapsed();
    let ok = out.failures.is_empty() && out.checked > 0 && elapsed <= limit;
    report!(
        "{} {id:>2} {name}: {} checks, {} mismatches, {:.2?} (limit {:?})",
        if ok { "PASS" } else { "FAIL" },
        out.checked,
        out.failures.len(),
        elapsed,
        limit
    );
    for f in out.failures.iter().take(5) {
        report!("        {f}");
    }
    ok
}

fn biquadratic_with_i_values() -> Outcome {
    let ps = sieve(500);
    let mut out = Outcome::new();
    for &q1 in &ps {
        for &q2 in &ps {
            let expected = if q1 % 16 == 7 && q2 % 8 == 3 {
                3
            } else if q1 < q2 && q1 % 8 == 3 && q2 % 8 == 3 {
                1
            } else {
                continue;
            };
            let (a, b) = (q1 as i64, q2 as i64);
            out.check(|| format!("Q(sqrt({a}), sqrt({b}), sqrt(-1))"), expected, lambda(&[a, b, -1]));
        }
    }
    out
}

fn prescribed_rank_family() -> Outcome {
    let ps = sieve(10_000);
    let mut out = Outcome::new();
    for &l in &ps {
        let n = v2(l as i64 - 1).unwrap();
        if !(3..=6).contains(&n) {
            continue;
        }
        for &l2 in ps.iter().filter(|&&q| q % 8 == 5 && q != l) {
            if legendre(l as i64, l2).unwrap() != -1 {
                continue;
            }
            let got = lambda(&[(l * l2) as i64, -1]);
            out.check(|| format!("l={l} l'={l2}"), 1u64 << (n - 2), got);
        }
    }
    out
}

fn quadratic_reconciliation() -> Outcome {
    let mut out = Outcome::new();
    for d in 1..=5000u64 {
        if !iwasawa_core::arith::is_squarefree(d as i64).unwrap() {
            continue;
        }
        let general = lambda(&[-(d as i64)]);
        let quadratic = lambda2_imaginary_quadratic(d).unwrap();
        out.check(|| format!("d={d}"), quadratic, general);
    }
    out
}

fn parity_fixtures() -> Outcome {
    let mut out = Outcome::new();
    let cases: [(&[i64], Verdict, Option<ParityCase>); 4] = [
        (&[2, -1], Verdict::Odd, Some(ParityCase::Imag4)),
        (&[2, -11, 33], Verdict::Odd, Some(ParityCase::Imag3)),
        (&[2, -5], Verdict::EvenNotDiv4, Some(ParityCase::ImagP5)),
        (&[2, -7], Verdict::Even, None),
    ];
    for (rads, verdict, case) in cases {
        let v = classify(&field(rads)).unwrap();
        out.check(|| format!("{rads:?}"), (verdict, case), (v.verdict, v.matched_case));
    }
    out
}

fn genus_fixture() -> Outcome {
    let mut out = Outcome::new();
    let g = field(&[3, 5]).narrow_genus_field();
    out.check(|| "narrow".into(), field(&[3, 5, -1]), g.narrow);
    out.check(|| "genus".into(), field(&[3, 5]), g.genus);
    out
}

fn sweep_is_deterministic() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut out = Outcome::new();
    let mut files = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("run{i}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_iwasawa"))
            .args(["sweep", "--bound", "50", "--output"])
            .arg(&path)
            .status()
            .unwrap();
        out.check(|| format!("run {i} exit status"), true, status.success());
        files.push(std::fs::read(&path).unwrap_or_default());
    }
    out.check(|| "non-empty table".into(), true, files[0].len() > 40);
    out.check(|| "byte-identical".into(), true, files[0] == files[1]);
    out
}

#[test]
fn acceptance() {
    let s = Duration::from_secs;

    let results = [
        criterion(1, "lambda of Q(sqrt(q1), sqrt(q2), sqrt(-1)) is 3 or 1", s(5), biquadratic_with_i_values),
        criterion(2, "lambda of Q(sqrt(l l'), sqrt(-1)) is 2^N", s(10), prescribed_rank_family),
        criterion(3, "rank-0 general formula equals the quadratic formula", s(5), quadratic_reconciliation),
        criterion(4, "lambda(K) = lambda(K(sqrt(2))), rank <= 4, primes < 100", s(30), || {
            sweep(&["absorption"], |c| {
                c.field_bound = 100;
                c.field_rank = 4;
            })
        }),
        criterion(5, "2 lambda(K) = lambda(K(sqrt(-1))) - 1, rank <= 3, primes < 100", s(10), || {
            sweep(&["kida"], |c| {
                c.field_bound = 100;
                c.field_rank = 3;
            })
        }),
        criterion(6, "closed forms vs iteration oracles, p < 10^4, n <= 12", s(30), || {
            sweep(&["order", "f2n", "tower"], |c| {
                c.prime_bound = 10_000;
                c.level_bound = 12;
            })
        }),
        criterion(7, "parity fixtures", s(1), parity_fixtures),
        criterion(8, "narrow genus field of Q(sqrt(3), sqrt(5))", s(1), genus_fixture),
        criterion(9, "form class-number parity vs genus theory, |D| < 5000", s(20), || {
            sweep(&["forms"], |c| c.disc_bound = 5000)
        }),
        criterion(10, "sweep --bound 50 twice is byte-identical", s(10), sweep_is_deterministic),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    report!("acceptance: {passed}/{} criteria passed", results.len());
    assert_eq!(passed, results.len());
}
