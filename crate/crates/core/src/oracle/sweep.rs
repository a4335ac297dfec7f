//! Invariant sweeps comparing closed forms against the brute-force oracles.

use std::collections::HashMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    brute_degree, brute_min_pm1, brute_order, brute_quadratic_behavior,
    brute_residual_degree, brute_sqf, bqf_class_number, bqf_two_torsion, genus_predicts_odd,
    is_fundamental_discriminant, sieve,
};
use crate::arith;
use crate::enumerate::fields_from_atoms;
use crate::error::{Error, Result};
use crate::field::{MultiQuadField, Presentation, SquareClass};
use crate::lambda::{
    combinator_over_rationals, kida_relation_check, lambda2_from_presentation,
    lambda2_imaginary_quadratic, lambda2_multiquad_imaginary, LambdaPlus,
};
use crate::parity::{imag_parity_with_sqrt2, real_vanishing_shape, ParityCase, Verdict};
use crate::tower::{self, Behavior};

/// Every suite name, in run order.
pub const SUITES: &[&str] = &[
    "order",
    "f2n",
    "tower",
    "splitting",
    "compositum",
    "valuation",
    "minus-one",
    "sqf",
    "forms",
    "quadratic-lambda",
    "combinator",
    "presentation",
    "absorption",
    "kida",
    "parity-genus",
    "parity-imaginary",
];

/// A deliberately broken closed form, for testing the sweeps themselves.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fault {
    #[default]
    None,
    /// `f2n` with `n <= v2(p^2-1)` in place of `n < v2(p^2-1)`: wrong exactly at
    /// `n = v2(p^2-1)`.
    F2nBranch,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "" | "none" => Ok(Fault::None),
            "f2n-branch" => Ok(Fault::F2nBranch),
            other => Err(Error::Config(format!("unknown fault {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Odd primes below this bound for the order and tower suites.
    pub prime_bound: u64,
    /// Highest exponent / level for the order and tower suites.
    pub level_bound: u32,
    /// Bound on `x, y` in the valuation identity sweep.
    pub valuation_bound: u64,
    pub sqf_bound: u64,
    /// Bound on `|D|` in the form-counting suite.
    pub disc_bound: u64,
    /// Primes below this bound generate fields in the lambda suites.
    pub field_bound: u64,
    /// Most generators of a field in the lambda suites.
    pub field_rank: usize,
    /// Primes below this bound in the parity suites.
    pub parity_bound: u64,
    /// Random presentations per randomized suite.
    pub samples: usize,
    pub seed: u64,
    pub suites: Vec<String>,
    pub fault: Fault,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            prime_bound: 2000,
            level_bound: 12,
            valuation_bound: 200,
            sqf_bound: 200_000,
            disc_bound: 5000,
            field_bound: 50,
            field_rank: 3,
            parity_bound: 200,
            samples: 2000,
            seed: 1,
            suites: SUITES.iter().map(|s| s.to_string()).collect(),
            fault: Fault::None,
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("bad value {value:?} for {key}")))
}

impl SweepConfig {
    /// Parse `key = value` lines; `#` starts a comment. Keys not given keep
    /// their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = SweepConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "prime_bound" => cfg.prime_bound = parse_value(key, value)?,
                "level_bound" => cfg.level_bound = parse_value(key, value)?,
                "valuation_bound" => cfg.valuation_bound = parse_value(key, value)?,
                "sqf_bound" => cfg.sqf_bound = parse_value(key, value)?,
                "disc_bound" => cfg.disc_bound = parse_value(key, value)?,
                "field_bound" => cfg.field_bound = parse_value(key, value)?,
                "field_rank" => cfg.field_rank = parse_value(key, value)?,
                "parity_bound" => cfg.parity_bound = parse_value(key, value)?,
                "samples" => cfg.samples = parse_value(key, value)?,
                "seed" => cfg.seed = parse_value(key, value)?,
                "fault" => cfg.fault = value.parse()?,
                "suites" => {
                    cfg.suites = value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(str::to_string)
                        .collect();
                    if let Some(bad) = cfg.suites.iter().find(|s| !SUITES.contains(&s.as_str())) {
                        return Err(Error::Config(format!("unknown suite {bad:?}")));
                    }
                }
                other => return Err(Error::Config(format!("unknown key {other:?}"))),
            }
        }
        if cfg.level_bound > 40 {
            return Err(Error::Config("level_bound must be at most 40".into()));
        }
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Failure {
    pub suite: String,
    pub input: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SweepReport {
    pub suites: Vec<String>,
    pub checked: u64,
    pub failures: Vec<Failure>,
    /// Wall-clock time; kept out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Default)]
struct Outcome {
    checked: u64,
    failures: Vec<Failure>,
}

impl Outcome {
    fn merge(mut self, other: Outcome) -> Outcome {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self
    }
}

/// Accumulates comparisons for one suite.
struct Tally {
    suite: &'static str,
    out: Outcome,
}

impl Tally {
    fn new(suite: &'static str) -> Self {
        Tally {
            suite,
            out: Outcome::default(),
        }
    }

    fn check<T: PartialEq + Display>(&mut self, input: impl Display, expected: T, got: T) {
        self.out.checked += 1;
        if expected != got {
            self.fail(input, expected, got);
        }
    }

    /// Compare against a fallible closed form; errors count as failures.
    fn check_res<T: PartialEq + Display>(&mut self, input: impl Display, expected: T, got: Result<T>) {
        match got {
            Ok(v) => self.check(input, expected, v),
            Err(e) => {
                self.out.checked += 1;
                self.fail(input, expected, format!("error: {e}"));
            }
        }
    }

    fn fail(&mut self, input: impl Display, expected: impl Display, got: impl Display) {
        self.out.failures.push(Failure {
            suite: self.suite.to_string(),
            input: input.to_string(),
            expected: expected.to_string(),
            got: got.to_string(),
        });
    }

    fn done(self) -> Outcome {
        self.out
    }
}

fn par_suite<T, F>(suite: &'static str, items: Vec<T>, f: F) -> Outcome
where
    T: Send,
    F: Fn(&mut Tally, T) + Sync,
{
    items
        .into_par_iter()
        .map(|item| {
            let mut t = Tally::new(suite);
            f(&mut t, item);
            t.done()
        })
        .reduce(Outcome::default, Outcome::merge)
}

fn odd_primes(bound: u64) -> Vec<u64> {
    sieve(bound).into_iter().filter(|&p| p > 2).collect()
}

fn suite_rng(cfg: &SweepConfig, suite: &str) -> ChaCha8Rng {
    let salt = suite
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt)
}

/// Run every configured suite. Suites run in parallel; failures are sorted so
/// the report does not depend on scheduling.
pub fn run_sweeps(cfg: &SweepConfig) -> SweepReport {
    let start = Instant::now();
    let names: Vec<&'static str> = SUITES
        .iter()
        .copied()
        .filter(|s| cfg.suites.iter().any(|c| c == s))
        .collect();
    let outcome = names
        .par_iter()
        .map(|&name| run_suite(name, cfg))
        .reduce(Outcome::default, Outcome::merge);
    let mut failures = outcome.failures;
    failures.sort();
    SweepReport {
        suites: names.iter().map(|s| s.to_string()).collect(),
        checked: outcome.checked,
        failures,
        elapsed: start.elapsed(),
    }
}

fn run_suite(name: &'static str, cfg: &SweepConfig) -> Outcome {
    match name {
        "order" => suite_order(cfg),
        "f2n" => suite_f2n(cfg),
        "tower" => suite_tower(cfg),
        "splitting" => suite_splitting(cfg),
        "compositum" => suite_compositum(cfg),
        "valuation" => suite_valuation(cfg),
        "minus-one" => suite_minus_one(cfg),
        "sqf" => suite_sqf(cfg),
        "forms" => suite_forms(cfg),
        "quadratic-lambda" => suite_quadratic_lambda(cfg),
        "combinator" => suite_combinator(cfg),
        "presentation" => suite_presentation(cfg),
        "absorption" => suite_absorption(cfg),
        "kida" => suite_kida(cfg),
        "parity-genus" => suite_parity_genus(cfg),
        "parity-imaginary" => suite_parity_imaginary(cfg),
        _ => Outcome::default(),
    }
}

fn suite_order(cfg: &SweepConfig) -> Outcome {
    let levels = cfg.level_bound;
    par_suite("order", odd_primes(cfg.prime_bound), |t, p| {
        for n in 1..=levels {
            let expected = brute_order(p, n).expect("odd input");
            t.check_res(format!("p={p} n={n}"), expected, arith::order_mod_2pow(p, n));
        }
    })
}

fn f2n_with_fault(p: u64, n: u32, fault: Fault) -> Result<u64> {
    match fault {
        Fault::None => arith::f2n(p, n),
        Fault::F2nBranch => {
            let nu = arith::nu2_sq_minus_one(p);
            Ok(if n <= nu { 1 } else { 1 << (n - nu + 1) })
        }
    }
}

fn suite_f2n(cfg: &SweepConfig) -> Outcome {
    let (levels, fault) = (cfg.level_bound, cfg.fault);
    par_suite("f2n", odd_primes(cfg.prime_bound), |t, p| {
        for n in 1..=levels {
            let expected = brute_min_pm1(p, n).expect("odd input");
            t.check_res(format!("p={p} n={n}"), expected, f2n_with_fault(p, n, fault));
        }
    })
}

fn suite_tower(cfg: &SweepConfig) -> Outcome {
    let levels = cfg.level_bound;
    let degrees: Vec<u64> = (0..=levels)
        .map(|n| brute_degree(n, &[]).expect("level in range"))
        .collect();
    par_suite("tower", odd_primes(cfg.prime_bound), |t, p| {
        for n in 0..=levels {
            let f = brute_residual_degree(p, n, &[]).expect("p odd");
            let g = degrees[n as usize] / f;
            let input = format!("p={p} n={n}");
            t.check_res(&input, f, tower::residual_degree_qn(p, n));
            t.check_res(&input, g, tower::num_primes_qn(p, n));
            let efg = tower::residual_degree_qn(p, n)
                .and_then(|f| Ok(f * tower::num_primes_qn(p, n)?));
            t.check_res(format!("e*f*g {input}"), 1u64 << n, efg);
        }
    })
}

fn small_squarefree(bound: i64) -> Vec<i64> {
    (-bound..=bound)
        .filter(|&d| d != 0 && d != 1 && arith::is_squarefree(d).unwrap_or(false))
        .collect()
}

fn behavior_name(b: Behavior) -> &'static str {
    match b {
        Behavior::Split => "split",
        Behavior::Inert => "inert",
        Behavior::Ramified => "ramified",
        Behavior::Mixed => "mixed",
    }
}

fn suite_splitting(cfg: &SweepConfig) -> Outcome {
    let levels = cfg.level_bound.min(6);
    let radicands = small_squarefree(30);
    par_suite("splitting", odd_primes(cfg.prime_bound.min(120)), |t, p| {
        for &d in &radicands {
            for n in 0..=levels {
                let expected = brute_quadratic_behavior(p, d, n).expect("model in range");
                let got = tower::splitting_qn_quadratic(p, d, n).map(behavior_name);
                t.check_res(format!("p={p} d={d} n={n}"), behavior_name(expected), got);
            }
        }
    })
}

/// Two quadratic extensions of `Q_n` in which the primes above `p` are inert:
/// they split in the compositum over either one, so the compositum has twice
/// as many primes above `p` as `Q_n`.
fn suite_compositum(cfg: &SweepConfig) -> Outcome {
    let radicands = small_squarefree(15);
    let mut pairs = Vec::new();
    for n in 0..=cfg.level_bound.min(2) {
        for (i, &d) in radicands.iter().enumerate() {
            for &e in &radicands[i + 1..] {
                pairs.push((n, d, e));
            }
        }
    }
    let primes = odd_primes(cfg.prime_bound.min(60));
    par_suite("compositum", pairs, |t, (n, d, e)| {
        let de = MultiQuadField::from_radicands(&[d, e]).expect("squarefree");
        // sqrt(2) lies in Q_n for n >= 1, so such pairs are dependent there
        if de.rank() < 2 || (n >= 1 && de.contains(&SquareClass::two())) {
            return;
        }
        let mut degree = None;
        for &p in &primes {
            let inert = |r| tower::splitting_qn_quadratic(p, r, n) == Ok(Behavior::Inert);
            if !inert(d) || !inert(e) {
                continue;
            }
            let deg = *degree.get_or_insert_with(|| brute_degree(n, &[d, e]).expect("model"));
            let f = brute_residual_degree(p, n, &[d, e]).expect("unramified");
            let got = deg / f;
            let base = tower::num_primes_qn(p, n).expect("odd prime");
            t.check(format!("p={p} n={n} d={d},{e}"), 2 * base, got);
        }
    })
}

fn suite_valuation(cfg: &SweepConfig) -> Outcome {
    let bound = cfg.valuation_bound;
    let xs: Vec<u64> = (1..bound).step_by(2).collect();
    let ys = xs.clone();
    par_suite("valuation", xs, |t, x| {
        for &y in ys.iter().filter(|&&y| y < x && (x - y) % 4 == 0) {
            let (bx, by) = (BigInt::from(x), BigInt::from(y));
            let (mut px, mut py) = (bx.clone(), by.clone());
            let base = arith::v2((x - y) as i64).expect("x != y");
            for n in 1..=64u32 {
                let diff = &px - &py;
                let actual = diff.trailing_zeros().expect("nonzero") as u32;
                let predicted = base + arith::v2(n as i64).expect("n > 0");
                t.check(format!("x={x} y={y} n={n}"), actual, predicted);
                px *= &bx;
                py *= &by;
            }
        }
    })
}

fn suite_minus_one(cfg: &SweepConfig) -> Outcome {
    let levels = cfg.level_bound;
    par_suite("minus-one", odd_primes(cfg.prime_bound), |t, p| {
        for n in 1..=levels {
            let m = 1u64 << n;
            let order = brute_order(p, n).expect("odd");
            let mut x = 1u64;
            let mut hits_minus_one = false;
            for _ in 0..order {
                x = x * (p % m) % m;
                hits_minus_one |= x == m - 1;
            }
            let implied = !hits_minus_one || p % m == m - 1;
            t.check(format!("p={p} n={n}"), true, implied);
        }
    })
}

fn suite_sqf(cfg: &SweepConfig) -> Outcome {
    let chunks: Vec<(u64, u64)> = (1..=cfg.sqf_bound)
        .step_by(4096)
        .map(|lo| (lo, (lo + 4095).min(cfg.sqf_bound)))
        .collect();
    par_suite("sqf", chunks, |t, (lo, hi)| {
        for n in lo..=hi {
            t.check_res(format!("n={n}"), brute_sqf(n), arith::sqf(n));
        }
    })
}

fn suite_forms(cfg: &SweepConfig) -> Outcome {
    let discs: Vec<i64> = (3..cfg.disc_bound as i64)
        .map(|n| -n)
        .filter(|&d| is_fundamental_discriminant(d))
        .collect();
    par_suite("forms", discs, |t, d| {
        let h = bqf_class_number(d).expect("valid discriminant");
        let odd = genus_predicts_odd(d).expect("fundamental");
        t.check(format!("D={d} parity"), odd, h % 2 == 1);
        let two = bqf_two_torsion(d).expect("valid discriminant");
        t.check(format!("D={d} 2-torsion divides h"), true, h % two == 0);
    })
}

/// `lambda(Q(sqrt(-d)))` from a direct count: `sum 2^(v2(p^2-1)-3) - 1` over
/// the odd primes of `d`, and 0 for `d` in {1, 2}.
fn direct_quadratic_lambda(d: u64) -> u64 {
    if d <= 2 {
        return 0;
    }
    let mut n = d;
    while n % 2 == 0 {
        n /= 2;
    }
    let mut primes = Vec::new();
    let mut q = 3;
    while q * q <= n {
        if n % q == 0 {
            primes.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 2;
    }
    if n > 1 {
        primes.push(n);
    }
    let total: u64 = primes
        .iter()
        .map(|&p| {
            let mut x = p * p - 1;
            let mut e = 0;
            while x % 2 == 0 {
                x /= 2;
                e += 1;
            }
            1u64 << (e - 3)
        })
        .sum();
    total - 1
}

fn suite_quadratic_lambda(_cfg: &SweepConfig) -> Outcome {
    let ds: Vec<u64> = (1..=5000u64)
        .filter(|&d| arith::is_squarefree(d as i64).unwrap_or(false))
        .collect();
    par_suite("quadratic-lambda", ds, |t, d| {
        let expected = direct_quadratic_lambda(d);
        t.check_res(format!("d={d} quadratic"), expected, lambda2_imaginary_quadratic(d));
        let general = Presentation::new(&[], d as i64)
            .and_then(|p| lambda2_from_presentation(&p, LambdaPlus::AssumeGreenberg))
            .map(|r| r.lambda2);
        t.check_res(format!("d={d} general"), expected, general);
    })
}

fn random_odd_class(rng: &mut ChaCha8Rng, primes: &[u64], max_factors: usize) -> SquareClass {
    let k = rng.gen_range(0..=max_factors);
    (0..k).fold(SquareClass::one(), |acc, _| {
        acc.mul(&SquareClass::odd_prime(*primes.choose(rng).expect("nonempty")))
    })
}

fn random_presentations(cfg: &SweepConfig, suite: &str, allow_two: bool) -> Vec<Presentation> {
    let mut rng = suite_rng(cfg, suite);
    let primes = odd_primes(cfg.field_bound.max(8));
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < cfg.samples && attempts < cfg.samples * 20 {
        attempts += 1;
        let r = rng.gen_range(1..=cfg.field_rank.max(1));
        let mut d_list: Vec<SquareClass> = (0..r).map(|_| random_odd_class(&mut rng, &primes, 2)).collect();
        if allow_two && rng.gen_bool(0.3) {
            d_list[0] = SquareClass::two();
        }
        let d = random_odd_class(&mut rng, &primes, 2);
        if let Ok(p) = Presentation::from_classes(d_list, d) {
            out.push(p);
        }
    }
    out
}

fn suite_combinator(cfg: &SweepConfig) -> Outcome {
    let ps: Vec<Presentation> = random_presentations(cfg, "combinator", false)
        .into_iter()
        .filter(|p| p.admissible())
        .collect();
    par_suite("combinator", ps, |t, p| {
        let closed = lambda2_from_presentation(&p, LambdaPlus::AssumeGreenberg).map(|r| r.lambda2);
        let relative = combinator_over_rationals(&p, LambdaPlus::AssumeGreenberg);
        match (closed, relative) {
            (Ok(a), b) => t.check_res(p.to_string(), a, b),
            (Err(e), _) => t.fail(p.to_string(), "closed formula value", format!("error: {e}")),
        }
    })
}

/// Every admissible reordering of a presentation, and every choice of `d`
/// within its coset modulo the real subfield, gives the same value.
fn suite_presentation(cfg: &SweepConfig) -> Outcome {
    let ps = random_presentations(cfg, "presentation", true);
    par_suite("presentation", ps, |t, p| {
        let Ok(reference) = lambda2_multiquad_imaginary(&p.field(), LambdaPlus::AssumeGreenberg)
        else {
            t.fail(p.to_string(), "a value", "error on canonical presentation");
            return;
        };
        let r = p.r();
        let mut orders: Vec<Vec<usize>> = vec![(0..r).collect()];
        if r <= 3 {
            orders = permutations(r);
        }
        let real = p.real_subfield();
        for order in orders {
            for v in real.elements() {
                let d = p.d().mul(&v);
                let Ok(base) = p.permuted(&order) else { continue };
                let Ok(variant) = Presentation::from_classes(base.d_list().to_vec(), d) else {
                    continue;
                };
                if !variant.theta() && variant.r() >= 1 && !variant.admissible() {
                    continue;
                }
                t.check_res(
                    format!("{variant}"),
                    reference.lambda2,
                    lambda2_from_presentation(&variant, LambdaPlus::AssumeGreenberg).map(|x| x.lambda2),
                );
            }
        }
    })
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(r - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, r - 1);
            out.push(v);
        }
    }
    out
}

/// `lambda(K) = lambda(K(sqrt 2))` for imaginary `K` without `sqrt(2)`.
pub(crate) fn absorption_fields(bound: u64, rank: usize) -> Vec<MultiQuadField> {
    fields_from_atoms(bound, rank)
        .into_iter()
        .filter(|k| k.is_imaginary() && !k.contains(&SquareClass::two()))
        .collect()
}

fn suite_absorption(cfg: &SweepConfig) -> Outcome {
    let fields = absorption_fields(cfg.field_bound, cfg.field_rank);
    par_suite("absorption", fields, |t, k| {
        let with_two = k.adjoin(&SquareClass::two());
        let a = lambda2_multiquad_imaginary(&k, LambdaPlus::AssumeGreenberg).map(|r| r.lambda2);
        let b = lambda2_multiquad_imaginary(&with_two, LambdaPlus::AssumeGreenberg).map(|r| r.lambda2);
        match a {
            Ok(a) => t.check_res(format!("{k}"), a, b),
            Err(e) => t.fail(format!("{k}"), "a value", format!("error: {e}")),
        }
    })
}

fn suite_kida(cfg: &SweepConfig) -> Outcome {
    let fields: Vec<MultiQuadField> = fields_from_atoms(cfg.field_bound, cfg.field_rank)
        .into_iter()
        .filter(|k| k.is_imaginary())
        .collect();
    par_suite("kida", fields, |t, k| {
        match kida_relation_check(&k, LambdaPlus::AssumeGreenberg, LambdaPlus::AssumeGreenberg) {
            Ok(c) => t.check(
                format!("{k}"),
                2 * c.lambda_k as i64,
                c.lambda_l as i64 - 1,
            ),
            Err(Error::Hypothesis(_)) => {}
            Err(e) => t.fail(format!("{k}"), "relation evaluated", format!("error: {e}")),
        }
    })
}

/// Real fields with at most three odd ramified primes below the parity bound,
/// in every shape the vanishing criterion mentions.
fn real_shape_fields(bound: u64) -> Vec<MultiQuadField> {
    let ps = odd_primes(bound);
    let f = |rads: &[u64]| {
        MultiQuadField::from_radicands(&rads.iter().map(|&x| x as i64).collect::<Vec<_>>())
            .expect("squarefree products of distinct primes")
    };
    let mut out = Vec::new();
    for (i, &p) in ps.iter().enumerate() {
        out.push(f(&[p]));
        for (j, &q) in ps.iter().enumerate().skip(i + 1) {
            out.push(f(&[p * q]));
            out.push(f(&[p, q]));
            for &l in &ps[j + 1..] {
                out.push(f(&[p, q, l]));
                out.push(f(&[p * q, l]));
                out.push(f(&[p * l, q]));
                out.push(f(&[q * l, p]));
                out.push(f(&[p * q, p * l]));
            }
        }
    }
    out
}

fn suite_parity_genus(cfg: &SweepConfig) -> Outcome {
    let fields = real_shape_fields(cfg.parity_bound);
    par_suite("parity-genus", fields, |t, f| match real_vanishing_shape(&f) {
        Ok(Some(m)) => {
            let genus = f.narrow_genus_field().genus;
            t.check(format!("{f} ({})", m.case), f.to_string(), genus.to_string());
        }
        Ok(None) => {}
        Err(e) => t.fail(format!("{f}"), "a shape decision", format!("error: {e}")),
    })
}

/// The four odd shapes and the `p = 5 mod 8` shape, built from their
/// definitions, must each be recognised with their own case and no field may
/// arise from two shapes with different cases. Each field is also regenerated
/// from a random generating set of the same subgroup.
fn suite_parity_imaginary(cfg: &SweepConfig) -> Outcome {
    let ps = odd_primes(cfg.parity_bound.max(8));
    let f = |rads: &[i64]| MultiQuadField::from_radicands(rads).expect("squarefree");
    let mut expected: Vec<(MultiQuadField, Option<ParityCase>)> = vec![(f(&[2, -1]), Some(ParityCase::Imag4))];
    for (i, &p) in ps.iter().enumerate() {
        let pi = p as i64;
        let c1 = match p % 8 {
            3 => Some(ParityCase::Imag1),
            5 => Some(ParityCase::ImagP5),
            _ => None,
        };
        expected.push((f(&[2, -pi]), c1));
        let c2 = matches!(p % 8, 3 | 5).then_some(ParityCase::Imag2);
        expected.push((f(&[2, -1, -pi]), c2));
        for &q in &ps[i + 1..] {
            let c3 = (p % 8 == 3 && q % 8 == 3).then_some(ParityCase::Imag3);
            expected.push((f(&[2, -pi, -(q as i64)]), c3));
        }
    }
    let mut by_field: HashMap<MultiQuadField, Option<ParityCase>> = HashMap::new();
    let mut conflicts = Tally::new("parity-imaginary");
    for (k, c) in &expected {
        if let Some(prev) = by_field.insert(k.clone(), *c) {
            conflicts.check(format!("{k} shapes"), format!("{prev:?}"), format!("{c:?}"));
        }
    }
    let base: u64 = suite_rng(cfg, "parity-imaginary").gen();
    let seeded: Vec<(u64, MultiQuadField, Option<ParityCase>)> = expected
        .into_iter()
        .enumerate()
        .map(|(i, (k, c))| (base ^ i as u64, k, c))
        .collect();
    let main = par_suite("parity-imaginary", seeded, |t, (seed, k, c)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let want_verdict = match c {
            Some(ParityCase::ImagP5) => Verdict::EvenNotDiv4,
            Some(_) => Verdict::Odd,
            None => Verdict::Even,
        };
        for (label, field) in [("canonical", k.clone()), ("regenerated", regenerate(&k, &mut rng))] {
            match imag_parity_with_sqrt2(&field) {
                Ok(v) => {
                    t.check(format!("{k} {label} case"), format!("{c:?}"), format!("{:?}", v.matched_case));
                    t.check(format!("{k} {label} verdict"), want_verdict.to_string(), v.verdict.to_string());
                }
                Err(e) => t.fail(format!("{k} {label}"), "a verdict", format!("error: {e}")),
            }
        }
    });
    conflicts.done().merge(main)
}

/// The same field from a random invertible recombination of its basis, plus
/// one redundant generator.
pub(crate) fn regenerate(k: &MultiQuadField, rng: &mut impl Rng) -> MultiQuadField {
    let basis = k.basis();
    loop {
        let gens: Vec<SquareClass> = (0..basis.len() + 1)
            .map(|_| {
                basis
                    .iter()
                    .filter(|_| rng.gen_bool(0.5))
                    .fold(SquareClass::one(), |acc, b| acc.mul(b))
            })
            .collect();
        let candidate = MultiQuadField::from_classes(gens);
        if candidate == *k {
            return candidate;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let cfg = SweepConfig::parse("# comment\nprime_bound = 100 # trailing\nsuites = order, f2n\nfault = f2n-branch\n")
            .unwrap();
        assert_eq!(cfg.prime_bound, 100);
        assert_eq!(cfg.suites, vec!["order", "f2n"]);
        assert_eq!(cfg.fault, Fault::F2nBranch);
        assert!(SweepConfig::parse("bogus = 1").is_err());
        assert!(SweepConfig::parse("suites = nope").is_err());
        assert!(SweepConfig::parse("prime_bound = x").is_err());
        assert!(SweepConfig::parse("prime_bound").is_err());
        assert!(SweepConfig::parse("suites =").unwrap().suites.is_empty());
    }

    #[test]
    fn direct_lambda() {
        assert_eq!(direct_quadratic_lambda(1), 0);
        assert_eq!(direct_quadratic_lambda(7), 1);
        assert_eq!(direct_quadratic_lambda(21), 2);
        assert_eq!(direct_quadratic_lambda(17), 3);
        assert_eq!(direct_quadratic_lambda(3), 0);
        assert_eq!(direct_quadratic_lambda(9991), lambda2_imaginary_quadratic(9991).unwrap());
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0).len(), 1);
    }
}
