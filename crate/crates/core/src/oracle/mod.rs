//! Brute-force reference implementations. Nothing here calls into the closed
//! forms of [`arith`](crate::arith), [`tower`](crate::tower) or
//! [`lambda`](crate::lambda); every routine iterates or counts directly.

mod forms;
mod sweep;

pub use forms::{bqf_class_number, bqf_two_torsion, genus_predicts_odd, is_fundamental_discriminant};
pub use sweep::{run_sweeps, Failure, Fault, SweepConfig, SweepReport, SUITES};

use crate::error::{Error, Result};
use crate::tower::Behavior;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn odd_modulus(p: u64, n: u32) -> Result<u64> {
    if p % 2 == 0 {
        return Err(Error::Parse(format!("{p} is even")));
    }
    if n == 0 || n > 62 {
        return Err(Error::LevelTooLarge(n));
    }
    Ok(1u64 << n)
}

/// Order of `p` modulo `2^n` by repeated multiplication.
pub fn brute_order(p: u64, n: u32) -> Result<u64> {
    let m = odd_modulus(p, n)?;
    let base = p % m;
    let mut x = base;
    let mut k = 1;
    while x != 1 % m {
        x = mulmod(x, base, m);
        k += 1;
    }
    Ok(k)
}

/// Least `f >= 1` with `p^f = +-1 (mod 2^n)`, by repeated multiplication.
pub fn brute_min_pm1(p: u64, n: u32) -> Result<u64> {
    let m = odd_modulus(p, n)?;
    let base = p % m;
    let mut x = base;
    let mut k = 1;
    while x != 1 % m && x != m - 1 {
        x = mulmod(x, base, m);
        k += 1;
    }
    Ok(k)
}

/// Residual degree of the prime `p` in the subfield of `Q(zeta_m)` fixed by
/// `H = { a : in_h(a) }`: the least `f` with `p^f mod m` in `H`.
pub fn frobenius_walk(p: u64, m: u64, in_h: impl Fn(u64) -> bool) -> u64 {
    let base = p % m;
    let mut x = base;
    let mut f = 1;
    while !in_h(x) {
        x = mulmod(x, base, m);
        f += 1;
    }
    f
}

/// Primes below `bound` by the sieve of Eratosthenes.
pub fn sieve(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    if n < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Jacobi symbol `(a/n)` for odd positive `n`, by quadratic reciprocity.
pub fn jacobi(a: i64, n: u64) -> i8 {
    assert!(n % 2 == 1, "jacobi symbol needs an odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Squarefree kernel of `n >= 1` by dividing out squares.
pub fn brute_sqf(mut n: u64) -> u64 {
    let mut k = 2u64;
    while k * k <= n {
        while n % (k * k) == 0 {
            n /= k * k;
        }
        k += 1;
    }
    n
}

/// Discriminant of `Q(sqrt(d))` for squarefree `d != 1`.
fn quadratic_discriminant(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

fn trivial_on(d: i64, a: u64) -> bool {
    jacobi(quadratic_discriminant(d), a) == 1
}

struct TowerModel {
    two_part: u64,
    m: u64,
    radicands: Vec<i64>,
}

impl TowerModel {
    /// `Q_n(sqrt(d_1), ..., sqrt(d_k))` inside `Q(zeta_M)`, `M = lcm(2^(n+2), |disc d_i|)`.
    /// The fixing group is `{a = +-1 mod 2^(n+2)}` cut by the quadratic characters.
    fn new(n: u32, radicands: &[i64]) -> Result<Self> {
        if n + 2 > 40 {
            return Err(Error::LevelTooLarge(n));
        }
        let two_part = 1u64 << (n + 2);
        let mut m = two_part;
        for &d in radicands {
            let disc = quadratic_discriminant(d).unsigned_abs();
            m = m / gcd(m, disc) * disc;
        }
        Ok(TowerModel {
            two_part,
            m,
            radicands: radicands.to_vec(),
        })
    }

    fn in_h(&self, a: u64) -> bool {
        let r = a % self.two_part;
        (r == 1 || r == self.two_part - 1) && self.radicands.iter().all(|&d| trivial_on(d, a))
    }

    fn residual_degree(&self, p: u64) -> Result<u64> {
        if gcd(p, self.m) != 1 {
            return Err(Error::RamifiedModulus { p, m: self.m });
        }
        Ok(frobenius_walk(p, self.m, |a| self.in_h(a)))
    }

    /// `[Q(zeta_M) : Q] / |H|`, by counting units.
    fn degree(&self) -> u64 {
        let (mut units, mut h) = (0u64, 0u64);
        for a in 1..self.m {
            if gcd(a, self.m) == 1 {
                units += 1;
                if self.in_h(a) {
                    h += 1;
                }
            }
        }
        units / h
    }
}

/// Residual degree of the unramified prime `p` in `Q_n(sqrt(d_1), ..., sqrt(d_k))`.
pub fn brute_residual_degree(p: u64, n: u32, radicands: &[i64]) -> Result<u64> {
    TowerModel::new(n, radicands)?.residual_degree(p)
}

/// `[Q_n(sqrt(d_1), ..., sqrt(d_k)) : Q]` by counting the fixing group.
pub fn brute_degree(n: u32, radicands: &[i64]) -> Result<u64> {
    Ok(TowerModel::new(n, radicands)?.degree())
}

/// Number of primes above `p` in `Q_n(sqrt(d_1), ..., sqrt(d_k))`, for `p`
/// prime to every radicand.
pub fn brute_num_primes(p: u64, n: u32, radicands: &[i64]) -> Result<u64> {
    let model = TowerModel::new(n, radicands)?;
    Ok(model.degree() / model.residual_degree(p)?)
}

/// Behaviour of the primes above `p` in `Q_n(sqrt(d)) / Q_n` from two
/// Frobenius walks: inert iff the residual degree doubles.
pub fn brute_quadratic_behavior(p: u64, d: i64, n: u32) -> Result<Behavior> {
    if d.unsigned_abs() % p == 0 {
        return Ok(Behavior::Ramified);
    }
    let f_base = brute_residual_degree(p, n, &[])?;
    let f_top = brute_residual_degree(p, n, &[d])?;
    Ok(if f_top == f_base {
        Behavior::Split
    } else {
        Behavior::Inert
    })
}
