//! Exact integer arithmetic: valuations, factorization, squarefree kernels,
//! Legendre and rational quartic residue symbols, and the closed forms for the
//! order of an odd prime modulo powers of two.

use std::fmt;

use crate::error::{Error, Result};

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Largest `k` with `2^k | n`.
pub fn v2(n: i64) -> Result<u32> {
    if n == 0 {
        return Err(Error::ValuationOfZero);
    }
    Ok(n.trailing_zeros())
}

/// Largest `k` with `p^k | n`.
pub fn vp(n: i64, p: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::ValuationOfZero);
    }
    if p < 2 {
        return Err(Error::NotPrime(p));
    }
    let mut m = n.unsigned_abs();
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    Ok(k)
}

/// `v2(p^2 - 1)` for odd `p`, computed as `v2(p - 1) + v2(p + 1)` so it never overflows.
pub fn nu2_sq_minus_one(p: u64) -> u32 {
    debug_assert!(p % 2 == 1 && p > 1);
    (p - 1).trailing_zeros() + (p + 1).trailing_zeros()
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_odd_prime(p: u64) -> bool {
    p % 2 == 1 && is_prime(p)
}

pub(crate) fn require_odd_prime(p: u64) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p as i128))
    }
}

/// Complete prime factorization of a positive integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn odd_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes().filter(|&p| p != 2)
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factor `n >= 1`: trial division up to 10^6, then Pollard-Brent rho on the
/// remaining cofactor with Miller-Rabin certification of each prime found.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::FactorizeZero);
    }
    let mut factors = Vec::new();
    let mut m = n;
    let tz = m.trailing_zeros();
    if tz > 0 {
        factors.push((2, tz));
        m >>= tz;
    }
    let mut d = 3u64;
    while d <= TRIAL_DIVISION_LIMIT && d * d <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += 2;
    }
    if m > 1 {
        let mut rest = Vec::new();
        split_large(m, &mut rest);
        rest.sort_unstable();
        for p in rest {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
    }
    Ok(Factorization { value: n, factors })
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

// n is odd, composite, and has no factor below the trial-division limit.
fn pollard_brent(n: u64) -> u64 {
    let r = (n as f64).sqrt() as u64;
    for cand in [r, r + 1] {
        if cand * cand == n {
            return cand;
        }
    }
    let f = |x: u64, c: u64| (mul_mod(x, x, n) + c) % n;
    for c in 1u64.. {
        let mut y = 2u64;
        let mut g = 1u64;
        let mut q = 1u64;
        let mut x = y;
        let mut ys = y;
        let mut len = 1u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..len {
                y = f(y, c);
            }
            let mut k = 0;
            while k < len && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(len - k) {
                    y = f(y, c);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            len *= 2;
        }
        if g == n {
            loop {
                ys = f(ys, c);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("pollard rho exhausted parameters")
}

/// Squarefree kernel: product of the primes dividing `n` to an odd power.
pub fn sqf(n: u64) -> Result<u64> {
    let fac = factorize(n)?;
    Ok(fac
        .factors()
        .iter()
        .filter(|&&(_, e)| e % 2 == 1)
        .map(|&(p, _)| p)
        .product())
}

/// Signed squarefree kernel; the sign is kept.
pub fn sqf_signed(n: i64) -> Result<i64> {
    if n == 0 {
        return Err(Error::ZeroRadicand);
    }
    let k = sqf(n.unsigned_abs())? as i64;
    Ok(if n < 0 { -k } else { k })
}

pub fn is_squarefree(n: i64) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroRadicand);
    }
    Ok(factorize(n.unsigned_abs())?.is_squarefree())
}

fn residue(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

/// Legendre symbol `(a/p)` via Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    require_odd_prime(p)?;
    let r = residue(a, p);
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// Rational quartic residue symbol `(a/p)_4 = a^((p-1)/4) mod p`, defined when
/// `p = 1 (mod 4)` and `(a/p) = 1`.
pub fn quartic_symbol(a: i64, p: u64) -> Result<i8> {
    require_odd_prime(p)?;
    if p % 4 != 1 || legendre(a, p)? != 1 {
        return Err(Error::QuarticUndefined { a, p });
    }
    match pow_mod(residue(a, p), (p - 1) / 4, p) {
        1 => Ok(1),
        x if x == p - 1 => Ok(-1),
        x => Err(Error::Internal(format!(
            "quartic power {x} of {a} mod {p} is not +-1"
        ))),
    }
}

/// `(m/2)_4 = (-1)^((m-1)/8)` for `m = 1 (mod 8)`.
pub fn quartic_symbol_mod2(m: i64) -> Result<i8> {
    if m.rem_euclid(8) != 1 {
        return Err(Error::NotOneModEight(m));
    }
    Ok(if (m - 1).div_euclid(8) % 2 == 0 { 1 } else { -1 })
}

fn check_level(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Parse("modulus exponent must be positive".into()));
    }
    if n > 62 {
        return Err(Error::LevelTooLarge(n));
    }
    Ok(())
}

/// Order of `p` in `(Z/2^n Z)^x`, from the three-branch closed form in
/// `v2(p - 1)` and `v2(p^2 - 1)`.
pub fn order_mod_2pow(p: u64, n: u32) -> Result<u64> {
    require_odd_prime(p)?;
    check_level(n)?;
    let a = (p - 1).trailing_zeros();
    let b = nu2_sq_minus_one(p);
    Ok(if n <= a {
        1
    } else if n <= b {
        2
    } else {
        1 << (n - b + 1)
    })
}

/// `min { f >= 1 : p^f = +-1 (mod 2^n) }`, closed form.
pub fn f2n(p: u64, n: u32) -> Result<u64> {
    require_odd_prime(p)?;
    check_level(n)?;
    let b = nu2_sq_minus_one(p);
    Ok(if n < b { 1 } else { 1 << (n - b + 1) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v2_examples() {
        assert_eq!(v2(48), Ok(4));
        assert_eq!(v2(7 * 7 - 1), Ok(4));
        assert_eq!(v2(-6), Ok(1));
        assert_eq!(v2(0), Err(Error::ValuationOfZero));
        assert_eq!(vp(363, 11), Ok(2));
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(360).unwrap().factors(), &[(2, 3), (3, 2), (5, 1)]);
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(363).unwrap().factors(), &[(3, 1), (11, 2)]);
        assert_eq!(factorize(0), Err(Error::FactorizeZero));
    }

    #[test]
    fn factorize_beyond_trial_division() {
        // both factors exceed the trial-division limit
        let p = 1_000_003u64;
        let q = 4_294_967_291u64;
        let f = factorize(p * q).unwrap();
        assert_eq!(f.factors(), &[(p, 1), (q, 1)]);
        let f = factorize(p * p).unwrap();
        assert_eq!(f.factors(), &[(p, 2)]);
        let big = 18_446_744_073_709_551_557u64; // largest 64-bit prime
        assert_eq!(factorize(big).unwrap().factors(), &[(big, 1)]);
    }

    #[test]
    fn sqf_examples() {
        assert_eq!(sqf(1), Ok(1));
        assert_eq!(sqf(363), Ok(3));
        assert_eq!(sqf(7 * 13), Ok(91));
        assert_eq!(sqf_signed(-12), Ok(-3));
        assert_eq!(sqf_signed(0), Err(Error::ZeroRadicand));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(2, 7), Ok(1));
        assert_eq!(legendre(41, 13), Ok(-1));
        assert_eq!(legendre(13, 13), Ok(0));
        assert_eq!(legendre(-1, 7), Ok(-1));
        assert_eq!(legendre(3, 2), Err(Error::NotOddPrime(2)));
        assert_eq!(legendre(3, 9), Err(Error::NotOddPrime(9)));
    }

    #[test]
    fn quartic_examples() {
        assert_eq!(quartic_symbol(2, 17), Ok(-1));
        assert_eq!(quartic_symbol(1, 13), Ok(1));
        // 16^4 = 2^16 = (2^4)^4 = (-1)^4 mod 17
        assert_eq!(quartic_symbol(16, 17), Ok(1));
        assert_eq!(
            quartic_symbol(3, 17),
            Err(Error::QuarticUndefined { a: 3, p: 17 })
        );
        assert!(quartic_symbol(2, 7).is_err());
        assert_eq!(quartic_symbol_mod2(17), Ok(1));
        assert_eq!(quartic_symbol_mod2(9), Ok(-1));
        assert_eq!(quartic_symbol_mod2(1), Ok(1));
        assert_eq!(quartic_symbol_mod2(5), Err(Error::NotOneModEight(5)));
    }

    #[test]
    fn order_and_f2n_examples() {
        assert_eq!(order_mod_2pow(7, 3), Ok(2));
        assert_eq!(order_mod_2pow(7, 5), Ok(4));
        assert_eq!(order_mod_2pow(17, 4), Ok(1));
        assert_eq!(f2n(3, 2), Ok(1));
        assert_eq!(f2n(3, 4), Ok(4));
        assert_eq!(f2n(7, 3), Ok(1));
        assert!(f2n(2, 3).is_err());
        assert!(order_mod_2pow(9, 3).is_err());
    }
}
