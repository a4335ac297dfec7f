//! Decomposition of odd primes in the cyclotomic Z_2-tower
//! `Q = Q_0 < Q_1 < ...` and in quadratic and multi-quadratic extensions of its layers.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::{self, nu2_sq_minus_one, require_odd_prime};
use crate::error::{Error, Result};
use crate::field::SquareClass;

/// Highest tower level accepted; `2^(n+2)` must fit comfortably in a `u64`.
pub const MAX_LEVEL: u32 = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Behavior {
    Split,
    Inert,
    Ramified,
    /// Reserved for compositum reports; no operation produces it yet.
    Mixed,
}

/// Decomposition data of an odd prime at level `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub prime: u64,
    pub level: u32,
    pub e: u64,
    pub f: u64,
    pub g: u64,
    /// Behaviour in `Q_n(sqrt(d)) / Q_n` when a radicand was supplied.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub behavior: Option<Behavior>,
}

fn check_level(n: u32) -> Result<()> {
    if n > MAX_LEVEL {
        Err(Error::LevelTooLarge(n))
    } else {
        Ok(())
    }
}

/// Residual degree of `p` in `Q_n / Q`, which is `f_{2^(n+2)}(p)`.
pub fn residual_degree_qn(p: u64, n: u32) -> Result<u64> {
    check_level(n)?;
    arith::f2n(p, n + 2)
}

/// Number of primes of `Q_n` above `p`.
pub fn num_primes_qn(p: u64, n: u32) -> Result<u64> {
    require_odd_prime(p)?;
    check_level(n)?;
    let nu = nu2_sq_minus_one(p);
    Ok(if n + 2 < nu { 1 << n } else { 1 << (nu - 3) })
}

/// `(e, f, g)` of `p` in `Q_n / Q`.
pub fn level_report(p: u64, n: u32) -> Result<SplittingReport> {
    Ok(SplittingReport {
        prime: p,
        level: n,
        e: 1,
        f: residual_degree_qn(p, n)?,
        g: num_primes_qn(p, n)?,
        behavior: None,
    })
}

/// Residual degree of `p` in the subfield of `Q(zeta_m)` fixed by the
/// subgroup `H` of `(Z/mZ)^x` generated by `generators`:
/// `min { f >= 1 : p^f mod m in H }`.
pub fn frobenius_degree_subfield(p: u64, m: u64, generators: &[u64]) -> Result<u64> {
    if m == 0 {
        return Err(Error::Parse("modulus must be positive".into()));
    }
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m > 1 && m % p == 0 {
        return Err(Error::RamifiedModulus { p, m });
    }
    for &g in generators {
        if arith::gcd(g % m, m) != 1 && m > 1 {
            return Err(Error::NotAUnit { g, m });
        }
    }
    let subgroup = generate_subgroup(m, generators);
    let base = p % m;
    let mut x = base;
    let mut f = 1u64;
    while !subgroup.contains(&(x % m)) {
        x = arith::mul_mod(x, base, m);
        f += 1;
    }
    Ok(f)
}

fn generate_subgroup(m: u64, generators: &[u64]) -> BTreeSet<u64> {
    let one = 1 % m;
    let mut seen = BTreeSet::from([one]);
    let mut frontier = vec![one];
    while let Some(x) = frontier.pop() {
        for &g in generators {
            let y = arith::mul_mod(x, g % m, m);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// Behaviour of the primes above `p` in `Q_n(sqrt(d)) / Q_n`.
///
/// The Frobenius of `p` in `Gal(Q_n/Q) x Gal(Q(sqrt(d))/Q)` has order
/// `lcm(f, 2)` when `(d/p) = -1`, where `f` is the residual degree of `p` in
/// `Q_n`. So the primes are inert exactly when `(d/p) = -1` and `f = 1`, that is
/// `n + 2 < v2(p^2 - 1)`; from `n = v2(p^2 - 1) - 2` on they split. For `d = 2`
/// and `n >= 1` the extension is trivial and reported as split.
pub fn splitting_qn_quadratic(p: u64, d: i64, n: u32) -> Result<Behavior> {
    require_odd_prime(p)?;
    check_level(n)?;
    if !arith::is_squarefree(d)? {
        return Err(Error::NotSquarefree(d));
    }
    if d.unsigned_abs() % p == 0 {
        return Ok(Behavior::Ramified);
    }
    if (d == 2 && n >= 1) || arith::legendre(d, p)? == 1 {
        return Ok(Behavior::Split);
    }
    if n + 2 < nu2_sq_minus_one(p) {
        Ok(Behavior::Inert)
    } else {
        Ok(Behavior::Split)
    }
}

/// Whether every prime above `p` splits completely in
/// `Q_inf(sqrt(d_1), ..., sqrt(d_r)) / Q_inf`.
pub fn splits_completely_qinf_multiquad(p: u64, radicands: &[i64]) -> Result<bool> {
    require_odd_prime(p)?;
    for &d in radicands {
        if d == 0 {
            return Err(Error::ZeroRadicand);
        }
        if !arith::is_squarefree(d)? {
            return Err(Error::NotSquarefree(d));
        }
    }
    Ok(radicands.iter().all(|&d| d.unsigned_abs() % p != 0))
}

/// The place counts `(s_i, f_i)` for `K = Q(sqrt(d_1), ..., sqrt(d_r), sqrt(-d))`:
///
/// * `f_i = sum 2^(v2(p^2-1) + i - 4)` over odd `p | d_i` with `p` not dividing `d_1 ... d_{i-1}`,
/// * `s_i = sum 2^(v2(p^2-1) + i - 3)` over the same primes that also divide
///   `sqf(t_{i+1})`, where `t_{i+1} = d_{i+1} ... d_r d`.
pub fn count_si_fi(i: usize, d_list: &[u64], d: u64) -> Result<(u64, u64)> {
    let to_class = |x: u64| -> Result<SquareClass> {
        let x = i64::try_from(x).map_err(|_| Error::Overflow)?;
        if x == 0 {
            return Err(Error::ZeroRadicand);
        }
        SquareClass::from_squarefree(x)
    };
    let classes = d_list
        .iter()
        .map(|&x| to_class(x))
        .collect::<Result<Vec<_>>>()?;
    place_counts(i, &classes, &to_class(d)?)
}

/// [`count_si_fi`] on square classes.
pub fn place_counts(i: usize, d_list: &[SquareClass], d: &SquareClass) -> Result<(u64, u64)> {
    let r = d_list.len();
    if i == 0 || i > r {
        return Err(Error::IndexOutOfRange { index: i, r });
    }
    let earlier: BTreeSet<u64> = d_list[..i - 1]
        .iter()
        .flat_map(|c| c.odd_primes().iter().copied())
        .collect();
    // sqf(t_{i+1}) is the product class of the tail
    let tail = d_list[i..]
        .iter()
        .fold(d.clone(), |acc, c| acc.mul(c));
    let mut s = 0u64;
    let mut f = 0u64;
    for &p in d_list[i - 1].odd_primes() {
        if earlier.contains(&p) {
            continue;
        }
        let nu = nu2_sq_minus_one(p) as usize;
        f += 1u64 << (nu + i - 4);
        if tail.odd_primes().contains(&p) {
            s += 1u64 << (nu + i - 3);
        }
    }
    Ok((s, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_degree_examples() {
        assert_eq!(residual_degree_qn(7, 1), Ok(1));
        assert_eq!(residual_degree_qn(7, 2), Ok(2));
        assert_eq!(residual_degree_qn(3, 0), Ok(1));
        assert!(residual_degree_qn(2, 1).is_err());
    }

    #[test]
    fn num_primes_examples() {
        assert_eq!(num_primes_qn(7, 1), Ok(2));
        assert_eq!(num_primes_qn(7, 5), Ok(2));
        assert_eq!(num_primes_qn(3, 4), Ok(1));
        assert_eq!(num_primes_qn(3, 0), Ok(1));
        assert!(num_primes_qn(2, 0).is_err());
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(frobenius_degree_subfield(7, 16, &[15]), Ok(2));
        assert_eq!(frobenius_degree_subfield(3, 8, &[7]), Ok(2));
        assert_eq!(frobenius_degree_subfield(3, 8, &[3, 5, 7]), Ok(1));
        assert_eq!(frobenius_degree_subfield(5, 7, &[3]), Ok(1));
        assert_eq!(
            frobenius_degree_subfield(3, 12, &[5]),
            Err(Error::RamifiedModulus { p: 3, m: 12 })
        );
        assert_eq!(
            frobenius_degree_subfield(3, 8, &[2]),
            Err(Error::NotAUnit { g: 2, m: 8 })
        );
    }

    #[test]
    fn quadratic_splitting_examples() {
        assert_eq!(splitting_qn_quadratic(7, 3, 1), Ok(Behavior::Inert));
        assert_eq!(splitting_qn_quadratic(7, 3, 4), Ok(Behavior::Split));
        // inert only while 7 stays inert in Q_n, i.e. n + 2 < 4
        assert_eq!(splitting_qn_quadratic(7, 3, 2), Ok(Behavior::Split));
        assert_eq!(splitting_qn_quadratic(3, -1, 0), Ok(Behavior::Inert));
        assert_eq!(splitting_qn_quadratic(3, -1, 1), Ok(Behavior::Split));
        assert_eq!(splitting_qn_quadratic(3, 2, 0), Ok(Behavior::Inert));
        assert_eq!(splitting_qn_quadratic(3, 2, 1), Ok(Behavior::Split));
        assert_eq!(splitting_qn_quadratic(17, 3, 2), Ok(Behavior::Inert));
        assert_eq!(splitting_qn_quadratic(7, 2, 1), Ok(Behavior::Split));
        assert_eq!(splitting_qn_quadratic(7, -21, 1), Ok(Behavior::Ramified));
        assert_eq!(splitting_qn_quadratic(7, 12, 1), Err(Error::NotSquarefree(12)));
        assert!(splitting_qn_quadratic(2, 3, 1).is_err());
    }

    #[test]
    fn multiquad_complete_splitting() {
        assert_eq!(splits_completely_qinf_multiquad(5, &[3, 7]), Ok(true));
        assert_eq!(splits_completely_qinf_multiquad(3, &[3]), Ok(false));
        assert_eq!(splits_completely_qinf_multiquad(7, &[]), Ok(true));
        assert_eq!(splits_completely_qinf_multiquad(7, &[-14, 5]), Ok(false));
    }

    #[test]
    fn si_fi_examples() {
        assert_eq!(count_si_fi(1, &[7], 1), Ok((0, 2)));
        assert_eq!(count_si_fi(1, &[7], 7), Ok((4, 2)));
        // every prime of d_2 = 3 already divides d_1 = 21: empty sums
        assert_eq!(count_si_fi(2, &[21, 3], 1), Ok((0, 0)));
        assert_eq!(
            count_si_fi(3, &[7, 3], 1),
            Err(Error::IndexOutOfRange { index: 3, r: 2 })
        );
        assert_eq!(
            count_si_fi(0, &[7], 1),
            Err(Error::IndexOutOfRange { index: 0, r: 1 })
        );
    }
}
