//! Class numbers of imaginary quadratic orders by counting reduced forms.

use crate::error::{Error, Result};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn check_discriminant(d: i64) -> Result<u64> {
    if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::InvalidDiscriminant(d));
    }
    Ok(d.unsigned_abs())
}

/// Reduced primitive forms `(a, b, c)` of discriminant `d < 0`:
/// `|b| <= a <= c`, and `b >= 0` when `|b| = a` or `a = c`.
fn reduced_forms(d: i64) -> Result<Vec<(u64, i64, u64)>> {
    let n = check_discriminant(d)?;
    let mut forms = Vec::new();
    let mut a = 1u64;
    while 3 * a * a <= n {
        let a_i = a as i64;
        for b in -a_i + 1..=a_i {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = (b * b) as u64 + n;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && a == c) {
                continue;
            }
            if gcd(gcd(a, b.unsigned_abs()), c) != 1 {
                continue;
            }
            forms.push((a, b, c));
        }
        a += 1;
    }
    Ok(forms)
}

/// Class number of the order of discriminant `d < 0`.
pub fn bqf_class_number(d: i64) -> Result<u64> {
    Ok(reduced_forms(d)?.len() as u64)
}

/// Number of ambiguous reduced forms (`b = 0`, `b = a` or `a = c`), which is the
/// size of the 2-torsion of the class group.
pub fn bqf_two_torsion(d: i64) -> Result<u64> {
    Ok(reduced_forms(d)?
        .into_iter()
        .filter(|&(a, b, c)| b == 0 || b as u64 == a || a == c)
        .count() as u64)
}

fn squarefree(mut n: u64) -> bool {
    let mut k = 2u64;
    while k * k <= n {
        if n % (k * k) == 0 {
            return false;
        }
        while n % k == 0 {
            n /= k;
        }
        k += 1;
    }
    true
}

fn distinct_primes(mut n: u64) -> usize {
    let mut count = 0;
    let mut k = 2u64;
    while k * k <= n {
        if n % k == 0 {
            count += 1;
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1;
    }
    count + usize::from(n > 1)
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Genus theory for a fundamental `d < 0`: the 2-torsion of the class group
/// has order `2^(t-1)` with `t` the number of primes dividing `d`, so the class
/// number is odd iff `t = 1`.
pub fn genus_predicts_odd(d: i64) -> Result<bool> {
    if d >= 0 || !is_fundamental_discriminant(d) {
        return Err(Error::InvalidDiscriminant(d));
    }
    Ok(distinct_primes(d.unsigned_abs()) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_numbers() {
        assert_eq!(bqf_class_number(-4), Ok(1));
        assert_eq!(bqf_class_number(-3), Ok(1));
        assert_eq!(bqf_class_number(-23), Ok(3));
        assert_eq!(bqf_class_number(-44), Ok(3));
        assert_eq!(bqf_class_number(-11), Ok(1));
        assert_eq!(bqf_class_number(-20), Ok(2));
        assert_eq!(bqf_class_number(-84), Ok(4));
        assert_eq!(bqf_class_number(-5), Err(Error::InvalidDiscriminant(-5)));
        assert_eq!(bqf_class_number(8), Err(Error::InvalidDiscriminant(8)));
    }

    #[test]
    fn two_torsion() {
        assert_eq!(bqf_two_torsion(-84), Ok(4));
        assert_eq!(bqf_two_torsion(-23), Ok(1));
        assert_eq!(bqf_two_torsion(-20), Ok(2));
    }

    #[test]
    fn fundamental() {
        assert!(is_fundamental_discriminant(-4));
        assert!(is_fundamental_discriminant(-8));
        assert!(is_fundamental_discriminant(-3));
        assert!(!is_fundamental_discriminant(-12));
        assert!(!is_fundamental_discriminant(-16));
        assert_eq!(genus_predicts_odd(-8), Ok(true));
        assert_eq!(genus_predicts_odd(-20), Ok(false));
        assert!(genus_predicts_odd(-12).is_err());
    }
}
