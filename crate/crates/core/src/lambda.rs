//! The 2-adic Iwasawa lambda invariant of imaginary multi-quadratic fields.
//!
//! For `K = Q(sqrt(d_1), ..., sqrt(d_r), sqrt(-d))` with maximal real subfield `K^+`,
//!
//! ```text
//! lambda(K) = lambda(K^+)
//!           + sum_{odd p | d_1...d_r}            2^(v2(p^2-1) + r - theta - 4)
//!           + sum_{odd p | d, p not | d_1...d_r} 2^(v2(p^2-1) + r - theta - 3)
//!           - 2^(r - theta) + delta
//! ```
//!
//! where `theta = 1` iff `sqrt(2)` is in `K` and `delta = 1` iff `sqrt(d)` is in `K^+(sqrt(2))`.
//! `lambda(K^+)` is zero under Greenberg's conjecture unless a value is supplied.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::nu2_sq_minus_one;
use crate::error::{Error, Result};
use crate::field::{MultiQuadField, Presentation, SquareClass};
use crate::tower::place_counts;

/// How to obtain `lambda(K^+)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum LambdaPlus {
    /// Take `lambda(K^+) = 0` (Greenberg's conjecture for totally real fields).
    #[default]
    AssumeGreenberg,
    /// A known value of `lambda(K^+)`.
    Supplied(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeContribution {
    pub prime: u64,
    pub nu: u32,
    pub contribution: u64,
}

/// Every term of the closed formula, for inspection and reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaTerms {
    pub r: usize,
    pub theta: bool,
    pub delta: bool,
    pub d_list: Vec<SquareClass>,
    pub d: SquareClass,
    /// Odd primes dividing some `d_i`.
    pub real_primes: Vec<PrimeContribution>,
    /// Odd primes dividing `d` and no `d_i`.
    pub imaginary_primes: Vec<PrimeContribution>,
    /// The subtracted `2^(r - theta)`.
    pub correction: u64,
    /// `s_1, ..., s_r` of the odd part of the presentation (empty when it has rank 0).
    pub s: Vec<u64>,
    /// `f_1, ..., f_r` of the odd part of the presentation.
    pub f: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaResult {
    pub lambda2: u64,
    pub lambda_plus: u64,
    /// True when `lambda_plus` is the conjectural value 0 rather than a known one.
    pub greenberg_assumed: bool,
    pub terms: LambdaTerms,
}

fn contribution(p: u64, shift: i64) -> Result<PrimeContribution> {
    let nu = nu2_sq_minus_one(p);
    let e = nu as i64 + shift;
    if !(0..63).contains(&e) {
        return Err(Error::Internal(format!("exponent {e} for prime {p}")));
    }
    Ok(PrimeContribution {
        prime: p,
        nu,
        contribution: 1u64 << e,
    })
}

fn resolve_plus(plus: LambdaPlus, real_rank: usize) -> Result<(u64, bool)> {
    match (plus, real_rank) {
        // lambda(Q) = 0 unconditionally
        (LambdaPlus::AssumeGreenberg, 0) | (LambdaPlus::Supplied(0), 0) => Ok((0, false)),
        (LambdaPlus::Supplied(v), 0) => Err(Error::Hypothesis(format!(
            "maximal real subfield is Q, whose lambda is 0, not {v}"
        ))),
        (LambdaPlus::AssumeGreenberg, _) => Ok((0, true)),
        (LambdaPlus::Supplied(v), _) => Ok((v, false)),
    }
}

/// `lambda_2(Q(sqrt(-d)))` for a positive squarefree `d`.
pub fn lambda2_imaginary_quadratic(d: u64) -> Result<u64> {
    let d = i64::try_from(d).map_err(|_| Error::Overflow)?;
    if d == 0 {
        return Err(Error::ZeroRadicand);
    }
    quadratic_terms(&SquareClass::from_squarefree(d)?).map(|r| r.lambda2)
}

/// The quadratic case `Q(sqrt(-d))` on a positive class `d`. Terms are reported in
/// the general shape with `r = 0`: prime contributions `2^(v2(p^2-1) - 3)`, a
/// correction of 1, and `delta = 1` exactly when `d` is 1 or 2.
fn quadratic_terms(d: &SquareClass) -> Result<LambdaResult> {
    let d = d.abs();
    let imaginary_primes = d
        .odd_primes()
        .iter()
        .map(|&p| contribution(p, -3))
        .collect::<Result<Vec<_>>>()?;
    let delta = d.odd_primes().is_empty();
    let sum: u64 = imaginary_primes.iter().map(|c| c.contribution).sum();
    let lambda2 = sum + u64::from(delta) - 1;
    Ok(LambdaResult {
        lambda2,
        lambda_plus: 0,
        greenberg_assumed: false,
        terms: LambdaTerms {
            r: 0,
            theta: false,
            delta,
            d_list: Vec::new(),
            d,
            real_primes: Vec::new(),
            imaginary_primes,
            correction: 1,
            s: Vec::new(),
            f: Vec::new(),
        },
    })
}

/// `lambda_2(K)` for an imaginary multi-quadratic field, using its canonical presentation.
pub fn lambda2_multiquad_imaginary(k: &MultiQuadField, plus: LambdaPlus) -> Result<LambdaResult> {
    let p = k.canonical_presentation()?;
    lambda2_from_presentation(&p, plus)
}

/// `lambda_2(K)` for an explicit presentation. A presentation without `sqrt(2)`
/// and with `r >= 1` must be admissible.
pub fn lambda2_from_presentation(p: &Presentation, plus: LambdaPlus) -> Result<LambdaResult> {
    let r = p.r();
    let theta = p.theta();
    if !theta && r >= 1 && !p.admissible() {
        return Err(Error::Inadmissible);
    }
    let (lambda_plus, greenberg_assumed) = resolve_plus(plus, r)?;
    let t = r as i64 - i64::from(theta);

    let real_support: BTreeSet<u64> = p
        .d_list()
        .iter()
        .flat_map(|c| c.odd_primes().iter().copied())
        .collect();
    let real_primes = real_support
        .iter()
        .map(|&q| contribution(q, t - 4))
        .collect::<Result<Vec<_>>>()?;
    let imaginary_primes = p
        .d()
        .odd_primes()
        .iter()
        .filter(|q| !real_support.contains(q))
        .map(|&q| contribution(q, t - 3))
        .collect::<Result<Vec<_>>>()?;
    let correction = 1u64 << t;
    let delta = p.delta();

    let (s, f) = odd_place_counts(p)?;

    let total = lambda_plus as i128
        + real_primes.iter().map(|c| c.contribution as i128).sum::<i128>()
        + imaginary_primes.iter().map(|c| c.contribution as i128).sum::<i128>()
        - correction as i128
        + i128::from(delta);
    if total < 0 {
        return Err(Error::NegativeLambda {
            value: total as i64,
            detail: format!("closed formula for {p}"),
        });
    }
    let lambda2 = u64::try_from(total).map_err(|_| Error::Overflow)?;
    Ok(LambdaResult {
        lambda2,
        lambda_plus,
        greenberg_assumed,
        terms: LambdaTerms {
            r,
            theta,
            delta,
            d_list: p.d_list().to_vec(),
            d: p.d().clone(),
            real_primes,
            imaginary_primes,
            correction,
            s,
            f,
        },
    })
}

/// `(s_i)` and `(f_i)` of the presentation with `sqrt(2)` removed.
fn odd_place_counts(p: &Presentation) -> Result<(Vec<u64>, Vec<u64>)> {
    let two = SquareClass::two();
    let odd: Vec<SquareClass> = p.d_list().iter().filter(|c| **c != two).cloned().collect();
    let mut s = Vec::with_capacity(odd.len());
    let mut f = Vec::with_capacity(odd.len());
    for i in 1..=odd.len() {
        let (si, fi) = place_counts(i, &odd, p.d())?;
        s.push(si);
        f.push(fi);
    }
    Ok((s, f))
}

/// Inputs of the relative formula over a base field `F` without `sqrt(2)`:
///
/// ```text
/// lambda(K) = 2^r lambda(F(sqrt(-t_1))) + lambda(K^+) - 2^r lambda(F)
///           + sum_i 2^(r-i) (s_i - f_i) + delta
/// ```
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinatorInputs {
    /// `lambda(F)`.
    pub lambda_base: u64,
    /// `lambda(F(sqrt(-t_1)))`.
    pub lambda_twist: u64,
    /// `lambda(K^+)`.
    pub lambda_plus: u64,
    pub s: Vec<u64>,
    pub f: Vec<u64>,
    pub delta: bool,
}

pub fn lambda2_general_combinator(inputs: &CombinatorInputs) -> Result<u64> {
    let r = inputs.s.len();
    if inputs.f.len() != r {
        return Err(Error::Parse(format!(
            "{} values of s but {} values of f",
            r,
            inputs.f.len()
        )));
    }
    if r >= 62 {
        return Err(Error::Overflow);
    }
    let scale = 1i128 << r;
    let mut total = scale * inputs.lambda_twist as i128 + inputs.lambda_plus as i128
        - scale * inputs.lambda_base as i128
        + i128::from(inputs.delta);
    for (i, (&s, &f)) in inputs.s.iter().zip(&inputs.f).enumerate() {
        total += (1i128 << (r - i - 1)) * (s as i128 - f as i128);
    }
    if total < 0 {
        return Err(Error::NegativeLambda {
            value: i64::try_from(total).unwrap_or(i64::MIN),
            detail: "relative formula".into(),
        });
    }
    u64::try_from(total).map_err(|_| Error::Overflow)
}

/// The relative formula with base `F = Q`: `lambda(Q) = 0` and
/// `lambda(Q(sqrt(-t_1)))` from the quadratic case. Requires an admissible
/// presentation of a field without `sqrt(2)`.
pub fn combinator_over_rationals(p: &Presentation, plus: LambdaPlus) -> Result<u64> {
    if p.theta() {
        return Err(Error::Hypothesis("the relative formula needs sqrt(2) outside K".into()));
    }
    if p.r() >= 1 && !p.admissible() {
        return Err(Error::Inadmissible);
    }
    let (lambda_plus, _) = resolve_plus(plus, p.r())?;
    let t1 = p.d_list().iter().fold(p.d().clone(), |acc, c| acc.mul(c));
    let lambda_twist = quadratic_terms(&t1)?.lambda2;
    let (s, f) = odd_place_counts(p)?;
    if p.r() == 0 {
        return Ok(lambda_twist);
    }
    lambda2_general_combinator(&CombinatorInputs {
        lambda_base: 0,
        lambda_twist,
        lambda_plus,
        s,
        f,
        delta: p.delta(),
    })
}

/// Outcome of comparing `2 lambda(K) = lambda(L) - 1 + 2 lambda(K^+) - lambda(L^+)`
/// for `L = K(sqrt(-1))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KidaCheck {
    pub field_l: MultiQuadField,
    pub lambda_k: u64,
    pub lambda_l: u64,
    pub lambda_k_plus: u64,
    pub lambda_l_plus: u64,
    pub holds: bool,
}

/// Check the Kida-type relation between `K` and `L = K(sqrt(-1))`. The relation
/// is only asserted when `K` is imaginary, `sqrt(2)` is outside `K`, every
/// radicand is odd, every odd prime of `d` divides some `d_i`, and `sqrt(d)` is
/// outside `K^+`; other inputs are rejected as hypothesis violations.
pub fn kida_relation_check(
    k: &MultiQuadField,
    plus_k: LambdaPlus,
    plus_l: LambdaPlus,
) -> Result<KidaCheck> {
    let p = k.canonical_presentation()?;
    if p.theta() || k.basis().iter().any(|c| c.has_two()) {
        return Err(Error::Hypothesis("K must have odd radicands only".into()));
    }
    let real = p.real_subfield();
    if real.contains(p.d()) {
        return Err(Error::Hypothesis(format!(
            "sqrt({}) lies in the maximal real subfield, so K(sqrt(-1)) = K",
            p.d()
        )));
    }
    let support = real.odd_ramified_primes();
    if !p.d().odd_primes().is_subset(&support) {
        return Err(Error::Hypothesis(format!(
            "an odd prime of d = {} divides no real radicand",
            p.d()
        )));
    }
    let l = k.adjoin(&SquareClass::minus_one());
    let rk = lambda2_from_presentation(&p, plus_k)?;
    let rl = lambda2_multiquad_imaginary(&l, plus_l)?;
    let lhs = 2 * rk.lambda2 as i128;
    let rhs = rl.lambda2 as i128 - 1 + 2 * rk.lambda_plus as i128 - rl.lambda_plus as i128;
    Ok(KidaCheck {
        field_l: l,
        lambda_k: rk.lambda2,
        lambda_l: rl.lambda2,
        lambda_k_plus: rk.lambda_plus,
        lambda_l_plus: rl.lambda_plus,
        holds: lhs == rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(rads: &[i64]) -> u64 {
        let k = MultiQuadField::from_radicands(rads).unwrap();
        lambda2_multiquad_imaginary(&k, LambdaPlus::AssumeGreenberg)
            .unwrap()
            .lambda2
    }

    #[test]
    fn quadratic_examples() {
        assert_eq!(lambda2_imaginary_quadratic(1), Ok(0));
        assert_eq!(lambda2_imaginary_quadratic(2), Ok(0));
        assert_eq!(lambda2_imaginary_quadratic(7), Ok(1));
        assert_eq!(lambda2_imaginary_quadratic(3), Ok(0));
        assert_eq!(lambda2_imaginary_quadratic(17), Ok(3));
        assert_eq!(lambda2_imaginary_quadratic(21), Ok(2));
        assert_eq!(lambda2_imaginary_quadratic(0), Err(Error::ZeroRadicand));
        assert_eq!(lambda2_imaginary_quadratic(12), Err(Error::NotSquarefree(12)));
    }

    #[test]
    fn multiquadratic_examples() {
        assert_eq!(lam(&[7, 3, -1]), 3);
        assert_eq!(lam(&[3, 11, -1]), 1);
        assert_eq!(lam(&[-1]), 0);
        assert_eq!(lam(&[-7]), 1);
        assert_eq!(lam(&[533, -1]), 2);
        assert_eq!(lam(&[21, -3]), 1);
    }

    #[test]
    fn greenberg_flag() {
        let k = MultiQuadField::from_radicands(&[-7]).unwrap();
        let r = lambda2_multiquad_imaginary(&k, LambdaPlus::AssumeGreenberg).unwrap();
        assert!(!r.greenberg_assumed);
        let k = MultiQuadField::from_radicands(&[7, -1]).unwrap();
        let r = lambda2_multiquad_imaginary(&k, LambdaPlus::AssumeGreenberg).unwrap();
        assert!(r.greenberg_assumed);
        let r2 = lambda2_multiquad_imaginary(&k, LambdaPlus::Supplied(2)).unwrap();
        assert_eq!(r2.lambda2, r.lambda2 + 2);
        assert!(!r2.greenberg_assumed);
    }

    #[test]
    fn real_field_rejected() {
        let k = MultiQuadField::from_radicands(&[7, 3]).unwrap();
        assert_eq!(
            lambda2_multiquad_imaginary(&k, LambdaPlus::AssumeGreenberg),
            Err(Error::RealField)
        );
    }

    #[test]
    fn explicit_inadmissible_presentation() {
        let p = Presentation::new(&[7, 3], 3).unwrap();
        assert_eq!(
            lambda2_from_presentation(&p, LambdaPlus::AssumeGreenberg),
            Err(Error::Inadmissible)
        );
        let q = p.permuted(&[1, 0]).unwrap();
        assert!(lambda2_from_presentation(&q, LambdaPlus::AssumeGreenberg).is_ok());
    }

    #[test]
    fn combinator_basics() {
        assert_eq!(lambda2_general_combinator(&CombinatorInputs::default()), Ok(0));
        let one = |a: u64| CombinatorInputs {
            lambda_twist: a,
            s: vec![0],
            f: vec![0],
            ..Default::default()
        };
        assert_eq!(lambda2_general_combinator(&one(5)), Ok(10));
        let bad = CombinatorInputs {
            lambda_base: 3,
            s: vec![0],
            f: vec![0],
            ..Default::default()
        };
        assert!(matches!(
            lambda2_general_combinator(&bad),
            Err(Error::NegativeLambda { value: -6, .. })
        ));
    }

    #[test]
    fn combinator_matches_closed_formula() {
        for rads in [&[7i64, 3, -1][..], &[3, 11, -1], &[533, -1], &[21, -3], &[5, 13, -7]] {
            let k = MultiQuadField::from_radicands(rads).unwrap();
            let p = k.canonical_presentation().unwrap();
            assert_eq!(
                combinator_over_rationals(&p, LambdaPlus::AssumeGreenberg),
                Ok(lam(rads)),
                "{rads:?}"
            );
        }
    }

    #[test]
    fn kida_relation() {
        let k = MultiQuadField::from_radicands(&[21, -3]).unwrap();
        let c = kida_relation_check(&k, LambdaPlus::AssumeGreenberg, LambdaPlus::AssumeGreenberg)
            .unwrap();
        assert_eq!((c.lambda_k, c.lambda_l), (1, 3));
        assert!(c.holds);
        // sqrt(d) in K^+ means L = K
        let k = MultiQuadField::from_radicands(&[3, -3]).unwrap();
        assert!(matches!(
            kida_relation_check(&k, LambdaPlus::AssumeGreenberg, LambdaPlus::AssumeGreenberg),
            Err(Error::Hypothesis(_))
        ));
    }
}
