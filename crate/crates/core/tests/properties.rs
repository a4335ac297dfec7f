use proptest::prelude::*;

use iwasawa_core::arith::{self, is_squarefree, sqf, sqf_signed};
use iwasawa_core::lambda::{lambda2_from_presentation, lambda2_multiquad_imaginary};
use iwasawa_core::oracle::{brute_quadratic_behavior, brute_residual_degree, brute_sqf};
use iwasawa_core::parity::classify;
use iwasawa_core::report::{cmd_genus, cmd_lambda, cmd_parity, Report};
use iwasawa_core::tower::{self, level_report};
use iwasawa_core::{LambdaPlus, MultiQuadField, SquareClass};

const SMALL_PRIMES: &[i64] = &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

fn odd_prime() -> impl Strategy<Value = u64> {
    (3u64..100_000).prop_filter("odd prime", |&p| arith::is_odd_prime(p))
}

/// A signed squarefree product of a few small primes.
fn radicand() -> impl Strategy<Value = i64> {
    (any::<bool>(), proptest::sample::subsequence(SMALL_PRIMES, 1..=3)).prop_map(|(neg, ps)| {
        let v: i64 = ps.iter().product();
        if neg {
            -v
        } else {
            v
        }
    })
}

fn field(max_gens: usize) -> impl Strategy<Value = MultiQuadField> {
    proptest::collection::vec(radicand(), 1..=max_gens)
        .prop_map(|rads| MultiQuadField::from_radicands(&rads).unwrap())
}

fn imaginary_field() -> impl Strategy<Value = MultiQuadField> {
    field(3).prop_map(|k| if k.is_imaginary() { k } else { k.adjoin(&SquareClass::minus_one()) })
}

proptest! {
    #[test]
    fn level_reports_multiply_to_the_degree(p in odd_prime(), n in 0u32..=40) {
        let r = level_report(p, n).unwrap();
        prop_assert_eq!(r.e, 1);
        prop_assert_eq!(r.e * r.f * r.g, 1u64 << n);
    }

    #[test]
    fn residual_degree_matches_the_coset_walk(p in odd_prime(), n in 0u32..=10) {
        prop_assert_eq!(tower::residual_degree_qn(p, n).unwrap(), brute_residual_degree(p, n, &[]).unwrap());
    }

    #[test]
    fn quadratic_splitting_matches_the_oracle(
        p in (3u64..300).prop_filter("odd prime", |&p| arith::is_odd_prime(p)),
        d in radicand(),
        n in 0u32..=6,
    ) {
        prop_assert_eq!(tower::splitting_qn_quadratic(p, d, n).unwrap(), brute_quadratic_behavior(p, d, n).unwrap());
    }

    #[test]
    fn sqf_agrees_with_trial_division(n in 1u64..=1_000_000) {
        let s = sqf(n).unwrap();
        prop_assert_eq!(s, brute_sqf(n));
        prop_assert!(is_squarefree(s as i64).unwrap());
        let rest = n / s;
        let root = (rest as f64).sqrt().round() as u64;
        prop_assert_eq!(root * root, rest);
    }

    #[test]
    fn text_form_round_trips(k in field(4)) {
        let back: MultiQuadField = k.to_string().parse().unwrap();
        prop_assert_eq!(&back, &k);
        prop_assert_eq!(MultiQuadField::from_radicands(&k.radicands().unwrap()).unwrap(), k);
    }

    #[test]
    fn square_classes_in_a_field_form_a_group(k in field(3), a in radicand(), b in radicand()) {
        let (ia, ib) = (k.contains_sqrt(a).unwrap(), k.contains_sqrt(b).unwrap());
        if ia && ib {
            prop_assert!(k.contains_sqrt(sqf_signed(a * b).unwrap()).unwrap());
        }
        for e in k.elements() {
            prop_assert!(k.contains(&e));
        }
    }

    #[test]
    fn maximal_real_subfield_is_idempotent(k in field(4)) {
        let plus = k.maximal_real_subfield();
        prop_assert!(plus.is_real());
        prop_assert!(plus.is_subfield_of(&k));
        prop_assert_eq!(plus.maximal_real_subfield(), plus.clone());
        prop_assert_eq!(plus.degree() * if k.is_imaginary() { 2 } else { 1 }, k.degree());
    }

    #[test]
    fn genus_fields_contain_the_field(k in field(3)) {
        let g = k.narrow_genus_field();
        prop_assert!(k.is_subfield_of(&g.narrow));
        prop_assert!(g.genus.is_subfield_of(&g.narrow));
        if k.is_real() {
            prop_assert!(k.is_subfield_of(&g.genus));
            prop_assert!(g.genus.is_real());
        }
        prop_assert_eq!(g.narrow.odd_ramified_primes(), k.odd_ramified_primes());
    }

    #[test]
    fn lambda_does_not_depend_on_the_generators(k in imaginary_field(), seed in any::<u64>()) {
        // rebuild the same field from products of its elements
        let elems = k.elements();
        let mut gens = Vec::new();
        let mut s = seed;
        while MultiQuadField::from_classes(gens.iter().cloned()) != k {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            gens.push(elems[(s >> 33) as usize % elems.len()].clone());
        }
        let again = MultiQuadField::from_classes(gens);
        let a = lambda2_multiquad_imaginary(&k, LambdaPlus::AssumeGreenberg).unwrap();
        let b = lambda2_multiquad_imaginary(&again, LambdaPlus::AssumeGreenberg).unwrap();
        prop_assert_eq!(a.lambda2, b.lambda2);
    }

    #[test]
    fn lambda_is_invariant_under_reordering(k in imaginary_field()) {
        let pres = k.canonical_presentation().unwrap();
        let base = lambda2_from_presentation(&pres, LambdaPlus::AssumeGreenberg).unwrap().lambda2;
        let r = pres.r();
        let reversed: Vec<usize> = (0..r).rev().collect();
        if let Ok(p) = pres.permuted(&reversed) {
            if let Ok(l) = lambda2_from_presentation(&p, LambdaPlus::AssumeGreenberg) {
                prop_assert_eq!(l.lambda2, base);
            }
        }
    }

    #[test]
    fn lambda_terms_are_consistent(k in imaginary_field()) {
        let l = lambda2_multiquad_imaginary(&k, LambdaPlus::AssumeGreenberg).unwrap();
        let t = &l.terms;
        let sum: u64 = t.real_primes.iter().chain(&t.imaginary_primes).map(|c| c.contribution).sum();
        prop_assert_eq!(l.lambda2 + t.correction, l.lambda_plus + sum + u64::from(t.delta));
        prop_assert_eq!(l.greenberg_assumed, k.maximal_real_subfield().rank() > 0);
    }

    #[test]
    fn classification_is_total(k in field(3)) {
        prop_assert!(classify(&k).is_ok());
    }

    #[test]
    fn reports_round_trip_through_json(k in field(3)) {
        let text = k.to_string();
        for r in [cmd_lambda(&text, Some(LambdaPlus::AssumeGreenberg)), cmd_parity(&text), cmd_genus(&text)] {
            let back: Report = serde_json::from_str(&r.to_json()).unwrap();
            prop_assert_eq!(back, r);
        }
    }
}
