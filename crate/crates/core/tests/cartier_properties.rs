//! Algebraic properties of the Cartier operator on random Laurent forms.

use ddcrit::cartier::{cartier, dlog_truncated, is_exact, LaurentForm};
use ddcrit::gf::{make_field, Field};
use ddcrit::laurent::LaurentPoly;
use proptest::prelude::*;

fn field(p: u64, k: usize) -> Field {
    make_field(p, k).unwrap()
}

fn laurent(f: &Field, terms: &[(i64, u128)]) -> LaurentPoly {
    let order = f.order();
    LaurentPoly::from_terms(f, terms.iter().map(|&(e, c)| (e, f.element(c % order))))
}

fn derivative(h: &LaurentPoly) -> LaurentPoly {
    let f = h.field();
    LaurentPoly::from_terms(f, h.terms().map(|(e, c)| (e - 1, f.mul(c, &f.from_int(e)))))
}

/// Antiderivative term by term, if every term admits one.
fn antiderivative(h: &LaurentPoly) -> Option<LaurentPoly> {
    let f = h.field();
    let mut terms = Vec::new();
    for (e, c) in h.terms() {
        let inv = f.inv(&f.from_int(e + 1))?;
        terms.push((e + 1, f.mul(c, &inv)));
    }
    Some(LaurentPoly::from_terms(f, terms))
}

fn arb_terms() -> impl Strategy<Value = Vec<(i64, u128)>> {
    prop::collection::vec((-30i64..30, 0u128..1000), 0..8)
}

fn arb_field() -> impl Strategy<Value = (u64, usize)> {
    prop::sample::select(vec![(3u64, 1usize), (3, 2), (5, 1), (5, 2), (7, 1)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn additive((p, k) in arb_field(), a in arb_terms(), b in arb_terms()) {
        let f = field(p, k);
        let w = LaurentForm::new(laurent(&f, &a));
        let v = LaurentForm::new(laurent(&f, &b));
        prop_assert_eq!(cartier(&w.add(&v)), cartier(&w).add(&cartier(&v)));
    }

    #[test]
    fn p_semilinear((p, k) in arb_field(), a in arb_terms(), g in prop::collection::vec((-4i64..4, 0u128..1000), 0..4)) {
        let f = field(p, k);
        let w = LaurentForm::new(laurent(&f, &a));
        let g = laurent(&f, &g);
        let lhs = cartier(&w.mul_fn(&g.pow(p)));
        let rhs = cartier(&w).mul_fn(&g);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_iff_killed((p, k) in arb_field(), a in arb_terms()) {
        let f = field(p, k);
        let h = laurent(&f, &a);
        let w = LaurentForm::new(h.clone());
        // independent route: exact means h = G' for some Laurent G
        let exact = antiderivative(&h).is_some_and(|g| derivative(&g) == h);
        prop_assert_eq!(is_exact(&w), exact);
        prop_assert_eq!(cartier(&w).is_zero(), exact);
    }

    #[test]
    fn dlog_truncations_are_fixed(
        (p, k) in arb_field(),
        roots in prop::collection::vec((1u128..1000, -5i64..5), 1..5),
        order in 1usize..60,
    ) {
        let f = field(p, k);
        let factors: Vec<_> = roots
            .iter()
            .map(|&(x, a)| (f.element(1 + x % (f.order() - 1)), a))
            .collect();
        let w = dlog_truncated(&f, &factors, order).unwrap();
        let fixed = dlog_truncated(&f, &factors, order / p as usize).unwrap();
        prop_assert_eq!(cartier(&w), fixed);
    }
}
