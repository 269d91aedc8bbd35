use std::collections::BTreeSet;

use orthomon::green::{cell, green_keys, h_related};
use orthomon::structure::{closure, decomposition_pieces, membership_bound};
use orthomon::verify::matrix;
use orthomon::{
    inverses_within, is_idempotent, is_inverse_pair, multiply, natural_le, parse_word, power,
    reduce_word, FreeWord, Params, ReducedWord,
};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = Params> {
    prop::sample::select(matrix())
}

/// A parameter pair with `count` elements of its window.
fn elements(cap: u64, count: usize) -> impl Strategy<Value = (Params, Vec<ReducedWord>)> {
    params().prop_flat_map(move |p| {
        let pool = ReducedWord::window(p, cap);
        (Just(p), prop::collection::vec(prop::sample::select(pool), count))
    })
}

fn idempotents(p: Params, cap: u64) -> Vec<ReducedWord> {
    ReducedWord::window(p, cap)
        .into_iter()
        .filter(|&x| is_idempotent(x, p))
        .collect()
}

fn free_word() -> impl Strategy<Value = FreeWord> {
    "[ab]{1,14}".prop_map(|s| parse_word(&s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn multiplication_is_associative((p, xs) in elements(12, 3)) {
        let (x, y, z) = (xs[0], xs[1], xs[2]);
        prop_assert_eq!(multiply(multiply(x, y, p), z, p), multiply(x, multiply(y, z, p), p));
    }

    #[test]
    fn products_are_valid((p, xs) in elements(12, 2)) {
        prop_assert!(multiply(xs[0], xs[1], p).is_valid(p));
    }

    #[test]
    fn reduction_is_a_homomorphism(p in params(), u in free_word(), v in free_word()) {
        let uv = reduce_word(&u.concat(&v), p);
        prop_assert_eq!(uv, multiply(reduce_word(&u, p), reduce_word(&v, p), p));
    }

    #[test]
    fn display_parses_back((p, xs) in elements(8, 1)) {
        let x = xs[0];
        prop_assert_eq!(reduce_word(&parse_word(&x.to_string()).unwrap(), p), x);
        prop_assert_eq!(reduce_word(&x.expand(), p), x);
    }

    #[test]
    fn nonidempotent_powers_are_distinct((p, xs) in elements(6, 1)) {
        let x = xs[0];
        prop_assume!(!is_idempotent(x, p));
        let powers: BTreeSet<ReducedWord> = (1..=50).map(|k| power(x, k, p).unwrap()).collect();
        prop_assert_eq!(powers.len(), 50);
    }

    #[test]
    fn power_matches_repeated_products((p, xs) in elements(6, 1), k in 1u64..20) {
        let x = xs[0];
        let mut acc = x;
        for _ in 1..k {
            acc = multiply(acc, x, p);
        }
        prop_assert_eq!(power(x, k, p).unwrap(), acc);
    }

    #[test]
    fn keys_determine_elements((_p, xs) in elements(6, 2)) {
        let (x, y) = (xs[0], xs[1]);
        prop_assert_eq!(h_related(x, y), x == y);
    }

    #[test]
    fn rows_meet_columns((p, xs) in elements(6, 2)) {
        let (row, _) = green_keys(xs[0]);
        let (_, col) = green_keys(xs[1]);
        let x = cell(row, col);
        prop_assert!(x.is_valid(p));
        prop_assert_eq!(green_keys(x), (row, col));
    }

    #[test]
    fn inverse_pairs_are_symmetric((p, xs) in elements(4, 2)) {
        let (x, y) = (xs[0], xs[1]);
        prop_assert_eq!(is_inverse_pair(x, y, p), is_inverse_pair(y, x, p));
        if is_inverse_pair(x, y, p) {
            for n in 2..=6 {
                prop_assert!(is_inverse_pair(power(x, n, p).unwrap(), power(y, n, p).unwrap(), p));
            }
        }
    }

    #[test]
    fn every_element_has_an_inverse((p, xs) in elements(6, 1)) {
        let x = xs[0];
        let found = inverses_within(x, p, x.max_exponent() + 2).unwrap();
        prop_assert!(!found.is_empty());
        for y in found {
            prop_assert!(is_inverse_pair(x, y, p));
        }
    }

    #[test]
    fn every_element_lies_in_a_piece((p, xs) in elements(5, 1)) {
        prop_assume!(p.is_nontrivial());
        let x = xs[0];
        prop_assert!(!decomposition_pieces(x, p, membership_bound(x)).unwrap().is_empty());
    }

    #[test]
    fn closure_grows_with_the_cap((p, xs) in elements(3, 2)) {
        let small = closure(&xs, p, 4).unwrap();
        let large = closure(&xs, p, 6).unwrap();
        prop_assert!(small.elements.is_subset(&large.elements));
        if small.complete {
            prop_assert_eq!(&small.elements, &large.elements);
            prop_assert!(large.complete);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn idempotents_form_a_normal_band(p in params(), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        let es = idempotents(p, 6);
        let (e, f, g) = (picks[0].get(&es), picks[1].get(&es), picks[2].get(&es));
        let ef = multiply(*e, *f, p);
        prop_assert!(is_idempotent(ef, p));
        let efge = multiply(multiply(ef, *g, p), *e, p);
        let egfe = multiply(multiply(multiply(*e, *g, p), *f, p), *e, p);
        prop_assert_eq!(efge, egfe);
    }

    #[test]
    fn natural_order_is_transitive(p in params(), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        let es = idempotents(p, 6);
        let (e, f, g) = (*picks[0].get(&es), *picks[1].get(&es), *picks[2].get(&es));
        if natural_le(e, f, p).unwrap() && natural_le(f, g, p).unwrap() {
            prop_assert!(natural_le(e, g, p).unwrap());
        }
        if natural_le(e, f, p).unwrap() && natural_le(f, e, p).unwrap() {
            prop_assert_eq!(e, f);
        }
    }
}
