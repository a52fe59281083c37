mod common;

use std::collections::BTreeMap;

use common::*;
use dgl_core::factor::{factor, is_r_irreducible};
use dgl_core::Polynomial;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn round_trip_constructed_products() {
    for seed in 0..150 {
        check_round_trip(seed).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gauss_lemma(f in poly_of_degree(2, 3, 12), g in poly_of_degree(2, 2, 12)) {
        // content of the integer polynomials, not the rational normalization
        let c = |h: &Polynomial| h.content();
        prop_assert_eq!(c(&(&f * &g)), c(&f) * c(&g));
    }

    #[test]
    fn r_irreducible_is_monotone(f in poly_of_degree(2, 4, 5)) {
        let vals: Vec<bool> = (0..=4).map(|r| is_r_irreducible(&f, r).unwrap()).collect();
        for r in 1..vals.len() {
            prop_assert!(!vals[r] || vals[r - 1], "{:?}", vals);
        }
    }
}

/// `f(x, x^a)` as a polynomial in one variable.
fn collapse(f: &Polynomial, a: u32) -> Polynomial {
    f.substitute(&[Polynomial::var(1, 0), Polynomial::var(1, 0).pow(a)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn kronecker_refinement(seed in 0u64..1_000_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g1 = irreducible_by_construction(&mut rng, 2);
        let g2 = irreducible_by_construction(&mut rng, 2);
        let f = &g1 * &g2;
        let a = 1 + f.deg_in(0).max(f.deg_in(1));
        let mut whole: BTreeMap<String, u32> = BTreeMap::new();
        for (h, e) in factor(&collapse(&f, a)).unwrap().factors {
            whole.insert(key(&h), e);
        }
        let mut parts: BTreeMap<String, u32> = BTreeMap::new();
        for (g, e) in factor(&f).unwrap().factors {
            for (h, e2) in factor(&collapse(&g, a)).unwrap().factors {
                *parts.entry(key(&h)).or_default() += e * e2;
            }
        }
        prop_assert_eq!(whole, parts);
    }
}

#[test]
fn absolute_examples() {
    use dgl_core::factor::is_absolutely_irreducible_bivariate as abs;
    assert!(!abs(&p("x1^2 - 2*x2^2", 2)).unwrap());
    assert!(abs(&p("x1^2 + x2 - 1", 2)).unwrap());
    assert!(abs(&p("x2^2 - x1^3 + x1", 2)).unwrap());
}
