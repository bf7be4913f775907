use ncforest::bounds::construction::{check_variant, Variant};
use ncforest::bounds::entropy::{empirical_binomial_exponent, h};
use ncforest::bounds::interior::{interior_forest_census, interior_forest_count};
use ncforest::bounds::upper::{h_alpha_prime, lambda_star, stationarity};
use ncforest::bounds::{bound, sandwich_report, BoundConstants, BoundKind};
use ncforest::geometry::make_double_chain;
use ncforest::oracle::{count_nc, spanning_tree_count_double_chain, Family, GroupBy, DEFAULT_CAP};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn interior_formula_matches_census() {
    for n in 1..=4 {
        let census = count_nc(&make_double_chain(n).unwrap(), Family::InteriorForests, GroupBy::Edges, DEFAULT_CAP)
            .unwrap();
        let formula = interior_forest_census(n);
        for (k, f) in formula.iter().enumerate() {
            assert_eq!(*f, census.group(k + 1), "n = {n}, k = {}", k + 1);
        }
    }
}

#[test]
fn printed_constants_reproduce_quoted_bases() {
    let c = BoundConstants::printed();
    let trees = bound(BoundKind::LbTrees, &c).unwrap();
    assert!((trees.quoted_base - 12.5232).abs() < 1e-3);
    let forests = bound(BoundKind::LbForests, &c).unwrap();
    assert!((forests.quoted_base - 13.4025).abs() < 1e-3);
    let noiso = bound(BoundKind::LbNoIsoForests, &c).unwrap();
    assert!((noiso.get("quoted_final").unwrap() - 13.6108).abs() < 1e-3);
    let ub = bound(BoundKind::UbTrees, &c).unwrap();
    assert!((ub.base - 22.1112).abs() < 1e-3);
    assert!((ub.get("t").unwrap() - 8.93341).abs() < 1e-3);
    for r in [trees, forests, noiso, ub] {
        assert!(r.certified(), "{}", r.kind.name());
    }
}

#[test]
fn small_constructions_are_sound_and_canonically_injective() {
    for variant in [Variant::Tree, Variant::Forest, Variant::NoIsoForest] {
        let c = check_variant(variant, 2, 2).unwrap();
        assert!(c.sound() && c.injective(), "{}", variant.name());
    }
}

#[test]
fn sandwich_rows_are_oracle_counts() {
    let rows = sandwich_report(3, DEFAULT_CAP).unwrap();
    let trees: Vec<BigInt> = rows.iter().map(|r| r.trees.clone()).collect();
    assert_eq!(trees, [1, 12, 549].map(BigInt::from));
    assert_eq!(rows[2].trees, spanning_tree_count_double_chain(3).unwrap());
}

proptest! {
    #[test]
    fn single_interior_edges(n in 1usize..30) {
        prop_assert_eq!(interior_forest_count(n, 1), BigInt::from(n * n));
        prop_assert_eq!(interior_forest_count(n, 2 * n), BigInt::from(0));
    }

    #[test]
    fn entropy_is_symmetric_and_bounded(x in 0.0f64..=1.0) {
        prop_assert!((h(x) - h(1.0 - x)).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&h(x)));
    }

    #[test]
    fn binomial_exponent_tends_to_entropy(d in 0.05f64..0.95) {
        prop_assert!((empirical_binomial_exponent(4000, d) - h(d)).abs() < 5e-3);
    }

    #[test]
    fn lambda_star_is_stationary(alpha in 0.05f64..1.95) {
        let l = lambda_star(alpha);
        prop_assert!(0.0 < l && l < alpha.min(1.0));
        prop_assert!(stationarity(alpha, l).abs() < 1e-12);
        prop_assert!(h_alpha_prime(alpha, l).abs() < 1e-9);
    }
}
