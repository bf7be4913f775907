use std::sync::OnceLock;

use ncforest::classes::{forests_by_components, with_isolated_vertices, Catalog, GraphClass};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

const ORDER: usize = 40;

fn catalog() -> &'static Catalog {
    static C: OnceLock<Catalog> = OnceLock::new();
    C.get_or_init(|| Catalog::new(ORDER))
}

fn count(class: GraphClass, n: usize) -> BigInt {
    catalog().count(class, n).unwrap()
}

fn int(x: &BigRational) -> BigInt {
    assert!(x.is_integer());
    x.to_integer()
}

#[test]
fn every_class_is_a_counting_sequence() {
    for class in GraphClass::ALL {
        assert!(catalog().series(class).is_counting_sequence(), "{class}");
    }
}

#[test]
fn small_tree_and_forest_counts() {
    let trees: Vec<BigInt> = (1..=8).map(|n| count(GraphClass::Trees, n)).collect();
    assert_eq!(trees, [1, 1, 3, 12, 55, 273, 1428, 7752].map(BigInt::from));
    let forests: Vec<BigInt> = (0..=6).map(|n| count(GraphClass::Forests, n)).collect();
    assert_eq!(forests, [1, 1, 2, 7, 33, 181, 1083].map(BigInt::from));
}

#[test]
fn truncation_is_reported() {
    assert!(catalog().count(GraphClass::Trees, ORDER + 1).is_err());
}

#[test]
fn solver_rows_match_lagrange_rows() {
    for class in GraphClass::FORESTS {
        let by_equation = catalog().bivariate_by_equation(class, 10).unwrap();
        let lagrange = catalog().bivariate(class).unwrap().truncate(10);
        assert_eq!(by_equation, lagrange, "{class}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn component_rows_sum_to_forest_counts(n in 0usize..=ORDER) {
        let b = catalog().bivariate(GraphClass::Forests).unwrap();
        let mut total = BigInt::zero();
        for c in 0..=n {
            let closed = forests_by_components(n as u64, c as u64);
            prop_assert_eq!(int(&b.coeff(n, c)), closed.clone());
            total += closed;
        }
        prop_assert_eq!(total, count(GraphClass::Forests, n));
    }

    #[test]
    fn isolated_vertex_convolution(n in 0usize..=ORDER) {
        for (noiso, full) in [
            (GraphClass::ForestsNoIso, GraphClass::Forests),
            (GraphClass::MixedNoIso, GraphClass::Mixed),
        ] {
            let g: Vec<BigInt> = (0..=n).map(|m| count(noiso, m)).collect();
            prop_assert_eq!(with_isolated_vertices(&g, n), count(full, n));
        }
    }

    #[test]
    fn marginals_are_the_univariate_series(n in 0usize..=ORDER) {
        for class in GraphClass::FORESTS {
            let b = catalog().bivariate(class).unwrap();
            let marginal = b.marginal();
            prop_assert_eq!(marginal.coeff(n), catalog().series(class).coeff(n));
        }
    }

    #[test]
    fn marking_multiplies_by_size(n in 1usize..=ORDER) {
        let nn = BigInt::from(n);
        prop_assert_eq!(count(GraphClass::MarkedTrees, n), &nn * count(GraphClass::Trees, n));
        let ge2 = if n == 1 { BigInt::zero() } else { count(GraphClass::Trees, n) };
        prop_assert_eq!(count(GraphClass::TreesGe2, n), ge2.clone());
        prop_assert_eq!(count(GraphClass::MarkedTreesGe2, n), nn * ge2);
    }

    #[test]
    fn counts_are_superadditive(i in 1usize..20, j in 1usize..20) {
        for class in [GraphClass::Trees, GraphClass::Forests, GraphClass::MarkedForests] {
            prop_assert!(count(class, i) * count(class, j) <= count(class, i + j));
        }
    }

}
