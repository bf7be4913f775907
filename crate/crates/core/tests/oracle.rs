use ncforest::classes::{single_chain_tree_count, Catalog, GraphClass};
use ncforest::geometry::{make_convex, make_double_chain, make_double_chain_alt, make_single_chain};
use ncforest::oracle::{count_nc, spanning_tree_count_by_subsets, total, Family, GroupBy, DEFAULT_CAP};
use ncforest::Error;
use proptest::prelude::*;

fn interleaved(a: usize, b: usize, c: usize, d: usize) -> bool {
    let (a, b) = (a.min(b), a.max(b));
    let inside = |x: usize| a < x && x < b;
    inside(c) != inside(d) && ![a, b].contains(&c) && ![a, b].contains(&d)
}

fn four_distinct(n: usize) -> impl Strategy<Value = [usize; 4]> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| [v[0], v[1], v[2], v[3]])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convex_crossings_are_interleavings([a, b, c, d] in four_distinct(9)) {
        let ps = make_convex(9);
        let x = ps.segments_cross(a, b, c, d);
        prop_assert_eq!(x, interleaved(a, b, c, d));
        prop_assert_eq!(x, ps.segments_cross(c, d, a, b));
        prop_assert_eq!(x, ps.segments_cross(b, a, d, c));
    }

    #[test]
    fn double_chain_crossings_are_symmetric([a, b, c, d] in four_distinct(10)) {
        let ps = make_double_chain(5).unwrap();
        prop_assert_eq!(ps.segments_cross(a, b, c, d), ps.segments_cross(d, c, a, b));
    }

    #[test]
    fn convex_census_ignores_labels(perm in Just((0..7).collect::<Vec<usize>>()).prop_shuffle()) {
        let ps = make_convex(7);
        let moved = ps.relabeled(&perm).unwrap();
        for family in [Family::Forests, Family::SpanningTrees] {
            let a = count_nc(&ps, family, GroupBy::Edges, DEFAULT_CAP).unwrap();
            let b = count_nc(&moved, family, GroupBy::Edges, DEFAULT_CAP).unwrap();
            prop_assert_eq!(a.groups, b.groups);
        }
    }
}

#[test]
fn double_chain_placements_agree() {
    for n in 1..=4 {
        let (a, b) = (make_double_chain(n).unwrap(), make_double_chain_alt(n).unwrap());
        a.verify().unwrap();
        b.verify().unwrap();
        for family in [Family::SpanningTrees, Family::Forests, Family::InteriorForests] {
            let x = count_nc(&a, family, GroupBy::Edges, DEFAULT_CAP).unwrap();
            let y = count_nc(&b, family, GroupBy::Edges, DEFAULT_CAP).unwrap();
            assert_eq!(x.groups, y.groups, "n = {n}, {}", family.name());
        }
    }
}

#[test]
fn subset_enumeration_agrees_with_backtracking() {
    for ps in [make_convex(6), make_double_chain(2).unwrap(), make_double_chain(3).unwrap()] {
        assert_eq!(
            spanning_tree_count_by_subsets(&ps),
            total(&ps, Family::SpanningTrees, DEFAULT_CAP).unwrap()
        );
    }
}

#[test]
fn convex_censuses_match_series() {
    let catalog = Catalog::new(12);
    for class in GraphClass::ALL {
        for n in 0..=6 {
            let got = total(&make_convex(n), Family::for_class(class), DEFAULT_CAP).unwrap();
            assert_eq!(got, catalog.count(class, n).unwrap(), "{class}, n = {n}");
        }
    }
}

#[test]
fn single_chain_trees() {
    for n in 1..=6 {
        let ps = make_single_chain(n).unwrap();
        ps.verify().unwrap();
        let got = total(&ps, Family::SpanningTrees, DEFAULT_CAP).unwrap();
        assert_eq!(got, single_chain_tree_count(n).unwrap(), "n = {n}");
    }
}

#[test]
fn oversized_point_sets_are_refused() {
    let err = total(&make_convex(13), Family::Forests, DEFAULT_CAP).unwrap_err();
    assert!(matches!(err, Error::OracleTooLarge { points: 13, .. }));
}
