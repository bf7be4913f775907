use ncforest::poly::IntPolynomial;
use ncforest::series::{forest_from_tree, forest_from_trees, solve_algebraic, Series};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const ORDER: usize = 10;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn series(coeffs: Vec<i64>) -> Series {
    Series::from_ints(&coeffs, ORDER)
}

/// Series with zero constant term.
fn tree_like() -> impl Strategy<Value = Series> {
    prop::collection::vec(0i64..5, ORDER).prop_map(|mut c| {
        c.insert(0, 0);
        series(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_matches_power_sum(a in prop::collection::vec(-4i64..5, ORDER + 1), b in tree_like()) {
        let a = series(a);
        let mut naive = Series::zero(ORDER);
        for k in 0..=ORDER {
            naive = &naive + &b.pow(k).scale(a.coeff(k));
        }
        prop_assert_eq!(a.compose(&b).unwrap(), naive);
    }

    #[test]
    fn product_rule(a in prop::collection::vec(-4i64..5, ORDER + 1), b in prop::collection::vec(-4i64..5, ORDER + 1)) {
        let (a, b) = (series(a), series(b));
        let lhs = (&a * &b).derive();
        let rhs = &(&a.derive() * &b) + &(&a * &b.derive());
        prop_assert_eq!(lhs.truncate(ORDER - 1), rhs.truncate(ORDER - 1));
    }

    #[test]
    fn forest_is_the_composition_fixed_point(t in tree_like()) {
        let f = forest_from_tree(&t).unwrap();
        let zf = f.mul_z();
        let rhs = &Series::one(ORDER) + &t.compose(&zf).unwrap();
        prop_assert_eq!(f, rhs);
    }

    #[test]
    fn bivariate_forest_at_w_one(u in tree_like(), m in tree_like()) {
        let b = forest_from_trees(&u, &m).unwrap();
        let direct = forest_from_tree(&(&u + &m)).unwrap();
        prop_assert_eq!(b.specialize_w(&q(1)), direct.clone());
        prop_assert_eq!(b.marginal(), direct);
        // w = 0 drops marked components
        prop_assert_eq!(b.specialize_w(&q(0)), forest_from_tree(&u).unwrap());
    }
}

#[test]
fn tree_equation_solution_substitutes_to_zero() {
    let p: IntPolynomial = "Y^3 - zY + z^2".parse().unwrap();
    let t = solve_algebraic(&p, &[q(0), q(1)], 40).unwrap();
    assert!(t.substitute_into(&p).unwrap().is_zero());
    let ints = t.to_integers().unwrap();
    let head: Vec<i64> = ints[..8].iter().map(|x| x.try_into().unwrap()).collect();
    assert_eq!(head, [0, 1, 1, 3, 12, 55, 273, 1428]);
}
