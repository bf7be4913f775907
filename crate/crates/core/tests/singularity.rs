use ncforest::classes::{Catalog, GraphClass};
use ncforest::hp::to_f64;
use ncforest::poly::{IntPolynomial, Var};
use ncforest::singularity::{analyze, discriminant_z, richardson, SingularityConfig};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn tree_singularity_is_exact() {
    let catalog = Catalog::new(80);
    let cfg = SingularityConfig::default();
    let r = analyze(GraphClass::Trees, &catalog, &cfg).unwrap();
    assert!((to_f64(&r.rho) - 4.0 / 27.0).abs() < 1e-15);
    assert!((to_f64(&r.omega) - 6.75).abs() < 1e-12);
    assert!((to_f64(r.tau().unwrap()) - 2.0 / 9.0).abs() < 1e-12);
    assert!((to_f64(&r.ratio_estimate) - 4.0 / 27.0).abs() < 1e-4);

    // marking a vertex keeps the singularity but the series blows up there
    let m = analyze(GraphClass::MarkedTrees, &catalog, &cfg).unwrap();
    assert!((to_f64(&m.rho) - 4.0 / 27.0).abs() < 1e-15);
    assert!(m.tau().is_none());
}

#[test]
fn forest_growth_constants() {
    let catalog = Catalog::new(80);
    let cfg = SingularityConfig::default();
    let f = analyze(GraphClass::Forests, &catalog, &cfg).unwrap();
    let l = analyze(GraphClass::ForestsNoIso, &catalog, &cfg).unwrap();
    assert!((to_f64(&f.omega) - 8.2246).abs() < 1e-4);
    assert!((to_f64(&l.omega) - 7.2246).abs() < 1e-4);
    // removing isolated vertices divides by exp(z): growth drops by one
    assert!((to_f64(&(&f.omega - &l.omega)) - 1.0).abs() < 1e-40);
}

#[test]
fn tree_discriminant_vanishes_at_four_over_twenty_seven() {
    let p: IntPolynomial = "Y^3 - zY + z^2".parse().unwrap();
    let d = discriminant_z(&p).unwrap();
    let at = d.eval_rational(&[(Var::Z, q(4, 27))]);
    assert_eq!(at, q(0, 1));
}

proptest! {
    #[test]
    fn richardson_recovers_limits(a in -50i64..50, b in -50i64..50, c in -50i64..50, n in 5usize..40) {
        let values: Vec<BigRational> = (n..=n + 3)
            .map(|m| {
                let m = m as i64;
                q(a, 1) + q(b, m) + q(c, m * m)
            })
            .collect();
        prop_assert_eq!(richardson(&values, n), q(a, 1));
    }
}
