//! The graph classes on points in convex position: their defining
//! equations, series and exact counts.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{resultant, IntPolynomial, Var};
use crate::series::{
    binomial, forest_from_trees, q, solve_algebraic, solve_algebraic_bivariate, BiSeries, Series,
};

pub const DEFAULT_TRUNCATION: usize = 80;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphClass {
    /// All nc-trees.
    Trees,
    /// Trees with one distinguished vertex.
    MarkedTrees,
    /// Trees on at least two vertices.
    TreesGe2,
    MarkedTreesGe2,
    /// Forests, `w` per component.
    Forests,
    /// Forests with a mark in every component.
    MarkedForests,
    /// Forests without isolated vertices.
    ForestsNoIso,
    MarkedForestsNoIso,
    /// Forests in which each non-isolated component may carry a mark;
    /// `w` counts marked components only.
    Mixed,
    /// As [`GraphClass::Mixed`], without isolated vertices.
    MixedNoIso,
}

use GraphClass::*;

impl GraphClass {
    pub const ALL: [GraphClass; 10] = [
        Trees,
        MarkedTrees,
        TreesGe2,
        MarkedTreesGe2,
        Forests,
        MarkedForests,
        ForestsNoIso,
        MarkedForestsNoIso,
        Mixed,
        MixedNoIso,
    ];

    pub const FORESTS: [GraphClass; 6] = [
        Forests,
        MarkedForests,
        ForestsNoIso,
        MarkedForestsNoIso,
        Mixed,
        MixedNoIso,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Trees => "TREES",
            MarkedTrees => "MARKED_TREES",
            TreesGe2 => "TREES_GE2",
            MarkedTreesGe2 => "MARKED_TREES_GE2",
            Forests => "FORESTS",
            MarkedForests => "MARKED_FORESTS",
            ForestsNoIso => "FORESTS_NOISO",
            MarkedForestsNoIso => "MARKED_FORESTS_NOISO",
            Mixed => "MIXED",
            MixedNoIso => "MIXED_NOISO",
        }
    }

    fn index(self) -> usize {
        Self::ALL.iter().position(|&c| c == self).unwrap()
    }

    pub fn is_forest(self) -> bool {
        Self::FORESTS.contains(&self)
    }

    /// Hard-coded equations; the rest are derived and substitution-checked.
    pub fn equation_is_printed(self) -> bool {
        matches!(self, Trees | MarkedForests | ForestsNoIso | MarkedForestsNoIso | Mixed)
    }

    /// For forest classes: the (unmarked, marked) tree classes of the
    /// composition `F = 1 + U(zF) + w M(zF)`.
    pub fn components(self) -> Option<(Option<GraphClass>, GraphClass)> {
        match self {
            Forests => Some((None, Trees)),
            MarkedForests => Some((None, MarkedTrees)),
            ForestsNoIso => Some((None, TreesGe2)),
            MarkedForestsNoIso => Some((None, MarkedTreesGe2)),
            Mixed => Some((Some(Trees), MarkedTreesGe2)),
            MixedNoIso => Some((Some(TreesGe2), MarkedTreesGe2)),
            _ => None,
        }
    }

    /// `[z^0], [z^1]` of the class series.
    fn seed(self) -> [i64; 2] {
        match self {
            Trees | MarkedTrees => [0, 1],
            TreesGe2 | MarkedTreesGe2 => [0, 0],
            Forests | MarkedForests | Mixed => [1, 1],
            ForestsNoIso | MarkedForestsNoIso | MixedNoIso => [1, 0],
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for GraphClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|c| c.tag() == norm)
            .ok_or_else(|| Error::InvalidInput(format!("unknown class {s:?}")))
    }
}

fn parse(s: &str) -> IntPolynomial {
    s.parse().expect("catalog polynomial parses")
}

/// Tree-class equations in `(x, t)`, written with `z` for `x` and `Y` for `t`.
fn tree_relation(class: GraphClass) -> IntPolynomial {
    match class {
        Trees => parse("Y^3 - zY + z^2"),
        // t = x T0'(x), from the derivative equation with T0' = t/x
        MarkedTrees => parse("(27z-4)Y^3 + z(1-6z)Y + z^2(8z-1)"),
        TreesGe2 => parse("(Y+z)^3 - z(Y+z) + z^2"),
        MarkedTreesGe2 => parse("(27z-4)(Y+z)^3 + z(1-6z)(Y+z) + z^2(8z-1)"),
        _ => unreachable!("not a tree class"),
    }
}

/// The derivative equation for `D = T0'(z)`.
pub fn derivative_equation() -> IntPolynomial {
    parse("(27z^2-4z)Y^3 + (1-6z)Y - 1 + 8z")
}

fn printed_equation(class: GraphClass) -> Option<IntPolynomial> {
    let s = match class {
        Trees => "Y^3 - zY + z^2",
        MarkedForests => "27zY^4 + (8z^3-6z^2-81z-4)Y^3 + (5z^2+82z+12)Y^2 - (28z+12)Y + 4",
        ForestsNoIso => "(1+z)^3Y^3 - (3z^2+7z+3)Y^2 + (4z+3)Y - 1",
        MarkedForestsNoIso => {
            "27z(1+z)^3Y^4 - (83z^3+180z^2+93z+4)Y^3 + (99z^2+106z+12)Y^2 - (12+40z)Y + 4"
        }
        // the Y^2 coefficient is 6(3z+2)(8z+1); see `printed_mixed_equation`
        Mixed => "27z(1+z)^3Y^4 - (20z^3+234z^2+93z+4)Y^3 + 6(3z+2)(8z+1)Y^2 - 12(4z+1)Y + 4",
        _ => return None,
    };
    Some(parse(s))
}

/// The mixed-class quartic exactly as typeset in the source, with
/// `6(3z+3)(8z+1)`. It has no power-series root with `Y(0) = 1`.
pub fn printed_mixed_equation() -> IntPolynomial {
    parse("27z(1+z)^3Y^4 - (20z^3+234z^2+93z+4)Y^3 + 6(3z+3)(8z+1)Y^2 - 12(4z+1)Y + 4")
}

/// The bivariate equation for marked forests without isolated vertices, as printed.
pub fn printed_bivariate_marked_noiso() -> IntPolynomial {
    parse(
        "27z(zw+1)^3Y^4 - (2z^3w^3+81z^3w^2+18z^2w^2+162z^2w+12zw+81z+4)Y^3 \
         + (18z^2w^2+81z^2w+zw^2+24zw+81z+12)Y^2 - (zw^2+12zw+27z+12)Y + 4",
    )
}

/// Bivariate equation `P(z, w, Y)` for a forest class.
///
/// Plain compositions substitute `t = (Y-1)/w`, `x = zY` into the tree
/// relation. The mixed classes have two kinds of components; there the
/// derivative `T0' = (a-2x)/(3a^2-x)` is written in terms of `a = T0(x)`
/// and `a` is eliminated against `a^3 - xa + x^2`.
pub fn bivariate_equation_for(class: GraphClass) -> Result<IntPolynomial> {
    let x_image = [(Var::Z, parse("zY"))];
    let p = match class {
        Forests | MarkedForests | ForestsNoIso | MarkedForestsNoIso => {
            let (_, tree) = class.components().unwrap();
            tree_relation(tree).subst_fraction(
                Var::Y,
                &parse("Y-1"),
                &IntPolynomial::var(Var::W),
                &x_image,
            )
        }
        Mixed | MixedNoIso => {
            let unmarked = if class == Mixed { "a" } else { "a - z" };
            let q0 = parse("a^3 - za + z^2");
            let r = parse(&format!(
                "(Y - 1 - ({unmarked}))(3a^2 - z) - wz((a - 2z) - (3a^2 - z))"
            ));
            resultant(&q0, &r, Var::A)?.subst(&x_image)
        }
        _ => {
            return Err(Error::InvalidInput(format!(
                "{class} is a tree class; bivariate equations exist for forest classes"
            )))
        }
    };
    Ok(p.normalized())
}

/// Univariate equation `P(z, Y)` for a class.
pub fn equation_for(class: GraphClass) -> IntPolynomial {
    if let Some(p) = printed_equation(class) {
        return p;
    }
    if class.is_forest() {
        let p = bivariate_equation_for(class).expect("forest classes have equations");
        p.subst(&[(Var::W, IntPolynomial::one())]).normalized()
    } else {
        tree_relation(class)
    }
}

/// `F_{n,c}`: nc-forests on `n` convex points with `c` components.
pub fn forests_by_components(n: u64, c: u64) -> BigInt {
    if n == 0 {
        return BigInt::from(u8::from(c == 0));
    }
    if c == 0 || c > n {
        return BigInt::zero();
    }
    binomial(n, c - 1) * binomial(3 * n - 2 * c - 1, 2 * n - c - 1) / BigInt::from(2 * n - c)
}

/// Lazily solved class series at one truncation order.
pub struct Catalog {
    order: usize,
    univariate: [OnceLock<Series>; 10],
    bivariate: [OnceLock<BiSeries>; 10],
}

impl Catalog {
    pub fn new(order: usize) -> Self {
        Catalog {
            order,
            univariate: Default::default(),
            bivariate: Default::default(),
        }
    }

    /// Process-wide catalog at [`DEFAULT_TRUNCATION`].
    pub fn shared() -> &'static Catalog {
        static SHARED: OnceLock<Catalog> = OnceLock::new();
        SHARED.get_or_init(|| Catalog::new(DEFAULT_TRUNCATION))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn series(&self, class: GraphClass) -> &Series {
        self.univariate[class.index()].get_or_init(|| {
            let seed = class.seed().map(q);
            solve_algebraic(&equation_for(class), &seed, self.order)
                .expect("catalog equations have a unique seeded branch")
        })
    }

    /// `f_{n,k}` rows, via Lagrange inversion on the component classes.
    pub fn bivariate(&self, class: GraphClass) -> Result<&BiSeries> {
        let (unmarked, marked) = class.components().ok_or_else(|| {
            Error::InvalidInput(format!("{class} has no component statistic"))
        })?;
        if let Some(b) = self.bivariate[class.index()].get() {
            return Ok(b);
        }
        let u = match unmarked {
            Some(c) => self.series(c).clone(),
            None => Series::zero(self.order),
        };
        let b = forest_from_trees(&u, self.series(marked))?;
        Ok(self.bivariate[class.index()].get_or_init(|| b))
    }

    /// Bivariate rows from the undetermined-coefficients solver; slower,
    /// used to cross-check [`Catalog::bivariate`].
    pub fn bivariate_by_equation(&self, class: GraphClass, order: usize) -> Result<BiSeries> {
        let p = bivariate_equation_for(class)?;
        let [c0, c1] = class.seed();
        // [z^1] of F(z,w): a single vertex is a component of U or of wM
        let row1 = match class {
            Forests | MarkedForests => vec![q(0), q(1)],
            _ => vec![q(c1)],
        };
        solve_algebraic_bivariate(&p, &[vec![q(c0)], row1], order)
    }

    pub fn count(&self, class: GraphClass, n: usize) -> Result<BigInt> {
        let c = self.series(class).get(n)?;
        debug_assert!(c.is_integer());
        Ok(c.to_integer())
    }

    pub fn counts(&self, class: GraphClass, range: std::ops::RangeInclusive<usize>) -> Result<Vec<BigInt>> {
        range.map(|n| self.count(class, n)).collect()
    }

    /// Spanning trees of a single chain with `n` chain points and one apex.
    /// Deleting the apex leaves a forest on the chain with one apex
    /// neighbour per component, which acts as the mark.
    pub fn single_chain_tree_count(&self, n: usize) -> Result<BigInt> {
        self.count(MarkedForests, n)
    }

    /// CSV with header `class,n,count`.
    pub fn to_csv(&self, classes: &[GraphClass], range: std::ops::RangeInclusive<usize>) -> Result<String> {
        let mut out = String::from("class,n,count\n");
        for &class in classes {
            for n in range.clone() {
                out.push_str(&format!("{},{},{}\n", class, n, self.count(class, n)?));
            }
        }
        Ok(out)
    }
}

/// `count(class, n)` on the shared catalog.
pub fn count(class: GraphClass, n: usize) -> Result<BigInt> {
    Catalog::shared().count(class, n)
}

pub fn single_chain_tree_count(n: usize) -> Result<BigInt> {
    Catalog::shared().single_chain_tree_count(n)
}

/// `sum_i C(n, i) g(n - i)`: attach any set of isolated vertices.
pub fn with_isolated_vertices(g: &[BigInt], n: usize) -> BigInt {
    (0..=n).fold(BigInt::zero(), |acc, i| acc + binomial(n as u64, i as u64) * &g[n - i])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Catalog {
        Catalog::new(12)
    }

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|b| b.try_into().unwrap()).collect()
    }

    #[test]
    fn tree_counts() {
        let c = small();
        assert_eq!(ints(&c.counts(Trees, 0..=6).unwrap()), vec![0, 1, 1, 3, 12, 55, 273]);
        assert_eq!(ints(&c.counts(MarkedTrees, 0..=4).unwrap()), vec![0, 1, 2, 9, 48]);
        assert_eq!(ints(&c.counts(TreesGe2, 0..=4).unwrap()), vec![0, 0, 1, 3, 12]);
    }

    #[test]
    fn forest_counts() {
        let c = small();
        assert_eq!(ints(&c.counts(Forests, 0..=3).unwrap()), vec![1, 1, 2, 7]);
        assert_eq!(c.count(MarkedForests, 2).unwrap(), BigInt::from(3));
        assert_eq!(ints(&c.counts(ForestsNoIso, 0..=3).unwrap()), vec![1, 0, 1, 3]);
    }

    #[test]
    fn truncation_is_enforced() {
        let c = small();
        assert!(matches!(
            c.count(Trees, 13),
            Err(Error::RaiseTruncation { n: 13, order: 12 })
        ));
    }

    #[test]
    fn derived_equations_agree_with_printed_ones() {
        for class in [MarkedForests, ForestsNoIso, MarkedForestsNoIso, Mixed] {
            let derived = bivariate_equation_for(class)
                .unwrap()
                .subst(&[(Var::W, IntPolynomial::one())]);
            assert!(
                derived.is_proportional_to(&printed_equation(class).unwrap()),
                "{class}: {derived}"
            );
        }
        assert!(bivariate_equation_for(MarkedForestsNoIso)
            .unwrap()
            .is_proportional_to(&printed_bivariate_marked_noiso()));
    }

    #[test]
    fn printed_mixed_quartic_has_no_series_root() {
        let seed = [q(1), q(1)];
        assert!(solve_algebraic(&printed_mixed_equation(), &seed, 6).is_err());
    }

    #[test]
    fn closed_form_component_counts() {
        assert_eq!(forests_by_components(2, 2), BigInt::from(1));
        let row: Vec<_> = (1..=3).map(|c| forests_by_components(3, c)).collect();
        assert_eq!(ints(&row), vec![3, 3, 1]);
        assert!(forests_by_components(3, 4).is_zero());
    }

    #[test]
    fn class_names_round_trip() {
        for class in GraphClass::ALL {
            assert_eq!(class.tag().parse::<GraphClass>().unwrap(), class);
        }
        assert_eq!("marked-forests".parse::<GraphClass>().unwrap(), MarkedForests);
        assert!("graphs".parse::<GraphClass>().is_err());
    }
}
