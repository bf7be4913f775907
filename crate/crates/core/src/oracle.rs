//! Exhaustive enumeration of crossing-free forests on small point sets.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::classes::GraphClass;
use crate::error::{Error, Result};
use crate::geometry::{make_double_chain, EdgeSet, PointSet, UnionFind};

pub const DEFAULT_CAP: usize = 12;
pub const MAX_CAP: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    SpanningTrees,
    /// Spanning trees with a marked vertex.
    MarkedSpanningTrees,
    /// Spanning trees on at least two points.
    SpanningTreesGe2,
    MarkedSpanningTreesGe2,
    Forests,
    ForestsNoIso,
    /// One mark per component: weight = product of component sizes.
    MarkedForests,
    MarkedForestsNoIso,
    /// Each non-isolated component unmarked or marked at one of its vertices.
    Mixed,
    MixedNoIso,
    /// Crossing-free sets of interior edges of a double chain.
    InteriorForests,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::SpanningTrees,
        Family::MarkedSpanningTrees,
        Family::SpanningTreesGe2,
        Family::MarkedSpanningTreesGe2,
        Family::Forests,
        Family::ForestsNoIso,
        Family::MarkedForests,
        Family::MarkedForestsNoIso,
        Family::Mixed,
        Family::MixedNoIso,
        Family::InteriorForests,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::SpanningTrees => "spanning-trees",
            Family::MarkedSpanningTrees => "marked-spanning-trees",
            Family::SpanningTreesGe2 => "spanning-trees-ge2",
            Family::MarkedSpanningTreesGe2 => "marked-spanning-trees-ge2",
            Family::Forests => "forests",
            Family::ForestsNoIso => "forests-noiso",
            Family::MarkedForests => "marked-forests",
            Family::MarkedForestsNoIso => "marked-forests-noiso",
            Family::Mixed => "mixed",
            Family::MixedNoIso => "mixed-noiso",
            Family::InteriorForests => "interior-forests",
        }
    }

    /// The family whose census realizes a convex class.
    pub fn for_class(class: GraphClass) -> Family {
        match class {
            GraphClass::Trees => Family::SpanningTrees,
            GraphClass::MarkedTrees => Family::MarkedSpanningTrees,
            GraphClass::TreesGe2 => Family::SpanningTreesGe2,
            GraphClass::MarkedTreesGe2 => Family::MarkedSpanningTreesGe2,
            GraphClass::Forests => Family::Forests,
            GraphClass::MarkedForests => Family::MarkedForests,
            GraphClass::ForestsNoIso => Family::ForestsNoIso,
            GraphClass::MarkedForestsNoIso => Family::MarkedForestsNoIso,
            GraphClass::Mixed => Family::Mixed,
            GraphClass::MixedNoIso => Family::MixedNoIso,
        }
    }

    fn spanning(self) -> bool {
        matches!(
            self,
            Family::SpanningTrees
                | Family::MarkedSpanningTrees
                | Family::SpanningTreesGe2
                | Family::MarkedSpanningTreesGe2
        )
    }

    /// Weight of a forest with the given component sizes, as a polynomial
    /// in the component variable (ascending coefficients).
    fn weight(self, sizes: &[usize]) -> Vec<u64> {
        let n: usize = sizes.iter().sum();
        let isolated = sizes.contains(&1);
        let single = |w: u64| if sizes.len() == 1 { vec![0, w] } else { vec![] };
        match self {
            Family::SpanningTrees => single(1),
            Family::MarkedSpanningTrees => single(n as u64),
            Family::SpanningTreesGe2 if n >= 2 => single(1),
            Family::MarkedSpanningTreesGe2 if n >= 2 => single(n as u64),
            Family::SpanningTreesGe2 | Family::MarkedSpanningTreesGe2 => vec![],
            Family::Forests | Family::InteriorForests => monomial(sizes.len(), 1),
            Family::ForestsNoIso if isolated => vec![],
            Family::ForestsNoIso => monomial(sizes.len(), 1),
            Family::MarkedForestsNoIso if isolated => vec![],
            Family::MarkedForests | Family::MarkedForestsNoIso => {
                monomial(sizes.len(), sizes.iter().map(|&s| s as u64).product())
            }
            Family::MixedNoIso if isolated => vec![],
            Family::Mixed | Family::MixedNoIso => sizes
                .iter()
                .filter(|&&s| s > 1)
                .fold(vec![1], |acc, &s| poly_mul(&acc, &[1, s as u64])),
        }
    }
}

fn monomial(k: usize, c: u64) -> Vec<u64> {
    let mut v = vec![0; k + 1];
    v[k] = c;
    v
}

fn poly_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == norm)
            .ok_or_else(|| Error::InvalidInput(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupBy {
    /// Degree in the component variable: components, or marked components
    /// for the mixed families.
    Components,
    Edges,
}

/// Weighted counts grouped by a statistic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub config: String,
    pub n: usize,
    pub family: Family,
    pub groups: BTreeMap<usize, BigInt>,
    pub total: BigInt,
}

impl Census {
    pub fn group(&self, k: usize) -> BigInt {
        self.groups.get(&k).cloned().unwrap_or_default()
    }

    pub fn to_json(&self) -> Value {
        let num = |b: &BigInt| -> Value {
            match u64::try_from(b) {
                Ok(v) => json!(v),
                Err(_) => json!(b.to_string()),
            }
        };
        let groups: serde_json::Map<String, Value> =
            self.groups.iter().map(|(k, v)| (k.to_string(), num(v))).collect();
        json!({
            "config": self.config,
            "n": self.n,
            "family": self.family.name(),
            "groups": groups,
            "total": num(&self.total),
        })
    }
}

struct Search<'a> {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    /// `crossing[e]`: edges whose segment crosses edge `e`.
    crossing: Vec<u128>,
    family: Family,
    group_by: GroupBy,
    acc: &'a mut BTreeMap<usize, BigInt>,
    check_acyclic: bool,
    cycles_seen: bool,
}

impl Search<'_> {
    fn leaf(&mut self, uf: &UnionFind, chosen: u128) {
        let mut sizes: Vec<usize> = (0..self.vertices)
            .filter(|&v| uf.find(v) == v)
            .map(|r| uf.size_of_root(r))
            .collect();
        sizes.sort_unstable();
        let w = self.family.weight(&sizes);
        match self.group_by {
            GroupBy::Components => {
                for (k, c) in w.iter().enumerate() {
                    if *c != 0 {
                        *self.acc.entry(k).or_default() += *c;
                    }
                }
            }
            GroupBy::Edges => {
                let total: u64 = w.iter().sum();
                if total != 0 {
                    *self.acc.entry(chosen.count_ones() as usize).or_default() += total;
                }
            }
        }
    }

    /// Can the chosen edges plus still-available ones connect every vertex?
    fn can_span(&self, e: usize, chosen: u128, uf: &UnionFind) -> bool {
        let mut reach = *uf;
        let blocked = self
            .crossing
            .iter()
            .enumerate()
            .filter(|(i, _)| chosen >> i & 1 == 1)
            .fold(0u128, |acc, (_, m)| acc | m);
        for (i, &(a, b)) in self.edges.iter().enumerate().skip(e) {
            if blocked >> i & 1 == 0 {
                reach.union(a, b);
            }
        }
        let r = reach.find(0);
        (1..self.vertices).all(|v| reach.find(v) == r)
    }

    fn run(&mut self, e: usize, chosen: u128, uf: UnionFind) {
        if self.family.spanning() && !self.can_span(e, chosen, &uf) {
            return;
        }
        if e == self.edges.len() {
            self.leaf(&uf, chosen);
            return;
        }
        self.run(e + 1, chosen, uf);
        if self.crossing[e] & chosen != 0 {
            return;
        }
        let (a, b) = self.edges[e];
        let mut next = uf;
        if next.union(a, b) {
            self.run(e + 1, chosen | 1 << e, next);
        } else if self.check_acyclic {
            self.cycles_seen = true;
        }
    }
}

fn candidate_edges(ps: &PointSet, family: Family) -> Result<Vec<(usize, usize)>> {
    let n = ps.len();
    let all = (0..n).tuple_combinations::<(usize, usize)>();
    if family == Family::InteriorForests {
        if !matches!(ps.config(), crate::geometry::Config::DoubleChain(_)) {
            return Err(Error::InvalidInput("interior forests need a double chain".into()));
        }
        Ok(all.filter(|&(a, b)| ps.is_interior_edge(a, b)).collect())
    } else {
        Ok(all.collect())
    }
}

/// Crossing bitmasks over a fixed edge list.
fn crossing_masks(ps: &PointSet, edges: &[(usize, usize)]) -> Vec<u128> {
    edges
        .iter()
        .map(|&(a, b)| {
            edges
                .iter()
                .enumerate()
                .filter(|(_, &(c, d))| ps.segments_cross(a, b, c, d))
                .fold(0u128, |m, (j, _)| m | 1 << j)
        })
        .collect()
}

/// Census of a family on a point set by backtracking over edges in
/// lexicographic order, pruning on crossings and cycles.
pub fn count_nc(ps: &PointSet, family: Family, group_by: GroupBy, cap: usize) -> Result<Census> {
    if ps.len() > cap.min(MAX_CAP) {
        return Err(Error::OracleTooLarge {
            points: ps.len(),
            cap: cap.min(MAX_CAP),
        });
    }
    let edges = candidate_edges(ps, family)?;
    let crossing = crossing_masks(ps, &edges);
    let mut groups = BTreeMap::new();
    let interior = family == Family::InteriorForests;
    let mut search = Search {
        vertices: ps.len(),
        edges,
        crossing,
        family,
        group_by,
        acc: &mut groups,
        check_acyclic: interior,
        cycles_seen: false,
    };
    if ps.is_empty() {
        // the empty forest
        search.leaf(&UnionFind::new(0), 0);
    } else {
        search.run(0, 0, UnionFind::new(ps.len()));
    }
    if search.cycles_seen {
        return Err(Error::InvalidInput(
            "a crossing-free set of interior edges contains a cycle".into(),
        ));
    }
    if interior && group_by == GroupBy::Edges {
        // the empty edge set is not counted among interior forests
        groups.remove(&0);
    }
    let groups: BTreeMap<usize, BigInt> = groups.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    let total = groups.values().sum();
    Ok(Census {
        config: ps.config().to_string(),
        n: ps.n(),
        family,
        groups,
        total,
    })
}

/// Total census of a family.
pub fn total(ps: &PointSet, family: Family, cap: usize) -> Result<BigInt> {
    Ok(count_nc(ps, family, GroupBy::Components, cap)?.total)
}

/// Spanning trees of the double chain with `n` points per chain.
pub fn spanning_tree_count_double_chain(n: usize) -> Result<BigInt> {
    total(&make_double_chain(n)?, Family::SpanningTrees, DEFAULT_CAP)
}

/// Spanning trees by a different route: every `(N-1)`-subset of the
/// edges, kept if it is crossing-free and connected.
pub fn spanning_tree_count_by_subsets(ps: &PointSet) -> BigInt {
    let n = ps.len();
    if n <= 1 {
        return BigInt::from(1);
    }
    let edges: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let crossing = crossing_masks(ps, &edges);
    let mut count = 0u64;
    for subset in (0..edges.len()).combinations(n - 1) {
        let mask = subset.iter().fold(0u128, |m, &i| m | 1 << i);
        if subset.iter().any(|&i| crossing[i] & mask != 0) {
            continue;
        }
        let g = EdgeSet::from_edges(n, subset.iter().map(|&i| edges[i]));
        if g.is_spanning_tree() {
            count += 1;
        }
    }
    BigInt::from(count)
}

/// All crossing-free forests of a point set, as explicit edge sets.
pub fn enumerate_forests(ps: &PointSet, cap: usize) -> Result<Vec<EdgeSet>> {
    if ps.len() > cap.min(MAX_CAP) {
        return Err(Error::OracleTooLarge {
            points: ps.len(),
            cap: cap.min(MAX_CAP),
        });
    }
    let edges: Vec<(usize, usize)> = (0..ps.len()).tuple_combinations().collect();
    let crossing = crossing_masks(ps, &edges);
    let mut out = Vec::new();
    fn go(
        e: usize,
        chosen: u128,
        uf: UnionFind,
        edges: &[(usize, usize)],
        crossing: &[u128],
        vertices: usize,
        out: &mut Vec<EdgeSet>,
    ) {
        if e == edges.len() {
            out.push(EdgeSet::from_edges(
                vertices,
                (0..edges.len()).filter(|i| chosen >> i & 1 == 1).map(|i| edges[i]),
            ));
            return;
        }
        go(e + 1, chosen, uf, edges, crossing, vertices, out);
        if crossing[e] & chosen == 0 {
            let mut next = uf;
            if next.union(edges[e].0, edges[e].1) {
                go(e + 1, chosen | 1 << e, next, edges, crossing, vertices, out);
            }
        }
    }
    go(0, 0, UnionFind::new(ps.len()), &edges, &crossing, ps.len(), &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::make_convex;

    #[test]
    fn convex_spanning_trees() {
        assert_eq!(total(&make_convex(4), Family::SpanningTrees, 12).unwrap(), BigInt::from(12));
    }

    #[test]
    fn convex_forests() {
        assert_eq!(total(&make_convex(3), Family::Forests, 12).unwrap(), BigInt::from(7));
    }

    #[test]
    fn interior_forests_on_two_by_two() {
        let ps = make_double_chain(2).unwrap();
        let c = count_nc(&ps, Family::InteriorForests, GroupBy::Edges, 12).unwrap();
        assert_eq!(c.group(1), BigInt::from(4));
        assert_eq!(c.group(2), BigInt::from(5));
        assert_eq!(c.group(3), BigInt::from(2));
    }

    #[test]
    fn cap_is_enforced() {
        let r = total(&make_convex(13), Family::Forests, 12);
        assert!(matches!(r, Err(Error::OracleTooLarge { points: 13, cap: 12 })));
    }

    #[test]
    fn mixed_weight_counts_marked_components() {
        // components of sizes 1, 2, 3: (1 + 2w)(1 + 3w)
        assert_eq!(Family::Mixed.weight(&[1, 2, 3]), vec![1, 5, 6]);
        assert!(Family::MixedNoIso.weight(&[1, 2]).is_empty());
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
    }
}
