//! Integer point configurations and exact predicates.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Config {
    Convex,
    /// Upper chain `u_0..u_{n-1}` at indices `0..n`, lower chain at `n..2n`.
    DoubleChain(usize),
    /// Chain `l_0..l_{n-1}` at indices `0..n`, apex at index `n`.
    SingleChain(usize),
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Config::Convex => f.write_str("convex"),
            Config::DoubleChain(_) => f.write_str("double-chain"),
            Config::SingleChain(_) => f.write_str("single-chain"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<(i64, i64)>,
    config: Config,
}

/// Sign of the cross product `(b - a) x (c - a)`, in arbitrary precision.
pub fn orientation(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Ordering {
    let big = |v: i64| BigInt::from(v);
    let det = (big(b.0) - big(a.0)) * (big(c.1) - big(a.1))
        - (big(b.1) - big(a.1)) * (big(c.0) - big(a.0));
    if det.is_positive() {
        Ordering::Greater
    } else if det.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

impl PointSet {
    /// Points with an explicit configuration tag; invariants are checked.
    pub fn new(points: Vec<(i64, i64)>, config: Config) -> Result<Self> {
        let ps = PointSet { points, config };
        ps.verify()?;
        Ok(ps)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn config(&self) -> Config {
        self.config
    }

    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }

    pub fn point(&self, i: usize) -> (i64, i64) {
        self.points[i]
    }

    /// Chain size for chain configurations, point count otherwise.
    pub fn n(&self) -> usize {
        match self.config {
            Config::Convex => self.len(),
            Config::DoubleChain(n) | Config::SingleChain(n) => n,
        }
    }

    /// Index of `u_i` on a double chain.
    pub fn upper(&self, i: usize) -> usize {
        i
    }

    /// Index of `l_i` on a double chain (or of the chain point `l_i` on a single chain).
    pub fn lower(&self, i: usize) -> usize {
        match self.config {
            Config::DoubleChain(n) => n + i,
            _ => i,
        }
    }

    pub fn apex(&self) -> Option<usize> {
        match self.config {
            Config::SingleChain(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_upper(&self, v: usize) -> bool {
        matches!(self.config, Config::DoubleChain(n) if v < n)
    }

    /// An edge with one endpoint on each chain of a double chain.
    pub fn is_interior_edge(&self, a: usize, b: usize) -> bool {
        matches!(self.config, Config::DoubleChain(_)) && self.is_upper(a) != self.is_upper(b)
    }

    /// True iff the open segments `ab` and `cd` meet. Segments sharing an
    /// endpoint never cross (no three points are collinear).
    pub fn segments_cross(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        assert!(a != b && c != d, "degenerate segment");
        if a == c || a == d || b == c || b == d {
            return false;
        }
        let p = |i: usize| self.points[i];
        let o1 = orientation(p(a), p(b), p(c));
        let o2 = orientation(p(a), p(b), p(d));
        let o3 = orientation(p(c), p(d), p(a));
        let o4 = orientation(p(c), p(d), p(b));
        o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o3 != Ordering::Equal
    }

    fn collinear_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if orientation(self.points[a], self.points[b], self.points[c]) == Ordering::Equal {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Every line through two points of `chain` leaves all of `other` strictly on one side.
    fn separates(&self, chain: &[usize], other: &[usize]) -> bool {
        for (i, &a) in chain.iter().enumerate() {
            for &b in &chain[i + 1..] {
                let sides: BTreeSet<Ordering> = other
                    .iter()
                    .map(|&c| orientation(self.points[a], self.points[b], self.points[c]))
                    .collect();
                if sides.len() > 1 || sides.contains(&Ordering::Equal) {
                    return false;
                }
            }
        }
        true
    }

    /// `v` lies strictly inside the convex polygon `hull` (counter-clockwise).
    fn strictly_inside(&self, v: usize, hull: &[usize]) -> bool {
        (0..hull.len()).all(|i| {
            let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
            orientation(self.points[a], self.points[b], self.points[v]) == Ordering::Greater
        })
    }

    fn in_convex_position(&self, idx: &[usize]) -> bool {
        // no point inside a triangle of the others
        for &v in idx {
            for (i, &a) in idx.iter().enumerate() {
                for (j, &b) in idx.iter().enumerate().skip(i + 1) {
                    for &c in &idx[j + 1..] {
                        if [a, b, c].contains(&v) {
                            continue;
                        }
                        let tri = if orientation(self.points[a], self.points[b], self.points[c])
                            == Ordering::Greater
                        {
                            [a, b, c]
                        } else {
                            [a, c, b]
                        };
                        if self.strictly_inside(v, &tri) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Checks general position and the configuration's defining properties.
    pub fn verify(&self) -> Result<()> {
        if let Some((a, b, c)) = self.collinear_triple() {
            return Err(Error::InvalidInput(format!("points {a}, {b}, {c} are collinear")));
        }
        match self.config {
            Config::Convex => {
                let all: Vec<usize> = (0..self.len()).collect();
                if !self.in_convex_position(&all) {
                    return Err(Error::InvalidInput("points are not in convex position".into()));
                }
            }
            Config::DoubleChain(n) => {
                if self.len() != 2 * n {
                    return Err(Error::InvalidInput("double chain needs 2n points".into()));
                }
                let up: Vec<usize> = (0..n).collect();
                let low: Vec<usize> = (n..2 * n).collect();
                if !self.separates(&up, &low) || !self.separates(&low, &up) {
                    return Err(Error::InvalidInput("chains are not mutually separated".into()));
                }
                if n >= 3 {
                    // the hull is u_0 u_{n-1} and l_{n-1} l_0; the chains bend inwards
                    let hull = self.ccw(&[0, n - 1, 2 * n - 1, n]);
                    let inner = (1..n - 1).flat_map(|i| [i, n + i]);
                    if !inner.clone().all(|v| self.strictly_inside(v, &hull)) {
                        return Err(Error::InvalidInput(
                            "chain interiors are not inside the hull (points are in convex position)".into(),
                        ));
                    }
                }
            }
            Config::SingleChain(n) => {
                if self.len() != n + 1 {
                    return Err(Error::InvalidInput("single chain needs n + 1 points".into()));
                }
                let chain: Vec<usize> = (0..n).collect();
                if !self.in_convex_position(&chain) {
                    return Err(Error::InvalidInput("chain is not in convex position".into()));
                }
                if n >= 3 {
                    let hull = self.ccw(&[0, n - 1, n]);
                    if !(1..n - 1).all(|v| self.strictly_inside(v, &hull)) {
                        return Err(Error::InvalidInput("hull is not the triangle l_0 l_{n-1} p".into()));
                    }
                }
                for i in 0..n {
                    for a in 0..n {
                        for b in a + 1..n {
                            if self.segments_cross(n, i, a, b) {
                                return Err(Error::InvalidInput(format!(
                                    "apex edge to l_{i} crosses l_{a} l_{b}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn ccw(&self, poly: &[usize]) -> Vec<usize> {
        let mut v = poly.to_vec();
        if orientation(self.points[v[0]], self.points[v[1]], self.points[v[2]]) == Ordering::Less {
            v.reverse();
        }
        v
    }

    /// Same points with labels permuted: new label `i` is old label `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        if self.config != Config::Convex {
            return Err(Error::InvalidInput("only convex sets can be relabeled".into()));
        }
        PointSet::new(perm.iter().map(|&i| self.points[i]).collect(), Config::Convex)
    }
}

/// `n` points on the parabola `(i, i^2)`.
pub fn make_convex(n: usize) -> PointSet {
    let points = (0..n as i64).map(|i| (i, i * i)).collect();
    PointSet::new(points, Config::Convex).expect("parabola points are in convex position")
}

/// Double chain with `u_i = (i, 3n^2 + i^2)` and `l_i = (i, -3n^2 - i^2)`:
/// each chain bends towards the other. If a check fails the upper chain
/// is lifted by one unit at a time, at most `n` times.
pub fn make_double_chain(n: usize) -> Result<PointSet> {
    double_chain_with(n, |n, i| (i, 3 * n * n + i * i), |n, i| (i, -3 * n * n - i * i))
}

/// A second double-chain realization with different curvature on each
/// chain, for invariance checks.
pub fn make_double_chain_alt(n: usize) -> Result<PointSet> {
    double_chain_with(
        n,
        |n, i| (i, 7 * n * n + 2 * i * i),
        |n, i| (i, -7 * n * n - 3 * i * i),
    )
}

fn double_chain_with(
    n: usize,
    upper: impl Fn(i64, i64) -> (i64, i64),
    lower: impl Fn(i64, i64) -> (i64, i64),
) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::InvalidInput("double chain needs n >= 1".into()));
    }
    let m = n as i64;
    let low: Vec<(i64, i64)> = (0..m).map(|i| lower(m, i)).collect();
    let mut last = None;
    for shift in 0..=m {
        let mut points: Vec<(i64, i64)> = (0..m)
            .map(|i| {
                let (x, y) = upper(m, i);
                (x, y + shift)
            })
            .collect();
        points.extend(&low);
        match PointSet::new(points, Config::DoubleChain(n)) {
            Ok(ps) => return Ok(ps),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap())
}

/// Single chain: `l_i = (2i, i(n-1-i))` in convex position, and an apex far above.
pub fn make_single_chain(n: usize) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::InvalidInput("single chain needs n >= 1".into()));
    }
    let m = n as i64;
    let mut points: Vec<(i64, i64)> = (0..m).map(|i| (2 * i, i * (m - 1 - i))).collect();
    points.push((m - 1, 4 * m * m * m + 10));
    PointSet::new(points, Config::SingleChain(n))
}

/// A geometric graph: a set of vertex pairs `(a, b)` with `a < b`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSet {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl EdgeSet {
    pub fn new(vertices: usize) -> Self {
        EdgeSet {
            vertices,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut s = EdgeSet::new(vertices);
        for (a, b) in edges {
            s.insert(a, b);
        }
        s
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn insert(&mut self, a: usize, b: usize) -> bool {
        assert!(a != b && a < self.vertices && b < self.vertices, "bad edge {a}-{b}");
        self.edges.insert((a.min(b), a.max(b)))
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Would the segment `ab` cross an edge of the drawing?
    pub fn blocks(&self, ps: &PointSet, a: usize, b: usize) -> bool {
        self.edges.iter().any(|&(c, d)| ps.segments_cross(a, b, c, d))
    }

    pub fn is_crossing_free(&self, ps: &PointSet) -> bool {
        let e: Vec<_> = self.edges.iter().collect();
        (0..e.len()).all(|i| (i + 1..e.len()).all(|j| !ps.segments_cross(e[i].0, e[i].1, e[j].0, e[j].1)))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertices);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 0..self.vertices {
            groups.entry(uf.find(v)).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.components().len() == self.vertices
    }

    pub fn is_spanning_tree(&self) -> bool {
        self.is_forest() && self.components().len() == 1
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.vertices).any(|v| self.degree(v) == 0)
    }
}

/// Union-find on a small vertex set, cheap to copy while backtracking.
#[derive(Clone, Copy, Debug)]
pub struct UnionFind {
    parent: [u8; 16],
    size: [u8; 16],
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        assert!(n <= 16, "union-find supports at most 16 vertices");
        let mut parent = [0u8; 16];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        UnionFind {
            parent,
            size: [1; 16],
        }
    }

    pub fn find(&self, mut v: usize) -> usize {
        while self.parent[v] as usize != v {
            v = self.parent[v] as usize;
        }
        v
    }

    /// False if `a` and `b` were already connected.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u8;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn size_of_root(&self, r: usize) -> usize {
        self.size[r] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_chain_crossings() {
        let ps = make_double_chain(2).unwrap();
        let (u0, u1, l0, l1) = (ps.upper(0), ps.upper(1), ps.lower(0), ps.lower(1));
        assert!(ps.segments_cross(u0, l1, u1, l0));
        assert!(!ps.segments_cross(u0, l0, u1, l1));
        assert!(!ps.segments_cross(u0, l0, u0, l1));
    }

    #[test]
    fn spec_placement_is_convex_and_rejected() {
        // u_i = (i, 3n^2 - i^2), l_i = (i, -3n^2 + i^2) bends outwards
        let n = 3i64;
        let mut pts: Vec<(i64, i64)> = (0..n).map(|i| (i, 3 * n * n - i * i)).collect();
        pts.extend((0..n).map(|i| (i, -3 * n * n + i * i)));
        assert!(PointSet::new(pts.clone(), Config::DoubleChain(3)).is_err());
        assert!(PointSet::new(pts, Config::Convex).is_ok());
    }

    #[test]
    fn configurations_verify() {
        for n in 1..=8 {
            make_double_chain(n).unwrap();
            make_double_chain_alt(n).unwrap();
            make_single_chain(n).unwrap();
            make_convex(n);
        }
    }

    #[test]
    fn edge_set_flags() {
        let mut g = EdgeSet::new(4);
        g.insert(0, 1);
        g.insert(2, 1);
        assert!(g.is_forest() && !g.is_spanning_tree());
        g.insert(3, 2);
        assert!(g.is_spanning_tree());
        g.insert(0, 3);
        assert!(!g.is_forest());
        assert!(!make_convex(4).points().is_empty());
        let ps = make_convex(4);
        let mut x = EdgeSet::new(4);
        x.insert(0, 2);
        x.insert(1, 3);
        assert!(!x.is_crossing_free(&ps));
    }
}
