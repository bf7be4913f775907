//! The lower-bound constructions on the double chain: a few forests on the
//! two chains plus chosen vertex subsets determine a crossing-free graph.
//!
//! Chain vertices are addressed by their position `0..n` from left to
//! right; [`build_from_data`] maps them to `u_i = i` and `l_i = n + i`.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde_json::{json, Value};

use crate::geometry::{make_convex, make_double_chain, EdgeSet, PointSet};
use crate::oracle::{enumerate_forests, MAX_CAP};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Spanning trees.
    Tree,
    /// Forests; some lower isolated vertices hang from marks.
    Forest,
    /// Forests without isolated vertices.
    NoIsoForest,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Tree, Variant::Forest, Variant::NoIsoForest];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Tree => "tree",
            Variant::Forest => "forest",
            Variant::NoIsoForest => "noiso-forest",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstructionInput {
    pub variant: Variant,
    pub n: usize,
    /// `F_U` on chain positions.
    pub upper: EdgeSet,
    /// At most one per component of `F_U`.
    pub marks: BTreeSet<usize>,
    /// The `k` marks matched to `M_L`.
    pub chosen: BTreeSet<usize>,
    /// `F_L` on chain positions.
    pub lower: EdgeSet,
    pub m_lower: BTreeSet<usize>,
    /// Forest: isolated lower vertices joined to a mark.
    /// No-isolated forest: the isolated (and marked) upper vertices.
    pub extras: BTreeSet<usize>,
}

fn component_of(comps: &[Vec<usize>], v: usize) -> usize {
    comps.iter().position(|c| c.contains(&v)).expect("vertex in some component")
}

impl ConstructionInput {
    pub fn k(&self) -> usize {
        self.chosen.len()
    }

    /// Checks the preconditions of the variant. Besides the defining
    /// conditions, the leftmost mark has to be matched: otherwise an
    /// unmatched mark left of every matched one ends up first in its group
    /// and two inputs describe the same graph.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidInput(format!("{} input: {msg}", self.variant.name())));
        let n = self.n;
        if self.upper.vertices() != n || self.lower.vertices() != n {
            return bad("chain forests must have n vertices");
        }
        let in_range = |s: &BTreeSet<usize>| s.iter().all(|&v| v < n);
        if !(in_range(&self.marks) && in_range(&self.chosen) && in_range(&self.m_lower) && in_range(&self.extras)) {
            return bad("vertex out of range");
        }
        let convex = make_convex(n);
        if !self.upper.is_forest() || !self.lower.is_forest() {
            return bad("chains must carry forests");
        }
        if !self.upper.is_crossing_free(&convex) || !self.lower.is_crossing_free(&convex) {
            return bad("chain forests must be crossing-free");
        }
        let comps = self.upper.components();
        let marked: Vec<usize> = self.marks.iter().map(|&m| component_of(&comps, m)).collect();
        if marked.iter().duplicates().next().is_some() {
            return bad("two marks in one component");
        }
        if !self.chosen.is_subset(&self.marks) {
            return bad("chosen vertices must be marks");
        }
        if self.m_lower.len() != self.k() {
            return bad("|M_L| must equal the number of chosen marks");
        }
        if !self.marks.is_empty() && self.marks.first() != self.chosen.first() {
            return bad("the leftmost mark must be chosen");
        }
        let lower_isolated = |v: usize| self.lower.degree(v) == 0;
        match self.variant {
            Variant::Tree => {
                if self.k() == 0 {
                    return bad("k must be positive");
                }
                if marked.len() != comps.len() {
                    return bad("every component of F_U carries a mark");
                }
                if !self.extras.is_empty() {
                    return bad("no extra data");
                }
            }
            Variant::Forest => {
                if self.m_lower.iter().any(|&v| lower_isolated(v)) {
                    return bad("M_L must avoid isolated vertices");
                }
                if !self.extras.iter().all(|&v| lower_isolated(v)) {
                    return bad("extra lower vertices must be isolated");
                }
                if !self.extras.is_empty() && self.marks.is_empty() {
                    return bad("isolated lower vertices need a mark");
                }
            }
            Variant::NoIsoForest => {
                let isolated: BTreeSet<usize> = (0..n).filter(|&v| self.upper.degree(v) == 0).collect();
                if isolated != self.extras {
                    return bad("the isolated upper vertices are exactly the extra ones");
                }
                if !self.extras.is_subset(&self.marks) {
                    return bad("isolated upper vertices are marked");
                }
                let needs_mark = (0..n).any(|v| lower_isolated(v) && !self.m_lower.contains(&v));
                if needs_mark && self.marks.is_empty() {
                    return bad("isolated lower vertices need a mark");
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let edges = |e: &EdgeSet| e.edges().map(|(a, b)| json!([a, b])).collect::<Vec<_>>();
        json!({
            "variant": self.variant.name(),
            "n": self.n,
            "upper": edges(&self.upper),
            "marks": self.marks,
            "chosen": self.chosen,
            "lower": edges(&self.lower),
            "m_lower": self.m_lower,
            "extras": self.extras,
        })
    }
}

struct Drawing<'a> {
    ps: &'a PointSet,
    g: EdgeSet,
    n: usize,
}

impl Drawing<'_> {
    fn visible(&self, a: usize, b: usize) -> bool {
        !self.g.contains(a, b) && !self.g.blocks(self.ps, a, b)
    }

    /// Joins `from` to the first visible target in the given order.
    fn join_first(&mut self, from: usize, targets: impl Iterator<Item = usize>, step: &str) -> Result<()> {
        let mut targets = targets;
        match targets.find(|&t| self.visible(from, t)) {
            Some(t) => {
                self.g.insert(from, t);
                Ok(())
            }
            None => Err(Error::ConstructionStuck(format!("{step}: nothing visible from vertex {from}"))),
        }
    }

    fn lower(&self, i: usize) -> usize {
        self.n + i
    }
}

/// Runs the construction steps on a validated input and returns the graph
/// on the `2n` points of the double chain.
pub fn build_from_data(input: &ConstructionInput) -> Result<EdgeSet> {
    input.validate()?;
    let n = input.n;
    let ps = make_double_chain(n)?;
    let mut d = Drawing {
        ps: &ps,
        g: EdgeSet::new(2 * n),
        n,
    };
    for (a, b) in input.upper.edges() {
        d.g.insert(a, b);
    }
    for (a, b) in input.lower.edges() {
        d.g.insert(d.lower(a), d.lower(b));
    }

    // matching, left to right on both chains
    for (&u, &l) in input.chosen.iter().zip(&input.m_lower) {
        let l = d.lower(l);
        if !d.visible(u, l) {
            return Err(Error::ConstructionStuck(format!("matching edge {u}-{l} is blocked")));
        }
        d.g.insert(u, l);
    }
    let m_lower: Vec<usize> = input.m_lower.iter().map(|&v| d.lower(v)).collect();
    for &u in input.marks.difference(&input.chosen) {
        d.join_first(u, m_lower.iter().copied(), "unmatched mark")?;
    }
    let marks_rtl: Vec<usize> = input.marks.iter().rev().copied().collect();

    match input.variant {
        Variant::Tree => {
            for comp in input.lower.components() {
                if comp.iter().any(|v| input.m_lower.contains(v)) {
                    continue;
                }
                d.join_first(d.lower(comp[0]), marks_rtl.iter().copied(), "lower component")?;
            }
            let mut comps: Vec<(usize, Vec<usize>)> = d
                .g
                .components()
                .into_iter()
                .map(|c| {
                    let lead = *c.iter().find(|v| input.marks.contains(v)).expect("every component has a mark");
                    (lead, c)
                })
                .collect();
            comps.sort();
            for w in comps.windows(2) {
                let (lead, prev) = (w[1].0, &w[0].1);
                let targets: Vec<usize> = m_lower.iter().rev().filter(|v| prev.contains(v)).copied().collect();
                d.join_first(lead, targets.into_iter(), "joining components")?;
            }
        }
        Variant::Forest => {
            for &v in &input.extras {
                d.join_first(d.lower(v), marks_rtl.iter().copied(), "isolated lower vertex")?;
            }
        }
        Variant::NoIsoForest => {
            for v in 0..n {
                let l = d.lower(v);
                if d.g.degree(l) == 0 {
                    d.join_first(l, marks_rtl.iter().copied(), "isolated lower vertex")?;
                }
            }
        }
    }
    Ok(d.g)
}

/// Reads the construction data back off a graph on the double chain:
/// marks are the upper vertices with interior edges, each mark's
/// rightmost interior edge is its representative, and the leftmost mark
/// of each group of representatives sharing a lower endpoint is matched.
pub fn decode(variant: Variant, n: usize, g: &EdgeSet) -> ConstructionInput {
    let mut upper = EdgeSet::new(n);
    let mut lower = EdgeSet::new(n);
    let mut rightmost: BTreeMap<usize, usize> = BTreeMap::new();
    let mut lower_hit = BTreeSet::new();
    for (a, b) in g.edges() {
        match (a < n, b < n) {
            (true, true) => {
                upper.insert(a, b);
            }
            (false, false) => {
                lower.insert(a - n, b - n);
            }
            _ => {
                let (u, l) = (a.min(b), a.max(b) - n);
                lower_hit.insert(l);
                let r = rightmost.entry(u).or_insert(l);
                *r = (*r).max(l);
            }
        }
    }
    let marks: BTreeSet<usize> = rightmost.keys().copied().collect();
    let mut groups: BTreeMap<usize, usize> = BTreeMap::new();
    for (&u, &l) in &rightmost {
        groups.entry(l).or_insert(u);
    }
    let chosen = groups.values().copied().collect();
    let m_lower = groups.keys().copied().collect();
    let extras = match variant {
        Variant::Tree => BTreeSet::new(),
        Variant::Forest => lower_hit.into_iter().filter(|&v| lower.degree(v) == 0).collect(),
        Variant::NoIsoForest => (0..n).filter(|&v| upper.degree(v) == 0).collect(),
    };
    ConstructionInput {
        variant,
        n,
        upper,
        marks,
        chosen,
        lower,
        m_lower,
        extras,
    }
}

impl ConstructionInput {
    /// The built graph decodes to this input, i.e. the construction
    /// realizes the structure its data describes.
    pub fn is_canonical(&self) -> bool {
        build_from_data(self).is_ok_and(|g| decode(self.variant, self.n, &g) == *self)
    }
}

/// Does the output have the shape the variant promises?
pub fn is_valid_output(variant: Variant, n: usize, g: &EdgeSet) -> Result<bool> {
    let ps = make_double_chain(n)?;
    let ok = g.is_crossing_free(&ps)
        && match variant {
            Variant::Tree => g.is_spanning_tree(),
            Variant::Forest => g.is_forest(),
            Variant::NoIsoForest => g.is_forest() && !g.has_isolated_vertex(),
        };
    Ok(ok)
}

fn subsets(items: &[usize], k: usize) -> impl Iterator<Item = BTreeSet<usize>> + '_ {
    items.iter().copied().combinations(k).map(|c| c.into_iter().collect())
}

/// Every valid input of a variant on chains of `n` points with at most
/// `max_k` matched marks (and, for the forest variants, at most `max_k`
/// extra vertices).
pub fn enumerate_inputs(variant: Variant, n: usize, max_k: usize) -> Result<Vec<ConstructionInput>> {
    if n > MAX_CAP {
        return Err(Error::OracleTooLarge { points: n, cap: MAX_CAP });
    }
    let forests = enumerate_forests(&make_convex(n), MAX_CAP)?;
    let all: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for upper in &forests {
        let comps = upper.components();
        // one optional mark per component; the tree variant marks all of them
        let per_comp: Vec<Vec<Option<usize>>> = comps
            .iter()
            .map(|c| {
                let mut opts: Vec<Option<usize>> = c.iter().map(|&v| Some(v)).collect();
                let forced = match variant {
                    Variant::Tree => true,
                    Variant::Forest => false,
                    Variant::NoIsoForest => c.len() == 1,
                };
                if !forced {
                    opts.push(None);
                }
                opts
            })
            .collect();
        let extras_upper: BTreeSet<usize> = comps.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
        if variant == Variant::NoIsoForest && extras_upper.len() > max_k {
            continue;
        }
        for choice in per_comp.into_iter().multi_cartesian_product() {
            let marks: BTreeSet<usize> = choice.into_iter().flatten().collect();
            let mark_list: Vec<usize> = marks.iter().copied().collect();
            for k in 0..=max_k.min(marks.len()) {
                for chosen in subsets(&mark_list, k) {
                    for lower in &forests {
                        let pool: Vec<usize> = match variant {
                            Variant::Forest => all.iter().copied().filter(|&v| lower.degree(v) > 0).collect(),
                            _ => all.clone(),
                        };
                        let isolated: Vec<usize> = all.iter().copied().filter(|&v| lower.degree(v) == 0).collect();
                        for m_lower in subsets(&pool, k) {
                            let extra_sets: Vec<BTreeSet<usize>> = match variant {
                                Variant::Tree => vec![BTreeSet::new()],
                                Variant::Forest => {
                                    (0..=max_k.min(isolated.len())).flat_map(|m| subsets(&isolated, m)).collect()
                                }
                                Variant::NoIsoForest => vec![extras_upper.clone()],
                            };
                            for extras in extra_sets {
                                let input = ConstructionInput {
                                    variant,
                                    n,
                                    upper: upper.clone(),
                                    marks: marks.clone(),
                                    chosen: chosen.clone(),
                                    lower: lower.clone(),
                                    m_lower: m_lower.clone(),
                                    extras,
                                };
                                if input.validate().is_ok() {
                                    out.push(input);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of running a variant over all of its small inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionCheck {
    pub variant: Variant,
    pub n: usize,
    pub max_k: usize,
    /// Inputs meeting the static preconditions.
    pub inputs: usize,
    /// Of those, outputs with the promised shape.
    pub valid: usize,
    /// Distinct outputs over all inputs.
    pub distinct: usize,
    /// Inputs whose output decodes back to them.
    pub canonical: usize,
    pub distinct_canonical: usize,
    /// First failing input, if any.
    pub failure: Option<String>,
}

impl ConstructionCheck {
    pub fn sound(&self) -> bool {
        self.failure.is_none() && self.valid == self.inputs
    }

    /// Distinct canonical inputs give distinct graphs.
    pub fn injective(&self) -> bool {
        self.distinct_canonical == self.canonical
    }

    /// Every input, canonical or not, gives its own graph.
    pub fn injective_on_all_inputs(&self) -> bool {
        self.distinct == self.inputs
    }

    pub fn to_json(&self) -> Value {
        json!({
            "variant": self.variant.name(),
            "n": self.n,
            "max_k": self.max_k,
            "inputs": self.inputs,
            "valid": self.valid,
            "distinct": self.distinct,
            "canonical": self.canonical,
            "distinct_canonical": self.distinct_canonical,
            "sound": self.sound(),
            "injective": self.injective(),
            "injective_on_all_inputs": self.injective_on_all_inputs(),
            "failure": self.failure,
        })
    }
}

pub fn check_variant(variant: Variant, n: usize, max_k: usize) -> Result<ConstructionCheck> {
    let inputs = enumerate_inputs(variant, n, max_k)?;
    let mut outputs = BTreeSet::new();
    let mut canonical_outputs = BTreeSet::new();
    let (mut valid, mut canonical) = (0, 0);
    let mut failure = None;
    for input in &inputs {
        match build_from_data(input) {
            Ok(g) => {
                if is_valid_output(variant, n, &g)? {
                    valid += 1;
                } else if failure.is_none() {
                    failure = Some(format!("invalid output for {}", input.to_json()));
                }
                if decode(variant, n, &g) == *input {
                    canonical += 1;
                    canonical_outputs.insert(g.clone());
                }
                outputs.insert(g);
            }
            Err(e) => {
                if failure.is_none() {
                    failure = Some(format!("{e} for {}", input.to_json()));
                }
            }
        }
    }
    Ok(ConstructionCheck {
        variant,
        n,
        max_k,
        inputs: inputs.len(),
        valid,
        distinct: outputs.len(),
        canonical,
        distinct_canonical: canonical_outputs.len(),
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn two_point_tree() {
        let input = ConstructionInput {
            variant: Variant::Tree,
            n: 2,
            upper: EdgeSet::from_edges(2, [(0, 1)]),
            marks: set(&[1]),
            chosen: set(&[1]),
            lower: EdgeSet::from_edges(2, [(0, 1)]),
            m_lower: set(&[0]),
            extras: set(&[]),
        };
        let g = build_from_data(&input).unwrap();
        assert!(g.contains(1, 2));
        assert_eq!(g.len(), 3);
        assert!(is_valid_output(Variant::Tree, 2, &g).unwrap());
    }

    #[test]
    fn unchosen_leftmost_mark_is_rejected() {
        let input = ConstructionInput {
            variant: Variant::Tree,
            n: 2,
            upper: EdgeSet::new(2),
            marks: set(&[0, 1]),
            chosen: set(&[1]),
            lower: EdgeSet::from_edges(2, [(0, 1)]),
            m_lower: set(&[0]),
            extras: set(&[]),
        };
        assert!(input.validate().is_err());
    }

    #[test]
    fn small_chains_are_sound() {
        for variant in Variant::ALL {
            for n in 1..=2 {
                let c = check_variant(variant, n, 2).unwrap();
                assert!(c.sound(), "{c:?}");
            }
        }
    }
}
