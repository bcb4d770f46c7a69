//! Weighted dual graphs of SNC divisors: chains, trees, discriminants,
//! definiteness, structural classification and blow-down contraction.
//!
//! Conventions used throughout the crate:
//! - A [`Chain`] stores `w_i = -(self-intersection)` of its components, so
//!   `[2,1,3]` is a chain of curves with self-intersections -2, -1, -3.
//!   The FIRST entry is the tip; orientation matters, `[2,3] != [3,2]`.
//! - A [`DualGraph`] stores raw self-intersections on its vertices. The JSON
//!   schema is `{"vertices":[{"id":..,"weight":..}],"edges":[[a,b]],"marks":..}`
//!   where `weight` is the self-intersection.
//! - The discriminant `d(T)` is `det(-Q(T))` for the intersection matrix `Q`,
//!   with `d(0) = 1` for the empty divisor.

use crate::numeric::{determinant, int, leading_minors, Int};
use crate::{Error, Result};
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

/// An ordered chain of rational curves, stored as `w_i = -(self-intersection)`
/// with the tip first. The empty chain represents the zero divisor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Chain(Vec<i64>);

impl Chain {
    pub fn new(weights: Vec<i64>) -> Self {
        Chain(weights)
    }

    /// The chain `(m)_p`: `m` repeated `p` times.
    pub fn repeated(m: i64, p: usize) -> Self {
        Chain(vec![m; p])
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Chain {
        let mut w = self.0.clone();
        w.reverse();
        Chain(w)
    }

    /// Concatenate two chains end to end.
    pub fn concat(&self, other: &Chain) -> Chain {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Chain(w)
    }

    /// The chain with the tip (first component) removed.
    pub fn without_tip(&self) -> Chain {
        Chain(self.0.iter().skip(1).copied().collect())
    }

    /// Discriminant `d(T) = det(-Q(T))` via the two-term linear recursion
    /// `d_k = w_k d_{k-1} - d_{k-2}`. The empty chain yields 1.
    pub fn discriminant(&self) -> Int {
        let mut prev = Int::zero(); // d of chain of length -1
        let mut cur = Int::one(); // d of empty chain
        for &w in &self.0 {
            let next = int(w) * &cur - &prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Discriminants of all prefixes `[w_1..w_k]` for `k = 1..=len`.
    pub fn prefix_discriminants(&self) -> Vec<Int> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut prev = Int::zero();
        let mut cur = Int::one();
        for &w in &self.0 {
            let next = int(w) * &cur - &prev;
            prev = cur;
            cur = next.clone();
            out.push(next);
        }
        out
    }

    /// True iff `-Q` is positive definite, i.e. all prefix discriminants are
    /// positive. Errors on the empty chain.
    pub fn is_negative_definite(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptyDivisor);
        }
        Ok(self
            .prefix_discriminants()
            .iter()
            .all(|d| d > &Int::zero()))
    }

    /// Build the path graph for this chain, with vertex ids `0..len`.
    pub fn to_graph(&self) -> DualGraph {
        let vertices: Vec<(u32, i64)> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &w)| (i as u32, -w))
            .collect();
        let edges: Vec<(u32, u32)> = (1..self.0.len()).map(|i| (i as u32 - 1, i as u32)).collect();
        DualGraph::new(vertices, edges).expect("a path graph is always valid")
    }

    /// Parse the shorthand `[2,1,3]`. Whitespace is ignored; `[]` is allowed.
    pub fn parse(s: &str) -> Result<Chain> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("chain shorthand must look like [2,1,3], got {s:?}")))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Chain::new(vec![]));
        }
        let weights = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad chain entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Chain(weights))
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Optional designated vertices of a graph: the distinguished (-1)-curve of a
/// cusp resolution and the proper-transform curve `E`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Marks {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub minus_one: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub curve: Option<u32>,
}

/// A weighted simple graph of rational curves. Vertices carry raw
/// self-intersections; edges are unordered pairs (SNC: at most one transverse
/// intersection point per pair of components).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    ids: Vec<u32>,
    self_int: BTreeMap<u32, i64>,
    edges: BTreeSet<(u32, u32)>,
    pub marks: Marks,
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: u32,
    weight: i64,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<VertexJson>,
    edges: Vec<(u32, u32)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    marks: Option<Marks>,
}

impl DualGraph {
    /// Build a graph from `(id, self-intersection)` pairs and undirected
    /// edges. Rejects duplicate ids, self-loops, multi-edges and edges with
    /// unknown endpoints.
    pub fn new(vertices: Vec<(u32, i64)>, edges: Vec<(u32, u32)>) -> Result<Self> {
        let mut ids = Vec::with_capacity(vertices.len());
        let mut self_int = BTreeMap::new();
        for (id, w) in vertices {
            if self_int.insert(id, w).is_some() {
                return Err(Error::Parse(format!("duplicate vertex id {id}")));
            }
            ids.push(id);
        }
        let mut edge_set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Parse(format!("self-loop at vertex {a}")));
            }
            if !self_int.contains_key(&a) || !self_int.contains_key(&b) {
                return Err(Error::Parse(format!("edge ({a},{b}) references unknown vertex")));
            }
            let e = (a.min(b), a.max(b));
            if !edge_set.insert(e) {
                return Err(Error::Parse(format!("multi-edge ({a},{b}) violates SNC")));
            }
        }
        Ok(DualGraph {
            ids,
            self_int,
            edges: edge_set,
            marks: Marks::default(),
        })
    }

    pub fn empty() -> Self {
        DualGraph::new(vec![], vec![]).unwrap()
    }

    /// Vertex ids in insertion order (the fixed order used for matrices).
    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: u32) -> bool {
        self.self_int.contains_key(&id)
    }

    /// Self-intersection of a vertex.
    pub fn self_int(&self, id: u32) -> i64 {
        self.self_int[&id]
    }

    /// `w = -(self-intersection)`, the chain-style weight.
    pub fn neg_weight(&self, id: u32) -> i64 {
        -self.self_int[&id]
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, id: u32) -> Vec<u32> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == id {
                    Some(b)
                } else if b == id {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, id: u32) -> usize {
        self.neighbors(id).len()
    }

    /// Fresh id strictly larger than every existing one.
    pub fn fresh_id(&self) -> u32 {
        self.ids.iter().copied().max().map_or(0, |m| m + 1)
    }

    fn dfs_order(&self) -> Vec<u32> {
        let mut order = Vec::with_capacity(self.ids.len());
        let mut seen = BTreeSet::new();
        let mut sorted_ids = self.ids.clone();
        sorted_ids.sort_unstable();
        for &start in &sorted_ids {
            if seen.contains(&start) {
                continue;
            }
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if !seen.insert(v) {
                    continue;
                }
                order.push(v);
                let mut nb = self.neighbors(v);
                nb.sort_unstable_by(|a, b| b.cmp(a));
                stack.extend(nb.into_iter().filter(|n| !seen.contains(n)));
            }
        }
        order
    }

    /// The negated intersection matrix `-Q` in the given vertex order.
    /// Diagonal entries are `-v^2`, off-diagonal entries are `-1` per edge.
    pub fn neg_intersection_matrix(&self, order: &[u32]) -> Vec<Vec<Int>> {
        let pos: BTreeMap<u32, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = order.len();
        let mut m = vec![vec![Int::zero(); n]; n];
        for (i, &v) in order.iter().enumerate() {
            m[i][i] = int(-self.self_int(v));
        }
        for &(a, b) in &self.edges {
            let (i, j) = (pos[&a], pos[&b]);
            m[i][j] = int(-1);
            m[j][i] = int(-1);
        }
        m
    }

    /// Discriminant `d(T) = det(-Q(T))`, exact. The empty graph yields 1.
    pub fn discriminant(&self) -> Int {
        determinant(&self.neg_intersection_matrix(&self.ids))
    }

    /// True iff the intersection matrix is negative definite, i.e. all
    /// leading principal minors of `-Q` are positive in a fixed DFS vertex
    /// order. Definiteness does not depend on the order; a property test
    /// guards that.
    pub fn is_negative_definite(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptyDivisor);
        }
        let order = self.dfs_order();
        let minors = leading_minors(&self.neg_intersection_matrix(&order));
        Ok(minors.len() == order.len() && minors.iter().all(|m| m > &Int::zero()))
    }

    /// Definiteness computed in an arbitrary caller-supplied vertex order;
    /// used by the order-invariance property test.
    pub fn is_negative_definite_in_order(&self, order: &[u32]) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptyDivisor);
        }
        if order.len() != self.ids.len() {
            return Err(Error::InvalidArgument("order must list every vertex once".into()));
        }
        let minors = leading_minors(&self.neg_intersection_matrix(order));
        Ok(minors.len() == order.len() && minors.iter().all(|m| m > &Int::zero()))
    }

    pub fn connected_components(&self) -> Vec<BTreeSet<u32>> {
        let mut comps = Vec::new();
        let mut seen = BTreeSet::new();
        for &start in &self.ids {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                if !seen.insert(v) {
                    continue;
                }
                comp.insert(v);
                queue.extend(self.neighbors(v));
            }
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.is_connected() && self.edges.len() == self.ids.len() - 1
    }

    /// Branching number of a reduced subdivisor: `beta_T(R) = R . (T - R)`,
    /// the number of edges between `r` and its complement.
    pub fn branching_number(&self, r: &BTreeSet<u32>) -> Result<i64> {
        if !r.iter().all(|v| self.contains(*v)) {
            return Err(Error::InvalidArgument("subdivisor references unknown vertex".into()));
        }
        Ok(self
            .edges
            .iter()
            .filter(|(a, b)| r.contains(a) != r.contains(b))
            .count() as i64)
    }

    /// `K . r`, `r^2` and the arithmetic genus of a reduced subdivisor of a
    /// rational tree. `K . C = -C^2 - 2` per component; `p_a` is normalized so
    /// every connected rational tree has `p_a = 0`.
    pub fn canonical_pairing(&self, r: &BTreeSet<u32>) -> Result<Pairing> {
        if !r.iter().all(|v| self.contains(*v)) {
            return Err(Error::InvalidArgument("subdivisor references unknown vertex".into()));
        }
        let k_dot: i64 = r.iter().map(|&v| -self.self_int(v) - 2).sum();
        let internal_edges = self
            .edges
            .iter()
            .filter(|(a, b)| r.contains(a) && r.contains(b))
            .count() as i64;
        let self_int: i64 = r.iter().map(|&v| self.self_int(v)).sum::<i64>() + 2 * internal_edges;
        let sub = self.induced_subgraph(r);
        let components = sub.connected_components().len() as i64;
        let p_a = (k_dot + self_int) / 2 + components;
        debug_assert_eq!((k_dot + self_int) % 2, 0);
        Ok(Pairing { k_dot, self_int, p_a })
    }

    /// The subgraph induced on a vertex set (marks are dropped).
    pub fn induced_subgraph(&self, r: &BTreeSet<u32>) -> DualGraph {
        let vertices: Vec<(u32, i64)> = self
            .ids
            .iter()
            .filter(|v| r.contains(v))
            .map(|&v| (v, self.self_int(v)))
            .collect();
        let edges: Vec<(u32, u32)> = self
            .edges
            .iter()
            .filter(|(a, b)| r.contains(a) && r.contains(b))
            .copied()
            .collect();
        DualGraph::new(vertices, edges).expect("induced subgraph of a valid graph is valid")
    }

    /// The graph with a vertex set removed.
    pub fn without(&self, removed: &BTreeSet<u32>) -> DualGraph {
        let keep: BTreeSet<u32> = self.ids.iter().filter(|v| !removed.contains(v)).copied().collect();
        self.induced_subgraph(&keep)
    }

    /// Blow down a (-1)-curve with at most two neighbors: the vertex is
    /// removed, each neighbor's self-intersection rises by one, and two
    /// neighbors become adjacent (they meet after the blow-down).
    pub fn contract_once(&self, v: u32) -> Result<DualGraph> {
        if !self.contains(v) {
            return Err(Error::Contraction(format!("unknown vertex {v}")));
        }
        if self.self_int(v) != -1 {
            return Err(Error::Contraction(format!(
                "vertex {v} has self-intersection {}, expected -1",
                self.self_int(v)
            )));
        }
        let nb = self.neighbors(v);
        if nb.len() > 2 {
            return Err(Error::Contraction(
                "contraction of a vertex with three or more neighbors would break SNC".into(),
            ));
        }
        if nb.len() == 2 && self.has_edge(nb[0], nb[1]) {
            return Err(Error::Contraction(
                "neighbors already meet; contraction would create a multi-edge".into(),
            ));
        }
        let vertices: Vec<(u32, i64)> = self
            .ids
            .iter()
            .filter(|&&u| u != v)
            .map(|&u| {
                let bump = if nb.contains(&u) { 1 } else { 0 };
                (u, self.self_int(u) + bump)
            })
            .collect();
        let mut edges: Vec<(u32, u32)> = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .copied()
            .collect();
        if nb.len() == 2 {
            edges.push((nb[0], nb[1]));
        }
        let mut g = DualGraph::new(vertices, edges)?;
        g.marks = self.marks.clone();
        if g.marks.minus_one == Some(v) {
            g.marks.minus_one = None;
        }
        Ok(g)
    }

    /// Whether repeated blow-downs reduce the graph to nothing. Greedy
    /// contraction with backtracking over the eligible vertex at each step;
    /// the answer is order-independent (tested property).
    pub fn contracts_to_point(&self) -> bool {
        fn go(g: &DualGraph) -> bool {
            if g.is_empty() {
                return true;
            }
            let eligible: Vec<u32> = g
                .ids
                .iter()
                .filter(|&&v| g.self_int(v) == -1 && g.degree(v) <= 2)
                .copied()
                .collect();
            for v in eligible {
                if let Ok(next) = g.contract_once(v) {
                    if go(&next) {
                        return true;
                    }
                }
            }
            false
        }
        go(self)
    }

    /// If this graph is a path, return it as a chain starting from one of its
    /// tips (the tip with the smaller vertex id, for determinism).
    pub fn as_chain(&self) -> Option<Chain> {
        if self.is_empty() {
            return Some(Chain::default());
        }
        if !self.is_tree() {
            return None;
        }
        if self.len() == 1 {
            return Some(Chain::new(vec![self.neg_weight(self.ids[0])]));
        }
        let mut tips: Vec<u32> = self.ids.iter().filter(|&&v| self.degree(v) == 1).copied().collect();
        if tips.len() != 2 || self.ids.iter().any(|&v| self.degree(v) > 2) {
            return None;
        }
        tips.sort_unstable();
        let mut order = vec![tips[0]];
        let mut prev = None;
        while order.len() < self.len() {
            let cur = *order.last().unwrap();
            let next = self.neighbors(cur).into_iter().find(|&n| Some(n) != prev)?;
            prev = Some(cur);
            order.push(next);
        }
        Some(Chain::new(order.into_iter().map(|v| self.neg_weight(v)).collect()))
    }

    pub fn to_json(&self) -> String {
        let json = GraphJson {
            vertices: self
                .ids
                .iter()
                .map(|&id| VertexJson { id, weight: self.self_int(id) })
                .collect(),
            edges: self.edges.iter().copied().collect(),
            marks: if self.marks == Marks::default() { None } else { Some(self.marks.clone()) },
        };
        serde_json::to_string(&json).expect("graph serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<DualGraph> {
        let json: GraphJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
        let mut g = DualGraph::new(
            json.vertices.into_iter().map(|v| (v.id, v.weight)).collect(),
            json.edges,
        )?;
        if let Some(marks) = json.marks {
            for (name, m) in [("minus_one", marks.minus_one), ("curve", marks.curve)] {
                if let Some(id) = m {
                    if !g.contains(id) {
                        return Err(Error::Parse(format!("mark {name} references unknown vertex {id}")));
                    }
                }
            }
            g.marks = marks;
        }
        Ok(g)
    }

    /// Parse either the chain shorthand `[2,1,3]` or a JSON graph object.
    pub fn parse(s: &str) -> Result<DualGraph> {
        let t = s.trim_start();
        if t.starts_with('{') {
            DualGraph::from_json(s)
        } else {
            Ok(Chain::parse(s)?.to_graph())
        }
    }
}

/// Result of [`DualGraph::canonical_pairing`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pairing {
    pub k_dot: i64,
    pub self_int: i64,
    pub p_a: i64,
}

/// A maximal twig: a chain hanging off a branching component, listed tip
/// first together with the vertex ids realizing it (tip first as well).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twig {
    pub vertices: Vec<u32>,
    pub chain: Chain,
    /// The branching vertex this twig is attached to.
    pub attached_to: u32,
}

/// Structural classification of a tree: tips, branching components, the
/// maximal twigs and all branching numbers.
#[derive(Clone, Debug)]
pub struct Classification {
    pub tips: BTreeSet<u32>,
    pub branching: BTreeSet<u32>,
    pub maximal_twigs: Vec<Twig>,
    pub branching_numbers: BTreeMap<u32, i64>,
    /// True when the whole tree is a chain; in that case there are no
    /// maximal twigs in the branching-component sense.
    pub is_chain: bool,
}

impl DualGraph {
    /// Classify a tree into tips (`beta = 1`), branching components
    /// (`beta >= 3`) and maximal twigs, each twig oriented tip first.
    pub fn classify(&self) -> Result<Classification> {
        if !self.is_tree() {
            return Err(Error::NotATree("classification requires a connected acyclic graph".into()));
        }
        let branching_numbers: BTreeMap<u32, i64> =
            self.ids.iter().map(|&v| (v, self.degree(v) as i64)).collect();
        let tips: BTreeSet<u32> = branching_numbers
            .iter()
            .filter(|(_, &b)| b == 1)
            .map(|(&v, _)| v)
            .collect();
        let branching: BTreeSet<u32> = branching_numbers
            .iter()
            .filter(|(_, &b)| b >= 3)
            .map(|(&v, _)| v)
            .collect();
        let is_chain = branching.is_empty();
        let mut maximal_twigs = Vec::new();
        if !is_chain {
            let mut sorted_tips: Vec<u32> = tips.iter().copied().collect();
            sorted_tips.sort_unstable();
            for tip in sorted_tips {
                // Walk inward from the tip until the first branching vertex.
                let mut vertices = vec![tip];
                let mut prev = None;
                let mut cur = tip;
                let attached_to = loop {
                    let next = self
                        .neighbors(cur)
                        .into_iter()
                        .find(|&n| Some(n) != prev)
                        .expect("walk from a tip of a non-chain tree reaches a branching vertex");
                    if branching.contains(&next) {
                        break next;
                    }
                    vertices.push(next);
                    prev = Some(cur);
                    cur = next;
                };
                let chain = Chain::new(vertices.iter().map(|&v| self.neg_weight(v)).collect());
                maximal_twigs.push(Twig { vertices, chain, attached_to });
            }
        }
        Ok(Classification {
            tips,
            branching,
            maximal_twigs,
            branching_numbers,
            is_chain,
        })
    }
}

/// Check the determinant gluing formula on a one-edge join `s0 -- t0`:
/// `d(S+T) = d(S)d(T) - d(S-S0)d(T-T0)`.
///
/// `s` and `t` are treated as disjoint divisors; `t`'s vertex ids are
/// relabeled internally so they cannot clash with `s`.
pub fn check_det_formula(s: &DualGraph, t: &DualGraph, s0: u32, t0: u32) -> Result<bool> {
    if !s.contains(s0) {
        return Err(Error::InvalidArgument(format!("s0 = {s0} is not a vertex of s")));
    }
    if !t.contains(t0) {
        return Err(Error::InvalidArgument(format!("t0 = {t0} is not a vertex of t")));
    }
    let offset = s.fresh_id();
    let mut vertices: Vec<(u32, i64)> = s.ids().iter().map(|&v| (v, s.self_int(v))).collect();
    vertices.extend(t.ids().iter().map(|&v| (v + offset, t.self_int(v))));
    let mut edges: Vec<(u32, u32)> = s.edges().collect();
    edges.extend(t.edges().map(|(a, b)| (a + offset, b + offset)));
    // The join edge; DualGraph::new rejects it if it would duplicate an edge.
    edges.push((s0, t0 + offset));
    let joined = DualGraph::new(vertices, edges)?;

    let lhs = joined.discriminant();
    let ds = s.discriminant();
    let dt = t.discriminant();
    let ds_minus = s.without(&BTreeSet::from([s0])).discriminant();
    let dt_minus = t.without(&BTreeSet::from([t0])).discriminant();
    Ok(lhs == ds * dt - ds_minus * dt_minus)
}

/// Convenience: discriminant of a parsed chain-or-graph argument.
pub fn discriminant_of(input: &str) -> Result<Int> {
    Ok(DualGraph::parse(input)?.discriminant())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(w: &[i64]) -> Chain {
        Chain::new(w.to_vec())
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(chain(&[]).discriminant(), int(1));
        assert_eq!(chain(&[2]).discriminant(), int(2));
        // d([(2)_k, 3]) = 2k + 3 for k = 0..5
        for k in 0..=5 {
            let mut w = vec![2; k];
            w.push(3);
            assert_eq!(chain(&w).discriminant(), int(2 * k as i64 + 3));
        }
        assert_eq!(chain(&[2, 1, 3]).discriminant(), int(1));
        assert_eq!(chain(&[5, 2, 1, 3, 2, 2, 3]).discriminant(), int(1));
    }

    #[test]
    fn chain_and_graph_discriminants_agree() {
        for w in [
            vec![2, 1, 3],
            vec![3, 2, 2],
            vec![2, 3],
            vec![5],
            vec![2, 2, 2, 2],
            vec![4, 1, 2, 2, 3],
        ] {
            let c = chain(&w);
            assert_eq!(c.discriminant(), c.to_graph().discriminant(), "chain {c}");
        }
    }

    #[test]
    fn det_formula_tip_join() {
        // S = [2], T = [3] joined at tips: d([2,3]) = 5 = 2*3 - 1*1.
        let s = chain(&[2]).to_graph();
        let t = chain(&[3]).to_graph();
        assert!(check_det_formula(&s, &t, 0, 0).unwrap());
        // Empty S: trivially d(T + 0) = d(T) -- join needs a vertex, so test
        // via a single vertex instead (the S = S0 special case).
        let s1 = chain(&[4]).to_graph();
        let t1 = chain(&[2, 3, 2]).to_graph();
        for t0 in 0..3 {
            assert!(check_det_formula(&s1, &t1, 0, t0).unwrap());
        }
    }

    #[test]
    fn negative_definiteness() {
        assert!(chain(&[2, 1, 3]).is_negative_definite().unwrap());
        assert!(chain(&[1]).is_negative_definite().unwrap());
        assert!(!chain(&[0]).is_negative_definite().unwrap());
        assert!(!chain(&[2, 1, 2]).is_negative_definite().unwrap());
        assert!(matches!(
            chain(&[]).is_negative_definite(),
            Err(Error::EmptyDivisor)
        ));
        // Graph route agrees.
        assert!(chain(&[2, 1, 3]).to_graph().is_negative_definite().unwrap());
        assert!(!chain(&[2, 1, 2]).to_graph().is_negative_definite().unwrap());
    }

    #[test]
    fn classify_chain_reports_chain() {
        let g = chain(&[2, 1, 3]).to_graph();
        let c = g.classify().unwrap();
        assert!(c.is_chain);
        assert_eq!(c.tips.len(), 2);
        assert!(c.branching.is_empty());
        assert!(c.maximal_twigs.is_empty());
    }

    #[test]
    fn classify_star() {
        // Center id 0 with three leaves.
        let g = DualGraph::new(
            vec![(0, -2), (1, -2), (2, -2), (3, -2)],
            vec![(0, 1), (0, 2), (0, 3)],
        )
        .unwrap();
        let c = g.classify().unwrap();
        assert_eq!(c.tips, BTreeSet::from([1, 2, 3]));
        assert_eq!(c.branching, BTreeSet::from([0]));
        assert_eq!(c.branching_numbers[&0], 3);
        assert_eq!(c.maximal_twigs.len(), 3);
        for t in &c.maximal_twigs {
            assert_eq!(t.chain, chain(&[2]));
            assert_eq!(t.attached_to, 0);
        }
    }

    #[test]
    fn classify_handshake_identity() {
        let g = DualGraph::new(
            vec![(0, -2), (1, -3), (2, -2), (3, -5), (4, -2), (5, -2)],
            vec![(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)],
        )
        .unwrap();
        let c = g.classify().unwrap();
        let sum: i64 = c.branching_numbers.values().map(|b| b - 2).sum();
        assert_eq!(sum, -2);
    }

    #[test]
    fn contract_examples() {
        // [2,1,3] contract middle -> [1,2]
        let g = chain(&[2, 1, 3]).to_graph();
        let h = g.contract_once(1).unwrap();
        assert_eq!(h.as_chain().unwrap(), chain(&[1, 2]));
        // [1] contract -> []
        let g = chain(&[1]).to_graph();
        assert!(g.contract_once(0).unwrap().is_empty());
        // [1,2] contract first -> [1]
        let g = chain(&[1, 2]).to_graph();
        assert_eq!(g.contract_once(0).unwrap().as_chain().unwrap(), chain(&[1]));
        // Errors: wrong weight, too many neighbors.
        let g = chain(&[2, 1, 3]).to_graph();
        assert!(g.contract_once(0).is_err());
        let star = DualGraph::new(
            vec![(0, -1), (1, -2), (2, -2), (3, -2)],
            vec![(0, 1), (0, 2), (0, 3)],
        )
        .unwrap();
        assert!(matches!(star.contract_once(0), Err(Error::Contraction(_))));
    }

    #[test]
    fn contraction_examples() {
        assert!(chain(&[2, 1, 3]).to_graph().contracts_to_point());
        assert!(chain(&[5, 2, 1, 3, 2, 2, 3]).to_graph().contracts_to_point());
        assert!(!chain(&[2, 2]).to_graph().contracts_to_point());
        assert!(chain(&[1]).to_graph().contracts_to_point());
    }

    #[test]
    fn contracts_implies_discriminant_one() {
        for w in [vec![2, 1, 3], vec![3, 1, 2, 3], vec![2, 2, 1, 4], vec![5, 2, 1, 3, 2, 2, 3]] {
            let g = chain(&w).to_graph();
            assert!(g.contracts_to_point());
            assert_eq!(g.discriminant(), int(1));
        }
    }

    #[test]
    fn canonical_pairing_examples() {
        // Single (-1)-vertex.
        let g = chain(&[1]).to_graph();
        let p = g.canonical_pairing(&BTreeSet::from([0])).unwrap();
        assert_eq!(p.k_dot, -1);
        assert_eq!(p.p_a, 0);
        // Full rational tree has p_a = 0.
        let g = chain(&[2, 1, 3]).to_graph();
        let all: BTreeSet<u32> = g.ids().iter().copied().collect();
        let p = g.canonical_pairing(&all).unwrap();
        assert_eq!(p.k_dot, 0); // (2-2) + (1-2) + (3-2)
        assert_eq!(p.p_a, 0);
        // Unknown vertex errors.
        assert!(g.canonical_pairing(&BTreeSet::from([99])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut g = chain(&[2, 1, 3]).to_graph();
        g.marks.minus_one = Some(1);
        let s = g.to_json();
        let h = DualGraph::from_json(&s).unwrap();
        assert_eq!(g, h);
        // Spec schema shape.
        let parsed = DualGraph::from_json(
            r#"{"vertices":[{"id":0,"weight":-2},{"id":1,"weight":-1}],"edges":[[0,1]]}"#,
        )
        .unwrap();
        assert_eq!(parsed.as_chain().unwrap(), chain(&[2, 1]));
        // Shorthand accepted anywhere a graph is expected.
        assert_eq!(DualGraph::parse("[2,1,3]").unwrap().as_chain().unwrap(), chain(&[2, 1, 3]));
    }

    #[test]
    fn rejects_invalid_graphs() {
        assert!(DualGraph::new(vec![(0, -2)], vec![(0, 0)]).is_err());
        assert!(DualGraph::new(vec![(0, -2), (0, -3)], vec![]).is_err());
        assert!(DualGraph::new(vec![(0, -2), (1, -2)], vec![(0, 1), (1, 0)]).is_err());
        assert!(DualGraph::new(vec![(0, -2)], vec![(0, 1)]).is_err());
    }

    #[test]
    fn recursion_matches_matrix_exhaustively_small() {
        // All chains of length <= 4 with weights in [1, 9].
        fn rec(prefix: &mut Vec<i64>, len: usize) {
            if !prefix.is_empty() {
                let c = Chain::new(prefix.clone());
                assert_eq!(c.discriminant(), c.to_graph().discriminant(), "chain {c}");
            }
            if prefix.len() == len {
                return;
            }
            for w in 1..=9 {
                prefix.push(w);
                rec(prefix, len);
                prefix.pop();
            }
        }
        rec(&mut Vec::new(), 4);
    }
}
