//! Simple undirected graphs on dense vertex indices `0..n`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {v} is outside 0..{n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("line {line}: {message}")]
    EdgeListSyntax { line: usize, message: String },
    #[error("{0}")]
    InvalidFamily(String),
}

/// Simple undirected graph stored as one neighbor bitset per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<VertexSet>,
}

/// Relabeling produced by the subgraph operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    new_to_old: Vec<usize>,
    old_to_new: Vec<Option<usize>>,
}

impl VertexMap {
    fn from_kept(old_n: usize, kept: &VertexSet) -> Self {
        let new_to_old = kept.to_vec();
        let mut old_to_new = vec![None; old_n];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        VertexMap {
            new_to_old,
            old_to_new,
        }
    }

    pub fn old(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    pub fn new_index(&self, old: usize) -> Option<usize> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.new_to_old.len()
    }

    pub fn is_empty(&self) -> bool {
        self.new_to_old.is_empty()
    }

    /// Original labels, indexed by new label.
    pub fn originals(&self) -> &[usize] {
        &self.new_to_old
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub a: VertexSet,
    pub b: VertexSet,
}

/// Odd closed walk `cycle[0] - cycle[1] - ... - cycle[k-1] - cycle[0]` with `k` odd.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCycle(pub Vec<usize>);

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![VertexSet::new(); n],
        }
    }

    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(GraphError::EndpointOutOfRange { u, v, n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        Ok(())
    }

    /// Parses the edge-list text format: an optional first line holding the
    /// vertex count, then one `u v` pair per line. Lines starting with `#`
    /// are comments. Without a header the vertex count is one more than the
    /// largest endpoint.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut declared = None;
        let mut edges = Vec::new();
        let mut seen_content = false;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |message: String| GraphError::EdgeListSyntax {
                line: i + 1,
                message,
            };
            let fields = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| syntax(format!("expected a vertex index, found {t:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            match fields[..] {
                [n] if !seen_content => declared = Some(n),
                [u, v] => edges.push((u, v)),
                _ => return Err(syntax(format!("expected \"u v\", found {line:?}"))),
            }
            seen_content = true;
        }
        let n =
            declared.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
        Graph::from_edge_list(n, &edges)
    }

    /// Edge-list text with a vertex-count header.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.adjacency[v].clone();
        s.insert(v);
        s
    }

    /// `N(S)`: vertices outside `s` adjacent to some member of `s`.
    pub fn neighborhood(&self, s: &VertexSet) -> VertexSet {
        self.closed_neighborhood_of(s).difference(s)
    }

    /// `N[S] = S ∪ N(S)`.
    pub fn closed_neighborhood_of(&self, s: &VertexSet) -> VertexSet {
        let mut out = s.clone();
        for v in s {
            out.union_with(&self.adjacency[v]);
        }
        out
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Degree of `v` in the subgraph induced by `live`.
    #[inline]
    pub fn degree_within(&self, v: usize, live: &VertexSet) -> usize {
        self.adjacency[v].intersection_len(live)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].contains(v)
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adjacency[v].is_disjoint(s))
    }

    /// Independent and not extendable by any outside vertex.
    pub fn is_maximal_independent(&self, s: &VertexSet) -> bool {
        self.is_independent(s)
            && (0..self.n()).all(|v| s.contains(v) || !self.adjacency[v].is_disjoint(s))
    }

    pub fn is_vertex_cover(&self, s: &VertexSet) -> bool {
        self.edges().all(|(u, v)| s.contains(u) || s.contains(v))
    }

    fn check_members(&self, s: &VertexSet) -> Result<(), GraphError> {
        let n = self.n();
        match s.upper_bound() {
            ub if ub > n => Err(GraphError::VertexOutOfRange { v: ub - 1, n }),
            _ => Ok(()),
        }
    }

    fn induced_unchecked(&self, s: &VertexSet) -> (Graph, VertexMap) {
        let map = VertexMap::from_kept(self.n(), s);
        let adjacency = map
            .originals()
            .iter()
            .map(|&old| {
                self.adjacency[old]
                    .intersection(s)
                    .iter()
                    .filter_map(|w| map.new_index(w))
                    .collect()
            })
            .collect();
        (Graph { adjacency }, map)
    }

    /// `G[S]`, relabeled to `0..|S|` preserving vertex order.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, VertexMap), GraphError> {
        self.check_members(s)?;
        Ok(self.induced_unchecked(s))
    }

    /// `G_S = G \ N[S]`.
    pub fn localization(&self, s: &VertexSet) -> Result<(Graph, VertexMap), GraphError> {
        self.check_members(s)?;
        let keep = self.vertices().difference(&self.closed_neighborhood_of(s));
        Ok(self.induced_unchecked(&keep))
    }

    /// `G \ U`.
    pub fn remove_vertices(&self, u: &VertexSet) -> Result<(Graph, VertexMap), GraphError> {
        self.check_members(u)?;
        Ok(self.induced_unchecked(&self.vertices().difference(u)))
    }

    /// Vertex sets of the connected components of `G[live]`, ordered by
    /// smallest member.
    pub fn components_within(&self, live: &VertexSet) -> Vec<VertexSet> {
        let mut remaining = live.clone();
        let mut out = Vec::new();
        while let Some(start) = remaining.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = VertexSet::singleton(start);
            while !frontier.is_empty() {
                let mut next = VertexSet::new();
                for v in &frontier {
                    next.union_with(&self.adjacency[v]);
                }
                next.intersect_with(live);
                next.difference_with(&comp);
                comp.union_with(&next);
                frontier = next;
            }
            remaining.difference_with(&comp);
            out.push(comp);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<(Graph, VertexMap)> {
        self.components_within(&self.vertices())
            .iter()
            .map(|c| self.induced_unchecked(c))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components_within(&self.vertices()).len() <= 1
    }

    /// Two-coloring by breadth-first search. Each component's smallest vertex
    /// goes to side `a`, so isolated vertices land in `a`.
    pub fn bipartition(&self) -> Result<Bipartition, OddCycle> {
        let n = self.n();
        let mut side: Vec<Option<bool>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        for root in 0..n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let sv = side[v].unwrap();
                for w in &self.adjacency[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            parent[w] = v;
                            depth[w] = depth[v] + 1;
                            queue.push_back(w);
                        }
                        Some(sw) if sw == sv => {
                            return Err(odd_cycle(&parent, &depth, v, w));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let mut a = VertexSet::new();
        let mut b = VertexSet::new();
        for (v, s) in side.into_iter().enumerate() {
            if s == Some(false) {
                a.insert(v);
            } else {
                b.insert(v);
            }
        }
        Ok(Bipartition { a, b })
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_ok()
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut adjacency = self.adjacency.clone();
        adjacency.extend(
            other
                .adjacency
                .iter()
                .map(|nbrs| nbrs.iter().map(|w| w + shift).collect()),
        );
        Graph { adjacency }
    }

    /// Checks symmetry, loop-freeness and index range of the adjacency.
    pub fn is_well_formed(&self) -> bool {
        let n = self.n();
        self.adjacency.iter().enumerate().all(|(v, nbrs)| {
            nbrs.upper_bound() <= n
                && !nbrs.contains(v)
                && nbrs.iter().all(|w| self.adjacency[w].contains(v))
        })
    }
}

// Tree paths from `u` and `w` up to their lowest common ancestor, joined by
// the non-tree edge `uw`. Both ends sit on the same side, so the length is odd.
fn odd_cycle(parent: &[usize], depth: &[usize], u: usize, w: usize) -> OddCycle {
    let (mut x, mut y) = (u, w);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        right.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        left.push(x);
        right.push(y);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    OddCycle(left)
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?})",
            self.n(),
            self.edges().collect::<Vec<_>>()
        )
    }
}
