//! Matching number `ν`, induced matching number `ν₀`, covering number `β`,
//! each with a witness, and the König–Egerváry test.

use std::collections::VecDeque;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::mis::{count_mis, maximum_independent_set, MisConfig, MisError};
use crate::set::VertexSet;

/// Set of edges `(u, v)` with `u < v`, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(Vec<(usize, usize)>);

impl EdgeSet {
    pub fn new(edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut v: Vec<_> = edges
            .into_iter()
            .map(|(u, w)| if u < w { (u, w) } else { (w, u) })
            .collect();
        v.sort_unstable();
        v.dedup();
        EdgeSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }

    pub fn vertices(&self) -> VertexSet {
        self.iter().flat_map(|(u, v)| [u, v]).collect()
    }

    /// Every pair is an edge of `g` and no two pairs share an endpoint.
    pub fn is_matching_in(&self, g: &Graph) -> bool {
        self.iter().all(|(u, v)| g.has_edge(u, v)) && self.vertices().len() == 2 * self.len()
    }

    /// A matching with no edge of `g` joining two of its edges.
    pub fn is_induced_matching_in(&self, g: &Graph) -> bool {
        self.is_matching_in(g)
            && self.iter().enumerate().all(|(i, (a, b))| {
                self.iter().skip(i + 1).all(|(c, d)| {
                    !(g.has_edge(a, c) || g.has_edge(a, d) || g.has_edge(b, c) || g.has_edge(b, d))
                })
            })
    }
}

/// Maximum matching by Edmonds' blossom algorithm. Roots are tried in
/// increasing order and neighbors scanned in increasing order.
pub fn maximum_matching(g: &Graph) -> EdgeSet {
    const NONE: usize = usize::MAX;
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let mut mate = vec![NONE; n];

    struct Search<'a> {
        adj: &'a [Vec<usize>],
        mate: &'a mut [usize],
        parent: Vec<usize>,
        base: Vec<usize>,
        used: Vec<bool>,
        blossom: Vec<bool>,
    }

    impl Search<'_> {
        fn lca(&self, mut a: usize, mut b: usize) -> usize {
            let mut seen = vec![false; self.mate.len()];
            loop {
                a = self.base[a];
                seen[a] = true;
                if self.mate[a] == NONE {
                    break;
                }
                a = self.parent[self.mate[a]];
            }
            loop {
                b = self.base[b];
                if seen[b] {
                    return b;
                }
                b = self.parent[self.mate[b]];
            }
        }

        fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
            while self.base[v] != b {
                self.blossom[self.base[v]] = true;
                self.blossom[self.base[self.mate[v]]] = true;
                self.parent[v] = child;
                child = self.mate[v];
                v = self.parent[self.mate[v]];
            }
        }

        /// Endpoint of an augmenting path from `root`, if any.
        fn find_path(&mut self, root: usize) -> Option<usize> {
            let n = self.mate.len();
            self.used.iter_mut().for_each(|u| *u = false);
            self.parent.iter_mut().for_each(|p| *p = NONE);
            for (i, b) in self.base.iter_mut().enumerate() {
                *b = i;
            }
            self.used[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &to in &self.adj[v] {
                    if self.base[v] == self.base[to] || self.mate[v] == to {
                        continue;
                    }
                    if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                        let cur = self.lca(v, to);
                        self.blossom.iter_mut().for_each(|b| *b = false);
                        self.mark_path(v, cur, to);
                        self.mark_path(to, cur, v);
                        for i in 0..n {
                            if self.blossom[self.base[i]] {
                                self.base[i] = cur;
                                if !self.used[i] {
                                    self.used[i] = true;
                                    queue.push_back(i);
                                }
                            }
                        }
                    } else if self.parent[to] == NONE {
                        self.parent[to] = v;
                        if self.mate[to] == NONE {
                            return Some(to);
                        }
                        let next = self.mate[to];
                        self.used[next] = true;
                        queue.push_back(next);
                    }
                }
            }
            None
        }
    }

    let mut search = Search {
        adj: &adj,
        mate: &mut mate,
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        blossom: vec![false; n],
    };
    for root in 0..n {
        if search.mate[root] != NONE {
            continue;
        }
        if let Some(mut v) = search.find_path(root) {
            while v != NONE {
                let pv = search.parent[v];
                let ppv = search.mate[pv];
                search.mate[v] = pv;
                search.mate[pv] = v;
                v = ppv;
            }
        }
    }
    EdgeSet::new(
        mate.iter()
            .enumerate()
            .filter(|&(v, &m)| m != NONE && v < m)
            .map(|(v, &m)| (v, m)),
    )
}

/// `ν(G)` with a maximum matching.
pub fn matching_number(g: &Graph) -> (usize, EdgeSet) {
    let m = maximum_matching(g);
    (m.len(), m)
}

/// `ν₀(G)` with a maximum induced matching.
///
/// Branch and bound over the edges sorted by endpoint degree sum (then
/// lexicographically). Taking an edge `uv` removes every edge touching
/// `N[u] ∪ N[v]`; a branch is cut when the remaining edges and free
/// vertices cannot beat the incumbent.
pub fn induced_matching_number(g: &Graph) -> (usize, EdgeSet) {
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.sort_by_key(|&(u, v)| (g.degree(u) + g.degree(v), u, v));
    let blocks: Vec<VertexSet> = edges
        .iter()
        .map(|&(u, v)| g.closed_neighborhood(u).union(&g.closed_neighborhood(v)))
        .collect();

    fn bound(edges: &[(usize, usize)], avail: &[usize]) -> usize {
        let touched: VertexSet = avail
            .iter()
            .flat_map(|&i| [edges[i].0, edges[i].1])
            .collect();
        avail.len().min(touched.len() / 2)
    }

    fn search(
        edges: &[(usize, usize)],
        blocks: &[VertexSet],
        avail: &[usize],
        current: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if avail.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        if current.len() + bound(edges, avail) <= best.len() {
            return;
        }
        let (first, rest) = (avail[0], &avail[1..]);
        let block = &blocks[first];
        let compatible: Vec<usize> = rest
            .iter()
            .copied()
            .filter(|&i| !block.contains(edges[i].0) && !block.contains(edges[i].1))
            .collect();
        current.push(first);
        search(edges, blocks, &compatible, current, best);
        current.pop();
        search(edges, blocks, rest, current, best);
    }

    let avail: Vec<usize> = (0..edges.len()).collect();
    let mut best = Vec::new();
    search(&edges, &blocks, &avail, &mut Vec::new(), &mut best);
    let witness = EdgeSet::new(best.iter().map(|&i| edges[i]));
    (witness.len(), witness)
}

/// `β(G) = n − α(G)`, with the complement of a maximum independent set as
/// the minimum cover.
pub fn covering_number(g: &Graph) -> (usize, VertexSet) {
    let cover = g.vertices().difference(&maximum_independent_set(g));
    (cover.len(), cover)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoenigVerdict {
    pub beta: usize,
    pub nu: usize,
    pub is_koenig_egervary: bool,
}

pub fn is_koenig_egervary(g: &Graph) -> KoenigVerdict {
    let (beta, _) = covering_number(g);
    let (nu, _) = matching_number(g);
    KoenigVerdict {
        beta,
        nu,
        is_koenig_egervary: beta == nu,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantBundle {
    pub n: usize,
    #[serde(with = "crate::serde_big")]
    pub m: BigUint,
    pub alpha: usize,
    pub beta: usize,
    pub nu: usize,
    pub nu0: usize,
    pub cover: VertexSet,
    pub matching: EdgeSet,
    pub induced_matching: EdgeSet,
}

impl InvariantBundle {
    /// Checks the bundle's internal relations and certificates against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let checks = [
            (self.n == g.n(), "n mismatch"),
            (self.nu0 <= self.nu, "nu0 > nu"),
            (self.nu <= self.beta, "nu > beta"),
            (self.alpha + self.beta == self.n, "alpha + beta != n"),
            (self.cover.len() == self.beta, "cover size != beta"),
            (g.is_vertex_cover(&self.cover), "cover misses an edge"),
            (self.matching.len() == self.nu, "matching size != nu"),
            (self.matching.is_matching_in(g), "matching is invalid"),
            (
                self.induced_matching.len() == self.nu0,
                "induced matching size != nu0",
            ),
            (
                self.induced_matching.is_induced_matching_in(g),
                "induced matching is invalid",
            ),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            Some((_, msg)) => Err(msg.to_string()),
            None => Ok(()),
        }
    }
}

pub fn full_bundle(g: &Graph, config: &MisConfig) -> Result<InvariantBundle, MisError> {
    let m = count_mis(g, config)?.count;
    let (beta, cover) = covering_number(g);
    let (nu, matching) = matching_number(g);
    let (nu0, induced_matching) = induced_matching_number(g);
    Ok(InvariantBundle {
        n: g.n(),
        m,
        alpha: g.n() - beta,
        beta,
        nu,
        nu0,
        cover,
        matching,
        induced_matching,
    })
}
