//! Brute-force oracles. Everything here works from an adjacency matrix and
//! subset scans, sharing no code path with the library algorithms.

#![allow(dead_code)]

use misx::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Dense {
    pub n: usize,
    pub adj: Vec<u64>,
    pub edges: Vec<(usize, usize)>,
}

impl Dense {
    pub fn of(g: &Graph) -> Self {
        let n = g.n();
        assert!(n <= 20, "oracle graphs must stay tiny");
        let mut adj = vec![0u64; n];
        let mut edges = Vec::new();
        for v in 1..n {
            for u in 0..v {
                if g.has_edge(u, v) {
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                    edges.push((u, v));
                }
            }
        }
        Dense { n, adj, edges }
    }

    pub fn independent(&self, s: u64) -> bool {
        (0..self.n).all(|v| s >> v & 1 == 0 || self.adj[v] & s == 0)
    }

    pub fn maximal_independent(&self, s: u64) -> bool {
        self.independent(s) && (0..self.n).all(|v| s >> v & 1 == 1 || self.adj[v] & s != 0)
    }

    /// Every maximal independent set as a bitmask, ascending.
    pub fn all_mis(&self) -> Vec<u64> {
        (0..1u64 << self.n)
            .filter(|&s| self.maximal_independent(s))
            .collect()
    }

    pub fn alpha(&self) -> usize {
        (0..1u64 << self.n)
            .filter(|&s| self.independent(s))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Minimum vertex cover size by scanning every subset.
    pub fn beta(&self) -> usize {
        (0..1u64 << self.n)
            .filter(|&s| {
                self.edges
                    .iter()
                    .all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1)
            })
            .map(|s| s.count_ones() as usize)
            .min()
            .unwrap_or(0)
    }

    /// `(ν, ν₀)` by scanning every edge subset.
    pub fn matching_numbers(&self) -> (usize, usize) {
        let e = self.edges.len();
        assert!(e <= 24);
        let (mut nu, mut nu0) = (0, 0);
        for mask in 0u64..1 << e {
            let chosen: Vec<(usize, usize)> = (0..e)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| self.edges[i])
                .collect();
            let mut used = 0u64;
            let mut ok = true;
            for &(u, v) in &chosen {
                if used >> u & 1 == 1 || used >> v & 1 == 1 {
                    ok = false;
                    break;
                }
                used |= 1 << u | 1 << v;
            }
            if !ok {
                continue;
            }
            nu = nu.max(chosen.len());
            let induced = chosen.iter().enumerate().all(|(i, &(a, b))| {
                chosen[i + 1..].iter().all(|&(c, d)| {
                    let ends = 1u64 << c | 1 << d;
                    self.adj[a] & ends == 0 && self.adj[b] & ends == 0
                })
            });
            if induced {
                nu0 = nu0.max(chosen.len());
            }
        }
        (nu, nu0)
    }

    pub fn bipartite(&self) -> bool {
        (0..1u64 << self.n).any(|c| {
            self.edges
                .iter()
                .all(|&(u, v)| (c >> u & 1) != (c >> v & 1))
        })
    }

    pub fn m(&self) -> u64 {
        self.all_mis().len() as u64
    }
}

pub fn mask_to_vec(s: u64) -> Vec<usize> {
    (0..64).filter(|v| s >> v & 1 == 1).collect()
}

/// Isomorphism by trying every permutation.
pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    fn extend(g: &Graph, h: &Graph, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = perm.len();
        if k == g.n() {
            return true;
        }
        for img in 0..h.n() {
            if used[img] || g.degree(k) != h.degree(img) {
                continue;
            }
            if (0..k).all(|u| g.has_edge(u, k) == h.has_edge(perm[u], img)) {
                perm.push(img);
                used[img] = true;
                if extend(g, h, perm, used) {
                    return true;
                }
                perm.pop();
                used[img] = false;
            }
        }
        false
    }
    extend(g, h, &mut Vec::new(), &mut vec![false; h.n()])
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}
