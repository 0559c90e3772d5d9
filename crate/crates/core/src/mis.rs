//! Maximal independent sets: enumeration, exact counting, and maximum
//! independent sets.
//!
//! Enumeration is Bron–Kerbosch with pivoting run on the complement graph
//! implicitly: candidates for extending `R` are the vertices with no
//! neighbor in `R`. Counting first applies exact reductions (isolated
//! vertices, component product, leaf rule) and only enumerates components
//! none of them can split further.

use std::collections::HashMap;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::set::VertexSet;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "MISX_BUDGET";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MisError {
    #[error("enumeration budget of {0} maximal independent sets exceeded")]
    BudgetExceeded(u64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MisConfig {
    /// Maximum number of sets the enumerator may emit in one call.
    pub budget: u64,
}

impl Default for MisConfig {
    fn default() -> Self {
        MisConfig {
            budget: DEFAULT_BUDGET,
        }
    }
}

impl MisConfig {
    /// Default configuration with `MISX_BUDGET` applied when it parses.
    pub fn from_env() -> Self {
        let budget = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        MisConfig { budget }
    }

    pub fn with_budget(budget: u64) -> Self {
        MisConfig { budget }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reduction {
    IsolatedVertex,
    ComponentProduct,
    Leaf,
    Memo,
    Enumeration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MisReport {
    pub count: BigUint,
    pub sets: Option<Vec<VertexSet>>,
    pub trace: Vec<Reduction>,
}

struct Enumerator<'g, F> {
    g: &'g Graph,
    emitted: u64,
    budget: u64,
    visit: F,
}

impl<F: FnMut(&VertexSet) -> ControlFlow<()>> Enumerator<'_, F> {
    fn extend(
        &mut self,
        r: &mut VertexSet,
        mut p: VertexSet,
        mut x: VertexSet,
    ) -> Result<ControlFlow<()>, MisError> {
        if p.is_empty() {
            if x.is_empty() {
                self.emitted += 1;
                if self.emitted > self.budget {
                    return Err(MisError::BudgetExceeded(self.budget));
                }
                return Ok((self.visit)(r));
            }
            return Ok(ControlFlow::Continue(()));
        }
        // Pivot: the vertex of P ∪ X with the most non-neighbors in P, i.e.
        // the highest degree in the complement restricted to P. Only
        // vertices of P ∩ N[pivot] need to start a branch.
        let pivot = p
            .union(&x)
            .iter()
            .min_by_key(|&u| {
                (
                    p.intersection_len(self.g.neighbors(u)) + p.contains(u) as usize,
                    u,
                )
            })
            .expect("P is nonempty");
        let branch = p.intersection(&self.g.closed_neighborhood(pivot));
        for v in &branch {
            let closed = self.g.closed_neighborhood(v);
            r.insert(v);
            let flow = self.extend(r, p.difference(&closed), x.difference(&closed))?;
            r.remove(v);
            if flow.is_break() {
                return Ok(flow);
            }
            p.remove(v);
            x.insert(v);
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Calls `visit` on every maximal independent set of `G[live]`, in a fixed
/// order, until it breaks. Returns the number of sets visited.
pub fn for_each_mis_within<F>(
    g: &Graph,
    live: &VertexSet,
    config: &MisConfig,
    visit: F,
) -> Result<u64, MisError>
where
    F: FnMut(&VertexSet) -> ControlFlow<()>,
{
    let mut e = Enumerator {
        g,
        emitted: 0,
        budget: config.budget,
        visit,
    };
    let _ = e.extend(&mut VertexSet::new(), live.clone(), VertexSet::new())?;
    Ok(e.emitted)
}

pub fn for_each_mis<F>(g: &Graph, config: &MisConfig, visit: F) -> Result<u64, MisError>
where
    F: FnMut(&VertexSet) -> ControlFlow<()>,
{
    for_each_mis_within(g, &g.vertices(), config, visit)
}

/// All maximal independent sets in enumeration order. The null graph has
/// exactly one, the empty set.
pub fn enumerate_mis(g: &Graph, config: &MisConfig) -> Result<Vec<VertexSet>, MisError> {
    let mut out = Vec::new();
    for_each_mis(g, config, |s| {
        out.push(s.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// `m(G)` by plain enumeration, with no reductions.
pub fn count_by_enumeration(g: &Graph, config: &MisConfig) -> Result<BigUint, MisError> {
    for_each_mis(g, config, |_| ControlFlow::Continue(())).map(BigUint::from)
}

struct Counter<'g> {
    g: &'g Graph,
    config: MisConfig,
    emitted: u64,
    memo: HashMap<VertexSet, BigUint>,
    trace: Vec<Reduction>,
}

impl Counter<'_> {
    fn count(&mut self, live: VertexSet) -> Result<BigUint, MisError> {
        if live.is_empty() {
            return Ok(BigUint::one());
        }
        if let Some(c) = self.memo.get(&live) {
            self.trace.push(Reduction::Memo);
            return Ok(c.clone());
        }
        let g = self.g;

        let isolated: VertexSet = live
            .iter()
            .filter(|&v| g.neighbors(v).is_disjoint(&live))
            .collect();
        let result = if !isolated.is_empty() {
            self.trace.push(Reduction::IsolatedVertex);
            self.count(live.difference(&isolated))?
        } else {
            let components = g.components_within(&live);
            if components.len() > 1 {
                self.trace.push(Reduction::ComponentProduct);
                let mut product = BigUint::one();
                for c in components {
                    product *= self.count(c)?;
                }
                product
            } else if let Some(leaf) = live.iter().find(|&v| g.degree_within(v, &live) == 1) {
                // m(G) = m(G_x) + m(G_y) for a leaf x adjacent to y.
                self.trace.push(Reduction::Leaf);
                let y = g
                    .neighbors(leaf)
                    .intersection(&live)
                    .first()
                    .expect("leaf has a neighbor");
                let gx = live.difference(&g.closed_neighborhood(leaf));
                let gy = live.difference(&g.closed_neighborhood(y));
                self.count(gx)? + self.count(gy)?
            } else {
                self.trace.push(Reduction::Enumeration);
                let remaining = MisConfig::with_budget(self.config.budget - self.emitted);
                let n = for_each_mis_within(g, &live, &remaining, |_| ControlFlow::Continue(()))
                    .map_err(|_| MisError::BudgetExceeded(self.config.budget))?;
                self.emitted += n;
                BigUint::from(n)
            }
        };
        self.memo.insert(live, result.clone());
        Ok(result)
    }
}

/// Exact `m(G)` through the reduction pipeline, with enumeration as the
/// fallback on irreducible components. The memo table lives for this call
/// only.
pub fn count_mis(g: &Graph, config: &MisConfig) -> Result<MisReport, MisError> {
    count_mis_within(g, &g.vertices(), config)
}

/// [`count_mis`] on the induced subgraph `G[live]` without relabeling.
pub fn count_mis_within(
    g: &Graph,
    live: &VertexSet,
    config: &MisConfig,
) -> Result<MisReport, MisError> {
    let mut counter = Counter {
        g,
        config: *config,
        emitted: 0,
        memo: HashMap::new(),
        trace: Vec::new(),
    };
    let count = counter.count(live.clone())?;
    Ok(MisReport {
        count,
        sets: None,
        trace: counter.trace,
    })
}

/// Count plus the full list of sets; the count comes from the reduction
/// pipeline and must agree with the list length.
pub fn mis_report_with_sets(g: &Graph, config: &MisConfig) -> Result<MisReport, MisError> {
    let mut report = count_mis(g, config)?;
    let sets = enumerate_mis(g, config)?;
    debug_assert_eq!(BigUint::from(sets.len()), report.count);
    report.sets = Some(sets);
    Ok(report)
}

/// Maximum independent set by branch and bound. Vertices of degree at most
/// one are taken greedily; otherwise the search branches on a vertex of
/// maximum degree (smallest index on ties), trying inclusion first.
pub fn maximum_independent_set(g: &Graph) -> VertexSet {
    fn search(g: &Graph, live: VertexSet, current: &mut VertexSet, best: &mut VertexSet) {
        if current.len() + live.len() <= best.len() {
            return;
        }
        if live.is_empty() {
            *best = current.clone();
            return;
        }
        let degrees: Vec<(usize, usize)> = live
            .iter()
            .map(|v| (g.degree_within(v, &live), v))
            .collect();
        let &(min_deg, low) = degrees.iter().min().unwrap();
        if min_deg <= 1 {
            current.insert(low);
            search(
                g,
                live.difference(&g.closed_neighborhood(low)),
                current,
                best,
            );
            current.remove(low);
            return;
        }
        let &(_, high) = degrees
            .iter()
            .max_by_key(|&&(d, v)| (d, std::cmp::Reverse(v)))
            .unwrap();
        current.insert(high);
        search(
            g,
            live.difference(&g.closed_neighborhood(high)),
            current,
            best,
        );
        current.remove(high);
        let mut rest = live;
        rest.remove(high);
        search(g, rest, current, best);
    }

    let mut best = VertexSet::new();
    search(g, g.vertices(), &mut VertexSet::new(), &mut best);
    best
}

/// `α(G)`.
pub fn alpha(g: &Graph) -> usize {
    maximum_independent_set(g).len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchInequality {
    pub vertex: usize,
    /// `m(G)`
    #[serde(with = "crate::serde_big")]
    pub lhs: BigUint,
    /// `m(G_x) + m(G \ x)`
    #[serde(with = "crate::serde_big")]
    pub rhs: BigUint,
    pub holds: bool,
}

/// Evaluates `m(G) ≤ m(G_x) + m(G \ x)` at vertex `x`.
pub fn check_branch_inequality(
    g: &Graph,
    x: usize,
    config: &MisConfig,
) -> Result<BranchInequality, MisError> {
    if x >= g.n() {
        return Err(GraphError::VertexOutOfRange { v: x, n: g.n() }.into());
    }
    let all = g.vertices();
    let lhs = count_mis(g, config)?.count;
    let localized = all.difference(&g.closed_neighborhood(x));
    let mut removed = all;
    removed.remove(x);
    let rhs = count_mis_within(g, &localized, config)?.count
        + count_mis_within(g, &removed, config)?.count;
    Ok(BranchInequality {
        vertex: x,
        holds: lhs <= rhs,
        lhs,
        rhs,
    })
}
