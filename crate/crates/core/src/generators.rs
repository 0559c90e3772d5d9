//! Named graph families, the exhaustive labeled catalog, and fixtures.
//!
//! Family specs use the text form `name:key=val,key=val`. Any integer value
//! may be an inclusive range `lo..hi`, which expands to the cartesian product
//! of all parameter choices. Specs joined with `+` denote a disjoint union.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphError};

/// Default ceiling for [`enumerate_labeled_graphs`].
pub const DEFAULT_LABELED_LIMIT: usize = 6;

/// Parameters of a random Cameron-Walker bipartite graph: a connected
/// bipartite core on `a + b` vertices with every `a`-vertex carrying
/// `leaves` pendant leaves.
#[derive(Clone, Debug, PartialEq)]
pub struct CwBipartiteSpec {
    pub a: usize,
    pub b: usize,
    pub density: f64,
    pub leaves: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Star(usize),
    StarTriangle(usize),
    Path(usize),
    Cycle(usize),
    TrianglesPlusIsolated { triangles: usize, isolated: usize },
    CwBipartite(CwBipartiteSpec),
    Union(Vec<Family>),
}

impl Family {
    pub fn generate(&self) -> Result<Graph, GraphError> {
        let invalid = |msg: &str| Err(GraphError::InvalidFamily(msg.to_string()));
        match *self {
            Family::Complete(n) => {
                let edges: Vec<_> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .collect();
                Graph::from_edge_list(n, &edges)
            }
            Family::CompleteBipartite(a, b) => {
                let edges: Vec<_> = (0..a)
                    .flat_map(|u| (a..a + b).map(move |v| (u, v)))
                    .collect();
                Graph::from_edge_list(a + b, &edges)
            }
            Family::Star(m) => Family::CompleteBipartite(1, m).generate(),
            Family::StarTriangle(0) => invalid("star-triangle needs at least one triangle"),
            Family::StarTriangle(k) => {
                let edges: Vec<_> = (0..k)
                    .flat_map(|i| {
                        let (p, q) = (2 * i + 1, 2 * i + 2);
                        [(0, p), (0, q), (p, q)]
                    })
                    .collect();
                Graph::from_edge_list(2 * k + 1, &edges)
            }
            Family::Path(n) => {
                let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
                Graph::from_edge_list(n, &edges)
            }
            Family::Cycle(n) if n < 3 => invalid("cycle needs at least 3 vertices"),
            Family::Cycle(n) => {
                let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
                Graph::from_edge_list(n, &edges)
            }
            Family::TrianglesPlusIsolated {
                triangles,
                isolated,
            } => {
                let edges: Vec<_> = (0..triangles)
                    .flat_map(|i| {
                        let v = 3 * i;
                        [(v, v + 1), (v, v + 2), (v + 1, v + 2)]
                    })
                    .collect();
                Graph::from_edge_list(3 * triangles + isolated, &edges)
            }
            Family::CwBipartite(ref spec) => cw_bipartite(spec),
            Family::Union(ref parts) => parts.iter().try_fold(Graph::empty(0), |acc, f| {
                Ok(acc.disjoint_union(&f.generate()?))
            }),
        }
    }
}

fn cw_bipartite(spec: &CwBipartiteSpec) -> Result<Graph, GraphError> {
    let CwBipartiteSpec {
        a,
        b,
        density,
        leaves,
        seed,
    } = *spec;
    let invalid = |msg: String| Err(GraphError::InvalidFamily(msg));
    if a == 0 {
        return invalid("cw-bipartite needs a >= 1".into());
    }
    if leaves == 0 {
        return invalid("cw-bipartite needs leaves >= 1".into());
    }
    if b == 0 && a > 1 {
        return invalid("cw-bipartite with b = 0 is only connected when a = 1".into());
    }
    if !(0.0..=1.0).contains(&density) {
        return invalid(format!("density {density} is outside [0, 1]"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = a + b + a * leaves;
    let mut g = Graph::empty(n);

    // Random spanning tree over the core: A[0] and B[0] first, then the rest
    // in shuffled order, each joined to an already placed vertex of the
    // opposite side.
    let mut order: Vec<usize> = (1..a).chain(a + 1..a + b).collect();
    order.shuffle(&mut rng);
    let mut placed_a = vec![0];
    let mut placed_b = Vec::new();
    if b > 0 {
        g.add_edge(0, a)?;
        placed_b.push(a);
    }
    for v in order {
        if v < a {
            let w = *placed_b.choose(&mut rng).expect("b >= 1 when a >= 2");
            g.add_edge(v, w)?;
            placed_a.push(v);
        } else {
            let w = *placed_a.choose(&mut rng).expect("a >= 1");
            g.add_edge(v, w)?;
            placed_b.push(v);
        }
    }
    for u in 0..a {
        for v in a..a + b {
            if !g.has_edge(u, v) && rng.gen_bool(density) {
                g.add_edge(u, v)?;
            }
        }
    }
    for u in 0..a {
        for j in 0..leaves {
            g.add_edge(u, a + b + u * leaves + j)?;
        }
    }
    Ok(g)
}

/// Parses a family spec, expanding `lo..hi` ranges and `+` unions.
pub fn expand_family_spec(spec: &str) -> Result<Vec<Family>, GraphError> {
    expand_family_spec_seeded(spec, None)
}

/// As [`expand_family_spec`], with `seed` filling in for random families
/// whose spec leaves it out.
pub fn expand_family_spec_seeded(spec: &str, seed: Option<u64>) -> Result<Vec<Family>, GraphError> {
    let mut combos: Vec<Vec<Family>> = vec![Vec::new()];
    for part in spec.split('+') {
        let options = expand_single(part.trim(), seed)?;
        combos = combos
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |f| {
                    let mut p = prefix.clone();
                    p.push(f.clone());
                    p
                })
            })
            .collect();
    }
    Ok(combos
        .into_iter()
        .map(|mut parts| {
            if parts.len() == 1 {
                parts.pop().unwrap()
            } else {
                Family::Union(parts)
            }
        })
        .collect())
}

impl FromStr for Family {
    type Err = GraphError;

    /// A spec that must denote exactly one graph.
    fn from_str(s: &str) -> Result<Self, GraphError> {
        let mut all = expand_family_spec(s)?;
        if all.len() != 1 {
            return Err(GraphError::InvalidFamily(format!(
                "{s:?} expands to {} graphs, expected one",
                all.len()
            )));
        }
        Ok(all.pop().unwrap())
    }
}

#[derive(Clone, Debug)]
enum Value {
    Ints(Vec<u64>),
    Float(f64),
}

fn expand_single(spec: &str, default_seed: Option<u64>) -> Result<Vec<Family>, GraphError> {
    let bad = |msg: String| GraphError::InvalidFamily(format!("{spec:?}: {msg}"));
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let mut params: Vec<(String, Value)> = Vec::new();
    for kv in args.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key=value, found {kv:?}")))?;
        let value = if let Some((lo, hi)) = v.split_once("..") {
            let lo: u64 = lo
                .parse()
                .map_err(|_| bad(format!("bad range start {lo:?}")))?;
            let hi: u64 = hi
                .parse()
                .map_err(|_| bad(format!("bad range end {hi:?}")))?;
            if lo > hi {
                return Err(bad(format!("empty range {v}")));
            }
            Value::Ints((lo..=hi).collect())
        } else if let Ok(i) = v.parse::<u64>() {
            Value::Ints(vec![i])
        } else if let Ok(x) = v.parse::<f64>() {
            Value::Float(x)
        } else {
            return Err(bad(format!("unparseable value {v:?}")));
        };
        params.push((k.to_string(), value));
    }

    let keys: &[&str] = match name {
        "complete" | "path" | "cycle" => &["n"],
        "complete-bipartite" => &["a", "b"],
        "star" => &["m"],
        "star-triangle" => &["k"],
        "triangles" => &["s", "t"],
        "cw-bipartite" => &["a", "b", "leaves", "density", "seed"],
        _ => return Err(bad(format!("unknown family {name:?}"))),
    };
    for (k, _) in &params {
        if !keys.contains(&k.as_str()) {
            return Err(bad(format!("unknown parameter {k:?}")));
        }
    }
    let lookup = |key: &str| {
        params
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.clone())
    };
    let ints = |key: &str, default: Option<u64>| -> Result<Vec<u64>, GraphError> {
        match lookup(key) {
            Some(Value::Ints(v)) => Ok(v),
            Some(Value::Float(_)) => Err(bad(format!("{key} must be an integer"))),
            None => default
                .map(|d| vec![d])
                .ok_or_else(|| bad(format!("missing parameter {key}"))),
        }
    };

    let u = |x: u64| x as usize;
    let out = match name {
        "complete" => ints("n", None)?
            .into_iter()
            .map(|n| Family::Complete(u(n)))
            .collect(),
        "path" => ints("n", None)?
            .into_iter()
            .map(|n| Family::Path(u(n)))
            .collect(),
        "cycle" => ints("n", None)?
            .into_iter()
            .map(|n| Family::Cycle(u(n)))
            .collect(),
        "star" => ints("m", None)?
            .into_iter()
            .map(|m| Family::Star(u(m)))
            .collect(),
        "star-triangle" => ints("k", None)?
            .into_iter()
            .map(|k| Family::StarTriangle(u(k)))
            .collect(),
        "complete-bipartite" => {
            let bs = ints("b", None)?;
            ints("a", None)?
                .into_iter()
                .flat_map(|a| {
                    bs.iter()
                        .map(move |&b| Family::CompleteBipartite(u(a), u(b)))
                })
                .collect()
        }
        "triangles" => {
            let ts = ints("t", Some(0))?;
            ints("s", None)?
                .into_iter()
                .flat_map(|s| {
                    ts.iter().map(move |&t| Family::TrianglesPlusIsolated {
                        triangles: u(s),
                        isolated: u(t),
                    })
                })
                .collect()
        }
        "cw-bipartite" => {
            let density = match lookup("density") {
                None => 0.5,
                Some(Value::Float(x)) => x,
                Some(Value::Ints(v)) if v.len() == 1 => v[0] as f64,
                Some(Value::Ints(_)) => return Err(bad("density cannot be a range".into())),
            };
            let seeds = ints("seed", default_seed)?;
            let mut out = Vec::new();
            for a in ints("a", None)? {
                for b in ints("b", None)? {
                    for leaves in ints("leaves", Some(1))? {
                        for &seed in &seeds {
                            out.push(Family::CwBipartite(CwBipartiteSpec {
                                a: u(a),
                                b: u(b),
                                density,
                                leaves: u(leaves),
                                seed,
                            }));
                        }
                    }
                }
            }
            out
        }
        _ => unreachable!(),
    };
    Ok(out)
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete(n) => write!(f, "complete:n={n}"),
            Family::CompleteBipartite(a, b) => write!(f, "complete-bipartite:a={a},b={b}"),
            Family::Star(m) => write!(f, "star:m={m}"),
            Family::StarTriangle(k) => write!(f, "star-triangle:k={k}"),
            Family::Path(n) => write!(f, "path:n={n}"),
            Family::Cycle(n) => write!(f, "cycle:n={n}"),
            Family::TrianglesPlusIsolated {
                triangles,
                isolated,
            } => write!(f, "triangles:s={triangles},t={isolated}"),
            Family::CwBipartite(s) => write!(
                f,
                "cw-bipartite:a={},b={},leaves={},density={},seed={}",
                s.a, s.b, s.leaves, s.density, s.seed
            ),
            Family::Union(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("refusing to enumerate labeled graphs on {n} vertices (limit {limit})")]
pub struct CatalogLimit {
    pub n: usize,
    pub limit: usize,
}

/// Every labeled simple graph on `n` vertices, by increasing edge mask. Bit
/// `i` of the mask is the `i`-th pair in graph6 order `(0,1), (0,2), (1,2), ...`.
pub fn enumerate_labeled_graphs(
    n: usize,
    limit: usize,
) -> Result<impl ExactSizeIterator<Item = Graph>, CatalogLimit> {
    if n > limit || n > 11 {
        return Err(CatalogLimit { n, limit });
    }
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let total = 1usize << pairs.len();
    Ok((0..total).map(move |mask| labeled_graph(n, &pairs, mask)))
}

fn labeled_graph(n: usize, pairs: &[(usize, usize)], mask: usize) -> Graph {
    let mut g = Graph::empty(n);
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            g.add_edge(u, v).expect("pairs are in range");
        }
    }
    g
}

/// Random labeled graph with independent edge probability `p`.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("pairs are in range");
            }
        }
    }
    g
}

/// The 8-vertex Cameron-Walker bipartite graph with exactly four maximal
/// independent sets: core `K_{2,2}` on `{0,1} ∪ {2,3}`, with leaves `6,7` on
/// vertex 2 and leaves `4,5` on vertex 3.
///
/// The edge set is reconstructed from the four maximal independent sets
/// `{0,1,4,5,6,7}`, `{2,3}`, `{2,4,5}`, `{3,6,7}`; maximality pins it down
/// up to isomorphism.
pub fn cw_example() -> Graph {
    Graph::from_edge_list(
        8,
        &[
            (0, 2),
            (1, 2),
            (0, 3),
            (1, 3),
            (3, 4),
            (3, 5),
            (2, 6),
            (2, 7),
        ],
    )
    .expect("static fixture")
}
