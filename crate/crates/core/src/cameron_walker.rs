//! Cameron-Walker graphs: graphs whose induced matching number equals their
//! matching number.
//!
//! Two independent recognizers live here. [`is_cw_definitional`] compares
//! `ν₀` and `ν` directly. [`classify_structure`] instead matches every
//! connected component against the three connected shapes:
//!
//! * a star `K_{1,m}` (`m ≥ 0`);
//! * a star triangle, i.e. triangles sharing one common vertex;
//! * a connected bipartite core `(A, B)` where every vertex of `A` carries at
//!   least one pendant leaf and vertices of `B` may carry pendant triangles.
//!
//! A graph is Cameron-Walker exactly when all of its components are, since
//! both `ν` and `ν₀` add over components.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::invariants::{induced_matching_number, matching_number, EdgeSet};
use crate::set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafAttachment {
    pub vertex: usize,
    pub leaves: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleAttachment {
    pub vertex: usize,
    /// Outer vertex pairs of the triangles hanging off `vertex`.
    pub triangles: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum ComponentShape {
    Star {
        center: usize,
        leaves: Vec<usize>,
    },
    StarTriangle {
        center: usize,
        triangles: Vec<(usize, usize)>,
    },
    LeafBipartite {
        a: Vec<usize>,
        b: Vec<usize>,
        leaves: Vec<LeafAttachment>,
        pendant_triangles: Vec<TriangleAttachment>,
    },
    /// Maximum matching and maximum induced matching of the component, of
    /// different sizes.
    NotCw {
        matching: EdgeSet,
        induced_matching: EdgeSet,
    },
}

impl ComponentShape {
    pub fn is_cw(&self) -> bool {
        !matches!(self, ComponentShape::NotCw { .. })
    }

    /// Star, or leaf-decorated bipartite without pendant triangles.
    pub fn is_cw_bipartite(&self) -> bool {
        match self {
            ComponentShape::Star { .. } => true,
            ComponentShape::LeafBipartite {
                pendant_triangles, ..
            } => pendant_triangles.iter().all(|t| t.triangles.is_empty()),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentVerdict {
    pub index: usize,
    pub vertices: Vec<usize>,
    #[serde(flatten)]
    pub shape: ComponentShape,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CwCertificate {
    pub components: Vec<ComponentVerdict>,
}

impl CwCertificate {
    pub fn is_cw(&self) -> bool {
        self.components.iter().all(|c| c.shape.is_cw())
    }

    pub fn is_cw_bipartite(&self) -> bool {
        self.components.iter().all(|c| c.shape.is_cw_bipartite())
    }

    /// Re-checks every component certificate against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let components = g.components_within(&g.vertices());
        if components.len() != self.components.len() {
            return Err(format!(
                "certificate has {} components, graph has {}",
                self.components.len(),
                components.len()
            ));
        }
        for (i, (c, expected)) in self.components.iter().zip(&components).enumerate() {
            let vertices: VertexSet = c.vertices.iter().copied().collect();
            if c.index != i || &vertices != expected {
                return Err(format!("component {i} does not match the graph"));
            }
            validate_shape(g, &vertices, &c.shape).map_err(|e| format!("component {i}: {e}"))?;
        }
        Ok(())
    }
}

fn ensure(ok: bool, msg: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn validate_shape(g: &Graph, comp: &VertexSet, shape: &ComponentShape) -> Result<(), String> {
    match shape {
        ComponentShape::Star { center, leaves } => {
            let mut all: VertexSet = leaves.iter().copied().collect();
            ensure(all.len() == leaves.len(), "repeated leaf")?;
            ensure(!all.contains(*center), "center listed as leaf")?;
            all.insert(*center);
            ensure(&all == comp, "star does not span the component")?;
            ensure(
                leaves
                    .iter()
                    .all(|&l| g.degree(l) == 1 && g.has_edge(*center, l)),
                "star leaf is not a pendant of the center",
            )
        }
        ComponentShape::StarTriangle { center, triangles } => {
            ensure(!triangles.is_empty(), "star triangle without triangles")?;
            let mut all = VertexSet::singleton(*center);
            for &(p, q) in triangles {
                ensure(
                    all.insert(p) && all.insert(q),
                    "vertex reused across triangles",
                )?;
                ensure(
                    g.has_edge(*center, p) && g.has_edge(*center, q) && g.has_edge(p, q),
                    "missing triangle edge",
                )?;
                ensure(
                    g.degree(p) == 2 && g.degree(q) == 2,
                    "outer vertex has extra edges",
                )?;
            }
            ensure(&all == comp, "star triangle does not span the component")
        }
        ComponentShape::LeafBipartite {
            a,
            b,
            leaves,
            pendant_triangles,
        } => {
            let a_set: VertexSet = a.iter().copied().collect();
            let b_set: VertexSet = b.iter().copied().collect();
            let core = a_set.union(&b_set);
            ensure(!a.is_empty() && !b.is_empty(), "empty side")?;
            ensure(core.len() == a.len() + b.len(), "sides overlap")?;
            ensure(
                g.components_within(&core).len() == 1,
                "core is not connected",
            )?;
            ensure(
                a.iter().all(|&u| g.neighbors(u).is_disjoint(&a_set))
                    && b.iter().all(|&u| g.neighbors(u).is_disjoint(&b_set)),
                "core edge inside one side",
            )?;
            let mut all = core.clone();
            ensure(
                leaves.iter().map(|l| l.vertex).eq(a.iter().copied()),
                "leaf map must list every a-vertex in order",
            )?;
            for att in leaves {
                ensure(!att.leaves.is_empty(), "a-vertex without a leaf")?;
                for &l in &att.leaves {
                    ensure(all.insert(l), "leaf reused")?;
                    ensure(
                        g.degree(l) == 1 && g.has_edge(att.vertex, l),
                        "leaf is not a pendant of its a-vertex",
                    )?;
                }
            }
            ensure(
                pendant_triangles
                    .iter()
                    .map(|t| t.vertex)
                    .eq(b.iter().copied()),
                "triangle map must list every b-vertex in order",
            )?;
            for att in pendant_triangles {
                for &(p, q) in &att.triangles {
                    ensure(all.insert(p) && all.insert(q), "triangle vertex reused")?;
                    ensure(
                        g.has_edge(att.vertex, p) && g.has_edge(att.vertex, q) && g.has_edge(p, q),
                        "missing pendant triangle edge",
                    )?;
                    ensure(
                        g.degree(p) == 2 && g.degree(q) == 2,
                        "pendant triangle shares more than one vertex",
                    )?;
                }
            }
            ensure(&all == comp, "decomposition does not span the component")
        }
        ComponentShape::NotCw {
            matching,
            induced_matching,
        } => {
            let inside = |e: &EdgeSet| e.vertices().is_subset(comp);
            ensure(
                inside(matching) && inside(induced_matching),
                "witness leaves the component",
            )?;
            ensure(matching.is_matching_in(g), "witness matching is invalid")?;
            ensure(
                induced_matching.is_induced_matching_in(g),
                "witness induced matching is invalid",
            )?;
            ensure(
                induced_matching.len() < matching.len(),
                "witness shows no gap",
            )
        }
    }
}

fn match_star(g: &Graph, comp: &VertexSet) -> Option<ComponentShape> {
    let size = comp.len();
    let center = comp.iter().find(|&v| g.degree(v) == size - 1)?;
    let leaves: Vec<usize> = comp.iter().filter(|&v| v != center).collect();
    leaves
        .iter()
        .all(|&l| g.degree(l) == 1)
        .then_some(ComponentShape::Star { center, leaves })
}

fn match_star_triangle(g: &Graph, comp: &VertexSet) -> Option<ComponentShape> {
    let size = comp.len();
    if size < 3 || size.is_multiple_of(2) {
        return None;
    }
    let center = comp.iter().find(|&v| g.degree(v) == size - 1)?;
    let mut triangles = Vec::new();
    for p in comp.iter().filter(|&v| v != center) {
        if g.degree(p) != 2 {
            return None;
        }
        let q = g
            .neighbors(p)
            .iter()
            .find(|&w| w != center)
            .expect("degree two with center as one neighbor");
        if p < q {
            triangles.push((p, q));
        }
    }
    (2 * triangles.len() + 1 == size).then_some(ComponentShape::StarTriangle { center, triangles })
}

/// Pendant triangles `(attachment, p, q)`: `p`, `q` of degree two, adjacent
/// to each other and to a common third vertex.
fn pendant_triangles(g: &Graph, comp: &VertexSet) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for p in comp.iter().filter(|&v| g.degree(v) == 2) {
        let nbrs = g.neighbors(p).to_vec();
        for (q, j) in [(nbrs[0], nbrs[1]), (nbrs[1], nbrs[0])] {
            if p < q && g.degree(q) == 2 && g.has_edge(q, j) {
                out.push((j, p, q));
            }
        }
    }
    out
}

fn match_leaf_bipartite(g: &Graph, comp: &VertexSet) -> Option<ComponentShape> {
    let triangles = pendant_triangles(g, comp);
    let mut outer = VertexSet::new();
    let mut attachments = VertexSet::new();
    for &(j, p, q) in &triangles {
        outer.insert(p);
        outer.insert(q);
        attachments.insert(j);
    }
    let rest = comp.difference(&outer);
    let (h, map) = g.induced_subgraph(&rest).ok()?;
    let parts = h.bipartition().ok()?;
    let to_orig = |s: &VertexSet| -> VertexSet { s.iter().map(|v| map.old(v)).collect() };
    let sides = [to_orig(&parts.a), to_orig(&parts.b)];

    for (ai, a_side) in sides.iter().enumerate() {
        let other = &sides[1 - ai];
        if !a_side.is_disjoint(&attachments) {
            continue;
        }
        let leaf_lists: Vec<(usize, Vec<usize>)> = a_side
            .iter()
            .map(|u| {
                let ls: Vec<usize> = g
                    .neighbors(u)
                    .iter()
                    .filter(|&w| g.degree(w) == 1)
                    .collect();
                (u, ls)
            })
            .collect();
        if leaf_lists.iter().any(|(_, ls)| ls.is_empty()) {
            continue;
        }
        let all_leaves: VertexSet = leaf_lists
            .iter()
            .flat_map(|(_, ls)| ls.iter().copied())
            .collect();
        let b_core = other.difference(&all_leaves);
        if b_core.is_empty() {
            continue;
        }
        let pendant = b_core
            .iter()
            .map(|j| TriangleAttachment {
                vertex: j,
                triangles: triangles
                    .iter()
                    .filter(|&&(t, _, _)| t == j)
                    .map(|&(_, p, q)| (p, q))
                    .collect(),
            })
            .collect();
        return Some(ComponentShape::LeafBipartite {
            a: a_side.to_vec(),
            b: b_core.to_vec(),
            leaves: leaf_lists
                .into_iter()
                .map(|(vertex, leaves)| LeafAttachment { vertex, leaves })
                .collect(),
            pendant_triangles: pendant,
        });
    }
    None
}

fn gap_witness(g: &Graph, comp: &VertexSet) -> ComponentShape {
    let (h, map) = g
        .induced_subgraph(comp)
        .expect("component vertices are in range");
    let relabel = |e: EdgeSet| EdgeSet::new(e.iter().map(|(u, v)| (map.old(u), map.old(v))));
    ComponentShape::NotCw {
        matching: relabel(matching_number(&h).1),
        induced_matching: relabel(induced_matching_number(&h).1),
    }
}

/// Per-component structural classification, trying star, star triangle and
/// leaf-decorated bipartite in that order.
pub fn classify_structure(g: &Graph) -> CwCertificate {
    let components = g
        .components_within(&g.vertices())
        .into_iter()
        .enumerate()
        .map(|(index, comp)| {
            let shape = match_star(g, &comp)
                .or_else(|| match_star_triangle(g, &comp))
                .or_else(|| match_leaf_bipartite(g, &comp))
                .unwrap_or_else(|| gap_witness(g, &comp));
            ComponentVerdict {
                index,
                vertices: comp.to_vec(),
                shape,
            }
        })
        .collect();
    let cert = CwCertificate { components };
    for c in cert.components.iter().filter(|c| c.shape.is_cw()) {
        let comp: VertexSet = c.vertices.iter().copied().collect();
        debug_assert_eq!(validate_shape(g, &comp, &c.shape), Ok(()));
    }
    cert
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CwDefinitional {
    pub nu: usize,
    pub nu0: usize,
    pub is_cw: bool,
}

pub fn is_cw_definitional(g: &Graph) -> CwDefinitional {
    let nu = matching_number(g).0;
    let nu0 = induced_matching_number(g).0;
    CwDefinitional {
        nu,
        nu0,
        is_cw: nu == nu0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CwBipartiteVerdict {
    pub is_cw_bipartite: bool,
    pub reason: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[error(
    "recognizers disagree: bipartite with nu0 = nu is {definitional}, structural is {structural}"
)]
pub struct ConsistencyFault {
    pub definitional: bool,
    pub structural: bool,
}

/// Decides "bipartite Cameron-Walker" from already computed pieces, requiring
/// the definitional and structural routes to agree.
pub fn cw_bipartite_from_parts(
    g: &Graph,
    nu: usize,
    nu0: usize,
    certificate: &CwCertificate,
) -> Result<CwBipartiteVerdict, ConsistencyFault> {
    let bipartite = g.bipartition();
    let definitional = bipartite.is_ok() && nu == nu0;
    let structural = certificate.is_cw_bipartite();
    if definitional != structural {
        return Err(ConsistencyFault {
            definitional,
            structural,
        });
    }
    let reason = match bipartite {
        Err(cycle) => format!("not bipartite: odd cycle {:?}", cycle.0),
        Ok(_) if nu0 < nu => format!("bipartite but nu0 = {nu0} < nu = {nu}"),
        Ok(_) => "bipartite with nu0 = nu; every component is a star or leaf-decorated bipartite"
            .to_string(),
    };
    Ok(CwBipartiteVerdict {
        is_cw_bipartite: definitional,
        reason,
    })
}

pub fn is_cw_bipartite(g: &Graph) -> Result<CwBipartiteVerdict, ConsistencyFault> {
    let d = is_cw_definitional(g);
    cw_bipartite_from_parts(g, d.nu, d.nu0, &classify_structure(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cw_example, Family};

    fn fam(spec: &str) -> Graph {
        spec.parse::<Family>().unwrap().generate().unwrap()
    }

    fn single_shape(g: &Graph) -> ComponentShape {
        let cert = classify_structure(g);
        assert_eq!(cert.components.len(), 1);
        cert.components[0].shape.clone()
    }

    #[test]
    fn definitional() {
        for m in 0..5 {
            let d = is_cw_definitional(&fam(&format!("star:m={m}")));
            assert!(d.is_cw);
            assert_eq!(d.nu, m.min(1));
        }
        let d = is_cw_definitional(&fam("path:n=4"));
        assert_eq!((d.nu, d.nu0, d.is_cw), (2, 1, false));
        assert!(is_cw_definitional(&cw_example()).is_cw);
    }

    #[test]
    fn shapes() {
        match single_shape(&fam("star-triangle:k=3")) {
            ComponentShape::StarTriangle { center, triangles } => {
                assert_eq!(center, 0);
                assert_eq!(triangles.len(), 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            single_shape(&fam("complete:n=3")),
            ComponentShape::StarTriangle { .. }
        ));
        assert!(matches!(
            single_shape(&Graph::empty(1)),
            ComponentShape::Star { center: 0, .. }
        ));
        assert!(matches!(
            single_shape(&fam("path:n=2")),
            ComponentShape::Star { center: 0, .. }
        ));
        let c4 = fam("cycle:n=4");
        match single_shape(&c4) {
            ComponentShape::NotCw {
                matching,
                induced_matching,
            } => assert_eq!((matching.len(), induced_matching.len()), (2, 1)),
            other => panic!("unexpected {other:?}"),
        }
        classify_structure(&c4).validate(&c4).unwrap();
    }

    #[test]
    fn example_fixture_structure() {
        let g = cw_example();
        let cert = classify_structure(&g);
        cert.validate(&g).unwrap();
        assert_eq!(
            cert.components[0].shape,
            ComponentShape::LeafBipartite {
                a: vec![2, 3],
                b: vec![0, 1],
                leaves: vec![
                    LeafAttachment {
                        vertex: 2,
                        leaves: vec![6, 7]
                    },
                    LeafAttachment {
                        vertex: 3,
                        leaves: vec![4, 5]
                    },
                ],
                pendant_triangles: vec![
                    TriangleAttachment {
                        vertex: 0,
                        triangles: vec![]
                    },
                    TriangleAttachment {
                        vertex: 1,
                        triangles: vec![]
                    },
                ],
            }
        );
        assert!(is_cw_bipartite(&g).unwrap().is_cw_bipartite);
    }

    #[test]
    fn pendant_triangles_on_b_side() {
        // Core edge 0-1, leaf 2 on 0, triangle {1,3,4} on 1.
        let g = Graph::from_edge_list(5, &[(0, 1), (0, 2), (1, 3), (1, 4), (3, 4)]).unwrap();
        let cert = classify_structure(&g);
        cert.validate(&g).unwrap();
        assert!(cert.is_cw() && !cert.is_cw_bipartite());
        assert!(is_cw_definitional(&g).is_cw);
        // Same but the triangle hangs off the leaf-carrying vertex.
        let h = Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
        assert!(!classify_structure(&h).is_cw());
        assert!(!is_cw_definitional(&h).is_cw);
    }

    #[test]
    fn cw_bipartite_routes() {
        let v = is_cw_bipartite(&Graph::empty(4)).unwrap();
        assert!(v.is_cw_bipartite);
        let v = is_cw_bipartite(&fam("star-triangle:k=2")).unwrap();
        assert!(!v.is_cw_bipartite);
        assert!(v.reason.starts_with("not bipartite"));
        assert!(!is_cw_bipartite(&fam("path:n=4")).unwrap().is_cw_bipartite);
        let g = fam("cw-bipartite:a=3,b=2,leaves=1,seed=4");
        assert!(is_cw_bipartite(&g).unwrap().is_cw_bipartite);
    }

    #[test]
    fn certificate_json_shape() {
        let cert = classify_structure(&fam("star:m=2+complete:n=3"));
        let json = serde_json::to_value(&cert).unwrap();
        assert_eq!(json["components"][0]["shape"], "star");
        assert_eq!(json["components"][1]["shape"], "star-triangle");
        assert_eq!(
            json["components"][1]["vertices"],
            serde_json::json!([3, 4, 5])
        );
        let back: CwCertificate = serde_json::from_value(json).unwrap();
        assert_eq!(back, cert);
    }
}
