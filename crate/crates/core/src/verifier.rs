//! Bound checks on single graphs and catalog sweeps.
//!
//! Every check yields a [`BoundVerdict`]. `holds` is the inequality itself;
//! `extremal` says the graph attains the bound; `characterization_expected`
//! is what the matching structural recognizer predicts for extremality, and
//! `consistent` requires the two to coincide. A sweep treats any verdict with
//! `holds == false` or `consistent == false` as a counterexample.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cameron_walker::{
    classify_structure, cw_bipartite_from_parts, ConsistencyFault, CwBipartiteVerdict,
    CwCertificate,
};
use crate::graph::Graph;
use crate::graph6::to_graph6;
use crate::invariants::{full_bundle, InvariantBundle};
use crate::mis::{count_by_enumeration, count_mis_within, MisConfig, MisError};
use crate::set::VertexSet;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TheoremTag {
    CoverBound,
    MatchingBound,
    InducedLower,
    KeCorollary,
    BranchRecurrence,
}

impl TheoremTag {
    pub const ALL: [TheoremTag; 5] = [
        TheoremTag::CoverBound,
        TheoremTag::MatchingBound,
        TheoremTag::InducedLower,
        TheoremTag::KeCorollary,
        TheoremTag::BranchRecurrence,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremTag::CoverBound => "COVER_BOUND",
            TheoremTag::MatchingBound => "MATCHING_BOUND",
            TheoremTag::InducedLower => "INDUCED_LOWER",
            TheoremTag::KeCorollary => "KE_COROLLARY",
            TheoremTag::BranchRecurrence => "BRANCH_RECURRENCE",
        }
    }
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        TheoremTag::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown theorem tag {s:?}"))
    }
}

/// Parses a comma-separated tag list; `all` selects every tag.
pub fn parse_tags(list: &str) -> Result<Vec<TheoremTag>, String> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(TheoremTag::ALL.to_vec());
    }
    let mut tags = list
        .split(',')
        .map(str::parse)
        .collect::<Result<Vec<TheoremTag>, _>>()?;
    tags.sort();
    tags.dedup();
    Ok(tags)
}

/// How `m(G)` is computed for the checks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    #[default]
    Reductions,
    Enumeration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub tag: TheoremTag,
    pub n: usize,
    #[serde(with = "crate::serde_big")]
    pub m: BigUint,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nu: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nu0: Option<usize>,
    #[serde(with = "crate::serde_big")]
    pub bound: BigUint,
    pub holds: bool,
    pub extremal: bool,
    /// Recognizer prediction for extremality; absent when no
    /// characterization of the equality case is claimed.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub characterization_expected: Option<bool>,
    pub consistent: bool,
}

impl BoundVerdict {
    pub fn is_sound(&self) -> bool {
        self.holds && self.consistent
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Recurrence {
    /// `m(G) ≤ m(G_x) + m(G \ x)`
    Branch { vertex: usize },
    /// `m(G) = m(G_x) + m(G_y)` for a leaf `x` adjacent to `y`
    Leaf { leaf: usize, neighbor: usize },
    /// `m(G) = ∏ m(G_i)` over the components
    Product { components: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceVerdict {
    #[serde(flatten)]
    pub recurrence: Recurrence,
    #[serde(with = "crate::serde_big")]
    pub lhs: BigUint,
    #[serde(with = "crate::serde_big")]
    pub rhs: BigUint,
    pub holds: bool,
}

/// Every invariant the checks need, computed once per graph.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub bundle: InvariantBundle,
    pub certificate: CwCertificate,
    pub cw_bipartite: Result<CwBipartiteVerdict, ConsistencyFault>,
    pub koenig_egervary: bool,
    /// Every component is `K₃` or `K₁`.
    pub triangles_and_isolated: bool,
    engine: Engine,
    config: MisConfig,
}

fn pow(base: u32, exp: usize) -> BigUint {
    Pow::pow(BigUint::from(base), exp)
}

fn count(
    g: &Graph,
    live: &VertexSet,
    engine: Engine,
    config: &MisConfig,
) -> Result<BigUint, MisError> {
    match engine {
        Engine::Reductions => Ok(count_mis_within(g, live, config)?.count),
        Engine::Enumeration => {
            let (h, _) = g.induced_subgraph(live)?;
            count_by_enumeration(&h, config)
        }
    }
}

/// Disjoint union of `ν(G)` triangles and isolated vertices.
pub fn is_triangles_plus_isolated(g: &Graph) -> bool {
    g.components_within(&g.vertices())
        .iter()
        .all(|c| match c.len() {
            1 => true,
            3 => c.iter().all(|v| g.degree(v) == 2),
            _ => false,
        })
}

impl Analysis {
    pub fn compute(g: &Graph, config: &MisConfig, engine: Engine) -> Result<Self, MisError> {
        let mut bundle = full_bundle(g, config)?;
        if engine == Engine::Enumeration {
            bundle.m = count_by_enumeration(g, config)?;
        }
        let certificate = classify_structure(g);
        let cw_bipartite = cw_bipartite_from_parts(g, bundle.nu, bundle.nu0, &certificate);
        Ok(Analysis {
            koenig_egervary: bundle.beta == bundle.nu,
            triangles_and_isolated: is_triangles_plus_isolated(g),
            bundle,
            certificate,
            cw_bipartite,
            engine,
            config: *config,
        })
    }

    fn cw_bipartite_prediction(&self) -> (bool, bool) {
        match &self.cw_bipartite {
            Ok(v) => (v.is_cw_bipartite, true),
            Err(fault) => (fault.definitional, false),
        }
    }

    fn verdict(&self, tag: TheoremTag, bound: BigUint, holds: bool) -> BoundVerdict {
        let b = &self.bundle;
        BoundVerdict {
            tag,
            n: b.n,
            m: b.m.clone(),
            beta: None,
            nu: None,
            nu0: None,
            extremal: b.m == bound,
            bound,
            holds,
            characterization_expected: None,
            consistent: true,
        }
    }

    /// `m ≤ 2^β`, with equality exactly for bipartite Cameron-Walker graphs.
    pub fn cover_bound(&self) -> BoundVerdict {
        let bound = pow(2, self.bundle.beta);
        let mut v = self.verdict(
            TheoremTag::CoverBound,
            bound.clone(),
            self.bundle.m <= bound,
        );
        let (expected, routes_agree) = self.cw_bipartite_prediction();
        v.beta = Some(self.bundle.beta);
        v.characterization_expected = Some(expected);
        v.consistent = routes_agree && v.extremal == expected;
        v
    }

    /// `m ≤ 3^ν`, with equality exactly for `sK₃ ∪ tK₁`.
    pub fn matching_bound(&self) -> BoundVerdict {
        let bound = pow(3, self.bundle.nu);
        let mut v = self.verdict(
            TheoremTag::MatchingBound,
            bound.clone(),
            self.bundle.m <= bound,
        );
        v.nu = Some(self.bundle.nu);
        v.characterization_expected = Some(self.triangles_and_isolated);
        v.consistent = v.extremal == self.triangles_and_isolated;
        v
    }

    /// `m ≥ 2^ν₀`. Extremality is reported without a characterization.
    pub fn induced_lower(&self) -> BoundVerdict {
        let bound = pow(2, self.bundle.nu0);
        let mut v = self.verdict(
            TheoremTag::InducedLower,
            bound.clone(),
            self.bundle.m >= bound,
        );
        v.nu0 = Some(self.bundle.nu0);
        v
    }

    /// `m ≤ 2^ν` on König–Egerváry graphs; `None` otherwise.
    pub fn ke_corollary(&self) -> Option<BoundVerdict> {
        if !self.koenig_egervary {
            return None;
        }
        let bound = pow(2, self.bundle.nu);
        let mut v = self.verdict(
            TheoremTag::KeCorollary,
            bound.clone(),
            self.bundle.m <= bound,
        );
        let (expected, routes_agree) = self.cw_bipartite_prediction();
        v.beta = Some(self.bundle.beta);
        v.nu = Some(self.bundle.nu);
        v.characterization_expected = Some(expected);
        v.consistent = routes_agree && v.extremal == expected;
        Some(v)
    }

    /// Branch inequality at every vertex, leaf equality at every leaf, and
    /// the component product. The product's left side is always counted by
    /// plain enumeration so the check does not lean on the product rule.
    pub fn recurrences(&self, g: &Graph) -> Result<Vec<RecurrenceVerdict>, MisError> {
        let all = g.vertices();
        let m = &self.bundle.m;
        let count = |live: &VertexSet| count(g, live, self.engine, &self.config);
        let mut out = Vec::new();
        for x in 0..g.n() {
            let mut removed = all.clone();
            removed.remove(x);
            let rhs = count(&all.difference(&g.closed_neighborhood(x)))? + count(&removed)?;
            out.push(RecurrenceVerdict {
                recurrence: Recurrence::Branch { vertex: x },
                holds: *m <= rhs,
                lhs: m.clone(),
                rhs,
            });
        }
        for x in (0..g.n()).filter(|&x| g.degree(x) == 1) {
            let y = g.neighbors(x).first().expect("leaf has a neighbor");
            let rhs = count(&all.difference(&g.closed_neighborhood(x)))?
                + count(&all.difference(&g.closed_neighborhood(y)))?;
            out.push(RecurrenceVerdict {
                recurrence: Recurrence::Leaf {
                    leaf: x,
                    neighbor: y,
                },
                holds: *m == rhs,
                lhs: m.clone(),
                rhs,
            });
        }
        let components = g.components_within(&all);
        let mut rhs = BigUint::one();
        for c in &components {
            rhs *= count(c)?;
        }
        let lhs = count_by_enumeration(g, &self.config)?;
        out.push(RecurrenceVerdict {
            recurrence: Recurrence::Product {
                components: components.len(),
            },
            holds: lhs == rhs,
            lhs,
            rhs,
        });
        Ok(out)
    }

    pub fn verdicts(&self) -> Vec<BoundVerdict> {
        let mut v = vec![
            self.cover_bound(),
            self.matching_bound(),
            self.induced_lower(),
        ];
        v.extend(self.ke_corollary());
        v
    }
}

pub fn check_cover_bound(g: &Graph, config: &MisConfig) -> Result<BoundVerdict, MisError> {
    Ok(Analysis::compute(g, config, Engine::Reductions)?.cover_bound())
}

pub fn check_matching_bound(g: &Graph, config: &MisConfig) -> Result<BoundVerdict, MisError> {
    Ok(Analysis::compute(g, config, Engine::Reductions)?.matching_bound())
}

pub fn check_induced_lower(g: &Graph, config: &MisConfig) -> Result<BoundVerdict, MisError> {
    Ok(Analysis::compute(g, config, Engine::Reductions)?.induced_lower())
}

pub fn check_ke_corollary(g: &Graph, config: &MisConfig) -> Result<Option<BoundVerdict>, MisError> {
    Ok(Analysis::compute(g, config, Engine::Reductions)?.ke_corollary())
}

pub fn check_recurrences(
    g: &Graph,
    config: &MisConfig,
) -> Result<Vec<RecurrenceVerdict>, MisError> {
    Analysis::compute(g, config, Engine::Reductions)?.recurrences(g)
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

/// One catalog record. `index` is chosen by the source: the edge mask for
/// labeled catalogs, the line number for graph6 files, the ordinal for
/// family sweeps.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub index: u64,
    pub graph: Result<Graph, String>,
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub tags: Vec<TheoremTag>,
    pub jobs: usize,
    pub engine: Engine,
    pub mis: MisConfig,
    /// graph6 strings kept per tag in the extremal census.
    pub census_cap: usize,
    /// The sweep stops once this many counterexamples are collected.
    pub counterexample_cap: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            tags: TheoremTag::ALL.to_vec(),
            jobs: 1,
            engine: Engine::Reductions,
            mis: MisConfig::default(),
            census_cap: 64,
            counterexample_cap: 16,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TagTally {
    pub tag: TheoremTag,
    pub checked: u64,
    pub not_applicable: u64,
    pub held: u64,
    pub extremal: u64,
    pub consistent: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub tag: TheoremTag,
    pub extremal: u64,
    pub graph6: Vec<String>,
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub index: u64,
    pub graph6: String,
    pub tag: TheoremTag,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogError {
    pub index: u64,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema: u32,
    pub catalog: String,
    pub theorems: Vec<TheoremTag>,
    /// Catalog records read, including unparseable ones.
    pub records: u64,
    /// Graphs checked against every requested theorem.
    pub processed: u64,
    pub tallies: Vec<TagTally>,
    pub census: Vec<CensusEntry>,
    pub counterexamples: Vec<Counterexample>,
    pub parse_errors: Vec<CatalogError>,
    /// Graphs abandoned because counting exceeded the budget.
    pub skipped: Vec<CatalogError>,
    /// Set when the counterexample cap cut the sweep short.
    pub aborted: bool,
    /// Wall-clock time; left out of deterministic output.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<u64>,
}

impl SweepReport {
    pub fn tally(&self, tag: TheoremTag) -> Option<&TagTally> {
        self.tallies.iter().find(|t| t.tag == tag)
    }

    pub fn census_for(&self, tag: TheoremTag) -> Option<&CensusEntry> {
        self.census.iter().find(|c| c.tag == tag)
    }

    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

struct TagOutcome {
    tag: TheoremTag,
    applicable: bool,
    holds: bool,
    extremal: bool,
    consistent: bool,
    detail: Option<String>,
}

enum GraphOutcome {
    Checked {
        graph6: String,
        tags: Vec<TagOutcome>,
    },
    Skipped(String),
    Unparsed(String),
}

fn outcome_of(v: &BoundVerdict) -> TagOutcome {
    TagOutcome {
        tag: v.tag,
        applicable: true,
        holds: v.holds,
        extremal: v.extremal,
        consistent: v.consistent,
        detail: (!v.is_sound()).then(|| serde_json::to_string(v).expect("verdicts serialize")),
    }
}

fn evaluate(g: &Graph, opts: &SweepOptions) -> Result<Vec<TagOutcome>, MisError> {
    let analysis = Analysis::compute(g, &opts.mis, opts.engine)?;
    let mut out = Vec::with_capacity(opts.tags.len());
    for &tag in &opts.tags {
        out.push(match tag {
            TheoremTag::CoverBound => outcome_of(&analysis.cover_bound()),
            TheoremTag::MatchingBound => outcome_of(&analysis.matching_bound()),
            TheoremTag::InducedLower => outcome_of(&analysis.induced_lower()),
            TheoremTag::KeCorollary => match analysis.ke_corollary() {
                Some(v) => outcome_of(&v),
                None => TagOutcome {
                    tag,
                    applicable: false,
                    holds: true,
                    extremal: false,
                    consistent: true,
                    detail: None,
                },
            },
            TheoremTag::BranchRecurrence => {
                let rec = analysis.recurrences(g)?;
                let failed: Vec<&RecurrenceVerdict> = rec.iter().filter(|r| !r.holds).collect();
                TagOutcome {
                    tag,
                    applicable: true,
                    holds: failed.is_empty(),
                    extremal: false,
                    consistent: true,
                    detail: (!failed.is_empty())
                        .then(|| serde_json::to_string(&failed).expect("verdicts serialize")),
                }
            }
        });
    }
    Ok(out)
}

fn evaluate_entry(entry: &CatalogEntry, opts: &SweepOptions) -> GraphOutcome {
    let g = match &entry.graph {
        Ok(g) => g,
        Err(msg) => return GraphOutcome::Unparsed(msg.clone()),
    };
    let graph6 = to_graph6(g).unwrap_or_else(|e| format!("<{e}>"));
    match evaluate(g, opts) {
        Ok(tags) => GraphOutcome::Checked { graph6, tags },
        Err(e) => GraphOutcome::Skipped(format!("{graph6}: {e}")),
    }
}

const CHUNK: usize = 1024;

/// Checks every catalog entry against the requested theorems.
///
/// Entries are evaluated in fixed-size chunks on `opts.jobs` worker threads
/// and merged in catalog order, so the report (minus `wall_time_ms`) does not
/// depend on the worker count.
pub fn sweep<I>(catalog: &str, entries: I, opts: &SweepOptions) -> SweepReport
where
    I: IntoIterator<Item = CatalogEntry>,
{
    let started = Instant::now();
    let mut tags = opts.tags.clone();
    tags.sort();
    tags.dedup();
    let opts = SweepOptions {
        tags: tags.clone(),
        ..opts.clone()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .expect("thread pool");

    let mut report = SweepReport {
        schema: SCHEMA_VERSION,
        catalog: catalog.to_string(),
        theorems: tags.clone(),
        records: 0,
        processed: 0,
        tallies: tags
            .iter()
            .map(|&tag| TagTally {
                tag,
                checked: 0,
                not_applicable: 0,
                held: 0,
                extremal: 0,
                consistent: 0,
            })
            .collect(),
        census: tags
            .iter()
            .map(|&tag| CensusEntry {
                tag,
                extremal: 0,
                graph6: Vec::new(),
                truncated: false,
            })
            .collect(),
        counterexamples: Vec::new(),
        parse_errors: Vec::new(),
        skipped: Vec::new(),
        aborted: false,
        wall_time_ms: None,
    };

    let mut entries = entries.into_iter();
    'outer: loop {
        let chunk: Vec<CatalogEntry> = entries.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let outcomes: Vec<GraphOutcome> =
            pool.install(|| chunk.par_iter().map(|e| evaluate_entry(e, &opts)).collect());
        for (entry, outcome) in chunk.iter().zip(outcomes) {
            report.records += 1;
            match outcome {
                GraphOutcome::Unparsed(message) => report.parse_errors.push(CatalogError {
                    index: entry.index,
                    message,
                }),
                GraphOutcome::Skipped(message) => report.skipped.push(CatalogError {
                    index: entry.index,
                    message,
                }),
                GraphOutcome::Checked { graph6, tags } => {
                    report.processed += 1;
                    for (i, t) in tags.into_iter().enumerate() {
                        let tally = &mut report.tallies[i];
                        if !t.applicable {
                            tally.not_applicable += 1;
                            continue;
                        }
                        tally.checked += 1;
                        tally.held += t.holds as u64;
                        tally.consistent += t.consistent as u64;
                        if t.extremal {
                            tally.extremal += 1;
                            let census = &mut report.census[i];
                            census.extremal += 1;
                            if census.graph6.len() < opts.census_cap {
                                census.graph6.push(graph6.clone());
                            } else {
                                census.truncated = true;
                            }
                        }
                        if let Some(detail) = t.detail {
                            report.counterexamples.push(Counterexample {
                                index: entry.index,
                                graph6: graph6.clone(),
                                tag: t.tag,
                                detail,
                            });
                        }
                    }
                    if report.counterexamples.len() >= opts.counterexample_cap {
                        report.counterexamples.truncate(opts.counterexample_cap);
                        report.aborted = true;
                        break 'outer;
                    }
                }
            }
        }
    }
    report.wall_time_ms = Some(started.elapsed().as_millis() as u64);
    report
}

/// Catalog entries for every labeled graph on `n` vertices, indexed by edge
/// mask.
pub fn labeled_catalog(
    n: usize,
    limit: usize,
) -> Result<impl Iterator<Item = CatalogEntry>, crate::generators::CatalogLimit> {
    Ok(crate::generators::enumerate_labeled_graphs(n, limit)?
        .enumerate()
        .map(|(i, g)| CatalogEntry {
            index: i as u64,
            graph: Ok(g),
        }))
}

/// Catalog entries for graph6 text, one record per line. Blank lines and a
/// leading `>>graph6<<` header are tolerated; entries are indexed by 1-based
/// line number.
pub fn graph6_catalog(text: &str) -> impl Iterator<Item = CatalogEntry> + '_ {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| CatalogEntry {
            index: i as u64 + 1,
            graph: crate::graph6::parse_graph6(l.trim_end().as_bytes())
                .map_err(|e| format!("line {}: {e}", i + 1)),
        })
}
