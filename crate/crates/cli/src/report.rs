use std::fmt::Write as _;
use std::time::Instant;

use misx::cameron_walker::{ConsistencyFault, CwBipartiteVerdict};
use misx::verifier::{
    Analysis, BoundVerdict, Engine, Recurrence, RecurrenceVerdict, TheoremTag, SCHEMA_VERSION,
};
use misx::{to_graph6, CwCertificate, Graph, InvariantBundle, MisConfig, MisError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct InputEcho {
    pub source: String,
    pub format: String,
    pub graph6: String,
    pub n: usize,
    pub edges: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CwBipartiteOutcome {
    Verdict(CwBipartiteVerdict),
    Fault { fault: ConsistencyFault },
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Timing {
    pub invariants_ms: f64,
    pub recurrences_ms: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub input: InputEcho,
    pub engine: Engine,
    pub invariants: InvariantBundle,
    pub koenig_egervary: bool,
    pub cw_bipartite: CwBipartiteOutcome,
    pub certificate: CwCertificate,
    pub verdicts: Vec<BoundVerdict>,
    pub recurrences: Vec<RecurrenceVerdict>,
    pub timing: Timing,
}

impl AnalysisReport {
    pub fn build(
        g: &Graph,
        source: String,
        format: String,
        config: &MisConfig,
        engine: Engine,
    ) -> Result<Self, MisError> {
        let start = Instant::now();
        let analysis = Analysis::compute(g, config, engine)?;
        let invariants_ms = ms(start);
        let start = Instant::now();
        let recurrences = analysis.recurrences(g)?;
        let recurrences_ms = ms(start);
        Ok(AnalysisReport {
            schema: SCHEMA_VERSION,
            input: InputEcho {
                source,
                format,
                graph6: to_graph6(g).unwrap_or_else(|e| format!("<{e}>")),
                n: g.n(),
                edges: g.edge_count(),
            },
            engine,
            verdicts: analysis.verdicts(),
            koenig_egervary: analysis.koenig_egervary,
            cw_bipartite: match analysis.cw_bipartite {
                Ok(v) => CwBipartiteOutcome::Verdict(v),
                Err(fault) => CwBipartiteOutcome::Fault { fault },
            },
            invariants: analysis.bundle,
            certificate: analysis.certificate,
            recurrences,
            timing: Timing {
                invariants_ms,
                recurrences_ms,
            },
        })
    }

    /// Sound means every bound holds, every characterization agrees, and
    /// every recurrence holds.
    pub fn is_sound(&self) -> bool {
        self.verdicts.iter().all(BoundVerdict::is_sound) && self.recurrences.iter().all(|r| r.holds)
    }

    pub fn human(&self) -> String {
        let mut s = String::new();
        let b = &self.invariants;
        let i = &self.input;
        let _ = writeln!(
            s,
            "graph   {} (n={}, edges={}, from {})",
            i.graph6, i.n, i.edges, i.source
        );
        let _ = writeln!(
            s,
            "m={}  alpha={}  beta={}  nu={}  nu0={}",
            b.m, b.alpha, b.beta, b.nu, b.nu0
        );
        let _ = writeln!(s, "cover    {}", b.cover);
        let _ = writeln!(s, "matching {:?}", b.matching.iter().collect::<Vec<_>>());
        let _ = writeln!(
            s,
            "induced  {:?}",
            b.induced_matching.iter().collect::<Vec<_>>()
        );
        let _ = writeln!(s, "koenig-egervary {}", self.koenig_egervary);
        match &self.cw_bipartite {
            CwBipartiteOutcome::Verdict(v) => {
                let _ = writeln!(s, "cw-bipartite {} ({})", v.is_cw_bipartite, v.reason);
            }
            CwBipartiteOutcome::Fault { fault } => {
                let _ = writeln!(s, "cw-bipartite FAULT: {fault}");
            }
        }
        for c in &self.certificate.components {
            let shape = serde_json::to_string(&c.shape).unwrap_or_default();
            let _ = writeln!(s, "component {} {:?} {shape}", c.index, c.vertices);
        }
        for v in &self.verdicts {
            let _ = writeln!(
                s,
                "{:<18} {}  m={} bound={}{}{}",
                v.tag.as_str(),
                if v.is_sound() { "holds" } else { "VIOLATED" },
                v.m,
                v.bound,
                if v.extremal { "  extremal" } else { "" },
                match v.characterization_expected {
                    Some(e) if !v.consistent => format!("  characterization predicted {e}"),
                    _ => String::new(),
                },
            );
        }
        if !self
            .verdicts
            .iter()
            .any(|v| v.tag == TheoremTag::KeCorollary)
        {
            let _ = writeln!(
                s,
                "{:<18} n/a  beta != nu",
                TheoremTag::KeCorollary.as_str()
            );
        }
        let failed: Vec<_> = self.recurrences.iter().filter(|r| !r.holds).collect();
        let leaves = self
            .recurrences
            .iter()
            .filter(|r| matches!(r.recurrence, Recurrence::Leaf { .. }))
            .count();
        let _ = writeln!(
            s,
            "{:<18} {}  {} checks ({} leaf)",
            "BRANCH_RECURRENCE",
            if failed.is_empty() {
                "holds"
            } else {
                "VIOLATED"
            },
            self.recurrences.len(),
            leaves
        );
        for r in failed {
            let _ = writeln!(
                s,
                "  failed {:?}: lhs={} rhs={}",
                r.recurrence, r.lhs, r.rhs
            );
        }
        s
    }
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}
