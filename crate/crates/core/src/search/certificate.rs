use std::collections::BTreeSet;

use serde::Serialize;

use super::SearchOptions;
use crate::error::{Error, Result};
use crate::formulas::{ex_extremal_construction, ex_formula, spex_closed_form};
use crate::graph::{are_isomorphic, canonical_graph6, odd_prism, spex_candidate, Graph};
use crate::patterns::contains_subgraph;
use crate::spectral::spectral_radius;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Edges,
    Spectral,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edges" => Ok(Mode::Edges),
            "spectral" => Ok(Mode::Spectral),
            _ => Err(Error::invalid(format!("unknown mode {s:?} (edges | spectral)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Optimum {
    Edges(usize),
    Radius(f64),
}

impl Optimum {
    pub fn as_f64(self) -> f64 {
        match self {
            Optimum::Edges(e) => e as f64,
            Optimum::Radius(r) => r,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Enumerated,
    Unpruned,
    Streamed,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    /// Prism-freeness tests performed.
    pub graphs_tested: u64,
    /// Graphs scored against the objective.
    pub graphs_scored: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl SearchStats {
    pub(crate) fn absorb(&mut self, o: &SearchStats) {
        self.nodes_expanded += o.nodes_expanded;
        self.graphs_tested += o.graphs_tested;
        self.graphs_scored += o.graphs_scored;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormulaComparison {
    pub formula_value: Option<Optimum>,
    pub agrees: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremalCertificate {
    pub n: usize,
    pub k: usize,
    pub mode: Mode,
    pub optimum: Optimum,
    /// Canonical graph6 of every optimal free graph, up to isomorphism.
    pub witnesses: Vec<String>,
    pub formula_comparison: FormulaComparison,
    /// Spectral mode: the witness is unique and isomorphic to `K_1 ∨ T_{n−1,2}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate_isomorphic: Option<bool>,
    /// Edge mode: the formula's construction is among the witnesses.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction_is_witness: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_gap: Option<f64>,
    pub pattern_larger_than_host: bool,
    pub provenance: Provenance,
    pub assumptions: Vec<String>,
    pub stats: SearchStats,
}

/// Scored free graph awaiting the final optimum.
#[derive(Clone, Debug)]
pub(crate) struct Scored {
    pub graph: Graph,
    pub value: f64,
}

pub(crate) fn score(g: &Graph, mode: Mode, opts: &SearchOptions) -> Result<f64> {
    match mode {
        Mode::Edges => Ok(g.edge_count() as f64),
        Mode::Spectral => {
            if g.edge_count() == 0 {
                return Ok(0.0);
            }
            Ok(spectral_radius(g, opts.tolerance)?.radius)
        }
    }
}

/// Keeps the running optimum and every candidate tying with it.
#[derive(Clone, Debug)]
pub(crate) struct Pool {
    pub mode: Mode,
    pub margin: f64,
    pub best: f64,
    pub items: Vec<Scored>,
}

impl Pool {
    pub fn new(mode: Mode, margin: f64, seed: f64) -> Self {
        Pool { mode, margin, best: seed, items: Vec::new() }
    }

    fn slack(&self) -> f64 {
        match self.mode {
            Mode::Edges => 0.0,
            Mode::Spectral => self.margin,
        }
    }

    pub fn offer(&mut self, graph: &Graph, value: f64) {
        if value < self.best - self.slack() {
            return;
        }
        self.items.push(Scored { graph: graph.clone(), value });
        if value > self.best {
            self.best = value;
            let floor = self.best - self.slack();
            self.items.retain(|s| s.value >= floor);
        }
    }

    pub fn merge(mut self, other: Pool) -> Pool {
        for s in other.items {
            self.offer(&s.graph, s.value);
        }
        self.best = self.best.max(other.best);
        let floor = self.best - self.slack();
        self.items.retain(|s| s.value >= floor);
        self
    }
}

/// Canonical witnesses; in spectral mode closed under optimum-preserving
/// edge deletion so that non-maximal optimal graphs are included.
pub(crate) fn witness_set(pool: &Pool, opts: &SearchOptions) -> Result<Vec<String>> {
    let mut set = BTreeSet::new();
    let mut queue = Vec::new();
    for s in &pool.items {
        let c = canonical_graph6(&s.graph)?;
        if set.insert(c.clone()) {
            queue.push(c);
        }
    }
    if pool.mode == Mode::Spectral {
        let floor = pool.best - opts.margin;
        while let Some(c) = queue.pop() {
            let g = Graph::from_graph6(&c)?;
            for (u, v) in g.edges().iter() {
                let mut h = g.clone();
                h.remove_edge(u, v);
                if score(&h, Mode::Spectral, opts)? >= floor {
                    let hc = canonical_graph6(&h)?;
                    if set.insert(hc.clone()) {
                        queue.push(hc);
                    }
                }
            }
        }
    }
    Ok(set.into_iter().collect())
}

pub(crate) fn verify_witnesses(witnesses: &[String], k: usize) -> Result<()> {
    let prism = odd_prism(k)?;
    for w in witnesses {
        let g = Graph::from_graph6(w)?;
        if let Some(e) = contains_subgraph(&g, &prism) {
            return Err(Error::VerificationFailed(format!(
                "witness {w} contains the prism at {:?}",
                e.as_slice()
            )));
        }
    }
    Ok(())
}

/// Assembles a certificate from the final pool, re-verifying every witness
/// with the generic subgraph oracle.
pub(crate) fn finish(
    n: usize,
    k: usize,
    pool: &Pool,
    opts: &SearchOptions,
    provenance: Provenance,
    assumptions: Vec<String>,
    stats: SearchStats,
) -> Result<ExtremalCertificate> {
    let witnesses = witness_set(pool, opts)?;
    verify_witnesses(&witnesses, k)?;
    if pool.mode == Mode::Spectral {
        for w in &witnesses {
            let r = score(&Graph::from_graph6(w)?, Mode::Spectral, opts)?;
            if (r - pool.best).abs() > 1e-9 * pool.best.max(1.0) {
                return Err(Error::VerificationFailed(format!(
                    "witness {w} has radius {r}, optimum {}",
                    pool.best
                )));
            }
        }
    }
    let pattern_larger_than_host = n < 2 * (2 * k + 1);
    let regime = if pattern_larger_than_host {
        "pattern larger than host; K_n optimal".to_string()
    } else {
        crate::formulas::ASYMPTOTIC_NOTE.to_string()
    };
    let mut cert = ExtremalCertificate {
        n,
        k,
        mode: pool.mode,
        optimum: match pool.mode {
            Mode::Edges => Optimum::Edges(pool.best as usize),
            Mode::Spectral => Optimum::Radius(pool.best),
        },
        witnesses,
        formula_comparison: FormulaComparison { formula_value: None, agrees: false, note: regime },
        candidate_isomorphic: None,
        construction_is_witness: None,
        closed_form_gap: None,
        pattern_larger_than_host,
        provenance,
        assumptions,
        stats,
    };
    match pool.mode {
        Mode::Edges if n >= 2 => {
            let f = ex_formula(n)?;
            cert.formula_comparison.formula_value = Some(Optimum::Edges(f.value.max(0) as usize));
            cert.formula_comparison.agrees = f.value == pool.best as i64;
            let construction = ex_extremal_construction(n, f.argmax_na)?;
            let c = canonical_graph6(&construction)?;
            cert.construction_is_witness = Some(cert.witnesses.contains(&c));
        }
        Mode::Spectral if n >= 3 => {
            let f = spex_closed_form(n)?;
            let gap = (pool.best - f.value).abs();
            cert.formula_comparison.formula_value = Some(Optimum::Radius(f.value));
            cert.formula_comparison.agrees = gap <= opts.margin;
            cert.closed_form_gap = Some(gap);
            let cand = spex_candidate(n)?;
            let unique_iso = cert.witnesses.len() == 1
                && are_isomorphic(&Graph::from_graph6(&cert.witnesses[0])?, &cand)?;
            cert.candidate_isomorphic = Some(unique_iso);
        }
        _ => {}
    }
    Ok(cert)
}
