//! Forbidden-subgraph detection.
//!
//! Containment is always the non-induced kind: a pattern edge must land on
//! a host edge, host edges between images of non-adjacent pattern vertices
//! are allowed. [`contains_subgraph`] is the plain backtracking reference;
//! [`find_prism`] is the specialised odd-prism detector, which must agree
//! with it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, odd_prism, Graph};
use crate::spectral::VertexPartition;

/// Injective map from pattern vertex ids to host vertex ids; serialises as
/// the array of host ids in pattern-vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Embedding(Vec<usize>);

impl Embedding {
    /// Validates injectivity and that every pattern edge maps to a host edge.
    pub fn checked(map: Vec<usize>, host: &Graph, pattern: &Graph) -> Result<Self> {
        if map.len() != pattern.order() {
            return Err(Error::invalid("embedding length differs from pattern order"));
        }
        let mut seen = vec![false; host.order()];
        for &h in &map {
            if h >= host.order() {
                return Err(Error::VertexOutOfRange { vertex: h, order: host.order() });
            }
            if std::mem::replace(&mut seen[h], true) {
                return Err(Error::invalid(format!("host vertex {h} used twice")));
            }
        }
        for (a, b) in pattern.edges().iter() {
            if !host.has_edge(map[a], map[b]) {
                return Err(Error::invalid(format!(
                    "pattern edge {a}-{b} maps to non-edge {}-{}",
                    map[a], map[b]
                )));
            }
        }
        Ok(Embedding(map))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn image(&self, pattern_vertex: usize) -> usize {
        self.0[pattern_vertex]
    }
}

/// Result of a search that may run under a node-expansion budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Containment {
    Found(Embedding),
    Absent,
    BudgetExceeded { nodes: u64 },
}

impl Containment {
    pub fn embedding(self) -> Option<Embedding> {
        match self {
            Containment::Found(e) => Some(e),
            _ => None,
        }
    }
}

struct Budget {
    nodes: u64,
    cap: Option<u64>,
}

impl Budget {
    /// Counts one expansion; false once the cap is hit.
    #[inline]
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.cap.is_none_or(|c| self.nodes <= c)
    }
}

/// Pattern vertices in search order: highest degree first, then most
/// already-placed neighbours, then degree, ties by lower id.
fn search_order(pattern: &Graph) -> Vec<usize> {
    let n = pattern.order();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = pattern.neighbors(v).filter(|&w| placed[w]).count();
                (back, pattern.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
    }
    order
}

struct Matcher<'a> {
    host: &'a Graph,
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
    pdeg: Vec<usize>,
    hdeg: Vec<usize>,
    map: Vec<usize>,
    used: Vec<u64>,
    budget: Budget,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize) -> Option<bool> {
        if depth == self.order.len() {
            return Some(true);
        }
        let pv = self.order[depth];
        let words = self.host.row_words();
        let mut cand = vec![u64::MAX; words];
        let hn = self.host.order();
        if !hn.is_multiple_of(64) {
            cand[words - 1] = (1u64 << (hn % 64)) - 1;
        }
        for &pw in &self.back[depth] {
            let row = self.host.row(self.map[pw]);
            for (c, r) in cand.iter_mut().zip(row) {
                *c &= r;
            }
        }
        for (c, u) in cand.iter_mut().zip(&self.used) {
            *c &= !u;
        }
        for hv in bits::iter(&cand).collect::<Vec<_>>() {
            if self.hdeg[hv] < self.pdeg[pv] {
                continue;
            }
            if !self.budget.tick() {
                return None;
            }
            self.map[pv] = hv;
            bits::set(&mut self.used, hv);
            if self.extend(depth + 1)? {
                return Some(true);
            }
            bits::clear(&mut self.used, hv);
        }
        Some(false)
    }
}

/// Generic backtracking search with an optional node budget.
pub fn contains_subgraph_bounded(host: &Graph, pattern: &Graph, cap: Option<u64>) -> Containment {
    if pattern.order() > host.order() || pattern.edge_count() > host.edge_count() {
        return Containment::Absent;
    }
    let order = search_order(pattern);
    let mut pos = vec![0; pattern.order()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let back = order
        .iter()
        .enumerate()
        .map(|(i, &v)| pattern.neighbors(v).filter(|&w| pos[w] < i).collect())
        .collect();
    let mut m = Matcher {
        host,
        order,
        back,
        pdeg: pattern.degrees(),
        hdeg: host.degrees(),
        map: vec![usize::MAX; pattern.order()],
        used: vec![0; host.row_words()],
        budget: Budget { nodes: 0, cap },
    };
    match m.extend(0) {
        None => Containment::BudgetExceeded { nodes: m.budget.nodes },
        Some(false) => Containment::Absent,
        Some(true) => Containment::Found(
            Embedding::checked(m.map, host, pattern).expect("search produced a valid embedding"),
        ),
    }
}

/// Lexicographically least embedding under the search order, if any.
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    contains_subgraph_bounded(host, pattern, None).embedding()
}

struct PrismSearch<'a> {
    g: &'a Graph,
    m: usize,
    eligible: Vec<u64>,
    cycle: Vec<usize>,
    on_cycle: Vec<u64>,
    partner: Vec<usize>,
    used: Vec<u64>,
    budget: Budget,
}

impl PrismSearch<'_> {
    /// Extends the first layer cycle; `None` means budget exhausted.
    fn grow_cycle(&mut self) -> Option<bool> {
        let last = *self.cycle.last().expect("cycle seeded");
        let start = self.cycle[0];
        if self.cycle.len() == self.m {
            if !self.g.has_edge(last, start) || self.cycle[1] > self.cycle[self.m - 1] {
                return Some(false);
            }
            return self.match_second_layer();
        }
        let next: Vec<usize> = bits::iter(self.g.row(last))
            .filter(|&w| w > start && bits::test(&self.eligible, w) && !bits::test(&self.on_cycle, w))
            .collect();
        for w in next {
            if !self.budget.tick() {
                return None;
            }
            self.cycle.push(w);
            bits::set(&mut self.on_cycle, w);
            let found = self.grow_cycle()?;
            if found {
                return Some(true);
            }
            bits::clear(&mut self.on_cycle, w);
            self.cycle.pop();
        }
        Some(false)
    }

    fn layer_candidates(&self, i: usize) -> Vec<u64> {
        let row = self.g.row(self.cycle[i]);
        row.iter()
            .zip(&self.eligible)
            .zip(&self.on_cycle)
            .map(|((r, e), c)| r & e & !c)
            .collect()
    }

    fn match_second_layer(&mut self) -> Option<bool> {
        let cands: Vec<Vec<u64>> = (0..self.m).map(|i| self.layer_candidates(i)).collect();
        if cands.iter().any(|c| c.iter().all(|&w| w == 0)) {
            return Some(false);
        }
        self.partner.clear();
        self.used.iter_mut().for_each(|w| *w = 0);
        self.place_partner(&cands)
    }

    fn place_partner(&mut self, cands: &[Vec<u64>]) -> Option<bool> {
        let i = self.partner.len();
        if i == self.m {
            return Some(self.g.has_edge(self.partner[self.m - 1], self.partner[0]));
        }
        let mut c = cands[i].clone();
        if i > 0 {
            let prev = self.g.row(self.partner[i - 1]);
            for (x, p) in c.iter_mut().zip(prev) {
                *x &= p;
            }
        }
        for (x, u) in c.iter_mut().zip(&self.used) {
            *x &= !u;
        }
        for d in bits::iter(&c).collect::<Vec<_>>() {
            if !self.budget.tick() {
                return None;
            }
            self.partner.push(d);
            bits::set(&mut self.used, d);
            if self.place_partner(cands)? {
                return Some(true);
            }
            bits::clear(&mut self.used, d);
            self.partner.pop();
        }
        Some(false)
    }
}

/// Specialised `C_{2k+1}^□` search with an optional node budget.
///
/// Enumerates `(2k+1)`-cycles anchored at their least vertex with a fixed
/// direction (this removes the cycle's dihedral symmetry), then looks for a
/// vertex-disjoint partner cycle matched position by position. Only
/// vertices of degree at least 3 can lie on a prism.
pub fn find_prism_bounded(g: &Graph, k: usize, cap: Option<u64>) -> Result<Containment> {
    if k == 0 {
        return Err(Error::invalid("odd prism needs k >= 1"));
    }
    let m = 2 * k + 1;
    if g.order() < 2 * m || g.edge_count() < 3 * m {
        return Ok(Containment::Absent);
    }
    let mut eligible = vec![0u64; g.row_words()];
    for v in 0..g.order() {
        if g.degree(v) >= 3 {
            bits::set(&mut eligible, v);
        }
    }
    let mut s = PrismSearch {
        g,
        m,
        cycle: Vec::with_capacity(m),
        on_cycle: vec![0; g.row_words()],
        partner: Vec::with_capacity(m),
        used: vec![0; g.row_words()],
        eligible,
        budget: Budget { nodes: 0, cap },
    };
    for c0 in bits::iter(&s.eligible.clone()) {
        s.cycle.clear();
        s.cycle.push(c0);
        s.on_cycle.iter_mut().for_each(|w| *w = 0);
        bits::set(&mut s.on_cycle, c0);
        match s.grow_cycle() {
            None => return Ok(Containment::BudgetExceeded { nodes: s.budget.nodes }),
            Some(true) => {
                let mut map = vec![0; 2 * m];
                for i in 0..m {
                    map[2 * i] = s.cycle[i];
                    map[2 * i + 1] = s.partner[i];
                }
                let e = Embedding::checked(map, g, &odd_prism(k)?)
                    .expect("prism detector produced a valid embedding");
                return Ok(Containment::Found(e));
            }
            Some(false) => {}
        }
    }
    Ok(Containment::Absent)
}

/// A copy of `C_{2k+1}^□` in `g`, in the vertex order of [`odd_prism`].
pub fn find_prism(g: &Graph, k: usize) -> Result<Option<Embedding>> {
    Ok(find_prism_bounded(g, k, None)?.embedding())
}

pub fn is_prism_free(g: &Graph, k: usize) -> Result<bool> {
    Ok(find_prism(g, k)?.is_none())
}

/// A 4-cycle `a b c d` with the edge `ab` inside block 0 and the edge `cd`
/// inside block 1. Returned as the embedding of `C_4 = 0-1-2-3-0`.
pub fn find_crossing_c4(g: &Graph, p: &VertexPartition) -> Result<Option<Embedding>> {
    if p.block_count() != 2 || p.len() != g.order() {
        return Err(Error::invalid("crossing C4 search needs a 2-block partition of V(G)"));
    }
    let side = |v: usize| p.block_of(v);
    for a in 0..g.order() {
        if side(a) != 0 {
            continue;
        }
        for b in g.neighbors(a).filter(|&b| side(b) == 0) {
            for c in g.neighbors(b).filter(|&c| side(c) == 1) {
                if let Some(d) = g.neighbors(c).find(|&d| side(d) == 1 && g.has_edge(a, d)) {
                    let c4 = Graph::cycle(4)?;
                    return Ok(Some(
                        Embedding::checked(vec![a, b, c, d], g, &c4).expect("valid 4-cycle"),
                    ));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

/// The two configurations every 2-colouring of an odd prism must contain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrismStructure {
    MonochromaticP4 { color: Color, path: [usize; 4] },
    /// `u v w z` with `u, v` red and `w, z` blue.
    BicoloredC4 { cycle: [usize; 4] },
}

pub fn find_mono_p4(g: &Graph, coloring: &[Color]) -> Option<PrismStructure> {
    for b in 0..g.order() {
        let col = coloring[b];
        for c in g.neighbors(b).filter(|&c| coloring[c] == col) {
            for a in g.neighbors(b).filter(|&a| a != c && coloring[a] == col) {
                if let Some(d) = g
                    .neighbors(c)
                    .find(|&d| d != a && d != b && coloring[d] == col)
                {
                    return Some(PrismStructure::MonochromaticP4 { color: col, path: [a, b, c, d] });
                }
            }
        }
    }
    None
}

pub fn find_bicolored_c4(g: &Graph, coloring: &[Color]) -> Option<PrismStructure> {
    use Color::*;
    for u in (0..g.order()).filter(|&u| coloring[u] == Red) {
        for v in g.neighbors(u).filter(|&v| coloring[v] == Red) {
            for w in g.neighbors(v).filter(|&w| coloring[w] == Blue) {
                if let Some(z) = g
                    .neighbors(w)
                    .find(|&z| coloring[z] == Blue && g.has_edge(z, u))
                {
                    return Some(PrismStructure::BicoloredC4 { cycle: [u, v, w, z] });
                }
            }
        }
    }
    None
}

/// Monochromatic `P_4` first, else a red-red-blue-blue `C_4`, in a
/// prebuilt prism.
pub fn find_coloring_structure(prism: &Graph, coloring: &[Color]) -> Result<Option<PrismStructure>> {
    if coloring.len() != prism.order() {
        return Err(Error::invalid(format!(
            "coloring has {} entries, prism has {} vertices",
            coloring.len(),
            prism.order()
        )));
    }
    Ok(find_mono_p4(prism, coloring).or_else(|| find_bicolored_c4(prism, coloring)))
}

/// Searches `C_{2k+1}^□` (layout of [`odd_prism`]) under `coloring`.
pub fn find_mono_p4_or_bicolored_c4(k: usize, coloring: &[Color]) -> Result<Option<PrismStructure>> {
    find_coloring_structure(&odd_prism(k)?, coloring)
}
