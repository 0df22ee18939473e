//! Finite simple undirected graphs on dense vertex ids `0..n`.
//!
//! Adjacency is one bitset row per vertex, so edge tests are a single word
//! probe and neighbourhood intersections are word-parallel. Every
//! constructor documents its id layout so downstream tests are
//! deterministic.

pub(crate) mod bits;
mod canon;
mod construct;
mod graph6;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{are_isomorphic, canonical_form, canonical_graph6, CANON_MAX_ORDER};
pub use construct::{odd_prism, spex_candidate};
pub use graph6::{graph6_decode, graph6_encode};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    words: usize,
    rows: Vec<u64>,
    edges: usize,
}

/// Sorted list of edges `(u, v)` with `u < v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeList(Vec<(usize, usize)>);

impl EdgeList {
    /// Normalises, sorts and checks the pairs against `order`.
    pub fn new(order: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut v = Vec::new();
        for (a, b) in pairs {
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            for x in [a, b] {
                if x >= order {
                    return Err(Error::VertexOutOfRange { vertex: x, order });
                }
            }
            v.push((a.min(b), a.max(b)));
        }
        v.sort_unstable();
        v.dedup();
        Ok(EdgeList(v))
    }

    pub fn as_slice(&self) -> &[(usize, usize)] {
        &self.0
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
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = bits::words_for(n).max(1);
        Graph {
            order: n,
            words,
            rows: vec![0; n * words],
            edges: 0,
        }
    }

    pub fn from_edges(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let list = EdgeList::new(n, pairs)?;
        let mut g = Graph::empty(n);
        for (u, v) in list.iter() {
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Words per adjacency row.
    pub fn row_words(&self) -> usize {
        self.words
    }

    #[inline]
    fn row_mut(&mut self, v: usize) -> &mut [u64] {
        &mut self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && v < self.order && bits::test(self.row(u), v)
    }

    /// Inserts `uv`; returns whether the edge was new.
    ///
    /// Panics on a self-loop or an out-of-range id; use [`Graph::try_add_edge`]
    /// for unchecked input.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "self-loop at {u}");
        assert!(u < self.order && v < self.order, "edge {u}-{v} out of range");
        if bits::test(self.row(u), v) {
            return false;
        }
        bits::set(self.row_mut(u), v);
        bits::set(self.row_mut(v), u);
        self.edges += 1;
        true
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        for x in [u, v] {
            if x >= self.order {
                return Err(Error::VertexOutOfRange { vertex: x, order: self.order });
            }
        }
        Ok(self.add_edge(u, v))
    }

    /// Removes `uv`; returns whether it was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        bits::clear(self.row_mut(u), v);
        bits::clear(self.row_mut(v), u);
        self.edges -= 1;
        true
    }

    /// Joins every vertex of `a` to every vertex of `b`; the ranges must be
    /// disjoint.
    pub(crate) fn connect_ranges(&mut self, a: std::ops::Range<usize>, b: std::ops::Range<usize>) {
        debug_assert!(a.end <= b.start || b.end <= a.start);
        let mut added = 0;
        for v in a.clone() {
            let row = self.row_mut(v);
            let before = bits::count(row);
            bits::set_range(row, b.start, b.end);
            added += bits::count(row) - before;
        }
        for v in b {
            bits::set_range(self.row_mut(v), a.start, a.end);
        }
        self.edges += added;
    }

    pub fn degree(&self, v: usize) -> usize {
        bits::count(self.row(v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order).map(|v| self.degree(v)).collect()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits::iter(self.row(v))
    }

    pub fn edges(&self) -> EdgeList {
        let mut v = Vec::with_capacity(self.edges);
        for u in 0..self.order {
            v.extend(self.neighbors(u).filter(|&w| w > u).map(|w| (u, w)));
        }
        EdgeList(v)
    }

    /// Vertex pairs `(u, v)`, `u < v`, that are not edges, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| {
            (u + 1..self.order)
                .filter(move |&v| !self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for s in 0..self.order {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for w in bits::iter(self.row(u)) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected, with the empty graph counted as disconnected.
    pub fn is_connected(&self) -> bool {
        self.order > 0 && self.components().len() == 1
    }

    /// Subgraph induced by `vertices`; new id `i` is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order);
        let mut g = Graph::empty(self.order);
        for (u, v) in self.edges().iter() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn to_graph6(&self) -> String {
        graph6_encode(self)
    }

    pub fn from_graph6(s: &str) -> Result<Graph> {
        graph6_decode(s.as_bytes())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order)
            .field("edges", &self.edges().as_slice())
            .finish()
    }
}
