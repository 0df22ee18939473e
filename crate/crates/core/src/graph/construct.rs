//! Named constructions and graph operations.

use super::Graph;
use crate::error::{Error, Result};

impl Graph {
    /// `K_n`.
    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// `K_{s,t}` with parts `0..s` and `s..s+t`.
    pub fn complete_bipartite(s: usize, t: usize) -> Graph {
        let mut g = Graph::empty(s + t);
        g.connect_ranges(0..s, s..s + t);
        g
    }

    /// `C_n` on the ring `0-1-…-(n-1)-0`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::invalid(format!("cycle needs n >= 3, got {n}")));
        }
        let mut g = Graph::path(n)?;
        g.add_edge(n - 1, 0);
        Ok(g)
    }

    /// `P_n` on `0-1-…-(n-1)`.
    pub fn path(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::invalid("path needs n >= 1"));
        }
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        Ok(g)
    }

    /// Part sizes of `T_{n,r}`, larger parts first.
    pub fn turan_parts(n: usize, r: usize) -> Result<Vec<usize>> {
        if r == 0 {
            return Err(Error::invalid("Turán graph needs r >= 1"));
        }
        Ok((0..r).map(|i| n / r + usize::from(i < n % r)).collect())
    }

    /// `T_{n,r}`: complete `r`-partite, part sizes within one of each other,
    /// larger parts first, ids assigned part by part.
    pub fn turan(n: usize, r: usize) -> Result<Graph> {
        Ok(Graph::complete_multipartite(&Graph::turan_parts(n, r)?))
    }

    /// Complete multipartite graph with consecutive id ranges as parts.
    pub fn complete_multipartite(parts: &[usize]) -> Graph {
        let n = parts.iter().sum();
        let mut g = Graph::empty(n);
        let mut starts = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for &p in parts {
            starts.push(acc..acc + p);
            acc += p;
        }
        for i in 0..starts.len() {
            for j in i + 1..starts.len() {
                g.connect_ranges(starts[i].clone(), starts[j].clone());
            }
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// `G ∪ H`; ids of `H` are shifted by `|G|`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut g = Graph::empty(shift + other.order());
        for (u, v) in self.edges().iter() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges().iter() {
            g.add_edge(u + shift, v + shift);
        }
        g
    }

    /// `G ∨ H`; ids of `H` are shifted by `|G|`.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        let n = self.order();
        g.connect_ranges(0..n, n..n + other.order());
        g
    }

    /// `G □ H`; vertex `(u, v)` gets id `u * |H| + v`.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let m = other.order();
        let mut g = Graph::empty(self.order() * m);
        for u in 0..self.order() {
            for (a, b) in other.edges().iter() {
                g.add_edge(u * m + a, u * m + b);
            }
        }
        for (a, b) in self.edges().iter() {
            for v in 0..m {
                g.add_edge(a * m + v, b * m + v);
            }
        }
        g
    }
}

/// `C_{2k+1} □ K_2`. Vertex `2i` is `u_i` on the first layer, `2i + 1` is
/// its partner `v_i` on the second; both layers run `0, 1, …, 2k` around the
/// cycle.
pub fn odd_prism(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::invalid("odd prism needs k >= 1"));
    }
    Ok(Graph::cycle(2 * k + 1)?.cartesian_product(&Graph::complete(2)))
}

/// `K_1 ∨ T_{n-1,2}` with the apex at id 0, the larger side at
/// `1..=⌈(n-1)/2⌉` and the smaller side after it.
pub fn spex_candidate(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::invalid(format!("spex candidate needs n >= 2, got {n}")));
    }
    Ok(Graph::complete(1).join(&Graph::turan(n - 1, 2)?))
}
