//! Exact canonical labelling for small graphs.
//!
//! Vertices are first split into isomorphism-invariant colour classes by
//! iterated neighbour-colour refinement; the canonical form is then the
//! labelling, among those respecting the ordered classes, whose upper
//! triangle (graph6 column order) is lexicographically largest. The search
//! is a depth-first walk over positions with prefix pruning, so it stays
//! exact while avoiding most of the `n!` permutations.

use super::Graph;
use crate::error::{Error, Result};

/// Largest order accepted by [`canonical_form`].
pub const CANON_MAX_ORDER: usize = 12;

/// Invariant colouring: colours are ranks of sorted signatures.
fn invariant_colours(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut colour = vec![0usize; n];
    let mut classes = 1.min(n);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        for v in 0..n {
            colour[v] = uniq.binary_search(&sigs[v]).expect("present");
        }
        if uniq.len() == classes {
            return colour;
        }
        classes = uniq.len();
    }
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    total_bits: usize,
    cell_at: Vec<usize>,
    colour: Vec<usize>,
    placed: Vec<usize>,
    used: Vec<bool>,
    best: Option<(u128, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, p: usize, code: u128, tight: bool) {
        if p == self.n {
            let better = match &self.best {
                None => true,
                Some((b, _)) => code > *b,
            };
            if better {
                self.best = Some((code, self.placed.clone()));
            }
            return;
        }
        let prefix_bits = p * (p + 1) / 2;
        for v in 0..self.n {
            if self.used[v] || self.colour[v] != self.cell_at[p] {
                continue;
            }
            let mut c = code;
            for i in 0..p {
                c = (c << 1) | u128::from(self.g.has_edge(self.placed[i], v));
            }
            let mut still_tight = false;
            if tight {
                if let Some((b, _)) = &self.best {
                    let bp = b >> (self.total_bits - prefix_bits);
                    if c < bp {
                        continue;
                    }
                    still_tight = c == bp;
                }
            }
            self.used[v] = true;
            self.placed.push(v);
            self.run(p + 1, c, still_tight);
            self.placed.pop();
            self.used[v] = false;
        }
    }
}

/// Returns the canonical relabelling of `g` and the permutation used
/// (`perm[v]` is the new id of `v`).
pub fn canonical_form(g: &Graph) -> Result<(Graph, Vec<usize>)> {
    let n = g.order();
    if n > CANON_MAX_ORDER {
        return Err(Error::CapExceeded(format!(
            "canonical form supports n <= {CANON_MAX_ORDER}, got {n}"
        )));
    }
    let colour = invariant_colours(g);
    let mut cell_at = colour.clone();
    cell_at.sort_unstable();
    let mut s = Search {
        g,
        n,
        total_bits: n * n.saturating_sub(1) / 2,
        cell_at,
        colour,
        placed: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    s.run(0, 0, true);
    let order = s.best.map(|(_, o)| o).unwrap_or_default();
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    Ok((g.relabel(&perm), perm))
}

/// graph6 string of the canonical form; equal strings iff isomorphic.
pub fn canonical_graph6(g: &Graph) -> Result<String> {
    Ok(canonical_form(g)?.0.to_graph6())
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    Ok(canonical_graph6(g)? == canonical_graph6(h)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_copies_agree() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)]).unwrap();
        let perm = [4, 2, 0, 5, 1, 3];
        let h = g.relabel(&perm);
        assert_eq!(canonical_graph6(&g).unwrap(), canonical_graph6(&h).unwrap());
        assert!(are_isomorphic(&g, &h).unwrap());
    }

    #[test]
    fn distinguishes_same_degree_sequence() {
        // C_6 versus two triangles
        let c6 = Graph::cycle(6).unwrap();
        let c3 = Graph::cycle(3).unwrap();
        assert!(!are_isomorphic(&c6, &c3.disjoint_union(&c3)).unwrap());
    }

    #[test]
    fn counts_isomorphism_classes_on_five_vertices() {
        let mut seen = std::collections::HashSet::new();
        for mask in 0u32..1 << 10 {
            let mut g = Graph::empty(5);
            let mut bit = 0;
            for j in 1..5 {
                for i in 0..j {
                    if mask >> bit & 1 == 1 {
                        g.add_edge(i, j);
                    }
                    bit += 1;
                }
            }
            seen.insert(canonical_graph6(&g).unwrap());
        }
        assert_eq!(seen.len(), 34);
    }

    #[test]
    fn rejects_large_orders() {
        assert!(canonical_form(&Graph::empty(CANON_MAX_ORDER + 1)).is_err());
    }
}
