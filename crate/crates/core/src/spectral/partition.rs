//! Equitable partitions and their quotient matrices.
//!
//! A partition is equitable when every vertex of block `i` has the same
//! number `b_ij` of neighbours in block `j`. The largest eigenvalue of the
//! quotient `B = (b_ij)` equals the spectral radius of the graph, so a
//! handful of blocks certifies the radius of an arbitrarily large graph.

use serde::{Deserialize, Serialize};

use super::{largest_real_root, Polynomial};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Real;
use crate::IntPolynomial;

/// Largest quotient dimension accepted by [`quotient_char_poly`].
pub const CHAR_POLY_MAX_DIM: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexPartition {
    block_of: Vec<usize>,
    blocks: usize,
}

impl VertexPartition {
    /// Block ids must be dense: every id in `0..k` occurs.
    pub fn new(block_of: Vec<usize>) -> Result<Self> {
        let blocks = block_of.iter().map(|&b| b + 1).max().unwrap_or(0);
        let mut seen = vec![false; blocks];
        for &b in &block_of {
            seen[b] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::invalid("block ids are not dense"));
        }
        Ok(VertexPartition { block_of, blocks })
    }

    /// Single block holding all `n` vertices.
    pub fn trivial(n: usize) -> Self {
        VertexPartition { block_of: vec![0; n], blocks: usize::from(n > 0) }
    }

    /// Builds from explicit blocks, which must cover `0..n` exactly once.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut block_of = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, order: n });
                }
                if block_of[v] != usize::MAX {
                    return Err(Error::invalid(format!("vertex {v} in two blocks")));
                }
                block_of[v] = i;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::invalid(format!("vertex {v} in no block")));
        }
        Self::new(block_of)
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.block_of
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (v, &b) in self.block_of.iter().enumerate() {
            out[b].push(v);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.blocks];
        for &b in &self.block_of {
            s[b] += 1;
        }
        s
    }

    fn check_order(&self, g: &Graph) -> Result<()> {
        if self.len() != g.order() {
            return Err(Error::invalid(format!(
                "partition covers {} vertices, graph has {}",
                self.len(),
                g.order()
            )));
        }
        Ok(())
    }
}

fn block_counts(g: &Graph, p: &VertexPartition, v: usize) -> Vec<u64> {
    let mut c = vec![0; p.block_count()];
    for w in g.neighbors(v) {
        c[p.block_of(w)] += 1;
    }
    c
}

/// Coarsest equitable refinement of `initial` by colour refinement: split
/// blocks by neighbour-count signature until stable. New block ids follow
/// first appearance in vertex order.
pub fn coarsest_equitable_partition(g: &Graph, initial: &VertexPartition) -> Result<VertexPartition> {
    initial.check_order(g)?;
    let mut p = initial.clone();
    loop {
        let mut ids: std::collections::HashMap<(usize, Vec<u64>), usize> = Default::default();
        let mut next = Vec::with_capacity(g.order());
        for v in 0..g.order() {
            let key = (p.block_of(v), block_counts(g, &p, v));
            let fresh = ids.len();
            next.push(*ids.entry(key).or_insert(fresh));
        }
        let refined = VertexPartition::new(next)?;
        if refined.block_count() == p.block_count() {
            return Ok(refined);
        }
        p = refined;
    }
}

fn first_violation(g: &Graph, p: &VertexPartition) -> Option<Error> {
    let mut rep: Vec<Option<(usize, Vec<u64>)>> = vec![None; p.block_count()];
    for v in 0..g.order() {
        let c = block_counts(g, p, v);
        let b = p.block_of(v);
        match &rep[b] {
            None => rep[b] = Some((v, c)),
            Some((u, rc)) => {
                if let Some(towards) = (0..c.len()).find(|&j| c[j] != rc[j]) {
                    return Some(Error::NotEquitable { u: *u, v, block: b, towards });
                }
            }
        }
    }
    None
}

pub fn is_equitable(g: &Graph, p: &VertexPartition) -> bool {
    p.len() == g.order() && first_violation(g, p).is_none()
}

/// `k × k` matrix of block-to-block neighbour counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientMatrix {
    dim: usize,
    entries: Vec<u64>,
}

impl QuotientMatrix {
    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::invalid("quotient matrix must be square"));
        }
        Ok(QuotientMatrix { dim, entries: rows.concat() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.dim.max(1)).map(|r| r.to_vec()).take(self.dim).collect()
    }
}

/// Quotient matrix of an equitable partition; errors with a violating
/// vertex pair otherwise.
pub fn quotient_matrix(g: &Graph, p: &VertexPartition) -> Result<QuotientMatrix> {
    p.check_order(g)?;
    if let Some(e) = first_violation(g, p) {
        return Err(e);
    }
    let k = p.block_count();
    let mut entries = vec![0; k * k];
    let mut done = vec![false; k];
    for v in 0..g.order() {
        let b = p.block_of(v);
        if !done[b] {
            done[b] = true;
            entries[b * k..(b + 1) * k].copy_from_slice(&block_counts(g, p, v));
        }
    }
    Ok(QuotientMatrix { dim: k, entries })
}

/// Strongly connected classes of the support digraph of `B`.
fn irreducible_classes(b: &QuotientMatrix) -> Vec<Vec<usize>> {
    let k = b.dim();
    let mut reach = vec![vec![false; k]; k];
    for i in 0..k {
        reach[i][i] = true;
        for j in 0..k {
            if b.get(i, j) > 0 {
                reach[i][j] = true;
            }
        }
    }
    for m in 0..k {
        for i in 0..k {
            if reach[i][m] {
                for j in 0..k {
                    if reach[m][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut assigned = vec![false; k];
    let mut out = Vec::new();
    for i in 0..k {
        if assigned[i] {
            continue;
        }
        let class: Vec<usize> = (0..k).filter(|&j| reach[i][j] && reach[j][i]).collect();
        for &j in &class {
            assigned[j] = true;
        }
        out.push(class);
    }
    out
}

/// Shifted power iteration on an irreducible block, stopped by the
/// Collatz–Wielandt bracket `min (Bx)_i/x_i ≤ ρ ≤ max (Bx)_i/x_i`.
fn irreducible_radius<T: Real>(b: &QuotientMatrix, class: &[usize], tol: T, cap: usize) -> Result<T> {
    let k = class.len();
    let entry = |i: usize, j: usize| T::from_u64(b.get(class[i], class[j])).expect("entry fits");
    if k == 1 {
        return Ok(entry(0, 0));
    }
    let mut x = vec![T::one(); k];
    let mut bx = vec![T::zero(); k];
    let mut bracket = (T::zero(), T::infinity());
    for _ in 0..cap {
        for i in 0..k {
            bx[i] = (0..k).map(|j| entry(i, j) * x[j]).sum();
        }
        let mut lo = T::infinity();
        let mut hi = T::zero();
        for i in 0..k {
            let r = bx[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        bracket = (lo, hi);
        if hi - lo <= tol * hi.max(T::one()) {
            return Ok((lo + hi) / T::of(2.0));
        }
        let mut top = T::zero();
        for i in 0..k {
            bx[i] += x[i];
            top = top.max(bx[i]);
        }
        for i in 0..k {
            x[i] = bx[i] / top;
        }
    }
    Err(Error::NotConverged {
        estimate: ((bracket.0 + bracket.1) / T::of(2.0)).as_f64(),
        residual: (bracket.1 - bracket.0).as_f64(),
        iterations: cap,
    })
}

/// Largest eigenvalue of a nonnegative quotient matrix. Reducible inputs
/// are split into irreducible classes. If iteration fails on a small
/// matrix (`k ≤ 4`) the exact characteristic polynomial is solved instead.
pub fn quotient_spectral_radius<T: Real>(b: &QuotientMatrix, tolerance: T) -> Result<T> {
    if b.dim() == 0 {
        return Err(Error::EmptyGraph);
    }
    let cap = 1_000_000;
    let attempt = || -> Result<T> {
        let mut best = T::zero();
        for class in irreducible_classes(b) {
            best = best.max(irreducible_radius(b, &class, tolerance, cap)?);
        }
        Ok(best)
    };
    match attempt() {
        Err(Error::NotConverged { .. }) if b.dim() <= 4 => {
            let p: Polynomial<T> = quotient_char_poly(b)?
                .cast()
                .ok_or_else(|| Error::invalid("characteristic polynomial overflows the scalar"))?;
            let row_max = b.rows().iter().map(|r| r.iter().sum::<u64>()).max().unwrap_or(0);
            largest_real_root(&p, T::from_u64(row_max + 1).expect("fits"))
        }
        other => other,
    }
}

/// `det(xI − B)` computed exactly by Leibniz expansion over permutations.
pub fn quotient_char_poly(b: &QuotientMatrix) -> Result<IntPolynomial> {
    let k = b.dim();
    if k > CHAR_POLY_MAX_DIM {
        return Err(Error::CapExceeded(format!(
            "exact characteristic polynomial supports k <= {CHAR_POLY_MAX_DIM}, got {k}"
        )));
    }
    let cell = |i: usize, j: usize| -> IntPolynomial {
        let c = -(b.get(i, j) as i128);
        if i == j {
            Polynomial::new(vec![c, 1])
        } else {
            Polynomial::new(vec![c])
        }
    };
    let mut total = IntPolynomial::zero();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut sign = 1i128;
    // Heap's algorithm; each swap flips the sign.
    let mut c = vec![0usize; k];
    let term = |perm: &[usize], sign: i128, total: &mut IntPolynomial| {
        let mut prod = Polynomial::new(vec![sign]);
        for (i, &j) in perm.iter().enumerate() {
            prod = &prod * &cell(i, j);
            if prod.is_zero() {
                return;
            }
        }
        *total = &*total + &prod;
    };
    term(&perm, sign, &mut total);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            term(&perm, sign, &mut total);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::spex_candidate;

    fn qm(rows: &[&[u64]]) -> QuotientMatrix {
        QuotientMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn apex_partition(n: usize) -> VertexPartition {
        let n1 = (n - 1).div_ceil(2);
        let mut a = vec![0];
        a.extend(std::iter::repeat_n(1, n1));
        a.extend(std::iter::repeat_n(2, n - 1 - n1));
        VertexPartition::new(a).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(VertexPartition::new(vec![0, 2]).is_err());
        assert!(VertexPartition::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(VertexPartition::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
        let p = VertexPartition::from_blocks(3, &[vec![2], vec![0, 1]]).unwrap();
        assert_eq!(p.assignment(), &[1, 1, 0]);
        assert_eq!(p.block_sizes(), vec![1, 2]);
    }

    #[test]
    fn coarsest_partitions() {
        // Both sides of T_{8,2} are interchangeable, so the coarsest
        // equitable partition of K_1 ∨ K_{4,4} keeps them together.
        let g = spex_candidate(9).unwrap();
        let p = coarsest_equitable_partition(&g, &VertexPartition::trivial(9)).unwrap();
        assert_eq!(p.block_sizes(), vec![1, 8]);
        assert_eq!(quotient_matrix(&g, &p).unwrap().rows(), vec![vec![0, 8], vec![1, 4]]);
        // unequal sides separate
        let g = spex_candidate(10).unwrap();
        let p = coarsest_equitable_partition(&g, &VertexPartition::trivial(10)).unwrap();
        assert_eq!(p.block_sizes(), vec![1, 5, 4]);

        let c6 = Graph::cycle(6).unwrap();
        let p = coarsest_equitable_partition(&c6, &VertexPartition::trivial(6)).unwrap();
        assert_eq!(p.block_count(), 1);

        let k54 = Graph::complete_bipartite(5, 4);
        let p = coarsest_equitable_partition(&k54, &VertexPartition::trivial(9)).unwrap();
        assert_eq!(p.block_sizes(), vec![5, 4]);
    }

    #[test]
    fn quotient_examples() {
        let g = spex_candidate(9).unwrap();
        let p = apex_partition(9);
        assert!(is_equitable(&g, &p));
        assert_eq!(
            quotient_matrix(&g, &p).unwrap().rows(),
            vec![vec![0, 4, 4], vec![1, 0, 4], vec![1, 4, 0]]
        );
        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(quotient_matrix(&c6, &VertexPartition::trivial(6)).unwrap().rows(), vec![vec![2]]);

        let k44 = Graph::complete_bipartite(4, 4);
        let split = VertexPartition::new(vec![0, 0, 1, 1, 2, 2, 2, 2]).unwrap();
        assert!(is_equitable(&k44, &split));
        assert_eq!(
            quotient_matrix(&k44, &split).unwrap().rows(),
            vec![vec![0, 0, 4], vec![0, 0, 4], vec![2, 2, 0]]
        );
    }

    #[test]
    fn non_equitable_reports_violation() {
        let p3 = Graph::path(3).unwrap();
        let p = VertexPartition::trivial(3);
        assert!(!is_equitable(&p3, &p));
        match quotient_matrix(&p3, &p) {
            Err(Error::NotEquitable { u: 0, v: 1, block: 0, towards: 0 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn quotient_radii() {
        assert!((quotient_spectral_radius(&qm(&[&[2]]), 1e-12).unwrap() - 2.0f64).abs() < 1e-12);
        let apex = qm(&[&[0, 4, 4], &[1, 0, 4], &[1, 4, 0]]);
        let r: f64 = quotient_spectral_radius(&apex, 1e-12).unwrap();
        assert!((r - (2.0 + 2.0 * 3f64.sqrt())).abs() < 1e-9);
        let r: f64 = quotient_spectral_radius(&qm(&[&[0, 4], &[4, 0]]), 1e-12).unwrap();
        assert!((r - 4.0).abs() < 1e-9);
        // reducible: isolated block next to a triangle block
        let r: f64 = quotient_spectral_radius(&qm(&[&[0, 0], &[0, 2]]), 1e-12).unwrap();
        assert!((r - 2.0).abs() < 1e-12);
    }

    #[test]
    fn characteristic_polynomials() {
        assert_eq!(quotient_char_poly(&qm(&[&[2]])).unwrap().coeffs(), &[-2, 1]);
        let apex = qm(&[&[0, 4, 4], &[1, 0, 4], &[1, 4, 0]]);
        assert_eq!(quotient_char_poly(&apex).unwrap().coeffs(), &[-32, -24, 0, 1]);
        assert_eq!(quotient_char_poly(&qm(&[&[0, 4], &[4, 0]])).unwrap().coeffs(), &[-16, 0, 1]);
        let big = QuotientMatrix::from_rows(&vec![vec![0; 7]; 7]).unwrap();
        assert!(matches!(quotient_char_poly(&big), Err(Error::CapExceeded(_))));
    }
}
