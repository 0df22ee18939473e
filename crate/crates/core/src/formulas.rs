//! Closed forms for `ex(n, C_{2k+1}^□)` and `spex(n, C_{2k+1}^□)`.
//!
//! Both formulas are only claimed for sufficiently large `n`; evaluators
//! are total, and their reports carry [`ASYMPTOTIC_NOTE`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{spex_candidate, Graph};
use crate::spectral::{largest_real_root, quotient_char_poly, quotient_matrix, Polynomial, VertexPartition};
use crate::IntPolynomial;

pub const ASYMPTOTIC_NOTE: &str = "formula value — asymptotic regime not guaranteed";

/// `(j² − 3j)/2` for the residue `j = m mod 3`: 0, −1, −1.
fn p4_correction(j: usize) -> i64 {
    let j = j as i64;
    (j * j - 3 * j) / 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExFormulaResult {
    pub n: usize,
    pub value: i64,
    /// Smallest maximising part size.
    #[serde(rename = "n_a")]
    pub argmax_na: usize,
    pub j: usize,
    /// Every maximising `n_a`, ascending.
    pub ties: Vec<usize>,
    pub note: &'static str,
}

/// `max n_a(1 + n_b) + (j² − 3j)/2` over splits `n_a + n_b = n`,
/// `1 ≤ n_a ≤ n − 1`, `j ≡ n_a (mod 3)`.
pub fn ex_formula(n: usize) -> Result<ExFormulaResult> {
    if n < 2 {
        return Err(Error::invalid(format!("ex formula needs n >= 2, got {n}")));
    }
    let value_at = |na: usize| (na * (1 + n - na)) as i64 + p4_correction(na % 3);
    let value = (1..n).map(value_at).max().expect("n >= 2");
    let ties: Vec<usize> = (1..n).filter(|&na| value_at(na) == value).collect();
    Ok(ExFormulaResult {
        n,
        value,
        argmax_na: ties[0],
        j: ties[0] % 3,
        ties,
        note: ASYMPTOTIC_NOTE,
    })
}

/// `P_4`-extremal graph on `m` vertices: `⌊m/3⌋` triangles on consecutive
/// ids, then an isolated vertex (`m ≡ 1`) or an edge (`m ≡ 2`).
pub fn p4_extremal_graph(m: usize) -> Graph {
    let mut g = Graph::empty(m);
    let t = m / 3;
    for i in 0..t {
        let b = 3 * i;
        g.add_edge(b, b + 1);
        g.add_edge(b + 1, b + 2);
        g.add_edge(b, b + 2);
    }
    if m % 3 == 2 {
        g.add_edge(m - 2, m - 1);
    }
    g
}

/// `K_{n_a, n−n_a}` (parts `0..n_a`, `n_a..n`) with [`p4_extremal_graph`]
/// laid over the first part.
pub fn ex_extremal_construction(n: usize, n_a: usize) -> Result<Graph> {
    if n_a > n {
        return Err(Error::invalid(format!("n_a = {n_a} exceeds n = {n}")));
    }
    let mut g = Graph::complete_bipartite(n_a, n - n_a);
    for (u, v) in p4_extremal_graph(n_a).edges().iter() {
        g.add_edge(u, v);
    }
    Ok(g)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExFormulaReport {
    #[serde(flatten)]
    pub formula: ExFormulaResult,
    pub construction_graph6: String,
}

pub fn ex_formula_report(n: usize) -> Result<ExFormulaReport> {
    let formula = ex_formula(n)?;
    let construction_graph6 = ex_extremal_construction(n, formula.argmax_na)?.to_graph6();
    Ok(ExFormulaReport { formula, construction_graph6 })
}

/// `λ(K_1 ∨ T_{n−1,2})` by two routes: the largest root of the apex
/// quotient's characteristic polynomial, and the printed cubic whose
/// constant term is `−2`.
#[derive(Clone, Debug, Serialize)]
pub struct SpexClosedForm {
    pub n: usize,
    pub n1: usize,
    pub n2: usize,
    pub quotient: Vec<Vec<u64>>,
    pub char_poly: String,
    /// Radius from the quotient determinant.
    pub value: f64,
    pub printed_cubic: String,
    pub printed_value: f64,
    pub gap: f64,
    pub note: &'static str,
}

pub fn spex_closed_form(n: usize) -> Result<SpexClosedForm> {
    if n < 3 {
        return Err(Error::invalid(format!("closed form needs n >= 3, got {n}")));
    }
    let n1 = (n - 1).div_ceil(2);
    let n2 = (n - 1) / 2;
    let g = spex_candidate(n)?;
    let mut blocks = vec![0];
    blocks.extend(std::iter::repeat_n(1, n1));
    blocks.extend(std::iter::repeat_n(2, n2));
    let b = quotient_matrix(&g, &VertexPartition::new(blocks)?)?;
    let cp = quotient_char_poly(&b)?;
    let hi = n as f64;
    let as_real = |p: &IntPolynomial| -> Result<Polynomial<f64>> {
        p.cast().ok_or_else(|| Error::invalid("coefficients overflow f64"))
    };
    let value = largest_real_root(&as_real(&cp)?, hi)?;
    let (nn, m2) = (n as i128, n2 as i128);
    let printed = Polynomial::new(vec![-2, -(m2 * (nn - m2) + (nn - m2 - 1)), 0, 1]);
    let printed_value = largest_real_root(&as_real(&printed)?, hi)?;
    Ok(SpexClosedForm {
        n,
        n1,
        n2,
        quotient: b.rows(),
        char_poly: cp.to_string(),
        value,
        printed_cubic: printed.to_string(),
        printed_value,
        gap: (value - printed_value).abs(),
        note: ASYMPTOTIC_NOTE,
    })
}
