use serde::Serialize;

use super::certificate::{ExtremalCertificate, Optimum};
use super::engine::{brute_force_ex, brute_force_spex};
use super::SearchOptions;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremRow {
    pub n: usize,
    pub ex_brute: usize,
    pub ex_formula: Option<f64>,
    pub ex_agrees: bool,
    pub construction_is_witness: bool,
    pub spex_brute: f64,
    pub spex_formula: Option<f64>,
    pub spex_gap: Option<f64>,
    pub spex_agrees: bool,
    /// The unique spectral witness is `K_1 ∨ T_{n−1,2}`.
    pub candidate_unique: bool,
    pub ex_witnesses: usize,
    pub spex_witnesses: usize,
    pub note: String,
}

impl TheoremRow {
    pub fn agrees(&self) -> bool {
        self.ex_agrees && self.spex_agrees && self.candidate_unique
    }

    fn from_certificates(ex: &ExtremalCertificate, spex: &ExtremalCertificate) -> Self {
        let note = if ex.pattern_larger_than_host {
            "pattern larger than host; K_n optimal".to_string()
        } else {
            ex.formula_comparison.note.clone()
        };
        TheoremRow {
            n: ex.n,
            ex_brute: ex.optimum.as_f64() as usize,
            ex_formula: ex.formula_comparison.formula_value.map(Optimum::as_f64),
            ex_agrees: ex.formula_comparison.agrees,
            construction_is_witness: ex.construction_is_witness.unwrap_or(false),
            spex_brute: spex.optimum.as_f64(),
            spex_formula: spex.formula_comparison.formula_value.map(Optimum::as_f64),
            spex_gap: spex.closed_form_gap,
            spex_agrees: spex.formula_comparison.agrees,
            candidate_unique: spex.candidate_isomorphic.unwrap_or(false),
            ex_witnesses: ex.witnesses.len(),
            spex_witnesses: spex.witnesses.len(),
            note,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremTable {
    pub k: usize,
    pub rows: Vec<TheoremRow>,
    /// Smallest `n` in the window from which every row agrees with both
    /// closed forms.
    pub agreement_from: Option<usize>,
}

pub const THEOREM_CSV_HEADER: &str = "n,ex_brute,ex_formula,ex_agrees,construction_is_witness,\
spex_brute,spex_formula,spex_gap,spex_agrees,candidate_unique,ex_witnesses,spex_witnesses,note";

fn opt_num(v: Option<f64>) -> String {
    v.map(|x| format!("{x}")).unwrap_or_default()
}

impl TheoremTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(THEOREM_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{:.12},{},{},{},{},{},{},\"{}\"\n",
                r.n,
                r.ex_brute,
                opt_num(r.ex_formula),
                r.ex_agrees,
                r.construction_is_witness,
                r.spex_brute,
                r.spex_formula.map(|x| format!("{x:.12}")).unwrap_or_default(),
                r.spex_gap.map(|x| format!("{x:e}")).unwrap_or_default(),
                r.spex_agrees,
                r.candidate_unique,
                r.ex_witnesses,
                r.spex_witnesses,
                r.note.replace('"', "\"\"")
            ));
        }
        out
    }
}

/// Brute-force `ex` and `spex` for each `n` in `n_lo..=n_hi` and compare
/// them with the closed forms. An empty range gives an empty table.
pub fn verify_theorems(n_lo: usize, n_hi: usize, k: usize, opts: &SearchOptions) -> Result<TheoremTable> {
    let mut rows = Vec::new();
    for n in n_lo..=n_hi {
        let ex = brute_force_ex(n, k, opts)?;
        let spex = brute_force_spex(n, k, opts)?;
        rows.push(TheoremRow::from_certificates(&ex, &spex));
    }
    let mut agreement_from = None;
    for r in rows.iter().rev() {
        if !r.agrees() {
            break;
        }
        agreement_from = Some(r.n);
    }
    Ok(TheoremTable { k, rows, agreement_from })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_range() {
        let t = verify_theorems(7, 6, 1, &SearchOptions::default()).unwrap();
        assert!(t.rows.is_empty());
        assert_eq!(t.agreement_from, None);
        assert_eq!(t.to_csv(), format!("{THEOREM_CSV_HEADER}\n"));
    }

    #[test]
    fn small_host_row_flagged() {
        let t = verify_theorems(5, 5, 1, &SearchOptions::default()).unwrap();
        let r = &t.rows[0];
        assert_eq!(r.ex_brute, 10);
        assert!((r.spex_brute - 4.0).abs() < 1e-9);
        assert!(!r.ex_agrees);
        assert_eq!(r.note, "pattern larger than host; K_n optimal");
        assert!(t.to_csv().lines().nth(1).unwrap().starts_with("5,10,"));
    }
}
