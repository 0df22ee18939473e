//! Characteristic polynomials of the joined graphs `(rC_3 ∪ K_{1,s}) ∨ n_2K_1`
//! and `K_1 ∨ K_{n_1,n_2}` that appear when the extremal graph is pinned
//! down.
//!
//! `paper_poly_*` and [`printed_f0_factorization`] return the polynomials
//! exactly as printed in the source. The printed cubic factor of `f_0` has
//! constant term `-2`, which only matches the quartic when `n_1 n_2 = 1`;
//! [`apex_cubic`] is the cubic obtained from the apex quotient determinant
//! (constant `-2 n_1 n_2`) and is the one every downstream check relies on.
//! [`eq_g1_discrepancy`] puts the two side by side.

use serde::Serialize;

use super::{largest_real_root, Polynomial};
use crate::error::{Error, Result};
use crate::IntPolynomial;

fn p(c: &[i128]) -> IntPolynomial {
    Polynomial::new(c.to_vec())
}

/// `f_r(x) = x⁴ − 2x³ − (n₂(s+3r+1)+s)x² + 2(n₂+s)x + 3n₂sr + 4n₂s`, the
/// characteristic polynomial of the 4-block quotient of
/// `(rC_3 ∪ K_{1,s}) ∨ n_2K_1`.
pub fn paper_poly_f(r: u64, s: u64, n2: u64) -> IntPolynomial {
    let (r, s, n2) = (r as i128, s as i128, n2 as i128);
    p(&[
        3 * n2 * s * r + 4 * n2 * s,
        2 * (n2 + s),
        -(n2 * (s + 3 * r + 1) + s),
        -2,
        1,
    ])
}

fn check_sides(n1: u64, n2: u64) -> Result<(i128, i128)> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::invalid("part sizes must be positive"));
    }
    Ok((n1 as i128, n2 as i128))
}

/// As printed: `g(x) = x³ − (n₂(n₁+1)+n₁)x − 2`.
pub fn paper_poly_g(n1: u64, n2: u64) -> Result<IntPolynomial> {
    let (a, b) = check_sides(n1, n2)?;
    Ok(p(&[-2, -(b * (a + 1) + a), 0, 1]))
}

/// As printed: `g₃(x) = x³ − ((n₂+1)n₁+n₁−1)x − 2`.
pub fn paper_poly_g3(n1: u64, n2: u64) -> Result<IntPolynomial> {
    let (a, b) = check_sides(n1, n2)?;
    Ok(p(&[-2, -((b + 1) * a + a - 1), 0, 1]))
}

/// Cubic factor of `det(xI − B)` for the apex quotient of `K_1 ∨ K_{n₁,n₂}`:
/// `x³ − (n₁n₂+n₁+n₂)x − 2n₁n₂`.
pub fn apex_cubic(n1: u64, n2: u64) -> IntPolynomial {
    let (a, b) = (n1 as i128, n2 as i128);
    p(&[-2 * a * b, -(a * b + a + b), 0, 1])
}

/// `g` with the determinant-derived constant term.
pub fn repaired_g(n1: u64, n2: u64) -> Result<IntPolynomial> {
    check_sides(n1, n2)?;
    Ok(apex_cubic(n1, n2))
}

/// `g₃` with the determinant-derived constant term: the apex cubic of
/// `K_1 ∨ K_{n₁−1,n₂+1}`.
pub fn repaired_g3(n1: u64, n2: u64) -> Result<IntPolynomial> {
    check_sides(n1, n2)?;
    Ok(apex_cubic(n1 - 1, n2 + 1))
}

/// As printed: `(x − 2)(x³ − (n₂(n−n₂)+(n−n₂−1))x − 2)`.
pub fn printed_f0_factorization(n: u64, n2: u64) -> Result<IntPolynomial> {
    if n2 + 1 > n {
        return Err(Error::invalid("need n >= n2 + 1"));
    }
    let (n, b) = (n as i128, n2 as i128);
    let cubic = p(&[-2, -(b * (n - b) + (n - b - 1)), 0, 1]);
    Ok(&p(&[-2, 1]) * &cubic)
}

/// Side-by-side comparison of the printed factorization of `f_0` with the
/// determinant-derived one, for `G = K_1 ∨ K_{n₁,n₂}`.
#[derive(Clone, Debug, Serialize)]
pub struct EqG1Discrepancy {
    pub n1: u64,
    pub n2: u64,
    pub n: u64,
    /// `f_0` for `K_{1,n₁} ∨ n₂K_1`.
    pub f0: String,
    pub printed_product: String,
    pub printed_identity_holds: bool,
    pub derived_cubic: String,
    pub derived_identity_holds: bool,
    pub printed_root: f64,
    pub derived_root: f64,
    /// `|derived_root − printed_root|`.
    pub gap: f64,
    pub note: &'static str,
}

pub fn eq_g1_discrepancy(n1: u64, n2: u64) -> Result<EqG1Discrepancy> {
    check_sides(n1, n2)?;
    let n = n1 + n2 + 1;
    let f0 = paper_poly_f(0, n1, n2);
    let printed = printed_f0_factorization(n, n2)?;
    let derived = apex_cubic(n1, n2);
    let derived_product = &p(&[-2, 1]) * &derived;
    let printed_cubic: IntPolynomial = p(&[-2, -((n2 * (n - n2) + (n - n2 - 1)) as i128), 0, 1]);
    let hi = n as f64;
    let as_real = |q: &IntPolynomial| -> Polynomial<f64> { q.cast().expect("small coefficients") };
    let printed_root = largest_real_root(&as_real(&printed_cubic), hi)?;
    let derived_root = largest_real_root(&as_real(&derived), hi)?;
    Ok(EqG1Discrepancy {
        n1,
        n2,
        n,
        f0: f0.to_string(),
        printed_product: printed.to_string(),
        printed_identity_holds: printed == f0,
        derived_cubic: derived.to_string(),
        derived_identity_holds: derived_product == f0,
        printed_root,
        derived_root,
        gap: (derived_root - printed_root).abs(),
        note: "printed cubic has constant -2; quotient determinant gives -2*n1*n2",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_substitution() {
        assert_eq!(paper_poly_f(0, 4, 4).coeffs(), &[64, 16, -24, -2, 1]);
    }

    #[test]
    fn f_difference_identity() {
        // f_r − f_0 = 3r(x² − 2x + n₂(n − n₂ − 3r − 5)), n = 3r + s + 1 + n₂,
        // where f_0 belongs to K_{1,n−n₂−1} ∨ n₂K_1, i.e. s + 3r leaves.
        for r in 1..4u64 {
            for s in 1..6u64 {
                for n2 in 1..6u64 {
                    let d = &paper_poly_f(r, s, n2) - &paper_poly_f(0, s + 3 * r, n2);
                    let n = (3 * r + s + 1 + n2) as i128;
                    let (r, n2) = (r as i128, n2 as i128);
                    let want = p(&[3 * r * n2 * (n - n2 - 3 * r - 5), -6 * r, 3 * r]);
                    assert_eq!(d, want);
                }
            }
        }
    }

    #[test]
    fn g_as_printed() {
        assert_eq!(paper_poly_g(4, 4).unwrap().coeffs(), &[-2, -24, 0, 1]);
        for n1 in 1..8u64 {
            for n2 in 1..8u64 {
                let d = &paper_poly_g(n1, n2).unwrap() - &paper_poly_g3(n1, n2).unwrap();
                let c = n1 as i128 - n2 as i128 - 1;
                assert_eq!(d, p(&[0, c]));
            }
        }
        assert!(paper_poly_g(0, 3).is_err());
    }

    #[test]
    fn repaired_difference_factors() {
        for n1 in 2..8u64 {
            for n2 in 1..8u64 {
                let d = &repaired_g(n1, n2).unwrap() - &repaired_g3(n1, n2).unwrap();
                let c = n1 as i128 - n2 as i128 - 1;
                assert_eq!(d, p(&[2 * c, c]));
            }
        }
    }

    #[test]
    fn discrepancy_at_four_four() {
        let d = eq_g1_discrepancy(4, 4).unwrap();
        assert!(!d.printed_identity_holds);
        assert!(d.derived_identity_holds);
        assert!((d.derived_root - (2.0 + 2.0 * 3f64.sqrt())).abs() < 1e-9);
        assert!((d.printed_root - 4.94).abs() < 0.02, "{}", d.printed_root);
        assert!(d.gap > 0.5);
        // n1 n2 = 1 is the only case where the printed factorization holds
        assert!(eq_g1_discrepancy(1, 1).unwrap().printed_identity_holds);
    }
}
