//! Real-root isolation by derivative recursion: the critical points of `p`
//! split the bracket into monotone pieces, each holding at most one root,
//! which is bracketed by a sign change, bisected, then polished by
//! safeguarded Newton steps.

use super::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Real;

fn scale<T: Real>(p: &Polynomial<T>, x: T) -> T {
    let ax = x.abs().max(T::one());
    let mut s = T::zero();
    let mut pw = T::one();
    for &c in p.coeffs() {
        s += c.abs() * pw;
        pw *= ax;
    }
    s
}

fn refine<T: Real>(p: &Polynomial<T>, dp: &Polynomial<T>, mut lo: T, mut hi: T) -> T {
    let mut flo = p.eval(lo);
    let two = T::of(2.0);
    for _ in 0..400 {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = p.eval(mid);
        if fm == T::zero() {
            return mid;
        }
        if (fm < T::zero()) == (flo < T::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if hi - lo <= T::of(1e-12) * hi.abs().max(T::one()) {
            break;
        }
    }
    let mut x = (lo + hi) / two;
    for _ in 0..8 {
        let d = dp.eval(x);
        if d == T::zero() {
            break;
        }
        let next = x - p.eval(x) / d;
        if next < lo || next > hi || !next.is_finite() {
            break;
        }
        if next == x {
            break;
        }
        x = next;
    }
    x
}

/// All distinct real roots in `[lo, hi]`, ascending. Roots of even
/// multiplicity are caught when they coincide with a critical point.
pub fn real_roots_in<T: Real>(p: &Polynomial<T>, lo: T, hi: T) -> Vec<T> {
    match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => {
            let r = -p.coeff(0) / p.coeff(1);
            return if r >= lo && r <= hi { vec![r] } else { Vec::new() };
        }
        _ => {}
    }
    let dp = p.derivative();
    let mut knots = vec![lo];
    knots.extend(real_roots_in(&dp, lo, hi).into_iter().filter(|&c| c > lo && c < hi));
    knots.push(hi);
    let eps = T::epsilon() * T::of(64.0);
    let near_zero = |x: T| p.eval(x).abs() <= eps * scale(p, x);
    let mut roots: Vec<T> = Vec::new();
    let push = |r: T, roots: &mut Vec<T>| {
        if roots.last().is_none_or(|&last| r > last) {
            roots.push(r);
        }
    };
    for w in knots.windows(2) {
        let (a, b) = (w[0], w[1]);
        if near_zero(a) {
            push(a, &mut roots);
        }
        let (fa, fb) = (p.eval(a), p.eval(b));
        if !near_zero(a) && !near_zero(b) && (fa < T::zero()) != (fb < T::zero()) {
            push(refine(p, &dp, a, b), &mut roots);
        }
    }
    if near_zero(hi) {
        push(hi, &mut roots);
    }
    roots
}

/// Largest real root in `(0, bracket_hi]`.
pub fn largest_real_root<T: Real>(p: &Polynomial<T>, bracket_hi: T) -> Result<T> {
    real_roots_in(p, T::zero(), bracket_hi)
        .into_iter()
        .rev()
        .find(|&r| r > T::zero())
        .ok_or(Error::NoRootInBracket(bracket_hi.as_f64()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[f64]) -> Polynomial<f64> {
        Polynomial::new(c.to_vec())
    }

    #[test]
    fn simple_roots() {
        assert!((largest_real_root(&poly(&[-2.0, 1.0]), 10.0).unwrap() - 2.0).abs() < 1e-12);
        assert!((largest_real_root(&poly(&[-16.0, 0.0, 1.0]), 10.0).unwrap() - 4.0).abs() < 1e-12);
        let cubic = poly(&[-32.0, -24.0, 0.0, 1.0]);
        let r = largest_real_root(&cubic, 9.0).unwrap();
        assert!((r - (2.0 + 2.0 * 3f64.sqrt())).abs() < 1e-10);
    }

    #[test]
    fn finds_all_roots_of_product() {
        // (x-1)(x-2)(x-3)(x+1)
        let p = poly(&[-6.0, 5.0, 5.0, -5.0, 1.0]);
        let r = real_roots_in(&p, -5.0, 5.0);
        assert_eq!(r.len(), 4);
        for (got, want) in r.iter().zip([-1.0, 1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn double_root_at_critical_point() {
        // (x-2)^2 (x+1): tangent root at 2
        let p = poly(&[4.0, 0.0, -3.0, 1.0]);
        let r = largest_real_root(&p, 5.0).unwrap();
        assert!((r - 2.0).abs() < 1e-9);
    }

    #[test]
    fn no_root_in_bracket() {
        assert!(matches!(
            largest_real_root(&poly(&[1.0, 0.0, 1.0]), 5.0),
            Err(Error::NoRootInBracket(_))
        ));
        assert!(largest_real_root(&poly(&[3.0, 1.0]), 5.0).is_err());
    }

    #[test]
    fn single_precision() {
        let p: Polynomial<f32> = Polynomial::new(vec![-8.0, -8.0, 0.0, 1.0]);
        let r = largest_real_root(&p, 5.0f32).unwrap();
        assert!((r - (1.0 + 5f32.sqrt())).abs() < 1e-5);
    }
}
