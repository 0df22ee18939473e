use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{NumCast, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::Real;

/// Univariate polynomial, constant term first. Trailing zero coefficients
/// are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Copy + Zero + PartialEq> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    /// `c · x^deg`.
    pub fn monomial(c: T, deg: usize) -> Self {
        let mut v = vec![T::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).copied().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().copied().unwrap_or_else(T::zero)
    }
}

impl<T> Polynomial<T>
where
    T: Copy + Zero + PartialEq + Add<Output = T> + Mul<Output = T>,
{
    pub fn eval(&self, x: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
    }
}

impl<T: Copy + Zero + PartialEq + ToPrimitive> Polynomial<T> {
    /// Converts coefficients to another numeric type; `None` if any
    /// coefficient is not representable.
    pub fn cast<U: NumCast + Copy + Zero + PartialEq>(&self) -> Option<Polynomial<U>> {
        let v: Option<Vec<U>> = self.coeffs.iter().map(|&c| U::from(c)).collect();
        v.map(Polynomial::new)
    }

    /// Evaluates in floating point with Horner's rule.
    pub fn eval_real<F: Real>(&self, x: F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, &c| acc * x + F::from(c).unwrap_or_else(F::nan))
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN).abs())
            .fold(0.0, f64::max)
    }
}

impl<T> Polynomial<T>
where
    T: Copy + Zero + PartialEq + Mul<Output = T> + NumCast,
{
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * T::from(i).expect("degree fits the scalar"))
                .collect(),
        )
    }
}

impl<T: Copy + Zero + PartialEq + Add<Output = T>> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..len)
                .map(|i| self.coeff(i) + rhs.coeff(i))
                .collect(),
        )
    }
}

impl<T: Copy + Zero + PartialEq + Sub<Output = T>> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T> Mul for &Polynomial<T>
where
    T: Copy + Zero + PartialEq + Add<Output = T> + Mul<Output = T>,
{
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Copy + Zero + PartialEq + Neg<Output = T>> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl<T> fmt::Display for Polynomial<T>
where
    T: Copy + Zero + PartialEq + PartialOrd + Neg<Output = T> + fmt::Display + num_traits::One,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c < T::zero();
            let mag = if negative { -c } else { c };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = mag == T::one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}
