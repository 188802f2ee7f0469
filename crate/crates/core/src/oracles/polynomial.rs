use std::fmt;

use crate::algebra::Scalar;

/// Dense univariate polynomial, `coeffs[d]` the coefficient of `x^d`, with
/// no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: S, degree: usize) -> Self {
        let mut coeffs = vec![S::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> S {
        self.coeffs.get(d).cloned().unwrap_or_else(S::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|d| self.coeff(d) + other.coeff(d)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut s = c.to_string();
            let negative = s.starts_with('-') && !s[1..].contains(['+', '-']);
            if negative {
                s.remove(0);
            } else if s[1..].contains(['+', '-']) {
                s = format!("({s})");
            }
            if d > 0 && s == "1" {
                s.clear();
            }
            let power = match d {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{d}"),
            };
            let body = if s.is_empty() || power.is_empty() {
                format!("{s}{power}")
            } else {
                format!("{s}*{power}")
            };
            match (first, negative) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussianRational as Q;

    fn p(c: &[i64]) -> Polynomial<Q> {
        Polynomial::new(c.iter().map(|&x| Q::from_integer(x)).collect())
    }

    #[test]
    fn trims_and_evaluates() {
        let a = p(&[-2, -3, 0, 1, 0, 0]);
        assert_eq!(a.degree(), Some(3));
        assert_eq!(a.eval(&Q::from_integer(2)), Q::from_integer(0));
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        assert_eq!(a.mul(&a), p(&[1, 2, 1]));
        assert_eq!(a.add(&p(&[-1, -1])), Polynomial::zero());
        assert_eq!(Polynomial::monomial(Q::from_integer(3), 2), p(&[0, 0, 3]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-2, -3, 0, 1]).to_string(), "x^3 - 3*x - 2");
        assert_eq!(p(&[0, 2, 1]).to_string(), "x^2 + 2*x");
        assert_eq!(Polynomial::constant(Q::i()).to_string(), Q::i().to_string());
        assert_eq!(
            Polynomial::new(vec![Q::from_integer(0), Q::from_integer(1) + Q::i()]).to_string(),
            "(1+1i)*x"
        );
        assert_eq!(Polynomial::<Q>::zero().to_string(), "0");
    }
}
