//! Basis bookkeeping for `S V_k ⊗ ⋀V_{2ℓ}` and the bilinear forms on
//! `V_{k,2ℓ} = V_k ⊕ V_{2ℓ}`.
//!
//! All colour indices are zero-based: symmetric colours are `0..k`, exterior
//! colours are `0..2ℓ`.

use num_bigint::BigInt;
use num_traits::One;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// `±f_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedIndex {
    pub negative: bool,
    pub index: usize,
}

impl SignedIndex {
    pub fn sign(&self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }
}

/// The dual vector `g_i` written as `±f_j`: `g_i = −f_{i+ℓ}` for `i < ℓ` and
/// `g_i = f_{i−ℓ}` otherwise.
pub fn dual_basis(i: usize, ell: usize) -> Result<SignedIndex> {
    if i >= 2 * ell {
        return Err(Error::IndexOutOfRange {
            index: i,
            bound: 2 * ell,
        });
    }
    Ok(if i < ell {
        SignedIndex {
            negative: true,
            index: i + ell,
        }
    } else {
        SignedIndex {
            negative: false,
            index: i - ell,
        }
    })
}

/// `n!!` for odd `n ≥ −1`, and `0` for even `n ≥ 0`.
pub fn double_factorial_odd(n: i64) -> Result<BigInt> {
    if n < -1 {
        return Err(Error::NegativeDoubleFactorial(n));
    }
    if n >= 0 && n % 2 == 0 {
        return Ok(BigInt::from(0));
    }
    let mut acc = BigInt::one();
    let mut m = n;
    while m > 1 {
        acc *= m;
        m -= 2;
    }
    Ok(acc)
}

/// Multiplicities of the symmetric colours in `⊙ e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymBasisIndex(Vec<u32>);

impl SymBasisIndex {
    pub fn new(counts: Vec<u32>) -> Self {
        Self(counts)
    }

    pub fn from_colors(k: usize, colors: &[usize]) -> Result<Self> {
        let mut counts = vec![0u32; k];
        for &c in colors {
            *counts
                .get_mut(c)
                .ok_or(Error::IndexOutOfRange { index: c, bound: k })? += 1;
        }
        Ok(Self(counts))
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }
}

/// A wedge monomial `f_{i₁} ∧ ⋯ ∧ f_{iₙ}` with `i₁ < ⋯ < iₙ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExtBasisIndex(Vec<usize>);

impl ExtBasisIndex {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidModel(format!(
                "exterior index {indices:?} is not strictly increasing"
            )));
        }
        Ok(Self(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Coordinate `c` of `V_{k,2ℓ}`: `e_c` for `c < k`, `f_{c−k}` otherwise.
/// Returns the unique coordinate `d` with `[b_c, b_d] ≠ 0` and that value.
pub fn basis_partner(k: usize, ell: usize, c: usize) -> (usize, i64) {
    if c < k {
        (c, 1)
    } else {
        let j = c - k;
        if j < ell {
            (k + j + ell, 1)
        } else {
            (k + j - ell, -1)
        }
    }
}

/// An element of `V_{k,2ℓ}`: the first `k` coordinates are the `V_k` part,
/// the last `2ℓ` the `V_{2ℓ}` part.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedVector<S> {
    k: usize,
    ell: usize,
    entries: Vec<S>,
}

impl<S: Scalar> MixedVector<S> {
    pub fn zeros(k: usize, two_ell: usize) -> Self {
        assert!(two_ell.is_multiple_of(2), "2ℓ must be even");
        Self {
            k,
            ell: two_ell / 2,
            entries: vec![S::zero(); k + two_ell],
        }
    }

    pub fn from_entries(k: usize, two_ell: usize, entries: Vec<S>) -> Result<Self> {
        if !two_ell.is_multiple_of(2) {
            return Err(Error::InvalidModel(format!("2ℓ = {two_ell} is odd")));
        }
        if entries.len() != k + two_ell {
            return Err(Error::DimensionMismatch {
                expected: k + two_ell,
                found: entries.len(),
            });
        }
        Ok(Self {
            k,
            ell: two_ell / 2,
            entries,
        })
    }

    pub fn e(k: usize, two_ell: usize, i: usize) -> Self {
        assert!(i < k);
        let mut v = Self::zeros(k, two_ell);
        v.entries[i] = S::one();
        v
    }

    pub fn f(k: usize, two_ell: usize, i: usize) -> Self {
        assert!(i < two_ell);
        let mut v = Self::zeros(k, two_ell);
        v.entries[k + i] = S::one();
        v
    }

    pub fn g(k: usize, two_ell: usize, i: usize) -> Self {
        let d = dual_basis(i, two_ell / 2).expect("index in range");
        let mut v = Self::zeros(k, two_ell);
        v.entries[k + d.index] = S::from_i64(d.sign());
        v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn two_ell(&self) -> usize {
        2 * self.ell
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn scale(&self, a: &S) -> Self {
        Self {
            k: self.k,
            ell: self.ell,
            entries: self.entries.iter().map(|x| a.clone() * x.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(Self {
            k: self.k,
            ell: self.ell,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: other.k,
            });
        }
        if self.ell != other.ell {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.ell,
                found: 2 * other.ell,
            });
        }
        Ok(())
    }
}

/// `[x, y] = xᵀy` on the `V_k` block plus `xᵀJy` on the `V_{2ℓ}` block,
/// with `J = [[0, I], [−I, 0]]`.
pub fn super_bilinear_form<S: Scalar>(x: &MixedVector<S>, y: &MixedVector<S>) -> Result<S> {
    x.check_shape(y)?;
    let (k, ell) = (x.k, x.ell);
    let mut acc = S::zero();
    for c in 0..k + 2 * ell {
        let (d, sign) = basis_partner(k, ell, c);
        let term = x.entries[c].clone() * y.entries[d].clone();
        if sign < 0 {
            acc = acc - term;
        } else {
            acc += term;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussianRational as Q;
    use proptest::prelude::*;

    #[test]
    fn dual_basis_examples() {
        // 1-based (i=1, ℓ=2) → −f₃
        assert_eq!(
            dual_basis(0, 2).unwrap(),
            SignedIndex {
                negative: true,
                index: 2
            }
        );
        // (i=3, ℓ=2) → +f₁
        assert_eq!(
            dual_basis(2, 2).unwrap(),
            SignedIndex {
                negative: false,
                index: 0
            }
        );
        // (i=2, ℓ=1) → +f₁
        assert_eq!(
            dual_basis(1, 1).unwrap(),
            SignedIndex {
                negative: false,
                index: 0
            }
        );
        assert!(dual_basis(4, 2).is_err());
        assert!(dual_basis(0, 0).is_err());
    }

    #[test]
    fn dual_twice_is_minus_identity() {
        for ell in 1..5 {
            for i in 0..2 * ell {
                let a = dual_basis(i, ell).unwrap();
                let b = dual_basis(a.index, ell).unwrap();
                assert_eq!(b.index, i);
                assert_eq!(a.sign() * b.sign(), -1);
            }
        }
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial_odd(5).unwrap(), BigInt::from(15));
        assert_eq!(double_factorial_odd(4).unwrap(), BigInt::from(0));
        assert_eq!(double_factorial_odd(-1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial_odd(1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial_odd(0).unwrap(), BigInt::from(0));
        assert_eq!(double_factorial_odd(9).unwrap(), BigInt::from(945));
        assert!(double_factorial_odd(-2).is_err());
    }

    #[test]
    fn form_on_basis_vectors() {
        let e1 = MixedVector::<Q>::e(1, 2, 0);
        assert_eq!(super_bilinear_form(&e1, &e1).unwrap(), Q::from_integer(1));
        let f1 = MixedVector::<Q>::f(0, 2, 0);
        let f2 = MixedVector::<Q>::f(0, 2, 1);
        assert_eq!(super_bilinear_form(&f1, &f2).unwrap(), Q::from_integer(1));
        assert_eq!(super_bilinear_form(&f2, &f1).unwrap(), Q::from_integer(-1));
        assert_eq!(super_bilinear_form(&f1, &f1).unwrap(), Q::from_integer(0));
        let mismatch = MixedVector::<Q>::zeros(1, 4);
        assert!(super_bilinear_form(&e1, &mismatch).is_err());
    }

    #[test]
    fn f_against_g_is_minus_one() {
        for ell in 1..4 {
            for c in 0..2 * ell {
                let f = MixedVector::<Q>::f(2, 2 * ell, c);
                let g = MixedVector::<Q>::g(2, 2 * ell, c);
                assert_eq!(super_bilinear_form(&f, &g).unwrap(), Q::from_integer(-1));
                assert_eq!(super_bilinear_form(&g, &f).unwrap(), Q::from_integer(1));
            }
        }
    }

    #[test]
    fn super_symmetry_on_basis() {
        let (k, two_ell) = (2, 4);
        let dim = k + two_ell;
        let basis = |c: usize| {
            if c < k {
                MixedVector::<Q>::e(k, two_ell, c)
            } else {
                MixedVector::<Q>::f(k, two_ell, c - k)
            }
        };
        for a in 0..dim {
            for b in 0..dim {
                let xy = super_bilinear_form(&basis(a), &basis(b)).unwrap();
                let yx = super_bilinear_form(&basis(b), &basis(a)).unwrap();
                if a < k && b < k {
                    assert_eq!(xy, yx);
                } else if a >= k && b >= k {
                    assert_eq!(xy, -yx);
                } else {
                    assert_eq!(xy, Q::from_integer(0));
                }
            }
        }
    }

    fn arb_vec(dim: usize) -> impl Strategy<Value = Vec<Q>> {
        proptest::collection::vec((-9i64..9, -9i64..9), dim).prop_map(|v| {
            v.into_iter()
                .map(|(a, b)| Q::from_integer(a) + Q::i() * Q::from_integer(b))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn bilinearity(x in arb_vec(5), x2 in arb_vec(5), y in arb_vec(5), a in -5i64..5, b in -5i64..5) {
            let (k, two_ell) = (1, 4);
            let x = MixedVector::from_entries(k, two_ell, x).unwrap();
            let x2 = MixedVector::from_entries(k, two_ell, x2).unwrap();
            let y = MixedVector::from_entries(k, two_ell, y).unwrap();
            let (a, b) = (Q::from_integer(a), Q::from_integer(b));
            let lhs = super_bilinear_form(&x.scale(&a).add(&x2.scale(&b)).unwrap(), &y).unwrap();
            let rhs = a * super_bilinear_form(&x, &y).unwrap() + b * super_bilinear_form(&x2, &y).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
