//! The models used throughout: matchings, the characteristic polynomial,
//! and the circuit partition polynomial at integer points.

use num_traits::ToPrimitive;
use rand::Rng;

use super::model::{canonicalize_wedge, EdgeColoringModel};
use crate::algebra::{double_factorial_odd, ExtBasisIndex, Scalar, SymBasisIndex};
use crate::error::{Error, Result};

/// All multiplicity vectors of length `k` with total at most `max_total`.
pub(crate) fn count_vectors(k: usize, max_total: usize) -> Vec<Vec<u32>> {
    fn rec(k: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in 0..=left {
            cur.push(c as u32);
            rec(k, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, max_total, &mut Vec::new(), &mut out);
    out
}

/// All strictly increasing subsets of `0..n` with at most `max_len` elements.
pub(crate) fn increasing_subsets(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize <= max_len)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// `(2, 0)` model counting matchings: value 1 when colour 2 appears at
/// most once, for every total degree up to `cap`.
pub fn matchings_model<S: Scalar>(cap: usize) -> EdgeColoringModel<S> {
    let mut h = EdgeColoringModel::new(2, 0, Some(cap)).unwrap();
    for n2 in 0..=cap.min(1) {
        for n1 in 0..=cap - n2 {
            h.set(
                SymBasisIndex::new(vec![n1 as u32, n2 as u32]),
                ExtBasisIndex::default(),
                S::one(),
            )
            .unwrap();
        }
    }
    h
}

/// The `(2, 2)` model whose partition function is `det(tI − A)`:
/// `h(e₁^i ⊗ f₁∧g₁) = 1`, `h(e₁^i ⊙ e₂) = √−1`, `h(e₁^i) = t`.
///
/// Since `f₁∧g₁ = −f₁∧f₂`, the stored canonical value at `(e₁^i, f₁∧f₂)` is −1.
pub fn charpoly_model<S: Scalar>(t: S, cap: usize) -> EdgeColoringModel<S> {
    let mut h = EdgeColoringModel::new(2, 2, Some(cap)).unwrap();
    let wedge = ExtBasisIndex::new(vec![0, 1]).unwrap();
    for i in 0..=cap as u32 {
        let i_us = i as usize;
        h.set(
            SymBasisIndex::new(vec![i, 0]),
            ExtBasisIndex::default(),
            t.clone(),
        )
        .unwrap();
        if i_us < cap {
            h.set(
                SymBasisIndex::new(vec![i, 1]),
                ExtBasisIndex::default(),
                S::imaginary_unit(),
            )
            .unwrap();
        }
        if i_us + 2 <= cap {
            h.set(SymBasisIndex::new(vec![i, 0]), wedge.clone(), -S::one())
                .unwrap();
        }
    }
    h
}

/// `(k, 0)` model `h₀(⊙ e_i^{α_i}) = ∏ (α_i − 1)!!`, whose partition
/// function is the circuit partition polynomial at `k`.
pub fn circuit_pos_model<S: Scalar>(k: usize, cap: usize) -> Result<EdgeColoringModel<S>> {
    if k == 0 {
        return Err(Error::InvalidModel("circuit-pos needs k ≥ 1".into()));
    }
    let mut h = EdgeColoringModel::new(k, 0, Some(cap))?;
    for alpha in count_vectors(k, cap) {
        let mut value = num_bigint::BigInt::from(1);
        for &a in &alpha {
            value *= double_factorial_odd(a as i64 - 1)?;
        }
        if value != 0.into() {
            let v = value
                .to_i64()
                .ok_or_else(|| Error::InvalidModel("double factorial overflow".into()))?;
            h.set(
                SymBasisIndex::new(alpha),
                ExtBasisIndex::default(),
                S::from_i64(v),
            )?;
        }
    }
    Ok(h)
}

/// `(0, 2ℓ)` model `h₁(⋀_{i∈S} f_i ∧ g_i) = 1` for `S ⊆ [ℓ]`, zero off
/// that span. Its skew partition function is the circuit partition
/// polynomial at `−2ℓ`. Finitely supported, so it carries no cap.
pub fn circuit_neg_model<S: Scalar>(ell: usize) -> Result<EdgeColoringModel<S>> {
    if ell == 0 {
        return Err(Error::InvalidModel("circuit-neg needs ℓ ≥ 1".into()));
    }
    let mut h = EdgeColoringModel::new(0, 2 * ell, None)?;
    for subset in increasing_subsets(ell, ell) {
        // f_i ∧ g_i = −f_i ∧ f_{i+ℓ}
        let mut seq: Vec<u32> = subset
            .iter()
            .flat_map(|&i| [i as u32, (i + ell) as u32])
            .collect();
        let odd = canonicalize_wedge(&mut seq).expect("distinct indices");
        let negative = (subset.len() % 2 == 1) != odd;
        let value = if negative { -S::one() } else { S::one() };
        let ext = ExtBasisIndex::new(seq.iter().map(|&i| i as usize).collect())?;
        h.set(SymBasisIndex::new(vec![]), ext, value)?;
    }
    Ok(h)
}

/// `h₀ ⊗ h₁` for a purely symmetric `h₀` and a purely exterior `h₁`.
pub fn tensor_model<S: Scalar>(
    h0: &EdgeColoringModel<S>,
    h1: &EdgeColoringModel<S>,
) -> Result<EdgeColoringModel<S>> {
    if !h0.is_purely_symmetric() || !h1.is_purely_exterior() {
        return Err(Error::InvalidModel(
            "tensor product needs a (k,0) model and a (0,2ℓ) model".into(),
        ));
    }
    let cap = match (h0.cap(), h1.cap()) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let mut h = EdgeColoringModel::new(h0.k(), h1.two_ell(), cap)?;
    let right = h1.entries();
    for (sym, _, v0) in h0.entries() {
        for (_, ext, v1) in &right {
            if cap.is_some_and(|c| sym.degree() + ext.len() > c) {
                continue;
            }
            h.set(sym.clone(), ext.clone(), v0.clone() * v1.clone())?;
        }
    }
    Ok(h)
}

/// `circuit-pos(1) ⊗ circuit-neg(ℓ)`; its mixed partition function is the
/// circuit partition polynomial at `1 − 2ℓ`.
pub fn circuit_odd_model<S: Scalar>(ell: usize, cap: usize) -> Result<EdgeColoringModel<S>> {
    tensor_model(&circuit_pos_model(1, cap)?, &circuit_neg_model(ell)?)
}

/// A random sparse `(k, 2ℓ)` model over small Gaussian integers, complete up
/// to total degree `cap`. Each basis element is nonzero with probability
/// `density`.
pub fn random_sparse_model<S: Scalar, R: Rng>(
    k: usize,
    two_ell: usize,
    cap: usize,
    density: f64,
    rng: &mut R,
) -> EdgeColoringModel<S> {
    let mut h = EdgeColoringModel::new(k, two_ell, Some(cap)).unwrap();
    for ext in increasing_subsets(two_ell, cap) {
        for sym in count_vectors(k, cap - ext.len()) {
            if !rng.gen_bool(density) {
                continue;
            }
            let re = rng.gen_range(-3i64..=3);
            let im = if rng.gen_bool(0.3) {
                rng.gen_range(-2i64..=2)
            } else {
                0
            };
            let value = S::from_i64(re) + S::from_i64(im) * S::imaginary_unit();
            h.set(
                SymBasisIndex::new(sym),
                ExtBasisIndex::new(ext.clone()).unwrap(),
                value,
            )
            .unwrap();
        }
    }
    h
}
