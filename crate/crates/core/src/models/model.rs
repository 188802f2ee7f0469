use std::collections::HashMap;

use crate::algebra::{dual_basis, ExtBasisIndex, Scalar, SymBasisIndex};
use crate::error::{Error, Result};

/// Sort a wedge sequence in place. Returns `None` when an index repeats
/// (the wedge vanishes), otherwise whether an odd number of transpositions
/// was needed.
pub fn canonicalize_wedge(seq: &mut [u32]) -> Option<bool> {
    let mut odd = false;
    for i in 1..seq.len() {
        let mut j = i;
        while j > 0 && seq[j - 1] > seq[j] {
            seq.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if seq.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(odd)
}

/// One factor of a local evaluation: exterior colour `color`, either as `f`
/// or (when `dual`) as `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtFactor {
    pub color: usize,
    pub dual: bool,
}

impl ExtFactor {
    pub fn f(color: usize) -> Self {
        Self { color, dual: false }
    }

    pub fn g(color: usize) -> Self {
        Self { color, dual: true }
    }
}

/// The argument `⊙ e_{ψ(a)} ⊗ ⋀ f_{φ(a₁)} ∧ g_{φ(a₂)}` of a vertex factor.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LocalEvaluationRequest {
    /// Symmetric colours, with repetition.
    pub sym: Vec<usize>,
    /// Exterior factors in wedge order.
    pub ext: Vec<ExtFactor>,
}

/// A `(k, 2ℓ)`-colour edge-coloring model: a linear functional on
/// `S V_k ⊗ ⋀V_{2ℓ}`, stored by its values on canonical basis elements.
///
/// `cap`, when present, is the largest total degree `|sym| + |ext|` for which
/// the stored entries are complete. Evaluating above it is an error rather
/// than a silent zero.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeColoringModel<S> {
    k: usize,
    two_ell: usize,
    cap: Option<usize>,
    /// Key: `k` multiplicities followed by the strictly increasing exterior
    /// indices.
    entries: HashMap<Vec<u32>, S>,
}

impl<S: Scalar> EdgeColoringModel<S> {
    pub fn new(k: usize, two_ell: usize, cap: Option<usize>) -> Result<Self> {
        if !two_ell.is_multiple_of(2) {
            return Err(Error::InvalidModel(format!("2ℓ = {two_ell} must be even")));
        }
        Ok(Self {
            k,
            two_ell,
            cap,
            entries: HashMap::new(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn two_ell(&self) -> usize {
        self.two_ell
    }

    pub fn ell(&self) -> usize {
        self.two_ell / 2
    }

    pub fn cap(&self) -> Option<usize> {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn key(&self, sym: &SymBasisIndex, ext: &ExtBasisIndex) -> Result<Vec<u32>> {
        if sym.k() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: sym.k(),
            });
        }
        if let Some(&bad) = ext.indices().iter().find(|&&i| i >= self.two_ell) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                bound: self.two_ell,
            });
        }
        let mut key = sym.counts().to_vec();
        key.extend(ext.indices().iter().map(|&i| i as u32));
        Ok(key)
    }

    /// Set a canonical entry; zero values are removed.
    pub fn set(&mut self, sym: SymBasisIndex, ext: ExtBasisIndex, value: S) -> Result<()> {
        let key = self.key(&sym, &ext)?;
        if value.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
        Ok(())
    }

    pub fn get(&self, sym: &SymBasisIndex, ext: &ExtBasisIndex) -> Result<S> {
        let key = self.key(sym, ext)?;
        Ok(self.entries.get(&key).cloned().unwrap_or_else(S::zero))
    }

    /// Stored entries in a deterministic order.
    pub fn entries(&self) -> Vec<(SymBasisIndex, ExtBasisIndex, S)> {
        let mut out: Vec<_> = self
            .entries
            .iter()
            .map(|(key, v)| {
                let sym = SymBasisIndex::new(key[..self.k].to_vec());
                let ext = ExtBasisIndex::new(key[self.k..].iter().map(|&i| i as usize).collect())
                    .unwrap();
                (sym, ext, v.clone())
            })
            .collect();
        out.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        out
    }

    pub fn is_purely_symmetric(&self) -> bool {
        self.two_ell == 0
    }

    pub fn is_purely_exterior(&self) -> bool {
        self.k == 0
    }

    pub fn check_degree(&self, vertex: usize, degree: usize) -> Result<()> {
        match self.cap {
            Some(cap) if degree > cap => Err(Error::DegreeCapExceeded {
                vertex,
                degree,
                cap,
            }),
            _ => Ok(()),
        }
    }

    /// Evaluate on a canonical-order key buffer whose exterior tail is
    /// already expanded into plain `f` indices but not yet sorted.
    ///
    /// `buf` holds `k` counts followed by the exterior indices; `negate`
    /// carries the sign picked up from dual expansion.
    pub(crate) fn eval_buffer(&self, buf: &mut [u32], negate: bool) -> S {
        let Some(odd) = canonicalize_wedge(&mut buf[self.k..]) else {
            return S::zero();
        };
        match self.entries.get(&buf[..]) {
            None => S::zero(),
            Some(v) if odd != negate => -v.clone(),
            Some(v) => v.clone(),
        }
    }

    /// Evaluate `h` on a local request: duals are expanded, the wedge is
    /// sorted with sign `(−1)^{#inversions}`, and a repeated index gives 0.
    pub fn evaluate_local(&self, req: &LocalEvaluationRequest) -> Result<S> {
        let degree = req.sym.len() + req.ext.len();
        if let Some(cap) = self.cap {
            if degree > cap {
                return Err(Error::DegreeCapExceeded {
                    vertex: 0,
                    degree,
                    cap,
                });
            }
        }
        let mut buf = vec![0u32; self.k];
        for &c in &req.sym {
            *buf.get_mut(c).ok_or(Error::IndexOutOfRange {
                index: c,
                bound: self.k,
            })? += 1;
        }
        let mut negate = false;
        for f in &req.ext {
            if f.color >= self.two_ell {
                return Err(Error::IndexOutOfRange {
                    index: f.color,
                    bound: self.two_ell,
                });
            }
            let idx = if f.dual {
                let d = dual_basis(f.color, self.ell())?;
                negate ^= d.negative;
                d.index
            } else {
                f.color
            };
            buf.push(idx as u32);
        }
        Ok(self.eval_buffer(&mut buf, negate))
    }

    /// Drop the degree cap, declaring the stored entries to be the whole model.
    pub fn without_cap(mut self) -> Self {
        self.cap = None;
        self
    }

    pub fn map_values<T: Scalar>(&self, f: impl Fn(&S) -> T) -> EdgeColoringModel<T> {
        EdgeColoringModel {
            k: self.k,
            two_ell: self.two_ell,
            cap: self.cap,
            entries: self
                .entries
                .iter()
                .map(|(key, v)| (key.clone(), f(v)))
                .collect(),
        }
    }
}
