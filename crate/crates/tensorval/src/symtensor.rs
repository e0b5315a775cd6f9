//! Symmetric tensor algebra over `R^n` in homogeneous-polynomial form.
//!
//! A symmetric tensor `T` of rank `p` is stored through the coefficients of
//! the homogeneous polynomial `x ↦ T(x, …, x)`.  With this representation the
//! symmetric tensor product is plain polynomial multiplication, and the
//! multilinear components are recovered on demand by dividing by multinomial
//! multiplicities.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TensorError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("apply expects {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("basis is not orthonormal within tolerance")]
    NonOrthonormalBasis,
    #[error("empty linear combination")]
    EmptyCombination,
}

/// Exponent vector of a monomial in `n` variables; ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All multi-indices of length `n` and total degree `p`, in lexicographic order.
    pub fn all(n: usize, p: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<MultiIndex>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(MultiIndex(cur.clone()));
                return;
            }
            // descending first entry gives lexicographic order under our Ord?  No:
            // lexicographic ascending starts with the smallest leading exponent.
            for e in 0..=left {
                cur[pos] = e;
                rec(cur, pos + 1, left - e, out);
            }
        }
        if n == 0 {
            if p == 0 {
                out.push(MultiIndex(Vec::new()));
            }
            return out;
        }
        rec(&mut cur, 0, p, &mut out);
        out.sort();
        out
    }

    /// Multinomial multiplicity `degree! / (a_1! ⋯ a_n!)`.
    pub fn multinomial(&self) -> f64 {
        let mut num: u128 = 1;
        let mut k: u128 = 0;
        for &a in &self.0 {
            for i in 1..=(a as u128) {
                k += 1;
                num = num * k / i;
            }
        }
        num as f64
    }
}

/// Symmetric tensor of rank `p` over `R^n`, stored as the coefficient map of
/// the homogeneous polynomial `x ↦ T(x, …, x)`.  Missing entries are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTensor {
    dim: usize,
    rank: u32,
    coeffs: BTreeMap<MultiIndex, f64>,
}

impl SymTensor {
    pub fn zero(dim: usize, rank: u32) -> Self {
        SymTensor {
            dim,
            rank,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, value: f64) -> Self {
        let mut t = SymTensor::zero(dim, 0);
        if value != 0.0 {
            t.coeffs.insert(MultiIndex(vec![0; dim]), value);
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Polynomial coefficient of the monomial `x^a`.
    pub fn coeff(&self, a: &MultiIndex) -> f64 {
        debug_assert_eq!(a.len(), self.dim);
        debug_assert_eq!(a.degree(), self.rank);
        self.coeffs.get(a).copied().unwrap_or(0.0)
    }

    /// Multilinear component on the basis tuple with exponent multiset `a`.
    pub fn component(&self, a: &MultiIndex) -> f64 {
        self.coeff(a) / a.multinomial()
    }

    pub fn set_coeff(&mut self, a: MultiIndex, c: f64) {
        debug_assert_eq!(a.len(), self.dim);
        debug_assert_eq!(a.degree(), self.rank);
        if c == 0.0 {
            self.coeffs.remove(&a);
        } else {
            self.coeffs.insert(a, c);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &f64)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|&c| c == 0.0)
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// `v^p`: the rank-`p` power of a vector, with polynomial `⟨v, x⟩^p`.
    /// Rank 0 is the scalar 1 (the empty tensor product).
    pub fn tensor_power(v: &[f64], p: u32) -> Self {
        let dim = v.len();
        let mut t = SymTensor::zero(dim, p);
        for a in MultiIndex::all(dim, p) {
            let mut c = a.multinomial();
            for (vi, &ai) in v.iter().zip(&a.0) {
                c *= vi.powi(ai as i32);
            }
            if c != 0.0 {
                t.coeffs.insert(a, c);
            }
        }
        t
    }

    /// Metric tensor `Q` of the full space: polynomial `Σ_i x_i²`.
    pub fn metric(dim: usize) -> Self {
        let mut t = SymTensor::zero(dim, 2);
        for i in 0..dim {
            let mut e = vec![0u32; dim];
            e[i] = 2;
            t.coeffs.insert(MultiIndex(e), 1.0);
        }
        t
    }

    /// Metric tensor `Q(E)` of the subspace spanned by an orthonormal basis:
    /// polynomial `Σ_b ⟨b, x⟩²`.  An empty basis gives the zero rank-2 tensor.
    pub fn metric_of_subspace(dim: usize, basis: &[Vec<f64>]) -> Result<Self, TensorError> {
        const TOL: f64 = 1e-12;
        for (i, b) in basis.iter().enumerate() {
            if b.len() != dim {
                return Err(TensorError::DimMismatch(b.len(), dim));
            }
            for (k, c) in basis.iter().enumerate() {
                let d: f64 = b.iter().zip(c).map(|(x, y)| x * y).sum();
                let want = if i == k { 1.0 } else { 0.0 };
                if (d - want).abs() > TOL {
                    return Err(TensorError::NonOrthonormalBasis);
                }
            }
        }
        let mut t = SymTensor::zero(dim, 2);
        for b in basis {
            t = t.add_scaled(&SymTensor::tensor_power(b, 2), 1.0)?;
        }
        Ok(t)
    }

    /// Symmetric tensor product: polynomial multiplication.
    pub fn sym_product(&self, other: &SymTensor) -> Result<SymTensor, TensorError> {
        if self.dim != other.dim {
            return Err(TensorError::DimMismatch(self.dim, other.dim));
        }
        let mut t = SymTensor::zero(self.dim, self.rank + other.rank);
        for (a, &ca) in &self.coeffs {
            for (b, &cb) in &other.coeffs {
                let m = MultiIndex(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect());
                *t.coeffs.entry(m).or_insert(0.0) += ca * cb;
            }
        }
        Ok(t)
    }

    pub fn scale(&self, s: f64) -> SymTensor {
        let mut t = self.clone();
        for c in t.coeffs.values_mut() {
            *c *= s;
        }
        t
    }

    fn add_scaled(&self, other: &SymTensor, s: f64) -> Result<SymTensor, TensorError> {
        if self.dim != other.dim {
            return Err(TensorError::DimMismatch(self.dim, other.dim));
        }
        if self.rank != other.rank {
            return Err(TensorError::RankMismatch(
                self.rank as usize,
                other.rank as usize,
            ));
        }
        let mut t = self.clone();
        for (a, &c) in &other.coeffs {
            *t.coeffs.entry(a.clone()).or_insert(0.0) += s * c;
        }
        Ok(t)
    }

    /// Coefficient-wise linear combination of same-shape tensors.
    pub fn combine(terms: &[(f64, &SymTensor)]) -> Result<SymTensor, TensorError> {
        let (_, first) = terms.first().ok_or(TensorError::EmptyCombination)?;
        let mut acc = SymTensor::zero(first.dim(), first.rank());
        for &(s, t) in terms {
            acc = acc.add_scaled(t, s)?;
        }
        Ok(acc)
    }

    /// Evaluate the symmetric multilinear form at `rank` vectors.
    pub fn apply(&self, args: &[&[f64]]) -> Result<f64, TensorError> {
        if args.len() != self.rank as usize {
            return Err(TensorError::ArityMismatch {
                expected: self.rank as usize,
                got: args.len(),
            });
        }
        for v in args {
            if v.len() != self.dim {
                return Err(TensorError::DimMismatch(v.len(), self.dim));
            }
        }
        if self.rank == 0 {
            return Ok(self.coeff(&MultiIndex(vec![0; self.dim])));
        }
        // Sum over all basis index tuples; the component for a tuple depends
        // only on its exponent multiset.
        let p = self.rank as usize;
        let n = self.dim;
        let mut total = 0.0;
        let mut idx = vec![0usize; p];
        loop {
            let mut a = vec![0u32; n];
            let mut w = 1.0;
            for (t, &i) in idx.iter().enumerate() {
                a[i] += 1;
                w *= args[t][i];
            }
            if w != 0.0 {
                total += self.component(&MultiIndex(a)) * w;
            }
            // advance the index tuple
            let mut pos = 0;
            loop {
                if pos == p {
                    return Ok(total);
                }
                idx[pos] += 1;
                if idx[pos] < n {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Evaluate the polynomial at a single point.
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .map(|(a, c)| {
                c * x
                    .iter()
                    .zip(&a.0)
                    .map(|(xi, &ai)| xi.powi(ai as i32))
                    .product::<f64>()
            })
            .sum()
    }

    /// Componentwise comparison with tolerance `atol + rtol·(1 + ‖other‖_∞)`.
    pub fn approx_eq(&self, other: &SymTensor, atol: f64, rtol: f64) -> bool {
        if self.dim != other.dim || self.rank != other.rank {
            return false;
        }
        let tol = atol + rtol * (1.0 + other.norm_inf());
        let mut keys: Vec<&MultiIndex> = self.coeffs.keys().collect();
        keys.extend(other.coeffs.keys());
        keys.sort();
        keys.dedup();
        keys.iter().all(|a| (self.coeff(a) - other.coeff(a)).abs() <= tol)
    }

    /// Default tolerances for tensor comparison.
    pub fn approx_eq_default(&self, other: &SymTensor) -> bool {
        self.approx_eq(other, 1e-10, 1e-10)
    }
}

impl fmt::Display for SymTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}·x^{:?}", a.0)?;
        }
        Ok(())
    }
}

/// Serializes as a lexicographically sorted list of `[exponents, coefficient]`
/// pairs over the dense index set of the tensor's rank.
impl Serialize for SymTensor {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let idx = MultiIndex::all(self.dim, self.rank);
        let mut seq = ser.serialize_seq(Some(idx.len()))?;
        for a in idx {
            let c = self.coeff(&a);
            seq.serialize_element(&(&a.0, c))?;
        }
        seq.end()
    }
}
