//! Dense m-order n-dimensional real tensors.
//!
//! Entries are stored flat in row-major order: the first index varies
//! slowest and the last index fastest. The public API uses 1-based
//! multi-indices; offsets and the internal helpers are 0-based.

use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};

/// A 1-based multi-index `(i1, ..., im)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(components: Vec<usize>) -> Self {
        MultiIndex(components)
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when every component is equal (the support of the unit tensor).
    pub fn is_diagonal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(v: Vec<usize>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[usize; N]> for MultiIndex {
    fn from(v: [usize; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Structural predicates of a tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureReport {
    /// Every entry is `>= 0`.
    pub nonnegative: bool,
    /// Every off-diagonal entry is `<= 0` (the class Z).
    pub z_tensor: bool,
    /// Entries are invariant under every permutation of the index tuple.
    pub symmetric: bool,
    /// `max_i A_{i...i}`.
    pub max_diagonal: f64,
}

/// An m-order n-dimensional real tensor with `n^m` finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    order: usize,
    dim: usize,
    data: Vec<f64>,
}

fn checked_len(order: usize, dim: usize) -> Result<usize> {
    if order < 2 {
        return Err(Error::OrderTooSmall(order));
    }
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    u32::try_from(order)
        .ok()
        .and_then(|o| dim.checked_pow(o))
        .ok_or(Error::TooLarge { order, dim })
}

impl DenseTensor {
    /// Builds a tensor from row-major entries.
    pub fn new(order: usize, dim: usize, entries: Vec<f64>) -> Result<Self> {
        let expected = checked_len(order, dim)?;
        if entries.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: entries.len(),
            });
        }
        if let Some(offset) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { offset });
        }
        Ok(DenseTensor {
            order,
            dim,
            data: entries,
        })
    }

    /// Builds a tensor by evaluating `f` at every 0-based multi-index in
    /// row-major order.
    pub fn from_fn(order: usize, dim: usize, mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        let len = checked_len(order, dim)?;
        let mut idx = vec![0usize; order];
        let mut data = Vec::with_capacity(len);
        for _ in 0..len {
            data.push(f(&idx));
            increment(&mut idx, dim);
        }
        DenseTensor::new(order, dim, data)
    }

    /// A tensor with every entry equal to `value`.
    pub fn filled(order: usize, dim: usize, value: f64) -> Result<Self> {
        let len = checked_len(order, dim)?;
        DenseTensor::new(order, dim, vec![value; len])
    }

    /// The unit tensor `I`, with entries `δ_{i1...im}`.
    pub fn unit(order: usize, dim: usize) -> Result<Self> {
        let mut t = DenseTensor::filled(order, dim, 0.0)?;
        let step = t.diagonal_stride();
        for i in 0..dim {
            t.data[i * step] = 1.0;
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored entries, `n^m`.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<f64> {
        self.data
    }

    /// Entry at a 1-based multi-index.
    pub fn entry(&self, idx: &MultiIndex) -> Result<f64> {
        Ok(self.data[self.offset_of(idx)?])
    }

    /// Flat 0-based offset of a 1-based multi-index:
    /// `sum_k (i_k - 1) * n^(m-k)`.
    pub fn offset_of(&self, idx: &MultiIndex) -> Result<usize> {
        let c = idx.components();
        if c.len() != self.order || c.iter().any(|&i| i == 0 || i > self.dim) {
            return Err(Error::IndexOutOfRange {
                index: c.to_vec(),
                order: self.order,
                dim: self.dim,
            });
        }
        Ok(c.iter().fold(0, |acc, &i| acc * self.dim + (i - 1)))
    }

    /// 1-based multi-index of a flat offset.
    pub fn index_of(&self, offset: usize) -> MultiIndex {
        let mut c = vec![0usize; self.order];
        decode(offset, self.dim, &mut c);
        MultiIndex(c.into_iter().map(|i| i + 1).collect())
    }

    /// Offset distance between consecutive diagonal entries,
    /// `1 + n + ... + n^(m-1)`.
    pub(crate) fn diagonal_stride(&self) -> usize {
        (0..self.order).fold(0, |acc, _| acc * self.dim + 1)
    }

    /// Diagonal entries `A_{i...i}`.
    pub fn diagonal(&self) -> Vec<f64> {
        let step = self.diagonal_stride();
        (0..self.dim).map(|i| self.data[i * step]).collect()
    }

    /// Contiguous block of entries whose first index is `i` (0-based).
    pub fn slice(&self, i: usize) -> &[f64] {
        let len = self.data.len() / self.dim;
        &self.data[i * len..(i + 1) * len]
    }

    /// `C_i = sum |A_{i i2...im}|` over the off-diagonal entries of slice `i`.
    pub fn offdiag_abs_row_sums(&self) -> Vec<f64> {
        let step = self.diagonal_stride();
        let len = self.data.len() / self.dim;
        (0..self.dim)
            .map(|i| {
                let diag_in_slice = i * step - i * len;
                self.slice(i)
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != diag_in_slice)
                    .map(|(_, v)| v.abs())
                    .sum()
            })
            .collect()
    }

    fn check_vector(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: x.len(),
            });
        }
        Ok(())
    }

    /// `A x^{m-1}`: component `i` is `sum A_{i i2...im} x_{i2}...x_{im}`.
    ///
    /// Evaluated densely. For each pair `(i, i2)` the trailing fiber is
    /// dotted against the precomputed outer power `x^{⊗(m-2)}`, then
    /// scaled by `x_{i2}` and accumulated in increasing `i2`. The dot
    /// product uses four interleaved partial sums combined pairwise, so
    /// the reduction order is fixed and results are bit-reproducible.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_vector(x)?;
        let w = outer_power(x, self.order - 2);
        Ok((0..self.dim)
            .map(|i| {
                self.slice(i)
                    .chunks_exact(w.len())
                    .zip(x)
                    .fold(0.0, |acc, (fiber, &xj)| acc + xj * dot(fiber, &w))
            })
            .collect())
    }

    /// The homogeneous form `f(x) = sum A_{i1...im} x_{i1}...x_{im}`.
    pub fn form(&self, x: &[f64]) -> Result<f64> {
        let y = self.apply(x)?;
        Ok(x.iter().zip(&y).map(|(a, b)| a * b).sum())
    }

    /// `a (A + b I)`.
    pub fn shift_combine(&self, a: f64, b: f64) -> DenseTensor {
        let step = self.diagonal_stride();
        let mut data: Vec<f64> = self.data.iter().map(|v| a * v).collect();
        for i in 0..self.dim {
            let k = i * step;
            data[k] = a * (self.data[k] + b);
        }
        DenseTensor {
            order: self.order,
            dim: self.dim,
            data,
        }
    }

    /// Entrywise `c * A`.
    pub fn scale(&self, c: f64) -> DenseTensor {
        self.map(|v| c * v)
    }

    /// Entrywise map. Panics if `f` produces a non-finite value.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> DenseTensor {
        let data: Vec<f64> = self.data.iter().map(|&v| f(v)).collect();
        assert!(data.iter().all(|v| v.is_finite()), "map produced a non-finite entry");
        DenseTensor {
            order: self.order,
            dim: self.dim,
            data,
        }
    }

    /// Entrywise sum of two tensors of the same shape.
    pub fn try_add(&self, other: &DenseTensor) -> Result<DenseTensor> {
        if self.order != other.order || self.dim != other.dim {
            return Err(Error::LengthMismatch {
                expected: self.data.len(),
                actual: other.data.len(),
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        DenseTensor::new(self.order, self.dim, data)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&v| v >= 0.0)
    }

    pub fn is_z_tensor(&self) -> bool {
        let step = self.diagonal_stride();
        self.data
            .iter()
            .enumerate()
            .all(|(k, &v)| v <= 0.0 || k % step == 0 && k / step < self.dim)
    }

    /// Exact (bitwise) invariance under index permutations.
    pub fn is_symmetric(&self) -> bool {
        let canon = self.canonical_offsets();
        self.data.iter().zip(&canon).all(|(v, &c)| *v == self.data[c])
    }

    pub fn structure(&self) -> StructureReport {
        StructureReport {
            nonnegative: self.is_nonnegative(),
            z_tensor: self.is_z_tensor(),
            symmetric: self.is_symmetric(),
            max_diagonal: self.diagonal().into_iter().fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// Averages every entry over the permutations of its multi-index.
    ///
    /// Entries are grouped by their sorted index tuple; averaging over a
    /// class equals averaging over all `m!` permutations, since every
    /// distinct permutation occurs equally often. Symmetric inputs are
    /// returned unchanged.
    pub fn symmetrize(&self) -> DenseTensor {
        if self.is_symmetric() {
            return self.clone();
        }
        let canon = self.canonical_offsets();
        let mut sums = vec![0.0; self.data.len()];
        let mut counts = vec![0u32; self.data.len()];
        for (v, &c) in self.data.iter().zip(&canon) {
            sums[c] += v;
            counts[c] += 1;
        }
        let data = canon.iter().map(|&c| sums[c] / f64::from(counts[c])).collect();
        DenseTensor {
            order: self.order,
            dim: self.dim,
            data,
        }
    }

    /// For each offset, the offset of its sorted (non-decreasing) index tuple.
    fn canonical_offsets(&self) -> Vec<usize> {
        let mut idx = vec![0usize; self.order];
        let mut sorted = vec![0usize; self.order];
        let mut out = Vec::with_capacity(self.data.len());
        for _ in 0..self.data.len() {
            sorted.copy_from_slice(&idx);
            sorted.sort_unstable();
            out.push(encode(&sorted, self.dim));
            increment(&mut idx, self.dim);
        }
        out
    }
}

impl Add for &DenseTensor {
    type Output = DenseTensor;

    /// Panics on shape mismatch; see [`DenseTensor::try_add`].
    fn add(self, rhs: &DenseTensor) -> DenseTensor {
        self.try_add(rhs).expect("tensor shapes differ")
    }
}

/// Componentwise power `x^{[p]}`.
///
/// Non-negative integer exponents use repeated multiplication from the
/// left, which matches the contraction of the unit tensor bit for bit.
pub fn hadamard_power(x: &[f64], p: f64) -> Result<Vec<f64>> {
    if p.fract() == 0.0 && (0.0..=64.0).contains(&p) {
        let k = p as u32;
        return Ok(x.iter().map(|&v| (0..k).fold(1.0, |acc, _| acc * v)).collect());
    }
    if p.fract() == 0.0 {
        return Ok(x.iter().map(|v| v.powf(p)).collect());
    }
    if let Some((index, &value)) = x.iter().enumerate().find(|(_, v)| **v < 0.0) {
        return Err(Error::NegativeBase {
            index,
            value,
            exponent: p,
        });
    }
    Ok(if p == 0.5 {
        x.iter().map(|v| v.sqrt()).collect()
    } else {
        x.iter().map(|v| v.powf(p)).collect()
    })
}

/// `x ⊗ x ⊗ ... ⊗ x` (`k` factors), row-major; `k = 0` gives `[1.0]`.
fn outer_power(x: &[f64], k: usize) -> Vec<f64> {
    let mut w = vec![1.0];
    for _ in 0..k {
        w = w.iter().flat_map(|&a| x.iter().map(move |&b| a * b)).collect();
    }
    w
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0f64; 4];
    let ca = a.chunks_exact(4);
    let cb = b.chunks_exact(4);
    let (ra, rb) = (ca.remainder(), cb.remainder());
    for (p, q) in ca.zip(cb) {
        for k in 0..4 {
            acc[k] += p[k] * q[k];
        }
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (p, q) in ra.iter().zip(rb) {
        s += p * q;
    }
    s
}

/// Advances a 0-based row-major multi-index (last component fastest).
pub(crate) fn increment(idx: &mut [usize], dim: usize) {
    for c in idx.iter_mut().rev() {
        *c += 1;
        if *c < dim {
            return;
        }
        *c = 0;
    }
}

pub(crate) fn encode(idx: &[usize], dim: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * dim + i)
}

pub(crate) fn decode(mut offset: usize, dim: usize, out: &mut [usize]) {
    for c in out.iter_mut().rev() {
        *c = offset % dim;
        offset /= dim;
    }
}
