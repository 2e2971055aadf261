//! Truncated tensor algebra over a d-letter alphabet.
//!
//! A `TruncatedTensor` holds one dense coefficient block per word length
//! `0..=depth`, with `d^k` coefficients at length `k`. Words are ordered
//! lexicographically within a level, so the word `i1 i2 .. ik` (letters
//! `1..=d`) lives at flat index `sum_j (i_j - 1) * d^(k-j)`.
//!
//! The product truncates at `depth`. For signatures of paths this product
//! is exactly Chen's concatenation identity, which is why `path_signature`
//! can fold segment signatures left to right.

use crate::error::{Error, Result};

/// Dense tensor-algebra element truncated at a fixed word length.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedTensor {
    dim: usize,
    depth: usize,
    levels: Vec<Vec<f64>>,
}

impl TruncatedTensor {
    /// Zero element: every coefficient including the scalar term is 0.
    pub fn zero(dim: usize, depth: usize) -> Self {
        assert!(dim >= 1, "alphabet must have at least one letter");
        let levels = (0..=depth).map(|k| vec![0.0; dim.pow(k as u32)]).collect();
        TruncatedTensor { dim, depth, levels }
    }

    /// Multiplicative identity: scalar term 1, all other coefficients 0.
    pub fn identity(dim: usize, depth: usize) -> Self {
        let mut t = Self::zero(dim, depth);
        t.levels[0][0] = 1.0;
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Coefficient block for words of length `k`, lexicographic order.
    pub fn level(&self, k: usize) -> &[f64] {
        &self.levels[k]
    }

    pub(crate) fn level_mut(&mut self, k: usize) -> &mut [f64] {
        &mut self.levels[k]
    }

    /// Coefficient of a single word given as letters `1..=dim`.
    ///
    /// Panics if the word is longer than `depth` or uses a letter outside
    /// the alphabet; those are caller bugs, not data conditions.
    pub fn coeff(&self, word: &[u8]) -> f64 {
        assert!(word.len() <= self.depth, "word longer than truncation depth");
        self.levels[word.len()][word_index(self.dim, word)]
    }

    /// Truncated tensor product. For two signatures this is Chen's identity:
    /// the signature of the concatenated path.
    pub fn concat(&self, rhs: &TruncatedTensor) -> Result<TruncatedTensor> {
        if self.dim != rhs.dim || self.depth != rhs.depth {
            return Err(Error::ShapeMismatch {
                left_dim: self.dim,
                left_depth: self.depth,
                right_dim: rhs.dim,
                right_depth: rhs.depth,
            });
        }
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &TruncatedTensor) -> TruncatedTensor {
        let mut out = TruncatedTensor::zero(self.dim, self.depth);
        for k in 0..=self.depth {
            let out_k = &mut out.levels[k];
            for j in 0..=k {
                let a = &self.levels[j];
                let b = &rhs.levels[k - j];
                for (p, &ap) in a.iter().enumerate() {
                    if ap == 0.0 {
                        continue;
                    }
                    let row = &mut out_k[p * b.len()..(p + 1) * b.len()];
                    for (slot, &bq) in row.iter_mut().zip(b) {
                        *slot += ap * bq;
                    }
                }
            }
        }
        out
    }

    fn add_scaled(&mut self, other: &TruncatedTensor, factor: f64) {
        for (mine, theirs) in self.levels.iter_mut().zip(&other.levels) {
            for (slot, &v) in mine.iter_mut().zip(theirs) {
                *slot += factor * v;
            }
        }
    }

    /// Tensor exponential of an element with scalar term 0.
    ///
    /// The series terminates: the n-th power of such an element has no
    /// words shorter than n, so terms past `depth` vanish.
    pub fn exp(&self) -> Result<TruncatedTensor> {
        if self.levels[0][0] != 0.0 {
            return Err(Error::BadScalarTerm {
                expected: 0.0,
                got: self.levels[0][0],
            });
        }
        let mut out = TruncatedTensor::identity(self.dim, self.depth);
        let mut power = TruncatedTensor::identity(self.dim, self.depth);
        let mut factorial = 1.0;
        for n in 1..=self.depth {
            power = power.mul_unchecked(self);
            factorial *= n as f64;
            out.add_scaled(&power, 1.0 / factorial);
        }
        Ok(out)
    }

    /// Tensor logarithm of an element with scalar term 1.
    ///
    /// Same truncation argument as `exp`: powers of `self - 1` beyond
    /// `depth` contribute nothing.
    pub fn log(&self) -> Result<TruncatedTensor> {
        if self.levels[0][0] != 1.0 {
            return Err(Error::BadScalarTerm {
                expected: 1.0,
                got: self.levels[0][0],
            });
        }
        let mut reduced = self.clone();
        reduced.levels[0][0] = 0.0;
        let mut out = TruncatedTensor::zero(self.dim, self.depth);
        let mut power = TruncatedTensor::identity(self.dim, self.depth);
        for n in 1..=self.depth {
            power = power.mul_unchecked(&reduced);
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            out.add_scaled(&power, sign / n as f64);
        }
        Ok(out)
    }
}

/// Flat index of a word within its level block.
pub fn word_index(dim: usize, word: &[u8]) -> usize {
    let mut idx = 0;
    for &letter in word {
        debug_assert!((1..=dim as u8).contains(&letter), "letter out of alphabet");
        idx = idx * dim + (letter as usize - 1);
    }
    idx
}

/// Piecewise-linear path in `dim` coordinates, stored as a flat row-major
/// point list. Construction validates shape and finiteness so signature
/// routines can assume well-formed input.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    dim: usize,
    data: Vec<f64>,
}

impl Path {
    /// Builds a path from row-major coordinates, `points * dim` values.
    pub fn from_flat(dim: usize, data: Vec<f64>) -> Result<Path> {
        assert!(dim >= 1, "path dimension must be at least 1");
        if data.is_empty() {
            return Err(Error::EmptyPath);
        }
        if data.len() % dim != 0 {
            return Err(Error::PointDimMismatch {
                index: data.len() / dim,
                expected: dim,
                got: data.len() % dim,
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "path coordinates",
            });
        }
        Ok(Path { dim, data })
    }

    /// Builds a path from one slice per point.
    pub fn from_rows(dim: usize, rows: &[Vec<f64>]) -> Result<Path> {
        for (index, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::PointDimMismatch {
                    index,
                    expected: dim,
                    got: row.len(),
                });
            }
        }
        Path::from_flat(dim, rows.concat())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty point lists
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Coordinate-wise displacement from first to last point.
    pub fn total_displacement(&self) -> Vec<f64> {
        let first = self.point(0);
        let last = self.point(self.len() - 1);
        last.iter().zip(first).map(|(b, a)| b - a).collect()
    }
}

/// Signature of a single straight segment with the given displacement:
/// the tensor exponential of the displacement placed at level 1, so the
/// word `i1..ik` gets `v[i1]*..*v[ik] / k!`.
pub fn segment_signature(displacement: &[f64], depth: usize) -> TruncatedTensor {
    assert!(!displacement.is_empty(), "displacement must have entries");
    assert!(
        displacement.iter().all(|v| v.is_finite()),
        "displacement must be finite"
    );
    let dim = displacement.len();
    let mut sig = TruncatedTensor::identity(dim, depth);
    // Build v^(tensor k) level by level, dividing by k! as we go.
    let mut outer = vec![1.0];
    for k in 1..=depth {
        let mut next = vec![0.0; outer.len() * dim];
        for (p, &prev) in outer.iter().enumerate() {
            for (i, &v) in displacement.iter().enumerate() {
                next[p * dim + i] = prev * v;
            }
        }
        outer = next;
        let factor = 1.0 / factorial(k);
        for (slot, &v) in sig.level_mut(k).iter_mut().zip(&outer) {
            *slot = v * factor;
        }
    }
    sig
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Signature of a piecewise-linear path: the left-to-right product of its
/// segment signatures. A single point yields the identity tensor.
pub fn path_signature(path: &Path, depth: usize) -> TruncatedTensor {
    let dim = path.dim();
    let mut acc = TruncatedTensor::identity(dim, depth);
    for i in 1..path.len() {
        let prev = path.point(i - 1);
        let next = path.point(i);
        let displacement: Vec<f64> = next.iter().zip(prev).map(|(b, a)| b - a).collect();
        let seg = segment_signature(&displacement, depth);
        acc = acc.mul_unchecked(&seg);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_index_is_lexicographic() {
        assert_eq!(word_index(2, &[1]), 0);
        assert_eq!(word_index(2, &[2]), 1);
        assert_eq!(word_index(2, &[1, 1]), 0);
        assert_eq!(word_index(2, &[1, 2]), 1);
        assert_eq!(word_index(2, &[2, 1]), 2);
        assert_eq!(word_index(2, &[2, 2]), 3);
        assert_eq!(word_index(3, &[2, 3, 1]), 9 + 2 * 3);
    }

    #[test]
    fn single_point_path_gives_identity() {
        let path = Path::from_flat(2, vec![5.0, -3.0]).unwrap();
        let sig = path_signature(&path, 3);
        assert_eq!(sig, TruncatedTensor::identity(2, 3));
    }

    #[test]
    fn one_dimension_segment_levels_are_powers_over_factorials() {
        let path = Path::from_flat(1, vec![0.0, 3.0]).unwrap();
        let sig = path_signature(&path, 3);
        assert_eq!(sig.level(0), &[1.0]);
        assert_eq!(sig.level(1), &[3.0]);
        assert_eq!(sig.level(2), &[4.5]);
        assert_eq!(sig.level(3), &[4.5]);
    }

    #[test]
    fn level_one_equals_total_displacement() {
        let path = Path::from_flat(2, vec![0.0, 0.0, 1.0, 0.5, -2.0, 4.0]).unwrap();
        let sig = path_signature(&path, 2);
        assert_eq!(sig.level(1), path.total_displacement().as_slice());
    }

    #[test]
    fn segment_level_two_is_half_outer_product() {
        let sig = segment_signature(&[2.0, -1.0], 2);
        // words 11, 12, 21, 22
        assert_eq!(sig.level(2), &[2.0, -1.0, -1.0, 0.5]);
    }

    #[test]
    fn concat_rejects_shape_mismatch() {
        let a = TruncatedTensor::identity(2, 3);
        let b = TruncatedTensor::identity(3, 3);
        assert!(matches!(a.concat(&b), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn concat_matches_full_path_signature() {
        let depth = 4;
        let full = Path::from_flat(2, vec![0.0, 0.0, 1.0, 2.0, 3.0, 1.0, 2.5, -0.5]).unwrap();
        let head = Path::from_flat(2, vec![0.0, 0.0, 1.0, 2.0]).unwrap();
        let tail = Path::from_flat(2, vec![1.0, 2.0, 3.0, 1.0, 2.5, -0.5]).unwrap();
        let joined = path_signature(&head, depth)
            .concat(&path_signature(&tail, depth))
            .unwrap();
        let direct = path_signature(&full, depth);
        for k in 0..=depth {
            for (a, b) in joined.level(k).iter().zip(direct.level(k)) {
                assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()), "level {k}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn exp_then_log_round_trips() {
        let mut t = TruncatedTensor::zero(2, 3);
        t.level_mut(1).copy_from_slice(&[0.7, -0.3]);
        t.level_mut(2).copy_from_slice(&[0.1, 0.4, -0.2, 0.05]);
        let back = t.exp().unwrap().log().unwrap();
        for k in 0..=3 {
            for (a, b) in back.level(k).iter().zip(t.level(k)) {
                assert!((a - b).abs() < 1e-12, "level {k}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn half_element_exponentials_concatenate_to_full() {
        // exp(v/2) * exp(v/2) = exp(v): an element always commutes with
        // its own half, so the group law collapses to addition here.
        let mut v = TruncatedTensor::zero(2, 4);
        v.level_mut(1).copy_from_slice(&[0.3, -0.8]);
        v.level_mut(2).copy_from_slice(&[0.05, 0.2, -0.2, 0.1]);
        v.level_mut(3)[2] = -0.07;
        let mut half = TruncatedTensor::zero(2, 4);
        for k in 1..=4 {
            let src: Vec<f64> = v.level(k).iter().map(|c| c * 0.5).collect();
            half.level_mut(k).copy_from_slice(&src);
        }
        let joined = half.exp().unwrap().concat(&half.exp().unwrap()).unwrap();
        let full = v.exp().unwrap();
        for k in 0..=4 {
            for (a, b) in joined.level(k).iter().zip(full.level(k)) {
                assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()), "level {k}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn exp_requires_zero_scalar_term() {
        let t = TruncatedTensor::identity(2, 2);
        assert!(matches!(t.exp(), Err(Error::BadScalarTerm { .. })));
    }

    #[test]
    fn log_requires_unit_scalar_term() {
        let t = TruncatedTensor::zero(2, 2);
        assert!(matches!(t.log(), Err(Error::BadScalarTerm { .. })));
    }

    #[test]
    fn path_construction_validates_input() {
        assert!(matches!(Path::from_flat(2, vec![]), Err(Error::EmptyPath)));
        assert!(matches!(
            Path::from_flat(2, vec![1.0, 2.0, 3.0]),
            Err(Error::PointDimMismatch { .. })
        ));
        assert!(matches!(
            Path::from_flat(1, vec![f64::NAN]),
            Err(Error::NonFinite { .. })
        ));
    }
}
