//! Lyndon-word basis for log-signatures.
//!
//! A Lyndon word is strictly smaller than every proper rotation of itself.
//! Each Lyndon word `w` names a basis element of the free Lie algebra via
//! its standard bracketing: factor `w = uv` where `v` is the longest proper
//! suffix that is itself Lyndon, and bracket `[P(u), P(v)]` recursively.
//!
//! Expanded into the word basis, `P(w)` equals `w` plus a combination of
//! lexicographically larger words of the same length. That triangular shape
//! lets `LyndonBasis::project` read coordinates off a log-signature by
//! forward substitution in lexicographic order within each level.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::signature::tensor::{path_signature, word_index, Path, TruncatedTensor};

/// Word over the alphabet `1..=dim` that is minimal among its rotations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LyndonWord {
    letters: Vec<u8>,
}

impl LyndonWord {
    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false // generation never yields the empty word
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &letter in &self.letters {
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// All Lyndon words over `dim` letters up to length `max_len`, sorted by
/// length first and lexicographically within a length.
///
/// Uses Duval's generation: repeatedly extend the current word periodically
/// and bump the last letter, which emits Lyndon words in lexicographic
/// order; a stable sort by length then gives the (length, lex) order.
pub fn lyndon_words(dim: usize, max_len: usize) -> Vec<LyndonWord> {
    assert!(dim >= 1, "alphabet must have at least one letter");
    if max_len == 0 {
        return Vec::new();
    }
    let top = dim as u8;
    let mut words = Vec::new();
    let mut w: Vec<u8> = vec![1];
    loop {
        words.push(LyndonWord { letters: w.clone() });
        let period = w.len();
        while w.len() < max_len {
            let repeat = w[w.len() - period];
            w.push(repeat);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.letters.cmp(&b.letters)));
    words
}

/// Number of Lyndon words of exact length `n` over `dim` letters, by the
/// necklace-counting formula `(1/n) * sum over k dividing n of mu(n/k) * dim^k`.
pub fn logsig_level_dim(dim: usize, n: usize) -> usize {
    assert!(dim >= 1 && n >= 1);
    let mut total: i128 = 0;
    for k in 1..=n {
        if n % k == 0 {
            total += mobius(n / k) as i128 * (dim as i128).pow(k as u32);
        }
    }
    debug_assert!(total >= 0 && total % n as i128 == 0);
    (total / n as i128) as usize
}

/// Total log-signature length over `dim` letters up to `depth`.
pub fn logsig_dim(dim: usize, depth: usize) -> usize {
    (1..=depth).map(|n| logsig_level_dim(dim, n)).sum()
}

fn mobius(mut m: usize) -> i64 {
    let mut primes = 0;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if m > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Standard factorization of a Lyndon word of length >= 2: the suffix is
/// the lexicographically smallest proper suffix, the prefix is the rest.
fn standard_factorization(letters: &[u8]) -> (usize, usize) {
    debug_assert!(letters.len() >= 2);
    let mut best = 1;
    for start in 2..letters.len() {
        if letters[start..] < letters[best..] {
            best = start;
        }
    }
    (best, letters.len())
}

type SparseExpansion = Vec<(usize, f64)>;

/// Lyndon basis for one alphabet size and depth, with each bracketed basis
/// element pre-expanded into word coefficients for fast projection.
#[derive(Debug, Clone)]
pub struct LyndonBasis {
    dim: usize,
    depth: usize,
    words: Vec<LyndonWord>,
    level_ranges: Vec<Range<usize>>,
    expansions: Vec<SparseExpansion>,
}

impl LyndonBasis {
    pub fn new(dim: usize, depth: usize) -> LyndonBasis {
        assert!(dim >= 1 && depth >= 1);
        let words = lyndon_words(dim, depth);
        let mut level_ranges = Vec::with_capacity(depth);
        let mut start = 0;
        for n in 1..=depth {
            let count = words[start..].iter().take_while(|w| w.len() == n).count();
            level_ranges.push(start..start + count);
            start += count;
        }
        let mut memo: HashMap<Vec<u8>, SparseExpansion> = HashMap::new();
        let expansions = words
            .iter()
            .map(|w| expand_bracket(w.letters(), dim, &mut memo))
            .collect();
        LyndonBasis {
            dim,
            depth,
            words,
            level_ranges,
            expansions,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Basis words in (length, lex) order; coordinates use the same order.
    pub fn words(&self) -> &[LyndonWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Word-basis expansion of the bracketed element for basis index `i`,
    /// as (flat index within the level, coefficient) pairs.
    pub fn expansion(&self, i: usize) -> &[(usize, f64)] {
        &self.expansions[i]
    }

    /// Coordinates of a Lie element (such as a log-signature tensor) in
    /// this basis.
    ///
    /// Within each level the expansion of `P(w)` touches only `w` itself
    /// and lexicographically larger words, so peeling coordinates off in
    /// increasing lex order is exact back-substitution.
    pub fn project(&self, t: &TruncatedTensor) -> Result<Vec<f64>> {
        if t.dim() != self.dim || t.depth() != self.depth {
            return Err(Error::ShapeMismatch {
                left_dim: self.dim,
                left_depth: self.depth,
                right_dim: t.dim(),
                right_depth: t.depth(),
            });
        }
        let mut coords = Vec::with_capacity(self.words.len());
        for (n, range) in self.level_ranges.iter().enumerate() {
            let mut residual = t.level(n + 1).to_vec();
            for i in range.clone() {
                let idx = word_index(self.dim, self.words[i].letters());
                let c = residual[idx];
                coords.push(c);
                if c != 0.0 {
                    for &(j, coef) in &self.expansions[i] {
                        residual[j] -= c * coef;
                    }
                }
            }
        }
        Ok(coords)
    }
}

fn expand_bracket(
    letters: &[u8],
    dim: usize,
    memo: &mut HashMap<Vec<u8>, SparseExpansion>,
) -> SparseExpansion {
    if let Some(hit) = memo.get(letters) {
        return hit.clone();
    }
    let expansion = if letters.len() == 1 {
        vec![(letters[0] as usize - 1, 1.0)]
    } else {
        let (split, len) = standard_factorization(letters);
        let left = expand_bracket(&letters[..split], dim, memo);
        let right = expand_bracket(&letters[split..], dim, memo);
        let left_len = split;
        let right_len = len - split;
        let mut acc: HashMap<usize, f64> = HashMap::new();
        let shift_right = dim.pow(right_len as u32);
        let shift_left = dim.pow(left_len as u32);
        for &(p, a) in &left {
            for &(q, b) in &right {
                *acc.entry(p * shift_right + q).or_insert(0.0) += a * b;
                *acc.entry(q * shift_left + p).or_insert(0.0) -= a * b;
            }
        }
        let mut flat: SparseExpansion = acc
            .into_iter()
            .filter(|&(_, c)| c != 0.0)
            .collect();
        flat.sort_by_key(|&(i, _)| i);
        flat
    };
    memo.insert(letters.to_vec(), expansion.clone());
    expansion
}

/// Log-signature of a path: coordinates of `log(signature)` in the Lyndon
/// basis, ordered by (length, lex).
#[derive(Debug, Clone, PartialEq)]
pub struct LogSignature {
    dim: usize,
    depth: usize,
    words: Vec<LyndonWord>,
    coords: Vec<f64>,
}

impl LogSignature {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn words(&self) -> &[LyndonWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coordinate for a word written with digit letters, such as `"12"`.
    pub fn get(&self, word: &str) -> Option<f64> {
        self.words
            .iter()
            .position(|w| w.to_string() == word)
            .map(|i| self.coords[i])
    }
}

/// Computes the log-signature of a path at the given truncation depth.
pub fn log_signature(path: &Path, depth: usize) -> LogSignature {
    let basis = LyndonBasis::new(path.dim(), depth);
    log_signature_in(path, &basis)
}

/// Same as `log_signature` but reuses a prebuilt basis, which matters when
/// many paths share one alphabet and depth.
pub fn log_signature_in(path: &Path, basis: &LyndonBasis) -> LogSignature {
    let sig = path_signature(path, basis.depth());
    let log = sig.log().expect("signature has unit scalar term");
    let coords = basis.project(&log).expect("basis and tensor shapes match");
    LogSignature {
        dim: basis.dim(),
        depth: basis.depth(),
        words: basis.words().to_vec(),
        coords,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word_strings(dim: usize, max_len: usize) -> Vec<String> {
        lyndon_words(dim, max_len)
            .iter()
            .map(|w| w.to_string())
            .collect()
    }

    #[test]
    fn two_letter_words_up_to_length_three() {
        assert_eq!(word_strings(2, 3), ["1", "2", "12", "112", "122"]);
    }

    #[test]
    fn two_letter_level_counts_up_to_five() {
        let counts: Vec<usize> = (1..=5).map(|n| logsig_level_dim(2, n)).collect();
        assert_eq!(counts, [2, 1, 2, 3, 6]);
        assert_eq!(logsig_dim(2, 5), 14);
    }

    #[test]
    fn three_letter_level_counts_match_enumeration() {
        let words = lyndon_words(3, 4);
        for n in 1..=4 {
            let listed = words.iter().filter(|w| w.len() == n).count();
            assert_eq!(listed, logsig_level_dim(3, n), "length {n}");
        }
        assert_eq!(logsig_dim(3, 4), 32);
    }

    #[test]
    fn four_letter_dimension_at_depth_three() {
        assert_eq!(logsig_dim(4, 3), 30);
    }

    #[test]
    fn one_letter_alphabet_has_no_long_words() {
        assert_eq!(word_strings(1, 4), ["1"]);
        assert_eq!(logsig_level_dim(1, 1), 1);
        for n in 2..=6 {
            assert_eq!(logsig_level_dim(1, n), 0, "length {n}");
        }
    }

    #[test]
    fn factorization_splits_off_smallest_suffix() {
        // 1122 -> 1 | 122, 12122 -> 12 | 122
        assert_eq!(standard_factorization(&[1, 1, 2, 2]).0, 1);
        assert_eq!(standard_factorization(&[1, 2, 1, 2, 2]).0, 2);
        assert_eq!(standard_factorization(&[1, 2]).0, 1);
    }

    #[test]
    fn bracket_expansions_match_hand_results() {
        let basis = LyndonBasis::new(2, 4);
        let by_word: HashMap<String, usize> = basis
            .words()
            .iter()
            .enumerate()
            .map(|(i, w)| (w.to_string(), i))
            .collect();

        // [1,2] = 12 - 21
        let e12 = basis.expansion(by_word["12"]);
        assert_eq!(e12, &[(1, 1.0), (2, -1.0)]);

        // [1,[1,2]] = 112 - 2*121 + 211
        let e112 = basis.expansion(by_word["112"]);
        assert_eq!(e112, &[(1, 1.0), (2, -2.0), (4, 1.0)]);

        // [[1,2],2] = 122 - 2*212 + 221
        let e122 = basis.expansion(by_word["122"]);
        assert_eq!(e122, &[(3, 1.0), (5, -2.0), (6, 1.0)]);

        // [[1,[1,2]],2] = 1122 - 2*1212 + 2*2121 - 2211
        let e1122 = basis.expansion(by_word["1122"]);
        assert_eq!(e1122, &[(3, 1.0), (5, -2.0), (10, 2.0), (12, -1.0)]);
    }

    #[test]
    fn expansion_is_triangular_with_unit_diagonal() {
        for dim in 1..=4usize {
            let basis = LyndonBasis::new(dim, 4);
            for (i, w) in basis.words().iter().enumerate() {
                let own = word_index(dim, w.letters());
                let exp = basis.expansion(i);
                let diag = exp.iter().find(|&&(j, _)| j == own);
                assert_eq!(diag, Some(&(own, 1.0)), "word {w}");
                for &(j, _) in exp {
                    assert!(j >= own, "word {w} touches smaller index {j}");
                }
            }
        }
    }

    #[test]
    fn unit_l_shape_has_half_area_coordinate() {
        // log-signature coordinate for 12 is the signed area between the
        // path and its chord: for the unit L-shape it is 1/2.
        let path = Path::from_flat(2, vec![0.0, 0.0, 1.0, 0.0, 1.0, 1.0]).unwrap();
        let ls = log_signature(&path, 2);
        assert_eq!(ls.get("1"), Some(1.0));
        assert_eq!(ls.get("2"), Some(1.0));
        assert!((ls.get("12").unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn straight_line_has_no_bracket_terms() {
        let path = Path::from_flat(3, vec![0.0, 0.0, 0.0, 2.0, -1.0, 0.5]).unwrap();
        let ls = log_signature(&path, 3);
        assert_eq!(&ls.coords()[..3], &[2.0, -1.0, 0.5]);
        for (w, &c) in ls.words().iter().zip(ls.coords()).skip(3) {
            // the log series cancels these up to one rounding of 1/6
            assert!(c.abs() < 1e-15, "word {w} should vanish, got {c}");
        }
    }

    #[test]
    fn coordinate_count_matches_dimension_formula() {
        for (dim, depth) in [(2, 4), (3, 4), (4, 3)] {
            let path = Path::from_rows(
                dim,
                &(0..6)
                    .map(|i| (0..dim).map(|j| ((i * 7 + j * 3) % 5) as f64 * 0.25).collect())
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            let ls = log_signature(&path, depth);
            assert_eq!(ls.len(), logsig_dim(dim, depth));
        }
    }
}
