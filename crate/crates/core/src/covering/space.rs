//! The word space `{1..q}^t`, addressed by base-`q` integer index.
//!
//! Index order is lexicographic order on words: the first symbol is the
//! most significant digit.

use crate::error::CodeError;

/// Largest alphabet supported.
pub const MAX_ALPHABET: u8 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordSpace {
    q: u8,
    t: usize,
    size: usize,
}

impl WordSpace {
    /// Fails when `q` is outside `2..=16` or `q^t` exceeds `cap`.
    pub fn new(q: u8, t: usize, cap: u128) -> Result<WordSpace, CodeError> {
        if !(2..=MAX_ALPHABET).contains(&q) {
            return Err(CodeError::InvalidParameters(format!(
                "alphabet size {q} outside 2..={MAX_ALPHABET}"
            )));
        }
        let size = space_size(q, t);
        if size > cap {
            return Err(CodeError::CapExceeded { size, cap });
        }
        Ok(WordSpace {
            q,
            t,
            size: size as usize,
        })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Index of a word given as symbols in `1..=q`.
    pub fn index_of(&self, symbols: &[u8]) -> usize {
        debug_assert_eq!(symbols.len(), self.t);
        symbols
            .iter()
            .fold(0usize, |acc, &s| acc * self.q as usize + (s - 1) as usize)
    }

    /// Symbols (in `1..=q`) of the word at `index`.
    pub fn word_at(&self, mut index: usize) -> Vec<u8> {
        let mut out = vec![1u8; self.t];
        for slot in out.iter_mut().rev() {
            *slot = (index % self.q as usize) as u8 + 1;
            index /= self.q as usize;
        }
        out
    }

    /// Calls `visit` once for every word within Hamming distance `r` of
    /// the word at `center`, including `center` itself.
    pub fn for_each_in_ball(&self, center: usize, r: usize, mut visit: impl FnMut(usize)) {
        let digits: Vec<usize> = self.word_at(center).iter().map(|&s| (s - 1) as usize).collect();
        let mut weights = vec![1usize; self.t];
        for i in (0..self.t.saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * self.q as usize;
        }
        let ctx = BallCtx {
            q: self.q as usize,
            digits: &digits,
            weights: &weights,
        };
        ctx.walk(0, r, center, &mut visit);
    }
}

struct BallCtx<'a> {
    q: usize,
    digits: &'a [usize],
    weights: &'a [usize],
}

impl BallCtx<'_> {
    // Changed positions are chosen in increasing order, so every word is
    // visited exactly once.
    fn walk(&self, from: usize, budget: usize, index: usize, visit: &mut impl FnMut(usize)) {
        visit(index);
        if budget == 0 {
            return;
        }
        for pos in from..self.digits.len() {
            let base = index - self.digits[pos] * self.weights[pos];
            for e in 0..self.q {
                if e != self.digits[pos] {
                    self.walk(pos + 1, budget - 1, base + e * self.weights[pos], visit);
                }
            }
        }
    }
}

/// `q^t`, saturating at `u128::MAX`.
pub fn space_size(q: u8, t: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..t {
        acc = acc.saturating_mul(q as u128);
    }
    acc
}

/// Hamming distance between equal-length symbol strings.
pub fn word_distance(a: &[u8], b: &[u8]) -> usize {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}
