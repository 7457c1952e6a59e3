//! q-ary covering codes.
//!
//! A code of covering radius `r` in `{1..q}^t` is a set of words such that
//! every word of the space lies within Hamming distance `r` of one of them.
//! `searchball_fast` branches over the codewords of such a code, and the
//! deterministic SAT driver iterates over a Boolean one.

mod build;
mod cache;
mod space;

pub use build::{boolean_cover, boolean_cover_with, concatenate, greedy_code, random_code, random_code_with_attempts};
pub use cache::{CodeCache, CodeMethod};
pub use space::{space_size, word_distance, WordSpace, MAX_ALPHABET};

use rand::Rng;

use crate::cnf::Assignment;
use crate::error::CodeError;

/// Exhaustive verification refuses spaces larger than this.
pub const VERIFY_CAP: u128 = 10_000_000;
/// Greedy construction refuses spaces larger than this.
pub const GREEDY_CAP: u128 = 1_000_000;

/// A word of `{1..q}^t`; symbols are stored as `1..=q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KaryWord(Vec<u8>);

impl KaryWord {
    pub fn new(symbols: Vec<u8>) -> KaryWord {
        KaryWord(symbols)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn distance(&self, other: &KaryWord) -> usize {
        word_distance(&self.0, &other.0)
    }

    pub fn concat(&self, other: &KaryWord) -> KaryWord {
        let mut s = Vec::with_capacity(self.len() + other.len());
        s.extend_from_slice(&self.0);
        s.extend_from_slice(&other.0);
        KaryWord(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringCode {
    q: u8,
    t: usize,
    r: usize,
    words: Vec<KaryWord>,
    verified: bool,
}

impl CoveringCode {
    /// Validates shape and distinctness. The result is unverified.
    pub fn new(q: u8, t: usize, r: usize, words: Vec<KaryWord>) -> Result<CoveringCode, CodeError> {
        if !(2..=MAX_ALPHABET).contains(&q) {
            return Err(CodeError::InvalidParameters(format!("alphabet size {q}")));
        }
        if r > t {
            return Err(CodeError::InvalidParameters(format!("radius {r} exceeds length {t}")));
        }
        for w in &words {
            if w.len() != t {
                return Err(CodeError::InvalidParameters(format!(
                    "word of length {} in a length-{t} code",
                    w.len()
                )));
            }
            if let Some(&s) = w.symbols().iter().find(|&&s| s == 0 || s > q) {
                return Err(CodeError::InvalidParameters(format!(
                    "symbol {s} outside 1..={q}"
                )));
            }
        }
        let mut sorted: Vec<&KaryWord> = words.iter().collect();
        sorted.sort_unstable();
        if sorted.windows(2).any(|p| p[0] == p[1]) {
            return Err(CodeError::InvalidParameters("duplicate codeword".into()));
        }
        Ok(CoveringCode {
            q,
            t,
            r,
            words,
            verified: false,
        })
    }

    pub(crate) fn new_verified_unchecked(q: u8, t: usize, r: usize, words: Vec<KaryWord>) -> Self {
        CoveringCode {
            q,
            t,
            r,
            words,
            verified: true,
        }
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn radius(&self) -> usize {
        self.r
    }

    pub fn words(&self) -> &[KaryWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Exhaustively checks the covering property without touching the
    /// `verified` flag.
    pub fn covers_exhaustively(&self) -> Result<bool, CodeError> {
        let space = WordSpace::new(self.q, self.t, VERIFY_CAP)?;
        let mut covered = vec![false; space.size()];
        let mut remaining = space.size();
        for w in &self.words {
            space.for_each_in_ball(space.index_of(w.symbols()), self.r, |i| {
                if !covered[i] {
                    covered[i] = true;
                    remaining -= 1;
                }
            });
            if remaining == 0 {
                return Ok(true);
            }
        }
        Ok(remaining == 0)
    }

    /// Exhaustive check; sets the `verified` flag on success.
    pub fn verify_cover(&mut self) -> Result<bool, CodeError> {
        let ok = self.covers_exhaustively()?;
        self.verified = ok;
        Ok(ok)
    }

    /// Samples `samples` uniform words and checks each is within the
    /// radius of some codeword. For spaces too large to verify.
    pub fn spot_check<R: Rng>(&self, samples: usize, rng: &mut R) -> bool {
        (0..samples).all(|_| {
            let w: Vec<u8> = (0..self.t).map(|_| rng.random_range(1..=self.q)).collect();
            self.nearest(&w).map_or(self.t == 0, |(_, d)| d <= self.r)
        })
    }

    /// Index and distance of the first codeword closest to `symbols`.
    pub fn nearest(&self, symbols: &[u8]) -> Option<(usize, usize)> {
        self.words
            .iter()
            .enumerate()
            .map(|(i, w)| (i, word_distance(w.symbols(), symbols)))
            .min_by_key(|&(i, d)| (d, i))
    }

    /// Reads a binary (`q = 2`) codeword as a truth assignment: symbol 2
    /// means true.
    pub fn word_as_assignment(&self, index: usize) -> Assignment {
        Assignment::new(self.words[index].symbols().iter().map(|&s| s == 2).collect())
    }
}

/// `C(n, k)` in exact arithmetic.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn check_params(q: u8, t: usize, r: usize) -> Result<(), CodeError> {
    if q < 2 {
        return Err(CodeError::InvalidParameters(format!("alphabet size {q} < 2")));
    }
    if r > t {
        return Err(CodeError::InvalidParameters(format!("radius {r} exceeds length {t}")));
    }
    Ok(())
}

/// Number of words at distance exactly `r`: `C(t,r)·(q−1)^r`.
pub fn shell_volume(q: u8, t: usize, r: usize) -> Result<u128, CodeError> {
    check_params(q, t, r)?;
    Ok(binomial(t, r) * (q as u128 - 1).pow(r as u32))
}

/// Number of words at distance at most `r`.
pub fn ball_volume(q: u8, t: usize, r: usize) -> Result<u128, CodeError> {
    check_params(q, t, r)?;
    Ok((0..=r).map(|i| binomial(t, i) * (q as u128 - 1).pow(i as u32)).sum())
}

/// The existence bound `⌈t·ln(q)·q^t / (C(t,r)(q−1)^r)⌉`, floored at 1.
///
/// Evaluated in floating point. A value within 1e-9 (relative) of an
/// integer is bumped to the next integer, so rounding error can only make
/// the bound larger.
pub fn code_size_bound(q: u8, t: usize, r: usize) -> Result<u64, CodeError> {
    let shell = shell_volume(q, t, r)? as f64;
    let x = t as f64 * (q as f64).ln() * (q as f64).powi(t as i32) / shell;
    let nearest = x.round();
    let bound = if (x - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest + 1.0
    } else {
        x.ceil()
    };
    Ok(bound.max(1.0).min(u64::MAX as f64) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn volume_examples() {
        assert_eq!(shell_volume(3, 6, 2).unwrap(), 60);
        for q in 2..6 {
            for t in 0..6 {
                assert_eq!(ball_volume(q, t, 0).unwrap(), 1);
            }
        }
        assert_eq!(ball_volume(2, 3, 3).unwrap(), 8);
        assert_eq!(ball_volume(3, 6, 2).unwrap(), 1 + 12 + 60);
        assert!(ball_volume(3, 2, 3).is_err());
        assert!(shell_volume(1, 2, 1).is_err());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(code_size_bound(3, 6, 2).unwrap(), 81);
        assert_eq!(code_size_bound(2, 1, 0).unwrap(), 2);
        for q in 2..6 {
            for t in 0..8 {
                assert!(code_size_bound(q, t, t).unwrap() >= 1);
            }
        }
    }

    #[test]
    fn full_ball_sums_shells() {
        for q in 2..6u8 {
            for t in 0..8 {
                for r in 0..=t {
                    let total: u128 = (0..=r).map(|i| shell_volume(q, t, i).unwrap()).sum();
                    assert_eq!(ball_volume(q, t, r).unwrap(), total);
                }
                assert_eq!(ball_volume(q, t, t).unwrap(), space_size(q, t));
            }
        }
    }

    #[test]
    fn verify_examples() {
        let space = WordSpace::new(3, 2, 100).unwrap();
        let all: Vec<KaryWord> = (0..space.size()).map(|i| KaryWord::new(space.word_at(i))).collect();
        for r in 0..=2 {
            let mut c = CoveringCode::new(3, 2, r, all.clone()).unwrap();
            assert!(c.verify_cover().unwrap());
            assert!(c.is_verified());
        }
        let ones = vec![KaryWord::new(vec![1; 4])];
        assert!(CoveringCode::new(3, 4, 4, ones.clone()).unwrap().verify_cover().unwrap());
        let mut c = CoveringCode::new(3, 4, 0, ones).unwrap();
        assert!(!c.verify_cover().unwrap());
        assert!(!c.is_verified());
    }

    #[test]
    fn verify_refuses_huge_space() {
        let c = CoveringCode::new(3, 16, 2, vec![KaryWord::new(vec![1; 16])]).unwrap();
        assert!(matches!(c.covers_exhaustively(), Err(CodeError::CapExceeded { .. })));
    }

    #[test]
    fn code_validation() {
        assert!(CoveringCode::new(3, 2, 1, vec![KaryWord::new(vec![1, 4])]).is_err());
        assert!(CoveringCode::new(3, 2, 1, vec![KaryWord::new(vec![1])]).is_err());
        let w = KaryWord::new(vec![1, 2]);
        assert!(CoveringCode::new(3, 2, 1, vec![w.clone(), w]).is_err());
    }

    #[test]
    fn nearest_and_spot_check() {
        let c = CoveringCode::new(2, 3, 1, vec![KaryWord::new(vec![1, 1, 1]), KaryWord::new(vec![2, 2, 2])])
            .unwrap();
        assert_eq!(c.nearest(&[1, 2, 2]), Some((1, 1)));
        assert_eq!(c.nearest(&[1, 1, 2]), Some((0, 1)));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(c.spot_check(200, &mut rng));
        assert_eq!(c.word_as_assignment(1).values(), &[true, true, true]);
    }
}
