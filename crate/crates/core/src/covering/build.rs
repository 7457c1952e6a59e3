use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ball_volume, CoveringCode, KaryWord, WordSpace, GREEDY_CAP, VERIFY_CAP};
use crate::error::CodeError;

/// Default number of sampling attempts for [`random_code`].
pub const RANDOM_CODE_ATTEMPTS: u32 = 10;

/// Cap on `words × length` for a concatenated Boolean cover.
const BOOLEAN_COVER_SYMBOL_CAP: u128 = 1 << 28;

/// Greedy set cover over `{1..q}^t` with the radius-`r` balls as sets.
///
/// Each round takes the center whose ball holds the most uncovered words,
/// breaking ties by the lexicographically smallest center. Gains are kept
/// per center and decremented as words get covered, so the total work is
/// `O(q^t · vol)` plus one linear scan per chosen codeword.
pub fn greedy_code(q: u8, t: usize, r: usize) -> Result<CoveringCode, CodeError> {
    let vol = ball_volume(q, t, r)?;
    let space = WordSpace::new(q, t, GREEDY_CAP)?;
    let n = space.size();
    let mut gain = vec![vol as u32; n];
    let mut covered = vec![false; n];
    let mut remaining = n;
    let mut words = Vec::new();

    while remaining > 0 {
        let (best, _) = gain
            .iter()
            .enumerate()
            .fold((0, 0), |acc, (i, &g)| if g > acc.1 { (i, g) } else { acc });
        words.push(KaryWord::new(space.word_at(best)));
        let mut newly = Vec::new();
        space.for_each_in_ball(best, r, |p| {
            if !covered[p] {
                covered[p] = true;
                newly.push(p);
            }
        });
        remaining -= newly.len();
        for p in newly {
            // by symmetry the centers whose balls contain p form B_r(p)
            space.for_each_in_ball(p, r, |c| gain[c] -= 1);
        }
    }
    Ok(CoveringCode::new_verified_unchecked(q, t, r, words))
}

/// [`random_code_with_attempts`] with the default attempt cap.
pub fn random_code(q: u8, t: usize, r: usize, target_size: usize, seed: u64) -> Result<CoveringCode, CodeError> {
    random_code_with_attempts(q, t, r, target_size, seed, RANDOM_CODE_ATTEMPTS)
}

/// Samples `target_size` words uniformly and independently, keeps the
/// distinct ones, and accepts the set if it covers the space.
///
/// Attempt `i` draws from ChaCha8 stream `i` of `seed`, so a given seed
/// always yields the same code.
pub fn random_code_with_attempts(
    q: u8,
    t: usize,
    r: usize,
    target_size: usize,
    seed: u64,
    max_attempts: u32,
) -> Result<CoveringCode, CodeError> {
    ball_volume(q, t, r)?;
    if target_size == 0 {
        return Err(CodeError::InvalidParameters("target size must be at least 1".into()));
    }
    let space = WordSpace::new(q, t, VERIFY_CAP)?;
    for attempt in 0..max_attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);
        let mut seen = vec![false; space.size()];
        let mut words = Vec::with_capacity(target_size);
        for _ in 0..target_size {
            let i = rng.random_range(0..space.size());
            if !seen[i] {
                seen[i] = true;
                words.push(KaryWord::new(space.word_at(i)));
            }
        }
        let mut code = CoveringCode::new(q, t, r, words)?;
        if code.verify_cover()? {
            return Ok(code);
        }
        log::debug!("random code attempt {attempt} for ({q},{t},{r}) did not cover");
    }
    Err(CodeError::ConstructionFailed {
        size: target_size,
        attempts: max_attempts,
    })
}

/// Block concatenation: all words `w1 ++ w2`, first code major.
///
/// The radius is `r1 + r2`; covering holds blockwise so the verified flag
/// is inherited without re-checking.
pub fn concatenate(c1: &CoveringCode, c2: &CoveringCode) -> Result<CoveringCode, CodeError> {
    if c1.q != c2.q {
        return Err(CodeError::AlphabetMismatch(c1.q, c2.q));
    }
    let words = c1
        .words
        .iter()
        .flat_map(|a| c2.words.iter().map(move |b| a.concat(b)))
        .collect();
    Ok(CoveringCode {
        q: c1.q,
        t: c1.t + c2.t,
        r: c1.r + c2.r,
        words,
        verified: c1.verified && c2.verified,
    })
}

fn ceil_fraction(rho: f64, len: usize) -> usize {
    ((rho * len as f64) - 1e-9).ceil().max(0.0) as usize
}

/// A binary covering code of `{0,1}^n` (symbols 1 and 2 stand for 0 and 1).
///
/// Built as `⌊n/b⌋` copies of `greedy_code(2, b, ⌈ρb⌉)` followed, when `b`
/// does not divide `n`, by a greedy code of the residual length at radius
/// `⌈ρ·residual⌉`. The realized radius is the sum of block radii.
pub fn boolean_cover(n: usize, rho: f64, b: usize) -> Result<CoveringCode, CodeError> {
    boolean_cover_with(n, rho, b, |len, r| {
        let block = greedy_code(2, len, r)?;
        if len <= 16 && !block.covers_exhaustively()? {
            return Err(CodeError::InvalidParameters(format!("greedy block ({len},{r}) does not cover")));
        }
        Ok(std::sync::Arc::new(block))
    })
}

/// [`boolean_cover`] with the block codes supplied by `block(len, radius)`,
/// e.g. from a [`super::CodeCache`].
pub fn boolean_cover_with(
    n: usize,
    rho: f64,
    b: usize,
    mut block: impl FnMut(usize, usize) -> Result<std::sync::Arc<CoveringCode>, CodeError>,
) -> Result<CoveringCode, CodeError> {
    if !(1..=20).contains(&b) {
        return Err(CodeError::InvalidParameters(format!("block length {b} outside 1..=20")));
    }
    if !(rho > 0.0 && rho <= 0.5) {
        return Err(CodeError::InvalidParameters(format!("radius fraction {rho} outside (0, 1/2]")));
    }
    let full_blocks = n / b;
    let residual = n % b;

    let mut blocks = Vec::new();
    if full_blocks > 0 {
        let full = block(b, ceil_fraction(rho, b))?;
        blocks.extend(std::iter::repeat_n(full, full_blocks));
    }
    if residual > 0 {
        blocks.push(block(residual, ceil_fraction(rho, residual))?);
    }
    if let Some(bad) = blocks.iter().find(|c| c.q() != 2 || !c.is_verified()) {
        return Err(CodeError::InvalidParameters(format!(
            "block code over alphabet {} (verified: {}) cannot build a Boolean cover",
            bad.q(),
            bad.is_verified()
        )));
    }

    let total_words = blocks
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if total_words.saturating_mul(n.max(1) as u128) > BOOLEAN_COVER_SYMBOL_CAP {
        return Err(CodeError::CapExceeded {
            size: total_words,
            cap: BOOLEAN_COVER_SYMBOL_CAP / n.max(1) as u128,
        });
    }

    let mut acc = CoveringCode::new_verified_unchecked(2, 0, 0, vec![KaryWord::new(Vec::new())]);
    for b in &blocks {
        acc = concatenate(&acc, b)?;
    }
    Ok(acc)
}
