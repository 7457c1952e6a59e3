//! Build, verify, save and reload covering codes.

use derandsat::covering::{ball_volume, boolean_cover, code_size_bound, concatenate, greedy_code, random_code};
use derandsat::formats::code::{read_code, write_code};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (q, t, r) = (3, 6, 2);
    let greedy = greedy_code(q, t, r)?;
    println!(
        "greedy ({q},{t},{r}): {} words, bound {}, ball volume {}",
        greedy.len(),
        code_size_bound(q, t, r)?,
        ball_volume(q, t, r)?
    );
    println!("  covers: {}", greedy.covers_exhaustively()?);

    let random = random_code(q, t, r, code_size_bound(q, t, r)? as usize, 1)?;
    println!("random  ({q},{t},{r}): {} distinct words, verified {}", random.len(), random.is_verified());

    let small = greedy_code(3, 3, 1)?;
    let joined = concatenate(&small, &small)?;
    println!("concatenated (3,3,1)x2: length {}, radius {}, {} words", joined.t(), joined.radius(), joined.len());

    let outer = boolean_cover(20, 1.0 / 3.1, 10)?;
    println!("boolean cover of {{0,1}}^20: {} words, radius {}", outer.len(), outer.radius());

    let text = write_code(&greedy);
    let mut back = read_code(text.as_bytes())?;
    println!("code file round trip: {} lines, re-verified {}", text.lines().count(), back.verify_cover()?);
    Ok(())
}
