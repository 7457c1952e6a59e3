//! Per-trial success rate of the random walk from a uniform start.

use derandsat::bench::gen_planted;
use derandsat::search::schoening_walk_with_rng;
use derandsat::Assignment;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let (n, formulas, trials) = (10, 50, 500);
    let mut hits = 0;
    for seed in 0..formulas {
        let f = gen_planted(3, n, 43, 0, seed).formula;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let alpha = Assignment::new((0..n).map(|_| rng.random_bool(0.5)).collect());
            hits += schoening_walk_with_rng(&f, &alpha, 3 * n, &mut rng).witness.is_some() as u32;
        }
    }
    let rate = hits as f64 / (formulas * trials) as f64;
    println!("success rate {rate:.4}, lower bound (3/4)^{n} = {:.4}", 0.75f64.powi(n as i32));
}
