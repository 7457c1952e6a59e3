//! Compare the two promise-ball searches on planted instances.

use derandsat::bench::gen_planted;
use derandsat::{searchball, searchball_fast, FastParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = FastParams::greedy(3, 6)?;
    println!("inner code: {} words, radius progress {} per level", params.code().len(), params.delta());
    println!("{:>3} {:>12} {:>12} {:>12}", "r", "plain", "fast", "fast-branch");
    for r in (2..=12).step_by(2) {
        let (mut plain, mut fast, mut branch) = (0, 0, 0);
        for seed in 0..20 {
            let inst = gen_planted(3, 30, 120, r, seed);
            let a = searchball(&inst.formula, &inst.start, r);
            let b = searchball_fast(&inst.formula, &inst.start, r, &params);
            assert!(a.found() && b.found());
            plain += a.stats.leaves;
            fast += b.stats.combined_leaves();
            branch += b.stats.leaves;
        }
        println!("{r:>3} {:>12.1} {:>12.1} {:>12.1}", plain as f64 / 20.0, fast as f64 / 20.0, branch as f64 / 20.0);
    }
    Ok(())
}
