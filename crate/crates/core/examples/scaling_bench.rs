//! Paired scaling run: fitted growth of search-tree leaves in the radius.
//!
//! ```text
//! cargo run --release --example scaling_bench [TRIALS]
//! ```

use derandsat::bench::{fit_base, run_scaling, Engine, ScalingConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let trials = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(50);
    for engine in [Engine::Searchball, Engine::SearchballFast] {
        let recs = run_scaling(&ScalingConfig::new(engine, 3, 6, 4, 14, trials, 1))?;
        let fit = fit_base(&recs, |r| r.leaves).expect("eleven radii");
        println!(
            "{engine:<16} base {:.3}  95% [{:.3}, {:.3}]  midpoint {:.3}",
            fit.base,
            fit.low,
            fit.high,
            fit.midpoint()
        );
    }
    Ok(())
}
