//! Parse a DIMACS formula and solve it three ways.
//!
//! ```text
//! cargo run --example solve_dimacs [FILE.cnf]
//! ```

use derandsat::formats::dimacs::parse_dimacs;
use derandsat::{brute_force, Mode, Solver, SolverConfig};

const DEMO: &str = "c a small satisfiable 3-CNF
p cnf 6 8
1 2 -3 0
-1 3 4 0
-2 -4 5 0
3 -5 6 0
-3 -6 1 0
2 4 6 0
-1 -2 -6 0
-4 5 -6 0
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read(path)?,
        None => DEMO.as_bytes().to_vec(),
    };
    let formula = parse_dimacs(&text)?;
    println!("{} variables, {} clauses, width {}", formula.num_vars(), formula.num_clauses(), formula.max_width());

    let mut det = Solver::new(SolverConfig::default());
    let r = det.solve(&formula)?;
    println!(
        "deterministic: {} after {} of {} outer codewords ({} search leaves)",
        r.status,
        r.codewords_tried,
        r.outer_code_size,
        r.stats.combined_leaves()
    );
    if let Some(w) = &r.witness {
        println!("  witness {:?}", w.to_dimacs());
    }

    let mut rand = Solver::new(SolverConfig { seed: 7, ..SolverConfig::with_mode(Mode::Randomized) });
    let r = rand.solve(&formula)?;
    println!("randomized:    {} after {} trials", r.status, r.trials);

    if formula.num_vars() <= 24 {
        println!("brute force:   {}", brute_force(&formula)?.status);
    }
    Ok(())
}
