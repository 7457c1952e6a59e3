//! Reduce a 3-valued CSP to Boolean CNFs through 2-boxes and solve it.

use derandsat::csp::{brute_force_csp, restrict_to_box, solve_csp, two_box_cover};
use derandsat::formats::csp::parse_csp;
use derandsat::formats::dimacs::write_dimacs;
use derandsat::SolverConfig;

const DEMO: &str = "p csp 3 4 5
1 1 2 2 3 3 0
1 2 2 1 0
2 3 3 1 4 2 0
1 3 4 3 0
3 2 4 1 0
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_csp(DEMO.as_bytes())?;
    let cover = two_box_cover(f.domain_size(), f.num_vars(), 4)?;
    println!("{} boxes cover {{1..3}}^4 (verified {})", cover.len(), cover.is_verified());

    let first = cover.box_at(0);
    println!("box 0 = {:?}, reduced formula:", first.pairs());
    print!("{}", write_dimacs(&restrict_to_box(&f, &first)));

    let r = solve_csp(&f, &SolverConfig::default())?;
    println!("solve_csp: {} after {} boxes, witness {:?}", r.status, r.boxes_tried, r.witness);
    println!("brute force: {}", brute_force_csp(&f)?.status);
    Ok(())
}
