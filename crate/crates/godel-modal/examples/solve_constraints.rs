//! The exact order-constraint solver used for branch closure.
//!
//! A constraint file relates formula values (`w:1:p`), relation weights
//! (`w R+ u`), adjacent T-term pairs (`t0@w:1`, `t1@w:1`), variables, and
//! constants with <, <=, =, >=, >. Each T-term pair carries the gap
//! condition: no other value term may fall strictly between t0 and t1.
//!
//! Run with: `cargo run --example solve_constraints`

use godel_modal::constraints::{parse_constraint_file, solve, translate_branch, Solution};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/sample.constraints");
    let text = std::fs::read_to_string(path).unwrap();
    let constraints = parse_constraint_file(&text).unwrap();
    let sys = translate_branch(&constraints);
    println!("{}", sys.explain());

    match solve(&sys).unwrap() {
        Solution::Sat(w) => {
            println!("SAT; one exact witness:");
            for (name, value) in &w.values {
                println!("  {name} = {}", godel_modal::rational::fmt_rat(value));
            }
        }
        Solution::Unsat => println!("UNSAT"),
    }

    // The gap condition can be the only source of infeasibility. All T-terms
    // at the same (world, index) are members of one finite value set, so no
    // member of instance 1 may fall strictly between the adjacent pair of
    // instance 0. These constraints are linearly consistent, yet infeasible.
    let gapped = parse_constraint_file(
        "t0@w:1 = 1/4\nt1@w:1 = 1/2\nt0.1@w:1 = 1/3\nt1.1@w:1 = 3/4",
    )
    .unwrap();
    let sys = translate_branch(&gapped);
    println!("\npinning t0.1@w:1 = 1/3 strictly inside the adjacent pair [1/4, 1/2]:");
    match solve(&sys).unwrap() {
        Solution::Sat(_) => println!("SAT"),
        Solution::Unsat => println!("UNSAT (the gap condition bites)"),
    }
}
