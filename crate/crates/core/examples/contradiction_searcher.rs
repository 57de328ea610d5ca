//! A machine that halts iff its formal system is inconsistent.
//!
//! cargo run --release --example contradiction_searcher

use gapforge::formal::{check_proof, find_contradiction, system_by_id, SYSTEM_IDS};
use gapforge::machine::{build_contradiction_searcher, run};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = 100_000;
    for id in SYSTEM_IDS {
        let system = system_by_id(id).expect("known system");
        let direct = find_contradiction(&system, budget);
        let searcher = build_contradiction_searcher(id)?;
        let outcome = run(&searcher, "", budget + 2)?;
        println!("{id:<15} {:<10} searcher: {outcome}", searcher.encode());
        if let Some(c) = direct {
            println!("  contradiction completed at candidate {}", c.candidate);
            println!("  {}  (valid: {})", c.statement.render(), check_proof(&system, &c.proof).valid);
            println!(
                "  {}  (valid: {})",
                c.negation_proof.conclusion().unwrap().render(),
                check_proof(&system, &c.negation_proof).valid
            );
        }
    }
    Ok(())
}
