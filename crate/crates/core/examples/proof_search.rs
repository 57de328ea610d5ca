//! Enumerates proofs of the three formal systems and searches for targets.
//!
//! cargo run --release --example proof_search

use gapforge::formal::{check_proof, enumerate_proofs, search_proof, system_by_id, Statement, SYSTEM_IDS};

fn main() {
    for id in SYSTEM_IDS {
        let system = system_by_id(id).expect("known system");
        let proofs = enumerate_proofs(&system, 2_000);
        println!("{id}: {} valid proofs among the first 2000 candidates", proofs.len());
        for (i, p) in proofs.iter().take(3) {
            let check = check_proof(&system, p);
            println!("  #{i}: {}  (valid: {})", p.conclusion().unwrap().render(), check.valid);
        }
    }

    let trace = system_by_id("TRACE-F").unwrap();
    let target = Statement::halts("halt_now", "");
    match search_proof(&trace, &target, 10_000) {
        Some((i, p)) => println!("\n{} proved at candidate {i}:\n{}", target.render(), p.render()),
        None => println!("\n{} not proved", target.render()),
    }
    let loop_target = Statement::not_halts("loop2", "");
    println!(
        "TRACE-F proves {}? {}",
        loop_target.render(),
        search_proof(&trace, &loop_target, 10_000).is_some()
    );
    let loopcert = system_by_id("LOOPCERT-F").unwrap();
    println!(
        "LOOPCERT-F proves {}? {}",
        loop_target.render(),
        search_proof(&loopcert, &loop_target, 10_000).is_some()
    );
}
