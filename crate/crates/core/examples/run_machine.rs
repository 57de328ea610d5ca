//! Runs the built-in tape machines and shows their encodings and outcomes.
//!
//! cargo run --example run_machine

use gapforge::machine::{builtin, decode, run, trace};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in builtin::NAMES {
        let m = builtin::by_name(name).expect("listed built-in");
        let outcome = run(&m, "", 10_000)?;
        println!("{name:<10} {outcome:<24} {}", m.encode());
        assert_eq!(decode(&m.encode())?.encode(), m.encode());
    }

    println!("\nfirst snapshots of count3:");
    for snap in trace(&builtin::by_name("count3").unwrap(), "", 4)? {
        println!("  {}", String::from_utf8_lossy(&snap));
    }
    Ok(())
}
