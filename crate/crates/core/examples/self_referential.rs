//! Builds the self-referential Hamiltonian for each system and audits that
//! the searcher inside it reads the description of the machine the terms
//! were compiled from.
//!
//! cargo run --release --example self_referential

use gapforge::formal::SYSTEM_IDS;
use gapforge::hamc::{audit, self_referential_hamiltonian, CompileOptions};
use gapforge::machine::{Mode, Polarity};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for id in SYSTEM_IDS {
        for (polarity, mode) in [(Polarity::G, Mode::OneD), (Polarity::C, Mode::OneD), (Polarity::G, Mode::TwoD)] {
            let s = self_referential_hamiltonian(id, polarity, mode, CompileOptions::default())?;
            let a = audit(&s);
            let tiles: Vec<&str> = s.terms.tiles.iter().map(|t| t.label.as_str()).collect();
            println!(
                "{id:<15} {polarity} {mode}  {:<22} run={:<24} tiles={tiles:?} audit={}",
                s.machine.encode(),
                s.terms.run.unwrap(),
                a.ok
            );
        }
    }
    Ok(())
}
