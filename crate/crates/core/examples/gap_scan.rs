//! Gap scans of a halting and a looping machine, with verdicts.
//!
//! cargo run --release --example gap_scan

use gapforge::hamc::compile;
use gapforge::machine::{builtin, Mode};
use gapforge::spectral::{classify, gap_scan, ClassifierConfig, ScanOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, sizes) in [("loop2", 2..=8), ("halt_now", 4..=12)] {
        let terms = compile(&builtin::by_name(name).expect("builtin machine"), "", Mode::OneD)?;
        let sizes: Vec<usize> = sizes.collect();
        let report = gap_scan(&terms, &sizes, &ScanOptions::default())?;
        println!("{name} (d = {})", terms.d);
        for s in &report.sizes {
            println!(
                "  L={:>2}  λ0={:+.3e}  Δ={:.6}  mult={}  levels={}",
                s.size,
                s.lambda0.unwrap_or(f64::NAN),
                s.gap.unwrap_or(f64::NAN),
                s.multiplicity.unwrap_or(0),
                s.spectrum.len()
            );
        }
        let verdict = classify(&report, &ClassifierConfig::default())?;
        println!("  verdict: {}", verdict.kind);
        for line in &verdict.rationale {
            println!("    {line}");
        }
    }
    Ok(())
}
