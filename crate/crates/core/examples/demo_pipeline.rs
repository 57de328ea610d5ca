//! The full pipeline for a consistent and an inconsistent system, checked
//! for reproducibility.
//!
//! cargo run --release --example demo_pipeline

use gapforge::pipeline::{cmd_demo, PipelineConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (system, budget) in [("INCONSISTENT-F", 1_000_000), ("TRACE-F", 100_000)] {
        let cfg = PipelineConfig {
            system: system.into(),
            budget,
            ..Default::default()
        };
        let first = cmd_demo(&cfg)?.report.to_json();
        let again = cmd_demo(&cfg)?.report;
        println!("{system}: {} after {}", again.verdict.kind, again.run);
        for flag in &again.flags {
            println!("  flag: {flag}");
        }
        for line in &again.verdict.rationale {
            println!("  {line}");
        }
        println!("  reproducible: {}", first == again.to_json());
    }
    Ok(())
}
