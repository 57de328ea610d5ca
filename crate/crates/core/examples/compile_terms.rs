//! Compiles machines to local terms and prints their exact norm
//! certificates.
//!
//! cargo run --example compile_terms

use gapforge::hamc::{compile, parse_terms};
use gapforge::machine::{builtin, Mode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["halt_now", "loop2", "count3"] {
        for mode in [Mode::OneD, Mode::TwoD] {
            let terms = compile(&builtin::by_name(name).unwrap(), "", mode)?;
            let cert = terms.certify();
            let sums: Vec<String> = cert.row_sums.iter().map(|(n, s)| format!("{n}≤{s}")).collect();
            println!(
                "{name:<9} {mode}  d={:<2} hermitian={} bounded={}  [{}]",
                terms.d,
                cert.hermitian,
                cert.bounded,
                sums.join(" ")
            );
            assert_eq!(parse_terms(&terms.describe())?, terms);
        }
    }
    let terms = compile(&builtin::by_name("halt_now").unwrap(), "", Mode::OneD)?;
    println!("\n{}", terms.describe());
    Ok(())
}
