//! The duplication fixed point: `fix_point(T)` on empty input behaves like
//! `T` on the fixed point's own description.
//!
//! cargo run --example fixed_point

use gapforge::machine::{fix_point, inner_snapshot, run, templates, trace};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in templates::NAMES {
        let t = templates::by_name(name).expect("listed template");
        let fx = fix_point(&t);
        let own = fx.encode();
        let steps = 200;
        let direct = trace(&t, &own, steps)?;
        let setup = own.len() + 1;
        let through = trace(&fx, "", steps + setup as u64)?;
        let same = through[setup..]
            .iter()
            .zip(&direct)
            .all(|(a, b)| inner_snapshot(a) == Some(b.as_slice()));
        println!(
            "{name:<10} fixed point {own:<14} {} | {}  traces agree: {same}",
            run(&fx, "", 1_000)?,
            run(&t, &own, 1_000)?
        );
    }
    Ok(())
}
