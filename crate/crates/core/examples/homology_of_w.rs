//! Builds the relation W for several genera and checks it acts trivially on H_1.
//!
//! cargo run --example homology_of_w

use lefschetz::monodromy::{build_w, homology_image, is_identity, is_symplectic, resolve_c_exponent};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for genus in [2, 4, 6, 8] {
        let resolution = resolve_c_exponent(genus)?;
        let w = build_w(genus, resolution.exponent, None)?;
        let m = homology_image(&w);
        println!(
            "genus {genus}: {} twists, c exponent {}, identity on H_1: {}, symplectic: {}",
            w.len(),
            resolution.exponent,
            is_identity(&m),
            is_symplectic(&w.model(), &m)
        );
        if let Some(warning) = resolution.warning {
            println!("  warning: {warning}");
        }
    }
    println!("{}", build_w(2, 2, None)?.to_json());
    Ok(())
}
