//! The named curves on a closed surface: words in pi_1, homology classes and pairings.
//!
//! cargo run --example surface_curves -- 4

use lefschetz::surface::{curve_catalog, SurfaceModel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let genus: usize = std::env::args().nth(1).map(|g| g.parse()).transpose()?.unwrap_or(4);
    let model = SurfaceModel::new(genus)?;
    println!("surface relator: {}", model.format_word(&lefschetz::surface::surface_relator(genus)));

    let catalog = curve_catalog(genus, None)?;
    for curve in catalog.values() {
        let witnesses: Vec<String> = curve.witnesses().iter().map(|w| w.cycle.clone()).collect();
        println!(
            "{:>4}  {:<40} {:?}  meets once: {}",
            curve.label(),
            model.format_word(curve.word()),
            curve.homology(),
            witnesses.join(" ")
        );
    }

    let (b0, b1) = (&catalog["B0"], &catalog["B1"]);
    println!("<B0, B1> = {}", model.symplectic_pairing(b0.homology(), b1.homology())?);
    Ok(())
}
