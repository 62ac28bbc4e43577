//! Parse a presentation, simplify it and compare it with another one.
//!
//! cargo run --example presentations -- "x, y | x^2, y^3, x y x y"

use lefschetz::presentation::{abelianization, count_homomorphisms, iso_evidence, parse_presentation, tietze_simplify, FiniteGroupTable};
use lefschetz::Budgets;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "x, y | x^2, y^3, x y x y".into());
    let p = parse_presentation(&text)?;
    println!("input:          {p}");
    println!("abelianization: {}", abelianization(&p));

    let simplified = tietze_simplify(&p, 10_000);
    println!("simplified:     {} ({} steps)", simplified.presentation, simplified.steps);

    for target in ["Z2", "Z3", "S3", "S4"] {
        let table = FiniteGroupTable::builtin(target)?;
        println!("|Hom(G, {target})| = {}", count_homomorphisms(&p, &table, 10_000_000)?);
    }

    // a different presentation of the same group
    let other = parse_presentation("s, t | s^2, t^2, s t s t^-1 s^-1 t^-1")?;
    let targets = vec![FiniteGroupTable::builtin("S3")?, FiniteGroupTable::builtin("Z2")?];
    let evidence = iso_evidence(&p, &other, &targets, Budgets::default())?;
    println!("against {other}: {:?}", evidence.verdict);
    Ok(())
}
