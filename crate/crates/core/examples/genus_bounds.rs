//! Bounds on the smallest fiber genus realizing a group, with Kotschick's ranges.
//!
//! cargo run --example genus_bounds

use lefschetz::bounds::{bounds_table, d_of_presentation, genus_bounds, kotschick_bounds, standard_families, table_to_csv, GroupFamilyDescriptor};
use lefschetz::presentation::{abelianization, parse_presentation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for row in bounds_table(&standard_families())? {
        println!("{row}");
    }

    let p = parse_presentation("x, y | x^2 y^3, x^4")?;
    let desc = GroupFamilyDescriptor::Presentation(p.clone());
    let bounds = genus_bounds(&desc)?;
    let b1 = abelianization(&p).betti() as u64;
    let k = kotschick_bounds(b1, 0, d_of_presentation(&p), &bounds);
    println!("\n{p}: genus in [{}, {:?}]", bounds.lower, bounds.upper);
    println!("q in [{}, {}] (feasible: {}), p in [{}, {}]", k.q_lower, k.q_upper, k.q_feasible, k.p_lower, k.p_upper);
    for note in &k.notes {
        println!("  {note}");
    }

    let families: Vec<GroupFamilyDescriptor> = ["free:2", "braid:3", "surface:2"].iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    print!("\n{}", table_to_csv(&bounds_table(&families)?)?);
    Ok(())
}
