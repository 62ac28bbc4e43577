//! From a finite presentation to a fibration whose fundamental group matches it.
//!
//! cargo run --release --example pipeline -- "x, y | x^2, y^3, x y x y"

use lefschetz::loops::{theorem_main_pipeline, PipelineOptions};
use lefschetz::presentation::parse_presentation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "x | x^3".into());
    let input = parse_presentation(&text)?;
    let outcome = theorem_main_pipeline(&input, &PipelineOptions::default())?;
    let report = outcome.report()?;

    println!("input {}: n = {}, k = {}, l = {}, h = {}", report.input, report.n, report.k, report.l, report.h);
    println!("genus {} with c exponent {}", report.genus, report.c_exponent);
    for l in &report.loops {
        println!("  {l}");
    }
    println!("loops project back to the relators: {}", report.projection_matches);
    println!("{} copies of W, {} singular fibers", report.copies, report.singular_fibers);
    println!("pi_1: {} generators and {} relators, simplified to {}", report.pi1_generators, report.pi1_relators, report.simplified);
    println!("abelianization {} vs {}", report.evidence.left_abelianization, report.evidence.right_abelianization);
    for row in &report.evidence.hom_counts {
        println!("|Hom(-, {})| {} vs {}", row.target, row.left, row.right);
    }
    println!("verdict: {:?}", report.evidence.verdict);
    Ok(())
}
