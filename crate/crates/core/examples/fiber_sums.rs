//! Twisted fiber sums of W in genus 2 and the abelian groups they realize.
//!
//! cargo run --example fiber_sums

use lefschetz::monodromy::{build_w, fiber_sum, FiberConjugator, FiberSumSpec};
use lefschetz::pi1::pi1_of_fiber_sum;
use lefschetz::presentation::{abelianization, tietze_simplify};
use lefschetz::surface::curve_catalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = build_w(2, 2, None)?;
    let catalog = curve_catalog(2, None)?;
    let twist = |label: &str, power: i64| FiberConjugator::Standard(vec![(label.to_string(), power)]);

    let cases = vec![
        ("X(1)", vec![FiberConjugator::Identity]),
        ("X(1, 1)", vec![FiberConjugator::Identity; 2]),
        ("X(1, t_b1^3)", vec![FiberConjugator::Identity, twist("b1", 3)]),
        ("X(1, t_a1, t_b1^4)", vec![FiberConjugator::Identity, FiberConjugator::Curve(catalog["a1"].clone()), twist("b1", 4)]),
        ("X(1, t_a1^2, t_b1^3)", vec![FiberConjugator::Identity, twist("a1", 2), twist("b1", 3)]),
        ("X(1, t_b1, t_b2)", vec![FiberConjugator::Identity, FiberConjugator::Curve(catalog["b1"].clone()), FiberConjugator::Curve(catalog["b2"].clone())]),
    ];
    for (name, conjugators) in cases {
        let spec = FiberSumSpec::new(w.clone(), conjugators)?;
        let p = pi1_of_fiber_sum(&spec)?;
        let simplified = tietze_simplify(&p, 100_000).presentation;
        println!(
            "{name:<22} {:>3} singular fibers  H_1 = {:<10} pi_1 = {simplified}",
            fiber_sum(&spec)?.len(),
            abelianization(&p).to_string()
        );
    }
    Ok(())
}
