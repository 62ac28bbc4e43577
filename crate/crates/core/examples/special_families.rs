//! Hand-made loops for SL(2, Z) and nonorientable surface groups.
//!
//! cargo run --release --example special_families

use lefschetz::loops::{special_family_plan, special_loop_catalog, SpecialFamily};
use lefschetz::pi1::pi1_of_fiber_sum;
use lefschetz::presentation::{abelianization, count_homomorphisms, tietze_simplify, FiniteGroupTable};
use lefschetz::surface::SurfaceModel;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s3 = FiniteGroupTable::builtin("S3")?;
    for family in [SpecialFamily::Sl2z, SpecialFamily::Nonorientable { g: 1 }, SpecialFamily::Nonorientable { g: 3 }] {
        let model = SurfaceModel::new(family.genus())?;
        println!("{family:?} on genus {}", family.genus());
        for curve in special_loop_catalog(&family)? {
            println!("  {} = {}", curve.label(), model.format_word(curve.word()));
        }
        let p = tietze_simplify(&pi1_of_fiber_sum(&special_family_plan(&family, 2)?)?, 100_000).presentation;
        println!("  pi_1 = {p}");
        println!("  H_1 = {}, |Hom(-, S3)| = {}", abelianization(&p), count_homomorphisms(&p, &s3, 100_000_000)?);
    }
    Ok(())
}
