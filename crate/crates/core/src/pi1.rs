//! Fundamental group of the total space of a fibration with a section: the surface
//! group divided by the normal closure of the vanishing cycles.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::monodromy::{composite_substitution, FiberConjugator, FiberSumSpec, MonodromyError};
use crate::presentation::GroupPresentation;
use crate::surface::{surface_relator, CurveRef, SurfaceModel};
use crate::words::{Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Pi1Error {
    #[error("curves without a single-intersection witness against a base cycle: {}", .0.join(", "))]
    MissingWitness(Vec<String>),
    #[error("the factorization has no section, the quotient description does not apply")]
    NoSection,
    #[error("base factor `{0}` already carries a conjugator")]
    ConjugatedBase(String),
    #[error("curve `{label}`: {source}")]
    Word { label: String, source: WordError },
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
}

/// Everything the presentation is read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibrationPresentationInput {
    pub genus: usize,
    /// Distinct vanishing cycles of the base factorization.
    pub base_cycles: Vec<CurveRef>,
    /// Curves `d_j` of copies conjugated by `t_{d_j}`.
    pub extras: Vec<CurveRef>,
    /// Substitution maps of copies conjugated by products of standard twists.
    pub substituted_blocks: Vec<BTreeMap<usize, Word>>,
    pub has_section: bool,
}

impl FibrationPresentationInput {
    pub fn from_fiber_sum(spec: &FiberSumSpec) -> Result<Self, Pi1Error> {
        let model = spec.base.model();
        let mut seen = BTreeSet::new();
        let mut base_cycles = Vec::new();
        for f in &spec.base.factors {
            if !f.conjugator.is_empty() {
                return Err(Pi1Error::ConjugatedBase(f.curve.label().to_string()));
            }
            if seen.insert(f.curve.label().to_string()) {
                base_cycles.push(f.curve.clone());
            }
        }
        let mut extras = Vec::new();
        let mut substituted_blocks = Vec::new();
        for c in &spec.conjugators {
            match c {
                FiberConjugator::Identity => {}
                FiberConjugator::Curve(d) => extras.push(d.clone()),
                FiberConjugator::Standard(entries) => substituted_blocks.push(composite_substitution(&model, entries)?),
            }
        }
        Ok(FibrationPresentationInput {
            genus: spec.base.genus,
            base_cycles,
            extras,
            substituted_blocks,
            has_section: spec.base.has_section,
        })
    }
}

/// Every extra curve must name a base cycle it meets exactly once.
pub fn validate_witnesses(input: &FibrationPresentationInput) -> Result<(), Pi1Error> {
    let base: BTreeSet<&str> = input.base_cycles.iter().map(CurveRef::label).collect();
    let offenders: Vec<String> = input
        .extras
        .iter()
        .filter(|d| !d.witnesses().iter().any(|w| w.count == 1 && base.contains(w.cycle.as_str())))
        .map(|d| d.label().to_string())
        .collect();
    if offenders.is_empty() { Ok(()) } else { Err(Pi1Error::MissingWitness(offenders)) }
}

/// `<a1, b1, ..., ag, bg | prod [a_i, b_i], base cycles, extras, rewritten cycles>`.
pub fn pi1_presentation(input: &FibrationPresentationInput) -> Result<GroupPresentation, Pi1Error> {
    if !input.has_section {
        return Err(Pi1Error::NoSection);
    }
    validate_witnesses(input)?;
    let model = SurfaceModel::new(input.genus).map_err(MonodromyError::from)?;
    let n = model.alphabet_size();
    let mut relators = vec![surface_relator(input.genus)];
    for c in input.base_cycles.iter().chain(&input.extras) {
        c.word().check_alphabet(n).map_err(|source| Pi1Error::Word { label: c.label().to_string(), source })?;
        relators.push(c.word().clone());
    }
    for map in &input.substituted_blocks {
        for c in &input.base_cycles {
            let w = c.word().substitute(map).map_err(|source| Pi1Error::Word { label: c.label().to_string(), source })?;
            relators.push(w);
        }
    }
    relators.retain(|r| !r.is_identity());
    Ok(GroupPresentation::new(model.generator_names(), relators).expect("relators are checked against the alphabet"))
}

pub fn pi1_of_fiber_sum(spec: &FiberSumSpec) -> Result<GroupPresentation, Pi1Error> {
    pi1_presentation(&FibrationPresentationInput::from_fiber_sum(spec)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::build_w;
    use crate::presentation::{abelianization, count_homomorphisms, smith_normal_form, tietze_simplify, AbelianInvariants, FiniteGroupTable};
    use crate::surface::{curve_catalog, Provenance, Witness};

    fn spec(g: usize, conjugators: Vec<FiberConjugator>) -> FiberSumSpec {
        FiberSumSpec::new(build_w(g, 2, None).unwrap(), conjugators).unwrap()
    }

    fn extras(g: usize, labels: &[&str]) -> Vec<FiberConjugator> {
        let cat = curve_catalog(g, None).unwrap();
        std::iter::once(FiberConjugator::Identity)
            .chain(labels.iter().map(|l| FiberConjugator::Curve(cat[*l].clone())))
            .collect()
    }

    #[test]
    fn w_alone_in_genus_two() {
        let p = pi1_of_fiber_sum(&spec(2, vec![FiberConjugator::Identity])).unwrap();
        assert_eq!(p.generator_count(), 4);
        // surface relator, c, B2, B1, B0
        assert_eq!(p.relator_count(), 5);
        // B0 = b1 + b2 and B2 = a1 + a2 span a rank-2 sublattice only
        assert_eq!(abelianization(&p), AbelianInvariants::new(2, vec![]));
    }

    #[test]
    fn abelianization_matches_homology_quotient() {
        for g in (2..=8).step_by(2) {
            let input = FibrationPresentationInput::from_fiber_sum(&spec(g, vec![FiberConjugator::Identity])).unwrap();
            let p = pi1_presentation(&input).unwrap();
            let matrix: Vec<Vec<i64>> = input.base_cycles.iter().map(|c| c.homology().to_vec()).collect();
            let snf = smith_normal_form(&matrix);
            let expected = AbelianInvariants::new(2 * g - snf.rank, snf.invariant_factors.clone());
            assert_eq!(abelianization(&p), expected, "genus {g}");
        }
    }

    #[test]
    fn free_group_of_rank_one() {
        let p = pi1_of_fiber_sum(&spec(2, extras(2, &["b1", "b2"]))).unwrap();
        let simplified = tietze_simplify(&p, 10_000).presentation;
        assert_eq!(simplified.generator_count(), 1);
        assert!(simplified.relators().is_empty());
    }

    #[test]
    fn cyclic_and_split_abelian_groups() {
        let z = |n: i64| vec![FiberConjugator::Identity, FiberConjugator::Standard(vec![("b1".into(), n)])];
        for n in [2, 3, 5] {
            let p = pi1_of_fiber_sum(&spec(2, z(n))).unwrap();
            assert_eq!(abelianization(&p), AbelianInvariants::new(1, vec![n]));
        }
        let cat = curve_catalog(2, None).unwrap();
        let p = pi1_of_fiber_sum(&spec(
            2,
            vec![FiberConjugator::Identity, FiberConjugator::Curve(cat["a1"].clone()), FiberConjugator::Standard(vec![("b1".into(), 4)])],
        ))
        .unwrap();
        assert_eq!(abelianization(&p), AbelianInvariants::new(0, vec![4]));
    }

    #[test]
    fn extras_never_enlarge_hom_counts() {
        let s3 = FiniteGroupTable::builtin("S3").unwrap();
        let labels = ["b1", "b2", "b3", "b4", "a2"];
        let mut previous = u64::MAX;
        for k in 0..=labels.len() {
            let p = tietze_simplify(&pi1_of_fiber_sum(&spec(4, extras(4, &labels[..k]))).unwrap(), 100_000).presentation;
            let count = count_homomorphisms(&p, &s3, 100_000_000).unwrap();
            assert!(count <= previous, "{k} extras: {count} > {previous}");
            previous = count;
        }
        assert_eq!(previous, 6);
    }

    #[test]
    fn witness_failures_name_the_curve() {
        let m = SurfaceModel::new(2).unwrap();
        let lonely = CurveRef::new(&m, "d", m.a_word(1), vec![], Provenance::User).unwrap();
        let elsewhere = CurveRef::new(&m, "e", m.a_word(2), vec![Witness::single("nowhere")], Provenance::User).unwrap();
        let s = spec(2, vec![FiberConjugator::Identity, FiberConjugator::Curve(lonely), FiberConjugator::Curve(elsewhere)]);
        let err = pi1_of_fiber_sum(&s).unwrap_err();
        assert_eq!(err, Pi1Error::MissingWitness(vec!["d".into(), "e".into()]));
        assert!(err.to_string().contains("d, e"));
        let plain = FibrationPresentationInput::from_fiber_sum(&spec(2, vec![FiberConjugator::Identity])).unwrap();
        assert!(validate_witnesses(&plain).is_ok());
    }

    #[test]
    fn sectionless_input_is_rejected() {
        let mut input = FibrationPresentationInput::from_fiber_sum(&spec(2, vec![FiberConjugator::Identity])).unwrap();
        input.has_section = false;
        assert_eq!(pi1_presentation(&input).unwrap_err(), Pi1Error::NoSection);
    }
}
