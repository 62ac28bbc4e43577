//! Loops that carry the relators of a presentation onto the fiber, and the end-to-end
//! construction from a presentation to a fiber sum and its fundamental group.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::monodromy::{build_w, resolve_c_exponent, FactorizationExport, FiberConjugator, FiberSumSpec, MonodromyError};
use crate::pi1::{pi1_of_fiber_sum, Pi1Error};
use crate::presentation::{iso_evidence, tietze_simplify, FiniteGroupTable, GroupPresentation, IsoEvidence, PresentationError};
use crate::surface::{curve_catalog, CurveConfig, CurveRef, Provenance, SurfaceError, SurfaceModel, Witness};
use crate::words::{Letter, Word};
use crate::Budgets;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error("relator {0} is empty")]
    EmptyRelator(usize),
    #[error("relator {0} is not cyclically reduced")]
    NotCyclicallyReduced(usize),
    #[error("relator {index} uses generator {generator} but the presentation has {n}")]
    GeneratorOutOfRange { index: usize, generator: usize, n: usize },
    #[error("the presentation has no generators")]
    NoGenerators,
    #[error("genus {genus} is invalid: {reason}")]
    Genus { genus: usize, reason: String },
    #[error("invalid family parameters: {0}")]
    Family(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
    #[error(transparent)]
    Pi1(#[from] Pi1Error),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// The loops `R_i` of a presentation `<x_1..x_n | r_1..r_k>` on a surface of genus `genus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorLoopPlan {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    /// `n + l - k`.
    pub h: usize,
    pub genus: usize,
    pub loops: Vec<CurveRef>,
    /// Fresh `b` indices consumed by each loop.
    pub handle_map: Vec<Vec<usize>>,
}

impl RelatorLoopPlan {
    /// `b_* -> 1`, `a_s -> 1` for `s > n`, `a_i -> x_i`.
    pub fn projection(&self) -> BTreeMap<usize, Word> {
        let model = SurfaceModel::new(self.genus).expect("plan genus is positive");
        let mut map = BTreeMap::new();
        for i in 1..=self.genus {
            map.insert(model.b(i), Word::identity());
            map.insert(model.a(i), if i <= self.n { Word::generator(i - 1) } else { Word::identity() });
        }
        map
    }

    pub fn project(&self, loop_index: usize) -> Word {
        self.loops[loop_index].word().substitute(&self.projection()).expect("projection covers the alphabet")
    }
}

fn check_relators(relators: &[Word], n: usize) -> Result<(), LoopError> {
    for (index, r) in relators.iter().enumerate() {
        if r.is_identity() {
            return Err(LoopError::EmptyRelator(index));
        }
        if !r.is_cyclically_reduced() {
            return Err(LoopError::NotCyclicallyReduced(index));
        }
        if let Some(generator) = r.max_generator().filter(|&g| g >= n) {
            return Err(LoopError::GeneratorOutOfRange { index, generator, n });
        }
    }
    Ok(())
}

/// `n + sum l(r_i) - k`.
pub fn handle_count(relators: &[Word], n: usize) -> usize {
    n + relators.iter().map(|r| r.syllable_length() - 1).sum::<usize>()
}

/// For `r = x_{i_1}^{m_1} ... x_{i_d}^{m_d}` emits
/// `(b_1 ... b_{i_1 - 1}) a_{i_1}^{m_1} b_{h_1} a_{i_2}^{m_2} ... b_{h_{d-1}} a_{i_d}^{m_d} (b_1 ... b_{i_d})^-1`
/// with fresh handle indices `h_j > n`. `genus` defaults to `2h`.
pub fn construct_r_generic(relators: &[Word], n: usize, genus: Option<usize>) -> Result<RelatorLoopPlan, LoopError> {
    if n == 0 {
        return Err(LoopError::NoGenerators);
    }
    check_relators(relators, n)?;
    let h = handle_count(relators, n);
    let genus = genus.unwrap_or((2 * h).max(2));
    if genus < 2 * h {
        return Err(LoopError::Genus { genus, reason: format!("below 2h = {}", 2 * h) });
    }
    let model = SurfaceModel::new(genus)?;
    let witness = format!("B{}", 2 * h);
    let mut next_handle = n + 1;
    let mut loops = Vec::with_capacity(relators.len());
    let mut handle_map = Vec::with_capacity(relators.len());
    for (index, r) in relators.iter().enumerate() {
        let syllables = r.letters();
        let first = syllables[0].generator + 1;
        let last = syllables[syllables.len() - 1].generator + 1;
        let mut word = model.b_run(1, first - 1);
        let mut handles = Vec::new();
        for (j, letter) in syllables.iter().enumerate() {
            if j > 0 {
                word = word.multiply(&model.b_word(next_handle));
                handles.push(next_handle);
                next_handle += 1;
            }
            word = word.multiply(&Word::power(model.a(letter.generator + 1), letter.exponent));
        }
        word = word.multiply(&model.b_run(1, last).inverse());
        loops.push(CurveRef::new(&model, format!("R{}", index + 1), word, vec![Witness::single(&witness)], Provenance::Constructed)?);
        handle_map.push(handles);
    }
    let l = relators.iter().map(Word::syllable_length).sum();
    Ok(RelatorLoopPlan { n, k: relators.len(), l, h, genus, loops, handle_map })
}

/// Families with hand-made loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecialFamily {
    /// `Z^n + Z_{m_1} + ... + Z_{m_k}` on genus `2n + 2k + 1`.
    Abelian { n: usize, m: Vec<i64> },
    /// `pi_1(N_g)` on genus `2g`.
    Nonorientable { g: usize },
    /// `<x, y | x^2 y^3, x^4>` on genus 4.
    Sl2z,
}

impl SpecialFamily {
    pub fn genus(&self) -> usize {
        match self {
            SpecialFamily::Abelian { n, m } => 2 * n + 2 * m.len() + 1,
            SpecialFamily::Nonorientable { g } => 2 * g,
            SpecialFamily::Sl2z => 4,
        }
    }
}

/// The hand-made loops of a family, with their single-intersection witnesses.
pub fn special_loop_catalog(family: &SpecialFamily) -> Result<Vec<CurveRef>, LoopError> {
    let model = SurfaceModel::new(family.genus().max(1))?;
    match family {
        SpecialFamily::Abelian { n, m } => {
            let (n, k) = (*n, m.len());
            if n + k < 3 {
                return Err(LoopError::Family(format!("abelian family needs n + k >= 3, got {}", n + k)));
            }
            if let Some(bad) = m.iter().find(|&&x| x < 2) {
                return Err(LoopError::Family(format!("cyclic orders must be at least 2, got {bad}")));
            }
            let mut loops = Vec::new();
            for i in 1..=n + k {
                for j in i + 1..=n + k {
                    let run = model.b_run(i, j);
                    let word = model
                        .a_word(i)
                        .multiply(&model.a_word(j))
                        .multiply(&model.a_word(i).inverse())
                        .multiply(&run)
                        .multiply(&model.a_word(j).inverse())
                        .multiply(&model.b_word(n + k + 1).inverse())
                        .multiply(&run.inverse());
                    loops.push(CurveRef::new(&model, format!("R{i}_{j}"), word, vec![Witness::single("a")], Provenance::Published)?);
                }
            }
            for (s, &ms) in m.iter().enumerate() {
                let s = s + 1;
                let word = Word::power(model.a(n + s), ms).multiply(&model.b_word(n + s).inverse());
                loops.push(CurveRef::new(&model, format!("T{s}"), word, vec![Witness::single(format!("B{}", n + s))], Provenance::Published)?);
            }
            Ok(loops)
        }
        SpecialFamily::Nonorientable { g } => {
            if *g < 1 {
                return Err(LoopError::Family("nonorientable genus must be at least 1".into()));
            }
            let squares = (1..=*g).fold(Word::identity(), |acc, i| acc.multiply(&Word::power(model.a(i), 2)));
            let word = squares.multiply(&model.b_run(1, *g).inverse());
            Ok(vec![CurveRef::new(&model, "R", word, vec![Witness::single(format!("B{g}"))], Provenance::Published)?])
        }
        SpecialFamily::Sl2z => {
            let first = model.parse_word("a1^2 a2^3 b2^-1 b1^-1").expect("fixed word parses");
            let second = model.parse_word("a1^4 b1^-1").expect("fixed word parses");
            Ok(vec![
                CurveRef::new(&model, "R1", first, vec![Witness::single("B4")], Provenance::Published)?,
                CurveRef::new(&model, "R2", second, vec![Witness::single("B4")], Provenance::Constructed)?,
            ])
        }
    }
}

/// Copies of `X_W(1)` in the abelian construction as stated in its proof.
pub fn abelian_copy_count_formula(n: usize, k: usize) -> usize {
    let g = 2 * n + 2 * k + 1;
    g + 1 + k + (n + k) * (n + k + 1) / 2
}

/// Copies actually used by `X_W(1, b_1..b_g, T_1..T_k, R_ij)`: one per listed curve plus one.
pub fn abelian_copy_count_listed(n: usize, k: usize) -> usize {
    let g = 2 * n + 2 * k + 1;
    1 + g + k + (n + k) * (n + k - 1) / 2
}

fn catalog_extras(genus: usize, labels: impl IntoIterator<Item = String>) -> Result<Vec<FiberConjugator>, LoopError> {
    let cat = curve_catalog(genus, None)?;
    labels
        .into_iter()
        .map(|l| cat.get(&l).cloned().map(FiberConjugator::Curve).ok_or_else(|| MonodromyError::UnknownCurve(l).into()))
        .collect()
}

fn check_even_genus(genus: usize, minimum: usize) -> Result<(), LoopError> {
    if genus % 2 == 1 {
        return Err(LoopError::Genus { genus, reason: "odd genus needs configured curves a and b".into() });
    }
    if genus < minimum.max(2) {
        return Err(LoopError::Genus { genus, reason: format!("below the minimum {}", minimum.max(2)) });
    }
    Ok(())
}

/// `X^g_W(1, b_1, ..., b_g, a_{n+1}, ..., a_r)` with `g = 2r >= 2n`.
pub fn free_group_plan(n: usize, genus: usize, c_exponent: u32) -> Result<FiberSumSpec, LoopError> {
    check_even_genus(genus, 2 * n)?;
    let r = genus / 2;
    let labels = (1..=genus).map(|i| format!("b{i}")).chain((n + 1..=r).map(|i| format!("a{i}")));
    let mut conjugators = vec![FiberConjugator::Identity];
    conjugators.extend(catalog_extras(genus, labels)?);
    Ok(FiberSumSpec::new(build_w(genus, c_exponent, None)?, conjugators)?)
}

/// `1 + g + (g/2 - n)`, equal to `1 + 3r - n`.
pub fn free_group_copy_count(n: usize, genus: usize) -> usize {
    1 + genus + (genus / 2 - n)
}

/// Special-family fiber sum on even genus (`nonorientable`, `sl2z`):
/// `X_W(1, b_1, ..., b_m, loops)` where `m` is `g` for nonorientable and the full genus for sl2z.
pub fn special_family_plan(family: &SpecialFamily, c_exponent: u32) -> Result<FiberSumSpec, LoopError> {
    let genus = family.genus();
    let b_count = match family {
        SpecialFamily::Nonorientable { g } => *g,
        SpecialFamily::Sl2z => genus,
        SpecialFamily::Abelian { .. } => {
            return Err(LoopError::Genus { genus, reason: "odd genus needs configured curves a and b".into() })
        }
    };
    check_even_genus(genus, 2)?;
    let mut conjugators = vec![FiberConjugator::Identity];
    conjugators.extend(catalog_extras(genus, (1..=b_count).map(|i| format!("b{i}")))?);
    conjugators.extend(special_loop_catalog(family)?.into_iter().map(FiberConjugator::Curve));
    Ok(FiberSumSpec::new(build_w(genus, c_exponent, None)?, conjugators)?)
}

/// `X^g_W(1, b_1..b_g, T_1..T_k, R_ij)` on the odd genus `2n + 2k + 1`, with `a`, `b` from `config`.
pub fn abelian_plan(n: usize, m: &[i64], c_exponent: u32, config: &CurveConfig) -> Result<FiberSumSpec, LoopError> {
    let family = SpecialFamily::Abelian { n, m: m.to_vec() };
    let genus = family.genus();
    let loops = special_loop_catalog(&family)?;
    let cat = curve_catalog(genus, Some(config))?;
    let mut conjugators = vec![FiberConjugator::Identity];
    for i in 1..=genus {
        conjugators.push(FiberConjugator::Curve(cat[&format!("b{i}")].clone()));
    }
    // T_s after the b's, then R_ij
    let (r, t): (Vec<CurveRef>, Vec<CurveRef>) = loops.into_iter().partition(|c| c.label().starts_with('R'));
    conjugators.extend(t.into_iter().chain(r).map(FiberConjugator::Curve));
    Ok(FiberSumSpec::new(build_w(genus, c_exponent, Some(config))?, conjugators)?)
}

/// Inserts identity copies so that the spec starts with exactly `m` of them.
pub fn with_identity_copies(spec: &FiberSumSpec, m: usize) -> Result<FiberSumSpec, LoopError> {
    let rest: Vec<FiberConjugator> =
        spec.conjugators.iter().skip_while(|c| **c == FiberConjugator::Identity).cloned().collect();
    let mut conjugators = vec![FiberConjugator::Identity; m];
    conjugators.extend(rest);
    Ok(FiberSumSpec::new(spec.base.clone(), conjugators)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CExponentChoice {
    Fixed(u32),
    Auto,
}

impl CExponentChoice {
    pub fn resolve(self, genus: usize) -> Result<u32, LoopError> {
        match self {
            CExponentChoice::Fixed(e) => Ok(e),
            CExponentChoice::Auto => Ok(resolve_c_exponent(genus)?.exponent),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub genus: Option<usize>,
    pub c_exponent: CExponentChoice,
    pub targets: Vec<FiniteGroupTable>,
    pub budgets: Budgets,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            genus: None,
            c_exponent: CExponentChoice::Fixed(2),
            targets: ["S3", "Z4"].iter().map(|t| FiniteGroupTable::builtin(t).expect("builtin")).collect(),
            budgets: Budgets::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub input: GroupPresentation,
    pub plan: RelatorLoopPlan,
    pub spec: FiberSumSpec,
    pub c_exponent: u32,
    pub presentation: GroupPresentation,
    pub simplified: GroupPresentation,
    pub tietze_exhausted: bool,
    pub evidence: IsoEvidence,
}

/// JSON form of a pipeline run.
#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub input: String,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub h: usize,
    pub genus: usize,
    pub c_exponent: u32,
    pub copies: usize,
    pub singular_fibers: usize,
    pub loops: Vec<String>,
    pub projection_matches: bool,
    pub factorization: FactorizationExport,
    pub pi1_generators: usize,
    pub pi1_relators: usize,
    pub simplified: String,
    pub tietze_exhausted: bool,
    pub evidence: IsoEvidence,
}

impl PipelineOutcome {
    pub fn copies(&self) -> usize {
        self.spec.copies()
    }

    pub fn singular_fibers(&self) -> usize {
        self.spec.copies() * self.spec.base.len()
    }

    /// Every loop projects to its relator.
    pub fn projection_matches(&self) -> bool {
        self.input.relators().iter().enumerate().all(|(i, r)| self.plan.project(i) == *r)
    }

    pub fn report(&self) -> Result<PipelineReport, LoopError> {
        let model = SurfaceModel::new(self.plan.genus)?;
        Ok(PipelineReport {
            input: self.input.to_string(),
            n: self.plan.n,
            k: self.plan.k,
            l: self.plan.l,
            h: self.plan.h,
            genus: self.plan.genus,
            c_exponent: self.c_exponent,
            copies: self.copies(),
            singular_fibers: self.singular_fibers(),
            loops: self.plan.loops.iter().map(|c| format!("{} = {}", c.label(), model.format_word(c.word()))).collect(),
            projection_matches: self.projection_matches(),
            factorization: crate::monodromy::fiber_sum(&self.spec)?.export(),
            pi1_generators: self.presentation.generator_count(),
            pi1_relators: self.presentation.relator_count(),
            simplified: self.simplified.to_string(),
            tietze_exhausted: self.tietze_exhausted,
            evidence: self.evidence.clone(),
        })
    }
}

/// Default genus: `max(2h, 4)`, rounded up to even.
pub fn default_genus(h: usize) -> usize {
    let g = (2 * h).max(4);
    g + g % 2
}

/// Presentation -> loops -> `X^g_W(1, b_1..b_g, a_{n+1}..a_r, R_1..R_k)` -> `pi_1` -> evidence.
pub fn theorem_main_pipeline(input: &GroupPresentation, options: &PipelineOptions) -> Result<PipelineOutcome, LoopError> {
    let input = input.cyclically_reduced();
    let n = input.generator_count();
    if n == 0 {
        return Err(LoopError::NoGenerators);
    }
    let h = handle_count(input.relators(), n);
    let genus = options.genus.unwrap_or_else(|| default_genus(h));
    check_even_genus(genus, 2 * h)?;
    let plan = construct_r_generic(input.relators(), n, Some(genus))?;
    let c_exponent = options.c_exponent.resolve(genus)?;
    let mut spec = free_group_plan(n, genus, c_exponent)?;
    spec.conjugators.extend(plan.loops.iter().cloned().map(FiberConjugator::Curve));
    let presentation = pi1_of_fiber_sum(&spec)?;
    let outcome = tietze_simplify(&presentation, options.budgets.tietze);
    let evidence = iso_evidence(&outcome.presentation, &input, &options.targets, options.budgets)?;
    Ok(PipelineOutcome {
        input,
        plan,
        spec,
        c_exponent,
        presentation,
        simplified: outcome.presentation,
        tietze_exhausted: outcome.exhausted,
        evidence,
    })
}

/// Raw letters of `w` with `letter.generator` shifted, used to lift `x_i` words to `a_i`.
pub fn lift_to_surface(w: &Word, genus: usize) -> Word {
    let model = SurfaceModel::new(genus.max(1)).expect("positive genus");
    w.letters().iter().map(|l| Letter::new(model.a(l.generator + 1), l.exponent)).collect()
}
