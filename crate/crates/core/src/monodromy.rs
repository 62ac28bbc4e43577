//! Positive Dehn-twist factorizations, their action on `H_1` and fiber sums.
//!
//! Conventions: a product `t_1 t_2 ... t_s` applies `t_1` first. The twist along a
//! curve of class `c` acts on homology by `x -> x + <c, x> c`, so `T_{a1}(b1) = b1 + a1`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::surface::{curve_catalog, CurveConfig, CurveRef, Provenance, SurfaceError, SurfaceModel};
use crate::words::{Word, WordError};

pub type Matrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonodromyError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("`{0}` is not a standard curve a_i or b_i")]
    NotStandard(String),
    #[error("c exponent must be 1 or 2, got {0}")]
    CExponent(u32),
    #[error("curve `{0}` is not in the catalog")]
    UnknownCurve(String),
    #[error("the exponent of t_c is only defined for even genus >= 2, got {0}")]
    OddOrSmallGenus(usize),
    #[error("a fiber sum needs at least one copy of the base")]
    EmptyFiberSum,
    #[error("conjugator {index}: {reason}")]
    InvalidConjugator { index: usize, reason: String },
    #[error("rewriting `{label}`: {source}")]
    Rewrite { label: String, source: WordError },
}

/// One entry `t_d^power` of a conjugating mapping class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugatorEntry {
    pub curve: CurveRef,
    pub power: i64,
}

/// `t_curve` conjugated by the product of the entries, first entry applied first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistFactor {
    pub curve: CurveRef,
    pub conjugator: Vec<ConjugatorEntry>,
    /// Set when the curve word was rewritten by a substitution instead of carrying a conjugator.
    pub expanded: bool,
}

impl TwistFactor {
    pub fn plain(curve: CurveRef) -> Self {
        TwistFactor { curve, conjugator: Vec::new(), expanded: false }
    }

    /// Homology class of the conjugated curve.
    pub fn homology(&self, model: &SurfaceModel) -> Vec<i64> {
        let mut x = self.curve.homology().to_vec();
        for entry in &self.conjugator {
            x = apply(&transvection_matrix(model, entry.curve.homology(), entry.power), &x);
        }
        x
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub genus: usize,
    pub factors: Vec<TwistFactor>,
    pub has_section: bool,
}

impl Factorization {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn model(&self) -> SurfaceModel {
        SurfaceModel::new(self.genus).expect("factorizations have positive genus")
    }

    pub fn export(&self) -> FactorizationExport {
        let model = self.model();
        FactorizationExport {
            genus: self.genus,
            has_section: self.has_section,
            factors: self
                .factors
                .iter()
                .map(|f| FactorExport {
                    curve: if f.expanded { model.format_word(f.curve.word()) } else { f.curve.label().to_string() },
                    conjugator: f.conjugator.iter().map(|e| (e.curve.label().to_string(), e.power)).collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.export()).expect("export is serializable")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorExport {
    pub curve: String,
    pub conjugator: Vec<(String, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizationExport {
    pub genus: usize,
    pub has_section: bool,
    pub factors: Vec<FactorExport>,
}

/// The relation `W`: even genus `(t_c^e t_{B_g} ... t_{B_0})^2`, odd genus
/// `(t_a^2 t_b^2 t_{B_g} ... t_{B_0})^2` with `a`, `b` taken from `config`.
pub fn build_w(genus: usize, c_exponent: u32, config: Option<&CurveConfig>) -> Result<Factorization, MonodromyError> {
    if !(1..=2).contains(&c_exponent) {
        return Err(MonodromyError::CExponent(c_exponent));
    }
    if genus % 2 == 1 && config.is_none() {
        return Err(SurfaceError::MissingOddGenusCurves(genus).into());
    }
    let catalog = curve_catalog(genus, config)?;
    let get = |label: &str| catalog.get(label).cloned().ok_or_else(|| MonodromyError::UnknownCurve(label.to_string()));
    let mut block = Vec::new();
    if genus % 2 == 0 {
        for _ in 0..c_exponent {
            block.push(get("c")?);
        }
    } else {
        block.extend([get("a")?, get("a")?, get("b")?, get("b")?]);
    }
    for j in (0..=genus).rev() {
        block.push(get(&format!("B{j}"))?);
    }
    let factors = block.iter().chain(block.iter()).cloned().map(TwistFactor::plain).collect();
    Ok(Factorization { genus, factors, has_section: true })
}

/// Outcome of testing both candidate exponents of `t_c` against the homology identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CExponentResolution {
    pub genus: usize,
    pub exponent: u32,
    pub exponent_one_passes: bool,
    pub exponent_two_passes: bool,
    pub warning: Option<String>,
}

/// Picks the exponent for which `W` acts trivially on homology, defaulting to 2 with a
/// warning when the check does not single one out.
pub fn resolve_c_exponent(genus: usize) -> Result<CExponentResolution, MonodromyError> {
    if genus < 2 || genus % 2 == 1 {
        return Err(MonodromyError::OddOrSmallGenus(genus));
    }
    let passes = |e| -> Result<bool, MonodromyError> { Ok(is_identity(&homology_image(&build_w(genus, e, None)?))) };
    let (one, two) = (passes(1)?, passes(2)?);
    let (exponent, warning) = match (one, two) {
        (true, false) => (1, None),
        (false, true) => (2, None),
        (true, true) => (2, Some(format!("genus {genus}: both exponents act trivially on homology (c is null-homologous); using 2"))),
        (false, false) => (2, Some(format!("genus {genus}: neither exponent acts trivially on homology; using 2"))),
    };
    Ok(CExponentResolution { genus, exponent, exponent_one_passes: one, exponent_two_passes: two, warning })
}

/// Parses `a<i>` or `b<i>` into `(is_b, i)`.
fn standard_label(model: &SurfaceModel, label: &str) -> Option<(bool, usize)> {
    let (kind, index) = label.split_at(label.find(|c: char| c.is_ascii_digit())?);
    let i: usize = index.parse().ok()?;
    if !(1..=model.genus()).contains(&i) || index.starts_with('0') {
        return None;
    }
    match kind {
        "a" => Some((false, i)),
        "b" => Some((true, i)),
        _ => None,
    }
}

/// `pi_1` action of `t_label^power` on the standard generators:
/// `t_{b_i}^n: a_i -> b_i^-n a_i`, `t_{a_i}^n: b_i -> a_i^n b_i`, all else fixed.
pub fn twist_substitution(model: &SurfaceModel, label: &str, power: i64) -> Result<BTreeMap<usize, Word>, MonodromyError> {
    let (is_b, i) = standard_label(model, label).ok_or_else(|| MonodromyError::NotStandard(label.to_string()))?;
    let mut map: BTreeMap<usize, Word> = (0..model.alphabet_size()).map(|g| (g, Word::generator(g))).collect();
    if is_b {
        map.insert(model.a(i), Word::power(model.b(i), -power).multiply(&model.a_word(i)));
    } else {
        map.insert(model.b(i), Word::power(model.a(i), power).multiply(&model.b_word(i)));
    }
    Ok(map)
}

/// Composite action of `t_{d_1}^{p_1} t_{d_2}^{p_2} ...`, first entry applied first.
pub fn composite_substitution(model: &SurfaceModel, entries: &[(String, i64)]) -> Result<BTreeMap<usize, Word>, MonodromyError> {
    let mut map: BTreeMap<usize, Word> = (0..model.alphabet_size()).map(|g| (g, Word::generator(g))).collect();
    for (label, power) in entries {
        let step = twist_substitution(model, label, *power)?;
        for image in map.values_mut() {
            *image = image.substitute(&step).map_err(|source| MonodromyError::Rewrite { label: label.clone(), source })?;
        }
    }
    Ok(map)
}

pub fn identity_matrix(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn is_identity(m: &Matrix) -> bool {
    *m == identity_matrix(m.len())
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum()).collect()).collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let n = a.first().map_or(0, Vec::len);
    (0..n).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

fn apply(m: &Matrix, x: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// Matrix of `x -> x + power * <c, x> c` on column vectors.
pub fn transvection_matrix(model: &SurfaceModel, class: &[i64], power: i64) -> Matrix {
    let n = model.alphabet_size();
    let mut m = identity_matrix(n);
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 1;
        let pairing = model.symplectic_pairing(class, &e).expect("class has length 2g");
        for i in 0..n {
            m[i][j] += power * pairing * class[i];
        }
    }
    m
}

/// Abelianization of a substitution map, columns indexed by generator.
pub fn substitution_matrix(model: &SurfaceModel, map: &BTreeMap<usize, Word>) -> Result<Matrix, WordError> {
    let n = model.alphabet_size();
    let columns = (0..n)
        .map(|g| map.get(&g).map_or_else(|| Ok(Word::generator(g).exponent_vector(n)?), |w| w.exponent_vector(n)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(transpose(&columns))
}

/// `T_{c_s} ... T_{c_1}` for the factorization `t_{c_1} ... t_{c_s}`.
pub fn homology_image(factorization: &Factorization) -> Matrix {
    let model = factorization.model();
    factorization.factors.iter().fold(identity_matrix(model.alphabet_size()), |acc, f| {
        mat_mul(&transvection_matrix(&model, &f.homology(&model), 1), &acc)
    })
}

/// `M^T J M = J`.
pub fn is_symplectic(model: &SurfaceModel, m: &Matrix) -> bool {
    let j = model.pairing_matrix();
    mat_mul(&mat_mul(&transpose(m), &j), m) == j
}

/// How one copy of the base is conjugated in a fiber sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberConjugator {
    Identity,
    /// `t_d` for a curve `d`; kept symbolic on every factor.
    Curve(CurveRef),
    /// A product of powers of twists along standard curves; cycle words are rewritten.
    Standard(Vec<(String, i64)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberSumSpec {
    pub base: Factorization,
    pub conjugators: Vec<FiberConjugator>,
}

impl FiberSumSpec {
    pub fn new(base: Factorization, conjugators: Vec<FiberConjugator>) -> Result<Self, MonodromyError> {
        if conjugators.is_empty() {
            return Err(MonodromyError::EmptyFiberSum);
        }
        Ok(FiberSumSpec { base, conjugators })
    }

    pub fn copies(&self) -> usize {
        self.conjugators.len()
    }

    /// Curves `d_j` of the curve route, in order.
    pub fn extra_curves(&self) -> Vec<&CurveRef> {
        self.conjugators
            .iter()
            .filter_map(|c| match c {
                FiberConjugator::Curve(d) => Some(d),
                _ => None,
            })
            .collect()
    }
}

/// Concatenates the conjugated copies `V^{f_1} ... V^{f_m}`.
pub fn fiber_sum(spec: &FiberSumSpec) -> Result<Factorization, MonodromyError> {
    let model = spec.base.model();
    let mut factors = Vec::with_capacity(spec.copies() * spec.base.len());
    for (index, conjugator) in spec.conjugators.iter().enumerate() {
        match conjugator {
            FiberConjugator::Identity => factors.extend(spec.base.factors.iter().cloned()),
            FiberConjugator::Curve(d) => {
                if d.homology().len() != model.alphabet_size() {
                    return Err(MonodromyError::InvalidConjugator {
                        index,
                        reason: format!("curve `{}` does not live on genus {}", d.label(), model.genus()),
                    });
                }
                for f in &spec.base.factors {
                    let mut f = f.clone();
                    f.conjugator.push(ConjugatorEntry { curve: d.clone(), power: 1 });
                    factors.push(f);
                }
            }
            FiberConjugator::Standard(entries) => {
                let map = composite_substitution(&model, entries)
                    .map_err(|e| MonodromyError::InvalidConjugator { index, reason: e.to_string() })?;
                for f in &spec.base.factors {
                    if !f.conjugator.is_empty() {
                        return Err(MonodromyError::InvalidConjugator {
                            index,
                            reason: "cannot rewrite a factor that already carries a conjugator".to_string(),
                        });
                    }
                    let word = f
                        .curve
                        .word()
                        .substitute(&map)
                        .map_err(|source| MonodromyError::Rewrite { label: f.curve.label().to_string(), source })?;
                    let curve = CurveRef::new(&model, f.curve.label(), word, f.curve.witnesses().to_vec(), Provenance::Constructed)?;
                    factors.push(TwistFactor { curve, conjugator: Vec::new(), expanded: true });
                }
            }
        }
    }
    Ok(Factorization { genus: spec.base.genus, factors, has_section: spec.base.has_section })
}

/// `chi = 4 - 4g + s` for a genus-`g` fibration over the sphere with `s` singular fibers.
pub fn euler_characteristic(genus: i64, singular_fibers: i64) -> i64 {
    4 - 4 * genus + singular_fibers
}
