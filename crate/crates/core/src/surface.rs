//! The closed genus-g surface: standard generators `a1, b1, ..., ag, bg` of its
//! fundamental group, the catalog of named curves and the intersection form on H_1.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{parse_word, PresentationError};
use crate::words::{Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("genus {genus} is below the minimum {minimum}")]
    GenusTooSmall { genus: usize, minimum: usize },
    #[error("odd genus {0} needs the curves `a` and `b` from a curve configuration")]
    MissingOddGenusCurves(usize),
    #[error("vectors of length {left} and {right} do not match genus {genus}")]
    LengthMismatch { left: usize, right: usize, genus: usize },
    #[error("curve `{label}`: {source}")]
    Word { label: String, source: WordError },
    #[error("curve `{label}`: {source}")]
    Parse { label: String, source: PresentationError },
    #[error("curve `{label}`: witness against `{cycle}` has count {count}, only single intersections are accepted")]
    WitnessCount { label: String, cycle: String, count: u32 },
    #[error("curve configuration: {0}")]
    Config(String),
}

/// Generators ordered `a1, b1, a2, b2, ..., ag, bg`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceModel {
    genus: usize,
}

impl SurfaceModel {
    pub fn new(genus: usize) -> Result<Self, SurfaceError> {
        if genus == 0 {
            return Err(SurfaceError::GenusTooSmall { genus, minimum: 1 });
        }
        Ok(SurfaceModel { genus })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn alphabet_size(&self) -> usize {
        2 * self.genus
    }

    /// Generator index of `a_i`, `i` starting at 1.
    pub fn a(&self, i: usize) -> usize {
        debug_assert!((1..=self.genus).contains(&i));
        2 * (i - 1)
    }

    pub fn b(&self, i: usize) -> usize {
        debug_assert!((1..=self.genus).contains(&i));
        2 * (i - 1) + 1
    }

    pub fn a_word(&self, i: usize) -> Word {
        Word::generator(self.a(i))
    }

    pub fn b_word(&self, i: usize) -> Word {
        Word::generator(self.b(i))
    }

    /// `b_from b_{from+1} ... b_to`, empty when `from > to`.
    pub fn b_run(&self, from: usize, to: usize) -> Word {
        (from..=to).map(|i| self.b_word(i)).fold(Word::identity(), |acc, w| acc.multiply(&w))
    }

    pub fn generator_names(&self) -> Vec<String> {
        (1..=self.genus).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        parse_word(text, &self.generator_names())
    }

    pub fn format_word(&self, word: &Word) -> String {
        if word.is_identity() {
            return "1".to_string();
        }
        word.display_with(&self.generator_names()).to_string()
    }

    /// `c_k = [a_1, b_1] ... [a_k, b_k]` with trivial conjugators.
    pub fn commutator_product(&self, k: usize) -> Word {
        (1..=k).fold(Word::identity(), |acc, i| acc.multiply(&self.a_word(i).commutator(&self.b_word(i))))
    }

    pub fn homology_class(&self, word: &Word) -> Result<Vec<i64>, WordError> {
        word.exponent_vector(self.alphabet_size())
    }

    /// `<u, v> = sum_i (u_{a_i} v_{b_i} - u_{b_i} v_{a_i})`.
    pub fn symplectic_pairing(&self, u: &[i64], v: &[i64]) -> Result<i64, SurfaceError> {
        let n = self.alphabet_size();
        if u.len() != n || v.len() != n {
            return Err(SurfaceError::LengthMismatch { left: u.len(), right: v.len(), genus: self.genus });
        }
        Ok((0..self.genus).map(|i| u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i]).sum())
    }

    /// Matrix `J` of the pairing: `<u, v> = u^T J v`.
    pub fn pairing_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.alphabet_size();
        let mut j = vec![vec![0; n]; n];
        for i in 0..self.genus {
            j[2 * i][2 * i + 1] = 1;
            j[2 * i + 1][2 * i] = -1;
        }
        j
    }
}

/// `∏ [a_i, b_i]` over all handles.
pub fn surface_relator(genus: usize) -> Word {
    SurfaceModel { genus }.commutator_product(genus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Words and intersection facts taken from the construction's published data.
    Published,
    /// Produced by this crate from a general rule.
    Constructed,
    /// Supplied through a curve configuration file.
    User,
}

/// Assertion that a curve meets the named cycle transversely in `count` points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub cycle: String,
    pub count: u32,
}

impl Witness {
    pub fn single(cycle: impl Into<String>) -> Self {
        Witness { cycle: cycle.into(), count: 1 }
    }
}

/// A simple closed curve: its word in `pi_1` (up to conjugacy), homology class and
/// recorded single-intersection witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveRef {
    label: String,
    word: Word,
    homology: Vec<i64>,
    witnesses: Vec<Witness>,
    provenance: Provenance,
}

impl CurveRef {
    pub fn new(
        model: &SurfaceModel,
        label: impl Into<String>,
        word: Word,
        witnesses: Vec<Witness>,
        provenance: Provenance,
    ) -> Result<Self, SurfaceError> {
        let label = label.into();
        let homology = model.homology_class(&word).map_err(|source| SurfaceError::Word { label: label.clone(), source })?;
        if let Some(w) = witnesses.iter().find(|w| w.count != 1) {
            return Err(SurfaceError::WitnessCount { label, cycle: w.cycle.clone(), count: w.count });
        }
        Ok(CurveRef { label, word, homology, witnesses, provenance })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn homology(&self) -> &[i64] {
        &self.homology
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// The same curve viewed on a surface of genus at least the current one.
    pub fn on_surface(&self, model: &SurfaceModel) -> Result<Self, SurfaceError> {
        CurveRef::new(model, self.label.clone(), self.word.clone(), self.witnesses.clone(), self.provenance)
    }

    pub fn with_witnesses(mut self, witnesses: Vec<Witness>) -> Self {
        self.witnesses = witnesses;
        self
    }
}

/// One user-supplied curve: its word is written in the presentation grammar over
/// `a1, b1, ..., ag, bg`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub label: String,
    pub word: String,
    #[serde(default)]
    pub witnesses: Vec<Witness>,
}

/// JSON curve configuration, e.g. the odd-genus curves `a` and `b`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveConfig {
    #[serde(default)]
    pub genus: Option<usize>,
    pub curves: Vec<CurveSpec>,
}

impl CurveConfig {
    pub fn from_json(text: &str) -> Result<Self, SurfaceError> {
        serde_json::from_str(text).map_err(|e| SurfaceError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, SurfaceError> {
        let text = std::fs::read_to_string(path).map_err(|e| SurfaceError::Config(format!("{}: {e}", path.display())))?;
        CurveConfig::from_json(&text)
    }

    /// Curves of the configuration as seen on `model`.
    pub fn curves_on(&self, model: &SurfaceModel) -> Result<Vec<CurveRef>, SurfaceError> {
        if let Some(g) = self.genus {
            if g != model.genus() {
                return Err(SurfaceError::Config(format!("configured for genus {g}, requested genus {}", model.genus())));
            }
        }
        self.curves
            .iter()
            .map(|spec| {
                let word = model
                    .parse_word(&spec.word)
                    .map_err(|source| SurfaceError::Parse { label: spec.label.clone(), source })?;
                CurveRef::new(model, spec.label.clone(), word, spec.witnesses.clone(), Provenance::User)
            })
            .collect()
    }

    pub fn get(&self, model: &SurfaceModel, label: &str) -> Result<Option<CurveRef>, SurfaceError> {
        Ok(self.curves_on(model)?.into_iter().find(|c| c.label() == label))
    }
}

/// Word of `B_j`. For `g = 2r`, with `1 <= k <= r`:
/// `B_0 = b_1 ... b_g`,
/// `B_{2k-1} = a_k b_k ... b_{g+1-k} c_{g+1-k} a_{g+1-k}`,
/// `B_{2k} = a_k b_{k+1} ... b_{g-k} c_{g-k} a_{g+1-k}`.
/// Odd genus uses the same rule for every `j <= g`.
pub fn b_curve_word(model: &SurfaceModel, j: usize) -> Word {
    let g = model.genus();
    assert!(j <= g, "B_{j} does not exist in genus {g}");
    if j == 0 {
        return model.b_run(1, g);
    }
    let k = j.div_ceil(2);
    let top = g + 1 - k;
    let (run, c) = if j % 2 == 1 { (model.b_run(k, top), top) } else { (model.b_run(k + 1, g - k), g - k) };
    model
        .a_word(k)
        .multiply(&run)
        .multiply(&model.commutator_product(c))
        .multiply(&model.a_word(top))
}

/// The named curves of genus `g`: `a1..ag`, `b1..bg`, `B0..Bg`, `c` for even genus,
/// and `a`, `b` for odd genus when `config` supplies them.
pub fn curve_catalog(genus: usize, config: Option<&CurveConfig>) -> Result<BTreeMap<String, CurveRef>, SurfaceError> {
    if genus < 2 {
        return Err(SurfaceError::GenusTooSmall { genus, minimum: 2 });
    }
    let model = SurfaceModel::new(genus)?;
    let b_provenance = if genus % 2 == 0 { Provenance::Published } else { Provenance::Constructed };
    let b_curves: Vec<CurveRef> = (0..=genus)
        .map(|j| CurveRef::new(&model, format!("B{j}"), b_curve_word(&model, j), vec![], b_provenance))
        .collect::<Result<_, _>>()?;

    let mut catalog = BTreeMap::new();
    for i in 1..=genus {
        // each b_i meets exactly two B_j once; a_i meets B_0 once
        let b_witnesses: Vec<Witness> = b_curves
            .iter()
            .filter(|c| c.homology()[model.a(i)].abs() == 1)
            .map(|c| Witness::single(c.label()))
            .collect();
        let a = CurveRef::new(&model, format!("a{i}"), model.a_word(i), vec![Witness::single("B0")], Provenance::Published)?;
        let b = CurveRef::new(&model, format!("b{i}"), model.b_word(i), b_witnesses, Provenance::Published)?;
        catalog.insert(a.label().to_string(), a);
        catalog.insert(b.label().to_string(), b);
    }
    for c in b_curves {
        catalog.insert(c.label().to_string(), c);
    }
    if genus % 2 == 0 {
        let c = CurveRef::new(&model, "c", model.commutator_product(genus / 2), vec![], Provenance::Published)?;
        catalog.insert("c".to_string(), c);
    }
    if let Some(config) = config {
        for curve in config.curves_on(&model)? {
            catalog.insert(curve.label().to_string(), curve);
        }
    }
    if genus % 2 == 1 && config.is_some() && !(catalog.contains_key("a") && catalog.contains_key("b")) {
        return Err(SurfaceError::MissingOddGenusCurves(genus));
    }
    Ok(catalog)
}

/// The curves `a`, `b` of the odd-genus relation, required from configuration.
pub fn odd_genus_curves(genus: usize, config: Option<&CurveConfig>) -> Result<(CurveRef, CurveRef), SurfaceError> {
    let model = SurfaceModel::new(genus)?;
    let config = config.ok_or(SurfaceError::MissingOddGenusCurves(genus))?;
    let a = config.get(&model, "a")?.ok_or(SurfaceError::MissingOddGenusCurves(genus))?;
    let b = config.get(&model, "b")?.ok_or(SurfaceError::MissingOddGenusCurves(genus))?;
    Ok((a, b))
}
