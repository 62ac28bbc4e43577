//! Finite group presentations and the decidable invariants used to compare them.

mod evidence;
mod finite;
mod parse;
mod smith;
mod tietze;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::words::{Word, WordError};

pub use evidence::{abelianization, iso_evidence, AbelianInvariants, HomCountRow, IsoEvidence, Verdict};
pub use finite::{count_homomorphisms, FiniteGroupTable, DEFAULT_HOM_BUDGET};
pub use parse::{parse_presentation, parse_word};
pub use smith::{smith_normal_form, SmithForm};
pub use tietze::{tietze_simplify, TietzeOutcome, DEFAULT_TIETZE_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown generator `{name}` at line {line}, column {column}")]
    UnknownGenerator { name: String, line: usize, column: usize },
    #[error("zero exponent at line {line}, column {column}")]
    ZeroExponent { line: usize, column: usize },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("relator {index}: {source}")]
    Relator { index: usize, source: WordError },
    #[error("homomorphism count into {target} exceeded the budget of {budget} relator evaluations")]
    BudgetExceeded { target: String, budget: u64 },
    #[error("invalid group table `{name}`: {reason}")]
    InvalidTable { name: String, reason: String },
    #[error("unknown target group `{0}`")]
    UnknownTarget(String),
}

/// `<x_1, ..., x_n | r_1, ..., r_k>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut seen = BTreeSet::new();
        for name in &generator_names {
            if !seen.insert(name.as_str()) {
                return Err(PresentationError::DuplicateGenerator(name.clone()));
            }
        }
        for (index, r) in relators.iter().enumerate() {
            r.check_alphabet(generator_names.len())
                .map_err(|source| PresentationError::Relator { index, source })?;
        }
        Ok(GroupPresentation { generator_names, relators })
    }

    /// Free group on `x1, ..., xn`.
    pub fn free(rank: usize) -> Self {
        GroupPresentation { generator_names: (1..=rank).map(|i| format!("x{i}")).collect(), relators: Vec::new() }
    }

    pub fn with_relators(generator_names: &[&str], relators: Vec<Word>) -> Result<Self, PresentationError> {
        GroupPresentation::new(generator_names.iter().map(|s| s.to_string()).collect(), relators)
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|n| n == name)
    }

    /// Sum of the syllable lengths of the relators.
    pub fn total_syllable_length(&self) -> usize {
        self.relators.iter().map(Word::syllable_length).sum()
    }

    /// `n + l - k`.
    pub fn d(&self) -> i64 {
        self.generator_count() as i64 + self.total_syllable_length() as i64 - self.relator_count() as i64
    }

    /// Rows are the exponent vectors of the relators.
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.generator_count();
        self.relators
            .iter()
            .map(|r| r.exponent_vector(n).expect("relators are checked against the alphabet"))
            .collect()
    }

    /// Copy with every relator cyclically reduced and identity relators dropped.
    pub fn cyclically_reduced(&self) -> Self {
        GroupPresentation {
            generator_names: self.generator_names.clone(),
            relators: self.relators.iter().map(Word::cyclic_reduce).filter(|r| !r.is_identity()).collect(),
        }
    }

    pub fn word_to_string(&self, word: &Word) -> String {
        word.display_with(&self.generator_names).to_string()
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.generator_names.join(", "))?;
        f.write_str(" |")?;
        for (i, r) in self.relators.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{}", r.display_with(&self.generator_names))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for GroupPresentation {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_presentation(s)
    }
}
