//! Free-group words in syllable-merged canonical form.
//!
//! A [`Word`] is a freely reduced product `x_{i_1}^{m_1} ... x_{i_s}^{m_s}` in which
//! consecutive syllables use different generators and no exponent is zero. Generators
//! are plain indices; the alphabet a word lives in is checked at the boundaries that
//! care about it (presentations, surface models, exponent vectors).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("generator index {index} out of range for alphabet of size {size}")]
    GeneratorOutOfRange { index: usize, size: usize },
    #[error("no image given for generator {0}")]
    MissingImage(usize),
}

/// One syllable `x_generator^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub exponent: i64,
}

impl Letter {
    pub fn new(generator: usize, exponent: i64) -> Self {
        Letter { generator, exponent }
    }

    pub fn inverse(self) -> Self {
        Letter::new(self.generator, -self.exponent)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Push a syllable onto a reduced stack, merging and cancelling against the top.
fn push_merged(stack: &mut Vec<Letter>, letter: Letter) {
    if letter.exponent == 0 {
        return;
    }
    match stack.last_mut() {
        Some(top) if top.generator == letter.generator => {
            top.exponent += letter.exponent;
            if top.exponent == 0 {
                stack.pop();
            }
        }
        _ => stack.push(letter),
    }
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(index: usize) -> Self {
        Word { letters: vec![Letter::new(index, 1)] }
    }

    pub fn power(index: usize, exponent: i64) -> Self {
        Word::from_letters(std::iter::once(Letter::new(index, exponent)))
    }

    /// Reduce an arbitrary letter sequence without alphabet checking.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        let mut stack = Vec::new();
        for letter in raw {
            push_merged(&mut stack, letter);
        }
        Word { letters: stack }
    }

    /// Reduce `raw` to canonical form, rejecting generators outside `0..alphabet_size`.
    pub fn reduce(raw: &[Letter], alphabet_size: usize) -> Result<Self, WordError> {
        if let Some(bad) = raw.iter().find(|l| l.generator >= alphabet_size) {
            return Err(WordError::GeneratorOutOfRange { index: bad.generator, size: alphabet_size });
        }
        Ok(Word::from_letters(raw.iter().copied()))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables of the canonical form.
    pub fn syllable_length(&self) -> usize {
        self.letters.len()
    }

    /// Length as a product of single generators and inverses.
    pub fn letter_length(&self) -> u64 {
        self.letters.iter().map(|l| l.exponent.unsigned_abs()).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    pub fn check_alphabet(&self, size: usize) -> Result<(), WordError> {
        match self.max_generator() {
            Some(index) if index >= size => Err(WordError::GeneratorOutOfRange { index, size }),
            _ => Ok(()),
        }
    }

    pub fn mentions(&self, generator: usize) -> bool {
        self.letters.iter().any(|l| l.generator == generator)
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut stack = self.letters.clone();
        for &letter in &other.letters {
            push_merged(&mut stack, letter);
        }
        Word { letters: stack }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn pow(&self, exponent: i64) -> Word {
        if let [single] = self.letters.as_slice() {
            return Word::power(single.generator, single.exponent * exponent);
        }
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..exponent.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// `self^by = by^-1 self by`.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.inverse().multiply(self).multiply(by)
    }

    /// `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.inverse().multiply(&other.inverse()).multiply(self).multiply(other)
    }

    /// True unless the last letter cancels against the first when read cyclically.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(first), Some(last)) if self.letters.len() >= 2 => {
                !(first.generator == last.generator && first.exponent.signum() != last.exponent.signum())
            }
            _ => true,
        }
    }

    /// Strip matching inverse pairs from the two ends (a conjugate of `self`).
    pub fn cyclic_reduce(&self) -> Word {
        let mut letters = self.letters.clone();
        while letters.len() >= 2 {
            let first = letters[0];
            let last = letters[letters.len() - 1];
            if first.generator != last.generator || first.exponent.signum() == last.exponent.signum() {
                break;
            }
            let cancel = first.exponent.abs().min(last.exponent.abs());
            let n = letters.len();
            letters[0].exponent -= cancel * first.exponent.signum();
            letters[n - 1].exponent -= cancel * last.exponent.signum();
            if letters[n - 1].exponent == 0 {
                letters.pop();
            }
            if letters[0].exponent == 0 {
                letters.remove(0);
            }
        }
        Word::from_letters(letters)
    }

    /// Syllables of the cyclic word: cyclically reduced, with a shared first/last
    /// generator merged into one syllable.
    pub fn cyclic_syllables(&self) -> Vec<Letter> {
        let reduced = self.cyclic_reduce();
        let mut letters = reduced.letters;
        if letters.len() >= 2 && letters[0].generator == letters[letters.len() - 1].generator {
            let last = letters.pop().unwrap();
            letters[0].exponent += last.exponent;
        }
        letters
    }

    /// Canonical representative of the conjugacy class of `self` or its inverse:
    /// the least rotation of the cyclic syllable sequence of either.
    pub fn cyclic_canonical(&self) -> Vec<Letter> {
        let forward = least_rotation(&self.cyclic_syllables());
        let backward = least_rotation(&self.inverse().cyclic_syllables());
        forward.min(backward)
    }

    /// Free-group conjugacy test.
    pub fn is_conjugate_to(&self, other: &Word) -> bool {
        least_rotation(&self.cyclic_syllables()) == least_rotation(&other.cyclic_syllables())
    }

    /// Homomorphic image under `images`; every generator of `self` needs an image.
    pub fn substitute(&self, images: &BTreeMap<usize, Word>) -> Result<Word, WordError> {
        let mut out = Word::identity();
        for letter in &self.letters {
            let image = images.get(&letter.generator).ok_or(WordError::MissingImage(letter.generator))?;
            out = out.multiply(&image.pow(letter.exponent));
        }
        Ok(out)
    }

    /// Like [`Word::substitute`], but generators without an image are kept.
    pub fn substitute_partial(&self, images: &BTreeMap<usize, Word>) -> Word {
        let mut out = Word::identity();
        for letter in &self.letters {
            match images.get(&letter.generator) {
                Some(image) => out = out.multiply(&image.pow(letter.exponent)),
                None => out = out.multiply(&Word::power(letter.generator, letter.exponent)),
            }
        }
        out
    }

    /// Total exponent of each generator `0..alphabet_size`.
    pub fn exponent_vector(&self, alphabet_size: usize) -> Result<Vec<i64>, WordError> {
        self.check_alphabet(alphabet_size)?;
        let mut v = vec![0; alphabet_size];
        for l in &self.letters {
            v[l.generator] += l.exponent;
        }
        Ok(v)
    }

    /// Renames generators through `map`; generators absent from `map` are dropped.
    pub fn reindex(&self, map: &BTreeMap<usize, usize>) -> Word {
        Word::from_letters(
            self.letters
                .iter()
                .filter_map(|l| map.get(&l.generator).map(|&g| Letter::new(g, l.exponent))),
        )
    }

    /// Formats the word with the given generator names, e.g. `a1^2 b1^-1`.
    pub fn display_with<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> impl fmt::Display + 'a {
        NamedWord { word: self, names }
    }
}

fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
    (0..letters.len().max(1))
        .map(|i| {
            let mut r = letters[i.min(letters.len())..].to_vec();
            r.extend_from_slice(&letters[..i.min(letters.len())]);
            r
        })
        .min()
        .unwrap_or_default()
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::from_letters(iter)
    }
}

impl std::ops::Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

struct NamedWord<'a, S> {
    word: &'a Word,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for NamedWord<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match self.names.get(l.generator) {
                Some(name) => f.write_str(name.as_ref())?,
                None => write!(f, "x{}", l.generator)?,
            }
            if l.exponent != 1 {
                write!(f, "^{}", l.exponent)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{}", l.generator + 1)?;
            if l.exponent != 1 {
                write!(f, "^{}", l.exponent)?;
            }
        }
        Ok(())
    }
}
