//! Tietze simplification restricted to four moves that never grow the search space:
//! deleting trivial relators, eliminating a generator that a relator can be solved for,
//! free and cyclic reduction, and deleting relators equal up to rotation and inversion.

use std::collections::{BTreeMap, BTreeSet};

use super::GroupPresentation;
use crate::words::Word;

pub const DEFAULT_TIETZE_BUDGET: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TietzeOutcome {
    pub presentation: GroupPresentation,
    pub steps: u64,
    /// Set when the budget ran out; `presentation` is then the best so far.
    pub exhausted: bool,
}

/// A relator that can be solved for one of its generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Elimination {
    length: u64,
    generator: usize,
    relator: usize,
}

fn find_elimination(relators: &[Word]) -> Option<Elimination> {
    relators
        .iter()
        .enumerate()
        .flat_map(|(relator, r)| {
            r.letters()
                .iter()
                .filter(move |l| l.exponent.abs() == 1 && r.letters().iter().filter(|m| m.generator == l.generator).count() == 1)
                .map(move |l| Elimination { length: r.letter_length(), generator: l.generator, relator })
        })
        .min()
}

/// Solves `relator = 1` for `generator`, which must occur exactly once with exponent +-1.
fn solve_for(relator: &Word, generator: usize) -> Word {
    let letters = relator.letters();
    let pos = letters.iter().position(|l| l.generator == generator).expect("generator occurs in relator");
    let exponent = letters[pos].exponent;
    // rotate to x^e w, so x^e = w^-1
    let rest: Word = letters[pos + 1..].iter().chain(&letters[..pos]).copied().collect();
    if exponent == 1 { rest.inverse() } else { rest }
}

pub fn tietze_simplify(presentation: &GroupPresentation, budget: u64) -> TietzeOutcome {
    let mut names: Vec<String> = presentation.generator_names().to_vec();
    let mut relators: Vec<Word> = presentation.relators().to_vec();
    let mut steps = 0u64;
    let mut exhausted = false;

    'outer: loop {
        // free/cyclic reduction, empty and duplicate deletion
        let mut seen = BTreeSet::new();
        let mut kept = Vec::with_capacity(relators.len());
        for r in relators.drain(..) {
            let reduced = r.cyclic_reduce();
            let changed = reduced != r;
            let drop = reduced.is_identity() || !seen.insert(reduced.cyclic_canonical());
            if changed || drop {
                if steps >= budget {
                    exhausted = true;
                    kept.push(r);
                    continue;
                }
                steps += 1;
            }
            if !drop {
                kept.push(reduced);
            }
        }
        relators = kept;
        if exhausted {
            break;
        }

        let Some(elim) = find_elimination(&relators) else { break };
        if steps >= budget {
            exhausted = true;
            break 'outer;
        }
        steps += 1;
        let solved = solve_for(&relators[elim.relator], elim.generator);
        relators.remove(elim.relator);
        let images: BTreeMap<usize, Word> = BTreeMap::from([(elim.generator, solved)]);
        let renumber: BTreeMap<usize, usize> =
            (0..names.len()).filter(|&g| g != elim.generator).enumerate().map(|(new, old)| (old, new)).collect();
        relators = relators.iter().map(|r| r.substitute_partial(&images).reindex(&renumber)).collect();
        names.remove(elim.generator);
    }

    let presentation = GroupPresentation::new(names, relators).expect("simplification preserves validity");
    TietzeOutcome { presentation, steps, exhausted }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn simplify(text: &str) -> GroupPresentation {
        tietze_simplify(&parse_presentation(text).unwrap(), DEFAULT_TIETZE_BUDGET).presentation
    }

    #[test]
    fn kills_trivial_generator() {
        assert_eq!(simplify("a, b | b, a b a^-1 b^-1").to_string(), "a |");
    }

    #[test]
    fn trivial_group() {
        let p = simplify("x | x");
        assert_eq!(p.generator_count(), 0);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn eliminates_shortest_relator_first() {
        let p = parse_presentation("x, y, z | x y z x^4, x^2 y, x z").unwrap();
        let e = find_elimination(p.relators()).unwrap();
        assert_eq!(e, Elimination { length: 2, generator: 0, relator: 2 });
        let e = find_elimination(&p.relators()[..2]).unwrap();
        assert_eq!(e, Elimination { length: 3, generator: 1, relator: 1 });
        // y = x^-2, then x^-1 z x^4 ~ z x^3 gives z = x^-3
        assert_eq!(simplify("x, y, z | x y z x^4, x^2 y").to_string(), "x |");
        assert_eq!(solve_for(&p.relators()[1], 1), Word::power(0, -2));
    }

    #[test]
    fn duplicates_up_to_rotation_and_inversion() {
        let p = simplify("x, y | x^2 y^2, y^2 x^2, x^-2 y^-2, y x^2 y");
        assert_eq!(p.relators().len(), 1);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let p = parse_presentation("a, b, c | a, b, c").unwrap();
        let out = tietze_simplify(&p, 1);
        assert!(out.exhausted);
        assert_eq!(out.steps, 1);
        assert_eq!(out.presentation.generator_count(), 2);
    }

    #[test]
    fn keeps_unsolvable_relators() {
        let p = simplify("x, y | x^2 y^3, x^4");
        assert_eq!(p.to_string(), "x, y | x^2 y^3, x^4");
    }
}
