//! Small finite groups as multiplication tables, and exact homomorphism counts into them.

use std::collections::{BTreeMap, VecDeque};

use super::{GroupPresentation, PresentationError};
use crate::words::Word;

pub const DEFAULT_HOM_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    name: String,
    product: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroupTable {
    /// Validates closure, associativity, identity and inverses of `product`.
    pub fn from_table(name: &str, product: Vec<Vec<usize>>) -> Result<Self, PresentationError> {
        let invalid = |reason: &str| PresentationError::InvalidTable { name: name.to_string(), reason: reason.to_string() };
        let n = product.len();
        if n == 0 {
            return Err(invalid("empty table"));
        }
        if product.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(invalid("table is not closed"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| product[e][x] == x && product[x][e] == x))
            .ok_or_else(|| invalid("no identity element"))?;
        let mut inverse = vec![0; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| product[x][y] == identity && product[y][x] == identity)
                .ok_or_else(|| invalid("element without inverse"))?;
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if product[product[x][y]][z] != product[x][product[y][z]] {
                        return Err(invalid("not associative"));
                    }
                }
            }
        }
        Ok(FiniteGroupTable { name: name.to_string(), product, identity, inverse })
    }

    pub fn cyclic(n: usize) -> Self {
        let product = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroupTable::from_table(&format!("Z{n}"), product).expect("cyclic table is a group")
    }

    /// Closure of the given permutations (images of `0..degree`) under composition.
    pub fn from_permutations(name: &str, generators: &[Vec<usize>]) -> Result<Self, PresentationError> {
        let degree = generators.first().map_or(0, Vec::len);
        let id: Vec<usize> = (0..degree).collect();
        let mut elements: Vec<Vec<usize>> = vec![id.clone()];
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let next: Vec<usize> = elements[i].iter().map(|&p| g[p]).collect();
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        // (x*y)(p) = y(x(p)): apply x first
        let product = elements
            .iter()
            .map(|x| elements.iter().map(|y| index[&x.iter().map(|&p| y[p]).collect::<Vec<_>>()]).collect())
            .collect();
        FiniteGroupTable::from_table(name, product)
    }

    /// One of Z2..Z6, S3, S4, A4, A5, D4 (case-insensitive).
    pub fn builtin(name: &str) -> Result<Self, PresentationError> {
        let upper = name.trim().to_ascii_uppercase();
        let table = match upper.as_str() {
            "Z2" | "Z3" | "Z4" | "Z5" | "Z6" => FiniteGroupTable::cyclic(upper[1..].parse().unwrap()),
            "S3" => FiniteGroupTable::from_permutations("S3", &[vec![1, 0, 2], vec![1, 2, 0]])?,
            "S4" => FiniteGroupTable::from_permutations("S4", &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]])?,
            "A4" => FiniteGroupTable::from_permutations("A4", &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])?,
            "A5" => FiniteGroupTable::from_permutations("A5", &[vec![1, 2, 0, 3, 4], vec![1, 2, 3, 4, 0]])?,
            "D4" => FiniteGroupTable::from_permutations("D4", &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])?,
            _ => return Err(PresentationError::UnknownTarget(name.to_string())),
        };
        Ok(table)
    }

    pub const BUILTIN_NAMES: [&'static str; 10] = ["Z2", "Z3", "Z4", "Z5", "Z6", "S3", "S4", "A4", "A5", "D4"];

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.product.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.product[x][y]
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn pow(&self, x: usize, exponent: i64) -> usize {
        let mut base = if exponent < 0 { self.inverse[x] } else { x };
        let mut e = exponent.unsigned_abs();
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Value of `word` when generator `i` is sent to `images[i]`.
    pub fn evaluate(&self, word: &Word, images: &[usize]) -> usize {
        word.letters()
            .iter()
            .fold(self.identity, |acc, l| self.mul(acc, self.pow(images[l.generator], l.exponent)))
    }
}

/// Exact number of homomorphisms `P -> G`, by backtracking over generator images.
/// Each relator check counts against `budget`; exceeding it is an error.
pub fn count_homomorphisms(
    presentation: &GroupPresentation,
    target: &FiniteGroupTable,
    budget: u64,
) -> Result<u64, PresentationError> {
    let n = presentation.generator_count();
    // relators grouped by the last generator they mention
    let mut checks: Vec<Vec<&Word>> = vec![Vec::new(); n];
    for r in presentation.relators() {
        if let Some(last) = r.max_generator() {
            checks[last].push(r);
        }
    }
    let mut images = vec![target.identity(); n];
    let mut evaluations = 0u64;
    let mut count = 0u64;
    let exceeded = || PresentationError::BudgetExceeded { target: target.name().to_string(), budget };

    fn descend(
        depth: usize,
        images: &mut Vec<usize>,
        checks: &[Vec<&Word>],
        target: &FiniteGroupTable,
        evaluations: &mut u64,
        budget: u64,
        count: &mut u64,
    ) -> bool {
        if depth == images.len() {
            *count += 1;
            return true;
        }
        for g in 0..target.order() {
            images[depth] = g;
            let mut ok = true;
            for r in &checks[depth] {
                *evaluations += 1;
                if *evaluations > budget {
                    return false;
                }
                if target.evaluate(r, images) != target.identity() {
                    ok = false;
                    break;
                }
            }
            if ok && !descend(depth + 1, images, checks, target, evaluations, budget, count) {
                return false;
            }
        }
        true
    }

    if descend(0, &mut images, &checks, target, &mut evaluations, budget, &mut count) {
        Ok(count)
    } else {
        Err(exceeded())
    }
}
