use std::fmt;

use serde::Serialize;

use super::{count_homomorphisms, smith_normal_form, tietze_simplify, FiniteGroupTable, GroupPresentation, PresentationError};
use crate::Budgets;

/// `Z^free_rank + Z_{t_1} + ... + Z_{t_m}` with `t_1 | t_2 | ... | t_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianInvariants {
    pub fn new(free_rank: usize, mut torsion: Vec<i64>) -> Self {
        // normalise an arbitrary list of cyclic orders into invariant factors
        torsion.retain(|&t| t != 1);
        let diag: Vec<Vec<i64>> =
            (0..torsion.len()).map(|i| (0..torsion.len()).map(|j| if i == j { torsion[i] } else { 0 }).collect()).collect();
        let snf = smith_normal_form(&diag);
        let zeros = torsion.len() - snf.rank;
        AbelianInvariants {
            free_rank: free_rank + zeros,
            torsion: snf.invariant_factors.into_iter().filter(|&d| d > 1).collect(),
        }
    }

    pub fn trivial() -> Self {
        AbelianInvariants { free_rank: 0, torsion: Vec::new() }
    }

    /// Rank over the rationals.
    pub fn betti(&self) -> usize {
        self.free_rank
    }

    /// Minimal number of generators of the abelian group.
    pub fn minimal_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Smith normal form of the relation matrix.
pub fn abelianization(presentation: &GroupPresentation) -> AbelianInvariants {
    let snf = smith_normal_form(&presentation.relation_matrix());
    AbelianInvariants {
        free_rank: presentation.generator_count() - snf.rank,
        torsion: snf.invariant_factors.into_iter().filter(|&d| d > 1).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Consistent,
    Refuted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomCountRow {
    pub target: String,
    pub left: u64,
    pub right: u64,
}

/// Comparison of decidable invariants. `Consistent` never means isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoEvidence {
    pub abelianizations_agree: bool,
    pub left_abelianization: String,
    pub right_abelianization: String,
    pub hom_counts: Vec<HomCountRow>,
    pub verdict: Verdict,
    pub proof: bool,
}

/// Compares abelianizations and homomorphism counts into each target. Both sides are
/// Tietze-simplified before counting.
pub fn iso_evidence(
    left: &GroupPresentation,
    right: &GroupPresentation,
    targets: &[FiniteGroupTable],
    budgets: Budgets,
) -> Result<IsoEvidence, PresentationError> {
    let left = tietze_simplify(left, budgets.tietze).presentation;
    let right = tietze_simplify(right, budgets.tietze).presentation;
    let (la, ra) = (abelianization(&left), abelianization(&right));
    let abelianizations_agree = la == ra;
    let mut hom_counts = Vec::with_capacity(targets.len());
    for target in targets {
        hom_counts.push(HomCountRow {
            target: target.name().to_string(),
            left: count_homomorphisms(&left, target, budgets.hom)?,
            right: count_homomorphisms(&right, target, budgets.hom)?,
        });
    }
    let agree = abelianizations_agree && hom_counts.iter().all(|row| row.left == row.right);
    Ok(IsoEvidence {
        abelianizations_agree,
        left_abelianization: la.to_string(),
        right_abelianization: ra.to_string(),
        hom_counts,
        verdict: if agree { Verdict::Consistent } else { Verdict::Refuted },
        proof: false,
    })
}
