//! Lefschetz fibrations from finite presentations.
//!
//! The crate compiles a finite presentation into an explicit positive Dehn-twist
//! factorization (a fiber sum of conjugates of a fixed relation `W`), reads off the
//! fundamental group presentation of the total space, simplifies it and compares it
//! with the input group through decidable invariants. It also tabulates the known
//! bounds on the genus of a group.

pub mod words;
pub mod presentation;
pub mod surface;
pub mod monodromy;
pub mod pi1;
pub mod loops;
pub mod bounds;
pub mod cli;

/// Step limits for Tietze simplification and homomorphism counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    pub tietze: u64,
    pub hom: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { tietze: presentation::DEFAULT_TIETZE_BUDGET, hom: presentation::DEFAULT_HOM_BUDGET }
    }
}
