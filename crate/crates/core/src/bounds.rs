//! Bounds on the genus invariant `g(Γ)`, the least fiber genus of a Lefschetz fibration
//! with a section whose total space has fundamental group `Γ`, and the Kotschick ranges.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::presentation::{abelianization, AbelianInvariants, GroupPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters { family: String, reason: String },
    #[error("cannot parse family descriptor `{0}`")]
    Parse(String),
    #[error("csv export failed: {0}")]
    Csv(String),
}

fn invalid(family: &str, reason: impl Into<String>) -> BoundsError {
    BoundsError::InvalidParameters { family: family.to_string(), reason: reason.into() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupFamilyDescriptor {
    Trivial,
    ZxZ,
    /// `pi_1` of the closed orientable surface of genus `g`.
    Surface(usize),
    /// `Z^n + Z_{m_1} + ... + Z_{m_k}`.
    Abelian { n: usize, m: Vec<i64> },
    Free(usize),
    /// Free product `F_n * Z_m`.
    FreeTimesCyclic { n: usize, m: i64 },
    /// `pi_1` of the connected sum of `g` projective planes.
    Nonorientable(usize),
    Braid(usize),
    Sl2z,
    Presentation(GroupPresentation),
}

impl GroupFamilyDescriptor {
    pub fn family(&self) -> &'static str {
        match self {
            GroupFamilyDescriptor::Trivial => "trivial",
            GroupFamilyDescriptor::ZxZ => "zxz",
            GroupFamilyDescriptor::Surface(_) => "surface",
            GroupFamilyDescriptor::Abelian { .. } => "abelian",
            GroupFamilyDescriptor::Free(_) => "free",
            GroupFamilyDescriptor::FreeTimesCyclic { .. } => "free_times_cyclic",
            GroupFamilyDescriptor::Nonorientable(_) => "nonorientable",
            GroupFamilyDescriptor::Braid(_) => "braid",
            GroupFamilyDescriptor::Sl2z => "sl2z",
            GroupFamilyDescriptor::Presentation(_) => "presentation",
        }
    }

    pub fn params(&self) -> String {
        match self {
            GroupFamilyDescriptor::Trivial | GroupFamilyDescriptor::ZxZ | GroupFamilyDescriptor::Sl2z => String::new(),
            GroupFamilyDescriptor::Surface(g) | GroupFamilyDescriptor::Nonorientable(g) => format!("g={g}"),
            GroupFamilyDescriptor::Free(n) | GroupFamilyDescriptor::Braid(n) => format!("n={n}"),
            GroupFamilyDescriptor::Abelian { n, m } => {
                let m: Vec<String> = m.iter().map(i64::to_string).collect();
                format!("n={n};m=[{}]", m.join(","))
            }
            GroupFamilyDescriptor::FreeTimesCyclic { n, m } => format!("n={n};m={m}"),
            GroupFamilyDescriptor::Presentation(p) => p.to_string(),
        }
    }
}

/// Accepts `name` or `name:arg:arg`, e.g. `sl2z`, `surface:5`, `abelian:2:2,3`,
/// `free_times_cyclic:2:3`.
impl FromStr for GroupFamilyDescriptor {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || BoundsError::Parse(s.to_string());
        let mut parts = s.trim().split(':');
        let name = parts.next().ok_or_else(err)?;
        let args: Vec<&str> = parts.collect();
        let num = |i: usize| -> Result<usize, BoundsError> { args.get(i).ok_or_else(err)?.trim().parse().map_err(|_| err()) };
        let arity = |n: usize| if args.len() == n { Ok(()) } else { Err(err()) };
        let d = match name {
            "trivial" => arity(0).map(|_| GroupFamilyDescriptor::Trivial)?,
            "zxz" => arity(0).map(|_| GroupFamilyDescriptor::ZxZ)?,
            "sl2z" => arity(0).map(|_| GroupFamilyDescriptor::Sl2z)?,
            "surface" => arity(1).and(num(0)).map(GroupFamilyDescriptor::Surface)?,
            "free" => arity(1).and(num(0)).map(GroupFamilyDescriptor::Free)?,
            "braid" => arity(1).and(num(0)).map(GroupFamilyDescriptor::Braid)?,
            "nonorientable" => arity(1).and(num(0)).map(GroupFamilyDescriptor::Nonorientable)?,
            "free_times_cyclic" => {
                arity(2)?;
                GroupFamilyDescriptor::FreeTimesCyclic { n: num(0)?, m: num(1)? as i64 }
            }
            "abelian" => {
                if args.is_empty() || args.len() > 2 {
                    return Err(err());
                }
                let m = match args.get(1).map(|s| s.trim()) {
                    None | Some("") => Vec::new(),
                    Some(list) => list.split(',').map(|x| x.trim().parse().map_err(|_| err())).collect::<Result<_, _>>()?,
                };
                GroupFamilyDescriptor::Abelian { n: num(0)?, m }
            }
            _ => return Err(err()),
        };
        Ok(d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusBounds {
    pub lower: u64,
    pub upper: Option<u64>,
    pub exact: Option<u64>,
    pub notes: Vec<String>,
}

impl GenusBounds {
    fn exact(value: u64, note: &str) -> Self {
        GenusBounds { lower: value, upper: Some(value), exact: Some(value), notes: vec![note.to_string()] }
    }

    fn interval(lower: u64, upper: u64, notes: &[&str]) -> Self {
        GenusBounds { lower, upper: Some(upper), exact: None, notes: notes.iter().map(|s| s.to_string()).collect() }
    }
}

/// `n + l - k` of the cyclically reduced presentation.
pub fn d_of_presentation(p: &GroupPresentation) -> i64 {
    p.cyclically_reduced().d()
}

fn ceil_half(x: u64) -> u64 {
    x.div_ceil(2)
}

/// Exact values for small abelian groups, keyed on their invariants.
fn small_abelian(inv: &AbelianInvariants) -> Option<GenusBounds> {
    match (inv.free_rank, inv.torsion.len()) {
        (0, 0) => Some(GenusBounds::exact(0, "only the trivial group has genus 0")),
        (2, 0) => Some(GenusBounds::exact(1, "Z + Z is the torus group, the only group of genus 1")),
        (r, t) if r + t <= 2 => Some(GenusBounds::exact(2, "genus-2 fibrations X_W(1, ...) conjugated by twists along a1, b1")),
        _ => None,
    }
}

pub fn genus_bounds(desc: &GroupFamilyDescriptor) -> Result<GenusBounds, BoundsError> {
    let name = desc.family();
    Ok(match desc {
        GroupFamilyDescriptor::Trivial => GenusBounds::exact(0, "only the trivial group has genus 0"),
        GroupFamilyDescriptor::ZxZ => GenusBounds::exact(1, "Z + Z is the torus group, the only group of genus 1"),
        GroupFamilyDescriptor::Surface(g) => GenusBounds::exact(*g as u64, "surface group: product fibration, and no epimorphism from a smaller surface group"),
        GroupFamilyDescriptor::Abelian { n, m } => {
            if let Some(bad) = m.iter().find(|&&x| x < 2) {
                return Err(invalid(name, format!("cyclic orders must be at least 2, got {bad}")));
            }
            let inv = AbelianInvariants::new(*n, m.clone());
            if let Some(b) = small_abelian(&inv) {
                return Ok(b);
            }
            let k = m.len() as u64;
            let generators = inv.minimal_generators() as u64;
            GenusBounds::interval(
                ceil_half(generators + 1),
                2 * *n as u64 + 2 * k + 1,
                &[
                    "lower: (m + 1)/2 with m the minimal generator count, strict since the group is not a surface group",
                    "upper: commutator loops R_ij and torsion loops T_s on genus 2n + 2k + 1",
                ],
            )
        }
        GroupFamilyDescriptor::Free(n) => match n {
            0 => GenusBounds::exact(0, "only the trivial group has genus 0"),
            1 => small_abelian(&AbelianInvariants::new(1, vec![])).expect("Z is small"),
            n => GenusBounds::interval(*n as u64, 2 * *n as u64, &["lower: an epimorphism from pi_1(Sigma_g) onto F_n forces n <= g", "upper: 2d with d = n"]),
        },
        GroupFamilyDescriptor::FreeTimesCyclic { n, m } => {
            if *m < 2 {
                return Err(invalid(name, "m must be at least 2"));
            }
            GenusBounds::interval(
                *n as u64 + 1,
                2 * *n as u64 + 2,
                &["lower: index-m free subgroup of rank mn pulled back to an m-sheeted cover", "upper: X_W(1, b_1, ..., b_{2n+2}, a_1^m)"],
            )
        }
        GroupFamilyDescriptor::Nonorientable(g) => match g {
            0 => return Err(invalid(name, "genus must be at least 1")),
            1 => GenusBounds::exact(2, "pi_1(N_1) = Z_2"),
            g => GenusBounds::interval(
                ceil_half(*g as u64 + 1),
                2 * *g as u64,
                &["lower: (m + 1)/2 with m = g generators", "upper: loop a_1^2 ... a_g^2 (b_1 ... b_g)^-1 on genus 2g"],
            ),
        },
        GroupFamilyDescriptor::Braid(n) => match n {
            0 => return Err(invalid(name, "at least one strand is required")),
            1 => GenusBounds::exact(0, "B_1 is trivial"),
            2 => GenusBounds::exact(2, "B_2 = Z"),
            n => GenusBounds::interval(2, 2 * *n as u64 + 1, &["lower: stated without derivation", "upper: commutator and braid loops on genus 2n + 1"]),
        },
        GroupFamilyDescriptor::Sl2z => GenusBounds::interval(
            2,
            4,
            &["lower: not a surface group and not Z + Z", "upper: genus 4 loop a1^2 a2^3 b2^-1 b1^-1, improving the general bound 2d = 6"],
        ),
        GroupFamilyDescriptor::Presentation(p) => {
            let inv = abelianization(p);
            let d = d_of_presentation(p).max(0) as u64;
            let mut lower = ceil_half(inv.betti() as u64).max(ceil_half(inv.minimal_generators() as u64));
            let mut notes = vec![format!(
                "lower: max(ceil(b1/2), ceil(m/2)) with b1 = {} and m >= {} generators of the abelianization",
                inv.betti(),
                inv.minimal_generators()
            )];
            // genus 0 and 1 are realized only by the trivial group and Z + Z
            if !inv.is_trivial() && inv != AbelianInvariants::new(2, vec![]) && lower < 2 {
                lower = 2;
                notes.push(format!("lower: abelianization {inv} rules out the trivial group and Z + Z"));
            }
            notes.push(format!("upper: 2d = {} for this presentation", 2 * d));
            GenusBounds { lower, upper: Some((2 * d).max(lower)), exact: None, notes }
        }
    })
}

/// Ranges for Kotschick's `q(Γ) = inf chi` and `p(Γ) = inf (chi - |sigma|)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KotschickBounds {
    pub q_lower: i64,
    pub q_upper: i64,
    /// `q_lower <= q_upper`; false means the supplied `d` is too large to be informative.
    pub q_feasible: bool,
    pub p_lower: i64,
    pub p_lower_from_betti: i64,
    /// `2 - 4 g_upper`, valid because `2 - 4g(Γ) <= p` and `g(Γ) <= g_upper`.
    pub p_lower_from_genus: Option<i64>,
    pub p_upper: i64,
    pub notes: Vec<String>,
}

pub fn kotschick_bounds(b1: u64, b2: u64, d: i64, genus: &GenusBounds) -> KotschickBounds {
    let (b1, b2) = (b1 as i64, b2 as i64);
    let q_lower = 2 - 2 * b1 + b2;
    let q_upper = 2 * (1 - d);
    let p_lower_from_betti = 2 - 2 * b1;
    let p_lower_from_genus = genus.upper.map(|g| 2 - 4 * g as i64);
    let p_lower = p_lower_from_genus.map_or(p_lower_from_betti, |x| x.max(p_lower_from_betti));
    let mut notes = vec![
        "q in [2 - 2b1 + b2, 2(1 - d)]".to_string(),
        "p >= 2 - 2b1 and p >= 2 - 4g; the genus term uses the genus upper bound".to_string(),
    ];
    let q_feasible = q_lower <= q_upper;
    if !q_feasible {
        notes.push(format!("empty q range: d = {d} is too large for these Betti numbers, try a shorter presentation"));
    }
    KotschickBounds { q_lower, q_upper, q_feasible, p_lower, p_lower_from_betti, p_lower_from_genus, p_upper: q_upper, notes }
}

/// One row of the bounds table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub family: String,
    pub params: String,
    pub lower: u64,
    pub upper: Option<u64>,
    pub exact: Option<u64>,
    pub note: String,
}

impl BoundsRow {
    pub fn new(desc: &GroupFamilyDescriptor) -> Result<Self, BoundsError> {
        let b = genus_bounds(desc)?;
        Ok(BoundsRow {
            family: desc.family().to_string(),
            params: desc.params(),
            lower: b.lower,
            upper: b.upper,
            exact: b.exact,
            note: b.notes.join(" | "),
        })
    }
}

impl fmt::Display for BoundsRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let upper = self.upper.map_or("?".to_string(), |u| u.to_string());
        if self.params.is_empty() {
            write!(f, "{}", self.family)?;
        } else {
            write!(f, "{}({})", self.family, self.params)?;
        }
        match self.exact {
            Some(e) => write!(f, ": g = {e}"),
            None => write!(f, ": {} <= g <= {upper}", self.lower),
        }
    }
}

/// The standard table: the exact small groups and one instance of each family.
pub fn standard_families() -> Vec<GroupFamilyDescriptor> {
    use GroupFamilyDescriptor::*;
    vec![
        Trivial,
        ZxZ,
        Abelian { n: 1, m: vec![] },
        Abelian { n: 1, m: vec![3] },
        Abelian { n: 0, m: vec![2, 4] },
        Abelian { n: 0, m: vec![5] },
        Surface(3),
        Nonorientable(1),
        Free(3),
        FreeTimesCyclic { n: 2, m: 3 },
        Abelian { n: 2, m: vec![2] },
        Nonorientable(4),
        Braid(4),
        Sl2z,
    ]
}

pub fn bounds_table(families: &[GroupFamilyDescriptor]) -> Result<Vec<BoundsRow>, BoundsError> {
    families.iter().map(BoundsRow::new).collect()
}

pub fn table_to_csv(rows: &[BoundsRow]) -> Result<String, BoundsError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).map_err(|e| BoundsError::Csv(e.to_string()))?;
    }
    let bytes = writer.into_inner().map_err(|e| BoundsError::Csv(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| BoundsError::Csv(e.to_string()))
}

pub fn table_to_json(rows: &[BoundsRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows are serializable")
}
