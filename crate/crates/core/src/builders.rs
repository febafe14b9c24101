//! Minimal proper labelings for every `k >= 7`.
//!
//! `N(k)` is the least positive integer with `6 | N·k`. Any tiling by
//! triangles of angle `2π/k` with `n` vertices has `6 | n·k`, so a proper
//! labeling of `N(k)` `k`-gons is minimal. One base labeling per residue
//! class of `k` mod 12 is grown by rewrites until the polygons reach size `k`.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::bases;
use crate::error::{Error, Result};
use crate::labeling::{oriented, Label, Labeling};
use crate::rewrite::{self, apply_a, apply_b, apply_c, LongSide, TriangleSite};
use crate::search::{search_labelings, SearchBudget};
use crate::surface::{double_cover, glue};

/// Smallest `N >= 1` with `6 | N·k`.
pub fn n_min(k: u32) -> Result<u32> {
    if k < 7 {
        return Err(Error::KTooSmall(k));
    }
    Ok((1..=6)
        .find(|n| (n * k) % 6 == 0)
        .expect("N = 6 always works"))
}

/// Residue classes of `k` mod 12, one construction each.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    /// k ≡ 1, 5, 7, 11: six polygons from six heptagons.
    One,
    /// k ≡ 2, 10: three polygons from three decagons, oriented throughout.
    Two,
    /// k ≡ 3, 9: two polygons from two 9-gons.
    Three,
    /// k ≡ 4, 8: three polygons from three octagons.
    Four,
    /// k ≡ 6: one polygon from an 18-gon, oriented throughout.
    Five,
    /// k ≡ 0: one polygon from a 12-gon.
    Six,
}

impl Case {
    pub const ALL: [Case; 6] = [
        Case::One,
        Case::Two,
        Case::Three,
        Case::Four,
        Case::Five,
        Case::Six,
    ];

    pub fn of(k: u32) -> Case {
        match k % 12 {
            1 | 5 | 7 | 11 => Case::One,
            2 | 10 => Case::Two,
            3 | 9 => Case::Three,
            4 | 8 => Case::Four,
            6 => Case::Five,
            _ => Case::Six,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Case::One => 1,
            Case::Two => 2,
            Case::Three => 3,
            Case::Four => 4,
            Case::Five => 5,
            Case::Six => 6,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {}", self.number())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Extension {
    /// Alternate (b) and (a) on two disjoint site families: +4, then +2.
    AlternateBA,
    /// Operation (b) on one site family; +4 per polygon per round, or +12
    /// when all three paths lie in a single polygon.
    RepeatB,
    /// Two (c) applications with opposite long sides: +6 per polygon.
    PairedC,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrientedRule {
    /// The construction is oriented at every step.
    SameLabeling,
    /// Orientation double cover of a minimal non-orientable labeling.
    DoubleCover,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CasePlan {
    pub case: Case,
    pub residues: &'static [u32],
    pub n: u32,
    pub base_k: u32,
    pub extension: Extension,
    /// Polygon size gained per full round.
    pub increment: u32,
    pub oriented_rule: OrientedRule,
}

pub fn plan(case: Case) -> CasePlan {
    let (residues, n, base_k, extension, increment, oriented_rule): (
        &'static [u32],
        _,
        _,
        _,
        _,
        _,
    ) = match case {
        Case::One => (
            &[1, 5, 7, 11],
            6,
            7,
            Extension::AlternateBA,
            6,
            OrientedRule::DoubleCover,
        ),
        Case::Two => (
            &[2, 10],
            3,
            10,
            Extension::RepeatB,
            4,
            OrientedRule::SameLabeling,
        ),
        Case::Three => (
            &[3, 9],
            2,
            9,
            Extension::PairedC,
            6,
            OrientedRule::DoubleCover,
        ),
        Case::Four => (
            &[4, 8],
            3,
            8,
            Extension::RepeatB,
            4,
            OrientedRule::DoubleCover,
        ),
        Case::Five => (
            &[6],
            1,
            18,
            Extension::RepeatB,
            12,
            OrientedRule::SameLabeling,
        ),
        Case::Six => (
            &[0],
            1,
            12,
            Extension::RepeatB,
            12,
            OrientedRule::DoubleCover,
        ),
    };
    CasePlan {
        case,
        residues,
        n,
        base_k,
        extension,
        increment,
        oriented_rule,
    }
}

/// A correction applied to an embedded base labeling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub case: Case,
    /// 1-based position in the polygon.
    pub position: usize,
    pub printed: Label,
    pub corrected: Label,
    pub note: &'static str,
}

pub const ERRATA: &[Erratum] = &[Erratum {
    case: Case::Five,
    position: 11,
    printed: 7,
    corrected: 1,
    note: "printed sequence uses label 7 once and label 1 twice",
}];

pub fn base_labeling(case: Case) -> Labeling {
    match case {
        Case::One => bases::six_heptagons(),
        Case::Two => bases::three_decagons(),
        Case::Three => bases::two_nonagons(),
        Case::Four => bases::three_octagons(),
        Case::Five => bases::eighteen_gon(),
        Case::Six => bases::twelve_gon(),
    }
}

fn rows(rows: &[&[Label]]) -> Labeling {
    Labeling::new(rows.iter().map(|r| r.to_vec()).collect())
        .expect("embedded labeling is well formed")
}

/// Fold-free three octagons; every label's site spans all three polygons.
/// Found by exhaustive search.
pub fn fold_free_octagons() -> Labeling {
    rows(&[
        &[1, 2, 3, 4, 5, 6, 7, 8],
        &[1, 2, 4, 3, 6, 5, 8, 7],
        &[1, 7, 6, 3, 2, 4, 5, 8],
    ])
}

/// Fold-free pair of 15-gons. No fold-free pair of 9-gons exists; found by
/// exhaustive search. Sites at 2 and 5 split their paths 2/1 and 1/2.
pub fn fold_free_fifteen_gons() -> Labeling {
    rows(&[
        &[1, 2, 3, 1, 2, 4, 1, 3, 5, 6, 7, 8, 9, 10, 4],
        &[2, 3, 5, 7, 6, 9, 8, 10, 9, 6, 5, 7, 8, 10, 4],
    ])
}

/// Oriented four 9-gons with χ = -4. Found by exhaustive search.
pub fn oriented_nine_gons() -> Labeling {
    rows(&[
        &[1, 2, 3, 1, 4, 5, 6, 7, 4],
        &[1, 3, 5, 4, 7, 8, 9, 10, 2],
        &[2, 10, 11, 9, 8, 12, 6, 5, 3],
        &[6, 12, 11, 10, 9, 11, 12, 8, 7],
    ])
}

/// `n·(1 - k/6)`, exactly.
pub fn predicted_chi(k: u32, n: u32) -> Ratio<i64> {
    Ratio::new(n as i64 * (6 - k as i64), 6)
}

/// Whether `t` triangles of angle `2π/k` can tile a closed hyperbolic surface.
pub fn eek_admissible(t: u64, k: u32) -> bool {
    t % 2 == 0 && (3 * t) % k as u64 == 0
}

/// A site family: the center label to prefer and the polygons its three
/// paths must occupy (as a sorted multiset).
struct Family {
    center: Label,
    polygons: [usize; 3],
}

fn sorted3(mut p: [usize; 3]) -> [usize; 3] {
    p.sort_unstable();
    p
}

/// The preferred site of a family, else any site on the same polygons.
fn family_site(labeling: &Labeling, family: &Family) -> Result<TriangleSite> {
    if let Some(site) = rewrite::site_at(labeling, family.center) {
        if sorted3(site.polygons()) == family.polygons {
            return Ok(site);
        }
    }
    rewrite::triangle_sites(labeling)?
        .into_iter()
        .find(|s| sorted3(s.polygons()) == family.polygons)
        .ok_or_else(|| Error::Inconsistent(format!("no site on polygons {:?}", family.polygons)))
}

#[derive(Clone, Copy)]
enum TriangleOp {
    A,
    B,
}

/// Applies one operation at the family's site and moves the family center:
/// after (a) it stays at `w`, after (b) it moves to the new label `β`.
fn step(labeling: &Labeling, family: &mut Family, op: TriangleOp) -> Result<Labeling> {
    let site = family_site(labeling, family)?;
    let beta = labeling.m() + 2;
    match op {
        TriangleOp::A => {
            family.center = site.w;
            apply_a(labeling, &site)
        }
        TriangleOp::B => {
            family.center = beta;
            apply_b(labeling, &site)
        }
    }
}

fn grow_triangle_families(
    base: Labeling,
    families: &mut [Family],
    ops: impl Iterator<Item = TriangleOp>,
    k: usize,
) -> Result<Labeling> {
    let mut current = base;
    for op in ops {
        if current.polygon(0).len() >= k {
            break;
        }
        for fam in families.iter_mut() {
            current = step(&current, fam, op)?;
        }
    }
    Ok(current)
}

fn grow_paired_c(base: Labeling, anchor: Label, partner: Label, k: usize) -> Result<Labeling> {
    let mut current = base;
    let mut partner = partner;
    while current.polygon(0).len() < k {
        for long_polygon in [0usize, 1] {
            let site = rewrite::pair_site_for(&current, anchor, partner)?
                .ok_or_else(|| Error::Inconsistent(format!("no pair {{{anchor}, {partner}}}")))?;
            if site.e.polygon == site.f.polygon {
                return Err(Error::Inconsistent(format!(
                    "pair {{{anchor}, {partner}}} lies in one polygon"
                )));
            }
            let side = if site.e.polygon == long_polygon {
                LongSide::E
            } else {
                LongSide::F
            };
            let alpha = current.m() + 1;
            current = apply_c(&current, &site, side)?;
            partner = alpha;
        }
    }
    Ok(current)
}

/// Follows the case plan for `k` without any fallback.
fn construct(k: u32) -> Result<Labeling> {
    let case = Case::of(k);
    let base = base_labeling(case);
    let target = k as usize;
    match case {
        Case::One => {
            let mut families = [
                Family {
                    center: 1,
                    polygons: [0, 1, 2],
                },
                Family {
                    center: 10,
                    polygons: [3, 4, 5],
                },
            ];
            let ops = [TriangleOp::B, TriangleOp::A].into_iter().cycle();
            grow_triangle_families(base, &mut families, ops, target)
        }
        Case::Two => {
            let mut f = [Family {
                center: 10,
                polygons: [0, 1, 2],
            }];
            grow_triangle_families(base, &mut f, std::iter::repeat(TriangleOp::B), target)
        }
        Case::Four => {
            let mut f = [Family {
                center: 8,
                polygons: [0, 1, 2],
            }];
            grow_triangle_families(base, &mut f, std::iter::repeat(TriangleOp::B), target)
        }
        Case::Five | Case::Six => {
            let mut f = [Family {
                center: 1,
                polygons: [0, 0, 0],
            }];
            grow_triangle_families(base, &mut f, std::iter::repeat(TriangleOp::B), target)
        }
        Case::Three => grow_paired_c(base, 4, 5, target),
    }
}

/// Fold-free minimal labelings for Cases 3 (`k >= 15`) and 4, whose
/// orientation covers are again proper labelings.
fn construct_fold_free(k: u32) -> Result<Labeling> {
    let target = k as usize;
    match Case::of(k) {
        Case::Three if k >= 15 => {
            let mut families = [
                Family {
                    center: 2,
                    polygons: [0, 0, 1],
                },
                Family {
                    center: 5,
                    polygons: [0, 1, 1],
                },
            ];
            let ops = std::iter::repeat(TriangleOp::A);
            grow_triangle_families(fold_free_fifteen_gons(), &mut families, ops, target)
        }
        Case::Four => {
            let mut f = [Family {
                center: 1,
                polygons: [0, 1, 2],
            }];
            let ops = std::iter::repeat(TriangleOp::B);
            grow_triangle_families(fold_free_octagons(), &mut f, ops, target)
        }
        case => Err(Error::Inconsistent(format!(
            "no fold-free construction for {case}, k = {k}"
        ))),
    }
}

fn check_minimal(labeling: &Labeling, k: u32, n: u32) -> Result<()> {
    if labeling.n() != n as usize || labeling.regular_size() != Some(k as usize) {
        return Err(Error::Inconsistent(format!(
            "expected {n} polygons of size {k}, got sizes {:?}",
            labeling.sizes()
        )));
    }
    let chi = glue(labeling)?.chi;
    if Ratio::from_integer(chi) != predicted_chi(k, n) {
        return Err(Error::Inconsistent(format!(
            "chi = {chi}, expected {}",
            predicted_chi(k, n)
        )));
    }
    Ok(())
}

/// A proper labeling of `N(k)` `k`-gons.
pub fn build(k: u32) -> Result<Labeling> {
    let n = n_min(k)?;
    match construct(k).and_then(|l| check_minimal(&l, k, n).map(|_| l)) {
        Ok(l) => Ok(l),
        Err(planned) => fallback_search(k, n, false, &planned),
    }
}

fn fallback_search(k: u32, n: u32, oriented_only: bool, planned: &Error) -> Result<Labeling> {
    let incomplete = |reason: String| Error::ConstructionIncomplete { k, reason };
    let outcome = search_labelings(
        k as usize,
        n as usize,
        oriented_only,
        Some(1),
        SearchBudget::default(),
    )
    .map_err(|e| incomplete(format!("{planned}; fallback search: {e}")))?;
    outcome
        .labelings
        .into_iter()
        .next()
        .ok_or_else(|| incomplete(format!("{planned}; fallback search found nothing")))
}

/// An oriented proper labeling of `k`-gons whose surface has the largest
/// Euler characteristic an orientable tiling allows.
pub fn build_oriented(k: u32) -> Result<Labeling> {
    let n = n_min(k)?;
    let case = Case::of(k);
    let (labeling, factor) = match (plan(case).oriented_rule, case) {
        (OrientedRule::SameLabeling, _) => (build(k)?, 1),
        (OrientedRule::DoubleCover, Case::Three) if k == 9 => (oriented_nine_gons(), 2),
        (OrientedRule::DoubleCover, Case::Three | Case::Four) => {
            let base = construct_fold_free(k)?;
            check_minimal(&base, k, n)?;
            (double_cover(&base)?, 2)
        }
        (OrientedRule::DoubleCover, _) => (double_cover(&build(k)?)?, 2),
    };
    if !oriented(&labeling)? {
        return Err(Error::Inconsistent(format!(
            "{case} output for k = {k} is not oriented"
        )));
    }
    check_minimal(&labeling, k, factor * n)?;
    Ok(labeling)
}
