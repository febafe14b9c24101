//! Labelings of polygon families and the proper-labeling conditions.
//!
//! A [`Labeling`] is a family of polygons, each given as the cyclic sequence
//! of its vertex labels in positive boundary order. Labels are the integers
//! `1..=m`. A labeling is *proper* when it satisfies conditions (i)-(v):
//!
//! * (i) every label occurs exactly three times;
//! * (ii) no non-empty proper subfamily of polygons sees every label zero or
//!   three times;
//! * (iii) maximal cyclic runs of equal labels have length 1 or 3;
//! * (iv) every unordered pair `{i, j}`, `i != j`, labels zero or two edges;
//! * (v) no vertex has both neighbours carrying one label different from its own.
//!
//! Proper labelings determine a perfect matching of edges ([`PairingTable`])
//! and, through it, a closed surface (see [`crate::surface`]).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub type Label = u32;

/// Minimum polygon size for strict verification.
pub const MIN_POLYGON_SIZE: usize = 7;

/// Subset enumeration for condition (ii) is used up to this many polygons.
pub const LITERAL_SUBSET_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Labeling {
    polygons: Vec<Vec<Label>>,
    label_count: Label,
}

impl Labeling {
    /// Builds a labeling whose label count is the largest label present.
    pub fn new(polygons: Vec<Vec<Label>>) -> Result<Self> {
        let max = polygons.iter().flatten().copied().max().unwrap_or(0);
        Self::with_label_count(polygons, max)
    }

    /// Builds a labeling over labels `1..=label_count`.
    pub fn with_label_count(polygons: Vec<Vec<Label>>, label_count: Label) -> Result<Self> {
        if polygons.is_empty() {
            return Err(Error::NoPolygons);
        }
        for (pi, poly) in polygons.iter().enumerate() {
            if poly.is_empty() {
                return Err(Error::EmptyPolygon(pi));
            }
            for (pos, &label) in poly.iter().enumerate() {
                if label == 0 || label > label_count {
                    return Err(Error::LabelOutOfRange {
                        polygon: pi,
                        position: pos,
                        label,
                        max: label_count,
                    });
                }
            }
        }
        Ok(Labeling {
            polygons,
            label_count,
        })
    }

    pub fn polygons(&self) -> &[Vec<Label>] {
        &self.polygons
    }

    pub fn polygon(&self, index: usize) -> &[Label] {
        &self.polygons[index]
    }

    /// Number of polygons `n`.
    pub fn n(&self) -> usize {
        self.polygons.len()
    }

    /// Number of labels `m`.
    pub fn m(&self) -> Label {
        self.label_count
    }

    pub fn total_vertices(&self) -> usize {
        self.polygons.iter().map(Vec::len).sum()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.polygons.iter().map(Vec::len).collect()
    }

    /// The common polygon size, if all polygons have the same size.
    pub fn regular_size(&self) -> Option<usize> {
        let k = self.polygons[0].len();
        self.polygons.iter().all(|p| p.len() == k).then_some(k)
    }

    /// Label at a cyclic position of a polygon.
    pub fn label_at(&self, polygon: usize, position: isize) -> Label {
        let poly = &self.polygons[polygon];
        poly[position.rem_euclid(poly.len() as isize) as usize]
    }

    /// All polygons reversed; the mirror image of the labeling.
    pub fn reflected(&self) -> Labeling {
        Labeling {
            polygons: self
                .polygons
                .iter()
                .map(|p| p.iter().rev().copied().collect())
                .collect(),
            label_count: self.label_count,
        }
    }

    /// Occurrence count per label, indexed by label (index 0 unused).
    pub fn label_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.label_count as usize + 1];
        for &l in self.polygons.iter().flatten() {
            counts[l as usize] += 1;
        }
        counts
    }

    /// Offsets of each polygon's first edge slot in the global edge numbering.
    pub(crate) fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.polygons
            .iter()
            .map(|p| {
                let o = acc;
                acc += p.len();
                o
            })
            .collect()
    }

    /// True when some polygon has two cyclically consecutive equal labels.
    pub fn has_equal_runs(&self) -> bool {
        self.polygons
            .iter()
            .any(|p| (0..p.len()).any(|i| p.len() > 1 && p[i] == p[(i + 1) % p.len()]))
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.polygons.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let joined: Vec<String> = p.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", joined.join(","))?;
        }
        Ok(())
    }
}

/// Edge from the vertex at `position` to the next vertex in positive order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeRef {
    pub polygon: usize,
    pub position: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeRecord {
    pub edge: EdgeRef,
    pub tail_label: Label,
    pub head_label: Label,
    /// +1 when the intrinsic direction agrees with the boundary direction.
    pub intrinsic_sign: i8,
}

impl EdgeRecord {
    pub fn is_fold(&self) -> bool {
        self.tail_label == self.head_label
    }

    /// Endpoint labels as an ordered pair (smaller first).
    pub fn label_pair(&self) -> (Label, Label) {
        (
            self.tail_label.min(self.head_label),
            self.tail_label.max(self.head_label),
        )
    }
}

/// Intrinsic orientation sign of an edge with the given endpoint labels.
pub fn intrinsic_sign(tail: Label, head: Label) -> i8 {
    if tail <= head {
        1
    } else {
        -1
    }
}

/// Edge records in polygon-major order.
pub fn edges(labeling: &Labeling) -> Vec<EdgeRecord> {
    labeling
        .polygons
        .iter()
        .enumerate()
        .flat_map(|(pi, poly)| {
            (0..poly.len()).map(move |pos| {
                let tail = poly[pos];
                let head = poly[(pos + 1) % poly.len()];
                EdgeRecord {
                    edge: EdgeRef {
                        polygon: pi,
                        position: pos,
                    },
                    tail_label: tail,
                    head_label: head,
                    intrinsic_sign: intrinsic_sign(tail, head),
                }
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Condition {
    /// (i) every label occurs exactly three times
    ExactlyThree,
    /// (ii) no proper subfamily is closed under labels
    Connected,
    /// (iii) equal-label runs have length 1 or 3
    Runs,
    /// (iv) each distinct label pair labels zero or two edges
    EdgePairs,
    /// (v) no vertex flanked by two equal foreign labels
    Neighbours,
    /// m is even
    EvenLabelCount,
    /// every polygon has the minimum size
    PolygonSize,
    /// total vertex count equals 3m
    VertexTotal,
    /// every label in 1..=m occurs
    LabelRange,
}

impl Condition {
    pub const ALL: [Condition; 9] = [
        Condition::ExactlyThree,
        Condition::Connected,
        Condition::Runs,
        Condition::EdgePairs,
        Condition::Neighbours,
        Condition::EvenLabelCount,
        Condition::PolygonSize,
        Condition::VertexTotal,
        Condition::LabelRange,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Condition::ExactlyThree => "i",
            Condition::Connected => "ii",
            Condition::Runs => "iii",
            Condition::EdgePairs => "iv",
            Condition::Neighbours => "v",
            Condition::EvenLabelCount => "m-even",
            Condition::PolygonSize => "size-bound",
            Condition::VertexTotal => "vertex-total",
            Condition::LabelRange => "label-range",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::ExactlyThree
            | Condition::Connected
            | Condition::Runs
            | Condition::EdgePairs
            | Condition::Neighbours => write!(f, "({})", self.id()),
            _ => f.write_str(self.id()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    LabelCount {
        label: Label,
        count: usize,
    },
    /// A proper subfamily in which every label occurs zero or three times.
    ClosedSubfamily {
        polygons: Vec<usize>,
    },
    Run {
        polygon: usize,
        position: usize,
        label: Label,
        length: usize,
    },
    EdgeCount {
        labels: (Label, Label),
        count: usize,
        edges: Vec<EdgeRef>,
    },
    Neighbours {
        polygon: usize,
        position: usize,
        label: Label,
        neighbour: Label,
    },
    OddLabelCount {
        m: Label,
    },
    PolygonTooSmall {
        polygon: usize,
        size: usize,
        min: usize,
    },
    VertexTotal {
        total: usize,
        expected: usize,
    },
    UnusedLabel {
        label: Label,
    },
}

impl Violation {
    pub fn condition(&self) -> Condition {
        match self {
            Violation::LabelCount { .. } => Condition::ExactlyThree,
            Violation::ClosedSubfamily { .. } => Condition::Connected,
            Violation::Run { .. } => Condition::Runs,
            Violation::EdgeCount { .. } => Condition::EdgePairs,
            Violation::Neighbours { .. } => Condition::Neighbours,
            Violation::OddLabelCount { .. } => Condition::EvenLabelCount,
            Violation::PolygonTooSmall { .. } => Condition::PolygonSize,
            Violation::VertexTotal { .. } => Condition::VertexTotal,
            Violation::UnusedLabel { .. } => Condition::LabelRange,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.condition();
        match self {
            Violation::LabelCount { label, count } => {
                write!(f, "{c}: label {label} occurs {count} times")
            }
            Violation::ClosedSubfamily { polygons } => {
                write!(f, "{c}: polygons {polygons:?} see every label 0 or 3 times")
            }
            Violation::Run {
                polygon,
                position,
                label,
                length,
            } => write!(
                f,
                "{c}: polygon {polygon}, position {position}: run of {length} x label {label}"
            ),
            Violation::EdgeCount { labels, count, .. } => write!(
                f,
                "{c}: {count} edges with endpoint labels {{{}, {}}}",
                labels.0, labels.1
            ),
            Violation::Neighbours {
                polygon,
                position,
                label,
                neighbour,
            } => write!(
                f,
                "{c}: polygon {polygon}, position {position}: label {label} between two {neighbour}s"
            ),
            Violation::OddLabelCount { m } => write!(f, "{c}: m = {m} is odd"),
            Violation::PolygonTooSmall { polygon, size, min } => {
                write!(f, "{c}: polygon {polygon} has {size} vertices (< {min})")
            }
            Violation::VertexTotal { total, expected } => {
                write!(f, "{c}: {total} vertices, expected 3m = {expected}")
            }
            Violation::UnusedLabel { label } => write!(f, "{c}: label {label} is unused"),
        }
    }
}

/// Polygon size rule applied by [`verify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SizeBound {
    /// Polygons need at least seven vertices.
    Strict,
    /// Explicitly lowered bound for experiments.
    Relaxed(usize),
}

impl SizeBound {
    pub fn min_size(self) -> usize {
        match self {
            SizeBound::Strict => MIN_POLYGON_SIZE,
            SizeBound::Relaxed(m) => m,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub verdicts: BTreeMap<Condition, bool>,
    pub violations: Vec<Violation>,
    pub proper: bool,
    /// Meaningful only when the labeling is combinatorially proper.
    pub oriented: bool,
}

impl VerificationReport {
    pub fn holds(&self, condition: Condition) -> bool {
        self.verdicts[&condition]
    }

    pub fn violations_of(&self, condition: Condition) -> impl Iterator<Item = &Violation> {
        self.violations
            .iter()
            .filter(move |v| v.condition() == condition)
    }

    /// All conditions except the polygon size bound hold.
    pub fn combinatorially_proper(&self) -> bool {
        self.verdicts
            .iter()
            .all(|(c, ok)| *ok || *c == Condition::PolygonSize)
    }

    /// First failed condition, in the order of [`Condition::ALL`].
    pub fn first_failure(&self) -> Option<Condition> {
        Condition::ALL.into_iter().find(|c| !self.verdicts[c])
    }

    fn first_combinatorial_failure(&self) -> Option<Condition> {
        Condition::ALL
            .into_iter()
            .filter(|c| *c != Condition::PolygonSize)
            .find(|c| !self.verdicts[c])
    }
}

/// Checks every condition and collects all violations.
pub fn verify(labeling: &Labeling, bound: SizeBound) -> VerificationReport {
    let mut violations = Vec::new();
    let m = labeling.m();
    let counts = labeling.label_counts();

    for (label, &count) in counts.iter().enumerate().skip(1) {
        if count != 3 {
            violations.push(Violation::LabelCount {
                label: label as Label,
                count,
            });
        }
        if count == 0 {
            violations.push(Violation::UnusedLabel {
                label: label as Label,
            });
        }
    }
    if m % 2 != 0 {
        violations.push(Violation::OddLabelCount { m });
    }
    let total = labeling.total_vertices();
    if total != 3 * m as usize {
        violations.push(Violation::VertexTotal {
            total,
            expected: 3 * m as usize,
        });
    }
    let min = bound.min_size();
    for (pi, p) in labeling.polygons().iter().enumerate() {
        if p.len() < min {
            violations.push(Violation::PolygonTooSmall {
                polygon: pi,
                size: p.len(),
                min,
            });
        }
    }

    violations.extend(run_violations(labeling));
    violations.extend(edge_pair_violations(labeling));
    violations.extend(neighbour_violations(labeling));
    if labeling.n() <= LITERAL_SUBSET_LIMIT {
        violations.extend(closed_subfamilies_literal(labeling));
    } else {
        violations.extend(closed_components(labeling));
    }

    let mut verdicts: BTreeMap<Condition, bool> =
        Condition::ALL.into_iter().map(|c| (c, true)).collect();
    for v in &violations {
        verdicts.insert(v.condition(), false);
    }
    let proper = verdicts.values().all(|&ok| ok);
    let mut report = VerificationReport {
        verdicts,
        violations,
        proper,
        oriented: false,
    };
    if report.combinatorially_proper() {
        report.oriented = signs_opposite(labeling, &build_pairing(labeling));
    }
    report
}

/// Maximal cyclic runs of equal labels: (start position, length).
pub(crate) fn cyclic_runs(poly: &[Label]) -> Vec<(usize, usize)> {
    let k = poly.len();
    let start = match (0..k).find(|&i| poly[i] != poly[(i + k - 1) % k]) {
        Some(s) => s,
        None => return vec![(0, k)],
    };
    let mut runs = Vec::new();
    let mut i = 0;
    while i < k {
        let s = (start + i) % k;
        let mut len = 1;
        while len < k && poly[(s + len) % k] == poly[s] {
            len += 1;
        }
        runs.push((s, len));
        i += len;
    }
    runs
}

fn run_violations(labeling: &Labeling) -> Vec<Violation> {
    let mut out = Vec::new();
    for (pi, poly) in labeling.polygons().iter().enumerate() {
        let runs = cyclic_runs(poly);
        let uniform = runs.len() == 1;
        for (start, len) in runs {
            if uniform || (len != 1 && len != 3) {
                out.push(Violation::Run {
                    polygon: pi,
                    position: start,
                    label: poly[start],
                    length: len,
                });
            }
        }
    }
    out
}

fn edge_pair_violations(labeling: &Labeling) -> Vec<Violation> {
    let mut by_pair: BTreeMap<(Label, Label), Vec<EdgeRef>> = BTreeMap::new();
    for rec in edges(labeling) {
        if !rec.is_fold() {
            by_pair.entry(rec.label_pair()).or_default().push(rec.edge);
        }
    }
    by_pair
        .into_iter()
        .filter(|(_, es)| es.len() != 2)
        .map(|(labels, edges)| Violation::EdgeCount {
            labels,
            count: edges.len(),
            edges,
        })
        .collect()
}

fn neighbour_violations(labeling: &Labeling) -> Vec<Violation> {
    let mut out = Vec::new();
    for (pi, poly) in labeling.polygons().iter().enumerate() {
        let k = poly.len();
        for pos in 0..k {
            let prev = poly[(pos + k - 1) % k];
            let next = poly[(pos + 1) % k];
            if prev == next && prev != poly[pos] {
                out.push(Violation::Neighbours {
                    polygon: pi,
                    position: pos,
                    label: poly[pos],
                    neighbour: prev,
                });
            }
        }
    }
    out
}

/// Condition (ii) by enumerating all non-empty proper subfamilies.
pub(crate) fn closed_subfamilies_literal(labeling: &Labeling) -> Vec<Violation> {
    let n = labeling.n();
    let m = labeling.m() as usize;
    let per_poly: Vec<Vec<usize>> = labeling
        .polygons()
        .iter()
        .map(|p| {
            let mut c = vec![0usize; m + 1];
            for &l in p {
                c[l as usize] += 1;
            }
            c
        })
        .collect();
    let mut out = Vec::new();
    let full = (1u32 << n) - 1;
    let mut counts = vec![0usize; m + 1];
    for mask in 1..full {
        counts.iter_mut().for_each(|c| *c = 0);
        for (pi, pc) in per_poly.iter().enumerate() {
            if mask & (1 << pi) != 0 {
                for (c, &x) in counts.iter_mut().zip(pc) {
                    *c += x;
                }
            }
        }
        if !counts.iter().any(|&c| c == 1 || c == 2) {
            out.push(Violation::ClosedSubfamily {
                polygons: (0..n).filter(|pi| mask & (1 << pi) != 0).collect(),
            });
        }
    }
    out
}

/// Condition (ii) through connected components of the label-sharing graph.
///
/// Agrees with the literal check whenever (i) holds.
pub(crate) fn closed_components(labeling: &Labeling) -> Vec<Violation> {
    let components = polygon_components(labeling);
    if components.len() <= 1 {
        return Vec::new();
    }
    let counts = labeling.label_counts();
    components
        .into_iter()
        .filter(|comp| {
            comp.iter()
                .flat_map(|&pi| labeling.polygon(pi))
                .all(|&l| counts[l as usize] == 3)
        })
        .map(|polygons| Violation::ClosedSubfamily { polygons })
        .collect()
}

/// Components of the graph joining polygons that share a label.
pub(crate) fn polygon_components(labeling: &Labeling) -> Vec<Vec<usize>> {
    let n = labeling.n();
    let mut uf = crate::UnionFind::new(n);
    let mut first_seen: HashMap<Label, usize> = HashMap::new();
    for (pi, p) in labeling.polygons().iter().enumerate() {
        for &l in p {
            match first_seen.get(&l) {
                Some(&q) => uf.union(pi, q),
                None => {
                    first_seen.insert(l, pi);
                }
            }
        }
    }
    uf.classes()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairKind {
    /// Two edges with the same endpoint labels `{low, high}`.
    Distinct { low: Label, high: Label },
    /// The two edges inside a run of three equal labels.
    Fold { label: Label },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProperPair {
    pub first: EdgeRef,
    pub second: EdgeRef,
    pub kind: PairKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingTable {
    pub pairs: Vec<ProperPair>,
    #[serde(skip)]
    offsets: Vec<usize>,
    #[serde(skip)]
    partner: Vec<usize>,
}

impl PairingTable {
    pub fn slot(&self, e: EdgeRef) -> usize {
        self.offsets[e.polygon] + e.position
    }

    pub fn edge_of_slot(&self, slot: usize) -> EdgeRef {
        let polygon = self.offsets.partition_point(|&o| o <= slot) - 1;
        EdgeRef {
            polygon,
            position: slot - self.offsets[polygon],
        }
    }

    /// The edge paired with `e`.
    pub fn partner(&self, e: EdgeRef) -> EdgeRef {
        self.edge_of_slot(self.partner[self.slot(e)])
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// The proper-pair matching of a combinatorially proper labeling.
pub fn pairing(labeling: &Labeling) -> Result<PairingTable> {
    require_proper(labeling)?;
    Ok(build_pairing(labeling))
}

pub(crate) fn require_proper(labeling: &Labeling) -> Result<VerificationReport> {
    let report = verify(labeling, SizeBound::Relaxed(1));
    match report.first_combinatorial_failure() {
        Some(c) => Err(Error::NotProper(c)),
        None => Ok(report),
    }
}

/// Pairing without the properness gate; callers guarantee (iii) and (iv).
pub(crate) fn build_pairing(labeling: &Labeling) -> PairingTable {
    let offsets = labeling.offsets();
    let total = labeling.total_vertices();
    let mut partner = vec![usize::MAX; total];
    let mut pairs = Vec::with_capacity(total / 2);
    let mut pending: HashMap<(Label, Label), EdgeRef> = HashMap::new();

    for (pi, poly) in labeling.polygons().iter().enumerate() {
        let k = poly.len();
        for (start, len) in cyclic_runs(poly) {
            if len == 3 && k > 3 {
                let first = EdgeRef {
                    polygon: pi,
                    position: start,
                };
                let second = EdgeRef {
                    polygon: pi,
                    position: (start + 1) % k,
                };
                partner[offsets[pi] + first.position] = offsets[pi] + second.position;
                partner[offsets[pi] + second.position] = offsets[pi] + first.position;
                pairs.push(ProperPair {
                    first,
                    second,
                    kind: PairKind::Fold { label: poly[start] },
                });
            }
        }
    }
    for rec in edges(labeling) {
        if rec.is_fold() {
            continue;
        }
        let key = rec.label_pair();
        match pending.remove(&key) {
            Some(first) => {
                let (a, b) = (
                    offsets[first.polygon] + first.position,
                    offsets[rec.edge.polygon] + rec.edge.position,
                );
                partner[a] = b;
                partner[b] = a;
                pairs.push(ProperPair {
                    first,
                    second: rec.edge,
                    kind: PairKind::Distinct {
                        low: key.0,
                        high: key.1,
                    },
                });
            }
            None => {
                pending.insert(key, rec.edge);
            }
        }
    }
    pairs.sort_by_key(|p| (p.first, p.second));
    PairingTable {
        pairs,
        offsets,
        partner,
    }
}

fn signs_opposite(labeling: &Labeling, table: &PairingTable) -> bool {
    let sign = |e: EdgeRef| {
        let p = labeling.polygon(e.polygon);
        intrinsic_sign(p[e.position], p[(e.position + 1) % p.len()])
    };
    table
        .pairs
        .iter()
        .all(|pair| sign(pair.first) == -sign(pair.second))
}

/// Whether every proper pair consists of oppositely oriented edges.
pub fn oriented(labeling: &Labeling) -> Result<bool> {
    let report = require_proper(labeling)?;
    Ok(report.oriented)
}

/// Canonical representative under polygon reordering, rotation, global
/// reflection and label renaming.
///
/// Polygons are ordered by size; among those orderings the lexicographically
/// least first-occurrence relabeling of the concatenated boundary sequences
/// is chosen.
pub fn canonicalize(labeling: &Labeling) -> Labeling {
    let forward = canonical_sequence(labeling.polygons(), labeling.m());
    let mirrored = canonical_sequence(labeling.reflected().polygons(), labeling.m());
    let best = forward.min(mirrored);
    let mut sizes = labeling.sizes();
    sizes.sort_unstable();
    let mut polygons = Vec::with_capacity(sizes.len());
    let mut it = best.into_iter();
    for s in sizes {
        polygons.push(it.by_ref().take(s).collect());
    }
    Labeling {
        polygons,
        label_count: labeling.m(),
    }
}

fn canonical_sequence(polygons: &[Vec<Label>], m: Label) -> Vec<Label> {
    let mut order: Vec<usize> = (0..polygons.len()).collect();
    order.sort_by_key(|&i| polygons[i].len());
    let sizes: Vec<usize> = order.iter().map(|&i| polygons[i].len()).collect();
    let mut search = CanonSearch {
        polygons,
        sizes: &sizes,
        best: None,
    };
    let state = CanonState {
        used: vec![false; polygons.len()],
        mapping: vec![0; m as usize + 1],
        next: 1,
        prefix: Vec::with_capacity(polygons.iter().map(Vec::len).sum()),
    };
    search.descend(0, state);
    search.best.expect("at least one ordering")
}

struct CanonSearch<'a> {
    polygons: &'a [Vec<Label>],
    sizes: &'a [usize],
    best: Option<Vec<Label>>,
}

#[derive(Clone)]
struct CanonState {
    used: Vec<bool>,
    mapping: Vec<Label>,
    next: Label,
    prefix: Vec<Label>,
}

impl CanonSearch<'_> {
    fn descend(&mut self, level: usize, state: CanonState) {
        if let Some(best) = &self.best {
            if state.prefix.as_slice() > &best[..state.prefix.len()] {
                return;
            }
        }
        if level == self.sizes.len() {
            if self.best.as_ref().is_none_or(|b| state.prefix < *b) {
                self.best = Some(state.prefix);
            }
            return;
        }
        let size = self.sizes[level];
        let mut min_segment: Option<Vec<Label>> = None;
        let mut ties: Vec<(usize, usize)> = Vec::new();
        for (pi, poly) in self.polygons.iter().enumerate() {
            if state.used[pi] || poly.len() != size {
                continue;
            }
            for rot in 0..size {
                let seg = relabel_segment(poly, rot, &state.mapping, state.next);
                match &min_segment {
                    Some(min) if seg > *min => {}
                    Some(min) if seg == *min => ties.push((pi, rot)),
                    _ => {
                        min_segment = Some(seg);
                        ties.clear();
                        ties.push((pi, rot));
                    }
                }
            }
        }
        for (pi, rot) in ties {
            let mut next_state = state.clone();
            next_state.used[pi] = true;
            let poly = &self.polygons[pi];
            for i in 0..size {
                let l = poly[(rot + i) % size] as usize;
                if next_state.mapping[l] == 0 {
                    next_state.mapping[l] = next_state.next;
                    next_state.next += 1;
                }
                next_state.prefix.push(next_state.mapping[l]);
            }
            self.descend(level + 1, next_state);
        }
    }
}

fn relabel_segment(poly: &[Label], rot: usize, mapping: &[Label], mut next: Label) -> Vec<Label> {
    let k = poly.len();
    let mut local: Vec<(Label, Label)> = Vec::new();
    (0..k)
        .map(|i| {
            let l = poly[(rot + i) % k];
            let mapped = mapping[l as usize];
            if mapped != 0 {
                return mapped;
            }
            if let Some(&(_, v)) = local.iter().find(|(old, _)| *old == l) {
                return v;
            }
            local.push((l, next));
            next += 1;
            next - 1
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases;

    #[test]
    fn edge_signs_follow_label_order() {
        let l = Labeling::new(vec![vec![2, 5, 5, 5, 3, 3, 3]]).unwrap();
        let recs = edges(&l);
        assert_eq!(recs.len(), 7);
        assert_eq!((recs[0].tail_label, recs[0].head_label), (2, 5));
        assert_eq!(recs[0].intrinsic_sign, 1);
        assert_eq!((recs[3].tail_label, recs[3].head_label), (5, 3));
        assert_eq!(recs[3].intrinsic_sign, -1);
        assert_eq!((recs[4].tail_label, recs[4].head_label), (3, 3));
        assert_eq!(recs[4].intrinsic_sign, 1);
        assert_eq!(intrinsic_sign(5, 2), -1);
    }

    #[test]
    fn bases_are_proper() {
        for (name, l) in [
            ("heptagons", bases::six_heptagons()),
            ("decagons", bases::three_decagons()),
            ("9-gons", bases::two_nonagons()),
            ("octagons", bases::three_octagons()),
            ("12-gon", bases::twelve_gon()),
            ("18-gon", bases::eighteen_gon()),
        ] {
            let r = verify(&l, SizeBound::Strict);
            assert!(r.proper, "{name}: {:?}", r.violations);
        }
    }

    #[test]
    fn printed_eighteen_gon_fails_label_count() {
        let r = verify(&bases::eighteen_gon_printed(), SizeBound::Strict);
        assert!(!r.proper);
        assert!(!r.holds(Condition::ExactlyThree));
        let counts: Vec<_> = r.violations_of(Condition::ExactlyThree).cloned().collect();
        assert_eq!(
            counts,
            vec![
                Violation::LabelCount { label: 1, count: 2 },
                Violation::LabelCount { label: 7, count: 1 },
            ]
        );
    }

    #[test]
    fn runs_of_two_or_four_are_rejected() {
        let two = Labeling::new(vec![vec![1, 1, 2, 3, 4, 5, 6]]).unwrap();
        let r = verify(&two, SizeBound::Strict);
        assert!(!r.holds(Condition::Runs));
        let four = Labeling::new(vec![vec![1, 1, 1, 1, 2, 3, 4]]).unwrap();
        assert!(!verify(&four, SizeBound::Strict).holds(Condition::Runs));
        // Run wrapping around the start of the polygon.
        let wrap = Labeling::new(vec![vec![1, 2, 3, 4, 5, 1, 1]]).unwrap();
        let runs = cyclic_runs(wrap.polygon(0));
        assert!(runs.contains(&(5, 3)));
    }

    #[test]
    fn degenerate_single_polygon_runs() {
        // Runs of length three everywhere: (iii) holds, (ii) is vacuous for n = 1.
        let l = Labeling::new(vec![vec![1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4]]).unwrap();
        let r = verify(&l, SizeBound::Strict);
        assert!(r.holds(Condition::Runs));
        assert!(r.holds(Condition::Connected));
        assert!(r.holds(Condition::ExactlyThree));
        // Edges {1,2}, {2,3}, {3,4}, {4,1} occur once each.
        assert!(!r.holds(Condition::EdgePairs));
        assert!(!r.proper);
    }

    #[test]
    fn disjoint_union_violates_connectivity() {
        let f9 = bases::twelve_gon();
        let shifted: Vec<Label> = f9.polygon(0).iter().map(|l| l + 4).collect();
        let l = Labeling::new(vec![f9.polygon(0).to_vec(), shifted]).unwrap();
        let r = verify(&l, SizeBound::Strict);
        assert!(!r.holds(Condition::Connected));
        assert!(r.holds(Condition::ExactlyThree));
        assert_eq!(r.violations_of(Condition::Connected).count(), 2);
        assert_eq!(closed_components(&l).len(), 2);
    }

    #[test]
    fn connectivity_agrees_with_subfamily_enumeration() {
        let mut cases = vec![
            bases::six_heptagons(),
            bases::three_decagons(),
            bases::two_nonagons(),
            bases::three_octagons(),
            bases::twelve_gon(),
            crate::builders::build(13).unwrap(),
            crate::builders::build_oriented(7).unwrap(),
        ];
        for (a, b) in [
            (bases::six_heptagons(), bases::twelve_gon()),
            (bases::two_nonagons(), bases::three_octagons()),
        ] {
            let shift = a.m();
            let mut polys = a.polygons().to_vec();
            polys.extend(
                b.polygons()
                    .iter()
                    .map(|p| p.iter().map(|l| l + shift).collect()),
            );
            cases.push(Labeling::new(polys).unwrap());
        }
        for l in &cases {
            assert!(l.n() <= LITERAL_SUBSET_LIMIT);
            let literal = closed_subfamilies_literal(l).is_empty();
            assert_eq!(literal, closed_components(l).is_empty(), "{l}");
        }
        assert!(!closed_components(cases.last().unwrap()).is_empty());
    }

    #[test]
    fn neighbour_pattern_detected() {
        let l = Labeling::new(vec![vec![1, 2, 1, 3, 4, 5, 6]]).unwrap();
        let r = verify(&l, SizeBound::Strict);
        assert!(r.violations.contains(&Violation::Neighbours {
            polygon: 0,
            position: 1,
            label: 2,
            neighbour: 1
        }));
    }

    #[test]
    fn out_of_range_is_structural() {
        let e = Labeling::with_label_count(vec![vec![1, 2, 9]], 4).unwrap_err();
        assert!(matches!(e, Error::LabelOutOfRange { label: 9, .. }));
        assert!(matches!(
            Labeling::new(vec![vec![0, 1]]),
            Err(Error::LabelOutOfRange { .. })
        ));
        assert_eq!(
            Labeling::new(vec![vec![]]).unwrap_err(),
            Error::EmptyPolygon(0)
        );
    }

    #[test]
    fn nonagon_wrap_edge_pairs_across_polygons() {
        let l = bases::two_nonagons();
        let t = pairing(&l).unwrap();
        assert_eq!(t.len(), 9);
        let wrap = EdgeRef {
            polygon: 0,
            position: 8,
        };
        assert_eq!(l.label_at(0, 8), 5);
        assert_eq!(l.label_at(0, 9), 4);
        assert_eq!(
            t.partner(wrap),
            EdgeRef {
                polygon: 1,
                position: 0
            }
        );
        // Run 3,3,3 at positions 4..=6 of the second polygon.
        let inner = EdgeRef {
            polygon: 1,
            position: 4,
        };
        assert_eq!(
            t.partner(inner),
            EdgeRef {
                polygon: 1,
                position: 5
            }
        );
    }

    #[test]
    fn twelve_gon_has_no_folds() {
        let t = pairing(&bases::twelve_gon()).unwrap();
        assert_eq!(t.len(), 6);
        assert!(t
            .pairs
            .iter()
            .all(|p| matches!(p.kind, PairKind::Distinct { .. })));
    }

    #[test]
    fn pairing_refuses_non_proper() {
        let e = pairing(&bases::eighteen_gon_printed()).unwrap_err();
        assert_eq!(e, Error::NotProper(Condition::ExactlyThree));
    }

    #[test]
    fn orientedness_of_bases() {
        assert!(oriented(&bases::three_decagons()).unwrap());
        assert!(oriented(&bases::eighteen_gon()).unwrap());
        assert!(!oriented(&bases::twelve_gon()).unwrap());
        assert!(!oriented(&bases::three_octagons()).unwrap());
        assert!(!oriented(&bases::six_heptagons()).unwrap());
        assert!(!oriented(&bases::two_nonagons()).unwrap());
    }

    #[test]
    fn canonical_form_symmetries() {
        let f9 = bases::twelve_gon();
        let c = canonicalize(&f9);
        let mut rotated = f9.polygon(0).to_vec();
        rotated.rotate_left(3);
        assert_eq!(canonicalize(&Labeling::new(vec![rotated]).unwrap()), c);
        let swapped: Vec<Label> = f9
            .polygon(0)
            .iter()
            .map(|&l| match l {
                1 => 2,
                2 => 1,
                x => x,
            })
            .collect();
        assert_eq!(canonicalize(&Labeling::new(vec![swapped]).unwrap()), c);
        assert_eq!(canonicalize(&f9.reflected()), c);
        assert_eq!(canonicalize(&c), c);
        assert_ne!(
            canonicalize(&bases::two_nonagons()),
            canonicalize(&bases::three_octagons())
        );
    }
}
