//! Exhaustive oracles: backtracking enumeration of proper labelings and
//! double Hamiltonian walks on cubic graphs.
//!
//! A completed search that returns nothing certifies non-existence. A search
//! cut short by its budget reports [`Error::SearchIncomplete`] instead of an
//! empty answer.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::labeling::{
    canonicalize, cyclic_runs, intrinsic_sign, polygon_components, verify, Label, Labeling,
    SizeBound,
};
use crate::UnionFind;

/// Default cap on the total number of vertex slots `n·k`.
pub const DEFAULT_MAX_SLOTS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_slots: usize,
    /// Abort after visiting this many search nodes.
    pub max_nodes: Option<u64>,
    /// Answer `6 ∤ n·k` without searching. When off, `n·k ≡ 3 (mod 6)`
    /// is searched exhaustively; `3 ∤ n·k` still needs no search.
    pub trust_divisibility: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_slots: DEFAULT_MAX_SLOTS,
            max_nodes: None,
            trust_divisibility: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    /// Every branch was explored; the result set is complete.
    Exhausted,
    /// Excluded by divisibility: `6` does not divide `n·k`. With the
    /// shortcut off this is reported only when `3 ∤ n·k`.
    Divisibility,
    /// Stopped after collecting `limit` representatives.
    LimitReached,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    /// Canonical representatives, sorted.
    pub labelings: Vec<Labeling>,
    pub nodes: u64,
}

impl SearchOutcome {
    /// True when the result set is provably complete.
    pub fn is_certificate(&self) -> bool {
        self.status != SearchStatus::LimitReached
    }
}

/// Enumerates proper labelings of `n` polygons of size `k`, up to symmetry.
///
/// Polygons of size below 7 are searched only as relaxed experiments; the
/// conditions (i)-(v) are checked in full either way.
pub fn search_labelings(
    k: usize,
    n: usize,
    oriented_only: bool,
    limit: Option<usize>,
    budget: SearchBudget,
) -> Result<SearchOutcome> {
    if k < 3 || n == 0 {
        return Err(Error::Precondition(format!(
            "no search for k = {k}, n = {n}"
        )));
    }
    let total = n * k;
    if total % 3 != 0 || (total % 6 != 0 && budget.trust_divisibility) {
        return Ok(SearchOutcome {
            status: SearchStatus::Divisibility,
            labelings: Vec::new(),
            nodes: 0,
        });
    }
    if total > budget.max_slots {
        return Err(Error::SearchIncomplete(format!(
            "n·k = {total} exceeds the slot budget {}",
            budget.max_slots
        )));
    }
    if n > 30 {
        return Err(Error::SearchIncomplete(format!(
            "{n} polygons exceed the search width"
        )));
    }
    let ctx = Ctx {
        k,
        n,
        m: total / 3,
        oriented_only,
        limit,
        max_nodes: budget.max_nodes,
        nodes: AtomicU64::new(0),
        found: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        limit_hit: AtomicBool::new(false),
    };

    // Split on the branching decisions within the first polygon.
    let mut seeds = Vec::new();
    let root = State::new(&ctx);
    collect_seeds(&ctx, root, split_depth(k), &mut seeds);
    let sets: Vec<BTreeSet<Labeling>> = seeds
        .into_par_iter()
        .map(|s| {
            let mut out = BTreeSet::new();
            let mut s = s;
            descend(&ctx, &mut s, &mut out);
            out
        })
        .collect();
    if ctx.aborted.load(Ordering::Relaxed) {
        return Err(Error::SearchIncomplete(format!(
            "node budget {} exhausted",
            budget.max_nodes.unwrap_or(0)
        )));
    }
    let mut all: BTreeSet<Labeling> = sets.into_iter().flatten().collect();
    let mut status = SearchStatus::Exhausted;
    if ctx.limit_hit.load(Ordering::Relaxed) {
        status = SearchStatus::LimitReached;
    }
    if let Some(limit) = limit {
        if all.len() > limit {
            all = all.into_iter().take(limit).collect();
            status = SearchStatus::LimitReached;
        }
    }
    Ok(SearchOutcome {
        status,
        labelings: all.into_iter().collect(),
        nodes: ctx.nodes.load(Ordering::Relaxed),
    })
}

fn split_depth(k: usize) -> usize {
    (k / 2).clamp(2, 8)
}

struct Ctx {
    k: usize,
    n: usize,
    m: usize,
    oriented_only: bool,
    limit: Option<usize>,
    max_nodes: Option<u64>,
    nodes: AtomicU64,
    found: AtomicU64,
    aborted: AtomicBool,
    limit_hit: AtomicBool,
}

#[derive(Clone)]
struct State {
    slots: Vec<Label>,
    counts: Vec<u8>,
    /// Edge count per unordered label pair, `m+1` squared, symmetric.
    pair_counts: Vec<u8>,
    /// Intrinsic sign of the first edge seen for each pair.
    pair_sign: Vec<i8>,
    degree: Vec<u8>,
    max_label: Label,
}

impl State {
    fn new(ctx: &Ctx) -> Self {
        let w = ctx.m + 1;
        State {
            slots: Vec::with_capacity(ctx.n * ctx.k),
            counts: vec![0; w],
            pair_counts: vec![0; w * w],
            pair_sign: vec![0; w * w],
            degree: vec![0; w],
            max_label: 0,
        }
    }
}

/// Registers edge `tail -> head` (boundary order); returns false on conflict.
fn add_edge(ctx: &Ctx, s: &mut State, tail: Label, head: Label) -> bool {
    if tail == head {
        return true;
    }
    let w = ctx.m + 1;
    let (a, b) = (tail as usize, head as usize);
    let ab = a * w + b;
    let c = s.pair_counts[ab];
    if c >= 2 {
        return false;
    }
    let sign = intrinsic_sign(tail, head);
    if c == 0 {
        if s.degree[a] >= 3 || s.degree[b] >= 3 {
            return false;
        }
        s.degree[a] += 1;
        s.degree[b] += 1;
        s.pair_sign[ab] = sign;
        s.pair_sign[b * w + a] = sign;
    } else if ctx.oriented_only && s.pair_sign[ab] == sign {
        return false;
    }
    s.pair_counts[ab] += 1;
    s.pair_counts[b * w + a] += 1;
    true
}

fn remove_edge(ctx: &Ctx, s: &mut State, tail: Label, head: Label) {
    if tail == head {
        return;
    }
    let w = ctx.m + 1;
    let (a, b) = (tail as usize, head as usize);
    s.pair_counts[a * w + b] -= 1;
    s.pair_counts[b * w + a] -= 1;
    if s.pair_counts[a * w + b] == 0 {
        s.degree[a] -= 1;
        s.degree[b] -= 1;
    }
}

/// Length of the run of equal labels ending at the last slot of the
/// current polygon.
fn trailing_run(slots: &[Label], poly_start: usize) -> usize {
    let last = slots[slots.len() - 1];
    slots[poly_start..]
        .iter()
        .rev()
        .take_while(|&&l| l == last)
        .count()
}

/// Candidate labels for the next slot, and whether each passes local checks.
fn try_place(ctx: &Ctx, s: &mut State, l: Label) -> bool {
    let pos = s.slots.len();
    let poly_start = pos / ctx.k * ctx.k;
    let i = pos - poly_start;
    if s.counts[l as usize] >= 3 {
        return false;
    }
    if i > 0 {
        let prev = s.slots[pos - 1];
        let run = trailing_run(&s.slots, poly_start);
        let run_starts_polygon = run == i;
        if l == prev {
            if ctx.oriented_only || run >= 3 {
                return false;
            }
        } else if run == 2 && !run_starts_polygon {
            return false;
        }
        if i >= 2 && s.slots[pos - 2] == l && prev != l {
            return false;
        }
        if !add_edge(ctx, s, prev, l) {
            return false;
        }
    }
    s.slots.push(l);
    s.counts[l as usize] += 1;
    if i + 1 == ctx.k && !close_polygon(ctx, s, poly_start) {
        undo(ctx, s);
        return false;
    }
    true
}

fn close_polygon(ctx: &Ctx, s: &mut State, poly_start: usize) -> bool {
    let poly = &s.slots[poly_start..];
    let k = ctx.k;
    let runs = cyclic_runs(poly);
    if runs.len() == 1 || runs.iter().any(|&(_, len)| len != 1 && len != 3) {
        return false;
    }
    if ctx.oriented_only && runs.iter().any(|&(_, len)| len != 1) {
        return false;
    }
    let (first, second, last, before_last) = (poly[0], poly[1], poly[k - 1], poly[k - 2]);
    if before_last == first && last != first {
        return false;
    }
    if last == second && first != last {
        return false;
    }
    if !polygon_is_rotation_minimal(ctx, s, poly_start) {
        return false;
    }
    add_edge(ctx, s, last, first)
}

/// Rejects a first polygon that some rotation or reflection of itself
/// relabels to a smaller sequence; later polygons must not beat it either.
fn polygon_is_rotation_minimal(ctx: &Ctx, s: &State, poly_start: usize) -> bool {
    let first = relabel_fresh(&s.slots[..ctx.k], 0, false);
    let poly = &s.slots[poly_start..poly_start + ctx.k];
    for rot in 0..ctx.k {
        for rev in [false, true] {
            if relabel_fresh(poly, rot, rev) < first {
                return false;
            }
        }
    }
    true
}

fn relabel_fresh(poly: &[Label], rot: usize, reversed: bool) -> Vec<Label> {
    let k = poly.len();
    let mut map: Vec<(Label, Label)> = Vec::with_capacity(k);
    (0..k)
        .map(|i| {
            let idx = if reversed {
                (rot + k - i) % k
            } else {
                (rot + i) % k
            };
            let l = poly[idx];
            match map.iter().find(|(o, _)| *o == l) {
                Some(&(_, v)) => v,
                None => {
                    let v = map.len() as Label + 1;
                    map.push((l, v));
                    v
                }
            }
        })
        .collect()
}

fn undo(ctx: &Ctx, s: &mut State) {
    let pos = s.slots.len() - 1;
    let l = s.slots.pop().expect("slot to undo");
    s.counts[l as usize] -= 1;
    let poly_start = pos / ctx.k * ctx.k;
    if pos > poly_start {
        remove_edge(ctx, s, s.slots[pos - 1], l);
    }
}

fn candidates(ctx: &Ctx, s: &State) -> impl Iterator<Item = Label> {
    let upper = (s.max_label + 1).min(ctx.m as Label);
    1..=upper
}

fn place(ctx: &Ctx, s: &mut State, l: Label) -> Option<Label> {
    if !try_place(ctx, s, l) {
        return None;
    }
    let old_max = s.max_label;
    s.max_label = s.max_label.max(l);
    Some(old_max)
}

fn unplace(ctx: &Ctx, s: &mut State, old_max: Label) {
    let pos = s.slots.len() - 1;
    if (pos + 1) % ctx.k == 0 {
        let start = pos + 1 - ctx.k;
        remove_edge(ctx, s, s.slots[pos], s.slots[start]);
    }
    undo(ctx, s);
    s.max_label = old_max;
}

fn collect_seeds(ctx: &Ctx, s: State, depth: usize, out: &mut Vec<State>) {
    if s.slots.len() >= depth {
        out.push(s);
        return;
    }
    let mut s = s;
    for l in candidates(ctx, &s).collect::<Vec<_>>() {
        if let Some(old) = place(ctx, &mut s, l) {
            collect_seeds(ctx, s.clone(), depth, out);
            unplace(ctx, &mut s, old);
        }
    }
}

fn descend(ctx: &Ctx, s: &mut State, out: &mut BTreeSet<Labeling>) {
    if ctx.aborted.load(Ordering::Relaxed) || ctx.limit_hit.load(Ordering::Relaxed) {
        return;
    }
    let nodes = ctx.nodes.fetch_add(1, Ordering::Relaxed) + 1;
    if ctx.max_nodes.is_some_and(|max| nodes > max) {
        ctx.aborted.store(true, Ordering::Relaxed);
        return;
    }
    if s.slots.len() == ctx.n * ctx.k {
        if let Some(l) = accept(ctx, s) {
            if out.insert(l) {
                let found = ctx.found.fetch_add(1, Ordering::Relaxed) + 1;
                if ctx.limit.is_some_and(|lim| found as usize >= lim) {
                    ctx.limit_hit.store(true, Ordering::Relaxed);
                }
            }
        }
        return;
    }
    for l in candidates(ctx, s).collect::<Vec<_>>() {
        if let Some(old) = place(ctx, s, l) {
            descend(ctx, s, out);
            unplace(ctx, s, old);
        }
    }
}

/// Final checks on a complete assignment; returns its canonical form.
fn accept(ctx: &Ctx, s: &State) -> Option<Labeling> {
    let w = ctx.m + 1;
    for a in 1..=ctx.m {
        for b in a + 1..=ctx.m {
            let c = s.pair_counts[a * w + b];
            if c != 0 && c != 2 {
                return None;
            }
        }
    }
    let polygons: Vec<Vec<Label>> = s.slots.chunks(ctx.k).map(<[Label]>::to_vec).collect();
    let labeling = Labeling::with_label_count(polygons, ctx.m as Label).ok()?;
    if polygon_components(&labeling).len() != 1 {
        return None;
    }
    let report = verify(&labeling, SizeBound::Relaxed(3));
    if !report.combinatorially_proper() || (ctx.oriented_only && !report.oriented) {
        return None;
    }
    Some(canonicalize(&labeling))
}

/// A connected 3-regular multigraph without loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubicGraph {
    vertex_count: usize,
    /// Endpoints (0-based), smaller first.
    edges: Vec<(usize, usize)>,
    has_parallel_edges: bool,
}

impl CubicGraph {
    /// Validates a simple cubic connected graph.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::build(vertex_count, edges, false)
    }

    /// Like [`CubicGraph::new`] but accepts parallel edges.
    pub fn with_parallel_edges(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::build(vertex_count, edges, true)
    }

    fn build(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        allow_parallel: bool,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Graph("graph has no vertices".into()));
        }
        let mut degree = vec![0usize; vertex_count];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in &edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Graph(format!(
                    "edge ({u}, {v}) leaves the vertex range"
                )));
            }
            if u == v {
                return Err(Error::Graph(format!("loop at vertex {}", u + 1)));
            }
            degree[u] += 1;
            degree[v] += 1;
            normalized.push((u.min(v), u.max(v)));
        }
        if let Some(v) = degree.iter().position(|&d| d != 3) {
            return Err(Error::Graph(format!(
                "vertex {} has degree {}, expected 3",
                v + 1,
                degree[v]
            )));
        }
        let mut sorted = normalized.clone();
        sorted.sort_unstable();
        let has_parallel_edges = sorted.windows(2).any(|w| w[0] == w[1]);
        if has_parallel_edges && !allow_parallel {
            return Err(Error::Graph(
                "parallel edges require the relaxed constructor".into(),
            ));
        }
        let mut uf = UnionFind::new(vertex_count);
        for &(u, v) in &normalized {
            uf.union(u, v);
        }
        if uf.classes().len() != 1 {
            return Err(Error::Graph("graph is disconnected".into()));
        }
        Ok(CubicGraph {
            vertex_count,
            edges: normalized,
            has_parallel_edges,
        })
    }

    pub fn complete4() -> Self {
        Self::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("K4 is cubic")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_parallel_edges(&self) -> bool {
        self.has_parallel_edges
    }

    fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::with_capacity(3); self.vertex_count];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push(i);
            inc[v].push(i);
        }
        inc
    }

    fn other_end(&self, edge: usize, from: usize) -> usize {
        let (u, v) = self.edges[edge];
        if u == from {
            v
        } else {
            u
        }
    }

    /// Edge set with sorted endpoints, sorted; for comparing graphs.
    pub fn edge_multiset(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }
}

/// Closed walk traversing every edge exactly twice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleWalk {
    /// Vertex sequence; step `i` goes from `vertices[i]` to `vertices[i+1]`
    /// (cyclically) along `edges[i]`.
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl DoubleWalk {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Whether step `i` runs along its edge's stored orientation.
    pub fn forward(&self, graph: &CubicGraph, i: usize) -> bool {
        graph.edges[self.edges[i]].0 == self.vertices[i]
    }

    /// Checks the walk invariants against `graph`.
    pub fn validate(&self, graph: &CubicGraph) -> Result<()> {
        let len = self.edges.len();
        if len != 2 * graph.edges.len() || self.vertices.len() != len {
            return Err(Error::Walk(format!(
                "walk has {len} steps, expected {}",
                2 * graph.edges.len()
            )));
        }
        let mut uses = vec![0usize; graph.edges.len()];
        for i in 0..len {
            let e = self.edges[i];
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % len]);
            let Some(&(u, v)) = graph.edges.get(e) else {
                return Err(Error::Walk(format!("step {i} uses unknown edge {e}")));
            };
            if (a, b) != (u, v) && (a, b) != (v, u) {
                return Err(Error::Walk(format!("step {i} does not follow edge {e}")));
            }
            if self.edges[(i + 1) % len] == e {
                return Err(Error::Walk(format!("edge {e} repeated at step {i}")));
            }
            uses[e] += 1;
        }
        if let Some(e) = uses.iter().position(|&u| u != 2) {
            return Err(Error::Walk(format!("edge {e} traversed {} times", uses[e])));
        }
        Ok(())
    }

    /// Each edge traversed once in each direction.
    pub fn is_bidirectional(&self, graph: &CubicGraph) -> bool {
        let mut dirs = vec![[false; 2]; graph.edges.len()];
        for i in 0..self.edges.len() {
            let d = usize::from(!self.forward(graph, i));
            if dirs[self.edges[i]][d] {
                return false;
            }
            dirs[self.edges[i]][d] = true;
        }
        true
    }
}

/// Searches a closed walk using every edge twice with no immediate repeat.
///
/// With `both_directions`, each edge is used once per direction. `None`
/// after the completed search certifies that no such walk exists.
pub fn double_hamiltonian(graph: &CubicGraph, both_directions: bool) -> Option<DoubleWalk> {
    double_hamiltonian_walks(graph, both_directions, 1)
        .into_iter()
        .next()
}

/// Up to `limit` double walks starting at vertex 0, in search order.
/// Rotations of one walk that also start at vertex 0 are listed separately.
pub fn double_hamiltonian_walks(
    graph: &CubicGraph,
    both_directions: bool,
    limit: usize,
) -> Vec<DoubleWalk> {
    let inc = graph.incidence();
    let total = 2 * graph.edges.len();
    let first_edges = inc[0].clone();
    let per_edge: Vec<Vec<DoubleWalk>> = first_edges
        .into_par_iter()
        .map(|first| {
            let mut walk = WalkSearch {
                graph,
                inc: &inc,
                both_directions,
                total,
                limit,
                uses: vec![0; graph.edges.len()],
                dir_used: vec![[false; 2]; graph.edges.len()],
                vertices: vec![0],
                edges: Vec::with_capacity(total),
                found: Vec::new(),
            };
            walk.step(first);
            walk.found
        })
        .collect();
    per_edge.into_iter().flatten().take(limit).collect()
}

struct WalkSearch<'a> {
    graph: &'a CubicGraph,
    inc: &'a [Vec<usize>],
    both_directions: bool,
    total: usize,
    limit: usize,
    uses: Vec<u8>,
    dir_used: Vec<[bool; 2]>,
    vertices: Vec<usize>,
    edges: Vec<usize>,
    found: Vec<DoubleWalk>,
}

impl WalkSearch<'_> {
    fn step(&mut self, e: usize) -> bool {
        let here = *self.vertices.last().expect("walk has a start");
        if self.uses[e] >= 2 || self.edges.last() == Some(&e) {
            return false;
        }
        let dir = usize::from(self.graph.edges[e].0 != here);
        if self.both_directions && self.dir_used[e][dir] {
            return false;
        }
        let next = self.graph.other_end(e, here);
        self.uses[e] += 1;
        self.dir_used[e][dir] = true;
        self.edges.push(e);
        self.vertices.push(next);
        if self.edges.len() == self.total {
            if next == self.vertices[0] && self.edges[0] != e {
                self.found.push(DoubleWalk {
                    vertices: self.vertices[..self.total].to_vec(),
                    edges: self.edges.clone(),
                });
            }
        } else {
            for &f in &self.inc[next] {
                if self.step(f) {
                    break;
                }
            }
        }
        self.vertices.pop();
        self.edges.pop();
        self.uses[e] -= 1;
        self.dir_used[e][dir] = false;
        self.found.len() >= self.limit
    }
}

/// The single-polygon labeling read off a double walk; label = vertex + 1.
pub fn walk_to_labeling(graph: &CubicGraph, walk: &DoubleWalk) -> Result<Labeling> {
    walk.validate(graph)?;
    if graph.has_parallel_edges {
        return Err(Error::Walk(
            "parallel edges cannot be told apart by endpoint labels".into(),
        ));
    }
    let poly = walk.vertices.iter().map(|&v| v as Label + 1).collect();
    let labeling = Labeling::with_label_count(vec![poly], graph.vertex_count as Label)?;
    let report = verify(&labeling, SizeBound::Relaxed(3));
    if !report.combinatorially_proper() {
        return Err(Error::Walk(format!(
            "walk labeling fails condition {}",
            report.first_failure().expect("a failed condition")
        )));
    }
    Ok(labeling)
}

/// Cubic graph and double walk encoded by a single-polygon labeling
/// without equal consecutive labels.
pub fn labeling_to_walk(labeling: &Labeling) -> Result<(CubicGraph, DoubleWalk)> {
    if labeling.n() != 1 {
        return Err(Error::Precondition(format!(
            "walk extraction needs one polygon, got {}",
            labeling.n()
        )));
    }
    let poly = labeling.polygon(0);
    let k = poly.len();
    if k % 6 != 0 {
        return Err(Error::Precondition(format!(
            "polygon size {k} is not divisible by 6"
        )));
    }
    if labeling.has_equal_runs() {
        return Err(Error::Precondition(
            "consecutive vertices share a label".into(),
        ));
    }
    let report = verify(labeling, SizeBound::Relaxed(3));
    if !report.combinatorially_proper() {
        return Err(Error::NotProper(
            report.first_failure().expect("a failed condition"),
        ));
    }
    let mut edge_list: Vec<(usize, usize)> = (0..k)
        .map(|i| {
            let (a, b) = (poly[i] as usize - 1, poly[(i + 1) % k] as usize - 1);
            (a.min(b), a.max(b))
        })
        .collect();
    edge_list.sort_unstable();
    edge_list.dedup();
    let graph = CubicGraph::new(labeling.m() as usize, edge_list)?;
    let index_of = |a: usize, b: usize| {
        graph
            .edges
            .iter()
            .position(|&e| e == (a.min(b), a.max(b)))
            .expect("edge present")
    };
    let vertices: Vec<usize> = poly.iter().map(|&l| l as usize - 1).collect();
    let edges = (0..k)
        .map(|i| index_of(vertices[i], vertices[(i + 1) % k]))
        .collect();
    let walk = DoubleWalk { vertices, edges };
    walk.validate(&graph)?;
    Ok((graph, walk))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases;
    use crate::labeling::oriented;

    #[test]
    fn divisibility_certificate() {
        let o = search_labelings(9, 1, false, None, SearchBudget::default()).unwrap();
        assert_eq!(o.status, SearchStatus::Divisibility);
        assert!(o.labelings.is_empty() && o.is_certificate());
    }

    #[test]
    fn budget_refusal() {
        let e = search_labelings(30, 1, false, None, SearchBudget::default()).unwrap_err();
        assert!(matches!(e, Error::SearchIncomplete(_)));
        let tight = SearchBudget {
            max_nodes: Some(10),
            ..SearchBudget::default()
        };
        assert!(matches!(
            search_labelings(12, 1, false, None, tight),
            Err(Error::SearchIncomplete(_))
        ));
    }

    #[test]
    fn twelve_gon_search_contains_twelve_gon() {
        let o = search_labelings(12, 1, false, None, SearchBudget::default()).unwrap();
        assert_eq!(o.status, SearchStatus::Exhausted);
        assert!(o.labelings.contains(&canonicalize(&bases::twelve_gon())));
        let mut sorted = o.labelings.clone();
        sorted.sort();
        assert_eq!(sorted, o.labelings);
    }

    #[test]
    fn k4_walks() {
        let k4 = CubicGraph::complete4();
        let target = canonicalize(&bases::twelve_gon());
        let walks = double_hamiltonian_walks(&k4, false, usize::MAX);
        assert!(!walks.is_empty());
        for w in &walks {
            w.validate(&k4).unwrap();
        }
        assert!(walks
            .iter()
            .any(|w| canonicalize(&walk_to_labeling(&k4, w).unwrap()) == target));
        assert!(double_hamiltonian(&k4, true).is_none());
    }

    #[test]
    fn repaired_18_gon_walk_is_bidirectional() {
        let l = bases::eighteen_gon();
        let (g, w) = labeling_to_walk(&l).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert!(w.is_bidirectional(&g));
        let back = walk_to_labeling(&g, &w).unwrap();
        assert_eq!(back, l);
        assert!(oriented(&back).unwrap());
    }

    #[test]
    fn walk_extraction_preconditions() {
        assert!(matches!(
            labeling_to_walk(&bases::three_octagons()),
            Err(Error::Precondition(_))
        ));
        let (g, w) = labeling_to_walk(&bases::twelve_gon()).unwrap();
        assert_eq!(g.edge_multiset(), CubicGraph::complete4().edge_multiset());
        assert!(!w.is_bidirectional(&g));
    }

    #[test]
    fn graph_validation() {
        assert!(matches!(
            CubicGraph::new(3, vec![(0, 1), (1, 2)]),
            Err(Error::Graph(_))
        ));
        assert!(matches!(
            CubicGraph::new(2, vec![(0, 0), (0, 1)]),
            Err(Error::Graph(_))
        ));
        let theta = vec![(0, 1), (0, 1), (0, 1)];
        assert!(CubicGraph::new(2, theta.clone()).is_err());
        assert!(CubicGraph::with_parallel_edges(2, theta)
            .unwrap()
            .has_parallel_edges());
    }

    #[test]
    fn invalid_walk_refused() {
        let k4 = CubicGraph::complete4();
        let mut w = double_hamiltonian(&k4, false).unwrap();
        w.edges.swap(0, 1);
        assert!(matches!(walk_to_labeling(&k4, &w), Err(Error::Walk(_))));
    }
}
