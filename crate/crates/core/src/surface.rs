//! Gluing proper labelings into closed surfaces.
//!
//! Paired edges are identified along their intrinsic directions, tail to
//! tail and head to head. For a fold pair inside a run `v1 v2 v3` this
//! identifies `v1` with `v2` and `v2` with `v3`, so the whole run becomes a
//! single vertex.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::labeling::{self, intrinsic_sign, require_proper, EdgeRef, Label, Labeling, PairKind};
use crate::UnionFind;

/// A vertex slot of a polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Corner {
    pub polygon: usize,
    pub position: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GluedPair {
    pub first: EdgeRef,
    pub first_sign: i8,
    pub second: EdgeRef,
    pub second_sign: i8,
    pub fold: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluedSurface {
    pub vertex_classes: Vec<Vec<Corner>>,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub chi: i64,
    pub orientable: bool,
    /// Polygon orientations witnessing orientability.
    pub polygon_signs: Option<Vec<i8>>,
    pub label_class_match: bool,
    pub glued_pairs: Vec<GluedPair>,
}

impl GluedSurface {
    pub fn surface_type(&self) -> Result<SurfaceType> {
        genus(self)
    }
}

fn edge_sign(labeling: &Labeling, e: EdgeRef) -> i8 {
    let p = labeling.polygon(e.polygon);
    intrinsic_sign(p[e.position], p[(e.position + 1) % p.len()])
}

/// Corner at the intrinsic tail (`head == false`) or head of an edge.
fn endpoint(labeling: &Labeling, e: EdgeRef, head: bool) -> Corner {
    let k = labeling.polygon(e.polygon).len();
    let start = edge_sign(labeling, e) > 0;
    let position = if start != head {
        e.position
    } else {
        (e.position + 1) % k
    };
    Corner {
        polygon: e.polygon,
        position,
    }
}

/// Glues a combinatorially proper labeling into a closed surface.
pub fn glue(labeling: &Labeling) -> Result<GluedSurface> {
    require_proper(labeling)?;
    let table = labeling::build_pairing(labeling);
    let offsets = labeling.offsets();
    let idx = |c: Corner| offsets[c.polygon] + c.position;

    let total = labeling.total_vertices();
    let mut uf = UnionFind::new(total);
    let mut glued_pairs = Vec::with_capacity(table.len());
    for pair in &table.pairs {
        for head in [false, true] {
            uf.union(
                idx(endpoint(labeling, pair.first, head)),
                idx(endpoint(labeling, pair.second, head)),
            );
        }
        glued_pairs.push(GluedPair {
            first: pair.first,
            first_sign: edge_sign(labeling, pair.first),
            second: pair.second,
            second_sign: edge_sign(labeling, pair.second),
            fold: matches!(pair.kind, PairKind::Fold { .. }),
        });
    }
    let corner_of = |slot: usize| {
        let polygon = offsets.partition_point(|&o| o <= slot) - 1;
        Corner {
            polygon,
            position: slot - offsets[polygon],
        }
    };
    let vertex_classes: Vec<Vec<Corner>> = uf
        .classes()
        .into_iter()
        .map(|c| c.into_iter().map(corner_of).collect())
        .collect();

    let mut label_classes: Vec<Vec<Corner>> = vec![Vec::new(); labeling.m() as usize + 1];
    for (pi, p) in labeling.polygons().iter().enumerate() {
        for (pos, &l) in p.iter().enumerate() {
            label_classes[l as usize].push(Corner {
                polygon: pi,
                position: pos,
            });
        }
    }
    let label_class_match = vertex_classes.len() == labeling.m() as usize
        && vertex_classes.iter().all(|class| {
            let l = labeling.polygon(class[0].polygon)[class[0].position];
            label_classes[l as usize] == *class
        });

    let n = labeling.n();
    let polygon_signs = orientation_witness(n, &glued_pairs);
    let connected = polygon_connectivity(n, &glued_pairs);
    if !connected {
        return Err(Error::Disconnected);
    }
    let vertices = vertex_classes.len();
    let edges = table.len();
    Ok(GluedSurface {
        vertices,
        edges,
        faces: n,
        chi: vertices as i64 - edges as i64 + n as i64,
        orientable: polygon_signs.is_some(),
        polygon_signs,
        label_class_match,
        vertex_classes,
        glued_pairs,
    })
}

fn polygon_connectivity(n: usize, pairs: &[GluedPair]) -> bool {
    let mut uf = UnionFind::new(n);
    for p in pairs {
        uf.union(p.first.polygon, p.second.polygon);
    }
    uf.classes().len() == 1
}

/// Solves `σ(P_e)·sign(e) = -σ(P_f)·sign(f)` over all pairs by propagation.
fn orientation_witness(n: usize, pairs: &[GluedPair]) -> Option<Vec<i8>> {
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); n];
    for p in pairs {
        // σ(Pf) = -σ(Pe)·sign(e)·sign(f)
        let rel = -p.first_sign * p.second_sign;
        adj[p.first.polygon].push((p.second.polygon, rel));
        adj[p.second.polygon].push((p.first.polygon, rel));
    }
    let mut sigma = vec![0i8; n];
    for root in 0..n {
        if sigma[root] != 0 {
            continue;
        }
        sigma[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(p) = queue.pop_front() {
            for &(q, rel) in &adj[p] {
                let want = sigma[p] * rel;
                if sigma[q] == 0 {
                    sigma[q] = want;
                    queue.push_back(q);
                } else if sigma[q] != want {
                    return None;
                }
            }
        }
    }
    Some(sigma)
}

/// Orientability of a glued surface, with a witnessing polygon orientation.
pub fn orientability(surface: &GluedSurface) -> (bool, Option<Vec<i8>>) {
    let w = orientation_witness(surface.faces, &surface.glued_pairs);
    (w.is_some(), w)
}

/// Reverses every polygon whose orientation sign is negative.
pub fn reorient(labeling: &Labeling, signs: &[i8]) -> Result<Labeling> {
    if signs.len() != labeling.n() {
        return Err(Error::Precondition(format!(
            "{} orientation signs for {} polygons",
            signs.len(),
            labeling.n()
        )));
    }
    let polygons = labeling
        .polygons()
        .iter()
        .zip(signs)
        .map(|(p, &s)| {
            if s < 0 {
                p.iter().rev().copied().collect()
            } else {
                p.clone()
            }
        })
        .collect();
    Labeling::with_label_count(polygons, labeling.m())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceType {
    Orientable { genus: i64 },
    NonOrientable { crosscaps: i64 },
}

/// Classifies a closed connected surface from `chi` and orientability.
pub fn classify(chi: i64, orientable: bool) -> Result<SurfaceType> {
    if orientable {
        if chi % 2 != 0 || chi > 2 {
            return Err(Error::Inconsistent(format!(
                "orientable surface with chi = {chi}"
            )));
        }
        Ok(SurfaceType::Orientable {
            genus: (2 - chi) / 2,
        })
    } else {
        if chi > 1 {
            return Err(Error::Inconsistent(format!(
                "non-orientable surface with chi = {chi}"
            )));
        }
        Ok(SurfaceType::NonOrientable { crosscaps: 2 - chi })
    }
}

pub fn genus(surface: &GluedSurface) -> Result<SurfaceType> {
    classify(surface.chi, surface.orientable)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualTriangle {
    pub label: Label,
    /// Polygons around the vertex, in cyclic order.
    pub polygons: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualTiling {
    pub triangles: Vec<DualTriangle>,
    /// One entry per glued edge: the two triangles meeting across it.
    pub adjacency: Vec<(Label, Label)>,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub chi: i64,
}

/// The triangle tiling dual to a regular labeling's polygon tiling.
pub fn dual(surface: &GluedSurface, labeling: &Labeling) -> Result<DualTiling> {
    if labeling.regular_size().is_none() {
        return Err(Error::NotRegular);
    }
    if !surface.label_class_match {
        return Err(Error::ClassMismatch);
    }
    let table = labeling::build_pairing(labeling);
    let mut triangles = Vec::with_capacity(surface.vertex_classes.len());
    for class in &surface.vertex_classes {
        let c0 = class[0];
        let label = labeling.polygon(c0.polygon)[c0.position];
        let mut polygons = [0usize; 3];
        let mut corner = c0;
        let mut leaving = EdgeRef {
            polygon: c0.polygon,
            position: c0.position,
        };
        for slot in polygons.iter_mut() {
            *slot = corner.polygon;
            let partner = table.partner(leaving);
            let k = labeling.polygon(partner.polygon).len();
            // The partner meets this vertex at the endpoint playing the same
            // intrinsic role (tail or head) as `corner` does on `leaving`.
            let head = endpoint(labeling, leaving, true) == corner
                && endpoint(labeling, leaving, false) != corner;
            let arrive = endpoint(labeling, partner, head);
            corner = arrive;
            // Leave through the other edge at the new corner.
            leaving = if partner.position == arrive.position {
                EdgeRef {
                    polygon: arrive.polygon,
                    position: (arrive.position + k - 1) % k,
                }
            } else {
                EdgeRef {
                    polygon: arrive.polygon,
                    position: arrive.position,
                }
            };
        }
        triangles.push(DualTriangle { label, polygons });
    }
    triangles.sort_by_key(|t| t.label);
    let adjacency = table
        .pairs
        .iter()
        .map(|p| match p.kind {
            PairKind::Distinct { low, high } => (low, high),
            PairKind::Fold { label } => (label, label),
        })
        .collect();
    let vertices = labeling.n();
    let edges = table.len();
    let faces = triangles.len();
    Ok(DualTiling {
        triangles,
        adjacency,
        vertices,
        edges,
        faces,
        chi: vertices as i64 - edges as i64 + faces as i64,
    })
}

/// Proper labeling of the orientation double cover of a non-orientable
/// glued surface.
///
/// Polygon `i` lifts to copies `i` (as given) and `n + i` (reversed).
/// Labels are the cover's vertex classes, numbered by first appearance.
pub fn double_cover(labeling: &Labeling) -> Result<Labeling> {
    let surface = glue(labeling)?;
    if surface.orientable {
        return Err(Error::AlreadyOrientable);
    }
    let n = labeling.n();
    let total = labeling.total_vertices();
    let offsets = labeling.offsets();
    // Corner id: sheet * total + slot, sheet 0 = positive copy.
    let id = |sheet: usize, c: Corner| sheet * total + offsets[c.polygon] + c.position;
    let mut uf = UnionFind::new(2 * total);
    for pair in &surface.glued_pairs {
        for sheet in 0..2usize {
            let s: i8 = if sheet == 0 { 1 } else { -1 };
            let s_other = -s * pair.first_sign * pair.second_sign;
            let other = if s_other > 0 { 0 } else { 1 };
            for head in [false, true] {
                uf.union(
                    id(sheet, endpoint(labeling, pair.first, head)),
                    id(other, endpoint(labeling, pair.second, head)),
                );
            }
        }
    }

    let mut label_of_root: Vec<Label> = vec![0; 2 * total];
    let mut next: Label = 1;
    let mut polygons: Vec<Vec<Label>> = Vec::with_capacity(2 * n);
    for sheet in 0..2usize {
        for (pi, poly) in labeling.polygons().iter().enumerate() {
            let k = poly.len();
            let positions: Vec<usize> = if sheet == 0 {
                (0..k).collect()
            } else {
                (0..k).rev().collect()
            };
            let mut out = Vec::with_capacity(k);
            for pos in positions {
                let root = uf.find(id(
                    sheet,
                    Corner {
                        polygon: pi,
                        position: pos,
                    },
                ));
                if label_of_root[root] == 0 {
                    label_of_root[root] = next;
                    next += 1;
                }
                out.push(label_of_root[root]);
            }
            polygons.push(out);
        }
    }
    let cover = Labeling::with_label_count(polygons, next - 1)?;

    let report = labeling::verify(&cover, labeling::SizeBound::Relaxed(1));
    if !report.combinatorially_proper() {
        let reason = if surface.glued_pairs.iter().any(|p| p.fold) {
            "fold pairs lift to parallel edges between two cover vertices"
        } else {
            "lifted labels violate the proper-labeling conditions"
        };
        let first = report
            .violations
            .first()
            .map(|v| v.to_string())
            .unwrap_or_default();
        return Err(Error::CoverNotRepresentable(format!("{reason} ({first})")));
    }
    let lifted = glue(&cover)?;
    if !lifted.orientable || lifted.chi != 2 * surface.chi || !lifted.label_class_match {
        return Err(Error::Inconsistent(format!(
            "cover has chi {} (expected {}), orientable = {}",
            lifted.chi,
            2 * surface.chi,
            lifted.orientable
        )));
    }
    Ok(cover)
}
