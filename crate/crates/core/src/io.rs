//! Text formats: HTL labeling documents, the JSON analysis export, SVG
//! schematics and cubic-graph edge lists.
//!
//! An HTL document is
//!
//! ```text
//! HTL 1
//! <n> <m>
//! <polygon 1 labels>
//! ...
//! ```
//!
//! with `#` starting a comment line. Labels are space-separated decimals.

use std::f64::consts::PI;
use std::fmt::Write;

use serde::Serialize;

use crate::builders::{eek_admissible, n_min};
use crate::error::{Error, Result};
use crate::geom::{area_from_chi, tile_area, triangle_bound_value, PiMultiple};
use crate::labeling::{self, pairing, Label, Labeling, SizeBound, Violation};
use crate::search::CubicGraph;
use crate::surface::{genus, glue, SurfaceType};

pub const HTL_HEADER: &str = "HTL 1";

/// Largest polygon count [`render_svg`] accepts.
pub const SVG_MAX_POLYGONS: usize = 24;

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into tokens with their 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split(' ')
        .scan(1usize, |col, tok| {
            let at = *col;
            *col += tok.len() + 1;
            Some((at, tok))
        })
        .filter(|(_, t)| !t.is_empty())
}

fn parse_number<T: std::str::FromStr>(line: usize, column: usize, tok: &str) -> Result<T> {
    tok.parse().map_err(|_| {
        parse_error(
            line,
            column,
            format!("expected a non-negative integer, found {tok:?}"),
        )
    })
}

/// Reads an HTL document. Only structure is checked; run
/// [`labeling::verify`] for the proper-labeling conditions.
pub fn parse_htl(text: &str) -> Result<Labeling> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty());

    let (line_no, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, 1, "missing header"))?;
    if header.trim() != HTL_HEADER {
        return Err(parse_error(
            line_no,
            1,
            format!("expected header {HTL_HEADER:?}"),
        ));
    }

    let (line_no, dims) = lines
        .next()
        .ok_or_else(|| parse_error(line_no + 1, 1, "missing \"<n> <m>\" line"))?;
    let dims: Vec<_> = tokens(dims).collect();
    if dims.len() != 2 {
        return Err(parse_error(line_no, 1, "expected \"<n> <m>\""));
    }
    let n: usize = parse_number(line_no, dims[0].0, dims[0].1)?;
    let m: Label = parse_number(line_no, dims[1].0, dims[1].1)?;
    if n == 0 {
        return Err(parse_error(line_no, dims[0].0, "n must be positive"));
    }
    if m == 0 {
        return Err(parse_error(line_no, dims[1].0, "m must be positive"));
    }

    let mut polygons = Vec::with_capacity(n);
    let mut last_line = line_no;
    for (line_no, line) in lines {
        if polygons.len() == n {
            return Err(parse_error(
                line_no,
                1,
                format!("more than {n} polygon lines"),
            ));
        }
        let mut poly = Vec::new();
        for (col, tok) in tokens(line) {
            let label: Label = parse_number(line_no, col, tok)?;
            if label == 0 || label > m {
                return Err(parse_error(
                    line_no,
                    col,
                    format!("label {label} is outside 1..={m}"),
                ));
            }
            poly.push(label);
        }
        polygons.push(poly);
        last_line = line_no;
    }
    if polygons.len() != n {
        return Err(parse_error(
            last_line + 1,
            1,
            format!("expected {n} polygon lines, found {}", polygons.len()),
        ));
    }
    let total: usize = polygons.iter().map(Vec::len).sum();
    if total != 3 * m as usize {
        return Err(parse_error(
            last_line,
            1,
            format!("total ≠ 3m: {total} vertices for m = {m}"),
        ));
    }
    Labeling::with_label_count(polygons, m)
}

/// Canonical HTL text: header, dimensions, one polygon per line, LF endings.
pub fn emit_htl(labeling: &Labeling) -> String {
    let mut out = format!("{HTL_HEADER}\n{} {}\n", labeling.n(), labeling.m());
    for poly in labeling.polygons() {
        let row: Vec<String> = poly.iter().map(Label::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AreaReport {
    pub exact: PiMultiple,
    pub value: f64,
}

impl From<PiMultiple> for AreaReport {
    fn from(p: PiMultiple) -> Self {
        AreaReport {
            exact: p,
            value: p.to_f64(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Topology {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub chi: i64,
    pub orientable_surface: bool,
    pub surface: SurfaceType,
    pub area: AreaReport,
    /// Triangle count of the dual tiling.
    pub triangles: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularReport {
    pub k: usize,
    pub n_min: u32,
    pub minimal: bool,
    pub eek_admissible: bool,
    /// `m` tiles of area `π - 6π/k` give the Gauss-Bonnet area.
    pub tile_area_sum_matches: bool,
    pub triangle_bound: AreaReport,
    pub triangle_bound_equality: bool,
    /// `2·N(k)·k`, reported for minimal labelings only.
    pub subgroup_index: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub m: Label,
    pub sizes: Vec<usize>,
    pub proper: bool,
    pub oriented_labeling: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub topology: Option<Topology>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular: Option<RegularReport>,
}

/// Collects the topology and area data of a labeling. Non-proper inputs get
/// their violations and no topology.
pub fn analyze(labeling: &Labeling) -> Result<AnalysisReport> {
    let report = labeling::verify(labeling, SizeBound::Strict);
    let mut out = AnalysisReport {
        n: labeling.n(),
        m: labeling.m(),
        sizes: labeling.sizes(),
        proper: report.proper,
        oriented_labeling: report.proper && report.oriented,
        violations: report.violations,
        topology: None,
        regular: None,
    };
    if !out.proper {
        return Ok(out);
    }
    let surface = glue(labeling)?;
    let area = area_from_chi(surface.chi)?;
    out.topology = Some(Topology {
        vertices: surface.vertices,
        edges: surface.edges,
        faces: surface.faces,
        chi: surface.chi,
        orientable_surface: surface.orientable,
        surface: genus(&surface)?,
        area: area.into(),
        triangles: labeling.m() as usize,
    });
    if let Some(k) = labeling.regular_size() {
        let n_k = n_min(k as u32)?;
        let minimal = labeling.n() == n_k as usize;
        let bound = triangle_bound_value(labeling.n() as u64, k as u32);
        out.regular = Some(RegularReport {
            k,
            n_min: n_k,
            minimal,
            eek_admissible: eek_admissible(labeling.m() as u64, k as u32),
            tile_area_sum_matches: tile_area(k as u32).scale(labeling.m() as i64) == area,
            triangle_bound: bound.into(),
            triangle_bound_equality: bound == area,
            subgroup_index: minimal.then(|| 2 * n_k as u64 * k as u64),
        });
    }
    Ok(out)
}

/// [`analyze`] as pretty-printed JSON.
pub fn analyze_export(labeling: &Labeling) -> Result<String> {
    let report = analyze(labeling)?;
    Ok(serde_json::to_string_pretty(&report).expect("report serializes"))
}

const SVG_CELL: f64 = 220.0;
const SVG_RADIUS: f64 = 80.0;

fn pair_color(id: usize, count: usize) -> String {
    let hue = (id as f64 * 360.0 / count.max(1) as f64).round() as u32 % 360;
    let light = if id % 2 == 0 { 40 } else { 55 };
    format!("hsl({hue},70%,{light}%)")
}

/// Schematic drawing: each polygon as a regular Euclidean polygon with its
/// labels, glued edges sharing a color and a `pN` id.
pub fn render_svg(labeling: &Labeling) -> Result<String> {
    if labeling.n() > SVG_MAX_POLYGONS {
        return Err(Error::Precondition(format!(
            "rendering is limited to {SVG_MAX_POLYGONS} polygons, got {}",
            labeling.n()
        )));
    }
    let table = pairing(labeling)?;
    let mut pair_of = vec![0usize; labeling.total_vertices()];
    for (id, p) in table.pairs.iter().enumerate() {
        pair_of[table.slot(p.first)] = id;
        pair_of[table.slot(p.second)] = id;
    }

    let cols = (labeling.n() as f64).sqrt().ceil() as usize;
    let rows = labeling.n().div_ceil(cols);
    let (width, height) = (cols as f64 * SVG_CELL, rows as f64 * SVG_CELL);
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    for (pi, poly) in labeling.polygons().iter().enumerate() {
        let cx = (pi % cols) as f64 * SVG_CELL + SVG_CELL / 2.0;
        let cy = (pi / cols) as f64 * SVG_CELL + SVG_CELL / 2.0;
        let k = poly.len();
        let corner = |i: usize, r: f64| {
            let t = -PI / 2.0 + 2.0 * PI * i as f64 / k as f64;
            (cx + r * t.cos(), cy + r * t.sin())
        };
        writeln!(svg, r#"<g id="polygon-{}">"#, pi + 1).unwrap();
        for i in 0..k {
            let (x1, y1) = corner(i, SVG_RADIUS);
            let (x2, y2) = corner((i + 1) % k, SVG_RADIUS);
            let id = pair_of[table.slot(labeling::EdgeRef {
                polygon: pi,
                position: i,
            })];
            let color = pair_color(id, table.len());
            writeln!(
                svg,
                r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{color}" stroke-width="4" data-pair="p{id}"/>"#
            )
            .unwrap();
            let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
            let (ix, iy) = (cx + (mx - cx) * 0.8, cy + (my - cy) * 0.8);
            writeln!(
                svg,
                r#"<text x="{ix:.2}" y="{iy:.2}" font-size="8" fill="{color}" text-anchor="middle" dominant-baseline="middle">p{id}</text>"#
            )
            .unwrap();
        }
        for (i, label) in poly.iter().enumerate() {
            let (x, y) = corner(i, SVG_RADIUS + 14.0);
            writeln!(
                svg,
                r#"<text x="{x:.2}" y="{y:.2}" font-size="12" font-family="monospace" text-anchor="middle" dominant-baseline="middle">{label}</text>"#
            )
            .unwrap();
        }
        writeln!(svg, "</g>").unwrap();
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Reads an edge list, one `u v` pair of 1-based vertex ids per line.
pub fn parse_graph(text: &str) -> Result<CubicGraph> {
    let mut edges = Vec::new();
    let mut vertex_count = 0;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let toks: Vec<_> = tokens(line.trim_end_matches('\r')).collect();
        if toks.len() != 2 {
            return Err(parse_error(line_no, 1, "expected \"u v\""));
        }
        let mut ends = [0usize; 2];
        for (slot, (col, tok)) in ends.iter_mut().zip(&toks) {
            let v: usize = parse_number(line_no, *col, tok)?;
            if v == 0 {
                return Err(parse_error(line_no, *col, "vertex ids start at 1"));
            }
            *slot = v;
        }
        vertex_count = vertex_count.max(ends[0]).max(ends[1]);
        edges.push((ends[0] - 1, ends[1] - 1));
    }
    CubicGraph::new(vertex_count, edges)
}
