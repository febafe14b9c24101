//! Rewrites that grow a proper labeling while keeping it proper.
//!
//! * (a) and (b) act at a label `w` whose three occurrences sit on boundary
//!   paths `x w y`, `y w z`, `z w x`; each occurrence of `w` is replaced by a
//!   short string of fresh labels and `w`.
//! * (c) acts on a pair of edges labeled `{x, y}`, subdividing one edge into
//!   `x α β β β α y` and the other into `x α y`.
//!
//! A witness path may read against the positive boundary order; the
//! replacement string is then inserted reversed.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::labeling::{self, require_proper, EdgeRef, Label, Labeling, PairKind};

/// One occurrence of the site's center label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Witness {
    pub polygon: usize,
    pub center: usize,
    /// The path reads right-to-left in positive boundary order.
    pub reversed: bool,
}

/// Applicability witness for operations (a) and (b).
///
/// `witnesses[0]` carries the path `x w y`, `witnesses[1]` the path
/// `y w z` and `witnesses[2]` the path `z w x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TriangleSite {
    pub w: Label,
    pub x: Label,
    pub y: Label,
    pub z: Label,
    pub witnesses: [Witness; 3],
}

impl TriangleSite {
    /// Polygons touched by the three paths, in witness order.
    pub fn polygons(&self) -> [usize; 3] {
        self.witnesses.map(|w| w.polygon)
    }

    fn path_ends(&self) -> [(Label, Label); 3] {
        [(self.x, self.y), (self.y, self.z), (self.z, self.x)]
    }
}

impl fmt::Display for TriangleSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w={} (x,y,z)=({},{},{})", self.w, self.x, self.y, self.z)
    }
}

/// Applicability witness for operation (c): a distinct-label proper pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PairSite {
    pub e: EdgeRef,
    pub f: EdgeRef,
    pub x: Label,
    pub y: Label,
}

impl PairSite {
    pub fn polygons(&self) -> [usize; 2] {
        [self.e.polygon, self.f.polygon]
    }

    pub fn has_labels(&self, a: Label, b: Label) -> bool {
        (self.x, self.y) == (a.min(b), a.max(b))
    }
}

/// Which edge of a [`PairSite`] receives the long replacement path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LongSide {
    E,
    F,
}

/// The three occurrences of `w` with their (previous, next) neighbours.
fn neighbourhood(labeling: &Labeling, w: Label) -> Vec<(usize, usize, Label, Label)> {
    let mut occ = Vec::with_capacity(3);
    for (pi, poly) in labeling.polygons().iter().enumerate() {
        for (pos, &l) in poly.iter().enumerate() {
            if l == w {
                let prev = labeling.label_at(pi, pos as isize - 1);
                let next = labeling.label_at(pi, pos as isize + 1);
                occ.push((pi, pos, prev, next));
            }
        }
    }
    occ
}

/// Site at `w` with the given assignment of `x`, `y`, `z`.
pub fn site_with(
    labeling: &Labeling,
    w: Label,
    x: Label,
    y: Label,
    z: Label,
) -> Result<TriangleSite> {
    let stale = |why: &str| Error::StaleSite(format!("w={w} (x,y,z)=({x},{y},{z}): {why}"));
    let labels = [w, x, y, z];
    if (0..4).any(|i| (i + 1..4).any(|j| labels[i] == labels[j])) {
        return Err(stale("labels are not pairwise distinct"));
    }
    let occ = neighbourhood(labeling, w);
    if occ.len() != 3 {
        return Err(stale("center does not occur exactly three times"));
    }
    let mut used = [false; 3];
    let mut witnesses = [Witness {
        polygon: 0,
        center: 0,
        reversed: false,
    }; 3];
    for (slot, (a, b)) in [(x, y), (y, z), (z, x)].into_iter().enumerate() {
        let found = occ.iter().enumerate().find(|(i, (_, _, prev, next))| {
            !used[*i] && ((*prev, *next) == (a, b) || (*prev, *next) == (b, a))
        });
        let Some((i, &(pi, pos, prev, _))) = found else {
            return Err(stale("missing boundary path"));
        };
        used[i] = true;
        witnesses[slot] = Witness {
            polygon: pi,
            center: pos,
            reversed: prev != a,
        };
    }
    Ok(TriangleSite {
        w,
        x,
        y,
        z,
        witnesses,
    })
}

/// The canonical site at `w`, if `w`'s neighbourhood forms a triangle.
///
/// Among the six assignments of `x, y, z`, the one with the most witnesses
/// read in positive order wins; ties go to the lexicographically least
/// `(x, y, z)`.
pub fn site_at(labeling: &Labeling, w: Label) -> Option<TriangleSite> {
    let occ = neighbourhood(labeling, w);
    if occ.len() != 3 {
        return None;
    }
    let mut tri: Vec<Label> = occ.iter().flat_map(|o| [o.2, o.3]).collect();
    if tri.contains(&w) {
        return None;
    }
    tri.sort_unstable();
    tri.dedup();
    if tri.len() != 3 {
        return None;
    }
    let [a, b, c] = [tri[0], tri[1], tri[2]];
    [
        (a, b, c),
        (a, c, b),
        (b, a, c),
        (b, c, a),
        (c, a, b),
        (c, b, a),
    ]
    .into_iter()
    .filter_map(|(x, y, z)| site_with(labeling, w, x, y, z).ok())
    .min_by_key(|s| {
        let reversed = s.witnesses.iter().filter(|w| w.reversed).count();
        (reversed, s.x, s.y, s.z)
    })
}

/// All triangle sites of a proper labeling, by ascending center label.
pub fn triangle_sites(labeling: &Labeling) -> Result<Vec<TriangleSite>> {
    require_proper(labeling)?;
    Ok((1..=labeling.m())
        .filter_map(|w| site_at(labeling, w))
        .collect())
}

fn check_site(labeling: &Labeling, site: &TriangleSite) -> Result<()> {
    let fresh = site_with(labeling, site.w, site.x, site.y, site.z)?;
    let mut a = fresh.witnesses;
    let mut b = site.witnesses;
    a.sort_by_key(|w| (w.polygon, w.center));
    b.sort_by_key(|w| (w.polygon, w.center));
    if a != b {
        return Err(Error::StaleSite(format!("{site}: witnesses moved")));
    }
    for (wit, (p, q)) in site.witnesses.iter().zip(site.path_ends()) {
        let prev = labeling.label_at(wit.polygon, wit.center as isize - 1);
        let next = labeling.label_at(wit.polygon, wit.center as isize + 1);
        let expected = if wit.reversed { (q, p) } else { (p, q) };
        if (prev, next) != expected {
            return Err(Error::StaleSite(format!(
                "{site}: witness direction mismatch"
            )));
        }
    }
    Ok(())
}

/// Replaces each witnessed occurrence of `w` by its interior string.
fn substitute_centers(
    labeling: &Labeling,
    site: &TriangleSite,
    interiors: [Vec<Label>; 3],
    new_m: Label,
) -> Result<Labeling> {
    let polygons = labeling
        .polygons()
        .iter()
        .enumerate()
        .map(|(pi, poly)| {
            let mut out = Vec::with_capacity(poly.len() + 4);
            for (pos, &l) in poly.iter().enumerate() {
                match site
                    .witnesses
                    .iter()
                    .position(|w| w.polygon == pi && w.center == pos)
                {
                    Some(slot) if site.witnesses[slot].reversed => {
                        out.extend(interiors[slot].iter().rev())
                    }
                    Some(slot) => out.extend(&interiors[slot]),
                    None => out.push(l),
                }
            }
            out
        })
        .collect();
    Labeling::with_label_count(polygons, new_m)
}

fn ensure_proper(result: Labeling, op: &str) -> Result<Labeling> {
    match require_proper(&result) {
        Ok(_) => Ok(result),
        Err(Error::NotProper(c)) => Err(Error::Inconsistent(format!(
            "operation ({op}) produced a labeling violating {c}"
        ))),
        Err(e) => Err(e),
    }
}

/// Operation (a): two new labels; paths become `x α w β y`, `y β α w z`,
/// `z w β α x`.
pub fn apply_a(labeling: &Labeling, site: &TriangleSite) -> Result<Labeling> {
    check_site(labeling, site)?;
    let m = labeling.m();
    let (w, alpha, beta) = (site.w, m + 1, m + 2);
    let interiors = [
        vec![alpha, w, beta],
        vec![beta, alpha, w],
        vec![w, beta, alpha],
    ];
    ensure_proper(substitute_centers(labeling, site, interiors, m + 2)?, "a")
}

/// Operation (b): four new labels; paths become `x α γ w δ β y`,
/// `y β γ α δ w z`, `z w γ β δ α x`.
pub fn apply_b(labeling: &Labeling, site: &TriangleSite) -> Result<Labeling> {
    check_site(labeling, site)?;
    let m = labeling.m();
    let (w, alpha, beta, gamma, delta) = (site.w, m + 1, m + 2, m + 3, m + 4);
    let interiors = [
        vec![alpha, gamma, w, delta, beta],
        vec![beta, gamma, alpha, delta, w],
        vec![w, gamma, beta, delta, alpha],
    ];
    ensure_proper(substitute_centers(labeling, site, interiors, m + 4)?, "b")
}

/// All distinct-label proper pairs, in pairing-table order.
pub fn pair_sites(labeling: &Labeling) -> Result<Vec<PairSite>> {
    let table = labeling::pairing(labeling)?;
    Ok(table
        .pairs
        .iter()
        .filter_map(|p| match p.kind {
            PairKind::Distinct { low, high } => Some(PairSite {
                e: p.first,
                f: p.second,
                x: low,
                y: high,
            }),
            PairKind::Fold { .. } => None,
        })
        .collect())
}

/// The pair site with endpoint labels `{a, b}`, if any.
pub fn pair_site_for(labeling: &Labeling, a: Label, b: Label) -> Result<Option<PairSite>> {
    Ok(pair_sites(labeling)?
        .into_iter()
        .find(|s| s.has_labels(a, b)))
}

fn edge_labels(labeling: &Labeling, e: EdgeRef) -> Option<(Label, Label)> {
    let poly = labeling.polygons().get(e.polygon)?;
    if e.position >= poly.len() {
        return None;
    }
    let a = poly[e.position];
    let b = poly[(e.position + 1) % poly.len()];
    Some((a.min(b), a.max(b)))
}

/// Operation (c): the long side becomes `x α β β β α y`, the other edge
/// `x α y`.
pub fn apply_c(labeling: &Labeling, site: &PairSite, long_side: LongSide) -> Result<Labeling> {
    if site.x >= site.y || site.e == site.f {
        return Err(Error::StaleSite(
            "pair site needs two edges with x < y".into(),
        ));
    }
    for e in [site.e, site.f] {
        if edge_labels(labeling, e) != Some((site.x, site.y)) {
            return Err(Error::StaleSite(format!(
                "edge {}:{} is not labeled {{{}, {}}}",
                e.polygon, e.position, site.x, site.y
            )));
        }
    }
    let m = labeling.m();
    let (alpha, beta) = (m + 1, m + 2);
    let (long, short) = match long_side {
        LongSide::E => (site.e, site.f),
        LongSide::F => (site.f, site.e),
    };
    let polygons = labeling
        .polygons()
        .iter()
        .enumerate()
        .map(|(pi, poly)| {
            let mut out = Vec::with_capacity(poly.len() + 5);
            for (pos, &l) in poly.iter().enumerate() {
                out.push(l);
                let here = EdgeRef {
                    polygon: pi,
                    position: pos,
                };
                if here == long {
                    out.extend([alpha, beta, beta, beta, alpha]);
                } else if here == short {
                    out.push(alpha);
                }
            }
            out
        })
        .collect();
    ensure_proper(Labeling::with_label_count(polygons, m + 2)?, "c")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases;
    use crate::labeling::{oriented, verify, SizeBound};

    fn neighbour_pairs(l: &Labeling, w: Label) -> Vec<(Label, Label)> {
        let mut v: Vec<_> = neighbourhood(l, w)
            .into_iter()
            .map(|(_, _, p, n)| (p.min(n), p.max(n)))
            .collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn heptagon_sites_at_1_and_10() {
        let l = bases::six_heptagons();
        let sites = triangle_sites(&l).unwrap();
        let s1 = sites.iter().find(|s| s.w == 1).unwrap();
        let mut tri = [s1.x, s1.y, s1.z];
        tri.sort_unstable();
        assert_eq!(tri, [3, 6, 7]);
        assert!(s1.witnesses.iter().all(|w| !w.reversed));
        assert_eq!(neighbour_pairs(&l, 1), vec![(3, 6), (3, 7), (6, 7)]);
        let s10 = sites.iter().find(|s| s.w == 10).unwrap();
        let mut polys = s10.polygons();
        polys.sort_unstable();
        assert_eq!(polys, [3, 4, 5]);
        let w: Vec<_> = sites.iter().map(|s| s.w).collect();
        let mut sorted = w.clone();
        sorted.sort_unstable();
        assert_eq!(w, sorted);
    }

    #[test]
    fn apply_a_counts_and_persistence() {
        let l = bases::six_heptagons();
        let s = site_at(&l, 1).unwrap();
        let r = apply_a(&l, &s).unwrap();
        assert_eq!(r.m(), l.m() + 2);
        assert_eq!(r.total_vertices(), l.total_vertices() + 6);
        let counts = r.label_counts();
        assert_eq!((counts[15], counts[16]), (3, 3));
        assert_eq!(r.sizes(), vec![9, 9, 9, 7, 7, 7]);
        let mut expected = vec![(15, 16), (15, s.z), (s.z, 16)];
        expected
            .iter_mut()
            .for_each(|p| *p = (p.0.min(p.1), p.0.max(p.1)));
        expected.sort_unstable();
        assert_eq!(neighbour_pairs(&r, 1), expected);
        assert!(site_at(&r, 1).is_some());
        assert!(verify(&r, SizeBound::Strict).proper);
    }

    #[test]
    fn apply_b_persistence_at_beta() {
        let l = bases::six_heptagons();
        let s = site_at(&l, 1).unwrap();
        let r = apply_b(&l, &s).unwrap();
        let (beta, gamma, delta) = (l.m() + 2, l.m() + 3, l.m() + 4);
        let mut expected = vec![(delta, s.y), (s.y, gamma), (gamma, delta)];
        expected
            .iter_mut()
            .for_each(|p| *p = (p.0.min(p.1), p.0.max(p.1)));
        expected.sort_unstable();
        assert_eq!(neighbour_pairs(&r, beta), expected);
        let sb = site_at(&r, beta).unwrap();
        let mut a = sb.polygons();
        let mut b = s.polygons();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
        assert_eq!(r.sizes(), vec![11, 11, 11, 7, 7, 7]);
    }

    #[test]
    fn decagon_b_at_10_stays_oriented() {
        let l = bases::three_decagons();
        let s = site_at(&l, 10).unwrap();
        let r = apply_b(&l, &s).unwrap();
        assert_eq!(r.regular_size(), Some(14));
        assert_eq!(r.n(), 3);
        assert!(verify(&r, SizeBound::Strict).proper);
        assert!(oriented(&r).unwrap());
    }

    #[test]
    fn eighteen_gon_single_b_gives_30_gon() {
        let l = bases::eighteen_gon();
        let s = site_at(&l, 1).unwrap();
        let r = apply_b(&l, &s).unwrap();
        assert_eq!(r.sizes(), vec![30]);
        assert!(oriented(&r).unwrap());
    }

    #[test]
    fn every_assignment_of_b_preserves_orientation() {
        let l = bases::three_decagons();
        let s = site_at(&l, 10).unwrap();
        let [a, b, c] = [s.x, s.y, s.z];
        for (x, y, z) in [
            (a, b, c),
            (a, c, b),
            (b, a, c),
            (b, c, a),
            (c, a, b),
            (c, b, a),
        ] {
            let site = site_with(&l, 10, x, y, z).unwrap();
            let r = apply_b(&l, &site).unwrap();
            assert!(oriented(&r).unwrap(), "assignment {x},{y},{z}");
        }
    }

    #[test]
    fn stale_sites_are_refused() {
        let l = bases::six_heptagons();
        let s = site_at(&l, 1).unwrap();
        let r = apply_b(&l, &s).unwrap();
        assert!(matches!(apply_b(&r, &s), Err(Error::StaleSite(_))));
        let mut moved = s;
        moved.witnesses[0].reversed = !moved.witnesses[0].reversed;
        assert!(matches!(apply_a(&l, &moved), Err(Error::StaleSite(_))));
    }

    #[test]
    fn pair_sites_on_bases() {
        let f6 = bases::two_nonagons();
        let s = pair_site_for(&f6, 4, 5).unwrap().unwrap();
        let mut polys = s.polygons();
        polys.sort_unstable();
        assert_eq!(polys, [0, 1]);
        assert_eq!(pair_sites(&bases::twelve_gon()).unwrap().len(), 6);
        let f7 = bases::three_octagons();
        let sites = pair_sites(&f7).unwrap();
        assert_eq!(sites.len(), 12 - 3);
        assert!(sites.iter().all(|s| s.x != s.y));
    }

    #[test]
    fn apply_c_on_two_nonagons() {
        let l = bases::two_nonagons();
        let s = pair_site_for(&l, 4, 5).unwrap().unwrap();
        let long = if s.e.polygon == 0 {
            LongSide::E
        } else {
            LongSide::F
        };
        let once = apply_c(&l, &s, long).unwrap();
        assert_eq!(once.sizes(), vec![14, 10]);
        let counts = once.label_counts();
        assert_eq!((counts[7], counts[8]), (3, 3));
        let alpha = 7;
        let next = pair_site_for(&once, 4, alpha).unwrap().unwrap();
        let long = if next.e.polygon == 1 {
            LongSide::E
        } else {
            LongSide::F
        };
        let twice = apply_c(&once, &next, long).unwrap();
        assert_eq!(twice.sizes(), vec![15, 15]);
        assert!(verify(&twice, SizeBound::Strict).proper);
    }

    #[test]
    fn apply_c_rejects_wrong_edges() {
        let l = bases::two_nonagons();
        let mut s = pair_site_for(&l, 4, 5).unwrap().unwrap();
        s.f.position = (s.f.position + 3) % 9;
        assert!(matches!(
            apply_c(&l, &s, LongSide::E),
            Err(Error::StaleSite(_))
        ));
    }
}
