use proptest::prelude::*;

use htl_core::builders::build;
use htl_core::rewrite::{apply_a, apply_b, apply_c, pair_sites, triangle_sites, LongSide};
use htl_core::surface::glue;
use htl_core::{bases, canonicalize, oriented, verify, Label, Labeling, SizeBound};

fn corpus() -> Vec<Labeling> {
    vec![
        bases::six_heptagons(),
        bases::three_decagons(),
        bases::two_nonagons(),
        bases::three_octagons(),
        bases::eighteen_gon(),
        bases::twelve_gon(),
    ]
}

/// Relabels by `perm`, rotates each polygon, optionally mirrors everything
/// and reorders the polygons.
fn scramble(
    l: &Labeling,
    perm: &[Label],
    rotations: &[usize],
    mirror: bool,
    order: &[usize],
) -> Labeling {
    let polys = order
        .iter()
        .map(|&pi| {
            let p = l.polygon(pi);
            let r = rotations[pi] % p.len();
            let mut q: Vec<Label> = p[r..]
                .iter()
                .chain(&p[..r])
                .map(|&x| perm[x as usize - 1])
                .collect();
            if mirror {
                q.reverse();
            }
            q
        })
        .collect();
    Labeling::new(polys).unwrap()
}

fn symmetry() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>, bool, Vec<usize>)> {
    (0..6usize).prop_flat_map(|i| {
        let l = &corpus()[i];
        let (m, n) = (l.m() as usize, l.n());
        (
            Just(i),
            Just((0..m).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec(0..64usize, n),
            any::<bool>(),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
    })
}

proptest! {
    #[test]
    fn canonical_form_ignores_symmetries((i, perm, rotations, mirror, order) in symmetry()) {
        let l = &corpus()[i];
        let perm: Vec<Label> = perm.iter().map(|&x| x as Label + 1).collect();
        let s = scramble(l, &perm, &rotations, mirror, &order);
        let c = canonicalize(&s);
        prop_assert_eq!(&c, &canonicalize(l));
        prop_assert_eq!(canonicalize(&c), c.clone());
        prop_assert!(verify(&c, SizeBound::Strict).proper);
        prop_assert_eq!(glue(&c).unwrap().chi, glue(l).unwrap().chi);
    }

    #[test]
    fn relabeling_keeps_topology((i, perm, rotations, mirror, order) in symmetry()) {
        let l = &corpus()[i];
        let perm: Vec<Label> = perm.iter().map(|&x| x as Label + 1).collect();
        let s = scramble(l, &perm, &rotations, mirror, &order);
        let (a, b) = (glue(l).unwrap(), glue(&s).unwrap());
        prop_assert_eq!((a.vertices, a.edges, a.faces, a.orientable), (b.vertices, b.edges, b.faces, b.orientable));
    }

    #[test]
    fn rewrite_chains_stay_proper(start in 0..6usize, ops in prop::collection::vec((0..3usize, any::<prop::sample::Index>(), any::<bool>()), 1..5)) {
        let mut l = corpus()[start].clone();
        for (op, pick, long_e) in ops {
            let was_oriented = oriented(&l).unwrap();
            l = match op {
                0 | 1 => {
                    let sites = triangle_sites(&l).unwrap();
                    prop_assume!(!sites.is_empty());
                    let site = pick.get(&sites);
                    if op == 0 { apply_a(&l, site).unwrap() } else { apply_b(&l, site).unwrap() }
                }
                _ => {
                    let sites = pair_sites(&l).unwrap();
                    let side = if long_e { LongSide::E } else { LongSide::F };
                    apply_c(&l, pick.get(&sites), side).unwrap()
                }
            };
            prop_assert!(verify(&l, SizeBound::Strict).proper);
            if op == 1 && was_oriented {
                prop_assert!(oriented(&l).unwrap());
            }
        }
    }
}

#[test]
fn builder_outputs_are_proper_up_to_48() {
    for k in 7..=48 {
        let l = build(k).unwrap();
        assert!(verify(&l, SizeBound::Strict).proper, "k = {k}");
        assert_eq!(canonicalize(&canonicalize(&l)), canonicalize(&l));
    }
}
