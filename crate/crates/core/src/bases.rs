//! Base labelings for the six residue classes of `k` modulo 12.

use crate::labeling::{Label, Labeling};

fn from_rows(rows: &[&[Label]]) -> Labeling {
    Labeling::new(rows.iter().map(|r| r.to_vec()).collect())
        .expect("embedded labeling is well formed")
}

/// Six heptagons, m = 14.
pub fn six_heptagons() -> Labeling {
    from_rows(&[
        &[1, 6, 9, 4, 2, 8, 7],
        &[1, 7, 13, 5, 2, 4, 3],
        &[1, 3, 14, 8, 2, 5, 6],
        &[7, 8, 14, 12, 11, 10, 13],
        &[3, 4, 9, 11, 10, 12, 14],
        &[9, 6, 5, 13, 10, 12, 11],
    ])
}

/// Three decagons, m = 10; oriented.
pub fn three_decagons() -> Labeling {
    from_rows(&[
        &[10, 9, 3, 2, 1, 6, 5, 8, 1, 2],
        &[10, 2, 3, 4, 5, 6, 7, 8, 5, 4],
        &[10, 4, 3, 9, 7, 6, 1, 8, 7, 9],
    ])
}

/// Two 9-gons, m = 6; the second contains the run 3,3,3.
pub fn two_nonagons() -> Labeling {
    from_rows(&[&[4, 6, 5, 1, 4, 6, 2, 1, 5], &[4, 5, 6, 2, 3, 3, 3, 2, 1]])
}

/// Three octagons, m = 8, with runs of equal labels.
pub fn three_octagons() -> Labeling {
    from_rows(&[
        &[8, 2, 1, 1, 1, 2, 3, 6],
        &[8, 4, 5, 5, 5, 4, 3, 2],
        &[8, 6, 7, 7, 7, 6, 3, 4],
    ])
}

/// The 18-gon as printed; label 7 occurs once and label 1 twice.
pub fn eighteen_gon_printed() -> Labeling {
    from_rows(&[&[1, 2, 3, 4, 5, 1, 6, 5, 4, 2, 7, 5, 6, 3, 2, 4, 3, 6]])
}

/// The 18-gon with position 11 (1-based) corrected from 7 to 1; oriented.
pub fn eighteen_gon() -> Labeling {
    from_rows(&[&[1, 2, 3, 4, 5, 1, 6, 5, 4, 2, 1, 5, 6, 3, 2, 4, 3, 6]])
}

/// A single 12-gon, m = 4.
pub fn twelve_gon() -> Labeling {
    from_rows(&[&[1, 2, 3, 4, 1, 3, 2, 4, 3, 1, 2, 4]])
}
