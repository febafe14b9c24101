//! Hyperbolic quantities: regular triangles, Gauss-Bonnet areas, the
//! triangle bound and minimal areas.
//!
//! Areas are exact rational multiples of π ([`PiMultiple`]); floating values
//! are derived views.

use std::f64::consts::PI;
use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::builders::n_min;
use crate::error::{Error, Result};

/// Tolerance for floating comparisons of derived values.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

/// An exact rational multiple of π.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PiMultiple(pub Ratio<i64>);

impl PiMultiple {
    pub fn new(numer: i64, denom: i64) -> Self {
        PiMultiple(Ratio::new(numer, denom))
    }

    pub fn integer(v: i64) -> Self {
        PiMultiple(Ratio::from_integer(v))
    }

    pub fn coefficient(self) -> Ratio<i64> {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64 * PI
    }

    pub fn scale(self, by: i64) -> Self {
        PiMultiple(self.0 * by)
    }
}

/// Rendered as `p/q·π`, e.g. `2/1·π`.
impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}·π", self.0.numer(), self.0.denom())
    }
}

impl Serialize for PiMultiple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TriangleGeometry {
    pub alpha: f64,
    pub area: f64,
    pub inradius: f64,
    pub circumradius: f64,
}

/// Regular hyperbolic triangle with interior angle `alpha`.
///
/// The triangle splits into six right triangles with angles π/3 at the
/// center, α/2 at a vertex and a right angle at an edge midpoint. The
/// inradius is the leg opposite α/2, the circumradius the hypotenuse:
/// `cosh r = cos(α/2) / sin(π/3)` and `cosh R = cot(π/3)·cot(α/2)`.
pub fn triangle_geometry(alpha: f64) -> Result<TriangleGeometry> {
    if !(alpha > 0.0 && alpha < PI / 3.0) {
        return Err(Error::AngleOutOfRange(alpha));
    }
    let half = alpha / 2.0;
    let cosh_r = half.cos() / (PI / 3.0).sin();
    let cosh_big_r = 1.0 / ((PI / 3.0).tan() * half.tan());
    Ok(TriangleGeometry {
        alpha,
        area: PI - 3.0 * alpha,
        inradius: cosh_r.max(1.0).acosh(),
        circumradius: cosh_big_r.max(1.0).acosh(),
    })
}

/// Area of one tile of angle `2π/k`, i.e. `π - 6π/k`.
pub fn tile_area(k: u32) -> PiMultiple {
    PiMultiple::new(k as i64 - 6, k as i64)
}

/// Gauss-Bonnet area `2π|χ|` of a closed hyperbolic surface.
pub fn area_from_chi(chi: i64) -> Result<PiMultiple> {
    if chi >= 0 {
        return Err(Error::NotHyperbolic(chi));
    }
    Ok(PiMultiple::integer(2 * chi.abs()))
}

/// `n·(2π/3α)·A(T)` at `α = 2π/k`, exactly.
pub fn triangle_bound_value(n: u64, k: u32) -> PiMultiple {
    // (2π / (3·2π/k)) · (π - 6π/k) = (k/3)·((k-6)/k)·π = (k-6)/3·π
    PiMultiple::new(n as i64 * (k as i64 - 6), 3)
}

/// `n·(2π/3α)·(π - 3α)` for an arbitrary angle, as a float.
pub fn triangle_bound_value_f64(n: u64, alpha: f64) -> f64 {
    n as f64 * (2.0 * PI / (3.0 * alpha)) * (PI - 3.0 * alpha)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalArea {
    pub general: PiMultiple,
    pub oriented: PiMultiple,
    pub subgroup_index: u64,
}

/// Minimal area of a (oriented) surface tiled by triangles of angle `2π/k`.
pub fn minimal_area(k: u32) -> Result<MinimalArea> {
    let n = n_min(k)? as i64;
    let general = PiMultiple::new(n * (k as i64 - 6), 3);
    let oriented = if matches!(k % 12, 2 | 6 | 10) {
        general
    } else {
        general.scale(2)
    };
    Ok(MinimalArea {
        general,
        oriented,
        subgroup_index: 2 * n as u64 * k as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent route: side length from the full triangle's angle law,
    /// circumradius from the center triangle's angle law, inradius from the
    /// hyperbolic Pythagorean theorem.
    fn law_of_cosines(alpha: f64) -> (f64, f64) {
        let side =
            ((alpha.cos() + alpha.cos() * alpha.cos()) / (alpha.sin() * alpha.sin())).acosh();
        let c = 2.0 * PI / 3.0;
        let h = alpha / 2.0;
        let big_r = ((h.cos() + h.cos() * c.cos()) / (h.sin() * c.sin())).acosh();
        let r = (big_r.cosh() / (side / 2.0).cosh()).acosh();
        (r, big_r)
    }

    #[test]
    fn heptagonal_tile_area() {
        let t = triangle_geometry(2.0 * PI / 7.0).unwrap();
        assert!((t.area - PI / 7.0).abs() < FLOAT_TOLERANCE);
        assert_eq!(tile_area(7), PiMultiple::new(1, 7));
    }

    #[test]
    fn radii_match_oracle() {
        for k in 7..=30 {
            let alpha = 2.0 * PI / k as f64;
            let t = triangle_geometry(alpha).unwrap();
            let (r, big_r) = law_of_cosines(alpha);
            assert!(
                (t.inradius - r).abs() < FLOAT_TOLERANCE,
                "k={k}: {} vs {r}",
                t.inradius
            );
            assert!((t.circumradius - big_r).abs() < FLOAT_TOLERANCE, "k={k}");
            assert!(0.0 < t.inradius && t.inradius < t.circumradius);
        }
    }

    #[test]
    fn euclidean_limit() {
        let t = triangle_geometry(PI / 3.0 - 1e-9).unwrap();
        assert!(t.area < 1e-8 && t.inradius < 1e-3 && t.circumradius < 1e-3);
        assert!(triangle_geometry(PI / 3.0).is_err());
        assert!(triangle_geometry(0.0).is_err());
    }

    #[test]
    fn gauss_bonnet() {
        assert_eq!(area_from_chi(-1).unwrap(), PiMultiple::integer(2));
        assert_eq!(area_from_chi(-2).unwrap(), PiMultiple::integer(4));
        assert_eq!(area_from_chi(0), Err(Error::NotHyperbolic(0)));
    }

    #[test]
    fn triangle_bound_examples() {
        assert_eq!(triangle_bound_value(6, 7), PiMultiple::integer(2));
        assert_eq!(triangle_bound_value(3, 10), PiMultiple::integer(4));
        assert_eq!(triangle_bound_value(1, 6), PiMultiple::integer(0));
        let f = triangle_bound_value_f64(6, 2.0 * PI / 7.0);
        assert!((f - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn minimal_area_examples() {
        let a7 = minimal_area(7).unwrap();
        assert_eq!(a7.general, PiMultiple::integer(2));
        assert_eq!(a7.oriented, PiMultiple::integer(4));
        assert_eq!(a7.subgroup_index, 84);
        let a10 = minimal_area(10).unwrap();
        assert_eq!(
            (a10.general, a10.oriented),
            (PiMultiple::integer(4), PiMultiple::integer(4))
        );
        let a12 = minimal_area(12).unwrap();
        assert_eq!(
            (a12.general, a12.oriented),
            (PiMultiple::integer(2), PiMultiple::integer(4))
        );
        assert!(minimal_area(6).is_err());
        assert_eq!(PiMultiple::integer(2).to_string(), "2/1·π");
    }
}
