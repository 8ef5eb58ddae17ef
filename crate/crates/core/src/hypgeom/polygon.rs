use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use super::{GeomError, Isometry};

/// The regular hyperbolic polygon with `n` sides and interior angles `2π/m`, centred
/// at the disk origin. Side `i` (0-based, labelled `i + 1` by the groups) is
/// perpendicular to the direction `side_angles[i] = 2πi/n`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PolygonSpec {
    pub n: u32,
    pub m: u32,
    /// Centre-to-side distance, `arccosh(cos(π/m)/sin(π/n))`.
    pub inradius: f64,
    /// Centre-to-vertex distance, `arccosh(cot(π/m)·cot(π/n))`.
    pub circumradius: f64,
    /// Angle defect `(n-2)π - n·2π/m`.
    pub area: f64,
    pub side_angles: Vec<f64>,
}

impl PolygonSpec {
    /// Hyperbolic diameter of the polygon, twice the circumradius.
    pub fn diameter(&self) -> f64 {
        2.0 * self.circumradius
    }
}

/// `m(n-2) > 2n`, i.e. the angle sum is below that of a Euclidean `n`-gon.
pub fn is_hyperbolic(n: u32, m: u32) -> bool {
    n >= 3 && m >= 3 && u64::from(m) * u64::from(n - 2) > 2 * u64::from(n)
}

pub fn polygon_spec(n: u32, m: u32) -> Result<PolygonSpec, GeomError> {
    if n < 3 || m < 3 {
        return Err(GeomError::TooFewSides { n, m });
    }
    if !is_hyperbolic(n, m) {
        return Err(GeomError::NotHyperbolic {
            n,
            m,
            lhs: u64::from(m) * u64::from(n - 2),
            rhs: 2 * u64::from(n),
        });
    }
    let (pn, pm) = (PI / f64::from(n), PI / f64::from(m));
    let inradius = libm::acosh(libm::cos(pm) / libm::sin(pn));
    let circumradius = libm::acosh(1.0 / (libm::tan(pm) * libm::tan(pn)));
    let area = f64::from(n - 2) * PI - f64::from(n) * 2.0 * pm;
    let side_angles = (0..n).map(|i| TAU * f64::from(i) / f64::from(n)).collect();
    Ok(PolygonSpec {
        n,
        m,
        inradius,
        circumradius,
        area,
        side_angles,
    })
}

/// Reflections in the sides of the polygon, in side order. Each fixes the geodesic at
/// distance `inradius` perpendicular to its side direction.
pub fn side_reflections(spec: &PolygonSpec) -> Vec<Isometry> {
    spec.side_angles
        .iter()
        .map(|&angle| Isometry::reflection_in_line(angle, spec.inradius))
        .collect()
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use crate::hypgeom::{apply, dist, DiskPoint};

    #[test]
    fn inradius_arguments_match_tabulated_f() {
        let s = polygon_spec(8, 3).unwrap();
        assert!((libm::cosh(s.inradius) - 1.30656).abs() < 1e-5);
        let s = polygon_spec(6, 4).unwrap();
        assert!((libm::cosh(s.inradius) - 1.41421).abs() < 1e-5);
    }

    #[test]
    fn euclidean_and_spherical_pairs_are_rejected() {
        assert!(matches!(
            polygon_spec(4, 4),
            Err(GeomError::NotHyperbolic { lhs: 8, rhs: 8, .. })
        ));
        assert!(matches!(polygon_spec(6, 3), Err(GeomError::NotHyperbolic { .. })));
        assert!(matches!(polygon_spec(3, 5), Err(GeomError::NotHyperbolic { .. })));
        assert!(matches!(polygon_spec(2, 9), Err(GeomError::TooFewSides { .. })));
    }

    #[test]
    fn radii_and_area_are_consistent() {
        for (n, m) in [(3, 7), (4, 5), (5, 4), (8, 8), (12, 3), (30, 30)] {
            let s = polygon_spec(n, m).unwrap();
            assert!(0.0 < s.inradius && s.inradius < s.circumradius, "{n},{m}");
            assert!(s.area > 0.0);
            // right triangle centre / side midpoint / vertex: cosh c = cosh h · cosh(half side)
            // and angle at centre π/n gives tanh h = tanh c · cos(π/n)
            let lhs = libm::tanh(s.inradius);
            let rhs = libm::tanh(s.circumradius) * libm::cos(PI / f64::from(n));
            assert!((lhs - rhs).abs() < 1e-12, "{n},{m}");
        }
    }

    #[test]
    fn side_reflections_are_involutions_moving_origin_by_twice_inradius() {
        let s = polygon_spec(5, 4).unwrap();
        for r in side_reflections(&s) {
            assert!(r.reversing);
            assert!(r.compose(&r).is_identity(1e-9));
            let img = apply(&r, &DiskPoint::ORIGIN).unwrap();
            assert!((dist(&DiskPoint::ORIGIN, &img).unwrap() - 2.0 * s.inradius).abs() < 1e-12);
        }
    }

    #[test]
    fn adjacent_side_reflections_satisfy_the_dihedral_relation() {
        for (n, m) in [(4, 6), (5, 4), (7, 10)] {
            let s = polygon_spec(n, m).unwrap();
            let r = side_reflections(&s);
            for i in 0..n as usize {
                let pair = r[i].compose(&r[(i + 1) % n as usize]);
                assert!(pair.pow(m / 2).is_identity(1e-9), "({n},{m}) side {i}");
                assert!(!pair.is_identity(1e-6));
            }
        }
    }
}
