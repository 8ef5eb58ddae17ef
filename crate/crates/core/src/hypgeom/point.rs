use core::f64::consts::TAU;

use num_complex::Complex64;

use super::GeomError;

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DiskPoint {
    pub x: f64,
    pub y: f64,
}

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Result<Self, GeomError> {
        let p = DiskPoint { x, y };
        if p.is_interior() {
            Ok(p)
        } else {
            Err(GeomError::OutsideDisk { x, y })
        }
    }

    /// The point at hyperbolic distance `distance` from the origin in direction `angle`.
    pub fn at_distance(distance: f64, angle: f64) -> Self {
        let r = libm::tanh(0.5 * distance);
        DiskPoint {
            x: r * libm::cos(angle),
            y: r * libm::sin(angle),
        }
    }

    pub fn is_interior(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.norm_sq() < 1.0
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn norm(&self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    /// Polar angle in `[0, 2π)`.
    pub fn angle(&self) -> f64 {
        let t = libm::atan2(self.y, self.x);
        if t < 0.0 {
            let wrapped = t + TAU;
            // atan2 can return -0.0 or a tiny negative that wraps to exactly TAU
            if wrapped >= TAU {
                0.0
            } else {
                wrapped
            }
        } else {
            t
        }
    }

    /// Euclidean distance in the disk chart.
    pub fn euclid_dist(&self, other: &DiskPoint) -> f64 {
        libm::hypot(self.x - other.x, self.y - other.y)
    }

    pub(crate) fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub(crate) fn from_complex(z: Complex64) -> Self {
        DiskPoint { x: z.re, y: z.im }
    }
}

/// Hyperbolic distance `2·artanh(|p - q| / |1 - p̄q|)`.
pub fn dist(p: &DiskPoint, q: &DiskPoint) -> Result<f64, GeomError> {
    for pt in [p, q] {
        if !pt.is_interior() {
            return Err(GeomError::OutsideDisk { x: pt.x, y: pt.y });
        }
    }
    let (zp, zq) = (p.to_complex(), q.to_complex());
    let num = (zp - zq).norm();
    if num == 0.0 {
        return Ok(0.0);
    }
    let den = (Complex64::new(1.0, 0.0) - zp.conj() * zq).norm();
    Ok(2.0 * libm::atanh(num / den))
}
