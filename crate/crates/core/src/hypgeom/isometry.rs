use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::{DiskPoint, GeomError};

/// Largest `|ad| + |bc|` for which [`Isometry::normalized`] trusts the determinant
/// (relative error below about `1e-8`).
pub const NORMALIZE_LIMIT: f64 = 6.7e7;

/// An isometry of the hyperbolic plane.
///
/// `[[a, b], [c, d]]` acts on the upper half-plane by `z ↦ (az + b)/(cz + d)` when
/// orientation-preserving and by `z ↦ (az̄ + b)/(cz̄ + d)` when `reversing`. Entries are
/// kept normalized to `|ad - bc| = 1`; the determinant is `+1` for preserving maps and
/// `-1` for reversing ones.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Isometry {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub reversing: bool,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
        reversing: false,
    };

    /// Builds and normalizes an isometry; the sign of the determinant must match
    /// `reversing`.
    pub fn new(a: f64, b: f64, c: f64, d: f64, reversing: bool) -> Result<Self, GeomError> {
        let det = a * d - b * c;
        let finite = [a, b, c, d].iter().all(|v| v.is_finite());
        if !finite || det == 0.0 || (det < 0.0) != reversing {
            return Err(GeomError::InvalidIsometry);
        }
        Ok(Isometry {
            a,
            b,
            c,
            d,
            reversing,
        }
        .normalized())
    }

    /// Rotation about the disk origin by `angle` (counter-clockwise).
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = (libm::sin(0.5 * angle), libm::cos(0.5 * angle));
        Isometry {
            a: c,
            b: s,
            c: -s,
            d: c,
            reversing: false,
        }
    }

    /// Translation by `length` along the real diameter, moving the origin towards `+1`.
    pub fn translation(length: f64) -> Self {
        let e = libm::exp(0.5 * length);
        Isometry {
            a: e,
            b: 0.0,
            c: 0.0,
            d: 1.0 / e,
            reversing: false,
        }
    }

    /// Translation by `length` along the diameter in direction `angle`.
    pub fn translation_along(angle: f64, length: f64) -> Self {
        Self::rotation(angle)
            .compose(&Self::translation(length))
            .compose(&Self::rotation(-angle))
    }

    /// Complex conjugation of the disk, the reflection in the real diameter.
    pub fn conjugation() -> Self {
        Isometry {
            a: -1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
            reversing: true,
        }
    }

    /// Reflection in the diameter through the origin with direction `angle`.
    pub fn reflection_in_diameter(angle: f64) -> Self {
        Self::rotation(angle)
            .compose(&Self::conjugation())
            .compose(&Self::rotation(-angle))
    }

    /// Reflection in the geodesic perpendicular to direction `normal_angle` whose
    /// closest point to the origin is at hyperbolic distance `distance`.
    pub fn reflection_in_line(normal_angle: f64, distance: f64) -> Self {
        let to_foot = Self::translation_along(normal_angle, distance);
        to_foot
            .compose(&Self::reflection_in_diameter(normal_angle + FRAC_PI_2))
            .compose(&to_foot.inverse())
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    /// Rescales the entries so that `|det| = 1`.
    ///
    /// Skipped once `|ad| + |bc|` exceeds [`NORMALIZE_LIMIT`]: beyond that the computed
    /// determinant is dominated by cancellation error and rescaling by it would do more
    /// harm than the rounding drift it is meant to remove.
    #[must_use]
    pub fn normalized(self) -> Self {
        let magnitude = libm::fabs(self.a * self.d) + libm::fabs(self.b * self.c);
        if magnitude > NORMALIZE_LIMIT {
            return self;
        }
        let k = 1.0 / libm::sqrt(libm::fabs(self.det()));
        Isometry {
            a: self.a * k,
            b: self.b * k,
            c: self.c * k,
            d: self.d * k,
            reversing: self.reversing,
        }
    }

    /// `self ∘ other`: apply `other` first. The result is renormalized.
    #[must_use]
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
            reversing: self.reversing ^ other.reversing,
        }
        .normalized()
    }

    #[must_use]
    pub fn inverse(&self) -> Isometry {
        // adjugate divided by det; det is ±1
        let s = if self.reversing { -1.0 } else { 1.0 };
        Isometry {
            a: s * self.d,
            b: -s * self.b,
            c: -s * self.c,
            d: s * self.a,
            reversing: self.reversing,
        }
    }

    /// `self^k` for `k >= 0`.
    #[must_use]
    pub fn pow(&self, k: u32) -> Isometry {
        (0..k).fold(Isometry::IDENTITY, |acc, _| acc.compose(self))
    }

    /// The SU(1,1) pair `(α, β)` of the orientation-preserving part, so that the disk
    /// action is `p ↦ (αq + β)/(β̄q + ᾱ)` with `q = p̄` for reversing maps and `q = p`
    /// otherwise.
    pub fn disk_coefficients(&self) -> (Complex64, Complex64) {
        // reversing maps factor as M·K⁻¹ ∘ (z ↦ -z̄), and z ↦ -z̄ is disk conjugation
        let (a, b, c, d) = if self.reversing {
            (-self.a, self.b, -self.c, self.d)
        } else {
            (self.a, self.b, self.c, self.d)
        };
        let alpha = Complex64::new(0.5 * (a + d), 0.5 * (b - c));
        let beta = Complex64::new(0.5 * (a - d), -0.5 * (b + c));
        (alpha, beta)
    }

    /// Action on the disk without validating the input point.
    pub(crate) fn act(&self, p: DiskPoint) -> DiskPoint {
        let (alpha, beta) = self.disk_coefficients();
        let z = if self.reversing {
            p.to_complex().conj()
        } else {
            p.to_complex()
        };
        DiskPoint::from_complex((alpha * z + beta) / (beta.conj() * z + alpha.conj()))
    }

    /// The image of the origin.
    pub fn orbit_of_origin(&self) -> DiskPoint {
        let (alpha, beta) = self.disk_coefficients();
        DiskPoint::from_complex(beta / alpha.conj())
    }

    /// `d(0, g.0) = 2·asinh|β|`. Stays accurate both near the origin and far out,
    /// where disk coordinates have lost their resolution.
    pub fn displacement_from_origin(&self) -> f64 {
        let (_, beta) = self.disk_coefficients();
        2.0 * libm::asinh(beta.norm())
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    /// Frobenius distance between the matrices, minimized over the sign ambiguity
    /// `M ~ -M`. Orientation classes must agree, otherwise the distance is infinite.
    pub fn matrix_distance(&self, other: &Isometry) -> f64 {
        if self.reversing != other.reversing {
            return f64::INFINITY;
        }
        let minus = sq(self.a - other.a) + sq(self.b - other.b) + sq(self.c - other.c) + sq(self.d - other.d);
        let plus = sq(self.a + other.a) + sq(self.b + other.b) + sq(self.c + other.c) + sq(self.d + other.d);
        libm::sqrt(minus.min(plus))
    }

    pub fn approx_eq(&self, other: &Isometry, tol: f64) -> bool {
        self.matrix_distance(other) <= tol
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&Isometry::IDENTITY, tol)
    }
}

fn sq(v: f64) -> f64 {
    v * v
}

/// Möbius action of `iso` on an interior point.
pub fn apply(iso: &Isometry, p: &DiskPoint) -> Result<DiskPoint, GeomError> {
    if !iso.is_finite() || iso.det() == 0.0 {
        return Err(GeomError::InvalidIsometry);
    }
    if !p.is_interior() {
        return Err(GeomError::OutsideDisk { x: p.x, y: p.y });
    }
    Ok(iso.act(*p))
}

/// Translation length `2·arccosh(|tr|/2)` of an orientation-preserving isometry;
/// zero for elliptic and parabolic ones.
pub fn translation_length(iso: &Isometry) -> Result<f64, GeomError> {
    if iso.reversing {
        return Err(GeomError::WrongIsometryClass);
    }
    if !iso.is_finite() {
        return Err(GeomError::InvalidIsometry);
    }
    let half_trace = 0.5 * libm::fabs(iso.trace());
    if half_trace <= 1.0 {
        Ok(0.0)
    } else {
        Ok(2.0 * libm::acosh(half_trace))
    }
}
