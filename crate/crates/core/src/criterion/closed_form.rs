//! Closed forms for the canonical words and the monotone functions used to bound them.
//!
//! Notation follows the polygon: `f(n, m) = cos(π/m)/sin(π/n)` is the hyperbolic
//! cosine of the inradius, and for odd `n` the word `r_1 r_{(n+1)/2}` translates by
//! `2·arccosh(g(n, m))` with `g = sin(π/m)·cosh(inradius + circumradius)`.

use core::f64::consts::PI;

use super::{CriterionError, BORDERLINE_TOL};
use crate::hypgeom::is_hyperbolic;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InequalityOutcome {
    pub holds: bool,
    /// Left side minus right side.
    pub margin: f64,
    pub borderline: bool,
}

impl InequalityOutcome {
    fn from_margin(margin: f64) -> Self {
        InequalityOutcome {
            holds: margin > 0.0,
            margin,
            borderline: libm::fabs(margin) < BORDERLINE_TOL,
        }
    }
}

fn angles(n: u32, m: u32) -> (f64, f64) {
    (PI / f64::from(n), PI / f64::from(m))
}

/// `cos(π/m)/sin(π/n)`, the hyperbolic cosine of the inradius.
pub fn inradius_cosh(n: u32, m: u32) -> f64 {
    let (pn, pm) = angles(n, m);
    libm::cos(pm) / libm::sin(pn)
}

/// `cot(π/m)·cot(π/n)`, the hyperbolic cosine of the circumradius.
pub fn circumradius_cosh(n: u32, m: u32) -> f64 {
    let (pn, pm) = angles(n, m);
    1.0 / (libm::tan(pm) * libm::tan(pn))
}

/// `sin(π/m)·cosh(a)` with `a = inradius + circumradius`; half the translation
/// length of `r_1 r_{(n+1)/2}` is its arccosh. `None` off the hyperbolic domain.
pub fn odd_half_length_cosh(n: u32, m: u32) -> Option<f64> {
    if !is_hyperbolic(n, m) {
        return None;
    }
    let (_, pm) = angles(n, m);
    let a = libm::acosh(inradius_cosh(n, m)) + libm::acosh(circumradius_cosh(n, m));
    Some(libm::sin(pm) * libm::cosh(a))
}

/// The same quantity through `cosh(x + y) = cosh x cosh y + sinh x sinh y`, without
/// any arccosh: `f·A + sqrt(f² - 1)·sqrt(A² - sin²(π/m))` with `A = cos(π/m)·cot(π/n)`.
pub fn odd_half_length_cosh_expanded(n: u32, m: u32) -> Option<f64> {
    if !is_hyperbolic(n, m) {
        return None;
    }
    let (pn, pm) = angles(n, m);
    let f = inradius_cosh(n, m);
    let a = libm::cos(pm) / libm::tan(pn);
    let s = libm::sin(pm);
    Some(f * a + libm::sqrt(f * f - 1.0) * libm::sqrt(a * a - s * s))
}

/// `cos(π/m)`; increasing in `m`.
pub fn even_left(m: u32) -> f64 {
    libm::cos(PI / f64::from(m))
}

/// `sin(π/n)·(√n + ½)/2`; decreasing in `n` for `n >= 4`.
pub fn even_right(n: u32) -> f64 {
    let nf = f64::from(n);
    libm::sin(PI / nf) * (libm::sqrt(nf) + 0.5) / 2.0
}

/// `2cos²(π/m) - ½sin(π/n) - ½sin(2π/m)·tan(π/n)`.
pub fn odd_left(n: u32, m: u32) -> f64 {
    let (pn, pm) = angles(n, m);
    let c = libm::cos(pm);
    2.0 * c * c - 0.5 * libm::sin(pn) - 0.5 * libm::sin(2.0 * pm) * libm::tan(pn)
}

/// `sin²(π/n)/cos(π/n)·(n + 1)/2`.
pub fn odd_right(n: u32) -> f64 {
    let pn = PI / f64::from(n);
    let s = libm::sin(pn);
    s * s / libm::cos(pn) * (f64::from(n) + 1.0) / 2.0
}

/// The auxiliary functions at one `(n, m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AuxValues {
    pub inradius_cosh: f64,
    pub odd_half_length_cosh: Option<f64>,
    pub even_left: f64,
    pub even_right: f64,
    pub odd_left: f64,
    pub odd_right: f64,
}

pub fn aux_functions(n: u32, m: u32) -> AuxValues {
    AuxValues {
        inradius_cosh: inradius_cosh(n, m),
        odd_half_length_cosh: odd_half_length_cosh(n, m),
        even_left: even_left(m),
        even_right: even_right(n),
        odd_left: odd_left(n, m),
        odd_right: odd_right(n),
    }
}

fn require(n: u32, m: u32, ok: bool, reason: &'static str) -> Result<(), CriterionError> {
    if ok {
        Ok(())
    } else {
        Err(CriterionError::Domain { n, m, reason })
    }
}

fn require_hyperbolic(n: u32, m: u32) -> Result<(), CriterionError> {
    require(n, m, is_hyperbolic(n, m), "not hyperbolic, need m(n-2) > 2n")
}

/// `4·arccosh(f) > 2·log n`, the simple-walk check for `r_1 r_{n/2+1}`.
pub fn even_inequality(n: u32, m: u32) -> Result<InequalityOutcome, CriterionError> {
    require(n, m, n >= 4 && n.is_multiple_of(2), "need even n >= 4")?;
    require(n, m, m >= 4 && m.is_multiple_of(2), "need even m >= 4")?;
    require_hyperbolic(n, m)?;
    let margin = 4.0 * libm::acosh(inradius_cosh(n, m)) - 2.0 * libm::log(f64::from(n));
    Ok(InequalityOutcome::from_margin(margin))
}

/// `g > cosh(log n)`, the simple-walk check for `r_1 r_{(n+1)/2}`.
pub fn odd_inequality(n: u32, m: u32) -> Result<InequalityOutcome, CriterionError> {
    require(n, m, n >= 5 && n % 2 == 1, "need odd n >= 5")?;
    require(n, m, m >= 4 && m.is_multiple_of(2), "need even m >= 4")?;
    require_hyperbolic(n, m)?;
    let g = odd_half_length_cosh(n, m).expect("hyperbolic pair");
    let margin = g - libm::cosh(libm::log(f64::from(n)));
    Ok(InequalityOutcome::from_margin(margin))
}

/// `2·arccosh(f) > log n`: the side-pairing translation against the uniform weight.
pub fn fuchsian_margin(n: u32, m: u32) -> Result<InequalityOutcome, CriterionError> {
    require(n, m, n >= 4 && n.is_multiple_of(2), "need even n >= 4")?;
    require(n, m, m >= 3, "need m >= 3")?;
    require_hyperbolic(n, m)?;
    let margin = 2.0 * libm::acosh(inradius_cosh(n, m)) - libm::log(f64::from(n));
    Ok(InequalityOutcome::from_margin(margin))
}

/// `f > (√n + ½)/2`, a sufficient condition for the even inequality once `f >= 5/4`.
pub fn stronger_even_holds(n: u32, m: u32) -> bool {
    inradius_cosh(n, m) > (libm::sqrt(f64::from(n)) + 0.5) / 2.0
}

/// `g > (n + 1)/2`, a sufficient condition for the odd inequality.
pub fn stronger_odd_holds(n: u32, m: u32) -> Option<bool> {
    odd_half_length_cosh(n, m).map(|g| g > (f64::from(n) + 1.0) / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DirichletEstimate {
    pub n: u32,
    /// `log((n - 1)/2)`, the radius of a disk with the area of a `2n`-gon domain.
    pub radius: f64,
    /// `2·radius - log(2n)`.
    pub margin: f64,
    pub passes: bool,
    /// `|margin| < 0.05`.
    pub borderline: bool,
}

/// Heuristic for a generic `2n`-sided Dirichlet domain: when its diameter `2R` beats
/// `log(2n)`, every generator of the simple walk satisfies the criterion.
pub fn dirichlet_heuristic(n: u32) -> Result<DirichletEstimate, CriterionError> {
    require(n, 0, n >= 3, "need n >= 3")?;
    let radius = libm::log((f64::from(n) - 1.0) / 2.0);
    let margin = 2.0 * radius - libm::log(2.0 * f64::from(n));
    Ok(DirichletEstimate {
        n,
        radius,
        margin,
        passes: margin > 0.0,
        borderline: libm::fabs(margin) < 0.05,
    })
}
