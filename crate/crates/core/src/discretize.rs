//! Point count for an inscribed regular polygon under a sagitta tolerance.
//!
//! Given a radius `r` and tolerance `delta`, the polygon's apothem is
//! `a = r - delta`. The half-angle between radius and apothem is
//! `theta = acos(a / r)`, which equals `atan(h / a)` with `h = sqrt(r^2 - a^2)`
//! whenever `a > 0` and stays defined as `a` approaches zero. Consecutive
//! vertices are `2 * theta` apart, so a full turn needs `pi / theta` of them;
//! the count is that value truncated plus one.

use core::f64::consts::PI;

use crate::{Error, RELATIVE_EPSILON};

/// Smallest supported `delta / radius`. Below this the apothem rounds to the
/// radius and the count no longer fits comfortably in a `u32`.
pub const MIN_RELATIVE_TOLERANCE: f64 = 1e-15;

/// Radius and sagitta tolerance of a circle to discretize.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceSpec {
    radius: f64,
    delta: f64,
}

impl ToleranceSpec {
    /// Requires `radius > 0` and `0 < delta < radius`.
    pub fn new(radius: f64, delta: f64) -> Result<Self, Error> {
        let invalid = Error::InvalidTolerance { radius, delta };
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(invalid);
        }
        if !(delta > 0.0) || !(delta < radius) {
            return Err(invalid);
        }
        if delta / radius < MIN_RELATIVE_TOLERANCE {
            return Err(invalid);
        }
        Ok(Self { radius, delta })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Inscribed-polygon geometry derived from a [`ToleranceSpec`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discretization {
    pub radius: f64,
    /// Distance from center to chord midpoint, `radius - delta`.
    pub apothem: f64,
    /// Half of the chord between consecutive points.
    pub height: f64,
    /// Angle between the radius and the apothem.
    pub half_angle: f64,
    /// Angle between consecutive points, twice the half-angle.
    pub step_angle: f64,
    /// `pi / half_angle` before rounding.
    pub raw_count: f64,
    /// Number of points per revolution.
    pub count: u32,
}

impl Discretization {
    pub fn chord_length(&self) -> f64 {
        2.0 * self.height
    }
}

/// Computes the point count and polygon geometry for `spec`.
///
/// The count is `floor(raw_count) + 1`, including when `raw_count` is an exact
/// integer, and never less than 3. A raw count within [`RELATIVE_EPSILON`] of
/// an integer is treated as that integer so that exact polygon cases do not
/// depend on the last bit of `acos`.
pub fn discretize_count(spec: &ToleranceSpec) -> Discretization {
    let radius = spec.radius;
    let delta = spec.delta;
    let apothem = radius - delta;
    // (r - a)(r + a) avoids cancellation in r^2 - a^2 for small delta.
    let height = libm::sqrt(delta * (radius + apothem));
    let half_angle = libm::acos(apothem / radius);
    let raw_count = PI / half_angle;

    let nearest = libm::round(raw_count);
    let whole = if libm::fabs(raw_count - nearest) <= RELATIVE_EPSILON * raw_count {
        nearest
    } else {
        libm::floor(raw_count)
    };
    let count = (whole as u32).saturating_add(1).max(3);

    Discretization {
        radius,
        apothem,
        height,
        half_angle,
        step_angle: 2.0 * half_angle,
        raw_count,
        count,
    }
}

/// Realized chord-to-arc deviation of a regular `count`-gon inscribed in a
/// circle of `radius`: `radius * (1 - cos(pi / count))`.
pub fn sagitta(radius: f64, count: u32) -> Result<f64, Error> {
    if count < 3 {
        return Err(Error::InvalidCount(count));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidRadius(radius));
    }
    Ok(radius * (1.0 - libm::cos(PI / count as f64)))
}

/// Distance between consecutive points, twice the polygon height.
pub fn chord_length(disc: &Discretization) -> f64 {
    disc.chord_length()
}
