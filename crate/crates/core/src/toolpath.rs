//! Circle, helix and elliptical-helix samplers with cutter-radius compensation.
//!
//! Every sampler walks the curve counter-clockwise in steps of the
//! discretization's step angle, restarting at angle zero on each revolution.
//! Because the point count is rounded up, the last point of a revolution sits
//! short of a full turn; the chord from it to the next revolution's first
//! point is shorter than the rest (the seam).

use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::discretize::{discretize_count, Discretization, ToleranceSpec};
use crate::Error;

/// One sample on a toolpath, in machine units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToolpathPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ToolpathPoint {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }
}

/// What to do with the part of the bore beyond the last whole revolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FinalRevolution {
    /// Drop it; only whole revolutions are milled.
    #[default]
    Truncate,
    /// Continue into the partial revolution while z stays within the bore length.
    Finish,
}

/// A helical boring or threading job.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelixSpec {
    pub cutter_diameter: f64,
    pub center_x: f64,
    pub center_y: f64,
    /// Radius of the finished bore; the tool center runs inside it.
    pub bore_radius: f64,
    /// Axial advance per revolution.
    pub pitch: f64,
    pub bore_length: f64,
    /// Sagitta tolerance applied at the tool-center radius.
    pub tolerance: f64,
}

impl HelixSpec {
    pub fn effective_radius(&self) -> Result<f64, Error> {
        effective_radius(self)
    }

    /// Discretization of the tool-center circle.
    pub fn discretization(&self) -> Result<Discretization, Error> {
        let radius = self.effective_radius()?;
        Ok(discretize_count(&ToleranceSpec::new(
            radius,
            self.tolerance,
        )?))
    }

    /// Number of whole revolutions, `floor(bore_length / pitch)`.
    pub fn revolutions(&self) -> Result<u32, Error> {
        revolutions(self.bore_length, self.pitch)
    }
}

/// An elliptical helix. Cutter compensation shrinks both semi-axes by the
/// cutter radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticalHelixSpec {
    /// Semi-axis along X.
    pub semi_major: f64,
    /// Semi-axis along Y.
    pub semi_minor: f64,
    pub center_x: f64,
    pub center_y: f64,
    pub pitch: f64,
    pub bore_length: f64,
    pub tolerance: f64,
    pub cutter_diameter: f64,
}

impl EllipticalHelixSpec {
    /// Compensated semi-axes `(x, y)`.
    pub fn effective_axes(&self) -> Result<(f64, f64), Error> {
        if !(self.semi_minor > 0.0) || !(self.semi_major >= self.semi_minor) {
            return Err(Error::InvalidEllipse {
                semi_major: self.semi_major,
                semi_minor: self.semi_minor,
            });
        }
        let cutter_radius = cutter_radius(self.cutter_diameter)?;
        let semi_x = self.semi_major - cutter_radius;
        let semi_y = self.semi_minor - cutter_radius;
        if !(semi_y > 0.0) {
            return Err(Error::CutterTooLarge {
                radius: self.semi_minor,
                cutter_diameter: self.cutter_diameter,
            });
        }
        Ok((semi_x, semi_y))
    }

    /// Discretization of the compensated major-axis circle. Its curvature
    /// bounds the ellipse's, so the count is conservative.
    pub fn discretization(&self) -> Result<Discretization, Error> {
        let (semi_x, _) = self.effective_axes()?;
        Ok(discretize_count(&ToleranceSpec::new(
            semi_x,
            self.tolerance,
        )?))
    }
}

fn cutter_radius(cutter_diameter: f64) -> Result<f64, Error> {
    if !(cutter_diameter >= 0.0) || !cutter_diameter.is_finite() {
        return Err(Error::InvalidCutter(cutter_diameter));
    }
    Ok(cutter_diameter / 2.0)
}

fn revolutions(bore_length: f64, pitch: f64) -> Result<u32, Error> {
    if !(pitch > 0.0) || !pitch.is_finite() {
        return Err(Error::InvalidPitch(pitch));
    }
    let revs = libm::floor(bore_length / pitch);
    if !(revs >= 1.0) {
        return Err(Error::ZeroRevolutions { bore_length, pitch });
    }
    Ok(revs as u32)
}

/// Tool-center radius: the bore radius less the cutter radius.
pub fn effective_radius(spec: &HelixSpec) -> Result<f64, Error> {
    let radius = spec.bore_radius - cutter_radius(spec.cutter_diameter)?;
    if !(radius > 0.0) {
        return Err(Error::CutterTooLarge {
            radius: spec.bore_radius,
            cutter_diameter: spec.cutter_diameter,
        });
    }
    Ok(radius)
}

struct Helical {
    center_x: f64,
    center_y: f64,
    semi_x: f64,
    semi_y: f64,
    pitch: f64,
    bore_length: f64,
}

impl Helical {
    fn point(&self, revolution: u32, theta: f64) -> ToolpathPoint {
        ToolpathPoint {
            x: self.semi_x * libm::cos(theta) + self.center_x,
            y: self.semi_y * libm::sin(theta) + self.center_y,
            z: revolution as f64 * self.pitch + (theta / TAU) * self.pitch,
        }
    }

    fn sample(
        &self,
        disc: &Discretization,
        revolutions: u32,
        last: FinalRevolution,
    ) -> Vec<ToolpathPoint> {
        let n = disc.count;
        let mut points = Vec::with_capacity(revolutions as usize * n as usize);
        for k in 0..revolutions {
            for i in 0..n {
                points.push(self.point(k, i as f64 * disc.step_angle));
            }
        }
        if last == FinalRevolution::Finish {
            for i in 0..n {
                let p = self.point(revolutions, i as f64 * disc.step_angle);
                if p.z > self.bore_length {
                    break;
                }
                points.push(p);
            }
        }
        points
    }
}

/// Samples the tool-center helix for `spec`.
///
/// Produces `count` points for each of `floor(bore_length / pitch)`
/// revolutions, plus the partial revolution when `last` is
/// [`FinalRevolution::Finish`].
pub fn helix_points(spec: &HelixSpec, last: FinalRevolution) -> Result<Vec<ToolpathPoint>, Error> {
    let radius = spec.effective_radius()?;
    let revs = spec.revolutions()?;
    let disc = spec.discretization()?;
    let helix = Helical {
        center_x: spec.center_x,
        center_y: spec.center_y,
        semi_x: radius,
        semi_y: radius,
        pitch: spec.pitch,
        bore_length: spec.bore_length,
    };
    Ok(helix.sample(&disc, revs, last))
}

/// Samples the compensated elliptical helix for `spec`, using the count of the
/// major-axis circle.
pub fn elliptical_helix_points(
    spec: &EllipticalHelixSpec,
    last: FinalRevolution,
) -> Result<Vec<ToolpathPoint>, Error> {
    let (semi_x, semi_y) = spec.effective_axes()?;
    let revs = revolutions(spec.bore_length, spec.pitch)?;
    let disc = spec.discretization()?;
    let helix = Helical {
        center_x: spec.center_x,
        center_y: spec.center_y,
        semi_x,
        semi_y,
        pitch: spec.pitch,
        bore_length: spec.bore_length,
    };
    Ok(helix.sample(&disc, revs, last))
}

/// Samples one planar circle at height `z`. The closing chord from the last
/// point back to the first subtends at most one step angle.
pub fn circle_points(
    center_x: f64,
    center_y: f64,
    radius: f64,
    z: f64,
    tolerance: f64,
) -> Result<Vec<ToolpathPoint>, Error> {
    let disc = discretize_count(&ToleranceSpec::new(radius, tolerance)?);
    Ok((0..disc.count)
        .map(|i| {
            let theta = i as f64 * disc.step_angle;
            ToolpathPoint {
                x: radius * libm::cos(theta) + center_x,
                y: radius * libm::sin(theta) + center_y,
                z,
            }
        })
        .collect())
}

/// Appends the first point so a closed contour returns to its start.
pub fn close_loop(mut points: Vec<ToolpathPoint>) -> Vec<ToolpathPoint> {
    if let Some(&first) = points.first() {
        points.push(first);
    }
    points
}
