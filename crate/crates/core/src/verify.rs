//! Brute-force checks, independent of the discretization formulas.
//!
//! [`measure_deviation`] recovers each point's curve parameter, samples the
//! true curve densely between consecutive points and records the largest
//! perpendicular distance from those samples to the 3D chord line.
//! [`oracle_min_count`] finds the smallest admissible polygon by linear search.

use core::f64::consts::{PI, TAU};

use crate::toolpath::ToolpathPoint;
use crate::{Error, RELATIVE_EPSILON};

pub const DEFAULT_SAMPLES_PER_SEGMENT: u32 = 256;
pub const MIN_SAMPLES_PER_SEGMENT: u32 = 16;

/// The analytic curve a point sequence approximates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Curve {
    /// Planar circle at constant height.
    Circle {
        center_x: f64,
        center_y: f64,
        radius: f64,
        z: f64,
    },
    /// Circular helix whose z advances `pitch` per turn from zero.
    Helix {
        center_x: f64,
        center_y: f64,
        radius: f64,
        pitch: f64,
    },
    /// Helix over an axis-aligned ellipse with semi-axes `semi_x`, `semi_y`.
    EllipticalHelix {
        center_x: f64,
        center_y: f64,
        semi_x: f64,
        semi_y: f64,
        pitch: f64,
    },
}

struct Shape {
    cx: f64,
    cy: f64,
    ax: f64,
    ay: f64,
    // None for planar curves.
    pitch: Option<f64>,
    z: f64,
}

impl Shape {
    fn of(curve: &Curve) -> Self {
        match *curve {
            Curve::Circle {
                center_x,
                center_y,
                radius,
                z,
            } => Shape {
                cx: center_x,
                cy: center_y,
                ax: radius,
                ay: radius,
                pitch: None,
                z,
            },
            Curve::Helix {
                center_x,
                center_y,
                radius,
                pitch,
            } => Shape {
                cx: center_x,
                cy: center_y,
                ax: radius,
                ay: radius,
                pitch: Some(pitch),
                z: 0.0,
            },
            Curve::EllipticalHelix {
                center_x,
                center_y,
                semi_x,
                semi_y,
                pitch,
            } => Shape {
                cx: center_x,
                cy: center_y,
                ax: semi_x,
                ay: semi_y,
                pitch: Some(pitch),
                z: 0.0,
            },
        }
    }

    fn at(&self, t: f64) -> [f64; 3] {
        let z = match self.pitch {
            Some(p) => p * t / TAU,
            None => self.z,
        };
        [
            self.cx + self.ax * libm::cos(t),
            self.cy + self.ay * libm::sin(t),
            z,
        ]
    }

    // Angle in [0, 2pi) of the point's XY projection.
    fn angle(&self, p: &ToolpathPoint) -> f64 {
        let a = libm::atan2((p.y - self.cy) / self.ay, (p.x - self.cx) / self.ax);
        if a < 0.0 {
            a + TAU
        } else {
            a
        }
    }

    /// Curve parameter of `p`: the XY angle fixes it modulo one turn and z
    /// picks the turn. Planar curves return the angle alone.
    fn parameter(&self, p: &ToolpathPoint) -> f64 {
        let angle = self.angle(p);
        match self.pitch {
            Some(pitch) => {
                let from_z = TAU * p.z / pitch;
                angle + TAU * libm::round((from_z - angle) / TAU)
            }
            None => angle,
        }
    }

    fn scale(&self) -> f64 {
        libm::fmax(libm::fabs(self.ax), libm::fabs(self.ay)).max(1.0)
    }
}

/// Result of [`measure_deviation`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationReport {
    pub max_deviation: f64,
    /// Index of the segment (from point `i` to `i + 1`) with the largest deviation.
    pub worst_segment_index: usize,
    pub samples_per_segment: u32,
}

/// Largest distance between the chords joining consecutive `points` and the
/// part of `curve` each chord spans, sampled `samples_per_segment + 1` times
/// per segment. The sequence is treated as open; close a loop by repeating the
/// first point.
pub fn measure_deviation(
    points: &[ToolpathPoint],
    curve: &Curve,
    samples_per_segment: u32,
) -> Result<DeviationReport, Error> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints(points.len()));
    }
    if samples_per_segment < MIN_SAMPLES_PER_SEGMENT {
        return Err(Error::InvalidSampling(samples_per_segment));
    }
    let shape = Shape::of(curve);
    let coincident = RELATIVE_EPSILON * shape.scale();

    let mut report = DeviationReport {
        max_deviation: 0.0,
        worst_segment_index: 0,
        samples_per_segment,
    };
    let mut t0 = shape.parameter(&points[0]);
    for (index, pair) in points.windows(2).enumerate() {
        let a = [pair[0].x, pair[0].y, pair[0].z];
        let b = [pair[1].x, pair[1].y, pair[1].z];
        let dir = sub(b, a);
        let length = norm(dir);
        if length <= coincident {
            return Err(Error::DegenerateSegment { index });
        }
        let unit = [dir[0] / length, dir[1] / length, dir[2] / length];

        let t1 = shape.parameter(&pair[1]);
        let span = match shape.pitch {
            Some(_) => t1 - t0,
            None => (t1 - t0).rem_euclid_tau(),
        };
        if !(span > 0.0) {
            return Err(Error::NonAdvancingSegment { index });
        }

        for s in 0..=samples_per_segment {
            let t = t0 + span * s as f64 / samples_per_segment as f64;
            let d = distance_to_line(shape.at(t), a, unit);
            if d > report.max_deviation {
                report.max_deviation = d;
                report.worst_segment_index = index;
            }
        }
        t0 = t1;
    }
    Ok(report)
}

trait RemTau {
    fn rem_euclid_tau(self) -> f64;
}

impl RemTau for f64 {
    fn rem_euclid_tau(self) -> f64 {
        let r = libm::fmod(self, TAU);
        if r < 0.0 {
            r + TAU
        } else {
            r
        }
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn norm(v: [f64; 3]) -> f64 {
    libm::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
}

fn distance_to_line(p: [f64; 3], origin: [f64; 3], unit: [f64; 3]) -> f64 {
    let w = sub(p, origin);
    let cross = [
        w[1] * unit[2] - w[2] * unit[1],
        w[2] * unit[0] - w[0] * unit[2],
        w[0] * unit[1] - w[1] * unit[0],
    ];
    norm(cross)
}

/// Smallest `m >= 3` with `radius * (1 - cos(pi / m)) <= delta`, found by
/// linear search. Comparisons allow [`RELATIVE_EPSILON`] of slack on `delta`.
pub fn oracle_min_count(radius: f64, delta: f64) -> Result<u32, Error> {
    let invalid = Error::InvalidTolerance { radius, delta };
    if !(radius > 0.0) || !radius.is_finite() || !(delta > 0.0) || !(delta < radius) {
        return Err(invalid);
    }
    let bound = delta * (1.0 + RELATIVE_EPSILON);
    let mut m = 3u32;
    while radius * (1.0 - libm::cos(PI / m as f64)) > bound {
        m = m.checked_add(1).ok_or(invalid)?;
    }
    Ok(m)
}
