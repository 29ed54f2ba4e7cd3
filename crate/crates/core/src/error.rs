use core::fmt;

/// Errors produced while discretizing, sampling, rendering or verifying a toolpath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// The tolerance is not strictly between zero and the radius, or the radius
    /// is not positive, or the ratio is too fine to represent.
    InvalidTolerance { radius: f64, delta: f64 },
    /// A regular polygon needs at least three vertices.
    InvalidCount(u32),
    /// A radius that must be positive was not.
    InvalidRadius(f64),
    /// Cutter compensation leaves no positive toolpath radius.
    CutterTooLarge { radius: f64, cutter_diameter: f64 },
    /// Negative or non-finite cutter diameter.
    InvalidCutter(f64),
    /// Pitch must be positive and finite.
    InvalidPitch(f64),
    /// The bore is shorter than one pitch, so no full revolution fits.
    ZeroRevolutions { bore_length: f64, pitch: f64 },
    /// Semi-major axis shorter than the semi-minor axis, or non-positive axes.
    InvalidEllipse { semi_major: f64, semi_minor: f64 },
    /// A program needs at least one toolpath point.
    EmptyToolpath,
    /// Deviation needs at least two points.
    TooFewPoints(usize),
    /// Consecutive points coincide; the chord has no direction.
    DegenerateSegment { index: usize },
    /// The curve parameter does not advance between consecutive points.
    NonAdvancingSegment { index: usize },
    /// Fewer than the minimum number of samples per segment was requested.
    InvalidSampling(u32),
    /// Unsupported number of decimal places.
    InvalidDecimals(u8),
    /// An axis word could not be parsed.
    MalformedBlock { line: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::InvalidTolerance { radius, delta } => write!(
                f,
                "InvalidTolerance: tolerance {delta} must satisfy 0 < tolerance < radius {radius}"
            ),
            Error::InvalidCount(n) => write!(f, "InvalidCount: {n} points, at least 3 required"),
            Error::InvalidRadius(r) => write!(f, "InvalidRadius: radius {r} must be positive"),
            Error::CutterTooLarge { radius, cutter_diameter } => write!(
                f,
                "CutterTooLarge: cutter diameter {cutter_diameter} leaves no toolpath inside radius {radius}"
            ),
            Error::InvalidCutter(d) => {
                write!(f, "InvalidCutter: cutter diameter {d} must be non-negative")
            }
            Error::InvalidPitch(p) => write!(f, "InvalidPitch: pitch {p} must be positive"),
            Error::ZeroRevolutions { bore_length, pitch } => write!(
                f,
                "ZeroRevolutions: bore length {bore_length} is shorter than pitch {pitch}"
            ),
            Error::InvalidEllipse { semi_major, semi_minor } => write!(
                f,
                "InvalidEllipse: need semi-major {semi_major} >= semi-minor {semi_minor} > 0"
            ),
            Error::EmptyToolpath => f.write_str("EmptyToolpath: no points to render"),
            Error::TooFewPoints(n) => {
                write!(f, "TooFewPoints: {n} points, at least 2 required")
            }
            Error::DegenerateSegment { index } => {
                write!(f, "DegenerateSegment: points {index} and {} coincide", index + 1)
            }
            Error::NonAdvancingSegment { index } => write!(
                f,
                "NonAdvancingSegment: curve parameter does not advance from point {index} to {}",
                index + 1
            ),
            Error::InvalidSampling(s) => {
                write!(f, "InvalidSampling: {s} samples per segment, at least 16 required")
            }
            Error::InvalidDecimals(d) => write!(f, "InvalidDecimals: {d} (supported: 0..=9)"),
            Error::MalformedBlock { line } => write!(f, "MalformedBlock: line {line}"),
        }
    }
}

impl core::error::Error for Error {}
