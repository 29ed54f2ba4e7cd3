//! Sagitta-bounded discretization of circular and helical toolpaths.
//!
//! A circle of radius `r` is approximated by an inscribed regular polygon
//! whose apothem sits exactly `delta` inside the circle. The polygon's vertex
//! count follows from the half-angle between radius and apothem, and every
//! chord of the resulting toolpath stays within `delta` of the true curve.
//!
//! The crate is `no_std` and needs only `alloc`. It provides:
//!
//! - [`discretize`]: point count, step angle and chord for a radius/tolerance pair
//! - [`toolpath`]: circle, helix and elliptical-helix samplers with cutter compensation
//! - [`gcode`]: program assembly, fixed-point coordinate formatting and axis-word parsing
//! - [`verify`]: brute-force chord deviation measurement and minimal-count search
//!
//! ```
//! use helixforge_core::{discretize_count, ToleranceSpec};
//!
//! let spec = ToleranceSpec::new(1.0, 0.5).unwrap();
//! let disc = discretize_count(&spec);
//! assert_eq!(disc.count, 4);
//! ```

#![no_std]
// Negated comparisons reject NaN inputs along with out-of-range ones.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod discretize;
mod error;
pub mod gcode;
pub mod toolpath;
pub mod verify;

pub use discretize::{chord_length, discretize_count, sagitta, Discretization, ToleranceSpec};
pub use error::Error;
pub use gcode::{
    format_coordinate, parse_axis_moves, render_program, Block, FormatPolicy, GCodeProgram,
    LineEnding,
};
pub use toolpath::{
    circle_points, close_loop, effective_radius, elliptical_helix_points, helix_points,
    EllipticalHelixSpec, FinalRevolution, HelixSpec, ToolpathPoint,
};
pub use verify::{measure_deviation, oracle_min_count, Curve, DeviationReport};

/// Relative tolerance used for floating comparisons throughout the crate.
pub const RELATIVE_EPSILON: f64 = 1e-9;
