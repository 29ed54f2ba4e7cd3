//! Job description assembled from defaults, an optional `key=value` file,
//! the environment and command-line flags, in increasing precedence.

use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use helixforge_core::verify::Curve;
use helixforge_core::{
    circle_points, close_loop, discretize_count, elliptical_helix_points, helix_points,
    Discretization, EllipticalHelixSpec, FinalRevolution, FormatPolicy, HelixSpec, LineEnding,
    ToleranceSpec, ToolpathPoint,
};

use crate::CliError;

pub const DEFAULT_OUTPUT: &str = "TestHelix.nc";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    Circle,
    Helix,
    EllipticalHelix,
}

impl FromStr for Shape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Shape as ValueEnum>::from_str(s, true)
    }
}

/// Everything needed to generate, dump or verify one toolpath.
#[derive(Debug, Clone, PartialEq)]
pub struct JobConfig {
    pub shape: Shape,
    pub cutter_diameter: f64,
    pub center_x: f64,
    pub center_y: f64,
    /// Finished bore radius (circle and helix).
    pub radius: f64,
    /// Ellipse semi-axes; default to `radius`.
    pub semi_major: Option<f64>,
    pub semi_minor: Option<f64>,
    pub pitch: f64,
    pub length: f64,
    pub tolerance: f64,
    /// Cutting height for circles.
    pub z: f64,
    pub output: PathBuf,
    pub decimals: u8,
    pub crlf: bool,
    pub start_marker: String,
    pub approach_z: f64,
    pub retract_z: f64,
    pub finish_partial_rev: bool,
}

impl Default for JobConfig {
    fn default() -> Self {
        let policy = FormatPolicy::default();
        Self {
            shape: Shape::Helix,
            cutter_diameter: 10.0,
            center_x: 0.0,
            center_y: 0.0,
            radius: 10.0,
            semi_major: None,
            semi_minor: None,
            pitch: 2.0,
            length: 6.0,
            tolerance: 0.1,
            z: 0.0,
            output: PathBuf::from(DEFAULT_OUTPUT),
            decimals: policy.decimals,
            crlf: false,
            start_marker: policy.start_marker,
            approach_z: policy.approach_z,
            retract_z: policy.retract_z,
            finish_partial_rev: false,
        }
    }
}

fn parse_value<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, CliError> {
    value.parse().map_err(|_| CliError::Config {
        line,
        message: format!("invalid value {value:?} for {key}"),
    })
}

impl JobConfig {
    /// Applies `key=value` lines. Keys match the long flag names; `#` starts a
    /// comment.
    pub fn apply_file(&mut self, text: &str) -> Result<(), CliError> {
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(CliError::Config {
                    line,
                    message: format!("expected key=value, got {content:?}"),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "shape" => self.shape = parse_value(line, key, value)?,
                "cutter-dia" => self.cutter_diameter = parse_value(line, key, value)?,
                "center-x" => self.center_x = parse_value(line, key, value)?,
                "center-y" => self.center_y = parse_value(line, key, value)?,
                "radius" => self.radius = parse_value(line, key, value)?,
                "semi-major" => self.semi_major = Some(parse_value(line, key, value)?),
                "semi-minor" => self.semi_minor = Some(parse_value(line, key, value)?),
                "pitch" => self.pitch = parse_value(line, key, value)?,
                "length" => self.length = parse_value(line, key, value)?,
                "tolerance" => self.tolerance = parse_value(line, key, value)?,
                "z" => self.z = parse_value(line, key, value)?,
                "output" => self.output = PathBuf::from(value),
                "decimals" => self.decimals = parse_value(line, key, value)?,
                "crlf" => self.crlf = parse_value(line, key, value)?,
                "start-marker" => self.start_marker = value.to_string(),
                "approach-z" => self.approach_z = parse_value(line, key, value)?,
                "retract-z" => self.retract_z = parse_value(line, key, value)?,
                "finish-partial-rev" => self.finish_partial_rev = parse_value(line, key, value)?,
                _ => {
                    return Err(CliError::Config {
                        line,
                        message: format!("unknown key {key:?}"),
                    })
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.output.as_os_str().is_empty() {
            return Err(CliError::Usage("output path must not be empty".into()));
        }
        self.format_policy().validate()?;
        Ok(())
    }

    pub fn final_revolution(&self) -> FinalRevolution {
        if self.finish_partial_rev {
            FinalRevolution::Finish
        } else {
            FinalRevolution::Truncate
        }
    }

    pub fn helix_spec(&self) -> HelixSpec {
        HelixSpec {
            cutter_diameter: self.cutter_diameter,
            center_x: self.center_x,
            center_y: self.center_y,
            bore_radius: self.radius,
            pitch: self.pitch,
            bore_length: self.length,
            tolerance: self.tolerance,
        }
    }

    pub fn ellipse_spec(&self) -> EllipticalHelixSpec {
        EllipticalHelixSpec {
            semi_major: self.semi_major.unwrap_or(self.radius),
            semi_minor: self.semi_minor.unwrap_or(self.radius),
            center_x: self.center_x,
            center_y: self.center_y,
            pitch: self.pitch,
            bore_length: self.length,
            tolerance: self.tolerance,
            cutter_diameter: self.cutter_diameter,
        }
    }

    pub fn format_policy(&self) -> FormatPolicy {
        FormatPolicy {
            decimals: self.decimals,
            start_marker: self.start_marker.clone(),
            approach_z: self.approach_z,
            retract_z: self.retract_z,
            line_ending: if self.crlf {
                LineEnding::CrLf
            } else {
                LineEnding::Lf
            },
        }
    }

    pub fn discretization(&self) -> Result<Discretization, CliError> {
        Ok(match self.shape {
            Shape::Circle => {
                let radius = self.helix_spec().effective_radius()?;
                discretize_count(&ToleranceSpec::new(radius, self.tolerance)?)
            }
            Shape::Helix => self.helix_spec().discretization()?,
            Shape::EllipticalHelix => self.ellipse_spec().discretization()?,
        })
    }

    /// Toolpath points; circles are closed back to their first point.
    pub fn points(&self) -> Result<Vec<ToolpathPoint>, CliError> {
        Ok(match self.shape {
            Shape::Circle => {
                let radius = self.helix_spec().effective_radius()?;
                close_loop(circle_points(
                    self.center_x,
                    self.center_y,
                    radius,
                    self.z,
                    self.tolerance,
                )?)
            }
            Shape::Helix => helix_points(&self.helix_spec(), self.final_revolution())?,
            Shape::EllipticalHelix => {
                elliptical_helix_points(&self.ellipse_spec(), self.final_revolution())?
            }
        })
    }

    /// The tool-center curve the points approximate.
    pub fn curve(&self) -> Result<Curve, CliError> {
        Ok(match self.shape {
            Shape::Circle => Curve::Circle {
                center_x: self.center_x,
                center_y: self.center_y,
                radius: self.helix_spec().effective_radius()?,
                z: self.z,
            },
            Shape::Helix => Curve::Helix {
                center_x: self.center_x,
                center_y: self.center_y,
                radius: self.helix_spec().effective_radius()?,
                pitch: self.pitch,
            },
            Shape::EllipticalHelix => {
                let (semi_x, semi_y) = self.ellipse_spec().effective_axes()?;
                Curve::EllipticalHelix {
                    center_x: self.center_x,
                    center_y: self.center_y,
                    semi_x,
                    semi_y,
                    pitch: self.pitch,
                }
            }
        })
    }

    /// Outer extent used to frame SVG output: the bore (or major-axis) diameter.
    pub fn outer_diameter(&self) -> f64 {
        match self.shape {
            Shape::EllipticalHelix => 2.0 * self.ellipse_spec().semi_major,
            _ => 2.0 * self.radius,
        }
    }
}
