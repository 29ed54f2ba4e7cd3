//! File formats: NC programs, `x,y,z` CSV point dumps and SVG previews.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use helixforge_core::{format_coordinate, parse_axis_moves, GCodeProgram, ToolpathPoint};

use crate::CliError;

/// Writes the rendered program to `path`, replacing any existing file.
pub fn write_program(program: &GCodeProgram, path: &Path) -> Result<(), CliError> {
    fs::write(path, program.render()).map_err(|e| CliError::io(path, e))
}

/// CSV with an `x,y,z` header and one row per point.
pub fn points_csv(points: &[ToolpathPoint], decimals: u8) -> String {
    let mut out = String::from("x,y,z\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{}",
            format_coordinate(p.x, decimals),
            format_coordinate(p.y, decimals),
            format_coordinate(p.z, decimals)
        );
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<ToolpathPoint>, CliError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim().eq_ignore_ascii_case("x,y,z") => {}
        _ => {
            return Err(CliError::Config {
                line: 1,
                message: "expected header x,y,z".into(),
            })
        }
    }
    let mut points = Vec::new();
    for (index, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::Config {
                line: index + 1,
                message: format!("bad row {line:?}"),
            })?;
        let [x, y, z] = fields[..] else {
            return Err(CliError::Config {
                line: index + 1,
                message: "expected 3 fields".into(),
            });
        };
        points.push(ToolpathPoint { x, y, z });
    }
    Ok(points)
}

/// Reads points from a `.csv` dump or, for any other extension, the cutting
/// moves of an NC program.
pub fn read_points(path: &Path) -> Result<Vec<ToolpathPoint>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let is_csv = path
        .extension()
        .is_some_and(|ext| ext.eq_ignore_ascii_case("csv"));
    if is_csv {
        parse_csv(&text)
    } else {
        Ok(parse_axis_moves(&text)?)
    }
}

/// XY projection as a single SVG polyline. The view box is centered on the
/// bore and spans its diameter plus a 10% margin; y is flipped so +Y points up.
pub fn points_svg(
    points: &[ToolpathPoint],
    center_x: f64,
    center_y: f64,
    diameter: f64,
    decimals: u8,
) -> String {
    let size = 1.1 * diameter;
    let fmt = |v: f64| format_coordinate(v, decimals);
    let mut coords = String::new();
    for (i, p) in points.iter().enumerate() {
        if i > 0 {
            coords.push(' ');
        }
        let _ = write!(coords, "{},{}", fmt(p.x), fmt(-p.y));
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n\
         <polyline fill=\"none\" stroke=\"black\" stroke-width=\"{}\" points=\"{}\"/>\n\
         </svg>\n",
        fmt(center_x - size / 2.0),
        fmt(-center_y - size / 2.0),
        fmt(size),
        fmt(size),
        fmt(diameter / 500.0),
        coords
    )
}
