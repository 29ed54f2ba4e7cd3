//! G-code program assembly for a sampled toolpath.
//!
//! Programs follow a fixed layout: a tape marker, the modal header, a rapid
//! to the retract height, an approach over the bore center, one linear move
//! per toolpath point, then a return to center, retract and `M30`.
//!
//! Coordinates are printed in fixed point, rounded half away from zero on the
//! exact binary value, never in exponent notation and never as `-0`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use crate::toolpath::ToolpathPoint;
use crate::Error;

/// Largest supported number of decimal places.
pub const MAX_DECIMALS: u8 = 9;

const MODAL_HEADER: &str = "G54 G17 G40 G80 G90";
const SPINDLE_ON: &str = "S1000 M03";
const PROGRAM_END: &str = "M30";
const RETRACT_FEED: u32 = 1000;
const APPROACH_FEED: u32 = 3000;
const RETURN_FEED: u32 = 1000;
const APPROACH_DECIMALS: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LineEnding {
    #[default]
    Lf,
    CrLf,
}

impl LineEnding {
    pub fn as_str(self) -> &'static str {
        match self {
            LineEnding::Lf => "\n",
            LineEnding::CrLf => "\r\n",
        }
    }
}

/// How a program is laid out and how numbers are printed.
#[derive(Debug, Clone, PartialEq)]
pub struct FormatPolicy {
    /// Decimal places for X/Y/Z words.
    pub decimals: u8,
    /// First line of the file.
    pub start_marker: String,
    /// Height of the approach move over the bore center.
    pub approach_z: f64,
    /// Safe height before and after cutting.
    pub retract_z: f64,
    pub line_ending: LineEnding,
}

impl Default for FormatPolicy {
    fn default() -> Self {
        Self {
            decimals: 3,
            start_marker: "%".to_string(),
            approach_z: 20.0,
            retract_z: 100.0,
            line_ending: LineEnding::Lf,
        }
    }
}

impl FormatPolicy {
    pub fn validate(&self) -> Result<(), Error> {
        if self.decimals > MAX_DECIMALS {
            return Err(Error::InvalidDecimals(self.decimals));
        }
        Ok(())
    }

    /// Half of one output quantum: the largest rounding error per coordinate.
    pub fn half_quantum(&self) -> f64 {
        0.5 / libm::pow(10.0, self.decimals as f64)
    }
}

/// One line of a program.
#[derive(Debug, Clone, PartialEq)]
pub enum Block {
    /// Emitted verbatim.
    Literal(String),
    /// Axis words, printed in X, Y, Z, F order.
    Move {
        x: Option<f64>,
        y: Option<f64>,
        z: Option<f64>,
        feed: Option<u32>,
    },
}

impl Block {
    fn xyz(p: &ToolpathPoint) -> Self {
        Block::Move {
            x: Some(p.x),
            y: Some(p.y),
            z: Some(p.z),
            feed: None,
        }
    }

    fn write_to(&self, out: &mut String, decimals: u8) {
        match self {
            Block::Literal(line) => out.push_str(line),
            Block::Move { x, y, z, feed } => {
                let mut first = true;
                let mut word = |out: &mut String, letter: char| {
                    if !first {
                        out.push(' ');
                    }
                    first = false;
                    out.push(letter);
                };
                for (letter, value) in [('X', x), ('Y', y), ('Z', z)] {
                    if let Some(v) = value {
                        word(out, letter);
                        push_fixed(out, *v, decimals);
                    }
                }
                if let Some(f) = feed {
                    word(out, 'F');
                    let _ = write!(out, "{f}");
                }
            }
        }
    }
}

/// A complete NC program: the tape marker followed by its blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct GCodeProgram {
    pub blocks: Vec<Block>,
    pub policy: FormatPolicy,
}

impl GCodeProgram {
    /// Number of blocks, not counting the tape marker line.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// The program text with every line terminated.
    pub fn render(&self) -> String {
        let eol = self.policy.line_ending.as_str();
        let mut out = String::with_capacity(32 * (self.blocks.len() + 1));
        out.push_str(&self.policy.start_marker);
        out.push_str(eol);
        for block in &self.blocks {
            block.write_to(&mut out, self.policy.decimals);
            out.push_str(eol);
        }
        out
    }
}

/// Builds the program for `points`, with approach and return moves over
/// `(center_x, center_y)`.
pub fn render_program(
    points: &[ToolpathPoint],
    center_x: f64,
    center_y: f64,
    policy: FormatPolicy,
) -> Result<GCodeProgram, Error> {
    policy.validate()?;
    if points.is_empty() {
        return Err(Error::EmptyToolpath);
    }
    let d = policy.decimals;

    let mut blocks = Vec::with_capacity(points.len() + 7);
    blocks.push(Block::Literal(MODAL_HEADER.to_string()));
    blocks.push(Block::Literal(SPINDLE_ON.to_string()));
    let mut retract = String::from("G01 Z");
    push_short(&mut retract, policy.retract_z);
    let _ = write!(retract, " F{RETRACT_FEED}");
    blocks.push(Block::Literal(retract));
    let mut approach = String::new();
    approach.push('X');
    push_fixed(&mut approach, center_x, d);
    approach.push_str(" Y");
    push_fixed(&mut approach, center_y, d);
    approach.push_str(" Z");
    push_fixed(&mut approach, policy.approach_z, APPROACH_DECIMALS);
    let _ = write!(approach, " F{APPROACH_FEED}");
    blocks.push(Block::Literal(approach));

    blocks.extend(points.iter().map(Block::xyz));

    blocks.push(Block::Move {
        x: Some(center_x),
        y: Some(center_y),
        z: None,
        feed: Some(RETURN_FEED),
    });
    blocks.push(Block::Move {
        x: None,
        y: None,
        z: Some(policy.retract_z),
        feed: None,
    });
    blocks.push(Block::Literal(PROGRAM_END.to_string()));

    Ok(GCodeProgram { blocks, policy })
}

/// Formats `value` with `decimals` places (at most [`MAX_DECIMALS`]),
/// rounding half away from zero.
pub fn format_coordinate(value: f64, decimals: u8) -> String {
    let mut s = String::new();
    push_fixed(&mut s, value, decimals);
    s
}

fn push_fixed(out: &mut String, value: f64, decimals: u8) {
    let decimals = decimals.min(MAX_DECIMALS);
    match scaled_round(value, decimals) {
        Some(q) => {
            if value.is_sign_negative() && q != 0 {
                out.push('-');
            }
            let mut digits = String::new();
            let _ = write!(digits, "{q:0>width$}", width = decimals as usize + 1);
            let split = digits.len() - decimals as usize;
            out.push_str(&digits[..split]);
            if decimals > 0 {
                out.push('.');
                out.push_str(&digits[split..]);
            }
        }
        None => {
            let _ = write!(out, "{:.*}", decimals as usize, value);
        }
    }
}

/// `round_half_away(|value| * 10^decimals)` computed exactly from the binary
/// representation. `None` for non-finite or astronomically large values.
fn scaled_round(value: f64, decimals: u8) -> Option<u128> {
    if !value.is_finite() {
        return None;
    }
    let bits = value.to_bits();
    let exponent = ((bits >> 52) & 0x7ff) as i32;
    let fraction = bits & ((1u64 << 52) - 1);
    let (mantissa, exp2) = if exponent == 0 {
        (fraction, -1074)
    } else {
        (fraction | (1u64 << 52), exponent - 1075)
    };
    // mantissa < 2^53 and 10^9 < 2^30, so this stays below 2^83.
    let scaled = mantissa as u128 * 10u128.pow(decimals as u32);
    if exp2 >= 0 {
        let shift = exp2 as u32;
        if shift > 44 {
            return None;
        }
        return Some(scaled << shift);
    }
    let shift = (-exp2) as u32;
    if shift >= 127 {
        return Some(0);
    }
    let quotient = scaled >> shift;
    let remainder = scaled & ((1u128 << shift) - 1);
    let half = 1u128 << (shift - 1);
    Some(if remainder >= half {
        quotient + 1
    } else {
        quotient
    })
}

// "100." for whole numbers, shortest round-trip form otherwise.
fn push_short(out: &mut String, value: f64) {
    if value.is_finite() && libm::trunc(value) == value && libm::fabs(value) < 1e15 {
        let _ = write!(out, "{}.", value as i64);
    } else {
        let _ = write!(out, "{value}");
    }
}

/// Extracts toolpath points from program text: every block carrying X, Y and Z
/// words and no feed word. Other blocks are skipped.
pub fn parse_axis_moves(text: &str) -> Result<Vec<ToolpathPoint>, Error> {
    let mut points = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let (mut x, mut y, mut z, mut feed) = (None, None, None, false);
        for word in line.split_whitespace() {
            let mut chars = word.chars();
            let letter = chars.next().map(|c| c.to_ascii_uppercase());
            let slot = match letter {
                Some('X') => &mut x,
                Some('Y') => &mut y,
                Some('Z') => &mut z,
                Some('F') => {
                    feed = true;
                    continue;
                }
                _ => continue,
            };
            let value: f64 = chars
                .as_str()
                .parse()
                .map_err(|_| Error::MalformedBlock { line: index + 1 })?;
            *slot = Some(value);
        }
        if let (Some(x), Some(y), Some(z), false) = (x, y, z, feed) {
            points.push(ToolpathPoint { x, y, z });
        }
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_formatting() {
        assert_eq!(format_coordinate(1.0, 3), "1.000");
        assert_eq!(format_coordinate(0.0, 3), "0.000");
        assert_eq!(format_coordinate(-0.0, 3), "0.000");
        assert_eq!(format_coordinate(-1e-12, 3), "0.000");
        assert_eq!(format_coordinate(-0.0004999, 3), "0.000");
        assert_eq!(format_coordinate(-0.25, 3), "-0.250");
        assert_eq!(format_coordinate(4.903926402016152, 3), "4.904");
        assert_eq!(format_coordinate(123456.7, 0), "123457");
        assert_eq!(format_coordinate(1e20, 2), "100000000000000000000.00");
        assert_eq!(format_coordinate(20.0, 2), "20.00");
        assert_eq!(format_coordinate(5e-324, 9), "0.000000000");
    }

    #[test]
    fn exact_ties_round_away_from_zero() {
        // Exactly representable ties.
        assert_eq!(format_coordinate(0.0625, 3), "0.063");
        assert_eq!(format_coordinate(-0.0625, 3), "-0.063");
        assert_eq!(format_coordinate(2.5, 0), "3");
        assert_eq!(format_coordinate(0.125, 2), "0.13");
        // 1.0005 is stored slightly below the tie.
        assert_eq!(format_coordinate(1.0005, 3), "1.000");
        // 0.0005 is stored slightly above.
        assert_eq!(format_coordinate(0.0005, 3), "0.001");
    }

    #[test]
    fn program_layout() {
        let pts = [
            ToolpathPoint::new(1.0, 0.0, 0.0),
            ToolpathPoint::new(0.0, 1.0, 0.5),
        ];
        let program = render_program(&pts, 0.0, 0.0, FormatPolicy::default()).unwrap();
        assert_eq!(program.block_count(), pts.len() + 7);
        assert_eq!(
            program.render(),
            "%\nG54 G17 G40 G80 G90\nS1000 M03\nG01 Z100. F1000\nX0.000 Y0.000 Z20.00 F3000\n\
             X1.000 Y0.000 Z0.000\nX0.000 Y1.000 Z0.500\nX0.000 Y0.000 F1000\nZ100.000\nM30\n"
        );
    }

    #[test]
    fn policy_overrides() {
        let policy = FormatPolicy {
            decimals: 4,
            start_marker: "O1000".into(),
            approach_z: 12.5,
            retract_z: 50.25,
            line_ending: LineEnding::CrLf,
        };
        let program =
            render_program(&[ToolpathPoint::new(-1.5, 2.0, 0.0)], 3.0, -4.0, policy).unwrap();
        assert_eq!(
            program.render(),
            "O1000\r\nG54 G17 G40 G80 G90\r\nS1000 M03\r\nG01 Z50.25 F1000\r\n\
             X3.0000 Y-4.0000 Z12.50 F3000\r\nX-1.5000 Y2.0000 Z0.0000\r\n\
             X3.0000 Y-4.0000 F1000\r\nZ50.2500\r\nM30\r\n"
        );
    }

    #[test]
    fn render_errors() {
        assert_eq!(
            render_program(&[], 0.0, 0.0, FormatPolicy::default()),
            Err(Error::EmptyToolpath)
        );
        let policy = FormatPolicy {
            decimals: 10,
            ..FormatPolicy::default()
        };
        assert_eq!(
            render_program(&[ToolpathPoint::new(0.0, 0.0, 0.0)], 0.0, 0.0, policy),
            Err(Error::InvalidDecimals(10))
        );
    }

    #[test]
    fn parses_only_cutting_moves() {
        let pts = [ToolpathPoint::new(1.0, -2.0, 0.25)];
        let text = render_program(&pts, 7.0, 8.0, FormatPolicy::default())
            .unwrap()
            .render();
        assert_eq!(parse_axis_moves(&text).unwrap(), pts);
        assert_eq!(
            parse_axis_moves("X1 Yfoo Z2"),
            Err(Error::MalformedBlock { line: 1 })
        );
        assert_eq!(
            parse_axis_moves("x1 y2 z3\r\n").unwrap(),
            [ToolpathPoint::new(1.0, 2.0, 3.0)]
        );
    }
}
