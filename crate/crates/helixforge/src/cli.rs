//! `helixforge` subcommands.

use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use helixforge_core::verify::DEFAULT_SAMPLES_PER_SEGMENT;
use helixforge_core::{
    discretize_count, measure_deviation, render_program, DeviationReport, ToleranceSpec,
    RELATIVE_EPSILON,
};

use crate::config::{JobConfig, Shape};
use crate::{io, CliError};

/// Environment variable overriding the number of decimals in output files.
pub const DECIMALS_ENV: &str = "HELIXFORGE_DECIMALS";

/// Prompts of the interactive dialogue, in the order values are read.
pub const PROMPTS: [&str; 7] = [
    "Enter the cutter dia",
    "Enter the center for X",
    "Enter the center for Y",
    "Enter a value for the radius",
    "Enter the pitch",
    "Enter the length of the bore",
    "Enter the tolerance,a small value",
];

#[derive(Debug, Parser)]
#[command(
    name = "helixforge",
    version,
    about = "Sagitta-bounded helical boring and threading toolpaths as G-code",
    long_about = "Discretizes circles, helices and elliptical helices so that every chord \
                  stays within a tolerance of the true curve, and writes 3-axis G-code.\n\n\
                  All lengths are unitless machine units (use mm or inches consistently)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the point count, step angle and chord for a radius and tolerance.
    Count(CountArgs),
    /// Write an NC program for a job.
    Generate(JobArgs),
    /// Measure the worst chord deviation of a job or of a point file.
    Verify(VerifyArgs),
    /// Print the toolpath points as CSV, optionally also as an SVG polyline.
    Dump(DumpArgs),
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(long)]
    radius: f64,
    #[arg(long)]
    tolerance: f64,
}

#[derive(Debug, Args)]
struct JobArgs {
    /// key=value file with defaults for any of the flags below.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Ask for cutter dia, center, radius, pitch, length and tolerance on stdin.
    #[arg(long)]
    interactive: bool,
    #[arg(long, value_enum)]
    shape: Option<Shape>,
    /// Cutter diameter; the path is offset inward by half of it.
    #[arg(long)]
    cutter_dia: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    center_x: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    center_y: Option<f64>,
    /// Finished bore radius.
    #[arg(long)]
    radius: Option<f64>,
    /// Ellipse semi-axis along X (defaults to --radius).
    #[arg(long)]
    semi_major: Option<f64>,
    /// Ellipse semi-axis along Y (defaults to --radius).
    #[arg(long)]
    semi_minor: Option<f64>,
    /// Axial advance per revolution.
    #[arg(long)]
    pitch: Option<f64>,
    /// Bore length; only whole revolutions are cut unless --finish-partial-rev.
    #[arg(long)]
    length: Option<f64>,
    /// Maximum chord-to-curve deviation.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Cutting height of a circle.
    #[arg(long, allow_negative_numbers = true)]
    z: Option<f64>,
    /// Continue into the remaining partial revolution, up to the bore length.
    #[arg(long)]
    finish_partial_rev: bool,
    /// Output NC file [default: TestHelix.nc].
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Decimal places for coordinates [default: 3].
    #[arg(long, env = DECIMALS_ENV)]
    decimals: Option<u8>,
    /// Terminate lines with CR LF.
    #[arg(long)]
    crlf: bool,
    /// First line of the program [default: %].
    #[arg(long)]
    start_marker: Option<String>,
    /// Height of the approach move over the center [default: 20].
    #[arg(long, allow_negative_numbers = true)]
    approach_z: Option<f64>,
    /// Retract height [default: 100].
    #[arg(long, allow_negative_numbers = true)]
    retract_z: Option<f64>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    job: JobArgs,
    /// Points to check (.csv dump or NC program) instead of regenerating them.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_SEGMENT)]
    samples: u32,
}

#[derive(Debug, Args)]
struct DumpArgs {
    #[command(flatten)]
    job: JobArgs,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Also write an SVG preview of the XY projection.
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn read_numbers(
    stdin: &mut dyn BufRead,
    stderr: &mut dyn Write,
) -> Result<[f64; PROMPTS.len()], CliError> {
    let mut values = [0.0; PROMPTS.len()];
    let mut pending: Vec<String> = Vec::new();
    for (slot, prompt) in values.iter_mut().zip(PROMPTS) {
        let _ = writeln!(stderr, "{prompt}");
        while pending.is_empty() {
            let mut line = String::new();
            let read = stdin
                .read_line(&mut line)
                .map_err(|e| CliError::io("<stdin>", e))?;
            if read == 0 {
                return Err(CliError::Usage(format!(
                    "unexpected end of input at {prompt:?}"
                )));
            }
            pending.extend(line.split_whitespace().rev().map(str::to_string));
        }
        let token = pending.pop().unwrap_or_default();
        *slot = token.parse().map_err(|_| {
            CliError::Usage(format!("expected a number for {prompt:?}, got {token:?}"))
        })?;
    }
    Ok(values)
}

impl JobArgs {
    fn resolve(
        &self,
        stdin: &mut dyn BufRead,
        stderr: &mut dyn Write,
    ) -> Result<JobConfig, CliError> {
        let mut job = JobConfig::default();
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            job.apply_file(&text)?;
        }
        macro_rules! take {
            ($($field:ident => $target:ident),* $(,)?) => {
                $(if let Some(v) = self.$field.clone() { job.$target = v; })*
            };
        }
        take!(
            shape => shape,
            cutter_dia => cutter_diameter,
            center_x => center_x,
            center_y => center_y,
            radius => radius,
            pitch => pitch,
            length => length,
            tolerance => tolerance,
            z => z,
            output => output,
            decimals => decimals,
            start_marker => start_marker,
            approach_z => approach_z,
            retract_z => retract_z,
        );
        if self.semi_major.is_some() {
            job.semi_major = self.semi_major;
        }
        if self.semi_minor.is_some() {
            job.semi_minor = self.semi_minor;
        }
        job.crlf |= self.crlf;
        job.finish_partial_rev |= self.finish_partial_rev;
        if self.interactive {
            let [cutter, cx, cy, radius, pitch, length, tolerance] = read_numbers(stdin, stderr)?;
            job.cutter_diameter = cutter;
            job.center_x = cx;
            job.center_y = cy;
            job.radius = radius;
            job.pitch = pitch;
            job.length = length;
            job.tolerance = tolerance;
        }
        job.validate()?;
        Ok(job)
    }
}

fn print_count(out: &mut dyn Write, count: u32, step_angle: f64) -> std::io::Result<()> {
    writeln!(out, "The number of points is {count}")?;
    writeln!(out, "The angle is {step_angle:.6}")
}

/// Deviation accepted for `job`. Points read back from a file may each have
/// moved by half a quantum per axis, which can shift a chord by up to
/// `sqrt(3)` half-quanta.
fn allowed_deviation(job: &JobConfig, from_file: bool) -> f64 {
    let rounding = if from_file {
        3f64.sqrt() * job.format_policy().half_quantum()
    } else {
        0.0
    };
    job.tolerance * (1.0 + RELATIVE_EPSILON) + rounding
}

fn execute(
    command: Command,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let out_err = |e| CliError::io("<stdout>", e);
    match command {
        Command::Count(args) => {
            let disc = discretize_count(&ToleranceSpec::new(args.radius, args.tolerance)?);
            print_count(stdout, disc.count, disc.step_angle).map_err(out_err)?;
            writeln!(stdout, "The chord is {:.6}", disc.chord_length()).map_err(out_err)?;
        }
        Command::Generate(args) => {
            let job = args.resolve(stdin, stderr)?;
            let disc = job.discretization()?;
            let points = job.points()?;
            if job.shape == Shape::EllipticalHelix {
                let report =
                    measure_deviation(&points, &job.curve()?, DEFAULT_SAMPLES_PER_SEGMENT)?;
                let allowed = allowed_deviation(&job, false);
                if report.max_deviation > allowed {
                    return Err(CliError::ToleranceExceeded {
                        max_deviation: report.max_deviation,
                        allowed,
                    });
                }
            }
            let program = render_program(&points, job.center_x, job.center_y, job.format_policy())?;
            io::write_program(&program, &job.output)?;
            print_count(stdout, disc.count, disc.step_angle).map_err(out_err)?;
            writeln!(
                stdout,
                "Wrote {} ({} points, {} blocks)",
                job.output.display(),
                points.len(),
                program.block_count()
            )
            .map_err(out_err)?;
        }
        Command::Verify(args) => {
            let job = args.job.resolve(stdin, stderr)?;
            let points = match &args.input {
                Some(path) => io::read_points(path)?,
                None => job.points()?,
            };
            let report = measure_deviation(&points, &job.curve()?, args.samples)?;
            let allowed = allowed_deviation(&job, args.input.is_some());
            print_report(stdout, &report, points.len(), job.tolerance, allowed).map_err(out_err)?;
            if report.max_deviation > allowed {
                return Err(CliError::ToleranceExceeded {
                    max_deviation: report.max_deviation,
                    allowed,
                });
            }
        }
        Command::Dump(args) => {
            let job = args.job.resolve(stdin, stderr)?;
            let points = job.points()?;
            let csv = io::points_csv(&points, job.decimals);
            match &args.csv {
                Some(path) => fs::write(path, csv).map_err(|e| CliError::io(path, e))?,
                None => stdout.write_all(csv.as_bytes()).map_err(out_err)?,
            }
            if let Some(path) = &args.svg {
                let svg = io::points_svg(
                    &points,
                    job.center_x,
                    job.center_y,
                    job.outer_diameter(),
                    job.decimals,
                );
                fs::write(path, svg).map_err(|e| CliError::io(path, e))?;
            }
        }
    }
    Ok(())
}

fn print_report(
    out: &mut dyn Write,
    report: &DeviationReport,
    points: usize,
    tolerance: f64,
    allowed: f64,
) -> std::io::Result<()> {
    writeln!(out, "points: {points}")?;
    writeln!(out, "max_deviation: {:.9}", report.max_deviation)?;
    writeln!(out, "worst_segment_index: {}", report.worst_segment_index)?;
    writeln!(out, "samples_per_segment: {}", report.samples_per_segment)?;
    writeln!(out, "tolerance: {tolerance}")?;
    writeln!(out, "allowed: {allowed:.9}")?;
    let verdict = if report.max_deviation <= allowed {
        "PASS"
    } else {
        "FAIL"
    };
    writeln!(out, "result: {verdict}")
}

/// Runs the CLI with explicit streams and returns the process exit status.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return e.exit_code();
        }
    };
    match execute(cli.command, stdin, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn run_capture(args: &[&str], input: &str) -> (i32, String, String) {
        let mut stdin = Cursor::new(input.as_bytes().to_vec());
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["helixforge"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut stdin, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn count_square_case() {
        let (code, out, _) = run_capture(
            &["count", "--radius", "1", "--tolerance", "0.29289321881"],
            "",
        );
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "The number of points is 5\nThe angle is 1.570796\nThe chord is 1.414214\n"
        );
    }

    #[test]
    fn count_rejects_bad_tolerance() {
        let (code, out, err) = run_capture(&["count", "--radius", "1", "--tolerance", "2"], "");
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert!(err.starts_with("error: InvalidTolerance"), "{err}");
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn usage_errors_exit_nonzero() {
        let (code, _, err) = run_capture(&["count", "--radius", "1"], "");
        assert_eq!(code, 2);
        assert!(err.contains("--tolerance"));
        let (code, _, _) = run_capture(&["frobnicate"], "");
        assert_eq!(code, 2);
    }

    #[test]
    fn help_mentions_units() {
        let (code, out, _) = run_capture(&["--help"], "");
        assert_eq!(code, 0);
        assert!(out.contains("unitless machine units"));
    }

    #[test]
    fn interactive_reads_in_prompt_order() {
        let mut stdin = Cursor::new(b"10\n1 2\n10\n2\n6\n0.1\n".to_vec());
        let mut prompts = Vec::new();
        let args = JobArgs::try_parse_interactive();
        let job = args.resolve(&mut stdin, &mut prompts).unwrap();
        assert_eq!(
            (
                job.cutter_diameter,
                job.center_x,
                job.center_y,
                job.radius,
                job.pitch,
                job.length,
                job.tolerance
            ),
            (10.0, 1.0, 2.0, 10.0, 2.0, 6.0, 0.1)
        );
        let expected: String = PROMPTS.iter().map(|p| format!("{p}\n")).collect();
        assert_eq!(String::from_utf8(prompts).unwrap(), expected);
    }

    #[test]
    fn interactive_rejects_garbage_and_eof() {
        let args = JobArgs::try_parse_interactive();
        let err = args
            .resolve(&mut Cursor::new(b"ten\n".to_vec()), &mut Vec::new())
            .unwrap_err();
        assert!(matches!(err, CliError::Usage(_)));
        let err = args
            .resolve(&mut Cursor::new(b"1 2 3\n".to_vec()), &mut Vec::new())
            .unwrap_err();
        assert!(err.to_string().contains("end of input"), "{err}");
    }

    impl JobArgs {
        fn try_parse_interactive() -> JobArgs {
            match Cli::try_parse_from(["helixforge", "generate", "--interactive"])
                .unwrap()
                .command
            {
                Command::Generate(args) => args,
                _ => unreachable!(),
            }
        }
    }
}
