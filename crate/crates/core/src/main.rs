use std::f64::consts::FRAC_PI_2;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use swapchsh::cli::{self, CliResult, SweepSpec, Which};

#[derive(Parser, Debug)]
#[command(
    name = "swapchsh",
    version,
    about = "CHSH violation before and after entanglement swapping"
)]
struct Opt {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Point {
    /// Mixing weight p in [0, 1].
    #[arg(long)]
    p: f64,
    /// Angle alpha, radians unless --degrees is given.
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    /// Read alpha in degrees.
    #[arg(long)]
    degrees: bool,
}

impl Point {
    fn alpha_radians(&self) -> f64 {
        to_radians(self.alpha, self.degrees)
    }
}

fn to_radians(x: f64, degrees: bool) -> f64 {
    if degrees {
        x.to_radians()
    } else {
        x
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Violation parameter of an initial or swapped state.
    Violation {
        #[command(flatten)]
        point: Point,
        #[arg(long, value_enum, default_value_t = Which::InitialAb)]
        which: Which,
    },
    /// Write r over a (p, alpha) grid as CSV.
    Sweep {
        #[arg(long, default_value_t = 0.0)]
        p_min: f64,
        #[arg(long, default_value_t = 1.0)]
        p_max: f64,
        #[arg(long, default_value_t = cli::FIGURE1_STEPS)]
        p_steps: usize,
        /// Fix p to a single value (overrides --p-min/--p-max/--p-steps).
        #[arg(long)]
        slice_p: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        alpha_min: f64,
        /// Defaults to pi/2.
        #[arg(long)]
        alpha_max: Option<f64>,
        #[arg(long, default_value_t = cli::FIGURE1_STEPS)]
        alpha_steps: usize,
        /// Read alpha bounds in degrees.
        #[arg(long)]
        degrees: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Threshold curves p*, p', alpha'(p), alpha*(p).
    Thresholds {
        #[arg(long)]
        p: f64,
    },
    /// Bell-measurement outcomes and conditional states.
    Swap {
        #[command(flatten)]
        point: Point,
    },
}

fn run(opt: Opt) -> CliResult<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match opt.command {
        Command::Violation { point, which } => {
            cli::cmd_violation(point.p, point.alpha_radians(), which, &mut out)
        }
        Command::Thresholds { p } => cli::cmd_thresholds(p, &mut out),
        Command::Swap { point } => cli::cmd_swap(point.p, point.alpha_radians(), &mut out),
        Command::Sweep {
            p_min,
            p_max,
            p_steps,
            slice_p,
            alpha_min,
            alpha_max,
            alpha_steps,
            degrees,
            out: path,
        } => {
            let (p_min, p_max, p_steps) = match slice_p {
                Some(p) => (p, p, 1),
                None => (p_min, p_max, p_steps),
            };
            let spec = SweepSpec {
                p_min,
                p_max,
                p_steps,
                alpha_min: to_radians(alpha_min, degrees),
                alpha_max: alpha_max.map_or(FRAC_PI_2, |a| to_radians(a, degrees)),
                alpha_steps,
                out: path,
            };
            let rows = cli::cmd_sweep(&spec)?;
            let superactivated = rows
                .iter()
                .filter(|r| !r.initial_violates() && r.final_violates())
                .count();
            writeln!(
                out,
                "wrote {} rows to {} ({} with initial_violates=false, final_violates=true)",
                rows.len(),
                spec.out.display(),
                superactivated
            )?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Opt::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
