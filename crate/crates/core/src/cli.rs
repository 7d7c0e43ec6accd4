//! Command implementations behind the `swapchsh` binary.
//!
//! Each command writes its report to a caller-supplied writer so it can be
//! exercised without spawning a process. Exit codes: 0 success, 1 I/O
//! failure, 2 domain error.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use rayon::prelude::*;

use crate::chsh::{
    violation_final_analytic, violation_initial_analytic, violation_numeric, AnalyticTerms,
    ViolationReport,
};
use crate::error::Error;
use crate::regions::thresholds;
use crate::states::{rho_ab, rho_bc, Params};
use crate::swap::{phi_post_state_closed_form, swap_all, swap_outcome, BellOutcome};

pub const CSV_HEADER: &str = "p,alpha,r_initial,r_final,initial_violates,final_violates";

/// Grid size of the full-plane sweep.
pub const FIGURE1_STEPS: usize = 201;

#[derive(Debug)]
pub enum CliError {
    Io(io::Error),
    Domain(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Domain(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(e) => write!(f, "I/O error: {e}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    InitialAb,
    InitialBc,
    Final,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::InitialAb => "initial-ab",
            Which::InitialBc => "initial-bc",
            Which::Final => "final",
        })
    }
}

fn verdict(r: f64) -> &'static str {
    if r > 1.0 {
        "violation"
    } else {
        "no violation"
    }
}

fn write_eigenvalues(out: &mut impl Write, report: &ViolationReport) -> io::Result<()> {
    let [l1, l2, l3] = report.lambdas;
    writeln!(out, "eigenvalues of R^T R: {l1:.6} {l2:.6} {l3:.6}")
}

pub fn cmd_violation(p: f64, alpha: f64, which: Which, out: &mut impl Write) -> CliResult<()> {
    let params = Params::new(p, alpha)?;
    writeln!(out, "state: {which}  p = {p}  alpha = {alpha}")?;
    let (analytic, numeric) = match which {
        Which::InitialAb => (
            violation_initial_analytic(&params),
            Some(violation_numeric(&rho_ab(&params))?),
        ),
        Which::InitialBc => (
            violation_initial_analytic(&params),
            Some(violation_numeric(&rho_bc(&params))?),
        ),
        Which::Final => {
            let analytic = violation_final_analytic(&params)?;
            let swapped = swap_outcome(&rho_ab(&params), &rho_bc(&params), BellOutcome::PhiPlus)?;
            let numeric = match swapped.post_state {
                Some(state) => Some(violation_numeric(&state)?),
                None => None,
            };
            (analytic, numeric)
        }
    };
    write_eigenvalues(out, &analytic)?;
    match analytic.analytic {
        Some(AnalyticTerms::Initial { z: Some(z) }) => writeln!(out, "z = {z:.6}")?,
        Some(AnalyticTerms::Initial { z: None }) => {
            writeln!(out, "z undefined ((p-1) sin 2alpha = 0); r taken from eigenvalues")?
        }
        Some(AnalyticTerms::Final { y_tilde, z_tilde }) => {
            writeln!(out, "y~ = {y_tilde:.6}  z~ = {z_tilde:.6}")?
        }
        None => {}
    }
    writeln!(out, "r (analytic) = {:.6}", analytic.r)?;
    match numeric {
        Some(n) => writeln!(out, "r (numeric)  = {:.6}", n.r)?,
        None => writeln!(out, "r (numeric)  = n/a (Phi outcome has zero probability)")?,
    }
    writeln!(out, "verdict: {}", verdict(analytic.r))?;
    Ok(())
}

pub fn cmd_thresholds(p: f64, out: &mut impl Write) -> CliResult<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Contract(format!("p = {p} is outside [0, 1]")).into());
    }
    let t = thresholds(p);
    writeln!(out, "p            = {:.6}", t.p)?;
    writeln!(out, "p*           = {:.6}", t.p_star)?;
    writeln!(out, "p'           = {:.6}", t.p_prime)?;
    match (t.alpha_prime, t.alpha_prime_upper) {
        (Some(lo), Some(hi)) => {
            writeln!(out, "alpha'       = {lo:.6}")?;
            writeln!(out, "alpha' upper = {hi:.6}")?;
        }
        _ => writeln!(out, "alpha'       = undefined (p > p')")?,
    }
    match t.alpha_star {
        Some(a) => writeln!(out, "alpha*       = {a:.6}")?,
        None => writeln!(out, "alpha*       = undefined (p >= p*)")?,
    }
    Ok(())
}

pub fn cmd_swap(p: f64, alpha: f64, out: &mut impl Write) -> CliResult<()> {
    let params = Params::new(p, alpha)?;
    let results = swap_all(&rho_ab(&params), &rho_bc(&params))?;
    let closed = phi_post_state_closed_form(&params);
    writeln!(out, "swap  p = {p}  alpha = {alpha}")?;
    writeln!(out, "outcome  probability  r          verdict")?;
    for res in &results {
        let label = res.outcome.label();
        match &res.post_state {
            None => writeln!(out, "{label:<8} {:.6}     state undefined", res.probability)?,
            Some(state) => {
                let r = violation_numeric(state)?.r;
                write!(
                    out,
                    "{label:<8} {:.6}     {r:.6}   {}",
                    res.probability,
                    verdict(r)
                )?;
                if res.outcome.is_phi() {
                    match &closed {
                        Some(expected) => {
                            let dev = state.matrix().max_abs_diff(expected)?;
                            let tag = if dev <= 1e-12 { "matches" } else { "DIFFERS FROM" };
                            write!(out, "  [{tag} closed form, max dev {dev:.1e}]")?;
                        }
                        None => write!(out, "  [closed form undefined]")?,
                    }
                }
                writeln!(out)?;
            }
        }
    }
    let total: f64 = results.iter().map(|r| r.probability).sum();
    writeln!(out, "total probability = {total:.12}")?;
    Ok(())
}

/// Rectangular `(p, α)` grid. A single step is allowed on an axis whose
/// bounds coincide, which yields a one-dimensional slice.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub p_min: f64,
    pub p_max: f64,
    pub p_steps: usize,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_steps: usize,
    pub out: PathBuf,
}

impl SweepSpec {
    pub fn validate(&self) -> crate::error::Result<()> {
        let axes = [
            ("p", self.p_min, self.p_max, self.p_steps, 1.0),
            (
                "alpha",
                self.alpha_min,
                self.alpha_max,
                self.alpha_steps,
                std::f64::consts::FRAC_PI_2,
            ),
        ];
        for (name, lo, hi, steps, limit) in axes {
            if !(0.0..=limit).contains(&lo) || !(0.0..=limit).contains(&hi) {
                return Err(Error::Contract(format!(
                    "{name} range [{lo}, {hi}] is outside [0, {limit}]"
                )));
            }
            if lo > hi {
                return Err(Error::Contract(format!("{name} min {lo} exceeds max {hi}")));
            }
            if steps < 2 && !(steps == 1 && lo == hi) {
                return Err(Error::Contract(format!(
                    "{name} needs at least 2 steps (1 only for a fixed value)"
                )));
            }
        }
        Ok(())
    }

    /// The default full-plane grid, `201 × 201` over `[0, 1] × [0, π/2]`.
    pub fn full_plane(out: PathBuf) -> Self {
        Self {
            p_min: 0.0,
            p_max: 1.0,
            p_steps: FIGURE1_STEPS,
            alpha_min: 0.0,
            alpha_max: std::f64::consts::FRAC_PI_2,
            alpha_steps: FIGURE1_STEPS,
            out,
        }
    }
}

fn axis(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![lo];
    }
    (0..steps)
        .map(|i| {
            if i == steps - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub p: f64,
    pub alpha: f64,
    pub r_initial: f64,
    pub r_final: Option<f64>,
}

impl SweepRow {
    pub fn initial_violates(&self) -> bool {
        self.r_initial > 1.0
    }

    pub fn final_violates(&self) -> bool {
        self.r_final.is_some_and(|r| r > 1.0)
    }
}

// Rows carry the values exactly as printed so the CSV flags agree with the
// CSV numbers.
fn round_sig12(x: f64) -> f64 {
    format_sig12(x).parse().expect("formatted float parses")
}

/// Grid rows, `p` outer and `α` inner.
pub fn sweep_rows(spec: &SweepSpec) -> crate::error::Result<Vec<SweepRow>> {
    spec.validate()?;
    let ps = axis(spec.p_min, spec.p_max, spec.p_steps);
    let alphas = axis(spec.alpha_min, spec.alpha_max, spec.alpha_steps);
    let points: Vec<(f64, f64)> = ps
        .iter()
        .flat_map(|&p| alphas.iter().map(move |&a| (p, a)))
        .collect();
    points
        .par_iter()
        .map(|&(p, alpha)| {
            let params = Params::new(p, alpha)?;
            Ok(SweepRow {
                p,
                alpha,
                r_initial: round_sig12(violation_initial_analytic(&params).r),
                r_final: violation_final_analytic(&params)
                    .ok()
                    .map(|rep| round_sig12(rep.r)),
            })
        })
        .collect()
}

/// `x` with 12 significant digits in positional notation.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn write_csv(rows: &[SweepRow], out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        let r_final = row.r_final.map(format_sig12).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{}",
            format_sig12(row.p),
            format_sig12(row.alpha),
            format_sig12(row.r_initial),
            r_final,
            row.initial_violates(),
            row.final_violates()
        )?;
    }
    Ok(())
}

/// Writes the sweep CSV to `spec.out` and returns the rows.
pub fn cmd_sweep(spec: &SweepSpec) -> CliResult<Vec<SweepRow>> {
    let rows = sweep_rows(spec)?;
    let mut file = BufWriter::new(File::create(&spec.out)?);
    write_csv(&rows, &mut file)?;
    file.flush()?;
    Ok(rows)
}

/// Parses a CSV written by [`write_csv`].
pub fn read_csv(text: &str) -> Result<Vec<SweepRow>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => return Err(format!("unexpected header {other:?}")),
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 6 {
                return Err(format!("row {i}: expected 6 fields, got {}", f.len()));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|e| format!("row {i}: {e}"));
            let r_final = if f[3].is_empty() { None } else { Some(num(f[3])?) };
            Ok(SweepRow {
                p: num(f[0])?,
                alpha: num(f[1])?,
                r_initial: num(f[2])?,
                r_final,
            })
        })
        .collect()
}
