//! Direct search for the maximal CHSH expectation.
//!
//! Independent of the correlation-matrix route: expectations are traces of
//! `ρ (a·σ) ⊗ (b·σ)` built from explicit measurement directions, and the
//! maximum is found by search over the four directions.
//!
//! Search: from a handful of deterministic starting settings, each direction
//! in turn is replaced by the best point of a `density × density` grid on
//! the sphere (polar × azimuth) until no direction improves. Then the eight
//! spherical angles are polished one at a time by golden-section search in
//! a window that starts at one grid spacing and shrinks ×0.2 per pass.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qmat::ComplexMatrix;
use crate::states::TwoQubitState;

pub const DEFAULT_GRID_DENSITY: usize = 24;
pub const REFINE_PASSES: usize = 3;
pub const REFINE_SHRINK: f64 = 0.2;

const UNIT_TOL: f64 = 1e-12;
const MAX_GRID_SWEEPS: usize = 20;
const CYCLES_PER_PASS: usize = 6;
const GOLDEN_ITERS: usize = 60;

/// Measurement directions: `a0, a1` for Alice, `b0, b1` for Charlie.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings {
    pub a0: [f64; 3],
    pub a1: [f64; 3],
    pub b0: [f64; 3],
    pub b1: [f64; 3],
}

impl ChshSettings {
    pub fn new(a0: [f64; 3], a1: [f64; 3], b0: [f64; 3], b1: [f64; 3]) -> Result<Self> {
        for v in [a0, a1, b0, b1] {
            let n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
            if (n2.sqrt() - 1.0).abs() > UNIT_TOL {
                return Err(Error::contract(format!(
                    "measurement direction {v:?} is not a unit vector"
                )));
            }
        }
        Ok(Self { a0, a1, b0, b1 })
    }

    /// `E(a0,b0) + E(a0,b1) + E(a1,b0) − E(a1,b1)`.
    pub fn expectation(&self, rho: &TwoQubitState) -> f64 {
        let e = |a: [f64; 3], b: [f64; 3]| correlator(rho.matrix(), a, b);
        e(self.a0, self.b0) + e(self.a0, self.b1) + e(self.a1, self.b0) - e(self.a1, self.b1)
    }
}

/// `n·σ` as a 2×2 array.
fn spin_operator(n: [f64; 3]) -> [[Complex64; 2]; 2] {
    [
        [Complex64::new(n[2], 0.0), Complex64::new(n[0], -n[1])],
        [Complex64::new(n[0], n[1]), Complex64::new(-n[2], 0.0)],
    ]
}

/// `Re Tr(ρ (a·σ) ⊗ (b·σ))`.
fn correlator(rho: &ComplexMatrix, a: [f64; 3], b: [f64; 3]) -> f64 {
    let (sa, sb) = (spin_operator(a), spin_operator(b));
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            // (a·σ ⊗ b·σ)[j][i]
            let op = sa[j / 2][i / 2] * sb[j % 2][i % 2];
            acc += rho[(i, j)] * op;
        }
    }
    acc.re
}

fn direction(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

fn angles_of(v: [f64; 3]) -> (f64, f64) {
    (v[2].clamp(-1.0, 1.0).acos(), v[1].atan2(v[0]))
}

/// Eight spherical angles, two per direction, in the order a0, a1, b0, b1.
#[derive(Clone, Copy)]
struct Angles([f64; 8]);

impl Angles {
    fn from_settings(s: &ChshSettings) -> Self {
        let mut out = [0.0; 8];
        for (k, v) in [s.a0, s.a1, s.b0, s.b1].into_iter().enumerate() {
            let (t, p) = angles_of(v);
            out[2 * k] = t;
            out[2 * k + 1] = p;
        }
        Angles(out)
    }

    fn settings(&self) -> ChshSettings {
        let a = &self.0;
        ChshSettings {
            a0: direction(a[0], a[1]),
            a1: direction(a[2], a[3]),
            b0: direction(a[4], a[5]),
            b1: direction(a[6], a[7]),
        }
    }
}

fn starting_settings() -> Vec<ChshSettings> {
    let axes = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let h = FRAC_1_SQRT_2;
    let mut out = Vec::new();
    for (i, j) in [(2, 0), (0, 1), (1, 2)] {
        let (e1, e2) = (axes[i], axes[j]);
        for sign in [1.0, -1.0] {
            let plus = [0, 1, 2].map(|k| sign * h * (e1[k] + e2[k]));
            let minus = [0, 1, 2].map(|k| sign * h * (e1[k] - e2[k]));
            out.push(ChshSettings {
                a0: e1,
                a1: e2,
                b0: plus,
                b1: minus,
            });
        }
    }
    out
}

/// Maximal CHSH expectation of `rho` over all measurement directions.
///
/// `grid_density` points per spherical angle in the coarse phase; the result
/// is a lower bound on the true maximum and never exceeds `2√2` beyond
/// rounding.
pub fn chsh_max_bruteforce(rho: &TwoQubitState, grid_density: usize) -> f64 {
    let density = grid_density.max(2);
    let grid: Vec<[f64; 3]> = (0..density)
        .flat_map(|i| {
            let theta = PI * i as f64 / (density - 1) as f64;
            (0..density).map(move |j| direction(theta, 2.0 * PI * j as f64 / density as f64))
        })
        .collect();
    let spacing = PI / (density - 1) as f64;

    let results: Vec<f64> = starting_settings()
        .par_iter()
        .map(|start| search_from(rho, start, &grid, spacing))
        .collect();
    // Sequential fold keeps the reduction order fixed.
    results.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

fn search_from(rho: &TwoQubitState, start: &ChshSettings, grid: &[[f64; 3]], spacing: f64) -> f64 {
    let mut s = *start;
    let mut best = s.expectation(rho);

    for _ in 0..MAX_GRID_SWEEPS {
        let before = best;
        for slot in 0..4 {
            for &candidate in grid {
                let mut trial = s;
                *slot_mut(&mut trial, slot) = candidate;
                let value = trial.expectation(rho);
                if value > best {
                    best = value;
                    s = trial;
                }
            }
        }
        if best - before <= 1e-12 {
            break;
        }
    }

    let mut angles = Angles::from_settings(&s);
    let mut window = spacing;
    for _ in 0..REFINE_PASSES {
        for _ in 0..CYCLES_PER_PASS {
            for k in 0..8 {
                let centre = angles.0[k];
                let objective = |x: f64| {
                    let mut a = angles;
                    a.0[k] = x;
                    a.settings().expectation(rho)
                };
                let (x, value) = golden_max(objective, centre - window, centre + window);
                if value > best {
                    best = value;
                    angles.0[k] = x;
                }
            }
        }
        window *= REFINE_SHRINK;
    }
    best
}

fn slot_mut(s: &mut ChshSettings, slot: usize) -> &mut [f64; 3] {
    match slot {
        0 => &mut s.a0,
        1 => &mut s.a1,
        2 => &mut s.b0,
        _ => &mut s.b1,
    }
}

/// Golden-section maximization of a unimodal `f` on `[lo, hi]`.
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..GOLDEN_ITERS {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
