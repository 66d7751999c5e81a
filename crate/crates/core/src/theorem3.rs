//! Residual sweep ruling out curvature-adapted real hypersurfaces in the
//! complex two-plane Grassmannian with generic `alpha`.
//!
//! On the Hopf-type eigenvectors `X1`, `X2` the principal curvatures solve
//! `lambda_i' = lambda_i^2 + sigma mu_i`, with `mu_i` the Jacobi eigenvalues
//! computed from the model tensor. The symmetry of the shape operator
//! gives two linear relations between `lambda1`, `lambda2`, `a_jj` and
//! `a_zz`. Holding `a_jj`, `a_zz` or the ratio `lambda1 / lambda2` fixed
//! along the normal geodesic turns them into `lambda1 = c lambda2 + d`, which
//! is then substituted into the first Riccati equation:
//!
//! ```text
//! f(t) = c (lambda2^2 + sigma mu2) - (c lambda2 + d)^2 - sigma mu1
//! ```
//!
//! The sweep minimizes `max_t |f(t)|` over the free parameter and
//! `lambda2(0)`. A floor bounded away from zero rules the configuration out.

use std::f64::consts::FRAC_PI_2;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Witness};
use crate::error::{Error, Result};
use crate::grassmannian::{
    equal_angle_x2_eigenvalue, hopf_eigenvalues, normal_with_alpha, StructureBundle,
};
use crate::tube::{BranchSign, CurvatureBranch};

/// Angles whose cosine is this close to an excluded value are rejected.
pub const EXCLUSION_TOL: f64 = 1e-9;
pub const EXCLUDED_COSINES: [f64; 4] = [0.0, 0.6, 0.8, 1.0];
/// Search box for the free parameter and `lambda2(0)`.
pub const SEARCH_BOX: f64 = 50.0;
pub const GRID_STEPS: usize = 121;
/// `sinh` grading of the grid: spacing near 0 is about `1/30` of the
/// spacing at the edge of the box.
const GRID_GRADING: f64 = 4.0;
/// Grid points refined by pattern search.
const REFINE_STARTS: usize = 12;
pub const REFINE_TO: f64 = 1e-8;
pub const TIME_SAMPLES: usize = 64;
/// A floor at or above this value counts as a contradiction.
pub const FLOOR_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Constraint {
    /// `a_jj` constant along the geodesic.
    Ajj,
    /// `a_zz` constant along the geodesic.
    Azz,
    /// `lambda1 / lambda2` constant.
    Ratio,
}

impl FromStr for Constraint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ajj" => Ok(Constraint::Ajj),
            "azz" => Ok(Constraint::Azz),
            "ratio" => Ok(Constraint::Ratio),
            other => Err(Error::InvalidInput(format!("unknown constraint {other:?}"))),
        }
    }
}

/// Sign in front of the Jacobi eigenvalues in the Riccati equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignConvention {
    /// `+mu`, the compact sign of the model.
    Computed,
    /// `-mu`, as the equations are printed.
    Printed,
}

impl SignConvention {
    pub fn sigma(self) -> f64 {
        match self {
            SignConvention::Computed => 1.0,
            SignConvention::Printed => -1.0,
        }
    }
}

/// `a:b:n` as `n` midpoints of equal subintervals of `[a, b]`.
pub fn parse_alpha_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::InvalidInput(format!("alpha grid must be a:b:n, got {spec:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let b: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if n == 0
        || a.partial_cmp(&b) != Some(std::cmp::Ordering::Less)
        || !a.is_finite()
        || !b.is_finite()
    {
        return Err(bad());
    }
    Ok((0..n)
        .map(|k| a + (b - a) * (k as f64 + 0.5) / n as f64)
        .collect())
}

pub fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < FRAC_PI_2) {
        return Err(Error::BoundaryAngle { alpha });
    }
    let c = alpha.cos();
    for e in EXCLUDED_COSINES {
        if (c - e).abs() <= EXCLUSION_TOL {
            return Err(Error::ExcludedAngle {
                alpha,
                cos_alpha: c,
                excluded: e,
            });
        }
    }
    Ok(())
}

/// The fixed slope `c` for the `a_jj` and `a_zz` modes.
pub fn fixed_slope(alpha: f64, constraint: Constraint) -> Option<f64> {
    let beta = alpha / 2.0;
    let a = 1.0 - (beta.cos() / beta.sin()).powi(2);
    let b = 1.0 + beta.tan().powi(2);
    match constraint {
        Constraint::Ajj => Some(b / a),
        Constraint::Azz => Some(b / (a * beta.tan().powi(4))),
        Constraint::Ratio => None,
    }
}

/// Jacobi data at one angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiccatiSystem {
    pub mu1: f64,
    pub mu2: f64,
    pub sigma: f64,
}

impl RiccatiSystem {
    fn lambda2_branch(&self, lambda2_0: f64) -> Result<CurvatureBranch> {
        let kappa = self.mu2.abs().sqrt();
        let sign = if self.sigma * self.mu2 > 0.0 {
            BranchSign::Compact
        } else {
            BranchSign::Noncompact
        };
        CurvatureBranch::from_value(sign, kappa, lambda2_0, 1)
    }

    /// `max_t |f(t)|` over `TIME_SAMPLES` points of `[0, min(1, focal / 2)]`.
    pub fn residual(&self, c: f64, d: f64, lambda2_0: f64) -> Result<f64> {
        let branch = self.lambda2_branch(lambda2_0)?;
        let horizon = (0.5 * branch.focal_radius()).min(1.0);
        let mut worst: f64 = 0.0;
        for k in 0..TIME_SAMPLES {
            let t = horizon * k as f64 / (TIME_SAMPLES - 1) as f64;
            let l2 = branch.evolve(t)?;
            let l1 = c * l2 + d;
            let f = c * (l2 * l2 + self.sigma * self.mu2) - l1 * l1 - self.sigma * self.mu1;
            worst = worst.max(f.abs());
        }
        Ok(worst)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    /// `d` for the `a_jj`/`a_zz` modes, `c` for the ratio mode.
    pub parameter: f64,
    pub lambda2_initial: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaReport {
    pub alpha: f64,
    pub cos_alpha: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub ratio: f64,
    pub ratio_expected: f64,
    pub eigen_residual: f64,
    pub slope: Option<f64>,
    pub best: Candidate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub constraint: Constraint,
    pub signs: SignConvention,
    pub alphas: Vec<AlphaReport>,
    pub floor: f64,
    pub max_ratio_error: f64,
    pub certificate: Certificate,
}

/// Grid nodes on `[-SEARCH_BOX, SEARCH_BOX]`, graded toward 0.
fn grid_nodes() -> Vec<f64> {
    let n = GRID_STEPS as f64 - 1.0;
    (0..GRID_STEPS)
        .map(|i| {
            let s = 2.0 * i as f64 / n - 1.0;
            SEARCH_BOX * (GRID_GRADING * s).sinh() / GRID_GRADING.sinh()
        })
        .collect()
}

/// Pattern search whose direction set turns by an irrational angle on every
/// contraction, so that it can follow the ridges of the max-norm.
fn pattern_search(eval: &dyn Fn(f64, f64) -> f64, start: Candidate, step: f64) -> Candidate {
    let clamp = |x: f64| x.clamp(-SEARCH_BOX, SEARCH_BOX);
    let mut cur = start;
    let mut step = step;
    let mut turn = 0.0;
    let mut evals = 0;
    while step >= REFINE_TO && evals < 4_000 {
        let mut moved = false;
        for k in 0..8 {
            let a = turn + k as f64 * std::f64::consts::FRAC_PI_4;
            let (p, l) = (
                clamp(cur.parameter + step * a.cos()),
                clamp(cur.lambda2_initial + step * a.sin()),
            );
            evals += 1;
            let r = eval(p, l);
            if r < cur.residual {
                cur = Candidate {
                    parameter: p,
                    lambda2_initial: l,
                    residual: r,
                };
                moved = true;
                step *= 1.5;
                break;
            }
        }
        if !moved {
            step *= 0.5;
            turn += 0.618_033_988_749_895;
        }
    }
    cur
}

/// Nelder-Mead on the clamped box, started from a right simplex of size `h`.
fn nelder_mead(eval: &dyn Fn(f64, f64) -> f64, start: Candidate, h: f64) -> Candidate {
    let clamp = |x: [f64; 2]| {
        [
            x[0].clamp(-SEARCH_BOX, SEARCH_BOX),
            x[1].clamp(-SEARCH_BOX, SEARCH_BOX),
        ]
    };
    let f = |x: [f64; 2]| eval(x[0], x[1]);
    let x0 = [start.parameter, start.lambda2_initial];
    let mut simplex: Vec<([f64; 2], f64)> = [x0, [x0[0] + h, x0[1]], [x0[0], x0[1] + h]]
        .into_iter()
        .map(|x| {
            let x = clamp(x);
            (x, f(x))
        })
        .collect();
    for _ in 0..400 {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (b, w) = (simplex[0], simplex[2]);
        let size = (simplex[1].0[0] - b.0[0])
            .abs()
            .max((simplex[1].0[1] - b.0[1]).abs())
            .max((w.0[0] - b.0[0]).abs())
            .max((w.0[1] - b.0[1]).abs());
        if size < REFINE_TO {
            break;
        }
        let c = [
            (b.0[0] + simplex[1].0[0]) / 2.0,
            (b.0[1] + simplex[1].0[1]) / 2.0,
        ];
        let along = |t: f64| clamp([c[0] + t * (w.0[0] - c[0]), c[1] + t * (w.0[1] - c[1])]);
        let xr = along(-1.0);
        let fr = f(xr);
        if fr < b.1 {
            let xe = along(-2.0);
            let fe = f(xe);
            simplex[2] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[1].1 {
            simplex[2] = (xr, fr);
        } else {
            let xc = if fr < w.1 { along(-0.5) } else { along(0.5) };
            let fc = f(xc);
            if fc < w.1.min(fr) {
                simplex[2] = (xc, fc);
            } else {
                for v in simplex.iter_mut().skip(1) {
                    let x = [(b.0[0] + v.0[0]) / 2.0, (b.0[1] + v.0[1]) / 2.0];
                    *v = (x, f(x));
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, r) = simplex[0];
    Candidate {
        parameter: x[0],
        lambda2_initial: x[1],
        residual: r,
    }
}

fn minimize(sys: &RiccatiSystem, slope: Option<f64>) -> Result<Candidate> {
    let eval = |p: f64, l: f64| -> f64 {
        let (c, d) = match slope {
            Some(c) => (c, p),
            None => (p, 0.0),
        };
        sys.residual(c, d, l).unwrap_or(f64::INFINITY)
    };
    let nodes = grid_nodes();
    let spacing = |i: usize| {
        let lo = if i > 0 { nodes[i] - nodes[i - 1] } else { 0.0 };
        let hi = if i + 1 < nodes.len() {
            nodes[i + 1] - nodes[i]
        } else {
            0.0
        };
        lo.max(hi)
    };
    let mut grid: Vec<(Candidate, f64)> = Vec::with_capacity(GRID_STEPS * GRID_STEPS);
    for (i, &p) in nodes.iter().enumerate() {
        for (j, &l) in nodes.iter().enumerate() {
            grid.push((
                Candidate {
                    parameter: p,
                    lambda2_initial: l,
                    residual: eval(p, l),
                },
                spacing(i).max(spacing(j)),
            ));
        }
    }
    grid.sort_by(|a, b| a.0.residual.total_cmp(&b.0.residual));

    let mut best = grid[0].0;
    for (start, h) in grid.iter().take(REFINE_STARTS) {
        let mut cur = *start;
        // Restart the simplex until it stops making progress.
        for _ in 0..4 {
            let next = nelder_mead(&eval, cur, *h);
            let gain = cur.residual - next.residual;
            cur = next;
            if gain <= 1e-9 * cur.residual.max(1.0) {
                break;
            }
        }
        let cur = pattern_search(&eval, cur, *h * 1e-2);
        if cur.residual < best.residual {
            best = cur;
        }
    }
    Ok(best)
}

/// Sweep one angle with the given constraint and sign convention.
pub fn sweep_alpha(
    alpha: f64,
    constraint: Constraint,
    signs: SignConvention,
    bundle: &StructureBundle,
) -> Result<AlphaReport> {
    check_alpha(alpha)?;
    let xi = normal_with_alpha(bundle, alpha)?;
    let h = hopf_eigenvalues(&xi, bundle)?;
    let sys = RiccatiSystem {
        mu1: h.eigenvalue_x1,
        mu2: h.eigenvalue_x2,
        sigma: signs.sigma(),
    };
    let slope = fixed_slope(alpha, constraint);
    let best = minimize(&sys, slope)?;
    Ok(AlphaReport {
        alpha,
        cos_alpha: alpha.cos(),
        mu1: h.eigenvalue_x1,
        mu2: h.eigenvalue_x2,
        ratio: h.ratio,
        ratio_expected: h.ratio_expected,
        eigen_residual: h.residual_x1.max(h.residual_x2),
        slope,
        best,
    })
}

/// Sweep the grid in parallel. The certificate is a contradiction when the
/// residual floor is at least `FLOOR_TOL` at every angle.
pub fn theorem3_sweep(
    alpha_grid: &[f64],
    constraint: Constraint,
    signs: SignConvention,
    bundle: &StructureBundle,
) -> Result<SweepReport> {
    if alpha_grid.is_empty() {
        return Err(Error::InvalidInput("alpha grid is empty".into()));
    }
    for &a in alpha_grid {
        check_alpha(a)?;
    }
    let alphas = alpha_grid
        .par_iter()
        .map(|&a| sweep_alpha(a, constraint, signs, bundle))
        .collect::<Result<Vec<_>>>()?;
    let worst = alphas
        .iter()
        .min_by(|a, b| a.best.residual.total_cmp(&b.best.residual))
        .expect("grid is nonempty");
    let floor = worst.best.residual;
    let max_ratio_error = alphas
        .iter()
        .map(|r| ((r.ratio - r.ratio_expected) / r.ratio_expected).abs())
        .fold(0.0, f64::max);
    let witness = Witness::ResidualFloor {
        alpha: worst.alpha,
        parameter: worst.best.parameter,
        lambda2_initial: worst.best.lambda2_initial,
        residual: floor,
    };
    let certificate = if floor >= FLOOR_TOL {
        Certificate::contradiction(witness, floor, FLOOR_TOL)
    } else {
        let mut c = Certificate::equivalent(floor, FLOOR_TOL);
        c.witness = Some(witness);
        c
    };
    Ok(SweepReport {
        constraint,
        signs,
        alphas,
        floor,
        max_ratio_error,
        certificate,
    })
}

/// The `cos(beta) = sin(beta)` case: `lambda2 = 0` identically, so the
/// Riccati equation for `lambda2` demands `mu2 = 0`.
pub fn equal_angle_certificate(bundle: &StructureBundle) -> Result<Certificate> {
    let mu2 = equal_angle_x2_eigenvalue(bundle)?;
    let residual = mu2.abs();
    let witness = Witness::ZeroBranch {
        jacobi_eigenvalue: mu2,
    };
    if residual >= FLOOR_TOL {
        Ok(Certificate::contradiction(witness, residual, FLOOR_TOL))
    } else {
        let mut c = Certificate::equivalent(residual, FLOOR_TOL);
        c.witness = Some(witness);
        Ok(c)
    }
}
