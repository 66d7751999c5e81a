//! Mean-curvature profiles along the normal geodesic.
//!
//! Two points have the same profile `t -> sum m_i lambda_i(t)` exactly when
//! their poles and residues agree. Every branch contributes residue `-m` at
//! each of its poles regardless of `kappa`, so the stripping loop compares
//! pole locations and multiplicities, innermost first, and then checks that
//! the smooth remainder vanishes.
//!
//! Profile equality does not pin down the branches on its own:
//! `2 cot 2x = cot x + cot(x + pi/2)`, so a `kappa = 2` branch and a pair of
//! `kappa = 1` branches half a period apart have the same profile. The
//! multiset comparator keeps the `kappa` data and tells them apart.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Witness};
use crate::error::{Error, Result};
use crate::tube::{BranchSign, CurvatureBranch, PcSystem, Regime};

/// Poles closer than this are merged.
pub const POLE_MERGE_TOL: f64 = 1e-9;
/// Tolerance on the smooth remainder of the profile difference.
pub const PROFILE_TOL: f64 = 1e-9;
/// Number of grid points for the remainder check.
pub const PROFILE_GRID: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileSystem {
    pub label: String,
    pub system: PcSystem,
}

impl ProfileSystem {
    pub fn new(label: impl Into<String>, system: PcSystem) -> Self {
        ProfileSystem {
            label: label.into(),
            system,
        }
    }

    pub fn branches(&self) -> &[CurvatureBranch] {
        &self.system.branches
    }
}

/// `sum m_i lambda_i(t)`, continued through the poles of each branch.
pub fn profile(sys: &ProfileSystem, t: f64) -> Result<f64> {
    let mut acc = 0.0;
    for (i, b) in sys.branches().iter().enumerate() {
        let v = b.continued(t).map_err(|_| Error::BranchFocalPoint {
            branch: i,
            radius: t,
        })?;
        acc += f64::from(b.multiplicity) * v;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pole {
    pub location: f64,
    pub weight: u32,
    /// Frequencies of the branches meeting at this pole.
    pub kappas: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PoleData {
    pub poles: Vec<Pole>,
}

/// Pole locations of one branch inside the open window `(a, b)`.
fn branch_poles(b: &CurvatureBranch, a: f64, hi: f64) -> Vec<f64> {
    match b.regime() {
        Regime::Cot => {
            let period = PI / b.kappa;
            let r = b.phase / b.kappa;
            let k0 = ((a - r) / period).floor() as i64;
            let mut out = Vec::new();
            let mut k = k0;
            loop {
                let loc = r + k as f64 * period;
                if loc >= hi {
                    break;
                }
                if loc > a {
                    out.push(loc);
                }
                k += 1;
            }
            out
        }
        Regime::Flat => {
            if b.phase == 0.0 {
                return Vec::new();
            }
            let loc = 1.0 / b.phase;
            if loc > a && loc < hi {
                vec![loc]
            } else {
                Vec::new()
            }
        }
        Regime::Coth => {
            let loc = b.regular_interval();
            let pole = if loc.1.is_finite() { loc.1 } else { loc.0 };
            if pole > a && pole < hi {
                vec![pole]
            } else {
                Vec::new()
            }
        }
        Regime::Tanh | Regime::Const => Vec::new(),
    }
}

fn check_window(window: (f64, f64)) -> Result<()> {
    let (a, b) = window;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidInput(format!("bad window ({a}, {b})")));
    }
    Ok(())
}

/// All poles of the system inside the open window, merged and sorted.
pub fn extract_poles(sys: &ProfileSystem, window: (f64, f64)) -> Result<PoleData> {
    check_window(window)?;
    let mut raw: Vec<(f64, u32, f64)> = Vec::new();
    for b in sys.branches() {
        for loc in branch_poles(b, window.0, window.1) {
            raw.push((loc, b.multiplicity, b.kappa));
        }
    }
    raw.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut poles: Vec<Pole> = Vec::new();
    for (loc, w, k) in raw {
        match poles.last_mut() {
            Some(p) if (loc - p.location).abs() <= POLE_MERGE_TOL => {
                p.weight += w;
                if !p.kappas.iter().any(|x| (x - k).abs() <= POLE_MERGE_TOL) {
                    p.kappas.push(k);
                    p.kappas.sort_by(f64::total_cmp);
                }
            }
            _ => poles.push(Pole {
                location: loc,
                weight: w,
                kappas: vec![k],
            }),
        }
    }
    Ok(PoleData { poles })
}

fn check_supported(sys: &ProfileSystem) -> Result<()> {
    for b in sys.branches() {
        if b.regime() == Regime::Tanh {
            return Err(Error::UnsupportedRegime(format!(
                "{}: noncompact branch with |lambda| < kappa",
                sys.label
            )));
        }
    }
    Ok(())
}

/// `(delta, pi / kappa_min + delta)`, with `delta` chosen to keep every pole
/// away from the endpoints.
pub fn default_window(systems: &[&ProfileSystem]) -> (f64, f64) {
    let kappa_min = systems
        .iter()
        .flat_map(|s| s.branches().iter())
        .filter(|b| b.sign == BranchSign::Compact)
        .map(|b| b.kappa)
        .fold(f64::INFINITY, f64::min);
    let len = if kappa_min.is_finite() {
        PI / kappa_min
    } else {
        PI
    };
    let wide = (-4.0 * len, 5.0 * len);
    let mut locs: Vec<f64> = Vec::new();
    for s in systems {
        for b in s.branches() {
            locs.extend(branch_poles(b, wide.0, wide.1));
        }
    }
    let near = |x: f64| locs.iter().any(|p| (p - x).abs() < 1e-6 * len);
    let mut delta = 0.0;
    for k in 0..1000 {
        delta = 1e-3 * len * k as f64 / 7.0;
        if !near(delta) && !near(len + delta) {
            break;
        }
    }
    (delta, len + delta)
}

fn grid_points(window: (f64, f64), poles: &[f64]) -> Vec<f64> {
    let (a, b) = window;
    let h = (b - a) / PROFILE_GRID as f64;
    (0..PROFILE_GRID)
        .map(|k| a + h * (k as f64 + 0.5))
        .filter(|t| poles.iter().all(|p| (p - t).abs() > 0.05 * h))
        .collect()
}

/// Largest relative gap between the two profiles on the window grid, with
/// its location.
pub fn profile_gap(p: &ProfileSystem, q: &ProfileSystem, window: (f64, f64)) -> Result<(f64, f64)> {
    let mut poles: Vec<f64> = Vec::new();
    for s in [p, q] {
        for b in s.branches() {
            poles.extend(branch_poles(b, window.0, window.1));
        }
    }
    let mut worst = (0.0, window.0);
    for t in grid_points(window, &poles) {
        let (vp, vq) = (profile(p, t)?, profile(q, t)?);
        let scale = p
            .branches()
            .iter()
            .chain(q.branches())
            .map(|b| f64::from(b.multiplicity) * b.continued(t).map_or(0.0, f64::abs))
            .sum::<f64>()
            .max(1.0);
        let d = (vp - vq).abs() / scale;
        if d > worst.0 {
            worst = (d, t);
        }
    }
    Ok(worst)
}

/// The stripping loop: compare the innermost remaining pole of `p` and `q`,
/// strip it, repeat; then check the smooth remainder on a grid.
pub fn profiles_equivalent(
    p: &ProfileSystem,
    q: &ProfileSystem,
    window: (f64, f64),
) -> Result<Certificate> {
    check_supported(p)?;
    check_supported(q)?;
    let pp = extract_poles(p, window)?;
    let pq = extract_poles(q, window)?;

    let mut remaining: Vec<(f64, u32, u32)> = Vec::new();
    for pole in &pp.poles {
        remaining.push((pole.location, pole.weight, 0));
    }
    for pole in &pq.poles {
        match remaining
            .iter_mut()
            .find(|r| (r.0 - pole.location).abs() <= POLE_MERGE_TOL)
        {
            Some(r) => r.2 += pole.weight,
            None => remaining.push((pole.location, 0, pole.weight)),
        }
    }
    // Innermost first: nearest to t = 0.
    remaining.sort_by(|x, y| x.0.abs().total_cmp(&y.0.abs()).then(x.0.total_cmp(&y.0)));
    for (location, wp, wq) in remaining {
        if wp != wq {
            return Ok(Certificate::distinct(
                Witness::PoleMismatch {
                    location,
                    weight_p: wp,
                    weight_q: wq,
                },
                f64::from(wp.abs_diff(wq)),
                PROFILE_TOL,
            ));
        }
    }

    let (gap, t) = profile_gap(p, q, window)?;
    if gap <= PROFILE_TOL {
        Ok(Certificate::equivalent(gap, PROFILE_TOL))
    } else {
        let difference = profile(p, t)? - profile(q, t)?;
        Ok(Certificate::distinct(
            Witness::ProfileResidual { t, difference },
            gap,
            PROFILE_TOL,
        ))
    }
}

/// Canonical form of a branch: compact phases stay in `(0, pi)`; other
/// branches are keyed by their initial value.
fn canonical(sys: &ProfileSystem) -> Vec<(BranchSign, f64, f64, u32)> {
    let mut out: Vec<(BranchSign, f64, f64, u32)> = Vec::new();
    for b in sys.branches() {
        match out.iter_mut().find(|x| {
            x.0 == b.sign
                && (x.1 - b.kappa).abs() <= POLE_MERGE_TOL
                && (x.2 - b.phase).abs() <= POLE_MERGE_TOL
        }) {
            Some(x) => x.3 += b.multiplicity,
            None => out.push((b.sign, b.kappa, b.phase, b.multiplicity)),
        }
    }
    out.sort_by(|x, y| {
        x.0.cmp(&y.0)
            .then(x.1.total_cmp(&y.1))
            .then(x.2.total_cmp(&y.2))
    });
    out
}

/// Equality of the branch multisets `{(kappa, phase, m)}`.
pub fn branch_multisets_equal(p: &ProfileSystem, q: &ProfileSystem) -> bool {
    let (a, b) = (canonical(p), canonical(q));
    a.len() == b.len()
        && a.iter().zip(&b).all(|(x, y)| {
            x.0 == y.0
                && (x.1 - y.1).abs() <= POLE_MERGE_TOL
                && (x.2 - y.2).abs() <= POLE_MERGE_TOL
                && x.3 == y.3
        })
}

/// Total multiplicity per `(sign, kappa)`: the Jacobi-eigenvalue data.
fn kappa_data(sys: &ProfileSystem) -> Vec<(BranchSign, f64, u32)> {
    let mut out: Vec<(BranchSign, f64, u32)> = Vec::new();
    for (s, k, _, m) in canonical(sys) {
        match out
            .iter_mut()
            .find(|x| x.0 == s && (x.1 - k).abs() <= POLE_MERGE_TOL)
        {
            Some(x) => x.2 += m,
            None => out.push((s, k, m)),
        }
    }
    out
}

/// Germ-level isoparametric check over a family of points: every member must
/// have the profile of the first one. With `kappa_constant` the Jacobi
/// eigenvalue data must also agree.
pub fn isoparametric_verdict(
    family: &[ProfileSystem],
    kappa_constant: bool,
) -> Result<Certificate> {
    let first = family
        .first()
        .ok_or_else(|| Error::InvalidInput("family must be nonempty".into()))?;
    let refs: Vec<&ProfileSystem> = family.iter().collect();
    let window = default_window(&refs);
    let mut residual: f64 = 0.0;
    for (index, member) in family.iter().enumerate().skip(1) {
        if kappa_constant && {
            let (a, b) = (kappa_data(first), kappa_data(member));
            a.len() != b.len()
                || a.iter()
                    .zip(&b)
                    .any(|(x, y)| x.0 != y.0 || (x.1 - y.1).abs() > POLE_MERGE_TOL || x.2 != y.2)
        } {
            return Ok(Certificate::distinct(
                Witness::KappaMismatch { index },
                1.0,
                PROFILE_TOL,
            ));
        }
        let cert = profiles_equivalent(first, member, window)?;
        match cert.witness {
            Some(w) => {
                return Ok(Certificate::distinct(
                    Witness::MemberMismatch {
                        index,
                        witness: Box::new(w),
                    },
                    cert.residual,
                    PROFILE_TOL,
                ))
            }
            None => residual = residual.max(cert.residual),
        }
    }
    Ok(Certificate::equivalent(residual, PROFILE_TOL))
}

/// Residuals of `p_k' = k (p_{k+1} + sum m s kappa^2 lambda^{k-1})` for
/// `k = 1..=k_max`, with `p_k' ` from a five-point stencil. Residuals are
/// relative to `max(1, |rhs|)`.
pub fn power_sum_cascade(sys: &ProfileSystem, k_max: usize, t: f64) -> Result<Vec<f64>> {
    let branches = sys.branches();
    let mut dist = f64::INFINITY;
    for (i, b) in branches.iter().enumerate() {
        let (lo, hi) = b.regular_interval();
        if t <= lo || t >= hi {
            return Err(Error::BranchFocalPoint {
                branch: i,
                radius: if t >= hi { hi } else { lo },
            });
        }
        dist = dist.min(t - lo).min(hi - t);
    }
    let h = (dist / 8.0).min(1e-3);
    let pk = |k: usize, s: f64| -> Result<f64> {
        let mut acc = 0.0;
        for b in branches {
            acc += f64::from(b.multiplicity) * b.evolve(s)?.powi(k as i32);
        }
        Ok(acc)
    };
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let fd = (pk(k, t - 2.0 * h)? - 8.0 * pk(k, t - h)? + 8.0 * pk(k, t + h)?
            - pk(k, t + 2.0 * h)?)
            / (12.0 * h);
        let mut extra = 0.0;
        for b in branches {
            extra +=
                f64::from(b.multiplicity) * b.riccati_constant() * b.evolve(t)?.powi(k as i32 - 1);
        }
        let rhs = k as f64 * (pk(k + 1, t)? + extra);
        out.push((fd - rhs).abs() / rhs.abs().max(1.0));
    }
    Ok(out)
}

/// Phase reduced modulo `pi` into `(-pi/2, pi/2]`.
pub fn reduced_phase(theta: f64) -> f64 {
    let r = theta.rem_euclid(PI);
    if r > PI / 2.0 {
        r - PI
    } else {
        r
    }
}

/// First grid time `t > 0` at which the reduced phases of `theta_p - kappa_p t`
/// and `theta_q - kappa_q t` have opposite signs.
pub fn separating_time(theta_p: f64, kappa_p: f64, theta_q: f64, kappa_q: f64) -> Option<f64> {
    let horizon = 2.0 * PI / kappa_p.min(kappa_q);
    let n = 4096;
    (1..=n).map(|k| horizon * k as f64 / n as f64).find(|&t| {
        let a = reduced_phase(theta_p - kappa_p * t);
        let b = reduced_phase(theta_q - kappa_q * t);
        a * b < 0.0
    })
}
