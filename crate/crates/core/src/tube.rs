//! Closed-form principal-curvature flows along a normal geodesic and the
//! principal-curvature tables of tubes in the Cayley plane and its dual.
//!
//! A branch solves the scalar Riccati equation `lambda' = lambda^2 + s kappa^2`
//! with `s = +1` (compact), `0` (flat) or `-1` (noncompact). Compact branches
//! are `kappa cot(theta - kappa t)`, `theta in (0, pi)`; flat branches are
//! `lambda0 / (1 - lambda0 t)`; noncompact branches are `kappa coth` or
//! `kappa tanh` of `phi - kappa t`, or the constant `+-kappa`.
//!
//! Tube curvatures are `Y'/Y` for the Jacobi fields along the normal geodesic
//! of the core, so the sign follows the outward normal of the tube.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Values of `|lambda0|` this close to `kappa` count as the constant branch.
pub const CONST_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchSign {
    Compact,
    Flat,
    Noncompact,
}

impl BranchSign {
    pub fn value(self) -> f64 {
        match self {
            BranchSign::Compact => 1.0,
            BranchSign::Flat => 0.0,
            BranchSign::Noncompact => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Cot,
    Flat,
    Coth,
    Tanh,
    Const,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::Cot => "cot",
            Regime::Flat => "flat",
            Regime::Coth => "coth",
            Regime::Tanh => "tanh",
            Regime::Const => "const",
        };
        f.write_str(s)
    }
}

/// One principal-curvature branch with its multiplicity.
///
/// `phase` is `theta` for compact branches and the initial value `lambda0`
/// otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureBranch {
    pub kappa: f64,
    pub sign: BranchSign,
    pub phase: f64,
    pub multiplicity: u32,
}

fn check_multiplicity(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidBranch("multiplicity must be positive".into()));
    }
    Ok(())
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa.is_finite() && kappa > 0.0) {
        return Err(Error::InvalidBranch(format!(
            "kappa must be positive and finite, got {kappa}"
        )));
    }
    Ok(())
}

impl CurvatureBranch {
    pub fn compact(kappa: f64, theta: f64, multiplicity: u32) -> Result<Self> {
        check_kappa(kappa)?;
        check_multiplicity(multiplicity)?;
        if !(theta > 0.0 && theta < PI) {
            return Err(Error::InvalidBranch(format!(
                "compact phase must lie in (0, pi), got {theta}"
            )));
        }
        Ok(CurvatureBranch {
            kappa,
            sign: BranchSign::Compact,
            phase: theta,
            multiplicity,
        })
    }

    /// Compact branch through `lambda0` at `t = 0`.
    pub fn compact_from_value(kappa: f64, lambda0: f64, multiplicity: u32) -> Result<Self> {
        check_kappa(kappa)?;
        if !lambda0.is_finite() {
            return Err(Error::InvalidBranch("initial value must be finite".into()));
        }
        CurvatureBranch::compact(kappa, kappa.atan2(lambda0), multiplicity)
    }

    pub fn flat(lambda0: f64, multiplicity: u32) -> Result<Self> {
        check_multiplicity(multiplicity)?;
        if !lambda0.is_finite() {
            return Err(Error::InvalidBranch("initial value must be finite".into()));
        }
        Ok(CurvatureBranch {
            kappa: 0.0,
            sign: BranchSign::Flat,
            phase: lambda0,
            multiplicity,
        })
    }

    pub fn noncompact(kappa: f64, lambda0: f64, multiplicity: u32) -> Result<Self> {
        check_kappa(kappa)?;
        check_multiplicity(multiplicity)?;
        if !lambda0.is_finite() {
            return Err(Error::InvalidBranch("initial value must be finite".into()));
        }
        let lambda0 = if (lambda0.abs() - kappa).abs() <= CONST_TOL * kappa {
            kappa.copysign(lambda0)
        } else {
            lambda0
        };
        Ok(CurvatureBranch {
            kappa,
            sign: BranchSign::Noncompact,
            phase: lambda0,
            multiplicity,
        })
    }

    /// Branch for the given space sign through `lambda0` at `t = 0`.
    pub fn from_value(
        sign: BranchSign,
        kappa: f64,
        lambda0: f64,
        multiplicity: u32,
    ) -> Result<Self> {
        match sign {
            BranchSign::Compact => {
                CurvatureBranch::compact_from_value(kappa, lambda0, multiplicity)
            }
            BranchSign::Flat => CurvatureBranch::flat(lambda0, multiplicity),
            BranchSign::Noncompact => CurvatureBranch::noncompact(kappa, lambda0, multiplicity),
        }
    }

    pub fn regime(&self) -> Regime {
        match self.sign {
            BranchSign::Compact => Regime::Cot,
            BranchSign::Flat => Regime::Flat,
            BranchSign::Noncompact => {
                let a = self.phase.abs();
                if a == self.kappa {
                    Regime::Const
                } else if a > self.kappa {
                    Regime::Coth
                } else {
                    Regime::Tanh
                }
            }
        }
    }

    /// `kappa^2` times the space sign: the constant in the Riccati equation.
    pub fn riccati_constant(&self) -> f64 {
        self.sign.value() * self.kappa * self.kappa
    }

    /// Value at `t = 0`.
    pub fn initial_value(&self) -> f64 {
        match self.sign {
            BranchSign::Compact => self.kappa / self.phase.tan(),
            _ => self.phase,
        }
    }

    /// Noncompact hyperbolic phase `phi`.
    fn hyperbolic_phase(&self) -> f64 {
        match self.regime() {
            Regime::Coth => (self.kappa / self.phase).atanh(),
            Regime::Tanh => (self.phase / self.kappa).atanh(),
            _ => 0.0,
        }
    }

    /// Maximal open interval around `t = 0` on which the branch is finite.
    pub fn regular_interval(&self) -> (f64, f64) {
        let inf = f64::INFINITY;
        match self.regime() {
            Regime::Cot => ((self.phase - PI) / self.kappa, self.phase / self.kappa),
            Regime::Flat => {
                let l = self.phase;
                if l > 0.0 {
                    (-inf, 1.0 / l)
                } else if l < 0.0 {
                    (1.0 / l, inf)
                } else {
                    (-inf, inf)
                }
            }
            Regime::Coth => {
                let pole = self.hyperbolic_phase() / self.kappa;
                if pole > 0.0 {
                    (-inf, pole)
                } else {
                    (pole, inf)
                }
            }
            Regime::Tanh | Regime::Const => (-inf, inf),
        }
    }

    /// First focal distance in the direction of increasing `t`.
    pub fn focal_radius(&self) -> f64 {
        self.regular_interval().1
    }

    /// `lambda(t)`. Fails at or beyond the boundary of the regular interval.
    pub fn evolve(&self, t: f64) -> Result<f64> {
        let (lo, hi) = self.regular_interval();
        if t >= hi {
            return Err(Error::FocalPoint { radius: hi });
        }
        if t <= lo {
            return Err(Error::FocalPoint { radius: lo });
        }
        let k = self.kappa;
        Ok(match self.regime() {
            Regime::Cot => k / (self.phase - k * t).tan(),
            Regime::Flat => self.phase / (1.0 - self.phase * t),
            Regime::Coth => k / (self.hyperbolic_phase() - k * t).tanh(),
            Regime::Tanh => k * (self.hyperbolic_phase() - k * t).tanh(),
            Regime::Const => self.phase,
        })
    }

    /// Closed form continued through the poles. Fails only at a pole.
    pub fn continued(&self, t: f64) -> Result<f64> {
        let k = self.kappa;
        let v = match self.regime() {
            Regime::Cot => {
                let psi = self.phase - k * t;
                if psi.sin().abs() < 1e-15 {
                    return Err(Error::FocalPoint { radius: t });
                }
                k / psi.tan()
            }
            Regime::Flat => self.phase / (1.0 - self.phase * t),
            Regime::Coth => k / (self.hyperbolic_phase() - k * t).tanh(),
            Regime::Tanh => k * (self.hyperbolic_phase() - k * t).tanh(),
            Regime::Const => self.phase,
        };
        if !v.is_finite() {
            return Err(Error::FocalPoint { radius: t });
        }
        Ok(v)
    }

    /// `lambda'(t) = lambda^2 + s kappa^2`.
    pub fn derivative(&self, t: f64) -> Result<f64> {
        let l = self.evolve(t)?;
        Ok(l * l + self.riccati_constant())
    }

    /// The same branch re-anchored at time `s`, so that
    /// `advanced(s).evolve(t) == evolve(s + t)`.
    pub fn advanced(&self, s: f64) -> Result<Self> {
        match self.sign {
            BranchSign::Compact => {
                let (lo, hi) = self.regular_interval();
                if s >= hi || s <= lo {
                    return Err(Error::FocalPoint {
                        radius: if s >= hi { hi } else { lo },
                    });
                }
                CurvatureBranch::compact(self.kappa, self.phase - self.kappa * s, self.multiplicity)
            }
            BranchSign::Flat => CurvatureBranch::flat(self.evolve(s)?, self.multiplicity),
            BranchSign::Noncompact => {
                if self.regime() == Regime::Const {
                    return Ok(*self);
                }
                CurvatureBranch::noncompact(self.kappa, self.evolve(s)?, self.multiplicity)
            }
        }
    }
}

/// Serialized branch description: `{kappa, theta | lambda0, mult, regime}`.
///
/// `theta` is the compact phase for `cot`, the hyperbolic phase `phi` for
/// `coth`/`tanh`, and the initial value for `flat`. `lambda0` gives the
/// initial value directly and wins over `theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchSpec {
    pub kappa: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda0: Option<f64>,
    pub mult: u32,
    pub regime: Regime,
}

impl BranchSpec {
    pub fn to_branch(&self) -> Result<CurvatureBranch> {
        let k = self.kappa;
        let missing =
            || Error::InvalidBranch(format!("{} branch needs theta or lambda0", self.regime));
        let b = match self.regime {
            Regime::Cot => match (self.lambda0, self.theta) {
                (Some(l), _) => CurvatureBranch::compact_from_value(k, l, self.mult)?,
                (None, Some(th)) => CurvatureBranch::compact(k, th, self.mult)?,
                _ => return Err(missing()),
            },
            Regime::Flat => {
                CurvatureBranch::flat(self.lambda0.or(self.theta).ok_or_else(missing)?, self.mult)?
            }
            Regime::Coth | Regime::Tanh | Regime::Const => {
                let l = match (self.lambda0, self.theta) {
                    (Some(l), _) => l,
                    (None, Some(phi)) => match self.regime {
                        Regime::Coth => k / phi.tanh(),
                        Regime::Tanh => k * phi.tanh(),
                        _ => k.copysign(phi),
                    },
                    (None, None) if self.regime == Regime::Const => k,
                    _ => return Err(missing()),
                };
                CurvatureBranch::noncompact(k, l, self.mult)?
            }
        };
        if b.regime() != self.regime {
            return Err(Error::InvalidBranch(format!(
                "declared regime {} but the data give {}",
                self.regime,
                b.regime()
            )));
        }
        Ok(b)
    }

    pub fn from_branch(b: &CurvatureBranch) -> Self {
        let regime = b.regime();
        let (theta, lambda0) = match regime {
            Regime::Cot => (Some(b.phase), None),
            _ => (None, Some(b.phase)),
        };
        BranchSpec {
            kappa: b.kappa,
            theta,
            lambda0,
            mult: b.multiplicity,
            regime,
        }
    }
}

/// A multiset of branches whose multiplicities sum to the hypersurface
/// dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcSystem {
    pub branches: Vec<CurvatureBranch>,
    pub dimension: u32,
}

impl PcSystem {
    pub fn new(branches: Vec<CurvatureBranch>, dimension: u32) -> Result<Self> {
        let total: u32 = branches.iter().map(|b| b.multiplicity).sum();
        if total != dimension {
            return Err(Error::DimensionMismatch {
                expected: dimension as usize,
                got: total as usize,
            });
        }
        Ok(PcSystem {
            branches,
            dimension,
        })
    }

    pub fn from_branches(branches: Vec<CurvatureBranch>) -> Self {
        let dimension = branches.iter().map(|b| b.multiplicity).sum();
        PcSystem {
            branches,
            dimension,
        }
    }

    /// Values of every branch at `t`, paired with multiplicities.
    pub fn values(&self, t: f64) -> Result<Vec<(f64, u32)>> {
        self.branches
            .iter()
            .enumerate()
            .map(|(i, b)| {
                b.evolve(t)
                    .map(|v| (v, b.multiplicity))
                    .map_err(|e| match e {
                        Error::FocalPoint { radius } => {
                            Error::BranchFocalPoint { branch: i, radius }
                        }
                        other => other,
                    })
            })
            .collect()
    }

    /// Smallest positive focal distance over all branches.
    pub fn focal_radius(&self) -> f64 {
        self.branches
            .iter()
            .map(|b| b.focal_radius())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Unnormalized mean curvature `sum m_i lambda_i(t)`.
pub fn mean_curvature(system: &PcSystem, t: f64) -> Result<f64> {
    Ok(system
        .values(t)?
        .iter()
        .map(|(v, m)| f64::from(*m) * v)
        .sum())
}

/// Jacobi field boundary condition at the core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// `Y(0) = 1, Y'(0) = 0`: tangent to the core.
    Tangent,
    /// `Y(0) = 0, Y'(0) = 1`: normal to the core.
    Normal,
}

/// `Y'(r)/Y(r)` for the Jacobi equation `Y'' + kappa_sq Y = 0`.
pub fn jacobi_tube_curvature(kappa_sq: f64, boundary: Boundary, r: f64) -> Result<f64> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidInput(format!(
            "radius must be positive, got {r}"
        )));
    }
    if kappa_sq > 0.0 {
        let k = kappa_sq.sqrt();
        let first_zero = match boundary {
            Boundary::Tangent => FRAC_PI_2 / k,
            Boundary::Normal => PI / k,
        };
        if r >= first_zero {
            return Err(Error::FocalPoint { radius: first_zero });
        }
        Ok(match boundary {
            Boundary::Tangent => -k * (k * r).tan(),
            Boundary::Normal => k / (k * r).tan(),
        })
    } else if kappa_sq < 0.0 {
        let k = (-kappa_sq).sqrt();
        Ok(match boundary {
            Boundary::Tangent => k * (k * r).tanh(),
            Boundary::Normal => k / (k * r).tanh(),
        })
    } else {
        Ok(match boundary {
            Boundary::Tangent => 0.0,
            Boundary::Normal => 1.0 / r,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Op2,
    Oh2,
}

impl Ambient {
    pub fn sign(self) -> f64 {
        match self {
            Ambient::Op2 => 1.0,
            Ambient::Oh2 => -1.0,
        }
    }

    fn branch_sign(self) -> BranchSign {
        match self {
            Ambient::Op2 => BranchSign::Compact,
            Ambient::Oh2 => BranchSign::Noncompact,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Core {
    Point,
    Line,
    Hp2,
    Horosphere,
}

/// One Jacobi-field row of a core: the Jacobi eigenvalue magnitude, the
/// boundary condition, the multiplicity and the label of the resulting
/// principal curvature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoreRow {
    pub eigenvalue: f64,
    pub boundary: Boundary,
    pub multiplicity: u32,
    pub label: &'static str,
}

const fn row(
    eigenvalue: f64,
    boundary: Boundary,
    multiplicity: u32,
    label: &'static str,
) -> CoreRow {
    CoreRow {
        eigenvalue,
        boundary,
        multiplicity,
        label,
    }
}

impl Core {
    pub fn rows(self) -> &'static [CoreRow] {
        const POINT: [CoreRow; 2] = [
            row(1.0, Boundary::Normal, 8, "lambda1"),
            row(4.0, Boundary::Normal, 7, "alpha1"),
        ];
        const LINE: [CoreRow; 2] = [
            row(1.0, Boundary::Tangent, 8, "lambda2"),
            row(4.0, Boundary::Normal, 7, "alpha1"),
        ];
        const HP2: [CoreRow; 4] = [
            row(1.0, Boundary::Normal, 4, "lambda1"),
            row(1.0, Boundary::Tangent, 4, "lambda2"),
            row(4.0, Boundary::Normal, 3, "alpha1"),
            row(4.0, Boundary::Tangent, 4, "alpha2"),
        ];
        match self {
            Core::Point => &POINT,
            Core::Line => &LINE,
            Core::Hp2 => &HP2,
            Core::Horosphere => &[],
        }
    }

    /// First focal radius of tubes around the core in the compact ambient.
    pub fn focal_limit(self, ambient: Ambient) -> f64 {
        match (ambient, self) {
            (Ambient::Op2, Core::Point | Core::Line) => FRAC_PI_2,
            (Ambient::Op2, Core::Hp2) => FRAC_PI_4,
            _ => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TubeDescriptor {
    pub ambient: Ambient,
    pub core: Core,
    /// Ignored for horospheres.
    pub radius: f64,
}

impl TubeDescriptor {
    pub fn new(ambient: Ambient, core: Core, radius: f64) -> Self {
        TubeDescriptor {
            ambient,
            core,
            radius,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.core == Core::Horosphere {
            if self.ambient == Ambient::Op2 {
                return Err(Error::InvalidInput(
                    "horospheres exist only in the noncompact ambient".into(),
                ));
            }
            return Ok(());
        }
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::InvalidInput(format!(
                "radius must be positive, got {}",
                self.radius
            )));
        }
        let limit = self.core.focal_limit(self.ambient);
        if self.radius >= limit {
            return Err(Error::FocalPoint { radius: limit });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TubeRow {
    pub label: String,
    pub value: f64,
    pub multiplicity: u32,
    /// Square root of the Jacobi eigenvalue.
    pub kappa: f64,
    pub boundary: Option<Boundary>,
}

/// Labelled principal curvatures of the tube.
pub fn tube_table(desc: &TubeDescriptor) -> Result<Vec<TubeRow>> {
    desc.validate()?;
    if desc.core == Core::Horosphere {
        return Ok(vec![
            TubeRow {
                label: "lambda1".into(),
                value: 1.0,
                multiplicity: 8,
                kappa: 1.0,
                boundary: None,
            },
            TubeRow {
                label: "alpha1".into(),
                value: 2.0,
                multiplicity: 7,
                kappa: 2.0,
                boundary: None,
            },
        ]);
    }
    desc.core
        .rows()
        .iter()
        .map(|r| {
            let value =
                jacobi_tube_curvature(desc.ambient.sign() * r.eigenvalue, r.boundary, desc.radius)?;
            Ok(TubeRow {
                label: r.label.to_string(),
                value,
                multiplicity: r.multiplicity,
                kappa: r.eigenvalue.sqrt(),
                boundary: Some(r.boundary),
            })
        })
        .collect()
}

/// The tube's principal curvatures as branches anchored at the tube, so that
/// `evolve(t)` is the curvature of the parallel tube at radius `radius - t`.
pub fn tube_spectrum(desc: &TubeDescriptor) -> Result<PcSystem> {
    let rows = tube_table(desc)?;
    let sign = desc.ambient.branch_sign();
    let branches = rows
        .iter()
        .map(|r| CurvatureBranch::from_value(sign, r.kappa, r.value, r.multiplicity))
        .collect::<Result<Vec<_>>>()?;
    PcSystem::new(branches, 15)
}

/// Radius in `(0, focal limit)` at which the tube is minimal.
pub fn minimal_tube_radius(ambient: Ambient, core: Core) -> Result<f64> {
    if ambient == Ambient::Oh2 || core == Core::Horosphere {
        return Err(Error::UnsupportedRegime(
            "tubes in the noncompact ambient have positive mean curvature".into(),
        ));
    }
    let limit = core.focal_limit(ambient);
    let h = |r: f64| -> Result<f64> {
        let rows = tube_table(&TubeDescriptor::new(ambient, core, r))?;
        Ok(rows
            .iter()
            .map(|x| f64::from(x.multiplicity) * x.value)
            .sum())
    };
    let mut lo = 1e-9 * limit;
    let mut hi = limit * (1.0 - 1e-9);
    let (mut flo, fhi) = (h(lo)?, h(hi)?);
    if flo.signum() == fhi.signum() {
        return Err(Error::InvalidInput(
            "mean curvature does not change sign".into(),
        ));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = h(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}
