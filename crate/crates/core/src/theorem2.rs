//! Finite search over focal configurations of curvature-adapted isoparametric
//! hypersurfaces in the Cayley plane.
//!
//! Along a unit normal geodesic the principal curvatures split into the
//! `kappa = 2` family (Jacobi eigenvalue 4, dimension 7) and the `kappa = 1`
//! family (eigenvalue 1, dimension 8). At the focal manifold `Q1` (`t = 0`)
//! every branch has phase `theta in {0, pi/4, pi/2, 3pi/4}`, where `theta = 0`
//! marks directions normal to `Q1`. With `g` distinct principal curvatures the
//! second focal manifold `Q2` sits at `d = pi / (2g)`.
//!
//! Phases are kept as integers in units of `pi/4`, so every filter is exact.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Verdict};
use crate::error::Result;
use crate::tube::{tube_spectrum, Ambient, Core, CurvatureBranch, TubeDescriptor};

/// One K-eigenvalue family: frequency and dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub kappa: u32,
    pub dim: u32,
}

pub const FAMILIES: [Family; 2] = [Family { kappa: 2, dim: 7 }, Family { kappa: 1, dim: 8 }];

/// Multiplicities per phase `0, pi/4, pi/2, 3pi/4` for both families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Configuration {
    pub g: u32,
    pub four: [u32; 4],
    pub one: [u32; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    FourCurvatureOnQ1,
    InteriorFocalPoint,
    OffLatticeFocalPoint,
    NoSecondFocalSet,
    FourCurvatureOnQ2,
    OneCurvatureOutOfRange,
    Q1NotMinimal,
    Q2NotMinimal,
    NoTotallyGeodesicFocalSet,
    NotInCatalog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Q1,
    Q2,
}

/// Shape data of one focal manifold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FocalSide {
    /// Collapsing directions `[kappa = 2, kappa = 1]`.
    pub normal: [u32; 2],
    /// Principal curvatures `(value, multiplicity)` of the focal manifold.
    pub curvatures: Vec<(f64, u32)>,
    pub minimal: bool,
    pub totally_geodesic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogMatch {
    pub side: Side,
    pub core: Core,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Admissible {
    pub configuration: Configuration,
    pub q1: FocalSide,
    pub q2: FocalSide,
    pub matches: Vec<CatalogMatch>,
    /// Gap between the configuration's curvatures at `t = d/3` and the
    /// catalog tube of the matching radius.
    pub flow_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Enumeration {
    pub certificate: Certificate,
    pub examined: usize,
    pub admissible: Vec<Admissible>,
    pub rejections: BTreeMap<Rejection, usize>,
}

/// `kappa cot(q pi/4)` for a phase in units of `pi/4`; `None` at a pole.
fn unit_value(kappa: u32, q: i64) -> Option<f64> {
    match q.rem_euclid(4) {
        0 => None,
        1 => Some(f64::from(kappa)),
        2 => Some(0.0),
        _ => Some(-f64::from(kappa)),
    }
}

impl Configuration {
    pub fn distance(&self) -> f64 {
        PI / (2.0 * f64::from(self.g))
    }

    /// `(kappa, phase units, multiplicity)` of every nonempty branch.
    pub fn branches(&self) -> Vec<(u32, i64, u32)> {
        let mut out = Vec::new();
        for (fam, counts) in FAMILIES.iter().zip([self.four, self.one]) {
            for (q, &m) in counts.iter().enumerate() {
                if m > 0 {
                    out.push((fam.kappa, q as i64, m));
                }
            }
        }
        out
    }

    /// Phase units at `t = d`: `q - kappa d / (pi/4) = q - 2 kappa / g`.
    fn shift(&self, kappa: u32) -> i64 {
        (2 * kappa / self.g) as i64
    }

    fn side(&self, side: Side) -> FocalSide {
        let mut normal = [0u32; 2];
        let mut curvatures: Vec<(f64, u32)> = Vec::new();
        for (kappa, q, m) in self.branches() {
            let units = match side {
                Side::Q1 => q,
                Side::Q2 => q - self.shift(kappa),
            };
            match unit_value(kappa, units) {
                None => normal[if kappa == 2 { 0 } else { 1 }] += m,
                Some(v) => match curvatures.iter_mut().find(|c| c.0 == v) {
                    Some(c) => c.1 += m,
                    None => curvatures.push((v, m)),
                },
            }
        }
        curvatures.sort_by(|a, b| a.0.total_cmp(&b.0));
        let trace: f64 = curvatures.iter().map(|(v, m)| v * f64::from(*m)).sum();
        FocalSide {
            normal,
            minimal: trace == 0.0,
            totally_geodesic: curvatures.iter().all(|c| c.0 == 0.0),
            curvatures,
        }
    }

    /// Principal curvatures of the parallel hypersurface at distance `t`
    /// from `Q1`.
    pub fn curvatures_at(&self, t: f64) -> Result<Vec<(f64, u32)>> {
        self.branches()
            .into_iter()
            .map(|(kappa, q, m)| {
                let k = f64::from(kappa);
                let theta = (q as f64 * PI / 4.0 - k * t).rem_euclid(PI);
                Ok((CurvatureBranch::compact(k, theta, m)?.initial_value(), m))
            })
            .collect()
    }
}

/// All configurations for `g in {1, 2}`.
pub fn configurations() -> Vec<Configuration> {
    fn compositions(total: u32) -> Vec<[u32; 4]> {
        let mut out = Vec::new();
        for a in 0..=total {
            for b in 0..=total - a {
                for c in 0..=total - a - b {
                    out.push([a, b, c, total - a - b - c]);
                }
            }
        }
        out
    }
    let fours = compositions(FAMILIES[0].dim);
    let ones = compositions(FAMILIES[1].dim);
    let mut out = Vec::with_capacity(2 * fours.len() * ones.len());
    for g in [1, 2] {
        for &four in &fours {
            for &one in &ones {
                out.push(Configuration { g, four, one });
            }
        }
    }
    out
}

/// Collapsing signatures `[kappa = 2, kappa = 1]` of the catalog cores, read
/// off the tube spectra.
pub fn catalog_signatures() -> Result<Vec<(Core, [u32; 2])>> {
    let r = PI / 12.0;
    [Core::Point, Core::Line, Core::Hp2]
        .into_iter()
        .map(|core| {
            let sys = tube_spectrum(&TubeDescriptor::new(Ambient::Op2, core, r))?;
            let mut sig = [0u32; 2];
            for b in &sys.branches {
                if (b.focal_radius() - r).abs() < 1e-9 {
                    sig[if (b.kappa - 2.0).abs() < 1e-12 { 0 } else { 1 }] += b.multiplicity;
                }
            }
            Ok((core, sig))
        })
        .collect()
}

fn multiset_gap(a: &[(f64, u32)], b: &[(f64, u32)]) -> f64 {
    let expand = |xs: &[(f64, u32)]| {
        let mut v: Vec<f64> = xs
            .iter()
            .flat_map(|(x, m)| std::iter::repeat_n(*x, *m as usize))
            .collect();
        v.sort_by(f64::total_cmp);
        v
    };
    let (x, y) = (expand(a), expand(b));
    if x.len() != y.len() {
        return f64::INFINITY;
    }
    x.iter()
        .zip(&y)
        .map(|(p, q)| (p - q).abs() / (1.0 + q.abs()))
        .fold(0.0, f64::max)
}

fn flow_residual(config: &Configuration, m: &CatalogMatch) -> Result<f64> {
    let d = config.distance();
    let t = d / 3.0;
    let here = config.curvatures_at(t)?;
    // Distances grow away from Q1, so seen from Q1 the tube normal is reversed.
    let (r, sign) = match m.side {
        Side::Q1 => (t, -1.0),
        Side::Q2 => (d - t, 1.0),
    };
    let sys = tube_spectrum(&TubeDescriptor::new(Ambient::Op2, m.core, r))?;
    let table: Vec<(f64, u32)> = sys
        .branches
        .iter()
        .map(|b| (sign * b.initial_value(), b.multiplicity))
        .collect();
    Ok(multiset_gap(&here, &table))
}

/// Run the filters in order; the first failing one is reported.
pub fn classify(
    config: &Configuration,
    catalog: &[(Core, [u32; 2])],
) -> Result<std::result::Result<Admissible, Rejection>> {
    let g = i64::from(config.g);
    let branches = config.branches();

    if branches.iter().any(|&(k, q, _)| k == 2 && q % 2 == 1) {
        return Ok(Err(Rejection::FourCurvatureOnQ1));
    }
    // Poles at t = (q + 4j) pi / (4 kappa); in units of d that is
    // g (q + 4j) / (2 kappa).
    for &(k, q, _) in &branches {
        let first = if q == 0 { 4 } else { q };
        let num = g * first;
        let den = 2 * i64::from(k);
        if num < den {
            return Ok(Err(Rejection::InteriorFocalPoint));
        }
    }
    for &(k, q, _) in &branches {
        if (g * q) % (2 * i64::from(k)) != 0 {
            return Ok(Err(Rejection::OffLatticeFocalPoint));
        }
    }
    let q1 = config.side(Side::Q1);
    let q2 = config.side(Side::Q2);
    if q2.normal == [0, 0] {
        return Ok(Err(Rejection::NoSecondFocalSet));
    }
    for &(k, q, _) in &branches {
        if k == 2 {
            if let Some(v) = unit_value(k, q - config.shift(k)) {
                if v != 0.0 {
                    return Ok(Err(Rejection::FourCurvatureOnQ2));
                }
            }
        }
    }
    for &(k, q, _) in &branches {
        if k == 1 {
            for units in [q, q - config.shift(k)] {
                if let Some(v) = unit_value(k, units) {
                    if ![1.0, 0.0, -1.0].contains(&v) {
                        return Ok(Err(Rejection::OneCurvatureOutOfRange));
                    }
                }
            }
        }
    }
    if !q1.minimal {
        return Ok(Err(Rejection::Q1NotMinimal));
    }
    if !q2.minimal {
        return Ok(Err(Rejection::Q2NotMinimal));
    }
    if !q1.totally_geodesic && !q2.totally_geodesic {
        return Ok(Err(Rejection::NoTotallyGeodesicFocalSet));
    }
    let mut matches = Vec::new();
    for (side, fs) in [(Side::Q1, &q1), (Side::Q2, &q2)] {
        if !fs.totally_geodesic {
            continue;
        }
        for (core, sig) in catalog {
            if *sig == fs.normal {
                matches.push(CatalogMatch { side, core: *core });
            }
        }
    }
    if matches.is_empty() {
        return Ok(Err(Rejection::NotInCatalog));
    }
    let mut residual: f64 = 0.0;
    for m in &matches {
        residual = residual.max(flow_residual(config, m)?);
    }
    Ok(Ok(Admissible {
        configuration: *config,
        q1,
        q2,
        matches,
        flow_residual: residual,
    }))
}

/// Tolerance on the catalog flow comparison.
pub const FLOW_TOL: f64 = 1e-12;

/// Enumerate and filter every configuration. The certificate is
/// `equivalent` when every survivor is a catalog tube.
pub fn theorem2_enumerate() -> Result<Enumeration> {
    let catalog = catalog_signatures()?;
    let configs = configurations();
    let mut admissible = Vec::new();
    let mut rejections: BTreeMap<Rejection, usize> = BTreeMap::new();
    for c in &configs {
        match classify(c, &catalog)? {
            Ok(a) => admissible.push(a),
            Err(r) => *rejections.entry(r).or_default() += 1,
        }
    }
    let residual = admissible
        .iter()
        .map(|a| a.flow_residual)
        .fold(0.0, f64::max);
    let certificate = if residual <= FLOW_TOL {
        Certificate::equivalent(residual, FLOW_TOL)
    } else {
        Certificate {
            verdict: Verdict::Contradiction,
            residual,
            tolerance: FLOW_TOL,
            witness: None,
        }
    };
    Ok(Enumeration {
        certificate,
        examined: configs.len(),
        admissible,
        rejections,
    })
}
