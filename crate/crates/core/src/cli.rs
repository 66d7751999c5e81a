//! Command-line front end. Every subcommand writes one report to standard
//! output and returns an exit status:
//!
//! * `0`: success, or an `equivalent` verdict;
//! * `2`: a `distinct` or `contradiction` verdict;
//! * `1`: usage errors, malformed input, failed computations.
//!
//! `--format` applies to table-shaped reports (`octonion-table`,
//! `tube-table`, `jacobi-spectrum`); the default comes from
//! `CURVADAPT_FORMAT`, else `csv` for `tube-table` and `json` elsewhere.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::cayley::{self, SpaceSign, TangentPair};
use crate::certificate::{Certificate, Verdict, Witness};
use crate::error::{Error, Result};
use crate::grassmannian::{self, StructureBundle};
use crate::isoparametric::{self, ProfileSystem};
use crate::octonion::{MultiplicationTable, Octonion};
use crate::sampling;
use crate::theorem2;
use crate::theorem3::{self, Constraint, SignConvention};
use crate::tube::{self, Ambient, BranchSpec, Core, PcSystem, TubeDescriptor};

pub const FORMAT_ENV: &str = "CURVADAPT_FORMAT";

/// Names accepted by `--tol name=value`.
pub const TOLERANCE_NAMES: [&str; 2] = ["floor", "profile"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Op2,
    Oh2,
}

impl SpaceArg {
    fn sign(self) -> SpaceSign {
        match self {
            SpaceArg::Op2 => SpaceSign::Compact,
            SpaceArg::Oh2 => SpaceSign::Noncompact,
        }
    }
    fn ambient(self) -> Ambient {
        match self {
            SpaceArg::Op2 => Ambient::Op2,
            SpaceArg::Oh2 => Ambient::Oh2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoreArg {
    Point,
    Line,
    Hp2,
    Horosphere,
}

impl From<CoreArg> for Core {
    fn from(c: CoreArg) -> Core {
        match c {
            CoreArg::Point => Core::Point,
            CoreArg::Line => Core::Line,
            CoreArg::Hp2 => Core::Hp2,
            CoreArg::Horosphere => Core::Horosphere,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstraintArg {
    Ajj,
    Azz,
    Ratio,
}

impl From<ConstraintArg> for Constraint {
    fn from(c: ConstraintArg) -> Constraint {
        match c {
            ConstraintArg::Ajj => Constraint::Ajj,
            ConstraintArg::Azz => Constraint::Azz,
            ConstraintArg::Ratio => Constraint::Ratio,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignsArg {
    Computed,
    Printed,
}

impl From<SignsArg> for SignConvention {
    fn from(s: SignsArg) -> SignConvention {
        match s {
            SignsArg::Computed => SignConvention::Computed,
            SignsArg::Printed => SignConvention::Printed,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "curvadapt",
    version,
    about = "Curvature-adapted hypersurfaces in rank-one and rank-two symmetric spaces"
)]
pub struct Cli {
    /// Output format for table-shaped reports.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for sampled inputs.
    #[arg(long, global = true, default_value_t = sampling::DEFAULT_SEED)]
    pub seed: u64,
    /// Tolerance override `name=value` (names: floor, profile).
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    pub tolerances: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Signed 8x8 multiplication table of the octonion basis.
    OctonionTable,
    /// Jacobi spectrum at a seeded random unit normal.
    JacobiSpectrum {
        #[arg(long, value_enum, default_value = "op2")]
        space: SpaceArg,
    },
    /// Range of sectional curvatures over seeded random planes.
    SectionalRange {
        #[arg(long, value_enum, default_value = "op2")]
        space: SpaceArg,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Principal curvatures of a tube.
    TubeTable {
        #[arg(long, value_enum)]
        ambient: SpaceArg,
        #[arg(long, value_enum)]
        core: CoreArg,
        /// Radius in radians; omitted for horospheres.
        #[arg(long, allow_negative_numbers = true)]
        radius: Option<f64>,
    },
    /// Finite enumeration of focal configurations.
    Theorem2,
    /// Residual sweep over Hopf angles.
    Theorem3 {
        #[arg(long, default_value = "0.2:1.35:24")]
        alpha_grid: String,
        #[arg(long, value_enum, default_value = "ajj")]
        constraint: ConstraintArg,
        #[arg(long, value_enum, default_value = "computed")]
        signs: SignsArg,
        #[arg(long, default_value_t = grassmannian::DEFAULT_M)]
        m: usize,
    },
    /// Compare the mean-curvature profiles of two branch systems.
    ProfileMatch {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        /// Window `a,b`; defaults to one period of the slowest branch.
        #[arg(long, allow_negative_numbers = true)]
        window: Option<String>,
    },
    /// Power-sum derivative residuals.
    Cascade {
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = 5)]
        kmax: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t: f64,
    },
    /// Hopf eigenvalues in the Grassmannian model.
    GrassmannianCheck {
        #[arg(long, default_value_t = grassmannian::DEFAULT_M)]
        m: usize,
        #[arg(long)]
        alpha: f64,
    },
    /// Run a quick pass over the invariant suite.
    Selftest,
}

/// Exit status and captured streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
    fn verdict(stdout: String, v: Verdict) -> Self {
        Outcome {
            code: if v.is_negative() { 2 } else { 0 },
            stdout,
            stderr: String::new(),
        }
    }
    fn failure(msg: String) -> Self {
        Outcome {
            code: 1,
            stdout: String::new(),
            stderr: msg,
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn parse_tolerances(raw: &[String]) -> std::result::Result<BTreeMap<String, f64>, String> {
    let mut out = BTreeMap::new();
    for item in raw {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| format!("tolerance override must be name=value, got {item:?}"))?;
        if !TOLERANCE_NAMES.contains(&name) {
            return Err(format!(
                "unknown tolerance {name:?} (known: {})",
                TOLERANCE_NAMES.join(", ")
            ));
        }
        let v: f64 = value
            .parse()
            .map_err(|_| format!("tolerance {name}: {value:?} is not a number"))?;
        if !(v.is_finite() && v >= 0.0) {
            return Err(format!("tolerance {name} must be finite and nonnegative"));
        }
        out.insert(name.to_string(), v);
    }
    Ok(out)
}

fn default_format(command: &Command) -> std::result::Result<Format, String> {
    if let Ok(v) = std::env::var(FORMAT_ENV) {
        return Format::from_str(v.trim(), true)
            .map_err(|_| format!("{FORMAT_ENV}={v:?} is not json, csv or md"));
    }
    Ok(match command {
        Command::TubeTable { .. } => Format::Csv,
        _ => Format::Json,
    })
}

fn parse_branches(label: &str, raw: &str) -> std::result::Result<ProfileSystem, String> {
    let specs: Vec<BranchSpec> =
        serde_json::from_str(raw).map_err(|e| format!("malformed JSON for --{label}: {e}"))?;
    let branches = specs
        .iter()
        .map(BranchSpec::to_branch)
        .collect::<Result<Vec<_>>>()
        .map_err(|e| format!("--{label}: {e}"))?;
    Ok(ProfileSystem::new(label, PcSystem::from_branches(branches)))
}

fn parse_window(raw: &str) -> std::result::Result<(f64, f64), String> {
    let bad = || format!("window must be a,b with a < b, got {raw:?}");
    let (a, b) = raw.split_once(',').ok_or_else(bad)?;
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    if a.partial_cmp(&b) != Some(std::cmp::Ordering::Less) {
        return Err(bad());
    }
    Ok((a, b))
}

fn table(format: Format, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(&header.join(","));
            out.push('\n');
            for r in rows {
                out.push_str(&r.join(","));
                out.push('\n');
            }
        }
        Format::Md => {
            let _ = writeln!(out, "| {} |", header.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
            for r in rows {
                let _ = writeln!(out, "| {} |", r.join(" | "));
            }
        }
        Format::Json => unreachable!("json reports are serialized directly"),
    }
    out
}

/// Parse `argv` (including the program name) and run.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(rendered)
                }
                _ => Outcome::failure(rendered),
            };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(msg) => Outcome::failure(format!("error: {msg}\n")),
    }
}

fn execute(cli: &Cli) -> std::result::Result<Outcome, String> {
    let tolerances = parse_tolerances(&cli.tolerances)?;
    let format = match cli.format {
        Some(f) => f,
        None => default_format(&cli.command)?,
    };
    let e = |err: Error| err.to_string();
    match &cli.command {
        Command::OctonionTable => {
            let rows = MultiplicationTable::canonical().rows();
            Ok(Outcome::ok(match format {
                Format::Json => to_json(&rows),
                f => table(
                    f,
                    &["i", "j", "sign", "k"],
                    &rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.i.to_string(),
                                r.j.to_string(),
                                r.sign.to_string(),
                                r.k.to_string(),
                            ]
                        })
                        .collect::<Vec<_>>(),
                ),
            }))
        }
        Command::JacobiSpectrum { space } => {
            let mut rng = sampling::seeded(cli.seed);
            let v = sampling::unit_vector(&mut rng, cayley::DIM);
            let xi = TangentPair::from_vector(&v).map_err(e)?;
            let spec = cayley::jacobi_spectrum(&xi, space.sign()).map_err(e)?;
            let summary = spec.summary();
            Ok(Outcome::ok(match format {
                Format::Json => to_json(&json!({
                    "space": format!("{space:?}").to_lowercase(),
                    "seed": cli.seed,
                    "xi": v.as_slice(),
                    "eigenvalues": summary,
                    "residual": spec.residual,
                })),
                f => table(
                    f,
                    &["value", "multiplicity"],
                    &summary
                        .iter()
                        .map(|s| vec![s.value.to_string(), s.multiplicity.to_string()])
                        .collect::<Vec<_>>(),
                ),
            }))
        }
        Command::SectionalRange { space, samples } => {
            if *samples == 0 {
                return Err("--samples must be positive".into());
            }
            let mut rng = sampling::seeded(cli.seed);
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            let mut used = 0usize;
            for _ in 0..*samples {
                let x = TangentPair::from_vector(&sampling::gaussian_vector(&mut rng, cayley::DIM))
                    .map_err(e)?;
                let y = TangentPair::from_vector(&sampling::gaussian_vector(&mut rng, cayley::DIM))
                    .map_err(e)?;
                if let Ok(k) = cayley::sectional_curvature(&x, &y, space.sign()) {
                    lo = lo.min(k);
                    hi = hi.max(k);
                    used += 1;
                }
            }
            let s = space.sign().value();
            let xi = TangentPair::new(Octonion::ONE, Octonion::ZERO);
            let quaternionic = TangentPair::new(Octonion::basis(1), Octonion::ZERO);
            let real = TangentPair::new(Octonion::ZERO, Octonion::ONE);
            let extremes = [
                cayley::sectional_curvature(&xi, &quaternionic, space.sign()).map_err(e)?,
                cayley::sectional_curvature(&xi, &real, space.sign()).map_err(e)?,
            ];
            Ok(Outcome::ok(to_json(&json!({
                "space": format!("{space:?}").to_lowercase(),
                "seed": cli.seed,
                "samples": used,
                "sampled_min": lo,
                "sampled_max": hi,
                "extremal_planes": extremes,
                "bounds": [s.min(4.0 * s), s.max(4.0 * s)],
            }))))
        }
        Command::TubeTable {
            ambient,
            core,
            radius,
        } => {
            let core: Core = (*core).into();
            let radius = match (core, radius) {
                (Core::Horosphere, _) => radius.unwrap_or(0.0),
                (_, Some(r)) => *r,
                (_, None) => return Err("--radius is required for this core".into()),
            };
            let desc = TubeDescriptor::new(ambient.ambient(), core, radius);
            let rows = tube::tube_table(&desc).map_err(e)?;
            let mean: f64 = rows
                .iter()
                .map(|r| f64::from(r.multiplicity) * r.value)
                .sum();
            let dimension: u32 = rows.iter().map(|r| r.multiplicity).sum();
            Ok(Outcome::ok(match format {
                Format::Json => to_json(&json!({
                    "ambient": desc.ambient,
                    "core": desc.core,
                    "radius": if core == Core::Horosphere { None } else { Some(radius) },
                    "rows": rows,
                    "dimension": dimension,
                    "mean_curvature": mean,
                })),
                f => table(
                    f,
                    &["label", "value", "multiplicity", "kappa"],
                    &rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.label.clone(),
                                r.value.to_string(),
                                r.multiplicity.to_string(),
                                r.kappa.to_string(),
                            ]
                        })
                        .collect::<Vec<_>>(),
                ),
            }))
        }
        Command::Theorem2 => {
            let en = theorem2::theorem2_enumerate().map_err(e)?;
            let v = en.certificate.verdict;
            Ok(Outcome::verdict(to_json(&en), v))
        }
        Command::Theorem3 {
            alpha_grid,
            constraint,
            signs,
            m,
        } => {
            let grid = theorem3::parse_alpha_grid(alpha_grid).map_err(e)?;
            let bundle = StructureBundle::quaternionic_model(*m).map_err(e)?;
            let mut report =
                theorem3::theorem3_sweep(&grid, (*constraint).into(), (*signs).into(), &bundle)
                    .map_err(e)?;
            let mut equal = theorem3::equal_angle_certificate(&bundle).map_err(e)?;
            if let Some(&tol) = tolerances.get("floor") {
                rejudge_floor(&mut report.certificate, tol);
                rejudge_floor(&mut equal, tol);
            }
            let v = report.certificate.verdict;
            Ok(Outcome::verdict(
                to_json(&json!({
                    "report": report,
                    "equal_angle": equal,
                })),
                v,
            ))
        }
        Command::ProfileMatch { p, q, window } => {
            let p = parse_branches("p", p)?;
            let q = parse_branches("q", q)?;
            let window = match window {
                Some(w) => parse_window(w)?,
                None => isoparametric::default_window(&[&p, &q]),
            };
            let mut cert = isoparametric::profiles_equivalent(&p, &q, window).map_err(e)?;
            if let Some(&tol) = tolerances.get("profile") {
                rejudge_profile(&mut cert, tol);
            }
            let v = cert.verdict;
            Ok(Outcome::verdict(
                to_json(&json!({
                    "window": [window.0, window.1],
                    "certificate": cert,
                    "multiset_equal": isoparametric::branch_multisets_equal(&p, &q),
                })),
                v,
            ))
        }
        Command::Cascade { system, kmax, t } => {
            let sys = parse_branches("system", system)?;
            let residuals = isoparametric::power_sum_cascade(&sys, *kmax, *t).map_err(e)?;
            let values: Vec<(f64, u32)> = sys
                .branches()
                .iter()
                .map(|b| b.evolve(*t).map(|v| (v, b.multiplicity)))
                .collect::<Result<_>>()
                .map_err(e)?;
            let power_sums: Vec<f64> = (1..=*kmax + 1)
                .map(|k| {
                    values
                        .iter()
                        .map(|(v, m)| f64::from(*m) * v.powi(k as i32))
                        .sum()
                })
                .collect();
            Ok(Outcome::ok(to_json(&json!({
                "t": t,
                "kmax": kmax,
                "power_sums": power_sums,
                "residuals": residuals,
                "max_residual": residuals.iter().cloned().fold(0.0, f64::max),
            }))))
        }
        Command::GrassmannianCheck { m, alpha } => {
            let bundle = StructureBundle::quaternionic_model(*m).map_err(e)?;
            let xi = grassmannian::normal_with_alpha(&bundle, *alpha).map_err(e)?;
            let h = grassmannian::hopf_eigenvalues(&xi, &bundle).map_err(e)?;
            Ok(Outcome::ok(to_json(&json!({
                "m": m,
                "alpha": h.alpha,
                "eigenvalue_x1": h.eigenvalue_x1,
                "eigenvalue_x2": h.eigenvalue_x2,
                "ratio": h.ratio,
                "ratio_expected": h.ratio_expected,
                "scale": h.scale,
                "residuals": {
                    "x1": h.residual_x1,
                    "x2": h.residual_x2,
                    "structure": bundle.verify().max(),
                },
            }))))
        }
        Command::Selftest => {
            let checks = selftest(cli.seed);
            let passed = checks.iter().all(|c| c.passed);
            let out = to_json(&json!({ "passed": passed, "checks": checks }));
            Ok(if passed {
                Outcome::ok(out)
            } else {
                Outcome {
                    code: 1,
                    stdout: out,
                    stderr: "error: selftest failed\n".into(),
                }
            })
        }
    }
}

fn rejudge_floor(c: &mut Certificate, tol: f64) {
    c.tolerance = tol;
    c.verdict = if c.residual >= tol {
        Verdict::Contradiction
    } else {
        Verdict::Equivalent
    };
}

fn rejudge_profile(c: &mut Certificate, tol: f64) {
    c.tolerance = tol;
    if matches!(c.witness, None | Some(Witness::ProfileResidual { .. })) {
        c.verdict = if c.residual <= tol {
            Verdict::Equivalent
        } else {
            Verdict::Distinct
        };
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn check(name: &'static str, value: f64, tolerance: f64) -> Check {
    Check {
        name,
        value,
        tolerance,
        passed: value.is_finite() && value <= tolerance,
    }
}

/// A fast subset of the invariant suite.
pub fn selftest(seed: u64) -> Vec<Check> {
    let mut rng = sampling::seeded(seed);
    let mut out = Vec::new();

    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let a = sampling::gaussian_octonion(&mut rng);
        let b = sampling::gaussian_octonion(&mut rng);
        worst = worst.max(((a * b).norm() - a.norm() * b.norm()).abs() / (a.norm() * b.norm()));
    }
    out.push(check("octonion_norm_multiplicative", worst, 1e-12));

    let mut spec_err: f64 = 0.0;
    for sign in [SpaceSign::Compact, SpaceSign::Noncompact] {
        for _ in 0..10 {
            let v = sampling::unit_vector(&mut rng, cayley::DIM);
            let s = sign.value();
            let err = TangentPair::from_vector(&v)
                .and_then(|xi| cayley::jacobi_spectrum(&xi, sign))
                .map(|sp| {
                    let mults = [(0.0, 1), (s, 8), (4.0 * s, 7)];
                    let shape_ok = sp.groups.len() == 3
                        && mults
                            .iter()
                            .all(|&(val, m)| sp.multiplicity_of(val, 1e-9) == m);
                    if shape_ok {
                        sp.residual
                    } else {
                        f64::INFINITY
                    }
                })
                .unwrap_or(f64::INFINITY);
            spec_err = spec_err.max(err);
        }
    }
    out.push(check("cayley_jacobi_spectrum", spec_err, 1e-9));

    let mut bianchi: f64 = 0.0;
    for _ in 0..100 {
        let mut pair = || {
            TangentPair::from_vector(&sampling::gaussian_vector(&mut rng, cayley::DIM))
                .expect("16 entries")
        };
        let (x, y, z) = (pair(), pair(), pair());
        let s = SpaceSign::Compact;
        let b = cayley::curvature(&x, &y, &z, s)
            + cayley::curvature(&y, &z, &x, s)
            + cayley::curvature(&z, &x, &y, s);
        bianchi = bianchi.max(b.max_abs());
    }
    out.push(check("cayley_bianchi", bianchi, 1e-10));

    let table_err = (|| -> Result<f64> {
        let r = std::f64::consts::FRAC_PI_8;
        let rows = tube::tube_table(&TubeDescriptor::new(Ambient::Op2, Core::Hp2, r))?;
        let want = [
            1.0 / r.tan(),
            -r.tan(),
            2.0 / (2.0 * r).tan(),
            -2.0 * (2.0 * r).tan(),
        ];
        Ok(rows
            .iter()
            .zip(want)
            .map(|(row, w)| (row.value - w).abs())
            .fold(0.0, f64::max))
    })()
    .unwrap_or(f64::INFINITY);
    out.push(check("tube_table_hp2", table_err, 1e-12));

    let riccati = (|| -> Result<f64> {
        let b = tube::CurvatureBranch::compact(2.0, FRAC_PI_2, 1)?;
        let h = 1e-5;
        let t = 0.3;
        let fd = (b.evolve(t + h)? - b.evolve(t - h)?) / (2.0 * h);
        Ok((fd - b.derivative(t)?).abs())
    })()
    .unwrap_or(f64::INFINITY);
    out.push(check("riccati_finite_difference", riccati, 1e-6));

    let t2 = theorem2::theorem2_enumerate()
        .map(|en| (en.admissible.len() as f64 - 4.0).abs() + en.certificate.residual)
        .unwrap_or(f64::INFINITY);
    out.push(check("theorem2_survivors", t2, 1e-12));

    let newton = (|| -> Result<f64> {
        let xs = [1.5, -0.25, 2.0, 2.0, -3.0];
        let got = crate::newton::newton_recover(&crate::newton::power_sums(&xs, 5), 5)?;
        let mut want = xs.to_vec();
        want.sort_by(f64::total_cmp);
        Ok(got
            .iter()
            .zip(&want)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    })()
    .unwrap_or(f64::INFINITY);
    out.push(check("newton_round_trip", newton, 1e-8));

    let ratio = (|| -> Result<f64> {
        let bundle = StructureBundle::quaternionic_model(2)?;
        let xi = grassmannian::normal_with_alpha(&bundle, 1.0)?;
        let h = grassmannian::hopf_eigenvalues(&xi, &bundle)?;
        Ok(((h.ratio - h.ratio_expected) / h.ratio_expected).abs())
    })()
    .unwrap_or(f64::INFINITY);
    out.push(check("grassmannian_eigen_ratio", ratio, 1e-8));

    out
}
