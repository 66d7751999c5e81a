//! Tangent-space model of the complex two-plane Grassmannian `G_2(C^{m+2})`.
//!
//! The tangent space is `H^m = R^{4m}`. The Kaehler structure `J` is left
//! multiplication by the quaternion `i`; the quaternionic-Kaehler basis is
//! `J1 = R_i`, `J2 = R_j`, `J3 = -R_k` (right multiplications), ordered so that
//! `J1 J2 = J3`. Left and right multiplications commute, so `J J_nu = J_nu J`.
//!
//! Curvature:
//!
//! ```text
//! R(X,Y)Z = <Y,Z>X - <X,Z>Y
//!         + <JY,Z>JX - <JX,Z>JY - 2<JX,Y>JZ
//!         + sum_nu <J_nu Y,Z>J_nu X - <J_nu X,Z>J_nu Y - 2<J_nu X,Y>J_nu Z
//!         + sum_nu <J_nu J Y,Z>J_nu J X - <J_nu J X,Z>J_nu J Y
//! ```
//!
//! The printed form with `JZ` / `J_nu Z` in place of the second `JY` / `J_nu Y`
//! terms is available as [`TensorVariant::Printed`].

use nalgebra::{DMatrix, DVector, Matrix3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::SelfAdjointOperator;
use crate::TensorVariant;

pub type GrassTangent = DVector<f64>;

pub const UNIT_TOL: f64 = 1e-12;

/// Below this the component of `J xi` orthogonal to `span{J_nu xi}` is treated
/// as zero (alpha = 0).
pub const ALPHA_ZERO_TOL: f64 = 1e-10;

/// Default quaternionic dimension of the model.
pub const DEFAULT_M: usize = 2;

fn quat_mul(p: [f64; 4], q: [f64; 4]) -> [f64; 4] {
    let [a1, b1, c1, d1] = p;
    let [a2, b2, c2, d2] = q;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

fn quat_operator(m: usize, q: [f64; 4], left: bool) -> DMatrix<f64> {
    let n = 4 * m;
    let mut out = DMatrix::zeros(n, n);
    for h in 0..m {
        for k in 0..4 {
            let mut e = [0.0; 4];
            e[k] = 1.0;
            let img = if left { quat_mul(q, e) } else { quat_mul(e, q) };
            for (r, v) in img.iter().enumerate() {
                out[(4 * h + r, 4 * h + k)] = *v;
            }
        }
    }
    out
}

/// The Kaehler structure `J` and a canonical local basis `J1, J2, J3` of the
/// quaternionic-Kaehler structure.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureBundle {
    m: usize,
    j: DMatrix<f64>,
    hermitian: [DMatrix<f64>; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructureResiduals {
    /// `J^2 + I`, `J_nu^2 + I`.
    pub squares: f64,
    /// `J1 J2 - J3` and cyclic.
    pub quaternion_relations: f64,
    /// `J J_nu - J_nu J`.
    pub commutation: f64,
    /// `A^T A - I` for each structure.
    pub isometry: f64,
}

impl StructureResiduals {
    pub fn max(&self) -> f64 {
        self.squares
            .max(self.quaternion_relations)
            .max(self.commutation)
            .max(self.isometry)
    }
}

impl StructureBundle {
    pub fn quaternionic_model(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput(format!(
                "m must be at least 2 (got {m})"
            )));
        }
        let i = [0.0, 1.0, 0.0, 0.0];
        let j = [0.0, 0.0, 1.0, 0.0];
        let k = [0.0, 0.0, 0.0, 1.0];
        Ok(StructureBundle {
            m,
            j: quat_operator(m, i, true),
            hermitian: [
                quat_operator(m, i, false),
                quat_operator(m, j, false),
                -quat_operator(m, k, false),
            ],
        })
    }

    /// Replace `(J1, J2, J3)` by `J'_nu = sum_mu rot[nu][mu] J_mu`. For a
    /// rotation `rot` this is again a canonical basis.
    pub fn rotated(&self, rot: &Matrix3<f64>) -> Self {
        let comb = |row: usize| {
            (0..3).fold(DMatrix::zeros(self.dim(), self.dim()), |acc, mu| {
                acc + &self.hermitian[mu] * rot[(row, mu)]
            })
        };
        StructureBundle {
            m: self.m,
            j: self.j.clone(),
            hermitian: [comb(0), comb(1), comb(2)],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        4 * self.m
    }

    pub fn kaehler(&self) -> &DMatrix<f64> {
        &self.j
    }

    pub fn hermitian(&self, nu: usize) -> &DMatrix<f64> {
        &self.hermitian[nu]
    }

    /// `sum_nu coeffs[nu] J_nu`.
    pub fn combination(&self, coeffs: [f64; 3]) -> DMatrix<f64> {
        (0..3).fold(DMatrix::zeros(self.dim(), self.dim()), |acc, nu| {
            acc + &self.hermitian[nu] * coeffs[nu]
        })
    }

    pub fn verify(&self) -> StructureResiduals {
        let id = DMatrix::<f64>::identity(self.dim(), self.dim());
        let all: Vec<&DMatrix<f64>> = std::iter::once(&self.j)
            .chain(self.hermitian.iter())
            .collect();
        let squares = all
            .iter()
            .map(|a| (*a * *a + &id).amax())
            .fold(0.0, f64::max);
        let isometry = all
            .iter()
            .map(|a| (a.transpose() * *a - &id).amax())
            .fold(0.0, f64::max);
        let h = &self.hermitian;
        let quaternion_relations = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
            .iter()
            .map(|&(a, b, c)| (&h[a] * &h[b] - &h[c]).amax())
            .fold(0.0, f64::max);
        let commutation = h
            .iter()
            .map(|a| (&self.j * a - a * &self.j).amax())
            .fold(0.0, f64::max);
        StructureResiduals {
            squares,
            quaternion_relations,
            commutation,
            isometry,
        }
    }
}

pub fn curvature_g2(
    x: &GrassTangent,
    y: &GrassTangent,
    z: &GrassTangent,
    s: &StructureBundle,
) -> GrassTangent {
    curvature_g2_variant(x, y, z, s, TensorVariant::Corrected)
}

pub fn curvature_g2_variant(
    x: &GrassTangent,
    y: &GrassTangent,
    z: &GrassTangent,
    s: &StructureBundle,
    variant: TensorVariant,
) -> GrassTangent {
    let mut out = x * y.dot(z) - y * x.dot(z);

    let mut hermitian_terms = |a: &DMatrix<f64>| {
        let ax = a * x;
        let ay = a * y;
        let az = a * z;
        let second = match variant {
            TensorVariant::Corrected => &ay,
            TensorVariant::Printed => &az,
        };
        out += &ax * ay.dot(z) - second * ax.dot(z) - &az * (2.0 * ax.dot(y));
    };
    hermitian_terms(&s.j);
    for nu in 0..3 {
        hermitian_terms(&s.hermitian[nu]);
    }
    for nu in 0..3 {
        let phi = &s.hermitian[nu] * &s.j;
        let px = &phi * x;
        let py = &phi * y;
        out += &px * py.dot(z) - &py * px.dot(z);
    }
    out
}

fn check_unit(xi: &GrassTangent, s: &StructureBundle) -> Result<()> {
    if xi.len() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: xi.len(),
        });
    }
    let norm = xi.norm();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit { norm });
    }
    Ok(())
}

/// `K_xi(X) = R(X, xi) xi`.
pub fn jacobi_operator_g2(xi: &GrassTangent, s: &StructureBundle) -> Result<SelfAdjointOperator> {
    check_unit(xi, s)?;
    Ok(SelfAdjointOperator::from_columns(s.dim(), |e| {
        curvature_g2(e, xi, xi, s)
    }))
}

/// `J xi = cos(alpha) J1 xi + sin(alpha) J1 Z` with `Z` orthogonal to
/// `span{xi, J_nu xi}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaDecomposition {
    pub alpha: f64,
    /// `J1 = sum_nu j1[nu] J_nu` in the canonical basis of the bundle.
    pub j1: [f64; 3],
    /// `None` when `alpha = 0`.
    pub z: Option<GrassTangent>,
}

impl AlphaDecomposition {
    pub fn j1_operator(&self, s: &StructureBundle) -> DMatrix<f64> {
        s.combination(self.j1)
    }

    /// `|J xi - cos(alpha) J1 xi - sin(alpha) J1 Z|` plus the orthogonality
    /// defects of `Z`.
    pub fn residual(&self, xi: &GrassTangent, s: &StructureBundle) -> f64 {
        let j1 = self.j1_operator(s);
        let jxi = s.kaehler() * xi;
        let mut recon = &j1 * xi * self.alpha.cos();
        let mut orth: f64 = 0.0;
        if let Some(z) = &self.z {
            recon += &j1 * z * self.alpha.sin();
            orth = orth.max(z.dot(xi).abs());
            for nu in 0..3 {
                orth = orth.max(z.dot(&(s.hermitian(nu) * xi)).abs());
            }
            orth = orth.max((z.norm() - 1.0).abs());
        }
        (jxi - recon).norm().max(orth)
    }
}

pub fn alpha_of(xi: &GrassTangent, s: &StructureBundle) -> Result<AlphaDecomposition> {
    check_unit(xi, s)?;
    let jxi = s.kaehler() * xi;
    let mut coeffs = [0.0; 3];
    let mut projection = DVector::zeros(s.dim());
    for (nu, c) in coeffs.iter_mut().enumerate() {
        let jnu_xi = s.hermitian(nu) * xi;
        *c = jxi.dot(&jnu_xi);
        projection += jnu_xi * *c;
    }
    let perp = &jxi - projection;
    let cos_part = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    let sin_part = perp.norm();
    let alpha = sin_part.atan2(cos_part);

    let j1 = if cos_part > ALPHA_ZERO_TOL {
        [
            coeffs[0] / cos_part,
            coeffs[1] / cos_part,
            coeffs[2] / cos_part,
        ]
    } else {
        // alpha = pi/2: every J1 in the bundle works; take the first basis element
        [1.0, 0.0, 0.0]
    };

    if sin_part <= ALPHA_ZERO_TOL {
        return Ok(AlphaDecomposition {
            alpha: 0.0,
            j1,
            z: None,
        });
    }
    // J1 Z = perp / |perp|, so <J xi, J1 Z> >= 0
    let j1z = perp / sin_part;
    let z = -(s.combination(j1) * j1z);
    Ok(AlphaDecomposition {
        alpha,
        j1,
        z: Some(z),
    })
}

/// A unit normal in the model with prescribed angle `alpha` in `[0, pi/2]`:
/// `xi = cos(alpha/2) (1, 0, ..) + sin(alpha/2) (0, j, 0, ..)`.
pub fn normal_with_alpha(s: &StructureBundle, alpha: f64) -> Result<GrassTangent> {
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&alpha) {
        return Err(Error::InvalidInput(format!(
            "alpha {alpha} outside [0, pi/2]"
        )));
    }
    let mut xi = DVector::zeros(s.dim());
    xi[0] = (alpha / 2.0).cos();
    xi[6] = (alpha / 2.0).sin();
    Ok(xi)
}

/// `X1 = cos(beta) J1 xi + sin(beta) J1 Z`, `X2 = sin(beta) J1 xi - cos(beta) J1 Z`,
/// `beta = alpha / 2`.
pub fn hopf_eigenvectors(
    dec: &AlphaDecomposition,
    xi: &GrassTangent,
    s: &StructureBundle,
) -> Result<(GrassTangent, GrassTangent)> {
    let z = match &dec.z {
        Some(z) if dec.alpha > 0.0 && dec.alpha < std::f64::consts::FRAC_PI_2 - 1e-12 => z,
        _ => return Err(Error::BoundaryAngle { alpha: dec.alpha }),
    };
    Ok(hopf_pair(dec, z, xi, s))
}

fn hopf_pair(
    dec: &AlphaDecomposition,
    z: &GrassTangent,
    xi: &GrassTangent,
    s: &StructureBundle,
) -> (GrassTangent, GrassTangent) {
    let j1 = dec.j1_operator(s);
    let j1xi = &j1 * xi;
    let j1z = &j1 * z;
    let beta = dec.alpha / 2.0;
    let x1 = &j1xi * beta.cos() + &j1z * beta.sin();
    let x2 = &j1xi * beta.sin() - &j1z * beta.cos();
    (x1, x2)
}

/// Jacobi eigenvalues on `X1`, `X2` together with their eigen-residuals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HopfEigenvalues {
    pub alpha: f64,
    pub eigenvalue_x1: f64,
    pub eigenvalue_x2: f64,
    pub residual_x1: f64,
    pub residual_x2: f64,
    pub ratio: f64,
    pub ratio_expected: f64,
    /// `eigenvalue_x1 / (1 + cos alpha)`; equals `eigenvalue_x2 / (1 - cos alpha)`.
    pub scale: f64,
}

pub fn hopf_eigenvalues(xi: &GrassTangent, s: &StructureBundle) -> Result<HopfEigenvalues> {
    let dec = alpha_of(xi, s)?;
    let (x1, x2) = hopf_eigenvectors(&dec, xi, s)?;
    let k = jacobi_operator_g2(xi, s)?;
    let mu1 = k.rayleigh(&x1);
    let mu2 = k.rayleigh(&x2);
    let cos = dec.alpha.cos();
    Ok(HopfEigenvalues {
        alpha: dec.alpha,
        eigenvalue_x1: mu1,
        eigenvalue_x2: mu2,
        residual_x1: (k.apply(&x1) - &x1 * mu1).norm(),
        residual_x2: (k.apply(&x2) - &x2 * mu2).norm(),
        ratio: mu1 / mu2,
        ratio_expected: (1.0 + cos) / (1.0 - cos),
        scale: mu1 / (1.0 + cos),
    })
}

/// Jacobi eigenvalue on `X2` at `alpha = pi/2`, where `cos(beta) = sin(beta)`.
pub fn equal_angle_x2_eigenvalue(s: &StructureBundle) -> Result<f64> {
    let xi = normal_with_alpha(s, std::f64::consts::FRAC_PI_2)?;
    let dec = alpha_of(&xi, s)?;
    let z = dec
        .z
        .clone()
        .ok_or(Error::BoundaryAngle { alpha: dec.alpha })?;
    let (_, x2) = hopf_pair(&dec, &z, &xi, s);
    Ok(jacobi_operator_g2(&xi, s)?.rayleigh(&x2))
}

/// Which branch of the shape-operator symmetry constraint applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShapeBranch {
    /// `cos(beta) != sin(beta)`.
    Generic,
    /// `cos(beta) = sin(beta)`: the two equations together force `lambda2 = 0`.
    EqualAngles,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeResiduals {
    pub la1: f64,
    pub la2: f64,
    pub branch: ShapeBranch,
}

/// Coefficients of the two linear relations
///
/// ```text
/// a_zz = lambda1 (1 - cot^2 beta) + cot^2 beta a_jj
/// a_zz = lambda2 (1 + tan^2 beta) + tan^2 beta a_jj
/// ```
///
/// returned as `(1 - cot^2, cot^2, 1 + tan^2, tan^2)`.
pub fn shape_coefficients(alpha: f64) -> (f64, f64, f64, f64) {
    let beta = alpha / 2.0;
    let cot2 = (beta.cos() / beta.sin()).powi(2);
    let tan2 = beta.tan().powi(2);
    (1.0 - cot2, cot2, 1.0 + tan2, tan2)
}

/// Residuals of the two relations above for candidate diagonal entries
/// `a_jj = <A J1 xi, J1 xi>` and `a_zz = <A J1 Z, J1 Z>`.
pub fn shape_consistency(
    lambda1: f64,
    lambda2: f64,
    a_jj: f64,
    a_zz: f64,
    alpha: f64,
) -> ShapeResiduals {
    let beta = alpha / 2.0;
    let (p1, q1, p2, q2) = shape_coefficients(alpha);
    let branch = if (beta.cos() - beta.sin()).abs() < 1e-12 {
        ShapeBranch::EqualAngles
    } else {
        ShapeBranch::Generic
    };
    ShapeResiduals {
        la1: a_zz - p1 * lambda1 - q1 * a_jj,
        la2: a_zz - p2 * lambda2 - q2 * a_jj,
        branch,
    }
}

/// Solve both relations for `(a_jj, a_zz)`. `None` in the equal-angle case
/// (the system is singular there).
pub fn solve_shape_entries(lambda1: f64, lambda2: f64, alpha: f64) -> Option<(f64, f64)> {
    let (p1, q1, p2, q2) = shape_coefficients(alpha);
    // a_zz - q1 a_jj = p1 l1 ; a_zz - q2 a_jj = p2 l2
    let det = q2 - q1;
    if det.abs() < 1e-12 {
        return None;
    }
    let a_jj = (p1 * lambda1 - p2 * lambda2) / det;
    let a_zz = p1 * lambda1 + q1 * a_jj;
    Some((a_jj, a_zz))
}
