//! Tangent-space model of the Cayley plane and its noncompact dual.
//!
//! A tangent vector is a pair `(a, b)` of octonions with inner product
//! `<(a,b),(c,d)> = <a,c> + <b,d>`. The curvature tensor is the Brown-Gray
//! tensor
//!
//! ```text
//! R((a,b),(c,d))(e,f) = s/4 * ( 4<c,e>a - 4<a,e>c + (ed)b* - (eb)d* + (ad - cb)f*,
//!                               4<d,f>b - 4<b,f>d + a*(cf) - c*(af) - e*(ad - cb) )
//! ```
//!
//! multiplied by [`METRIC_SCALE`] so that sectional curvatures range over
//! `[1, 4]` (compact) or `[-4, -1]` (noncompact). The commonly printed form
//! has `e*(ad - bc)` in the second slot; that variant is kept as
//! [`TensorVariant::Printed`] and fails every tensor symmetry.
//!
//! Jacobi operators use the convention `K_xi(X) = R(X, xi) xi`, which makes
//! the compact spectrum positive.

use std::ops::{Add, Sub};

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::octonion::Octonion;
use crate::spectrum::{SelfAdjointOperator, Spectrum};
use crate::TensorVariant;

/// Global factor applied to the `+-1/4` prefactor so that the sectional
/// curvature range is exactly `[1, 4]`.
pub const METRIC_SCALE: f64 = 4.0;

/// Absolute tolerance on `| |xi| - 1 |`.
pub const UNIT_TOL: f64 = 1e-12;

/// Planes with Gram determinant below this are refused.
pub const GRAM_THRESHOLD: f64 = 1e-14;

pub const DIM: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceSign {
    /// The Cayley projective plane.
    Compact,
    /// The Cayley hyperbolic plane.
    Noncompact,
}

impl SpaceSign {
    pub fn value(self) -> f64 {
        match self {
            SpaceSign::Compact => 1.0,
            SpaceSign::Noncompact => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TangentPair {
    pub first: Octonion,
    pub second: Octonion,
}

impl TangentPair {
    pub const ZERO: TangentPair = TangentPair {
        first: Octonion::ZERO,
        second: Octonion::ZERO,
    };

    pub fn new(first: Octonion, second: Octonion) -> Self {
        TangentPair { first, second }
    }

    pub fn inner(&self, other: &TangentPair) -> f64 {
        self.first.inner(&other.first) + self.second.inner(&other.second)
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> TangentPair {
        TangentPair::new(self.first.scale(s), self.second.scale(s))
    }

    pub fn max_abs(&self) -> f64 {
        self.first.max_abs().max(self.second.max_abs())
    }

    pub fn to_vector(&self) -> DVector<f64> {
        DVector::from_iterator(
            DIM,
            self.first
                .coeffs
                .iter()
                .chain(self.second.coeffs.iter())
                .copied(),
        )
    }

    pub fn from_vector(v: &DVector<f64>) -> Result<TangentPair> {
        if v.len() != DIM {
            return Err(Error::DimensionMismatch {
                expected: DIM,
                got: v.len(),
            });
        }
        let mut a = [0.0; 8];
        let mut b = [0.0; 8];
        a.copy_from_slice(&v.as_slice()[..8]);
        b.copy_from_slice(&v.as_slice()[8..]);
        Ok(TangentPair::new(Octonion::new(a), Octonion::new(b)))
    }
}

impl Add for TangentPair {
    type Output = TangentPair;
    fn add(self, rhs: TangentPair) -> TangentPair {
        TangentPair::new(self.first + rhs.first, self.second + rhs.second)
    }
}

impl Sub for TangentPair {
    type Output = TangentPair;
    fn sub(self, rhs: TangentPair) -> TangentPair {
        TangentPair::new(self.first - rhs.first, self.second - rhs.second)
    }
}

/// `R(x, y) z` for the Cayley plane of the given sign.
pub fn curvature(x: &TangentPair, y: &TangentPair, z: &TangentPair, s: SpaceSign) -> TangentPair {
    curvature_variant(x, y, z, s, TensorVariant::Corrected)
}

pub fn curvature_variant(
    x: &TangentPair,
    y: &TangentPair,
    z: &TangentPair,
    s: SpaceSign,
    variant: TensorVariant,
) -> TangentPair {
    let (a, b) = (&x.first, &x.second);
    let (c, d) = (&y.first, &y.second);
    let (e, f) = (&z.first, &z.second);

    let ad = a.multiply(d);
    let ad_cb = ad - c.multiply(b);
    let second_mix = match variant {
        TensorVariant::Corrected => ad_cb,
        TensorVariant::Printed => ad - b.multiply(c),
    };

    let first = c.inner(e) * 4.0 * *a - a.inner(e) * 4.0 * *c
        + e.multiply(d).multiply(&b.conjugate())
        - e.multiply(b).multiply(&d.conjugate())
        + ad_cb.multiply(&f.conjugate());
    let second = d.inner(f) * 4.0 * *b - b.inner(f) * 4.0 * *d
        + a.conjugate().multiply(&c.multiply(f))
        - c.conjugate().multiply(&a.multiply(f))
        - e.conjugate().multiply(&second_mix);

    let k = s.value() * METRIC_SCALE / 4.0;
    TangentPair::new(first.scale(k), second.scale(k))
}

fn check_unit(xi: &TangentPair) -> Result<()> {
    let norm = xi.norm();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit { norm });
    }
    Ok(())
}

/// `K_xi(X) = R(X, xi) xi` as a 16x16 operator.
pub fn jacobi_operator(xi: &TangentPair, s: SpaceSign) -> Result<SelfAdjointOperator> {
    check_unit(xi)?;
    Ok(jacobi_operator_unchecked(xi, s))
}

fn jacobi_operator_unchecked(xi: &TangentPair, s: SpaceSign) -> SelfAdjointOperator {
    SelfAdjointOperator::from_columns(DIM, |e| {
        let x = TangentPair::from_vector(e).expect("basis vector has dimension 16");
        curvature(&x, xi, xi, s).to_vector()
    })
}

pub fn jacobi_spectrum(xi: &TangentPair, s: SpaceSign) -> Result<Spectrum> {
    Ok(jacobi_operator(xi, s)?.spectrum())
}

/// `<R(x,y)y, x> / (|x|^2 |y|^2 - <x,y>^2)`.
pub fn sectional_curvature(x: &TangentPair, y: &TangentPair, s: SpaceSign) -> Result<f64> {
    let gram = x.inner(x) * y.inner(y) - x.inner(y).powi(2);
    if gram < GRAM_THRESHOLD {
        return Err(Error::DegeneratePlane {
            gram,
            threshold: GRAM_THRESHOLD,
        });
    }
    Ok(curvature(x, y, y, s).inner(x) / gram)
}

/// Common eigenframe of `K_xi`: the `4s`-eigenspace (dimension 7) and the
/// `s`-eigenspace (dimension 8).
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptedFrame {
    pub xi: TangentPair,
    pub four_space: Vec<TangentPair>,
    pub one_space: Vec<TangentPair>,
}

impl AdaptedFrame {
    pub fn all_vectors(&self) -> Vec<TangentPair> {
        std::iter::once(self.xi)
            .chain(self.four_space.iter().copied())
            .chain(self.one_space.iter().copied())
            .collect()
    }

    /// Max entry of `G - I` for the Gram matrix of `{xi} + frame`.
    pub fn gram_residual(&self) -> f64 {
        let v = self.all_vectors();
        let mut worst: f64 = 0.0;
        for (i, a) in v.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.inner(b) - target).abs());
            }
        }
        worst
    }

    /// Max of `|K v - mu v|` over the frame, with `mu = 4s` or `s`.
    pub fn eigen_residual(&self, s: SpaceSign) -> f64 {
        let sign = s.value();
        let mut worst: f64 = 0.0;
        for (vectors, mu) in [(&self.four_space, 4.0 * sign), (&self.one_space, sign)] {
            for v in vectors {
                let r = curvature(v, &self.xi, &self.xi, s) - v.scale(mu);
                worst = worst.max(r.norm());
            }
        }
        worst
    }
}

pub fn adapted_frame(xi: &TangentPair, s: SpaceSign) -> Result<AdaptedFrame> {
    let spectrum = jacobi_spectrum(xi, s)?;
    let sign = s.value();
    let extract = |mu: f64, expected: usize| -> Result<Vec<TangentPair>> {
        let group = spectrum
            .group_near(mu, 1e-6)
            .filter(|g| g.multiplicity == expected)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "Jacobi operator has no eigenvalue {mu} of multiplicity {expected}"
                ))
            })?;
        group.basis.iter().map(TangentPair::from_vector).collect()
    };
    Ok(AdaptedFrame {
        xi: *xi,
        four_space: extract(4.0 * sign, 7)?,
        one_space: extract(sign, 8)?,
    })
}
