//! Recovering a real multiset from its power sums.
//!
//! Newton's identities turn `p_1..p_n` into the elementary symmetric
//! functions; the roots of the resulting monic polynomial come from the
//! companion matrix and are then clustered and polished, since repeated roots
//! come back from the eigensolver as tight complex clusters.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Tolerance on imaginary parts and on reproduced power sums.
pub const RECOVERY_TOL: f64 = 1e-8;

/// Power-sum defect below which a merged cluster is preferred to a split one.
const MERGE_DEFECT: f64 = 1e-12;

/// `e_1..e_n` from `p_1..p_n`.
pub fn elementary_symmetric(power_sums: &[f64]) -> Vec<f64> {
    let n = power_sums.len();
    let mut e = vec![1.0; n + 1];
    for k in 1..=n {
        let mut acc = 0.0;
        for i in 1..=k {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            acc += sign * e[k - i] * power_sums[i - 1];
        }
        e[k] = acc / k as f64;
    }
    e.remove(0);
    e
}

/// `p_1..p_k` of a weighted multiset.
pub fn power_sums(values: &[f64], k: usize) -> Vec<f64> {
    (1..=k)
        .map(|j| values.iter().map(|v| v.powi(j as i32)).sum())
        .collect()
}

/// Monic coefficients, highest degree first: `x^n - e1 x^{n-1} + e2 ...`.
fn monic_coefficients(e: &[f64]) -> Vec<f64> {
    let mut c = vec![1.0];
    for (k, ek) in e.iter().enumerate() {
        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
        c.push(sign * ek);
    }
    c
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len() - 1;
    coeffs[..n]
        .iter()
        .enumerate()
        .map(|(i, c)| c * (n - i) as f64)
        .collect()
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, c| acc * x + c)
}

fn polish(coeffs: &[f64], mut x: f64) -> f64 {
    if coeffs.len() < 2 {
        return x;
    }
    let d = derivative(coeffs);
    for _ in 0..50 {
        let f = horner(coeffs, x);
        let df = horner(&d, x);
        if df == 0.0 || !f.is_finite() {
            break;
        }
        let step = f / df;
        let next = x - step;
        if !next.is_finite() {
            break;
        }
        if step.abs() <= 1e-16 * (1.0 + x.abs()) {
            return next;
        }
        x = next;
    }
    x
}

/// Largest relative power-sum defect of `values` against `target`.
fn reproduction_error(values: &[f64], target: &[f64]) -> f64 {
    target
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let k = i as i32 + 1;
            let got: f64 = values.iter().map(|v| v.powi(k)).sum();
            let scale: f64 = values.iter().map(|v| v.abs().powi(k)).sum::<f64>().max(1.0);
            (got - p).abs() / scale
        })
        .fold(0.0, f64::max)
}

/// Recover the `n` reals whose first `n` power sums are `power_sums[..n]`.
/// The result is sorted ascending.
pub fn newton_recover(power_sums: &[f64], n: usize) -> Result<Vec<f64>> {
    if power_sums.len() < n {
        return Err(Error::InvalidInput(format!(
            "need {n} power sums, got {}",
            power_sums.len()
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let p = &power_sums[..n];
    if p.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("power sums must be finite".into()));
    }
    let e = elementary_symmetric(p);
    let coeffs = monic_coefficients(&e);

    let companion = DMatrix::from_fn(n, n, |i, j| {
        if i == 0 {
            -coeffs[j + 1]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let roots = companion.complex_eigenvalues();
    let scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);

    // Every clustering radius that reproduces the power sums is a candidate.
    // A split multiple root reproduces them as well as the merged one, so
    // the widest radius whose defect stays at rounding level wins.
    let mut least_imag = f64::INFINITY;
    let mut candidates: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut tau = 1e-12;
    while tau <= 1e-1 {
        let clusters = cluster(roots.as_slice(), tau * scale);
        let mut values = Vec::with_capacity(n);
        let mut imag: f64 = 0.0;
        for c in &clusters {
            let m = c.len() as f64;
            let re = c.iter().map(|z| z.re).sum::<f64>() / m;
            let im = c.iter().map(|z| z.im).sum::<f64>() / m;
            imag = imag.max(im.abs());
            // A root of multiplicity k is a simple root of P^(k-1).
            let mut d = coeffs.clone();
            for _ in 1..c.len() {
                d = derivative(&d);
            }
            let x = polish(&d, re);
            values.extend(std::iter::repeat_n(x, c.len()));
        }
        least_imag = least_imag.min(imag);
        if imag <= RECOVERY_TOL * scale {
            let err = reproduction_error(&values, p);
            if err <= RECOVERY_TOL {
                candidates.push((err, values));
            }
        }
        tau *= 10.0;
    }
    if let Some(best) = candidates.iter().map(|c| c.0).reduce(f64::min) {
        let accept = (10.0 * best).max(MERGE_DEFECT);
        let (_, mut values) = candidates
            .into_iter()
            .rev()
            .find(|c| c.0 <= accept)
            .expect("the best candidate is accepted");
        values.sort_by(f64::total_cmp);
        return Ok(values);
    }
    let reason = if least_imag > RECOVERY_TOL * scale {
        format!("polynomial has complex roots (imaginary part {least_imag:.3e})")
    } else {
        "recovered roots do not reproduce the power sums".to_string()
    };
    Err(Error::InconsistentPowerSums { reason })
}

fn cluster(roots: &[nalgebra::Complex<f64>], radius: f64) -> Vec<Vec<nalgebra::Complex<f64>>> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<nalgebra::Complex<f64>>)> = Vec::new();
    for (i, z) in roots.iter().enumerate() {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(k, _)| *k == r) {
            Some((_, g)) => g.push(*z),
            None => groups.push((r, vec![*z])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}
