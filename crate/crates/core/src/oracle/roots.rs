use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

const MAX_ITER: usize = 2000;

fn horner(p: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(p[0], 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &a in &p[1..] {
        d = d * z + v;
        v = v * z + a;
    }
    (v, d)
}

/// `|p(z)| / sum |a_i| |z|^(n-i)`.
pub fn relative_residual(p: &[f64], z: Complex64) -> f64 {
    let (v, _) = horner(p, z);
    let r = z.norm();
    let scale = p.iter().fold(0.0, |acc, a| acc * r + a.abs());
    if scale == 0.0 {
        0.0
    } else {
        v.norm() / scale
    }
}

/// All complex roots of a real polynomial, coefficients in descending order,
/// by Aberth-Ehrlich simultaneous iteration started from a fixed circle.
pub fn find_roots(p: &[f64]) -> Result<Vec<Complex64>> {
    let start = p.iter().position(|&a| a != 0.0).unwrap_or(p.len());
    let p = &p[start..];
    if p.len() < 2 {
        return Err(Error::InvalidInput("polynomial must have degree >= 1".into()));
    }
    if p.iter().any(|a| !a.is_finite()) {
        return Err(Error::InvalidInput("non-finite coefficient".into()));
    }
    let trailing = p.iter().rev().take_while(|&&a| a == 0.0).count();
    let body: Vec<f64> = p[..p.len() - trailing].iter().map(|a| a / p[0]).collect();
    let mut roots = vec![Complex64::new(0.0, 0.0); trailing];
    let n = body.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    if n == 1 {
        roots.push(Complex64::new(-body[1], 0.0));
        return Ok(roots);
    }

    let radius = body[n].abs().powf(1.0 / n as f64).max(f64::MIN_POSITIVE);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut biggest: f64 = 0.0;
        for k in 0..n {
            let (v, d) = horner(&body, z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                biggest = biggest.max(w.norm() / z[k].norm().max(1.0));
            }
        }
        if biggest < 1e-15 {
            converged = true;
            break;
        }
    }
    // Newton polish
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (v, d) = horner(&body, *r);
            if d.norm() == 0.0 {
                break;
            }
            let step = v / d;
            if step.is_finite() {
                *r -= step;
            }
        }
    }
    let worst = z.iter().map(|r| relative_residual(&body, *r)).fold(0.0, f64::max);
    if !converged && worst > 1e-10 {
        return Err(Error::OracleFailure(format!(
            "no convergence after {MAX_ITER} iterations (residual {worst:.2e})"
        )));
    }
    if worst > 1e-10 {
        return Err(Error::OracleFailure(format!("residual {worst:.2e} above 1e-10")));
    }
    roots.extend(z);
    Ok(roots)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootClass {
    AllSimpleOnT,
    OnTWithMultiple,
    OffT,
    Uncertain,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootReport {
    /// `(re, im)` pairs, with multiplicity.
    pub roots: Vec<(f64, f64)>,
    /// `|root| - 1` per root.
    pub deviations: Vec<f64>,
    /// Size of the cluster each root belongs to.
    pub multiplicities: Vec<usize>,
    pub class: RootClass,
}

pub const TOL_INNER: f64 = 1e-9;
pub const TOL_OUTER: f64 = 1e-6;
pub const CLUSTER_TOL: f64 = 1e-6;

/// Classifies roots against the unit circle. Roots closer than
/// [`CLUSTER_TOL`] count as one multiple root.
pub fn classify_circle(roots: &[Complex64], tol_inner: f64, tol_outer: f64) -> Result<RootReport> {
    let mult: Vec<usize> = roots
        .iter()
        .map(|r| roots.iter().filter(|s| (*r - *s).norm() < CLUSTER_TOL).count())
        .collect();
    classify_with_multiplicity(roots, &mult, tol_inner, tol_outer)
}

pub(crate) fn classify_with_multiplicity(
    roots: &[Complex64],
    mult: &[usize],
    tol_inner: f64,
    tol_outer: f64,
) -> Result<RootReport> {
    if roots.is_empty() {
        return Err(Error::InvalidInput("no roots to classify".into()));
    }
    let deviations: Vec<f64> = roots.iter().map(|r| r.norm() - 1.0).collect();
    let uncertain = deviations
        .iter()
        .any(|d| d.abs() > tol_inner && d.abs() <= tol_outer);
    let off = deviations.iter().any(|d| d.abs() > tol_outer);
    let class = if uncertain {
        RootClass::Uncertain
    } else if off {
        RootClass::OffT
    } else if mult.iter().any(|&m| m > 1) {
        RootClass::OnTWithMultiple
    } else {
        RootClass::AllSimpleOnT
    };
    Ok(RootReport {
        roots: roots.iter().map(|r| (r.re, r.im)).collect(),
        deviations,
        multiplicities: mult.to_vec(),
        class,
    })
}
