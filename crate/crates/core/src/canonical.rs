//! Step Hamiltonian `H(a) = diag(1/gamma(a), gamma(a))` on `[1, q^g)`, the
//! solution `(A(a, z), B(a, z))` as a product of transfer matrices, the
//! reproducing kernel, and reconstruction of the polynomial from the steps.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::criterion::delta_simple;
use crate::embedding::{CoeffVector, LogScale};
use crate::error::{Error, Result};
use crate::exact::{int, pow_i, to_f64, ExtRational, Poly, Rational};
use crate::expoly::range_guard;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub n: usize,
    #[serde(with = "crate::exact::serde_rational")]
    pub gamma: Rational,
}

/// `gamma(a) = gamma_n` on `[q^((n-1)/2), q^(n/2))`, `n = 1..2g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepHamiltonian {
    pub g: usize,
    pub log_q: LogScale,
    pub steps: Vec<Step>,
    /// `E(0) = P(1)`, the right boundary value of `A`.
    #[serde(with = "crate::exact::serde_rational")]
    pub e0: Rational,
}

pub type Mat2 = [[Complex64; 2]; 2];

impl StepHamiltonian {
    pub fn new(log_q: LogScale, gammas: Vec<Rational>, e0: Rational) -> Result<Self> {
        if gammas.is_empty() || gammas.len() % 2 == 1 {
            return Err(Error::Dimension(format!(
                "need 2g gamma values, got {}",
                gammas.len()
            )));
        }
        if let Some(n) = gammas.iter().position(Zero::is_zero) {
            return Err(Error::InvalidInput(format!("gamma_{} is zero", n + 1)));
        }
        let g = gammas.len() / 2;
        log_q.check(g)?;
        Ok(StepHamiltonian {
            g,
            log_q,
            steps: gammas
                .into_iter()
                .enumerate()
                .map(|(i, gamma)| Step { n: i + 1, gamma })
                .collect(),
            e0,
        })
    }

    pub fn gammas(&self) -> Vec<Rational> {
        self.steps.iter().map(|s| s.gamma.clone()).collect()
    }

    /// Every step positive, i.e. `H(a)` positive definite throughout.
    pub fn is_positive(&self) -> bool {
        self.steps.iter().all(|s| s.gamma > Rational::zero())
    }

    fn l(&self) -> f64 {
        to_f64(self.log_q.value())
    }

    fn gamma_f(&self, n: usize) -> f64 {
        to_f64(&self.steps[n - 1].gamma)
    }

    fn check_point(&self, n: usize, s: f64) -> Result<()> {
        if n == 0 || n > 2 * self.g {
            return Err(Error::Range(format!("interval index must lie in 1..={}, got {n}", 2 * self.g)));
        }
        if !(0.0..1.0).contains(&s) {
            return Err(Error::Range(format!("fraction must lie in [0, 1), got {s}")));
        }
        Ok(())
    }
}

/// Built from `gamma_n = Delta_{n-1} Delta_n` at the given `log q`.
pub fn hamiltonian(c: &CoeffVector, l: &LogScale) -> Result<StepHamiltonian> {
    let rep = delta_simple(c, l)?;
    let mut prev = int(1);
    let mut gammas = Vec::with_capacity(2 * c.g());
    for r in &rep.records {
        match &r.capital_delta {
            ExtRational::Finite(d) if !d.is_zero() => {
                gammas.push(&prev * d);
                prev = d.clone();
            }
            other => {
                return Err(Error::NotConstructible {
                    n: r.n,
                    value: other.clone(),
                })
            }
        }
    }
    StepHamiltonian::new(l.clone(), gammas, c.p_at_one())
}

fn factor(theta: Complex64, gamma: f64) -> Mat2 {
    let (c, s) = (theta.cos(), theta.sin());
    [[c, -gamma * s], [s / gamma, c]]
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn det2(m: &Mat2) -> Complex64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Transfer matrix from the right end `q^g` to the point
/// `a = q^((n-1+s)/2)`: a partial factor on interval `n` followed by full
/// half-steps on intervals `n+1..2g`.
pub fn transfer_product(h: &StepHamiltonian, n: usize, s: f64, z: Complex64) -> Result<Mat2> {
    h.check_point(n, s)?;
    let l = h.l();
    range_guard(z, h.g, l)?;
    let mut m = factor(z * (l * (1.0 - s) / 2.0), h.gamma_f(n));
    for k in n + 1..=2 * h.g {
        m = mat_mul(&m, &factor(z * (l / 2.0), h.gamma_f(k)));
    }
    Ok(m)
}

/// `(A(a, z), B(a, z))`.
pub fn eval_ab(h: &StepHamiltonian, z: Complex64, n: usize, s: f64) -> Result<(Complex64, Complex64)> {
    let m = transfer_product(h, n, s, z)?;
    let e0 = to_f64(&h.e0);
    Ok((m[0][0] * e0, m[1][0] * e0))
}

/// `K(a; z, w) = (conj A(w) B(z) - conj B(w) A(z)) / (pi (z - conj w))`.
pub fn kernel_k(h: &StepHamiltonian, n: usize, s: f64, z: Complex64, w: Complex64) -> Result<Complex64> {
    let d = z - w.conj();
    if d.norm() <= f64::EPSILON * (1.0 + z.norm()) {
        return Err(Error::Pole);
    }
    let (az, bz) = eval_ab(h, z, n, s)?;
    let (aw, bw) = eval_ab(h, w, n, s)?;
    Ok((aw.conj() * bz - bw.conj() * az) / (PI * d))
}

/// Central-difference residual of `-a d/da (A, B) = z (-gamma B, A / gamma)`
/// at `a = q^((n-1+s)/2)`, step `h` in the fraction `s`.
pub fn ode_residual(
    ham: &StepHamiltonian,
    z: Complex64,
    n: usize,
    s: f64,
    h: f64,
) -> Result<(f64, f64)> {
    if !(h > 0.0) || s - h < 0.0 || s + h > 1.0 {
        return Err(Error::Stencil(format!(
            "s = {s} with step {h} leaves interval {n}"
        )));
    }
    ham.check_point(n, s)?;
    let at = |u: f64| -> Result<(Complex64, Complex64)> {
        if u < 1.0 {
            eval_ab(ham, z, n, u)
        } else {
            // right end of interval n, reached from inside it
            let m = transfer_product(ham, n, 0.0, z)?;
            let back = factor(z * (ham.l() / 2.0), ham.gamma_f(n));
            let inv = [[back[1][1], -back[0][1]], [-back[1][0], back[0][0]]];
            let m = mat_mul(&inv, &m);
            let e0 = to_f64(&ham.e0);
            Ok((m[0][0] * e0, m[1][0] * e0))
        }
    };
    let (a0, b0) = at(s)?;
    let (ap, bp) = at(s + h)?;
    let (am, bm) = at(s - h)?;
    // d/d(log a) = (2/L) d/ds
    let k = 2.0 / ham.l() / (2.0 * h);
    let da = (ap - am) * k;
    let db = (bp - bm) * k;
    let gamma = ham.gamma_f(n);
    let ra = -da - z * (-gamma * b0);
    let rb = -db - z * (a0 / gamma);
    Ok((ra.norm(), rb.norm()))
}

/// Gaussian-integer style pair `re + i im` over `Q[x]`.
#[derive(Clone)]
struct GPoly {
    re: Poly,
    im: Poly,
}

impl GPoly {
    fn mul(&self, o: &GPoly) -> GPoly {
        GPoly {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    fn add(&self, o: &GPoly) -> GPoly {
        GPoly {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

/// `P(1)/2^(2g) [1 0] prod_n [[x+1, i g_n (x-1)], [-i/g_n (x-1), x+1]] [1; 0]`,
/// computed exactly.
pub fn reconstruct_polynomial(gammas: &[Rational], p1: &Rational) -> Result<CoeffVector> {
    if gammas.is_empty() || gammas.len() % 2 == 1 {
        return Err(Error::Dimension(format!("need 2g gamma values, got {}", gammas.len())));
    }
    if let Some(n) = gammas.iter().position(Zero::is_zero) {
        return Err(Error::InvalidInput(format!("gamma_{} is zero; factor is singular", n + 1)));
    }
    let xp1 = Poly::from_ints(&[1, 1]);
    let xm1 = Poly::from_ints(&[-1, 1]);
    let real = |p: Poly| GPoly { re: p, im: Poly::zero() };
    let imag = |p: Poly| GPoly { re: Poly::zero(), im: p };
    let mut row = [real(Poly::one()), real(Poly::zero())];
    for g in gammas {
        let f01 = imag(xm1.scale(g));
        let f10 = imag(xm1.scale(&-g.recip()));
        let diag = real(xp1.clone());
        row = [
            row[0].mul(&diag).add(&row[1].mul(&f10)),
            row[0].mul(&f01).add(&row[1].mul(&diag)),
        ];
    }
    let [first, _] = row;
    if !first.im.is_zero() {
        return Err(Error::Internal("imaginary part survived the product".into()));
    }
    let scale = p1 * pow_i(&int(2), -(gammas.len() as i64));
    let p = first.re.scale(&scale);
    let coeffs: Vec<Rational> = (0..=gammas.len()).map(|k| p.coeff(k)).collect();
    CoeffVector::from_palindrome(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn cv(c: &[i64]) -> CoeffVector {
        CoeffVector::from_ints(c).unwrap()
    }

    fn near(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol * (1.0 + b.norm())
    }

    #[test]
    fn g1_hamiltonian() {
        let h = hamiltonian(&cv(&[1, 0]), &LogScale::default()).unwrap();
        assert_eq!(h.gammas(), vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(h.e0, int(2));
        let h = hamiltonian(&cv(&[1, -3]), &LogScale::default()).unwrap();
        assert!(!h.is_positive());
        assert!(matches!(
            hamiltonian(&cv(&[1, 2]), &LogScale::default()),
            Err(Error::NotConstructible { n: 2, .. })
        ));
        assert!(hamiltonian(&cv(&[1, 1, 1]), &LogScale::default()).unwrap().is_positive());
    }

    #[test]
    fn g1_solution_closed_form() {
        let h = hamiltonian(&cv(&[1, 0]), &LogScale::default()).unwrap();
        for z in [Complex64::new(0.3, 0.2), Complex64::new(-1.0, 0.0)] {
            let (a, b) = eval_ab(&h, z, 1, 0.0).unwrap();
            assert!(near(a, 2.0 * (2.0 * z).cos(), 1e-12));
            assert!(near(b, 4.0 * (2.0 * z).sin(), 1e-12));
        }
        let (a, b) = eval_ab(&h, Complex64::new(0.0, 0.0), 2, 0.5).unwrap();
        assert!(near(a, 2.0.into(), 1e-15) && near(b, 0.0.into(), 1e-15));
        let (a, _) = eval_ab(&h, Complex64::new(PI / 4.0, 0.0), 1, 0.0).unwrap();
        assert!(a.norm() < 1e-12);
    }

    #[test]
    fn unit_determinant_and_terminal_value() {
        let h = hamiltonian(&cv(&[3, 1, 2]), &LogScale::default()).unwrap();
        let z = Complex64::new(1.7, -0.6);
        let m = transfer_product(&h, 2, 0.3, z).unwrap();
        assert!((det2(&m) - 1.0).norm() < 1e-12);
        let (a, b) = eval_ab(&h, z, 4, 1.0 - 1e-12).unwrap();
        assert!(near(a, 10.0.into(), 1e-9) && b.norm() < 1e-9);
    }

    #[test]
    fn kernel_is_positive_and_hermitian() {
        let h = hamiltonian(&cv(&[1, 1, 1]), &LogScale::default()).unwrap();
        let z = Complex64::new(0.4, 1.0);
        let w = Complex64::new(-0.2, 0.5);
        let k = kernel_k(&h, 2, 0.5, z, z).unwrap();
        assert!(k.re > 0.0 && k.im.abs() < 1e-12 * k.re);
        let kzw = kernel_k(&h, 2, 0.5, z, w).unwrap();
        let kwz = kernel_k(&h, 2, 0.5, w, z).unwrap();
        assert!(near(kzw, kwz.conj(), 1e-12));
        assert!(matches!(kernel_k(&h, 1, 0.0, z, z.conj()), Err(Error::Pole)));
    }

    #[test]
    fn ode_residual_is_second_order() {
        let h = hamiltonian(&cv(&[2, 1, 1]), &LogScale::default()).unwrap();
        let z = Complex64::new(0.7, 0.3);
        assert_eq!(ode_residual(&h, Complex64::new(0.0, 0.0), 2, 0.5, 0.1).unwrap(), (0.0, 0.0));
        let (a1, b1) = ode_residual(&h, z, 2, 0.5, 1e-2).unwrap();
        let (a2, b2) = ode_residual(&h, z, 2, 0.5, 5e-3).unwrap();
        let r1 = a1.max(b1);
        let r2 = a2.max(b2);
        assert!((r1 / r2 - 4.0).abs() < 0.1, "{r1} {r2}");
        assert!(ode_residual(&h, z, 2, 0.05, 0.1).is_err());
        let (a, b) = ode_residual(&h, z, 3, 0.999, 1e-3).unwrap();
        assert!(a.max(b) < 1e-4);
    }

    #[test]
    fn reconstruction_round_trip() {
        let c = reconstruct_polynomial(&[rat(1, 2), rat(1, 2)], &int(2)).unwrap();
        assert_eq!(c, cv(&[1, 0]));
        for coeffs in [&[1, 1, 1][..], &[1, 0, -1], &[2, 1, 3, 1]] {
            let c = cv(coeffs);
            let h = hamiltonian(&c, &LogScale::default()).unwrap();
            assert_eq!(reconstruct_polynomial(&h.gammas(), &h.e0).unwrap(), c);
            let doubled: Vec<_> = h.gammas().iter().map(|g| g * int(2)).collect();
            assert_eq!(reconstruct_polynomial(&doubled, &h.e0).unwrap(), c);
        }
        assert!(reconstruct_polynomial(&[int(1), int(0)], &int(1)).is_err());
    }
}
