//! Double-precision evaluation of `E(z) = sum_m C_m e^(imzL)`, its
//! reflection, the pair `(A, B)`, and the polynomial-side `A_q`.

use num_complex::Complex64;

use crate::embedding::{CoeffVector, LogScale, SymbolVector};
use crate::error::{Error, Result};
use crate::exact::to_f64;

/// Largest exponent magnitude accepted before `exp` gets close to overflow.
pub const MAX_EXPONENT: f64 = 700.0;

pub(crate) fn range_guard(z: Complex64, g: usize, l: f64) -> Result<()> {
    let e = z.im.abs() * g as f64 * l;
    if !e.is_finite() || e > MAX_EXPONENT || !z.re.is_finite() {
        return Err(Error::Range(format!("|Im z| g L = {e:.3e} exceeds {MAX_EXPONENT}")));
    }
    Ok(())
}

fn sum_exp(c: &SymbolVector, l: f64, z: Complex64, sign: f64) -> Complex64 {
    let g = c.g() as i64;
    (-g..=g)
        .map(|m| to_f64(c.get(m)) * (Complex64::i() * (sign * m as f64 * l) * z).exp())
        .sum()
}

pub fn eval_e(c: &SymbolVector, l: &LogScale, z: Complex64) -> Result<Complex64> {
    let lf = to_f64(l.value());
    range_guard(z, c.g(), lf)?;
    Ok(sum_exp(c, lf, z, 1.0))
}

/// `E#(z) = conj(E(conj z))`.
pub fn eval_e_sharp(c: &SymbolVector, l: &LogScale, z: Complex64) -> Result<Complex64> {
    let lf = to_f64(l.value());
    range_guard(z, c.g(), lf)?;
    Ok(sum_exp(c, lf, z, -1.0))
}

/// `A = (E + E#)/2`, `B = i(E - E#)/2`.
pub fn eval_a_b(c: &SymbolVector, l: &LogScale, z: Complex64) -> Result<(Complex64, Complex64)> {
    let e = eval_e(c, l, z)?;
    let es = eval_e_sharp(c, l, z)?;
    Ok(((e + es) / 2.0, Complex64::i() * (e - es) / 2.0))
}

/// `A_q(z) = q^(-giz) P(q^(iz))` with `q = e^L`.
pub fn eval_aq_from_poly(c: &CoeffVector, l: &LogScale, z: Complex64) -> Result<Complex64> {
    let lf = to_f64(l.value());
    range_guard(z, c.g(), lf)?;
    let g = c.g() as i64;
    // Paired terms c_k (x^(2g-k) + x^k) x^-g = 2 c_k cos((g-k) z L).
    Ok((0..=g)
        .map(|k| {
            let ck = to_f64(c.c(k as usize));
            let w = (g - k) as f64 * lf;
            if k == g {
                Complex64::new(ck, 0.0)
            } else {
                2.0 * ck * (z * w).cos()
            }
        })
        .sum())
}

/// `E_{q,omega}(z) = A_q(z + i omega)`.
pub fn eval_e_omega(c: &CoeffVector, l: &LogScale, omega: f64, z: Complex64) -> Result<Complex64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    eval_aq_from_poly(c, l, z + Complex64::new(0.0, omega))
}

/// `E_{q,omega}#(z) = conj(E_{q,omega}(conj z)) = A_q(z - i omega)` for real `c`.
pub fn eval_e_omega_sharp(
    c: &CoeffVector,
    l: &LogScale,
    omega: f64,
    z: Complex64,
) -> Result<Complex64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("omega must be positive, got {omega}")));
    }
    eval_aq_from_poly(c, l, z - Complex64::new(0.0, omega))
}
