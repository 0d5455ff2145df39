use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::poly::Poly;
use super::zpoly::ZPoly;
use super::{pow_i, Rational};
use crate::error::{Error, Result};

/// Laurent polynomial `sum_k coeffs[k] t^(low + k)` over the rationals.
///
/// Stored densely over a contiguous exponent window; both ends of the window
/// carry nonzero coefficients. The zero polynomial has an empty window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<Rational>,
}

pub type LaurentMatrix = Matrix<LaurentPoly>;

impl LaurentPoly {
    pub fn new(low: i64, coeffs: Vec<Rational>) -> Self {
        let Some(first) = coeffs.iter().position(|c| !c.is_zero()) else {
            return LaurentPoly::zero();
        };
        let last = coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        LaurentPoly {
            low: low + first as i64,
            coeffs: coeffs[first..=last].to_vec(),
        }
    }

    pub fn monomial(c: Rational, exponent: i64) -> Self {
        LaurentPoly::new(exponent, vec![c])
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn from_poly(p: &Poly) -> Self {
        LaurentPoly::new(0, p.coeffs().to_vec())
    }

    /// Lowest exponent carrying a nonzero coefficient (0 for zero).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent carrying a nonzero coefficient (`None` for zero).
    pub fn high(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, exponent: i64) -> Rational {
        let k = exponent - self.low;
        if k < 0 {
            return Rational::zero();
        }
        self.coeffs
            .get(k as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Splits as `t^low * p(t)` with `p(0) != 0`.
    pub fn to_poly(&self) -> (i64, Poly) {
        (self.low, Poly::new(self.coeffs.clone()))
    }

    /// The polynomial `t^N * self` with `N` chosen to clear every negative
    /// exponent and every common power of `t`.
    pub fn cleared(&self) -> Poly {
        self.to_poly().1
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        LaurentPoly::new(self.low, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn shift(&self, by: i64) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            low: self.low + by,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Evaluation at a nonzero rational.
    pub fn eval(&self, t: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        assert!(!t.is_zero(), "Laurent polynomial evaluated at zero");
        let body = self
            .coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c);
        body * pow_i(t, self.low)
    }

    /// Exact quotient in the Laurent ring, `None` if `d` does not divide.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (la, a) = self.to_poly();
        let (ld, dp) = d.to_poly();
        let q = a.exact_div(&dp)?;
        Some(LaurentPoly::new(la - ld, q.coeffs().to_vec()))
    }

    pub fn fmt_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + k as i64;
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if e == 0 || !mag.is_one() {
                if mag.is_integer() {
                    out.push_str(&mag.to_string());
                } else {
                    out.push_str(&format!("({mag})"));
                }
            }
            match e {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{e}")),
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_in("t"))
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }
}

fn combine(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    if b.is_zero() {
        return a.clone();
    }
    let low = a.low.min(b.low);
    let high = a.high().unwrap().max(b.high().unwrap());
    let mut v = vec![Rational::zero(); (high - low + 1) as usize];
    for (k, c) in a.coeffs.iter().enumerate() {
        v[(a.low - low) as usize + k] += c;
    }
    for (k, c) in b.coeffs.iter().enumerate() {
        let slot = &mut v[(b.low - low) as usize + k];
        if negate_b {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    LaurentPoly::new(low, v)
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        combine(self, rhs, false)
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        combine(self, rhs, true)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.low + rhs.low, v)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// Exact determinant over the Laurent ring `Q[t, 1/t]` by Bareiss
/// elimination; every division step is an exact ring division.
pub fn laurent_det(m: &LaurentMatrix) -> Result<LaurentPoly> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    // Clear each row to an integer polynomial, run fraction-free
    // elimination in Z[t], then undo the row scalings.
    use num_integer::Integer;
    let n = m.rows();
    let mut shift = 0i64;
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<ZPoly>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = m.row(i);
        let Some(low) = row.iter().filter(|e| !e.is_zero()).map(LaurentPoly::low).min() else {
            return Ok(LaurentPoly::zero());
        };
        let d = row
            .iter()
            .flat_map(|e| e.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        shift += low;
        scale *= &d;
        a.push(
            row.iter()
                .map(|e| {
                    if e.is_zero() {
                        return ZPoly::new(Vec::new());
                    }
                    let mut c = vec![BigInt::zero(); (e.low() - low) as usize];
                    c.extend(e.coeffs().iter().map(|x| x.numer() * (&d / x.denom())));
                    ZPoly::new(c)
                })
                .collect(),
        );
    }
    let mut negate = false;
    let mut prev = ZPoly::new(vec![BigInt::one()]);
    for k in 0..n {
        if a[k][k].is_zero() {
            let pivot = (k + 1..n)
                .filter(|&i| !a[i][k].is_zero())
                .min_by_key(|&i| a[i][k].0.len());
            match pivot {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Ok(LaurentPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.exact_div(&prev).ok_or_else(|| {
                    Error::Internal("Bareiss step is not an exact division".into())
                })?;
            }
            a[i][k] = ZPoly::new(Vec::new());
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let den = Rational::from_integer(if negate { -scale } else { scale });
    let det = LaurentPoly::new(
        shift,
        a[n - 1][n - 1].0.iter().map(|c| Rational::from_integer(c.clone()) / &den).collect(),
    );
    Ok(det)
}
