//! Coefficient vectors of self-reciprocal polynomials and their embeddings
//! into exponential-polynomial symbol vectors.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, pow_i, LaurentPoly, Poly, Rational};

/// `(c_0, ..., c_g)` describing
/// `P(x) = sum_{k<g} c_k (x^(2g-k) + x^k) + c_g x^g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoeffVector {
    g: usize,
    #[serde(with = "crate::exact::serde_rational::vec")]
    c: Vec<Rational>,
}

impl CoeffVector {
    pub fn new(c: Vec<Rational>) -> Result<Self> {
        if c.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least two coefficients (g >= 1), got {}",
                c.len()
            )));
        }
        if c[0].is_zero() {
            return Err(Error::InvalidInput("c_0 must be nonzero".into()));
        }
        Ok(CoeffVector { g: c.len() - 1, c })
    }

    pub fn from_ints(c: &[i64]) -> Result<Self> {
        CoeffVector::new(c.iter().map(|&x| int(x)).collect())
    }

    /// Reads the half-vector off a full self-reciprocal coefficient list
    /// (ascending, even degree, palindromic).
    pub fn from_palindrome(full: &[Rational]) -> Result<Self> {
        let n = full.len();
        if n < 3 || n % 2 == 0 {
            return Err(Error::InvalidInput(format!(
                "expected an even-degree polynomial, got {} coefficients",
                n
            )));
        }
        if (0..n).any(|k| full[k] != full[n - 1 - k]) {
            return Err(Error::InvalidInput("polynomial is not self-reciprocal".into()));
        }
        CoeffVector::new(full[..=n / 2].to_vec())
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn c(&self, k: usize) -> &Rational {
        &self.c[k]
    }

    /// The degree-`2g` polynomial `P`, ascending coefficients.
    pub fn to_poly(&self) -> Poly {
        let g = self.g;
        Poly::new((0..=2 * g).map(|k| self.c[k.min(2 * g - k)].clone()).collect())
    }

    /// `P(1) = 2 sum_{k<g} c_k + c_g`.
    pub fn p_at_one(&self) -> Rational {
        let g = self.g;
        self.c[..g].iter().fold(self.c[g].clone(), |acc, x| acc + x * int(2))
    }
}

/// `L = log q` as an exact positive rational surrogate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LogScale {
    #[serde(with = "crate::exact::serde_rational")]
    l: Rational,
}

impl LogScale {
    /// Validates `L > 0` and `L != 1/m` for `1 <= m <= g`.
    pub fn new(l: Rational, g: usize) -> Result<Self> {
        let s = LogScale { l };
        s.check(g)?;
        Ok(s)
    }

    pub fn default_scale() -> Self {
        LogScale { l: int(2) }
    }

    pub fn value(&self) -> &Rational {
        &self.l
    }

    pub(crate) fn check(&self, g: usize) -> Result<()> {
        if !self.l.is_positive() {
            return Err(Error::Domain(format!("log q must be positive, got {}", self.l)));
        }
        let inv = self.l.recip();
        if inv.is_integer() && inv >= int(1) && inv <= int(g as i64) {
            return Err(Error::Domain(format!(
                "log q = {} makes C_m vanish at m = {}",
                self.l, inv
            )));
        }
        Ok(())
    }
}

impl Default for LogScale {
    fn default() -> Self {
        LogScale::default_scale()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    SimpleEmbedding {
        #[serde(with = "crate::exact::serde_rational")]
        log_q: Rational,
    },
    OmegaEmbedding {
        #[serde(with = "crate::exact::serde_rational::option")]
        t: Option<Rational>,
    },
    Direct,
}

/// `(C_g, ..., C_{-g})`, the coefficients of `sum_m C_m q^(imz)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolVector<T = Rational> {
    g: usize,
    entries: Vec<T>,
    provenance: Provenance,
}

impl<T: Clone + Zero> SymbolVector<T> {
    /// `entries` are ordered `C_g, C_{g-1}, ..., C_{-g}`.
    pub fn new(entries: Vec<T>, provenance: Provenance) -> Result<Self> {
        if entries.len() < 3 || entries.len() % 2 == 0 {
            return Err(Error::Dimension(format!(
                "symbol vector needs 2g+1 >= 3 entries, got {}",
                entries.len()
            )));
        }
        if entries[0].is_zero() || entries[entries.len() - 1].is_zero() {
            return Err(Error::InvalidInput("C_g and C_-g must be nonzero".into()));
        }
        Ok(SymbolVector {
            g: (entries.len() - 1) / 2,
            entries,
            provenance,
        })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// `C_m` for `-g <= m <= g`.
    pub fn get(&self, m: i64) -> &T {
        let g = self.g as i64;
        assert!((-g..=g).contains(&m), "index {m} outside -{g}..{g}");
        &self.entries[(g - m) as usize]
    }

    /// Entries in storage order `C_g, ..., C_{-g}`.
    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    /// Entries in ascending index order `C_{-g}, ..., C_g`.
    pub fn ascending(&self) -> Vec<T> {
        self.entries.iter().rev().cloned().collect()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn sum(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, x| acc + x.clone())
    }
}

impl SymbolVector<LaurentPoly> {
    pub fn eval(&self, t: &Rational) -> SymbolVector<Rational> {
        SymbolVector {
            g: self.g,
            entries: self.entries.iter().map(|p| p.eval(t)).collect(),
            provenance: Provenance::OmegaEmbedding { t: Some(t.clone()) },
        }
    }
}

/// `C_m = c_{g-m}(1 - mL)`, `C_{-m} = c_{g-m}(1 + mL)`.
pub fn embed_simple(c: &CoeffVector, l: &LogScale) -> Result<SymbolVector> {
    l.check(c.g())?;
    let g = c.g() as i64;
    let lv = l.value();
    let entries = (-g..=g)
        .rev()
        .map(|m| c.c((g - m.abs()) as usize) * (Rational::one() - int(m) * lv))
        .collect();
    SymbolVector::new(
        entries,
        Provenance::SimpleEmbedding { log_q: lv.clone() },
    )
}

/// `C_m = c_{g-m} t^(-m)`, `C_{-m} = c_{g-m} t^m`, for `t > 1`.
pub fn embed_omega(c: &CoeffVector, t: &Rational) -> Result<SymbolVector> {
    if *t <= int(1) {
        return Err(Error::Domain(format!("t must exceed 1, got {t}")));
    }
    let g = c.g() as i64;
    let entries = (-g..=g)
        .rev()
        .map(|m| c.c((g - m.abs()) as usize) * pow_i(t, -m))
        .collect();
    SymbolVector::new(entries, Provenance::OmegaEmbedding { t: Some(t.clone()) })
}

/// [`embed_omega`] with `t` kept as the Laurent indeterminate.
pub fn embed_omega_symbolic(c: &CoeffVector) -> SymbolVector<LaurentPoly> {
    let g = c.g() as i64;
    let entries = (-g..=g)
        .rev()
        .map(|m| LaurentPoly::monomial(c.c((g - m.abs()) as usize).clone(), -m))
        .collect();
    SymbolVector {
        g: c.g(),
        entries,
        provenance: Provenance::OmegaEmbedding { t: None },
    }
}
