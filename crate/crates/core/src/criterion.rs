//! Determinant route: the banded Toeplitz matrices `E^+`, `E^-`, the
//! antidiagonal `J_n`, the ratios `Delta_n`, `gamma_n`, `delta_n`, and the
//! verdicts built on them.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::embedding::{embed_omega, embed_simple, CoeffVector, LogScale, Provenance, SymbolVector};
use crate::error::{Error, Result};
use crate::exact::{
    det_bareiss, int, laurent_det, pow_i, rat, ExtRational, LaurentPoly, Matrix, Rational, Ring,
};

/// Rings with an exact determinant.
pub trait Determinant: Ring {
    fn det(m: &Matrix<Self>) -> Result<Self>;
}

impl Determinant for Rational {
    fn det(m: &Matrix<Self>) -> Result<Self> {
        det_bareiss(m)
    }
}

impl Determinant for LaurentPoly {
    fn det(m: &Matrix<Self>) -> Result<Self> {
        laurent_det(m)
    }
}

/// `E^+[i][j] = C_{-g+(i-j)}`, `E^-[i][j] = C_{g-(i-j)}` for `i >= j`.
pub fn build_e_plus_minus<T: Ring>(c: &SymbolVector<T>) -> (Matrix<T>, Matrix<T>) {
    let g = c.g() as i64;
    let n = 2 * c.g() + 1;
    let plus = Matrix::from_fn(n, n, |i, j| {
        if i >= j {
            c.get(-g + (i - j) as i64).clone()
        } else {
            T::zero()
        }
    });
    let minus = Matrix::from_fn(n, n, |i, j| {
        if i >= j {
            c.get(g - (i - j) as i64).clone()
        } else {
            T::zero()
        }
    });
    (plus, minus)
}

/// Size-`size` matrix carrying the `n x n` antidiagonal in its top-left corner.
pub fn build_jn<T: Ring>(n: usize, size: usize) -> Result<Matrix<T>> {
    if n == 0 || n >= size {
        return Err(Error::Range(format!("J_n needs 1 <= n <= {}, got {n}", size.saturating_sub(1))));
    }
    Ok(Matrix::from_fn(size, size, |i, j| {
        if i < n && j < n && i + j == n - 1 {
            T::one()
        } else {
            T::zero()
        }
    }))
}

/// `E^- J_n` without the multiplication: column `j < n` is column `n-1-j`.
fn apply_jn<T: Ring>(minus: &Matrix<T>, n: usize) -> Matrix<T> {
    let size = minus.rows();
    Matrix::from_fn(size, size, |i, j| {
        if j < n {
            minus[(i, n - 1 - j)].clone()
        } else {
            T::zero()
        }
    })
}

fn check_n(g: usize, n: usize) -> Result<()> {
    if n == 0 || n > 2 * g {
        return Err(Error::Range(format!("n must lie in 1..={}, got {n}", 2 * g)));
    }
    Ok(())
}

/// `(det(E^+ + E^- J_n), det(E^+ - E^- J_n))`.
pub fn det_pair<T: Determinant>(c: &SymbolVector<T>, n: usize) -> Result<(T, T)> {
    check_n(c.g(), n)?;
    let (plus, minus) = build_e_plus_minus(c);
    let mj = apply_jn(&minus, n);
    Ok((T::det(&plus.add(&mj)?)?, T::det(&plus.sub(&mj)?)?))
}

/// Same pair via the block reduction: both matrices are block lower
/// triangular, so each determinant is `C_{-g}^(2g+1-n)` times the
/// determinant of its leading `n x n` block.
pub fn det_pair_reduced<T: Determinant>(c: &SymbolVector<T>, n: usize) -> Result<(T, T)> {
    check_n(c.g(), n)?;
    let (plus, minus) = build_e_plus_minus(c);
    let mj = apply_jn(&minus, n);
    let bp = plus.add(&mj)?.leading_block(n);
    let bm = plus.sub(&mj)?.leading_block(n);
    let mut scale = T::one();
    for _ in 0..(2 * c.g() + 1 - n) {
        scale = scale * c.get(-(c.g() as i64)).clone();
    }
    Ok((T::det(&bp)? * scale.clone(), T::det(&bm)? * scale))
}

pub fn capital_delta(c: &SymbolVector, n: usize) -> Result<ExtRational> {
    let (p, m) = det_pair(c, n)?;
    Ok(ExtRational::ratio(&p, &m))
}

/// `gamma_n = Delta_{n-1} Delta_n` with `Delta_0 = 1`.
pub fn gamma_from_delta(c: &SymbolVector, n: usize) -> Result<ExtRational> {
    let d = capital_delta(c, n)?;
    if n == 1 {
        return Ok(d);
    }
    Ok(capital_delta(c, n - 1)?.mul(&d))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaRecord {
    pub n: usize,
    #[serde(with = "crate::exact::serde_rational")]
    pub det_plus: Rational,
    #[serde(with = "crate::exact::serde_rational")]
    pub det_minus: Rational,
    pub capital_delta: ExtRational,
    pub delta: ExtRational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaReport {
    pub g: usize,
    pub provenance: Provenance,
    pub records: Vec<DeltaRecord>,
}

impl DeltaReport {
    pub fn deltas(&self) -> Vec<ExtRational> {
        self.records.iter().map(|r| r.delta.clone()).collect()
    }

    pub fn capital_deltas(&self) -> Vec<ExtRational> {
        self.records.iter().map(|r| r.capital_delta.clone()).collect()
    }

    /// `gamma_n = Delta_{n-1} Delta_n`.
    pub fn gammas(&self) -> Vec<ExtRational> {
        let mut prev = ExtRational::Finite(int(1));
        self.records
            .iter()
            .map(|r| {
                let gm = prev.mul(&r.capital_delta);
                prev = r.capital_delta.clone();
                gm
            })
            .collect()
    }

    /// Which of `det_plus`, `det_minus` vanish, per `n`.
    pub fn zero_pattern(&self) -> Vec<(bool, bool)> {
        self.records
            .iter()
            .map(|r| (r.det_plus.is_zero(), r.det_minus.is_zero()))
            .collect()
    }

    /// First `n` whose `delta_n` is not in `(0, inf)`.
    pub fn first_failure(&self) -> Option<&DeltaRecord> {
        self.records.iter().find(|r| !r.delta.is_positive_finite())
    }
}

fn report(c: &SymbolVector, odd_factor: &Rational) -> Result<DeltaReport> {
    let records = (1..=2 * c.g())
        .map(|n| {
            let (p, m) = det_pair(c, n)?;
            let cd = ExtRational::ratio(&p, &m);
            let delta = if n % 2 == 1 { cd.scale(odd_factor) } else { cd.clone() };
            Ok(DeltaRecord {
                n,
                det_plus: p,
                det_minus: m,
                capital_delta: cd,
                delta,
            })
        })
        .collect::<Result<_>>()?;
    Ok(DeltaReport {
        g: c.g(),
        provenance: c.provenance().clone(),
        records,
    })
}

/// `delta_n(c)`: `Delta_n` under the simple embedding, odd `n` scaled by `gL`.
pub fn delta_simple(c: &CoeffVector, l: &LogScale) -> Result<DeltaReport> {
    let s = embed_simple(c, l)?;
    report(&s, &(int(c.g() as i64) * l.value()))
}

/// `(t^g - t^-g) / (t^g + t^-g)`.
pub fn omega_odd_factor(g: usize, t: &Rational) -> Rational {
    let a = pow_i(t, g as i64);
    let b = pow_i(t, -(g as i64));
    (&a - &b) / (&a + &b)
}

/// `delta_n(c; t)` under the omega embedding at a sample `t > 1`.
pub fn delta_omega(c: &CoeffVector, t: &Rational) -> Result<DeltaReport> {
    let s = embed_omega(c, t)?;
    report(&s, &omega_odd_factor(c.g(), t))
}

/// `0 < Delta_n < inf` for every `n`.
pub fn hb_check(c: &SymbolVector) -> Result<bool> {
    for n in 1..=2 * c.g() {
        if !capital_delta(c, n)?.is_positive_finite() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `{1 + 2^-k : k = 1..10} ∪ {2, 4}`, ascending.
pub fn default_grid() -> Vec<Rational> {
    let mut grid: Vec<Rational> = (1..=10).rev().map(|k| int(1) + rat(1, 1 << k)).collect();
    grid.push(int(2));
    grid.push(int(4));
    grid
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictClass {
    SimpleOnCircle,
    OnCircleNotSimple,
    OffCircle,
    /// The simple-roots test failed; on/off the circle is still open.
    NotSimpleOnCircle,
    /// Every grid sample passed; not a certificate.
    ConsistentWithOnCircle,
    Degenerate,
}

impl VerdictClass {
    /// CLI exit status for this class.
    pub fn exit_code(self) -> i32 {
        match self {
            VerdictClass::SimpleOnCircle | VerdictClass::OnCircleNotSimple => 0,
            VerdictClass::OffCircle | VerdictClass::NotSimpleOnCircle => 1,
            VerdictClass::ConsistentWithOnCircle | VerdictClass::Degenerate => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub n: usize,
    #[serde(with = "crate::exact::serde_rational::option")]
    pub t: Option<Rational>,
    pub value: ExtRational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub class: VerdictClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub witness: Option<Witness>,
    pub certified: bool,
    pub reports: Vec<DeltaReport>,
}

/// Simple-roots-on-the-circle test at the default `log q`.
pub fn verdict_simple(c: &CoeffVector) -> Result<Verdict> {
    verdict_simple_with(c, &LogScale::default())
}

pub fn verdict_simple_with(c: &CoeffVector, l: &LogScale) -> Result<Verdict> {
    let rep = delta_simple(c, l)?;
    let (class, reason, witness) = match rep.first_failure() {
        None => (VerdictClass::SimpleOnCircle, None, None),
        Some(r) => {
            let w = Some(Witness {
                n: r.n,
                t: None,
                value: r.delta.clone(),
            });
            if r.delta.is_indeterminate() {
                let why = format!("delta_{} is 0/0", r.n);
                (VerdictClass::Degenerate, Some(why), w)
            } else {
                (VerdictClass::NotSimpleOnCircle, None, w)
            }
        }
    };
    Ok(Verdict {
        class,
        reason,
        witness,
        certified: true,
        reports: vec![rep],
    })
}

/// Necessary on-circle condition checked at each `t` of `grid`.
pub fn verdict_on_circle_sampled(c: &CoeffVector, grid: &[Rational]) -> Result<Verdict> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("empty t grid".into()));
    }
    if let Some(t) = grid.iter().find(|t| **t <= int(1)) {
        return Err(Error::Domain(format!("grid point {t} is not above 1")));
    }
    let reports: Vec<DeltaReport> = grid
        .par_iter()
        .map(|t| delta_omega(c, t))
        .collect::<Result<_>>()?;
    let witness = grid.iter().zip(&reports).find_map(|(t, rep)| {
        rep.first_failure().map(|r| Witness {
            n: r.n,
            t: Some(t.clone()),
            value: r.delta.clone(),
        })
    });
    let class = if witness.is_some() {
        VerdictClass::OffCircle
    } else {
        VerdictClass::ConsistentWithOnCircle
    };
    Ok(Verdict {
        class,
        reason: None,
        certified: witness.is_some(),
        witness,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::embed_omega_symbolic;

    fn cv(c: &[i64]) -> CoeffVector {
        CoeffVector::from_ints(c).unwrap()
    }

    fn sym(c: &[i64]) -> SymbolVector {
        SymbolVector::new(c.iter().map(|&x| int(x)).collect(), Provenance::Direct).unwrap()
    }

    fn fin(r: Rational) -> ExtRational {
        ExtRational::Finite(r)
    }

    #[test]
    fn e_plus_minus_for_g1() {
        let (p, m) = build_e_plus_minus(&sym(&[-1, 0, 3]));
        let ints = |rows: &[[i64; 3]; 3]| {
            Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
                .unwrap()
        };
        assert_eq!(p, ints(&[[3, 0, 0], [0, 3, 0], [-1, 0, 3]]));
        assert_eq!(m, ints(&[[-1, 0, 0], [0, -1, 0], [3, 0, -1]]));
    }

    #[test]
    fn jn_shapes() {
        let j: Matrix<Rational> = build_jn(2, 3).unwrap();
        assert_eq!(j[(0, 1)], int(1));
        assert_eq!(j[(1, 0)], int(1));
        assert_eq!(j[(2, 2)], int(0));
        assert!(build_jn::<Rational>(3, 3).is_err());
        assert!(build_jn::<Rational>(0, 3).is_err());
        let (_, m) = build_e_plus_minus(&sym(&[-1, 2, 3]));
        assert_eq!(m.mul(&j).unwrap(), apply_jn(&m, 2));
    }

    #[test]
    fn capital_delta_examples() {
        let c = sym(&[-1, 0, 3]);
        assert_eq!(capital_delta(&c, 1).unwrap(), fin(rat(1, 2)));
        assert_eq!(capital_delta(&c, 2).unwrap(), fin(int(1)));
        assert_eq!(det_pair(&c, 2).unwrap(), (int(24), int(24)));
        assert_eq!(capital_delta(&sym(&[-1, -3, 3]), 2).unwrap(), fin(rat(-1, 5)));
        assert_eq!(det_pair(&sym(&[-1, 2, 3]), 2).unwrap(), (int(48), int(0)));
        assert_eq!(capital_delta(&sym(&[-1, 2, 3]), 2).unwrap(), ExtRational::Infinity);
        assert_eq!(gamma_from_delta(&c, 2).unwrap(), fin(rat(1, 2)));
    }

    #[test]
    fn delta_simple_examples() {
        let l = LogScale::default();
        assert_eq!(delta_simple(&cv(&[1, 0]), &l).unwrap().deltas(), vec![fin(int(1)); 2]);
        let rep = delta_simple(&cv(&[1, 1, 1]), &l).unwrap();
        assert_eq!(
            rep.deltas(),
            vec![fin(int(1)), fin(rat(5, 3)), fin(int(2)), fin(int(5))]
        );
        assert_eq!(
            rep.gammas(),
            vec![fin(rat(1, 4)), fin(rat(5, 12)), fin(rat(5, 6)), fin(rat(5, 2))]
        );
        let rep = delta_simple(&cv(&[1, 0, 2]), &l).unwrap();
        assert_eq!(rep.records[2].delta, ExtRational::Infinity);
        assert_eq!(rep.records[3].delta, ExtRational::Indeterminate);
    }

    #[test]
    fn verdicts() {
        assert_eq!(verdict_simple(&cv(&[1, 0])).unwrap().class, VerdictClass::SimpleOnCircle);
        let v = verdict_simple(&cv(&[1, -3])).unwrap();
        assert_eq!(v.class, VerdictClass::NotSimpleOnCircle);
        assert_eq!(v.witness.unwrap().n, 2);
        let v = verdict_simple(&cv(&[1, 0, 2])).unwrap();
        assert_eq!(v.class, VerdictClass::NotSimpleOnCircle);
        assert_eq!(v.witness.unwrap().n, 3);
    }

    #[test]
    fn omega_examples() {
        let rep = delta_omega(&cv(&[1, 2]), &int(2)).unwrap();
        assert_eq!(rep.deltas(), vec![fin(int(1)), fin(int(9))]);
        assert_eq!(delta_omega(&cv(&[1, 0]), &rat(7, 5)).unwrap().deltas()[0], fin(int(1)));
        assert!(delta_omega(&cv(&[1, 0]), &int(1)).is_err());

        let grid = [rat(3, 2), int(2), int(4)];
        let v = verdict_on_circle_sampled(&cv(&[1, 2]), &grid).unwrap();
        assert_eq!(v.class, VerdictClass::ConsistentWithOnCircle);
        let v = verdict_on_circle_sampled(&cv(&[1, -3]), &default_grid()).unwrap();
        assert_eq!(v.class, VerdictClass::OffCircle);
        assert!(verdict_on_circle_sampled(&cv(&[1, 0]), &[]).is_err());
    }

    #[test]
    fn hb_examples() {
        assert!(hb_check(&sym(&[-1, 0, 3])).unwrap());
        assert!(!hb_check(&sym(&[-1, 2, 3])).unwrap());
        assert!(!hb_check(&sym(&[-1, -3, 3])).unwrap());
    }

    #[test]
    fn reduced_determinants_agree() {
        let s = embed_simple(&cv(&[3, -1, 4, 1]), &LogScale::default()).unwrap();
        for n in 1..=6 {
            assert_eq!(det_pair(&s, n).unwrap(), det_pair_reduced(&s, n).unwrap());
        }
        let s = embed_omega_symbolic(&cv(&[1, 2]));
        let (p, m) = det_pair(&s, 2).unwrap();
        assert_eq!(p.to_string(), "t^3 + 2t^2 - 2 - t^-1");
        assert_eq!(m.to_string(), "t^3 - 2t^2 + 2 - t^-1");
        assert_eq!((p, m), det_pair_reduced(&s, 2).unwrap());
    }

    #[test]
    fn default_grid_shape() {
        let g = default_grid();
        assert_eq!(g.len(), 12);
        assert_eq!(g[0], rat(1025, 1024));
        assert_eq!(g[11], int(4));
    }
}
