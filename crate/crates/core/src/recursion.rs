//! Inductive route: the matrices `P_k(m)`, `Q_k`, the closed form of
//! `P_k(m)^-1 Q_k`, and the vector recursion producing the gamma chain.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::embedding::{embed_omega, embed_simple, CoeffVector, LogScale, SymbolVector};
use crate::error::{Error, Result};
use crate::exact::{int, rat, RatMatrix, Rational};

/// Rows of `V_k^+` (`plus`) or `V_k^-`: row 1 is `e_1`, row `i >= 2` is
/// `e_i ± e_{k+3-i}` (just `e_i` when the two coincide).
fn v_rows(k: usize, plus: bool) -> Vec<Vec<Rational>> {
    let count = match (k % 2 == 1, plus) {
        (true, true) => (k + 3) / 2,
        (true, false) => (k + 1) / 2,
        (false, _) => (k + 2) / 2,
    };
    (1..=count)
        .map(|i| {
            let mut row = vec![Rational::zero(); k + 1];
            row[i - 1] = int(1);
            if i >= 2 {
                let j = k + 3 - i;
                if j != i {
                    row[j - 1] += if plus { int(1) } else { int(-1) };
                }
            }
            row
        })
        .collect()
}

/// `P_k(m)`, square of size `2k+2`.
pub fn build_pk(k: usize, m: &Rational) -> RatMatrix {
    let size = 2 * k + 2;
    let vp = v_rows(k, true);
    let vm = v_rows(k, false);
    let mut a = RatMatrix::zeros(size, size);
    for (i, row) in vp.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            a[(i, j)] = x.clone();
        }
    }
    let off = vp.len();
    for (i, row) in vm.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            a[(off + i, k + 1 + j)] = x.clone();
        }
    }
    let off = off + vm.len();
    for r in 0..k {
        a[(off + r, 1 + r)] = int(1);
        a[(off + r, k + 2 + r)] = -m.clone();
    }
    a
}

/// `Q_k`, of shape `(2k+2) x (2k+4)`.
pub fn build_qk(k: usize) -> RatMatrix {
    let vp = v_rows(k, true);
    let vm = v_rows(k, false);
    let mut a = RatMatrix::zeros(2 * k + 2, 2 * k + 4);
    for (i, row) in vp.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            a[(i, j)] = x.clone();
        }
    }
    a[(0, k + 1)] = int(1);
    let off = vp.len();
    for (i, row) in vm.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            a[(off + i, k + 2 + j)] = x.clone();
        }
    }
    a[(off, 2 * k + 3)] = int(-1);
    a
}

/// Closed form of `det P_k(m)`.
pub fn det_pk_closed_form(k: usize, m: &Rational) -> Rational {
    if k == 0 {
        return int(1);
    }
    let j = k / 2;
    let (eps, e) = if k % 2 == 1 {
        (if matches!(j % 4, 2 | 3) { 1 } else { -1 }, j + 1)
    } else {
        (if matches!(j % 4, 0 | 1) { 1 } else { -1 }, j)
    };
    int(eps) * num_traits::pow(int(2), j) * num_traits::pow(m.clone(), e)
}

/// `P_k(m)^-1 Q_k` assembled from its block formula.
pub fn pinv_times_q(k: usize, m: &Rational) -> Result<RatMatrix> {
    if m.is_zero() {
        return Err(Error::Singular { k });
    }
    let h = k + 1;
    let w = k + 2;
    let half = rat(1, 2);
    let inv2m = (int(2) * m).recip();
    let mut a = RatMatrix::zeros(2 * k + 2, 2 * k + 4);
    a[(0, 0)] += int(1);
    a[(0, w - 1)] += int(1);
    a[(h, w)] += int(1);
    a[(h, 2 * w - 1)] -= int(1);
    for i in 2..=h {
        let j = k + 3 - i;
        a[(i - 1, i - 1)] += &half;
        a[(i - 1, j - 1)] += &half;
        a[(i - 1, w + i - 1)] += m * &half;
        a[(i - 1, w + j - 1)] -= m * &half;
        a[(h + i - 1, i - 1)] += &inv2m;
        a[(h + i - 1, j - 1)] += &inv2m;
        a[(h + i - 1, w + i - 1)] += &half;
        a[(h + i - 1, w + j - 1)] -= &half;
    }
    Ok(a)
}

/// `pinv_times_q(k, m) * v` without forming the matrix.
pub fn apply_pinv_q(k: usize, m: &Rational, v: &[Rational]) -> Result<Vec<Rational>> {
    if m.is_zero() {
        return Err(Error::Singular { k });
    }
    if v.len() != 2 * k + 4 {
        return Err(Error::Dimension(format!(
            "level vector has length {}, expected {}",
            v.len(),
            2 * k + 4
        )));
    }
    let h = k + 1;
    let w = k + 2;
    let two = int(2);
    let twom = &two * m;
    let mut out = vec![Rational::zero(); 2 * k + 2];
    out[0] = &v[0] + &v[w - 1];
    out[h] = &v[w] - &v[2 * w - 1];
    for i in 2..=h {
        let j = k + 3 - i;
        let s = &v[i - 1] + &v[j - 1];
        let d = &v[w + i - 1] - &v[w + j - 1];
        out[i - 1] = (&s + m * &d) / &two;
        out[h + i - 1] = &s / &twom + &d / &two;
    }
    Ok(out)
}

/// Level-`n` vector of the recursion; length `4g - 2n + 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaVector {
    pub level: usize,
    #[serde(with = "crate::exact::serde_rational::vec")]
    pub entries: Vec<Rational>,
}

/// `(C_{-g}, ..., C_g, C_{-g}, ..., C_g)`.
pub fn omega0(c: &SymbolVector) -> OmegaVector {
    let a = c.ascending();
    let mut entries = a.clone();
    entries.extend(a);
    OmegaVector { level: 0, entries }
}

/// Initial vector for the omega criterion at `t > 1`.
pub fn omega0_omega(c: &CoeffVector, t: &Rational) -> Result<OmegaVector> {
    Ok(omega0(&embed_omega(c, t)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaChain {
    #[serde(with = "crate::exact::serde_rational::vec")]
    pub gammas: Vec<Rational>,
    /// Denominator used at each step.
    #[serde(with = "crate::exact::serde_rational::vec")]
    pub denominators: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecursionOutcome {
    pub chain: GammaChain,
    /// First entry of the final length-2 vector; equals `sum_m C_m`.
    #[serde(with = "crate::exact::serde_rational")]
    pub terminal: Rational,
}

fn level_check(omega: &OmegaVector, g: usize) -> Result<()> {
    if omega.entries.len() != 4 * g + 2 - 2 * omega.level {
        return Err(Error::Dimension(format!(
            "level-{} vector has length {}, expected {}",
            omega.level,
            omega.entries.len(),
            4 * g + 2 - 2 * omega.level
        )));
    }
    Ok(())
}

/// Step ratio at level `n` (0-based): numerator and denominator.
fn step_ratio(v: &[Rational], g: usize, n: usize) -> (Rational, Rational) {
    let num = &v[0] + &v[2 * g - n];
    let den = &v[2 * g - n + 1] - &v[4 * g - 2 * n + 1];
    (num, den)
}

pub fn run_recursion(omega: &OmegaVector, g: usize) -> Result<RecursionOutcome> {
    if omega.level != 0 {
        return Err(Error::InvalidInput("recursion must start at level 0".into()));
    }
    level_check(omega, g)?;
    let mut v = omega.entries.clone();
    let mut gammas = Vec::with_capacity(2 * g);
    let mut denominators = Vec::with_capacity(2 * g);
    for n in 0..2 * g {
        let (num, den) = step_ratio(&v, g, n);
        if num.is_zero() || den.is_zero() {
            return Err(Error::RecursionBreakdown {
                level: n + 1,
                numerator: num,
                denominator: den,
            });
        }
        let gt = &num / &den;
        v = apply_pinv_q(2 * g - (n + 1), &gt, &v)?;
        gammas.push(gt);
        denominators.push(den);
    }
    Ok(RecursionOutcome {
        chain: GammaChain {
            gammas,
            denominators,
        },
        terminal: v[0].clone(),
    })
}

/// The chain read off the parameter-free rows: each step first applies the
/// block map with a placeholder parameter and takes the ratio of its first
/// and `(2g-n+1)`-th entries, which do not depend on the parameter.
pub fn run_recursion_placeholder(omega: &OmegaVector, g: usize) -> Result<GammaChain> {
    level_check(omega, g)?;
    let mut v = omega.entries.clone();
    let mut gammas = Vec::with_capacity(2 * g);
    let mut denominators = Vec::with_capacity(2 * g);
    for n in 0..2 * g {
        let k = 2 * g - (n + 1);
        let probe = apply_pinv_q(k, &int(1), &v)?;
        let (num, den) = (probe[0].clone(), probe[k + 1].clone());
        if num.is_zero() || den.is_zero() {
            return Err(Error::RecursionBreakdown {
                level: n + 1,
                numerator: num,
                denominator: den,
            });
        }
        let gt = &num / &den;
        v = apply_pinv_q(k, &gt, &v)?;
        gammas.push(gt);
        denominators.push(den);
    }
    Ok(GammaChain {
        gammas,
        denominators,
    })
}

/// `delta_n` from the chain; odd `n` carry `odd_factor`.
pub fn delta_from_gammas(chain: &GammaChain, odd_factor: &Rational) -> Result<Vec<Rational>> {
    let gm = &chain.gammas;
    if gm.iter().any(Zero::is_zero) {
        return Err(Error::InvalidInput("gamma chain contains a zero".into()));
    }
    let mut out = Vec::with_capacity(gm.len());
    let mut odd = odd_factor * &gm[0];
    let mut even = Rational::one();
    for n in 1..=gm.len() {
        if n % 2 == 1 {
            if n > 1 {
                odd *= &gm[n - 1] / &gm[n - 2];
            }
            out.push(odd.clone());
        } else {
            even *= &gm[n - 1] / &gm[n - 2];
            out.push(even.clone());
        }
    }
    Ok(out)
}

/// `delta_n(c)` through the recursion.
pub fn delta_recursive(c: &CoeffVector, l: &LogScale) -> Result<Vec<Rational>> {
    let s = embed_simple(c, l)?;
    let out = run_recursion(&omega0(&s), c.g())?;
    delta_from_gammas(&out.chain, &(int(c.g() as i64) * l.value()))
}

/// `delta_n(c; t)` through the recursion.
pub fn delta_recursive_omega(c: &CoeffVector, t: &Rational) -> Result<Vec<Rational>> {
    let out = run_recursion(&omega0_omega(c, t)?, c.g())?;
    delta_from_gammas(&out.chain, &crate::criterion::omega_odd_factor(c.g(), t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::Provenance;

    fn ints(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn small_p_and_q() {
        assert_eq!(build_pk(0, &int(7)), RatMatrix::identity(2));
        assert_eq!(build_qk(0), ints(&[&[1, 1, 0, 0], &[0, 0, 1, -1]]));
        assert_eq!(build_pk(1, &int(5)).det().unwrap(), int(-5));
        assert_eq!(build_pk(2, &int(3)).det().unwrap(), int(6));
        assert_eq!(build_pk(3, &int(2)).det().unwrap(), int(-8));
        let q = build_qk(4);
        assert_eq!((q.rows(), q.cols()), (10, 12));
    }

    #[test]
    fn block_formula_k1() {
        let m = pinv_times_q(1, &int(2)).unwrap();
        let h = rat(1, 2);
        let z = int(0);
        let o = int(1);
        let expected = RatMatrix::from_rows(vec![
            vec![o.clone(), z.clone(), o.clone(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), o.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), o.clone(), z.clone(), -o.clone()],
            vec![z.clone(), h, z.clone(), z.clone(), z.clone(), z],
        ])
        .unwrap();
        assert_eq!(m, expected);
        assert!(matches!(pinv_times_q(1, &int(0)), Err(Error::Singular { k: 1 })));
    }

    #[test]
    fn block_formula_inverts_p() {
        for k in 0..=6 {
            let m = rat(3 + k as i64, 5);
            let p = build_pk(k, &m);
            assert_eq!(p.mul(&pinv_times_q(k, &m).unwrap()).unwrap(), build_qk(k), "k={k}");
            assert_eq!(p.det().unwrap(), det_pk_closed_form(k, &m), "k={k}");
        }
    }

    #[test]
    fn sparse_apply_matches_matrix() {
        let k = 3;
        let m = rat(-7, 4);
        let v: Vec<Rational> = (0..2 * k + 4).map(|i| rat(i as i64 * 3 - 5, 2)).collect();
        let dense = pinv_times_q(k, &m).unwrap().mul_vec(&v).unwrap();
        assert_eq!(apply_pinv_q(k, &m, &v).unwrap(), dense);
    }

    #[test]
    fn g1_hand_example() {
        let c = SymbolVector::new(vec![int(-1), int(0), int(3)], Provenance::Direct).unwrap();
        let o = omega0(&c);
        assert_eq!(o.entries, vec![int(3), int(0), int(-1), int(3), int(0), int(-1)]);
        let out = run_recursion(&o, 1).unwrap();
        assert_eq!(out.chain.gammas, vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(out.terminal, int(2));
        assert_eq!(delta_from_gammas(&out.chain, &int(2)).unwrap(), vec![int(1), int(1)]);
        assert_eq!(run_recursion_placeholder(&o, 1).unwrap(), out.chain);
    }

    #[test]
    fn recursive_deltas_match_known_values() {
        let c = CoeffVector::from_ints(&[1, 1, 1]).unwrap();
        assert_eq!(
            delta_recursive(&c, &LogScale::default()).unwrap(),
            vec![int(1), rat(5, 3), int(2), int(5)]
        );
        let c = CoeffVector::from_ints(&[1, 2]).unwrap();
        assert_eq!(
            omega0_omega(&c, &int(2)).unwrap().entries,
            vec![int(2), int(2), rat(1, 2), int(2), int(2), rat(1, 2)]
        );
        assert_eq!(delta_recursive_omega(&c, &int(2)).unwrap(), vec![int(1), int(9)]);
    }
}
