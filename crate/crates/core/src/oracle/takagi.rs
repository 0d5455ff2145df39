use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{det_bareiss, RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TakagiChain {
    /// `det D_k` for `k = 1..n`.
    #[serde(with = "crate::exact::serde_rational::vec")]
    pub dets: Vec<Rational>,
    /// All roots strictly inside the unit circle.
    pub pass: bool,
}

/// Nested resultant determinants of `Q` and its reciprocal, coefficients in
/// descending order `a_0, ..., a_n`. `D_k` keeps rows and columns
/// `1..k` and `n+1..n+k` of the full `2n x 2n` matrix.
pub fn takagi_chain(a: &[Rational]) -> Result<TakagiChain> {
    if a.len() < 2 {
        return Err(Error::InvalidInput("polynomial must have degree >= 1".into()));
    }
    let n = a.len() - 1;
    let mut full = RatMatrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for j in 0..=n {
            full[(r, r + j)] = a[j].clone();
            full[(n + r, r + j)] = a[n - j].clone();
        }
    }
    let dets = (1..=n)
        .map(|k| {
            let idx: Vec<usize> = (0..k).chain(n..n + k).collect();
            let sub = RatMatrix::from_fn(2 * k, 2 * k, |i, j| full[(idx[i], idx[j])].clone());
            det_bareiss(&sub)
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = dets.iter().all(Signed::is_positive);
    Ok(TakagiChain { dets, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn linear_cases() {
        let inside = takagi_chain(&[int(1), rat(-1, 2)]).unwrap();
        assert_eq!(inside.dets, vec![rat(3, 4)]);
        assert!(inside.pass);
        assert!(!takagi_chain(&[int(1), int(-2)]).unwrap().pass);
    }

    #[test]
    fn g2_derivative_closed_forms() {
        // P' for c = (c0, c1, c2) = (3, 2, 5)
        let (c0, c1, c2) = (int(3), int(2), int(5));
        let dp = [int(4) * &c0, int(3) * &c1, int(2) * &c2, c1.clone()];
        let ch = takagi_chain(&dp).unwrap();
        let f1 = (int(4) * &c0 - &c1) * (int(4) * &c0 + &c1);
        let a = int(8) * &c0 * &c0 - int(2) * &c1 * &c1 + int(4) * &c0 * &c2;
        let b = int(8) * &c0 * &c0 + &c1 * &c1 - int(4) * &c0 * &c2;
        let d = (int(2) * &c0 + int(2) * &c1 + &c2) * (int(2) * &c0 - int(2) * &c1 + &c2);
        assert_eq!(ch.dets[0], f1);
        assert_eq!(ch.dets[1], int(4) * &a * &b);
        assert_eq!(ch.dets[2], int(16) * d * &b * &b);
    }
}
