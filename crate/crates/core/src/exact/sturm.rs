use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use super::poly::Poly;
use super::zpoly::ZPoly;
use super::{int, Rational};
use crate::error::{Error, Result};

/// Sturm sequence of a squarefree polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    /// Builds the chain of the squarefree part of `p`. `p` must be nonzero.
    pub fn new(p: &Poly) -> Self {
        let p0 = ZPoly::from_poly(p).squarefree_part();
        let mut chain = vec![p0.to_poly()];
        let mut prev = p0.clone();
        let mut cur = p0.derivative().unsigned_primitive();
        while !cur.is_zero() {
            chain.push(cur.to_poly());
            let next = prev.sturm_next(&cur);
            prev = cur;
            cur = next;
        }
        SturmChain { chain }
    }

    pub fn base(&self) -> &Poly {
        &self.chain[0]
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_pos_infinity(&self) -> usize {
        Self::variations(self.chain.iter().map(Poly::sign_at_pos_infinity))
    }

    /// Distinct roots in the half-open interval `(a, b]`; `b = None` is +inf.
    pub fn count_half_open(&self, a: &Rational, b: Option<&Rational>) -> usize {
        let va = self.variations_at(a);
        let vb = match b {
            Some(b) => self.variations_at(b),
            None => self.variations_at_pos_infinity(),
        };
        va.saturating_sub(vb)
    }

    /// Distinct roots in the open interval `(a, b)`; `b = None` is +inf.
    pub fn count_open(&self, a: &Rational, b: Option<&Rational>) -> usize {
        let mut n = self.count_half_open(a, b);
        if let Some(b) = b {
            if self.base().eval(b).is_zero() && n > 0 {
                n -= 1;
            }
        }
        n
    }
}

/// Number of distinct real roots of the polynomial part of `p` (negative
/// exponents cleared) in the open interval `(lo, hi)`, `hi = None` meaning
/// `+inf`.
pub fn sturm_count(p: &LaurentPoly, lo: &Rational, hi: Option<&Rational>) -> Result<usize> {
    let poly = polynomial_part(p);
    if poly.is_zero() {
        return Err(Error::UndefinedCount);
    }
    if let Some(hi) = hi {
        if hi <= lo {
            return Ok(0);
        }
    }
    Ok(SturmChain::new(&poly).count_open(lo, hi))
}

fn polynomial_part(p: &LaurentPoly) -> Poly {
    let (low, body) = p.to_poly();
    if low > 0 {
        body.shift_up(low as usize)
    } else {
        body
    }
}

/// Upper bound on the absolute value of every real root (Cauchy).
fn cauchy_bound(p: &Poly) -> Rational {
    let lead = p.leading().unwrap().abs();
    let max = p
        .coeffs()
        .iter()
        .take(p.coeffs().len() - 1)
        .map(|c| c.abs() / &lead)
        .fold(Rational::zero(), |m, x| if x > m { x } else { m });
    max + Rational::one()
}

/// Isolates the distinct real roots of `p` in the open interval `(lo, hi)`.
///
/// Each returned pair `(a, b)` brackets exactly one root; `a == b` means the
/// root is the rational `a` itself. Brackets are refined until their width
/// is at most `width` (if given) and are returned in increasing order.
pub fn isolate_real_roots(
    p: &Poly,
    lo: &Rational,
    hi: Option<&Rational>,
    width: Option<&Rational>,
) -> Result<Vec<(Rational, Rational)>> {
    if p.is_zero() {
        return Err(Error::UndefinedCount);
    }
    let chain = SturmChain::new(p);
    let base = chain.base().clone();
    let upper = match hi {
        Some(h) => h.clone(),
        None => {
            let b = cauchy_bound(&base);
            if &b > lo {
                b + int(1)
            } else {
                lo + int(1)
            }
        }
    };
    if upper <= *lo {
        return Ok(Vec::new());
    }

    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), upper.clone())];
    let two = int(2);
    while let Some((a, b)) = stack.pop() {
        let n = chain.count_open(&a, Some(&b));
        if n == 0 {
            continue;
        }
        let narrow_enough = width.map_or(true, |w| &(&b - &a) <= w);
        if n == 1 && narrow_enough {
            out.push((a, b));
            continue;
        }
        let mid = (&a + &b) / &two;
        if base.eval(&mid).is_zero() {
            out.push((mid.clone(), mid.clone()));
        }
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn lp(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_poly(&Poly::from_ints(c))
    }

    #[test]
    fn single_root_above_one() {
        assert_eq!(sturm_count(&lp(&[-2, 1]), &int(1), None).unwrap(), 1);
    }

    #[test]
    fn no_real_roots() {
        assert_eq!(sturm_count(&lp(&[1, 0, 1]), &int(1), None).unwrap(), 0);
    }

    #[test]
    fn factored_quadratic_above_four() {
        // (t - 3)(t - 5)
        assert_eq!(sturm_count(&lp(&[15, -8, 1]), &int(4), None).unwrap(), 1);
        assert_eq!(sturm_count(&lp(&[15, -8, 1]), &int(1), None).unwrap(), 2);
        assert_eq!(sturm_count(&lp(&[15, -8, 1]), &int(1), Some(&int(5))).unwrap(), 1);
    }

    #[test]
    fn endpoints_are_excluded() {
        // (t - 1)^2 (t - 2)
        let p = &Poly::from_ints(&[1, -2, 1]) * &Poly::from_ints(&[-2, 1]);
        let p = LaurentPoly::from_poly(&p);
        assert_eq!(sturm_count(&p, &int(1), None).unwrap(), 1);
        assert_eq!(sturm_count(&p, &int(1), Some(&int(2))).unwrap(), 0);
        assert_eq!(sturm_count(&p, &rat(1, 2), Some(&int(3))).unwrap(), 2);
    }

    #[test]
    fn negative_exponents_are_cleared() {
        // t - 2 + t^-1 - ... : t^-1 (t^2 - 3t + 2) has roots 1 and 2
        let p = LaurentPoly::new(-1, vec![int(2), int(-3), int(1)]);
        assert_eq!(sturm_count(&p, &int(1), None).unwrap(), 1);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert_eq!(
            sturm_count(&LaurentPoly::zero(), &int(1), None).unwrap_err(),
            Error::UndefinedCount
        );
    }

    #[test]
    fn isolation_brackets_each_root() {
        // (t - 3/2)(t - 2)(t - 7)
        let p = &(&Poly::linear_root(&rat(3, 2)) * &Poly::linear_root(&int(2)))
            * &Poly::linear_root(&int(7));
        let roots = isolate_real_roots(&p, &int(1), None, Some(&rat(1, 64))).unwrap();
        assert_eq!(roots.len(), 3);
        for ((a, b), r) in roots.iter().zip([rat(3, 2), int(2), int(7)]) {
            assert!(a <= &r && &r <= b, "{a} {b} {r}");
            assert!(b - a <= rat(1, 64));
        }
    }
}
