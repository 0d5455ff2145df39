//! Certified on-circle test: `delta_n(c; t)` as exact rational functions of
//! `t`, with sign and finiteness on `(1, inf)` settled by Sturm counts.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::criterion::{default_grid, delta_omega, det_pair_reduced};
use crate::embedding::{embed_omega_symbolic, CoeffVector};
use crate::error::Result;
use crate::exact::{
    int, rat, roots_above, LaurentPoly, Poly, Rational,
};

/// `delta_n(c; t)` for one `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicDelta {
    pub n: usize,
    /// `det(E^+ + E^- J_n)`, times `t^(2g) - 1` for odd `n`.
    pub raw_numerator: LaurentPoly,
    /// `det(E^+ - E^- J_n)`, times `t^(2g) + 1` for odd `n`.
    pub raw_denominator: LaurentPoly,
    /// Reduced form: coprime, integer coefficients, positive leading
    /// denominator coefficient.
    pub numerator: Poly,
    pub denominator: Poly,
}

impl SymbolicDelta {
    pub fn is_degenerate(&self) -> bool {
        self.raw_denominator.is_zero()
    }

    /// Value at a rational `t` via the reduced form; `None` at a pole.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.denominator.eval(t);
        (!d.is_zero()).then(|| self.numerator.eval(t) / d)
    }
}

fn reduce(num: &LaurentPoly, den: &LaurentPoly) -> (Poly, Poly) {
    if den.is_zero() {
        return (Poly::zero(), Poly::zero());
    }
    if num.is_zero() {
        return (Poly::zero(), Poly::one());
    }
    let (ln, pn) = num.to_poly();
    let (ld, pd) = den.to_poly();
    let (pn, pd) = if ln >= ld {
        (pn.shift_up((ln - ld) as usize), pd)
    } else {
        (pn, pd.shift_up((ld - ln) as usize))
    };
    let g = pn.gcd(&pd);
    let pn = pn.exact_div(&g).expect("gcd divides");
    let pd = pd.exact_div(&g).expect("gcd divides");
    // one common positive scale for both keeps the ratio exact
    let prim = pd.primitive();
    let k = prim.leading().unwrap() / pd.leading().unwrap();
    let (mut pn, mut pd) = (pn.scale(&k), prim);
    let content = joint_content(&pn, &pd);
    pn = pn.scale(&content.recip());
    pd = pd.scale(&content.recip());
    (pn, pd)
}

fn joint_content(a: &Poly, b: &Poly) -> Rational {
    use num_integer::Integer;
    let mut l = num_bigint::BigInt::one();
    for c in a.coeffs().iter().chain(b.coeffs()) {
        l = l.lcm(c.denom());
    }
    let mut g = num_bigint::BigInt::zero();
    for c in a.coeffs().iter().chain(b.coeffs()) {
        g = g.gcd(&(c.numer() * (&l / c.denom())));
    }
    Rational::new(g, l)
}

/// Raw numerator and denominator of `delta_n(c; t)` for `n = 1..2g`.
fn raw_deltas(c: &CoeffVector) -> Result<Vec<(usize, LaurentPoly, LaurentPoly)>> {
    let s = embed_omega_symbolic(c);
    let g = c.g() as i64;
    let t2g = LaurentPoly::monomial(int(1), 2 * g);
    let minus_one = &t2g - &LaurentPoly::one();
    let plus_one = &t2g + &LaurentPoly::one();
    (1..=2 * c.g())
        .into_par_iter()
        .map(|n| {
            let (mut p, mut m) = det_pair_reduced(&s, n)?;
            if n % 2 == 1 {
                p = &p * &minus_one;
                m = &m * &plus_one;
            }
            Ok((n, p, m))
        })
        .collect()
}

/// `delta_n(c; t)` for `n = 1..2g` with `t` symbolic.
pub fn symbolic_delta(c: &CoeffVector) -> Result<Vec<SymbolicDelta>> {
    Ok(raw_deltas(c)?
        .into_par_iter()
        .map(|(n, p, m)| {
            let (numerator, denominator) = reduce(&p, &m);
            SymbolicDelta {
                n,
                raw_numerator: p,
                raw_denominator: m,
                numerator,
                denominator,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CertOutcome {
    CertifiedOnT,
    /// Some `t` in `[lo, hi]` (inside `(1, inf)`) has `delta_n(c; t)` outside
    /// `(0, inf)`.
    CertifiedFail {
        n: usize,
        #[serde(with = "crate::exact::serde_rational")]
        lo: Rational,
        #[serde(with = "crate::exact::serde_rational")]
        hi: Rational,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertRecord {
    pub n: usize,
    /// Unreduced numerator and denominator, as counted; `None` when an
    /// exact probe failed first and nothing symbolic was computed.
    pub numerator: Option<String>,
    pub denominator: Option<String>,
    /// Distinct roots in `(1, inf)` of the unreduced numerator/denominator.
    pub numerator_roots: Option<usize>,
    pub denominator_roots: Option<usize>,
    pub sample_sign: i32,
}

impl CertRecord {
    fn unexamined(n: usize) -> Self {
        CertRecord {
            n,
            numerator: None,
            denominator: None,
            numerator_roots: None,
            denominator_roots: None,
            sample_sign: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignCertificate {
    #[serde(with = "crate::exact::serde_rational::option")]
    pub sample_point: Option<Rational>,
    pub records: Vec<CertRecord>,
    #[serde(flatten)]
    pub outcome: CertOutcome,
}

impl SignCertificate {
    pub fn is_on_circle(&self) -> bool {
        self.outcome == CertOutcome::CertifiedOnT
    }
}

fn sample_candidates() -> [Rational; 4] {
    [int(2), int(3), rat(5, 2), rat(7, 3)]
}

enum PerN {
    Pass,
    Fail(Rational, Rational),
    Inconclusive(String),
}

fn roots_above_one(p: &LaurentPoly) -> Vec<(Rational, Rational)> {
    let (low, body) = p.to_poly();
    let body = if low > 0 { body.shift_up(low as usize) } else { body };
    roots_above(&body, &int(1))
}

fn check_one(
    n: usize,
    num: &LaurentPoly,
    den: &LaurentPoly,
    sample: Option<&Rational>,
) -> (CertRecord, PerN) {
    let mut rec = CertRecord {
        numerator: Some(num.fmt_in("t")),
        denominator: Some(den.fmt_in("t")),
        ..CertRecord::unexamined(n)
    };
    if den.is_zero() {
        return (rec, PerN::Inconclusive(format!("denominator of delta_{n} vanishes identically")));
    }
    if num.is_zero() {
        // delta_n(c; t) = 0 for every t
        return (rec, PerN::Fail(int(2), int(2)));
    }
    let rn = roots_above_one(num);
    let rd = roots_above_one(den);
    rec.numerator_roots = Some(rn.len());
    rec.denominator_roots = Some(rd.len());
    // the bracket with the smallest left end; exact roots sort first on ties
    if let Some(w) = rn.into_iter().chain(rd).min_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1))) {
        return (rec, PerN::Fail(w.0, w.1));
    }
    let Some(t) = sample else {
        return (rec, PerN::Inconclusive("no admissible sample point".into()));
    };
    let v = num.eval(t) / den.eval(t);
    rec.sample_sign = if v.is_positive() { 1 } else { -1 };
    if v.is_positive() {
        (rec, PerN::Pass)
    } else {
        // no roots and no poles on (1, inf): the sign is negative throughout
        (rec, PerN::Fail(t.clone(), t.clone()))
    }
}

/// Decides `0 < delta_n(c; t) < inf` for every `n` and every `t > 1`.
///
/// A failing certificate names the smallest `n` failing at the first point
/// of the default grid, scanned from the top, where any `n` fails. Without
/// such a point it names the smallest `n` with a root or pole in `(1, inf)`.
///
/// Root counts are taken on the unreduced numerator and denominator, so a
/// common root in `(1, inf)` (a `0/0` point) also fails.
pub fn certify_on_circle(c: &CoeffVector) -> Result<SignCertificate> {
    // Cheap exact probes first: a failure there is already a certificate and
    // spares the symbolic determinants and the root isolation.
    // Coarse points are the cheapest, so they go first.
    let mut hit = None;
    for t in default_grid().into_iter().rev() {
        let report = delta_omega(c, &t)?;
        if let Some(r) = report.records.iter().find(|r| !r.delta.is_positive_finite()) {
            hit = Some((r.n, t));
            break;
        }
    }
    if let Some((n, t)) = hit {
        return Ok(SignCertificate {
            sample_point: None,
            records: (1..=2 * c.g()).map(CertRecord::unexamined).collect(),
            outcome: CertOutcome::CertifiedFail { n, lo: t.clone(), hi: t },
        });
    }

    let raw = raw_deltas(c)?;
    let sample = sample_candidates().into_iter().find(|t| {
        raw.iter()
            .all(|(_, p, m)| !p.eval(t).is_zero() && !m.eval(t).is_zero())
    });
    let checked: Vec<(CertRecord, PerN)> = raw
        .par_iter()
        .map(|(n, p, m)| check_one(*n, p, m, sample.as_ref()))
        .collect();

    let mut outcome = CertOutcome::CertifiedOnT;
    for (rec, res) in &checked {
        match res {
            PerN::Fail(lo, hi) => {
                outcome = CertOutcome::CertifiedFail {
                    n: rec.n,
                    lo: lo.clone(),
                    hi: hi.clone(),
                };
                break;
            }
            PerN::Inconclusive(why) if outcome == CertOutcome::CertifiedOnT => {
                outcome = CertOutcome::Inconclusive { reason: why.clone() };
            }
            _ => {}
        }
    }
    Ok(SignCertificate {
        sample_point: sample,
        records: checked.into_iter().map(|(r, _)| r).collect(),
        outcome,
    })
}
