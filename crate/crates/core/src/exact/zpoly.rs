//! Integer polynomials. Primitive remainder sequences keep gcds and Sturm
//! chains in `Z[x]`, and Descartes' rule with bisection isolates real roots
//! without any rational arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::Rational;

/// Ascending coefficients, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ZPoly(pub(crate) Vec<BigInt>);

impl ZPoly {
    pub(crate) fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        ZPoly(c)
    }

    /// Primitive integer multiple of `p` with positive leading coefficient.
    pub(crate) fn from_poly(p: &Poly) -> Self {
        let l = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        ZPoly::new(p.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect()).primitive()
    }

    pub(crate) fn to_poly(&self) -> Poly {
        Poly::new(self.0.iter().cloned().map(Rational::from_integer).collect())
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub(crate) fn lead(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub(crate) fn primitive(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        ZPoly(self.0.into_iter().map(|c| c / &g).collect())
    }

    /// Divides out the content, keeping the sign.
    pub(crate) fn unsigned_primitive(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let g = self.content();
        ZPoly(self.0.into_iter().map(|c| c / &g).collect())
    }

    pub(crate) fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    pub(crate) fn sub(&self, o: &ZPoly) -> ZPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigInt::zero();
        ZPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub(crate) fn derivative(&self) -> Self {
        ZPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) a mod d`.
    pub(crate) fn prem(&self, d: &ZPoly) -> ZPoly {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dn = d.degree();
        let lc = d.lead();
        while r.len() > dn && !r.is_empty() {
            let top = r.len() - 1;
            let q = r[top].clone();
            for c in r.iter_mut() {
                *c *= lc;
            }
            let off = top - dn;
            for (i, dc) in d.0.iter().enumerate() {
                r[off + i] -= &q * dc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        ZPoly(r)
    }

    /// Negated remainder with the sign of the true remainder, as a Sturm
    /// chain needs it, content removed.
    pub(crate) fn sturm_next(&self, d: &ZPoly) -> ZPoly {
        let r = self.prem(d);
        let flips = d.lead().is_negative() && (self.degree() + 1 - d.degree()) % 2 == 1;
        let r = if flips { r } else { ZPoly(r.0.into_iter().map(|c| -c).collect()) };
        r.unsigned_primitive()
    }

    /// Quotient over the integers, `None` unless `d` divides exactly.
    pub(crate) fn exact_div(&self, d: &ZPoly) -> Option<ZPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut r = self.0.clone();
        let dn = d.degree();
        let mut q = vec![BigInt::zero(); r.len() - dn];
        for top in (dn..r.len()).rev() {
            let (c, rem) = r[top].div_rem(d.lead());
            if !rem.is_zero() {
                return None;
            }
            let off = top - dn;
            for (i, dc) in d.0.iter().enumerate() {
                r[off + i] -= &c * dc;
            }
            q[off] = c;
        }
        r.iter().all(Zero::is_zero).then(|| ZPoly::new(q))
    }

    /// Primitive gcd with positive leading coefficient; `gcd(0, 0) = 0`.
    pub(crate) fn gcd(&self, other: &ZPoly) -> ZPoly {
        if !self.is_zero() && !other.is_zero() && coprime_mod_p(self, other) {
            return ZPoly(vec![BigInt::one()]);
        }
        let (mut a, mut b) = (self.clone().primitive(), other.clone().primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    pub(crate) fn squarefree_part(&self) -> ZPoly {
        if self.degree() == 0 {
            return self.clone().primitive();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").primitive()
    }
}

const MODULUS: u64 = 2_147_483_647;

fn reduce_mod(p: &ZPoly) -> Vec<u64> {
    let m = BigInt::from(MODULUS);
    let mut v: Vec<u64> = p
        .0
        .iter()
        .map(|c| {
            let r = c.mod_floor(&m);
            r.try_into().expect("residue fits")
        })
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn inv_mod(a: u64) -> u64 {
    // Fermat, the modulus is prime
    let (mut base, mut e, mut acc) = (a % MODULUS, MODULUS - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % MODULUS;
        }
        base = base * base % MODULUS;
        e >>= 1;
    }
    acc
}

/// Sufficient test for coprimality over `Q`: the gcd modulo a prime that
/// divides neither leading coefficient is constant.
fn coprime_mod_p(a: &ZPoly, b: &ZPoly) -> bool {
    let (mut x, mut y) = (reduce_mod(a), reduce_mod(b));
    if x.len() != a.0.len() || y.len() != b.0.len() {
        return false;
    }
    while !y.is_empty() {
        let inv = inv_mod(*y.last().unwrap());
        while x.len() >= y.len() {
            let q = x.last().unwrap() * inv % MODULUS;
            let off = x.len() - y.len();
            for (i, yc) in y.iter().enumerate() {
                x[off + i] = (x[off + i] + MODULUS - q * yc % MODULUS) % MODULUS;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
            if x.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len() == 1
}

fn sign(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Number of sign changes in the coefficient sequence, zeros skipped.
pub(crate) fn sign_variations(c: &[BigInt]) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in c.iter().map(sign).filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// In-place `p(x) -> p(x + 1)`.
fn taylor_shift_one(c: &mut [BigInt]) {
    let n = c.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let next = c[j + 1].clone();
            c[j] += next;
        }
    }
}

/// Upper bound on the number of roots in `(0, 1)`.
fn descartes01(c: &[BigInt]) -> usize {
    let mut r: Vec<BigInt> = c.iter().rev().cloned().collect();
    taylor_shift_one(&mut r);
    sign_variations(&r)
}

/// With `lo = a / b`, the integer polynomial `b^n p((x + a) / b)`, whose
/// positive roots are `x = b (t - lo)` for the roots `t > lo` of `p`.
fn shift_to(p: &Poly, lo: &Rational) -> ZPoly {
    let z = ZPoly::from_poly(p);
    let (num, den) = (lo.numer(), lo.denom());
    let n = z.degree();
    let mut c: Vec<BigInt> = z
        .0
        .iter()
        .enumerate()
        .map(|(i, x)| x * num_traits::pow(den.clone(), n - i))
        .collect();
    if !num.is_zero() {
        let len = c.len();
        for i in 0..len {
            for j in (i..len.saturating_sub(1)).rev() {
                let next = &c[j + 1] * num;
                c[j] += next;
            }
        }
    }
    ZPoly::new(c)
}

/// A root bracket in `(0, 1)` scaled by `2^-k`: `(c / 2^k, (c + 1) / 2^k)`,
/// or the exact dyadic point `c / 2^k`.
struct Dyadic {
    c: BigInt,
    k: u32,
    exact: bool,
}

fn isolate01(q: ZPoly, out: &mut Vec<Dyadic>) {
    let mut stack = vec![(q, BigInt::zero(), 0u32)];
    while let Some((q, c, k)) = stack.pop() {
        if q.degree() == 0 {
            continue;
        }
        match descartes01(&q.0) {
            0 => continue,
            1 => {
                out.push(Dyadic { c, k, exact: false });
                continue;
            }
            _ => {}
        }
        // left half: 2^n q(x / 2)
        let n = q.degree();
        let left = ZPoly::new(
            q.0.iter()
                .enumerate()
                .map(|(i, a)| a << (n - i))
                .collect(),
        )
        .unsigned_primitive();
        let mut rc = left.0.clone();
        taylor_shift_one(&mut rc);
        let mut right = ZPoly::new(rc);
        let c2 = &c << 1;
        if right.0[0].is_zero() {
            out.push(Dyadic {
                c: &c2 + 1,
                k: k + 1,
                exact: true,
            });
            right = ZPoly::new(right.0[1..].to_vec());
        }
        stack.push((right, &c2 + 1, k + 1));
        stack.push((left, c2, k + 1));
    }
}

/// Brackets for the distinct real roots of `p` in `(lo, inf)`, in increasing
/// order, each holding exactly one root. `(a, a)` is an exact rational root.
pub fn roots_above(p: &Poly, lo: &Rational) -> Vec<(Rational, Rational)> {
    let s = shift_to(p, lo);
    // roots at y = 0 sit at lo itself and are excluded
    let skip = s.0.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let s = ZPoly::new(s.0[skip..].to_vec());
    // no sign change already rules out positive roots, skip the gcd
    if sign_variations(&s.0) == 0 {
        return Vec::new();
    }
    let s = s.squarefree_part();
    if s.degree() == 0 || sign_variations(&s.0) == 0 {
        return Vec::new();
    }
    // 2^e strictly above the Cauchy bound 1 + max |a_i| / |a_n|
    let lead = s.lead().abs();
    let mut e = 0u32;
    for a in &s.0[..s.0.len() - 1] {
        let ratio = a.abs().div_ceil(&lead);
        while BigInt::one() << e <= &ratio + 1u32 {
            e += 1;
        }
    }
    let e = e.max(1);
    let q = ZPoly::new(
        s.0.iter()
            .enumerate()
            .map(|(i, a)| a << (e as usize * i))
            .collect(),
    )
    .unsigned_primitive();
    let mut found = Vec::new();
    isolate01(q, &mut found);
    let sp = s.to_poly();
    let s0 = sp.sign_at(&Rational::zero());
    let den = Rational::from_integer(lo.denom().clone());
    let at = |x: Rational| lo + x / &den;
    let mut out: Vec<(Rational, Rational)> = found
        .into_iter()
        .map(|d| {
            let scale = Rational::new(BigInt::one() << e, BigInt::one() << d.k);
            let a = Rational::from_integer(d.c.clone()) * &scale;
            if d.exact {
                return (at(a.clone()), at(a));
            }
            let mut b = &a + &scale;
            if a.is_zero() {
                // pull the bracket off lo so it closes inside (lo, inf)
                loop {
                    let mid = &b / Rational::from_integer(2.into());
                    match sp.sign_at(&mid) {
                        0 => return (at(mid.clone()), at(mid)),
                        sm if sm == s0 => return (at(mid), at(b)),
                        _ => b = mid,
                    }
                }
            }
            (at(a), at(b))
        })
        .collect();
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}
