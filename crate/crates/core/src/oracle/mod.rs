//! Independent checks: numeric roots of `P` against the unit circle and the
//! nested-determinant chain on `P'`.

mod roots;
mod takagi;

use num_complex::Complex64;
use serde::Serialize;

use crate::criterion::VerdictClass;
use crate::embedding::CoeffVector;
use crate::error::Result;

pub use roots::{
    classify_circle, find_roots, relative_residual, RootClass, RootReport, CLUSTER_TOL,
    TOL_INNER, TOL_OUTER,
};
pub use takagi::{takagi_chain, TakagiChain};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleVerdict {
    pub roots: RootReport,
    pub takagi: TakagiChain,
}

impl OracleVerdict {
    pub fn class(&self) -> RootClass {
        self.roots.class
    }

    /// Verdict class implied by the root report; `None` when uncertain.
    pub fn verdict_class(&self) -> Option<VerdictClass> {
        match self.roots.class {
            RootClass::AllSimpleOnT => Some(VerdictClass::SimpleOnCircle),
            RootClass::OnTWithMultiple => Some(VerdictClass::OnCircleNotSimple),
            RootClass::OffT => Some(VerdictClass::OffCircle),
            RootClass::Uncertain => None,
        }
    }

    /// Whether the determinant chain agrees with the root report.
    pub fn takagi_agrees(&self) -> bool {
        match self.roots.class {
            RootClass::AllSimpleOnT => self.takagi.pass,
            RootClass::OnTWithMultiple | RootClass::OffT => !self.takagi.pass,
            RootClass::Uncertain => true,
        }
    }
}

/// Roots are taken per factor of the exact squarefree decomposition of `P`,
/// so repeated roots carry their exact multiplicity instead of a numeric
/// cluster.
pub fn verdict_oracle(c: &CoeffVector) -> Result<OracleVerdict> {
    let p = c.to_poly();
    let mut all: Vec<Complex64> = Vec::with_capacity(2 * c.g());
    let mut mult = Vec::with_capacity(2 * c.g());
    for (factor, k) in p.squarefree_decomposition() {
        if factor.degree().unwrap_or(0) == 0 {
            continue;
        }
        let desc: Vec<f64> = factor.primitive().to_f64_coeffs().into_iter().rev().collect();
        for r in find_roots(&desc)? {
            for _ in 0..k {
                all.push(r);
                mult.push(k);
            }
        }
    }
    let report = roots::classify_with_multiplicity(&all, &mult, TOL_INNER, TOL_OUTER)?;
    let dp: Vec<_> = p.derivative().coeffs().iter().rev().cloned().collect();
    Ok(OracleVerdict {
        roots: report,
        takagi: takagi_chain(&dp)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(c: &[i64]) -> CoeffVector {
        CoeffVector::from_ints(c).unwrap()
    }

    #[test]
    fn reference_classes() {
        let v = verdict_oracle(&cv(&[1, 0, 2])).unwrap();
        assert_eq!(v.class(), RootClass::OnTWithMultiple);
        assert_eq!(v.roots.roots.len(), 4);
        assert!(v.takagi_agrees());
        let v = verdict_oracle(&cv(&[1, 1, 1])).unwrap();
        assert_eq!(v.class(), RootClass::AllSimpleOnT);
        assert!(v.takagi.pass);
        let v = verdict_oracle(&cv(&[1, -3])).unwrap();
        assert_eq!(v.class(), RootClass::OffT);
        assert!(v.takagi_agrees());
    }
}
