//! Symbolic replay of the folding induction.
//!
//! Once the radius conditions are certified, the combinatorial content of
//! the argument is: a curve that connects the inner and outer circles of
//! window k+1 must, after pulling back one step, cross window k twice —
//! once on the way out past the geodesic pair and once after the forced
//! turn. Replaying k steps doubles the crossing count each time, so any
//! curve to ∞ would contain 2^k disjoint crossings of the innermost window.

use super::conditions::CertificationReport;
use crate::error::{Error, Result};
use crate::tower::Verdict;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FoldingStep {
    pub step: usize,
    /// Window whose crossings are being counted.
    pub window: String,
    /// Window one level further out whose single crossing forces these.
    pub source_window: String,
    /// Conditions cited by this step.
    pub cites: Vec<String>,
    pub crossings: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FoldingCertificate {
    pub k: usize,
    pub lower_bound: u64,
    pub trace: Vec<FoldingStep>,
}

/// Replay `k` induction steps on top of a certified report, returning the
/// 2^k crossing bound with its step trace.
pub fn folding_lower_bound(k: usize, report: &CertificationReport) -> Result<FoldingCertificate> {
    if k >= 63 {
        return Err(Error::InvalidParameter(
            "folding depth ≥ 63 overflows the crossing counter".into(),
        ));
    }
    for name in ["c", "d", "e", "f", "g"] {
        let ok = report
            .conditions
            .get(name)
            .is_some_and(|v| !v.is_empty() && v.iter().all(|x| *x == Verdict::True));
        if !ok {
            return Err(Error::NotCertified {
                name: name.to_string(),
                k,
            });
        }
    }
    let mut trace = Vec::with_capacity(k);
    let mut crossings = 1u64;
    for step in 1..=k {
        crossings *= 2;
        trace.push(FoldingStep {
            step,
            window: format!("(R_{}, sep R_{})", 1, 1),
            source_window: format!("(R_{}, sep R_{})", step + 1, step + 1),
            cites: vec!["c".into(), "e".into(), "f".into(), "g".into()],
            crossings,
        });
    }
    Ok(FoldingCertificate {
        k,
        lower_bound: crossings,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wiggle::certify;

    #[test]
    fn doubling_per_step() {
        let report = certify(1.5, 10.0, 3).unwrap();
        assert!(report.all_pass);
        let base = folding_lower_bound(0, &report).unwrap();
        assert_eq!(base.lower_bound, 1);
        assert!(base.trace.is_empty());
        let mut prev = 1;
        for k in 1..=12 {
            let cert = folding_lower_bound(k, &report).unwrap();
            assert_eq!(cert.lower_bound, 2 * prev);
            assert_eq!(cert.trace.len(), k);
            // Each step references the previous step's window.
            for w in cert.trace.windows(2) {
                assert_eq!(w[0].step + 1, w[1].step);
                assert_eq!(w[1].crossings, 2 * w[0].crossings);
            }
            prev = cert.lower_bound;
        }
        assert_eq!(folding_lower_bound(10, &report).unwrap().lower_bound, 1024);
    }

    #[test]
    fn uncertified_conditions_are_refused() {
        let mut report = certify(1.5, 10.0, 2).unwrap();
        report
            .conditions
            .get_mut("f")
            .unwrap()
            .iter_mut()
            .for_each(|v| *v = crate::tower::Verdict::Indeterminate);
        match folding_lower_bound(3, &report) {
            Err(Error::NotCertified { name, .. }) => assert_eq!(name, "f"),
            other => panic!("expected NotCertified, got {other:?}"),
        }
    }
}
