//! Minimality of rather-below among auxiliary relations.
//!
//! Candidates are relations `R ⊆ ≤` that are auxiliary
//! (`a ≤ b R c ≤ d ⇒ a R d`), ≻-round (every element is `R`-below
//! something) and ⊥-distributive (`a ⊥ b` and `a R b ∨ c` give `a R c`).
//! They are enumerated as bitmasks over the pairs of `≤`.

use serde::Serialize;

use super::axioms::{Axiom, AxiomContext};
use super::AnalyzedPoset;
use crate::config::Config;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    /// Number of candidate relations found.
    pub candidates: usize,
    /// `≺` is contained in every candidate.
    pub contained_in_all: bool,
    /// Whether the intersection clause applied (join-semilattice with
    /// ⊥-decomposition), and if so whether `≺` equals the intersection.
    pub intersection_applies: bool,
    pub equals_intersection: Option<bool>,
    /// A `≺` pair missing from some candidate.
    pub witness: Option<(String, String)>,
}

impl MinimalityReport {
    pub fn holds(&self) -> bool {
        self.contained_in_all && self.equals_intersection != Some(false)
    }
}

/// Candidate relations are subsets of `≤`, so its pair count bounds the
/// enumeration at `2^k`.
const MAX_ORDER_PAIRS: usize = 30;

pub fn prec_is_minimal_auxiliary(ap: &AnalyzedPoset) -> Result<MinimalityReport> {
    prec_is_minimal_auxiliary_with(ap, Config::global())
}

pub fn prec_is_minimal_auxiliary_with(ap: &AnalyzedPoset, cfg: &Config) -> Result<MinimalityReport> {
    let p = &ap.poset;
    let n = p.len();
    if n > cfg.minimal_aux_cap {
        return Err(Error::CarrierTooLarge {
            size: n,
            cap: cfg.minimal_aux_cap,
        });
    }
    if !p.is_conditional_join_semilattice() {
        return Err(Error::Precondition("not a conditional join-semilattice".into()));
    }
    let pairs = p.leq_pairs();
    let k = pairs.len();
    if k > MAX_ORDER_PAIRS {
        return Err(Error::CarrierTooLarge {
            size: k,
            cap: MAX_ORDER_PAIRS,
        });
    }
    let index = |a: usize, b: usize| pairs.iter().position(|&q| q == (a, b));
    // pairs forced in by including pair i
    let forced: Vec<u64> = pairs
        .iter()
        .map(|&(b, c)| {
            pairs
                .iter()
                .enumerate()
                .filter(|(_, &(a, d))| p.leq(a, b) && p.leq(c, d))
                .fold(0u64, |m, (j, _)| m | (1 << j))
        })
        .collect();
    let row_mask: Vec<u64> = (0..n)
        .map(|a| {
            pairs
                .iter()
                .enumerate()
                .filter(|(_, q)| q.0 == a)
                .fold(0u64, |m, (j, _)| m | (1 << j))
        })
        .collect();
    // (premise, conclusion): a R (b ∨ c) must give a R c; None means a ≰ c
    let mut implications: Vec<(usize, Option<usize>)> = Vec::new();
    for a in 0..n {
        for b in ap.perp.row(a).iter() {
            for c in 0..n {
                if let Some(j) = p.join(b, c) {
                    if let Some(prem) = index(a, j) {
                        implications.push((prem, index(a, c)));
                    }
                }
            }
        }
    }
    implications.sort_unstable();
    implications.dedup();

    let prec_mask = ap
        .prec
        .pairs()
        .iter()
        .fold(0u64, |m, &(a, b)| m | (1 << index(a, b).expect("≺ is contained in ≤")));
    let mut candidates = 0usize;
    let mut intersection = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut missing: Option<usize> = None;
    for r in 0..(1u64 << k) {
        let auxiliary = (0..k).all(|i| r >> i & 1 == 0 || forced[i] & !r == 0);
        if !auxiliary || row_mask.iter().any(|m| m & r == 0) {
            continue;
        }
        let distributive = implications.iter().all(|&(prem, concl)| {
            r >> prem & 1 == 0 || concl.is_some_and(|c| r >> c & 1 == 1)
        });
        if !distributive {
            continue;
        }
        candidates += 1;
        intersection &= r;
        if missing.is_none() && prec_mask & !r != 0 {
            missing = Some((prec_mask & !r).trailing_zeros() as usize);
        }
    }

    let intersection_applies =
        p.is_join_semilattice() && AxiomContext::new(ap).holds(Axiom::PerpDecomposition);
    let equals_intersection = intersection_applies.then_some(candidates > 0 && intersection == prec_mask);
    Ok(MinimalityReport {
        candidates,
        contained_in_all: missing.is_none(),
        intersection_applies,
        equals_intersection,
        witness: missing.map(|i| (p.id(pairs[i].0).to_string(), p.id(pairs[i].1).to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn chain_of_three() {
        let ap = AnalyzedPoset::new(fixtures::chain(3)).unwrap();
        let r = prec_is_minimal_auxiliary(&ap).unwrap();
        assert!(r.holds());
        assert!(r.intersection_applies);
        assert_eq!(r.equals_intersection, Some(true));
        assert!(r.candidates >= 1);
    }

    #[test]
    fn boolean_algebra_has_only_leq() {
        let ap = AnalyzedPoset::new(fixtures::boolean_algebra(2)).unwrap();
        let r = prec_is_minimal_auxiliary(&ap).unwrap();
        assert!(r.holds());
        assert_eq!(r.equals_intersection, Some(true));
    }

    #[test]
    fn too_large() {
        let ap = AnalyzedPoset::new(fixtures::boolean_algebra(3)).unwrap();
        assert!(matches!(
            prec_is_minimal_auxiliary(&ap),
            Err(Error::CarrierTooLarge { size: 8, cap: 6 })
        ));
    }
}
