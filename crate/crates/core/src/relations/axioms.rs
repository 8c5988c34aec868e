//! First-order conditions on an analysed poset.
//!
//! Every axiom is a universally quantified statement over a tuple of
//! elements. It is checked by visiting tuples in lexicographic index order,
//! so the reported witness is the least violating tuple.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::AnalyzedPoset;
use crate::bits::ElemSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    PrecDistributivity,
    Interpolation,
    Approximation,
    LowerOrder,
    Shrinking,
    PrecDecomposition,
    LeqDecomposition,
    LeqDistributivity,
    PerpDecomposition,
    PerpDistributivity,
    VeePreservation,
    LocallyHausdorff,
    UAuxiliarity,
    UInterpolation,
    Complements,
    Predomain,
    SuccRound,
    HausdorffJoins,
    OneWitness,
    PerpEquivalent,
    Auxiliarity,
    LeqInSmile,
}

impl Axiom {
    pub const ALL: [Axiom; 22] = [
        Axiom::PrecDistributivity,
        Axiom::Interpolation,
        Axiom::Approximation,
        Axiom::LowerOrder,
        Axiom::Shrinking,
        Axiom::PrecDecomposition,
        Axiom::LeqDecomposition,
        Axiom::LeqDistributivity,
        Axiom::PerpDecomposition,
        Axiom::PerpDistributivity,
        Axiom::VeePreservation,
        Axiom::LocallyHausdorff,
        Axiom::UAuxiliarity,
        Axiom::UInterpolation,
        Axiom::Complements,
        Axiom::Predomain,
        Axiom::SuccRound,
        Axiom::HausdorffJoins,
        Axiom::OneWitness,
        Axiom::PerpEquivalent,
        Axiom::Auxiliarity,
        Axiom::LeqInSmile,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::PrecDistributivity => "prec_distributivity",
            Axiom::Interpolation => "interpolation",
            Axiom::Approximation => "approximation",
            Axiom::LowerOrder => "lower_order",
            Axiom::Shrinking => "shrinking",
            Axiom::PrecDecomposition => "prec_decomposition",
            Axiom::LeqDecomposition => "leq_decomposition",
            Axiom::LeqDistributivity => "leq_distributivity",
            Axiom::PerpDecomposition => "perp_decomposition",
            Axiom::PerpDistributivity => "perp_distributivity",
            Axiom::VeePreservation => "vee_preservation",
            Axiom::LocallyHausdorff => "locally_hausdorff",
            Axiom::UAuxiliarity => "u_auxiliarity",
            Axiom::UInterpolation => "u_interpolation",
            Axiom::Complements => "complements",
            Axiom::Predomain => "predomain",
            Axiom::SuccRound => "succ_round",
            Axiom::HausdorffJoins => "hausdorff_joins",
            Axiom::OneWitness => "one_witness",
            Axiom::PerpEquivalent => "perp_equivalent",
            Axiom::Auxiliarity => "auxiliarity",
            Axiom::LeqInSmile => "leq_in_smile",
        }
    }

    /// Number of quantified elements, i.e. the witness length.
    pub fn arity(self) -> usize {
        match self {
            Axiom::SuccRound => 1,
            Axiom::Interpolation
            | Axiom::Approximation
            | Axiom::LowerOrder
            | Axiom::HausdorffJoins
            | Axiom::OneWitness
            | Axiom::PerpEquivalent
            | Axiom::LeqInSmile => 2,
            Axiom::UAuxiliarity | Axiom::Complements | Axiom::Auxiliarity => 4,
            _ => 3,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;
    fn from_str(s: &str) -> Result<Axiom> {
        Axiom::ALL
            .iter()
            .copied()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub holds: bool,
    /// Least violating tuple, as element indices.
    pub witness: Option<Vec<usize>>,
    pub witness_ids: Option<Vec<String>>,
}

impl AxiomReport {
    pub fn new(axiom: &str, witness: Option<Vec<usize>>, ids: &[String]) -> AxiomReport {
        AxiomReport {
            axiom: axiom.to_string(),
            holds: witness.is_none(),
            witness_ids: witness
                .as_ref()
                .map(|w| w.iter().map(|&i| ids[i].clone()).collect()),
            witness,
        }
    }
}

/// Precomputed tables shared by several axioms.
pub struct AxiomContext<'a> {
    ap: &'a AnalyzedPoset,
    prec_joins: OnceCell<Vec<ElemSet>>,
    leq_joins: OnceCell<Vec<ElemSet>>,
    perp_joins: OnceCell<Vec<ElemSet>>,
}

impl<'a> AxiomContext<'a> {
    pub fn new(ap: &'a AnalyzedPoset) -> AxiomContext<'a> {
        AxiomContext {
            ap,
            prec_joins: OnceCell::new(),
            leq_joins: OnceCell::new(),
            perp_joins: OnceCell::new(),
        }
    }

    fn n(&self) -> usize {
        self.ap.len()
    }

    /// `{b' ∨ c' : b' ≺ b, c' ≺ c}` for each `(b, c)`.
    fn prec_joins(&self, b: usize, c: usize) -> ElemSet {
        let n = self.n();
        self.prec_joins.get_or_init(|| {
            let ap = self.ap;
            pairwise_joins(n, |x| ap.prec.col(x), |x, y| ap.poset.join(x, y))
        })[b * n + c]
    }

    /// `{b' ∨ c' : b' ≤ b, c' ≤ c}` for each `(b, c)`.
    fn leq_joins(&self, b: usize, c: usize) -> ElemSet {
        let n = self.n();
        self.leq_joins.get_or_init(|| {
            let p = &self.ap.poset;
            pairwise_joins(n, |x| p.down(x), |x, y| p.join(x, y))
        })[b * n + c]
    }

    /// `{a' ∨ b : a' ⊥ a}` for each `(a, b)`.
    fn perp_joins(&self, a: usize, b: usize) -> ElemSet {
        let n = self.n();
        self.perp_joins.get_or_init(|| {
            let ap = self.ap;
            (0..n * n)
                .map(|k| {
                    ap.perp
                        .row(k / n)
                        .iter()
                        .filter_map(|x| ap.poset.join(x, k % n))
                        .collect()
                })
                .collect()
        })[a * n + b]
    }

    fn is_lub_of(&self, a: usize, xs: ElemSet) -> bool {
        let p = &self.ap.poset;
        let ub = p.upper_bounds(xs);
        ub.contains(a) && ub.is_subset(&p.up(a))
    }

    /// Whether `t` is a counterexample to `axiom`.
    pub fn violates(&self, axiom: Axiom, t: &[usize]) -> bool {
        let ap = self.ap;
        let p = &ap.poset;
        let prec = |x, y| ap.prec.holds(x, y);
        let perp = |x, y| ap.perp.holds(x, y);
        let smile = |x, y| ap.smile.holds(x, y);
        let le = |x, y| p.leq(x, y);
        match axiom {
            Axiom::PrecDistributivity => {
                let (a, b, c) = (t[0], t[1], t[2]);
                let Some(j) = p.join(b, c) else { return false };
                let joins = self.prec_joins(b, c) & ap.prec.col(a);
                let rhs = ap.prec.col(a).iter().all(|x| joins.intersects(&ap.prec.row(x)));
                le(a, j) != rhs
            }
            Axiom::Interpolation => {
                let (a, b) = (t[0], t[1]);
                prec(a, b) && !ap.prec.row(a).intersects(&ap.prec.col(b))
            }
            Axiom::Approximation => {
                let (a, b) = (t[0], t[1]);
                ap.prec.col(a).is_subset(&p.down(b)) && !le(a, b)
            }
            Axiom::LowerOrder => {
                let (a, b) = (t[0], t[1]);
                ap.prec.col(a).is_subset(&ap.prec.col(b)) && !le(a, b)
            }
            Axiom::Shrinking => {
                let (a, b, c) = (t[0], t[1], t[2]);
                let Some(j) = p.join(b, c) else { return false };
                prec(a, j) && !self.prec_joins(b, c).intersects(&p.up(a))
            }
            Axiom::PrecDecomposition => {
                let (a, b, c) = (t[0], t[1], t[2]);
                let Some(j) = p.join(b, c) else { return false };
                let parts = ap.prec.col(a) & (ap.prec.col(b) | ap.prec.col(c));
                le(a, j) && !self.is_lub_of(a, parts)
            }
            Axiom::LeqDecomposition => {
                let (a, b, c) = (t[0], t[1], t[2]);
                let Some(j) = p.join(b, c) else { return false };
                let parts = p.down(a) & (p.down(b) | p.down(c));
                le(a, j) && !self.is_lub_of(a, parts)
            }
            Axiom::LeqDistributivity => {
                let (a, b, c) = (t[0], t[1], t[2]);
                let Some(j) = p.join(b, c) else { return false };
                le(a, j) != self.leq_joins(b, c).contains(a)
            }
            Axiom::PerpDecomposition => {
                let (a, b, c) = (t[0], t[1], t[2]);
                let Some(j) = p.join(b, c) else { return false };
                perp(a, b) && le(a, j) && !le(a, c)
            }
            Axiom::PerpDistributivity => {
                let (a, b, c) = (t[0], t[1], t[2]);
                let Some(j) = p.join(b, c) else { return false };
                perp(a, b) && prec(a, j) && !prec(a, c)
            }
            Axiom::VeePreservation => {
                let (a, b, c) = (t[0], t[1], t[2]);
                let Some(j) = p.join(b, c) else { return false };
                perp(a, b) && perp(a, c) && !perp(a, j)
            }
            Axiom::LocallyHausdorff => {
                let (a, b, c) = (t[0], t[1], t[2]);
                le(a, c) && le(b, c) && !smile(a, b)
            }
            Axiom::UAuxiliarity => {
                let (a, a2, b2, b) = (t[0], t[1], t[2], t[3]);
                le(a, a2) && smile(a2, b2) && le(b, b2) && !smile(a, b)
            }
            Axiom::UInterpolation => {
                let (a, b, c) = (t[0], t[1], t[2]);
                smile(a, b)
                    && prec(c, a)
                    && prec(c, b)
                    && !ap.prec.row(c).intersects(&(ap.prec.col(a) & ap.prec.col(b)))
            }
            Axiom::Complements => {
                let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
                prec(a, b)
                    && le(b, c)
                    && prec(c, d)
                    && !self.perp_joins(a, b).intersects(&(ap.prec.row(c) & ap.prec.col(d)))
            }
            Axiom::Predomain => {
                let (a, b, c) = (t[0], t[1], t[2]);
                prec(a, c) && prec(b, c) && !p.join(a, b).is_some_and(|j| prec(j, c))
            }
            Axiom::SuccRound => ap.prec.row(t[0]).is_empty(),
            Axiom::HausdorffJoins => {
                let (a, b) = (t[0], t[1]);
                let rhs = ap
                    .prec
                    .row(a)
                    .iter()
                    .any(|x| ap.smile.row(x).intersects(&ap.prec.row(b)));
                p.join(a, b).is_some() != rhs
            }
            Axiom::OneWitness => {
                let (a, b) = (t[0], t[1]);
                let rhs = self
                    .perp_joins(a, b)
                    .iter()
                    .any(|k| ap.prec.row(a).intersects(&p.down(k)));
                prec(a, b) != rhs
            }
            Axiom::PerpEquivalent => {
                let (a, b) = (t[0], t[1]);
                let mut common = ap.prec.col(a) & ap.prec.col(b);
                common.remove(p.zero());
                perp(a, b) != common.is_empty()
            }
            Axiom::Auxiliarity => {
                let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
                le(a, b) && prec(b, c) && le(c, d) && !prec(a, d)
            }
            Axiom::LeqInSmile => {
                let (a, b) = (t[0], t[1]);
                le(a, b) && !smile(a, b)
            }
        }
    }

    /// Least violating tuple, if any.
    pub fn first_violation(&self, axiom: Axiom) -> Option<Vec<usize>> {
        let n = self.n();
        let k = axiom.arity();
        let mut t = vec![0usize; k];
        loop {
            if self.violates(axiom, &t) {
                return Some(t);
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                t[i] += 1;
                if t[i] < n {
                    break;
                }
                t[i] = 0;
            }
        }
    }

    pub fn check(&self, axiom: Axiom) -> AxiomReport {
        AxiomReport::new(axiom.name(), self.first_violation(axiom), self.ap.poset.ids())
    }

    pub fn holds(&self, axiom: Axiom) -> bool {
        self.first_violation(axiom).is_none()
    }
}

fn pairwise_joins(
    n: usize,
    below: impl Fn(usize) -> ElemSet,
    join: impl Fn(usize, usize) -> Option<usize>,
) -> Vec<ElemSet> {
    (0..n * n)
        .map(|k| {
            let mut out = ElemSet::empty();
            for x in below(k / n).iter() {
                for y in below(k % n).iter() {
                    if let Some(j) = join(x, y) {
                        out.insert(j);
                    }
                }
            }
            out
        })
        .collect()
}

pub fn check_axiom(ap: &AnalyzedPoset, axiom: Axiom) -> AxiomReport {
    AxiomContext::new(ap).check(axiom)
}

pub fn check_all(ap: &AnalyzedPoset) -> Vec<AxiomReport> {
    let ctx = AxiomContext::new(ap);
    Axiom::ALL.iter().map(|&a| ctx.check(a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn chain3() -> AnalyzedPoset {
        AnalyzedPoset::new(fixtures::chain(3)).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for a in Axiom::ALL {
            assert_eq!(a.name().parse::<Axiom>().unwrap(), a);
        }
        assert!("nonsense".parse::<Axiom>().is_err());
    }

    #[test]
    fn chain_fails_approximation_at_middle() {
        let ap = chain3();
        let r = check_axiom(&ap, Axiom::Approximation);
        assert!(!r.holds);
        assert_eq!(r.witness, Some(vec![1, 0]));
        assert_eq!(r.witness_ids, Some(vec!["1".to_string(), "0".to_string()]));
    }

    #[test]
    fn chain_fails_prec_distributivity() {
        let r = check_axiom(&chain3(), Axiom::PrecDistributivity);
        assert!(!r.holds);
        assert_eq!(r.witness, Some(vec![1, 0, 0]));
    }

    #[test]
    fn chain_is_succ_round_and_auxiliary() {
        let ap = chain3();
        assert!(check_axiom(&ap, Axiom::SuccRound).holds);
        assert!(check_axiom(&ap, Axiom::Auxiliarity).holds);
        assert!(check_axiom(&ap, Axiom::LeqInSmile).holds);
    }

    #[test]
    fn boolean_algebras_satisfy_everything() {
        for n in 0..=3 {
            let ap = AnalyzedPoset::new(fixtures::boolean_algebra(n)).unwrap();
            for r in check_all(&ap) {
                assert!(r.holds, "{} fails on B({n}): {:?}", r.axiom, r.witness_ids);
            }
        }
    }

    #[test]
    fn witness_re_evaluates() {
        let ap = chain3();
        let ctx = AxiomContext::new(&ap);
        for a in Axiom::ALL {
            if let Some(w) = ctx.first_violation(a) {
                assert_eq!(w.len(), a.arity());
                assert!(ctx.violates(a, &w));
            }
        }
    }
}
