//! Relations and classification specific to inverse semigroups.

use serde::Serialize;

use super::FiniteInverseSemigroup;
use crate::error::{ensure, Result};
use crate::order::FinitePoset;
use crate::relations::axioms::{Axiom, AxiomContext, AxiomReport};
use crate::relations::classify::{classify, Classification};
use crate::relations::{AnalyzedPoset, Relation};

/// A semigroup with its natural order analysed and the semigroup-specific
/// relations computed.
#[derive(Debug, Clone)]
pub struct AnalyzedSemigroup {
    pub sg: FiniteInverseSemigroup,
    pub order: AnalyzedPoset,
    /// `a ∼ b` iff `ab⁻¹` and `a⁻¹b` are idempotent.
    pub compatible: Relation,
    /// `a ≺≺ b` iff `a⁻¹a ≺ b⁻¹b` and `a ≤ b`.
    pub bi_below: Relation,
    /// `∼ ∩ ⌣`
    pub simeq: Relation,
}

impl AnalyzedSemigroup {
    pub fn new(sg: FiniteInverseSemigroup) -> Result<AnalyzedSemigroup> {
        let order = AnalyzedPoset::new(sg.natural_order()?)?;
        let n = sg.len();
        let compatible = Relation::from_fn(n, n, |a, b| {
            sg.is_idempotent(sg.mul(a, sg.inv(b))) && sg.is_idempotent(sg.mul(sg.inv(a), b))
        });
        let bi_below = Relation::from_fn(n, n, |a, b| {
            order.poset.leq(a, b) && order.prec.holds(sg.source(a), sg.source(b))
        });
        let simeq = compatible.intersection(&order.smile);
        Ok(AnalyzedSemigroup {
            sg,
            order,
            compatible,
            bi_below,
            simeq,
        })
    }

    pub fn len(&self) -> usize {
        self.sg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sg.is_empty()
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.order.poset
    }

    fn report(&self, name: &str, witness: Option<Vec<usize>>) -> AxiomReport {
        AxiomReport::new(name, witness, self.sg.ids())
    }
}

/// Whether multiplication preserves every join that exists in `order`.
pub fn preserves_joins(sg: &FiniteInverseSemigroup, order: &FinitePoset) -> bool {
    first_join_not_preserved(sg, order).is_none()
}

fn first_join_not_preserved(sg: &FiniteInverseSemigroup, order: &FinitePoset) -> Option<Vec<usize>> {
    let n = sg.len();
    for a in 0..n {
        for b in 0..n {
            let Some(j) = order.join(a, b) else { continue };
            for c in 0..n {
                let right = order.join(sg.mul(a, c), sg.mul(b, c)) == Some(sg.mul(j, c));
                let left = order.join(sg.mul(c, a), sg.mul(c, b)) == Some(sg.mul(c, j));
                if !(right && left) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributivityReport {
    pub e_distributive: bool,
    pub s_distributive: bool,
    pub leq_distributive: bool,
    pub leq_decomposition: bool,
    pub conditional_join_semilattice: bool,
    /// On conditional join-semilattices the four flags must coincide;
    /// `None` when that hypothesis fails.
    pub flags_agree: Option<bool>,
}

pub fn distributivity_suite(asg: &AnalyzedSemigroup) -> Result<DistributivityReport> {
    let sg = &asg.sg;
    let (e, _) = sg.restrict(sg.idempotents())?;
    let e_order = e.natural_order()?;
    let ctx = AxiomContext::new(&asg.order);
    let r = DistributivityReport {
        e_distributive: preserves_joins(&e, &e_order),
        s_distributive: preserves_joins(sg, asg.poset()),
        leq_distributive: ctx.holds(Axiom::LeqDistributivity),
        leq_decomposition: ctx.holds(Axiom::LeqDecomposition),
        conditional_join_semilattice: asg.poset().is_conditional_join_semilattice(),
        flags_agree: None,
    };
    let all = [r.e_distributive, r.s_distributive, r.leq_distributive, r.leq_decomposition];
    let agree = all.iter().all(|&f| f == all[0]);
    Ok(DistributivityReport {
        flags_agree: r.conditional_join_semilattice.then_some(agree),
        ..r
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemigroupClassification {
    pub basic_semigroup: bool,
    pub simeq_basic: bool,
    /// Every element is `≺≺`-below something.
    pub bi_round: bool,
    pub prec_distributive: bool,
    pub conditional_join_semilattice: bool,
    pub simeq_joins: AxiomReport,
    pub order: Classification,
    /// Consequences verified on basic semigroups.
    pub checks: Vec<AxiomReport>,
}

pub fn classify_semigroup(asg: &AnalyzedSemigroup) -> Result<SemigroupClassification> {
    let order = classify(&asg.order)?;
    let holds = |a: Axiom| order.axioms.iter().any(|r| r.axiom == a.name() && r.holds);
    let n = asg.len();
    let bi_round = (0..n).all(|a| !asg.bi_below.row(a).is_empty());
    let prec_distributive = holds(Axiom::PrecDistributivity);
    let cjs = order.conditional_join_semilattice;
    let simeq_joins = simeq_joins(asg);
    let basic_semigroup = bi_round && prec_distributive && cjs;
    let simeq_basic = prec_distributive && simeq_joins.holds;

    let mut checks = vec![aveeb_check(asg), edetermined_check(asg)];
    ensure(checks[0].holds, "aveeb", || format!("{:?}", checks[0].witness_ids))?;
    ensure(simeq_basic <= basic_semigroup, "simeq_basic implies basic_semigroup", String::new)?;
    if basic_semigroup {
        checks.push(bi_below_check(asg));
        checks.push(e_basic_check(asg)?);
        checks.push(acprecbd_check(asg));
        checks.push(invariance_check(asg));
        ensure(order.basic_poset, "basic semigroup is a basic poset", String::new)?;
        for c in &checks {
            ensure(c.holds, &c.axiom, || format!("violated at {:?}", c.witness_ids))?;
        }
    }
    Ok(SemigroupClassification {
        basic_semigroup,
        simeq_basic,
        bi_round,
        prec_distributive,
        conditional_join_semilattice: cjs,
        simeq_joins,
        order,
        checks,
    })
}

/// `a ∨ b` exists iff `a ≺≺ a' ≃ b' ≻≻ b` for some `a', b'`.
pub fn simeq_joins(asg: &AnalyzedSemigroup) -> AxiomReport {
    let n = asg.len();
    let p = asg.poset();
    let witness = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| {
        let rhs = asg
            .bi_below
            .row(a)
            .iter()
            .any(|x| asg.simeq.row(x).intersects(&asg.bi_below.row(b)));
        p.join(a, b).is_some() != rhs
    });
    asg.report("simeq_joins", witness.map(|(a, b)| vec![a, b]))
}

/// `(a ∨ b)⁻¹(a ∨ b) = a⁻¹a ∨ b⁻¹b` whenever `a ∨ b` exists.
pub fn aveeb_check(asg: &AnalyzedSemigroup) -> AxiomReport {
    let (sg, p, n) = (&asg.sg, asg.poset(), asg.len());
    let witness = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| {
        p.join(a, b)
            .is_some_and(|j| p.join(sg.source(a), sg.source(b)) != Some(sg.source(j)))
    });
    asg.report("aveeb", witness.map(|(a, b)| vec![a, b]))
}

/// `a ≤ b` and `a⁻¹a ≺ b⁻¹b` give `a ≺ b`. Guaranteed on distributive
/// conditional join-semilattices; evaluated unconditionally.
pub fn edetermined_check(asg: &AnalyzedSemigroup) -> AxiomReport {
    let (sg, ap, n) = (&asg.sg, &asg.order, asg.len());
    let witness = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| {
        ap.poset.leq(a, b) && ap.prec.holds(sg.source(a), sg.source(b)) && !ap.prec.holds(a, b)
    });
    asg.report("edetermined", witness.map(|(a, b)| vec![a, b]))
}

/// `≺ = ≺≺`
fn bi_below_check(asg: &AnalyzedSemigroup) -> AxiomReport {
    let w = asg
        .order
        .prec
        .first_outside(&asg.bi_below)
        .or_else(|| asg.bi_below.first_outside(&asg.order.prec));
    asg.report("bi_below", w.map(|(a, b)| vec![a, b]))
}

/// `E` is a basic poset whose `≺` is the restriction of `≺` on `S`.
fn e_basic_check(asg: &AnalyzedSemigroup) -> Result<AxiomReport> {
    let idem = asg.sg.idempotents();
    let (sub, keep) = asg.poset().restrict(idem)?;
    let e = AnalyzedPoset::new(sub)?;
    let basic = classify(&e)?.basic_poset;
    let mut witness = None;
    'outer: for (i, &a) in keep.iter().enumerate() {
        for (j, &b) in keep.iter().enumerate() {
            if e.prec.holds(i, j) != asg.order.prec.holds(a, b) {
                witness = Some(vec![a, b]);
                break 'outer;
            }
        }
    }
    if !basic && witness.is_none() {
        witness = Some(vec![]);
    }
    Ok(asg.report("e_basic", witness))
}

/// `a ≺ b`, `c ≺ d` and `b⁻¹b ⌣ dd⁻¹` give `ac ≺ bd`.
fn acprecbd_check(asg: &AnalyzedSemigroup) -> AxiomReport {
    let (sg, ap, n) = (&asg.sg, &asg.order, asg.len());
    let mut witness = None;
    'outer: for a in 0..n {
        for b in ap.prec.row(a).iter() {
            for c in 0..n {
                for d in ap.prec.row(c).iter() {
                    if ap.smile.holds(sg.source(b), sg.range(d))
                        && !ap.prec.holds(sg.mul(a, c), sg.mul(b, d))
                    {
                        witness = Some(vec![a, b, c, d]);
                        break 'outer;
                    }
                }
            }
        }
    }
    asg.report("acprecbd", witness)
}

/// `a ≺ b` and `b⁻¹b ≤ cc⁻¹` give `ac ≺ bc`.
fn invariance_check(asg: &AnalyzedSemigroup) -> AxiomReport {
    let (sg, ap, n) = (&asg.sg, &asg.order, asg.len());
    let mut witness = None;
    'outer: for a in 0..n {
        for b in ap.prec.row(a).iter() {
            for c in 0..n {
                if ap.poset.leq(sg.source(b), sg.range(c)) && !ap.prec.holds(sg.mul(a, c), sg.mul(b, c)) {
                    witness = Some(vec![a, b, c]);
                    break 'outer;
                }
            }
        }
    }
    asg.report("invariance", witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn analyze(sg: FiniteInverseSemigroup) -> AnalyzedSemigroup {
        AnalyzedSemigroup::new(sg).unwrap()
    }

    #[test]
    fn e_vs_s_joins_distributivity() {
        let asg = analyze(fixtures::e_vs_s_joins());
        let r = distributivity_suite(&asg).unwrap();
        assert!(r.s_distributive);
        assert!(!r.e_distributive);
        assert!(!r.conditional_join_semilattice);
        assert_eq!(r.flags_agree, None);
        let c = classify_semigroup(&asg).unwrap();
        assert!(!c.basic_semigroup);
    }

    #[test]
    fn symmetric_inverse_monoids_are_simeq_basic() {
        for k in 1..=2 {
            let asg = analyze(fixtures::symmetric_inverse_monoid(k));
            let c = classify_semigroup(&asg).unwrap();
            assert!(c.basic_semigroup, "I({k})");
            assert!(c.simeq_basic, "I({k}): {:?}", c.simeq_joins.witness_ids);
            let d = distributivity_suite(&asg).unwrap();
            assert_eq!(d.flags_agree, Some(true));
            assert!(d.s_distributive);
        }
    }

    #[test]
    fn two_element_semilattice() {
        let asg = analyze(fixtures::two_element_semilattice());
        let c = classify_semigroup(&asg).unwrap();
        assert!(c.basic_semigroup && c.simeq_basic);
        assert!(edetermined_check(&asg).holds);
    }

    #[test]
    fn compatibility_in_i2() {
        let asg = analyze(fixtures::symmetric_inverse_monoid(2));
        let s = &asg.sg;
        let id = s.index_of("{1->1,2->2}").unwrap();
        let swap = s.index_of("{1->2,2->1}").unwrap();
        let e1 = s.index_of("{1->1}").unwrap();
        let e2 = s.index_of("{2->2}").unwrap();
        let t = s.index_of("{2->1}").unwrap();
        assert!(!asg.compatible.holds(id, swap));
        assert!(!asg.compatible.holds(e1, t));
        assert!(asg.compatible.holds(e1, e2));
        assert!(asg.simeq.holds(e1, e2));
    }
}
