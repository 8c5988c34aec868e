//! Structural classification of an analysed poset.

use serde::Serialize;

use super::axioms::{Axiom, AxiomContext, AxiomReport};
use super::AnalyzedPoset;
use crate::error::{ensure, Result};
use crate::order::FinitePoset;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub basic_poset: bool,
    pub smile_basic: bool,
    pub local_boolean: bool,
    pub generalized_boolean: bool,
    pub boolean: bool,
    pub conditional_join_semilattice: bool,
    pub prec_is_leq: bool,
    pub smile_total: bool,
    pub has_maximum: bool,
    pub axioms: Vec<AxiomReport>,
}

/// Evaluates every axiom, derives the class flags and cross-checks them
/// against direct lattice-theoretic tests.
pub fn classify(ap: &AnalyzedPoset) -> Result<Classification> {
    let ctx = AxiomContext::new(ap);
    let axioms: Vec<AxiomReport> = Axiom::ALL.iter().map(|&a| ctx.check(a)).collect();
    let held: Vec<bool> = axioms.iter().map(|r| r.holds).collect();
    let holds = |a: Axiom| held[Axiom::ALL.iter().position(|&x| x == a).expect("listed")];
    let p = &ap.poset;

    let cjs = p.is_conditional_join_semilattice();
    let prec_is_leq = ap.prec_is_leq();
    let smile_total = ap.smile.is_total();
    let has_maximum = p.maximum().is_some();
    let distributive = holds(Axiom::PrecDistributivity);

    let basic_poset = holds(Axiom::SuccRound) && distributive && cjs;
    let smile_basic = distributive && holds(Axiom::HausdorffJoins);
    let local_boolean = basic_poset && prec_is_leq;
    let generalized_boolean = smile_basic && prec_is_leq && smile_total;
    let boolean = basic_poset && prec_is_leq && has_maximum;

    let c = Classification {
        basic_poset,
        smile_basic,
        local_boolean,
        generalized_boolean,
        boolean,
        conditional_join_semilattice: cjs,
        prec_is_leq,
        smile_total,
        has_maximum,
        axioms,
    };
    cross_check(ap, &c, &holds)?;
    Ok(c)
}

fn cross_check(ap: &AnalyzedPoset, c: &Classification, holds: &dyn Fn(Axiom) -> bool) -> Result<()> {
    let p = &ap.poset;
    let locally = every_down_set_boolean(p);
    ensure(c.local_boolean == (c.conditional_join_semilattice && locally), "local_boolean", || {
        format!("flag {} but direct test {}", c.local_boolean, c.conditional_join_semilattice && locally)
    })?;
    let gba = p.is_lattice() && locally;
    ensure(c.generalized_boolean == gba, "generalized_boolean", || {
        format!("flag {} but direct test {gba}", c.generalized_boolean)
    })?;
    ensure(c.boolean == p.is_boolean_lattice(), "boolean", || {
        format!("flag {} but direct test {}", c.boolean, p.is_boolean_lattice())
    })?;
    ensure(!c.generalized_boolean || c.local_boolean, "generalized_boolean implies local_boolean", String::new)?;
    ensure(!c.boolean || c.generalized_boolean, "boolean implies generalized_boolean", String::new)?;
    if c.basic_poset {
        for a in [
            Axiom::Predomain,
            Axiom::Complements,
            Axiom::LocallyHausdorff,
            Axiom::OneWitness,
            Axiom::Approximation,
            Axiom::Interpolation,
            Axiom::Shrinking,
        ] {
            ensure(holds(a), a.name(), || "fails on a basic poset".to_string())?;
        }
        ensure(c.prec_is_leq, "prec_is_leq", || "finite basic poset with ≺ ≠ ≤".to_string())?;
    }
    if c.local_boolean {
        // joins exist exactly when meets do, iff smile-basic
        let n = p.len();
        let wedge_joins = (0..n).all(|a| (0..n).all(|b| p.meet(a, b).is_none() || p.join(a, b).is_some()));
        ensure(wedge_joins == c.smile_basic, "wedge_joins", || {
            format!("meets-imply-joins {wedge_joins} but smile_basic {}", c.smile_basic)
        })?;
    }
    Ok(())
}

/// Every principal down-set is a Boolean lattice.
pub fn every_down_set_boolean(p: &FinitePoset) -> bool {
    (0..p.len()).all(|a| {
        p.restrict(p.down(a))
            .map(|(sub, _)| sub.is_boolean_lattice())
            .unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn classify_poset(p: FinitePoset) -> Classification {
        classify(&AnalyzedPoset::new(p).unwrap()).unwrap()
    }

    #[test]
    fn boolean_algebras() {
        for n in 0..=3 {
            let c = classify_poset(fixtures::boolean_algebra(n));
            assert!(c.boolean && c.generalized_boolean && c.local_boolean && c.basic_poset && c.smile_basic);
        }
    }

    #[test]
    fn chain_is_not_basic() {
        let c = classify_poset(fixtures::chain(3));
        assert!(!c.basic_poset);
        assert!(!c.local_boolean);
        assert!(c.conditional_join_semilattice);
    }

    #[test]
    fn partial_bijections_on_two_points() {
        let p = fixtures::symmetric_inverse_monoid(2).natural_order().unwrap();
        let c = classify_poset(p);
        assert!(c.local_boolean);
        assert!(!c.generalized_boolean);
        assert!(!c.smile_basic);
        assert!(c.smile_total);
    }

    #[test]
    fn locally_boolean_down_sets_without_conditional_joins() {
        // 0 < x, y < p, q: every down-set is Boolean but x ∨ y is missing
        let ids = ["0", "x", "y", "p", "q"].map(String::from).to_vec();
        let p = FinitePoset::from_fn(ids, 0, |a, b| a == b || a == 0 || (a < 3 && b >= 3)).unwrap();
        assert!(every_down_set_boolean(&p));
        let c = classify_poset(p);
        assert!(!c.conditional_join_semilattice);
        assert!(!c.local_boolean);
        assert!(!c.prec_is_leq);
    }
}
