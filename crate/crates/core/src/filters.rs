//! Filters with respect to `≤` or `≺`, and ultrafilters.

use serde::Serialize;

use crate::bits::ElemSet;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::relations::{AnalyzedPoset, Relation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterRel {
    Leq,
    Prec,
}

impl std::str::FromStr for FilterRel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "leq" => Ok(FilterRel::Leq),
            "prec" => Ok(FilterRel::Prec),
            other => Err(Error::UnknownProperty(other.to_string())),
        }
    }
}

/// A subset together with the relation it is meant to be a filter for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FilterSet {
    pub rel: FilterRel,
    pub members: ElemSet,
}

/// `{b : a < b}` for the chosen relation.
fn above(ap: &AnalyzedPoset, rel: FilterRel, a: usize) -> ElemSet {
    match rel {
        FilterRel::Leq => ap.poset.up(a),
        FilterRel::Prec => ap.prec.row(a),
    }
}

/// `{b : b < a}` for the chosen relation.
fn below(ap: &AnalyzedPoset, rel: FilterRel, a: usize) -> ElemSet {
    match rel {
        FilterRel::Leq => ap.poset.down(a),
        FilterRel::Prec => ap.prec.col(a),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterViolation {
    /// `u` is a member, `u < v`, and `v` is not.
    NotClosed { u: usize, v: usize },
    /// Members `u`, `v` have no common lower bound in the set.
    NotDirected { u: usize, v: usize },
}

pub fn filter_violation(ap: &AnalyzedPoset, rel: FilterRel, members: ElemSet) -> Option<FilterViolation> {
    for u in members.iter() {
        if let Some(v) = (above(ap, rel, u) - members).first() {
            return Some(FilterViolation::NotClosed { u, v });
        }
    }
    for u in members.iter() {
        for v in members.iter() {
            if !(below(ap, rel, u) & below(ap, rel, v)).intersects(&members) {
                return Some(FilterViolation::NotDirected { u, v });
            }
        }
    }
    None
}

/// `>`-closed and `<`-directed. The empty set qualifies.
pub fn is_filter(ap: &AnalyzedPoset, rel: FilterRel, members: ElemSet) -> bool {
    filter_violation(ap, rel, members).is_none()
}

/// `U^a = {u ∈ U : u < a}`
pub fn initial_segment(ap: &AnalyzedPoset, filter: &FilterSet, a: usize) -> Result<ElemSet> {
    if !filter.members.contains(a) {
        return Err(Error::ElementNotInFilter(ap.poset.id(a).to_string()));
    }
    Ok(filter.members & below(ap, filter.rel, a))
}

/// `X^< = {v : u < v for some u ∈ X}`
pub fn upward_closure(ap: &AnalyzedPoset, rel: FilterRel, xs: ElemSet) -> ElemSet {
    xs.iter().fold(ElemSet::empty(), |acc, u| acc | above(ap, rel, u))
}

fn sort_sets(mut sets: Vec<ElemSet>) -> Vec<ElemSet> {
    sets.sort_by_key(|s| s.to_vec());
    sets.dedup();
    sets
}

fn maximal_only(sets: &[ElemSet]) -> Vec<ElemSet> {
    sets.iter()
        .copied()
        .filter(|s| !sets.iter().any(|t| t != s && s.is_subset(t)))
        .collect()
}

/// Every nonempty proper `≺`-filter, each of the form `{v : w ≺ v}` for a
/// nonzero `w ≺ w`.
pub fn proper_prec_filters(ap: &AnalyzedPoset) -> Vec<ElemSet> {
    let zero = ap.poset.zero();
    let sets = (0..ap.len())
        .filter(|&w| ap.prec.holds(w, w) && !ap.prec.row(w).contains(zero))
        .map(|w| ap.prec.row(w))
        .collect();
    sort_sets(sets)
}

/// Maximal proper `≺`-filters, sorted by their member lists.
pub fn enumerate_prec_ultrafilters(ap: &AnalyzedPoset) -> Vec<ElemSet> {
    sort_sets(maximal_only(&proper_prec_filters(ap)))
}

/// The same, by testing every nonempty subset of the carrier.
pub fn enumerate_prec_ultrafilters_oracle(ap: &AnalyzedPoset, cfg: &Config) -> Result<Vec<ElemSet>> {
    let n = ap.len();
    if n > cfg.oracle_cap {
        return Err(Error::CarrierTooLarge {
            size: n,
            cap: cfg.oracle_cap,
        });
    }
    let zero = ap.poset.zero();
    let proper: Vec<ElemSet> = (0u32..(1 << n))
        .map(|bits| (0..n).filter(|i| bits >> i & 1 == 1).collect::<ElemSet>())
        .filter(|s| !s.is_empty() && !s.contains(zero) && is_filter(ap, FilterRel::Prec, *s))
        .collect();
    Ok(sort_sets(maximal_only(&proper)))
}

/// Nonempty `≤`-filters, i.e. principal up-sets, sorted.
pub fn leq_filters(ap: &AnalyzedPoset) -> Vec<ElemSet> {
    sort_sets((0..ap.len()).map(|w| ap.poset.up(w)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UltrafilterCharacterization {
    pub maximal: bool,
    /// `a ≺ b ∉ U` implies `a ⊥ c` for some `c ∈ U`, or `b ⌣ c` for no `c ∈ U`.
    pub complementary: bool,
    /// `a ∨ b ∈ U` implies `a ∈ U` or `b ∈ U`.
    pub prime: bool,
}

impl UltrafilterCharacterization {
    pub fn agree(&self) -> bool {
        self.maximal == self.complementary && self.maximal == self.prime
    }
}

/// Evaluates the three characterizations of maximality independently on a
/// nonempty proper `≺`-filter.
pub fn ultrafilter_characterizations(ap: &AnalyzedPoset, members: ElemSet) -> Result<UltrafilterCharacterization> {
    if let Some(v) = filter_violation(ap, FilterRel::Prec, members) {
        return Err(Error::NotAFilter(format!("{v:?}")));
    }
    if members.is_empty() || members.contains(ap.poset.zero()) {
        return Err(Error::NotAProperFilter(if members.is_empty() {
            "empty".into()
        } else {
            "contains zero".into()
        }));
    }
    let n = ap.len();
    let maximal = !proper_prec_filters(ap)
        .iter()
        .any(|v| *v != members && members.is_subset(v));
    let complementary = (0..n).all(|a| {
        ap.prec.row(a).iter().filter(|&b| !members.contains(b)).all(|b| {
            ap.perp.row(a).intersects(&members) || !ap.smile.row(b).intersects(&members)
        })
    });
    let prime = (0..n).all(|a| {
        (0..n).all(|b| match ap.poset.join(a, b) {
            Some(j) if members.contains(j) => members.contains(a) || members.contains(b),
            _ => true,
        })
    });
    Ok(UltrafilterCharacterization {
        maximal,
        complementary,
        prime,
    })
}

/// `U^⊏ = {b : a ⊏ b for some a ∈ U}` for a relation between carriers.
pub fn image_under(rel: &Relation, members: ElemSet) -> ElemSet {
    members.iter().fold(ElemSet::empty(), |acc, a| acc | rel.row(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn b(n: usize) -> AnalyzedPoset {
        AnalyzedPoset::new(fixtures::boolean_algebra(n)).unwrap()
    }

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn non_directed_set_is_not_a_filter() {
        // {x}, {y}, {x,y} in 2^{x,y}: indices 1, 2, 3
        let ap = b(2);
        assert_eq!(
            filter_violation(&ap, FilterRel::Prec, set(&[1, 2, 3])),
            Some(FilterViolation::NotDirected { u: 1, v: 2 })
        );
        assert!(is_filter(&ap, FilterRel::Prec, set(&[1, 3])));
        assert!(is_filter(&ap, FilterRel::Prec, ElemSet::empty()));
    }

    #[test]
    fn initial_segment_regenerates_filter() {
        let ap = b(2);
        let f = FilterSet {
            rel: FilterRel::Prec,
            members: set(&[1, 3]),
        };
        let seg = initial_segment(&ap, &f, 3).unwrap();
        assert_eq!(seg, set(&[1, 3]));
        assert_eq!(upward_closure(&ap, FilterRel::Prec, seg), f.members);
        assert!(matches!(initial_segment(&ap, &f, 2), Err(Error::ElementNotInFilter(_))));
    }

    #[test]
    fn upward_closure_of_zero_is_everything() {
        let ap = b(2);
        assert_eq!(upward_closure(&ap, FilterRel::Leq, set(&[0])), ap.poset.all());
    }

    #[test]
    fn ultrafilters_of_boolean_algebras_are_atoms() {
        for n in 0..=4 {
            let ap = b(n);
            let us = enumerate_prec_ultrafilters(&ap);
            assert_eq!(us.len(), n);
            for (i, u) in us.iter().enumerate() {
                assert_eq!(*u, ap.poset.up(1 << i));
            }
            assert_eq!(enumerate_prec_ultrafilters_oracle(&ap, &Config::default()).unwrap(), us);
        }
    }

    #[test]
    fn chain_has_one_ultrafilter() {
        let ap = AnalyzedPoset::new(fixtures::chain(3)).unwrap();
        assert_eq!(enumerate_prec_ultrafilters(&ap), vec![set(&[2])]);
    }

    #[test]
    fn characterizations() {
        let ap = b(2);
        let top = ultrafilter_characterizations(&ap, set(&[3])).unwrap();
        assert_eq!(
            top,
            UltrafilterCharacterization {
                maximal: false,
                complementary: false,
                prime: false
            }
        );
        let atom = ultrafilter_characterizations(&ap, set(&[1, 3])).unwrap();
        assert!(atom.maximal && atom.complementary && atom.prime);
        assert!(matches!(
            ultrafilter_characterizations(&ap, ElemSet::empty()),
            Err(Error::NotAProperFilter(_))
        ));
        assert!(matches!(
            ultrafilter_characterizations(&ap, set(&[1, 2, 3])),
            Err(Error::NotAFilter(_))
        ));
    }
}
