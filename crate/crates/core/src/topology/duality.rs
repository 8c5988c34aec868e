//! Passing between ∪-bases and posets: a basis ordered by inclusion, and
//! the space of `≺`-ultrafilters of a basic poset.

use serde::Serialize;

use super::FiniteSpace;
use crate::bits::ElemSet;
use crate::error::{ensure, Error, Result};
use crate::filters::enumerate_prec_ultrafilters;
use crate::order::FinitePoset;
use crate::relations::classify::{classify, Classification};
use crate::relations::AnalyzedPoset;

#[derive(Debug, Clone)]
pub struct BasisPoset {
    pub analyzed: AnalyzedPoset,
    /// Element `i` is the basis set `sets[i]`.
    pub sets: Vec<ElemSet>,
}

/// The basis of a space with a ∪-basis, ordered by inclusion.
pub fn basis_to_poset(x: &FiniteSpace) -> Result<BasisPoset> {
    if let Some(v) = x.union_basis_violation() {
        return Err(Error::NotAUnionBasis(format!("{v:?}")));
    }
    let sets = x.basis().to_vec();
    let ids = sets.iter().map(|&s| x.label(s)).collect();
    let zero = sets.iter().position(|s| s.is_empty()).expect("∪-bases contain ∅");
    let poset = FinitePoset::from_fn(ids, zero, |a, b| sets[a].is_subset(&sets[b]))?;
    let analyzed = AnalyzedPoset::new(poset)?;
    for a in 0..sets.len() {
        for b in 0..sets.len() {
            let detail = || format!("{}, {}", x.label(sets[a]), x.label(sets[b]));
            ensure(
                analyzed.prec.holds(a, b) == x.compactly_contained(sets[a], sets[b]),
                "rather_below_is_compact_containment",
                detail,
            )?;
            ensure(
                analyzed.smile.holds(a, b) == x.within_compact_hausdorff(sets[a] | sets[b]),
                "smile_is_hausdorff_union",
                detail,
            )?;
        }
    }
    ensure(classify(&analyzed)?.smile_basic, "union_basis_is_smile_basic", String::new)?;
    Ok(BasisPoset { analyzed, sets })
}

#[derive(Debug, Clone)]
pub struct UltrafilterSpace {
    pub space: FiniteSpace,
    /// Point `i` is `ultrafilters[i]`.
    pub ultrafilters: Vec<ElemSet>,
    /// Element `a` maps to the basis index of `O_a`.
    pub set_map: Vec<usize>,
    pub classification: Classification,
}

impl UltrafilterSpace {
    /// `O_a = {U : a ∈ U}`
    pub fn open_set(&self, a: usize) -> ElemSet {
        self.space.basis()[self.set_map[a]]
    }
}

/// The `≺`-ultrafilters of a basic poset with basis `{O_a}`.
pub fn ultrafilter_space(ap: &AnalyzedPoset) -> Result<UltrafilterSpace> {
    let cls = classify(ap)?;
    if !cls.basic_poset {
        return Err(Error::NotBasic);
    }
    let p = &ap.poset;
    let us = enumerate_prec_ultrafilters(ap);
    let points: Vec<String> = us
        .iter()
        .map(|&u| format!("U({})", p.id(p.least(u).expect("ultrafilters have a least element"))))
        .collect();
    let n = ap.len();
    let opens: Vec<ElemSet> = (0..n)
        .map(|a| (0..us.len()).filter(|&i| us[i].contains(a)).collect())
        .collect();
    let mut basis: Vec<ElemSet> = Vec::new();
    let mut set_map = Vec::with_capacity(n);
    for &o in &opens {
        let k = basis.iter().position(|&b| b == o).unwrap_or_else(|| {
            basis.push(o);
            basis.len() - 1
        });
        set_map.push(k);
    }
    let space = FiniteSpace::new(points, basis).map_err(|e| Error::invariant("open_sets_form_basis", e.to_string()))?;

    for a in 0..n {
        for b in 0..n {
            let (oa, ob) = (opens[a], opens[b]);
            let detail = || format!("{}, {}", p.id(a), p.id(b));
            if let Some(j) = p.join(a, b) {
                ensure(opens[j] == oa | ob, "join_is_union", detail)?;
            }
            ensure(ap.perp.holds(a, b) == !oa.intersects(&ob), "disjoint_is_perp", detail)?;
            ensure(p.leq(a, b) == oa.is_subset(&ob), "order_is_inclusion", detail)?;
            ensure(
                ap.smile.holds(a, b) == space.within_compact_hausdorff(oa | ob),
                "smile_is_hausdorff_union",
                detail,
            )?;
            ensure(
                ap.prec.holds(a, b) == space.compactly_contained(oa, ob),
                "rather_below_is_compact_containment",
                detail,
            )?;
        }
    }
    ensure(
        space.is_locally_compact() && space.is_locally_hausdorff(),
        "locally_compact_locally_hausdorff",
        String::new,
    )?;
    if cls.smile_basic {
        ensure(space.is_union_basis(), "open_sets_union_basis", || {
            format!("{:?}", space.union_basis_violation())
        })?;
    }
    Ok(UltrafilterSpace {
        space,
        ultrafilters: us,
        set_map,
        classification: cls,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpaceRoundTrip {
    /// Point `g` maps to the ultrafilter `U_g` of basis sets containing it.
    pub point_map: Vec<usize>,
    pub homeomorphism: bool,
}

/// `g ↦ U_g` is a homeomorphism onto the ultrafilters of the basis poset.
pub fn round_trip_space(x: &FiniteSpace) -> Result<SpaceRoundTrip> {
    let bp = basis_to_poset(x)?;
    let dual = ultrafilter_space(&bp.analyzed)?;
    let point_map = (0..x.len())
        .map(|g| {
            let ug: ElemSet = (0..bp.sets.len()).filter(|&i| bp.sets[i].contains(g)).collect();
            dual.ultrafilters
                .iter()
                .position(|&u| u == ug)
                .ok_or_else(|| Error::invariant("point_filter_is_ultrafilter", x.point(g).to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    let image: ElemSet = point_map.iter().copied().collect();
    ensure(
        image.len() == x.len() && x.len() == dual.space.len(),
        "point_map_bijective",
        || format!("{point_map:?}"),
    )?;
    let forward = |o: ElemSet| o.iter().map(|g| point_map[g]).collect::<ElemSet>();
    let homeomorphism = x.opens().iter().all(|&o| dual.space.is_open(forward(o)))
        && dual.space.opens().iter().all(|&o| x.is_open((0..x.len()).filter(|&g| o.contains(point_map[g])).collect()));
    ensure(homeomorphism, "point_map_homeomorphism", String::new)?;
    Ok(SpaceRoundTrip {
        point_map,
        homeomorphism,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetRoundTrip {
    /// Element `a` maps to the element `O_a` of the rebuilt poset.
    pub element_map: Vec<usize>,
    pub order_isomorphism: bool,
}

/// `a ↦ O_a` is an order isomorphism onto the basis poset of the dual.
pub fn round_trip_poset(ap: &AnalyzedPoset) -> Result<PosetRoundTrip> {
    let cls = classify(ap)?;
    if !cls.smile_basic {
        return Err(Error::Precondition("not smile-basic".into()));
    }
    let dual = ultrafilter_space(ap)?;
    let q = basis_to_poset(&dual.space)?;
    let element_map: Vec<usize> = (0..ap.len())
        .map(|a| {
            q.sets
                .iter()
                .position(|&s| s == dual.open_set(a))
                .expect("O_a is a basis set")
        })
        .collect();
    let image: ElemSet = element_map.iter().copied().collect();
    let n = ap.len();
    let order_isomorphism = image.len() == n
        && q.sets.len() == n
        && (0..n).all(|a| (0..n).all(|b| ap.poset.leq(a, b) == q.analyzed.poset.leq(element_map[a], element_map[b])));
    ensure(order_isomorphism, "element_map_order_isomorphism", || format!("{element_map:?}"))?;
    Ok(PosetRoundTrip {
        element_map,
        order_isomorphism,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AbcOutcome {
    /// `a ≺ ⋁F` for the listed finite `F`, each member rather below some
    /// element of `C`.
    NoWitnessNeeded(Vec<usize>),
    /// An ultrafilter in `cl(O_a) ∩ O_b` outside every `O_c`.
    Witness(usize),
}

/// Searches for the ultrafilter promised when `a ≺ b` and no finite join
/// from `C` is rather above `a`.
pub fn abc_witness(ap: &AnalyzedPoset, dual: &UltrafilterSpace, a: usize, b: usize, c: ElemSet) -> Result<AbcOutcome> {
    if !ap.prec.holds(a, b) {
        return Err(Error::Precondition(format!(
            "{} is not rather below {}",
            ap.poset.id(a),
            ap.poset.id(b)
        )));
    }
    // joins may be missing, so test finite sets of elements rather below C
    let below: ElemSet = (0..ap.len()).filter(|&d| c.iter().any(|x| ap.prec.holds(d, x))).collect();
    let members = below.to_vec();
    if members.len() > 20 {
        return Err(Error::CarrierTooLarge {
            size: members.len(),
            cap: 20,
        });
    }
    for bits in 0u32..(1 << members.len()) {
        let f: ElemSet = members
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect();
        if let Some(j) = ap.poset.lub(f) {
            if ap.prec.holds(a, j) {
                return Ok(AbcOutcome::NoWitnessNeeded(f.to_vec()));
            }
        }
    }
    let region = dual.space.closure(dual.open_set(a)) & dual.open_set(b);
    let covered = c.iter().fold(ElemSet::empty(), |acc, x| acc | dual.open_set(x));
    match (region - covered).first() {
        Some(u) => Ok(AbcOutcome::Witness(u)),
        None => Err(Error::LemmaViolated(format!(
            "no ultrafilter for ({}, {}, {:?})",
            ap.poset.id(a),
            ap.poset.id(b),
            members.iter().map(|&x| ap.poset.id(x)).collect::<Vec<_>>()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn b(n: usize) -> AnalyzedPoset {
        AnalyzedPoset::new(fixtures::boolean_algebra(n)).unwrap()
    }

    #[test]
    fn discrete_space_gives_powerset() {
        let bp = basis_to_poset(&fixtures::discrete_space(2)).unwrap();
        assert_eq!(bp.analyzed.len(), 4);
        assert!(bp.analyzed.prec_is_leq());
        let bp = basis_to_poset(&fixtures::discrete_space(1)).unwrap();
        assert_eq!(bp.analyzed.len(), 2);
        assert!(matches!(
            basis_to_poset(&fixtures::sierpinski()),
            Err(Error::NotAUnionBasis(_))
        ));
    }

    #[test]
    fn powerset_dual_is_discrete() {
        for n in 1..=3 {
            let d = ultrafilter_space(&b(n)).unwrap();
            assert_eq!(d.space.len(), n);
            assert!(d.space.is_discrete());
        }
        let d = ultrafilter_space(&b(2)).unwrap();
        assert_eq!(d.space.points(), ["U({x})", "U({y})"]);
        assert_eq!(d.open_set(1), ElemSet::singleton(0));
    }

    #[test]
    fn chain_is_not_basic() {
        let ap = AnalyzedPoset::new(fixtures::chain(3)).unwrap();
        assert!(matches!(ultrafilter_space(&ap), Err(Error::NotBasic)));
    }

    #[test]
    fn order_of_symmetric_monoid() {
        let ap = AnalyzedPoset::new(fixtures::symmetric_inverse_monoid(2).natural_order().unwrap()).unwrap();
        let d = ultrafilter_space(&ap).unwrap();
        assert_eq!(d.space.len(), 4);
        assert!(d.space.is_discrete());
    }

    #[test]
    fn round_trips() {
        for n in 1..=3 {
            let rt = round_trip_space(&fixtures::discrete_space(n)).unwrap();
            assert!(rt.homeomorphism);
            assert!(round_trip_poset(&b(n)).unwrap().order_isomorphism);
        }
    }

    #[test]
    fn abc_examples() {
        let ap = b(2);
        let d = ultrafilter_space(&ap).unwrap();
        // {x} = 1, {y} = 2, top = 3
        assert_eq!(abc_witness(&ap, &d, 1, 3, ElemSet::singleton(2)).unwrap(), AbcOutcome::Witness(0));
        assert_eq!(
            abc_witness(&ap, &d, 1, 3, ElemSet::singleton(1)).unwrap(),
            AbcOutcome::NoWitnessNeeded(vec![1])
        );
        let ap = b(3);
        let d = ultrafilter_space(&ap).unwrap();
        let c: ElemSet = [2, 4].into_iter().collect();
        assert_eq!(abc_witness(&ap, &d, 1, 7, c).unwrap(), AbcOutcome::Witness(0));
        assert!(matches!(abc_witness(&ap, &d, 3, 1, c), Err(Error::Precondition(_))));
    }
}
