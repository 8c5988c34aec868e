//! Small worked instances with frozen expected values.

use stonework::bits::ElemSet;
use stonework::filters::{
    enumerate_prec_ultrafilters, initial_segment, is_filter, ultrafilter_characterizations, upward_closure, FilterRel,
    FilterSet,
};
use stonework::fixtures::{self, boolean_algebra, chain, e_vs_s_joins, symmetric_inverse_monoid};
use stonework::groupoid::etale::{groupoid_round_trip, groupoid_to_semigroup};
use stonework::groupoid::lenz::{morphism_multiplicativity, ultrafilter_groupoid, UltrafilterContext};
use stonework::io::Structure;
use stonework::isg::classify::{classify_semigroup, distributivity_suite, AnalyzedSemigroup};
use stonework::morphisms::{compose, from_partial_map, to_partial_map, PartialMap};
use stonework::order::FinitePoset;
use stonework::relations::classify::classify;
use stonework::relations::minimal::prec_is_minimal_auxiliary;
use stonework::relations::{AnalyzedPoset, Relation};
use stonework::topology::duality::{abc_witness, basis_to_poset, ultrafilter_space, AbcOutcome};
use stonework::topology::FiniteSpace;

fn analyzed(p: FinitePoset) -> AnalyzedPoset {
    AnalyzedPoset::new(p).unwrap()
}

fn set(p: &FinitePoset, ids: &[&str]) -> ElemSet {
    ids.iter().map(|id| p.index_of(id).unwrap()).collect()
}

fn ids(p: &FinitePoset, xs: ElemSet) -> Vec<String> {
    xs.iter().map(|a| p.id(a).to_string()).collect()
}

fn evs() -> AnalyzedSemigroup {
    AnalyzedSemigroup::new(e_vs_s_joins()).unwrap()
}

#[test]
fn joins_and_meets_in_the_six_element_semigroup() {
    let s = evs();
    let p = s.poset();
    let i = |id: &str| p.index_of(id).unwrap();
    assert_eq!(p.meet(i("1"), i("s")), None);
    assert_eq!(p.join(i("e1"), i("e2")), None);
    assert!(s.order.perp.holds(i("e1"), i("e2")));
    assert!(!s.order.smile.holds(i("1"), i("s")));
    assert!(p.leq(i("e1"), i("s")) && p.leq(i("e2"), i("s")) && !p.leq(i("s"), i("1")));
    let d = distributivity_suite(&s).unwrap();
    assert!(!d.e_distributive && d.s_distributive);
    assert!(!classify_semigroup(&s).unwrap().basic_semigroup);
}

#[test]
fn three_chain() {
    let ap = analyzed(chain(3));
    assert_eq!(ap.prec.pairs(), vec![(0, 0), (0, 1), (0, 2), (1, 2), (2, 2)]);
    assert!(!ap.perp.holds(1, 2));
    assert!(ap.smile.holds(0, 2));
    let c = classify(&ap).unwrap();
    let approximation = c.axioms.iter().find(|r| r.axiom == "approximation").unwrap();
    // everything ≺-below m is below 0, yet m ≰ 0
    assert_eq!(approximation.witness, Some(vec![1, 0]));
    assert!(!c.basic_poset);
    assert!(prec_is_minimal_auxiliary(&ap).unwrap().contained_in_all);
}

#[test]
fn boolean_algebra_on_two_letters() {
    let ap = analyzed(boolean_algebra(2));
    assert_eq!(ap.prec, ap.leq_relation());
    assert!(ap.smile.is_total());
    assert!(ap.prec.holds(0, 0));
    let c = classify(&ap).unwrap();
    assert!(c.boolean && c.generalized_boolean && c.local_boolean && c.basic_poset && c.smile_basic);
    let m = prec_is_minimal_auxiliary(&ap).unwrap();
    assert!(m.holds() && m.equals_intersection == Some(true));

    let p = &ap.poset;
    assert!(!is_filter(&ap, FilterRel::Prec, set(p, &["{x}", "{y}", "{x,y}"])));
    assert!(is_filter(&ap, FilterRel::Prec, set(p, &["{x}", "{x,y}"])));
    let u = FilterSet {
        rel: FilterRel::Prec,
        members: set(p, &["{x}", "{x,y}"]),
    };
    let top = p.index_of("{x,y}").unwrap();
    // with ≺ = ≤ the initial segment below the top keeps the top itself
    let seg = initial_segment(&ap, &u, top).unwrap();
    assert_eq!(ids(p, seg), vec!["{x}", "{x,y}"]);
    assert_eq!(upward_closure(&ap, FilterRel::Prec, seg), u.members);

    let top_filter = ElemSet::singleton(top);
    let chars = ultrafilter_characterizations(&ap, top_filter).unwrap();
    assert!(!chars.maximal && !chars.prime && !chars.complementary);
}

#[test]
fn ultrafilter_counts() {
    assert_eq!(enumerate_prec_ultrafilters(&analyzed(boolean_algebra(3))).len(), 3);
    let order = AnalyzedSemigroup::new(symmetric_inverse_monoid(2)).unwrap().order;
    let ufs = enumerate_prec_ultrafilters(&order);
    assert_eq!(ufs.len(), 4);
    let least: Vec<String> = ufs.iter().map(|&u| order.poset.id(order.poset.least(u).unwrap()).to_string()).collect();
    assert_eq!(least, vec!["{1->1}", "{1->2}", "{2->1}", "{2->2}"]);
    let c = classify(&order).unwrap();
    assert!(c.local_boolean && !c.generalized_boolean);
}

#[test]
fn sierpinski_space() {
    let x = fixtures::sierpinski();
    let open = ElemSet::singleton(0);
    assert!(x.compactly_contained(open, open));
    assert!(!x.is_hausdorff_subset(x.all()));
    assert!(!x.is_locally_hausdorff());
    assert!(x.is_locally_compact());
    assert!(!x.is_union_basis());
}

#[test]
fn discrete_space_bases() {
    let points: Vec<String> = ["1", "2", "3"].map(String::from).to_vec();
    let singletons = std::iter::once(ElemSet::empty()).chain((0..3).map(ElemSet::singleton)).collect();
    assert!(!FiniteSpace::new(points, singletons).unwrap().is_union_basis());
    let bp = basis_to_poset(&fixtures::discrete_space(3)).unwrap();
    assert_eq!(bp.analyzed.len(), 8);
    assert!(classify(&bp.analyzed).unwrap().boolean);
    let two = basis_to_poset(&fixtures::discrete_space(2)).unwrap();
    assert!(two.analyzed.prec_is_leq());
}

#[test]
fn ultrafilter_spaces() {
    for (p, points) in [
        (boolean_algebra(3), 3),
        (AnalyzedSemigroup::new(symmetric_inverse_monoid(2)).unwrap().order.poset, 4),
    ] {
        let d = ultrafilter_space(&analyzed(p)).unwrap();
        assert_eq!(d.space.len(), points);
        assert!(d.space.is_discrete());
    }
}

#[test]
fn abc_witnesses() {
    let ap = analyzed(boolean_algebra(2));
    let d = ultrafilter_space(&ap).unwrap();
    let p = &ap.poset;
    let i = |id: &str| p.index_of(id).unwrap();
    let ux = d.ultrafilters.iter().position(|u| u.contains(i("{x}")) && !u.contains(i("{y}"))).unwrap();
    assert_eq!(
        abc_witness(&ap, &d, i("{x}"), i("{x,y}"), set(p, &["{y}"])).unwrap(),
        AbcOutcome::Witness(ux)
    );
    let ap = analyzed(boolean_algebra(3));
    let d = ultrafilter_space(&ap).unwrap();
    let p = &ap.poset;
    let i = |id: &str| p.index_of(id).unwrap();
    let ux = d.ultrafilters.iter().position(|&u| p.least(u) == Some(i("{x}"))).unwrap();
    assert_eq!(
        abc_witness(&ap, &d, i("{x}"), i("{x,y,z}"), set(p, &["{y}", "{z}"])).unwrap(),
        AbcOutcome::Witness(ux)
    );

    // the path x - y - z: {x} v {y,z} is missing but {x} v {y} covers {x,y}
    let faces: [&[char]; 6] = [&[], &['x'], &['y'], &['z'], &['x', 'y'], &['y', 'z']];
    let names = vec!["0", "{x}", "{y}", "{z}", "{x,y}", "{y,z}"].into_iter().map(String::from).collect();
    let path = FinitePoset::with_minimum(names, |a, b| faces[a].iter().all(|c| faces[b].contains(c))).unwrap();
    let ap = analyzed(path);
    let d = ultrafilter_space(&ap).unwrap();
    let p = &ap.poset;
    let i = |id: &str| p.index_of(id).unwrap();
    assert_eq!(
        abc_witness(&ap, &d, i("{x,y}"), i("{x,y}"), set(p, &["{x}", "{y,z}"])).unwrap(),
        AbcOutcome::NoWitnessNeeded(vec![i("{x}"), i("{y}")])
    );
}

#[test]
fn symmetric_inverse_monoid_on_two_points() {
    let s = AnalyzedSemigroup::new(symmetric_inverse_monoid(2)).unwrap();
    assert_eq!(s.len(), 7);
    let p = s.poset();
    let i = |id: &str| s.sg.index_of(id).unwrap();
    let atoms: Vec<usize> = (0..7).filter(|&a| a != p.zero() && p.down(a).len() == 2).collect();
    let maximal: Vec<usize> = (0..7).filter(|&a| p.up(a).len() == 1).collect();
    assert_eq!((atoms.len(), maximal.len()), (4, 2));
    assert!(s.compatible.holds(i("{1->1}"), i("{2->2}")));
    assert!(!s.compatible.holds(i("{1->1,2->2}"), i("{1->2,2->1}")));
    let c = classify_semigroup(&s).unwrap();
    assert!(c.basic_semigroup && c.simeq_basic);

    let ctx = UltrafilterContext::new(&s).unwrap();
    let at = |id: &str| ctx.ultrafilters.iter().position(|&u| p.least(u) == Some(i(id))).unwrap();
    let r = ctx.action(i("{1->2,2->1}"), ctx.ultrafilters[at("{1->1}")]).unwrap();
    assert!(r.lands_in_ultrafilter && r.closure_is_ultrafilter);
    assert_eq!(r.image, Some(at("{2->1}")));

    let ug = ultrafilter_groupoid(&s).unwrap();
    assert_eq!((ug.groupoid.len(), ug.groupoid.units().len()), (4, 2));
    assert!(ug.groupoid.find_isomorphism(&fixtures::pair_groupoid(2)).is_some());
}

#[test]
fn etale_round_trips() {
    let g = fixtures::pair_groupoid(2);
    let es = groupoid_to_semigroup(&g, &g.all_bisections()).unwrap();
    assert!(es.semigroup().find_isomorphism(&symmetric_inverse_monoid(2)).is_some());
    assert_eq!(groupoid_round_trip(&g, &g.all_bisections()).unwrap().ultrafilters, 4);

    let z2 = fixtures::cyclic_group_groupoid();
    let basis: Vec<ElemSet> = std::iter::once(ElemSet::empty()).chain((0..2).map(ElemSet::singleton)).collect();
    let rt = groupoid_round_trip(&z2, &basis).unwrap();
    assert_eq!(rt.ultrafilters, 2);
}

#[test]
fn functor_between_pair_groupoids_is_multiplicative() {
    let small = fixtures::pair_groupoid(2);
    let large = fixtures::pair_groupoid(3);
    let s = groupoid_to_semigroup(&small, &small.all_bisections()).unwrap();
    let t = groupoid_to_semigroup(&large, &large.all_bisections()).unwrap();
    // (i,j) ↦ (i,j): index i·2+j goes to i·3+j
    let preimage = |o: ElemSet| -> ElemSet { (0..4).filter(|&g| o.contains(g / 2 * 3 + g % 2)).collect() };
    let rel = Relation::from_fn(s.sets.len(), t.sets.len(), |a, b| s.sets[a].is_subset(&preimage(t.sets[b])));
    assert!(morphism_multiplicativity(&rel, s.semigroup(), t.semigroup()).holds);
}

fn spaces(n: usize) -> FiniteSpace {
    fixtures::discrete_space(n)
}

#[test]
fn inclusion_and_constant_maps() {
    let incl = from_partial_map(&spaces(1), &spaces(2), &PartialMap::from_pairs(1, &[(0, 0)])).unwrap();
    assert!(incl.report.is_vee);

    let constant = from_partial_map(&spaces(2), &spaces(1), &PartialMap::from_pairs(2, &[(0, 0), (1, 0)])).unwrap();
    for a in 0..constant.source.sets.len() {
        for b in 0..constant.target.sets.len() {
            let expected = constant.target.sets[b] == ElemSet::singleton(0) || constant.source.sets[a].is_empty();
            assert_eq!(constant.rel.holds(a, b), expected);
        }
    }
}

#[test]
fn two_into_three_round_trip_and_composition() {
    let phi = PartialMap::from_pairs(2, &[(0, 0), (1, 1)]);
    let m = from_partial_map(&spaces(2), &spaces(3), &phi).unwrap();
    let back = to_partial_map(&m.rel, &m.source.analyzed, &m.target.analyzed).unwrap();
    assert!(back.total);
    // ultrafilter points are listed in the order of their atoms
    assert_eq!(back.map.image, vec![Some(0), Some(1)]);

    let psi = PartialMap::from_pairs(3, &[(0, 1), (2, 0)]);
    let n = from_partial_map(&spaces(3), &spaces(2), &psi).unwrap();
    let direct = from_partial_map(&spaces(2), &spaces(2), &phi.then(&psi)).unwrap();
    let c = compose(&m.rel, &n.rel, &m.source.analyzed, &m.target.analyzed, &n.target.analyzed, false).unwrap();
    assert_eq!(c.rel, direct.rel);
    assert!(c.is_vee);
}

#[test]
fn fixture_names_build() {
    for name in [
        "B(0)", "B(4)", "chain(3)", "diamond", "bowtie", "I(1)", "I(3)", "order(I(2))", "EvsSjoins", "semilattice2",
        "discrete(3)", "sierpinski", "pair(3)", "Z2",
    ] {
        let s = fixtures::by_name(name).unwrap();
        if let Structure::Groupoid(_, basis) = s {
            assert!(basis.is_some());
        }
    }
}
