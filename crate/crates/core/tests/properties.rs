use proptest::prelude::*;
use rand::seq::SliceRandom;

use stonework::config::Config;
use stonework::filters::{
    enumerate_prec_ultrafilters, enumerate_prec_ultrafilters_oracle, initial_segment, is_filter, proper_prec_filters,
    ultrafilter_characterizations, upward_closure, FilterRel, FilterSet,
};
use stonework::fixtures;
use stonework::io::{isg_to_json, parse_structure, poset_to_json, Structure};
use stonework::isg::classify::{classify_semigroup, AnalyzedSemigroup};
use stonework::morphisms::{closure, compose, from_partial_map, validate_morphism, PartialMap};
use stonework::order::FinitePoset;
use stonework::relations::classify::classify;
use stonework::relations::{AnalyzedPoset, Relation};
use stonework::search::{random_basic_poset, random_poset, random_semigroup, rng};
use stonework::topology::duality::ultrafilter_space;

fn poset() -> impl Strategy<Value = FinitePoset> {
    (any::<u64>(), 1usize..=8).prop_map(|(seed, n)| random_poset(&mut rng(seed), n))
}

fn basic_poset() -> impl Strategy<Value = FinitePoset> {
    any::<u64>().prop_map(|seed| random_basic_poset(&mut rng(seed), 8))
}

fn holds(c: &stonework::relations::classify::Classification, name: &str) -> bool {
    c.axioms.iter().find(|r| r.axiom == name).expect("axiom listed").holds
}

fn partial_map() -> impl Strategy<Value = (usize, usize, Vec<Option<usize>>)> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(n, m)| {
        (Just(n), Just(m), proptest::collection::vec(proptest::option::of(0..m), n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn joins_are_least_upper_bounds(p in poset()) {
        for a in 0..p.len() {
            for b in 0..p.len() {
                let ub = p.up(a) & p.up(b);
                match p.join(a, b) {
                    Some(j) => prop_assert!(ub.contains(j) && ub.iter().all(|u| p.leq(j, u))),
                    None => prop_assert!(ub.iter().all(|j| !ub.iter().all(|u| p.leq(j, u)))),
                }
            }
        }
    }

    #[test]
    fn derived_relations_are_auxiliary(p in poset()) {
        let ap = AnalyzedPoset::new(p).unwrap();
        let p = &ap.poset;
        let n = ap.len();
        prop_assert!(ap.prec.is_subset(&ap.leq_relation()));
        prop_assert!(ap.leq_relation().is_subset(&ap.smile));
        for a in 0..n {
            prop_assert!(ap.perp.holds(p.zero(), a));
            for b in 0..n {
                prop_assert_eq!(ap.perp.holds(a, b), ap.perp.holds(b, a));
                if ap.prec.holds(a, b) {
                    // a' ≤ a ≺ b ≤ b' gives a' ≺ b'
                    for a2 in p.down(a).iter() {
                        prop_assert!(p.up(b).is_subset(&ap.prec.row(a2)));
                    }
                }
            }
        }
    }

    #[test]
    fn implication_ladder(p in poset()) {
        let ap = AnalyzedPoset::new(p).unwrap();
        let c = classify(&ap).unwrap();
        let h = |name| holds(&c, name);
        prop_assert!(!h("prec_distributivity") || h("prec_decomposition"));
        prop_assert!(!h("prec_decomposition") || h("leq_decomposition"));
        prop_assert!(!h("prec_distributivity") || h("perp_distributivity"));
        prop_assert!(!h("leq_decomposition") || h("perp_decomposition"));
        prop_assert!(!h("perp_decomposition") || h("vee_preservation"));
        if c.basic_poset {
            prop_assert!(h("predomain") && h("complements") && h("locally_hausdorff"));
            prop_assert!(c.prec_is_leq);
        }
    }

    #[test]
    fn ultrafilters_match_subset_search(p in poset()) {
        let ap = AnalyzedPoset::new(p).unwrap();
        let fast = enumerate_prec_ultrafilters(&ap);
        prop_assert_eq!(&fast, &enumerate_prec_ultrafilters_oracle(&ap, &Config::default()).unwrap());
        let proper = proper_prec_filters(&ap);
        for &u in &fast {
            prop_assert!(is_filter(&ap, FilterRel::Prec, u) && !u.contains(ap.poset.zero()));
            prop_assert!(!proper.iter().any(|&v| v != u && u.is_subset(&v)));
        }
    }

    #[test]
    fn filters_are_determined_by_initial_segments(p in poset()) {
        let ap = AnalyzedPoset::new(p).unwrap();
        for members in proper_prec_filters(&ap) {
            let f = FilterSet { rel: FilterRel::Prec, members };
            for a in members.iter() {
                let seg = initial_segment(&ap, &f, a).unwrap();
                prop_assert_eq!(upward_closure(&ap, FilterRel::Prec, seg), members);
            }
        }
    }

    #[test]
    fn basic_posets_dualize(p in basic_poset()) {
        let ap = AnalyzedPoset::new(p).unwrap();
        let c = classify(&ap).unwrap();
        prop_assert!(c.basic_poset);
        let dual = ultrafilter_space(&ap).unwrap();
        prop_assert!(dual.space.is_locally_compact() && dual.space.is_locally_hausdorff());
        for u in proper_prec_filters(&ap) {
            prop_assert!(ultrafilter_characterizations(&ap, u).unwrap().agree());
        }
    }

    #[test]
    fn poset_json_round_trip(p in poset()) {
        let text = poset_to_json(&p).to_string();
        match parse_structure(&text, None).unwrap() {
            Structure::Poset(q) => prop_assert_eq!(p, q),
            other => prop_assert!(false, "parsed a {}", other.kind()),
        }
    }

    #[test]
    fn random_semigroups_classify(seed in any::<u64>()) {
        let sg = random_semigroup(&mut rng(seed), 24);
        let text = isg_to_json(&sg).to_string();
        let Structure::Semigroup(back) = parse_structure(&text, None).unwrap() else {
            panic!("expected a semigroup");
        };
        prop_assert!(sg.is_isomorphism(&back, &(0..sg.len()).collect::<Vec<_>>()));
        let asg = AnalyzedSemigroup::new(sg).unwrap();
        prop_assert!(asg.order.leq_relation().is_subset(&asg.compatible));
        classify_semigroup(&asg).unwrap();
    }

    #[test]
    fn map_morphisms_are_vee_and_closed((n, m, image) in partial_map()) {
        let x = fixtures::discrete_space(n);
        let y = fixtures::discrete_space(m);
        let mm = from_partial_map(&x, &y, &PartialMap { image }).unwrap();
        prop_assert!(mm.report.is_vee);
        let (s, t) = (&mm.source.analyzed, &mm.target.analyzed);
        prop_assert_eq!(&closure(&mm.rel, s, t).unwrap(), &mm.rel);
    }

    #[test]
    fn closure_of_basic_morphisms((n, m, image) in partial_map(), seed in any::<u64>()) {
        // thin a map morphism out pair by pair while it stays basic
        let mm = from_partial_map(&fixtures::discrete_space(n), &fixtures::discrete_space(m), &PartialMap { image }).unwrap();
        let (s, t) = (&mm.source.analyzed, &mm.target.analyzed);
        let mut pairs = mm.rel.pairs();
        pairs.shuffle(&mut rng(seed));
        let mut rel = mm.rel.clone();
        for (a, b) in pairs {
            let thinner = Relation::from_fn(s.len(), t.len(), |x, y| rel.holds(x, y) && (x, y) != (a, b));
            if validate_morphism(&thinner, s, t).unwrap().is_basic {
                rel = thinner;
            }
        }
        let once = closure(&rel, s, t).unwrap();
        prop_assert!(rel.is_subset(&once));
        prop_assert!(validate_morphism(&once, s, t).unwrap().is_vee);
        prop_assert_eq!(&closure(&once, s, t).unwrap(), &once);
    }

    #[test]
    fn basic_morphisms_compose_to_basic(
        (n, m, phi) in partial_map(),
        psi in proptest::collection::vec(proptest::option::of(0usize..3), 3),
    ) {
        let k = 3;
        let psi: Vec<Option<usize>> = psi.into_iter().take(m).collect();
        let x = fixtures::discrete_space(n);
        let y = fixtures::discrete_space(m);
        let z = fixtures::discrete_space(k);
        let first = from_partial_map(&x, &y, &PartialMap { image: phi }).unwrap();
        let second = from_partial_map(&y, &z, &PartialMap { image: psi }).unwrap();
        let c = compose(&first.rel, &second.rel, &first.source.analyzed, &first.target.analyzed, &second.target.analyzed, false).unwrap();
        prop_assert!(c.is_basic);
        let report = validate_morphism(&c.rel, &first.source.analyzed, &second.target.analyzed).unwrap();
        prop_assert_eq!(report.is_vee, c.is_vee);
    }
}
