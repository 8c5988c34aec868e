//! Structure generators and the seeded counterexample search.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::filters::{proper_prec_filters, ultrafilter_characterizations};
use crate::fixtures::subset_label;
use crate::io::{isg_to_json, poset_to_json};
use crate::isg::classify::{classify_semigroup, AnalyzedSemigroup};
use crate::isg::{FiniteInverseSemigroup, PartialBijection};
use crate::order::FinitePoset;
use crate::relations::axioms::Axiom;
use crate::relations::classify::classify;
use crate::relations::AnalyzedPoset;

/// Largest carrier enumerated exhaustively; larger ones are only sampled.
pub const EXHAUSTIVE_MAX: usize = 6;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn element_ids(n: usize) -> Vec<String> {
    (0..n).map(|i| if i == 0 { "0".to_string() } else { format!("p{i}") }).collect()
}

/// Every naturally labelled poset on `n` elements with least element `0`:
/// `i ≤ j` only if `i ≤ j` as integers. Isomorphic copies repeat.
pub fn exhaustive_posets(n: usize) -> Vec<FinitePoset> {
    if n == 0 {
        return Vec::new();
    }
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut above = vec![ElemSet::empty(); n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                above[i].insert(j);
            }
        }
        let transitive = (1..n).all(|i| above[i].iter().all(|j| above[j].is_subset(&above[i])));
        if transitive {
            let p = FinitePoset::from_fn(element_ids(n), 0, |a, b| a == 0 || a == b || above[a].contains(b))
                .expect("closed under transitivity");
            out.push(p);
        }
    }
    out
}

/// A random poset on `n` elements with a least element: random strict
/// pairs along the labelling, closed transitively.
pub fn random_poset(rng: &mut impl Rng, n: usize) -> FinitePoset {
    let density: f64 = rng.gen_range(0.15..0.75);
    let mut above = vec![ElemSet::empty(); n];
    for i in (1..n).rev() {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                let reach = above[j];
                above[i].insert(j);
                above[i] |= reach;
            }
        }
    }
    FinitePoset::from_fn(element_ids(n), 0, |a, b| a == 0 || a == b || above[a].contains(b))
        .expect("closed under transitivity")
}

/// A random simplicial complex with at most `max_size` faces (the empty
/// face included), ordered by inclusion. These are basic posets: joins
/// are unions wherever they exist and `≺` is `≤`.
pub fn random_basic_poset(rng: &mut impl Rng, max_size: usize) -> FinitePoset {
    let max_size = max_size.max(2);
    let vertices = rng.gen_range(1..=(max_size - 1).min(7));
    let mut faces: Vec<usize> = std::iter::once(0).chain((0..vertices).map(|v| 1 << v)).collect();
    let mut attempts = rng.gen_range(0..8);
    while attempts > 0 {
        attempts -= 1;
        let facet: usize = (0..vertices).filter(|_| rng.gen_bool(0.5)).map(|v| 1 << v).sum();
        let mut next = faces.clone();
        for sub in 0..1usize << vertices {
            if sub & !facet == 0 && !next.contains(&sub) {
                next.push(sub);
            }
        }
        if next.len() <= max_size {
            faces = next;
        }
    }
    faces.sort_by_key(|&f| (f.count_ones(), f));
    let ids = faces.iter().map(|&f| subset_label(f, vertices)).collect();
    FinitePoset::from_fn(ids, 0, |a, b| faces[a] & !faces[b] == 0).expect("inclusion order is valid")
}

/// The inverse semigroup generated by a few random partial bijections,
/// rerolled until it has at most `max_size` elements.
pub fn random_semigroup(rng: &mut impl Rng, max_size: usize) -> FiniteInverseSemigroup {
    loop {
        let k = rng.gen_range(1..=3);
        let all = PartialBijection::all(k);
        let count = rng.gen_range(1..=3);
        let gens: Vec<PartialBijection> = all.choose_multiple(rng, count).cloned().collect();
        let maps = PartialBijection::generated(k, &gens);
        if maps.len() <= max_size {
            return FiniteInverseSemigroup::from_partial_bijections(&maps).expect("closed under operations");
        }
    }
}

/// Named flags of a poset: every axiom plus the class flags.
pub fn poset_properties(ap: &AnalyzedPoset) -> Result<BTreeMap<String, bool>> {
    let c = classify(ap)?;
    let mut out: BTreeMap<String, bool> = c.axioms.iter().map(|r| (r.axiom.clone(), r.holds)).collect();
    for (name, v) in [
        ("basic_poset", c.basic_poset),
        ("smile_basic", c.smile_basic),
        ("local_boolean", c.local_boolean),
        ("generalized_boolean", c.generalized_boolean),
        ("boolean", c.boolean),
        ("conditional_join_semilattice", c.conditional_join_semilattice),
        ("prec_is_leq", c.prec_is_leq),
        ("smile_total", c.smile_total),
        ("has_maximum", c.has_maximum),
    ] {
        out.insert(name.to_string(), v);
    }
    Ok(out)
}

pub const SEMIGROUP_PROPERTIES: [&str; 5] = [
    "basic_semigroup",
    "simeq_basic",
    "bi_round",
    "prec_distributive",
    "simeq_joins",
];

pub const FILTER_PROPERTIES: [&str; 3] = ["maximal", "prime", "complementary"];

const POSET_FLAGS: [&str; 9] = [
    "basic_poset",
    "smile_basic",
    "local_boolean",
    "generalized_boolean",
    "boolean",
    "conditional_join_semilattice",
    "prec_is_leq",
    "smile_total",
    "has_maximum",
];

pub fn semigroup_properties(asg: &AnalyzedSemigroup) -> Result<BTreeMap<String, bool>> {
    let c = classify_semigroup(asg)?;
    let values = [
        c.basic_semigroup,
        c.simeq_basic,
        c.bi_round,
        c.prec_distributive,
        c.simeq_joins.holds,
    ];
    Ok(SEMIGROUP_PROPERTIES.iter().map(|s| s.to_string()).zip(values).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Poset,
    Filter,
    Semigroup,
}

fn domain_of(name: &str) -> Result<Domain> {
    if FILTER_PROPERTIES.contains(&name) {
        Ok(Domain::Filter)
    } else if SEMIGROUP_PROPERTIES.contains(&name) {
        Ok(Domain::Semigroup)
    } else if POSET_FLAGS.contains(&name) || name.parse::<Axiom>().is_ok() {
        Ok(Domain::Poset)
    } else {
        Err(Error::UnknownProperty(name.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// The property the counterexample has.
    pub holds: String,
    /// The property it lacks.
    pub fails: String,
    /// Largest carrier searched.
    pub cap: usize,
    pub seed: u64,
    /// Random structures drawn after the exhaustive stage.
    pub samples: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub stage: &'static str,
    pub index: usize,
    pub structure: serde_json::Value,
    /// The separating filter, for filter properties.
    pub filter: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub holds: String,
    pub fails: String,
    pub domain: Domain,
    pub cap: usize,
    pub seed: u64,
    pub exhaustive_examined: usize,
    pub random_examined: usize,
    pub separating: usize,
    pub first: Option<Finding>,
    pub verdict: String,
}

/// Looks for a structure with `holds` and without `fails`: exhaustively
/// over small carriers, then over seeded random ones up to `cap`.
pub fn search_counterexamples(cfg: &SearchConfig) -> Result<SearchReport> {
    let domain = domain_of(&cfg.holds)?;
    if domain_of(&cfg.fails)? != domain {
        return Err(Error::Precondition(format!(
            "{} and {} are properties of different kinds of structure",
            cfg.holds, cfg.fails
        )));
    }
    let mut report = SearchReport {
        holds: cfg.holds.clone(),
        fails: cfg.fails.clone(),
        domain,
        cap: cfg.cap,
        seed: cfg.seed,
        exhaustive_examined: 0,
        random_examined: 0,
        separating: 0,
        first: None,
        verdict: String::new(),
    };
    let mut rng = rng(cfg.seed);
    fn record(report: &mut SearchReport, stage: &'static str, index: usize, found: Separation) {
        if let Some((structure, filter)) = found {
            report.separating += 1;
            if report.first.is_none() {
                report.first = Some(Finding {
                    stage,
                    index,
                    structure,
                    filter,
                });
            }
        }
    }
    match domain {
        Domain::Poset | Domain::Filter => {
            for n in 1..=cfg.cap.min(EXHAUSTIVE_MAX) {
                for p in exhaustive_posets(n) {
                    let found = separate_poset(p, cfg, domain)?;
                    let index = report.exhaustive_examined;
                    record(&mut report, "exhaustive", index, found);
                    report.exhaustive_examined += 1;
                }
            }
            for i in 0..cfg.samples {
                let n = rng.gen_range(1..=cfg.cap.max(1));
                let found = separate_poset(random_poset(&mut rng, n), cfg, domain)?;
                record(&mut report, "random", i, found);
                report.random_examined += 1;
            }
        }
        Domain::Semigroup => {
            for (i, sg) in small_semigroups(cfg.cap).into_iter().enumerate() {
                let found = separate_semigroup(sg, cfg)?;
                record(&mut report, "exhaustive", i, found);
                report.exhaustive_examined += 1;
            }
            for i in 0..cfg.samples {
                let found = separate_semigroup(random_semigroup(&mut rng, cfg.cap), cfg)?;
                record(&mut report, "random", i, found);
                report.random_examined += 1;
            }
        }
    }
    report.verdict = match &report.first {
        Some(_) => format!("separated: {} of {} structures", report.separating, report.exhaustive_examined + report.random_examined),
        None => format!("none found up to cap {}", cfg.cap),
    };
    Ok(report)
}

type Separation = Option<(serde_json::Value, Option<Vec<String>>)>;

fn separate_poset(p: FinitePoset, cfg: &SearchConfig, domain: Domain) -> Result<Separation> {
    let ap = AnalyzedPoset::new(p)?;
    if domain == Domain::Filter {
        for f in proper_prec_filters(&ap) {
            let c = ultrafilter_characterizations(&ap, f)?;
            let flag = |name: &str| match name {
                "maximal" => c.maximal,
                "prime" => c.prime,
                _ => c.complementary,
            };
            if flag(&cfg.holds) && !flag(&cfg.fails) {
                let ids = f.iter().map(|a| ap.poset.id(a).to_string()).collect();
                return Ok(Some((poset_to_json(&ap.poset), Some(ids))));
            }
        }
        return Ok(None);
    }
    let props = poset_properties(&ap)?;
    Ok((props[&cfg.holds] && !props[&cfg.fails]).then(|| (poset_to_json(&ap.poset), None)))
}

fn separate_semigroup(sg: FiniteInverseSemigroup, cfg: &SearchConfig) -> Result<Separation> {
    let asg = AnalyzedSemigroup::new(sg)?;
    let props = semigroup_properties(&asg)?;
    Ok((props[&cfg.holds] && !props[&cfg.fails]).then(|| (isg_to_json(&asg.sg), None)))
}

/// Inverse semigroups generated by one or two partial bijections of at
/// most two points, with at most `cap` elements.
pub fn small_semigroups(cap: usize) -> Vec<FiniteInverseSemigroup> {
    let mut seen: Vec<Vec<PartialBijection>> = Vec::new();
    for k in 1..=2 {
        let all = PartialBijection::all(k);
        for i in 0..all.len() {
            for j in i..all.len() {
                let maps = PartialBijection::generated(k, &[all[i].clone(), all[j].clone()]);
                if maps.len() <= cap && !seen.contains(&maps) {
                    seen.push(maps);
                }
            }
        }
    }
    seen.iter()
        .map(|m| FiniteInverseSemigroup::from_partial_bijections(m).expect("closed under operations"))
        .collect()
}
