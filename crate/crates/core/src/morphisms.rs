//! Basic morphisms: relations between basic posets that correspond to
//! partial continuous maps between their ultrafilter spaces.

use serde::Serialize;

use crate::bits::ElemSet;
use crate::error::{ensure, Error, Result};
use crate::filters::image_under;
use crate::order::FinitePoset;
use crate::relations::axioms::AxiomReport;
use crate::relations::{AnalyzedPoset, Relation};
use crate::topology::duality::{basis_to_poset, ultrafilter_space, BasisPoset, UltrafilterSpace};
use crate::topology::FiniteSpace;

/// Search budget for the finite-join enumeration.
const JOIN_SEARCH_LIMIT: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Source,
    Target,
}

use Side::{Source, Target};

fn clause_report(name: &str, witness: Option<Vec<usize>>, sides: &[Side], s: &FinitePoset, t: &FinitePoset) -> AxiomReport {
    let witness_ids = witness.as_ref().map(|w| {
        w.iter()
            .zip(sides)
            .map(|(&x, side)| match side {
                Source => s.id(x).to_string(),
                Target => t.id(x).to_string(),
            })
            .collect()
    });
    AxiomReport {
        axiom: name.to_string(),
        holds: witness.is_none(),
        witness,
        witness_ids,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub clauses: Vec<AxiomReport>,
    pub is_basic: bool,
    pub is_vee: bool,
}

impl MorphismReport {
    pub fn clause(&self, name: &str) -> Option<&AxiomReport> {
        self.clauses.iter().find(|c| c.axiom == name)
    }

    fn first_failure(&self) -> String {
        self.clauses
            .iter()
            .find(|c| !c.holds)
            .map(|c| format!("{} fails at {:?}", c.axiom, c.witness_ids.clone().unwrap_or_default()))
            .unwrap_or_default()
    }
}

/// Names of the clauses, in evaluation order. The first four make a basic
/// morphism and all seven a basic ∨-morphism.
pub const CLAUSES: [&str; 7] = [
    "faithful",
    "auxiliarity",
    "pushforward",
    "vee_pullback",
    "vee_preserving",
    "lower_relation",
    "bottom",
];

fn check_shape(rel: &Relation, s: &AnalyzedPoset, t: &AnalyzedPoset) -> Result<()> {
    if rel.n_rows() != s.len() || rel.n_cols() != t.len() {
        return Err(Error::schema(
            "pairs",
            format!(
                "relation is {}×{} but the posets have {} and {} elements",
                rel.n_rows(),
                rel.n_cols(),
                s.len(),
                t.len()
            ),
        ));
    }
    Ok(())
}

/// Evaluates every clause exhaustively; the least violating tuple is kept.
pub fn validate_morphism(rel: &Relation, s: &AnalyzedPoset, t: &AnalyzedPoset) -> Result<MorphismReport> {
    check_shape(rel, s, t)?;
    let (p, q) = (&s.poset, &t.poset);
    let (n, m) = (s.len(), t.len());
    let r = |a: usize, b: usize| rel.holds(a, b);

    let faithful = (0..n).find(|&a| a != p.zero() && r(a, q.zero())).map(|a| vec![a]);

    let mut auxiliarity = None;
    'aux: for a in 0..n {
        for b in p.up(a).iter() {
            for b2 in rel.row(b).iter() {
                if let Some(a2) = (q.up(b2) - rel.row(a)).first() {
                    auxiliarity = Some(vec![a, b, b2, a2]);
                    break 'aux;
                }
            }
        }
    }

    let mut pushforward = None;
    'push: for a in 0..n {
        for b in s.prec.row(a).iter() {
            let targets = rel.row(b);
            for c2 in targets.iter() {
                for d2 in targets.iter() {
                    let ok = rel.row(a).iter().any(|b2| t.prec.holds(b2, c2) && t.prec.holds(b2, d2));
                    if !ok {
                        pushforward = Some(vec![a, b, c2, d2]);
                        break 'push;
                    }
                }
            }
        }
    }

    let mut vee_pullback = None;
    'pull: for a in 0..n {
        for b in s.prec.row(a).iter() {
            for c2 in 0..m {
                for d2 in 0..m {
                    let Some(j) = q.join(c2, d2) else { continue };
                    if !r(b, j) {
                        continue;
                    }
                    let ok = rel.col(c2).iter().any(|c| {
                        rel.col(d2)
                            .iter()
                            .any(|d| p.join(c, d).is_some_and(|cd| s.prec.holds(a, cd)))
                    });
                    if !ok {
                        vee_pullback = Some(vec![a, b, c2, d2]);
                        break 'pull;
                    }
                }
            }
        }
    }

    let pairs = rel.pairs();
    let mut vee_preserving = None;
    'pres: for &(a, a2) in &pairs {
        for &(b, b2) in &pairs {
            if let (Some(j), Some(j2)) = (p.join(a, b), q.join(a2, b2)) {
                if !r(j, j2) {
                    vee_preserving = Some(vec![a, a2, b, b2]);
                    break 'pres;
                }
            }
        }
    }

    let mut lower_relation = None;
    'lower: for a in 0..n {
        for a2 in 0..m {
            if !r(a, a2) && s.prec.col(a).is_subset(&rel.col(a2)) {
                lower_relation = Some(vec![a, a2]);
                break 'lower;
            }
        }
    }

    let bottom = (0..m).find(|&a2| !r(p.zero(), a2)).map(|a2| vec![a2]);

    let clauses = vec![
        clause_report(CLAUSES[0], faithful, &[Source], p, q),
        clause_report(CLAUSES[1], auxiliarity, &[Source, Source, Target, Target], p, q),
        clause_report(CLAUSES[2], pushforward, &[Source, Source, Target, Target], p, q),
        clause_report(CLAUSES[3], vee_pullback, &[Source, Source, Target, Target], p, q),
        clause_report(CLAUSES[4], vee_preserving, &[Source, Target, Source, Target], p, q),
        clause_report(CLAUSES[5], lower_relation, &[Source, Target], p, q),
        clause_report(CLAUSES[6], bottom, &[Target], p, q),
    ];
    let is_basic = clauses[..4].iter().all(|c| c.holds);
    let is_vee = is_basic && clauses[4..].iter().all(|c| c.holds);
    Ok(MorphismReport {
        clauses,
        is_basic,
        is_vee,
    })
}

/// Joins of all finite subsets of `members` that have one, `⋁∅ = 0`
/// included. Only antichains are visited, and branches whose upper bounds
/// run out are pruned.
pub fn finite_joins(p: &FinitePoset, members: ElemSet) -> Result<ElemSet> {
    let cand = members.to_vec();
    let mut out = ElemSet::empty();
    let mut visited = 0usize;
    #[allow(clippy::too_many_arguments)]
    fn go(
        p: &FinitePoset,
        cand: &[usize],
        i: usize,
        chosen: ElemSet,
        ub: ElemSet,
        out: &mut ElemSet,
        visited: &mut usize,
    ) -> Result<()> {
        *visited += 1;
        if *visited > JOIN_SEARCH_LIMIT {
            return Err(Error::CarrierTooLarge {
                size: cand.len(),
                cap: 22,
            });
        }
        if let Some(j) = p.least(ub) {
            out.insert(j);
        }
        for k in i..cand.len() {
            let x = cand[k];
            if chosen.iter().any(|c| p.leq(c, x) || p.leq(x, c)) {
                continue;
            }
            let next_ub = ub & p.up(x);
            if next_ub.is_empty() {
                continue;
            }
            let mut next = chosen;
            next.insert(x);
            go(p, cand, k + 1, next, next_ub, out, visited)?;
        }
        Ok(())
    }
    go(p, &cand, 0, ElemSet::empty(), p.all(), &mut out, &mut visited)?;
    Ok(out)
}

/// `a ⊑ a'` iff every `b ≺ a` has `b ≺ ⋁F` for a finite `F ⊏ a'`.
pub fn closure(rel: &Relation, s: &AnalyzedPoset, t: &AnalyzedPoset) -> Result<Relation> {
    check_shape(rel, s, t)?;
    let mut rows = vec![ElemSet::empty(); s.len()];
    for a2 in 0..t.len() {
        let joins = finite_joins(&s.poset, rel.col(a2))?;
        for (a, row) in rows.iter_mut().enumerate() {
            let covered = s
                .prec
                .col(a)
                .iter()
                .all(|b| joins.iter().any(|j| s.prec.holds(b, j)));
            if covered {
                row.insert(a2);
            }
        }
    }
    let closed = Relation::from_rows(rows, t.len());
    ensure(rel.is_subset(&closed), "closure_extends", || {
        format!("{:?}", rel.first_outside(&closed))
    })?;
    Ok(closed)
}

/// A partial map between finite spaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialMap {
    /// `image[x]` is `φ(x)` for `x` in the domain.
    pub image: Vec<Option<usize>>,
}

impl PartialMap {
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> PartialMap {
        let mut image = vec![None; n];
        for &(x, y) in pairs {
            image[x] = Some(y);
        }
        PartialMap { image }
    }

    pub fn domain(&self) -> ElemSet {
        (0..self.image.len()).filter(|&x| self.image[x].is_some()).collect()
    }

    pub fn preimage(&self, ys: ElemSet) -> ElemSet {
        (0..self.image.len())
            .filter(|&x| self.image[x].is_some_and(|y| ys.contains(y)))
            .collect()
    }

    /// `ψ ∘ φ`, defined where both steps are.
    pub fn then(&self, other: &PartialMap) -> PartialMap {
        PartialMap {
            image: self.image.iter().map(|y| y.and_then(|y| other.image[y])).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MapMorphism {
    pub source: BasisPoset,
    pub target: BasisPoset,
    pub rel: Relation,
    pub report: MorphismReport,
}

/// `a ⊏ a'` iff `a ⊆ φ⁻¹[a']`, for a continuous map on an open domain
/// between spaces with ∪-bases.
pub fn from_partial_map(x: &FiniteSpace, y: &FiniteSpace, phi: &PartialMap) -> Result<MapMorphism> {
    if phi.image.len() != x.len() || phi.image.iter().flatten().any(|&v| v >= y.len()) {
        return Err(Error::schema("pairs", "map does not fit the spaces"));
    }
    let domain = phi.domain();
    if !x.is_open(domain) {
        return Err(Error::DomainNotOpen);
    }
    if let Some(o) = y.opens().iter().find(|&&o| !x.is_open(phi.preimage(o))) {
        return Err(Error::NotContinuous(y.label(*o)));
    }
    let source = basis_to_poset(x)?;
    let target = basis_to_poset(y)?;
    let rel = Relation::from_fn(source.sets.len(), target.sets.len(), |a, a2| {
        source.sets[a].is_subset(&phi.preimage(target.sets[a2]))
    });
    let report = validate_morphism(&rel, &source.analyzed, &target.analyzed)?;
    ensure(report.is_vee, "map_gives_vee_morphism", || report.first_failure())?;

    let interior = x.interior(domain);
    for u in ultrafilters_of(&source.analyzed) {
        let meet = u.iter().fold(x.all(), |acc, i| acc & source.sets[i]);
        ensure(meet.len() == 1, "ultrafilter_meets_in_a_point", || x.label(meet))?;
        let g = meet.first().expect("singleton");
        let pushed = image_under(&rel, u);
        ensure(interior.contains(g) == !pushed.is_empty(), "domain_interior", || {
            x.point(g).to_string()
        })?;
        if let Some(h) = phi.image[g].filter(|_| !pushed.is_empty()) {
            let meet2 = pushed.iter().fold(y.all(), |acc, i| acc & target.sets[i]);
            ensure(meet2 == ElemSet::singleton(h), "image_recovery", || x.point(g).to_string())?;
        }
    }
    Ok(MapMorphism {
        source,
        target,
        rel,
        report,
    })
}

fn ultrafilters_of(ap: &AnalyzedPoset) -> Vec<ElemSet> {
    crate::filters::enumerate_prec_ultrafilters(ap)
}

#[derive(Debug, Clone)]
pub struct MorphismMap {
    pub source: UltrafilterSpace,
    pub target: UltrafilterSpace,
    /// On ultrafilter indices: `U ↦ U^⊏`.
    pub map: PartialMap,
    pub total: bool,
    pub report: MorphismReport,
}

/// `U ↦ U^⊏` on the ultrafilter spaces, defined where `U^⊏ ≠ ∅`.
pub fn to_partial_map(rel: &Relation, s: &AnalyzedPoset, t: &AnalyzedPoset) -> Result<MorphismMap> {
    let report = validate_morphism(rel, s, t)?;
    if !report.is_basic {
        return Err(Error::NotBasicMorphism(report.first_failure()));
    }
    let source = ultrafilter_space(s)?;
    let target = ultrafilter_space(t)?;
    let image = source
        .ultrafilters
        .iter()
        .map(|&u| {
            let v = image_under(rel, u);
            if v.is_empty() {
                return Ok(None);
            }
            target
                .ultrafilters
                .iter()
                .position(|&w| w == v)
                .map(Some)
                .ok_or_else(|| Error::invariant("image_is_ultrafilter", format!("{:?}", v.to_vec())))
        })
        .collect::<Result<Vec<_>>>()?;
    let map = PartialMap { image };
    let domain = map.domain();
    ensure(source.space.is_open(domain), "domain_open", String::new)?;
    for a2 in 0..t.len() {
        let pre = map.preimage(target.open_set(a2));
        let union = rel.col(a2).iter().fold(ElemSet::empty(), |acc, a| acc | source.open_set(a));
        ensure(pre == union, "preimage_of_basic_open", || t.poset.id(a2).to_string())?;
        ensure(source.space.is_open(pre), "continuity", || t.poset.id(a2).to_string())?;
    }
    let total = domain == source.space.all();
    let related: ElemSet = (0..s.len()).filter(|&a| !rel.row(a).is_empty()).collect();
    let joins = finite_joins(&s.poset, related)?;
    let cofinal = (0..s.len()).all(|a| joins.iter().any(|j| s.prec.holds(a, j)));
    ensure(total == cofinal, "cofinality", || format!("total {total}, cofinal {cofinal}"))?;
    let closed = closure(rel, s, t)?;
    for a in 0..s.len() {
        for a2 in 0..t.len() {
            let inside = source.open_set(a).is_subset(&map.preimage(target.open_set(a2)));
            ensure(closed.holds(a, a2) == inside, "closure_is_preimage_inclusion", || {
                format!("{}, {}", s.poset.id(a), t.poset.id(a2))
            })?;
        }
    }
    if report.is_vee {
        ensure(closed == *rel, "closure_fixes_vee_morphisms", String::new)?;
    }
    Ok(MorphismMap {
        source,
        target,
        map,
        total,
        report,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Composite {
    #[serde(skip)]
    pub rel: Relation,
    pub is_basic: bool,
    pub is_vee: bool,
    pub closed: bool,
    pub report: MorphismReport,
}

/// Relational composite `a (⊏∘⊏') a''` iff `a ⊏ a' ⊏' a''` for some `a'`.
/// Basic morphisms compose to basic morphisms; the ∨ clauses are only
/// reported. With `close`, the ⊑-closure of the composite is returned.
pub fn compose(
    first: &Relation,
    second: &Relation,
    s: &AnalyzedPoset,
    mid: &AnalyzedPoset,
    t: &AnalyzedPoset,
    close: bool,
) -> Result<Composite> {
    if first.n_cols() != second.n_rows() || first.n_cols() != mid.len() {
        return Err(Error::schema("target", "source and target of the composite do not match"));
    }
    let both_basic = validate_morphism(first, s, mid)?.is_basic && validate_morphism(second, mid, t)?.is_basic;
    let mut rel = first.then(second);
    let mut report = validate_morphism(&rel, s, t)?;
    if both_basic {
        ensure(report.is_basic, "composite_is_basic", || report.first_failure())?;
    }
    if close {
        rel = closure(&rel, s, t)?;
        report = validate_morphism(&rel, s, t)?;
    }
    Ok(Composite {
        is_basic: report.is_basic,
        is_vee: report.is_vee,
        closed: close,
        rel,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn b(n: usize) -> AnalyzedPoset {
        AnalyzedPoset::new(fixtures::boolean_algebra(n)).unwrap()
    }

    #[test]
    fn identity_and_empty() {
        let ap = b(2);
        let leq = ap.leq_relation();
        let r = validate_morphism(&leq, &ap, &ap).unwrap();
        assert!(r.is_vee);
        let empty = Relation::empty(4, 4);
        let r = validate_morphism(&empty, &ap, &ap).unwrap();
        assert!(r.is_basic && !r.is_vee);
        assert_eq!(r.clause("bottom").unwrap().witness_ids, Some(vec!["{}".to_string()]));
        assert_eq!(closure(&leq, &ap, &ap).unwrap(), leq);
    }

    #[test]
    fn broken_auxiliarity_is_reported() {
        let ap = b(1);
        let rel = Relation::from_fn(2, 2, |a, c| a <= c);
        let r = validate_morphism(&rel, &ap, &ap).unwrap();
        assert!(r.is_vee);
        let rel = Relation::from_fn(2, 2, |a, c| a == 1 && c == 1);
        let r = validate_morphism(&rel, &ap, &ap).unwrap();
        assert_eq!(r.clause("auxiliarity").unwrap().witness, Some(vec![0, 1, 1, 1]));
    }

    #[test]
    fn inclusion_map() {
        let x = fixtures::discrete_space(1);
        let y = fixtures::discrete_space(2);
        let phi = PartialMap::from_pairs(1, &[(0, 0)]);
        let m = from_partial_map(&x, &y, &phi).unwrap();
        assert!(m.report.is_vee);
        let back = to_partial_map(&m.rel, &m.source.analyzed, &m.target.analyzed).unwrap();
        assert!(back.total);
        assert_eq!(back.map.image.len(), 1);
    }

    #[test]
    fn empty_domain() {
        let x = fixtures::discrete_space(2);
        let phi = PartialMap::from_pairs(2, &[]);
        let m = from_partial_map(&x, &x, &phi).unwrap();
        assert!(m.rel.pairs().iter().all(|&(a, _)| m.source.sets[a].is_empty()));
        let back = to_partial_map(&m.rel, &m.source.analyzed, &m.target.analyzed).unwrap();
        assert!(back.map.domain().is_empty() && !back.total);
    }

    #[test]
    fn constant_map() {
        let x = fixtures::discrete_space(2);
        let y = fixtures::discrete_space(1);
        let phi = PartialMap::from_pairs(2, &[(0, 0), (1, 0)]);
        let m = from_partial_map(&x, &y, &phi).unwrap();
        for (a, a2) in m.rel.pairs() {
            assert!(m.source.sets[a].is_empty() || m.target.sets[a2] == ElemSet::singleton(0));
        }
    }

    #[test]
    fn discontinuous_maps_are_rejected() {
        let x = fixtures::sierpinski();
        let y = fixtures::discrete_space(2);
        let phi = PartialMap::from_pairs(2, &[(0, 0), (1, 1)]);
        assert!(matches!(from_partial_map(&x, &y, &phi), Err(Error::NotContinuous(_))));
        let z = fixtures::sierpinski();
        let partial = PartialMap::from_pairs(2, &[(1, 1)]);
        assert!(matches!(from_partial_map(&z, &y, &partial), Err(Error::DomainNotOpen)));
    }

    #[test]
    fn composition_with_empty() {
        let ap = b(2);
        let leq = ap.leq_relation();
        let empty = Relation::empty(4, 4);
        let c = compose(&leq, &empty, &ap, &ap, &ap, false).unwrap();
        assert!(c.rel.pairs().is_empty() && c.is_basic);
    }

    #[test]
    fn finite_joins_of_atoms() {
        let ap = b(2);
        let joins = finite_joins(&ap.poset, [1, 2].into_iter().collect()).unwrap();
        assert_eq!(joins.to_vec(), vec![0, 1, 2, 3]);
    }
}
