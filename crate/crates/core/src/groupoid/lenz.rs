//! Filter products, the action of elements on ultrafilters, and the
//! ultrafilter groupoid of a basic semigroup.

use serde::Serialize;

use super::FiniteGroupoid;
use crate::bits::ElemSet;
use crate::error::{ensure, Error, Result};
use crate::filters::{enumerate_prec_ultrafilters, filter_violation, is_filter, leq_filters, FilterRel};
use crate::isg::classify::{classify_semigroup, AnalyzedSemigroup};
use crate::isg::FiniteInverseSemigroup;
use crate::relations::axioms::AxiomReport;
use crate::relations::Relation;
use crate::topology::FiniteSpace;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterProduct {
    /// `(TU)^≤`
    pub product: Vec<usize>,
    /// `(T⁻¹T)^≤ = (UU⁻¹)^≤`
    pub sources_match: bool,
    /// `T⁻¹T ∩ UU⁻¹ = T⁻¹TUU⁻¹`
    pub idempotents_match: bool,
    /// `TU ∩ TZU = ∅` for `Z` outside `(T⁻¹T ∩ UU⁻¹)^≤`
    pub no_stray_products: bool,
    pub defined: bool,
}

fn require_leq_filter(asg: &AnalyzedSemigroup, xs: ElemSet) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::NotAFilter("the empty set".into()));
    }
    match filter_violation(&asg.order, FilterRel::Leq, xs) {
        Some(v) => Err(Error::NotAFilter(format!("{v:?}"))),
        None => Ok(()),
    }
}

fn up(asg: &AnalyzedSemigroup, xs: ElemSet) -> ElemSet {
    asg.poset().up_closure(xs)
}

/// `T⁻¹T`
fn left_idempotents(sg: &FiniteInverseSemigroup, t: ElemSet) -> ElemSet {
    sg.set_product(sg.set_inverse(t), t)
}

/// `UU⁻¹`
fn right_idempotents(sg: &FiniteInverseSemigroup, u: ElemSet) -> ElemSet {
    sg.set_product(u, sg.set_inverse(u))
}

/// `T⁻¹T ⊆ (UU⁻¹)^≤ ⇔ T⁻¹TU ⊆ U`, and then `(aU)^≤ = (TU)^≤` for `a ∈ T`.
fn check_absorption(asg: &AnalyzedSemigroup, t: ElemSet, u: ElemSet) -> Result<()> {
    let sg = &asg.sg;
    let tt = left_idempotents(sg, t);
    let lhs = tt.is_subset(&up(asg, right_idempotents(sg, u)));
    let rhs = sg.set_product(tt, u).is_subset(&u);
    ensure(lhs == rhs, "absorption", || format!("{lhs} vs {rhs}"))?;
    if rhs {
        let whole = up(asg, sg.set_product(t, u));
        for a in t.iter() {
            ensure(up(asg, sg.set_product(ElemSet::singleton(a), u)) == whole, "single_factor_product", || {
                sg.id(a).to_string()
            })?;
        }
    }
    Ok(())
}

/// `T·U = (TU)^≤` for nonempty `≤`-filters, with the three conditions for
/// the product to be defined in the Lenz groupoid evaluated separately.
pub fn lenz_product(asg: &AnalyzedSemigroup, t: ElemSet, u: ElemSet) -> Result<FilterProduct> {
    require_leq_filter(asg, t)?;
    require_leq_filter(asg, u)?;
    let sg = &asg.sg;
    let tt = left_idempotents(sg, t);
    let uu = right_idempotents(sg, u);
    let tu = sg.set_product(t, u);
    let product = up(asg, tu);
    ensure(is_filter(&asg.order, FilterRel::Leq, product), "product_is_filter", || {
        format!("{:?}", product.to_vec())
    })?;
    for f in [t, u] {
        ensure(
            sg.set_product(right_idempotents(sg, f), f) == f,
            "filter_reproduces",
            || format!("{:?}", f.to_vec()),
        )?;
    }
    check_absorption(asg, t, u)?;
    check_absorption(asg, sg.set_inverse(u), sg.set_inverse(t))?;

    let sources_match = up(asg, tt) == up(asg, uu);
    let idempotents_match = (tt & uu) == sg.set_product(tt, uu);
    let z = sg_all(sg) - up(asg, tt & uu);
    let no_stray_products = !tu.intersects(&sg.set_product(sg.set_product(t, z), u));
    ensure(
        sources_match == idempotents_match && idempotents_match == no_stray_products,
        "product_defined_clauses",
        || format!("{sources_match}, {idempotents_match}, {no_stray_products}"),
    )?;
    Ok(FilterProduct {
        product: product.to_vec(),
        sources_match,
        idempotents_match,
        no_stray_products,
        defined: sources_match,
    })
}

fn sg_all(sg: &FiniteInverseSemigroup) -> ElemSet {
    ElemSet::full(sg.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionReport {
    /// `aU ⊆ V` for some ultrafilter `V`
    pub lands_in_ultrafilter: bool,
    /// `(aU)^≤` is an ultrafilter
    pub closure_is_ultrafilter: bool,
    /// `a⁻¹a ∈ (UU⁻¹)^≤`
    pub source_in_range: bool,
    /// `a⁻¹a ∈ (UU⁻¹)^⌣` and `0 ∉ bU` for some `b ≺ a`
    pub hausdorff_and_nonzero: bool,
    /// Index of `(aU)^≤` among the ultrafilters when defined.
    pub image: Option<usize>,
    pub equivalence_asserted: bool,
}

impl ActionReport {
    pub fn clauses(&self) -> [bool; 4] {
        [
            self.lands_in_ultrafilter,
            self.closure_is_ultrafilter,
            self.source_in_range,
            self.hausdorff_and_nonzero,
        ]
    }
}

/// A semigroup with its `≺`-ultrafilters enumerated and classified once.
#[derive(Debug, Clone)]
pub struct UltrafilterContext<'a> {
    pub asg: &'a AnalyzedSemigroup,
    pub ultrafilters: Vec<ElemSet>,
    pub basic: bool,
    pub simeq_basic: bool,
}

impl<'a> UltrafilterContext<'a> {
    pub fn new(asg: &'a AnalyzedSemigroup) -> Result<UltrafilterContext<'a>> {
        let cls = classify_semigroup(asg)?;
        Ok(UltrafilterContext {
            asg,
            ultrafilters: enumerate_prec_ultrafilters(&asg.order),
            basic: cls.basic_semigroup,
            simeq_basic: cls.simeq_basic,
        })
    }

    fn position(&self, xs: ElemSet) -> Option<usize> {
        self.ultrafilters.iter().position(|&u| u == xs)
    }

    /// Evaluates the four conditions for `a` to act on the ultrafilter `u`.
    /// Their agreement is asserted only on basic semigroups.
    pub fn action(&self, a: usize, u: ElemSet) -> Result<ActionReport> {
        if self.position(u).is_none() {
            return Err(Error::Precondition("not a ≺-ultrafilter".into()));
        }
        let asg = self.asg;
        let sg = &asg.sg;
        let au = sg.set_product(ElemSet::singleton(a), u);
        let lands_in_ultrafilter = self.ultrafilters.iter().any(|v| au.is_subset(v));
        let image = self.position(up(asg, au));
        let closure_is_ultrafilter = image.is_some();
        let uu = right_idempotents(sg, u);
        let src = sg.source(a);
        let source_in_range = up(asg, uu).contains(src);
        let smiles = uu.iter().any(|x| asg.order.smile.holds(x, src));
        let nonzero = asg
            .order
            .prec
            .col(a)
            .iter()
            .any(|b| !sg.set_product(ElemSet::singleton(b), u).contains(sg.zero()));
        let report = ActionReport {
            lands_in_ultrafilter,
            closure_is_ultrafilter,
            source_in_range,
            hausdorff_and_nonzero: smiles && nonzero,
            image,
            equivalence_asserted: self.basic,
        };
        if self.basic {
            let c = report.clauses();
            ensure(c.iter().all(|&x| x == c[0]), "action_clauses", || {
                format!("{} on {:?}: {c:?}", sg.id(a), u.to_vec())
            })?;
        }
        Ok(report)
    }
}

#[derive(Debug, Clone)]
pub struct UltrafilterGroupoid {
    pub groupoid: FiniteGroupoid,
    /// Arrow `i` is `ultrafilters[i]`.
    pub ultrafilters: Vec<ElemSet>,
    /// Element `a` maps to `O_a`, the arrows containing it.
    pub open_sets: Vec<ElemSet>,
    /// Whether `{O_a}` was checked as a ∪-étale basis (on ≃-basic input).
    pub union_etale_checked: bool,
}

/// The groupoid of `≺`-ultrafilters under `U·V = (UV)^≤`.
pub fn ultrafilter_groupoid(asg: &AnalyzedSemigroup) -> Result<UltrafilterGroupoid> {
    let ctx = UltrafilterContext::new(asg)?;
    if !ctx.basic {
        return Err(Error::NotBasicSemigroup);
    }
    let sg = &asg.sg;
    let us = &ctx.ultrafilters;
    let m = us.len();
    let ids: Vec<String> = us
        .iter()
        .map(|&u| format!("U({})", sg.id(asg.poset().least(u).expect("ultrafilters have a least element"))))
        .collect();
    let mut product = Vec::with_capacity(m * m);
    for &u in us {
        for &v in us {
            let defined = up(asg, left_idempotents(sg, u)) == up(asg, right_idempotents(sg, v));
            let cell = if defined {
                let w = up(asg, sg.set_product(u, v));
                let k = ctx.position(w);
                ensure(k.is_some(), "groupoid_product_closed", || {
                    format!("{:?}·{:?}", u.to_vec(), v.to_vec())
                })?;
                k
            } else {
                None
            };
            product.push(cell);
        }
    }
    let inv = us
        .iter()
        .map(|&u| {
            ctx.position(up(asg, sg.set_inverse(u)))
                .ok_or_else(|| Error::invariant("groupoid_inverse_closed", format!("{:?}", u.to_vec())))
        })
        .collect::<Result<Vec<_>>>()?;
    let units = (0..m)
        .filter(|&i| product[i * m + i] == Some(i) && inv[i] == i)
        .collect();
    let groupoid = FiniteGroupoid::new(ids, product, inv, units)
        .map_err(|e| Error::invariant("ultrafilter_groupoid_axioms", e.to_string()))?;

    let n = sg.len();
    let open_sets: Vec<ElemSet> = (0..n)
        .map(|a| (0..m).filter(|&i| us[i].contains(a)).collect())
        .collect();
    for a in 0..n {
        ensure(
            groupoid.set_inverse(open_sets[a]) == open_sets[sg.inv(a)],
            "open_set_inverse",
            || sg.id(a).to_string(),
        )?;
        for b in 0..n {
            ensure(
                groupoid.set_product(open_sets[a], open_sets[b]) == open_sets[sg.mul(a, b)],
                "open_set_product",
                || format!("{}, {}", sg.id(a), sg.id(b)),
            )?;
        }
    }
    check_factorizations(asg)?;

    let union_etale_checked = ctx.simeq_basic;
    if ctx.simeq_basic {
        let mut basis: Vec<ElemSet> = open_sets.clone();
        basis.sort_by_key(|s| s.to_vec());
        basis.dedup();
        let space = FiniteSpace::new(groupoid.ids().to_vec(), basis.clone())
            .map_err(|e| Error::invariant("open_sets_basis", e.to_string()))?;
        for &o in &basis {
            for &n2 in &basis {
                let joined = o | n2;
                let bounded = within_bihausdorff_bisection(&groupoid, &space, joined);
                ensure(basis.contains(&joined) == bounded, "union_etale_basis", || {
                    format!("{} ∪ {}", groupoid.label(o), groupoid.label(n2))
                })?;
            }
        }
    }
    Ok(UltrafilterGroupoid {
        groupoid,
        ultrafilters: ctx.ultrafilters.clone(),
        open_sets,
        union_etale_checked,
    })
}

/// `B` lies in a compact bisection whose source and range sets are
/// Hausdorff. Both properties pass to subsets, so `B` itself is tested.
pub(crate) fn within_bihausdorff_bisection(g: &FiniteGroupoid, space: &FiniteSpace, b: ElemSet) -> bool {
    let inv = g.set_inverse(b);
    g.is_bisection(b)
        && space.is_compact(b)
        && space.is_hausdorff_subset(g.set_product(inv, b))
        && space.is_hausdorff_subset(g.set_product(b, inv))
}

/// For every `≤`-filter `W` and `ab ∈ W`: `U = (Wb⁻¹)^≤` and `V = (a⁻¹W)^≤`
/// are filters with matching ends and `W = (UV)^≤`.
pub fn check_factorizations(asg: &AnalyzedSemigroup) -> Result<()> {
    let sg = &asg.sg;
    let n = sg.len();
    for w in leq_filters(&asg.order) {
        for a in 0..n {
            for b in 0..n {
                if !w.contains(sg.mul(a, b)) {
                    continue;
                }
                let u = up(asg, sg.set_product(w, ElemSet::singleton(sg.inv(b))));
                let v = up(asg, sg.set_product(ElemSet::singleton(sg.inv(a)), w));
                let detail = || format!("{:?} with {}, {}", w.to_vec(), sg.id(a), sg.id(b));
                ensure(
                    is_filter(&asg.order, FilterRel::Leq, u) && is_filter(&asg.order, FilterRel::Leq, v),
                    "factor_filters",
                    detail,
                )?;
                ensure(
                    up(asg, left_idempotents(sg, u)) == up(asg, right_idempotents(sg, v)),
                    "factor_ends",
                    detail,
                )?;
                ensure(up(asg, sg.set_product(u, v)) == w, "factor_product", detail)?;
            }
        }
    }
    Ok(())
}

/// `a ⊏ a'` and `b ⊏ b'` give `ab ⊏ a'b'`; `a ⊏ a'` gives `a⁻¹ ⊏ a'⁻¹`.
pub fn morphism_multiplicativity(
    rel: &Relation,
    source: &FiniteInverseSemigroup,
    target: &FiniteInverseSemigroup,
) -> AxiomReport {
    let pairs = rel.pairs();
    let mut witness = None;
    'outer: for &(a, a2) in &pairs {
        if !rel.holds(source.inv(a), target.inv(a2)) {
            witness = Some(vec![a, a2]);
            break;
        }
        for &(b, b2) in &pairs {
            if !rel.holds(source.mul(a, b), target.mul(a2, b2)) {
                witness = Some(vec![a, a2, b, b2]);
                break 'outer;
            }
        }
    }
    let witness_ids = witness.as_ref().map(|w: &Vec<usize>| {
        w.iter()
            .enumerate()
            .map(|(i, &x)| if i % 2 == 0 { source.id(x) } else { target.id(x) }.to_string())
            .collect()
    });
    AxiomReport {
        axiom: "multiplicative".into(),
        holds: witness.is_none(),
        witness,
        witness_ids,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn analyze(sg: FiniteInverseSemigroup) -> AnalyzedSemigroup {
        AnalyzedSemigroup::new(sg).unwrap()
    }

    #[test]
    fn semilattice_product() {
        let asg = analyze(fixtures::two_element_semilattice());
        let e = ElemSet::singleton(1);
        let r = lenz_product(&asg, e, e).unwrap();
        assert_eq!(r.product, vec![1]);
        assert!(r.defined && r.idempotents_match && r.no_stray_products);
    }

    #[test]
    fn products_of_rank_one_maps() {
        let asg = analyze(fixtures::symmetric_inverse_monoid(2));
        let sg = &asg.sg;
        let p = |id: &str| asg.poset().up(sg.index_of(id).unwrap());
        let r = lenz_product(&asg, p("{1->2}"), p("{2->1}")).unwrap();
        assert!(r.defined);
        assert_eq!(r.product, p("{1->1}").to_vec());
        let r = lenz_product(&asg, p("{1->2}"), p("{1->2}")).unwrap();
        assert!(!r.defined && !r.idempotents_match && !r.no_stray_products);
        assert!(matches!(lenz_product(&asg, ElemSet::empty(), p("{1->2}")), Err(Error::NotAFilter(_))));
    }

    #[test]
    fn action_on_ultrafilters() {
        let asg = analyze(fixtures::symmetric_inverse_monoid(2));
        let ctx = UltrafilterContext::new(&asg).unwrap();
        let sg = &asg.sg;
        let u = asg.poset().up(sg.index_of("{1->1}").unwrap());
        let swap = sg.index_of("{1->2,2->1}").unwrap();
        let r = ctx.action(swap, u).unwrap();
        assert!(r.clauses().iter().all(|&c| c));
        let image = ctx.ultrafilters[r.image.unwrap()];
        assert_eq!(image, asg.poset().up(sg.index_of("{2->1}").unwrap()));
        let zero = ctx.action(sg.zero(), u).unwrap();
        assert!(zero.clauses().iter().all(|&c| !c));
    }

    #[test]
    fn symmetric_monoid_gives_pair_groupoid() {
        for k in 1..=2 {
            let asg = analyze(fixtures::symmetric_inverse_monoid(k));
            let ug = ultrafilter_groupoid(&asg).unwrap();
            assert_eq!(ug.groupoid.len(), k * k);
            assert!(ug.union_etale_checked);
            assert!(ug.groupoid.find_isomorphism(&fixtures::pair_groupoid(k)).is_some());
        }
        let asg = analyze(fixtures::two_element_semilattice());
        assert_eq!(ultrafilter_groupoid(&asg).unwrap().groupoid.len(), 1);
    }

    #[test]
    fn non_basic_semigroup_is_rejected() {
        let asg = analyze(fixtures::e_vs_s_joins());
        assert!(matches!(ultrafilter_groupoid(&asg), Err(Error::NotBasicSemigroup)));
    }

    #[test]
    fn multiplicativity() {
        let s = fixtures::symmetric_inverse_monoid(2);
        let n = s.len();
        let identity = Relation::from_fn(n, n, |a, b| a == b);
        assert!(morphism_multiplicativity(&identity, &s, &s).holds);
        let a = s.index_of("{1->2}").unwrap();
        let b = s.index_of("{2->1}").unwrap();
        let ab = s.mul(a, b);
        let broken = Relation::from_fn(n, n, |x, y| x == y && x != ab);
        let r = morphism_multiplicativity(&broken, &s, &s);
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!(s.mul(w[0], w[2]), ab);
    }
}
