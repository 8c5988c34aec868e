//! Étale bases of finite groupoids and the inverse semigroups they form.

use serde::Serialize;

use super::lenz::{ultrafilter_groupoid, within_bihausdorff_bisection};
use super::FiniteGroupoid;
use crate::bits::ElemSet;
use crate::error::{ensure, Error, Result};
use crate::isg::classify::{classify_semigroup, AnalyzedSemigroup};
use crate::isg::FiniteInverseSemigroup;
use crate::topology::FiniteSpace;

#[derive(Debug, Clone)]
pub struct EtaleSemigroup {
    /// Element `i` is the basis set `sets[i]`.
    pub analyzed: AnalyzedSemigroup,
    pub sets: Vec<ElemSet>,
    pub union_etale: bool,
    pub simeq_basic: Option<bool>,
}

/// Validates the étale basis conditions and builds the semigroup of basis
/// sets under pointwise product and inverse.
pub fn groupoid_to_semigroup(g: &FiniteGroupoid, basis: &[ElemSet]) -> Result<EtaleSemigroup> {
    let not_etale = |msg: String| Error::NotEtaleBasis(msg);
    let space = FiniteSpace::new(g.ids().to_vec(), basis.to_vec()).map_err(|e| not_etale(e.to_string()))?;
    if !space.is_discrete() {
        return Err(not_etale("basis does not generate the discrete topology".into()));
    }
    let index = |s: ElemSet| basis.iter().position(|&b| b == s);
    let zero = index(ElemSet::empty()).ok_or_else(|| not_etale("the empty set is not a basis set".into()))?;
    let n = basis.len();
    let mut inv = Vec::with_capacity(n);
    for &o in basis {
        let i = index(g.set_inverse(o)).ok_or_else(|| not_etale(format!("inverse of {} is missing", g.label(o))))?;
        inv.push(i);
        if !g.set_product(g.set_inverse(o), o).is_subset(&g.units()) {
            return Err(not_etale(format!("{} is not a bisection", g.label(o))));
        }
    }
    let mut mult = Vec::with_capacity(n * n);
    for &o in basis {
        for &m in basis {
            let p = g.set_product(o, m);
            mult.push(index(p).ok_or_else(|| {
                not_etale(format!("product {}·{} = {} is missing", g.label(o), g.label(m), g.label(p)))
            })?);
        }
    }
    let ids = basis.iter().map(|&o| g.label(o)).collect();
    let sg = FiniteInverseSemigroup::new(ids, mult, inv, zero)
        .map_err(|e| Error::invariant("pointwise_semigroup", e.to_string()))?;
    let analyzed = AnalyzedSemigroup::new(sg)?;

    for i in 0..n {
        for j in 0..n {
            let (o, m) = (basis[i], basis[j]);
            let detail = || format!("{}, {}", g.label(o), g.label(m));
            ensure(analyzed.poset().leq(i, j) == o.is_subset(&m), "order_is_inclusion", detail)?;
            ensure(
                analyzed.compatible.holds(i, j) == g.is_bisection(o | m),
                "compatible_is_bisection_union",
                detail,
            )?;
        }
    }
    let union_etale = basis.iter().all(|&o| {
        basis
            .iter()
            .all(|&m| basis.contains(&(o | m)) == within_bihausdorff_bisection(g, &space, o | m))
    });
    let simeq_basic = if union_etale {
        let cls = classify_semigroup(&analyzed)?;
        ensure(cls.simeq_basic, "union_etale_is_simeq_basic", String::new)?;
        Some(true)
    } else {
        None
    };
    let out = EtaleSemigroup {
        analyzed,
        sets: basis.to_vec(),
        union_etale,
        simeq_basic,
    };
    check_point_products(g, &out)?;
    Ok(out)
}

impl EtaleSemigroup {
    pub fn semigroup(&self) -> &FiniteInverseSemigroup {
        &self.analyzed.sg
    }

    /// `U_g`: the basis sets containing `g`.
    pub fn point_filter(&self, g: usize) -> ElemSet {
        (0..self.sets.len()).filter(|&i| self.sets[i].contains(g)).collect()
    }
}

/// `U_{gh} = (U_g U_h)^⊆` on composable pairs, and for every pair: `gh`
/// defined iff `⋂ U_g U_h ≠ ∅` iff `(U_g⁻¹U_g)^⊆ = (U_h U_h⁻¹)^⊆`. Discrete
/// groupoids are T1, so both converses are asserted.
fn check_point_products(g: &FiniteGroupoid, es: &EtaleSemigroup) -> Result<()> {
    let asg = &es.analyzed;
    let sg = &asg.sg;
    let up = |xs: ElemSet| asg.poset().up_closure(xs);
    for x in 0..g.len() {
        let ux = es.point_filter(x);
        for y in 0..g.len() {
            let uy = es.point_filter(y);
            let detail = || format!("{}, {}", g.id(x), g.id(y));
            let products = sg.set_product(ux, uy);
            let defined = g.mul(x, y);
            if let Some(xy) = defined {
                ensure(up(products) == es.point_filter(xy), "point_filter_product", detail)?;
            }
            let common = products.iter().fold(g.all(), |acc, i| acc & es.sets[i]);
            let ends = up(sg.set_product(sg.set_inverse(ux), ux)) == up(sg.set_product(uy, sg.set_inverse(uy)));
            ensure(defined.is_some() == !common.is_empty(), "defined_iff_common_arrow", detail)?;
            ensure(defined.is_some() == ends, "defined_iff_ends_match", detail)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupoidRoundTrip {
    pub semigroup_size: usize,
    pub ultrafilters: usize,
    /// Arrow `g` of the input maps to arrow `map[g]` of the reconstruction.
    pub map: Vec<usize>,
    pub simeq_basic: Option<bool>,
}

/// Rebuilds the groupoid from its ultrafilters and confirms an isomorphism
/// `g ↦ U_g`, also found independently by search.
pub fn groupoid_round_trip(g: &FiniteGroupoid, basis: &[ElemSet]) -> Result<GroupoidRoundTrip> {
    let es = groupoid_to_semigroup(g, basis)?;
    let ug = ultrafilter_groupoid(&es.analyzed)?;
    let map = (0..g.len())
        .map(|x| {
            let ux = es.point_filter(x);
            ug.ultrafilters
                .iter()
                .position(|&u| u == ux)
                .ok_or_else(|| Error::invariant("point_filter_is_ultrafilter", g.id(x).to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    ensure(g.is_isomorphism(&ug.groupoid, &map), "point_filters_isomorphism", || format!("{map:?}"))?;
    ensure(g.find_isomorphism(&ug.groupoid).is_some(), "isomorphism_search", String::new)?;
    Ok(GroupoidRoundTrip {
        semigroup_size: es.sets.len(),
        ultrafilters: ug.ultrafilters.len(),
        map,
        simeq_basic: es.simeq_basic,
    })
}
