//! Finite groupoids given by a partial product table, taken with the
//! discrete topology.

pub mod etale;
pub mod lenz;

use std::collections::HashSet;

use crate::bits::ElemSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    ids: Vec<String>,
    /// `product[g * n + h]` is `gh` when defined.
    product: Vec<Option<usize>>,
    inv: Vec<usize>,
    units: ElemSet,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::NotAGroupoid(msg.into())
}

impl FiniteGroupoid {
    pub fn new(ids: Vec<String>, product: Vec<Option<usize>>, inv: Vec<usize>, units: ElemSet) -> Result<Self> {
        let n = ids.len();
        if n > ElemSet::CAPACITY {
            return Err(Error::CarrierTooLarge {
                size: n,
                cap: ElemSet::CAPACITY,
            });
        }
        if product.len() != n * n {
            return Err(Error::schema("product", format!("expected {} entries, found {}", n * n, product.len())));
        }
        if inv.len() != n {
            return Err(Error::schema("inv", format!("expected {n} entries, found {}", inv.len())));
        }
        if product.iter().flatten().chain(&inv).any(|&x| x >= n) || !units.is_subset(&ElemSet::full(n)) {
            return Err(Error::schema("product", "arrow index out of range"));
        }
        let mut seen = HashSet::new();
        for id in &ids {
            if !seen.insert(id.as_str()) {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        let g = FiniteGroupoid {
            ids,
            product,
            inv,
            units,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        let id = |x: usize| self.ids[x].as_str();
        for x in 0..n {
            if self.inv[self.inv[x]] != x {
                return Err(bad(format!("inverse of `{}` is not an involution", id(x))));
            }
            let (Some(s), Some(r)) = (self.mul(self.inv[x], x), self.mul(x, self.inv[x])) else {
                return Err(bad(format!("`{}` is not composable with its inverse", id(x))));
            };
            if !self.units.contains(s) || !self.units.contains(r) {
                return Err(bad(format!("source or range of `{}` is not a unit", id(x))));
            }
            if self.mul(r, x) != Some(x) || self.mul(x, s) != Some(x) {
                return Err(bad(format!("unit laws fail at `{}`", id(x))));
            }
            let unit_like = self.mul(x, x) == Some(x) && self.inv[x] == x;
            if unit_like != self.units.contains(x) {
                return Err(bad(format!("`{}` is misclassified as unit or non-unit", id(x))));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let composable = self.source(x) == self.range(y);
                match self.mul(x, y) {
                    Some(_) if !composable => {
                        return Err(bad(format!("`{}·{}` is defined but the ends differ", id(x), id(y))));
                    }
                    None if composable => {
                        return Err(bad(format!("`{}·{}` is undefined but the ends match", id(x), id(y))));
                    }
                    Some(p) if self.source(p) != self.source(y) || self.range(p) != self.range(x) => {
                        return Err(bad(format!("`{}·{}` has the wrong ends", id(x), id(y))));
                    }
                    _ => {}
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let Some(xy) = self.mul(x, y) else { continue };
                for z in 0..n {
                    let Some(yz) = self.mul(y, z) else { continue };
                    if self.mul(xy, z) != self.mul(x, yz) {
                        return Err(bad(format!("not associative at ({}, {}, {})", id(x), id(y), id(z))));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, g: usize) -> &str {
        &self.ids[g]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.ids
            .iter()
            .position(|s| s == id)
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn mul(&self, g: usize, h: usize) -> Option<usize> {
        self.product[g * self.len() + h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn units(&self) -> ElemSet {
        self.units
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    /// `g⁻¹g`
    pub fn source(&self, g: usize) -> usize {
        self.mul(self.inv[g], g).expect("validated")
    }

    /// `gg⁻¹`
    pub fn range(&self, g: usize) -> usize {
        self.mul(g, self.inv[g]).expect("validated")
    }

    /// `{gh : g ∈ xs, h ∈ ys, gh defined}`
    pub fn set_product(&self, xs: ElemSet, ys: ElemSet) -> ElemSet {
        let mut out = ElemSet::empty();
        for g in xs.iter() {
            for h in ys.iter() {
                if let Some(p) = self.mul(g, h) {
                    out.insert(p);
                }
            }
        }
        out
    }

    pub fn set_inverse(&self, xs: ElemSet) -> ElemSet {
        xs.iter().map(|g| self.inv[g]).collect()
    }

    /// `B⁻¹B` and `BB⁻¹` consist of units.
    pub fn is_bisection(&self, b: ElemSet) -> bool {
        let inv = self.set_inverse(b);
        self.set_product(inv, b).is_subset(&self.units) && self.set_product(b, inv).is_subset(&self.units)
    }

    /// Every bisection, ordered by size and then by member lists.
    pub fn all_bisections(&self) -> Vec<ElemSet> {
        fn go(
            g: &FiniteGroupoid,
            x: usize,
            cur: ElemSet,
            sources: ElemSet,
            ranges: ElemSet,
            out: &mut Vec<ElemSet>,
        ) {
            if x == g.len() {
                out.push(cur);
                return;
            }
            go(g, x + 1, cur, sources, ranges, out);
            let (s, r) = (g.source(x), g.range(x));
            if !sources.contains(s) && !ranges.contains(r) {
                let mut next = cur;
                next.insert(x);
                let mut ns = sources;
                ns.insert(s);
                let mut nr = ranges;
                nr.insert(r);
                go(g, x + 1, next, ns, nr, out);
            }
        }
        let mut out = Vec::new();
        go(self, 0, ElemSet::empty(), ElemSet::empty(), ElemSet::empty(), &mut out);
        out.sort_by_key(|b| (b.len(), b.to_vec()));
        out
    }

    /// `{g,h}` using arrow ids.
    pub fn label(&self, xs: ElemSet) -> String {
        let names: Vec<&str> = xs.iter().map(|g| self.id(g)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn is_isomorphism(&self, other: &FiniteGroupoid, map: &[usize]) -> bool {
        let n = self.len();
        if other.len() != n || map.len() != n {
            return false;
        }
        let image: ElemSet = map.iter().copied().collect();
        if image.len() != n || map.iter().any(|&x| x >= n) {
            return false;
        }
        (0..n).all(|g| {
            map[self.inv[g]] == other.inv[map[g]]
                && (0..n).all(|h| self.mul(g, h).map(|p| map[p]) == other.mul(map[g], map[h]))
        })
    }

    /// Exhaustive backtracking search for an isomorphism onto `other`.
    pub fn find_isomorphism(&self, other: &FiniteGroupoid) -> Option<Vec<usize>> {
        let n = self.len();
        if other.len() != n || self.units.len() != other.units.len() {
            return None;
        }
        let signature = |g: &FiniteGroupoid, x: usize| {
            let composable = (0..n).filter(|&y| g.mul(x, y).is_some()).count();
            (g.units.contains(x), g.inv[x] == x, composable)
        };
        let sig_a: Vec<_> = (0..n).map(|x| signature(self, x)).collect();
        let sig_b: Vec<_> = (0..n).map(|x| signature(other, x)).collect();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];

        fn consistent(a: &FiniteGroupoid, b: &FiniteGroupoid, map: &[usize], x: usize) -> bool {
            let fx = map[x];
            let ix = a.inv[x];
            if map[ix] != usize::MAX && map[ix] != b.inv[fx] {
                return false;
            }
            (0..=x).all(|y| {
                let fy = map[y];
                [(x, y, fx, fy), (y, x, fy, fx)].iter().all(|&(g, h, fg, fh)| match a.mul(g, h) {
                    None => b.mul(fg, fh).is_none(),
                    Some(p) => match b.mul(fg, fh) {
                        None => false,
                        Some(q) => map[p] == usize::MAX || map[p] == q,
                    },
                })
            })
        }

        #[allow(clippy::too_many_arguments)]
        fn go(
            a: &FiniteGroupoid,
            b: &FiniteGroupoid,
            sig_a: &[(bool, bool, usize)],
            sig_b: &[(bool, bool, usize)],
            x: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if x == a.len() {
                return true;
            }
            for y in 0..b.len() {
                if used[y] || sig_a[x] != sig_b[y] {
                    continue;
                }
                map[x] = y;
                used[y] = true;
                if consistent(a, b, map, x) && go(a, b, sig_a, sig_b, x + 1, map, used) {
                    return true;
                }
                used[y] = false;
                map[x] = usize::MAX;
            }
            false
        }

        if go(self, other, &sig_a, &sig_b, 0, &mut map, &mut used) {
            debug_assert!(self.is_isomorphism(other, &map));
            Some(map)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn pair_groupoid_products() {
        let g = fixtures::pair_groupoid(3);
        let a = g.index_of("(1,2)").unwrap();
        let b = g.index_of("(2,3)").unwrap();
        assert_eq!(g.mul(a, b), Some(g.index_of("(1,3)").unwrap()));
        assert_eq!(g.mul(b, a), None);
        assert_eq!(g.units().len(), 3);
        assert_eq!(g.source(a), g.index_of("(2,2)").unwrap());
        assert_eq!(g.range(a), g.index_of("(1,1)").unwrap());
    }

    #[test]
    fn bisections_of_pair_groupoid_match_partial_bijections() {
        assert_eq!(fixtures::pair_groupoid(2).all_bisections().len(), 7);
        assert_eq!(fixtures::pair_groupoid(3).all_bisections().len(), 34);
        assert_eq!(fixtures::cyclic_group_groupoid().all_bisections().len(), 3);
    }

    #[test]
    fn rejects_bad_tables() {
        // g·g undefined although g is its own inverse with matching ends
        let err = FiniteGroupoid::new(
            vec!["e".into(), "g".into()],
            vec![Some(0), Some(1), Some(1), None],
            vec![0, 1],
            ElemSet::singleton(0),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotAGroupoid(_)));
        let err = FiniteGroupoid::new(vec!["e".into()], vec![Some(0)], vec![0], ElemSet::empty()).unwrap_err();
        assert!(matches!(err, Error::NotAGroupoid(_)));
    }

    #[test]
    fn isomorphism_search() {
        let g = fixtures::pair_groupoid(2);
        let map = g.find_isomorphism(&g).unwrap();
        assert!(g.is_isomorphism(&g, &map));
        assert!(fixtures::pair_groupoid(1).find_isomorphism(&fixtures::cyclic_group_groupoid()).is_none());
        let z2 = fixtures::cyclic_group_groupoid();
        assert!(g.find_isomorphism(&z2).is_none());
    }
}
