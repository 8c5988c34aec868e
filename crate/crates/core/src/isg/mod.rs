//! Finite inverse semigroups with zero, given by multiplication tables.

pub mod classify;

use std::collections::HashMap;

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::order::FinitePoset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteInverseSemigroup {
    ids: Vec<String>,
    mult: Vec<usize>,
    inv: Vec<usize>,
    zero: usize,
}

impl FiniteInverseSemigroup {
    /// Validates associativity, the inverse laws, commuting idempotents and
    /// the zero. `mult[a * n + b]` is the product `ab`.
    pub fn new(ids: Vec<String>, mult: Vec<usize>, inv: Vec<usize>, zero: usize) -> Result<Self> {
        let n = ids.len();
        if n == 0 {
            return Err(Error::schema("elements", "carrier is empty"));
        }
        if n > ElemSet::CAPACITY {
            return Err(Error::CarrierTooLarge {
                size: n,
                cap: ElemSet::CAPACITY,
            });
        }
        if mult.len() != n * n || mult.iter().any(|&x| x >= n) {
            return Err(Error::schema("mult", format!("expected a {n}×{n} table of elements")));
        }
        if inv.len() != n || inv.iter().any(|&x| x >= n) {
            return Err(Error::schema("inv", format!("expected {n} elements")));
        }
        if zero >= n {
            return Err(Error::schema("zero", "out of range"));
        }
        let mut seen = HashMap::new();
        for id in &ids {
            if seen.insert(id.as_str(), ()).is_some() {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        let s = FiniteInverseSemigroup { ids, mult, inv, zero };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotAssociative(
                            self.ids[a].clone(),
                            self.ids[b].clone(),
                            self.ids[c].clone(),
                        ));
                    }
                }
            }
        }
        for a in 0..n {
            let ai = self.inv(a);
            if self.mul(self.mul(a, ai), a) != a || self.mul(self.mul(ai, a), ai) != ai {
                return Err(Error::NotInverse(format!(
                    "`{}` is not an inverse of `{}`",
                    self.ids[ai], self.ids[a]
                )));
            }
        }
        let idem: Vec<usize> = (0..n).filter(|&e| self.mul(e, e) == e).collect();
        for &e in &idem {
            for &f in &idem {
                if self.mul(e, f) != self.mul(f, e) {
                    return Err(Error::NotInverse(format!(
                        "idempotents `{}` and `{}` do not commute",
                        self.ids[e], self.ids[f]
                    )));
                }
            }
        }
        for a in 0..n {
            if self.mul(self.zero, a) != self.zero || self.mul(a, self.zero) != self.zero {
                return Err(Error::NoZero(format!(
                    "`{}` does not absorb `{}`",
                    self.ids[self.zero], self.ids[a]
                )));
            }
        }
        Ok(())
    }

    /// Builds the semigroup of a set of partial bijections closed under
    /// composition and inversion.
    pub fn from_partial_bijections(maps: &[PartialBijection]) -> Result<Self> {
        let index: HashMap<&PartialBijection, usize> = maps.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let look = |m: &PartialBijection| {
            index
                .get(m)
                .copied()
                .ok_or_else(|| Error::NotInverse(format!("not closed: {} is missing", m.label())))
        };
        let n = maps.len();
        let mut mult = Vec::with_capacity(n * n);
        for a in maps {
            for b in maps {
                mult.push(look(&a.then(b))?);
            }
        }
        let inv = maps.iter().map(|m| look(&m.inverse())).collect::<Result<Vec<_>>>()?;
        let zero = maps
            .iter()
            .position(|m| m.is_empty())
            .ok_or_else(|| Error::NoZero("the empty map is missing".into()))?;
        let ids = maps.iter().map(PartialBijection::label).collect();
        FiniteInverseSemigroup::new(ids, mult, inv, zero)
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

    pub fn id(&self, a: usize) -> &str {
        &self.ids[a]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.ids
            .iter()
            .position(|s| s == id)
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn with_ids(mut self, ids: Vec<String>) -> Result<Self> {
        if ids.len() != self.len() {
            return Err(Error::schema("elements", "wrong number of ids"));
        }
        self.ids = ids;
        Ok(self)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.ids.len() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> ElemSet {
        (0..self.len()).filter(|&a| self.is_idempotent(a)).collect()
    }

    /// `a⁻¹a`
    pub fn source(&self, a: usize) -> usize {
        self.mul(self.inv(a), a)
    }

    /// `aa⁻¹`
    pub fn range(&self, a: usize) -> usize {
        self.mul(a, self.inv(a))
    }

    /// The natural partial order: `a ≤ b` iff `a = eb` for an idempotent `e`.
    pub fn natural_order(&self) -> Result<FinitePoset> {
        let idem = self.idempotents();
        FinitePoset::from_fn(self.ids.clone(), self.zero, |a, b| {
            idem.iter().any(|e| self.mul(e, b) == a)
        })
    }

    /// `XY = {xy : x ∈ X, y ∈ Y}`
    pub fn set_product(&self, xs: ElemSet, ys: ElemSet) -> ElemSet {
        let mut out = ElemSet::empty();
        for x in xs.iter() {
            for y in ys.iter() {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    /// `X⁻¹`
    pub fn set_inverse(&self, xs: ElemSet) -> ElemSet {
        xs.iter().map(|x| self.inv(x)).collect()
    }

    /// The subsemigroup on `members`, which must be closed.
    pub fn restrict(&self, members: ElemSet) -> Result<(FiniteInverseSemigroup, Vec<usize>)> {
        let keep = members.to_vec();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let look = |x: usize| {
            pos.get(&x)
                .copied()
                .ok_or_else(|| Error::NotInverse(format!("subset not closed at `{}`", self.ids[x])))
        };
        let mut mult = Vec::with_capacity(keep.len() * keep.len());
        for &a in &keep {
            for &b in &keep {
                mult.push(look(self.mul(a, b))?);
            }
        }
        let inv = keep.iter().map(|&a| look(self.inv(a))).collect::<Result<Vec<_>>>()?;
        let zero = look(self.zero)?;
        let ids = keep.iter().map(|&a| self.ids[a].clone()).collect();
        Ok((FiniteInverseSemigroup::new(ids, mult, inv, zero)?, keep))
    }

    /// Whether `map` (indexed by elements of `self`) is an isomorphism onto
    /// `other`.
    pub fn is_isomorphism(&self, other: &FiniteInverseSemigroup, map: &[usize]) -> bool {
        let n = self.len();
        if other.len() != n || map.len() != n {
            return false;
        }
        let image: ElemSet = map.iter().copied().collect();
        image.len() == n
            && (0..n).all(|a| (0..n).all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])))
    }

    /// Searches for an isomorphism onto `other` by backtracking.
    pub fn find_isomorphism(&self, other: &FiniteInverseSemigroup) -> Option<Vec<usize>> {
        let n = self.len();
        if other.len() != n {
            return None;
        }
        let sig = |s: &FiniteInverseSemigroup, a: usize| {
            let left = (0..s.len()).filter(|&b| s.mul(a, b) == s.zero).count();
            let right = (0..s.len()).filter(|&b| s.mul(b, a) == s.zero).count();
            (s.is_idempotent(a), a == s.zero, left, right)
        };
        let mine: Vec<_> = (0..n).map(|a| sig(self, a)).collect();
        let theirs: Vec<_> = (0..n).map(|a| sig(other, a)).collect();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            s: &FiniteInverseSemigroup,
            t: &FiniteInverseSemigroup,
            i: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            mine: &[(bool, bool, usize, usize)],
            theirs: &[(bool, bool, usize, usize)],
        ) -> bool {
            let n = s.len();
            if i == n {
                return true;
            }
            for cand in 0..n {
                if used[cand] || mine[i] != theirs[cand] {
                    continue;
                }
                map[i] = cand;
                let consistent = (0..=i).all(|a| {
                    [(a, i), (i, a)].iter().all(|&(x, y)| {
                        let xy = s.mul(x, y);
                        xy > i || map[xy] == t.mul(map[x], map[y])
                    })
                });
                if consistent {
                    used[cand] = true;
                    if go(s, t, i + 1, map, used, mine, theirs) {
                        return true;
                    }
                    used[cand] = false;
                }
            }
            map[i] = usize::MAX;
            false
        }
        if go(self, other, 0, &mut map, &mut used, &mine, &theirs) && self.is_isomorphism(other, &map) {
            Some(map)
        } else {
            None
        }
    }
}

/// A partial bijection on `{0, .., k-1}`, composed left to right:
/// `(f.then(g))(x) = g(f(x))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBijection(pub Vec<Option<usize>>);

impl PartialBijection {
    pub fn empty(k: usize) -> Self {
        PartialBijection(vec![None; k])
    }

    pub fn identity_on(k: usize, domain: &[usize]) -> Self {
        let mut m = vec![None; k];
        for &x in domain {
            m[x] = Some(x);
        }
        PartialBijection(m)
    }

    pub fn from_pairs(k: usize, pairs: &[(usize, usize)]) -> Self {
        let mut m = vec![None; k];
        for &(x, y) in pairs {
            m[x] = Some(y);
        }
        PartialBijection(m)
    }

    pub fn then(&self, other: &PartialBijection) -> PartialBijection {
        PartialBijection(self.0.iter().map(|x| x.and_then(|y| other.0[y])).collect())
    }

    pub fn inverse(&self) -> PartialBijection {
        let mut m = vec![None; self.0.len()];
        for (x, y) in self.0.iter().enumerate() {
            if let Some(y) = y {
                m[*y] = Some(x);
            }
        }
        PartialBijection(m)
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(Option::is_none)
    }

    pub fn rank(&self) -> usize {
        self.0.iter().filter(|x| x.is_some()).count()
    }

    /// Graph of the map as `(x, f(x))` pairs.
    pub fn graph(&self) -> Vec<(usize, usize)> {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| (x, y)))
            .collect()
    }

    fn sort_key(&self) -> (usize, Vec<(usize, usize)>) {
        (self.rank(), self.graph())
    }

    /// `{1->2,2->1}` with points numbered from 1.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .graph()
            .iter()
            .map(|(x, y)| format!("{}->{}", x + 1, y + 1))
            .collect();
        format!("{{{}}}", parts.join(","))
    }

    /// All partial bijections on `k` points, ordered by rank and then
    /// lexicographically.
    pub fn all(k: usize) -> Vec<PartialBijection> {
        let mut out = Vec::new();
        let mut cur = vec![None; k];
        let mut used = vec![false; k];
        fn go(x: usize, k: usize, cur: &mut Vec<Option<usize>>, used: &mut Vec<bool>, out: &mut Vec<PartialBijection>) {
            if x == k {
                out.push(PartialBijection(cur.clone()));
                return;
            }
            cur[x] = None;
            go(x + 1, k, cur, used, out);
            for y in 0..k {
                if !used[y] {
                    used[y] = true;
                    cur[x] = Some(y);
                    go(x + 1, k, cur, used, out);
                    used[y] = false;
                }
            }
            cur[x] = None;
        }
        go(0, k, &mut cur, &mut used, &mut out);
        out.sort_by_key(PartialBijection::sort_key);
        out
    }

    /// Closure of `gens` under composition and inversion, with the empty map.
    pub fn generated(k: usize, gens: &[PartialBijection]) -> Vec<PartialBijection> {
        let mut set: Vec<PartialBijection> = vec![PartialBijection::empty(k)];
        for g in gens {
            for h in [g.clone(), g.inverse()] {
                if !set.contains(&h) {
                    set.push(h);
                }
            }
        }
        let mut i = 0;
        while i < set.len() {
            for j in 0..=i {
                for (a, b) in [(i, j), (j, i)] {
                    let c = set[a].then(&set[b]);
                    if !set.contains(&c) {
                        set.push(c);
                    }
                }
            }
            i += 1;
        }
        set.sort_by_key(PartialBijection::sort_key);
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn symmetric_inverse_monoid_sizes() {
        // sum over r of C(k,r)^2 r!
        assert_eq!(PartialBijection::all(1).len(), 2);
        assert_eq!(PartialBijection::all(2).len(), 7);
        assert_eq!(PartialBijection::all(3).len(), 34);
        assert_eq!(PartialBijection::all(4).len(), 209);
    }

    #[test]
    fn composition_is_left_to_right() {
        let f = PartialBijection::from_pairs(2, &[(0, 1)]);
        let g = PartialBijection::from_pairs(2, &[(1, 0)]);
        assert_eq!(f.then(&g), PartialBijection::identity_on(2, &[0]));
        assert_eq!(g.then(&f), PartialBijection::identity_on(2, &[1]));
        assert_eq!(f.label(), "{1->2}");
    }

    #[test]
    fn natural_order_is_restriction() {
        let s = fixtures::symmetric_inverse_monoid(2);
        let p = s.natural_order().unwrap();
        let id = s.index_of("{1->1,2->2}").unwrap();
        let e = s.index_of("{1->1}").unwrap();
        let t = s.index_of("{1->2}").unwrap();
        assert!(p.leq(e, id));
        assert!(!p.leq(t, id));
        assert_eq!(p.zero(), s.zero());
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // aa = b, ab = b, ba = a, bb = b: (aa)a = a but a(aa) = b
        let ids = vec!["0".to_string(), "a".to_string(), "b".to_string()];
        let mult = vec![0, 0, 0, 0, 2, 2, 0, 1, 2];
        let err = FiniteInverseSemigroup::new(ids, mult, vec![0, 1, 2], 0).unwrap_err();
        assert!(matches!(err, Error::NotAssociative(..)), "{err:?}");
    }

    #[test]
    fn missing_zero_is_rejected() {
        let maps = vec![PartialBijection::identity_on(1, &[0])];
        assert!(matches!(
            FiniteInverseSemigroup::from_partial_bijections(&maps),
            Err(Error::NoZero(_))
        ));
    }

    #[test]
    fn e_vs_s_idempotents_form_a_diamond() {
        let s = fixtures::e_vs_s_joins();
        assert_eq!(s.len(), 6);
        assert_eq!(s.idempotents().len(), 5);
        let (e, _) = s.restrict(s.idempotents()).unwrap();
        let pe = e.natural_order().unwrap();
        let e1 = pe.index_of("e1").unwrap();
        let e2 = pe.index_of("e2").unwrap();
        assert_eq!(pe.join(e1, e2), Some(pe.index_of("1").unwrap()));
        let ps = s.natural_order().unwrap();
        assert_eq!(ps.join(s.index_of("e1").unwrap(), s.index_of("e2").unwrap()), None);
    }

    #[test]
    fn isomorphism_search() {
        let a = fixtures::symmetric_inverse_monoid(2);
        let maps = PartialBijection::all(2);
        let mut shuffled = maps.clone();
        shuffled.reverse();
        let b = FiniteInverseSemigroup::from_partial_bijections(&shuffled).unwrap();
        let iso = a.find_isomorphism(&b).unwrap();
        assert!(a.is_isomorphism(&b, &iso));
        assert!(a.find_isomorphism(&fixtures::e_vs_s_joins()).is_none());
    }
}
