//! Finite posets with a minimum.
//!
//! The order is given explicitly and validated as-is: nothing is closed
//! up, so a missing reflexive or transitive pair is an input error.

use std::collections::HashMap;

use crate::bits::ElemSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    ids: Vec<String>,
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
    zero: usize,
    join: Vec<Option<usize>>,
    meet: Vec<Option<usize>>,
}

impl FinitePoset {
    /// Validates `leq(a, b)` as a partial order with least element `zero`.
    pub fn from_fn(
        ids: Vec<String>,
        zero: usize,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<FinitePoset> {
        let n = ids.len();
        if n > ElemSet::CAPACITY {
            return Err(Error::CarrierTooLarge {
                size: n,
                cap: ElemSet::CAPACITY,
            });
        }
        if n == 0 {
            return Err(Error::schema("elements", "carrier is empty"));
        }
        if zero >= n {
            return Err(Error::schema("zero", "zero index out of range"));
        }
        check_unique(&ids)?;
        let mut up = vec![ElemSet::empty(); n];
        let mut down = vec![ElemSet::empty(); n];
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    up[a].insert(b);
                    down[b].insert(a);
                }
            }
        }
        for a in 0..n {
            if !up[a].contains(a) {
                return Err(Error::NotReflexive(ids[a].clone()));
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if up[a].contains(b) && up[b].contains(a) {
                    return Err(Error::NotAntisymmetric(ids[a].clone(), ids[b].clone()));
                }
            }
        }
        for a in 0..n {
            for b in up[a].iter() {
                if let Some(c) = (up[b] - up[a]).first() {
                    return Err(Error::NotTransitive(
                        ids[a].clone(),
                        ids[b].clone(),
                        ids[c].clone(),
                    ));
                }
            }
        }
        if let Some(b) = (ElemSet::full(n) - up[zero]).first() {
            return Err(Error::NoMinimum(ids[zero].clone(), ids[b].clone()));
        }
        let mut p = FinitePoset {
            ids,
            up,
            down,
            zero,
            join: Vec::new(),
            meet: Vec::new(),
        };
        p.join = (0..n * n)
            .map(|k| p.least(p.up[k / n] & p.up[k % n]))
            .collect();
        p.meet = (0..n * n)
            .map(|k| p.greatest(p.down[k / n] & p.down[k % n]))
            .collect();
        Ok(p)
    }

    /// Builds a poset from explicit `(a, b)` pairs meaning `a <= b`.
    pub fn from_pairs(ids: Vec<String>, pairs: &[(String, String)], zero: &str) -> Result<FinitePoset> {
        check_unique(&ids)?;
        let index: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let look = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownId(s.to_string()));
        let n = ids.len();
        let mut rel = vec![false; n * n];
        for (a, b) in pairs {
            rel[look(a)? * n + look(b)?] = true;
        }
        let zero = look(zero)?;
        FinitePoset::from_fn(ids, zero, |a, b| rel[a * n + b])
    }

    /// Like [`FinitePoset::from_fn`] but locates the minimum itself.
    pub fn with_minimum(ids: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<FinitePoset> {
        let n = ids.len();
        let zero = (0..n)
            .find(|&z| (0..n).all(|b| leq(z, b)))
            .ok_or_else(|| Error::NoMinimum(ids.first().cloned().unwrap_or_default(), String::new()))?;
        FinitePoset::from_fn(ids, zero, leq)
    }

    #[inline]
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

    #[inline]
    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// `{b : a <= b}`
    #[inline]
    pub fn up(&self, a: usize) -> ElemSet {
        self.up[a]
    }

    /// `{b : b <= a}`
    #[inline]
    pub fn down(&self, a: usize) -> ElemSet {
        self.down[a]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.join[a * self.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.meet[a * self.len() + b]
    }

    /// Common upper bounds of `xs`; the whole carrier when `xs` is empty.
    pub fn upper_bounds(&self, xs: ElemSet) -> ElemSet {
        xs.iter().fold(self.all(), |acc, x| acc & self.up[x])
    }

    /// Least upper bound of `xs`, if it exists.
    pub fn lub(&self, xs: ElemSet) -> Option<usize> {
        self.least(self.upper_bounds(xs))
    }

    /// The least element of `s`, if any.
    pub fn least(&self, s: ElemSet) -> Option<usize> {
        s.iter().find(|&u| s.is_subset(&self.up[u]))
    }

    /// The greatest element of `s`, if any.
    pub fn greatest(&self, s: ElemSet) -> Option<usize> {
        s.iter().find(|&u| s.is_subset(&self.down[u]))
    }

    pub fn maximum(&self) -> Option<usize> {
        self.greatest(self.all())
    }

    /// `up(xs)`: everything above some member of `xs`.
    pub fn up_closure(&self, xs: ElemSet) -> ElemSet {
        xs.iter().fold(ElemSet::empty(), |acc, x| acc | self.up[x])
    }

    /// Every pair with a common upper bound has a join.
    pub fn is_conditional_join_semilattice(&self) -> bool {
        self.first_missing_conditional_join().is_none()
    }

    pub(crate) fn first_missing_conditional_join(&self) -> Option<(usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                if self.join(a, b).is_none() && !(self.up[a] & self.up[b]).is_empty() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_join_semilattice(&self) -> bool {
        self.join.iter().all(Option::is_some)
    }

    pub fn is_lattice(&self) -> bool {
        self.is_join_semilattice() && self.meet.iter().all(Option::is_some)
    }

    /// All `(a, b)` with `a <= b`, ordered lexicographically.
    pub fn leq_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.up[a].iter().map(move |b| (a, b)))
            .collect()
    }

    /// The induced order on `members`, whose least element becomes zero.
    pub fn restrict(&self, members: ElemSet) -> Result<(FinitePoset, Vec<usize>)> {
        let keep = members.to_vec();
        let ids = keep.iter().map(|&i| self.ids[i].clone()).collect();
        let sub = FinitePoset::with_minimum(ids, |a, b| self.leq(keep[a], keep[b]))?;
        Ok((sub, keep))
    }

    /// Whether the whole poset is a Boolean lattice: bounded, distributive
    /// and complemented.
    pub fn is_boolean_lattice(&self) -> bool {
        let Some(top) = self.maximum() else {
            return false;
        };
        if !self.is_lattice() {
            return false;
        }
        let n = self.len();
        let j = |a, b| self.join(a, b).unwrap();
        let m = |a, b| self.meet(a, b).unwrap();
        for a in 0..n {
            if !(0..n).any(|b| m(a, b) == self.zero && j(a, b) == top) {
                return false;
            }
            for b in 0..n {
                for c in 0..n {
                    if m(a, j(b, c)) != j(m(a, b), m(a, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn check_unique(ids: &[String]) -> Result<()> {
    let mut seen = HashMap::new();
    for id in ids {
        if seen.insert(id.as_str(), ()).is_some() {
            return Err(Error::DuplicateId(id.clone()));
        }
    }
    Ok(())
}
