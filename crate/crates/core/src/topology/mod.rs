//! Finite topological spaces given by a basis.
//!
//! In a finite space every subset is compact, so compact containment
//! `O ⋐ N` reduces to `O ⊆ N` (take the compact set to be `O` itself).

pub mod duality;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bits::ElemSet;
use crate::error::{Error, Result};

/// Largest number of points for which the open sets are enumerated.
pub const MAX_POINTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    basis: Vec<ElemSet>,
    opens: Vec<ElemSet>,
    nbhd: Vec<ElemSet>,
}

impl FiniteSpace {
    /// Validates that `basis` is a basis for a topology on the points.
    pub fn new(points: Vec<String>, basis: Vec<ElemSet>) -> Result<FiniteSpace> {
        let n = points.len();
        if n > MAX_POINTS {
            return Err(Error::CarrierTooLarge {
                size: n,
                cap: MAX_POINTS,
            });
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p.as_str()) {
                return Err(Error::DuplicateId(p.clone()));
            }
        }
        let all = ElemSet::full(n);
        let mut distinct = BTreeSet::new();
        for b in &basis {
            if !b.is_subset(&all) {
                return Err(Error::schema("basis", "basis set mentions an unknown point"));
            }
            if !distinct.insert(b.to_vec()) {
                return Err(Error::schema("basis", format!("duplicate basis set {:?}", b.to_vec())));
            }
        }
        let covered = basis.iter().fold(ElemSet::empty(), |acc, b| acc | *b);
        if let Some(x) = (all - covered).first() {
            return Err(Error::NotABasis(format!("point `{}` is not covered", points[x])));
        }
        let nbhd: Vec<ElemSet> = (0..n)
            .map(|x| {
                basis
                    .iter()
                    .filter(|b| b.contains(x))
                    .fold(all, |acc, b| acc & *b)
            })
            .collect();
        for (i, b1) in basis.iter().enumerate() {
            for b2 in &basis[i..] {
                for x in (*b1 & *b2).iter() {
                    let inside = basis.iter().any(|b3| b3.contains(x) && b3.is_subset(&(*b1 & *b2)));
                    if !inside {
                        return Err(Error::NotABasis(format!(
                            "no basis set around `{}` inside an intersection",
                            points[x]
                        )));
                    }
                }
            }
        }
        let mut opens: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier = vec![ElemSet::empty()];
        opens.insert(Vec::new());
        while let Some(o) = frontier.pop() {
            for b in &basis {
                let u = o | *b;
                if opens.insert(u.to_vec()) {
                    frontier.push(u);
                }
            }
        }
        let opens = opens.into_iter().map(|v| v.into_iter().collect()).collect();
        Ok(FiniteSpace {
            points,
            basis,
            opens,
            nbhd,
        })
    }

    /// The discrete space whose basis is every subset.
    pub fn discrete(points: Vec<String>) -> Result<FiniteSpace> {
        let n = points.len();
        if n > MAX_POINTS {
            return Err(Error::CarrierTooLarge {
                size: n,
                cap: MAX_POINTS,
            });
        }
        let basis = (0u32..(1 << n))
            .map(|bits| (0..n).filter(|i| bits >> i & 1 == 1).collect())
            .collect();
        FiniteSpace::new(points, basis)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point(&self, x: usize) -> &str {
        &self.points[x]
    }

    pub fn basis(&self) -> &[ElemSet] {
        &self.basis
    }

    /// All open sets, sorted by member lists.
    pub fn opens(&self) -> &[ElemSet] {
        &self.opens
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    /// The smallest open set containing `x`.
    pub fn neighbourhood(&self, x: usize) -> ElemSet {
        self.nbhd[x]
    }

    pub fn interior(&self, a: ElemSet) -> ElemSet {
        self.basis
            .iter()
            .filter(|b| b.is_subset(&a))
            .fold(ElemSet::empty(), |acc, b| acc | *b)
    }

    pub fn closure(&self, a: ElemSet) -> ElemSet {
        self.all() - self.interior(self.all() - a)
    }

    pub fn is_open(&self, a: ElemSet) -> bool {
        self.interior(a) == a
    }

    /// Every cover of a finite set has a finite subcover.
    pub fn is_compact(&self, _a: ElemSet) -> bool {
        true
    }

    /// `O ⋐ N`: some compact `C` has `O ⊆ C ⊆ N`.
    pub fn compactly_contained(&self, o: ElemSet, n: ElemSet) -> bool {
        o.is_subset(&n) && self.is_compact(o)
    }

    /// Distinct points of `a` can be separated by open sets within `a`.
    pub fn is_hausdorff_subset(&self, a: ElemSet) -> bool {
        a.iter().all(|x| {
            a.iter()
                .filter(|&y| y > x)
                .all(|y| !(self.nbhd[x] & self.nbhd[y]).intersects(&a))
        })
    }

    /// `a` lies inside a compact Hausdorff subset.
    pub fn within_compact_hausdorff(&self, a: ElemSet) -> bool {
        self.is_compact(a) && self.is_hausdorff_subset(a)
    }

    pub fn is_hausdorff(&self) -> bool {
        self.is_hausdorff_subset(self.all())
    }

    pub fn is_t0(&self) -> bool {
        (0..self.len()).all(|x| (0..x).all(|y| !(self.nbhd[x].contains(y) && self.nbhd[y].contains(x))))
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.len()).all(|x| self.nbhd[x] == ElemSet::singleton(x))
    }

    pub fn is_locally_hausdorff(&self) -> bool {
        (0..self.len()).all(|x| self.is_hausdorff_subset(self.nbhd[x]))
    }

    /// Every point has a neighbourhood base of sets compactly contained in
    /// any given open neighbourhood.
    pub fn is_locally_compact(&self) -> bool {
        (0..self.len()).all(|x| {
            self.opens.iter().filter(|o| o.contains(x)).all(|&o| {
                self.opens
                    .iter()
                    .any(|&m| m.contains(x) && self.compactly_contained(m, o))
            })
        })
    }

    /// First failure of the ∪-basis conditions for the given basis.
    pub fn union_basis_violation(&self) -> Option<UnionBasisViolation> {
        if !self.basis.contains(&ElemSet::empty()) {
            return Some(UnionBasisViolation::MissingEmpty);
        }
        for (i, &o) in self.basis.iter().enumerate() {
            for (j, &n) in self.basis.iter().enumerate() {
                let u = o | n;
                let in_basis = self.basis.contains(&u);
                let bounded = self.within_compact_hausdorff(u);
                if in_basis && !bounded {
                    return Some(UnionBasisViolation::UnionNotHausdorff { left: i, right: j });
                }
                if bounded && !in_basis {
                    return Some(UnionBasisViolation::UnionMissing { left: i, right: j });
                }
            }
        }
        None
    }

    pub fn is_union_basis(&self) -> bool {
        self.union_basis_violation().is_none()
    }

    /// Renders a subset as `{p,q}` using point ids.
    pub fn label(&self, a: ElemSet) -> String {
        let names: Vec<&str> = a.iter().map(|x| self.points[x].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnionBasisViolation {
    MissingEmpty,
    /// The union of two basis sets is in the basis but not Hausdorff.
    UnionNotHausdorff { left: usize, right: usize },
    /// The union of two basis sets is Hausdorff but not in the basis.
    UnionMissing { left: usize, right: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThreeWay {
    pub first: bool,
    pub second: bool,
    pub third: bool,
}

impl ThreeWay {
    pub fn agree(&self) -> bool {
        self.first == self.second && self.second == self.third
    }
}

/// Three conditions that coincide on every space:
/// some basis is a ∪-basis; locally compact and locally Hausdorff; every
/// point has a compact Hausdorff neighbourhood.
pub fn lclh_characterizations(x: &FiniteSpace) -> ThreeWay {
    // the only candidate: all open sets inside a compact Hausdorff set
    let candidate: Vec<ElemSet> = x
        .opens()
        .iter()
        .copied()
        .filter(|&o| x.within_compact_hausdorff(o))
        .collect();
    let first = FiniteSpace::new(x.points.clone(), candidate)
        .map(|y| y.opens == x.opens && y.is_union_basis())
        .unwrap_or(false);
    let second = x.is_locally_compact() && x.is_locally_hausdorff();
    let third = (0..x.len()).all(|p| {
        let core = x.neighbourhood(p);
        let rest = (x.all() - core).to_vec();
        if rest.len() > 12 {
            return x.within_compact_hausdorff(core);
        }
        (0u32..(1 << rest.len())).any(|bits| {
            let c = rest
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .fold(core, |mut acc, (_, &y)| {
                    acc.insert(y);
                    acc
                });
            x.interior(c).contains(p) && x.within_compact_hausdorff(c)
        })
    });
    ThreeWay { first, second, third }
}

/// On T0 locally compact spaces: Hausdorff; compact subsets are closed;
/// `O ⋐ N` gives `cl(O) ⊆ N` for basis sets.
pub fn hausdorff_characterizations(x: &FiniteSpace) -> ThreeWay {
    let first = x.is_hausdorff();
    let second = (0u32..(1 << x.len()))
        .map(|bits| (0..x.len()).filter(|i| bits >> i & 1 == 1).collect::<ElemSet>())
        .all(|c| !x.is_compact(c) || x.closure(c) == c);
    let third = x.basis().iter().all(|&o| {
        x.basis()
            .iter()
            .all(|&n| !x.compactly_contained(o, n) || x.closure(o).is_subset(&n))
    });
    ThreeWay { first, second, third }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn discrete_three_points_minimal_basis_is_not_union_basis() {
        let pts = vec!["1".to_string(), "2".to_string(), "3".to_string()];
        let x = FiniteSpace::new(pts, vec![ElemSet::empty(), set(&[0]), set(&[1]), set(&[2])]).unwrap();
        assert!(x.is_discrete());
        assert_eq!(
            x.union_basis_violation(),
            Some(UnionBasisViolation::UnionMissing { left: 1, right: 2 })
        );
        assert_eq!(x.opens().len(), 8);
    }

    #[test]
    fn sierpinski_space() {
        let x = fixtures::sierpinski();
        assert!(!x.is_hausdorff());
        assert!(x.is_t0());
        assert!(!x.is_union_basis());
        assert!(!x.is_locally_hausdorff());
        let h = hausdorff_characterizations(&x);
        assert!(h.agree() && !h.first);
        let l = lclh_characterizations(&x);
        assert!(l.agree() && !l.first);
    }

    #[test]
    fn discrete_powerset_is_union_basis() {
        for n in 0..=4 {
            let x = fixtures::discrete_space(n);
            assert!(x.is_union_basis());
            let l = lclh_characterizations(&x);
            assert!(l.agree() && l.first);
        }
    }

    #[test]
    fn closure_and_interior() {
        let x = fixtures::sierpinski();
        // points: 0 open, 1 closed
        assert_eq!(x.closure(set(&[0])), set(&[0, 1]));
        assert_eq!(x.closure(set(&[1])), set(&[1]));
        assert_eq!(x.interior(set(&[1])), ElemSet::empty());
        assert!(x.compactly_contained(set(&[0]), set(&[0, 1])));
        assert!(!x.compactly_contained(set(&[0, 1]), set(&[0])));
    }

    #[test]
    fn invalid_basis_is_rejected() {
        let pts = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let err = FiniteSpace::new(pts.clone(), vec![set(&[0, 1]), set(&[1, 2])]).unwrap_err();
        assert!(matches!(err, Error::NotABasis(_)));
        let err = FiniteSpace::new(pts, vec![set(&[0, 1])]).unwrap_err();
        assert!(matches!(err, Error::NotABasis(_)));
    }
}
