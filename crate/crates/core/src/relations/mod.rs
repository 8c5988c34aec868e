//! Relations derived from a finite order: disjointness, rather-below and
//! the Hausdorff relation, plus the axiom checker and classifier built on
//! top of them.

pub mod axioms;
pub mod classify;
pub mod minimal;

use serde::Serialize;

use crate::bits::ElemSet;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::order::FinitePoset;

/// A binary relation between `0..rows` and `0..cols`, stored both ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    rows: Vec<ElemSet>,
    cols: Vec<ElemSet>,
}

impl Relation {
    pub fn from_rows(rows: Vec<ElemSet>, n_cols: usize) -> Relation {
        let mut cols = vec![ElemSet::empty(); n_cols];
        for (a, row) in rows.iter().enumerate() {
            for b in row.iter() {
                cols[b].insert(a);
            }
        }
        Relation { rows, cols }
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, f: impl Fn(usize, usize) -> bool) -> Relation {
        let rows = (0..n_rows)
            .map(|a| (0..n_cols).filter(|&b| f(a, b)).collect())
            .collect();
        Relation::from_rows(rows, n_cols)
    }

    pub fn empty(n_rows: usize, n_cols: usize) -> Relation {
        Relation::from_rows(vec![ElemSet::empty(); n_rows], n_cols)
    }

    #[inline]
    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    /// `{b : a R b}`
    #[inline]
    pub fn row(&self, a: usize) -> ElemSet {
        self.rows[a]
    }

    /// `{a : a R b}`
    #[inline]
    pub fn col(&self, b: usize) -> ElemSet {
        self.cols[b]
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n_rows())
            .flat_map(|a| self.rows[a].iter().map(move |b| (a, b)))
            .collect()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(r, s)| r.is_subset(s))
    }

    /// First pair of `self` missing from `other`.
    pub fn first_outside(&self, other: &Relation) -> Option<(usize, usize)> {
        (0..self.n_rows()).find_map(|a| (self.rows[a] - other.rows[a]).first().map(|b| (a, b)))
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        let rows = self.rows.iter().zip(&other.rows).map(|(r, s)| *r & *s).collect();
        Relation::from_rows(rows, self.n_cols())
    }

    /// `a (self ; other) c` iff `a self b other c` for some `b`.
    pub fn then(&self, other: &Relation) -> Relation {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().fold(ElemSet::empty(), |acc, b| acc | other.rows[b]))
            .collect();
        Relation::from_rows(rows, other.n_cols())
    }

    pub fn is_total(&self) -> bool {
        let full = ElemSet::full(self.n_cols());
        self.rows.iter().all(|r| *r == full)
    }
}

/// Which relation of an analysed poset to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Leq,
    Perp,
    Prec,
    Smile,
}

impl std::str::FromStr for RelationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "leq" => Ok(RelationKind::Leq),
            "perp" => Ok(RelationKind::Perp),
            "prec" => Ok(RelationKind::Prec),
            "smile" => Ok(RelationKind::Smile),
            other => Err(Error::UnknownProperty(other.to_string())),
        }
    }
}

/// `a ⊥ b` iff zero is their only common lower bound.
pub fn perp(p: &FinitePoset) -> Relation {
    let zero = ElemSet::singleton(p.zero());
    Relation::from_fn(p.len(), p.len(), |a, b| (p.down(a) & p.down(b)) == zero)
}

/// The rather-below relation, from its general definition.
///
/// `a ≺ b` iff `a ≤ b` and for every `c ≥ b` some `a' ⊥ a` has the property
/// that `a'` and `b` have an upper bound and every such bound lies above `c`.
/// On conditional join-semilattices the simpler form `c ≤ a' ∨ b` is
/// evaluated too and any disagreement is an error.
pub fn rather_below(p: &FinitePoset, perp: &Relation) -> Result<Relation> {
    let n = p.len();
    // dominated[x * n + b]: every c below all common upper bounds of x and b
    let dominated: Vec<ElemSet> = (0..n * n)
        .map(|k| {
            let ub = p.up(k / n) & p.up(k % n);
            if ub.is_empty() {
                ElemSet::empty()
            } else {
                ub.iter().fold(p.all(), |acc, d| acc & p.down(d))
            }
        })
        .collect();
    let prec = Relation::from_fn(n, n, |a, b| {
        p.leq(a, b) && {
            let reach = perp.row(a).iter().fold(ElemSet::empty(), |acc, x| acc | dominated[x * n + b]);
            p.up(b).is_subset(&reach)
        }
    });
    if p.is_conditional_join_semilattice() {
        let simple = Relation::from_fn(n, n, |a, b| {
            p.leq(a, b) && {
                let reach = perp
                    .row(a)
                    .iter()
                    .filter_map(|x| p.join(x, b))
                    .fold(ElemSet::empty(), |acc, j| acc | p.down(j));
                p.up(b).is_subset(&reach)
            }
        });
        if let Some((a, b)) = prec
            .first_outside(&simple)
            .or_else(|| simple.first_outside(&prec))
        {
            return Err(Error::InternalConsistency {
                check: "rather_below".into(),
                detail: format!("general and join forms disagree at ({}, {})", p.id(a), p.id(b)),
            });
        }
    }
    Ok(prec)
}

/// The Hausdorff relation relative to `prec`.
///
/// `a ⌣ b` iff for all `a' ≺ a` and `b' ≺ b` there is `c ≺ a, b` such that
/// every `c' ≺ a', b'` satisfies `c' ≺ c`.
pub fn hausdorff(n: usize, prec: &Relation) -> Relation {
    // covers[x * n + y]: all c whose ≺-down-set contains that of both x and y
    let covers: Vec<ElemSet> = (0..n * n)
        .map(|k| {
            let low = prec.col(k / n) & prec.col(k % n);
            (0..n).filter(|&c| low.is_subset(&prec.col(c))).collect()
        })
        .collect();
    let mut rows = vec![ElemSet::empty(); n];
    for a in 0..n {
        for b in a..n {
            let common = prec.col(a) & prec.col(b);
            let ok = prec.col(a).iter().all(|x| {
                prec.col(b)
                    .iter()
                    .all(|y| covers[x * n + y].intersects(&common))
            });
            if ok {
                rows[a].insert(b);
                rows[b].insert(a);
            }
        }
    }
    Relation::from_rows(rows, n)
}

/// A poset together with its derived relations.
#[derive(Debug, Clone)]
pub struct AnalyzedPoset {
    pub poset: FinitePoset,
    pub perp: Relation,
    pub prec: Relation,
    pub smile: Relation,
}

impl AnalyzedPoset {
    pub fn new(poset: FinitePoset) -> Result<AnalyzedPoset> {
        AnalyzedPoset::with_config(poset, Config::global())
    }

    pub fn with_config(poset: FinitePoset, cfg: &Config) -> Result<AnalyzedPoset> {
        cfg.check_cap(poset.len())?;
        let perp = perp(&poset);
        let prec = rather_below(&poset, &perp)?;
        let smile = hausdorff(poset.len(), &prec);
        Ok(AnalyzedPoset {
            poset,
            perp,
            prec,
            smile,
        })
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn leq_relation(&self) -> Relation {
        Relation::from_rows((0..self.len()).map(|a| self.poset.up(a)).collect(), self.len())
    }

    pub fn relation(&self, kind: RelationKind) -> Relation {
        match kind {
            RelationKind::Leq => self.leq_relation(),
            RelationKind::Perp => self.perp.clone(),
            RelationKind::Prec => self.prec.clone(),
            RelationKind::Smile => self.smile.clone(),
        }
    }

    /// `≺` coincides with `≤`.
    pub fn prec_is_leq(&self) -> bool {
        self.prec == self.leq_relation()
    }
}
