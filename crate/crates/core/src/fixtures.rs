//! Named structures buildable without an input file.

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::io::Structure;
use crate::isg::{FiniteInverseSemigroup, PartialBijection};
use crate::order::FinitePoset;
use crate::topology::FiniteSpace;

const LETTERS: [&str; 4] = ["x", "y", "z", "w"];

fn letter(i: usize) -> String {
    LETTERS.get(i).map_or_else(|| format!("p{}", i + 1), |s| s.to_string())
}

/// Subset label `{x,y}` for a bitmask over the letters.
pub fn subset_label(mask: usize, n: usize) -> String {
    let names: Vec<String> = (0..n).filter(|i| mask >> i & 1 == 1).map(letter).collect();
    format!("{{{}}}", names.join(","))
}

/// The powerset algebra on `n` letters; element `i` is the bitmask `i`.
pub fn boolean_algebra(n: usize) -> FinitePoset {
    let ids = (0..1usize << n).map(|m| subset_label(m, n)).collect();
    FinitePoset::from_fn(ids, 0, |a, b| a & !b == 0).expect("powerset order is valid")
}

/// `0 < 1 < … < n-1`
pub fn chain(n: usize) -> FinitePoset {
    let ids = (0..n).map(|i| i.to_string()).collect();
    FinitePoset::from_fn(ids, 0, |a, b| a <= b).expect("chain order is valid")
}

/// The lattice `0 < a, b, c < 1`.
pub fn diamond() -> FinitePoset {
    let ids = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
    FinitePoset::from_fn(ids, 0, |a, b| a == b || a == 0 || b == 4).expect("diamond order is valid")
}

/// `0 < x, y < p, q`: every principal down-set is Boolean but `x, y` have
/// two minimal upper bounds.
pub fn bowtie() -> FinitePoset {
    let ids = ["0", "x", "y", "p", "q"].map(String::from).to_vec();
    FinitePoset::from_fn(ids, 0, |a, b| a == b || a == 0 || (a <= 2 && b >= 3)).expect("bowtie order is valid")
}

/// All partial bijections of a `k`-point set.
pub fn symmetric_inverse_monoid(k: usize) -> FiniteInverseSemigroup {
    FiniteInverseSemigroup::from_partial_bijections(&PartialBijection::all(k)).expect("closed under operations")
}

/// Six partial bijections of five points: empty map, identity, the three
/// fixed points `{k}` and the swap of the last two points.
pub fn e_vs_s_joins() -> FiniteInverseSemigroup {
    let mut swap = PartialBijection::identity_on(5, &[0, 1, 2]);
    swap.0[3] = Some(4);
    swap.0[4] = Some(3);
    let maps = vec![
        PartialBijection::empty(5),
        PartialBijection::identity_on(5, &[0, 1, 2, 3, 4]),
        PartialBijection::identity_on(5, &[0]),
        PartialBijection::identity_on(5, &[1]),
        PartialBijection::identity_on(5, &[2]),
        swap,
    ];
    let ids = ["0", "1", "e1", "e2", "e3", "s"].map(String::from).to_vec();
    FiniteInverseSemigroup::from_partial_bijections(&maps)
        .and_then(|s| s.with_ids(ids))
        .expect("closed under operations")
}

/// `{0, e}` with `e·e = e`.
pub fn two_element_semilattice() -> FiniteInverseSemigroup {
    let ids = vec!["0".to_string(), "e".to_string()];
    FiniteInverseSemigroup::new(ids, vec![0, 0, 0, 1], vec![0, 1], 0).expect("semilattice is valid")
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Points `1..=n` with every subset as a basis set.
pub fn discrete_space(n: usize) -> FiniteSpace {
    FiniteSpace::discrete(numbered(n)).expect("powerset basis is valid")
}

/// Points `x` (open) and `y` (closed).
pub fn sierpinski() -> FiniteSpace {
    let basis = vec![ElemSet::empty(), ElemSet::singleton(0), ElemSet::full(2)];
    FiniteSpace::new(vec!["x".into(), "y".into()], basis).expect("sierpinski basis is valid")
}

/// `X × X` on points `1..=n`; arrow `(i,j)` has index `i·n + j`.
pub fn pair_groupoid(n: usize) -> FiniteGroupoid {
    let ids = (0..n * n).map(|g| format!("({},{})", g / n + 1, g % n + 1)).collect();
    let product = (0..n * n * n * n)
        .map(|k| {
            let (g, h) = (k / (n * n), k % (n * n));
            (g % n == h / n).then(|| (g / n) * n + h % n)
        })
        .collect();
    let inv = (0..n * n).map(|g| (g % n) * n + g / n).collect();
    let units = (0..n).map(|i| i * n + i).collect();
    FiniteGroupoid::new(ids, product, inv, units).expect("pair groupoid is valid")
}

/// The two-element group as a groupoid with a single unit `e`.
pub fn cyclic_group_groupoid() -> FiniteGroupoid {
    let ids = vec!["e".to_string(), "g".to_string()];
    let product = vec![Some(0), Some(1), Some(1), Some(0)];
    FiniteGroupoid::new(ids, product, vec![0, 1], ElemSet::singleton(0)).expect("group is valid")
}

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "B(n)",
    "chain(n)",
    "diamond",
    "bowtie",
    "I(n)",
    "order(I(n))",
    "EvsSjoins",
    "semilattice2",
    "discrete(n)",
    "sierpinski",
    "pair(n)",
    "Z2",
];

fn parse_arg(s: &str, prefix: &str) -> Option<usize> {
    let rest = s.strip_prefix(prefix)?;
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(rest);
    inner.parse().ok()
}

/// Builds a fixture by name, e.g. `B(2)`, `I2`, `pair(3)`.
pub fn by_name(name: &str) -> Result<Structure> {
    let key: String = name.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    let unknown = || Error::UnknownFixture(name.to_string());
    let bounded = |n: usize, max: usize| if n <= max { Ok(n) } else { Err(unknown()) };
    let s = match key.as_str() {
        "diamond" | "m3" => Structure::Poset(diamond()),
        "bowtie" => Structure::Poset(bowtie()),
        "evssjoins" => Structure::Semigroup(e_vs_s_joins()),
        "semilattice2" | "{0,e}" => Structure::Semigroup(two_element_semilattice()),
        "sierpinski" => Structure::Space(sierpinski()),
        "z2" => {
            let g = cyclic_group_groupoid();
            let basis = g.all_bisections();
            Structure::Groupoid(g, Some(basis))
        }
        k => {
            if let Some(inner) = k.strip_prefix("order(").and_then(|r| r.strip_suffix(')')) {
                let n = parse_arg(inner, "i").ok_or_else(unknown)?;
                let sg = symmetric_inverse_monoid(bounded(n, 4)?);
                Structure::Poset(sg.natural_order()?)
            } else if let Some(n) = parse_arg(k, "chain") {
                if n == 0 {
                    return Err(unknown());
                }
                Structure::Poset(chain(bounded(n, 256)?))
            } else if let Some(n) = parse_arg(k, "b") {
                Structure::Poset(boolean_algebra(bounded(n, 8)?))
            } else if let Some(n) = parse_arg(k, "i") {
                Structure::Semigroup(symmetric_inverse_monoid(bounded(n, 4)?))
            } else if let Some(n) = parse_arg(k, "discrete") {
                Structure::Space(discrete_space(bounded(n, 8)?))
            } else if let Some(n) = parse_arg(k, "pair") {
                let g = pair_groupoid(bounded(n, 4)?);
                let basis = g.all_bisections();
                Structure::Groupoid(g, Some(basis))
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        let b = boolean_algebra(2);
        assert_eq!(b.ids(), ["{}", "{x}", "{y}", "{x,y}"]);
        assert_eq!(chain(3).ids(), ["0", "1", "2"]);
        assert_eq!(pair_groupoid(2).ids(), ["(1,1)", "(1,2)", "(2,1)", "(2,2)"]);
    }

    #[test]
    fn names_resolve() {
        for name in ["B(2)", "b3", "I2", "I(3)", "EvsSjoins", "chain(4)", "pair(2)", "Z2", "discrete(3)", "sierpinski", "semilattice2", "order(I2)", "diamond", "bowtie"] {
            assert!(by_name(name).is_ok(), "{name}");
        }
        assert!(matches!(by_name("I(9)"), Err(Error::UnknownFixture(_))));
        assert!(matches!(by_name("nonsense"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn e_vs_s_joins_elements() {
        let s = e_vs_s_joins();
        let sw = s.index_of("s").unwrap();
        assert_eq!(s.mul(sw, sw), s.index_of("1").unwrap());
        assert_eq!(s.inv(sw), sw);
    }
}
