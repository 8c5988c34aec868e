//! JSON structure files.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::Value;

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::isg::FiniteInverseSemigroup;
use crate::order::FinitePoset;
use crate::topology::FiniteSpace;

/// Any structure the tool reads.
#[derive(Debug, Clone)]
pub enum Structure {
    Poset(FinitePoset),
    Space(FiniteSpace),
    Semigroup(FiniteInverseSemigroup),
    /// A groupoid with an optional basis of arrow sets.
    Groupoid(FiniteGroupoid, Option<Vec<ElemSet>>),
    Morphism(MorphismSpec),
    Map(MapSpec),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Poset(_) => "poset",
            Structure::Space(_) => "space",
            Structure::Semigroup(_) => "isg",
            Structure::Groupoid(..) => "groupoid",
            Structure::Morphism(_) => "morphism",
            Structure::Map(_) => "map",
        }
    }
}

/// A relation between two posets, given by id pairs.
#[derive(Debug, Clone)]
pub struct MorphismSpec {
    pub source: FinitePoset,
    pub target: FinitePoset,
    pub pairs: Vec<(usize, usize)>,
}

/// A partial map between two spaces; the domain is the set of mapped points.
#[derive(Debug, Clone)]
pub struct MapSpec {
    pub source: FiniteSpace,
    pub target: FiniteSpace,
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum Raw {
    Poset {
        elements: Vec<String>,
        leq: Vec<(String, String)>,
        zero: String,
    },
    Space {
        points: Vec<String>,
        basis: Vec<Vec<String>>,
    },
    Isg {
        elements: Vec<String>,
        mult: Vec<Vec<String>>,
        inv: Vec<String>,
        zero: String,
    },
    Groupoid {
        arrows: Vec<String>,
        product: Vec<(String, String, String)>,
        inv: Vec<String>,
        units: Vec<String>,
        #[serde(default)]
        basis: Option<Vec<Vec<String>>>,
    },
    Morphism {
        source: Value,
        target: Value,
        pairs: Vec<(String, String)>,
    },
    Map {
        source: Value,
        target: Value,
        pairs: Vec<(String, String)>,
    },
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

struct Index<'a> {
    field: &'static str,
    map: HashMap<&'a str, usize>,
}

impl<'a> Index<'a> {
    fn new(field: &'static str, ids: &'a [String]) -> Result<Index<'a>> {
        let mut map = HashMap::new();
        for (i, id) in ids.iter().enumerate() {
            if map.insert(id.as_str(), i).is_some() {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        Ok(Index { field, map })
    }

    fn get(&self, id: &str) -> Result<usize> {
        self.map.get(id).copied().ok_or_else(|| Error::Schema {
            field: self.field.to_string(),
            message: format!("unknown id `{id}`"),
        })
    }

    fn set(&self, ids: &[String]) -> Result<ElemSet> {
        ids.iter().map(|id| self.get(id)).collect()
    }
}

/// Parses a structure document. Relative paths inside morphism and map
/// documents resolve against `base`.
pub fn parse_structure(text: &str, base: Option<&Path>) -> Result<Structure> {
    let value: Value = serde_json::from_str(text).map_err(parse_error)?;
    from_value(value, base)
}

fn from_value(value: Value, base: Option<&Path>) -> Result<Structure> {
    let raw: Raw = serde_json::from_value(value).map_err(|e| Error::schema("kind", e.to_string()))?;
    Ok(match raw {
        Raw::Poset { elements, leq, zero } => Structure::Poset(FinitePoset::from_pairs(elements, &leq, &zero)?),
        Raw::Space { points, basis } => {
            let idx = Index::new("basis", &points)?;
            let sets = basis.iter().map(|b| idx.set(b)).collect::<Result<Vec<_>>>()?;
            Structure::Space(FiniteSpace::new(points.clone(), sets)?)
        }
        Raw::Isg {
            elements,
            mult,
            inv,
            zero,
        } => {
            let n = elements.len();
            if mult.len() != n || mult.iter().any(|row| row.len() != n) {
                return Err(Error::schema("mult", format!("table must be {n}×{n}")));
            }
            if inv.len() != n {
                return Err(Error::schema("inv", format!("expected {n} entries")));
            }
            let idx = Index::new("mult", &elements)?;
            let table = mult
                .iter()
                .flatten()
                .map(|id| idx.get(id))
                .collect::<Result<Vec<_>>>()?;
            let inv = inv.iter().map(|id| idx.get(id)).collect::<Result<Vec<_>>>()?;
            let zero = idx.get(&zero)?;
            Structure::Semigroup(FiniteInverseSemigroup::new(elements.clone(), table, inv, zero)?)
        }
        Raw::Groupoid {
            arrows,
            product,
            inv,
            units,
            basis,
        } => {
            let n = arrows.len();
            let idx = Index::new("product", &arrows)?;
            let mut table = vec![None; n * n];
            for (g, h, gh) in &product {
                let (g, h, gh) = (idx.get(g)?, idx.get(h)?, idx.get(gh)?);
                if table[g * n + h].replace(gh).is_some() {
                    return Err(Error::schema("product", format!("`{}·{}` listed twice", arrows[g], arrows[h])));
                }
            }
            if inv.len() != n {
                return Err(Error::schema("inv", format!("expected {n} entries")));
            }
            let inv = inv.iter().map(|id| idx.get(id)).collect::<Result<Vec<_>>>()?;
            let units = idx.set(&units)?;
            let basis = basis
                .map(|b| b.iter().map(|s| idx.set(s)).collect::<Result<Vec<_>>>())
                .transpose()?;
            Structure::Groupoid(FiniteGroupoid::new(arrows.clone(), table, inv, units)?, basis)
        }
        Raw::Morphism { source, target, pairs } => {
            let source = expect_poset(nested(source, base)?, "source")?;
            let target = expect_poset(nested(target, base)?, "target")?;
            let pairs = pairs
                .iter()
                .map(|(a, b)| Ok((source.index_of(a)?, target.index_of(b)?)))
                .collect::<Result<Vec<_>>>()?;
            Structure::Morphism(MorphismSpec { source, target, pairs })
        }
        Raw::Map { source, target, pairs } => {
            let source = expect_space(nested(source, base)?, "source")?;
            let target = expect_space(nested(target, base)?, "target")?;
            let si = Index::new("pairs", source.points())?;
            let ti = Index::new("pairs", target.points())?;
            let pairs = pairs
                .iter()
                .map(|(a, b)| Ok((si.get(a)?, ti.get(b)?)))
                .collect::<Result<Vec<_>>>()?;
            let mut seen = ElemSet::empty();
            for &(a, _) in &pairs {
                if seen.contains(a) {
                    return Err(Error::schema("pairs", format!("point `{}` mapped twice", source.point(a))));
                }
                seen.insert(a);
            }
            Structure::Map(MapSpec { source, target, pairs })
        }
    })
}

/// A nested structure: inline object, `fixture:NAME`, or a file path.
fn nested(value: Value, base: Option<&Path>) -> Result<Structure> {
    match value {
        Value::String(s) => {
            if let Some(name) = s.strip_prefix("fixture:") {
                return crate::fixtures::by_name(name);
            }
            let path = match base {
                Some(dir) => dir.join(&s),
                None => PathBuf::from(&s),
            };
            read_structure(&path)
        }
        Value::Object(_) => from_value(value, base),
        _ => Err(Error::schema("source", "expected an object, a path or `fixture:NAME`")),
    }
}

fn expect_poset(s: Structure, field: &str) -> Result<FinitePoset> {
    match s {
        Structure::Poset(p) => Ok(p),
        other => Err(Error::schema(field, format!("expected a poset, found {}", other.kind()))),
    }
}

fn expect_space(s: Structure, field: &str) -> Result<FiniteSpace> {
    match s {
        Structure::Space(x) => Ok(x),
        other => Err(Error::schema(field, format!("expected a space, found {}", other.kind()))),
    }
}

pub fn read_structure(path: &Path) -> Result<Structure> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_structure(&text, path.parent())
}

/// Serializes a poset in the input schema.
pub fn poset_to_json(p: &FinitePoset) -> Value {
    let leq: Vec<(String, String)> = p
        .leq_pairs()
        .into_iter()
        .map(|(a, b)| (p.id(a).to_string(), p.id(b).to_string()))
        .collect();
    serde_json::json!({
        "kind": "poset",
        "elements": p.ids(),
        "leq": leq,
        "zero": p.id(p.zero()),
    })
}

pub fn isg_to_json(s: &FiniteInverseSemigroup) -> Value {
    let n = s.len();
    let mult: Vec<Vec<&str>> = (0..n).map(|a| (0..n).map(|b| s.id(s.mul(a, b))).collect()).collect();
    let inv: Vec<&str> = (0..n).map(|a| s.id(s.inv(a))).collect();
    serde_json::json!({
        "kind": "isg",
        "elements": s.ids(),
        "mult": mult,
        "inv": inv,
        "zero": s.id(s.zero()),
    })
}

pub fn space_to_json(x: &FiniteSpace) -> Value {
    let basis: Vec<Vec<&str>> = x
        .basis()
        .iter()
        .map(|b| b.iter().map(|p| x.point(p)).collect())
        .collect();
    serde_json::json!({ "kind": "space", "points": x.points(), "basis": basis })
}

pub fn groupoid_to_json(g: &FiniteGroupoid, basis: Option<&[ElemSet]>) -> Value {
    let n = g.len();
    let product: Vec<(&str, &str, &str)> = (0..n)
        .flat_map(|x| (0..n).filter_map(move |y| g.mul(x, y).map(|p| (g.id(x), g.id(y), g.id(p)))))
        .collect();
    let inv: Vec<&str> = (0..n).map(|x| g.id(g.inv(x))).collect();
    let units: Vec<&str> = g.units().iter().map(|x| g.id(x)).collect();
    let mut v = serde_json::json!({
        "kind": "groupoid",
        "arrows": g.ids(),
        "product": product,
        "inv": inv,
        "units": units,
    });
    if let Some(b) = basis {
        let sets: Vec<Vec<&str>> = b.iter().map(|s| s.iter().map(|x| g.id(x)).collect()).collect();
        v["basis"] = serde_json::json!(sets);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn poset_round_trip() {
        let p = fixtures::boolean_algebra(2);
        let text = poset_to_json(&p).to_string();
        let Structure::Poset(q) = parse_structure(&text, None).unwrap() else {
            panic!("expected a poset")
        };
        assert_eq!(p, q);
    }

    #[test]
    fn isg_round_trip() {
        let s = fixtures::e_vs_s_joins();
        let text = isg_to_json(&s).to_string();
        let Structure::Semigroup(t) = parse_structure(&text, None).unwrap() else {
            panic!("expected a semigroup")
        };
        assert_eq!(s, t);
    }

    #[test]
    fn groupoid_round_trip() {
        let g = fixtures::pair_groupoid(2);
        let basis = g.all_bisections();
        let text = groupoid_to_json(&g, Some(&basis)).to_string();
        let Structure::Groupoid(h, Some(b)) = parse_structure(&text, None).unwrap() else {
            panic!("expected a groupoid")
        };
        assert_eq!(g, h);
        assert_eq!(basis, b);
    }

    #[test]
    fn malformed_inputs() {
        let non_square = r#"{"kind":"isg","elements":["0","e"],"mult":[["0","0"],["0"]],"inv":["0","e"],"zero":"0"}"#;
        assert!(matches!(parse_structure(non_square, None), Err(Error::Schema { .. })));
        let broken = "{\"kind\": \"poset\",\n \"elements\": [";
        assert!(matches!(parse_structure(broken, None), Err(Error::Parse { line: 2, .. })));
        let unknown = r#"{"kind":"lattice"}"#;
        assert!(matches!(parse_structure(unknown, None), Err(Error::Schema { .. })));
        let missing = r#"{"kind":"poset","elements":["0"],"leq":[["0","0"]],"zero":"1"}"#;
        assert!(parse_structure(missing, None).is_err());
    }

    #[test]
    fn morphism_with_fixtures() {
        let text = r#"{"kind":"morphism","source":"fixture:B(1)","target":"fixture:B(1)","pairs":[["{}","{}"],["{x}","{x}"]]}"#;
        let Structure::Morphism(m) = parse_structure(text, None).unwrap() else {
            panic!("expected a morphism")
        };
        assert_eq!(m.pairs, vec![(0, 0), (1, 1)]);
    }
}
