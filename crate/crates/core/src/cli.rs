//! Command-line front end.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bits::ElemSet;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::filters::{enumerate_prec_ultrafilters, enumerate_prec_ultrafilters_oracle};
use crate::fixtures;
use crate::groupoid::etale::{groupoid_round_trip, groupoid_to_semigroup};
use crate::groupoid::lenz::{lenz_product, ultrafilter_groupoid, UltrafilterContext};
use crate::groupoid::FiniteGroupoid;
use crate::io::{self, groupoid_to_json, isg_to_json, poset_to_json, space_to_json, MapSpec, MorphismSpec, Structure};
use crate::isg::classify::{classify_semigroup, distributivity_suite, AnalyzedSemigroup};
use crate::isg::FiniteInverseSemigroup;
use crate::morphisms::{self, PartialMap};
use crate::order::FinitePoset;
use crate::relations::classify::classify;
use crate::relations::{AnalyzedPoset, Relation, RelationKind};
use crate::search::{search_counterexamples, SearchConfig};
use crate::topology::duality::{basis_to_poset, round_trip_poset, round_trip_space, ultrafilter_space};
use crate::topology::{hausdorff_characterizations, lclh_characterizations, FiniteSpace};

#[derive(Debug, Parser)]
#[command(name = "stonework", version, about = "Finite models for non-commutative Stone duality")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Structure file (JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Built-in structure, e.g. `B(2)`, `I(3)`, `EvsSjoins`.
    #[arg(long, global = true)]
    pub fixture: Option<String>,
    /// Cross-check ultrafilters against the all-subsets search.
    #[arg(long, global = true)]
    pub oracle: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Carrier cap; for `search`, the largest carrier searched.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Poset,
    Space,
    Semigroup,
    Groupoid,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a structure.
    Validate,
    /// Class flags of a poset, space, semigroup, groupoid basis or morphism.
    Classify,
    /// Axiom reports with witnesses; failures only unless `--all`.
    Axioms {
        #[arg(long)]
        all: bool,
    },
    /// Pairs of a derived relation.
    Relation {
        #[arg(long, value_parser = ["leq", "perp", "prec", "smile"])]
        kind: String,
    },
    /// The ≺-ultrafilters.
    Ultrafilters,
    /// The dual of a structure.
    Dualize {
        #[arg(value_enum)]
        kind: Kind,
    },
    /// Dualize twice and confirm the isomorphism with the input.
    Roundtrip,
    /// Product of two ≤-filters, or the action of an element on an ultrafilter.
    LenzProduct {
        /// Element ids separated by `;`.
        #[arg(long, conflicts_with = "element", required_unless_present = "element")]
        left: Option<String>,
        #[arg(long)]
        element: Option<String>,
        #[arg(long)]
        right: String,
    },
    /// Relations between basis posets and the maps they induce.
    Morphism {
        #[command(subcommand)]
        action: MorphismCommand,
    },
    /// Look for a structure with one property and without another.
    Search {
        #[arg(long)]
        holds: String,
        #[arg(long)]
        fails: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum MorphismCommand {
    /// The basic and ∨ clauses, one report each.
    Validate,
    /// The ⊑-closure.
    Close,
    /// Relational composite with the morphism in `--with`.
    Compose {
        #[arg(long = "with")]
        second: PathBuf,
        #[arg(long)]
        close: bool,
    },
    /// The partial map between ultrafilter spaces.
    ToMap,
    /// The morphism between basis posets of a partial map file.
    FromMap,
}

/// Parses the arguments, runs and prints; returns the exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let format = cli.global.format;
    match run(cli) {
        Ok(report) => {
            use std::io::Write;
            // a closed pipe downstream is not a failure of the run
            let _ = writeln!(std::io::stdout().lock(), "{}", render(&report, format));
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> Result<Value> {
    let g = &cli.global;
    if let Some(cap) = g.cap.filter(|_| !matches!(cli.command, Command::Search { .. })) {
        let cfg = Config {
            cap,
            ..Config::from_env()
        };
        // a second run in one process keeps the first configuration
        let _ = Config::install(cfg);
    }
    match &cli.command {
        Command::Search { holds, fails, samples } => {
            let cfg = SearchConfig {
                holds: holds.clone(),
                fails: fails.clone(),
                cap: g.cap.unwrap_or(5),
                seed: g.seed,
                samples: *samples,
            };
            to_json(&search_counterexamples(&cfg)?)
        }
        command => {
            let s = load(g)?;
            dispatch(command, s, g)
        }
    }
}

fn load(g: &GlobalArgs) -> Result<Structure> {
    match (&g.input, &g.fixture) {
        (Some(path), None) => io::read_structure(path),
        (None, Some(name)) => fixtures::by_name(name),
        (Some(_), Some(_)) => Err(Error::Precondition("pass either --input or --fixture, not both".into())),
        (None, None) => Err(Error::Precondition("pass --input or --fixture".into())),
    }
}

fn to_json<T: Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::Io(e.to_string()))
}

fn dispatch(command: &Command, s: Structure, g: &GlobalArgs) -> Result<Value> {
    match command {
        Command::Validate => validate(s),
        Command::Classify => classify_structure(s),
        Command::Axioms { all } => {
            let ap = order_of(s)?;
            let c = classify(&ap)?;
            let axioms: Vec<_> = c.axioms.into_iter().filter(|r| *all || !r.holds).collect();
            Ok(json!({ "axioms": to_json(&axioms)? }))
        }
        Command::Relation { kind } => {
            let kind: RelationKind = kind.parse()?;
            let ap = order_of(s)?;
            let pairs: Vec<[&str; 2]> = ap
                .relation(kind)
                .pairs()
                .into_iter()
                .map(|(a, b)| [ap.poset.id(a), ap.poset.id(b)])
                .collect();
            Ok(json!({ "kind": kind, "pairs": pairs }))
        }
        Command::Ultrafilters => {
            let ap = order_of(s)?;
            let fast = enumerate_prec_ultrafilters(&ap);
            let mut out = json!({ "ultrafilters": fast.iter().map(|&u| filter_json(&ap.poset, u)).collect::<Vec<_>>() });
            if g.oracle {
                let slow = enumerate_prec_ultrafilters_oracle(&ap, Config::global())?;
                if slow != fast {
                    return Err(Error::InternalConsistency {
                        check: "ultrafilter_oracle".into(),
                        detail: format!("fast path found {}, subset search {}", fast.len(), slow.len()),
                    });
                }
                out["oracle_agrees"] = json!(true);
            }
            Ok(out)
        }
        Command::Dualize { kind } => dualize(*kind, s),
        Command::Roundtrip => roundtrip(s),
        Command::LenzProduct { left, element, right } => {
            let asg = AnalyzedSemigroup::new(semigroup_of(s)?)?;
            let ids = |list: &str| parse_ids(list, |id| asg.sg.index_of(id));
            let u = ids(right)?;
            match (left, element) {
                (Some(left), _) => {
                    let t = ids(left)?;
                    let r = lenz_product(&asg, t, u)?;
                    let mut out = to_json(&r)?;
                    out["product"] = json!(r.product.iter().map(|&a| asg.sg.id(a)).collect::<Vec<_>>());
                    Ok(out)
                }
                (None, Some(a)) => {
                    let a = asg.sg.index_of(a)?;
                    let ctx = UltrafilterContext::new(&asg)?;
                    let r = ctx.action(a, u)?;
                    let mut out = to_json(&r)?;
                    if let Some(v) = r.image {
                        out["image"] = filter_json(asg.poset(), ctx.ultrafilters[v]);
                    }
                    Ok(out)
                }
                (None, None) => Err(Error::Precondition("pass --left or --element".into())),
            }
        }
        Command::Morphism { action } => morphism(action, s),
        Command::Search { .. } => unreachable!("handled before loading"),
    }
}

fn parse_ids(list: &str, index_of: impl Fn(&str) -> Result<usize>) -> Result<ElemSet> {
    list.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(index_of)
        .collect()
}

fn ids_of(p: &FinitePoset, xs: ElemSet) -> Vec<&str> {
    xs.iter().map(|a| p.id(a)).collect()
}

fn ultrafilter_label(p: &FinitePoset, u: ElemSet) -> String {
    match p.least(u) {
        Some(w) => format!("U({})", p.id(w)),
        None => format!("U{:?}", ids_of(p, u)),
    }
}

fn filter_json(p: &FinitePoset, u: ElemSet) -> Value {
    json!({ "label": ultrafilter_label(p, u), "members": ids_of(p, u) })
}

/// The poset of a poset, or the natural order of a semigroup.
fn order_of(s: Structure) -> Result<AnalyzedPoset> {
    match s {
        Structure::Poset(p) => AnalyzedPoset::new(p),
        Structure::Semigroup(sg) => Ok(AnalyzedSemigroup::new(sg)?.order),
        other => Err(Error::Precondition(format!("expected a poset or semigroup, got a {}", other.kind()))),
    }
}

fn semigroup_of(s: Structure) -> Result<FiniteInverseSemigroup> {
    match s {
        Structure::Semigroup(sg) => Ok(sg),
        other => Err(Error::Precondition(format!("expected a semigroup, got a {}", other.kind()))),
    }
}

fn groupoid_basis(g: &FiniteGroupoid, basis: Option<Vec<ElemSet>>) -> Vec<ElemSet> {
    basis.unwrap_or_else(|| g.all_bisections())
}

fn validate(s: Structure) -> Result<Value> {
    let kind = s.kind();
    let size = match &s {
        Structure::Poset(p) => p.len(),
        Structure::Space(x) => x.len(),
        Structure::Semigroup(sg) => sg.len(),
        Structure::Groupoid(g, _) => g.len(),
        Structure::Morphism(m) => m.pairs.len(),
        Structure::Map(m) => m.pairs.len(),
    };
    let mut out = json!({ "kind": kind, "size": size, "valid": true });
    if let Structure::Morphism(m) = s {
        let (rel, src, tgt) = morphism_parts(&m)?;
        out["morphism"] = to_json(&morphisms::validate_morphism(&rel, &src, &tgt)?)?;
    }
    Ok(out)
}

fn space_report(x: &FiniteSpace) -> Result<Value> {
    Ok(json!({
        "points": x.len(),
        "t0": x.is_t0(),
        "hausdorff": x.is_hausdorff(),
        "discrete": x.is_discrete(),
        "locally_compact": x.is_locally_compact(),
        "locally_hausdorff": x.is_locally_hausdorff(),
        "union_basis": x.is_union_basis(),
        "union_basis_violation": x.union_basis_violation().map(|v| format!("{v:?}")),
        "lclh_characterizations": to_json(&lclh_characterizations(x))?,
        "hausdorff_characterizations": to_json(&hausdorff_characterizations(x))?,
    }))
}

fn classify_structure(s: Structure) -> Result<Value> {
    match s {
        Structure::Poset(p) => to_json(&classify(&AnalyzedPoset::new(p)?)?),
        Structure::Space(x) => space_report(&x),
        Structure::Semigroup(sg) => {
            let asg = AnalyzedSemigroup::new(sg)?;
            Ok(json!({
                "classification": to_json(&classify_semigroup(&asg)?)?,
                "distributivity": to_json(&distributivity_suite(&asg)?)?,
            }))
        }
        Structure::Groupoid(g, basis) => {
            let es = groupoid_to_semigroup(&g, &groupoid_basis(&g, basis))?;
            Ok(json!({
                "union_etale": es.union_etale,
                "semigroup": to_json(&classify_semigroup(&es.analyzed)?)?,
            }))
        }
        Structure::Morphism(m) => {
            let (rel, src, tgt) = morphism_parts(&m)?;
            to_json(&morphisms::validate_morphism(&rel, &src, &tgt)?)
        }
        Structure::Map(m) => from_map(&m),
    }
}

fn dualize(kind: Kind, s: Structure) -> Result<Value> {
    let found = s.kind();
    match (kind, s) {
        (Kind::Poset, Structure::Poset(p)) => {
            let ap = AnalyzedPoset::new(p)?;
            let dual = ultrafilter_space(&ap)?;
            let p = &ap.poset;
            let open_sets: Map<String, Value> = (0..p.len())
                .map(|a| (p.id(a).to_string(), json!(dual.space.label(dual.open_set(a)))))
                .collect();
            Ok(json!({
                "space": space_to_json(&dual.space),
                "points": dual.ultrafilters.iter().map(|&u| filter_json(p, u)).collect::<Vec<_>>(),
                "open_sets": open_sets,
                "basic_poset": dual.classification.basic_poset,
                "smile_basic": dual.classification.smile_basic,
            }))
        }
        (Kind::Space, Structure::Space(x)) => {
            let bp = basis_to_poset(&x)?;
            Ok(json!({ "poset": poset_to_json(&bp.analyzed.poset), "prec_is_leq": bp.analyzed.prec_is_leq() }))
        }
        (Kind::Semigroup, Structure::Semigroup(sg)) => {
            let asg = AnalyzedSemigroup::new(sg)?;
            let ug = ultrafilter_groupoid(&asg)?;
            let p = asg.poset();
            Ok(json!({
                "arrows": ug.groupoid.len(),
                "units": ug.groupoid.units().len(),
                "groupoid": groupoid_to_json(&ug.groupoid, None),
                "ultrafilters": ug.ultrafilters.iter().map(|&u| filter_json(p, u)).collect::<Vec<_>>(),
                "union_etale_checked": ug.union_etale_checked,
            }))
        }
        (Kind::Groupoid, Structure::Groupoid(g, basis)) => {
            let es = groupoid_to_semigroup(&g, &groupoid_basis(&g, basis))?;
            Ok(json!({
                "elements": es.sets.len(),
                "semigroup": isg_to_json(es.semigroup()),
                "union_etale": es.union_etale,
                "simeq_basic": es.simeq_basic,
            }))
        }
        (_, _) => Err(Error::Precondition(format!("cannot dualize a {found} as {kind:?}").to_lowercase())),
    }
}

fn roundtrip(s: Structure) -> Result<Value> {
    match s {
        Structure::Poset(p) => to_json(&round_trip_poset(&AnalyzedPoset::new(p)?)?),
        Structure::Space(x) => to_json(&round_trip_space(&x)?),
        Structure::Semigroup(sg) => {
            let asg = AnalyzedSemigroup::new(sg)?;
            let ug = ultrafilter_groupoid(&asg)?;
            let bisections = ug.groupoid.all_bisections();
            let es = groupoid_to_semigroup(&ug.groupoid, &bisections)?;
            let iso = asg.sg.find_isomorphism(es.semigroup());
            Ok(json!({
                "arrows": ug.groupoid.len(),
                "bisections": bisections.len(),
                "isomorphism": iso.is_some(),
                "map": iso,
            }))
        }
        Structure::Groupoid(g, basis) => to_json(&groupoid_round_trip(&g, &groupoid_basis(&g, basis))?),
        other => Err(Error::Precondition(format!("no round trip for a {}", other.kind()))),
    }
}

fn morphism_parts(m: &MorphismSpec) -> Result<(Relation, AnalyzedPoset, AnalyzedPoset)> {
    let src = AnalyzedPoset::new(m.source.clone())?;
    let tgt = AnalyzedPoset::new(m.target.clone())?;
    let rel = Relation::from_fn(src.len(), tgt.len(), |a, b| m.pairs.contains(&(a, b)));
    Ok((rel, src, tgt))
}

fn pairs_json(rel: &Relation, s: &FinitePoset, t: &FinitePoset) -> Vec<[String; 2]> {
    rel.pairs()
        .into_iter()
        .map(|(a, b)| [s.id(a).to_string(), t.id(b).to_string()])
        .collect()
}

fn from_map(m: &MapSpec) -> Result<Value> {
    let phi = PartialMap::from_pairs(m.source.len(), &m.pairs);
    let mm = morphisms::from_partial_map(&m.source, &m.target, &phi)?;
    let (s, t) = (&mm.source.analyzed.poset, &mm.target.analyzed.poset);
    Ok(json!({ "pairs": pairs_json(&mm.rel, s, t), "report": to_json(&mm.report)? }))
}

fn morphism(action: &MorphismCommand, s: Structure) -> Result<Value> {
    if let MorphismCommand::FromMap = action {
        return match s {
            Structure::Map(m) => from_map(&m),
            other => Err(Error::Precondition(format!("expected a map, got a {}", other.kind()))),
        };
    }
    let m = match s {
        Structure::Morphism(m) => m,
        other => return Err(Error::Precondition(format!("expected a morphism, got a {}", other.kind()))),
    };
    let (rel, src, tgt) = morphism_parts(&m)?;
    match action {
        MorphismCommand::Validate => to_json(&morphisms::validate_morphism(&rel, &src, &tgt)?),
        MorphismCommand::Close => {
            let closed = morphisms::closure(&rel, &src, &tgt)?;
            Ok(json!({ "pairs": pairs_json(&closed, &src.poset, &tgt.poset), "unchanged": closed == rel }))
        }
        MorphismCommand::Compose { second, close } => {
            let m2 = match io::read_structure(second)? {
                Structure::Morphism(m2) => m2,
                other => return Err(Error::Precondition(format!("expected a morphism, got a {}", other.kind()))),
            };
            if m2.source != m.target {
                return Err(Error::Precondition("the second morphism does not start where the first ends".into()));
            }
            let (rel2, _, tgt2) = morphism_parts(&m2)?;
            let c = morphisms::compose(&rel, &rel2, &src, &tgt, &tgt2, *close)?;
            let mut out = to_json(&c)?;
            out["pairs"] = json!(pairs_json(&c.rel, &src.poset, &tgt2.poset));
            Ok(out)
        }
        MorphismCommand::ToMap => {
            let mm = morphisms::to_partial_map(&rel, &src, &tgt)?;
            let label_s = |i: usize| ultrafilter_label(&src.poset, mm.source.ultrafilters[i]);
            let label_t = |i: usize| ultrafilter_label(&tgt.poset, mm.target.ultrafilters[i]);
            let map: Vec<[String; 2]> = mm
                .map
                .image
                .iter()
                .enumerate()
                .filter_map(|(i, v)| v.map(|v| [label_s(i), label_t(v)]))
                .collect();
            Ok(json!({ "map": map, "total": mm.total, "is_vee": mm.report.is_vee }))
        }
        MorphismCommand::FromMap => unreachable!("handled above"),
    }
}

/// Flattens a JSON report into aligned `path  value` lines.
pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("values serialize"),
        Format::Table => {
            let mut rows = Vec::new();
            flatten("", v, &mut rows);
            let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            rows.iter()
                .map(|(k, v)| format!("{k:width$}  {v}"))
                .collect::<Vec<_>>()
                .join("\n")
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Array(_) | Value::Object(_) => None,
        other => Some(other.to_string()),
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, rows);
            }
        }
        Value::Array(xs) => match xs.iter().map(scalar).collect::<Option<Vec<_>>>() {
            Some(items) => rows.push((prefix.to_string(), items.join(", "))),
            None => {
                for (i, x) in xs.iter().enumerate() {
                    flatten(&key(&i.to_string()), x, rows);
                }
            }
        },
        other => rows.push((prefix.to_string(), scalar(other).unwrap_or_default())),
    }
}
