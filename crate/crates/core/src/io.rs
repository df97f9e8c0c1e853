//! Text and JSON documents for set systems and transit functions.
//!
//! Text grammar, one item per line, `#` starts a comment:
//!
//! ```text
//! name: four-cycle              # optional
//! description: four edges       # optional
//! elements: a b c d             # required, before any set or entry
//! a b                           # a set; commas and braces are allowed: {a, b}
//! a b : a b c                   # a transit entry R(a, b) = {a, b, c}
//! ```
//!
//! A document holds either sets or transit entries, never both. Documents
//! with neither are empty set systems.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cluster::Cluster;
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::system::SetSystem;
use crate::transit::TransitFunction;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Metadata {
    pub name: Option<String>,
    pub description: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    System(SetSystem),
    Transit(TransitFunction),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub meta: Metadata,
    pub body: Body,
}

impl Document {
    pub fn ground(&self) -> &Arc<GroundSet> {
        match &self.body {
            Body::System(s) => s.ground_arc(),
            Body::Transit(r) => r.ground_arc(),
        }
    }
}

/// JSON form of a set system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub elements: Vec<String>,
    pub sets: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitEntry {
    pub u: String,
    pub v: String,
    pub members: Vec<String>,
}

/// JSON form of a transit function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub elements: Vec<String>,
    pub transit: Vec<TransitEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AnyDocument {
    name: Option<String>,
    description: Option<String>,
    elements: Vec<String>,
    sets: Option<Vec<Vec<String>>>,
    transit: Option<Vec<TransitEntry>>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn at_line(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        e @ Error::Parse { .. } => e,
        other => parse_err(line, other.to_string()),
    }
}

/// Labels may not contain whitespace or any of `#,{}:`.
pub fn is_valid_label(label: &str) -> bool {
    !label.is_empty()
        && !label
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '#' | ',' | '{' | '}' | ':'))
}

fn tokens(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
}

/// Splits `{a, b}` or `a b` into labels; braces are optional but must match.
fn set_tokens(s: &str, line: usize) -> Result<Vec<&str>> {
    let s = s.trim();
    let inner = match (s.strip_prefix('{'), s.ends_with('}')) {
        (Some(rest), true) => &rest[..rest.len() - 1],
        (None, false) => s,
        _ => return Err(parse_err(line, "unbalanced braces")),
    };
    if inner.contains(['{', '}']) {
        return Err(parse_err(line, "nested braces"));
    }
    let labels: Vec<&str> = tokens(inner).collect();
    if labels.is_empty() {
        return Err(parse_err(line, Error::EmptyCluster.to_string()));
    }
    Ok(labels)
}

fn header<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(key)?;
    rest.trim_start().strip_prefix(':').map(str::trim)
}

enum Item {
    Set(Cluster),
    Entry(usize, (usize, usize), Cluster),
}

/// Parses a text document.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut meta = Metadata::default();
    let mut ground: Option<Arc<GroundSet>> = None;
    let mut items = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(v) = header(line, "name") {
            if meta.name.replace(v.to_string()).is_some() {
                return Err(parse_err(line_no, "duplicate `name` header"));
            }
            continue;
        }
        if let Some(v) = header(line, "description") {
            if meta.description.replace(v.to_string()).is_some() {
                return Err(parse_err(line_no, "duplicate `description` header"));
            }
            continue;
        }
        if let Some(v) = header(line, "elements") {
            if ground.is_some() {
                return Err(parse_err(line_no, "duplicate `elements` header"));
            }
            let labels: Vec<&str> = tokens(v).collect();
            if let Some(bad) = labels.iter().find(|l| !is_valid_label(l)) {
                return Err(parse_err(line_no, format!("invalid label `{bad}`")));
            }
            ground = Some(Arc::new(GroundSet::new(labels).map_err(at_line(line_no))?));
            continue;
        }
        let Some(g) = &ground else {
            return Err(parse_err(line_no, "expected `elements:` before sets"));
        };
        let at = at_line(line_no);
        match line.split_once(':') {
            Some((pair, members)) => {
                let ends: Vec<&str> = tokens(pair).collect();
                let &[u, v] = ends.as_slice() else {
                    return Err(parse_err(line_no, "transit entry needs exactly two labels before `:`"));
                };
                let (u, v) = (g.require(u).map_err(&at)?, g.require(v).map_err(&at)?);
                let members = set_tokens(members, line_no)?;
                let c = g.cluster(members.iter().copied()).map_err(&at)?;
                items.push(Item::Entry(line_no, (u, v), c));
            }
            None => {
                let members = set_tokens(line, line_no)?;
                let c = g.cluster(members.iter().copied()).map_err(&at)?;
                items.push(Item::Set(c));
            }
        }
    }
    let ground = ground.ok_or_else(|| parse_err(1, "missing `elements:` header"))?;
    let sets = items.iter().filter(|i| matches!(i, Item::Set(..))).count();
    if sets > 0 && sets < items.len() {
        let line = items
            .iter()
            .filter_map(|i| match i {
                Item::Entry(l, ..) => Some(*l),
                Item::Set(..) => None,
            })
            .next()
            .unwrap_or(1);
        return Err(parse_err(line, "document mixes sets and transit entries"));
    }
    let body = if items.is_empty() || sets > 0 {
        let clusters = items.into_iter().filter_map(|i| match i {
            Item::Set(c) => Some(c),
            Item::Entry(..) => None,
        });
        Body::System(SetSystem::new(ground, clusters)?)
    } else {
        let entries: Vec<_> = items
            .into_iter()
            .filter_map(|i| match i {
                Item::Entry(_, pair, c) => Some((pair, c)),
                Item::Set(..) => None,
            })
            .collect();
        Body::Transit(TransitFunction::new(ground, entries)?)
    };
    Ok(Document { meta, body })
}

/// Parses a JSON document (either a [`SystemDocument`] or a
/// [`TransitDocument`]).
pub fn parse_json_document(text: &str) -> Result<Document> {
    let doc: AnyDocument = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    let meta = Metadata {
        name: doc.name,
        description: doc.description,
    };
    let ground = Arc::new(GroundSet::new(doc.elements)?);
    let body = match (doc.sets, doc.transit) {
        (Some(sets), None) => {
            let clusters = sets
                .iter()
                .map(|s| {
                    if s.is_empty() {
                        return Err(Error::EmptyCluster);
                    }
                    ground.cluster(s.iter().map(String::as_str))
                })
                .collect::<Result<Vec<_>>>()
                ?;
            Body::System(SetSystem::new(ground, clusters)?)
        }
        (None, Some(entries)) => {
            let assignments = entries
                .iter()
                .map(|e| {
                    let pair = (ground.require(&e.u)?, ground.require(&e.v)?);
                    Ok((pair, ground.cluster(e.members.iter().map(String::as_str))?))
                })
                .collect::<Result<Vec<_>>>()
                ?;
            Body::Transit(TransitFunction::new(ground, assignments)?)
        }
        (None, None) => Body::System(SetSystem::new(ground, [])?),
        (Some(_), Some(_)) => return Err(parse_err(0, "document has both `sets` and `transit`")),
    };
    Ok(Document { meta, body })
}

/// Parses a text document that must describe a set system. Singletons are
/// not added.
pub fn parse_system(text: &str) -> Result<SetSystem> {
    match parse_document(text)?.body {
        Body::System(s) => Ok(s),
        Body::Transit(_) => Err(parse_err(0, "expected a set system, found transit entries")),
    }
}

pub fn parse_transit(text: &str) -> Result<TransitFunction> {
    match parse_document(text)?.body {
        Body::Transit(r) => Ok(r),
        Body::System(_) => Err(parse_err(0, "expected transit entries, found a set system")),
    }
}

/// Reads a document from disk; `.json` files use the JSON form.
pub fn load(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        parse_json_document(&text)
    } else {
        parse_document(&text)
    }
}

fn emit_header(out: &mut String, meta: &Metadata, ground: &GroundSet) {
    if let Some(name) = &meta.name {
        out.push_str(&format!("name: {name}\n"));
    }
    if let Some(d) = &meta.description {
        out.push_str(&format!("description: {d}\n"));
    }
    out.push_str(&format!("elements: {}\n", ground.labels().join(" ")));
}

fn labels(ground: &GroundSet, c: Cluster) -> String {
    ground.cluster_labels(c).join(" ")
}

/// Text form of a set system, clusters in canonical order.
pub fn emit_system(system: &SetSystem, meta: &Metadata) -> String {
    let mut out = String::new();
    emit_header(&mut out, meta, system.ground());
    for &c in system.clusters() {
        out.push_str(&labels(system.ground(), c));
        out.push('\n');
    }
    out
}

/// Text form of a transit function, pairs in lexicographic order.
pub fn emit_transit(r: &TransitFunction, meta: &Metadata) -> String {
    let mut out = String::new();
    emit_header(&mut out, meta, r.ground());
    let g = r.ground();
    for (u, v, c) in r.pairs() {
        out.push_str(&format!("{} {} : {}\n", g.label(u), g.label(v), labels(g, c)));
    }
    out
}

pub fn system_document(system: &SetSystem, meta: &Metadata) -> SystemDocument {
    let g = system.ground();
    SystemDocument {
        name: meta.name.clone(),
        description: meta.description.clone(),
        elements: g.labels().to_vec(),
        sets: system.clusters().iter().map(|&c| g.cluster_labels(c)).collect(),
    }
}

pub fn transit_document(r: &TransitFunction, meta: &Metadata) -> TransitDocument {
    let g = r.ground();
    TransitDocument {
        name: meta.name.clone(),
        description: meta.description.clone(),
        elements: g.labels().to_vec(),
        transit: r
            .pairs()
            .map(|(u, v, c)| TransitEntry {
                u: g.label(u).to_string(),
                v: g.label(v).to_string(),
                members: g.cluster_labels(c),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CYCLE: &str = "\
name: cycle
elements: a b c d
# singletons
a
b
c
d
{a, b, c, d}
a b
b c
c,d
d a   # closes the cycle
";

    #[test]
    fn parses_cycle_document() {
        let doc = parse_document(CYCLE).unwrap();
        assert_eq!(doc.meta.name.as_deref(), Some("cycle"));
        let Body::System(s) = doc.body else { panic!() };
        assert_eq!(s.len(), 9);
        assert!(s.contains(s.ground().cluster(["a", "d"]).unwrap()));
    }

    #[test]
    fn unknown_label_is_named() {
        let err = parse_system("elements: x y\nx q\n").unwrap_err();
        assert_eq!(err.to_string(), "line 2: unknown element label `q`");
    }

    #[test]
    fn empty_sets_section() {
        let s = parse_system("elements: a b c\n").unwrap();
        assert!(s.is_empty());
        assert_eq!(s.n(), 3);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(matches!(
            parse_system("elements: a b\n{}\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_system("elements: a a\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_system("a b\n").is_err());
        assert!(parse_system("elements: a b\n{a b\n").is_err());
        assert!(parse_document("elements: a b\na\na b : a b\n").is_err());
    }

    #[test]
    fn transit_document_round_trip() {
        let text = "elements: a b c\na b : a b\na c : a b c\nb c : b c\n";
        let r = parse_transit(text).unwrap();
        assert_eq!(r.get(0, 2).len(), 3);
        let again = parse_transit(&emit_transit(&r, &Metadata::default())).unwrap();
        assert_eq!(again, r);
        let json = serde_json::to_string(&transit_document(&r, &Metadata::default())).unwrap();
        let Body::Transit(back) = parse_json_document(&json).unwrap().body else { panic!() };
        assert_eq!(back, r);
    }

    #[test]
    fn transit_errors_name_the_pair() {
        let err = parse_transit("elements: a b c\na b : b c\na c : a c\nb c : b c\n").unwrap_err();
        assert!(err.to_string().contains("does not contain `a`"), "{err}");
    }

    #[test]
    fn system_json_round_trip() {
        let s = parse_system(CYCLE).unwrap();
        let meta = Metadata {
            name: Some("cycle".into()),
            description: None,
        };
        let json = serde_json::to_string(&system_document(&s, &meta)).unwrap();
        let doc = parse_json_document(&json).unwrap();
        assert_eq!(doc.meta, meta);
        assert_eq!(doc.body, Body::System(s.clone()));
        assert_eq!(parse_system(&emit_system(&s, &meta)).unwrap(), s);
    }

    #[test]
    fn json_rejects_both_bodies() {
        let err = parse_json_document(r#"{"elements":["a"],"sets":[],"transit":[]}"#);
        assert!(err.is_err());
        let err = parse_json_document(r#"{"elements":["a"],"sets":[[]]}"#);
        assert!(err.is_err());
    }
}
