//! Built-in example documents with expected verdicts.
//!
//! Each fixture is a text document under `fixtures/` with a sidecar
//! `<name>.expect.json`:
//!
//! ```json
//! {
//!   "transit": { "m": false, "w": true },
//!   "system": { "weakHierarchy": false, "pyramidal": true },
//!   "witness": { "m": "(c, d, a, d, b)" },
//!   "order": "1 2 3 4"
//! }
//! ```
//!
//! `transit` tags are evaluated on the transit function (the canonical one
//! for set-system fixtures), `system` tags on the set system (the transit
//! sets for transit fixtures). `system` also accepts the classes
//! `prePyramidal`, `pyramidal`, `weaklyPyramidal`, and `ucb`. `order` is the
//! expected compatible order, or `null` when there is none.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::axioms::{check, TransitAxiom};
use crate::error::{Error, Result};
use crate::io::{parse_document, Body, Document};
use crate::predicates::{check_system, SystemPredicate};
use crate::pyramid::{find_compatible_order, is_pyramidal, is_weakly_pyramidal};
use crate::system::SetSystem;
use crate::transit::{canonical_transit_function, transit_sets, TransitFunction};
use crate::verdict::Verdict;

macro_rules! fixture {
    ($name:literal) => {
        (
            $name,
            include_str!(concat!("../fixtures/", $name, ".txt")),
            include_str!(concat!("../fixtures/", $name, ".expect.json")),
        )
    };
}

const SOURCES: &[(&str, &str, &str)] = &[
    fixture!("w-not-monotone"),
    fixture!("xprime-not-w"),
    fixture!("mm-not-w"),
    fixture!("k3-not-mm"),
    fixture!("k1-not-k3"),
    fixture!("path-py-not-uc"),
    fixture!("pyramid-six"),
    fixture!("u-not-uc"),
    fixture!("four-cycle"),
    fixture!("wp-not-xprime"),
    fixture!("w-not-wp"),
    fixture!("triangle"),
    fixture!("o-prime-not-wp"),
    fixture!("o-violation"),
    fixture!("w-not-o"),
    fixture!("o-not-w"),
    fixture!("ucb-ladder"),
    fixture!("paired-hierarchy"),
    fixture!("ucb-small"),
];

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    #[serde(default)]
    pub transit: BTreeMap<String, bool>,
    #[serde(default)]
    pub system: BTreeMap<String, bool>,
    #[serde(default)]
    pub witness: BTreeMap<String, String>,
    /// Absent: not checked. `Some(None)`: no order exists.
    #[serde(default, deserialize_with = "present")]
    pub order: Option<Option<String>>,
}

fn present<'de, D>(d: D) -> std::result::Result<Option<Option<String>>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    Option::<String>::deserialize(d).map(Some)
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
    pub expect: Expectations,
}

impl Fixture {
    pub fn document(&self) -> Result<Document> {
        parse_document(self.source)
    }

    /// The set system, or the transit sets of a transit fixture.
    pub fn system(&self) -> Result<SetSystem> {
        Ok(match self.document()?.body {
            Body::System(s) => s,
            Body::Transit(r) => transit_sets(&r),
        })
    }

    /// The transit function, or the canonical one of a set-system fixture.
    pub fn transit(&self) -> Result<TransitFunction> {
        match self.document()?.body {
            Body::System(s) => canonical_transit_function(&s),
            Body::Transit(r) => Ok(r),
        }
    }

    pub fn transit_opt(&self) -> Option<TransitFunction> {
        self.transit().ok()
    }

    pub fn is_transit(&self) -> bool {
        matches!(self.document().map(|d| d.body), Ok(Body::Transit(_)))
    }

    pub fn description(&self) -> Option<String> {
        self.document().ok().and_then(|d| d.meta.description)
    }
}

/// All built-in fixtures, in a fixed order.
pub fn all() -> Vec<Fixture> {
    SOURCES
        .iter()
        .map(|&(name, source, expect)| Fixture {
            name,
            source,
            expect: serde_json::from_str(expect)
                .unwrap_or_else(|e| panic!("fixture {name}: bad expectations: {e}")),
        })
        .collect()
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}

/// One expected-versus-actual comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub fixture: &'static str,
    pub check: String,
    pub expected: String,
    pub actual: String,
}

impl Comparison {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

fn system_verdict(system: &SetSystem, tag: &str) -> Result<Verdict> {
    Ok(match tag {
        "prePyramidal" => {
            let r = find_compatible_order(system);
            if r.pre_pyramidal {
                Verdict::holds("prePyramidal")
            } else {
                Verdict::fails(
                    "prePyramidal",
                    crate::verdict::Witness::clusters(r.obstruction.unwrap_or_default()),
                )
            }
        }
        "pyramidal" => is_pyramidal(system),
        "weaklyPyramidal" => is_weakly_pyramidal(system),
        "ucb" => {
            let bc = check_system(system, SystemPredicate::BinaryClustering);
            if bc.holds {
                check_system(system, SystemPredicate::Uc).retag("ucb")
            } else {
                bc.retag("ucb")
            }
        }
        other => check_system(system, other.parse()?),
    })
}

fn yes_no(b: bool) -> String {
    if b { "holds" } else { "fails" }.to_string()
}

/// Compares every expectation of `fixture` with the computed result.
pub fn run(fixture: &Fixture) -> Result<Vec<Comparison>> {
    let system = fixture.system()?;
    let transit = fixture.transit();
    let mut out = Vec::new();
    let mut push = |check: String, expected: String, actual: String| {
        out.push(Comparison {
            fixture: fixture.name,
            check,
            expected,
            actual,
        })
    };
    let mut transit_verdicts = BTreeMap::new();
    for (tag, &expected) in &fixture.expect.transit {
        let axiom: TransitAxiom = tag.parse()?;
        let r = transit.as_ref().map_err(Clone::clone)?;
        let v = check(r, axiom);
        push(format!("({tag})"), yes_no(expected), yes_no(v.holds));
        transit_verdicts.insert(tag.clone(), v);
    }
    let mut system_verdicts = BTreeMap::new();
    for (tag, &expected) in &fixture.expect.system {
        let v = system_verdict(&system, tag)?;
        push(tag.clone(), yes_no(expected), yes_no(v.holds));
        system_verdicts.insert(tag.clone(), v);
    }
    for (tag, expected) in &fixture.expect.witness {
        let v = transit_verdicts
            .get(tag)
            .or_else(|| system_verdicts.get(tag))
            .ok_or_else(|| Error::UnknownTag(format!("witness for unchecked tag {tag}")))?;
        let actual = v
            .witness
            .as_ref()
            .map(|w| w.render(system.ground()))
            .unwrap_or_else(|| "none".to_string());
        push(format!("witness {tag}"), expected.clone(), actual);
    }
    if let Some(expected) = &fixture.expect.order {
        let found = find_compatible_order(&system).order.map(|o| {
            o.sequence()
                .iter()
                .map(|&e| system.ground().label(e))
                .collect::<Vec<_>>()
                .join(" ")
        });
        let show = |o: &Option<String>| o.clone().unwrap_or_else(|| "none".to_string());
        push("order".to_string(), show(expected), show(&found));
    }
    Ok(out)
}

/// Runs every fixture.
pub fn run_all() -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    for f in all() {
        out.extend(run(&f)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses() {
        let all = all();
        assert_eq!(all.len(), 19);
        for f in &all {
            let doc = f.document().unwrap();
            assert_eq!(doc.meta.name.as_deref(), Some(f.name));
            assert!(f.system().is_ok(), "{}", f.name);
            assert!(f.transit().is_ok(), "{}", f.name);
        }
    }

    #[test]
    fn every_expectation_is_met() {
        let failed: Vec<Comparison> = run_all().unwrap().into_iter().filter(|c| !c.passed()).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }
}
