//! Serializable reports and their text rendering.
//!
//! JSON reports carry `schema_version`; text output is line oriented and
//! deterministic.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::axioms::{check, TransitAxiom};
use crate::error::Result;
use crate::enumerate::{Census, Counterexample, ImplicationReport, ImplicationStatus, Property};
use crate::ground::GroundSet;
use crate::io::{transit_document, Body, Document, Metadata, TransitEntry};
use crate::predicates::SystemPredicate;
use crate::pyramid::{classify_ladder, find_compatible_order};
use crate::system::SetSystem;
use crate::transit::{canonical_transit_function, transit_sets, TransitFunction};
use crate::verdict::{CompatibleOrder, Verdict, Witness};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessView {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub clusters: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub via: Option<String>,
    pub text: String,
}

impl WitnessView {
    pub fn new(w: &Witness, ground: &GroundSet) -> Self {
        WitnessView {
            elements: w.elements.iter().map(|&e| ground.label(e).to_string()).collect(),
            clusters: w.clusters.iter().map(|&c| ground.cluster_labels(c)).collect(),
            via: w.via.map(str::to_string),
            text: w.render(ground),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// A transit-function axiom.
    Axiom,
    /// A set-system predicate.
    Predicate,
    /// A pyramidal class.
    Class,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub tag: String,
    pub kind: CheckKind,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessView>,
}

impl CheckEntry {
    fn new(tag: impl Into<String>, kind: CheckKind, v: &Verdict, ground: &GroundSet) -> Self {
        CheckEntry {
            tag: tag.into(),
            kind,
            holds: v.holds,
            witness: v.witness.as_ref().map(|w| WitnessView::new(w, ground)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subject {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// `transit` or `system`.
    pub kind: String,
    pub elements: Vec<String>,
}

/// Verdicts for one document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub subject: Subject,
    pub checks: Vec<CheckEntry>,
    /// Pyramidal ladder, for T-systems and transit functions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ladder: Option<Vec<(String, bool)>>,
    /// A compatible order, if one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<String>>,
    /// Why axioms were not checked, for systems without a canonical transit
    /// function.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn order_labels(order: &CompatibleOrder, ground: &GroundSet) -> Vec<String> {
    order.sequence().iter().map(|&e| ground.label(e).to_string()).collect()
}

fn subject(doc: &Document) -> Subject {
    Subject {
        name: doc.meta.name.clone(),
        kind: match doc.body {
            Body::System(_) => "system",
            Body::Transit(_) => "transit",
        }
        .to_string(),
        elements: doc.ground().labels().to_vec(),
    }
}

fn tag_of(p: Property) -> String {
    match p {
        Property::PrePyramidal => "prePyramidal".to_string(),
        other => other.to_string(),
    }
}

fn kind_of(p: Property) -> CheckKind {
    match p {
        Property::Axiom(_) => CheckKind::Axiom,
        Property::System(_) => CheckKind::Predicate,
        _ => CheckKind::Class,
    }
}

const CLASSES: [Property; 3] = [Property::PrePyramidal, Property::Pyramidal, Property::WeaklyPyramidal];

/// The set system and transit function a document is checked through: a
/// set-system document uses its canonical transit function when it is a
/// T-system, a transit document its transit sets.
fn views(doc: &Document) -> (SetSystem, Result<TransitFunction>) {
    match &doc.body {
        Body::System(s) => (s.clone(), canonical_transit_function(s)),
        Body::Transit(r) => (transit_sets(r), Ok(r.clone())),
    }
}

fn build(doc: &Document, system: &SetSystem, checks: Vec<CheckEntry>, note: Option<String>) -> Report {
    Report {
        schema_version: SCHEMA_VERSION,
        subject: subject(doc),
        checks,
        ladder: ladder_rows(system),
        order: find_compatible_order(system).order.map(|o| order_labels(&o, system.ground())),
        note,
    }
}

/// Evaluates `selection`, or every axiom, predicate, and class when it is
/// empty. Selected axioms on a set system that is not a T-system are an
/// error; unselected ones are skipped with a note.
pub fn check_report(doc: &Document, selection: &[Property]) -> Result<Report> {
    let (system, transit) = views(doc);
    let ground = system.ground();
    let mut note = None;
    let props: Vec<Property> = if selection.is_empty() {
        let mut all = Vec::new();
        match &transit {
            Ok(_) => all.extend(TransitAxiom::ALL.map(Property::Axiom)),
            Err(e) => note = Some(format!("axioms not checked: {e}")),
        }
        all.extend(SystemPredicate::ALL.map(Property::System));
        all.extend(CLASSES);
        all
    } else {
        selection.to_vec()
    };
    let mut checks = Vec::new();
    for p in props {
        let v = match p {
            Property::Axiom(a) => check(transit.as_ref().map_err(Clone::clone)?, a),
            other => other.evaluate(None, &system),
        };
        checks.push(CheckEntry::new(tag_of(p), kind_of(p), &v, ground));
    }
    Ok(build(doc, &system, checks, note))
}

/// Predicates and pyramidal classes of the set system, with the ladder.
pub fn classify_report(doc: &Document) -> Report {
    let (system, _) = views(doc);
    let ground = system.ground();
    let checks = SystemPredicate::ALL
        .map(Property::System)
        .into_iter()
        .chain(CLASSES)
        .map(|p| CheckEntry::new(tag_of(p), kind_of(p), &p.evaluate(None, &system), ground))
        .collect();
    build(doc, &system, checks, None)
}

fn ladder_rows(system: &SetSystem) -> Option<Vec<(String, bool)>> {
    classify_ladder(system)
        .ok()
        .map(|l| l.rows().iter().map(|&(k, v)| (k.to_string(), v)).collect())
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.subject.name {
            let _ = writeln!(out, "name: {name}");
        }
        let _ = writeln!(out, "{}: {}", self.subject.kind, self.subject.elements.join(" "));
        if let Some(note) = &self.note {
            let _ = writeln!(out, "note: {note}");
        }
        let width = self.checks.iter().map(|c| c.tag.len()).max().unwrap_or(0);
        for c in &self.checks {
            let verdict = if c.holds { "holds" } else { "fails" };
            match &c.witness {
                Some(w) => {
                    let _ = writeln!(out, "{:width$}  {verdict}  {}", c.tag, w.text);
                }
                None => {
                    let _ = writeln!(out, "{:width$}  {verdict}", c.tag);
                }
            }
        }
        if let Some(ladder) = &self.ladder {
            let members: Vec<&str> = ladder.iter().filter(|(_, v)| *v).map(|(k, _)| k.as_str()).collect();
            let _ = writeln!(out, "ladder: {}", if members.is_empty() { "-".to_string() } else { members.join(" ") });
        }
        match &self.order {
            Some(o) => {
                let _ = writeln!(out, "order: {}", o.join(" "));
            }
            None => {
                let _ = writeln!(out, "order: none");
            }
        }
        out
    }

    /// True when every check holds.
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleView {
    pub n: usize,
    pub elements: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transit: Option<Vec<TransitEntry>>,
    pub sets: Vec<Vec<String>>,
    pub failed: Vec<CheckEntry>,
}

impl CounterexampleView {
    pub fn new(ce: &Counterexample) -> Self {
        let g = ce.system.ground();
        CounterexampleView {
            n: ce.n,
            elements: g.labels().to_vec(),
            transit: ce
                .transit
                .as_ref()
                .map(|r| transit_document(r, &Metadata::default()).transit),
            sets: ce.system.clusters().iter().map(|&c| g.cluster_labels(c)).collect(),
            failed: ce
                .failed
                .iter()
                .map(|&(p, ref v)| CheckEntry::new(tag_of(p), kind_of(p), v, g))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRow {
    pub claim: String,
    pub expected: String,
    pub domain: String,
    pub n_max: usize,
    pub instances_checked: u64,
    pub premise_instances: u64,
    /// `confirmed` or `refuted`.
    pub status: String,
    pub as_expected: bool,
    /// An implication was refuted.
    pub contradicted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleView>,
}

impl ClaimRow {
    pub fn new(r: &ImplicationReport) -> Self {
        ClaimRow {
            claim: r.claim.label(),
            expected: r.claim.expected.as_str().to_string(),
            domain: r.claim.domain.as_str().to_string(),
            n_max: r.n_max,
            instances_checked: r.instances_checked,
            premise_instances: r.premise_instances,
            status: match r.status {
                ImplicationStatus::Confirmed => "confirmed",
                ImplicationStatus::Refuted => "refuted",
            }
            .to_string(),
            as_expected: r.as_expected(),
            contradicted: r.contradicted(),
            counterexample: r.counterexample.as_ref().map(CounterexampleView::new),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusView {
    pub n: usize,
    pub total: u64,
    pub rows: Vec<(String, u64)>,
}

impl From<&Census> for CensusView {
    fn from(c: &Census) -> Self {
        CensusView {
            n: c.n,
            total: c.total,
            rows: c.rows.clone(),
        }
    }
}

/// Outcome of an implication sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub n_max: usize,
    pub claims: Vec<ClaimRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub census: Option<CensusView>,
}

impl SweepReport {
    pub fn new(n_max: usize, reports: &[ImplicationReport], census: Option<&Census>) -> Self {
        SweepReport {
            schema_version: SCHEMA_VERSION,
            n_max,
            claims: reports.iter().map(ClaimRow::new).collect(),
            census: census.map(CensusView::from),
        }
    }

    /// True when every claim met its expectation.
    pub fn as_expected(&self) -> bool {
        self.claims.iter().all(|c| c.as_expected)
    }

    /// True when no implication was refuted. Independence claims without a
    /// counterexample at this size are open, not failures.
    pub fn consistent(&self) -> bool {
        !self.claims.iter().any(|c| c.contradicted)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let mark = match (c.contradicted, c.as_expected) {
                (true, _) => "FAIL",
                (false, true) => "ok  ",
                (false, false) => "open",
            };
            let domain = if c.domain == "monotone" { String::new() } else { format!(" @{}", c.domain) };
            let _ = writeln!(
                out,
                "{mark} {} {}{domain}: {} (n <= {}, {} instances, {} with premise)",
                c.expected, c.claim, c.status, c.n_max, c.instances_checked, c.premise_instances
            );
            if let Some(ce) = &c.counterexample {
                let _ = writeln!(out, "     n = {}: {}", ce.n, ce.elements.join(" "));
                if let Some(t) = &ce.transit {
                    for e in t {
                        let _ = writeln!(out, "       {} {} : {}", e.u, e.v, e.members.join(" "));
                    }
                } else {
                    let sets: Vec<String> = ce.sets.iter().map(|s| format!("{{{}}}", s.join(", "))).collect();
                    let _ = writeln!(out, "       {}", sets.join(" "));
                }
                for f in &ce.failed {
                    let w = f.witness.as_ref().map(|w| w.text.as_str()).unwrap_or("");
                    let _ = writeln!(out, "       not {}: {w}", f.tag);
                }
            }
        }
        if let Some(c) = &self.census {
            let _ = writeln!(out, "census n = {}: {} monotone transit functions", c.n, c.total);
            let width = c.rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
            for (label, count) in &c.rows {
                let _ = writeln!(out, "  {label:width$}  {count}");
            }
        }
        out
    }
}
