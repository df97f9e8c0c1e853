//! Exhaustive enumeration over small ground sets, and implication checking
//! between axioms.
//!
//! Set systems on `n` elements are indexed by *candidate numbers*: bit `i`
//! of the number selects the `i`-th subset of size at least two, subsets
//! taken in canonical cluster order. Singletons are always present. Monotone
//! transit functions are enumerated as the canonical transit functions of
//! the T-systems among the candidates. Counts are of labelled structures,
//! not of isomorphism classes.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::axioms::{check, classify_all, TransitAxiom};
use crate::cluster::{Bits, Cluster};
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::predicates::{check_system, SystemPredicate};
use crate::pyramid::{find_compatible_order, is_pre_pyramidal_masks, is_pyramidal, is_weakly_pyramidal};
use crate::system::SetSystem;
use crate::transit::{transit_sets, TransitFunction};
use crate::verdict::{Verdict, Witness};

/// Largest supported ground set.
pub const MAX_N: usize = 5;
/// Ground sets of this size and above need [`SweepOptions::long_run`].
pub const LONG_RUN_FROM: usize = 5;
/// Largest ground set for the domain of all (not necessarily monotone)
/// transit functions.
pub const MAX_ALL_TRANSIT_N: usize = 4;
/// Largest ground set for the domain of all families of non-empty subsets.
pub const MAX_ALL_SYSTEMS_N: usize = 4;
/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "TRANSIT_WORKERS";

const CHUNK: u64 = 1 << 12;
const BATCH: u64 = 64;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepOptions {
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Allow ground sets of [`LONG_RUN_FROM`] elements.
    pub long_run: bool,
}

impl SweepOptions {
    /// Reads the worker count from [`WORKERS_ENV`]; unset or invalid values
    /// fall back to the global pool.
    pub fn from_env() -> Self {
        let workers = std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&w| w > 0);
        SweepOptions {
            workers,
            long_run: false,
        }
    }

    pub fn long_run(mut self, on: bool) -> Self {
        self.long_run = on;
        self
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match self.workers {
            Some(w) => rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .expect("thread pool")
                .install(f),
            None => f(),
        }
    }

    /// Checks that `n` is in range and allowed by the long-run flag.
    pub fn admit(&self, n: usize) -> Result<()> {
        check_range(n)?;
        if n >= LONG_RUN_FROM && !self.long_run {
            return Err(Error::LongRunRequired { n });
        }
        Ok(())
    }
}

fn check_range(n: usize) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::EnumerationRange { n, min: 1, max: MAX_N })
    }
}

/// Shared lettered ground set `a, b, c, ...` of `n` elements.
pub fn ground(n: usize) -> Arc<GroundSet> {
    static GROUNDS: [OnceLock<Arc<GroundSet>>; MAX_N + 1] = [const { OnceLock::new() }; MAX_N + 1];
    GROUNDS[n]
        .get_or_init(|| Arc::new(GroundSet::lettered(n).expect("1..=5 elements")))
        .clone()
}

/// The subsets of size at least two and the per-pair cover masks used to
/// test candidates.
pub struct Candidates {
    n: usize,
    subsets: Vec<u64>,
    /// `index[bits]` is the position of a subset in `subsets`.
    index: Vec<u8>,
    pairs: Vec<(usize, usize)>,
    /// Candidate bits of the subsets containing each pair.
    pair_covers: Vec<u64>,
}

impl Candidates {
    fn build(n: usize) -> Self {
        let mut clusters: Vec<Cluster> = (1u64..1 << n)
            .filter(|b| b.count_ones() >= 2)
            .map(|b| Cluster::from_bits(b).unwrap())
            .collect();
        clusters.sort();
        let subsets: Vec<u64> = clusters.iter().map(|c| c.bits()).collect();
        let mut index = vec![u8::MAX; 1 << n];
        for (i, &s) in subsets.iter().enumerate() {
            index[s as usize] = i as u8;
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let pair_covers = pairs
            .iter()
            .map(|&(u, v)| {
                let target = (1u64 << u) | (1u64 << v);
                subsets
                    .iter()
                    .enumerate()
                    .filter(|(_, &s)| s & target == target)
                    .fold(0u64, |m, (i, _)| m | 1 << i)
            })
            .collect();
        Candidates {
            n,
            subsets,
            index,
            pairs,
            pair_covers,
        }
    }

    /// Shared tables for `n` elements (`1..=5`).
    pub fn get(n: usize) -> &'static Candidates {
        static TABLES: [OnceLock<Candidates>; MAX_N + 1] = [const { OnceLock::new() }; MAX_N + 1];
        assert!((1..=MAX_N).contains(&n));
        TABLES[n].get_or_init(|| Candidates::build(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Subsets of size at least two in canonical order.
    pub fn subsets(&self) -> &[u64] {
        &self.subsets
    }

    /// Number of candidate systems, `2^subsets`.
    pub fn count(&self) -> u64 {
        1 << self.subsets.len()
    }

    /// Non-singleton members of candidate `k`.
    pub fn members(&self, k: u64) -> impl Iterator<Item = u64> + '_ {
        Bits::new(k).map(|i| self.subsets[i])
    }

    /// Candidate `k` with its singletons, as a set system.
    pub fn system(&self, k: u64) -> SetSystem {
        let mut clusters: Vec<Cluster> = (0..self.n).map(Cluster::singleton).collect();
        clusters.extend(self.members(k).map(|b| Cluster::from_bits(b).unwrap()));
        SetSystem::from_sorted_unchecked(ground(self.n), clusters)
    }

    /// T-system test. On success `meets[i]` holds the canonical transit set
    /// of the `i`-th pair.
    ///
    /// Every pair must be covered, each meet of covers must be a member
    /// (KC), and every member must be such a meet (KR); singletons make (KS)
    /// automatic.
    #[inline]
    pub fn t_system(&self, k: u64, meets: &mut [u64]) -> bool {
        let mut produced = 0u64;
        for (i, &covers) in self.pair_covers.iter().enumerate() {
            let c = k & covers;
            if c == 0 {
                return false;
            }
            let mut meet = u64::MAX;
            for j in Bits::new(c) {
                meet &= self.subsets[j];
            }
            let idx = self.index[meet as usize];
            if k >> idx & 1 == 0 {
                return false;
            }
            produced |= 1 << idx;
            meets[i] = meet;
        }
        produced == k
    }

    /// The canonical transit function from the meets of [`Self::t_system`].
    pub fn transit(&self, meets: &[u64]) -> TransitFunction {
        let n = self.n;
        TransitFunction::from_pairs_unchecked(ground(n), |u, v| {
            // index of (u, v) among pairs in lexicographic order
            let i = u * (2 * n - u - 1) / 2 + (v - u - 1);
            meets[i]
        })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

fn par_chunks<T: Send>(total: u64, f: impl Fn(std::ops::Range<u64>) -> T + Sync + Send) -> Vec<T> {
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| f(c * CHUNK..((c + 1) * CHUNK).min(total)))
        .collect()
}

/// Candidate numbers of all T-systems on `n` elements, ascending. Computed
/// once per process.
pub fn t_system_indices(n: usize) -> Result<&'static [u64]> {
    check_range(n)?;
    static LISTS: [OnceLock<Vec<u64>>; MAX_N + 1] = [const { OnceLock::new() }; MAX_N + 1];
    Ok(LISTS[n].get_or_init(|| {
        let cand = Candidates::get(n);
        par_chunks(cand.count(), |range| {
            let mut meets = [0u64; 16];
            range.filter(|&k| cand.t_system(k, &mut meets)).collect::<Vec<u64>>()
        })
        .concat()
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationSpec {
    /// Ground set size, `1..=5`.
    pub n: usize,
    /// Conjunction of predicates every yielded system satisfies.
    pub filter: Vec<SystemPredicate>,
    /// Require the ground set itself as a member.
    pub require_full: bool,
}

impl EnumerationSpec {
    pub fn new(n: usize) -> Self {
        EnumerationSpec {
            n,
            filter: Vec::new(),
            require_full: false,
        }
    }

    pub fn filter(mut self, p: SystemPredicate) -> Self {
        self.filter.push(p);
        self
    }

    fn accepts(&self, cand: &Candidates, k: u64) -> Option<SetSystem> {
        let full_bit = cand.count() >> 1;
        if self.require_full && cand.n > 1 && k & full_bit == 0 {
            return None;
        }
        let wants_t = self.filter.iter().any(|p| {
            matches!(p, SystemPredicate::TSystem | SystemPredicate::BinaryClustering)
        });
        if wants_t && !cand.t_system(k, &mut [0u64; 16]) {
            return None;
        }
        let s = cand.system(k);
        self.filter
            .iter()
            .all(|&p| check_system(&s, p).holds)
            .then_some(s)
    }
}

/// Every set system on `spec.n` elements that contains all singletons and
/// passes the filter, once each, in candidate order.
pub fn enumerate_systems(spec: &EnumerationSpec) -> Result<impl Iterator<Item = SetSystem> + '_> {
    check_range(spec.n)?;
    let cand = Candidates::get(spec.n);
    Ok((0..cand.count()).filter_map(move |k| spec.accepts(cand, k)))
}

/// Parallel count of [`enumerate_systems`].
pub fn count_systems(spec: &EnumerationSpec, opts: &SweepOptions) -> Result<u64> {
    opts.admit(spec.n)?;
    let cand = Candidates::get(spec.n);
    Ok(opts.install(|| {
        par_chunks(cand.count(), |range| {
            range.filter(|&k| spec.accepts(cand, k).is_some()).count() as u64
        })
        .iter()
        .sum()
    }))
}

/// Monotone transit functions on `n` elements, one per T-system.
pub fn enumerate_monotone_tfs(n: usize) -> Result<impl Iterator<Item = TransitFunction>> {
    let indices = t_system_indices(n)?;
    let cand = Candidates::get(n);
    Ok(indices.iter().map(move |&k| monotone_at(cand, k)))
}

fn monotone_at(cand: &Candidates, k: u64) -> TransitFunction {
    let mut meets = [0u64; 16];
    let ok = cand.t_system(k, &mut meets);
    debug_assert!(ok);
    cand.transit(&meets)
}

/// Number of (not necessarily monotone) transit functions on `n` elements.
pub fn transit_function_count(n: usize) -> u64 {
    let pairs = n * n.saturating_sub(1) / 2;
    1 << (pairs * n.saturating_sub(2))
}

/// The `idx`-th transit function: pair `i` (lexicographic) takes bits
/// `i*(n-2)..` of `idx` as its choice of extra members.
fn transit_at(n: usize, idx: u64) -> TransitFunction {
    let width = n.saturating_sub(2);
    let mut pair = 0;
    let mut table = vec![0u64; n * n];
    for u in 0..n {
        for v in u + 1..n {
            let digits = if width == 0 { 0 } else { idx >> (pair * width) & ((1 << width) - 1) };
            let others = (0..n).filter(|&e| e != u && e != v);
            let mut set = (1u64 << u) | (1u64 << v);
            for (bit, e) in others.enumerate() {
                if digits >> bit & 1 == 1 {
                    set |= 1 << e;
                }
            }
            table[u * n + v] = set;
            pair += 1;
        }
    }
    TransitFunction::from_pairs_unchecked(ground(n), |u, v| table[u * n + v])
}

/// All transit functions on `n <= 4` elements, monotone or not.
pub fn enumerate_transit_functions(n: usize) -> Result<impl Iterator<Item = TransitFunction>> {
    if !(1..=MAX_ALL_TRANSIT_N).contains(&n) {
        return Err(Error::EnumerationRange { n, min: 1, max: MAX_ALL_TRANSIT_N });
    }
    Ok((0..transit_function_count(n)).map(move |i| transit_at(n, i)))
}

/// Non-empty subsets in canonical cluster order.
fn all_subsets(n: usize) -> Vec<u64> {
    (0..n).map(|e| 1u64 << e).chain(Candidates::get(n).subsets().iter().copied()).collect()
}

fn family_at(n: usize, subsets: &[u64], idx: u64) -> SetSystem {
    let clusters = Bits::new(idx).map(|i| Cluster::from_bits(subsets[i]).unwrap()).collect();
    SetSystem::from_sorted_unchecked(ground(n), clusters)
}

/// Every family of non-empty subsets of an `n <= 4` element set, singletons
/// optional.
pub fn enumerate_all_systems(n: usize) -> Result<impl Iterator<Item = SetSystem>> {
    if !(1..=MAX_ALL_SYSTEMS_N).contains(&n) {
        return Err(Error::EnumerationRange { n, min: 1, max: MAX_ALL_SYSTEMS_N });
    }
    let subsets = all_subsets(n);
    Ok((0..1u64 << subsets.len()).map(move |i| family_at(n, &subsets, i)))
}

/// A property of a transit function or of its family of transit sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Axiom(TransitAxiom),
    System(SystemPredicate),
    /// Transit sets form an interval hypergraph.
    PrePyramidal,
    /// Pre-pyramidal and closed under intersection.
    Pyramidal,
    /// Weak hierarchy with (WP).
    WeaklyPyramidal,
}

impl Property {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "py" | "prePyramidal" => return Ok(Property::PrePyramidal),
            "pyramidal" => return Ok(Property::Pyramidal),
            "weaklyPyramidal" => return Ok(Property::WeaklyPyramidal),
            _ => {}
        }
        if let Ok(a) = s.parse::<TransitAxiom>() {
            return Ok(Property::Axiom(a));
        }
        s.parse::<SystemPredicate>().map(Property::System)
    }

    fn needs_transit(self) -> bool {
        matches!(self, Property::Axiom(_))
    }

    /// Evaluates the property. Axioms need `transit`.
    pub fn evaluate(self, transit: Option<&TransitFunction>, system: &SetSystem) -> Verdict {
        match self {
            Property::Axiom(a) => check(transit.expect("axiom needs a transit function"), a),
            Property::System(p) => check_system(system, p),
            Property::PrePyramidal => {
                let r = find_compatible_order(system);
                match r.obstruction {
                    None => Verdict::holds("py"),
                    Some(obs) => Verdict::fails("py", Witness::clusters(obs)),
                }
            }
            Property::Pyramidal => is_pyramidal(system),
            Property::WeaklyPyramidal => is_weakly_pyramidal(system),
        }
    }

    /// Fast decision without witnesses.
    fn holds(self, transit: Option<&TransitFunction>, system: &SetSystem) -> bool {
        match self {
            Property::PrePyramidal => {
                let masks: Vec<u64> = system.clusters().iter().map(|c| c.bits()).collect();
                is_pre_pyramidal_masks(system.n(), &masks)
            }
            other => other.evaluate(transit, system).holds,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Axiom(a) => write!(f, "{a}"),
            Property::System(p) => write!(f, "{p}"),
            Property::PrePyramidal => f.write_str("py"),
            Property::Pyramidal => f.write_str("pyramidal"),
            Property::WeaklyPyramidal => f.write_str("weaklyPyramidal"),
        }
    }
}

/// What a claim's author expects the sweep to show.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Expectation {
    /// No counterexample exists.
    Implies,
    /// A counterexample exists.
    Independent,
    /// Open question; the outcome is reported without a verdict.
    ReportOnly,
}

impl Expectation {
    pub fn as_str(self) -> &'static str {
        match self {
            Expectation::Implies => "implies",
            Expectation::Independent => "independent",
            Expectation::ReportOnly => "report",
        }
    }
}

/// The instances a claim quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    /// Monotone transit functions, with their transit sets (the T-systems).
    Monotone,
    /// All transit functions, with their transit sets.
    AllTransit,
    /// All families of non-empty subsets; no transit function.
    AllSystems,
}

impl Domain {
    pub fn as_str(self) -> &'static str {
        match self {
            Domain::Monotone => "monotone",
            Domain::AllTransit => "all-transit",
            Domain::AllSystems => "all-systems",
        }
    }

    pub fn max_n(self) -> usize {
        match self {
            Domain::Monotone => MAX_N,
            Domain::AllTransit => MAX_ALL_TRANSIT_N,
            Domain::AllSystems => MAX_ALL_SYSTEMS_N,
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [Domain::Monotone, Domain::AllTransit, Domain::AllSystems]
            .into_iter()
            .find(|d| d.as_str() == s)
    }

    fn size(self, n: usize) -> Result<u64> {
        Ok(match self {
            Domain::Monotone => t_system_indices(n)?.len() as u64,
            Domain::AllTransit => transit_function_count(n),
            Domain::AllSystems => 1 << ((1u64 << n) - 1),
        })
    }
}

/// `hypothesis` (a conjunction) implies `conclusion` (a conjunction) on
/// every instance of `domain`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ImplicationClaim {
    pub hypothesis: Vec<Property>,
    pub conclusion: Vec<Property>,
    pub expected: Expectation,
    pub domain: Domain,
}

fn join(props: &[Property]) -> String {
    if props.is_empty() {
        return "true".to_string();
    }
    props.iter().map(ToString::to_string).collect::<Vec<_>>().join(" & ")
}

impl ImplicationClaim {
    pub fn new(
        expected: Expectation,
        hypothesis: Vec<Property>,
        conclusion: Vec<Property>,
        domain: Domain,
    ) -> Result<Self> {
        let claim = ImplicationClaim {
            hypothesis,
            conclusion,
            expected,
            domain,
        };
        if claim.conclusion.is_empty() {
            return Err(Error::Claim {
                claim: claim.label(),
                message: "empty conclusion".into(),
            });
        }
        if domain == Domain::AllSystems
            && claim.hypothesis.iter().chain(&claim.conclusion).any(|p| p.needs_transit())
        {
            return Err(Error::Claim {
                claim: claim.label(),
                message: "transit axioms need a transit-function domain".into(),
            });
        }
        Ok(claim)
    }

    /// `hypothesis => conclusion`.
    pub fn label(&self) -> String {
        format!("{} => {}", join(&self.hypothesis), join(&self.conclusion))
    }

    /// One line of the claims grammar, e.g. `independent w => m @all-transit`.
    /// `<=>` yields both directions.
    pub fn parse_line(line: &str) -> Result<Vec<Self>> {
        let err = |m: &str| Error::Claim {
            claim: line.trim().to_string(),
            message: m.to_string(),
        };
        let (body, domain) = match line.split_once('@') {
            Some((b, d)) => (b, Domain::parse(d.trim()).ok_or_else(|| err("unknown domain"))?),
            None => (line, Domain::Monotone),
        };
        let body = body.trim();
        let (kw, rest) = body.split_once(char::is_whitespace).ok_or_else(|| err("missing claim"))?;
        let expected = match kw {
            "implies" => Expectation::Implies,
            "independent" => Expectation::Independent,
            "report" => Expectation::ReportOnly,
            _ => return Err(err("expected `implies`, `independent`, or `report`")),
        };
        let props = |side: &str| -> Result<Vec<Property>> {
            side.split(['&', '∧'])
                .map(str::trim)
                .filter(|t| !t.is_empty() && *t != "true")
                .map(Property::parse)
                .collect()
        };
        if let Some((l, r)) = rest.split_once("<=>") {
            if expected != Expectation::Implies {
                return Err(err("`<=>` only with `implies`"));
            }
            let (l, r) = (props(l)?, props(r)?);
            return Ok(vec![
                ImplicationClaim::new(expected, l.clone(), r.clone(), domain)?,
                ImplicationClaim::new(expected, r, l, domain)?,
            ]);
        }
        let (l, r) = rest.split_once("=>").ok_or_else(|| err("missing `=>`"))?;
        Ok(vec![ImplicationClaim::new(expected, props(l)?, props(r)?, domain)?])
    }

    /// Reads a claims file: one claim per line, `#` comments.
    pub fn parse_all(text: &str) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                out.extend(Self::parse_line(line)?);
            }
        }
        Ok(out)
    }

    /// True if the instance satisfies the hypothesis and violates the
    /// conclusion.
    pub fn refuted_by(&self, transit: Option<&TransitFunction>, system: &SetSystem) -> bool {
        self.hypothesis.iter().all(|p| p.holds(transit, system))
            && !self.conclusion.iter().all(|p| p.holds(transit, system))
    }
}

/// The standard battery: proved implications, non-implications with known
/// counterexamples, and open questions.
pub const BATTERY: &str = "\
implies w <=> w2
implies w <=> w3
implies w <=> mm & x'
implies w => x'
implies w => mm
implies w => k
implies mm => a'
implies uc => k
implies uc => u
implies x <=> u & x'
implies uc => x
implies uc => w & wp
implies wp => o'
implies u => o
implies o => o'
implies uc <=> UC
implies uc => py
implies py => pyramidal
implies py => o
implies py => w & wp
implies K1 & K2 => K3
implies MM => K3
implies K3 => K1
implies W' <=> weakHierarchy @all-systems
implies UC & weakHierarchy & WP => py @all-systems
implies py => weakHierarchy & WP @all-systems
independent x' & m => w
independent mm & m => w
independent u => uc
independent w => wp
independent wp => w
independent o' => wp
independent o' & wp => o
independent w => m @all-transit
report u & w => py
report u & w => wp
";

pub fn battery() -> Vec<ImplicationClaim> {
    ImplicationClaim::parse_all(BATTERY).expect("built-in battery parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ImplicationStatus {
    /// No counterexample up to the swept size.
    Confirmed,
    /// A counterexample was found.
    Refuted,
}

/// An instance satisfying a claim's hypothesis but not its conclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub n: usize,
    pub transit: Option<TransitFunction>,
    pub system: SetSystem,
    /// Verdicts of the failing conclusion properties.
    pub failed: Vec<(Property, Verdict)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicationReport {
    pub claim: ImplicationClaim,
    /// Largest ground set swept (capped by the domain).
    pub n_max: usize,
    /// Instances examined, up to and including the counterexample.
    pub instances_checked: u64,
    /// Examined instances satisfying the hypothesis.
    pub premise_instances: u64,
    pub counterexample: Option<Counterexample>,
    pub status: ImplicationStatus,
}

impl ImplicationReport {
    /// Whether the outcome matches the claim's expectation; always true for
    /// open questions.
    pub fn as_expected(&self) -> bool {
        match self.claim.expected {
            Expectation::Implies => self.status == ImplicationStatus::Confirmed,
            Expectation::Independent => self.status == ImplicationStatus::Refuted,
            Expectation::ReportOnly => true,
        }
    }

    /// A claimed implication has a counterexample.
    pub fn contradicted(&self) -> bool {
        self.claim.expected == Expectation::Implies && self.status == ImplicationStatus::Refuted
    }
}

fn instance(domain: Domain, n: usize, idx: u64) -> (Option<TransitFunction>, SetSystem) {
    match domain {
        Domain::Monotone => {
            let cand = Candidates::get(n);
            let k = t_system_indices(n).expect("range checked")[idx as usize];
            (Some(monotone_at(cand, k)), cand.system(k))
        }
        Domain::AllTransit => {
            let r = transit_at(n, idx);
            let s = transit_sets(&r);
            (Some(r), s)
        }
        Domain::AllSystems => (None, family_at(n, &all_subsets(n), idx)),
    }
}

#[derive(Default)]
struct ChunkOutcome {
    scanned: u64,
    premise: u64,
    hit: Option<u64>,
}

fn scan(claim: &ImplicationClaim, n: usize, range: std::ops::Range<u64>) -> ChunkOutcome {
    let mut out = ChunkOutcome::default();
    let subsets = (claim.domain == Domain::AllSystems).then(|| all_subsets(n));
    for idx in range {
        out.scanned += 1;
        let (r, s) = match &subsets {
            Some(subs) => (None, family_at(n, subs, idx)),
            None => instance(claim.domain, n, idx),
        };
        if !claim.hypothesis.iter().all(|p| p.holds(r.as_ref(), &s)) {
            continue;
        }
        out.premise += 1;
        if !claim.conclusion.iter().all(|p| p.holds(r.as_ref(), &s)) {
            out.hit = Some(idx);
            break;
        }
    }
    out
}

/// Sweeps `claim.domain` for `n = 1..=n_max` and stops at the first
/// counterexample (smallest `n`, then smallest index). The result does not
/// depend on the worker count.
pub fn verify_implication(
    claim: &ImplicationClaim,
    n_max: usize,
    opts: &SweepOptions,
) -> Result<ImplicationReport> {
    opts.admit(n_max)?;
    let top = n_max.min(claim.domain.max_n());
    opts.install(|| {
        let mut checked = 0u64;
        let mut premise = 0u64;
        for n in 1..=top {
            let total = claim.domain.size(n)?;
            let chunks = total.div_ceil(CHUNK);
            let mut start = 0;
            while start < chunks {
                let end = (start + BATCH).min(chunks);
                let outcomes: Vec<ChunkOutcome> = (start..end)
                    .into_par_iter()
                    .map(|c| scan(claim, n, c * CHUNK..((c + 1) * CHUNK).min(total)))
                    .collect();
                for o in outcomes {
                    checked += o.scanned;
                    premise += o.premise;
                    if let Some(idx) = o.hit {
                        let (r, s) = instance(claim.domain, n, idx);
                        let failed = claim
                            .conclusion
                            .iter()
                            .map(|&p| (p, p.evaluate(r.as_ref(), &s)))
                            .filter(|(_, v)| !v.holds)
                            .collect();
                        return Ok(ImplicationReport {
                            claim: claim.clone(),
                            n_max: top,
                            instances_checked: checked,
                            premise_instances: premise,
                            counterexample: Some(Counterexample {
                                n,
                                transit: r,
                                system: s,
                                failed,
                            }),
                            status: ImplicationStatus::Refuted,
                        });
                    }
                }
                start = end;
            }
        }
        Ok(ImplicationReport {
            claim: claim.clone(),
            n_max: top,
            instances_checked: checked,
            premise_instances: premise,
            counterexample: None,
            status: ImplicationStatus::Confirmed,
        })
    })
}

/// Runs every claim in order.
pub fn verify_all(
    claims: &[ImplicationClaim],
    n_max: usize,
    opts: &SweepOptions,
) -> Result<Vec<ImplicationReport>> {
    claims.iter().map(|c| verify_implication(c, n_max, opts)).collect()
}

/// Counts of monotone transit functions satisfying each row's conjunction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    pub total: u64,
    pub rows: Vec<(String, u64)>,
}

impl Census {
    pub fn count(&self, label: &str) -> Option<u64> {
        self.rows.iter().find(|(l, _)| l == label).map(|&(_, c)| c)
    }
}

/// Row labels of [`census`]: every transit axiom, the pyramidal classes,
/// and a few conjunctions.
pub fn census_rows() -> Vec<Vec<Property>> {
    let mut rows: Vec<Vec<Property>> = TransitAxiom::ALL.iter().map(|&a| vec![Property::Axiom(a)]).collect();
    rows.push(vec![Property::PrePyramidal]);
    rows.push(vec![Property::WeaklyPyramidal]);
    rows.push(vec![Property::System(SystemPredicate::WeakHierarchy)]);
    for combo in ["mm & x'", "u & x'", "w & wp", "u & w", "uc & py"] {
        rows.push(combo.split('&').map(|t| Property::parse(t).unwrap()).collect());
    }
    rows
}

pub fn census(n: usize, opts: &SweepOptions) -> Result<Census> {
    opts.admit(n)?;
    let rows = census_rows();
    let indices = t_system_indices(n)?;
    let cand = Candidates::get(n);
    let flat: Vec<Property> = {
        let mut v: Vec<Property> = rows.iter().flatten().copied().collect();
        v.sort();
        v.dedup();
        v
    };
    let counts: Vec<Vec<u64>> = opts.install(|| {
        par_chunks(indices.len() as u64, |range| {
            let mut counts = vec![0u64; rows.len()];
            for i in range {
                let k = indices[i as usize];
                let r = monotone_at(cand, k);
                let s = cand.system(k);
                let axioms = classify_all(&r);
                let sat: Vec<bool> = flat
                    .iter()
                    .map(|p| match p {
                        Property::Axiom(a) => axioms[a].holds,
                        other => other.holds(Some(&r), &s),
                    })
                    .collect();
                for (row, c) in rows.iter().zip(counts.iter_mut()) {
                    if row.iter().all(|p| sat[flat.binary_search(p).unwrap()]) {
                        *c += 1;
                    }
                }
            }
            counts
        })
    });
    let mut totals = vec![0u64; rows.len()];
    for c in counts {
        for (t, x) in totals.iter_mut().zip(c) {
            *t += x;
        }
    }
    Ok(Census {
        n,
        total: indices.len() as u64,
        rows: rows.iter().map(|r| join(r)).zip(totals).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::check_monotone;
    use crate::predicates::is_t_system;

    #[test]
    fn candidate_space_sizes() {
        assert_eq!(Candidates::get(1).count(), 1);
        assert_eq!(Candidates::get(2).count(), 2);
        assert_eq!(Candidates::get(3).count(), 16);
        assert_eq!(Candidates::get(4).count(), 1 << 11);
        assert_eq!(Candidates::get(5).subsets().len(), 26);
        // the full set is the last subset
        assert_eq!(*Candidates::get(4).subsets().last().unwrap(), 0b1111);
    }

    #[test]
    fn fast_t_system_test_matches_definition() {
        for n in 1..=4 {
            let cand = Candidates::get(n);
            for k in 0..cand.count() {
                let fast = cand.t_system(k, &mut [0u64; 16]);
                assert_eq!(fast, is_t_system(&cand.system(k)), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn small_t_system_streams() {
        let one: Vec<SetSystem> = enumerate_systems(&EnumerationSpec::new(1).filter(SystemPredicate::TSystem))
            .unwrap()
            .collect();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].len(), 1);
        // n = 2: {{a},{b}} leaves the pair uncovered; only {{a},{b},{a,b}} is a T-system
        let two = enumerate_systems(&EnumerationSpec::new(2).filter(SystemPredicate::TSystem)).unwrap().count();
        assert_eq!(two, 1);
    }

    #[test]
    fn monotone_stream_is_monotone() {
        for n in 1..=4 {
            for r in enumerate_monotone_tfs(n).unwrap() {
                assert!(check_monotone(&r).holds);
            }
        }
    }

    #[test]
    fn transit_function_decoding() {
        assert_eq!(transit_function_count(3), 8);
        assert_eq!(transit_function_count(4), 4096);
        let all: Vec<TransitFunction> = enumerate_transit_functions(3).unwrap().collect();
        let distinct: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), 8);
        assert!(enumerate_transit_functions(5).is_err());
    }

    #[test]
    fn claim_grammar() {
        let c = ImplicationClaim::parse_line("independent w => m @all-transit").unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].domain, Domain::AllTransit);
        assert_eq!(c[0].label(), "w => m");
        let both = ImplicationClaim::parse_line("implies x <=> u & x'").unwrap();
        assert_eq!(both[1].label(), "u & x' => x");
        assert!(ImplicationClaim::parse_line("maybe w => m").is_err());
        assert!(ImplicationClaim::parse_line("implies w => m @all-systems").is_err());
        assert!(ImplicationClaim::parse_line("implies w => q").is_err());
        assert!(!battery().is_empty());
    }

    #[test]
    fn reflexive_claim() {
        let c = &ImplicationClaim::parse_line("implies w => w").unwrap()[0];
        let r = verify_implication(c, 3, &SweepOptions::default()).unwrap();
        assert_eq!(r.status, ImplicationStatus::Confirmed);
        assert!(r.as_expected());
    }

    #[test]
    fn long_run_gate() {
        let c = &ImplicationClaim::parse_line("implies w => w").unwrap()[0];
        assert!(matches!(
            verify_implication(c, 5, &SweepOptions::default()),
            Err(Error::LongRunRequired { n: 5 })
        ));
        assert!(matches!(
            verify_implication(c, 6, &SweepOptions::default().long_run(true)),
            Err(Error::EnumerationRange { n: 6, .. })
        ));
    }

    #[test]
    fn census_at_one_element() {
        let c = census(1, &SweepOptions::default()).unwrap();
        assert_eq!(c.total, 1);
        assert!(c.rows.iter().all(|(_, k)| *k == 1));
    }
}
