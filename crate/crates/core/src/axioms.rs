//! Decision procedures for transit-function axioms.
//!
//! Every checker scans its quantifiers in lexicographic order of element
//! indices and stops at the first violation, so the reported witness is the
//! lexicographically smallest violating tuple. Axioms whose quantifiers
//! range over transit sets rather than elements scan one representative pair
//! per distinct transit set (the smallest pair producing it); singleton
//! transit sets and repeated sets never violate any of these axioms and are
//! skipped.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::cluster::Bits;
use crate::error::Error;
use crate::transit::TransitFunction;
use crate::verdict::{Verdict, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TransitAxiom {
    /// (m) monotonicity
    M,
    /// (a') some transit set is the whole ground set
    APrime,
    /// (k) closure under non-empty intersection
    K,
    /// (w) one of any three points lies between the other two
    W,
    /// (w1) contrapositive of (w); accepts exactly the same functions
    W1,
    /// (w2) weak-hierarchy condition on transit sets
    W2,
    /// (w3)
    W3,
    /// (x) triangle-like covering
    X,
    /// (x') (x) restricted to `z ∉ R(x, y)`
    XPrime,
    /// (u)
    U,
    /// (uc) union closure
    Uc,
    /// (mm) covering of intersecting unions
    Mm,
    /// (k3) unique minimal covering
    K3,
    /// (wp) weak pyramid condition
    Wp,
    /// (o)
    O,
    /// (o')
    OPrime,
}

impl TransitAxiom {
    pub const ALL: [TransitAxiom; 16] = [
        TransitAxiom::M,
        TransitAxiom::APrime,
        TransitAxiom::K,
        TransitAxiom::W,
        TransitAxiom::W1,
        TransitAxiom::W2,
        TransitAxiom::W3,
        TransitAxiom::X,
        TransitAxiom::XPrime,
        TransitAxiom::U,
        TransitAxiom::Uc,
        TransitAxiom::Mm,
        TransitAxiom::K3,
        TransitAxiom::Wp,
        TransitAxiom::O,
        TransitAxiom::OPrime,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TransitAxiom::M => "m",
            TransitAxiom::APrime => "a'",
            TransitAxiom::K => "k",
            TransitAxiom::W => "w",
            TransitAxiom::W1 => "w1",
            TransitAxiom::W2 => "w2",
            TransitAxiom::W3 => "w3",
            TransitAxiom::X => "x",
            TransitAxiom::XPrime => "x'",
            TransitAxiom::U => "u",
            TransitAxiom::Uc => "uc",
            TransitAxiom::Mm => "mm",
            TransitAxiom::K3 => "k3",
            TransitAxiom::Wp => "wp",
            TransitAxiom::O => "o",
            TransitAxiom::OPrime => "o'",
        }
    }
}

impl fmt::Display for TransitAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TransitAxiom {
    type Err = Error;

    /// Accepts the canonical names plus `-prime`/`p` spellings of the primed
    /// axioms (`a-prime`, `xp`, ...). Case-sensitive: upper-case names are
    /// set-system predicates.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let ax = match s {
            "a-prime" | "ap" | "a_prime" => TransitAxiom::APrime,
            "x-prime" | "xp" | "x_prime" => TransitAxiom::XPrime,
            "o-prime" | "op" | "o_prime" => TransitAxiom::OPrime,
            "w₁" => TransitAxiom::W1,
            "w₂" => TransitAxiom::W2,
            "w₃" => TransitAxiom::W3,
            _ => *TransitAxiom::ALL
                .iter()
                .find(|a| a.as_str() == s)
                .ok_or_else(|| Error::UnknownTag(s.to_string()))?,
        };
        Ok(ax)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WVariant {
    W,
    W1,
    W2,
    W3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XVariant {
    X,
    XPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OVariant {
    O,
    OPrime,
}

/// A distinct non-singleton transit set with the smallest pair producing it.
#[derive(Debug, Clone, Copy)]
struct Rep {
    bits: u64,
    u: usize,
    v: usize,
}

/// Precomputed view shared by the checkers.
struct Transit<'a> {
    r: &'a TransitFunction,
    n: usize,
    reps: Vec<Rep>,
    /// All transit sets, singletons included, sorted.
    family: Vec<u64>,
}

impl<'a> Transit<'a> {
    fn new(r: &'a TransitFunction) -> Self {
        let n = r.n();
        let mut reps: Vec<Rep> = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let bits = r.bits(u, v);
                if !reps.iter().any(|rep| rep.bits == bits) {
                    reps.push(Rep { bits, u, v });
                }
            }
        }
        let mut family: Vec<u64> = reps.iter().map(|r| r.bits).collect();
        family.extend((0..n).map(|x| 1u64 << x));
        family.sort_unstable();
        family.dedup();
        Transit { r, n, reps, family }
    }

    #[inline]
    fn set(&self, u: usize, v: usize) -> u64 {
        self.r.bits(u, v)
    }

    fn is_transit_set(&self, bits: u64) -> bool {
        self.family.binary_search(&bits).is_ok()
    }
}

fn bits(word: u64) -> Bits {
    Bits::new(word)
}

/// Indices strictly above `p`.
#[inline]
fn after(p: usize) -> u64 {
    u64::MAX.checked_shl(p as u32 + 1).unwrap_or(0)
}

/// Indices `p` and above.
#[inline]
fn from(p: usize) -> u64 {
    u64::MAX << p
}

pub fn check_monotone(r: &TransitFunction) -> Verdict {
    monotone(&Transit::new(r))
}

fn monotone(t: &Transit) -> Verdict {
    let found = (|| {
        for u in 0..t.n {
            for v in u + 1..t.n {
                let s = t.set(u, v);
                for p in bits(s) {
                    for q in bits(s & after(p)) {
                        let extra = t.set(p, q) & !s;
                        if extra != 0 {
                            let e = extra.trailing_zeros() as usize;
                            return Some(Witness::elements([u, v, p, q, e]));
                        }
                    }
                }
            }
        }
        None
    })();
    Verdict::from_search("m", found)
}

/// (a'). On failure the witness is the first pair with a transit set of
/// maximum cardinality.
pub fn check_attainment(r: &TransitFunction) -> Verdict {
    let n = r.n();
    if n == 1 {
        return Verdict::holds("a'");
    }
    let full = r.full_bits();
    let mut best = (0usize, 0usize, 0u32);
    for u in 0..n {
        for v in u + 1..n {
            let s = r.bits(u, v);
            if s == full {
                return Verdict::holds("a'");
            }
            if s.count_ones() > best.2 {
                best = (u, v, s.count_ones());
            }
        }
    }
    Verdict::fails("a'", Witness::elements([best.0, best.1]))
}

pub fn check_intersection_closure(r: &TransitFunction) -> Verdict {
    intersection_closure(&Transit::new(r))
}

fn attained_inside(t: &Transit, target: u64) -> bool {
    if target.count_ones() == 1 {
        return true;
    }
    for p in bits(target) {
        for q in bits(target & after(p)) {
            if t.set(p, q) == target {
                return true;
            }
        }
    }
    false
}

fn intersection_closure(t: &Transit) -> Verdict {
    let found = (|| {
        for (i, a) in t.reps.iter().enumerate() {
            for b in &t.reps[i + 1..] {
                let meet = a.bits & b.bits;
                if meet != 0 && !attained_inside(t, meet) {
                    return Some(Witness::elements([a.u, a.v, b.u, b.v]));
                }
            }
        }
        None
    })();
    Verdict::from_search("k", found)
}

pub fn check_w_family(r: &TransitFunction, variant: WVariant) -> Verdict {
    let t = Transit::new(r);
    match variant {
        WVariant::W => w(&t),
        WVariant::W1 => w(&t).retag("w1"),
        WVariant::W2 => w2(&t, false),
        WVariant::W3 => w3(&t),
    }
}

/// (w2) restricted to triples of transit sets with pairwise non-empty
/// intersections. Agrees with the unrestricted form on every transit
/// function: when two of the sets are disjoint the triple intersection is
/// empty and equals that pairwise intersection.
pub fn check_w2_guarded(r: &TransitFunction) -> Verdict {
    w2(&Transit::new(r), true)
}

fn w(t: &Transit) -> Verdict {
    let found = (|| {
        for x in 0..t.n {
            for y in x + 1..t.n {
                for z in y + 1..t.n {
                    if !t.r.between(z, x, y) && !t.r.between(y, x, z) && !t.r.between(x, y, z) {
                        return Some(Witness::elements([x, y, z]));
                    }
                }
            }
        }
        None
    })();
    Verdict::from_search("w", found)
}

fn w2(t: &Transit, guarded: bool) -> Verdict {
    let found = (|| {
        let reps = &t.reps;
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                for k in j + 1..reps.len() {
                    let (a, b, c) = (reps[i].bits, reps[j].bits, reps[k].bits);
                    let (ab, ac, bc) = (a & b, a & c, b & c);
                    if guarded && (ab == 0 || ac == 0 || bc == 0) {
                        continue;
                    }
                    let abc = a & b & c;
                    if abc != ab && abc != ac && abc != bc {
                        return Some(Witness::elements([
                            reps[i].u, reps[i].v, reps[j].u, reps[j].v, reps[k].u, reps[k].v,
                        ]));
                    }
                }
            }
        }
        None
    })();
    Verdict::from_search("w2", found)
}

fn w3(t: &Transit) -> Verdict {
    let found = (|| {
        let reps = &t.reps;
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                let (only_a, both, only_b) = (a.bits & !b.bits, a.bits & b.bits, b.bits & !a.bits);
                if only_a == 0 || both == 0 || only_b == 0 {
                    continue;
                }
                for x in bits(only_a) {
                    for z in bits(only_b) {
                        let missing = both & !t.set(x, z);
                        if missing != 0 {
                            let y = missing.trailing_zeros() as usize;
                            return Some(Witness::elements([a.u, a.v, b.u, b.v, x, y, z]));
                        }
                    }
                }
            }
        }
        None
    })();
    Verdict::from_search("w3", found)
}

pub fn check_x_family(r: &TransitFunction, variant: XVariant) -> Verdict {
    x_family(&Transit::new(r), variant)
}

fn x_family(t: &Transit, variant: XVariant) -> Verdict {
    let tag = match variant {
        XVariant::X => "x",
        XVariant::XPrime => "x'",
    };
    let found = (|| {
        for x in 0..t.n {
            for y in x + 1..t.n {
                let s = t.set(x, y);
                for z in 0..t.n {
                    if z == x || z == y {
                        continue;
                    }
                    if variant == XVariant::XPrime && s >> z & 1 == 1 {
                        continue;
                    }
                    let missing = s & !(t.set(x, z) | t.set(z, y));
                    if missing != 0 {
                        let e = missing.trailing_zeros() as usize;
                        return Some(Witness::elements([x, y, z, e]));
                    }
                }
            }
        }
        None
    })();
    Verdict::from_search(tag, found)
}

pub fn check_u(r: &TransitFunction) -> Verdict {
    u_axiom(&Transit::new(r))
}

fn u_axiom(t: &Transit) -> Verdict {
    let found = (|| {
        for u in 0..t.n {
            for v in u + 1..t.n {
                let s = t.set(u, v);
                for z in bits(s & !(1 << u) & !(1 << v)) {
                    if t.set(u, z) | t.set(z, v) != s {
                        return Some(Witness::elements([u, v, z]));
                    }
                }
            }
        }
        None
    })();
    Verdict::from_search("u", found)
}

pub fn check_uc(r: &TransitFunction) -> Verdict {
    uc(&Transit::new(r))
}

fn uc(t: &Transit) -> Verdict {
    // A set R(p, q) contains p and q, so "p, q in the union with R(p, q) equal
    // to the union" just asks for the union to be a transit set.
    let found = (|| {
        for (i, a) in t.reps.iter().enumerate() {
            for b in &t.reps[i + 1..] {
                if a.bits & b.bits != 0 && !t.is_transit_set(a.bits | b.bits) {
                    return Some(Witness::elements([a.u, a.v, b.u, b.v]));
                }
            }
        }
        None
    })();
    Verdict::from_search("uc", found)
}

pub fn check_mm(r: &TransitFunction) -> Verdict {
    mm(&Transit::new(r))
}

fn covered_from_inside(t: &Transit, union: u64) -> bool {
    for p in bits(union) {
        for q in bits(union & after(p)) {
            if union & !t.set(p, q) == 0 {
                return true;
            }
        }
    }
    false
}

fn mm(t: &Transit) -> Verdict {
    let found = (|| {
        for (i, a) in t.reps.iter().enumerate() {
            for b in &t.reps[i + 1..] {
                if a.bits & b.bits != 0 && !covered_from_inside(t, a.bits | b.bits) {
                    return Some(Witness::elements([a.u, a.v, b.u, b.v]));
                }
            }
        }
        None
    })();
    Verdict::from_search("mm", found)
}

pub fn check_k3(r: &TransitFunction) -> Verdict {
    k3(&Transit::new(r))
}

/// Clause (ii) asks for `p, q` inside every covering transit set, i.e. inside
/// their intersection; clause (i) asks for `R(p, q)` itself to cover.
fn k3_satisfied(t: &Transit, union: u64) -> bool {
    let mut meet = u64::MAX;
    let mut any = false;
    for &s in &t.family {
        if union & !s == 0 {
            meet &= s;
            any = true;
        }
    }
    if !any {
        return false;
    }
    for p in bits(meet) {
        for q in bits(meet & from(p)) {
            if union & !t.set(p, q) == 0 {
                return true;
            }
        }
    }
    false
}

fn k3(t: &Transit) -> Verdict {
    let found = (|| {
        for (i, a) in t.reps.iter().enumerate() {
            for b in &t.reps[i + 1..] {
                if a.bits & b.bits != 0 && !k3_satisfied(t, a.bits | b.bits) {
                    return Some(Witness::elements([a.u, a.v, b.u, b.v]));
                }
            }
        }
        None
    })();
    Verdict::from_search("k3", found)
}

pub fn check_wp(r: &TransitFunction) -> Verdict {
    wp(&Transit::new(r))
}

pub(crate) fn wp_triple_ok(a: u64, b: u64, c: u64) -> bool {
    if a & b == 0 || a & c == 0 || b & c == 0 {
        return true;
    }
    c & !(a | b) == 0 || a & !(b | c) == 0 || b & !(a | c) == 0
}

fn wp(t: &Transit) -> Verdict {
    let found = (|| {
        let reps = &t.reps;
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                if reps[i].bits & reps[j].bits == 0 {
                    continue;
                }
                for k in j + 1..reps.len() {
                    if !wp_triple_ok(reps[i].bits, reps[j].bits, reps[k].bits) {
                        return Some(Witness::elements([
                            reps[i].u, reps[i].v, reps[j].u, reps[j].v, reps[k].u, reps[k].v,
                        ]));
                    }
                }
            }
        }
        None
    })();
    Verdict::from_search("wp", found)
}

pub fn check_o_family(r: &TransitFunction, variant: OVariant) -> Verdict {
    o_family(&Transit::new(r), variant)
}

/// `R(p, z) ∪ R(z, q) = s` for the given `z`.
fn splits_at(t: &Transit, s: u64, p: usize, q: usize, z: usize) -> bool {
    t.set(p, z) | t.set(z, q) == s
}

fn o_family(t: &Transit, variant: OVariant) -> Verdict {
    let found = (|| {
        for u in 0..t.n {
            for v in u + 1..t.n {
                let s = t.set(u, v);
                match variant {
                    OVariant::O => {
                        let ok = bits(s).any(|p| {
                            bits(s & from(p))
                                .any(|q| bits(s).all(|z| splits_at(t, s, p, q, z)))
                        });
                        if !ok {
                            return Some(Witness::elements([u, v]));
                        }
                    }
                    OVariant::OPrime => {
                        for z in bits(s) {
                            let ok = bits(s).any(|p| {
                                bits(s & from(p)).any(|q| splits_at(t, s, p, q, z))
                            });
                            if !ok {
                                return Some(Witness::elements([u, v, z]));
                            }
                        }
                    }
                }
            }
        }
        None
    })();
    let tag = match variant {
        OVariant::O => "o",
        OVariant::OPrime => "o'",
    };
    Verdict::from_search(tag, found)
}

/// Dispatches to the checker for `axiom`.
pub fn check(r: &TransitFunction, axiom: TransitAxiom) -> Verdict {
    check_with(&Transit::new(r), axiom)
}

fn check_with(t: &Transit, axiom: TransitAxiom) -> Verdict {
    match axiom {
        TransitAxiom::M => monotone(t),
        TransitAxiom::APrime => check_attainment(t.r),
        TransitAxiom::K => intersection_closure(t),
        TransitAxiom::W => w(t),
        TransitAxiom::W1 => w(t).retag("w1"),
        TransitAxiom::W2 => w2(t, false),
        TransitAxiom::W3 => w3(t),
        TransitAxiom::X => x_family(t, XVariant::X),
        TransitAxiom::XPrime => x_family(t, XVariant::XPrime),
        TransitAxiom::U => u_axiom(t),
        TransitAxiom::Uc => uc(t),
        TransitAxiom::Mm => mm(t),
        TransitAxiom::K3 => k3(t),
        TransitAxiom::Wp => wp(t),
        TransitAxiom::O => o_family(t, OVariant::O),
        TransitAxiom::OPrime => o_family(t, OVariant::OPrime),
    }
}

/// Every axiom, evaluated once against a shared precomputation.
pub fn classify_all(r: &TransitFunction) -> BTreeMap<TransitAxiom, Verdict> {
    let t = Transit::new(r);
    TransitAxiom::ALL
        .iter()
        .map(|&a| (a, check_with(&t, a)))
        .collect()
}

/// Re-evaluates the defining condition of `axiom` at the tuple recorded in
/// `witness`, straight from the definitions. True if the tuple violates it.
pub fn witness_violates(r: &TransitFunction, axiom: TransitAxiom, witness: &Witness) -> bool {
    let n = r.n();
    let e = &witness.elements;
    if e.iter().any(|&i| i >= n) {
        return false;
    }
    let set = |u: usize, v: usize| r.bits(u, v);
    let has = |s: u64, x: usize| s >> x & 1 == 1;
    let all_pairs = || (0..n).flat_map(move |p| (0..n).map(move |q| (p, q)));
    match (axiom, e.as_slice()) {
        (TransitAxiom::M, &[u, v, p, q, x]) => {
            let s = set(u, v);
            has(s, p) && has(s, q) && has(set(p, q), x) && !has(s, x)
        }
        (TransitAxiom::APrime, &[_, _]) => all_pairs().all(|(p, q)| set(p, q) != r.full_bits()),
        (TransitAxiom::K, &[u, v, x, y]) => {
            let meet = set(u, v) & set(x, y);
            meet != 0
                && !all_pairs()
                    .any(|(p, q)| has(meet, p) && has(meet, q) && set(p, q) == meet)
        }
        (TransitAxiom::W | TransitAxiom::W1, &[x, y, z]) => {
            !has(set(x, y), z) && !has(set(x, z), y) && !has(set(y, z), x)
        }
        (TransitAxiom::W2, &[p, q, u, v, s, t]) => {
            let (a, b, c) = (set(p, q), set(u, v), set(s, t));
            let abc = a & b & c;
            abc != a & b && abc != a & c && abc != b & c
        }
        (TransitAxiom::W3, &[u, v, p, q, x, y, z]) => {
            let (a, b) = (set(u, v), set(p, q));
            has(a & !b, x) && has(a & b, y) && has(b & !a, z) && !has(set(x, z), y)
        }
        (TransitAxiom::X, &[x, y, z, m]) => {
            has(set(x, y), m) && !has(set(x, z) | set(z, y), m)
        }
        (TransitAxiom::XPrime, &[x, y, z, m]) => {
            !has(set(x, y), z) && has(set(x, y), m) && !has(set(x, z) | set(z, y), m)
        }
        (TransitAxiom::U, &[u, v, z]) => {
            has(set(u, v), z) && set(u, z) | set(z, v) != set(u, v)
        }
        (TransitAxiom::Uc, &[x, y, u, v]) => {
            let union = set(x, y) | set(u, v);
            set(x, y) & set(u, v) != 0
                && !all_pairs()
                    .any(|(p, q)| has(union, p) && has(union, q) && set(p, q) == union)
        }
        (TransitAxiom::Mm, &[x, y, u, v]) => {
            let union = set(x, y) | set(u, v);
            set(x, y) & set(u, v) != 0
                && !all_pairs().any(|(p, q)| {
                    has(union, p) && has(union, q) && union & !set(p, q) == 0
                })
        }
        (TransitAxiom::K3, &[x, y, u, v]) => {
            let union = set(x, y) | set(u, v);
            let covers = |p: usize, q: usize| union & !set(p, q) == 0;
            set(x, y) & set(u, v) != 0
                && !all_pairs().any(|(p, q)| {
                    covers(p, q)
                        && all_pairs()
                            .filter(|&(p2, q2)| covers(p2, q2))
                            .all(|(p2, q2)| has(set(p2, q2), p) && has(set(p2, q2), q))
                })
        }
        (TransitAxiom::Wp, &[u, v, x, y, p, q]) => {
            !wp_triple_ok(set(u, v), set(x, y), set(p, q))
        }
        (TransitAxiom::O, &[u, v]) => {
            let s = set(u, v);
            !all_pairs().any(|(p, q)| {
                has(s, p)
                    && has(s, q)
                    && (0..n).filter(|&z| has(s, z)).all(|z| set(p, z) | set(z, q) == s)
            })
        }
        (TransitAxiom::OPrime, &[u, v, z]) => {
            let s = set(u, v);
            has(s, z)
                && !all_pairs()
                    .any(|(p, q)| has(s, p) && has(s, q) && set(p, z) | set(z, q) == s)
        }
        _ => false,
    }
}
