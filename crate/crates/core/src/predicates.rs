//! Set-system axioms, weak-hierarchy tests, and union closure.

use std::fmt;
use std::str::FromStr;

use crate::axioms::wp_triple_ok;
use crate::cluster::{Bits, Cluster};
use crate::error::Error;
use crate::system::{unique_minimal_cover, SetSystem};
use crate::verdict::{Verdict, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemPredicate {
    /// every singleton is a cluster
    Ks,
    /// every cluster is the unique minimal cover of one of its pairs
    Kr,
    /// the clusters containing any pair intersect to a cluster
    Kc,
    /// the ground set is a cluster
    K1,
    /// closed under non-empty intersection
    K2,
    /// intersecting clusters have a unique minimal common cover
    K3,
    Mm,
    /// closed under union of intersecting clusters
    Uc,
    /// hierarchy: intersecting clusters are nested
    H,
    /// each cluster properly overlaps at most one other
    PairedH,
    WeakHierarchy,
    WPrime,
    Wp,
    TSystem,
    BinaryClustering,
    ClusteringSystem,
}

impl SystemPredicate {
    pub const ALL: [SystemPredicate; 16] = [
        SystemPredicate::Ks,
        SystemPredicate::Kr,
        SystemPredicate::Kc,
        SystemPredicate::K1,
        SystemPredicate::K2,
        SystemPredicate::K3,
        SystemPredicate::Mm,
        SystemPredicate::Uc,
        SystemPredicate::H,
        SystemPredicate::PairedH,
        SystemPredicate::WeakHierarchy,
        SystemPredicate::WPrime,
        SystemPredicate::Wp,
        SystemPredicate::TSystem,
        SystemPredicate::BinaryClustering,
        SystemPredicate::ClusteringSystem,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SystemPredicate::Ks => "KS",
            SystemPredicate::Kr => "KR",
            SystemPredicate::Kc => "KC",
            SystemPredicate::K1 => "K1",
            SystemPredicate::K2 => "K2",
            SystemPredicate::K3 => "K3",
            SystemPredicate::Mm => "MM",
            SystemPredicate::Uc => "UC",
            SystemPredicate::H => "H",
            SystemPredicate::PairedH => "pairedH",
            SystemPredicate::WeakHierarchy => "weakHierarchy",
            SystemPredicate::WPrime => "W'",
            SystemPredicate::Wp => "WP",
            SystemPredicate::TSystem => "Tsystem",
            SystemPredicate::BinaryClustering => "binaryClustering",
            SystemPredicate::ClusteringSystem => "clusteringSystem",
        }
    }
}

impl fmt::Display for SystemPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SystemPredicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "W-prime" | "WPrime" | "W_prime" => return Ok(SystemPredicate::WPrime),
            "T-system" | "TSystem" => return Ok(SystemPredicate::TSystem),
            "weak-hierarchy" => return Ok(SystemPredicate::WeakHierarchy),
            "paired-hierarchy" => return Ok(SystemPredicate::PairedH),
            "binary-clustering" => return Ok(SystemPredicate::BinaryClustering),
            "clustering-system" => return Ok(SystemPredicate::ClusteringSystem),
            _ => {}
        }
        SystemPredicate::ALL
            .iter()
            .copied()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::UnknownTag(s.to_string()))
    }
}

fn first<T>(mut it: impl Iterator<Item = Option<T>>) -> Option<T> {
    it.find_map(|x| x)
}

fn ks(s: &SetSystem) -> Option<Witness> {
    (0..s.n())
        .find(|&x| !s.contains(Cluster::singleton(x)))
        .map(|x| Witness::elements([x]))
}

/// True if every cluster containing `pair` contains `c`.
fn pins(s: &SetSystem, c: Cluster, pair: u64) -> bool {
    s.covers(pair).all(|d| c.is_subset(d))
}

fn kr(s: &SetSystem) -> Option<Witness> {
    s.clusters().iter().copied().find_map(|c| {
        let pinned = c.iter().any(|p| {
            Bits::new(c.bits() & (u64::MAX << p)).any(|q| pins(s, c, (1 << p) | (1 << q)))
        });
        (!pinned).then(|| Witness::clusters([c]))
    })
}

/// An empty family of covers counts as a failure: the intersection is only
/// meaningful where some cluster contains the pair.
fn kc(s: &SetSystem) -> Option<Witness> {
    let n = s.n();
    first((0..n).flat_map(|p| (p..n).map(move |q| (p, q))).map(|(p, q)| {
        let meet = s
            .covers((1 << p) | (1 << q))
            .fold(None, |acc: Option<u64>, c| Some(acc.unwrap_or(u64::MAX) & c.bits()));
        match meet {
            Some(m) if s.contains_bits(m) => None,
            _ => Some(Witness::elements([p, q])),
        }
    }))
}

fn k1(s: &SetSystem) -> Option<Witness> {
    (!s.contains(s.full())).then(Witness::default)
}

/// Unordered pairs `i < j` of clusters (or `i <= j` with `diagonal`).
fn cluster_pairs(s: &SetSystem, diagonal: bool) -> impl Iterator<Item = (Cluster, Cluster)> + '_ {
    let cs = s.clusters();
    (0..cs.len()).flat_map(move |i| {
        let start = if diagonal { i } else { i + 1 };
        (start..cs.len()).map(move |j| (cs[i], cs[j]))
    })
}

fn k2(s: &SetSystem) -> Option<Witness> {
    cluster_pairs(s, false).find_map(|(a, b)| match a.intersection(b) {
        Some(m) if !s.contains(m) => Some(Witness::clusters([a, b])),
        _ => None,
    })
}

fn k3(s: &SetSystem) -> Option<Witness> {
    cluster_pairs(s, false).find_map(|(a, b)| {
        (a.intersects(b) && unique_minimal_cover(s.clusters(), a.bits() | b.bits()).is_none())
            .then(|| Witness::clusters([a, b]))
    })
}

/// `C_pq` is read as the unique inclusion-minimal cluster containing `p`
/// and `q`; pairs without one cannot serve.
fn mm(s: &SetSystem) -> Option<Witness> {
    cluster_pairs(s, true).find_map(|(a, b)| {
        if !a.intersects(b) {
            return None;
        }
        let union = a.union(b);
        let ok = union.iter().any(|p| {
            Bits::new(union.bits() & (u64::MAX << p)).any(|q| {
                unique_minimal_cover(s.clusters(), (1 << p) | (1 << q))
                    .is_some_and(|c| union.is_subset(c))
            })
        });
        (!ok).then(|| Witness::clusters([a, b]))
    })
}

fn uc(s: &SetSystem) -> Option<Witness> {
    cluster_pairs(s, false).find_map(|(a, b)| {
        (a.intersects(b) && !s.contains(a.union(b))).then(|| Witness::clusters([a, b]))
    })
}

fn h(s: &SetSystem) -> Option<Witness> {
    cluster_pairs(s, false)
        .find_map(|(a, b)| a.properly_overlaps(b).then(|| Witness::clusters([a, b])))
}

fn paired_h(s: &SetSystem) -> Option<Witness> {
    s.clusters().iter().copied().find_map(|c| {
        let mut overlaps = s.clusters().iter().copied().filter(|&d| c.properly_overlaps(d));
        match (overlaps.next(), overlaps.next()) {
            (Some(d1), Some(d2)) => Some(Witness::clusters([c, d1, d2])),
            _ => None,
        }
    })
}

fn triples(s: &SetSystem) -> impl Iterator<Item = [Cluster; 3]> + '_ {
    let cs = s.clusters();
    let m = cs.len();
    (0..m).flat_map(move |i| {
        (i + 1..m).flat_map(move |j| (j + 1..m).map(move |k| [cs[i], cs[j], cs[k]]))
    })
}

pub(crate) fn weak_hierarchy_triple_ok(a: u64, b: u64, c: u64) -> bool {
    let abc = a & b & c;
    abc == a & b || abc == a & c || abc == b & c
}

fn weak_hierarchy(s: &SetSystem) -> Option<Witness> {
    triples(s).find_map(|[a, b, c]| {
        (!weak_hierarchy_triple_ok(a.bits(), b.bits(), c.bits()))
            .then(|| Witness::clusters([a, b, c]))
    })
}

/// (W') for the ordered triple `(a, b, c)`.
pub(crate) fn w_prime_ordered_ok(a: u64, b: u64, c: u64) -> bool {
    let premise = a & b & !c != 0 && a & c & !b != 0;
    !premise || b & c & !a == 0
}

fn w_prime(s: &SetSystem) -> Option<Witness> {
    let cs = s.clusters();
    let m = cs.len();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                if i == j || j == k || i == k {
                    continue;
                }
                if !w_prime_ordered_ok(cs[i].bits(), cs[j].bits(), cs[k].bits()) {
                    return Some(Witness::clusters([cs[i], cs[j], cs[k]]));
                }
            }
        }
    }
    None
}

fn wp(s: &SetSystem) -> Option<Witness> {
    triples(s).find_map(|[a, b, c]| {
        (!wp_triple_ok(a.bits(), b.bits(), c.bits())).then(|| Witness::clusters([a, b, c]))
    })
}

fn t_system(s: &SetSystem) -> Option<Witness> {
    ks(s)
        .map(|w| w.via("KS"))
        .or_else(|| kr(s).map(|w| w.via("KR")))
        .or_else(|| kc(s).map(|w| w.via("KC")))
}

fn binary_clustering(s: &SetSystem) -> Option<Witness> {
    t_system(s).or_else(|| k1(s).map(|w| w.via("K1")))
}

fn clustering_system(s: &SetSystem) -> Option<Witness> {
    k1(s)
        .map(|w| w.via("K1"))
        .or_else(|| ks(s).map(|w| w.via("KS")))
}

/// Evaluates one predicate. Clusters are non-empty by construction, so
/// `clusteringSystem` only checks for the ground set and the singletons.
pub fn check_system(system: &SetSystem, predicate: SystemPredicate) -> Verdict {
    let found = match predicate {
        SystemPredicate::Ks => ks(system),
        SystemPredicate::Kr => kr(system),
        SystemPredicate::Kc => kc(system),
        SystemPredicate::K1 => k1(system),
        SystemPredicate::K2 => k2(system),
        SystemPredicate::K3 => k3(system),
        SystemPredicate::Mm => mm(system),
        SystemPredicate::Uc => uc(system),
        SystemPredicate::H => h(system),
        SystemPredicate::PairedH => paired_h(system),
        SystemPredicate::WeakHierarchy => weak_hierarchy(system),
        SystemPredicate::WPrime => w_prime(system),
        SystemPredicate::Wp => wp(system),
        SystemPredicate::TSystem => t_system(system),
        SystemPredicate::BinaryClustering => binary_clustering(system),
        SystemPredicate::ClusteringSystem => clustering_system(system),
    };
    Verdict::from_search(predicate.as_str(), found)
}

pub fn check_weak_hierarchy(system: &SetSystem) -> Verdict {
    check_system(system, SystemPredicate::WeakHierarchy)
}

#[allow(non_snake_case)]
pub fn check_W_prime(system: &SetSystem) -> Verdict {
    check_system(system, SystemPredicate::WPrime)
}

pub fn is_t_system(system: &SetSystem) -> bool {
    t_system(system).is_none()
}

/// Re-evaluates a failing predicate at its witness. True if the recorded
/// clusters/elements violate the predicate's defining condition.
pub fn system_witness_violates(
    system: &SetSystem,
    predicate: SystemPredicate,
    witness: &Witness,
) -> bool {
    let cs = &witness.clusters;
    if cs.iter().any(|&c| !system.contains(c)) {
        return false;
    }
    let n = system.n();
    if witness.elements.iter().any(|&e| e >= n) {
        return false;
    }
    let composite = |p: SystemPredicate| system_witness_violates(system, p, &Witness { via: None, ..witness.clone() });
    match (predicate, cs.as_slice(), witness.elements.as_slice()) {
        (SystemPredicate::Ks, [], &[x]) => !system.contains(Cluster::singleton(x)),
        (SystemPredicate::Kr, &[c], []) => !c.iter().any(|p| {
            c.iter().any(|q| pins(system, c, (1 << p) | (1 << q)))
        }),
        (SystemPredicate::Kc, [], &[p, q]) => {
            let covers: Vec<Cluster> = system.covers((1 << p) | (1 << q)).collect();
            covers.is_empty()
                || !system.contains_bits(covers.iter().fold(u64::MAX, |m, c| m & c.bits()))
        }
        (SystemPredicate::K1, [], []) => !system.contains(system.full()),
        (SystemPredicate::K2, &[a, b], []) => {
            a.intersection(b).is_some_and(|m| !system.contains(m))
        }
        (SystemPredicate::K3, &[a, b], []) => {
            let union = a.union(b);
            let covers: Vec<Cluster> = system.covers(union.bits()).collect();
            let minimal = covers
                .iter()
                .filter(|&&c| !covers.iter().any(|&d| d != c && d.is_subset(c)))
                .count();
            a.intersects(b) && minimal != 1
        }
        (SystemPredicate::Mm, &[a, b], []) => {
            let union = a.union(b);
            a.intersects(b)
                && !union.iter().any(|p| {
                    union.iter().any(|q| {
                        crate::system::minimal_cluster_containing(system, p, q)
                            .is_ok_and(|c| union.is_subset(c))
                    })
                })
        }
        (SystemPredicate::Uc, &[a, b], []) => a.intersects(b) && !system.contains(a.union(b)),
        (SystemPredicate::H, &[a, b], []) => a.properly_overlaps(b),
        (SystemPredicate::PairedH, &[c, d1, d2], []) => {
            d1 != d2 && c.properly_overlaps(d1) && c.properly_overlaps(d2)
        }
        (SystemPredicate::WeakHierarchy, &[a, b, c], []) => {
            !weak_hierarchy_triple_ok(a.bits(), b.bits(), c.bits())
        }
        (SystemPredicate::WPrime, &[a, b, c], []) => !w_prime_ordered_ok(a.bits(), b.bits(), c.bits()),
        (SystemPredicate::Wp, &[a, b, c], []) => !wp_triple_ok(a.bits(), b.bits(), c.bits()),
        (SystemPredicate::TSystem | SystemPredicate::BinaryClustering | SystemPredicate::ClusteringSystem, _, _) => {
            match witness.via.and_then(|v| v.parse::<SystemPredicate>().ok()) {
                Some(component) => composite(component),
                None => false,
            }
        }
        _ => false,
    }
}

/// One round of closure: the system plus the singletons plus every union of
/// two intersecting members.
pub(crate) fn union_step(system: &SetSystem) -> SetSystem {
    let base = system.with_singletons();
    let unions: Vec<Cluster> = cluster_pairs(&base, false)
        .filter(|(a, b)| a.intersects(*b))
        .map(|(a, b)| a.union(b))
        .collect();
    base.with(unions).expect("unions stay in the ground set")
}

/// Smallest system containing the input and all singletons that is closed
/// under unions of intersecting members.
pub fn union_closure(system: &SetSystem) -> SetSystem {
    let mut current = system.with_singletons();
    loop {
        let next = union_step(&current);
        if next.len() == current.len() {
            return next;
        }
        current = next;
    }
}

/// Decides whether the union closure of `{a, b, c}` is pre-pyramidal: (W')
/// under every ordering of the three sets, and (WP).
pub fn nebesky_triple_test(a: Cluster, b: Cluster, c: Cluster) -> Verdict {
    let (x, y, z) = (a.bits(), b.bits(), c.bits());
    let orders = [(x, y, z), (y, x, z), (z, x, y)];
    let labelled = [[a, b, c], [b, a, c], [c, a, b]];
    // (W') is symmetric in its last two arguments, so three orderings suffice.
    for (i, &(p, q, r)) in orders.iter().enumerate() {
        if !w_prime_ordered_ok(p, q, r) {
            return Verdict::fails("nebesky", Witness::clusters(labelled[i]).via("W'"));
        }
    }
    if !wp_triple_ok(x, y, z) {
        return Verdict::fails("nebesky", Witness::clusters([a, b, c]).via("WP"));
    }
    Verdict::holds("nebesky")
}
