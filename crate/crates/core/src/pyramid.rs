//! Interval-hypergraph recognition: is there a total order on the ground set
//! under which every cluster is an interval?

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::cluster::{full_mask, Bits, Cluster};
use crate::error::{Error, Result};
use crate::predicates::{check_system, SystemPredicate};
use crate::system::SetSystem;
use crate::verdict::{CompatibleOrder, Verdict, Witness};

/// Largest ground set accepted by [`brute_force_order`].
pub const BRUTE_FORCE_MAX: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSearchResult {
    pub pre_pyramidal: bool,
    pub order: Option<CompatibleOrder>,
    /// The shortest prefix of the non-trivial clusters (canonical order) that
    /// already admits no order.
    pub obstruction: Option<Vec<Cluster>>,
}

trait Memo {
    fn failed(&self, placed: u64) -> bool;
    fn mark(&mut self, placed: u64);
}

impl Memo for u64 {
    #[inline]
    fn failed(&self, placed: u64) -> bool {
        *self >> placed & 1 == 1
    }
    #[inline]
    fn mark(&mut self, placed: u64) {
        *self |= 1 << placed;
    }
}

struct BitMemo(Vec<u64>);

impl Memo for BitMemo {
    fn failed(&self, placed: u64) -> bool {
        self.0[(placed >> 6) as usize] >> (placed & 63) & 1 == 1
    }
    fn mark(&mut self, placed: u64) {
        self.0[(placed >> 6) as usize] |= 1 << (placed & 63);
    }
}

impl Memo for HashSet<u64> {
    fn failed(&self, placed: u64) -> bool {
        self.contains(&placed)
    }
    fn mark(&mut self, placed: u64) {
        self.insert(placed);
    }
}

struct Search<'a, M> {
    full: u64,
    masks: &'a [u64],
    memo: M,
    seq: [u8; 64],
}

impl<M: Memo> Search<'_, M> {
    /// Extends the placement `placed` (of `depth` elements) left to right. A
    /// cluster that has started but not finished must receive the next
    /// element, so the candidates are the intersection of the open clusters.
    fn extend(&mut self, placed: u64, depth: usize) -> bool {
        if placed == self.full {
            return true;
        }
        if self.memo.failed(placed) {
            return false;
        }
        let mut allowed = self.full & !placed;
        for &m in self.masks {
            if m & placed != 0 && m & !placed != 0 {
                allowed &= m;
            }
        }
        for e in Bits::new(allowed) {
            self.seq[depth] = e as u8;
            if self.extend(placed | 1 << e, depth + 1) {
                return true;
            }
        }
        self.memo.mark(placed);
        false
    }
}

fn run<M: Memo>(n: usize, masks: &[u64], memo: M) -> Option<Vec<usize>> {
    let mut s = Search {
        full: full_mask(n),
        masks,
        memo,
        seq: [0; 64],
    };
    s.extend(0, 0)
        .then(|| s.seq[..n].iter().map(|&e| e as usize).collect())
}

/// Lexicographically least sequence of `0..n` under which every mask is an
/// interval. Depth-first search in index order finds it first, and it is
/// never larger than its own reverse.
pub fn least_order(n: usize, masks: &[u64]) -> Option<Vec<usize>> {
    match n {
        0..=6 => run(n, masks, 0u64),
        7..=20 => run(n, masks, BitMemo(vec![0; (1usize << n).div_ceil(64)])),
        _ => run(n, masks, HashSet::new()),
    }
}

/// Decision only.
pub(crate) fn is_pre_pyramidal_masks(n: usize, masks: &[u64]) -> bool {
    least_order(n, masks).is_some()
}

fn nontrivial(system: &SetSystem) -> Vec<Cluster> {
    let full = system.full();
    system
        .clusters()
        .iter()
        .copied()
        .filter(|&c| c.len() >= 2 && c != full)
        .collect()
}

/// Shortest failing prefix, by binary search; adding clusters only removes
/// orders, so failure is monotone in the prefix length.
fn obstruction(clusters: &[Cluster], fails: impl Fn(&[Cluster]) -> bool) -> Vec<Cluster> {
    let (mut lo, mut hi) = (0, clusters.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if fails(&clusters[..mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    clusters[..lo].to_vec()
}

fn bits_of(clusters: &[Cluster]) -> Vec<u64> {
    clusters.iter().map(|c| c.bits()).collect()
}

/// Backtracking search for a compatible order. The returned order is the
/// lexicographically smaller of a valid order and its reverse.
pub fn find_compatible_order(system: &SetSystem) -> OrderSearchResult {
    let n = system.n();
    let clusters = nontrivial(system);
    match least_order(n, &bits_of(&clusters)) {
        Some(seq) => OrderSearchResult {
            pre_pyramidal: true,
            order: CompatibleOrder::new(seq),
            obstruction: None,
        },
        None => OrderSearchResult {
            pre_pyramidal: false,
            order: None,
            obstruction: Some(obstruction(&clusters, |p| {
                least_order(n, &bits_of(p)).is_none()
            })),
        },
    }
}

pub fn is_pre_pyramidal(system: &SetSystem) -> bool {
    is_pre_pyramidal_masks(system.n(), &bits_of(system.clusters()))
}

/// Rearranges `seq` into the next permutation in lexicographic order.
fn next_permutation(seq: &mut [usize]) -> bool {
    let Some(i) = (1..seq.len()).rev().find(|&i| seq[i - 1] < seq[i]) else {
        return false;
    };
    let j = (i..seq.len()).rev().find(|&j| seq[j] > seq[i - 1]).unwrap();
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

/// Precomputed interval families for every permutation of a ground set of
/// at most 7 elements. Subsets are indexed by their bit pattern, so a set
/// system is a 128-bit mask over subsets.
pub struct IntervalTable {
    n: usize,
    perms: Vec<Vec<usize>>,
    intervals: Vec<u128>,
}

impl IntervalTable {
    pub const MAX: usize = 7;

    fn build(n: usize) -> Self {
        let mut perms = Vec::new();
        let mut intervals = Vec::new();
        let mut seq: Vec<usize> = (0..n).collect();
        loop {
            let mut mask = 0u128;
            for i in 0..n {
                let mut set = 0u64;
                for &e in &seq[i..] {
                    set |= 1 << e;
                    mask |= 1 << set;
                }
            }
            perms.push(seq.clone());
            intervals.push(mask);
            if !next_permutation(&mut seq) {
                break;
            }
        }
        IntervalTable { n, perms, intervals }
    }

    /// Shared table for `n` elements (`1..=7`).
    pub fn get(n: usize) -> &'static IntervalTable {
        static TABLES: [OnceLock<IntervalTable>; IntervalTable::MAX + 1] =
            [const { OnceLock::new() }; IntervalTable::MAX + 1];
        assert!((1..=Self::MAX).contains(&n), "interval table needs 1..=7 elements");
        TABLES[n].get_or_init(|| IntervalTable::build(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Converts clusters to the subset-indexed mask.
    pub fn family(clusters: impl IntoIterator<Item = u64>) -> u128 {
        clusters.into_iter().fold(0, |m, c| m | 1 << c)
    }

    /// The lexicographically first permutation under which every member of
    /// `family` is an interval.
    pub fn first_order(&self, family: u128) -> Option<&[usize]> {
        self.intervals
            .iter()
            .position(|&i| family & !i == 0)
            .map(|k| self.perms[k].as_slice())
    }
}

fn brute_force_seq(n: usize, masks: &[u64]) -> Option<Vec<usize>> {
    if n <= IntervalTable::MAX {
        return IntervalTable::get(n)
            .first_order(IntervalTable::family(masks.iter().copied()))
            .map(<[usize]>::to_vec);
    }
    let mut seq: Vec<usize> = (0..n).collect();
    let mut pos = vec![0usize; n];
    loop {
        for (i, &e) in seq.iter().enumerate() {
            pos[e] = i;
        }
        let ok = masks.iter().all(|&m| {
            let (lo, hi) = Bits::new(m).fold((usize::MAX, 0), |(lo, hi), e| (lo.min(pos[e]), hi.max(pos[e])));
            hi - lo + 1 == m.count_ones() as usize
        });
        if ok {
            return Some(seq);
        }
        if !next_permutation(&mut seq) {
            return None;
        }
    }
}

/// Exhaustive search over all `n!` orders; an independent oracle for
/// [`find_compatible_order`] with the same contract.
pub fn brute_force_order(system: &SetSystem) -> Result<OrderSearchResult> {
    let n = system.n();
    if n > BRUTE_FORCE_MAX {
        return Err(Error::TooLargeForBruteForce {
            n,
            max: BRUTE_FORCE_MAX,
        });
    }
    let clusters = nontrivial(system);
    Ok(match brute_force_seq(n, &bits_of(&clusters)) {
        Some(seq) => OrderSearchResult {
            pre_pyramidal: true,
            order: CompatibleOrder::new(seq),
            obstruction: None,
        },
        None => OrderSearchResult {
            pre_pyramidal: false,
            order: None,
            obstruction: Some(obstruction(&clusters, |p| {
                brute_force_seq(n, &bits_of(p)).is_none()
            })),
        },
    })
}

/// Pre-pyramidal and closed under non-empty intersection.
pub fn is_pyramidal(system: &SetSystem) -> Verdict {
    let search = find_compatible_order(system);
    if let Some(obs) = search.obstruction {
        return Verdict::fails("pyramidal", Witness::clusters(obs).via("prePyramidal"));
    }
    match check_system(system, SystemPredicate::K2).witness {
        Some(w) => Verdict::fails("pyramidal", w.via("K2")),
        None => Verdict::holds("pyramidal"),
    }
}

/// Weak hierarchy satisfying (WP).
pub fn is_weakly_pyramidal(system: &SetSystem) -> Verdict {
    let wh = check_system(system, SystemPredicate::WeakHierarchy);
    if let Some(w) = wh.witness {
        return Verdict::fails("weaklyPyramidal", w.via("weakHierarchy"));
    }
    match check_system(system, SystemPredicate::Wp).witness {
        Some(w) => Verdict::fails("weaklyPyramidal", w.via("WP")),
        None => Verdict::holds("weaklyPyramidal"),
    }
}

/// Membership of a T-system in each class between hierarchies and weak
/// hierarchies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ladder {
    pub binary_clustering: bool,
    pub hierarchy: bool,
    pub paired_hierarchy: bool,
    pub union_closed: bool,
    /// Union-closed binary clustering system.
    pub ucb: bool,
    pub pre_pyramidal: bool,
    pub pyramidal: bool,
    pub weakly_pyramidal: bool,
    pub weak_hierarchy: bool,
    pub order: Option<CompatibleOrder>,
}

impl Ladder {
    /// `(name, member)` rows from the narrowest class to the widest.
    pub fn rows(&self) -> [(&'static str, bool); 9] {
        [
            ("hierarchy", self.hierarchy),
            ("pairedHierarchy", self.paired_hierarchy),
            ("unionClosed", self.union_closed),
            ("ucb", self.ucb),
            ("prePyramidal", self.pre_pyramidal),
            ("pyramidal", self.pyramidal),
            ("weaklyPyramidal", self.weakly_pyramidal),
            ("weakHierarchy", self.weak_hierarchy),
            ("binaryClustering", self.binary_clustering),
        ]
    }

    pub fn get(&self, class: &str) -> Option<bool> {
        self.rows().iter().find(|(k, _)| *k == class).map(|&(_, v)| v)
    }
}

pub fn classify_ladder(system: &SetSystem) -> Result<Ladder> {
    if let Some(w) = check_system(system, SystemPredicate::TSystem).witness {
        return Err(Error::NotTSystem(w.render(system.ground())));
    }
    let holds = |p| check_system(system, p).holds;
    let binary_clustering = holds(SystemPredicate::K1);
    let union_closed = holds(SystemPredicate::Uc);
    let search = find_compatible_order(system);
    Ok(Ladder {
        binary_clustering,
        hierarchy: holds(SystemPredicate::H),
        paired_hierarchy: holds(SystemPredicate::PairedH),
        union_closed,
        ucb: union_closed && binary_clustering,
        pre_pyramidal: search.pre_pyramidal,
        pyramidal: search.pre_pyramidal && holds(SystemPredicate::K2),
        weakly_pyramidal: is_weakly_pyramidal(system).holds,
        weak_hierarchy: holds(SystemPredicate::WeakHierarchy),
        order: search.order,
    })
}

/// Whether every cluster is an interval of `order`; independent of the
/// search.
pub fn certify(system: &SetSystem, order: &CompatibleOrder) -> bool {
    order.sequence().len() == system.n() && system.clusters().iter().all(|&c| order.is_interval(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::sync::Arc;

    fn sys(name: &str) -> SetSystem {
        fixtures::by_name(name).unwrap().system().unwrap()
    }

    fn labels(s: &SetSystem, order: &CompatibleOrder) -> Vec<String> {
        order.sequence().iter().map(|&e| s.ground().label(e).to_string()).collect()
    }

    #[test]
    fn path_system_order() {
        let s = sys("path-py-not-uc");
        let r = find_compatible_order(&s);
        let order = r.order.unwrap();
        assert_eq!(labels(&s, &order), ["1", "2", "3", "4"]);
        assert!(certify(&s, &order));
        assert!(is_pyramidal(&s).holds);
    }

    #[test]
    fn four_cycle_has_no_order() {
        let s = sys("four-cycle");
        let r = find_compatible_order(&s);
        assert!(!r.pre_pyramidal);
        let obs: Vec<String> = r.obstruction.unwrap().iter().map(|&c| s.format_cluster(c)).collect();
        assert_eq!(obs, ["{a, b}", "{a, d}", "{b, c}", "{c, d}"]);
        assert_eq!(brute_force_order(&s).unwrap(), find_compatible_order(&s));
        let v = is_pyramidal(&s);
        assert_eq!(v.witness.unwrap().via, Some("prePyramidal"));
        assert!(is_weakly_pyramidal(&s).holds);
    }

    #[test]
    fn six_element_pyramid_order() {
        let s = sys("pyramid-six");
        let order = find_compatible_order(&s).order.unwrap();
        assert_eq!(labels(&s, &order), ["x", "u", "z", "v", "y", "s"]);
        assert!(is_pyramidal(&s).holds);
    }

    #[test]
    fn trivial_systems() {
        let g = Arc::new(crate::GroundSet::lettered(4).unwrap());
        let s = SetSystem::new(g.clone(), (0..4).map(Cluster::singleton).chain([g.full()])).unwrap();
        let r = find_compatible_order(&s);
        assert_eq!(r.order.unwrap().sequence(), &[0, 1, 2, 3]);
        let empty = SetSystem::new(g, []).unwrap();
        assert!(brute_force_order(&empty).unwrap().pre_pyramidal);
    }

    #[test]
    fn brute_force_capacity() {
        let g = Arc::new(crate::GroundSet::lettered(11).unwrap());
        let s = SetSystem::new(g, []).unwrap();
        assert!(matches!(
            brute_force_order(&s),
            Err(Error::TooLargeForBruteForce { n: 11, max: 10 })
        ));
    }

    #[test]
    fn permutation_oracle_beyond_table() {
        // a path on 8 elements listed out of order
        let g = Arc::new(crate::GroundSet::lettered(8).unwrap());
        let edges = [(0, 5), (5, 2), (2, 7), (7, 1), (1, 3), (3, 6), (6, 4)];
        let s = SetSystem::new(g, edges.iter().map(|&(a, b)| Cluster::pair(a, b))).unwrap();
        let fast = find_compatible_order(&s);
        assert_eq!(fast, brute_force_order(&s).unwrap());
        assert_eq!(fast.order.unwrap().sequence(), &[0, 5, 2, 7, 1, 3, 6, 4]);
    }

    #[test]
    fn ladder_examples() {
        let c1 = classify_ladder(&sys("ucb-ladder")).unwrap();
        assert!(c1.ucb && !c1.paired_hierarchy && c1.pyramidal);
        let c2 = classify_ladder(&sys("paired-hierarchy")).unwrap();
        assert!(c2.paired_hierarchy && !c2.ucb);
        let small = classify_ladder(&sys("ucb-small")).unwrap();
        assert!(small.ucb && !small.hierarchy);
        assert_eq!(small.get("ucb"), Some(true));
        let g = Arc::new(crate::GroundSet::lettered(3).unwrap());
        let not_t = SetSystem::new(g, [Cluster::pair(0, 1)]).unwrap();
        assert!(matches!(classify_ladder(&not_t), Err(Error::NotTSystem(_))));
    }

    #[test]
    fn next_permutation_order() {
        let mut p = vec![0, 1, 2];
        let mut all = vec![p.clone()];
        while next_permutation(&mut p) {
            all.push(p.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], vec![0, 2, 1]);
        assert_eq!(all[5], vec![2, 1, 0]);
    }
}
