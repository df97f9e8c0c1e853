use std::sync::Arc;

use crate::cluster::Cluster;
use crate::error::{Error, Result};
use crate::ground::{format_bits, GroundSet};

/// A duplicate-free family of clusters over one ground set.
///
/// Clusters are kept in canonical order (by size, then lexicographically), so
/// two systems with the same members compare equal regardless of how they
/// were built.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SetSystem {
    ground: Arc<GroundSet>,
    clusters: Vec<Cluster>,
}

impl SetSystem {
    pub fn new<I>(ground: Arc<GroundSet>, clusters: I) -> Result<Self>
    where
        I: IntoIterator<Item = Cluster>,
    {
        let mut clusters: Vec<Cluster> = clusters.into_iter().collect();
        for &c in &clusters {
            if !ground.contains_cluster(c) {
                return Err(Error::ForeignCluster {
                    bits: c.bits(),
                    n: ground.len(),
                });
            }
        }
        clusters.sort();
        clusters.dedup();
        Ok(SetSystem { ground, clusters })
    }

    /// Builds a system from label lists, e.g. `[["a", "b"], ["b", "c"]]`.
    pub fn from_labels<L, S>(ground: Arc<GroundSet>, sets: L) -> Result<Self>
    where
        L: IntoIterator<Item = S>,
        S: AsRef<[&'static str]>,
    {
        let clusters = sets
            .into_iter()
            .map(|s| ground.cluster(s.as_ref().iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        SetSystem::new(ground, clusters)
    }

    /// Skips validation; callers guarantee members are in range.
    pub(crate) fn from_sorted_unchecked(ground: Arc<GroundSet>, clusters: Vec<Cluster>) -> Self {
        debug_assert!(clusters.windows(2).all(|w| w[0] < w[1]));
        SetSystem { ground, clusters }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn ground_arc(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn contains(&self, c: Cluster) -> bool {
        self.clusters.binary_search(&c).is_ok()
    }

    pub(crate) fn contains_bits(&self, bits: u64) -> bool {
        Cluster::from_bits(bits).is_ok_and(|c| self.contains(c))
    }

    pub fn full(&self) -> Cluster {
        self.ground.full()
    }

    /// The system together with every singleton.
    pub fn with_singletons(&self) -> SetSystem {
        let singles = (0..self.n()).map(Cluster::singleton);
        SetSystem::new(
            self.ground.clone(),
            self.clusters.iter().copied().chain(singles),
        )
        .expect("singletons lie in the ground set")
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Cluster>) -> Result<SetSystem> {
        SetSystem::new(
            self.ground.clone(),
            self.clusters.iter().copied().chain(extra),
        )
    }

    /// Clusters containing every element of `target`.
    pub fn covers(&self, target: u64) -> impl Iterator<Item = Cluster> + '_ {
        self.clusters
            .iter()
            .copied()
            .filter(move |c| target & !c.bits() == 0)
    }

    pub fn format_cluster(&self, c: Cluster) -> String {
        self.ground.format_cluster(c)
    }
}

/// The unique inclusion-minimal cluster containing `x` and `y`.
pub fn minimal_cluster_containing(system: &SetSystem, x: usize, y: usize) -> Result<Cluster> {
    let n = system.n();
    for e in [x, y] {
        if e >= n {
            return Err(Error::ElementOutOfRange { index: e, n });
        }
    }
    minimal_cluster_covering(system, (1u64 << x) | (1u64 << y))
}

/// The unique inclusion-minimal cluster containing every element of `target`.
pub fn minimal_cluster_covering(system: &SetSystem, target: u64) -> Result<Cluster> {
    let covers: Vec<Cluster> = system.covers(target).collect();
    let minimal: Vec<Cluster> = covers
        .iter()
        .copied()
        .filter(|&c| !covers.iter().any(|&d| d != c && d.is_subset(c)))
        .collect();
    match minimal.as_slice() {
        [] => Err(Error::NoCover {
            target: format_bits(system.ground(), target),
        }),
        [only] => Ok(*only),
        [first, second, ..] => Err(Error::NoUniqueMinimum {
            target: format_bits(system.ground(), target),
            first: system.format_cluster(*first),
            second: system.format_cluster(*second),
        }),
    }
}

/// Like [`minimal_cluster_covering`] but without error allocation; `None`
/// when there is no cover or the minimal cover is not unique.
pub(crate) fn unique_minimal_cover(clusters: &[Cluster], target: u64) -> Option<Cluster> {
    let mut best: Option<Cluster> = None;
    let mut meet = u64::MAX;
    let mut any = false;
    for &c in clusters {
        if target & !c.bits() == 0 {
            any = true;
            meet &= c.bits();
            if best.is_none_or(|b| c.len() < b.len()) {
                best = Some(c);
            }
        }
    }
    if !any {
        return None;
    }
    // A unique minimal cover exists iff the smallest cover is contained in
    // every other cover, i.e. equals the intersection of all covers.
    best.filter(|b| b.bits() == meet)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k1_not_k3_system() -> SetSystem {
        let g = Arc::new(GroundSet::new(["a", "b", "c", "d", "e"]).unwrap());
        SetSystem::from_labels(
            g,
            [
                &["a"][..],
                &["b"],
                &["c"],
                &["d"],
                &["e"],
                &["a", "b"],
                &["a", "c"],
                &["b", "c"],
                &["a", "b", "c", "d"],
                &["a", "b", "c", "e"],
                &["a", "b", "c", "d", "e"],
            ],
        )
        .unwrap()
    }

    #[test]
    fn dedup_and_canonical_order() {
        let g = Arc::new(GroundSet::lettered(3).unwrap());
        let s = SetSystem::from_labels(g, [&["b", "a"][..], &["c"], &["a", "b"]]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.clusters()[0].elements(), vec![2]);
    }

    #[test]
    fn foreign_cluster_rejected() {
        let g = Arc::new(GroundSet::lettered(2).unwrap());
        let err = SetSystem::new(g, [Cluster::singleton(5)]).unwrap_err();
        assert!(matches!(err, Error::ForeignCluster { n: 2, .. }));
    }

    #[test]
    fn minimal_cover_of_pair() {
        let s = k1_not_k3_system();
        let ab = minimal_cluster_containing(&s, 0, 1).unwrap();
        assert_eq!(s.format_cluster(ab), "{a, b}");
        let aa = minimal_cluster_containing(&s, 0, 0).unwrap();
        assert_eq!(s.format_cluster(aa), "{a}");
    }

    #[test]
    fn two_incomparable_minimal_covers() {
        let s = k1_not_k3_system();
        let abc = s.ground().cluster(["a", "b", "c"]).unwrap();
        match minimal_cluster_covering(&s, abc.bits()) {
            Err(Error::NoUniqueMinimum { first, second, .. }) => {
                assert_eq!(first, "{a, b, c, d}");
                assert_eq!(second, "{a, b, c, e}");
            }
            other => panic!("expected non-uniqueness, got {other:?}"),
        }
        assert_eq!(unique_minimal_cover(s.clusters(), abc.bits()), None);
    }

    #[test]
    fn no_cover() {
        let g = Arc::new(GroundSet::lettered(3).unwrap());
        let s = SetSystem::from_labels(g, [&["a"][..], &["b"], &["c"]]).unwrap();
        assert!(matches!(
            minimal_cluster_containing(&s, 0, 1),
            Err(Error::NoCover { .. })
        ));
        assert!(matches!(
            minimal_cluster_containing(&s, 0, 7),
            Err(Error::ElementOutOfRange { index: 7, n: 3 })
        ));
    }
}
