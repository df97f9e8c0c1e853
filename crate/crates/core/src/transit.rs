//! Transit functions and the correspondence between monotone transit
//! functions and T-systems.

use std::sync::Arc;

use crate::cluster::{full_mask, Cluster};
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::system::SetSystem;

/// A symmetric map `R: X × X → 2^X` with `u, v ∈ R(u, v)` and `R(u, u) = {u}`.
///
/// Stored as a dense symmetric `n × n` table; the diagonal holds the implicit
/// singletons.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TransitFunction {
    ground: Arc<GroundSet>,
    table: Vec<u64>,
}

impl TransitFunction {
    /// Validating constructor. `assignments` must give every unordered pair
    /// `u != v` exactly once, in either orientation.
    pub fn new<I>(ground: Arc<GroundSet>, assignments: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), Cluster)>,
    {
        let n = ground.len();
        let mut table = vec![0u64; n * n];
        for u in 0..n {
            table[u * n + u] = 1 << u;
        }
        let label = |i: usize| ground.label(i).to_string();
        for ((u, v), c) in assignments {
            for e in [u, v] {
                if e >= n {
                    return Err(Error::ElementOutOfRange { index: e, n });
                }
            }
            if !ground.contains_cluster(c) {
                return Err(Error::ForeignCluster { bits: c.bits(), n });
            }
            if u == v {
                if c.bits() != 1 << u {
                    return Err(Error::T1Violated {
                        u: label(u),
                        v: label(v),
                        missing: label(u),
                    });
                }
                continue;
            }
            if table[u * n + v] != 0 {
                return Err(Error::DuplicatePair { u: label(u), v: label(v) });
            }
            for e in [u, v] {
                if !c.contains(e) {
                    return Err(Error::T1Violated {
                        u: label(u),
                        v: label(v),
                        missing: label(e),
                    });
                }
            }
            table[u * n + v] = c.bits();
            table[v * n + u] = c.bits();
        }
        for u in 0..n {
            for v in u + 1..n {
                if table[u * n + v] == 0 {
                    return Err(Error::MissingPair { u: label(u), v: label(v) });
                }
            }
        }
        Ok(TransitFunction { ground, table })
    }

    /// Builds from a closure over pairs `u < v`; callers guarantee (t1).
    pub(crate) fn from_pairs_unchecked(
        ground: Arc<GroundSet>,
        mut set: impl FnMut(usize, usize) -> u64,
    ) -> Self {
        let n = ground.len();
        let mut table = vec![0u64; n * n];
        for u in 0..n {
            table[u * n + u] = 1 << u;
            for v in u + 1..n {
                let s = set(u, v);
                debug_assert!(s >> u & 1 == 1 && s >> v & 1 == 1);
                table[u * n + v] = s;
                table[v * n + u] = s;
            }
        }
        TransitFunction { ground, table }
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

    /// `R(u, v)`.
    pub fn get(&self, u: usize, v: usize) -> Cluster {
        Cluster::from_bits(self.bits(u, v)).expect("transit sets are non-empty")
    }

    #[inline]
    pub(crate) fn bits(&self, u: usize, v: usize) -> u64 {
        self.table[u * self.n() + v]
    }

    #[inline]
    pub(crate) fn between(&self, z: usize, u: usize, v: usize) -> bool {
        self.bits(u, v) >> z & 1 == 1
    }

    pub fn full_bits(&self) -> u64 {
        full_mask(self.n())
    }

    /// All pairs `u < v` with their transit sets, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Cluster)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v, self.get(u, v))))
    }
}

/// Validating constructor for a transit function from pair assignments.
pub fn make_transit_function<I>(ground: Arc<GroundSet>, assignments: I) -> Result<TransitFunction>
where
    I: IntoIterator<Item = ((usize, usize), Cluster)>,
{
    TransitFunction::new(ground, assignments)
}

/// `R(x, y)` = intersection of all clusters containing both `x` and `y`.
///
/// Fails on the first pair (in lexicographic order) that no cluster covers.
pub fn canonical_transit_function(system: &SetSystem) -> Result<TransitFunction> {
    let n = system.n();
    let mut table = vec![0u64; n * n];
    for u in 0..n {
        table[u * n + u] = 1 << u;
        for v in u + 1..n {
            let target = (1u64 << u) | (1u64 << v);
            let meet = system
                .covers(target)
                .fold(None, |acc: Option<u64>, c| Some(acc.unwrap_or(u64::MAX) & c.bits()));
            match meet {
                Some(m) => {
                    table[u * n + v] = m;
                    table[v * n + u] = m;
                }
                None => {
                    return Err(Error::UncoveredPair {
                        u: system.ground().label(u).to_string(),
                        v: system.ground().label(v).to_string(),
                    })
                }
            }
        }
    }
    Ok(TransitFunction {
        ground: system.ground_arc().clone(),
        table,
    })
}

/// The family of all transit sets `R(x, y)`, singletons included.
pub fn transit_sets(r: &TransitFunction) -> SetSystem {
    let n = r.n();
    let mut clusters: Vec<Cluster> = (0..n).map(Cluster::singleton).collect();
    clusters.extend(r.pairs().map(|(_, _, c)| c));
    clusters.sort();
    clusters.dedup();
    SetSystem::from_sorted_unchecked(r.ground_arc().clone(), clusters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ground(labels: &[&str]) -> Arc<GroundSet> {
        Arc::new(GroundSet::new(labels.iter().copied()).unwrap())
    }

    fn assign(g: &GroundSet, u: &str, v: &str, set: &[&str]) -> ((usize, usize), Cluster) {
        (
            (g.index_of(u).unwrap(), g.index_of(v).unwrap()),
            g.cluster(set.iter().copied()).unwrap(),
        )
    }

    #[test]
    fn single_element_function() {
        let g = ground(&["a"]);
        let r = make_transit_function(g, []).unwrap();
        assert_eq!(r.get(0, 0).elements(), vec![0]);
        assert_eq!(transit_sets(&r).len(), 1);
    }

    #[test]
    fn t1_violation_is_reported() {
        let g = ground(&["a", "b", "c"]);
        let err = make_transit_function(
            g.clone(),
            [
                assign(&g, "a", "b", &["b", "c"]),
                assign(&g, "a", "c", &["a", "c"]),
                assign(&g, "b", "c", &["b", "c"]),
            ],
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::T1Violated {
                u: "a".into(),
                v: "b".into(),
                missing: "a".into()
            }
        );
    }

    #[test]
    fn missing_and_duplicate_pairs() {
        let g = ground(&["a", "b", "c"]);
        let err = make_transit_function(g.clone(), [assign(&g, "a", "b", &["a", "b"])]).unwrap_err();
        assert!(matches!(err, Error::MissingPair { .. }));
        let err = make_transit_function(
            g.clone(),
            [
                assign(&g, "a", "b", &["a", "b"]),
                assign(&g, "b", "a", &["a", "b"]),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicatePair { .. }));
    }

    #[test]
    fn canonical_of_small_hierarchy() {
        let g = ground(&["a", "b"]);
        let s = SetSystem::from_labels(g, [&["a"][..], &["b"], &["a", "b"]]).unwrap();
        let r = canonical_transit_function(&s).unwrap();
        assert_eq!(r.get(0, 1).elements(), vec![0, 1]);
        assert_eq!(transit_sets(&r), s);
    }

    #[test]
    fn canonical_requires_covering_cluster() {
        let g = ground(&["a", "b", "c"]);
        let s = SetSystem::from_labels(g, [&["a"][..], &["b"], &["c"]]).unwrap();
        assert_eq!(
            canonical_transit_function(&s).unwrap_err(),
            Error::UncoveredPair {
                u: "a".into(),
                v: "b".into()
            }
        );
    }
}
