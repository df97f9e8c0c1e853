use crate::cluster::Cluster;
use crate::ground::GroundSet;

/// Concrete evidence that an axiom fails: element indices and/or clusters,
/// in the order the axiom quantifies them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Witness {
    pub elements: Vec<usize>,
    pub clusters: Vec<Cluster>,
    /// For composite predicates, the component axiom that failed.
    pub via: Option<&'static str>,
}

impl Witness {
    pub fn elements(elements: impl Into<Vec<usize>>) -> Self {
        Witness {
            elements: elements.into(),
            ..Witness::default()
        }
    }

    pub fn clusters(clusters: impl Into<Vec<Cluster>>) -> Self {
        Witness {
            clusters: clusters.into(),
            ..Witness::default()
        }
    }

    pub fn via(mut self, component: &'static str) -> Self {
        self.via = Some(component);
        self
    }

    pub fn render(&self, ground: &GroundSet) -> String {
        let mut parts = Vec::new();
        if !self.elements.is_empty() {
            let labels: Vec<&str> = self.elements.iter().map(|&i| ground.label(i)).collect();
            parts.push(format!("({})", labels.join(", ")));
        }
        for &c in &self.clusters {
            parts.push(ground.format_cluster(c));
        }
        let body = parts.join(" ");
        match self.via {
            Some(v) => format!("via {v}: {body}"),
            None => body,
        }
    }
}

/// Outcome of checking one axiom or predicate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Verdict {
    pub axiom: &'static str,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn holds(axiom: &'static str) -> Self {
        Verdict {
            axiom,
            holds: true,
            witness: None,
        }
    }

    pub fn fails(axiom: &'static str, witness: Witness) -> Self {
        Verdict {
            axiom,
            holds: false,
            witness: Some(witness),
        }
    }

    pub(crate) fn from_search(axiom: &'static str, found: Option<Witness>) -> Self {
        match found {
            Some(w) => Verdict::fails(axiom, w),
            None => Verdict::holds(axiom),
        }
    }

    pub(crate) fn retag(mut self, axiom: &'static str) -> Self {
        self.axiom = axiom;
        self
    }
}

/// A total order on the ground set, stored as the sequence of element
/// indices from first to last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompatibleOrder {
    sequence: Vec<usize>,
}

impl CompatibleOrder {
    /// `None` unless `sequence` is a permutation of `0..sequence.len()`.
    pub fn new(sequence: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; sequence.len()];
        for &e in &sequence {
            if e >= seen.len() || std::mem::replace(&mut seen[e], true) {
                return None;
            }
        }
        Some(CompatibleOrder { sequence })
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// `positions()[e]` is the rank of element `e`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.sequence.len()];
        for (i, &e) in self.sequence.iter().enumerate() {
            pos[e] = i;
        }
        pos
    }

    pub fn reversed(&self) -> Self {
        let mut sequence = self.sequence.clone();
        sequence.reverse();
        CompatibleOrder { sequence }
    }

    /// True if the members of `c` occupy consecutive positions.
    pub fn is_interval(&self, c: Cluster) -> bool {
        let pos = self.positions();
        let (lo, hi) = c
            .iter()
            .fold((usize::MAX, 0), |(lo, hi), e| (lo.min(pos[e]), hi.max(pos[e])));
        hi - lo + 1 == c.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_must_be_permutation() {
        assert!(CompatibleOrder::new(vec![2, 0, 1]).is_some());
        assert!(CompatibleOrder::new(vec![0, 0, 1]).is_none());
        assert!(CompatibleOrder::new(vec![0, 3, 1]).is_none());
    }

    #[test]
    fn interval_test() {
        let o = CompatibleOrder::new(vec![2, 0, 1, 3]).unwrap();
        assert!(o.is_interval(Cluster::pair(2, 0)));
        assert!(o.is_interval(Cluster::pair(1, 3)));
        assert!(!o.is_interval(Cluster::pair(2, 1)));
        assert_eq!(o.positions(), vec![1, 2, 0, 3]);
        assert_eq!(o.reversed().sequence(), &[3, 1, 0, 2]);
    }
}
