use std::fmt;

use crate::cluster::Cluster;
use crate::error::{Error, Result};

/// Largest supported ground set; clusters are single machine words.
pub const MAX_ELEMENTS: usize = 64;

/// Ordered universe of labelled elements. Element identity is the position of
/// its label, so element order is label insertion order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() || labels.len() > MAX_ELEMENTS {
            return Err(Error::Capacity {
                got: labels.len(),
                max: MAX_ELEMENTS,
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Elements labelled `a`, `b`, `c`, ... (then `e26`, `e27`, ... past `z`).
    pub fn lettered(n: usize) -> Result<Self> {
        GroundSet::new((0..n).map(|i| {
            if i < 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("e{i}")
            }
        }))
    }

    /// Elements labelled `1`, `2`, ..., `n`.
    pub fn numbered(n: usize) -> Result<Self> {
        GroundSet::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// The whole ground set as a cluster.
    pub fn full(&self) -> Cluster {
        Cluster::from_bits(crate::cluster::full_mask(self.len())).expect("ground set is non-empty")
    }

    pub fn cluster<'a, I>(&self, labels: I) -> Result<Cluster>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut bits = 0u64;
        for l in labels {
            bits |= 1 << self.require(l)?;
        }
        Cluster::from_bits(bits)
    }

    pub fn contains_cluster(&self, c: Cluster) -> bool {
        c.bits() & !crate::cluster::full_mask(self.len()) == 0
    }

    /// `{a, b, c}` rendering of a cluster.
    pub fn format_cluster(&self, c: Cluster) -> String {
        format_bits(self, c.bits())
    }

    pub fn cluster_labels(&self, c: Cluster) -> Vec<String> {
        c.iter().map(|i| self.labels[i].clone()).collect()
    }
}

pub(crate) fn format_bits(ground: &GroundSet, bits: u64) -> String {
    let inner: Vec<&str> = crate::cluster::Bits::new(bits)
        .map(|i| ground.label(i))
        .collect();
    format!("{{{}}}", inner.join(", "))
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capacity_bounds() {
        assert!(GroundSet::new(Vec::<String>::new()).is_err());
        assert!(GroundSet::lettered(64).is_ok());
        assert!(matches!(
            GroundSet::lettered(65),
            Err(Error::Capacity { got: 65, .. })
        ));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert_eq!(
            GroundSet::new(["a", "b", "a"]),
            Err(Error::DuplicateLabel("a".into()))
        );
    }

    #[test]
    fn lookup_and_format() {
        let g = GroundSet::new(["x", "y", "z"]).unwrap();
        assert_eq!(g.index_of("z"), Some(2));
        let c = g.cluster(["z", "x"]).unwrap();
        assert_eq!(g.format_cluster(c), "{x, z}");
        assert_eq!(g.full().len(), 3);
        assert!(matches!(g.cluster(["q"]), Err(Error::UnknownLabel(l)) if l == "q"));
    }
}
