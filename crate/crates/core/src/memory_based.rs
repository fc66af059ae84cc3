//! Memory-based classification over the k closest distinct distances.

use crate::bayes::DecisionPolicy;
use crate::corpus::Label;
use crate::error::{Error, Result};
use crate::features::BinaryVector;

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceBase {
    instances: Vec<(BinaryVector, Label)>,
    m: usize,
}

pub fn build_instance_base<I>(examples: I) -> Result<InstanceBase>
where
    I: IntoIterator<Item = (BinaryVector, Label)>,
{
    let instances: Vec<(BinaryVector, Label)> = examples.into_iter().collect();
    let Some((first, _)) = instances.first() else {
        return Err(Error::EmptyInstanceBase);
    };
    let m = first.len();
    if let Some((v, _)) = instances.iter().find(|(v, _)| v.len() != m) {
        return Err(Error::LengthMismatch {
            expected: m,
            found: v.len(),
        });
    }
    Ok(InstanceBase { instances, m })
}

/// Unweighted overlap distance: the number of differing positions.
pub fn overlap_distance(a: &BinaryVector, b: &BinaryVector) -> Result<usize> {
    a.hamming(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Neighbor {
    pub index: usize,
    pub distance: usize,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighborhood {
    /// Members in base order.
    pub members: Vec<Neighbor>,
    /// The distinct distances represented, ascending.
    pub distances: Vec<usize>,
}

impl Neighborhood {
    pub fn votes(&self) -> Votes {
        let spam = self.members.iter().filter(|n| n.label.is_spam()).count();
        Votes {
            spam,
            legit: self.members.len() - spam,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Votes {
    pub spam: usize,
    pub legit: usize,
}

impl Votes {
    /// Spam iff `spam > lambda * legit`.
    pub fn decide(self, policy: &DecisionPolicy) -> Label {
        if self.spam as f64 > policy.lambda() * self.legit as f64 {
            Label::Spam
        } else {
            Label::Legitimate
        }
    }
}

impl InstanceBase {
    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn instances(&self) -> &[(BinaryVector, Label)] {
        &self.instances
    }

    fn distances(&self, query: &BinaryVector) -> Result<Vec<usize>> {
        self.instances
            .iter()
            .map(|(v, _)| overlap_distance(v, query))
            .collect()
    }

    /// Per-distance label counts; index is the distance, `0..=m`.
    fn histogram(&self, distances: &[usize]) -> Vec<Votes> {
        let mut hist = vec![Votes::default(); self.m + 1];
        for (d, (_, label)) in distances.iter().zip(&self.instances) {
            match label {
                Label::Spam => hist[*d].spam += 1,
                Label::Legitimate => hist[*d].legit += 1,
            }
        }
        hist
    }

    /// The k smallest distinct distances present in the histogram.
    fn closest_distances(hist: &[Votes], k: usize) -> Vec<usize> {
        hist.iter()
            .enumerate()
            .filter(|(_, v)| v.spam + v.legit > 0)
            .map(|(d, _)| d)
            .take(k)
            .collect()
    }

    /// Every instance whose distance to `query` is among the `k` smallest
    /// distinct distances. May hold many more than `k` members.
    pub fn neighborhood(&self, query: &BinaryVector, k: usize) -> Result<Neighborhood> {
        if k == 0 {
            return Err(Error::InvalidK);
        }
        let distances = self.distances(query)?;
        let closest = Self::closest_distances(&self.histogram(&distances), k);
        let cutoff = closest.last().copied().unwrap_or(0);
        let members = distances
            .iter()
            .zip(&self.instances)
            .enumerate()
            .filter(|(_, (d, _))| **d <= cutoff)
            .map(|(index, (&distance, (_, label)))| Neighbor {
                index,
                distance,
                label: *label,
            })
            .collect();
        Ok(Neighborhood {
            members,
            distances: closest,
        })
    }

    /// Label counts of the k-distance neighborhood, without materializing it.
    pub fn votes(&self, query: &BinaryVector, k: usize) -> Result<Votes> {
        if k == 0 {
            return Err(Error::InvalidK);
        }
        let hist = self.histogram(&self.distances(query)?);
        Ok(hist
            .iter()
            .filter(|v| v.spam + v.legit > 0)
            .take(k)
            .fold(Votes::default(), |acc, v| Votes {
                spam: acc.spam + v.spam,
                legit: acc.legit + v.legit,
            }))
    }

    pub fn classify(&self, query: &BinaryVector, k: usize, policy: &DecisionPolicy) -> Result<Label> {
        Ok(self.votes(query, k)?.decide(policy))
    }
}

pub fn k_distance_neighborhood(
    base: &InstanceBase,
    query: &BinaryVector,
    k: usize,
) -> Result<Neighborhood> {
    base.neighborhood(query, k)
}

pub fn classify_mb(
    base: &InstanceBase,
    query: &BinaryVector,
    k: usize,
    policy: &DecisionPolicy,
) -> Result<Label> {
    base.classify(query, k, policy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(bits: &[u8]) -> BinaryVector {
        BinaryVector::from_bits(bits.iter().map(|&b| b == 1))
    }

    fn policy(lambda: f64) -> DecisionPolicy {
        DecisionPolicy::new(lambda).unwrap()
    }

    #[test]
    fn build_examples() {
        let base = build_instance_base((0..5).map(|i| (bv(&[i % 2]), Label::Spam))).unwrap();
        assert_eq!(base.len(), 5);

        let base = build_instance_base([(bv(&[1, 0]), Label::Spam), (bv(&[1, 0]), Label::Legitimate)])
            .unwrap();
        assert_eq!(base.len(), 2);

        assert!(matches!(
            build_instance_base(Vec::new()),
            Err(Error::EmptyInstanceBase)
        ));
        assert!(matches!(
            build_instance_base([(bv(&[1]), Label::Spam), (bv(&[1, 1]), Label::Spam)]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(overlap_distance(&bv(&[1, 0, 1]), &bv(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(overlap_distance(&bv(&[1, 1, 0]), &bv(&[0, 0, 1])).unwrap(), 3);
        assert_eq!(overlap_distance(&bv(&[1, 0, 1, 0]), &bv(&[1, 1, 1, 1])).unwrap(), 2);
        assert!(overlap_distance(&bv(&[1]), &bv(&[1, 0])).is_err());
    }

    #[test]
    fn neighborhood_takes_k_distinct_distances() {
        // distances from the all-zero query: 0, 0, 1, 2, 2
        let base = build_instance_base([
            (bv(&[0, 0, 0]), Label::Spam),
            (bv(&[0, 0, 0]), Label::Legitimate),
            (bv(&[1, 0, 0]), Label::Spam),
            (bv(&[1, 1, 0]), Label::Legitimate),
            (bv(&[0, 1, 1]), Label::Legitimate),
        ])
        .unwrap();
        let q = bv(&[0, 0, 0]);
        let n = base.neighborhood(&q, 2).unwrap();
        assert_eq!(n.distances, [0, 1]);
        assert_eq!(n.members.len(), 3);
        assert_eq!(base.neighborhood(&q, 10).unwrap().members.len(), 5);
        assert!(matches!(base.neighborhood(&q, 0), Err(Error::InvalidK)));

        let n = base.neighborhood(&bv(&[1, 0, 0]), 1).unwrap();
        assert_eq!(n.members.len(), 1);
        assert_eq!(n.members[0].index, 2);
    }

    #[test]
    fn lambda_scaled_vote() {
        let v = Votes { spam: 3, legit: 2 };
        assert_eq!(v.decide(&policy(1.0)), Label::Spam);
        assert_eq!(v.decide(&policy(9.0)), Label::Legitimate);
        assert_eq!(Votes { spam: 2, legit: 2 }.decide(&policy(1.0)), Label::Legitimate);
        assert_eq!(Votes { spam: 0, legit: 0 }.decide(&policy(1.0)), Label::Legitimate);
        assert_eq!(Votes { spam: 1, legit: 0 }.decide(&policy(999.0)), Label::Spam);
    }

    #[test]
    fn votes_match_materialized_neighborhood() {
        let base = build_instance_base([
            (bv(&[0, 0, 0, 1]), Label::Spam),
            (bv(&[0, 1, 0, 1]), Label::Spam),
            (bv(&[1, 1, 0, 0]), Label::Legitimate),
            (bv(&[1, 1, 1, 1]), Label::Legitimate),
            (bv(&[0, 0, 1, 1]), Label::Spam),
        ])
        .unwrap();
        let q = bv(&[0, 1, 1, 1]);
        for k in 1..5 {
            assert_eq!(base.votes(&q, k).unwrap(), base.neighborhood(&q, k).unwrap().votes());
        }
    }
}
