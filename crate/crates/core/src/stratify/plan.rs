use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::quiver::Quiver;

/// An ordered partition of the vertices into nonempty strata `0, 1, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratPlan {
    strata: Vec<Vec<usize>>,
    stratum_of: Vec<usize>,
}

impl StratPlan {
    /// Strata are given by vertex index; each is stored sorted.
    pub fn new(vertex_count: usize, strata: Vec<Vec<usize>>) -> Result<Self, Error> {
        Self::build(vertex_count, strata, |v| format!("{v}"))
    }

    fn build(vertex_count: usize, strata: Vec<Vec<usize>>, name: impl Fn(usize) -> String) -> Result<Self, Error> {
        let mut stratum_of = vec![usize::MAX; vertex_count];
        let mut sorted = Vec::with_capacity(strata.len());
        for (i, mut s) in strata.into_iter().enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidPartition(format!("stratum {i} is empty")));
            }
            s.sort_unstable();
            for &v in &s {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange(v));
                }
                if stratum_of[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("vertex {} appears twice", name(v))));
                }
                stratum_of[v] = i;
            }
            sorted.push(s);
        }
        if let Some(v) = stratum_of.iter().position(|&s| s == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {} is in no stratum", name(v))));
        }
        Ok(StratPlan { strata: sorted, stratum_of })
    }

    pub fn from_names(quiver: &Quiver, strata: &[Vec<String>]) -> Result<Self, Error> {
        let strata = strata
            .iter()
            .map(|s| s.iter().map(|n| quiver.vertex_index(n)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::build(quiver.vertex_count(), strata, |v| format!("{:?}", quiver.vertex_name(v)))
    }

    /// One stratum per vertex, in the given order.
    pub fn total_order(vertex_count: usize, order: &[usize]) -> Result<Self, Error> {
        Self::new(vertex_count, order.iter().map(|&v| vec![v]).collect())
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    /// Largest stratum index. Strata are indexed by naturals only.
    pub fn max_index(&self) -> Option<usize> {
        self.strata.len().checked_sub(1)
    }

    pub fn stratum(&self, i: usize) -> &[usize] {
        &self.strata[i]
    }

    pub fn strata(&self) -> &[Vec<usize>] {
        &self.strata
    }

    pub fn stratum_of(&self, v: usize) -> usize {
        self.stratum_of[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.stratum_of.len()
    }

    /// Vertices in strata `< i`.
    pub fn below(&self, i: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.strata[..i.min(self.len())].iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    /// Vertices in strata `<= i`.
    pub fn up_to(&self, i: usize) -> Vec<usize> {
        self.below(i + 1)
    }
}
