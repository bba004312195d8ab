use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bipartition of `k` parties, stored as the sorted 0-based parties on one side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cut {
    parties: Vec<usize>,
    k: usize,
}

impl Cut {
    /// `parties` are 0-based; duplicates are rejected.
    pub fn new(mut parties: Vec<usize>, k: usize) -> Result<Self> {
        let invalid = || Error::InvalidCut {
            parties: parties.clone(),
            k,
        };
        let mut sorted = parties.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != parties.len()
            || sorted.is_empty()
            || sorted.len() >= k
            || sorted.iter().any(|&p| p >= k)
        {
            return Err(invalid());
        }
        parties = sorted;
        Ok(Self { parties, k })
    }

    /// Parses a 1-based party list such as `"1,3"`.
    pub fn parse_one_based(s: &str, k: usize) -> Result<Self> {
        let parties = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .ok()
                    .and_then(|p| p.checked_sub(1))
                    .ok_or_else(|| Error::InvalidArgument(format!("bad party index {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parties, k)
    }

    pub fn parties(&self) -> &[usize] {
        &self.parties
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn contains(&self, party: usize) -> bool {
        self.parties.binary_search(&party).is_ok()
    }

    pub fn complement(&self) -> Cut {
        Cut {
            parties: (0..self.k).filter(|p| !self.contains(*p)).collect(),
            k: self.k,
        }
    }

    /// Canonical representative of the bipartition {S, S^c}: the smaller side,
    /// ties broken toward the side holding party 0.
    pub fn canonical(&self) -> Cut {
        let c = self.complement();
        let self_first = match self.parties.len().cmp(&c.parties.len()) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => self.contains(0),
        };
        if self_first {
            self.clone()
        } else {
            c
        }
    }

    /// The `2^{k-1} - 1` distinct bipartitions of `k` parties, canonical form,
    /// ordered by size then lexicographically.
    pub fn all(k: usize) -> Vec<Cut> {
        if !(2..=24).contains(&k) {
            return Vec::new();
        }
        let mut cuts: Vec<Cut> = (1u32..(1u32 << k) - 1)
            .map(|mask| Cut {
                parties: (0..k).filter(|p| mask & (1 << p) != 0).collect(),
                k,
            })
            .filter(|c| c.canonical() == *c)
            .collect();
        cuts.sort_by(|a, b| {
            a.parties
                .len()
                .cmp(&b.parties.len())
                .then(a.parties.cmp(&b.parties))
        });
        cuts
    }

    /// 1-based label, e.g. `"1,3"`.
    pub fn label(&self) -> String {
        self.parties
            .iter()
            .map(|p| (p + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.label())
    }
}
