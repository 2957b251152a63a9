//! Rank and frequency tables.
//!
//! A [`RankTable`] lists every node by decreasing degree; its rank column is
//! implicit (`1..=N`). A [`FrequencyTable`] counts nodes per distinct degree.
//! The two carry the same information: the count of degree `d` equals the
//! last rank of the degree-`d` group minus the last rank of the group with
//! the next larger degree present (zero for the top group).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ingest::DegreeSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("degree sequence is empty")]
    Empty,
    #[error("degree must be at least 1 (entry {index})")]
    ZeroDegree { index: usize },
    #[error("ranks must run 1..=N without gaps (entry {index} has rank {rank})")]
    RankGap { index: usize, rank: u64 },
    #[error("degrees must be non-increasing in rank (entry {index})")]
    NotSorted { index: usize },
    #[error("frequency table degrees must be strictly increasing (entry {index})")]
    DegreeOrder { index: usize },
    #[error("frequency must be at least 1 (entry {index})")]
    ZeroFrequency { index: usize },
}

/// Degrees in decreasing order; entry `i` holds the node of rank `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    degrees: Vec<u64>,
}

impl RankTable {
    /// Builds a table from degrees already listed in rank order.
    pub fn from_ranked_degrees(degrees: Vec<u64>) -> Result<Self, TableError> {
        if degrees.is_empty() {
            return Err(TableError::Empty);
        }
        for (i, &d) in degrees.iter().enumerate() {
            if d == 0 {
                return Err(TableError::ZeroDegree { index: i });
            }
            if i > 0 && d > degrees[i - 1] {
                return Err(TableError::NotSorted { index: i });
            }
        }
        Ok(RankTable { degrees })
    }

    /// Builds a table from explicit `(rank, degree)` pairs.
    pub fn from_entries(entries: &[(u64, u64)]) -> Result<Self, TableError> {
        for (i, &(rank, _)) in entries.iter().enumerate() {
            if rank != i as u64 + 1 {
                return Err(TableError::RankGap { index: i, rank });
            }
        }
        Self::from_ranked_degrees(entries.iter().map(|&(_, d)| d).collect())
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// `(rank, degree)` pairs, rank ascending.
    pub fn entries(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| (i as u64 + 1, d))
    }

    pub fn to_entries(&self) -> Vec<(u64, u64)> {
        self.entries().collect()
    }

    /// Last rank of each degree group, ordered by decreasing degree.
    pub fn group_last_ranks(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = Vec::new();
        for (rank, d) in self.entries() {
            match out.last_mut() {
                Some(last) if last.0 == d => last.1 = rank,
                _ => out.push((d, rank)),
            }
        }
        out
    }
}

/// `(degree, count)` pairs with strictly increasing degree and counts >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    entries: Vec<(u64, u64)>,
}

impl FrequencyTable {
    pub fn from_entries(entries: Vec<(u64, u64)>) -> Result<Self, TableError> {
        if entries.is_empty() {
            return Err(TableError::Empty);
        }
        for (i, &(d, f)) in entries.iter().enumerate() {
            if d == 0 {
                return Err(TableError::ZeroDegree { index: i });
            }
            if f == 0 {
                return Err(TableError::ZeroFrequency { index: i });
            }
            if i > 0 && d <= entries[i - 1].0 {
                return Err(TableError::DegreeOrder { index: i });
            }
        }
        Ok(FrequencyTable { entries })
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total node count, `sum f_d`.
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&(_, f)| f).sum()
    }

    pub fn frequency(&self, degree: u64) -> Option<u64> {
        self.entries
            .binary_search_by_key(&degree, |&(d, _)| d)
            .ok()
            .map(|i| self.entries[i].1)
    }
}

/// Sorts degrees descending. Equal degrees keep their sequence order.
pub fn rank_table(seq: &DegreeSequence) -> Result<RankTable, TableError> {
    if seq.is_empty() {
        return Err(TableError::Empty);
    }
    let mut degrees = seq.degrees().to_vec();
    degrees.sort_by(|a, b| b.cmp(a));
    Ok(RankTable { degrees })
}

pub fn frequency_table(seq: &DegreeSequence) -> Result<FrequencyTable, TableError> {
    if seq.is_empty() {
        return Err(TableError::Empty);
    }
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &d in seq.degrees() {
        *counts.entry(d).or_default() += 1;
    }
    Ok(FrequencyTable {
        entries: counts.into_iter().collect(),
    })
}

/// Frequencies as differences of group last ranks.
pub fn frequency_from_ranks(table: &RankTable) -> FrequencyTable {
    let groups = table.group_last_ranks();
    let mut entries: Vec<(u64, u64)> = Vec::with_capacity(groups.len());
    let mut previous_last = 0;
    for (d, last) in groups {
        entries.push((d, last - previous_last));
        previous_last = last;
    }
    entries.reverse();
    FrequencyTable { entries }
}

/// Rebuilds the canonical rank table; the last node of degree `d` sits at
/// rank `sum_{d' >= d} f_{d'}`.
pub fn ranks_from_frequency(table: &FrequencyTable) -> RankTable {
    let mut degrees = Vec::with_capacity(table.total() as usize);
    for &(d, f) in table.entries().iter().rev() {
        degrees.extend(std::iter::repeat_n(d, f as usize));
    }
    RankTable { degrees }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rank_table_examples() {
        assert_eq!(
            rank_table(&seq(&[3, 2, 2, 1, 1, 1])).unwrap().to_entries(),
            vec![(1, 3), (2, 2), (3, 2), (4, 1), (5, 1), (6, 1)]
        );
        assert_eq!(rank_table(&seq(&[5])).unwrap().to_entries(), vec![(1, 5)]);
        assert_eq!(
            rank_table(&seq(&[1, 1, 1, 1])).unwrap().to_entries(),
            vec![(1, 1), (2, 1), (3, 1), (4, 1)]
        );
        assert_eq!(rank_table(&seq(&[1, 3, 2])).unwrap().degrees(), &[3, 2, 1]);
    }

    #[test]
    fn frequency_table_examples() {
        assert_eq!(
            frequency_table(&seq(&[3, 2, 2, 1, 1, 1])).unwrap().entries(),
            &[(1, 3), (2, 2), (3, 1)]
        );
        assert_eq!(frequency_table(&seq(&[7, 7, 7])).unwrap().entries(), &[(7, 3)]);
        assert_eq!(frequency_table(&seq(&[3, 3, 3, 3])).unwrap().entries(), &[(3, 4)]);
    }

    #[test]
    fn empty_sequence_is_rejected() {
        let empty = seq(&[]);
        assert_eq!(rank_table(&empty), Err(TableError::Empty));
        assert_eq!(frequency_table(&empty), Err(TableError::Empty));
    }

    #[test]
    fn frequency_from_ranks_examples() {
        let t = RankTable::from_entries(&[(1, 3), (2, 2), (3, 2), (4, 1), (5, 1), (6, 1)]).unwrap();
        assert_eq!(frequency_from_ranks(&t).entries(), &[(1, 3), (2, 2), (3, 1)]);
        let single = RankTable::from_entries(&[(1, 5)]).unwrap();
        assert_eq!(frequency_from_ranks(&single).entries(), &[(5, 1)]);
    }

    #[test]
    fn ranks_from_frequency_examples() {
        let f = FrequencyTable::from_entries(vec![(1, 3), (2, 2), (3, 1)]).unwrap();
        assert_eq!(
            ranks_from_frequency(&f).to_entries(),
            vec![(1, 3), (2, 2), (3, 2), (4, 1), (5, 1), (6, 1)]
        );
        let f = FrequencyTable::from_entries(vec![(5, 1)]).unwrap();
        assert_eq!(ranks_from_frequency(&f).to_entries(), vec![(1, 5)]);
        let f = FrequencyTable::from_entries(vec![(1, 1), (2, 1), (3, 1)]).unwrap();
        assert_eq!(ranks_from_frequency(&f).to_entries(), vec![(1, 3), (2, 2), (3, 1)]);
    }

    #[test]
    fn group_last_ranks_with_gaps() {
        let t = RankTable::from_ranked_degrees(vec![9, 9, 4, 1, 1, 1]).unwrap();
        assert_eq!(t.group_last_ranks(), vec![(9, 2), (4, 3), (1, 6)]);
        assert_eq!(frequency_from_ranks(&t).entries(), &[(1, 3), (4, 1), (9, 2)]);
    }

    #[test]
    fn rank_table_validation() {
        assert_eq!(
            RankTable::from_entries(&[(1, 3), (3, 2)]),
            Err(TableError::RankGap { index: 1, rank: 3 })
        );
        assert_eq!(
            RankTable::from_entries(&[(1, 2), (2, 3)]),
            Err(TableError::NotSorted { index: 1 })
        );
        assert_eq!(
            RankTable::from_ranked_degrees(vec![2, 0]),
            Err(TableError::ZeroDegree { index: 1 })
        );
        assert_eq!(RankTable::from_entries(&[]), Err(TableError::Empty));
    }

    #[test]
    fn frequency_table_validation() {
        assert_eq!(
            FrequencyTable::from_entries(vec![(2, 1), (2, 3)]),
            Err(TableError::DegreeOrder { index: 1 })
        );
        assert_eq!(
            FrequencyTable::from_entries(vec![(2, 0)]),
            Err(TableError::ZeroFrequency { index: 0 })
        );
        assert_eq!(
            FrequencyTable::from_entries(vec![(0, 1)]),
            Err(TableError::ZeroDegree { index: 0 })
        );
        let f = FrequencyTable::from_entries(vec![(1, 4), (6, 2)]).unwrap();
        assert_eq!(f.total(), 6);
        assert_eq!(f.frequency(6), Some(2));
        assert_eq!(f.frequency(3), None);
    }
}
