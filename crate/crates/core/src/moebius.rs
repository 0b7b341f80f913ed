//! Möbius function of the refinement order on `P_n` and on `NC_n`, computed
//! from the defining interval recursion
//! `μ(L,L) = 1`, `μ(L,K) = −Σ_{L ≤ M < K} μ(L,M)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{enumerate_nc_partitions, enumerate_set_partitions, Limits, SetPartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Lattice {
    SetPartitions,
    NonCrossing,
}

fn set_partitions_of(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    fn rec(k: usize, items: &[usize], groups: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if k == items.len() {
            out.push(groups.clone());
            return;
        }
        for g in 0..groups.len() {
            groups[g].push(items[k]);
            rec(k + 1, items, groups, out);
            groups[g].pop();
        }
        groups.push(vec![items[k]]);
        rec(k + 1, items, groups, out);
        groups.pop();
    }
    rec(0, items, &mut groups, &mut out);
    out
}

/// Every `M` with `lower ≤ M ≤ upper` in the chosen lattice. Requires
/// `lower ≤ upper`.
pub fn interval(lattice: Lattice, lower: &SetPartition, upper: &SetPartition) -> Vec<SetPartition> {
    // Blocks of `lower` grouped by the block of `upper` containing them.
    let mut per_upper: Vec<Vec<usize>> = vec![Vec::new(); upper.block_count()];
    for (i, b) in lower.blocks().iter().enumerate() {
        let j = upper.blocks().iter().position(|u| u.binary_search(&b[0]).is_ok()).expect("lower ≤ upper");
        per_upper[j].push(i);
    }
    let choices: Vec<Vec<Vec<Vec<usize>>>> = per_upper.iter().map(|ids| set_partitions_of(ids)).collect();
    let mut acc: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for options in &choices {
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for a in &acc {
            for grouping in options {
                let mut blocks = a.clone();
                for group in grouping {
                    let mut merged: Vec<usize> =
                        group.iter().flat_map(|&i| lower.blocks()[i].iter().copied()).collect();
                    merged.sort_unstable();
                    blocks.push(merged);
                }
                next.push(blocks);
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|b| SetPartition::new(b).expect("merged blocks are disjoint"))
        .filter(|m| lattice == Lattice::SetPartitions || m.is_noncrossing())
        .collect()
}

/// Memoised Möbius function for one lattice. The cache is keyed by the
/// interval endpoints and lives as long as the value.
#[derive(Debug)]
pub struct Moebius {
    lattice: Lattice,
    cache: HashMap<(SetPartition, SetPartition), i64>,
}

impl Moebius {
    pub fn new(lattice: Lattice) -> Self {
        Moebius { lattice, cache: HashMap::new() }
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    /// `μ(lower, upper)`; errors unless `lower ≤ upper` in the lattice.
    pub fn value(&mut self, lower: &SetPartition, upper: &SetPartition) -> Result<i64> {
        if self.lattice == Lattice::NonCrossing {
            for p in [lower, upper] {
                if !p.is_noncrossing() {
                    return Err(Error::InvalidPartition(format!("{p} is not in the non-crossing lattice")));
                }
            }
        }
        if !lower.refines(upper)? {
            return Err(Error::OrderViolation(format!("{lower} does not refine {upper}")));
        }
        Ok(self.mu(lower, upper))
    }

    fn mu(&mut self, lower: &SetPartition, upper: &SetPartition) -> i64 {
        if lower == upper {
            return 1;
        }
        let key = (lower.clone(), upper.clone());
        if let Some(&v) = self.cache.get(&key) {
            return v;
        }
        let mut sum = 0i64;
        for m in interval(self.lattice, lower, upper) {
            if &m != upper {
                sum += self.mu(lower, &m);
            }
        }
        self.cache.insert(key, -sum);
        -sum
    }
}

/// `(L, μ(L, 1̂_n))` for every `L` of the lattice on `[n]`, shared across calls.
/// Uses the dual form `μ(L,K) = −Σ_{L < M ≤ K} μ(M,K)`, filling the table from
/// the top down so each element only enumerates its own coarsenings.
pub fn moebius_to_top(lattice: Lattice, n: usize) -> Result<Arc<Vec<(SetPartition, i64)>>> {
    type Table = HashMap<(Lattice, usize), Arc<Vec<(SetPartition, i64)>>>;
    static CACHE: OnceLock<Mutex<Table>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&(lattice, n)) {
        return Ok(t.clone());
    }
    let limits = Limits::default();
    let mut elements: Vec<SetPartition> = match lattice {
        Lattice::SetPartitions => enumerate_set_partitions(n, &limits)?,
        Lattice::NonCrossing => {
            enumerate_nc_partitions(n, &limits)?.into_iter().map(|p| p.into_set_partition()).collect()
        }
    };
    let top = SetPartition::coarsest(&(1..=n).collect::<Vec<_>>())?;
    // Coarser partitions have fewer blocks, so they are settled first.
    elements.sort_by_key(|p| p.block_count());
    let mut values: HashMap<SetPartition, i64> = HashMap::with_capacity(elements.len());
    for l in &elements {
        let v = if *l == top {
            1
        } else {
            -interval(lattice, l, &top).iter().filter(|m| *m != l).map(|m| values[m]).sum::<i64>()
        };
        values.insert(l.clone(), v);
    }
    let mut table: Vec<(SetPartition, i64)> = values.into_iter().collect();
    table.sort_by_key(|(p, _)| p.encode());
    let table = Arc::new(table);
    cache.lock().unwrap().insert((lattice, n), table.clone());
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn base_case() {
        for lat in [Lattice::SetPartitions, Lattice::NonCrossing] {
            let mut m = Moebius::new(lat);
            assert_eq!(m.value(&sp("{1,3}{2}"), &sp("{1,3}{2}")).unwrap(), 1);
        }
    }

    #[test]
    fn bottom_to_top_n4() {
        let (z, o) = (sp("{1}{2}{3}{4}"), sp("{1,2,3,4}"));
        assert_eq!(Moebius::new(Lattice::NonCrossing).value(&z, &o).unwrap(), -5);
        assert_eq!(Moebius::new(Lattice::SetPartitions).value(&z, &o).unwrap(), -6);
    }

    #[test]
    fn interval_sizes() {
        let (z, o) = (sp("{1}{2}{3}{4}"), sp("{1,2,3,4}"));
        assert_eq!(interval(Lattice::SetPartitions, &z, &o).len(), 15);
        assert_eq!(interval(Lattice::NonCrossing, &z, &o).len(), 14);
        assert_eq!(interval(Lattice::SetPartitions, &sp("{1,2}{3}{4}"), &sp("{1,2,3}{4}")).len(), 2);
    }

    #[test]
    fn order_violation() {
        let mut m = Moebius::new(Lattice::SetPartitions);
        assert!(matches!(m.value(&sp("{1,2}{3}"), &sp("{1}{2}{3}")), Err(Error::OrderViolation(_))));
        assert!(matches!(m.value(&sp("{1}{2}"), &sp("{1,2,3}")), Err(Error::CarrierMismatch(_))));
        let mut n = Moebius::new(Lattice::NonCrossing);
        assert!(n.value(&sp("{1,3}{2,4}"), &sp("{1,2,3,4}")).is_err());
    }

    #[test]
    fn nc_interval_is_not_the_set_partition_one() {
        // [{1}{2}{3}{4}, {1,3}{2,4}] is a 4-element interval in P_4; in NC
        // the upper end is not even an element, but {1,2,3,4} differs too.
        let z = sp("{1}{2}{3}{4}");
        let mut p = Moebius::new(Lattice::SetPartitions);
        assert_eq!(p.value(&z, &sp("{1,3}{2,4}")).unwrap(), 1);
    }

    #[test]
    fn table_to_top_matches_direct_values() {
        for (lat, n, size) in [(Lattice::NonCrossing, 5, 42), (Lattice::SetPartitions, 5, 52)] {
            let t = moebius_to_top(lat, n).unwrap();
            assert_eq!(t.len(), size);
            let mut m = Moebius::new(lat);
            let top = SetPartition::coarsest(&(1..=n).collect::<Vec<_>>()).unwrap();
            for (l, v) in t.iter() {
                assert_eq!(m.value(l, &top).unwrap(), *v);
            }
        }
    }
}
