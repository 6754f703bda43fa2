//! Simple-cycle census bucketed by length modulo 4.
//!
//! Each cycle is enumerated once by backtracking from its smallest vertex,
//! keeping only the orientation whose second vertex is smaller than its
//! last vertex. A budget caps the number of cycles counted; an exhausted
//! budget is reported in band and makes the counts unusable.
//!
//! [`census_until`] stops once the c3 and c5 counts reach given goals; the
//! counts are then lower bounds, which is all a bound check needs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::inertia::MAX_ORDER;

/// Default cap on the number of cycles enumerated per graph.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CycleCensus {
    pub by_length: BTreeMap<usize, u64>,
    /// Cycles of length 3 mod 4.
    pub c3: u64,
    /// Cycles of length 1 mod 4.
    pub c5: u64,
    /// Odd cycles.
    pub c1: u64,
    pub total: u64,
    pub budget_exceeded: bool,
    /// Enumeration stopped early with both goals met; counts are lower bounds.
    pub partial: bool,
}

impl CycleCensus {
    fn from_lengths(counts: &[u64], budget_exceeded: bool, partial: bool) -> Self {
        let mut census = CycleCensus {
            budget_exceeded,
            partial,
            ..Default::default()
        };
        for (len, &count) in counts.iter().enumerate() {
            if count == 0 {
                continue;
            }
            census.by_length.insert(len, count);
            census.total += count;
            match len % 4 {
                3 => census.c3 += count,
                1 => census.c5 += count,
                _ => {}
            }
        }
        census.c1 = census.c3 + census.c5;
        census
    }

    /// Exact counts, or `None` when the budget ran out or the run stopped
    /// early.
    pub fn usable(&self) -> Option<&Self> {
        (!self.budget_exceeded && !self.partial).then_some(self)
    }

    pub fn count(&self, length: usize) -> u64 {
        self.by_length.get(&length).copied().unwrap_or(0)
    }
}

fn rows_of(g: &Graph) -> Result<Vec<u64>> {
    g.bit_rows().ok_or(Error::TooLarge {
        order: g.order(),
        limit: MAX_ORDER,
    })
}

struct Enumerator<'a> {
    rows: &'a [u64],
    root: usize,
    second: usize,
    lengths: Vec<u64>,
    found: u64,
    budget: u64,
    exceeded: bool,
    /// Remaining cycles needed of length 3 and 1 mod 4.
    goal: Option<[u64; 2]>,
    met: bool,
}

impl Enumerator<'_> {
    fn stop(&self) -> bool {
        self.exceeded || self.met
    }

    /// Extends a path root, second, ..., `last` whose vertex set is `used`.
    fn extend(&mut self, last: usize, used: u64, len: usize) {
        let row = self.rows[last];
        if len >= 3 && row >> self.root & 1 == 1 && self.second < last {
            if self.found == self.budget {
                self.exceeded = true;
                return;
            }
            self.found += 1;
            self.lengths[len] += 1;
            if let Some(goal) = self.goal.as_mut() {
                match len % 4 {
                    3 => goal[0] = goal[0].saturating_sub(1),
                    1 => goal[1] = goal[1].saturating_sub(1),
                    _ => {}
                }
                if goal == &[0, 0] {
                    self.met = true;
                    return;
                }
            }
        }
        let above_root = !((1u64 << self.root) | ((1u64 << self.root) - 1));
        let mut next = row & !used & above_root;
        while next != 0 {
            let u = next.trailing_zeros() as usize;
            next &= next - 1;
            self.extend(u, used | 1 << u, len + 1);
            if self.stop() {
                return;
            }
        }
    }
}

/// Counts every simple cycle, up to `budget` of them.
pub fn census(g: &Graph, budget: u64) -> Result<CycleCensus> {
    run(g, budget, None)
}

/// Like [`census`], but stops once at least `c3_goal` cycles of length
/// 3 mod 4 and `c5_goal` of length 1 mod 4 have been seen. The result is
/// marked `partial` when it stopped early.
pub fn census_until(g: &Graph, budget: u64, c3_goal: u64, c5_goal: u64) -> Result<CycleCensus> {
    run(g, budget, Some([c3_goal, c5_goal]))
}

fn run(g: &Graph, budget: u64, goal: Option<[u64; 2]>) -> Result<CycleCensus> {
    let rows = rows_of(g)?;
    if goal == Some([0, 0]) {
        return Ok(CycleCensus::from_lengths(&[], false, true));
    }
    let n = g.order();
    let mut e = Enumerator {
        rows: &rows,
        root: 0,
        second: 0,
        lengths: vec![0; n + 1],
        found: 0,
        budget,
        exceeded: false,
        goal,
        met: false,
    };
    'roots: for root in 0..n {
        e.root = root;
        let mut seconds = rows[root] & !((1u64 << root) | ((1u64 << root) - 1));
        while seconds != 0 {
            let s = seconds.trailing_zeros() as usize;
            seconds &= seconds - 1;
            e.second = s;
            e.extend(s, 1 << root | 1 << s, 2);
            if e.stop() {
                break 'roots;
            }
        }
    }
    Ok(CycleCensus::from_lengths(&e.lengths, e.exceeded, e.met))
}

/// A cycle shape to look for through a fixed vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum CycleTarget {
    /// A cycle of exactly this length.
    Length(usize),
    /// A cycle whose length is congruent to this value mod 4.
    Residue(usize),
}

impl CycleTarget {
    fn matches(self, len: usize) -> bool {
        match self {
            CycleTarget::Length(l) => len == l,
            CycleTarget::Residue(r) => len % 4 == r % 4,
        }
    }
}

struct Witness<'a> {
    rows: &'a [u64],
    start: usize,
    targets: &'a [CycleTarget],
    hit: Vec<bool>,
    remaining: usize,
    max_len: usize,
}

impl Witness<'_> {
    fn extend(&mut self, last: usize, used: u64, len: usize) {
        let row = self.rows[last];
        if len >= 3 && row >> self.start & 1 == 1 {
            for (i, t) in self.targets.iter().enumerate() {
                if !self.hit[i] && t.matches(len) {
                    self.hit[i] = true;
                    self.remaining -= 1;
                }
            }
            if self.remaining == 0 {
                return;
            }
        }
        if len == self.max_len {
            return;
        }
        let mut next = row & !used;
        while next != 0 {
            let u = next.trailing_zeros() as usize;
            next &= next - 1;
            self.extend(u, used | 1 << u, len + 1);
            if self.remaining == 0 {
                return;
            }
        }
    }
}

/// For each target, whether some simple cycle through `v` realizes it.
/// Stops as soon as every target has a witness.
pub fn cycles_through_vertex(g: &Graph, v: usize, targets: &[CycleTarget]) -> Result<Vec<bool>> {
    g.check_vertex(v)?;
    let rows = rows_of(g)?;
    let max_len = if targets.iter().all(|t| matches!(t, CycleTarget::Length(_))) {
        targets
            .iter()
            .map(|t| match t {
                CycleTarget::Length(l) => *l,
                CycleTarget::Residue(_) => unreachable!(),
            })
            .max()
            .unwrap_or(0)
            .min(g.order())
    } else {
        g.order()
    };
    let mut w = Witness {
        rows: &rows,
        start: v,
        targets,
        hit: vec![false; targets.len()],
        remaining: targets.len(),
        max_len,
    };
    if w.remaining > 0 && max_len >= 3 {
        w.extend(v, 1 << v, 1);
    }
    Ok(w.hit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c5_census() {
        let c = census(&Graph::cycle(5), DEFAULT_BUDGET).unwrap();
        assert_eq!(c.by_length, BTreeMap::from([(5, 1)]));
        assert_eq!((c.c3, c.c5, c.c1, c.total), (0, 1, 1, 1));
    }

    #[test]
    fn complete_graphs() {
        let k4 = census(&Graph::complete(4), DEFAULT_BUDGET).unwrap();
        assert_eq!(k4.by_length, BTreeMap::from([(3, 4), (4, 3)]));
        assert_eq!((k4.c3, k4.c5), (4, 0));
        let k5 = census(&Graph::complete(5), DEFAULT_BUDGET).unwrap();
        assert_eq!(k5.by_length, BTreeMap::from([(3, 10), (4, 15), (5, 12)]));
        assert_eq!((k5.c3, k5.c5), (10, 12));
    }

    #[test]
    fn trees_and_empties() {
        for g in [Graph::star(5), Graph::path(7), Graph::empty(0), Graph::empty(3)] {
            let c = census(&g, DEFAULT_BUDGET).unwrap();
            assert_eq!((c.total, c.c3, c.c5), (0, 0, 0));
        }
    }

    #[test]
    fn budget_flag() {
        let c = census(&Graph::complete(5), 1).unwrap();
        assert!(c.budget_exceeded);
        assert!(c.usable().is_none());
        let exact = census(&Graph::complete(5), 37).unwrap();
        assert!(!exact.budget_exceeded);
        assert!(census(&Graph::complete(5), 36).unwrap().budget_exceeded);
        assert!(!census(&Graph::path(3), 0).unwrap().budget_exceeded);
    }

    #[test]
    fn goals_stop_early() {
        let k8 = Graph::complete(8);
        let full = census(&k8, DEFAULT_BUDGET).unwrap();
        let quick = census_until(&k8, DEFAULT_BUDGET, 2, 3).unwrap();
        assert!(quick.partial && !quick.budget_exceeded);
        assert!(quick.c3 >= 2 && quick.c5 >= 3);
        assert!(quick.total < full.total);
        assert!(quick.usable().is_none());
        // Unreachable goals run to completion and report exact counts.
        let c6 = census_until(&Graph::cycle(6), DEFAULT_BUDGET, 1, 0).unwrap();
        assert!(!c6.partial);
        assert_eq!(c6.count(6), 1);
        assert!(census_until(&Graph::path(3), 0, 0, 0).unwrap().partial);
        assert!(census_until(&Graph::complete(5), 2, 0, 12).unwrap().budget_exceeded);
    }

    #[test]
    fn witnesses_through_vertex() {
        let targets = [CycleTarget::Length(3), CycleTarget::Length(5)];
        let sq = crate::transforms::power(&Graph::path(5), 2).unwrap();
        assert_eq!(cycles_through_vertex(&sq, 0, &targets).unwrap(), vec![true, true]);
        for v in 0..4 {
            assert_eq!(
                cycles_through_vertex(&Graph::cycle(4), v, &targets).unwrap(),
                vec![false, false]
            );
            assert_eq!(
                cycles_through_vertex(&Graph::complete(4), v, &targets).unwrap(),
                vec![true, false]
            );
        }
        let residues = [CycleTarget::Residue(1), CycleTarget::Residue(3)];
        assert_eq!(
            cycles_through_vertex(&Graph::cycle(9), 4, &residues).unwrap(),
            vec![true, false]
        );
        assert!(cycles_through_vertex(&Graph::cycle(4), 9, &targets).is_err());
    }
}
