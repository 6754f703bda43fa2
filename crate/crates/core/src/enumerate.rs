//! Graph families for exhaustive checks.
//!
//! Free trees are generated isomorph-free: rooted trees come from the
//! Beyer-Hedetniemi successor on canonical level sequences, and the first
//! rooted tree seen for each center-rooted canonical code is kept. The
//! unicyclic, bicyclic and sun families are exhaustive but not reduced
//! modulo isomorphism.

use std::collections::HashSet;
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::from_graph6;
use crate::transforms::SunSpec;

/// Default largest tree order the generators accept.
pub const TREE_CAP: usize = 14;

/// Rooted trees on `n` vertices as level sequences (root at level 1), in
/// Beyer-Hedetniemi order from the path down to the star.
struct RootedTrees {
    levels: Vec<usize>,
    done: bool,
}

impl RootedTrees {
    fn new(n: usize) -> Self {
        RootedTrees {
            levels: (1..=n).collect(),
            done: n == 0,
        }
    }
}

impl Iterator for RootedTrees {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let current = self.levels.clone();
        let l = &mut self.levels;
        match (0..l.len()).rev().find(|&i| l[i] > 2) {
            None => self.done = true,
            Some(p) => {
                let q = (0..p).rev().find(|&i| l[i] == l[p] - 1).expect("parent level exists");
                for i in p..l.len() {
                    l[i] = l[i - (p - q)];
                }
            }
        }
        Some(current)
    }
}

fn tree_from_levels(levels: &[usize]) -> Graph {
    let mut g = Graph::empty(levels.len());
    let mut last_at_level = vec![0usize; levels.len() + 2];
    for (i, &lvl) in levels.iter().enumerate() {
        if i > 0 {
            g.insert_edge(last_at_level[lvl - 1], i).expect("valid tree edge");
        }
        last_at_level[lvl] = i;
    }
    g
}

/// Centers of a tree by repeated leaf removal.
fn centers(tree: &Graph) -> Vec<usize> {
    let n = tree.order();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree = tree.degrees();
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= leaves.len();
        let mut next = Vec::new();
        for &leaf in &leaves {
            degree[leaf] = 0;
            for &u in tree.neighbors(leaf) {
                if degree[u] > 0 {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        leaves = next;
    }
    leaves
}

fn rooted_code(tree: &Graph, v: usize, parent: usize) -> Vec<u8> {
    let mut children: Vec<Vec<u8>> = tree
        .neighbors(v)
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| rooted_code(tree, u, v))
        .collect();
    children.sort_unstable();
    let mut code = vec![b'('];
    for c in children {
        code.extend(c);
    }
    code.push(b')');
    code
}

/// Isomorphism-invariant code of a free tree.
pub fn tree_code(tree: &Graph) -> Vec<u8> {
    centers(tree)
        .into_iter()
        .map(|c| rooted_code(tree, c, usize::MAX))
        .min()
        .unwrap_or_default()
}

/// One tree per isomorphism class on `n` vertices, for `1 <= n <= TREE_CAP`.
pub fn free_trees(n: usize) -> Result<impl Iterator<Item = Graph>> {
    free_trees_with_cap(n, TREE_CAP)
}

pub fn free_trees_with_cap(n: usize, cap: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > cap {
        return Err(Error::CapExceeded { size: n, cap });
    }
    if n == 0 {
        return Err(Error::InvalidParameter("trees need at least one vertex".into()));
    }
    let mut seen = HashSet::new();
    Ok(RootedTrees::new(n)
        .map(|levels| tree_from_levels(&levels))
        .filter(move |t| seen.insert(tree_code(t))))
}

fn non_edges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.order();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect()
}

fn with_each_non_edge(g: Graph) -> impl Iterator<Item = Graph> {
    non_edges(&g).into_iter().map(move |(u, v)| {
        let mut h = g.clone();
        h.insert_edge(u, v).expect("non-edge endpoints are valid");
        h
    })
}

/// Every free tree on `n` vertices plus one extra edge, in all positions.
pub fn unicyclic_from_trees(n: usize) -> Result<impl Iterator<Item = Graph>> {
    Ok(free_trees(n.max(1))?
        .filter(move |_| n >= 3)
        .flat_map(with_each_non_edge))
}

/// Every generated unicyclic graph on `n` vertices plus one further edge.
pub fn bicyclic_from_unicyclic(n: usize) -> Result<impl Iterator<Item = Graph>> {
    Ok(unicyclic_from_trees(n)?.flat_map(with_each_non_edge))
}

/// All sun specifications with `3 <= t <= t_max` and pendant counts in
/// `0..=pendant_cap`, by increasing `t` then lexicographically.
pub fn sun_grid(t_max: usize, pendant_cap: usize) -> Result<impl Iterator<Item = SunSpec>> {
    if t_max < 3 {
        return Err(Error::InvalidParameter(format!("sun grid needs t_max >= 3, got {t_max}")));
    }
    Ok((3..=t_max).flat_map(move |t| {
        let mut counts = Some(vec![0usize; t]);
        std::iter::from_fn(move || {
            let current = counts.take()?;
            let mut next = current.clone();
            if let Some(i) = (0..t).rev().find(|&i| next[i] < pendant_cap) {
                next[i] += 1;
                next[i + 1..].iter_mut().for_each(|x| *x = 0);
                counts = Some(next);
            }
            Some(SunSpec::new(current).expect("t >= 3"))
        })
    }))
}

/// A graph read from a graph6 line stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamGraph {
    /// 1-based physical line number.
    pub line: usize,
    pub graph6: String,
    pub graph: Graph,
}

/// A line that could not be read or decoded.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct StreamError {
    pub line: usize,
    pub message: String,
}

/// Iterator over graph6 lines. Blank lines and lines starting with `#` are
/// skipped. In strict mode the stream ends after the first error.
pub struct Graph6Stream<R> {
    lines: std::io::Lines<R>,
    line: usize,
    strict: bool,
    stopped: bool,
}

pub fn ingest_graph6<R: BufRead>(reader: R, strict: bool) -> Graph6Stream<R> {
    Graph6Stream {
        lines: reader.lines(),
        line: 0,
        strict,
        stopped: false,
    }
}

impl<R: BufRead> Iterator for Graph6Stream<R> {
    type Item = std::result::Result<StreamGraph, StreamError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.stopped {
            return None;
        }
        loop {
            let raw = self.lines.next()?;
            self.line += 1;
            let item = match raw {
                Err(e) => Err(StreamError {
                    line: self.line,
                    message: e.to_string(),
                }),
                Ok(text) => {
                    let text = text.trim();
                    if text.is_empty() || text.starts_with('#') {
                        continue;
                    }
                    from_graph6(text)
                        .map(|graph| StreamGraph {
                            line: self.line,
                            graph6: text.to_string(),
                            graph,
                        })
                        .map_err(|e| StreamError {
                            line: self.line,
                            message: e.to_string(),
                        })
                }
            };
            if item.is_err() && self.strict {
                self.stopped = true;
            }
            return Some(item);
        }
    }
}

/// A generated family, written `trees:A..B`, `unicyclic:A..B`,
/// `bicyclic:A..B` (inclusive) or `suns:TMAX,CAP`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Trees { min: usize, max: usize },
    Unicyclic { min: usize, max: usize },
    Bicyclic { min: usize, max: usize },
    Suns { t_max: usize, pendant_cap: usize },
}

/// An element of a generated family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Graph { graph: Graph, provenance: String },
    Sun(SunSpec),
}

impl FamilySpec {
    fn range(&self) -> Option<(usize, usize)> {
        match *self {
            FamilySpec::Trees { min, max }
            | FamilySpec::Unicyclic { min, max }
            | FamilySpec::Bicyclic { min, max } => Some((min, max)),
            FamilySpec::Suns { .. } => None,
        }
    }

    /// Validates the spec and returns its elements in deterministic order.
    pub fn subjects(&self) -> Result<Box<dyn Iterator<Item = Subject>>> {
        if let Some((min, max)) = self.range() {
            if min == 0 || min > max {
                return Err(Error::InvalidParameter(format!("bad size range {min}..{max}")));
            }
            if max > TREE_CAP {
                return Err(Error::CapExceeded { size: max, cap: TREE_CAP });
            }
        }
        let kind = self.kind();
        let tag = move |n: usize, graphs: Box<dyn Iterator<Item = Graph>>| {
            graphs.enumerate().map(move |(i, graph)| Subject::Graph {
                graph,
                provenance: format!("{kind} n={n} #{}", i + 1),
            })
        };
        Ok(match *self {
            FamilySpec::Trees { min, max } => Box::new((min..=max).flat_map(move |n| {
                tag(n, Box::new(free_trees(n).expect("range validated")))
            })),
            FamilySpec::Unicyclic { min, max } => Box::new((min..=max).flat_map(move |n| {
                tag(n, Box::new(unicyclic_from_trees(n).expect("range validated")))
            })),
            FamilySpec::Bicyclic { min, max } => Box::new((min..=max).flat_map(move |n| {
                tag(n, Box::new(bicyclic_from_unicyclic(n).expect("range validated")))
            })),
            FamilySpec::Suns { t_max, pendant_cap } => {
                Box::new(sun_grid(t_max, pendant_cap)?.map(Subject::Sun))
            }
        })
    }

    fn kind(&self) -> &'static str {
        match self {
            FamilySpec::Trees { .. } => "trees",
            FamilySpec::Unicyclic { .. } => "unicyclic",
            FamilySpec::Bicyclic { .. } => "bicyclic",
            FamilySpec::Suns { .. } => "suns",
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Suns { t_max, pendant_cap } => write!(f, "suns:{t_max},{pendant_cap}"),
            _ => {
                let (min, max) = self.range().expect("sized family");
                write!(f, "{}:{min}..{max}", self.kind())
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unrecognized family {s:?}"));
        let (kind, params) = s.split_once(':').ok_or_else(bad)?;
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        let range = || -> Result<(usize, usize)> {
            match params.split_once("..") {
                Some((a, b)) => Ok((num(a)?, num(b)?)),
                None => num(params).map(|n| (n, n)),
            }
        };
        match kind.trim() {
            "trees" => range().map(|(min, max)| FamilySpec::Trees { min, max }),
            "unicyclic" => range().map(|(min, max)| FamilySpec::Unicyclic { min, max }),
            "bicyclic" => range().map(|(min, max)| FamilySpec::Bicyclic { min, max }),
            "suns" => {
                let (t, cap) = params.split_once(',').ok_or_else(bad)?;
                Ok(FamilySpec::Suns {
                    t_max: num(t)?,
                    pendant_cap: num(cap)?,
                })
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{is_connected, is_tree};

    #[test]
    fn small_tree_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| free_trees(n).unwrap().count()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }

    #[test]
    fn four_vertex_trees() {
        let trees: Vec<Graph> = free_trees(4).unwrap().collect();
        let mut degs: Vec<Vec<usize>> = trees
            .iter()
            .map(|t| {
                let mut d = t.degrees();
                d.sort_unstable();
                d
            })
            .collect();
        degs.sort();
        assert_eq!(degs, vec![vec![1, 1, 1, 3], vec![1, 1, 2, 2]]);
        assert!(trees.iter().all(is_tree));
    }

    #[test]
    fn tree_caps() {
        assert!(matches!(free_trees(15), Err(Error::CapExceeded { size: 15, cap: 14 })));
        assert!(free_trees(0).is_err());
    }

    #[test]
    fn cyclic_families() {
        let uni: Vec<Graph> = unicyclic_from_trees(3).unwrap().collect();
        assert_eq!(uni, vec![Graph::cycle(3)]);
        for g in unicyclic_from_trees(4).unwrap() {
            assert_eq!(g.size(), 4);
            assert!(is_connected(&g));
        }
        for g in bicyclic_from_unicyclic(5).unwrap() {
            assert_eq!(g.size(), 6);
            assert!(is_connected(&g));
        }
        assert_eq!(unicyclic_from_trees(2).unwrap().count(), 0);
    }

    #[test]
    fn sun_grids() {
        assert_eq!(sun_grid(3, 1).unwrap().count(), 8);
        let ts: Vec<usize> = sun_grid(4, 0).unwrap().map(|s| s.t()).collect();
        assert_eq!(ts, vec![3, 4]);
        assert_eq!(sun_grid(5, 2).unwrap().count(), 27 + 81 + 243);
        let first: Vec<String> = sun_grid(3, 1).unwrap().take(3).map(|s| s.to_string()).collect();
        assert_eq!(first, vec!["3,[0,0,0]", "3,[0,0,1]", "3,[0,1,0]"]);
        assert!(sun_grid(2, 1).is_err());
    }

    #[test]
    fn graph6_streams() {
        let ok = "A_\nBg\n# comment\nD??\n";
        let items: Vec<_> = ingest_graph6(ok.as_bytes(), true).collect();
        assert_eq!(items.len(), 3);
        let lines: Vec<usize> = items.iter().map(|r| r.as_ref().unwrap().line).collect();
        assert_eq!(lines, vec![1, 2, 4]);

        let bad = "A_\nA`\nBg\n";
        let lenient: Vec<_> = ingest_graph6(bad.as_bytes(), false).collect();
        assert_eq!(lenient.len(), 3);
        assert_eq!(lenient[1].as_ref().unwrap_err().line, 2);
        assert_eq!(lenient.iter().filter(|r| r.is_ok()).count(), 2);
        let strict: Vec<_> = ingest_graph6(bad.as_bytes(), true).collect();
        assert_eq!(strict.len(), 2);
        assert!(strict[1].is_err());

        assert_eq!(ingest_graph6("".as_bytes(), true).count(), 0);
    }

    #[test]
    fn family_specs() {
        let f: FamilySpec = "trees:2..10".parse().unwrap();
        assert_eq!(f, FamilySpec::Trees { min: 2, max: 10 });
        assert_eq!(f.to_string(), "trees:2..10");
        assert_eq!(f.subjects().unwrap().count(), 1 + 1 + 2 + 3 + 6 + 11 + 23 + 47 + 106);
        let s: FamilySpec = "suns:8,2".parse().unwrap();
        assert_eq!(s.subjects().unwrap().count(), 9828);
        assert!("trees:0..3".parse::<FamilySpec>().unwrap().subjects().is_err());
        assert!("trees:2..20".parse::<FamilySpec>().unwrap().subjects().is_err());
        assert!("forests:2..3".parse::<FamilySpec>().is_err());
        assert_eq!(
            "unicyclic:5".parse::<FamilySpec>().unwrap(),
            FamilySpec::Unicyclic { min: 5, max: 5 }
        );
    }
}
