//! Derived graphs: line graphs, powers, subdivisions, total graphs, sun
//! graphs, and the contraction of induced paths of four degree-2 vertices.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};

/// Line graph. Vertex `i` is the `i`-th edge of `g` in lexicographic order
/// and carries that edge as its label.
pub fn line_graph(g: &Graph) -> Graph {
    let edges: Vec<_> = g.edges().collect();
    let mut incident = vec![Vec::new(); g.order()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut l = Graph::empty(edges.len());
    for star in &incident {
        for (a, &e) in star.iter().enumerate() {
            for &f in &star[a + 1..] {
                l.insert_edge(e, f).expect("edge indices are in range");
            }
        }
    }
    let labels = edges.iter().map(|&(u, v)| Label::edge(u, v)).collect();
    l.with_labels(labels).expect("one label per edge")
}

/// `g^k`: joins every pair at distance at most `k`. Labels are preserved.
pub fn power(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParameter("graph power exponent must be at least 1".into()));
    }
    let mut p = Graph::empty(g.order());
    for v in 0..g.order() {
        let dist = bounded_bfs(g, v, k);
        for (u, d) in dist.into_iter().enumerate() {
            if u > v && d.is_some_and(|d| d >= 1) {
                p.insert_edge(v, u)?;
            }
        }
    }
    match g.labels() {
        Some(ls) => p.with_labels(ls.to_vec()),
        None => Ok(p),
    }
}

fn bounded_bfs(g: &Graph, source: usize, limit: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.order()];
    dist[source] = Some(0);
    let mut frontier = vec![source];
    for d in 1..=limit {
        let mut next = Vec::new();
        for v in frontier {
            for &u in g.neighbors(v) {
                if dist[u].is_none() {
                    dist[u] = Some(d);
                    next.push(u);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    dist
}

fn vertex_and_edge_labels(g: &Graph, edges: &[(usize, usize)]) -> Vec<Label> {
    (0..g.order())
        .map(|id| Label::Vertex { id })
        .chain(edges.iter().map(|&(u, v)| Label::edge(u, v)))
        .collect()
}

/// Subdivision `S(g)`: original vertices keep their indices, and the
/// midpoint of the `i`-th edge (lexicographic) is vertex `order + i`.
pub fn subdivision(g: &Graph) -> Graph {
    let n = g.order();
    let edges: Vec<_> = g.edges().collect();
    let mut s = Graph::empty(n + edges.len());
    for (i, &(u, v)) in edges.iter().enumerate() {
        s.insert_edge(u, n + i).expect("valid subdivision edge");
        s.insert_edge(v, n + i).expect("valid subdivision edge");
    }
    let labels = vertex_and_edge_labels(g, &edges);
    s.with_labels(labels).expect("one label per vertex")
}

/// Total graph, built from adjacency and incidence in `g`. Uses the same
/// vertex order and labels as [`subdivision`].
pub fn total_graph(g: &Graph) -> Graph {
    let n = g.order();
    let edges: Vec<_> = g.edges().collect();
    let mut t = Graph::empty(n + edges.len());
    for &(u, v) in &edges {
        t.insert_edge(u, v).expect("valid edge");
    }
    let mut incident = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        t.insert_edge(u, n + i).expect("valid incidence");
        t.insert_edge(v, n + i).expect("valid incidence");
        incident[u].push(n + i);
        incident[v].push(n + i);
    }
    for star in &incident {
        for (a, &e) in star.iter().enumerate() {
            for &f in &star[a + 1..] {
                t.insert_edge(e, f).expect("valid edge adjacency");
            }
        }
    }
    let labels = vertex_and_edge_labels(g, &edges);
    t.with_labels(labels).expect("one label per vertex")
}

/// A cycle `C_t` with `pendants[i]` pendant edges hanging off cycle vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SunSpec {
    pendants: Vec<usize>,
}

impl SunSpec {
    pub fn new(pendants: Vec<usize>) -> Result<Self> {
        if pendants.len() < 3 {
            return Err(Error::InvalidSun(format!(
                "cycle length {} is below 3",
                pendants.len()
            )));
        }
        Ok(SunSpec { pendants })
    }

    /// Cycle length.
    pub fn t(&self) -> usize {
        self.pendants.len()
    }

    pub fn pendants(&self) -> &[usize] {
        &self.pendants
    }

    /// Number of cycle vertices carrying at least one pendant edge.
    pub fn loaded(&self) -> usize {
        self.pendants.iter().filter(|&&p| p > 0).count()
    }
}

impl fmt::Display for SunSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.pendants.iter().map(ToString::to_string).collect();
        write!(f, "{},[{}]", self.t(), body.join(","))
    }
}

impl FromStr for SunSpec {
    type Err = Error;

    /// Parses `t,[n1,...,nt]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidSun(format!("{why} in {s:?}"));
        let (t, list) = s.split_once(',').ok_or_else(|| bad("missing ','"))?;
        let t: usize = t.trim().parse().map_err(|_| bad("bad cycle length"))?;
        let list = list
            .trim()
            .strip_prefix('[')
            .and_then(|l| l.strip_suffix(']'))
            .ok_or_else(|| bad("pendant list must be bracketed"))?;
        let pendants = list
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad("bad pendant count"))?;
        if pendants.len() != t {
            return Err(bad("pendant list length differs from cycle length"));
        }
        SunSpec::new(pendants)
    }
}

/// Sun graph: cycle vertices `0..t` first, then pendant vertices grouped
/// by anchor in cycle order.
pub fn sun(spec: &SunSpec) -> Graph {
    let t = spec.t();
    let total = t + spec.pendants.iter().sum::<usize>();
    let mut g = Graph::cycle(t);
    let mut adj_edges = Vec::with_capacity(total - t);
    let mut next = t;
    for (anchor, &count) in spec.pendants.iter().enumerate() {
        for _ in 0..count {
            adj_edges.push((anchor, next));
            next += 1;
        }
    }
    g = g.disjoint_union(&Graph::empty(total - t));
    for (a, p) in adj_edges {
        g.insert_edge(a, p).expect("valid pendant edge");
    }
    g
}

/// An induced path of four degree-2 vertices and the two vertices
/// attached to its ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ContractionSite {
    pub inner: [usize; 4],
    pub anchors: (usize, usize),
}

impl ContractionSite {
    fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |why: String| Err(Error::InvalidSite(why));
        let [a, b, c, d] = self.inner;
        let (u, w) = self.anchors;
        for v in [a, b, c, d, u, w] {
            g.check_vertex(v)?;
        }
        if let Some(&v) = self.inner.iter().find(|&&v| g.degree(v) != 2) {
            return bad(format!("inner vertex {v} does not have degree 2"));
        }
        if !(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d)) {
            return bad("inner vertices are not consecutive".into());
        }
        if !(g.has_edge(u, a) && g.has_edge(w, d)) {
            return bad("anchors are not attached to the path ends".into());
        }
        if self.inner.contains(&u) || self.inner.contains(&w) {
            return bad("anchor lies on the inner path".into());
        }
        if u == w {
            return bad(format!("both ends attach to vertex {u}"));
        }
        if g.has_edge(u, w) {
            return bad(format!("anchors {u} and {w} are already adjacent"));
        }
        Ok(())
    }
}

/// All admissible sites, each in the orientation with the smaller inner
/// tuple, sorted by inner tuple.
pub fn find_contraction_sites(g: &Graph) -> Vec<ContractionSite> {
    let other = |v: usize, not: usize| -> usize {
        let ns = g.neighbors(v);
        if ns[0] == not {
            ns[1]
        } else {
            ns[0]
        }
    };
    let mut sites = Vec::new();
    for a in 0..g.order() {
        if g.degree(a) != 2 {
            continue;
        }
        for &b in g.neighbors(a) {
            if g.degree(b) != 2 {
                continue;
            }
            let c = other(b, a);
            if c == a || g.degree(c) != 2 {
                continue;
            }
            let d = other(c, b);
            if d == a || d == b || g.degree(d) != 2 || a > d {
                continue;
            }
            let site = ContractionSite {
                inner: [a, b, c, d],
                anchors: (other(a, b), other(d, c)),
            };
            if site.validate(g).is_ok() {
                sites.push(site);
            }
        }
    }
    sites.sort_unstable();
    sites
}

/// Replaces the inner path of `site` by a single edge between its anchors.
pub fn contract_path4(g: &Graph, site: &ContractionSite) -> Result<Graph> {
    site.validate(g)?;
    let (mut h, map) = g.delete_vertices(&site.inner)?;
    let u = map.new_index(site.anchors.0).expect("anchor survives");
    let w = map.new_index(site.anchors.1).expect("anchor survives");
    h.insert_edge(u, w)?;
    Ok(h)
}

/// Fixed point of repeated contraction at the first admissible site.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub graph: Graph,
    pub steps: usize,
}

pub fn reduce_fully(g: &Graph) -> Reduction {
    let mut graph = g.clone();
    let mut steps = 0;
    while let Some(site) = find_contraction_sites(&graph).first().copied() {
        graph = contract_path4(&graph, &site).expect("found sites are admissible");
        steps += 1;
    }
    Reduction { graph, steps }
}
