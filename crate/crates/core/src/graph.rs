//! Labeled simple undirected graphs.
//!
//! Vertices are the contiguous indices `0..order`. Neighbor lists are kept
//! sorted, so two graphs with the same edge set and labels compare equal.

use serde::Serialize;

use crate::error::{Error, Result};

/// Provenance tag of a vertex produced by a transform.
///
/// Indices refer to vertices of the source graph the transform was applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Label {
    Vertex { id: usize },
    Edge { u: usize, v: usize },
}

impl Label {
    pub fn edge(u: usize, v: usize) -> Self {
        let (u, v) = normalize(u, v);
        Label::Edge { u, v }
    }
}

/// Simple undirected graph with optional per-vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<Label>>,
}

/// Old-to-new index bookkeeping for vertex deletion and induced subgraphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    old_to_new: Vec<Option<usize>>,
    new_to_old: Vec<usize>,
}

impl VertexMap {
    pub fn new_index(&self, old: usize) -> Option<usize> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn old_index(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    /// Surviving vertices of the original graph, in new-index order.
    pub fn survivors(&self) -> &[usize] {
        &self.new_to_old
    }
}

pub(crate) fn normalize(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); order],
            labels: None,
        }
    }

    /// Builds a graph from an edge list. Repeated edges are merged.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(order);
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn path(order: usize) -> Self {
        let edges: Vec<_> = (1..order).map(|i| (i - 1, i)).collect();
        Graph::from_edges(order, &edges).expect("path edges are valid")
    }

    /// Cycle on `order` vertices; orders below 3 give a path.
    pub fn cycle(order: usize) -> Self {
        let mut g = Graph::path(order);
        if order >= 3 {
            g.insert_edge(0, order - 1).expect("cycle edge is valid");
        }
        g
    }

    pub fn complete(order: usize) -> Self {
        let mut g = Graph::empty(order);
        for v in 0..order {
            g.adj[v] = (0..order).filter(|&u| u != v).collect();
        }
        g
    }

    /// The star K_{1,leaves} with center 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star edges are valid")
    }

    /// Disjoint union; vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|ns| ns.iter().map(|&u| u + shift).collect()),
        );
        Graph { adj, labels: None }
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(true)
            }
        }
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let pos = self.adj[u]
            .binary_search(&v)
            .map_err(|_| Error::MissingEdge(u.min(v), u.max(v)))?;
        self.adj[u].remove(pos);
        let pos = self.adj[v].binary_search(&u).expect("symmetric adjacency");
        self.adj[v].remove(pos);
        Ok(())
    }

    /// Attaches labels, one per vertex.
    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != self.order() {
            return Err(Error::InvalidParameter(format!(
                "{} labels for a graph of order {}",
                labels.len(),
                self.order()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<Label> {
        self.labels.as_ref().map(|ls| ls[v])
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as normalized pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(Vec::is_empty)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    /// Adjacency rows as 64-bit masks, or `None` above 64 vertices.
    pub fn bit_rows(&self) -> Option<Vec<u64>> {
        if self.order() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|ns| ns.iter().fold(0u64, |m, &u| m | (1u64 << u)))
                .collect(),
        )
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    /// Subgraph induced by `keep` (any order, duplicates ignored).
    pub fn induced(&self, keep: &[usize]) -> Result<(Graph, VertexMap)> {
        let mut mask = vec![false; self.order()];
        for &v in keep {
            self.check_vertex(v)?;
            mask[v] = true;
        }
        Ok(self.restrict(&mask))
    }

    /// `G - W`: deletes the vertices in `w` and their incident edges.
    pub fn delete_vertices(&self, w: &[usize]) -> Result<(Graph, VertexMap)> {
        let mut mask = vec![true; self.order()];
        for &v in w {
            self.check_vertex(v)?;
            mask[v] = false;
        }
        Ok(self.restrict(&mask))
    }

    pub fn delete_vertex(&self, x: usize) -> Result<(Graph, VertexMap)> {
        self.delete_vertices(&[x])
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.remove_edge(u, v)?;
        Ok(g)
    }

    pub(crate) fn restrict(&self, mask: &[bool]) -> (Graph, VertexMap) {
        let mut old_to_new = vec![None; self.order()];
        let mut new_to_old = Vec::new();
        for (v, &kept) in mask.iter().enumerate() {
            if kept {
                old_to_new[v] = Some(new_to_old.len());
                new_to_old.push(v);
            }
        }
        let adj = new_to_old
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&u| old_to_new[u])
                    .collect::<Vec<_>>()
            })
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|ls| new_to_old.iter().map(|&v| ls[v]).collect());
        (
            Graph { adj, labels },
            VertexMap {
                old_to_new,
                new_to_old,
            },
        )
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        let mut queue = std::collections::VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].expect("queued vertices have a distance");
            for &u in &self.adj[v] {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Same edge set as `other`, ignoring labels.
    pub fn same_edges(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graphs() {
        assert_eq!(Graph::cycle(5).size(), 5);
        assert_eq!(Graph::complete(5).size(), 10);
        assert_eq!(Graph::star(3).degrees(), vec![3, 1, 1, 1]);
        assert_eq!(Graph::path(1).size(), 0);
        assert_eq!(Graph::empty(0).order(), 0);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, order: 2 })
        );
        assert_eq!(Graph::from_edges(2, &[(1, 1)]), Err(Error::SelfLoop(1)));
    }

    #[test]
    fn delete_vertex_from_triangle() {
        let (h, map) = Graph::cycle(3).delete_vertices(&[0]).unwrap();
        assert_eq!(h, Graph::complete(2));
        assert_eq!(map.new_index(0), None);
        assert_eq!(map.new_index(2), Some(1));
        assert_eq!(map.old_index(0), 1);
    }

    #[test]
    fn delete_edge_from_c4() {
        let h = Graph::cycle(4).delete_edge(0, 1).unwrap();
        // 1-2-3-0 is a path on four vertices.
        assert_eq!(h.size(), 3);
        assert_eq!(h.degrees(), vec![1, 1, 2, 2]);
        assert_eq!(
            Graph::cycle(4).delete_edge(0, 2),
            Err(Error::MissingEdge(0, 2))
        );
    }

    #[test]
    fn induced_k3_in_k4() {
        let (h, _) = Graph::complete(4).induced(&[0, 1, 2]).unwrap();
        assert_eq!(h, Graph::complete(3));
        assert!(Graph::complete(4).induced(&[7]).is_err());
    }

    #[test]
    fn labels_follow_deletion() {
        let g = Graph::path(3)
            .with_labels((0..3).map(|id| Label::Vertex { id }).collect())
            .unwrap();
        let (h, _) = g.delete_vertex(1).unwrap();
        assert_eq!(
            h.labels().unwrap(),
            &[Label::Vertex { id: 0 }, Label::Vertex { id: 2 }]
        );
    }

    #[test]
    fn distances_across_components() {
        let g = Graph::path(3).disjoint_union(&Graph::complete(2));
        assert_eq!(g.distances_from(0), vec![Some(0), Some(1), Some(2), None, None]);
    }
}
