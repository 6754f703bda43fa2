//! Structural queries: components, cut vertices, degree statistics and
//! cycle attachment counts.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Summary of the structural quantities used by the line-graph arguments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StructureSummary {
    pub component_count: usize,
    pub cut_vertices: Vec<usize>,
    pub degree_sequence: Vec<usize>,
    /// Edges with at least one endpoint of degree greater than two.
    pub theta: usize,
    /// Cyclomatic number `|E| - |V| + 1` of each component, in component order.
    pub dimensions: Vec<usize>,
}

impl StructureSummary {
    /// Cyclomatic number of a connected graph; `None` when disconnected.
    pub fn dimension(&self) -> Option<usize> {
        match self.dimensions.as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                    stack.push(u);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    components(g).len() <= 1
}

/// Connected with `|E| = |V| - 1`. The empty graph is not a tree.
pub fn is_tree(g: &Graph) -> bool {
    g.order() >= 1 && g.size() + 1 == g.order() && is_connected(g)
}

pub fn is_bipartite(g: &Graph) -> bool {
    let mut side: Vec<Option<bool>> = vec![None; g.order()];
    for root in 0..g.order() {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let sv = side[v].expect("visited");
            for &u in g.neighbors(v) {
                match side[u] {
                    None => {
                        side[u] = Some(!sv);
                        stack.push(u);
                    }
                    Some(su) if su == sv => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Articulation points (iterative Tarjan low-link), sorted.
pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbor position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, parent, pos) = *top;
            if let Some(&u) = g.neighbors(v).get(pos) {
                top.2 += 1;
                if disc[u] == usize::MAX {
                    disc[u] = timer;
                    low[u] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((u, v, 0));
                } else if u != parent {
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

pub fn structure(g: &Graph) -> StructureSummary {
    let degrees = g.degrees();
    let theta = g
        .edges()
        .filter(|&(u, v)| degrees[u] > 2 || degrees[v] > 2)
        .count();
    let comps = components(g);
    let dimensions = comps
        .iter()
        .map(|comp| {
            let edges: usize = comp.iter().map(|&v| degrees[v]).sum::<usize>() / 2;
            edges + 1 - comp.len()
        })
        .collect();
    let mut degree_sequence = degrees;
    degree_sequence.sort_unstable_by(|a, b| b.cmp(a));
    StructureSummary {
        component_count: comps.len(),
        cut_vertices: cut_vertices(g),
        degree_sequence,
        theta,
        dimensions,
    }
}

/// Number of edges joining the chordless cycle on `cycle` to the rest of `g`.
pub fn cycle_type(g: &Graph, cycle: &[usize]) -> Result<usize> {
    let mut inside = vec![false; g.order()];
    for &v in cycle {
        g.check_vertex(v)?;
        inside[v] = true;
    }
    let members: Vec<usize> = (0..g.order()).filter(|&v| inside[v]).collect();
    let (c, _) = g.induced(&members)?;
    let two_regular = (0..c.order()).all(|v| c.degree(v) == 2);
    if members.len() < 3 || !two_regular || !is_connected(&c) {
        return Err(Error::NotACycle);
    }
    Ok(members
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&u| !inside[u]).count())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph6::from_graph6;

    #[test]
    fn two_triangles() {
        let g = Graph::cycle(3).disjoint_union(&Graph::cycle(3));
        assert_eq!(components(&g), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn cut_vertices_of_small_graphs() {
        assert_eq!(cut_vertices(&Graph::path(3)), vec![1]);
        assert!(cut_vertices(&Graph::cycle(5)).is_empty());
        assert_eq!(cut_vertices(&Graph::path(5)), vec![1, 2, 3]);
        let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(cut_vertices(&bowtie), vec![2]);
    }

    #[test]
    fn summaries() {
        assert_eq!(structure(&Graph::star(3)).theta, 3);
        assert_eq!(structure(&Graph::path(6)).dimension(), Some(0));
        let mut c6_chord = Graph::cycle(6);
        c6_chord.insert_edge(0, 3).unwrap();
        let s = structure(&c6_chord);
        assert_eq!(s.dimension(), Some(2));
        assert_eq!(s.degree_sequence, vec![3, 3, 2, 2, 2, 2]);
        let split = structure(&Graph::cycle(3).disjoint_union(&Graph::path(2)));
        assert_eq!(split.dimensions, vec![1, 0]);
        assert_eq!(split.dimension(), None);
    }

    #[test]
    fn trees_and_bipartiteness() {
        assert!(is_tree(&Graph::star(4)));
        assert!(is_tree(&Graph::empty(1)));
        assert!(!is_tree(&Graph::empty(0)));
        assert!(!is_tree(&Graph::empty(2)));
        assert!(is_bipartite(&Graph::cycle(6)));
        assert!(!is_bipartite(&Graph::cycle(7)));
        assert!(is_bipartite(&from_graph6("D??").unwrap()));
    }

    #[test]
    fn cycle_types() {
        assert_eq!(cycle_type(&Graph::cycle(5), &[0, 1, 2, 3, 4]), Ok(0));
        let paw = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(cycle_type(&paw, &[0, 1, 2]), Ok(1));
        // C4 with pendants at the first two cycle vertices.
        let sun = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 5)]).unwrap();
        assert_eq!(cycle_type(&sun, &[0, 1, 2, 3]), Ok(2));
        assert_eq!(cycle_type(&Graph::complete(4), &[0, 1, 2, 3]), Err(Error::NotACycle));
        assert_eq!(cycle_type(&Graph::path(3), &[0, 1, 2]), Err(Error::NotACycle));
    }
}
