//! Undirected labeled graphs on vertices `1..=N`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{invalid, Result};

/// Records how a complete bipartite graph was laid out.
///
/// The smaller part (size `n`) carries the labels `1..=n`, the larger part
/// (size `m`) the labels `n+1..=n+m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub small: Vec<usize>,
    pub large: Vec<usize>,
    /// True when the caller passed the part sizes as `(m, n)` with `n > m`.
    pub swapped: bool,
}

impl Bipartition {
    pub fn m(&self) -> usize {
        self.large.len()
    }

    pub fn n(&self) -> usize {
        self.small.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<usize>,
    edges: BTreeSet<(usize, usize)>,
    partition: Option<Bipartition>,
}

impl Graph {
    /// Graph on `1..=num_vertices` with the given edges. Pairs may come in
    /// either orientation; repeated pairs are rejected.
    pub fn from_edges(num_vertices: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == b {
                return invalid(format!("self-loop at vertex {a}"));
            }
            if a == 0 || b == 0 || a > num_vertices || b > num_vertices {
                return invalid(format!("edge {{{a},{b}}} outside 1..={num_vertices}"));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return invalid(format!("duplicate edge {{{a},{b}}}"));
            }
        }
        Ok(Graph {
            vertices: (1..=num_vertices).collect(),
            edges: set,
            partition: None,
        })
    }

    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Largest label in use, i.e. the `N` of the ambient ring `K[x_1..x_N, y_1..y_N]`.
    pub fn label_bound(&self) -> usize {
        self.vertices.last().copied().unwrap_or(0)
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn partition(&self) -> Option<&Bipartition> {
        self.partition.as_ref()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Induced subgraph on the vertices not in `removed`; labels are kept.
    pub fn delete_vertices(&self, removed: &BTreeSet<usize>) -> Result<Graph> {
        if let Some(bad) = removed.iter().find(|v| !self.vertices.contains(v)) {
            return invalid(format!("vertex {bad} is not in the graph"));
        }
        if removed.is_empty() {
            return Ok(self.clone());
        }
        Ok(Graph {
            vertices: self.vertices.difference(removed).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|(a, b)| !removed.contains(a) && !removed.contains(b))
                .copied()
                .collect(),
            partition: None,
        })
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<BTreeSet<usize>> {
        let mut adj: BTreeMap<usize, Vec<usize>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in &self.edges {
            adj.get_mut(&a).expect("edge endpoint").push(b);
            adj.get_mut(&b).expect("edge endpoint").push(a);
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &w in &adj[&v] {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Neighbourhood bitmasks indexed by `label - 1`. Only defined for
    /// graphs whose labels fit in a `u64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        let n = self.label_bound();
        assert!(n <= 64, "bitmask view needs at most 64 labels");
        let mut masks = vec![0u64; n];
        for &(a, b) in &self.edges {
            masks[a - 1] |= 1 << (b - 1);
            masks[b - 1] |= 1 << (a - 1);
        }
        masks
    }
}

/// `K_{m,n}` with the smaller part on labels `1..=n` and the larger on
/// `n+1..=n+m`. Arguments with `n > m` are swapped and the swap recorded.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m == 0 || n == 0 {
        return invalid(format!("part sizes must be positive, got ({m}, {n})"));
    }
    let swapped = n > m;
    let (m, n) = if swapped { (n, m) } else { (m, n) };
    let small: Vec<usize> = (1..=n).collect();
    let large: Vec<usize> = (n + 1..=n + m).collect();
    let edges = small
        .iter()
        .flat_map(|&a| large.iter().map(move |&b| (a, b)))
        .collect();
    Ok(Graph {
        vertices: (1..=n + m).collect(),
        edges,
        partition: Some(Bipartition {
            small,
            large,
            swapped,
        }),
    })
}

pub fn complete_graph(r: usize) -> Result<Graph> {
    if r == 0 {
        return invalid("complete graph needs at least one vertex");
    }
    let edges = (1..=r)
        .flat_map(|a| (a + 1..=r).map(move |b| (a, b)))
        .collect();
    Ok(Graph {
        vertices: (1..=r).collect(),
        edges,
        partition: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn bipartite_constructor() {
        let g = complete_bipartite(1, 1).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.edges().iter().copied().collect::<Vec<_>>(), vec![(1, 2)]);

        let g = complete_bipartite(3, 2).unwrap();
        assert_eq!(g.num_vertices(), 5);
        assert_eq!(g.edges().len(), 6);
        let p = g.partition().unwrap();
        assert_eq!(p.small, vec![1, 2]);
        assert_eq!(p.large, vec![3, 4, 5]);
        assert!(!p.swapped);

        let h = complete_bipartite(2, 3).unwrap();
        assert_eq!(h.edges(), g.edges());
        assert!(h.partition().unwrap().swapped);

        assert!(complete_bipartite(0, 3).is_err());
        assert!(complete_bipartite(2, 0).is_err());
    }

    #[test]
    fn complete_graph_edges() {
        assert_eq!(complete_graph(2).unwrap().edges().len(), 1);
        assert_eq!(complete_graph(4).unwrap().edges().len(), 6);
        assert_eq!(complete_graph(1).unwrap().edges().len(), 0);
        assert!(complete_graph(0).is_err());
    }

    #[test]
    fn deletion_and_components() {
        let g = complete_bipartite(2, 2).unwrap();
        assert_eq!(g.connected_components(), vec![set(&[1, 2, 3, 4])]);
        let h = g.delete_vertices(&set(&[1, 2])).unwrap();
        assert_eq!(h.connected_components(), vec![set(&[3]), set(&[4])]);
        assert!(h.edges().is_empty());

        let star = complete_bipartite(3, 1).unwrap();
        let leaves = star.delete_vertices(&set(&[1])).unwrap();
        assert_eq!(leaves.connected_components().len(), 3);

        assert_eq!(g.delete_vertices(&BTreeSet::new()).unwrap(), g);
        assert!(g.delete_vertices(&set(&[7])).is_err());

        let empty = Graph::from_edges(0, &[]).unwrap();
        assert!(empty.connected_components().is_empty());
    }

    #[test]
    fn deleting_a_part_leaves_the_other_part_isolated() {
        for m in 1..=6 {
            for n in 1..=m {
                let g = complete_bipartite(m, n).unwrap();
                let p = g.partition().unwrap().clone();
                let small: BTreeSet<usize> = p.small.iter().copied().collect();
                let large: BTreeSet<usize> = p.large.iter().copied().collect();
                assert_eq!(g.delete_vertices(&small).unwrap().connected_components().len(), m);
                assert_eq!(g.delete_vertices(&large).unwrap().connected_components().len(), n);
            }
        }
    }

    #[test]
    fn bad_edges_rejected() {
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 4)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 2), (2, 1)]).is_err());
    }

    proptest! {
        #[test]
        fn components_partition_the_vertices(
            n in 0usize..12,
            raw in proptest::collection::vec((1usize..12, 1usize..12), 0..30),
        ) {
            let edges: BTreeSet<(usize, usize)> = raw
                .into_iter()
                .filter(|&(a, b)| a != b && a <= n && b <= n)
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            let edges: Vec<_> = edges.into_iter().collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            let comps = g.connected_components();
            let mut union = BTreeSet::new();
            for c in &comps {
                for v in c {
                    prop_assert!(union.insert(*v), "vertex {} in two components", v);
                }
            }
            prop_assert_eq!(&union, g.vertices());
            for &(a, b) in g.edges() {
                prop_assert!(comps.iter().any(|c| c.contains(&a) && c.contains(&b)));
            }
            let leads: Vec<usize> = comps.iter().map(|c| *c.first().unwrap()).collect();
            let mut sorted = leads.clone();
            sorted.sort();
            prop_assert_eq!(leads, sorted);
        }
    }
}
