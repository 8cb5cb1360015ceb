//! Hardware coupling graphs, logical-to-physical mappings, and
//! breadth-first routing paths.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Undirected hardware adjacency over physical qudit indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingGraph {
    node_count: usize,
    /// Sorted neighbor lists; symmetric by construction.
    neighbors: Vec<Vec<usize>>,
}

impl CouplingGraph {
    pub fn new(node_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if node_count < 1 {
            return Err(Error::InvalidSpec("graph needs at least one node".into()));
        }
        let mut neighbors = vec![Vec::new(); node_count];
        for &(u, v) in edges {
            if u >= node_count || v >= node_count {
                return Err(Error::InvalidSpec(format!(
                    "edge ({u}, {v}) out of range for {node_count} nodes"
                )));
            }
            if u == v {
                return Err(Error::InvalidSpec(format!("self-loop on node {u}")));
            }
            if !neighbors[u].contains(&v) {
                neighbors[u].push(v);
                neighbors[v].push(u);
            }
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(CouplingGraph {
            node_count,
            neighbors,
        })
    }

    /// Path graph 0 - 1 - ... - (n-1).
    pub fn line(n: usize) -> Result<Self> {
        let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        CouplingGraph::new(n, &edges)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, list) in self.neighbors.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn adjacent(&self, u: usize, v: usize) -> Result<bool> {
        if u >= self.node_count || v >= self.node_count {
            return Err(Error::InvalidSpec(format!(
                "node ({u}, {v}) out of range for {} nodes",
                self.node_count
            )));
        }
        Ok(self.neighbors[u].contains(&v))
    }

    /// Minimum-length path from `u` to `v`. Ties are broken by expanding
    /// neighbors in ascending order, which yields the lexicographically
    /// smallest shortest path.
    pub fn shortest_path(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        if u >= self.node_count || v >= self.node_count {
            return Err(Error::InvalidSpec(format!(
                "node ({u}, {v}) out of range for {} nodes",
                self.node_count
            )));
        }
        if u == v {
            return Err(Error::InvalidSpec("path endpoints must differ".into()));
        }
        let mut parent = vec![usize::MAX; self.node_count];
        let mut queue = VecDeque::new();
        parent[u] = u;
        queue.push_back(u);
        while let Some(node) = queue.pop_front() {
            if node == v {
                break;
            }
            for &next in &self.neighbors[node] {
                if parent[next] == usize::MAX {
                    parent[next] = node;
                    queue.push_back(next);
                }
            }
        }
        if parent[v] == usize::MAX {
            return Err(Error::NoPath(u, v));
        }
        let mut path = vec![v];
        let mut node = v;
        while node != u {
            node = parent[node];
            path.push(node);
        }
        path.reverse();
        Ok(path)
    }
}

/// Bijection from logical wire indices to physical qudit indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mapping {
    logical_to_physical: Vec<usize>,
}

impl Mapping {
    pub fn identity(n: usize) -> Self {
        Mapping {
            logical_to_physical: (0..n).collect(),
        }
    }

    pub fn new(logical_to_physical: Vec<usize>) -> Result<Self> {
        let n = logical_to_physical.len();
        let mut seen = vec![false; n];
        for &p in &logical_to_physical {
            if p >= n || seen[p] {
                return Err(Error::InvalidSpec(
                    "mapping is not a bijection over [0, n)".into(),
                ));
            }
            seen[p] = true;
        }
        Ok(Mapping {
            logical_to_physical,
        })
    }

    pub fn len(&self) -> usize {
        self.logical_to_physical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.logical_to_physical.is_empty()
    }

    pub fn physical_of(&self, logical: usize) -> usize {
        self.logical_to_physical[logical]
    }

    pub fn logical_at(&self, physical: usize) -> usize {
        self.logical_to_physical
            .iter()
            .position(|&p| p == physical)
            .expect("mapping is a bijection")
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.logical_to_physical
    }

    /// Effect of a SWAP between two physical qudits: the logicals living
    /// there exchange places.
    pub fn swap_physical(&mut self, a: usize, b: usize) {
        let la = self.logical_at(a);
        let lb = self.logical_at(b);
        self.logical_to_physical.swap(la, lb);
    }
}
