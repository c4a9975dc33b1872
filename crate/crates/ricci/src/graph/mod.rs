//! Simple undirected graphs with cached BFS metric queries and the layer
//! decompositions used by the curvature bounds.

use std::sync::OnceLock;

use crate::error::{ConstructionReason, Error, Result};

mod enumerate;
mod generators;

pub use enumerate::{enumerate_small_connected, GraphFilter, MAX_ENUMERATION_VERTICES};
pub use generators::{
    cartesian_product, complete, complete_bipartite, cycle, hypercube, path, star,
};

/// Sentinel distance for unreachable pairs.
pub const UNREACHABLE: u32 = u32::MAX;

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are sorted and duplicate-free; BFS distance rows are
/// computed on first use and cached per root, so a `Graph` can be shared
/// across threads and queried freely.
#[derive(Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    m: usize,
    dist_rows: Vec<OnceLock<Vec<u32>>>,
    connected: OnceLock<bool>,
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        // Caches restart empty; they are cheap to refill and cloning them
        // would couple the copies' interior state.
        Graph::from_sorted_adjacency(self.n, self.adj.clone(), self.m)
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an explicit edge list, rejecting loops,
    /// duplicate edges and out-of-range endpoints.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Construction {
                    pair: (u, v),
                    reason: ConstructionReason::VertexOutOfRange { n },
                });
            }
            if u == v {
                return Err(Error::Construction {
                    pair: (u, v),
                    reason: ConstructionReason::SelfLoop,
                });
            }
            if adj[u].contains(&v) {
                return Err(Error::Construction {
                    pair: (u, v),
                    reason: ConstructionReason::DuplicateEdge,
                });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self::from_sorted_adjacency(n, adj, edges.len()))
    }

    pub(crate) fn from_sorted_adjacency(n: usize, adj: Vec<Vec<usize>>, m: usize) -> Self {
        debug_assert_eq!(adj.len(), n);
        debug_assert!(adj.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
        Graph {
            n,
            adj,
            m,
            dist_rows: (0..n).map(|_| OnceLock::new()).collect(),
            connected: OnceLock::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Lexicographically smallest vertex of minimum degree.
    pub fn min_degree_vertex(&self) -> usize {
        (0..self.n)
            .min_by_key(|&v| (self.degree(v), v))
            .expect("graph has at least one vertex")
    }

    pub fn is_connected(&self) -> bool {
        *self.connected.get_or_init(|| {
            self.n <= 1 || self.bfs_row(0).iter().all(|&d| d != UNREACHABLE)
        })
    }

    /// BFS distance row from `x`; `UNREACHABLE` marks disconnected pairs.
    /// Rows are computed once per root and cached.
    pub fn bfs_row(&self, x: usize) -> &[u32] {
        self.dist_rows[x].get_or_init(|| {
            let mut dist = vec![UNREACHABLE; self.n];
            let mut queue = std::collections::VecDeque::new();
            dist[x] = 0;
            queue.push_back(x);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if dist[v] == UNREACHABLE {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            dist
        })
    }

    /// Exact distances from `x` as `Option` per vertex.
    pub fn bfs_distances(&self, x: usize) -> Vec<Option<u32>> {
        self.bfs_row(x)
            .iter()
            .map(|&d| (d != UNREACHABLE).then_some(d))
            .collect()
    }

    /// Shortest-path distance, `None` when `u` and `v` are in different
    /// components.
    pub fn dist(&self, u: usize, v: usize) -> Option<u32> {
        let d = self.bfs_row(u)[v];
        (d != UNREACHABLE).then_some(d)
    }

    /// Materializes the full distance matrix.
    pub fn all_distances(&self) -> DistanceMatrix {
        let rows = (0..self.n).map(|x| self.bfs_row(x).to_vec()).collect();
        DistanceMatrix { n: self.n, rows }
    }

    pub fn diameter(&self) -> Result<u32> {
        if !self.is_connected() {
            return Err(Error::Disconnected("diameter is undefined".into()));
        }
        Ok((0..self.n)
            .flat_map(|x| self.bfs_row(x).iter().copied())
            .max()
            .unwrap_or(0))
    }

    /// A vertex pair realizing the diameter (lexicographically first).
    pub fn diameter_pair(&self) -> Result<(usize, usize, u32)> {
        let diam = self.diameter()?;
        for u in 0..self.n {
            let row = self.bfs_row(u);
            if let Some(v) = row.iter().position(|&d| d == diam) {
                return Ok((u, v, diam));
            }
        }
        Ok((0, 0, 0))
    }

    /// Proper 2-coloring if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color = vec![None; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in &self.adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Some triangle of the graph, if any.
    pub fn find_c3(&self) -> Option<[usize; 3]> {
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if v <= u {
                    continue;
                }
                // common neighbor of u and v above u closes a triangle;
                // any common neighbor shows one exists
                for &w in &self.adj[u] {
                    if w != v && self.has_edge(v, w) {
                        return Some([u, v, w]);
                    }
                }
            }
        }
        None
    }

    pub fn has_c3(&self) -> bool {
        self.find_c3().is_some()
    }

    /// Some 5-cycle (as a subgraph, not necessarily induced), if any.
    ///
    /// Ordered DFS: the anchor is the smallest vertex on the cycle, so
    /// every cycle is discovered from exactly one anchor.
    pub fn find_c5(&self) -> Option<[usize; 5]> {
        for anchor in 0..self.n {
            let mut stack = [anchor; 5];
            if self.dfs_c5(anchor, anchor, 1, &mut stack) {
                return Some(stack);
            }
        }
        None
    }

    fn dfs_c5(&self, anchor: usize, current: usize, depth: usize, stack: &mut [usize; 5]) -> bool {
        if depth == 5 {
            return self.has_edge(current, anchor);
        }
        for &next in &self.adj[current] {
            if next <= anchor || stack[..depth].contains(&next) {
                continue;
            }
            stack[depth] = next;
            if self.dfs_c5(anchor, next, depth + 1, stack) {
                return true;
            }
        }
        false
    }

    pub fn has_c5(&self) -> bool {
        self.find_c5().is_some()
    }

    /// Partition of `N(y)` by distance from the root `x`.
    pub fn layer_partition(&self, x: usize, y: usize) -> Result<LayerPartition> {
        if x == y {
            return Err(Error::Argument("layer partition needs x != y".into()));
        }
        let row = self.bfs_row(x);
        if row[y] == UNREACHABLE {
            return Err(Error::Disconnected(format!(
                "no path from {x} to {y}"
            )));
        }
        let dy = row[y];
        let mut partition = LayerPartition {
            root: x,
            target: y,
            gamma_minus: Vec::new(),
            gamma_zero: Vec::new(),
            gamma_plus: Vec::new(),
        };
        for &u in &self.adj[y] {
            debug_assert!(row[u] + 1 >= dy && row[u] <= dy + 1);
            if row[u] + 1 == dy {
                partition.gamma_minus.push(u);
            } else if row[u] == dy {
                partition.gamma_zero.push(u);
            } else {
                partition.gamma_plus.push(u);
            }
        }
        Ok(partition)
    }

    /// BFS layers from `x` with per-layer cross/flat edge counts.
    pub fn layer_edge_profile(&self, x: usize) -> Result<LayerEdgeProfile> {
        if !self.is_connected() {
            return Err(Error::Disconnected("layer profile needs all layers".into()));
        }
        let row = self.bfs_row(x);
        let depth = *row.iter().max().unwrap() as usize;
        let mut layers: Vec<Vec<usize>> = vec![Vec::new(); depth + 1];
        for v in 0..self.n {
            layers[row[v] as usize].push(v);
        }
        let mut e_cross = vec![0usize; depth];
        let mut e_flat = vec![0usize; depth + 1];
        for (u, v) in self.edges() {
            let (du, dv) = (row[u] as usize, row[v] as usize);
            if du == dv {
                e_flat[du] += 1;
            } else {
                e_cross[du.min(dv)] += 1;
            }
        }
        Ok(LayerEdgeProfile {
            root: x,
            layers,
            e_cross,
            e_flat,
        })
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::Argument("permutation length mismatch".into()));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(Error::Argument("not a permutation".into()));
            }
            seen[p] = true;
        }
        let edges: Vec<(usize, usize)> = self
            .edges()
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::from_edge_list(self.n, &edges)
    }
}

/// All-pairs shortest path distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    rows: Vec<Vec<u32>>,
}

impl DistanceMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        let d = self.rows[u][v];
        (d != UNREACHABLE).then_some(d)
    }
}

/// `(Gamma^-, Gamma^0, Gamma^+)` of a target vertex relative to a root:
/// neighbors of the target that are closer to, equidistant from, or
/// farther from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerPartition {
    pub root: usize,
    pub target: usize,
    pub gamma_minus: Vec<usize>,
    pub gamma_zero: Vec<usize>,
    pub gamma_plus: Vec<usize>,
}

impl LayerPartition {
    pub fn degree(&self) -> usize {
        self.gamma_minus.len() + self.gamma_zero.len() + self.gamma_plus.len()
    }
}

/// BFS layers `N_i(x)` together with the inter-layer edge counts
/// `e_cross[i] = |E_{i,i+1}|` and intra-layer counts `e_flat[i] = |E_{i,i}|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerEdgeProfile {
    pub root: usize,
    pub layers: Vec<Vec<usize>>,
    pub e_cross: Vec<usize>,
    pub e_flat: Vec<usize>,
}

impl LayerEdgeProfile {
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn cross(&self, i: usize) -> usize {
        self.e_cross.get(i).copied().unwrap_or(0)
    }

    pub fn flat(&self, i: usize) -> usize {
        self.e_flat.get(i).copied().unwrap_or(0)
    }
}
