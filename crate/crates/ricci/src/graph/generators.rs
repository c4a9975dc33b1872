//! Standard graph families.

use crate::error::{Error, Result};

use super::Graph;

/// Hypercube `Q_d`: vertices are bitmasks `0..2^d`, edges join masks at
/// Hamming distance 1.
pub fn hypercube(d: u32) -> Result<Graph> {
    if d == 0 {
        return Err(Error::Argument("hypercube dimension must be >= 1".into()));
    }
    if d > 20 {
        return Err(Error::Scale(format!("hypercube(2^{d}) vertices")));
    }
    let n = 1usize << d;
    let mut edges = Vec::with_capacity(d as usize * n / 2);
    for v in 0..n {
        for bit in 0..d {
            let u = v ^ (1 << bit);
            if v < u {
                edges.push((v, u));
            }
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Cycle `C_n`, `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Argument("cycle needs n >= 3".into()));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edge_list(n, &edges)
}

/// Path `P_n` on `n >= 1` vertices.
pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Argument("path needs n >= 1".into()));
    }
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edge_list(n, &edges)
}

/// Complete graph `K_n`, `n >= 1`.
pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Argument("complete graph needs n >= 1".into()));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Complete bipartite graph `K_{a,b}`; the first `a` vertices form one side.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(Error::Argument("both sides need at least one vertex".into()));
    }
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    Graph::from_edge_list(a + b, &edges)
}

/// Star `K_{1,leaves}` with the center at vertex 0.
pub fn star(leaves: usize) -> Result<Graph> {
    if leaves == 0 {
        return Err(Error::Argument("star needs at least one leaf".into()));
    }
    let edges: Vec<(usize, usize)> = (1..=leaves).map(|v| (0, v)).collect();
    Graph::from_edge_list(leaves + 1, &edges)
}

/// Cartesian product: `(u, a) ~ (v, a)` iff `uv` is an edge of `g`, and
/// `(u, a) ~ (u, b)` iff `ab` is an edge of `h`. Vertex `(u, a)` gets
/// index `u * |V(h)| + a`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    let (gn, hn) = (g.vertex_count(), h.vertex_count());
    let n = gn.checked_mul(hn).ok_or_else(|| {
        Error::Scale("cartesian product order overflows".into())
    })?;
    let mut edges = Vec::with_capacity(g.edge_count() * hn + h.edge_count() * gn);
    for (u, v) in g.edges() {
        for a in 0..hn {
            edges.push((u * hn + a, v * hn + a));
        }
    }
    for (a, b) in h.edges() {
        for u in 0..gn {
            edges.push((u * hn + a, u * hn + b));
        }
    }
    Graph::from_edge_list(n, &edges)
}
