//! Inductive hypercube reconstruction.
//!
//! A candidate on `2^d` vertices is labeled layer by layer from a root:
//! the root gets the empty set, its neighbors the singletons, and every
//! vertex at distance `i` the union of the labels of its `i` neighbors
//! one layer down. The construction fails fast with the offending vertex;
//! success is certified by a full adjacency-vs-symmetric-difference scan.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Bijective labeling of a hypercube's vertices by subsets of the
/// coordinate set, as bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypercubeLabeling {
    pub dimension: u32,
    pub root: usize,
    /// `labels[v]` is the subset assigned to vertex `v`.
    pub labels: Vec<u32>,
}

impl HypercubeLabeling {
    /// Full certification: labels are a bijection onto all subsets and
    /// adjacency matches symmetric difference of size one.
    pub fn verify(&self, g: &Graph) -> bool {
        let n = g.vertex_count();
        if self.labels.len() != n || n != 1usize << self.dimension {
            return false;
        }
        let mut seen = vec![false; n];
        for &label in &self.labels {
            if label as usize >= n || seen[label as usize] {
                return false;
            }
            seen[label as usize] = true;
        }
        if self.labels[self.root] != 0 {
            return false;
        }
        for u in 0..n {
            for v in (u + 1)..n {
                let adjacent = g.has_edge(u, v);
                let unit = (self.labels[u] ^ self.labels[v]).count_ones() == 1;
                if adjacent != unit {
                    return false;
                }
            }
        }
        true
    }
}

/// Reconstructs the subset labeling of a hypercube candidate, rooted at
/// vertex 0.
pub fn hypercube_labeling(g: &Graph) -> Result<HypercubeLabeling> {
    let n = g.vertex_count();
    if !n.is_power_of_two() {
        return Err(Error::NotHypercube {
            vertex: None,
            reason: format!("|V| = {n} is not a power of two"),
        });
    }
    let d = n.trailing_zeros();
    if g.regular_degree() != Some(d as usize) {
        return Err(Error::NotHypercube {
            vertex: None,
            reason: format!("graph is not {d}-regular"),
        });
    }
    if !g.is_connected() {
        return Err(Error::NotHypercube {
            vertex: None,
            reason: "graph is not connected".into(),
        });
    }
    if !g.is_bipartite() {
        return Err(Error::NotHypercube {
            vertex: None,
            reason: "graph is not bipartite".into(),
        });
    }

    let root = 0usize;
    let row = g.bfs_row(root);
    let depth = row.iter().max().copied().unwrap_or(0);
    let mut layers: Vec<Vec<usize>> = vec![Vec::new(); depth as usize + 1];
    for v in 0..n {
        layers[row[v] as usize].push(v);
    }

    let mut labels: Vec<Option<u32>> = vec![None; n];
    labels[root] = Some(0);
    for (j, &v) in layers.get(1).map(Vec::as_slice).unwrap_or(&[]).iter().enumerate() {
        labels[v] = Some(1 << j);
    }

    let mut used: HashMap<u32, usize> = HashMap::new();
    used.insert(0, root);
    for &v in layers.get(1).map(Vec::as_slice).unwrap_or(&[]) {
        used.insert(labels[v].unwrap(), v);
    }

    for (i, layer) in layers.iter().enumerate().skip(2) {
        for &v in layer {
            let mut union = 0u32;
            let mut down = 0usize;
            for &w in g.neighbors(v) {
                if row[w] as usize + 1 == i {
                    down += 1;
                    union |= labels[w].ok_or(Error::NotHypercube {
                        vertex: Some(w),
                        reason: "lower layer vertex unlabeled".into(),
                    })?;
                }
            }
            if down != i {
                return Err(Error::NotHypercube {
                    vertex: Some(v),
                    reason: format!("{down} neighbors one layer down, expected {i}"),
                });
            }
            if union.count_ones() as usize != i {
                return Err(Error::NotHypercube {
                    vertex: Some(v),
                    reason: format!(
                        "label union has {} coordinates, expected {i}",
                        union.count_ones()
                    ),
                });
            }
            if let Some(&other) = used.get(&union) {
                return Err(Error::NotHypercube {
                    vertex: Some(v),
                    reason: format!("label collides with vertex {other}"),
                });
            }
            labels[v] = Some(union);
            used.insert(union, v);
        }
    }

    let labels: Vec<u32> = labels
        .into_iter()
        .enumerate()
        .map(|(v, l)| {
            l.ok_or(Error::NotHypercube {
                vertex: Some(v),
                reason: "vertex never labeled".into(),
            })
        })
        .collect::<Result<_>>()?;
    let labeling = HypercubeLabeling {
        dimension: d,
        root,
        labels,
    };
    if !labeling.verify(g) {
        // find a violating pair for the error message
        for u in 0..n {
            for v in (u + 1)..n {
                let adjacent = g.has_edge(u, v);
                let unit = (labeling.labels[u] ^ labeling.labels[v]).count_ones() == 1;
                if adjacent != unit {
                    return Err(Error::NotHypercube {
                        vertex: Some(u),
                        reason: format!(
                            "adjacency with {v} disagrees with the labels ({:#b} vs {:#b})",
                            labeling.labels[u], labeling.labels[v]
                        ),
                    });
                }
            }
        }
        return Err(Error::NotHypercube {
            vertex: None,
            reason: "final verification failed".into(),
        });
    }
    Ok(labeling)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle, hypercube};

    #[test]
    fn labels_q1_through_q4() {
        for d in 1..=4u32 {
            let q = hypercube(d).unwrap();
            let labeling = hypercube_labeling(&q).unwrap();
            assert_eq!(labeling.dimension, d);
            assert!(labeling.verify(&q));
        }
    }

    #[test]
    fn q1_explicit_labels() {
        let q1 = hypercube(1).unwrap();
        let labeling = hypercube_labeling(&q1).unwrap();
        assert_eq!(labeling.labels, vec![0, 1]);
    }

    #[test]
    fn permuted_q3_still_labels() {
        let q3 = hypercube(3).unwrap();
        let perm = [5usize, 2, 7, 0, 3, 6, 1, 4];
        let h = q3.permuted(&perm).unwrap();
        let labeling = hypercube_labeling(&h).unwrap();
        assert!(labeling.verify(&h));
    }

    #[test]
    fn k33_fails_at_size_check() {
        let k33 = complete_bipartite(3, 3).unwrap();
        match hypercube_labeling(&k33) {
            Err(Error::NotHypercube { reason, .. }) => {
                assert!(reason.contains("power of two"));
            }
            other => panic!("expected size failure, got {other:?}"),
        }
    }

    #[test]
    fn k44_fails_despite_regular_bipartite() {
        // 8 vertices, 4-regular wanted for Q3 is 3-regular: degree check
        let k44 = complete_bipartite(4, 4).unwrap();
        assert!(hypercube_labeling(&k44).is_err());
    }

    #[test]
    fn c8_fails_down_degree() {
        // 8 vertices, 2-regular, bipartite, connected, but not Q3
        let c8 = cycle(8).unwrap();
        match hypercube_labeling(&c8) {
            Err(Error::NotHypercube { .. }) => {}
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn verify_rejects_tampered_labels() {
        let q2 = hypercube(2).unwrap();
        let mut labeling = hypercube_labeling(&q2).unwrap();
        // swapping 1 <-> 2 is an automorphism and must still verify
        labeling.labels.swap(1, 2);
        assert!(labeling.verify(&q2));
        // swapping a singleton with the top label breaks adjacency
        labeling.labels.swap(1, 3);
        assert!(!labeling.verify(&q2));
    }
}
