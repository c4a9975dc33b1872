//! Exhaustive enumeration of small graphs up to isomorphism.
//!
//! Graphs on `k` vertices are generated by extending the catalog on
//! `k - 1` vertices with one new vertex and every possible neighborhood,
//! deduplicating through a canonical form. The canonical form is the
//! minimum upper-triangle bitmask over all vertex orderings that respect
//! the color-refinement partition; refinement prunes the permutation
//! search to within-class orderings, with the full `n!` fallback only on
//! color-regular graphs (at most 5040 orderings for n <= 7).

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};

use super::Graph;

/// Enumeration is exhaustive-permutation based and capped here; larger
/// orders are served by graph6 corpus ingestion instead.
pub const MAX_ENUMERATION_VERTICES: usize = 7;

/// Subgraph filter applied to the enumerated stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFilter {
    None,
    TriangleFree,
    C3C5Free,
}

impl GraphFilter {
    pub fn admits(&self, g: &Graph) -> bool {
        match self {
            GraphFilter::None => true,
            GraphFilter::TriangleFree => !g.has_c3(),
            GraphFilter::C3C5Free => !g.has_c3() && !g.has_c5(),
        }
    }
}

/// Bit position of pair `(i, j)` with `i < j` in the upper-triangle mask,
/// column-major: (0,1), (0,2), (1,2), (0,3), ...
#[inline]
fn pair_bit(i: usize, j: usize) -> u32 {
    debug_assert!(i < j);
    (j * (j - 1) / 2 + i) as u32
}

fn mask_to_graph(n: usize, mask: u32) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if mask >> pair_bit(i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edge_list(n, &edges).expect("mask encodes a simple graph")
}

fn mask_rows(n: usize, mask: u32) -> [u8; 8] {
    let mut rows = [0u8; 8];
    for j in 1..n {
        for i in 0..j {
            if mask >> pair_bit(i, j) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
    }
    rows
}

/// Iterated color refinement; returned ids are canonical (derived from
/// sorted signature ranks only, so isomorphic graphs get matching class
/// structures).
fn refine_colors(n: usize, rows: &[u8; 8]) -> Vec<usize> {
    let mut colors: Vec<usize> = rows[..n]
        .iter()
        .map(|row| row.count_ones() as usize)
        .collect();
    loop {
        let mut signatures: Vec<(usize, Vec<usize>)> = Vec::with_capacity(n);
        for (v, &row) in rows[..n].iter().enumerate() {
            let mut neighbor_colors: Vec<usize> = (0..n)
                .filter(|&u| row >> u & 1 == 1)
                .map(|u| colors[u])
                .collect();
            neighbor_colors.sort_unstable();
            signatures.push((colors[v], neighbor_colors));
        }
        let mut distinct: Vec<&(usize, Vec<usize>)> = signatures.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = signatures
            .iter()
            .map(|s| distinct.binary_search(&s).unwrap())
            .collect();
        let stable = {
            let old_classes: HashSet<usize> = colors.iter().copied().collect();
            let new_classes: HashSet<usize> = next.iter().copied().collect();
            old_classes.len() == new_classes.len()
        };
        colors = next;
        if stable {
            return colors;
        }
    }
}

/// Canonical upper-triangle mask: minimum over color-respecting orderings.
pub(crate) fn canonical_mask(n: usize, mask: u32) -> u32 {
    if n <= 1 {
        return 0;
    }
    let rows = mask_rows(n, mask);
    let colors = refine_colors(n, &rows);
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &color) in colors.iter().enumerate() {
        classes.entry(color).or_default().push(v);
    }
    let class_list: Vec<Vec<usize>> = classes.into_values().collect();

    let mut arrangement = vec![0usize; n];
    let mut best = u32::MAX;
    assign_class(&rows, &class_list, 0, 0, &mut arrangement, &mut best);
    best
}

fn assign_class(
    rows: &[u8; 8],
    classes: &[Vec<usize>],
    class_idx: usize,
    offset: usize,
    arrangement: &mut Vec<usize>,
    best: &mut u32,
) {
    if class_idx == classes.len() {
        let mut relabeled = 0u32;
        for j in 1..arrangement.len() {
            for i in 0..j {
                if rows[arrangement[i]] >> arrangement[j] & 1 == 1 {
                    relabeled |= 1 << pair_bit(i, j);
                }
            }
        }
        if relabeled < *best {
            *best = relabeled;
        }
        return;
    }
    let members = classes[class_idx].clone();
    permute_into(
        rows,
        classes,
        class_idx,
        offset,
        &members,
        &mut vec![false; members.len()],
        arrangement,
        best,
    );
}

#[allow(clippy::too_many_arguments)]
fn permute_into(
    rows: &[u8; 8],
    classes: &[Vec<usize>],
    class_idx: usize,
    pos: usize,
    members: &[usize],
    used: &mut Vec<bool>,
    arrangement: &mut Vec<usize>,
    best: &mut u32,
) {
    let filled = pos - (classes[..class_idx].iter().map(Vec::len).sum::<usize>());
    if filled == members.len() {
        assign_class(rows, classes, class_idx + 1, pos, arrangement, best);
        return;
    }
    for (k, &v) in members.iter().enumerate() {
        if used[k] {
            continue;
        }
        used[k] = true;
        arrangement[pos] = v;
        permute_into(rows, classes, class_idx, pos + 1, members, used, arrangement, best);
        used[k] = false;
    }
}

/// Canonical masks of all graphs (connected or not) on exactly `n`
/// vertices, ascending.
fn all_canonical_masks(n: usize) -> Vec<u32> {
    let mut reps: Vec<u32> = vec![0]; // the one-vertex graph
    for k in 2..=n {
        let base = pair_bit(0, k - 1);
        let mut seen: HashSet<u32> = HashSet::new();
        for &mask in &reps {
            for ext in 0u32..(1 << (k - 1)) {
                let candidate = mask | (ext << base);
                seen.insert(canonical_mask(k, candidate));
            }
        }
        let mut next: Vec<u32> = seen.into_iter().collect();
        next.sort_unstable();
        reps = next;
    }
    reps
}

/// Every connected graph on exactly `n` vertices passing the filter, one
/// representative per isomorphism class, in canonical-mask order.
pub fn enumerate_small_connected(n: usize, filter: GraphFilter) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::Argument("enumeration needs n >= 1".into()));
    }
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::Scale(format!(
            "enumeration is capped at n <= {MAX_ENUMERATION_VERTICES}; ingest a graph6 corpus for larger orders"
        )));
    }
    Ok(all_canonical_masks(n)
        .into_iter()
        .map(|mask| mask_to_graph(n, mask))
        .filter(|g| g.is_connected() && filter.admits(g))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, star};

    /// Independent oracle: canonical form by minimum over all n!
    /// orderings, no refinement, applied to every mask directly.
    fn classes_by_full_permutation(n: usize) -> (usize, usize) {
        fn full_canonical(n: usize, mask: u32) -> u32 {
            let rows = mask_rows(n, mask);
            let mut perm: Vec<usize> = (0..n).collect();
            let mut best = u32::MAX;
            permute_all(&rows, &mut perm, 0, &mut best);
            best
        }
        fn permute_all(rows: &[u8; 8], perm: &mut Vec<usize>, k: usize, best: &mut u32) {
            if k == perm.len() {
                let mut relabeled = 0u32;
                for j in 1..perm.len() {
                    for i in 0..j {
                        if rows[perm[i]] >> perm[j] & 1 == 1 {
                            relabeled |= 1 << pair_bit(i, j);
                        }
                    }
                }
                *best = (*best).min(relabeled);
                return;
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                permute_all(rows, perm, k + 1, best);
                perm.swap(k, i);
            }
        }
        let bits = n * (n - 1) / 2;
        let mut all: HashSet<u32> = HashSet::new();
        let mut connected: HashSet<u32> = HashSet::new();
        for mask in 0u32..(1 << bits) {
            let key = full_canonical(n, mask);
            all.insert(key);
            if mask_to_graph(n, mask).is_connected() {
                connected.insert(key);
            }
        }
        (all.len(), connected.len())
    }

    #[test]
    fn enumeration_matches_full_permutation_oracle() {
        for n in 1..=5 {
            let (all, connected) = classes_by_full_permutation(n);
            assert_eq!(all_canonical_masks(n).len(), all, "n = {n}");
            assert_eq!(
                enumerate_small_connected(n, GraphFilter::None).unwrap().len(),
                connected,
                "n = {n}"
            );
        }
    }

    #[test]
    fn known_class_counts() {
        let connected: Vec<usize> = (1..=6)
            .map(|n| enumerate_small_connected(n, GraphFilter::None).unwrap().len())
            .collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn triangle_free_classes_on_four_vertices() {
        let got = enumerate_small_connected(4, GraphFilter::TriangleFree).unwrap();
        assert_eq!(got.len(), 3);
        let keys: HashSet<u32> = got
            .iter()
            .map(graph_canonical_key)
            .collect();
        for expected in [path(4).unwrap(), star(3).unwrap(), cycle(4).unwrap()] {
            assert!(keys.contains(&graph_canonical_key(&expected)));
        }
    }

    fn graph_canonical_key(g: &Graph) -> u32 {
        let mut mask = 0u32;
        for (u, v) in g.edges() {
            mask |= 1 << pair_bit(u.min(v), u.max(v));
        }
        canonical_mask(g.vertex_count(), mask)
    }

    #[test]
    fn canonical_form_is_permutation_invariant() {
        let g = star(3).unwrap();
        let base = graph_canonical_key(&g);
        for perm in [[1usize, 0, 2, 3], [3, 2, 1, 0], [2, 3, 0, 1]] {
            let h = g.permuted(&perm).unwrap();
            assert_eq!(graph_canonical_key(&h), base);
        }
    }

    #[test]
    fn small_cases() {
        assert_eq!(
            enumerate_small_connected(2, GraphFilter::None).unwrap().len(),
            1
        );
        let three = enumerate_small_connected(3, GraphFilter::None).unwrap();
        assert_eq!(three.len(), 2); // P3 and K3
        assert!(enumerate_small_connected(8, GraphFilter::None).is_err());
        assert!(matches!(
            enumerate_small_connected(9, GraphFilter::None),
            Err(Error::Scale(_))
        ));
    }

    #[test]
    fn complete_graph_is_enumerated() {
        let got = enumerate_small_connected(4, GraphFilter::None).unwrap();
        let k4 = graph_canonical_key(&complete(4).unwrap());
        assert!(got.iter().any(|g| graph_canonical_key(g) == k4));
    }
}
