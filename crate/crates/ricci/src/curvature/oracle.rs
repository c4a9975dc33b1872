//! Independent brute-force curvature evaluation.
//!
//! Enumerates every integral 1-Lipschitz assignment on `S = N[x] u N[y]`
//! with `f(x) = 0` and `f(y) = d(x, y)` and minimizes the Laplacian
//! gradient directly. The constraint system is a difference system with
//! integer bounds, so an integral optimizer exists and this enumeration
//! reaches the exact linear-program value. It shares no code with the
//! simplex path and exists to check it.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numerics::Rational;

use super::grad_delta;

/// Product-of-ranges ceiling before the oracle refuses to enumerate.
const MAX_ASSIGNMENTS: u64 = 50_000_000;

/// Exact curvature by exhaustive integral-witness search.
pub fn kappa_lly_brute_force(g: &Graph, x: usize, y: usize) -> Result<Rational> {
    if x == y {
        return Err(Error::Argument("curvature needs x != y".into()));
    }
    let d = g
        .dist(x, y)
        .ok_or_else(|| Error::Disconnected(format!("no path from {x} to {y}")))? as i64;
    if d == 0 {
        return Err(Error::Argument("curvature needs x != y".into()));
    }

    let mut support: Vec<usize> = g
        .neighbors(x)
        .iter()
        .chain(g.neighbors(y).iter())
        .copied()
        .chain([x, y])
        .collect();
    support.sort_unstable();
    support.dedup();

    let free: Vec<usize> = support
        .iter()
        .copied()
        .filter(|&v| v != x && v != y)
        .collect();

    // Bounds from the Lipschitz constraints against the pinned endpoints.
    let mut ranges: Vec<(i64, i64)> = Vec::with_capacity(free.len());
    let mut combinations: u64 = 1;
    for &v in &free {
        let dxv = i64::from(g.dist(x, v).expect("S is connected to x"));
        let dyv = i64::from(g.dist(y, v).expect("S is connected to y"));
        let lo = (-dxv).max(d - dyv);
        let hi = dxv.min(d + dyv);
        if lo > hi {
            return Err(Error::Internal(
                "empty witness range; distances violate the triangle inequality".into(),
            ));
        }
        combinations = combinations.saturating_mul((hi - lo + 1) as u64);
        ranges.push((lo, hi));
    }
    if combinations > MAX_ASSIGNMENTS {
        return Err(Error::Scale(format!(
            "{combinations} integral witnesses exceed the brute-force ceiling"
        )));
    }

    let dist_within: Vec<Vec<i64>> = free
        .iter()
        .map(|&u| {
            free.iter()
                .map(|&v| i64::from(g.dist(u, v).expect("S connected")))
                .collect()
        })
        .collect();

    let mut assignment = vec![0i64; free.len()];
    let mut best: Option<Rational> = None;
    search(
        g,
        x,
        y,
        d,
        &free,
        &ranges,
        &dist_within,
        0,
        &mut assignment,
        &mut best,
    )?;
    best.ok_or_else(|| Error::Internal("no feasible integral witness found".into()))
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &Graph,
    x: usize,
    y: usize,
    d: i64,
    free: &[usize],
    ranges: &[(i64, i64)],
    dist_within: &[Vec<i64>],
    idx: usize,
    assignment: &mut Vec<i64>,
    best: &mut Option<Rational>,
) -> Result<()> {
    if idx == free.len() {
        let mut f: BTreeMap<usize, Rational> = BTreeMap::new();
        f.insert(x, Rational::from_integer(0.into()));
        f.insert(y, Rational::from_integer(d.into()));
        for (k, &v) in free.iter().enumerate() {
            f.insert(v, Rational::from_integer(assignment[k].into()));
        }
        let value = grad_delta(g, &f, x, y)?;
        if best.as_ref().is_none_or(|b| value < *b) {
            *best = Some(value);
        }
        return Ok(());
    }
    let (lo, hi) = ranges[idx];
    'candidates: for value in lo..=hi {
        for prev in 0..idx {
            if (value - assignment[prev]).abs() > dist_within[idx][prev] {
                continue 'candidates;
            }
        }
        assignment[idx] = value;
        search(g, x, y, d, free, ranges, dist_within, idx + 1, assignment, best)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::kappa_lly;
    use crate::graph::{complete, cycle, hypercube, path, star};
    use crate::numerics::{rat, rat_int};

    #[test]
    fn oracle_table() {
        let cases: Vec<(Graph, Rational)> = vec![
            (complete(2).unwrap(), rat_int(2)),
            (path(3).unwrap(), rat_int(1)),
            (cycle(4).unwrap(), rat_int(1)),
            (cycle(5).unwrap(), rat(1, 2)),
            (cycle(6).unwrap(), rat_int(0)),
            (star(3).unwrap(), rat(2, 3)),
            (complete(3).unwrap(), rat(3, 2)),
        ];
        for (g, expected) in cases {
            assert_eq!(kappa_lly_brute_force(&g, 0, 1).unwrap(), expected);
        }
    }

    #[test]
    fn oracle_matches_lp_on_varied_graphs() {
        let graphs = vec![
            hypercube(3).unwrap(),
            cycle(7).unwrap(),
            complete(4).unwrap(),
            star(4).unwrap(),
            Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
                .unwrap(),
        ];
        for g in &graphs {
            for (u, v) in g.edges() {
                let lp = kappa_lly(g, u, v).unwrap().kappa_lly;
                let brute = kappa_lly_brute_force(g, u, v).unwrap();
                assert_eq!(lp, brute, "edge ({u}, {v})");
            }
        }
    }

    #[test]
    fn oracle_matches_lp_on_nonadjacent_pairs() {
        let q3 = hypercube(3).unwrap();
        for (u, v) in [(0usize, 3usize), (0, 7), (1, 6)] {
            let lp = kappa_lly(&q3, u, v).unwrap().kappa_lly;
            let brute = kappa_lly_brute_force(&q3, u, v).unwrap();
            assert_eq!(lp, brute, "pair ({u}, {v})");
        }
    }
}
