//! Exact transportation distance between probability distributions on a
//! graph, with a primal coupling and a dual 1-Lipschitz witness whose
//! values certify the optimum.
//!
//! The solver peels the common mass of the two distributions, then runs
//! successive shortest paths with integer potentials on the bipartite
//! surplus/deficit instance (distances are integers, masses rational).
//! Final sink potentials are extended to the full support by the distance
//! envelope `f(w) = min_t (f(t) + d(w, t))`, which preserves the dual
//! value exactly; every returned result has `primal == dual` checked as
//! rationals before it leaves this module.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numerics::Rational;

/// Probability mass over vertices; only positive entries are stored and
/// the total is exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    mass: BTreeMap<usize, Rational>,
}

impl Distribution {
    pub fn from_entries<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut mass: BTreeMap<usize, Rational> = BTreeMap::new();
        for (v, m) in entries {
            if m.is_negative() {
                return Err(Error::Argument(format!("negative mass {m} at vertex {v}")));
            }
            if !m.is_zero() {
                *mass.entry(v).or_insert_with(Rational::zero) += m;
            }
        }
        let total: Rational = mass.values().cloned().sum();
        if !total.is_one() {
            return Err(Error::Argument(format!("masses sum to {total}, not 1")));
        }
        Ok(Distribution { mass })
    }

    pub fn mass(&self, v: usize) -> Rational {
        self.mass.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.mass.iter().map(|(&v, m)| (v, m))
    }

    pub fn support_size(&self) -> usize {
        self.mass.len()
    }

    pub fn max_vertex(&self) -> Option<usize> {
        self.mass.keys().next_back().copied()
    }
}

/// Distribution of the alpha-lazy random walk at `x`: mass `alpha` stays
/// put, the rest spreads uniformly over the neighbors.
pub fn lazy_walk(g: &Graph, x: usize, alpha: &Rational) -> Result<Distribution> {
    if x >= g.vertex_count() {
        return Err(Error::Argument(format!("vertex {x} out of range")));
    }
    if alpha.is_negative() || *alpha >= Rational::one() {
        return Err(Error::Argument(format!("alpha = {alpha} must lie in [0, 1)")));
    }
    let degree = g.degree(x);
    if degree == 0 {
        return Err(Error::DegreeZero { vertex: x });
    }
    let share = (Rational::one() - alpha) / Rational::from_integer(degree.into());
    let mut entries: Vec<(usize, Rational)> = g
        .neighbors(x)
        .iter()
        .map(|&v| (v, share.clone()))
        .collect();
    entries.push((x, alpha.clone()));
    Distribution::from_entries(entries)
}

/// Transport plan between two distributions: nonnegative joint mass whose
/// marginals are the endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coupling {
    entries: BTreeMap<(usize, usize), Rational>,
}

impl Coupling {
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn cost(&self, g: &Graph) -> Option<Rational> {
        let mut total = Rational::zero();
        for (&(u, v), mass) in &self.entries {
            let d = g.dist(u, v)?;
            total += mass * Rational::from_integer(d.into());
        }
        Some(total)
    }

    fn insert(&mut self, u: usize, v: usize, mass: Rational) {
        if !mass.is_zero() {
            *self
                .entries
                .entry((u, v))
                .or_insert_with(Rational::zero) += mass;
        }
    }
}

/// Values of a 1-Lipschitz function on a declared support set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LipschitzWitness {
    values: BTreeMap<usize, Rational>,
}

impl LipschitzWitness {
    pub fn new(values: BTreeMap<usize, Rational>) -> Self {
        LipschitzWitness { values }
    }

    pub fn value(&self, v: usize) -> Option<&Rational> {
        self.values.get(&v)
    }

    pub fn values(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.values.iter().map(|(&v, r)| (v, r))
    }

    /// Dual objective `sum f (m1 - m2)` over the witness support.
    pub fn pairing(&self, m1: &Distribution, m2: &Distribution) -> Rational {
        let mut total = Rational::zero();
        for (v, f) in &self.values {
            total += f * (m1.mass(*v) - m2.mass(*v));
        }
        total
    }
}

/// Exact optimum: cost, an optimal coupling, and a dual witness with
/// `cost == sum dual (m1 - m2)` as rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportResult {
    pub cost: Rational,
    pub plan: Coupling,
    pub dual: LipschitzWitness,
}

/// Outcome of an exact feasibility check; `first_violation` describes the
/// first failed constraint in a fixed deterministic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub ok: bool,
    pub first_violation: Option<String>,
}

impl CheckReport {
    fn pass() -> Self {
        CheckReport {
            ok: true,
            first_violation: None,
        }
    }

    fn fail(message: String) -> Self {
        CheckReport {
            ok: false,
            first_violation: Some(message),
        }
    }
}

/// Exact marginal check: nonnegative entries, row sums equal to `m1`,
/// column sums equal to `m2`.
pub fn verify_coupling(plan: &Coupling, m1: &Distribution, m2: &Distribution) -> CheckReport {
    let mut rows: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut cols: BTreeMap<usize, Rational> = BTreeMap::new();
    for (&(u, v), mass) in &plan.entries {
        if mass.is_negative() {
            return CheckReport::fail(format!("negative entry {mass} at ({u}, {v})"));
        }
        *rows.entry(u).or_insert_with(Rational::zero) += mass;
        *cols.entry(v).or_insert_with(Rational::zero) += mass;
    }
    let vertices: BTreeSet<usize> = rows
        .keys()
        .chain(cols.keys())
        .copied()
        .chain(m1.mass.keys().copied())
        .chain(m2.mass.keys().copied())
        .collect();
    for v in vertices {
        let row = rows.get(&v).cloned().unwrap_or_else(Rational::zero);
        if row != m1.mass(v) {
            return CheckReport::fail(format!(
                "row sum at {v} is {row}, expected {}",
                m1.mass(v)
            ));
        }
        let col = cols.get(&v).cloned().unwrap_or_else(Rational::zero);
        if col != m2.mass(v) {
            return CheckReport::fail(format!(
                "column sum at {v} is {col}, expected {}",
                m2.mass(v)
            ));
        }
    }
    CheckReport::pass()
}

/// Exact Lipschitz check of `f` over all pairs of the support set
/// (pairs in different components are unconstrained).
pub fn verify_lipschitz(g: &Graph, f: &LipschitzWitness, support: &[usize]) -> CheckReport {
    for &v in support {
        if f.value(v).is_none() {
            return CheckReport::fail(format!("witness undefined at vertex {v}"));
        }
    }
    for (i, &u) in support.iter().enumerate() {
        for &v in &support[i + 1..] {
            let Some(d) = g.dist(u, v) else { continue };
            let gap = (f.value(u).unwrap() - f.value(v).unwrap()).abs();
            if gap > Rational::from_integer(d.into()) {
                return CheckReport::fail(format!(
                    "|f({u}) - f({v})| = {gap} exceeds d = {d}"
                ));
            }
        }
    }
    CheckReport::pass()
}

/// Exact transportation distance with certified strong duality.
pub fn transport_distance(
    g: &Graph,
    m1: &Distribution,
    m2: &Distribution,
) -> Result<TransportResult> {
    for dist in [m1, m2] {
        if let Some(max) = dist.max_vertex() {
            if max >= g.vertex_count() {
                return Err(Error::Argument(format!(
                    "distribution supported at vertex {max} outside the graph"
                )));
            }
        }
    }
    let total1: Rational = m1.mass.values().cloned().sum();
    let total2: Rational = m2.mass.values().cloned().sum();
    if total1 != total2 {
        return Err(Error::MarginalMismatch(Box::new((total1, total2))));
    }

    let support: Vec<usize> = m1
        .mass
        .keys()
        .chain(m2.mass.keys())
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    // Peel common mass; only the surplus/deficit parts move.
    let mut plan = Coupling {
        entries: BTreeMap::new(),
    };
    let mut sources: Vec<(usize, Rational)> = Vec::new();
    let mut sinks: Vec<(usize, Rational)> = Vec::new();
    for &v in &support {
        let (a, b) = (m1.mass(v), m2.mass(v));
        let common = a.clone().min(b.clone());
        plan.insert(v, v, common.clone());
        if a > b {
            sources.push((v, a - b));
        } else if b > a {
            sinks.push((v, b - a));
        }
    }

    if sources.is_empty() {
        let zero = Rational::zero();
        let values = support.iter().map(|&v| (v, zero.clone())).collect();
        return Ok(TransportResult {
            cost: zero,
            plan,
            dual: LipschitzWitness::new(values),
        });
    }

    // Surplus and deficit must balance within every component.
    {
        let mut balance: BTreeMap<usize, Rational> = BTreeMap::new();
        let component = |v: usize| -> usize {
            // component id = smallest vertex reachable from v
            (0..g.vertex_count())
                .find(|&u| g.dist(v, u).is_some())
                .unwrap_or(v)
        };
        for (v, a) in &sources {
            *balance.entry(component(*v)).or_insert_with(Rational::zero) += a;
        }
        for (v, b) in &sinks {
            *balance.entry(component(*v)).or_insert_with(Rational::zero) -= b;
        }
        if balance.values().any(|x| !x.is_zero()) {
            return Err(Error::Disconnected(
                "surplus and deficit lie in different components".into(),
            ));
        }
    }

    let flow = solve_bipartite(g, &sources, &sinks)?;

    let mut cost = Rational::zero();
    for (i, (s, _)) in sources.iter().enumerate() {
        for (j, (t, _)) in sinks.iter().enumerate() {
            let amount = &flow.flow[i][j];
            if !amount.is_zero() {
                let d = g.dist(*s, *t).expect("balanced components");
                cost += amount * Rational::from_integer(d.into());
                plan.insert(*s, *t, amount.clone());
            }
        }
    }

    // Distance-envelope extension of the sink potentials.
    let sink_values: Vec<(usize, Rational)> = sinks
        .iter()
        .enumerate()
        .map(|(j, (t, _))| (*t, Rational::from_integer((-flow.sink_potential[j]).into())))
        .collect();
    let mut values: BTreeMap<usize, Rational> = BTreeMap::new();
    for &w in &support {
        let envelope = sink_values
            .iter()
            .filter_map(|(t, ft)| {
                g.dist(w, *t)
                    .map(|d| ft + Rational::from_integer(d.into()))
            })
            .min();
        let value = envelope.ok_or_else(|| {
            Error::Disconnected("support vertex sees no deficit vertex".into())
        })?;
        values.insert(w, value);
    }
    let dual = LipschitzWitness::new(values);

    // Certify before returning: exact marginals, exact Lipschitz bounds,
    // and exact primal/dual equality.
    let marginals = verify_coupling(&plan, m1, m2);
    if !marginals.ok {
        return Err(Error::Internal(format!(
            "optimal plan violates marginals: {}",
            marginals.first_violation.unwrap_or_default()
        )));
    }
    let lipschitz = verify_lipschitz(g, &dual, &support);
    if !lipschitz.ok {
        return Err(Error::Internal(format!(
            "dual witness not 1-Lipschitz: {}",
            lipschitz.first_violation.unwrap_or_default()
        )));
    }
    let dual_value = dual.pairing(m1, m2);
    if dual_value != cost {
        return Err(Error::Internal(format!(
            "strong duality gap: primal {cost} vs dual {dual_value}"
        )));
    }

    Ok(TransportResult { cost, plan, dual })
}

struct BipartiteFlow {
    flow: Vec<Vec<Rational>>,
    sink_potential: Vec<i64>,
}

/// Successive shortest paths with integer potentials on the complete
/// bipartite surplus/deficit instance. Arc costs are graph distances;
/// augmentation amounts are exact rationals.
fn solve_bipartite(
    g: &Graph,
    sources: &[(usize, Rational)],
    sinks: &[(usize, Rational)],
) -> Result<BipartiteFlow> {
    let p = sources.len();
    let q = sinks.len();
    let cost: Vec<Vec<Option<i64>>> = sources
        .iter()
        .map(|(s, _)| {
            sinks
                .iter()
                .map(|(t, _)| g.dist(*s, *t).map(i64::from))
                .collect()
        })
        .collect();

    let mut remaining_supply: Vec<Rational> = sources.iter().map(|(_, a)| a.clone()).collect();
    let mut remaining_demand: Vec<Rational> = sinks.iter().map(|(_, b)| b.clone()).collect();
    let mut flow: Vec<Vec<Rational>> = vec![vec![Rational::zero(); q]; p];
    let mut pi_src = vec![0i64; p];
    let mut pi_sink = vec![0i64; q];

    while let Some(origin) = remaining_supply.iter().position(|a| !a.is_zero()) {

        // Dijkstra over the residual: nodes 0..p are sources, p..p+q sinks.
        let nodes = p + q;
        let mut dist: Vec<Option<i64>> = vec![None; nodes];
        let mut parent: Vec<Option<usize>> = vec![None; nodes]; // predecessor node
        let mut heap: BinaryHeap<Reverse<(i64, usize)>> = BinaryHeap::new();
        dist[origin] = Some(0);
        heap.push(Reverse((0, origin)));
        while let Some(Reverse((du, u))) = heap.pop() {
            if dist[u] != Some(du) {
                continue;
            }
            if u < p {
                for j in 0..q {
                    let Some(c) = cost[u][j] else { continue };
                    let reduced = c + pi_src[u] - pi_sink[j];
                    debug_assert!(reduced >= 0);
                    let cand = du + reduced;
                    let node = p + j;
                    if dist[node].is_none_or(|dv| cand < dv) {
                        dist[node] = Some(cand);
                        parent[node] = Some(u);
                        heap.push(Reverse((cand, node)));
                    }
                }
            } else {
                let j = u - p;
                for i in 0..p {
                    if flow[i][j].is_zero() {
                        continue;
                    }
                    let Some(c) = cost[i][j] else { continue };
                    let reduced = -c + pi_sink[j] - pi_src[i];
                    debug_assert!(reduced >= 0);
                    let cand = du + reduced;
                    if dist[i].is_none_or(|dv| cand < dv) {
                        dist[i] = Some(cand);
                        parent[i] = Some(u);
                        heap.push(Reverse((cand, i)));
                    }
                }
            }
        }

        let target = (0..q)
            .filter(|&j| !remaining_demand[j].is_zero())
            .filter_map(|j| dist[p + j].map(|d| (d, j)))
            .min();
        let Some((target_dist, target)) = target else {
            return Err(Error::Disconnected(
                "no residual path from a surplus vertex to a deficit vertex".into(),
            ));
        };

        // Bottleneck along the alternating path.
        let mut amount = remaining_supply[origin]
            .clone()
            .min(remaining_demand[target].clone());
        let mut node = p + target;
        while let Some(prev) = parent[node] {
            if node >= p && prev < p {
                // forward arc prev -> sink: unlimited capacity
            } else if node < p && prev >= p {
                let (i, j) = (node, prev - p);
                amount = amount.min(flow[i][j].clone());
            }
            node = prev;
        }
        debug_assert!(amount.is_positive());

        // Apply the augmentation.
        let mut node = p + target;
        while let Some(prev) = parent[node] {
            if node >= p && prev < p {
                flow[prev][node - p] += &amount;
            } else if node < p && prev >= p {
                flow[node][prev - p] -= &amount;
            }
            node = prev;
        }
        remaining_supply[origin] -= &amount;
        remaining_demand[target] -= &amount;

        // Potential update keeps every residual reduced cost nonnegative.
        for i in 0..p {
            pi_src[i] += dist[i].map_or(target_dist, |d| d.min(target_dist));
        }
        for j in 0..q {
            pi_sink[j] += dist[p + j].map_or(target_dist, |d| d.min(target_dist));
        }
    }

    if remaining_demand.iter().any(|b| !b.is_zero()) {
        return Err(Error::Internal("demand left after supply exhausted".into()));
    }
    Ok(BipartiteFlow {
        flow,
        sink_potential: pi_sink,
    })
}
