//! Lin-Lu-Yau and alpha-lazy Ollivier curvature, computed by two
//! independent exact routes.
//!
//! The primary route solves the limit-free formulation
//! `kappa(x, y) = inf { grad_xy(Delta f) : f 1-Lipschitz, grad_yx(f) = 1 }`
//! as a rational linear program over `S = N[x] u N[y]` (restriction to
//! `S` is lossless: a 1-Lipschitz function on `S` extends to the whole
//! graph by the distance envelope). The alpha-lazy route goes through the
//! transport solver and serves as a cross-check; a third, brute-force
//! route over integral witnesses lives in [`oracle`].

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numerics::{rat_int, Rational};
use crate::simplex::{LinearProgram, LpOutcome};
use crate::transport::{lazy_walk, transport_distance, LipschitzWitness};

pub mod oracle;

/// How a curvature value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Exact simplex on the Laplacian formulation.
    LaplacianLp,
    /// Exhaustive search over integral Lipschitz witnesses.
    BruteForce,
}

/// Curvature of one vertex pair together with the dual witness attaining
/// the Laplacian infimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureReport {
    pub x: usize,
    pub y: usize,
    pub distance: u32,
    /// Optional alpha-lazy sample attached by the caller.
    pub kappa_alpha: Option<(Rational, Rational)>,
    pub kappa_lly: Rational,
    pub dual_witness: LipschitzWitness,
    pub method: Method,
}

/// Combinatorial graph Laplacian `Delta f(x) = (1/d_x) sum_{y ~ x} (f(y) - f(x))`.
pub fn laplacian(g: &Graph, f: &BTreeMap<usize, Rational>, x: usize) -> Result<Rational> {
    if x >= g.vertex_count() {
        return Err(Error::Argument(format!("vertex {x} out of range")));
    }
    let degree = g.degree(x);
    if degree == 0 {
        return Err(Error::DegreeZero { vertex: x });
    }
    let fx = f
        .get(&x)
        .ok_or_else(|| Error::Argument(format!("f undefined at {x}")))?;
    let mut total = Rational::zero();
    for &v in g.neighbors(x) {
        let fv = f
            .get(&v)
            .ok_or_else(|| Error::Argument(format!("f undefined at neighbor {v}")))?;
        total += fv - fx;
    }
    Ok(total / Rational::from_integer(degree.into()))
}

/// `grad_xy(Delta f) = (Delta f(x) - Delta f(y)) / d(x, y)`, the quantity
/// the Laplacian formulation minimizes.
pub fn grad_delta(g: &Graph, f: &BTreeMap<usize, Rational>, x: usize, y: usize) -> Result<Rational> {
    let d = g
        .dist(x, y)
        .ok_or_else(|| Error::Disconnected(format!("no path from {x} to {y}")))?;
    if d == 0 {
        return Err(Error::Argument("grad needs x != y".into()));
    }
    let dx = laplacian(g, f, x)?;
    let dy = laplacian(g, f, y)?;
    Ok((dx - dy) / Rational::from_integer(d.into()))
}

/// Alpha-lazy Ollivier curvature
/// `kappa_alpha(x, y) = 1 - W(m_x^alpha, m_y^alpha) / d(x, y)`, exact.
pub fn kappa_alpha(g: &Graph, x: usize, y: usize, alpha: &Rational) -> Result<Rational> {
    if x == y {
        return Err(Error::Argument("curvature needs x != y".into()));
    }
    let d = g
        .dist(x, y)
        .ok_or_else(|| Error::Disconnected(format!("no path from {x} to {y}")))?;
    let mx = lazy_walk(g, x, alpha)?;
    let my = lazy_walk(g, y, alpha)?;
    let w = transport_distance(g, &mx, &my)?.cost;
    Ok(Rational::one() - w / Rational::from_integer(d.into()))
}

/// Lin-Lu-Yau curvature of the pair via the Laplacian linear program.
///
/// Variables are the values of `f` on `S = N[x] u N[y]`, normalized by
/// `f(x) = 0` and pinned by `f(y) = d(x, y)`; constraints are all pairwise
/// Lipschitz bounds within `S`. The minimizing `f` is integral (the
/// constraint system is a difference system with integer bounds) and is
/// returned as the dual witness after exact re-verification.
pub fn kappa_lly(g: &Graph, x: usize, y: usize) -> Result<CurvatureReport> {
    if x == y {
        return Err(Error::Argument("curvature needs x != y".into()));
    }
    if x >= g.vertex_count() || y >= g.vertex_count() {
        return Err(Error::Argument("vertex out of range".into()));
    }
    let d = g
        .dist(x, y)
        .ok_or_else(|| Error::Disconnected(format!("no path from {x} to {y}")))?;
    let dist = Rational::from_integer(d.into());

    // S sorted; the substitution f(v) = g(v) - d(x, v) makes every
    // variable nonnegative (g(v) >= 0 is exactly the Lipschitz bound
    // against x) and keeps all right-hand sides integral.
    let mut support: Vec<usize> = g
        .neighbors(x)
        .iter()
        .chain(g.neighbors(y).iter())
        .copied()
        .chain([x, y])
        .collect();
    support.sort_unstable();
    support.dedup();

    let mut var_of: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in &support {
        if v != x && v != y {
            let next = var_of.len();
            var_of.insert(v, next);
        }
    }
    let dx_of = |v: usize| -> Rational {
        Rational::from_integer(g.dist(x, v).expect("S lies in the component of x").into())
    };
    let fixed_value = |v: usize| -> Option<Rational> {
        if v == x {
            Some(Rational::zero())
        } else if v == y {
            Some(dist.clone())
        } else {
            None
        }
    };

    let mut rows: Vec<(Vec<(usize, Rational)>, Rational)> = Vec::new();
    for &u in &support {
        if u == x {
            continue; // f(x) - f(w) <= d(x, w) is the nonnegativity of g(w)
        }
        for &w in &support {
            if w == u {
                continue;
            }
            let duw = Rational::from_integer(g.dist(u, w).expect("S is connected to x").into());
            // f(u) - f(w) <= d(u, w) rewritten over g
            let mut coefs: Vec<(usize, Rational)> = Vec::new();
            let mut rhs = duw;
            match fixed_value(u) {
                Some(fu) => rhs -= fu,
                None => {
                    coefs.push((var_of[&u], Rational::one()));
                    rhs += dx_of(u);
                }
            }
            match fixed_value(w) {
                Some(fw) => rhs += fw,
                None => {
                    coefs.push((var_of[&w], -Rational::one()));
                    rhs -= dx_of(w);
                }
            }
            if coefs.is_empty() {
                if rhs.is_negative() {
                    return Err(Error::Internal(
                        "fixed endpoints violate the Lipschitz bound".into(),
                    ));
                }
                continue;
            }
            rows.push((coefs, rhs));
        }
    }

    // Objective grad_xy(Delta f) as linear terms over f, then over g.
    let mut f_terms: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut constant = Rational::one(); // + f(y)/d with f(y) = d
    let dx_deg = Rational::from_integer(g.degree(x).into());
    let dy_deg = Rational::from_integer(g.degree(y).into());
    for &u in g.neighbors(x) {
        *f_terms.entry(u).or_insert_with(Rational::zero) += (&dx_deg * &dist).recip();
    }
    for &v in g.neighbors(y) {
        *f_terms.entry(v).or_insert_with(Rational::zero) -= (&dy_deg * &dist).recip();
    }
    let mut objective = vec![Rational::zero(); var_of.len()];
    for (v, coef) in f_terms {
        match fixed_value(v) {
            Some(fv) => constant += &coef * fv,
            None => {
                constant -= &coef * dx_of(v);
                objective[var_of[&v]] += coef;
            }
        }
    }

    let lp = LinearProgram {
        num_vars: var_of.len(),
        objective,
        rows,
    };
    let (value, point) = match crate::simplex::solve_min(&lp) {
        LpOutcome::Optimal { value, point } => (value, point),
        LpOutcome::Infeasible => {
            return Err(Error::Internal(
                "curvature program infeasible; f = d(x, .) is always feasible".into(),
            ))
        }
        LpOutcome::Unbounded => {
            return Err(Error::Internal(
                "curvature program unbounded despite Lipschitz box".into(),
            ))
        }
    };
    let kappa = value + constant;

    // Reassemble f, then certify: integrality, Lipschitz feasibility on S,
    // the gradient pin, and agreement of the objective with a direct
    // Laplacian evaluation.
    let mut witness_values: BTreeMap<usize, Rational> = BTreeMap::new();
    for &v in &support {
        let fv = match fixed_value(v) {
            Some(fv) => fv,
            None => &point[var_of[&v]] - dx_of(v),
        };
        if !fv.is_integer() {
            return Err(Error::Internal(format!(
                "optimal witness is not integral at vertex {v}: {fv}"
            )));
        }
        witness_values.insert(v, fv);
    }
    let direct = grad_delta(g, &witness_values, x, y)?;
    if direct != kappa {
        return Err(Error::Internal(format!(
            "objective mismatch: LP {kappa} vs direct {direct}"
        )));
    }
    let witness = LipschitzWitness::new(witness_values);
    let lipschitz = crate::transport::verify_lipschitz(g, &witness, &support);
    if !lipschitz.ok {
        return Err(Error::Internal(format!(
            "optimal witness not 1-Lipschitz: {}",
            lipschitz.first_violation.unwrap_or_default()
        )));
    }

    Ok(CurvatureReport {
        x,
        y,
        distance: d,
        kappa_alpha: None,
        kappa_lly: kappa,
        dual_witness: witness,
        method: Method::LaplacianLp,
    })
}

/// Exact alpha-lazy samples for one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdlenessProfile {
    pub x: usize,
    pub y: usize,
    pub distance: u32,
    pub samples: Vec<(Rational, Rational)>,
}

impl IdlenessProfile {
    /// Concavity of the sampled points: slopes between consecutive
    /// samples (sorted by alpha) never increase.
    pub fn is_concave_consistent(&self) -> bool {
        let mut sorted = self.samples.clone();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        sorted.windows(3).all(|w| {
            let left = (&w[1].1 - &w[0].1) * (&w[2].0 - &w[1].0);
            let right = (&w[2].1 - &w[1].1) * (&w[1].0 - &w[0].0);
            left >= right
        })
    }

    /// `kappa_alpha <= (1 - alpha) * 2 / d(x, y)` at every sample.
    pub fn respects_upper_bound(&self) -> bool {
        let two_over_d = rat_int(2) / Rational::from_integer(self.distance.into());
        self.samples
            .iter()
            .all(|(alpha, kappa)| *kappa <= (Rational::one() - alpha) * &two_over_d)
    }

    /// `kappa_alpha / (1 - alpha)` for each sample, in sample order.
    pub fn normalized(&self) -> Vec<Rational> {
        self.samples
            .iter()
            .map(|(alpha, kappa)| kappa / (Rational::one() - alpha))
            .collect()
    }
}

/// Samples `kappa_alpha` at the given idleness values.
pub fn idleness_profile(
    g: &Graph,
    x: usize,
    y: usize,
    alphas: &[Rational],
) -> Result<IdlenessProfile> {
    let d = g
        .dist(x, y)
        .ok_or_else(|| Error::Disconnected(format!("no path from {x} to {y}")))?;
    if d == 0 {
        return Err(Error::Argument("curvature needs x != y".into()));
    }
    let mut samples = Vec::with_capacity(alphas.len());
    for alpha in alphas {
        samples.push((alpha.clone(), kappa_alpha(g, x, y, alpha)?));
    }
    Ok(IdlenessProfile {
        x,
        y,
        distance: d,
        samples,
    })
}

/// Curvature of every edge, in lexicographic edge order.
pub fn curvature_all_edges(g: &Graph) -> Result<Vec<CurvatureReport>> {
    g.edges()
        .into_iter()
        .map(|(u, v)| kappa_lly(g, u, v))
        .collect()
}

/// Minimum edge curvature and the first edge attaining it.
pub fn min_edge_curvature(g: &Graph) -> Result<(Rational, (usize, usize))> {
    if g.vertex_count() < 2 {
        return Err(Error::Argument(
            "minimum edge curvature needs at least one edge".into(),
        ));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected("edge curvature sweep".into()));
    }
    let mut best: Option<(Rational, (usize, usize))> = None;
    for (u, v) in g.edges() {
        let kappa = kappa_lly(g, u, v)?.kappa_lly;
        match &best {
            Some((current, _)) if *current <= kappa => {}
            _ => best = Some((kappa, (u, v))),
        }
    }
    best.ok_or_else(|| Error::Argument("graph has no edges".into()))
}
