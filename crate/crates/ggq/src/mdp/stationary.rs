//! Stationary distribution of the behavior chain and ergodicity probing.

use super::{BehaviorPolicy, TabularMdp};
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Stationary distribution of the behavior chain: `nu` over states and the
/// induced joint `mu(s, a) = nu(s) * pi_b(a|s)` over (s, a) pairs.
#[derive(Debug, Clone)]
pub struct StationaryDistribution {
    nu: Vec<f64>,
    joint: Vec<f64>,
    n_actions: usize,
}

impl StationaryDistribution {
    pub fn nu(&self, s: usize) -> f64 {
        self.nu[s]
    }

    pub fn joint(&self, s: usize, a: usize) -> f64 {
        self.joint[s * self.n_actions + a]
    }

    pub fn nu_slice(&self) -> &[f64] {
        &self.nu
    }

    /// Joint over pairs, indexed `s * n_actions + a`.
    pub fn joint_slice(&self) -> &[f64] {
        &self.joint
    }
}

/// State-to-state transition matrix of the behavior chain (rewired kernel).
pub fn state_chain(mdp: &TabularMdp, policy: &BehaviorPolicy) -> DMatrix<f64> {
    let n = mdp.n_states();
    let mut p = DMatrix::zeros(n, n);
    for s in 0..n {
        for a in 0..mdp.n_actions() {
            let pa = policy.prob(s, a);
            if pa == 0.0 {
                continue;
            }
            for &(s2, q, _) in mdp.successors(s, a) {
                p[(s, s2)] += pa * q;
            }
        }
    }
    p
}

/// Solves `nu' P = nu'`, `sum nu = 1` by least squares on the augmented
/// (n+1)-row system `[P' - I; 1']`. Errors if the chain has more than one
/// closed communicating class.
pub fn stationary_distribution(
    mdp: &TabularMdp,
    policy: &BehaviorPolicy,
) -> Result<StationaryDistribution> {
    let n = mdp.n_states();
    let p = state_chain(mdp, policy);

    let closed = closed_classes(&p);
    if closed.len() > 1 {
        let reachable = reachable_from(&p, mdp.restart_state());
        let unreachable: Vec<usize> = (0..n).filter(|s| !reachable[*s]).collect();
        return Err(Error::DegenerateChain { unreachable });
    }

    let mut a = DMatrix::zeros(n + 1, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = p[(j, i)] - if i == j { 1.0 } else { 0.0 };
        }
    }
    for j in 0..n {
        a[(n, j)] = 1.0;
    }
    let mut b = DVector::zeros(n + 1);
    b[n] = 1.0;

    let svd = a.svd(true, true);
    let mut nu = svd
        .solve(&b, 1e-13)
        .map_err(|e| Error::invalid(format!("stationary solve failed: {e}")))?;

    for x in nu.iter_mut() {
        if *x < 0.0 {
            if *x < -1e-9 {
                return Err(Error::invalid(format!(
                    "stationary solve produced a negative mass {x}"
                )));
            }
            *x = 0.0;
        }
    }
    let total: f64 = nu.iter().sum();
    nu /= total;

    let residual = (&nu.transpose() * &p - nu.transpose()).amax();
    if residual > 1e-9 {
        return Err(Error::invalid(format!(
            "stationary residual {residual} exceeds 1e-9"
        )));
    }

    let n_actions = mdp.n_actions();
    let joint: Vec<f64> = (0..n * n_actions)
        .map(|idx| nu[idx / n_actions] * policy.prob(idx / n_actions, idx % n_actions))
        .collect();

    Ok(StationaryDistribution {
        nu: nu.iter().copied().collect(),
        joint,
        n_actions,
    })
}

/// Sup-over-starts total-variation distance to stationarity,
/// `d(t) = max_s TV(P^t(.|s), nu)`, returned for t = 0..=horizon.
pub fn mixing_probe(
    mdp: &TabularMdp,
    policy: &BehaviorPolicy,
    horizon: usize,
) -> Result<Vec<f64>> {
    let dist = stationary_distribution(mdp, policy)?;
    let p = state_chain(mdp, policy);
    let n = mdp.n_states();

    let mut powers = DMatrix::<f64>::identity(n, n);
    let mut out = Vec::with_capacity(horizon + 1);
    for t in 0..=horizon {
        if t > 0 {
            powers *= &p;
        }
        let d = (0..n)
            .map(|s| {
                0.5 * (0..n)
                    .map(|s2| (powers[(s, s2)] - dist.nu(s2)).abs())
                    .sum::<f64>()
            })
            .fold(0.0_f64, f64::max);
        out.push(d);
    }
    Ok(out)
}

/// Least-squares fit of `log d(t) = t log rho + c` over `t >= 1`, skipping
/// values at the numerical floor. Returns the fitted decay rate `rho`.
pub fn fit_decay_rate(d: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = d
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &v)| v > 1e-14)
        .map(|(t, &v)| (t as f64, v.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom == 0.0 {
        return None;
    }
    let slope = (n * sxy - sx * sy) / denom;
    Some(slope.exp())
}

fn reachable_from(p: &DMatrix<f64>, start: usize) -> Vec<bool> {
    let n = p.nrows();
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(s) = stack.pop() {
        for s2 in 0..n {
            if p[(s, s2)] > 0.0 && !seen[s2] {
                seen[s2] = true;
                stack.push(s2);
            }
        }
    }
    seen
}

/// Strongly connected components with no outgoing edges (closed classes),
/// via Kosaraju with explicit stacks.
fn closed_classes(p: &DMatrix<f64>) -> Vec<Vec<usize>> {
    let n = p.nrows();
    let edge = |u: usize, v: usize| p[(u, v)] > 0.0;

    // First pass: finish order on the forward graph.
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    for root in 0..n {
        if visited[root] {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        visited[root] = true;
        while let Some(&(u, next)) = stack.last() {
            if next < n {
                stack.last_mut().expect("stack is non-empty").1 += 1;
                if edge(u, next) && !visited[next] {
                    visited[next] = true;
                    stack.push((next, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }

    // Second pass: components on the reverse graph in reverse finish order.
    let mut comp = vec![usize::MAX; n];
    let mut n_comp = 0;
    for &root in order.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        let mut stack = vec![root];
        comp[root] = n_comp;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if edge(v, u) && comp[v] == usize::MAX {
                    comp[v] = n_comp;
                    stack.push(v);
                }
            }
        }
        n_comp += 1;
    }

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n_comp];
    for (s, &c) in comp.iter().enumerate() {
        members[c].push(s);
    }
    let mut closed = Vec::new();
    for (c, states) in members.iter().enumerate() {
        let has_exit = states
            .iter()
            .any(|&u| (0..n).any(|v| comp[v] != c && edge(u, v)));
        if !has_exit {
            closed.push(states.clone());
        }
    }
    closed
}
