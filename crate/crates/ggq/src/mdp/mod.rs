//! Finite MDPs: Garnet generation, the 4x4 frozen lake grid, behavior
//! policies, stationary distributions and observation samplers.
//!
//! Absorbing terminal states (self-loop with zero reward, e.g. lake holes
//! and the goal) are rewired to jump back to the start state inside the
//! *behavior kernel*. This continualizes episodic tasks so the behavior
//! chain can be ergodic; the raw dynamics are kept as constructed and are
//! what gets serialized. Every consumer of the dynamics — the stationary
//! solve, the samplers and the exact oracle — goes through the behavior
//! kernel, so sampled data and enumerated expectations always refer to the
//! same chain.

mod io;
mod sampler;
mod stationary;

pub use io::{load_mdp, save_mdp, MdpDocument};
pub use sampler::{IidSampler, MarkovSampler};
pub use stationary::{
    fit_decay_rate, mixing_probe, stationary_distribution, StationaryDistribution,
};

use crate::error::{Error, Result};
use crate::features::FeatureMap;
use crate::rng::{self, stream};
use rand::Rng;

const ROW_SUM_TOL: f64 = 1e-12;

/// One transition observed while following the behavior policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation {
    pub s: usize,
    pub a: usize,
    pub r: f64,
    pub s_next: usize,
}

/// A finite discounted MDP held as dense transition and reward tensors.
///
/// Indexing is `[s][a][s']` flattened row-major. `r_max` is the largest
/// absolute reward and is recorded at construction.
#[derive(Debug, Clone)]
pub struct TabularMdp {
    n_states: usize,
    n_actions: usize,
    transition: Vec<f64>,
    reward: Vec<f64>,
    discount: f64,
    r_max: f64,
    layout_tag: String,
    restart_state: usize,
    terminals: Vec<bool>,
    /// Rewired sparse rows: `(s', p, r)` per (s,a), zero-probability
    /// entries dropped.
    behavior_rows: Vec<Vec<(usize, f64, f64)>>,
}

impl TabularMdp {
    pub fn new(
        n_states: usize,
        n_actions: usize,
        transition: Vec<f64>,
        reward: Vec<f64>,
        discount: f64,
        layout_tag: impl Into<String>,
    ) -> Result<Self> {
        if n_states == 0 || n_actions == 0 {
            return Err(Error::invalid("n_states and n_actions must be positive"));
        }
        let len = n_states * n_actions * n_states;
        if transition.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                got: transition.len(),
            });
        }
        if reward.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                got: reward.len(),
            });
        }
        if !(0.0..1.0).contains(&discount) {
            return Err(Error::invalid(format!(
                "discount must satisfy 0 <= gamma < 1, got {discount}"
            )));
        }
        for s in 0..n_states {
            for a in 0..n_actions {
                let row = &transition[(s * n_actions + a) * n_states..][..n_states];
                let sum: f64 = row.iter().sum();
                if (sum - 1.0).abs() > ROW_SUM_TOL {
                    return Err(Error::invalid(format!(
                        "transition row (s={s}, a={a}) sums to {sum}, not 1"
                    )));
                }
                if row.iter().any(|&p| p < 0.0) {
                    return Err(Error::invalid(format!(
                        "transition row (s={s}, a={a}) has a negative entry"
                    )));
                }
            }
        }
        let r_max = reward.iter().fold(0.0_f64, |m, &r| m.max(r.abs()));

        let mut mdp = TabularMdp {
            n_states,
            n_actions,
            transition,
            reward,
            discount,
            r_max,
            layout_tag: layout_tag.into(),
            restart_state: 0,
            terminals: Vec::new(),
            behavior_rows: Vec::new(),
        };
        mdp.rebuild_behavior_kernel();
        Ok(mdp)
    }

    /// Detects absorbing terminals and rebuilds the rewired sparse rows.
    fn rebuild_behavior_kernel(&mut self) {
        let n = self.n_states;
        self.terminals = (0..n)
            .map(|s| {
                (0..self.n_actions).all(|a| {
                    self.p(s, a, s) >= 1.0 - ROW_SUM_TOL && self.r(s, a, s).abs() < 1e-15
                })
            })
            .collect();
        // A fully absorbing "MDP" (every state terminal) has nothing to
        // rewire to; treat it as terminal-free.
        if self.terminals.iter().all(|&t| t) {
            self.terminals = vec![false; n];
        }
        self.behavior_rows = (0..n * self.n_actions)
            .map(|idx| {
                let (s, a) = (idx / self.n_actions, idx % self.n_actions);
                if self.terminals[s] {
                    vec![(self.restart_state, 1.0, 0.0)]
                } else {
                    (0..n)
                        .filter(|&s2| self.p(s, a, s2) > 0.0)
                        .map(|s2| (s2, self.p(s, a, s2), self.r(s, a, s2)))
                        .collect()
                }
            })
            .collect();
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn n_actions(&self) -> usize {
        self.n_actions
    }

    /// Number of (s, a) pairs.
    pub fn n_pairs(&self) -> usize {
        self.n_states * self.n_actions
    }

    pub fn discount(&self) -> f64 {
        self.discount
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn layout_tag(&self) -> &str {
        &self.layout_tag
    }

    /// Raw transition probability, before restart rewiring.
    pub fn p(&self, s: usize, a: usize, s2: usize) -> f64 {
        self.transition[(s * self.n_actions + a) * self.n_states + s2]
    }

    /// Raw reward, before restart rewiring.
    pub fn r(&self, s: usize, a: usize, s2: usize) -> f64 {
        self.reward[(s * self.n_actions + a) * self.n_states + s2]
    }

    pub fn is_terminal(&self, s: usize) -> bool {
        self.terminals[s]
    }

    pub fn restart_state(&self) -> usize {
        self.restart_state
    }

    /// Rewired successor list for (s, a): `(s', p, r)` with p > 0.
    pub fn successors(&self, s: usize, a: usize) -> &[(usize, f64, f64)] {
        &self.behavior_rows[s * self.n_actions + a]
    }

    /// Draws a successor from the behavior kernel.
    pub fn sample_successor<R: Rng>(&self, s: usize, a: usize, rng: &mut R) -> (usize, f64) {
        let row = self.successors(s, a);
        let mut u: f64 = rng.random();
        for &(s2, p, r) in row {
            if u < p {
                return (s2, r);
            }
            u -= p;
        }
        let &(s2, _, r) = row.last().expect("successor row cannot be empty");
        (s2, r)
    }
}

/// The fixed data-collecting policy, one distribution over actions per state.
#[derive(Debug, Clone)]
pub struct BehaviorPolicy {
    n_states: usize,
    n_actions: usize,
    probs: Vec<f64>,
}

impl BehaviorPolicy {
    pub fn new(n_states: usize, n_actions: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != n_states * n_actions {
            return Err(Error::DimensionMismatch {
                expected: n_states * n_actions,
                got: probs.len(),
            });
        }
        for s in 0..n_states {
            let row = &probs[s * n_actions..][..n_actions];
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOL || row.iter().any(|&p| p < 0.0) {
                return Err(Error::invalid(format!(
                    "behavior row for state {s} is not a probability distribution"
                )));
            }
        }
        Ok(BehaviorPolicy {
            n_states,
            n_actions,
            probs,
        })
    }

    pub fn prob(&self, s: usize, a: usize) -> f64 {
        self.probs[s * self.n_actions + a]
    }

    pub fn n_actions(&self) -> usize {
        self.n_actions
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn sample_action<R: Rng>(&self, s: usize, rng: &mut R) -> usize {
        let row = &self.probs[s * self.n_actions..][..self.n_actions];
        let mut u: f64 = rng.random();
        for (a, &p) in row.iter().enumerate() {
            if u < p {
                return a;
            }
            u -= p;
        }
        self.n_actions - 1
    }
}

/// Uniform behavior policy: every action with probability `1/n_actions`.
pub fn uniform_behavior(mdp: &TabularMdp) -> BehaviorPolicy {
    let p = 1.0 / mdp.n_actions() as f64;
    BehaviorPolicy {
        n_states: mdp.n_states(),
        n_actions: mdp.n_actions(),
        probs: vec![p; mdp.n_pairs()],
    }
}

/// Generates a Garnet instance G(n_states, n_actions, branching, n_features).
///
/// Each (s, a) pair gets exactly `branching` successor states chosen
/// uniformly without replacement; their probabilities are U(0,1) draws
/// normalized to sum one. Rewards are U(0,1) per (s, a), constant in the
/// successor. The feature matrix is standard normal with unit-norm columns.
/// Fully deterministic given `seed`.
pub fn generate_garnet(
    n_states: usize,
    n_actions: usize,
    branching: usize,
    n_features: usize,
    discount: f64,
    seed: u64,
) -> Result<(TabularMdp, FeatureMap)> {
    if branching == 0 || branching > n_states {
        return Err(Error::invalid(format!(
            "branching must satisfy 1 <= b <= n_states, got b={branching}, n_states={n_states}"
        )));
    }
    if n_features >= n_states * n_actions {
        log::warn!(
            "n_features={} >= |S||A|={}; the linear approximation is exact",
            n_features,
            n_states * n_actions
        );
    }
    let mut rng = rng::rng_for(seed, stream::GARNET);
    let len = n_states * n_actions * n_states;
    let mut transition = vec![0.0; len];
    let mut reward = vec![0.0; len];

    let mut pool: Vec<usize> = (0..n_states).collect();
    for s in 0..n_states {
        for a in 0..n_actions {
            // Partial Fisher-Yates: first `branching` entries are a uniform
            // sample without replacement.
            for i in 0..branching {
                let j = rng.random_range(i..n_states);
                pool.swap(i, j);
            }
            let mut chosen: Vec<usize> = pool[..branching].to_vec();
            chosen.sort_unstable();

            let weights: Vec<f64> = (0..branching).map(|_| rng.random::<f64>()).collect();
            let total: f64 = weights.iter().sum();
            let base = (s * n_actions + a) * n_states;
            for (&s2, &w) in chosen.iter().zip(&weights) {
                transition[base + s2] = w / total;
            }

            let r_sa: f64 = rng.random();
            for s2 in 0..n_states {
                reward[base + s2] = r_sa;
            }
        }
    }

    let mdp = TabularMdp::new(n_states, n_actions, transition, reward, discount, "garnet")?;
    let features = crate::features::random_features(n_features, n_states, n_actions, seed)?;
    Ok((mdp, features))
}

/// 4x4 frozen lake layout, row-major from the top-left:
///
/// ```text
/// S F F F
/// F H F H
/// F F F H
/// H F F G
/// ```
const LAKE_SIDE: usize = 4;
const LAKE_HOLES: [usize; 4] = [5, 7, 11, 12];
const LAKE_GOAL: usize = 15;

/// Action indices for the frozen lake grid.
pub const LAKE_UP: usize = 0;
pub const LAKE_DOWN: usize = 1;
pub const LAKE_LEFT: usize = 2;
pub const LAKE_RIGHT: usize = 3;

fn lake_move(s: usize, action: usize) -> usize {
    let (row, col) = (s / LAKE_SIDE, s % LAKE_SIDE);
    let (row, col) = match action {
        LAKE_UP => (row.saturating_sub(1), col),
        LAKE_DOWN => ((row + 1).min(LAKE_SIDE - 1), col),
        LAKE_LEFT => (row, col.saturating_sub(1)),
        LAKE_RIGHT => (row, (col + 1).min(LAKE_SIDE - 1)),
        _ => unreachable!("lake has 4 actions"),
    };
    row * LAKE_SIDE + col
}

/// The 16-state frozen lake grid. Holes and the goal are absorbing with
/// zero reward; moving into the goal pays 1. With `slippery` the intended
/// direction and the two perpendicular ones each get probability 1/3.
pub fn frozen_lake(slippery: bool, discount: f64) -> TabularMdp {
    let n_states = LAKE_SIDE * LAKE_SIDE;
    let n_actions = 4;
    let len = n_states * n_actions * n_states;
    let mut transition = vec![0.0; len];
    let mut reward = vec![0.0; len];

    for s in 0..n_states {
        let absorbing = LAKE_HOLES.contains(&s) || s == LAKE_GOAL;
        for a in 0..n_actions {
            let base = (s * n_actions + a) * n_states;
            if absorbing {
                transition[base + s] = 1.0;
                continue;
            }
            let outcomes: &[usize] = match (slippery, a) {
                (false, _) => &[a],
                (true, LAKE_UP) | (true, LAKE_DOWN) => &[a, LAKE_LEFT, LAKE_RIGHT],
                (true, _) => &[a, LAKE_UP, LAKE_DOWN],
            };
            let p = 1.0 / outcomes.len() as f64;
            for &dir in outcomes {
                transition[base + lake_move(s, dir)] += p;
            }
            for s2 in 0..n_states {
                if s2 == LAKE_GOAL {
                    reward[base + s2] = 1.0;
                }
            }
        }
    }

    TabularMdp::new(
        n_states,
        n_actions,
        transition,
        reward,
        discount,
        "frozen_lake",
    )
    .expect("fixed lake construction is valid")
}

#[cfg(test)]
mod tests;
