//! Observation samplers over the behavior chain.
//!
//! Both samplers own a private generator and are infinite iterators; one
//! sampler per thread, transferable but not shareable.

use super::{BehaviorPolicy, Observation, StationaryDistribution, TabularMdp};
use crate::rng::{self, stream};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn sample_weighted<R: Rng>(weights: &[f64], rng: &mut R) -> usize {
    let mut u: f64 = rng.random();
    for (i, &w) in weights.iter().enumerate() {
        if u < w {
            return i;
        }
        u -= w;
    }
    weights.len() - 1
}

/// Single-trajectory sampler: `a ~ pi_b(.|s)`, `s' ~ P(.|s,a)` on the
/// behavior kernel. Starts at stationarity unless built with `from_state`.
pub struct MarkovSampler<'a> {
    mdp: &'a TabularMdp,
    policy: &'a BehaviorPolicy,
    rng: ChaCha8Rng,
    state: usize,
}

impl<'a> MarkovSampler<'a> {
    /// Burn-in-free sampler: the first state is drawn from `nu`.
    pub fn from_stationary(
        mdp: &'a TabularMdp,
        policy: &'a BehaviorPolicy,
        dist: &StationaryDistribution,
        seed: u64,
    ) -> Self {
        let mut rng = rng::rng_for(seed, stream::SAMPLER);
        let state = sample_weighted(dist.nu_slice(), &mut rng);
        MarkovSampler {
            mdp,
            policy,
            rng,
            state,
        }
    }

    /// Arbitrary-start sampler, for mixing studies.
    pub fn from_state(
        mdp: &'a TabularMdp,
        policy: &'a BehaviorPolicy,
        start: usize,
        seed: u64,
    ) -> Self {
        MarkovSampler {
            mdp,
            policy,
            rng: rng::rng_for(seed, stream::SAMPLER),
            state: start,
        }
    }
}

impl Iterator for MarkovSampler<'_> {
    type Item = Observation;

    fn next(&mut self) -> Option<Observation> {
        let s = self.state;
        let a = self.policy.sample_action(s, &mut self.rng);
        let (s_next, r) = self.mdp.sample_successor(s, a, &mut self.rng);
        self.state = s_next;
        Some(Observation { s, a, r, s_next })
    }
}

/// I.i.d. sampler: each emission draws `(s, a) ~ mu` independently, then
/// `s' ~ P(.|s,a)` on the behavior kernel.
pub struct IidSampler<'a> {
    mdp: &'a TabularMdp,
    joint: Vec<f64>,
    rng: ChaCha8Rng,
}

impl<'a> IidSampler<'a> {
    pub fn new(mdp: &'a TabularMdp, dist: &StationaryDistribution, seed: u64) -> Self {
        IidSampler {
            mdp,
            joint: dist.joint_slice().to_vec(),
            rng: rng::rng_for(seed, stream::SAMPLER),
        }
    }

    /// Same draw scheme with a caller-provided generator; used where one
    /// probe needs its own stream.
    pub fn with_rng(mdp: &'a TabularMdp, dist: &StationaryDistribution, rng: ChaCha8Rng) -> Self {
        IidSampler {
            mdp,
            joint: dist.joint_slice().to_vec(),
            rng,
        }
    }
}

impl Iterator for IidSampler<'_> {
    type Item = Observation;

    fn next(&mut self) -> Option<Observation> {
        let idx = sample_weighted(&self.joint, &mut self.rng);
        let (s, a) = (idx / self.mdp.n_actions(), idx % self.mdp.n_actions());
        let (s_next, r) = self.mdp.sample_successor(s, a, &mut self.rng);
        Some(Observation { s, a, r, s_next })
    }
}
