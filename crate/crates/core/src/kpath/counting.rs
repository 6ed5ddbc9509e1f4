use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{Blueprint, EdgeWeights, KPathOracle, Layout, Mode, Target, VertexCode};
use crate::algebra::{check_dims, Blade, CodeVector};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, UpdateBatch};
use crate::ring::{prf_u64, Integers, Ring, Tag};

/// Trials per `1 / epsilon^2` for the counting estimators.
pub const DEFAULT_COUNT_CONSTANT: f64 = 60.0;

/// `ceil(c / epsilon^2)` for `epsilon` in `(0, 1]`.
pub fn trial_count(epsilon: f64, c: f64) -> Result<usize> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} outside (0, 1]")));
    }
    Ok((c / (epsilon * epsilon)).ceil() as usize)
}

pub(crate) fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `(-1)^{C(k,2)}`: the sign a wedge of `k` lifted codes picks up.
pub(crate) fn lift_sign_negative(k: usize) -> bool {
    (k * k.saturating_sub(1) / 2) % 2 == 1
}

/// Independent deterministic-style states whose codes are lifts of uniform
/// sign vectors. Each trial's top coefficient is a sum of squared sign
/// determinants, one per ordered k-path, and a squared k x k sign
/// determinant has mean `k!`.
#[derive(Clone, Debug)]
pub struct CountingState {
    k: usize,
    trials: Vec<KPathOracle<Integers>>,
}

impl CountingState {
    /// Uses `ceil(60 / epsilon^2)` trials.
    pub fn preprocess(graph: &DirectedGraph, k: usize, epsilon: f64, seed: u64) -> Result<Self> {
        Self::with_trials(graph, k, trial_count(epsilon, DEFAULT_COUNT_CONSTANT)?, seed)
    }

    pub fn with_trials(graph: &DirectedGraph, k: usize, trials: usize, seed: u64) -> Result<Self> {
        if k == 0 || trials == 0 {
            return Err(Error::InvalidParameter("k and the trial count must be positive".into()));
        }
        let dims = 2 * k as u32;
        check_dims(dims)?;
        let trials = (0..trials as u64)
            .into_par_iter()
            .map(|t| {
                let ring = Integers;
                let tseed = prf_u64(seed, &Tag::new("count-trial").with(t));
                let codes = (0..graph.n())
                    .map(|v| {
                        let entries = (0..k)
                            .map(|i| ring.sample(tseed, &Tag::new("sign").with(v as u64).with(i as u64)))
                            .collect();
                        VertexCode::plain(Blade::lifted(&ring, &CodeVector::new(entries)))
                    })
                    .collect();
                let bp = Blueprint {
                    mode: Mode::Deterministic,
                    k,
                    dims,
                    l_max: k,
                    seed: tseed,
                    cap: 0,
                    layout: Layout::Plain,
                    target: Target::Top,
                    weights: EdgeWeights::Unit,
                    strict: true,
                    graph: graph.clone(),
                    codes,
                };
                KPathOracle::build(ring, bp)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CountingState { k, trials })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn trials(&self) -> &[KPathOracle<Integers>] {
        &self.trials
    }

    /// Signed, `k!`-normalized top coefficient of every trial.
    pub fn raw_estimates(&self, batch: &UpdateBatch) -> Result<Vec<BigRational>> {
        let fact = factorial(self.k);
        let negative = lift_sign_negative(self.k);
        self.trials
            .par_iter()
            .map(|t| {
                let w = t.query(batch)?.witness.to_bigint();
                let w = if negative { -w } else { w };
                Ok(BigRational::new(w, fact.clone()))
            })
            .collect()
    }

    /// Mean of the trial estimates: an estimate of the number of ordered
    /// k-paths in the updated graph.
    pub fn query(&self, batch: &UpdateBatch) -> Result<BigRational> {
        let raw = self.raw_estimates(batch)?;
        let sum = raw.into_iter().fold(BigRational::zero(), |a, b| a + b);
        Ok(sum / BigRational::from_integer(BigInt::from(self.trials.len())))
    }
}
