//! Generalized diameters of token graphs and the spectral upper bounds they
//! certify.
//!
//! The j-th generalized diameter is the largest d such that some j+1 token
//! sets are pairwise at distance >= d. Distances between token sets are
//! priced by an optimal assignment over base-graph distances, which never
//! exceeds the true token-graph distance, so the sampled estimator here only
//! ever under-reports a diameter. Under-reporting is safe: the eigenvalue
//! bound decreases in d, so a smaller d yields a looser, still valid bound.

use crate::assignment::kset_distance;
use crate::combin::{binomial, ksubsets};
use crate::extint::{ExtInt, ExtReal};
use crate::graph::{DistanceMatrix, Graph};
use crate::iso::IsoFit;
use crate::sympow::{KSet, SymProduct};
use crate::{caps, Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_TRIALS: usize = 16;

/// splitmix64, used to derive independent per-trial seeds from one master
/// seed without coupling trial counts.
fn split_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Draws `count` distinct k-subsets of 0..n uniformly at random.
pub fn select_ksets<R: rand::Rng>(
    n: usize,
    k: usize,
    count: usize,
    rng: &mut R,
) -> Result<Vec<KSet>> {
    let available = binomial(n as u128, k as u128);
    if count as u128 > available {
        return Err(Error::NotEnoughKSets {
            requested: count as u128,
            available,
        });
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0u64;
    while out.len() < count {
        attempts += 1;
        if attempts > 1_000_000 {
            return Err(Error::invalid("token set sampling stalled"));
        }
        let mut pick = rand::seq::index::sample(rng, n, k).into_vec();
        pick.sort_unstable();
        let set = KSet::new(pick, n).expect("sampled members are in range");
        if seen.insert(set.rank()) {
            out.push(set);
        }
    }
    Ok(out)
}

/// A sampled lower estimate of a generalized diameter, with the trial that
/// achieved it.
#[derive(Debug, Clone)]
pub struct DiameterEstimate {
    pub k: usize,
    pub j: usize,
    pub d: ExtInt,
    pub trials: usize,
    pub seed: u64,
    /// The j+1 token sets whose pairwise distances are all >= d.
    pub witness: Vec<KSet>,
}

fn check_diameter_args(n: usize, k: usize, j: usize, trials: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::invalid(format!(
            "token count {k} out of range for {n} vertices"
        )));
    }
    if j < 1 {
        return Err(Error::invalid("diameter order j must be at least 1"));
    }
    if trials < 1 {
        return Err(Error::invalid("need at least one trial"));
    }
    Ok(())
}

/// Best-of-`trials` randomized estimate of the j-th generalized diameter of
/// the k-token graph. Each trial draws j+1 distinct token sets and takes
/// their minimum pairwise assignment distance; the estimate is the largest
/// over trials. Always a lower bound on the true diameter. Ties keep the
/// earliest trial, so a fixed seed fixes the witness.
pub fn estimate_generalized_diameter(
    g: &Graph,
    k: usize,
    j: usize,
    trials: usize,
    seed: u64,
) -> Result<DiameterEstimate> {
    let dist = g.all_pairs_distances();
    estimate_with_distances(g.n(), &dist, k, j, trials, seed)
}

/// The estimator core, reusing a precomputed base distance matrix. Splitting
/// this out lets callers amortize the BFS phase across many (k, j) cells.
pub fn estimate_with_distances(
    n: usize,
    dist: &DistanceMatrix,
    k: usize,
    j: usize,
    trials: usize,
    seed: u64,
) -> Result<DiameterEstimate> {
    check_diameter_args(n, k, j, trials)?;
    let need = j + 1;
    let available = binomial(n as u128, k as u128);
    if need as u128 > available {
        return Err(Error::NotEnoughKSets {
            requested: need as u128,
            available,
        });
    }
    let mut best: Option<(ExtInt, Vec<KSet>)> = None;
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, t as u64));
        let sets = select_ksets(n, k, need, &mut rng)?;
        let mut min_pair = ExtInt::Infinite;
        for a in 0..sets.len() {
            for b in a + 1..sets.len() {
                let d = kset_distance(&sets[a], &sets[b], dist)?;
                if d < min_pair {
                    min_pair = d;
                }
            }
        }
        if best.as_ref().map_or(true, |(b, _)| min_pair > *b) {
            best = Some((min_pair, sets));
        }
    }
    let (d, witness) = best.expect("at least one trial ran");
    Ok(DiameterEstimate {
        k,
        j,
        d,
        trials,
        seed,
        witness,
    })
}

/// An exactly computed generalized diameter.
#[derive(Debug, Clone)]
pub struct ExactDiameter {
    pub k: usize,
    pub j: usize,
    pub d: ExtInt,
    pub witness: Vec<KSet>,
}

/// Exhaustive j-th generalized diameter: BFS distances in the built token
/// graph, maximized over all (j+1)-subsets of its vertices. Desk scale only.
pub fn exact_generalized_diameter(g: &Graph, k: usize, j: usize) -> Result<ExactDiameter> {
    check_diameter_args(g.n(), k, j, 1)?;
    let product = SymProduct::build(g, k)?;
    let count = product.vertex_count();
    if j + 1 > count {
        return Err(Error::NotEnoughKSets {
            requested: (j + 1) as u128,
            available: count as u128,
        });
    }
    caps::guard(
        "diameter subset enumeration",
        binomial(count as u128, (j + 1) as u128),
        caps::current().enumeration,
    )?;
    let dist = product.graph().all_pairs_distances();
    let mut best: Option<(ExtInt, Vec<usize>)> = None;
    for subset in ksubsets(count, j + 1) {
        let mut min_pair = ExtInt::Infinite;
        for a in 0..subset.len() {
            for b in a + 1..subset.len() {
                let d = dist.get(subset[a], subset[b]);
                if d < min_pair {
                    min_pair = d;
                }
            }
        }
        if best.as_ref().map_or(true, |(bd, _)| min_pair > *bd) {
            best = Some((min_pair, subset));
        }
    }
    let (d, ranks) = best.expect("subset enumeration is nonempty");
    Ok(ExactDiameter {
        k,
        j,
        d,
        witness: ranks.into_iter().map(|r| product.vertex(r)).collect(),
    })
}

/// Which exponent enters the bound through the token-count root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentRule {
    /// 1/(d-1): the certified default.
    DMinusOne,
    /// 1/d: a looser-derivation variant, kept for comparison. Not certified.
    D,
}

impl ExponentRule {
    pub fn exponent(self, d: u64) -> f64 {
        match self {
            ExponentRule::DMinusOne => 1.0 / (d as f64 - 1.0),
            ExponentRule::D => 1.0 / d as f64,
        }
    }

    pub fn is_certified(self) -> bool {
        matches!(self, ExponentRule::DMinusOne)
    }
}

/// An eigenvalue upper bound certified by a diameter witness.
#[derive(Debug, Clone)]
pub struct UpperBoundRecord {
    pub k: usize,
    pub j: usize,
    /// Degree envelope 2 * k * max-degree of the token graph spectrum.
    pub mu: f64,
    /// Number of k-token sets.
    pub set_count: u128,
    pub rule: ExponentRule,
    pub estimate: DiameterEstimate,
    /// The bound on the j-th smallest positive-index eigenvalue. Infinite
    /// when the witnessed diameter is too small to certify anything.
    pub bound: ExtReal,
    pub note: Option<String>,
}

/// Evaluates mu * (1 - 2 / (1 + N^e)) for a diameter d and set count N.
/// d = infinity means j+1 sets sit in distinct components, forcing at least
/// j+1 zero eigenvalues, so the bound collapses to 0. d <= 1 certifies
/// nothing and yields an infinite bound.
pub fn bound_from_diameter(mu: f64, set_count: u128, d: ExtInt, rule: ExponentRule) -> ExtReal {
    match d {
        ExtInt::Infinite => ExtReal(0.0),
        ExtInt::Finite(d) if d >= 2 => {
            let root = (set_count as f64).powf(rule.exponent(d));
            ExtReal(mu * (1.0 - 2.0 / (1.0 + root)))
        }
        ExtInt::Finite(_) => ExtReal::INF,
    }
}

/// Upper bound on the j-th eigenvalue (0-indexed past the kernel) of the
/// k-token Laplacian, from a sampled diameter witness.
pub fn upper_bound_lambda(
    g: &Graph,
    k: usize,
    j: usize,
    trials: usize,
    seed: u64,
    rule: ExponentRule,
) -> Result<UpperBoundRecord> {
    let n = g.n();
    if k < 1 || 2 * k > n {
        return Err(Error::invalid(format!(
            "token count must satisfy 1 <= k <= n/2, got k = {k}, n = {n}"
        )));
    }
    let estimate = estimate_generalized_diameter(g, k, j, trials, seed)?;
    upper_bound_from_estimate(g, estimate, rule)
}

/// As [`upper_bound_lambda`], but for a diameter estimate already in hand.
pub fn upper_bound_from_estimate(
    g: &Graph,
    estimate: DiameterEstimate,
    rule: ExponentRule,
) -> Result<UpperBoundRecord> {
    let n = g.n();
    let k = estimate.k;
    let j = estimate.j;
    let beta = g.degree_profile().max_degree;
    let mu = 2.0 * k as f64 * beta as f64;
    let set_count = binomial(n as u128, k as u128);
    let bound = bound_from_diameter(mu, set_count, estimate.d, rule);
    let note = match estimate.d {
        ExtInt::Infinite => Some(
            "witness sets lie in distinct components, so the eigenvalue is exactly 0".to_string(),
        ),
        ExtInt::Finite(d) if d < 2 => Some(format!(
            "witnessed diameter {d} is below 2 and certifies no finite bound"
        )),
        _ => None,
    };
    Ok(UpperBoundRecord {
        k,
        j,
        mu,
        set_count,
        rule,
        estimate,
        bound,
        note,
    })
}

/// Two-sided envelope for the largest token-Laplacian eigenvalue.
#[derive(Debug, Clone, Copy)]
pub struct LambdaMaxBounds {
    /// c * k^(1 - 1/delta) from an isoperimetric floor.
    pub lower: f64,
    /// 2 * k * max-degree.
    pub upper: f64,
}

/// Envelope c * k^(1 - 1/delta) <= lambda_max <= 2 * k * beta, degenerate
/// (0, 0) at k = 0.
pub fn lambda_max_bounds(g: &Graph, k: usize, fit: &IsoFit) -> Result<LambdaMaxBounds> {
    if k > g.n() {
        return Err(Error::invalid(format!(
            "token count {k} exceeds vertex count {}",
            g.n()
        )));
    }
    if k == 0 {
        return Ok(LambdaMaxBounds {
            lower: 0.0,
            upper: 0.0,
        });
    }
    let beta = g.degree_profile().max_degree as f64;
    let expo = if fit.delta.is_infinite() {
        1.0
    } else {
        1.0 - 1.0 / fit.delta
    };
    Ok(LambdaMaxBounds {
        lower: fit.c * (k as f64).powf(expo),
        upper: 2.0 * k as f64 * beta,
    })
}

/// Envelope for the largest eigenvalue of the full interaction operator,
/// evaluated at the dominant sector k = floor(n/2): lower as in
/// [`lambda_max_bounds`], upper n * max-degree.
pub fn hamiltonian_max_bounds(g: &Graph, fit: &IsoFit) -> Result<LambdaMaxBounds> {
    let k = g.n() / 2;
    if k == 0 {
        return Ok(LambdaMaxBounds {
            lower: 0.0,
            upper: 0.0,
        });
    }
    let sector = lambda_max_bounds(g, k, fit)?;
    let beta = g.degree_profile().max_degree as f64;
    Ok(LambdaMaxBounds {
        lower: sector.lower,
        upper: g.n() as f64 * beta,
    })
}

/// Sharper single-token ceiling: the sum of the two largest degrees. Always
/// at most 2 * beta.
pub fn refined_single_token_upper(g: &Graph) -> f64 {
    let mut degrees: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let top = degrees.first().copied().unwrap_or(0);
    let second = degrees.get(1).copied().unwrap_or(0);
    (top + second) as f64
}
