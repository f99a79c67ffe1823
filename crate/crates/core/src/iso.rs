//! Edge-isoperimetric profiles and the machinery that turns them into
//! certified constants: dimension fits, Sobolev seminorms, indicator
//! functionals, induced-subgraph families, and the boundary inequality that
//! transfers isoperimetry from a base graph to its token graphs.
//!
//! Profiles are exact, computed by a Gray-code walk over half the subset
//! lattice with O(1) boundary updates per step. Complement symmetry of the
//! edge boundary makes sizes above n/2 redundant.

use crate::combin::{binomial, ksubsets};
use crate::graph::{Graph, VertexSet};
use crate::sympow::{KSet, SymProduct};
use crate::{caps, Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Exact minimum edge boundary per subset size, for sizes 1..=n/2.
#[derive(Debug, Clone)]
pub struct EipProfile {
    n: usize,
    minima: Vec<u64>,
    witnesses: Vec<VertexSet>,
}

impl EipProfile {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Minimum boundary over sets of `size` vertices, 1 <= size <= n/2.
    pub fn min_boundary(&self, size: usize) -> u64 {
        self.minima[size - 1]
    }

    pub fn minima(&self) -> &[u64] {
        &self.minima
    }

    /// A set attaining each minimum, aligned with [`Self::minima`].
    pub fn witnesses(&self) -> &[VertexSet] {
        &self.witnesses
    }

    pub fn sizes(&self) -> usize {
        self.minima.len()
    }
}

/// Builds adjacency bitmasks for subset scans. Only valid for n <= 63.
fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |mask, &w| mask | (1 << w)))
        .collect()
}

fn boundary_of_mask(g: &Graph, mask: u64) -> u64 {
    g.edges()
        .iter()
        .filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1))
        .count() as u64
}

/// Walks masks gray(start), ..., gray(end - 1) with incremental boundary
/// maintenance, calling `visit(mask, boundary)` on each.
fn gray_scan(g: &Graph, adj: &[u64], start: u64, end: u64, mut visit: impl FnMut(u64, u64)) {
    if start >= end {
        return;
    }
    let mut mask = start ^ (start >> 1);
    let mut boundary = boundary_of_mask(g, mask);
    visit(mask, boundary);
    for i in start + 1..end {
        let v = i.trailing_zeros() as usize;
        let bit = 1u64 << v;
        let next = mask ^ bit;
        // neighbors of v on the other side of the flip
        let nb = (adj[v] & (next & !bit)).count_ones() as u64;
        let delta = adj[v].count_ones() as u64 as i64 - 2 * nb as i64;
        if next & bit != 0 {
            boundary = (boundary as i64 + delta) as u64;
        } else {
            boundary = (boundary as i64 - delta) as u64;
        }
        mask = next;
        visit(mask, boundary);
    }
}

#[derive(Clone)]
struct ProfileAccumulator {
    minima: Vec<u64>,
    witnesses: Vec<u64>,
}

impl ProfileAccumulator {
    fn new(half: usize) -> Self {
        ProfileAccumulator {
            minima: vec![u64::MAX; half],
            witnesses: vec![0; half],
        }
    }

    fn offer(&mut self, size: usize, boundary: u64, mask: u64) {
        if size >= 1 && size <= self.minima.len() && boundary < self.minima[size - 1] {
            self.minima[size - 1] = boundary;
            self.witnesses[size - 1] = mask;
        }
    }

    fn visit(&mut self, n: usize, full: u64, mask: u64, boundary: u64) {
        let s = mask.count_ones() as usize;
        self.offer(s, boundary, mask);
        self.offer(n - s, boundary, full ^ mask);
    }

    /// Sequential-order merge: the earlier accumulator wins ties, matching
    /// what a single left-to-right scan would have kept.
    fn absorb(&mut self, later: ProfileAccumulator) {
        for i in 0..self.minima.len() {
            if later.minima[i] < self.minima[i] {
                self.minima[i] = later.minima[i];
                self.witnesses[i] = later.witnesses[i];
            }
        }
    }
}

/// Exact edge-isoperimetric profile by exhaustive subset scan. Only subsets
/// avoiding the last vertex are walked; the complement covers the rest.
pub fn eip_bruteforce(g: &Graph) -> Result<EipProfile> {
    let n = g.n();
    if n < 2 {
        return Err(Error::invalid(
            "boundary profile needs at least two vertices",
        ));
    }
    let total: u128 = 1u128 << (n - 1);
    caps::guard(
        "boundary profile subset scan",
        total,
        caps::current().profile_scan,
    )?;
    let total = total as u64;
    let half = n / 2;
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let adj = adjacency_masks(g);

    let threads = rayon::current_num_threads().max(1) as u64;
    let acc = if total >= (1 << 18) && threads > 1 {
        let chunk = total.div_ceil(threads);
        let parts: Vec<ProfileAccumulator> = (0..threads)
            .into_par_iter()
            .map(|t| {
                let mut local = ProfileAccumulator::new(half);
                let start = t * chunk;
                let end = ((t + 1) * chunk).min(total);
                gray_scan(g, &adj, start, end, |mask, boundary| {
                    local.visit(n, full, mask, boundary)
                });
                local
            })
            .collect();
        let mut acc = ProfileAccumulator::new(half);
        for part in parts {
            acc.absorb(part);
        }
        acc
    } else {
        let mut acc = ProfileAccumulator::new(half);
        gray_scan(g, &adj, 0, total, |mask, boundary| {
            acc.visit(n, full, mask, boundary)
        });
        acc
    };

    debug_assert!(acc.minima.iter().all(|&m| m != u64::MAX));
    Ok(EipProfile {
        n,
        witnesses: acc
            .witnesses
            .iter()
            .map(|&mask| VertexSet::from_mask(mask, n))
            .collect(),
        minima: acc.minima,
    })
}

/// A power-law floor fitted under a boundary profile: every size-s set has
/// boundary at least c * s^(1 - 1/delta).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoFit {
    pub delta: f64,
    pub c: f64,
}

/// Exponent 1 - 1/delta, with the infinite-dimension limit handled.
fn dimension_exponent(delta: f64) -> f64 {
    if delta.is_infinite() {
        1.0
    } else {
        1.0 - 1.0 / delta
    }
}

/// Largest constant c such that the profile lies above c * s^(1 - 1/delta).
pub fn iso_fit(profile: &EipProfile, delta: f64) -> Result<IsoFit> {
    if !(delta > 1.0) {
        return Err(Error::invalid("dimension must exceed 1"));
    }
    if profile.minima.is_empty() {
        return Err(Error::invalid("cannot fit an empty profile"));
    }
    let expo = dimension_exponent(delta);
    let c = profile
        .minima
        .iter()
        .enumerate()
        .map(|(i, &e)| e as f64 / ((i + 1) as f64).powf(expo))
        .fold(f64::INFINITY, f64::min);
    Ok(IsoFit { delta, c })
}

impl IsoFit {
    /// Whether the floor really lies under the profile.
    pub fn certified_by(&self, profile: &EipProfile) -> bool {
        let expo = dimension_exponent(self.delta);
        profile
            .minima
            .iter()
            .enumerate()
            .all(|(i, &e)| e as f64 + 1e-9 >= self.c * ((i + 1) as f64).powf(expo))
    }
}

/// Sum of |f(u) - f(v)| over the edges.
pub fn sobolev_seminorm(g: &Graph, f: &[f64]) -> Result<f64> {
    if f.len() != g.n() {
        return Err(Error::invalid(format!(
            "function has {} values for {} vertices",
            f.len(),
            g.n()
        )));
    }
    Ok(g.edges().iter().map(|&(u, v)| (f[u] - f[v]).abs()).sum())
}

/// 0/1 vector of a vertex set.
pub fn indicator(x: &VertexSet, n: usize) -> Vec<f64> {
    let mut f = vec![0.0; n];
    for &v in x.members() {
        f[v] = 1.0;
    }
    f
}

fn validate_p(p: f64) -> Result<()> {
    if !(p >= 1.0) {
        return Err(Error::invalid("exponent p must be at least 1"));
    }
    Ok(())
}

/// Balance functional (2 |X| |V \ X| / |V|)^(1/p) of an indicator.
pub fn functional_g(g: &Graph, x: &VertexSet, p: f64) -> Result<f64> {
    validate_p(p)?;
    let n = g.n() as f64;
    if let Some(&v) = x.members().iter().find(|&&v| v >= g.n()) {
        return Err(Error::VertexRange {
            label: v + 1,
            n: g.n(),
        });
    }
    let size = x.len() as f64;
    Ok((2.0 * size * (n - size) / n).powf(1.0 / p))
}

/// Centered p-norm (sum |f - mean|^p)^(1/p).
pub fn functional_rho(f: &[f64], p: f64) -> Result<f64> {
    validate_p(p)?;
    if f.is_empty() {
        return Err(Error::invalid("centered norm of an empty vector"));
    }
    let mean = f.iter().sum::<f64>() / f.len() as f64;
    Ok(f.iter()
        .map(|&v| (v - mean).abs().powf(p))
        .sum::<f64>()
        .powf(1.0 / p))
}

fn rho_by_size(n: usize, p: f64) -> Vec<f64> {
    // the centered p-norm of an indicator depends only on the set size
    (0..=n)
        .map(|x| {
            let xf = x as f64;
            let nf = n as f64;
            let mean = xf / nf;
            (xf * (1.0 - mean).powf(p) + (nf - xf) * mean.powf(p)).powf(1.0 / p)
        })
        .collect()
}

/// Result of scanning every vertex subset against a claimed constant.
#[derive(Debug, Clone)]
pub struct IsoCheck {
    pub pass: bool,
    /// Smallest boundary-to-functional ratio over proper nonempty subsets,
    /// infinite when no such subset exists.
    pub worst_ratio: f64,
    pub witness: Option<VertexSet>,
}

/// The indicator ratio floor: min over proper nonempty X of
/// |boundary(X)| / rho_p(indicator X). This is the largest constant the
/// graph is isoperimetric for.
pub fn min_indicator_ratio(g: &Graph, p: f64) -> Result<(f64, Option<VertexSet>)> {
    validate_p(p)?;
    let n = g.n();
    caps::guard(
        "isoperimetric subset scan",
        1u128 << n.min(127),
        caps::current().iso_scan,
    )?;
    if n < 2 {
        return Ok((f64::INFINITY, None));
    }
    let adj = adjacency_masks(g);
    let rho = rho_by_size(n, p);
    let mut worst = f64::INFINITY;
    let mut witness = None;
    gray_scan(g, &adj, 0, 1 << n, |mask, boundary| {
        let s = mask.count_ones() as usize;
        if s == 0 || s == n {
            return;
        }
        let ratio = boundary as f64 / rho[s];
        if ratio < worst {
            worst = ratio;
            witness = Some(mask);
        }
    });
    Ok((worst, witness.map(|m| VertexSet::from_mask(m, n))))
}

/// Checks |boundary(X)| >= c * rho_p(indicator X) for every subset.
/// Equality passes; the empty set and the full set hold trivially.
pub fn check_isoperimetric(g: &Graph, c: f64, p: f64) -> Result<IsoCheck> {
    if c < 0.0 {
        return Err(Error::invalid("isoperimetric constant must be nonnegative"));
    }
    let (worst_ratio, witness) = min_indicator_ratio(g, p)?;
    Ok(IsoCheck {
        pass: worst_ratio >= c - 1e-9,
        worst_ratio,
        witness,
    })
}

/// How the induced-subgraph family is enumerated.
#[derive(Debug, Clone, Copy)]
pub enum FamilyMode {
    Exhaustive,
    /// `count` deletion sets sampled uniformly without replacement.
    Sample {
        count: usize,
        seed: u64,
    },
}

/// One member of the family: the graph left after deleting k-1 vertices.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub deleted: VertexSet,
    pub graph: Graph,
    /// Original label of each kept vertex, indexed by new label.
    pub kept: Vec<usize>,
}

/// All induced subgraphs on n - k + 1 vertices (every way to delete k - 1),
/// or a seeded sample of them.
pub fn subgraph_family(g: &Graph, k: usize, mode: FamilyMode) -> Result<Vec<FamilyMember>> {
    let n = g.n();
    if k < 1 || k >= n {
        return Err(Error::invalid(format!(
            "family is defined for 1 <= k < n, got k = {k}, n = {n}"
        )));
    }
    let total = binomial(n as u128, k as u128 - 1);
    let deletions: Vec<Vec<usize>> = match mode {
        FamilyMode::Exhaustive => {
            caps::guard("induced family enumeration", total, caps::current().family)?;
            ksubsets(n, k - 1).collect()
        }
        FamilyMode::Sample { count, seed } => {
            if count as u128 > total {
                return Err(Error::NotEnoughKSets {
                    requested: count as u128,
                    available: total,
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut seen = std::collections::HashSet::new();
            let mut out = Vec::with_capacity(count);
            let mut attempts = 0u64;
            while out.len() < count {
                attempts += 1;
                if attempts > 1_000_000 {
                    return Err(Error::invalid("family sampling stalled"));
                }
                let mut pick = rand::seq::index::sample(&mut rng, n, k - 1).into_vec();
                pick.sort_unstable();
                if seen.insert(pick.clone()) {
                    out.push(pick);
                }
            }
            out
        }
    };
    deletions
        .into_iter()
        .map(|del| {
            let deleted = VertexSet::new(del)?;
            let (graph, kept) = g.delete_vertices(&deleted)?;
            Ok(FamilyMember {
                deleted,
                graph,
                kept,
            })
        })
        .collect()
}

/// The family floor constant: worst dimension-delta fit over the family.
#[derive(Debug, Clone)]
pub struct FamilyConstant {
    pub a: f64,
    pub delta: f64,
    /// True when the whole family was enumerated.
    pub certified: bool,
    pub members: usize,
    pub worst_deletion: VertexSet,
}

/// Minimum isoperimetric fit constant across the induced family. Zero when
/// any member is disconnected, since that member has a boundary-free subset.
pub fn family_constant(
    g: &Graph,
    k: usize,
    delta: f64,
    mode: FamilyMode,
) -> Result<FamilyConstant> {
    let members = subgraph_family(g, k, mode)?;
    let count = members.len();
    let mut worst: Option<(f64, VertexSet)> = None;
    for member in members {
        if member.graph.n() < 2 {
            return Err(Error::invalid(
                "family members must keep at least two vertices",
            ));
        }
        let fit = iso_fit(&eip_bruteforce(&member.graph)?, delta)?;
        if worst.as_ref().map_or(true, |(w, _)| fit.c < *w) {
            worst = Some((fit.c, member.deleted));
        }
    }
    let (a, worst_deletion) = worst.expect("family is nonempty");
    Ok(FamilyConstant {
        a,
        delta,
        certified: matches!(mode, FamilyMode::Exhaustive),
        members: count,
        worst_deletion,
    })
}

/// Smallest indicator-ratio floor across the family: the largest constant
/// every member is (c, rho_p)-isoperimetric for.
pub fn family_certified_constant(g: &Graph, k: usize, p: f64) -> Result<f64> {
    let members = subgraph_family(g, k, FamilyMode::Exhaustive)?;
    let mut worst = f64::INFINITY;
    for member in members {
        let (ratio, _) = min_indicator_ratio(&member.graph, p)?;
        worst = worst.min(ratio);
    }
    Ok(worst)
}

/// Boundary size of a token-set family in the swap metric: ordered pairs
/// counted once, i.e. pairs (X in omega, Y outside) with |X sym-diff Y| = 2,
/// regardless of base-graph edges.
pub fn johnson_boundary(n: usize, k: usize, omega: &[KSet]) -> Result<u64> {
    if k > n {
        return Err(Error::invalid(format!(
            "token count {k} exceeds vertex count {n}"
        )));
    }
    let mut ranks: Vec<u128> = Vec::with_capacity(omega.len());
    for x in omega {
        if x.len() != k {
            return Err(Error::invalid("family members must all have k tokens"));
        }
        if let Some(&v) = x.members().iter().find(|&&v| v >= n) {
            return Err(Error::VertexRange { label: v + 1, n });
        }
        ranks.push(x.rank());
    }
    ranks.sort_unstable();
    if ranks.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("token family contains a duplicate set"));
    }
    let mut boundary = 0u64;
    for x in omega {
        for &out_v in x.members() {
            for in_v in 0..n {
                if x.contains(in_v) {
                    continue;
                }
                let mut y: Vec<usize> = x
                    .members()
                    .iter()
                    .copied()
                    .filter(|&v| v != out_v)
                    .collect();
                let pos = y.binary_search(&in_v).unwrap_err();
                y.insert(pos, in_v);
                let ry = crate::combin::colex_rank(&y);
                if ranks.binary_search(&ry).is_err() {
                    boundary += 1;
                }
            }
        }
    }
    Ok(boundary)
}

/// How the token-subset space was covered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

/// Outcome of checking the token-graph boundary inequality.
#[derive(Debug, Clone)]
pub struct SymprodBoundReport {
    pub pass: bool,
    pub scanned: u64,
    pub mode: ScanMode,
    /// Smallest boundary-to-floor ratio seen (1 means the inequality is
    /// tight somewhere), infinite if no scanned family had a positive floor.
    pub tightest_ratio: f64,
    pub witness: Option<Vec<KSet>>,
}

/// Checks, over families omega of k-token sets, that the token-graph edge
/// boundary dominates the floor (c / (n - k + 1)) * (2 * swap-boundary)^(1/p)
/// derived from base-graph isoperimetry. The constant must first survive
/// [`check_isoperimetric`] on every induced family member.
pub fn verify_symprod_bound(g: &Graph, k: usize, p: f64, c: f64) -> Result<SymprodBoundReport> {
    validate_p(p)?;
    let n = g.n();
    for member in subgraph_family(g, k, FamilyMode::Exhaustive)? {
        let check = check_isoperimetric(&member.graph, c, p)?;
        if !check.pass {
            return Err(Error::invalid(format!(
                "constant {c} is not certified: deleting {:?} leaves a graph with indicator ratio {}",
                member.deleted.external_labels(),
                check.worst_ratio
            )));
        }
    }

    let product = SymProduct::build(g, k)?;
    let big_n = product.vertex_count();
    if big_n > 63 {
        return Err(Error::invalid(format!(
            "token subset scan needs at most 63 token sets, got {big_n}"
        )));
    }
    // adjacency over token-set ranks, for both metrics
    let product_adj = adjacency_masks(product.graph());
    let mut swap_adj = vec![0u64; big_n];
    for r in 0..big_n {
        let x = product.vertex(r);
        for &out_v in x.members() {
            for in_v in 0..n {
                if x.contains(in_v) {
                    continue;
                }
                let mut y: Vec<usize> = x
                    .members()
                    .iter()
                    .copied()
                    .filter(|&v| v != out_v)
                    .collect();
                let pos = y.binary_search(&in_v).unwrap_err();
                y.insert(pos, in_v);
                swap_adj[r] |= 1 << crate::combin::colex_rank(&y);
            }
        }
    }

    let scale = c / (n - k + 1) as f64;
    let evaluate = |omega: u64| -> (f64, f64) {
        let mut lhs = 0u64;
        let mut swap = 0u64;
        let mut rest = omega;
        while rest != 0 {
            let r = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            lhs += (product_adj[r] & !omega).count_ones() as u64;
            swap += (swap_adj[r] & !omega).count_ones() as u64;
        }
        (lhs as f64, scale * (2.0 * swap as f64).powf(1.0 / p))
    };

    let exhaustive = big_n <= 15;
    let (mode, masks): (ScanMode, Box<dyn Iterator<Item = u64>>) = if exhaustive {
        caps::guard(
            "token subset scan",
            1u128 << big_n,
            caps::current().enumeration,
        )?;
        (ScanMode::Exhaustive, Box::new(0..1u64 << big_n))
    } else {
        let count = 65_536u64;
        let seed = 0x1505_c0de;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all = (1u64 << big_n) - 1;
        (
            ScanMode::Sampled { count, seed },
            Box::new((0..count).map(move |_| rng.gen::<u64>() & all)),
        )
    };

    let mut pass = true;
    let mut tightest = f64::INFINITY;
    let mut witness_mask = None;
    let mut scanned = 0u64;
    for omega in masks {
        scanned += 1;
        let (lhs, rhs) = evaluate(omega);
        if lhs + 1e-9 < rhs {
            pass = false;
            tightest = lhs / rhs;
            witness_mask = Some(omega);
            break;
        }
        if rhs > 0.0 {
            let ratio = lhs / rhs;
            if ratio < tightest {
                tightest = ratio;
                witness_mask = Some(omega);
            }
        }
    }

    Ok(SymprodBoundReport {
        pass,
        scanned,
        mode,
        tightest_ratio: tightest,
        witness: witness_mask.map(|mask| {
            (0..big_n)
                .filter(|&r| mask >> r & 1 == 1)
                .map(|r| product.vertex(r))
                .collect()
        }),
    })
}

/// Isoperimetric constant inherited by the k-token graph:
/// c * n^(1/p) / (n - k + 1).
pub fn corollary_constant(c: f64, n: usize, k: usize, p: f64) -> Result<f64> {
    validate_p(p)?;
    if c < 0.0 {
        return Err(Error::invalid("isoperimetric constant must be nonnegative"));
    }
    if k < 1 || k > n {
        return Err(Error::invalid(format!(
            "token count {k} out of range for {n} vertices"
        )));
    }
    Ok(c * (n as f64).powf(1.0 / p) / (n - k + 1) as f64)
}
