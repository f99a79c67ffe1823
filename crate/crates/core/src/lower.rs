//! Closed-form eigenvalue lower bounds from graph geometry.
//!
//! The single-graph bound feeds on a certified isoperimetric fit (dimension
//! delta with constant c) and degree data; the token-graph bound composes it
//! with the inherited isoperimetry of the product. Bounds are conservative
//! by construction: every substitution replaces a true quantity by a bound
//! in the direction that can only shrink the result.

use crate::combin::binomial;
use crate::eigen::{laplacian_matrix, normalized_laplacian};
use crate::graph::Graph;
use crate::iso::IsoFit;
use crate::sympow::SymProduct;
use crate::{Error, Result};

/// A lower bound that may decline to apply, with the reason on record.
#[derive(Debug, Clone, PartialEq)]
pub enum LowerOutcome {
    Bound(f64),
    NotApplicable(String),
}

impl LowerOutcome {
    pub fn value(&self) -> Option<f64> {
        match self {
            LowerOutcome::Bound(v) => Some(*v),
            LowerOutcome::NotApplicable(_) => None,
        }
    }

    pub fn is_applicable(&self) -> bool {
        matches!(self, LowerOutcome::Bound(_))
    }
}

fn dimension_exponent(delta: f64) -> f64 {
    if delta.is_infinite() {
        1.0
    } else {
        1.0 - 1.0 / delta
    }
}

/// Lower bound on the j-th smallest Laplacian eigenvalue of a graph with
/// minimum degree b, maximum degree beta, m edges, and a certified
/// isoperimetric floor c * s^(1 - 1/delta):
///
///   (b c^2 / (16 e beta^2)) ((delta-2)/(delta-1))^2 (j beta / (18 m))^(2/delta)
///
/// Requires delta > 2; infinite delta sends the last two factors to 1.
/// j = 0 returns 0 outright rather than relying on 0^0.
pub fn lower_bound_lambda_graph(
    b: f64,
    beta: f64,
    c: f64,
    delta: f64,
    j: usize,
    m_edges: f64,
) -> Result<LowerOutcome> {
    if b < 0.0 || c < 0.0 {
        return Err(Error::invalid(
            "degree and constant inputs must be nonnegative",
        ));
    }
    if beta <= 0.0 || m_edges <= 0.0 {
        return Err(Error::invalid(
            "maximum degree and edge count must be positive",
        ));
    }
    if j == 0 {
        return Ok(LowerOutcome::Bound(0.0));
    }
    if !(delta > 2.0) {
        return Ok(LowerOutcome::NotApplicable(format!(
            "dimension must exceed 2, got {delta}"
        )));
    }
    let head = b * c * c / (16.0 * std::f64::consts::E * beta * beta);
    let (shape, tail) = if delta.is_infinite() {
        (1.0, 1.0)
    } else {
        let shape = (delta - 2.0) / (delta - 1.0);
        let tail = (j as f64 * beta / (18.0 * m_edges)).powf(2.0 / delta);
        (shape * shape, tail)
    };
    Ok(LowerOutcome::Bound(head * shape * tail))
}

/// Volume-form isoperimetric constant c / beta^(1 - 1/delta).
pub fn c_delta(c: f64, beta: f64, delta: f64) -> Result<f64> {
    if beta < 1.0 {
        return Err(Error::invalid("maximum degree must be at least 1"));
    }
    if !(delta > 1.0) {
        return Err(Error::invalid("dimension must exceed 1"));
    }
    Ok(c / beta.powf(dimension_exponent(delta)))
}

/// Where the token-graph edge count in a bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeCountSource {
    /// Counted in the built product.
    Exact,
    /// The handshake ceiling k * beta_1 * C(n,k) / 2.
    DegreeBound,
}

/// A lower bound for one (k, j) block, with every input on record.
#[derive(Debug, Clone)]
pub struct LkLowerBound {
    pub k: usize,
    pub j: usize,
    /// Isoperimetric floor of the induced family (worst member).
    pub a_k: f64,
    pub delta_k: f64,
    /// Base-graph fit feeding the minimum-degree substitute.
    pub base_fit: IsoFit,
    pub beta1: usize,
    pub edge_count: f64,
    pub edge_count_source: EdgeCountSource,
    pub outcome: LowerOutcome,
}

/// The display form of the token-graph bound, with the edge count replaced
/// by its handshake ceiling so the degree cancels:
///
///   (c k^(-1/delta) a_k^2 / (16 e k beta1^2)) (n^(1-1/delta_k)/(n-k+1))^2
///     ((delta_k-2)/(delta_k-1))^2 (j / (9 C(n,k)))^(2/delta_k)
///
/// The leading k exponent uses the base graph's dimension; the shape and
/// tail use the family dimension.
pub fn lk_display_bound(
    base_fit: &IsoFit,
    a_k: f64,
    delta_k: f64,
    n: usize,
    k: usize,
    beta1: usize,
    j: usize,
) -> Result<LowerOutcome> {
    let b_sub = base_fit.c * (k as f64).powf(dimension_exponent(base_fit.delta));
    let c_sub = a_k * (n as f64).powf(dimension_exponent(delta_k)) / (n - k + 1) as f64;
    let beta_sub = (k * beta1) as f64;
    let m_sub = beta_sub * binomial(n as u128, k as u128) as f64 / 2.0;
    lower_bound_lambda_graph(b_sub, beta_sub, c_sub, delta_k, j, m_sub)
}

/// Lower bound on the j-th eigenvalue of the k-token Laplacian. Uses the
/// exact product edge count when the product fits under the size caps,
/// otherwise the handshake ceiling; both directions keep the bound valid.
pub fn lower_bound_lambda_lk(
    g: &Graph,
    k: usize,
    j: usize,
    a_k: f64,
    delta_k: f64,
    base_fit: &IsoFit,
) -> Result<LkLowerBound> {
    let n = g.n();
    if k < 1 || k >= n {
        return Err(Error::invalid(format!(
            "token count must satisfy 1 <= k <= n-1, got k = {k}, n = {n}"
        )));
    }
    if a_k < 0.0 {
        return Err(Error::invalid("family constant must be nonnegative"));
    }
    let beta1 = g.degree_profile().max_degree;
    let beta_sub = (k * beta1) as f64;
    let (edge_count, edge_count_source) = match SymProduct::build(g, k) {
        Ok(product) => (product.graph().edge_count() as f64, EdgeCountSource::Exact),
        Err(Error::SizeCap { .. }) => (
            beta_sub * binomial(n as u128, k as u128) as f64 / 2.0,
            EdgeCountSource::DegreeBound,
        ),
        Err(e) => return Err(e),
    };

    let outcome = if beta1 == 0 {
        LowerOutcome::NotApplicable("graph has no edges".to_string())
    } else if a_k == 0.0 {
        LowerOutcome::NotApplicable(
            "family floor is zero: some induced member has a boundary-free subset".to_string(),
        )
    } else if !(delta_k > 2.0) {
        LowerOutcome::NotApplicable(format!("family dimension must exceed 2, got {delta_k}"))
    } else if 2 * k > n {
        // The minimum token degree floor c * k^(1-1/delta) only covers
        // subsets up to half the vertices.
        LowerOutcome::NotApplicable(format!(
            "token count {k} exceeds n/2 = {}, outside the certified range",
            n as f64 / 2.0
        ))
    } else if edge_count <= 0.0 {
        LowerOutcome::NotApplicable("token graph has no edges".to_string())
    } else {
        let b_sub = base_fit.c * (k as f64).powf(dimension_exponent(base_fit.delta));
        let c_sub = a_k * (n as f64).powf(dimension_exponent(delta_k)) / (n - k + 1) as f64;
        lower_bound_lambda_graph(b_sub, beta_sub, c_sub, delta_k, j, edge_count)?
    };

    Ok(LkLowerBound {
        k,
        j,
        a_k,
        delta_k,
        base_fit: *base_fit,
        beta1,
        edge_count,
        edge_count_source,
        outcome,
    })
}

/// Outcome of checking the degree sandwich between the Laplacian and its
/// normalized form: b * mu_j <= lambda_j <= beta * mu_j for every j.
#[derive(Debug, Clone)]
pub struct SandwichReport {
    pub pass: bool,
    /// Largest one-sided violation found, 0 when everything holds.
    pub worst_violation: f64,
    pub worst_index: usize,
}

/// Verifies the sandwich on oracle spectra of both matrices. Degrees must
/// all be positive; regular graphs should show equality on both sides.
pub fn sandwich_check(g: &Graph, tol: f64) -> Result<SandwichReport> {
    let lap = laplacian_matrix(g).eigenvalues(1e-11)?;
    let norm = normalized_laplacian(g)?.eigenvalues(1e-11)?;
    let profile = g.degree_profile();
    let b = profile.min_degree as f64;
    let beta = profile.max_degree as f64;
    let mut worst = 0.0f64;
    let mut worst_index = 0;
    for jj in 0..lap.len() {
        let lambda = lap.lambda(jj);
        let mu = norm.lambda(jj);
        let low_gap = b * mu - lambda;
        let high_gap = lambda - beta * mu;
        let gap = low_gap.max(high_gap);
        if gap > worst {
            worst = gap;
            worst_index = jj;
        }
    }
    Ok(SandwichReport {
        pass: worst <= tol,
        worst_violation: worst,
        worst_index,
    })
}
