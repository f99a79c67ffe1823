//! Token graphs and the sector decomposition of the Heisenberg Hamiltonian.
//!
//! The k-th token graph of G has the k-subsets of V(G) as vertices, two
//! subsets adjacent exactly when their symmetric difference is an edge of G.
//! Its Laplacian L_k acts on the k-up-spin sector, and the ferromagnetic
//! Heisenberg Hamiltonian (sum of 1 - swap over edges) is the direct sum of
//! L_0 through L_n. Everything here is desk-scale and exact: matrices carry
//! small integers, and the complement symmetry between L_k and L_{n-k} holds
//! with zero floating-point deviation.

use crate::combin::{binomial, colex_rank, colex_unrank, ksubsets};
use crate::eigen::{laplacian_matrix, spectra_mismatch, SymmetricMatrix};
use crate::graph::Graph;
use crate::{caps, Error, Result};

/// A k-subset of the vertices of a host graph, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KSet {
    members: Vec<usize>,
}

impl KSet {
    pub fn new(mut members: Vec<usize>, n: usize) -> Result<KSet> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("token set contains a duplicate vertex"));
        }
        if let Some(&v) = members.iter().find(|&&v| v >= n) {
            return Err(Error::VertexRange { label: v + 1, n });
        }
        Ok(KSet { members })
    }

    fn from_sorted(members: Vec<usize>) -> KSet {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        KSet { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Position in the colexicographic enumeration of same-size subsets.
    pub fn rank(&self) -> u128 {
        colex_rank(&self.members)
    }

    pub fn from_rank(rank: u128, n: usize, k: usize) -> KSet {
        KSet::from_sorted(colex_unrank(rank, n, k))
    }

    pub fn complement(&self, n: usize) -> KSet {
        let mut members = Vec::with_capacity(n - self.members.len());
        let mut it = self.members.iter().peekable();
        for v in 0..n {
            if it.peek() == Some(&&v) {
                it.next();
            } else {
                members.push(v);
            }
        }
        KSet::from_sorted(members)
    }

    /// Size of the symmetric difference with another same-host set.
    pub fn sym_diff_len(&self, other: &KSet) -> usize {
        let mut i = 0;
        let mut j = 0;
        let mut common = 0;
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    common += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        self.members.len() + other.members.len() - 2 * common
    }

    /// 1-indexed view for reports.
    pub fn external_labels(&self) -> Vec<usize> {
        self.members.iter().map(|&v| v + 1).collect()
    }
}

/// The k-th token graph of a base graph, vertices indexed by colex rank.
#[derive(Debug, Clone)]
pub struct SymProduct {
    base_n: usize,
    k: usize,
    graph: Graph,
}

impl SymProduct {
    /// Builds the token graph. C(n, k) is guarded by the dense size cap.
    pub fn build(g: &Graph, k: usize) -> Result<SymProduct> {
        let n = g.n();
        if k > n {
            return Err(Error::invalid(format!(
                "token count {k} exceeds vertex count {n}"
            )));
        }
        let count = binomial(n as u128, k as u128);
        caps::guard(
            "token graph vertex count",
            count,
            caps::current().matrix_dim,
        )?;
        let count = count as usize;

        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (r, x) in ksubsets(n, k).enumerate() {
            // swap one token along each boundary edge of x
            for &(u, v) in g.edges() {
                let cu = x.binary_search(&u).is_ok();
                let cv = x.binary_search(&v).is_ok();
                if cu == cv {
                    continue;
                }
                let (out_v, in_v) = if cu { (u, v) } else { (v, u) };
                let mut y = x.clone();
                let pos = y.binary_search(&out_v).expect("member is present");
                y.remove(pos);
                let pos = y.binary_search(&in_v).unwrap_err();
                y.insert(pos, in_v);
                let ry = colex_rank(&y) as usize;
                if r < ry {
                    edges.push((r, ry));
                }
            }
        }
        Ok(SymProduct {
            base_n: n,
            k,
            graph: Graph::new(count.max(1), &edges)?,
        })
    }

    pub fn base_n(&self) -> usize {
        self.base_n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The token graph itself, vertices being colex ranks of k-sets.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.n()
    }

    pub fn vertex(&self, rank: usize) -> KSet {
        KSet::from_rank(rank as u128, self.base_n, self.k)
    }

    pub fn rank_of(&self, set: &KSet) -> usize {
        set.rank() as usize
    }
}

/// The sector Laplacian L_k: diagonal |boundary(X)|, off-diagonal -1 between
/// adjacent token sets. For k = 0 this is the 1x1 zero matrix.
pub fn laplacian_lk(g: &Graph, k: usize) -> Result<SymmetricMatrix> {
    if k == 0 {
        if g.n() < 1 {
            return Err(Error::invalid("graph must have a vertex"));
        }
        return Ok(SymmetricMatrix::zeros(1));
    }
    let product = SymProduct::build(g, k)?;
    Ok(laplacian_matrix(product.graph()))
}

/// Maximum absolute deviation between L_{n-k} and the complement-relabeled
/// L_k. Both matrices hold integers, so the expected value is exactly zero.
pub fn complement_deviation(g: &Graph, k: usize) -> Result<f64> {
    let n = g.n();
    if k > n {
        return Err(Error::invalid(format!(
            "token count {k} exceeds vertex count {n}"
        )));
    }
    let lk = laplacian_lk(g, k)?;
    let lnk = laplacian_lk(g, n - k)?;
    if k == 0 || k == n {
        // both sectors are the 1x1 zero matrix
        return Ok(lk.max_abs_diff(&lnk));
    }
    let dim = lk.dim();
    let comp_rank: Vec<usize> = (0..dim)
        .map(|r| KSet::from_rank(r as u128, n, k).complement(n).rank() as usize)
        .collect();
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let dev = (lk.get(i, j) - lnk.get(comp_rank[i], comp_rank[j])).abs();
            worst = worst.max(dev);
        }
    }
    Ok(worst)
}

/// The full Hamiltonian on the 2^n spin basis, states indexed by the bitmask
/// of up spins. Entry by entry: diagonal |boundary(X)|, and -1 between X and
/// X with one boundary edge's endpoints exchanged.
pub fn build_heisenberg_dense(g: &Graph) -> Result<SymmetricMatrix> {
    let n = g.n();
    caps::guard(
        "spin state space",
        1u128 << n.min(127),
        caps::current().matrix_dim,
    )?;
    let dim = 1usize << n;
    let mut h = SymmetricMatrix::zeros(dim);
    for mask in 0..dim as u64 {
        let mut boundary = 0.0;
        for &(u, v) in g.edges() {
            if (mask >> u & 1) != (mask >> v & 1) {
                boundary += 1.0;
                let target = mask ^ (1 << u) ^ (1 << v);
                h.set(mask as usize, target as usize, -1.0);
            }
        }
        h.add(mask as usize, mask as usize, boundary);
    }
    Ok(h)
}

/// Outcome of checking the sector decomposition of the Hamiltonian.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub sector_sizes: Vec<usize>,
    /// Largest |entry| connecting states of different up-spin counts.
    pub max_off_sector_entry: f64,
    /// Largest eigenvalue gap between the Hamiltonian spectrum and the
    /// concatenated sector spectra, compared in sorted order.
    pub max_spectrum_deviation: f64,
    pub pass: bool,
    /// First offending comparison when failing.
    pub mismatch: Option<String>,
}

/// Verifies that the Hamiltonian spectrum is the multiset union of the
/// sector Laplacian spectra, and that no matrix entry couples sectors.
pub fn verify_decomposition(g: &Graph, tol: f64) -> Result<DecompositionReport> {
    let n = g.n();
    let h = build_heisenberg_dense(g)?;
    let dim = h.dim();

    let mut max_off_sector: f64 = 0.0;
    for a in 0..dim {
        let wa = (a as u64).count_ones();
        for b in 0..dim {
            if wa != (b as u64).count_ones() {
                max_off_sector = max_off_sector.max(h.get(a, b).abs());
            }
        }
    }

    let h_spec = h.eigenvalues(1e-10)?;
    let mut sector_sizes = Vec::with_capacity(n + 1);
    let mut union: Vec<f64> = Vec::with_capacity(dim);
    for k in 0..=n {
        let lk = laplacian_lk(g, k)?;
        sector_sizes.push(lk.dim());
        union.extend_from_slice(lk.eigenvalues(1e-10)?.eigenvalues());
    }
    union.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));

    let mismatch_hit = spectra_mismatch(h_spec.eigenvalues(), &union, tol);
    let max_dev = h_spec
        .eigenvalues()
        .iter()
        .zip(&union)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let pass = mismatch_hit.is_none() && max_off_sector == 0.0;
    let mismatch = mismatch_hit
        .map(|(i, a, b)| format!("sorted eigenvalue {i}: Hamiltonian {a} vs sector union {b}"));
    Ok(DecompositionReport {
        sector_sizes,
        max_off_sector_entry: max_off_sector,
        max_spectrum_deviation: max_dev,
        pass,
        mismatch,
    })
}
