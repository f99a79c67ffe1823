//! Exact spectral theory for token graphs of complete graphs.
//!
//! On K_n the k-token Laplacian has eigenvalues j(n+1-j) for j = 0..k with
//! multiplicities C(n,j) - C(n,j-1), and its eigenprojectors are rational
//! combinations of the distance-shell adjacency matrices, with coefficients
//! given by a discrete orthogonal polynomial evaluated at the shell index.
//! Everything here is computed in exact rational arithmetic and only
//! converted to floats at the matrix boundary, so these spectra serve as
//! oracles for the dense eigensolver rather than the other way round.

use crate::combin::{binomial, binomial_i128, ksubsets};
use crate::eigen::SymmetricMatrix;
use crate::graph::Graph;
use crate::sympow::{build_heisenberg_dense, KSet};
use crate::{caps, Error, Result};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

type Rat = Ratio<i128>;

fn rat_binom(n: i128, k: i128) -> Rat {
    if k < 0 || k > n {
        return Rat::zero();
    }
    Rat::from_integer(binomial_i128(n, k))
}

/// Multiplicity of the j-th eigenvalue block: C(n,j) - C(n,j-1), and 1 at
/// j = 0.
pub fn eigenspace_multiplicity(n: usize, j: usize) -> u128 {
    if j == 0 {
        1
    } else {
        binomial(n as u128, j as u128) - binomial(n as u128, j as u128 - 1)
    }
}

fn check_sector(n: usize, k: usize, j: usize) -> Result<()> {
    if k > n / 2 {
        return Err(Error::invalid(format!(
            "shell coefficients are defined for k <= n/2, got k = {k}, n = {n}"
        )));
    }
    if j > k {
        return Err(Error::invalid(format!(
            "eigenvalue index j = {j} exceeds token count k = {k}"
        )));
    }
    Ok(())
}

/// Exact value at z of the shell polynomial for block j of the k-token
/// graph of K_n:
///
///   h(z) = m_j * sum_a (-1)^a [C(j,a) C(n+1-j,a) / (C(k,a) C(n-k,a))] C(z,a)
///
/// At z = 0 this is the block multiplicity m_j.
pub fn hahn_value(n: usize, k: usize, j: usize, z: usize) -> Result<Rat> {
    check_sector(n, k, j)?;
    let (n, k, j, z) = (n as i128, k as i128, j as i128, z as i128);
    let mut sum = Rat::zero();
    for a in 0..=j {
        let numer = rat_binom(j, a) * rat_binom(n + 1 - j, a) * rat_binom(z, a);
        let denom = rat_binom(k, a) * rat_binom(n - k, a);
        let term = numer / denom;
        if a % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(Rat::from_integer(eigenspace_multiplicity(n as usize, j as usize) as i128) * sum)
}

/// Values of the shell polynomial at z = 0..=k.
pub fn hahn_row(n: usize, k: usize, j: usize) -> Result<Vec<Rat>> {
    (0..=k).map(|z| hahn_value(n, k, j, z)).collect()
}

/// 0/1 matrix over k-token sets with an entry where |X sym-diff Y| = 2z.
/// z = 0 gives the identity; z = 1 gives the token-graph adjacency of K_n.
pub fn shell_adjacency(n: usize, k: usize, z: usize) -> Result<SymmetricMatrix> {
    if k > n {
        return Err(Error::invalid(format!(
            "token count {k} exceeds vertex count {n}"
        )));
    }
    let dim = binomial(n as u128, k as u128);
    caps::guard("shell matrix dimension", dim, caps::current().matrix_dim)?;
    let dim = dim as usize;
    let sets: Vec<KSet> = ksubsets(n, k)
        .map(|members| KSet::new(members, n).expect("enumerated members are in range"))
        .collect();
    let mut a = SymmetricMatrix::zeros(dim);
    for r in 0..dim {
        if z == 0 {
            a.set(r, r, 1.0);
            continue;
        }
        for c in r + 1..dim {
            if sets[r].sym_diff_len(&sets[c]) == 2 * z {
                a.set(r, c, 1.0);
            }
        }
    }
    Ok(a)
}

/// Spectral projector onto the j-th eigenvalue block of the k-token
/// Laplacian of K_n: (1/C(n,k)) * sum_z h(z) A_z.
pub fn projector(n: usize, k: usize, j: usize) -> Result<SymmetricMatrix> {
    check_sector(n, k, j)?;
    let row = hahn_row(n, k, j)?;
    let scale = Rat::one() / Rat::from_integer(binomial_i128(n as i128, k as i128));
    let dim = binomial(n as u128, k as u128) as usize;
    let mut p = SymmetricMatrix::zeros(dim);
    for (z, coeff) in row.iter().enumerate() {
        let weight = coeff * scale;
        if weight.is_zero() {
            continue;
        }
        let wf = rat_to_f64(&weight);
        let shell = shell_adjacency(n, k, z)?;
        for r in 0..dim {
            for c in r..dim {
                let v = shell.get(r, c);
                if v != 0.0 {
                    p.set(r, c, p.get(r, c) + wf * v);
                }
            }
        }
    }
    Ok(p)
}

fn rat_to_f64(r: &Rat) -> f64 {
    // exact for the magnitudes in play; avoids Ratio's lossy to_f64 on i128
    let num = *r.numer() as f64;
    let den = *r.denom() as f64;
    debug_assert!(r.numer().abs() < (1i128 << 53) && r.denom().abs() < (1i128 << 53));
    num / den
}

/// Closed-form spectrum of the k-token Laplacian of K_n as
/// (eigenvalue, multiplicity) pairs in ascending order. The eigenvalue of
/// block j is j(n+1-j).
pub fn meanfield_lk_spectrum(n: usize, k: usize) -> Result<Vec<(f64, u128)>> {
    if k > n / 2 {
        return Err(Error::invalid(format!(
            "closed-form spectrum needs k <= n/2, got k = {k}, n = {n}"
        )));
    }
    Ok((0..=k)
        .map(|j| ((j * (n + 1 - j)) as f64, eigenspace_multiplicity(n, j)))
        .collect())
}

/// Closed-form spectrum of the full interaction operator of K_n:
/// eigenvalue 0 with multiplicity n+1, and j(n+1-j) with multiplicity
/// (n+1-2j) * m_j for j = 1..floor(n/2).
pub fn meanfield_h1_spectrum(n: usize) -> Vec<(f64, u128)> {
    let mut out = vec![(0.0, n as u128 + 1)];
    for j in 1..=n / 2 {
        out.push((
            (j * (n + 1 - j)) as f64,
            (n + 1 - 2 * j) as u128 * eigenspace_multiplicity(n, j),
        ));
    }
    out
}

/// Rebuilds the k-token Laplacian of K_n from its spectral projectors:
/// sum_j j(n+1-j) P_j. Agreement with the combinatorial construction is a
/// strong joint test of the polynomial table and the shell matrices.
pub fn reconstruct_lk(n: usize, k: usize) -> Result<SymmetricMatrix> {
    check_sector(n, k, k)?;
    let dim = binomial(n as u128, k as u128) as usize;
    let mut l = SymmetricMatrix::zeros(dim);
    for j in 1..=k {
        let lambda = (j * (n + 1 - j)) as f64;
        let p = projector(n, k, j)?;
        for r in 0..dim {
            for c in r..dim {
                l.set(r, c, l.get(r, c) + lambda * p.get(r, c));
            }
        }
    }
    Ok(l)
}

/// Basis indices (bitmasks) of the k-token sets of K_n, in the same order
/// the token sets are ranked.
fn sector_masks(n: usize, k: usize) -> Vec<usize> {
    ksubsets(n, k)
        .map(|members| members.iter().fold(0usize, |m, &v| m | (1 << v)))
        .collect()
}

/// Assembles the full 2^n interaction operator of K_n from embedded
/// spectral projectors, sector by sector. Sectors above n/2 reuse the lower
/// blocks through the complement bijection. This is the projector-side
/// construction; [`build_heisenberg_dense`] is the combinatorial one.
pub fn assemble_meanfield_hamiltonian(n: usize) -> Result<SymmetricMatrix> {
    if n == 0 {
        return Err(Error::invalid("need at least one vertex"));
    }
    let dim: u128 = 1u128 << n.min(127);
    caps::guard("spin state space", dim, caps::current().matrix_dim)?;
    let mut h = SymmetricMatrix::zeros(dim as usize);
    let full = (1usize << n) - 1;
    let half = n / 2;
    // direct sectors k <= n/2, mirrored sectors n-k > n/2 via complements
    for k in 1..=half {
        let masks = sector_masks(n, k);
        let mirrored: Vec<usize> = masks.iter().map(|&m| full ^ m).collect();
        let mirror_distinct = n - k != k;
        for j in 1..=k {
            let lambda = (j * (n + 1 - j)) as f64;
            let p = projector(n, k, j)?;
            for r in 0..p.dim() {
                for c in r..p.dim() {
                    let v = lambda * p.get(r, c);
                    if v == 0.0 {
                        continue;
                    }
                    h.set(masks[r], masks[c], h.get(masks[r], masks[c]) + v);
                    if mirror_distinct {
                        h.set(
                            mirrored[r].min(mirrored[c]),
                            mirrored[r].max(mirrored[c]),
                            h.get(mirrored[r], mirrored[c]) + v,
                        );
                    }
                }
            }
        }
    }
    Ok(h)
}

/// Max absolute entry difference between the projector-assembled operator
/// and the combinatorial one. Exact agreement up to float assembly noise.
pub fn assembly_deviation(n: usize) -> Result<f64> {
    let assembled = assemble_meanfield_hamiltonian(n)?;
    let direct = build_heisenberg_dense(&Graph::complete(n))?;
    Ok(assembled.max_abs_diff(&direct))
}
