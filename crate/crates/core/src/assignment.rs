//! Minimum-cost assignment and the token-set distance relaxation.
//!
//! Distances between k-sets in a token graph are expensive to get exactly
//! (BFS over C(n, k) vertices), but moving tokens one at a time along base
//! shortest paths gives a relaxation: strip the common tokens, then match
//! leftover sources to targets at minimum total base distance. The matching
//! is a square assignment problem, solved by shortest augmenting paths with
//! potentials in O(a^3).
//!
//! Unreachable entries stay infinite rather than becoming a big finite
//! constant: path search simply never relaxes through them, and if no
//! all-finite perfect matching exists the augmentation runs out of reachable
//! columns and the whole assignment is reported infeasible.

use crate::extint::ExtInt;
use crate::graph::DistanceMatrix;
use crate::sympow::KSet;
use crate::{Error, Result};

/// Square matrix of extended nonnegative integer costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostMatrix {
    dim: usize,
    c: Vec<ExtInt>,
}

impl CostMatrix {
    pub fn new(dim: usize, entries: Vec<ExtInt>) -> Result<CostMatrix> {
        if entries.len() != dim * dim {
            return Err(Error::invalid(format!(
                "cost matrix needs {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(CostMatrix { dim, c: entries })
    }

    pub fn from_rows(rows: &[Vec<ExtInt>]) -> Result<CostMatrix> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::invalid("cost matrix rows must be square"));
        }
        Ok(CostMatrix {
            dim,
            c: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> ExtInt {
        self.c[i * self.dim + j]
    }
}

/// An optimal assignment: total cost, and the column chosen for each row.
/// An infeasible instance (no all-finite perfect matching) has infinite
/// value and an empty permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub value: ExtInt,
    pub permutation: Vec<usize>,
}

/// Minimum total cost over all row-to-column bijections. Among optimal
/// bijections the lexicographically smallest permutation is returned, so
/// equal-cost inputs always report the same witness.
pub fn min_assignment(cost: &CostMatrix) -> Assignment {
    let value = optimal_value(cost);
    let ExtInt::Finite(total) = value else {
        return Assignment {
            value: ExtInt::Infinite,
            permutation: Vec::new(),
        };
    };
    let n = cost.dim;
    let mut permutation = Vec::with_capacity(n);
    let mut used_cols = vec![false; n];
    let mut prefix: u64 = 0;
    // fix columns row by row, smallest column that still reaches the optimum
    for i in 0..n {
        let mut chosen = None;
        for j in 0..n {
            if used_cols[j] {
                continue;
            }
            let ExtInt::Finite(cij) = cost.get(i, j) else {
                continue;
            };
            let rest = remaining_value(cost, i + 1, &used_cols, j);
            if let ExtInt::Finite(rest) = rest {
                if prefix + cij + rest == total {
                    chosen = Some((j, cij));
                    break;
                }
            }
        }
        let (j, cij) = chosen.expect("a feasible optimum admits a prefix extension");
        used_cols[j] = true;
        prefix += cij;
        permutation.push(j);
    }
    Assignment { value, permutation }
}

/// Optimal value of the subproblem on rows `from_row..` and the columns not
/// yet used (with `extra_col` also excluded).
fn remaining_value(
    cost: &CostMatrix,
    from_row: usize,
    used_cols: &[bool],
    extra_col: usize,
) -> ExtInt {
    let n = cost.dim;
    let cols: Vec<usize> = (0..n)
        .filter(|&j| !used_cols[j] && j != extra_col)
        .collect();
    let rows: Vec<usize> = (from_row..n).collect();
    debug_assert_eq!(cols.len(), rows.len());
    let sub = CostMatrix {
        dim: rows.len(),
        c: rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| cost.get(i, j)))
            .collect(),
    };
    optimal_value(&sub)
}

/// Shortest-augmenting-path assignment. Returns only the optimal value; the
/// lexicographic witness is reconstructed separately.
fn optimal_value(cost: &CostMatrix) -> ExtInt {
    let n = cost.dim;
    if n == 0 {
        return ExtInt::Finite(0);
    }
    let mut u = vec![0i128; n]; // row potentials
    let mut v = vec![0i128; n + 1]; // column potentials, column n virtual
    let mut matched: Vec<Option<usize>> = vec![None; n + 1]; // column -> row

    for i in 0..n {
        matched[n] = Some(i);
        let mut j0 = n;
        let mut min_to: Vec<Option<i128>> = vec![None; n]; // best reduced cost into column
        let mut way = vec![n; n];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = matched[j0].expect("walked columns carry a row");
            let mut delta: Option<i128> = None;
            let mut next = 0;
            for j in 0..n {
                if used[j] {
                    continue;
                }
                if let ExtInt::Finite(cij) = cost.get(i0, j) {
                    let reduced = cij as i128 - u[i0] - v[j];
                    if min_to[j].map_or(true, |m| reduced < m) {
                        min_to[j] = Some(reduced);
                        way[j] = j0;
                    }
                }
                if let Some(m) = min_to[j] {
                    if delta.map_or(true, |d| m < d) {
                        delta = Some(m);
                        next = j;
                    }
                }
            }
            // no finite edge reaches an unused column: no perfect matching
            let Some(delta) = delta else {
                return ExtInt::Infinite;
            };
            for j in 0..=n {
                if used[j] {
                    if let Some(r) = matched[j] {
                        u[r] += delta;
                    }
                    v[j] -= delta;
                }
            }
            for j in 0..n {
                if !used[j] {
                    if let Some(m) = min_to[j].as_mut() {
                        *m -= delta;
                    }
                }
            }
            j0 = next;
            if matched[j0].is_none() {
                break;
            }
        }
        // augment back along the alternating tree
        loop {
            let j1 = way[j0];
            matched[j0] = matched[j1];
            j0 = j1;
            if j0 == n {
                break;
            }
        }
    }

    let mut total: u64 = 0;
    for j in 0..n {
        let row = matched[j].expect("feasible matching is perfect");
        match cost.get(row, j) {
            ExtInt::Finite(c) => total += c,
            ExtInt::Infinite => unreachable!("augmenting paths only use finite edges"),
        }
    }
    ExtInt::Finite(total)
}

/// Token-move relaxation of the token-graph distance between same-size sets:
/// strip the shared tokens and match the rest at minimum total base-graph
/// distance. Always a lower bound on the true token-graph distance, since an
/// actual token walk induces such a matching.
pub fn kset_distance(x: &KSet, y: &KSet, dist: &DistanceMatrix) -> Result<ExtInt> {
    if x.len() != y.len() {
        return Err(Error::invalid(format!(
            "token sets have different sizes {} and {}",
            x.len(),
            y.len()
        )));
    }
    let n = dist.n();
    if let Some(&v) = x.members().iter().chain(y.members()).find(|&&v| v >= n) {
        return Err(Error::VertexRange { label: v + 1, n });
    }
    let sources: Vec<usize> = x
        .members()
        .iter()
        .copied()
        .filter(|&v| !y.contains(v))
        .collect();
    let targets: Vec<usize> = y
        .members()
        .iter()
        .copied()
        .filter(|&v| !x.contains(v))
        .collect();
    if sources.is_empty() {
        return Ok(ExtInt::Finite(0));
    }
    let a = sources.len();
    let mut entries = Vec::with_capacity(a * a);
    for &s in &sources {
        for &t in &targets {
            entries.push(dist.get(s, t));
        }
    }
    let cost = CostMatrix::new(a, entries)?;
    Ok(optimal_value(&cost))
}
