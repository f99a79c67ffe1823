//! Binomial coefficients and k-subset enumeration.
//!
//! Token-graph vertices are k-subsets ordered colexicographically: X precedes
//! Y when the largest element of the symmetric difference lies in Y. Ranks in
//! that order are sums of binomials, so rank and unrank cost O(k) table
//! lookups and the ordering of sets over the first n-1 base vertices is a
//! prefix of the ordering over n.

/// C(n, k), saturating at `u128::MAX` on overflow. The saturated value only
/// ever feeds size-guard comparisons, which it fails.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        // result * (n - i) / (i + 1) stays integral at every step
        match result.checked_mul(n - i) {
            Some(v) => result = v / (i + 1),
            None => {
                // retry in the other order; exactness is lost but the value
                // only gets compared against caps far below this range
                result = (result / (i + 1)).saturating_mul(n - i);
                if result == u128::MAX {
                    return u128::MAX;
                }
            }
        }
    }
    result
}

/// C(n, k) as i128, for exact rational arithmetic. Panics on overflow, which
/// is unreachable under the size caps.
pub fn binomial_i128(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: i128 = 1;
    for i in 0..k {
        result = result.checked_mul(n - i).expect("binomial overflow") / (i + 1);
    }
    result
}

/// Rank of a sorted k-subset in colexicographic order: sum of C(s_i, i+1)
/// over the i-th smallest element s_i.
pub fn colex_rank(set: &[usize]) -> u128 {
    set.iter()
        .enumerate()
        .map(|(i, &s)| binomial(s as u128, i as u128 + 1))
        .sum()
}

/// Inverse of [`colex_rank`] for subsets of {0, ..., n-1}.
pub fn colex_unrank(mut rank: u128, n: usize, k: usize) -> Vec<usize> {
    let mut set = vec![0usize; k];
    let mut upper = n;
    for i in (1..=k).rev() {
        // largest s < upper with C(s, i) <= rank
        let mut s = upper - 1;
        while binomial(s as u128, i as u128) > rank {
            s -= 1;
        }
        set[i - 1] = s;
        rank -= binomial(s as u128, i as u128);
        upper = s;
    }
    set
}

/// Iterates the k-subsets of {0, ..., n-1} in colexicographic order.
pub fn ksubsets(n: usize, k: usize) -> KSubsets {
    KSubsets {
        cur: (0..k).collect(),
        n,
        started: false,
        done: k > n,
    }
}

pub struct KSubsets {
    cur: Vec<usize>,
    n: usize,
    started: bool,
    done: bool,
}

impl Iterator for KSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.cur.clone());
        }
        let k = self.cur.len();
        if k == 0 {
            self.done = true;
            return None;
        }
        // colex successor: bump the first element with headroom, reset below
        let mut i = 0;
        while i + 1 < k && self.cur[i] + 1 == self.cur[i + 1] {
            i += 1;
        }
        if self.cur[i] + 1 >= self.n && i + 1 == k {
            self.done = true;
            return None;
        }
        self.cur[i] += 1;
        for j in 0..i {
            self.cur[j] = j;
        }
        Some(self.cur.clone())
    }
}
