//! Pattern-avoiding permutations, their inversion statistics, and the
//! canonical cell decomposition of each avoidance class.
//!
//! Permutations of {1, ..., n} are written in one-line notation. The cell
//! index of an avoider tracks where its extreme entry sits; cells refine the
//! avoidance class so that prefix unions S'_{n,k} are counted by the k-th
//! column of the Catalan triangle.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

use crate::choose2;

/// Enumeration workload bound for [`gen_avoiders`] and [`s_prime`].
pub const MAX_AVOIDER_N: usize = 11;

/// Above this size, avoiders are generated by backtracking instead of
/// filtering all n! permutations.
const FILTER_LIMIT: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("values are not a permutation of 1..=n")]
    NotAPermutation,
    #[error("size {n} exceeds the enumeration bound {max}")]
    BoundExceeded { n: usize, max: usize },
    #[error("cell index {k} out of range for size {n}")]
    InvalidCell { n: usize, k: usize },
    #[error("permutation {perm} contains the pattern {pattern}")]
    ContainsPattern { perm: String, pattern: PatternTag },
    #[error("permutation lies in cell {cell}, outside the prefix union up to {k}")]
    NotInPrefixCell { cell: usize, k: usize },
    #[error("permutation lies in cell {cell}, not in cell {k}")]
    NotInCell { cell: usize, k: usize },
    #[error("expected a permutation of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("shifted statistic would be negative: inv {inv} < shift {shift}")]
    ShiftedStatNegative { inv: usize, shift: usize },
}

/// Permutation of {1, ..., n} in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    vals: Vec<u8>,
}

impl Perm {
    /// Validates that `vals` is a rearrangement of 1..=n.
    pub fn new(vals: Vec<u8>) -> Result<Self, PermError> {
        let n = vals.len();
        if n > u8::MAX as usize {
            return Err(PermError::NotAPermutation);
        }
        let mut seen = vec![false; n];
        for &v in &vals {
            let idx = (v as usize).wrapping_sub(1);
            if idx >= n || seen[idx] {
                return Err(PermError::NotAPermutation);
            }
            seen[idx] = true;
        }
        Ok(Perm { vals })
    }

    pub fn empty() -> Self {
        Perm { vals: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            vals: (1..=n as u8).collect(),
        }
    }

    pub fn decreasing(n: usize) -> Self {
        Perm {
            vals: (1..=n as u8).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.vals
    }

    /// 1-indexed position of `v`.
    pub fn position_of(&self, v: u8) -> Option<usize> {
        self.vals.iter().position(|&x| x == v).map(|i| i + 1)
    }

    /// Removes the maximal value `self.len()`, keeping the rest in order.
    pub(crate) fn delete_max(&self) -> Perm {
        let n = self.len() as u8;
        Perm {
            vals: self.vals.iter().copied().filter(|&v| v != n).collect(),
        }
    }
}

impl fmt::Display for Perm {
    /// Digit string for n <= 9 (e.g. `231`), comma-separated beyond.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vals.len() <= 9 {
            for &v in &self.vals {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            f.write_str(&self.vals.iter().map(u8::to_string).join(","))
        }
    }
}

impl FromStr for Perm {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        let vals: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse().map_err(|_| PermError::NotAPermutation))
                .collect::<Result<_, _>>()?
        } else {
            s.trim()
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or(PermError::NotAPermutation)
                })
                .collect::<Result<_, _>>()?
        };
        Perm::new(vals)
    }
}

/// The six patterns of length three.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternTag {
    P312,
    P321,
    P213,
    P123,
    P231,
    P132,
}

impl PatternTag {
    pub const ALL: [PatternTag; 6] = [
        PatternTag::P312,
        PatternTag::P321,
        PatternTag::P213,
        PatternTag::P123,
        PatternTag::P231,
        PatternTag::P132,
    ];

    /// The pattern as a permutation of {1,2,3}.
    pub fn letters(self) -> [u8; 3] {
        match self {
            PatternTag::P312 => [3, 1, 2],
            PatternTag::P321 => [3, 2, 1],
            PatternTag::P213 => [2, 1, 3],
            PatternTag::P123 => [1, 2, 3],
            PatternTag::P231 => [2, 3, 1],
            PatternTag::P132 => [1, 3, 2],
        }
    }
}

impl fmt::Display for PatternTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.letters();
        write!(f, "{a}{b}{c}")
    }
}

impl FromStr for PatternTag {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        PatternTag::ALL
            .into_iter()
            .find(|t| t.to_string() == s)
            .ok_or(PermError::NotAPermutation)
    }
}

/// Relative order of three distinct values as a pattern letter triple.
fn ranks(a: u8, b: u8, c: u8) -> [u8; 3] {
    let r = |x: u8| 1 + u8::from(x > a.min(b).min(c)) + u8::from(x == a.max(b).max(c));
    [r(a), r(b), r(c)]
}

/// Whether some triple of positions of `pi` carries the pattern `tau`.
pub fn contains_pattern(pi: &Perm, tau: PatternTag) -> bool {
    let v = pi.values();
    let t = tau.letters();
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if ranks(v[i], v[j], v[k]) == t {
                    return true;
                }
            }
        }
    }
    false
}

/// Whether appending `next` to `prefix` creates an occurrence of `tau`
/// ending at the new position. Sound for prefixes that already avoid `tau`.
fn extension_hits(prefix: &[u8], next: u8, tau: PatternTag) -> bool {
    let t = tau.letters();
    let m = prefix.len();
    for i in 0..m {
        for j in i + 1..m {
            if ranks(prefix[i], prefix[j], next) == t {
                return true;
            }
        }
    }
    false
}

/// All permutations of {1, ..., n} avoiding `tau`, in lexicographic order.
///
/// Sizes up to [`FILTER_LIMIT`] filter the full symmetric group; larger
/// sizes (up to [`MAX_AVOIDER_N`]) build avoiders by backtracking, pruning
/// any prefix whose newest entry completes the pattern.
pub fn gen_avoiders(n: usize, tau: PatternTag) -> Result<Vec<Perm>, PermError> {
    if n > MAX_AVOIDER_N {
        return Err(PermError::BoundExceeded {
            n,
            max: MAX_AVOIDER_N,
        });
    }
    if n <= FILTER_LIMIT {
        return Ok((1..=n as u8)
            .permutations(n)
            .map(|vals| Perm { vals })
            .filter(|p| !contains_pattern(p, tau))
            .collect());
    }
    let mut out = Vec::new();
    let mut prefix: Vec<u8> = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    backtrack(n, tau, &mut prefix, &mut used, &mut out);
    Ok(out)
}

fn backtrack(
    n: usize,
    tau: PatternTag,
    prefix: &mut Vec<u8>,
    used: &mut [bool],
    out: &mut Vec<Perm>,
) {
    if prefix.len() == n {
        out.push(Perm {
            vals: prefix.clone(),
        });
        return;
    }
    for v in 1..=n as u8 {
        if used[v as usize] || extension_hits(prefix, v, tau) {
            continue;
        }
        used[v as usize] = true;
        prefix.push(v);
        backtrack(n, tau, prefix, used, out);
        prefix.pop();
        used[v as usize] = false;
    }
}

/// Number of inversions: pairs a < b with pi_a > pi_b.
pub fn inv(pi: &Perm) -> usize {
    let v = pi.values();
    let mut count = 0;
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            if v[a] > v[b] {
                count += 1;
            }
        }
    }
    count
}

/// Number of non-inversions: `choose2(n) - inv`.
pub fn coinv(pi: &Perm) -> usize {
    choose2(pi.len()) - inv(pi)
}

/// Inversions whose larger entry has residue class `i`, where values are
/// classed by representatives 1..=mu: the class of v is ((v-1) mod mu) + 1.
///
/// Requires 1 <= i <= mu.
pub fn inv_i(pi: &Perm, i: u32, mu: u32) -> usize {
    assert!(
        mu >= 1 && (1..=mu).contains(&i),
        "residue class out of range"
    );
    let v = pi.values();
    let mut count = 0;
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            if v[a] > v[b] && (u32::from(v[a]) - 1) % mu + 1 == i {
                count += 1;
            }
        }
    }
    count
}

/// Canonical cell index of an avoider of `tau`.
///
/// The defining entry is the maximum for 312/321/213/123 and the minimum
/// for 231/132; the index measures its offset from one end:
/// 312, 321: pos(n) - 1; 213, 123: n - pos(n); 231: n - pos(1);
/// 132: pos(1) - 1. The empty permutation has cell index 0.
pub fn cell_index(pi: &Perm, tau: PatternTag) -> Result<usize, PermError> {
    if contains_pattern(pi, tau) {
        return Err(PermError::ContainsPattern {
            perm: pi.to_string(),
            pattern: tau,
        });
    }
    let n = pi.len();
    if n == 0 {
        return Ok(0);
    }
    let pos_max = pi.position_of(n as u8).expect("validated permutation");
    let pos_min = pi.position_of(1).expect("validated permutation");
    Ok(match tau {
        PatternTag::P312 | PatternTag::P321 => pos_max - 1,
        PatternTag::P213 | PatternTag::P123 => n - pos_max,
        PatternTag::P231 => n - pos_min,
        PatternTag::P132 => pos_min - 1,
    })
}

/// The prefix union S'_{n,k}(tau): avoiders with cell index at most `k`,
/// in lexicographic order.
pub fn s_prime(n: usize, k: usize, tau: PatternTag) -> Result<Vec<Perm>, PermError> {
    if k > n {
        return Err(PermError::InvalidCell { n, k });
    }
    Ok(gen_avoiders(n, tau)?
        .into_iter()
        .filter(|p| cell_index(p, tau).expect("avoider by construction") <= k)
        .collect())
}

/// Insertion step of the cell bijection for 312-avoiders: places the new
/// maximum `n` at position k+1 of `pi_hat`.
///
/// Requires `pi_hat` in S'_{n-1,k}(312) with 0 <= k <= n-1; the result is
/// the unique preimage-respecting member of S_{n,k}(312), and its inversion
/// count is inv(pi_hat) + (n-k-1).
pub fn phi_insert(pi_hat: &Perm, n: usize, k: usize) -> Result<Perm, PermError> {
    if n == 0 || pi_hat.len() != n - 1 {
        return Err(PermError::LengthMismatch {
            expected: n.saturating_sub(1),
            got: pi_hat.len(),
        });
    }
    if k > n - 1 || n > u8::MAX as usize {
        return Err(PermError::InvalidCell { n, k });
    }
    let cell = cell_index(pi_hat, PatternTag::P312)?;
    if cell > k {
        return Err(PermError::NotInPrefixCell { cell, k });
    }
    let mut vals = pi_hat.values().to_vec();
    vals.insert(k, n as u8);
    Ok(Perm { vals })
}

/// The shifted statistic inv*(pi) = inv(pi) - (n-k-1) on S_{n,k}(312).
///
/// The shift is the inversion count contributed by the entry `n` itself,
/// so the result is never negative on the stated domain.
pub fn inv_star(pi: &Perm, n: usize, k: usize) -> Result<usize, PermError> {
    if pi.len() != n {
        return Err(PermError::LengthMismatch {
            expected: n,
            got: pi.len(),
        });
    }
    if n == 0 || k > n - 1 {
        return Err(PermError::InvalidCell { n, k });
    }
    let cell = cell_index(pi, PatternTag::P312)?;
    if cell != k {
        return Err(PermError::NotInCell { cell, k });
    }
    let shift = n - k - 1;
    let i = inv(pi);
    if i < shift {
        return Err(PermError::ShiftedStatNegative { inv: i, shift });
    }
    Ok(i - shift)
}
