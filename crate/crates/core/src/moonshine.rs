//! Sums of dimensions of irreducible representations of M24.
//!
//! Witnesses are multiplicity vectors indexed like [`DIMENSIONS`] and are
//! ordered lexicographically, so the preferred witness keeps the small
//! dimensions at multiplicity zero for as long as possible.

use alloc::vec;
use alloc::vec::Vec;
use alloc::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::Result;
use crate::mock::MockSeries;

/// Dimensions of the 26 irreducible representations, sorted.
pub const DIMENSIONS: [u64; 26] = [
    1, 23, 45, 45, 231, 231, 252, 253, 483, 770, 770, 990, 990, 1035, 1035, 1035, 1265, 1771, 2024, 2277, 3312,
    3520, 5313, 5544, 5796, 10395,
];

const HALF: usize = 13;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecompositionWitness {
    pub multiplicities: [u64; 26],
}

impl DecompositionWitness {
    pub fn total(&self) -> u128 {
        self.multiplicities.iter().zip(DIMENSIONS).map(|(&m, d)| m as u128 * d as u128).sum()
    }

    /// The dimensions used, each repeated by its multiplicity.
    pub fn parts(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (&m, d) in self.multiplicities.iter().zip(DIMENSIONS) {
            out.extend(core::iter::repeat_n(d, m as usize));
        }
        out
    }
}

// index i of a half sits at bit HALF-1-i, so numeric order on masks is
// lexicographic order on the 0/1 vectors
fn half_sums(dims: &[u64]) -> Vec<u64> {
    let mut sums = vec![0u64; 1 << dims.len()];
    for mask in 1..sums.len() {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + dims[dims.len() - 1 - low];
    }
    sums
}

fn unpack(mask: usize, offset: usize, out: &mut [u64; 26]) {
    for i in 0..HALF {
        if mask >> (HALF - 1 - i) & 1 == 1 {
            out[offset + i] = 1;
        }
    }
}

/// Lexicographically smallest subset of [`DIMENSIONS`] summing to `target`,
/// found by meeting in the middle over the two halves of 13 entries.
pub fn decompose_distinct(target: u64) -> Option<DecompositionWitness> {
    let left = half_sums(&DIMENSIONS[..HALF]);
    let right = half_sums(&DIMENSIONS[HALF..]);
    let mut best_right: BTreeMap<u64, usize> = BTreeMap::new();
    for (mask, &s) in right.iter().enumerate() {
        best_right.entry(s).or_insert(mask);
    }
    let (lmask, rmask) = left
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s <= target)
        .find_map(|(mask, &s)| best_right.get(&(target - s)).map(|&r| (mask, r)))?;
    let mut multiplicities = [0u64; 26];
    unpack(lmask, 0, &mut multiplicities);
    unpack(rmask, HALF, &mut multiplicities);
    Some(DecompositionWitness { multiplicities })
}

/// Number of multiplicity vectors over `dims` with entries in `0..=cap`
/// summing to `target`. Independent of the order of `dims`.
pub fn count_bounded(dims: &[u64], target: u64, cap: u64) -> BigUint {
    let t = target as usize;
    let mut ways = vec![BigUint::zero(); t + 1];
    ways[0] = BigUint::from(1u32);
    for &d in dims {
        let d = d as usize;
        let window = (cap as usize).saturating_add(1).saturating_mul(d);
        let old = ways.clone();
        // ways[s] = sum_{j=0..=cap} old[s - j d], as a running sum per residue class
        for s in d..=t {
            let prev = ways[s - d].clone();
            ways[s] += prev;
            if s >= window {
                ways[s] -= &old[s - window];
            }
        }
    }
    ways.swap_remove(t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedDecomposition {
    pub count: BigUint,
    /// The lexicographically first witnesses, at most as many as requested.
    pub witnesses: Vec<DecompositionWitness>,
}

/// Counts decompositions with every multiplicity at most `cap` and lists
/// up to `max_witnesses` of them in lexicographic order.
pub fn decompose_bounded(target: u64, cap: u64, max_witnesses: usize) -> BoundedDecomposition {
    let count = count_bounded(&DIMENSIONS, target, cap);
    let t = target as usize;
    // reach[i][s]: the entries from index i onward can make s
    let mut reach = vec![vec![false; t + 1]; DIMENSIONS.len() + 1];
    reach[DIMENSIONS.len()][0] = true;
    for i in (0..DIMENSIONS.len()).rev() {
        let d = DIMENSIONS[i] as usize;
        for s in 0..=t {
            reach[i][s] = (0..=cap as usize).take_while(|j| j * d <= s).any(|j| reach[i + 1][s - j * d]);
        }
    }
    let mut witnesses = Vec::new();
    let mut current = [0u64; 26];
    if max_witnesses > 0 {
        collect(0, t, cap, &reach, &mut current, &mut witnesses, max_witnesses);
    }
    BoundedDecomposition { count, witnesses }
}

fn collect(
    i: usize,
    rest: usize,
    cap: u64,
    reach: &[Vec<bool>],
    current: &mut [u64; 26],
    out: &mut Vec<DecompositionWitness>,
    limit: usize,
) {
    if out.len() >= limit || !reach[i][rest] {
        return;
    }
    if i == DIMENSIONS.len() {
        out.push(DecompositionWitness { multiplicities: *current });
        return;
    }
    let d = DIMENSIONS[i] as usize;
    for j in 0..=cap as usize {
        if j * d > rest {
            break;
        }
        current[i] = j as u64;
        collect(i + 1, rest - j * d, cap, reach, current, out, limit);
    }
    current[i] = 0;
}

/// Outcome of checking the explicit small decompositions against `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownDecompositions {
    /// `A_1 .. A_7` read off `H`.
    pub computed: Vec<BigInt>,
    /// Whether each of `A_1 .. A_5` is itself a dimension.
    pub single_dimensions: Vec<bool>,
    /// Whether `A_6` and `A_7` equal their listed sums of dimensions.
    pub listed_sums: Vec<bool>,
}

impl KnownDecompositions {
    pub fn passed(&self) -> bool {
        self.single_dimensions.iter().chain(&self.listed_sums).all(|&b| b)
    }
}

/// `A_6 = 3520 + 10395`, `A_7 = 10395 + 5796 + 5544 + 5313 + 2024 + 1771`.
pub const LISTED_SUMS: [(u32, &[u64]); 2] =
    [(6, &[3520, 10395]), (7, &[10395, 5796, 5544, 5313, 2024, 1771])];

pub fn verify_known_decompositions(h: &MockSeries) -> Result<KnownDecompositions> {
    let mut computed = Vec::new();
    for n in 1..=7 {
        let a = h.a_n(n)?;
        computed.push(if a.is_integer() { a.to_integer() } else { BigInt::from(-1) });
    }
    let single_dimensions = computed[..5]
        .iter()
        .map(|a| a.to_u64().is_some_and(|v| DIMENSIONS.contains(&v)))
        .collect();
    let listed_sums = LISTED_SUMS
        .iter()
        .map(|&(n, parts)| {
            let target = &computed[n as usize - 1];
            let sum: u64 = parts.iter().sum();
            *target == BigInt::from(sum) && parts.iter().all(|p| DIMENSIONS.contains(p))
        })
        .collect();
    Ok(KnownDecompositions { computed, single_dimensions, listed_sums })
}
