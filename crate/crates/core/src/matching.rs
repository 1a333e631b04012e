//! Maximum matching size and exact counts of maximum matchings.
//!
//! Parallel copies of an edge are distinct edges, so a matching that uses
//! the pair `(i, j)` comes in `mult(i, j)` versions. Three counting routes
//! exist and are kept independent of each other:
//!
//! * [`count_max_matchings_oracle`]: plain recursion over X, no shared kernels.
//! * [`count_max_matchings`]: Ryser permanent after padding the graph with
//!   universal Y-vertices (for the defect) and all-ones rows (for `|Y| > |X|`).
//! * [`count_max_matchings_small`]: subset DP over Y in machine integers,
//!   used by the exhaustive sweeps.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, Bigraph};

/// Largest square dimension handed to Ryser's formula.
pub const RYSER_MAX_DIM: usize = 30;
/// Largest side for which the recursive oracle is used as a fallback.
pub const ORACLE_MAX_SIDE: usize = 8;
/// Largest `ny` for the subset DP.
pub const DP_MAX_NY: usize = 20;

/// Matching number `α′(G)` together with `Φ(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchCount {
    pub size: usize,
    #[serde(with = "crate::num_str::biguint")]
    pub count: BigUint,
}

/// A maximum matching as mate arrays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub mate_x: Vec<Option<usize>>,
    pub mate_y: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.mate_x.iter().filter(|m| m.is_some()).count()
    }
}

/// Maximum matching of the underlying simple graph by repeated augmenting
/// path search (Kuhn). Neighbours are tried in index order, so the result
/// is deterministic.
pub fn maximum_matching(g: &Bigraph) -> Matching {
    let mut mate_x = vec![None; g.nx()];
    let mut mate_y = vec![None; g.ny()];
    let masks: Vec<u64> = (0..g.nx()).map(|i| g.nbr_mask_x(i)).collect();
    for x in 0..g.nx() {
        let mut visited = 0u64;
        augment(&masks, x, &mut visited, &mut mate_x, &mut mate_y);
    }
    Matching { mate_x, mate_y }
}

fn augment(
    masks: &[u64],
    x: usize,
    visited: &mut u64,
    mate_x: &mut [Option<usize>],
    mate_y: &mut [Option<usize>],
) -> bool {
    for y in bits(masks[x] & !*visited) {
        *visited |= 1 << y;
        let free = match mate_y[y] {
            None => true,
            Some(other) => augment(masks, other, visited, mate_x, mate_y),
        };
        if free {
            mate_x[x] = Some(y);
            mate_y[y] = Some(x);
            return true;
        }
    }
    false
}

pub fn max_matching_size(g: &Bigraph) -> usize {
    maximum_matching(g).size()
}

pub fn has_x_matching(g: &Bigraph) -> bool {
    max_matching_size(g) == g.nx()
}

/// Exhaustive recursion: each X-vertex is either skipped or matched to a
/// free neighbour, weighted by the multiplicity of the edge used.
pub fn count_max_matchings_oracle(g: &Bigraph) -> MatchCount {
    fn rec(g: &Bigraph, i: usize, used: u64) -> (usize, BigUint) {
        if i == g.nx() {
            return (0, BigUint::one());
        }
        let (mut best, mut count) = rec(g, i + 1, used);
        for j in 0..g.ny() {
            let m = g.mult(i, j);
            if m == 0 || used & (1 << j) != 0 {
                continue;
            }
            let (s, c) = rec(g, i + 1, used | (1 << j));
            let s = s + 1;
            let c = c * m;
            if s > best {
                best = s;
                count = c;
            } else if s == best {
                count += c;
            }
        }
        (best, count)
    }
    let (size, count) = rec(g, 0, 0);
    MatchCount { size, count }
}

/// Sum with a machine-word fast path.
struct Accumulator {
    small: u128,
    big: BigUint,
}

impl Accumulator {
    fn new() -> Self {
        Self { small: 0, big: BigUint::zero() }
    }

    fn add_small(&mut self, v: u128) {
        match self.small.checked_add(v) {
            Some(s) => self.small = s,
            None => {
                self.big += self.small;
                self.small = v;
            }
        }
    }

    fn add_big(&mut self, v: BigUint) {
        self.big += v;
    }

    fn total(self) -> BigUint {
        self.big + self.small
    }
}

/// Permanent of a square non-negative matrix by Ryser's formula, visiting
/// column subsets in Gray-code order so each step updates the row sums by
/// one column.
pub fn permanent<R: AsRef<[u32]>>(rows: &[R]) -> Result<BigUint> {
    let d = rows.len();
    for r in rows {
        if r.as_ref().len() != d {
            return Err(Error::NonSquare { rows: d, cols: r.as_ref().len() });
        }
    }
    if d == 0 {
        return Ok(BigUint::one());
    }
    if d > RYSER_MAX_DIM {
        return Err(Error::TooLarge(format!("permanent of dimension {d} exceeds {RYSER_MAX_DIM}")));
    }
    let cols: Vec<Vec<u64>> = (0..d).map(|j| rows.iter().map(|r| u64::from(r.as_ref()[j])).collect()).collect();
    let mut row_sums = vec![0u64; d];
    // Terms with |S| ≡ d (mod 2) carry a plus sign.
    let mut plus = Accumulator::new();
    let mut minus = Accumulator::new();
    let mut subset_size = 0usize;
    let mut members = 0u64;
    for step in 1u64..(1u64 << d) {
        let j = step.trailing_zeros() as usize;
        let bit = 1u64 << j;
        if members & bit == 0 {
            members |= bit;
            subset_size += 1;
            for (s, &a) in row_sums.iter_mut().zip(&cols[j]) {
                *s += a;
            }
        } else {
            members &= !bit;
            subset_size -= 1;
            for (s, &a) in row_sums.iter_mut().zip(&cols[j]) {
                *s -= a;
            }
        }
        if row_sums.contains(&0) {
            continue;
        }
        let acc = if (d - subset_size).is_multiple_of(2) { &mut plus } else { &mut minus };
        match row_sums.iter().try_fold(1u128, |p, &s| p.checked_mul(u128::from(s))) {
            Some(p) => acc.add_small(p),
            None => acc.add_big(row_sums.iter().map(|&s| BigUint::from(s)).product()),
        }
    }
    let (plus, minus) = (plus.total(), minus.total());
    if plus < minus {
        return Err(Error::Internal("negative permanent".into()));
    }
    Ok(plus - minus)
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

fn exact_div(num: BigUint, den: &BigUint, what: &str) -> Result<BigUint> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::Internal(format!("{what}: division left remainder {r}")));
    }
    Ok(q)
}

/// X-matchings of a graph with `ny >= nx`, via the permanent of the matrix
/// padded with `ny - nx` all-ones rows. Zero when no X-matching exists.
fn x_matchings_by_permanent(g: &Bigraph) -> Result<BigUint> {
    let pad = g.ny() - g.nx();
    let mut rows = g.rows();
    rows.extend(std::iter::repeat_n(vec![1u32; g.ny()], pad));
    let per = permanent(&rows)?;
    exact_div(per, &factorial(pad), "padding rows")
}

/// Number of X-matchings. Requires that one exists.
pub fn count_x_matchings(g: &Bigraph) -> Result<BigUint> {
    if g.ny() < g.nx() || !has_x_matching(g) {
        return Err(Error::Precondition("graph has no X-matching".into()));
    }
    if g.ny() <= RYSER_MAX_DIM {
        x_matchings_by_permanent(g)
    } else if g.nx() <= ORACLE_MAX_SIDE && g.ny() <= ORACLE_MAX_SIDE {
        Ok(count_max_matchings_oracle(g).count)
    } else {
        Err(Error::TooLarge(format!("{}x{} graph exceeds the permanent limit", g.nx(), g.ny())))
    }
}

/// `α′(G)` and `Φ(G)` through the defect reduction: with `p = nx - α′`, add
/// `p` universal Y-vertices; each maximum matching of `G` then extends to
/// exactly `p!` X-matchings of the padded graph.
pub fn count_max_matchings(g: &Bigraph) -> Result<MatchCount> {
    if g.nx() == 0 || g.ny() == 0 {
        return Ok(MatchCount { size: 0, count: BigUint::one() });
    }
    let size = max_matching_size(g);
    let p = g.nx() - size;
    let dim = g.ny() + p;
    let count = if dim <= RYSER_MAX_DIM {
        let padded = g.add_universal_vertices(p)?;
        exact_div(x_matchings_by_permanent(&padded)?, &factorial(p), "defect reduction")?
    } else if g.nx() <= ORACLE_MAX_SIDE && g.ny() <= ORACLE_MAX_SIDE {
        count_max_matchings_oracle(g).count
    } else {
        return Err(Error::TooLarge(format!("padded dimension {dim} exceeds {RYSER_MAX_DIM}")));
    };
    Ok(MatchCount { size, count })
}

/// Maximum matchings of `G` that use a copy of the edge `(i, j)`.
pub fn count_containing_edge(g: &Bigraph, i: usize, j: usize) -> Result<BigUint> {
    if i >= g.nx() {
        return Err(Error::XIndex { index: i, nx: g.nx() });
    }
    if j >= g.ny() {
        return Err(Error::YIndex { index: j, ny: g.ny() });
    }
    let m = g.mult(i, j);
    if m == 0 {
        return Err(Error::NotAnEdge { i, j });
    }
    let alpha = max_matching_size(g);
    let rest = count_max_matchings(&g.delete_vertices(&[i], &[j]))?;
    if rest.size + 1 == alpha {
        Ok(rest.count * m)
    } else {
        Ok(BigUint::zero())
    }
}

/// Subset DP over Y in `u128`: `dp[mask]` is the weighted number of partial
/// matchings of the rows seen so far whose image is exactly `mask`.
/// Returns `None` when `ny` exceeds [`DP_MAX_NY`] or a count overflows.
pub fn count_max_matchings_small(g: &Bigraph) -> Option<(usize, u128)> {
    let ny = g.ny();
    if ny > DP_MAX_NY {
        return None;
    }
    let mut dp = vec![0u128; 1 << ny];
    dp[0] = 1;
    let mut reach = vec![0u64];
    for i in 0..g.nx() {
        let row = g.row(i);
        let nbrs = g.nbr_mask_x(i);
        let mut next = dp.clone();
        let mut next_reach = reach.clone();
        for &mask in &reach {
            let ways = dp[mask as usize];
            for j in bits(nbrs & !mask) {
                let to = (mask | (1 << j)) as usize;
                if next[to] == 0 {
                    next_reach.push(to as u64);
                }
                next[to] = next[to].checked_add(ways.checked_mul(u128::from(row[j]))?)?;
            }
        }
        dp = next;
        reach = next_reach;
    }
    let size = reach.iter().map(|m| m.count_ones()).max().unwrap_or(0);
    let mut total = 0u128;
    for &mask in &reach {
        if mask.count_ones() == size {
            total = total.checked_add(dp[mask as usize])?;
        }
    }
    Some((size as usize, total))
}

/// Convenience: `Φ(G)` with the DP when it fits, else the permanent route.
pub fn phi(g: &Bigraph) -> Result<MatchCount> {
    match count_max_matchings_small(g) {
        Some((size, count)) => Ok(MatchCount { size, count: BigUint::from(count) }),
        None => count_max_matchings(g),
    }
}
