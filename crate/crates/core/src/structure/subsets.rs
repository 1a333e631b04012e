//! Direct enumeration over subsets of X. Exponential in `nx`; used as the
//! reference for the matching-based tests and for small-graph predicates.

use crate::graph::Bigraph;

/// Largest `nx` for which subset enumeration is attempted.
pub const ENUM_MAX_NX: usize = 12;

/// `N(S)` for every `S ⊆ X`, indexed by the bitmask of `S`.
pub fn neighborhood_table(g: &Bigraph) -> Vec<u64> {
    assert!(g.nx() <= ENUM_MAX_NX + 8, "subset table too large");
    let nbrs: Vec<u64> = (0..g.nx()).map(|i| g.nbr_mask_x(i)).collect();
    let mut table = vec![0u64; 1 << g.nx()];
    for s in 1..table.len() {
        let low = s.trailing_zeros() as usize;
        table[s] = table[s & (s - 1)] | nbrs[low];
    }
    table
}

/// `max_S (|S| - |N(S)|)`, with the empty set contributing 0.
pub fn max_deficiency(g: &Bigraph) -> usize {
    neighborhood_table(g)
        .iter()
        .enumerate()
        .map(|(s, n)| (s.count_ones() as usize).saturating_sub(n.count_ones() as usize))
        .max()
        .unwrap_or(0)
}

/// Nonempty proper subsets `S` with `|N(S)| = |S|`, as bitmasks in
/// increasing order.
pub fn tight_family(g: &Bigraph) -> Vec<u64> {
    let full = (1u64 << g.nx()) - 1;
    neighborhood_table(g)
        .iter()
        .enumerate()
        .filter(|&(s, n)| s != 0 && s as u64 != full && s.count_ones() == n.count_ones())
        .map(|(s, _)| s as u64)
        .collect()
}

/// `|N(S)| > |S|` for every nonempty proper `S`.
pub fn is_x_surplus_by_enumeration(g: &Bigraph) -> bool {
    let full = (1u64 << g.nx()) - 1;
    neighborhood_table(g).iter().enumerate().all(|(s, n)| s == 0 || s as u64 == full || n.count_ones() > s.count_ones())
}

/// Hall's condition by enumeration.
pub fn hall_by_enumeration(g: &Bigraph) -> bool {
    neighborhood_table(g).iter().enumerate().all(|(s, n)| n.count_ones() >= s.count_ones())
}

/// Sets `S` with `|N(S)| = |S| + 1` in which some `y ∈ N(S)` with at least
/// three distinct neighbours has exactly one neighbour in `S`.
pub fn slim_sets(g: &Bigraph) -> Vec<u64> {
    let ynbrs: Vec<u64> = (0..g.ny()).map(|j| g.nbr_mask_y(j)).collect();
    neighborhood_table(g)
        .iter()
        .enumerate()
        .filter(|&(s, n)| {
            s != 0
                && n.count_ones() == s.count_ones() + 1
                && crate::graph::bits(*n).any(|y| ynbrs[y].count_ones() >= 3 && (ynbrs[y] & s as u64).count_ones() == 1)
        })
        .map(|(s, _)| s as u64)
        .collect()
}
