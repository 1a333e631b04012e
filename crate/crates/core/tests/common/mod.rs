#![allow(dead_code)]

use bimatch::Bigraph;
use proptest::prelude::*;

/// Matrices with `nx` in `1..=max_nx`, `ny` in `1..=max_ny` and entries
/// at most `max_mult`, with roughly half the entries zero.
pub fn graph(max_nx: usize, max_ny: usize, max_mult: u32) -> impl Strategy<Value = Bigraph> {
    (1..=max_nx, 1..=max_ny).prop_flat_map(move |(nx, ny)| {
        let cell = prop_oneof![Just(0u32), 1..=max_mult];
        proptest::collection::vec(proptest::collection::vec(cell, ny), nx)
            .prop_map(|rows| Bigraph::from_rows(&rows).unwrap())
    })
}

/// Square graphs with a perfect matching on the diagonal.
pub fn with_perfect_matching(max_n: usize, max_mult: u32) -> impl Strategy<Value = Bigraph> {
    graph(max_n, max_n, max_mult).prop_map(|g| {
        let n = g.nx().min(g.ny());
        let mut rows = g.rows();
        rows.truncate(n);
        for (i, row) in rows.iter_mut().enumerate() {
            row.truncate(n);
            row[i] = row[i].max(1);
        }
        Bigraph::from_rows(&rows).unwrap()
    })
}

/// Index lists `0..n` in a random order.
pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}
