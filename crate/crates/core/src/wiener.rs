//! Wiener index from canonical vertices and the word metric.
//!
//! These are the sequential building blocks; the threaded drivers live in the
//! `carpet` crate and only ever split work along the row ranges produced here.

use alloc::vec::Vec;
use core::ops::Range;

use crate::lattice::carpet_side;
use crate::metric::{vertex_distance, Rule};
use crate::word::VertexTable;

/// Splits rows `0..n` of the upper triangle `{(i, j) : i < j < n}` into at
/// most `parts` contiguous ranges holding roughly equal pair counts.
pub fn partition_rows(n: usize, parts: usize) -> Vec<Range<usize>> {
    let parts = parts.max(1);
    let total = pairs_in(n, 0..n);
    let mut out = Vec::with_capacity(parts);
    let mut start = 0;
    let mut acc = 0u128;
    for i in 0..n {
        acc += (n - 1 - i) as u128;
        let boundary = total * (out.len() as u128 + 1) / parts as u128;
        if acc >= boundary && out.len() + 1 < parts {
            out.push(start..i + 1);
            start = i + 1;
        }
    }
    if start < n || out.is_empty() {
        out.push(start..n);
    }
    out
}

/// Number of pairs `(i, j)` with `i` in `rows` and `i < j < n`.
pub fn pairs_in(n: usize, rows: Range<usize>) -> u128 {
    rows.map(|i| (n - 1 - i) as u128).sum()
}

/// Sum of `d(i, j)` over `i` in `rows`, `j > i`.
pub fn upper_rows_sum(table: &VertexTable, rule: Rule, rows: Range<usize>) -> u128 {
    let vs = table.vertices();
    let mut total = 0u128;
    for i in rows {
        let u = &vs[i];
        let row: u64 = vs[i + 1..].iter().map(|v| vertex_distance(rule, u, v)).sum();
        total += u128::from(row);
    }
    total
}

/// Sum of `d(i, j)` over every vertex `j`.
pub fn full_row_sum(table: &VertexTable, rule: Rule, i: usize) -> u64 {
    let vs = table.vertices();
    let u = &vs[i];
    vs.iter().map(|v| vertex_distance(rule, u, v)).sum()
}

/// Sequential Wiener index by the word metric.
pub fn formula_wiener(table: &VertexTable, rule: Rule) -> u128 {
    upper_rows_sum(table, rule, 0..table.count())
}

/// One representative per orbit of the square's symmetry group acting on
/// the vertices, with the orbit size. Representatives are the smallest index
/// in their orbit; the list is sorted.
pub fn symmetry_orbits(table: &VertexTable) -> Vec<(usize, u32)> {
    let side = carpet_side(table.level());
    let mut out = Vec::new();
    for (i, v) in table.vertices().iter().enumerate() {
        let mut images: Vec<usize> = v
            .point
            .d4_orbit(side)
            .iter()
            .map(|&p| table.index_of(p).expect("the carpet is symmetric"))
            .collect();
        images.sort_unstable();
        images.dedup();
        if images[0] == i {
            out.push((i, images.len() as u32));
        }
    }
    out
}

/// `sum over orbits (size * full row sum of the representative)` for a slice
/// of orbit representatives; twice their share of the Wiener index when the
/// metric is invariant under the symmetries.
pub fn orbit_rows_sum(table: &VertexTable, rule: Rule, orbits: &[(usize, u32)]) -> u128 {
    orbits
        .iter()
        .map(|&(i, size)| u128::from(size) * u128::from(full_row_sum(table, rule, i)))
        .sum()
}
