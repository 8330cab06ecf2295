//! Smith normal form over the integers: sparse elimination on unit pivots,
//! then a dense arbitrary-precision reduction of whatever is left.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::sparse::SparseMat;

/// Rank and the invariant factors greater than one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

pub fn smith(m: &SparseMat) -> Snf {
    let mut cols: Vec<Vec<(usize, i64)>> = m.columns.clone();
    let ncols = cols.len();
    let mut row_index: Vec<Vec<usize>> = vec![Vec::new(); m.rows];
    for (c, col) in cols.iter().enumerate() {
        for &(r, _) in col {
            row_index[r].push(c);
        }
    }
    let mut active = vec![true; ncols];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = cols
        .iter()
        .enumerate()
        .map(|(c, v)| Reverse((v.len(), c)))
        .collect();
    let mut rank = 0usize;
    let mut overflowed = false;

    while let Some(Reverse((len, c))) = heap.pop() {
        if !active[c] {
            continue;
        }
        if cols[c].len() != len {
            heap.push(Reverse((cols[c].len(), c)));
            continue;
        }
        if len == 0 {
            active[c] = false;
            continue;
        }
        let pivot = cols[c]
            .iter()
            .filter(|e| e.1.abs() == 1)
            .min_by_key(|e| row_index[e.0].len())
            .copied();
        let Some((r, p)) = pivot else {
            // left for the dense phase unless a later update creates a unit
            continue;
        };
        let mut touched = std::mem::take(&mut row_index[r]);
        touched.sort_unstable();
        touched.dedup();
        let pcol = cols[c].clone();
        for &c2 in &touched {
            if c2 == c || !active[c2] {
                continue;
            }
            let Ok(k) = cols[c2].binary_search_by_key(&r, |e| e.0) else {
                continue;
            };
            let factor = cols[c2][k].1 * p;
            match axpy(&cols[c2], &pcol, factor) {
                Some(newcol) => {
                    cols[c2] = newcol;
                    for &(r2, _) in &pcol {
                        row_index[r2].push(c2);
                    }
                    heap.push(Reverse((cols[c2].len(), c2)));
                }
                None => {
                    overflowed = true;
                    break;
                }
            }
        }
        if overflowed {
            row_index[r] = touched;
            break;
        }
        active[c] = false;
        rank += 1;
    }

    // Dense phase on the remaining active columns.
    let rest: Vec<usize> = (0..ncols)
        .filter(|&c| active[c] && !cols[c].is_empty())
        .collect();
    if rest.is_empty() {
        return Snf {
            rank,
            torsion: Vec::new(),
        };
    }
    let mut rows_used: Vec<usize> = rest
        .iter()
        .flat_map(|&c| cols[c].iter().map(|e| e.0))
        .collect();
    rows_used.sort_unstable();
    rows_used.dedup();
    let mut dense = vec![vec![BigInt::zero(); rest.len()]; rows_used.len()];
    for (j, &c) in rest.iter().enumerate() {
        for &(r, v) in &cols[c] {
            let i = rows_used.binary_search(&r).unwrap();
            dense[i][j] = BigInt::from(v);
        }
    }
    let diag = dense_diagonal(dense);
    rank += diag.len();
    let torsion = invariant_factors(diag)
        .into_iter()
        .filter(|d| !d.is_one())
        .collect();
    Snf { rank, torsion }
}

/// `a - k * b` on sorted sparse vectors; `None` on overflow.
fn axpy(a: &[(usize, i64)], b: &[(usize, i64)], k: i64) -> Option<Vec<(usize, i64)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, b[j].1.checked_mul(k)?.checked_neg()?));
            j += 1;
        } else {
            let v = a[i].1.checked_sub(b[j].1.checked_mul(k)?)?;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    if out.iter().any(|e| e.1.unsigned_abs() > (1u64 << 40)) {
        return None;
    }
    Some(out)
}

/// Diagonalize by unimodular row and column operations; returns the nonzero
/// diagonal entries (absolute values).
pub fn dense_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the remaining block goes to (t, t)
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&p);
                    for j in t..n {
                        let v = &a[t][j] * &q;
                        a[i][j] -= v;
                    }
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&p);
                    for i in t..m {
                        let v = &a[i][t] * &q;
                        a[i][j] -= v;
                    }
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
            // move the smallest remainder in row t or column t to the pivot
            let mut best = (t, t);
            for i in t + 1..m {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            } else if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Turn a diagonal into a divisibility chain `d_1 | d_2 | ...`.
pub fn invariant_factors(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}
