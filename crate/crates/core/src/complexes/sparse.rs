//! Column-major sparse integer matrices.

use serde::{Deserialize, Serialize};

/// A sparse vector: sorted `(index, value)` pairs with nonzero values.
pub type SparseVec = Vec<(usize, i64)>;

/// Sum duplicate indices, drop zeros, sort.
pub fn normalize(mut v: Vec<(usize, i64)>) -> SparseVec {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: usize,
    /// `columns[c]` is column `c`, normalized.
    pub columns: Vec<SparseVec>,
}

#[derive(Serialize, Deserialize)]
struct MatJson {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMat {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| vec![(i, 1)]).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let columns: Vec<SparseVec> = columns.into_iter().map(normalize).collect();
        debug_assert!(columns.iter().all(|c| c.iter().all(|e| e.0 < rows)));
        SparseMat {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn from_dense(d: &[Vec<i64>], cols: usize) -> Self {
        let rows = d.len();
        let columns = (0..cols)
            .map(|c| {
                (0..rows)
                    .filter(|&r| d[r][c] != 0)
                    .map(|r| (r, d[r][c]))
                    .collect()
            })
            .collect();
        SparseMat {
            rows,
            cols,
            columns,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                d[r][c] = v;
            }
        }
        d
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.columns[c]
            .binary_search_by_key(&r, |e| e.0)
            .map(|k| self.columns[c][k].1)
            .unwrap_or(0)
    }

    /// `self * v`.
    pub fn apply(&self, v: &[(usize, i64)]) -> SparseVec {
        let mut acc = Vec::new();
        for &(c, x) in v {
            for &(r, y) in &self.columns[c] {
                acc.push((r, x.checked_mul(y).expect("matrix entry overflow")));
            }
        }
        normalize(acc)
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        SparseMat {
            rows: self.rows,
            cols: other.cols,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMat) -> SparseMat {
        self.add_scaled(other, 1)
    }

    pub fn add_scaled(&self, other: &SparseMat, k: i64) -> SparseMat {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in sum"
        );
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                normalize(
                    a.iter()
                        .copied()
                        .chain(b.iter().map(|&(r, v)| (r, v * k)))
                        .collect(),
                )
            })
            .collect();
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            columns,
        }
    }

    pub fn scale(&self, k: i64) -> SparseMat {
        let columns = if k == 0 {
            vec![Vec::new(); self.cols]
        } else {
            self.columns
                .iter()
                .map(|c| c.iter().map(|&(r, v)| (r, v * k)).collect())
                .collect()
        };
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            columns,
        }
    }

    pub fn transpose(&self) -> SparseMat {
        let mut cols = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                cols[r].push((c, v));
            }
        }
        SparseMat {
            rows: self.cols,
            cols: self.rows,
            columns: cols,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
            .collect();
        serde_json::to_value(MatJson {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
        .unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> crate::Result<SparseMat> {
        let m: MatJson = serde_json::from_value(v.clone())?;
        let mut cols = vec![Vec::new(); m.cols];
        for (r, c, v) in m.entries {
            if r >= m.rows || c >= m.cols {
                return Err(crate::Error::MalformedComplex(format!(
                    "entry ({r},{c}) out of shape"
                )));
            }
            cols[c].push((r, v));
        }
        Ok(SparseMat::from_columns(m.rows, cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = SparseMat::from_dense(&[vec![1, 2], vec![0, 3]], 2);
        let b = SparseMat::from_dense(&[vec![4, 0], vec![1, 1]], 2);
        assert_eq!(a.mul(&b).to_dense(), vec![vec![6, 2], vec![3, 3]]);
        assert_eq!(a.transpose().to_dense(), vec![vec![1, 0], vec![2, 3]]);
        assert_eq!(a.add_scaled(&a, -1), SparseMat::zeros(2, 2));
        assert_eq!(a.get(1, 1), 3);
        assert_eq!(a.nnz(), 3);
    }

    #[test]
    fn json_roundtrip() {
        let a = SparseMat::from_dense(&[vec![1, 0, -2], vec![0, 5, 0]], 3);
        assert_eq!(SparseMat::from_json(&a.to_json()).unwrap(), a);
    }
}
