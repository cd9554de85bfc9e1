//! Sparse exact-rational matrices between tensor powers of a state space.
//!
//! Tensor indices are flattened big-endian: for factors `(i_1, ..., i_n)` of
//! dimension `d` the flat index is `((i_1 * d + i_2) * d + ...) + i_n`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::rational::{format_q, one, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    pub d: usize,
    pub dom_arity: usize,
    pub cod_arity: usize,
    /// Row-major; absent entries are zero and no stored entry is zero.
    rows: Vec<BTreeMap<usize, Q>>,
}

pub fn tensor_dim(d: usize, arity: usize) -> usize {
    d.pow(arity as u32)
}

impl LinearMap {
    pub fn zero(d: usize, dom_arity: usize, cod_arity: usize) -> Self {
        LinearMap {
            d,
            dom_arity,
            cod_arity,
            rows: vec![BTreeMap::new(); tensor_dim(d, cod_arity)],
        }
    }

    pub fn identity(d: usize, arity: usize) -> Self {
        let mut m = Self::zero(d, arity, arity);
        for i in 0..m.nrows() {
            m.rows[i].insert(i, one());
        }
        m
    }

    /// `entries[r][c]`, with `r < d^cod` and `c < d^dom`.
    pub fn from_dense(d: usize, dom_arity: usize, cod_arity: usize, entries: &[Vec<Q>]) -> Self {
        let mut m = Self::zero(d, dom_arity, cod_arity);
        assert_eq!(entries.len(), m.nrows(), "row count");
        for (r, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), m.ncols(), "column count");
            for (c, x) in row.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        tensor_dim(self.d, self.cod_arity)
    }

    pub fn ncols(&self) -> usize {
        tensor_dim(self.d, self.dom_arity)
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.rows[r].get(&c).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, x: Q) {
        if x.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, x);
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.d, other.d);
        assert_eq!(self.dom_arity, other.cod_arity, "composition arity");
        let mut out = LinearMap::zero(self.d, other.dom_arity, self.cod_arity);
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.rows[*k] {
                    *acc.entry(*c).or_insert_with(Q::zero) += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[r] = acc;
        }
        out
    }

    /// Kronecker product, `self` as the more significant factor.
    pub fn kron(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.d, other.d);
        let mut out = LinearMap::zero(
            self.d,
            self.dom_arity + other.dom_arity,
            self.cod_arity + other.cod_arity,
        );
        let (orows, ocols) = (other.nrows(), other.ncols());
        for (r1, row1) in self.rows.iter().enumerate() {
            for (c1, a) in row1 {
                for (r2, row2) in other.rows.iter().enumerate() {
                    let target = &mut out.rows[r1 * orows + r2];
                    for (c2, b) in row2 {
                        target.insert(c1 * ocols + c2, a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.ncols());
        self.rows
            .iter()
            .map(|row| row.iter().map(|(c, a)| a * &v[*c]).fold(Q::zero(), |s, x| s + x))
            .collect()
    }

    /// Image of a basis vector (a column).
    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.nrows()).map(|r| self.get(r, c)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        (0..self.nrows())
            .map(|r| (0..self.ncols()).map(|c| self.get(r, c)).collect())
            .collect()
    }

    /// The single entry of a `0 -> 0` map.
    pub fn scalar(&self) -> Option<Q> {
        (self.nrows() == 1 && self.ncols() == 1).then(|| self.get(0, 0))
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Repr {
            dom_arity: usize,
            cod_arity: usize,
            d: usize,
            entries: Vec<Vec<String>>,
        }
        let entries = self
            .to_dense()
            .iter()
            .map(|row| row.iter().map(format_q).collect())
            .collect();
        serde_json::to_value(Repr {
            dom_arity: self.dom_arity,
            cod_arity: self.cod_arity,
            d: self.d,
            entries,
        })
        .expect("linear map serializes")
    }

    /// Rows of space-separated entries, or the bare scalar for `0 -> 0`.
    pub fn to_text(&self) -> String {
        if let Some(s) = self.scalar() {
            return format_q(&s);
        }
        self.to_dense()
            .iter()
            .map(|row| row.iter().map(format_q).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}
