//! Integer linear combinations of canonical trees.

use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

use super::tree::{NatTree, TreeType};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeSum {
    terms: BTreeMap<NatTree, i64>,
}

impl TreeSum {
    pub fn zero() -> Self {
        TreeSum::default()
    }

    pub fn single(t: NatTree) -> Self {
        let mut s = TreeSum::zero();
        s.add_term(t, 1);
        s
    }

    pub fn add_term(&mut self, t: NatTree, c: i64) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(t) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn add_sum(&mut self, other: &TreeSum, c: i64) {
        for (t, v) in &other.terms {
            self.add_term(t.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: i64) -> TreeSum {
        let mut s = TreeSum::zero();
        s.add_sum(self, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &NatTree) -> i64 {
        self.terms.get(t).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NatTree, i64)> {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    /// The common type, if the sum is nonzero and homogeneous.
    pub fn homogeneous_type(&self) -> Option<TreeType> {
        let mut it = self.terms.keys().map(NatTree::tree_type);
        let first = it.next()?.clone();
        it.all(|t| *t == first).then_some(first)
    }

    /// Keep the terms whose type satisfies `keep`.
    pub fn filter_types(&self, keep: impl Fn(&TreeType) -> bool) -> TreeSum {
        TreeSum {
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| keep(t.tree_type()))
                .map(|(t, &c)| (t.clone(), c))
                .collect(),
        }
    }

    /// Keep the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&NatTree) -> bool) -> TreeSum {
        TreeSum {
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| keep(t))
                .map(|(t, &c)| (t.clone(), c))
                .collect(),
        }
    }

    /// Bilinear extension of vertex insertion; pairs of mismatched colours give zero.
    pub fn insert(&self, i: usize, other: &TreeSum) -> TreeSum {
        let mut out = TreeSum::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.ks().get(i - 1) == Some(&b.l()) {
                    out.add_term(a.insert(i, b).unwrap(), x * y);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(t, c)| json!({"coeff": c, "tree": t.to_json()}))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<TreeSum> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::TypeViolation("tree sum must be an array".into()))?;
        let mut s = TreeSum::zero();
        for e in arr {
            let c = e
                .get("coeff")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::TypeViolation("term without coeff".into()))?;
            s.add_term(NatTree::from_json(&e["tree"])?, c);
        }
        Ok(s)
    }
}

impl FromIterator<(NatTree, i64)> for TreeSum {
    fn from_iter<I: IntoIterator<Item = (NatTree, i64)>>(iter: I) -> Self {
        let mut s = TreeSum::zero();
        for (t, c) in iter {
            s.add_term(t, c);
        }
        s
    }
}

impl fmt::Display for TreeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            if i > 0 {
                write!(f, " ")?;
            }
            if c.abs() == 1 {
                write!(f, "{sign}{t}")?;
            } else {
                write!(f, "{sign}{}*{t}", c.abs())?;
            }
        }
        Ok(())
    }
}
