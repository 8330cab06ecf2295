//! Truncated components of the totalized operad and its suboperads.
//!
//! The window `Σk <= K` is a subcomplex (∂ lowers `Σk`, δ keeps it) and
//! `l <= L` is a quotient of it (δ raises `l`, ∂ keeps it), so the basis
//! trees of types inside the window span an honest cochain complex graded by
//! `l - Σk`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::basis::{enumerate_basis, types_in_window};
use super::differential::{delta, differential, SignConvention};
use super::sum::TreeSum;
use super::tree::{NatTree, TreeType};
use crate::complexes::{ChainComplex, GradedHomology, SparseMat};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Suboperad {
    /// Every tree.
    B,
    /// Trees with legs labelled in planar order.
    T,
    /// Trees without stubs, and not `•`.
    Bhat,
    /// The normalization: stub trees projected away, `•` kept.
    NormB,
}

impl Suboperad {
    pub fn contains(&self, t: &NatTree) -> bool {
        match self {
            Suboperad::B => true,
            Suboperad::T => t.is_planar(),
            Suboperad::Bhat => t.stub_count() == 0 && !t.is_dot(),
            Suboperad::NormB => t.stub_count() == 0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suboperad::B => "B",
            Suboperad::T => "T",
            Suboperad::Bhat => "Bhat",
            Suboperad::NormB => "NormB",
        }
    }
}

impl fmt::Display for Suboperad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suboperad {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" => Ok(Suboperad::B),
            "T" => Ok(Suboperad::T),
            "Bhat" => Ok(Suboperad::Bhat),
            "NormB" => Ok(Suboperad::NormB),
            other => Err(Error::InvalidArgument(format!("unknown suboperad {other}"))),
        }
    }
}

/// Keep the terms lying in `which`.
pub fn suboperad_filter(s: &TreeSum, which: Suboperad) -> TreeSum {
    s.filter(|t| which.contains(t))
}

/// A truncated component together with its basis trees per degree.
#[derive(Clone, Debug)]
pub struct TruncatedComponent {
    pub n: usize,
    pub k_max: usize,
    pub l_max: usize,
    pub sub: Suboperad,
    /// Trees of total degree `complex.lo + idx`.
    pub bases: Vec<Vec<NatTree>>,
    pub complex: ChainComplex,
}

impl TruncatedComponent {
    pub fn homology(&self) -> GradedHomology {
        self.complex.homology()
    }

    /// Degrees `t` whose cohomology is not an artifact of the cuts: the
    /// quotient at `l = L` leaves spurious classes in degree `L`, and for
    /// `n >= 1` the corner `(l, Σk) = (L, K)` leaves some in degree `L - K`.
    /// Only degrees strictly between the two are reported.
    pub fn window(&self) -> (i64, i64) {
        let lo = if self.n == 0 { self.complex.lo } else { self.l_max as i64 - self.k_max as i64 + 1 };
        (lo.max(self.complex.lo), self.l_max as i64 - 1)
    }

    pub fn windowed_homology(&self) -> GradedHomology {
        let (lo, hi) = self.window();
        self.complex.homology_in(lo, hi)
    }
}

fn assemble(
    bases: Vec<Vec<NatTree>>,
    lo: i64,
    sub: Suboperad,
    d_of: impl Fn(&NatTree) -> TreeSum,
) -> Result<(Vec<Vec<NatTree>>, ChainComplex)> {
    let index: Vec<HashMap<&NatTree, usize>> =
        bases.iter().map(|b| b.iter().enumerate().map(|(i, t)| (t, i)).collect()).collect();
    let mut d = Vec::new();
    for k in 0..bases.len().saturating_sub(1) {
        let columns = bases[k]
            .iter()
            .map(|t| {
                d_of(t)
                    .iter()
                    .filter(|(x, _)| sub.contains(x))
                    .filter_map(|(x, c)| index[k + 1].get(x).map(|&r| (r, c)))
                    .collect()
            })
            .collect();
        d.push(SparseMat::from_columns(bases[k + 1].len(), columns));
    }
    let labels = bases.iter().map(|b| b.iter().map(ToString::to_string).collect()).collect();
    let complex = ChainComplex::new(lo, labels, d)?;
    Ok((bases, complex))
}

/// The component `ℬ(n)` of `sub` truncated to `Σk <= k_max`, `l <= l_max`.
pub fn truncated_complex(
    n: usize,
    k_max: usize,
    l_max: usize,
    sub: Suboperad,
    conv: &SignConvention,
) -> Result<TruncatedComponent> {
    let types = types_in_window(n, k_max, l_max);
    let lo = types.iter().map(TreeType::degree).min().unwrap_or(0);
    let hi = types.iter().map(TreeType::degree).max().unwrap_or(0);
    let mut bases: Vec<Vec<NatTree>> = vec![Vec::new(); (hi - lo + 1) as usize];
    for tt in &types {
        bases[(tt.degree() - lo) as usize].extend(enumerate_basis(tt).into_iter().filter(|t| sub.contains(t)));
    }
    let (bases, complex) = assemble(bases, lo, sub, |t| differential(t, conv))?;
    Ok(TruncatedComponent { n, k_max, l_max, sub, bases, complex })
}

/// The row `B^0_{ks} → B^1_{ks} → ... → B^{l_max}_{ks}` with differential δ,
/// graded by `l`.
pub fn row_complex(ks: &[usize], l_max: usize, sub: Suboperad, conv: &SignConvention) -> Result<ChainComplex> {
    let bases = (0..=l_max)
        .map(|l| enumerate_basis(&TreeType::new(l, ks.to_vec())).into_iter().filter(|t| sub.contains(t)).collect())
        .collect();
    Ok(assemble(bases, 0, sub, |t| delta(t, conv))?.1)
}
