//! The brace suboperad B̂r: skeletons, the families of trees they stand for,
//! and the finite complex B̂r(n) with its differential solved in the
//! skeleton basis.
//!
//! A skeleton is a planar tree of white vertices (labelled cochains) and
//! black vertices (iterated cup products, arity >= 2) without legs and
//! without black-black edges. Its family is the composite of the vertex
//! generators: a black vertex with `r` children is the `r`-fold cup, a white
//! vertex with `r` children is the `r`-fold brace.

use std::collections::BTreeMap;
use std::fmt;

use super::basis::compositions_bounded;
use super::differential::{compose, family_differential, SignConvention};
use super::generators::brace;
use super::sum::TreeSum;
use super::tree::{NatTree, Node, TreeType};
use crate::complexes::{ChainComplex, GradedHomology, SparseMat};
use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Skeleton {
    White(usize, Vec<Skeleton>),
    Black(Vec<Skeleton>),
}

impl Skeleton {
    /// Minus the number of edges leaving white vertices.
    pub fn degree(&self) -> i64 {
        match self {
            Skeleton::White(_, c) => {
                -(c.len() as i64) + c.iter().map(Skeleton::degree).sum::<i64>()
            }
            Skeleton::Black(c) => c.iter().map(Skeleton::degree).sum(),
        }
    }

    /// White labels in the order the composite inserts them.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<usize>) {
        if let Skeleton::White(j, _) = self {
            out.push(*j);
        }
        for c in self.children() {
            c.collect(out);
        }
    }

    pub fn children(&self) -> &[Skeleton] {
        match self {
            Skeleton::White(_, c) | Skeleton::Black(c) => c,
        }
    }

    /// Output colour of the family at the input colours `ks` (indexed by label).
    fn colour(&self, ks: &[usize]) -> i64 {
        self.preorder()
            .iter()
            .map(|&j| ks[j - 1] as i64)
            .sum::<i64>()
            + self.degree()
    }
}

impl fmt::Display for Skeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |c: &[Skeleton]| {
            c.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            Skeleton::White(j, c) if c.is_empty() => write!(f, "f{j}"),
            Skeleton::White(j, c) => write!(f, "f{j}{{{}}}", list(c)),
            Skeleton::Black(c) => write!(f, "m({})", list(c)),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Ctx {
    Root,
    UnderWhite,
    UnderBlack,
}

fn skeleton_trees(mask: u32, ctx: Ctx) -> Vec<Skeleton> {
    let mut out = Vec::new();
    for j in 0..32 {
        if mask & (1 << j) != 0 {
            for f in skeleton_forests(mask & !(1 << j), Ctx::UnderWhite) {
                out.push(Skeleton::White(j + 1, f));
            }
        }
    }
    if ctx != Ctx::UnderBlack {
        for f in skeleton_forests(mask, Ctx::UnderBlack) {
            if f.len() >= 2 {
                out.push(Skeleton::Black(f));
            }
        }
    }
    out
}

/// Ordered forests whose trees partition `mask`.
fn skeleton_forests(mask: u32, ctx: Ctx) -> Vec<Vec<Skeleton>> {
    if mask == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut sub = mask;
    while sub != 0 {
        let firsts = skeleton_trees(sub, ctx);
        if !firsts.is_empty() {
            let rests = skeleton_forests(mask & !sub, ctx);
            for a in &firsts {
                for r in &rests {
                    let mut f = vec![a.clone()];
                    f.extend(r.iter().cloned());
                    out.push(f);
                }
            }
        }
        sub = (sub - 1) & mask;
    }
    out
}

/// All skeletons on white vertices `1..n`, sorted.
pub fn enumerate_skeletons(n: usize) -> Vec<Skeleton> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = skeleton_trees((1u32 << n) - 1, Ctx::Root);
    out.sort();
    out
}

/// Sign attached to the `(k; m_1..m_r)` component of the `r`-fold brace family:
/// `(-1)^{Σ_j m_j (k + 1 + Σ_{i<j} (m_i + 1))}`.
pub fn brace_twist(k: usize, ms: &[usize]) -> i64 {
    let mut e = 0;
    let mut before = 0;
    for &m in ms {
        e += m * (k + 1 + before);
        before += m + 1;
    }
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `m(f_1(..), .., f_r(..))` with consecutive legs.
pub fn cup_generator(ms: &[usize]) -> NatTree {
    let mut leg = 1;
    let mut children = Vec::with_capacity(ms.len());
    for (j, &m) in ms.iter().enumerate() {
        children.push(Node::White(j + 1, (leg..leg + m).map(Node::Leg).collect()));
        leg += m;
    }
    NatTree::new(TreeType::new(leg - 1, ms.to_vec()), Node::Black(children)).unwrap()
}

pub type Twist = dyn Fn(usize, &[usize]) -> i64;

/// Component of the family of `sk` at input colours `ks` (indexed by label),
/// with brace generators twisted by `twist`.
pub fn family_component_with(
    sk: &Skeleton,
    ks: &[usize],
    conv: &SignConvention,
    twist: &Twist,
) -> TreeSum {
    let order = sk.preorder();
    let positional: Vec<usize> = order.iter().map(|&j| ks[j - 1]).collect();
    let Some(s) = realize(sk, ks, conv, twist) else {
        return TreeSum::zero();
    };
    debug_assert!(s.iter().all(|(t, _)| t.ks() == positional.as_slice()));
    conv.permute(&s, &Perm::new(order).expect("labels are distinct"))
}

pub fn family_component(sk: &Skeleton, ks: &[usize], conv: &SignConvention) -> TreeSum {
    family_component_with(sk, ks, conv, &brace_twist)
}

fn realize(sk: &Skeleton, ks: &[usize], conv: &SignConvention, twist: &Twist) -> Option<TreeSum> {
    let children = sk.children();
    let mut colours = Vec::with_capacity(children.len());
    for c in children {
        let l = c.colour(ks);
        if l < 0 {
            return None;
        }
        colours.push(l as usize);
    }
    let (mut acc, first_slot) = match sk {
        Skeleton::White(j, _) => {
            let k = ks[j - 1];
            let b = brace(k, &colours);
            if b.is_zero() {
                return None;
            }
            (b.scaled(twist(k, &colours)), 2)
        }
        Skeleton::Black(_) => (TreeSum::single(cup_generator(&colours)), 1),
    };
    for (idx, c) in children.iter().enumerate().rev() {
        let inner = realize(c, ks, conv, twist)?;
        acc = compose(&acc, first_slot + idx, &inner, conv);
    }
    Some(acc)
}

/// The complex B̂r(n) in the skeleton basis, computed on the window
/// `Σk <= k_max`, `l <= l_max`.
#[derive(Clone, Debug)]
pub struct BraceComplex {
    pub n: usize,
    pub k_max: usize,
    pub l_max: usize,
    /// Skeletons of degree `-(n-1) + idx`.
    pub skeletons: Vec<Vec<Skeleton>>,
    pub complex: ChainComplex,
}

impl BraceComplex {
    pub fn homology(&self) -> GradedHomology {
        self.complex.homology()
    }
}

pub fn brace_complex(
    n: usize,
    k_max: usize,
    l_max: usize,
    conv: &SignConvention,
) -> Result<BraceComplex> {
    brace_complex_with(n, k_max, l_max, conv, &brace_twist)
}

pub fn brace_complex_with(
    n: usize,
    k_max: usize,
    l_max: usize,
    conv: &SignConvention,
    twist: &Twist,
) -> Result<BraceComplex> {
    if n == 0 {
        return Err(Error::InvalidArgument("B̂r(n) needs n >= 1".into()));
    }
    let lo = -(n as i64 - 1);
    let mut skeletons: Vec<Vec<Skeleton>> = vec![Vec::new(); n];
    for s in enumerate_skeletons(n) {
        skeletons[(s.degree() - lo) as usize].push(s);
    }
    let window = compositions_bounded(n, k_max);
    let types_of_degree = |deg: i64| -> Vec<TreeType> {
        window
            .iter()
            .filter_map(|ks| {
                let l = ks.iter().sum::<usize>() as i64 + deg;
                (l >= 0 && l <= l_max as i64).then(|| TreeType::new(l as usize, ks.clone()))
            })
            .collect()
    };
    let mut d = Vec::new();
    for idx in 0..n {
        let src_deg = lo + idx as i64;
        let sources = &skeletons[idx];
        let targets: &[Skeleton] = skeletons.get(idx + 1).map_or(&[], Vec::as_slice);
        let tts = types_of_degree(src_deg + 1);
        // components of the targets on the window, and one reference tree each
        let mut comps: Vec<BTreeMap<TreeType, TreeSum>> = Vec::new();
        let mut refs = Vec::new();
        for s in targets {
            let mut m = BTreeMap::new();
            let mut r = None;
            for tt in &tts {
                let c = family_component_with(s, &tt.ks, conv, twist);
                if r.is_none() {
                    r = c.iter().next().map(|(t, v)| (tt.clone(), t.clone(), v));
                }
                m.insert(tt.clone(), c);
            }
            refs.push(
                r.ok_or_else(|| Error::InvalidArgument(format!("window too small to see {s}")))?,
            );
            comps.push(m);
        }
        let mut columns = Vec::with_capacity(sources.len());
        for s in sources {
            let fam = |tt: &TreeType| {
                if tt.n() == n && tt.l as i64 == tt.sum_k() as i64 + src_deg {
                    family_component_with(s, &tt.ks, conv, twist)
                } else {
                    TreeSum::zero()
                }
            };
            let ds: BTreeMap<TreeType, TreeSum> = tts
                .iter()
                .map(|tt| (tt.clone(), family_differential(&fam, tt, conv)))
                .collect();
            let mut col = Vec::new();
            for (r, (tt, tree, v)) in refs.iter().enumerate() {
                let c = ds[tt].coeff(tree);
                if c % v != 0 {
                    return Err(Error::MalformedComplex(format!(
                        "d({s}) is not an integral combination of skeletons"
                    )));
                }
                if c != 0 {
                    col.push((r, c / v));
                }
            }
            for tt in &tts {
                let mut rest = ds[tt].clone();
                for &(r, c) in &col {
                    rest.add_sum(&comps[r][tt], -c);
                }
                if !rest.is_zero() {
                    return Err(Error::MalformedComplex(format!(
                        "d({s}) leaves the brace span at {tt}"
                    )));
                }
            }
            columns.push(col);
        }
        if idx + 1 < n {
            d.push(SparseMat::from_columns(targets.len(), columns));
        }
    }
    let labels = skeletons
        .iter()
        .map(|v| v.iter().map(ToString::to_string).collect())
        .collect();
    let complex = ChainComplex::new(lo, labels, d)?;
    Ok(BraceComplex {
        n,
        k_max,
        l_max,
        skeletons,
        complex,
    })
}
