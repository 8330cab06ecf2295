//! The differential `d = δ - (∂_1 + ... + ∂_n)` on the totalization and the
//! family of sign conventions it is chosen from.

use serde::Serialize;
use std::cell::RefCell;
use std::collections::HashMap;

use super::braces::brace_twist;
use super::basis::{compositions_bounded, enumerate_basis, types_in_window};
use super::generators::{brace, coface_tree, cup_tree};
use super::sum::TreeSum;
use super::tree::{NatTree, TreeType};
use crate::perm::Perm;

/// A sign convention for the totalization.
///
/// `δ(T) = Σ_i (-1)^{i [+ l]} d_i ∘_1 T` and
/// `∂_j(T) = Σ_i (-1)^{i + ε_j} T ∘_j d_i` with
/// `ε_j = c_0 + c_1 l + c_2 Σk + c_3 (k_1 + .. + k_{j-1}) + c_4 k_j` read off
/// the type of `T`. The dg composition of trees is vertex insertion, times
/// `(-1)^{deg(T'') (k'_1 + .. + k'_{i-1})}` when `koszul_compose` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignConvention {
    pub nerve_delta: bool,
    pub koszul_compose: bool,
    pub offsets: [bool; 5],
}

impl SignConvention {
    /// The convention used throughout; [`search`] shows it is the only
    /// candidate that survives the checks.
    pub const CHOSEN: SignConvention = SignConvention {
        nerve_delta: false,
        koszul_compose: true,
        offsets: [false, true, true, true, false],
    };

    pub fn candidates() -> Vec<SignConvention> {
        let mut out = Vec::new();
        for nerve_delta in [false, true] {
            for koszul_compose in [false, true] {
                for bits in 0..32u32 {
                    let offsets = [0, 1, 2, 3, 4].map(|b| bits & (1 << b) != 0);
                    out.push(SignConvention {
                        nerve_delta,
                        koszul_compose,
                        offsets,
                    });
                }
            }
        }
        out
    }

    fn delta_sign(&self, l: usize, i: usize) -> i64 {
        parity(i + if self.nerve_delta { l } else { 0 })
    }

    /// Full sign of `T ∘_j d_i` in `d(T)`, including the leading minus.
    fn partial_sign(&self, tt: &TreeType, j: usize, i: usize) -> i64 {
        let c = self.offsets.map(usize::from);
        let before: usize = tt.ks[..j - 1].iter().sum();
        let eps = c[0] + c[1] * tt.l + c[2] * tt.sum_k() + c[3] * before + c[4] * tt.ks[j - 1];
        -parity(i + eps)
    }

    pub fn compose_sign(&self, outer: &TreeType, i: usize, inner: &TreeType) -> i64 {
        if !self.koszul_compose {
            return 1;
        }
        let before: usize = outer.ks[..i - 1].iter().sum();
        parity((inner.degree().rem_euclid(2) as usize) * before)
    }

    /// The symmetric action on a sum: white vertex `j` becomes `σ(j)`, with
    /// the Koszul sign `(-1)^{k_a k_b}` for each inverted pair when
    /// `koszul_compose` is set.
    pub fn permute(&self, s: &TreeSum, sigma: &Perm) -> TreeSum {
        let mut out = TreeSum::zero();
        for (t, c) in s.iter() {
            let ks = t.ks();
            let mut e = 0;
            if self.koszul_compose {
                for a in 0..ks.len() {
                    for b in a + 1..ks.len() {
                        if sigma.apply(a + 1) > sigma.apply(b + 1) {
                            e += ks[a] * ks[b];
                        }
                    }
                }
            }
            out.add_term(
                t.sym_act(sigma).expect("arity checked by caller"),
                c * parity(e),
            );
        }
        out
    }

    pub fn describe(&self) -> String {
        let names = ["1", "l", "Σk", "k_<j", "k_j"];
        let eps: Vec<&str> = names
            .iter()
            .zip(self.offsets)
            .filter(|(_, b)| *b)
            .map(|(n, _)| *n)
            .collect();
        format!(
            "δ sign (-1)^{}; ε_j = {}; composition {}",
            if self.nerve_delta { "(i+l)" } else { "i" },
            if eps.is_empty() {
                "0".to_string()
            } else {
                eps.join(" + ")
            },
            if self.koszul_compose {
                "with Koszul sign"
            } else {
                "plain"
            }
        )
    }
}

fn parity(x: usize) -> i64 {
    if x % 2 == 0 {
        1
    } else {
        -1
    }
}

thread_local! {
    static COFACES: RefCell<HashMap<(usize, usize), NatTree>> = RefCell::new(HashMap::new());
}

fn cached_coface(l: usize, i: usize) -> NatTree {
    COFACES.with(|c| {
        c.borrow_mut()
            .entry((l, i))
            .or_insert_with(|| coface_tree(l, i).unwrap())
            .clone()
    })
}

/// `δ(T)` alone.
pub fn delta(t: &NatTree, conv: &SignConvention) -> TreeSum {
    let l = t.l();
    let mut out = TreeSum::zero();
    for i in 0..=l + 1 {
        out.add_term(
            cached_coface(l, i).insert(1, t).unwrap(),
            conv.delta_sign(l, i),
        );
    }
    out
}

/// `-∂_j(T)` with its sign, zero when `k_j = 0`.
pub fn minus_partial(t: &NatTree, j: usize, conv: &SignConvention) -> TreeSum {
    let mut out = TreeSum::zero();
    let k = t.ks()[j - 1];
    if k == 0 {
        return out;
    }
    for i in 0..=k {
        out.add_term(
            t.insert(j, &cached_coface(k - 1, i)).unwrap(),
            conv.partial_sign(t.tree_type(), j, i),
        );
    }
    out
}

pub fn differential(t: &NatTree, conv: &SignConvention) -> TreeSum {
    let mut out = delta(t, conv);
    for j in 1..=t.n() {
        out.add_sum(&minus_partial(t, j, conv), 1);
    }
    out
}

pub fn differential_sum(s: &TreeSum, conv: &SignConvention) -> TreeSum {
    let mut out = TreeSum::zero();
    for (t, c) in s.iter() {
        out.add_sum(&differential(t, conv), c);
    }
    out
}

/// The dg composition: bilinear vertex insertion with the convention's sign.
pub fn compose(a: &TreeSum, i: usize, b: &TreeSum, conv: &SignConvention) -> TreeSum {
    let mut out = TreeSum::zero();
    for (x, p) in a.iter() {
        for (y, q) in b.iter() {
            if x.ks().get(i - 1) == Some(&y.l()) {
                let s = conv.compose_sign(x.tree_type(), i, y.tree_type());
                out.add_term(x.insert(i, y).unwrap(), s * p * q);
            }
        }
    }
    out
}

/// `d(t1 ∘_i t2) - d(t1) ∘_i t2 - (-1)^{deg t1} t1 ∘_i d(t2)`.
pub fn leibniz_defect(t1: &NatTree, i: usize, t2: &NatTree, conv: &SignConvention) -> TreeSum {
    let a = TreeSum::single(t1.clone());
    let b = TreeSum::single(t2.clone());
    let mut out = differential_sum(&compose(&a, i, &b, conv), conv);
    out.add_sum(&compose(&differential(t1, conv), i, &b, conv), -1);
    let s = if t1.degree().rem_euclid(2) == 0 {
        1
    } else {
        -1
    };
    out.add_sum(&compose(&a, i, &differential(t2, conv), conv), -s);
    out
}

/// Component of `d(F)` of type `target` for a family `F` given by its components.
pub fn family_differential(
    family: &dyn Fn(&TreeType) -> TreeSum,
    target: &TreeType,
    conv: &SignConvention,
) -> TreeSum {
    let mut out = TreeSum::zero();
    if target.l > 0 {
        let src = TreeType::new(target.l - 1, target.ks.clone());
        for (t, c) in family(&src).iter() {
            out.add_sum(&delta(t, conv), c);
        }
    }
    for j in 1..=target.n() {
        let mut ks = target.ks.clone();
        ks[j - 1] += 1;
        let src = TreeType::new(target.l, ks);
        for (t, c) in family(&src).iter() {
            out.add_sum(&minus_partial(t, j, conv), c);
        }
    }
    out.filter_types(|tt| tt == target)
}

/// First basis tree `T` of the given types with `d(d(T)) ≠ 0`.
pub fn square_zero_counterexample(types: &[TreeType], conv: &SignConvention) -> Option<NatTree> {
    types
        .iter()
        .flat_map(enumerate_basis)
        .find(|t| !differential_sum(&differential(t, conv), conv).is_zero())
}

/// Visit every composable pair `(t1, i, t2)` of basis trees whose composite
/// lies in the window `n <= 2`, `Σk <= k_max`, `l <= l_max`, stopping at the
/// first pair for which `visit` returns `false`. Returns whether it ran to the end.
pub fn for_each_composable_pair(
    k_max: usize,
    l_max: usize,
    mut visit: impl FnMut(&NatTree, usize, &NatTree) -> bool,
) -> bool {
    for n1 in 1..=2 {
        for tt1 in types_in_window(n1, k_max, l_max) {
            let b1 = enumerate_basis(&tt1);
            for i in 1..=n1 {
                let slot = tt1.ks[i - 1];
                for n2 in 0..=(3 - n1) {
                    let rest = tt1.sum_k() - slot;
                    for ks2 in compositions_bounded(n2, k_max - rest) {
                        let b2 = enumerate_basis(&TreeType::new(slot, ks2));
                        for t1 in &b1 {
                            for t2 in &b2 {
                                if !visit(t1, i, t2) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// First composable pair in the window violating Leibniz. The differentials
/// of both factors are computed once per basis tree.
pub fn leibniz_counterexample(
    k_max: usize,
    l_max: usize,
    conv: &SignConvention,
) -> Option<(NatTree, usize, NatTree)> {
    let mut inner_cache: HashMap<TreeType, Vec<(NatTree, TreeSum)>> = HashMap::new();
    for n1 in 1..=2 {
        for tt1 in types_in_window(n1, k_max, l_max) {
            let outer: Vec<(NatTree, TreeSum)> = enumerate_basis(&tt1)
                .into_iter()
                .map(|t| {
                    let d = differential(&t, conv);
                    (t, d)
                })
                .collect();
            let s1 = if tt1.degree().rem_euclid(2) == 0 { 1 } else { -1 };
            for i in 1..=n1 {
                let slot = tt1.ks[i - 1];
                let rest = tt1.sum_k() - slot;
                for n2 in 0..=(3 - n1) {
                    for ks2 in compositions_bounded(n2, k_max - rest) {
                        let tt2 = TreeType::new(slot, ks2);
                        let inner = inner_cache.entry(tt2.clone()).or_insert_with(|| {
                            enumerate_basis(&tt2)
                                .into_iter()
                                .map(|t| {
                                    let d = differential(&t, conv);
                                    (t, d)
                                })
                                .collect()
                        });
                        let sign = conv.compose_sign(&tt1, i, &tt2);
                        for (t1, d1) in &outer {
                            for (t2, d2) in inner.iter() {
                                let mut out = differential(&t1.insert(i, t2).unwrap(), conv).scaled(sign);
                                let b = TreeSum::single(t2.clone());
                                out.add_sum(&compose(d1, i, &b, conv), -1);
                                let a = TreeSum::single(t1.clone());
                                out.add_sum(&compose(&a, i, d2, conv), -s1);
                                if !out.is_zero() {
                                    return Some((t1.clone(), i, t2.clone()));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn cup_family(tt: &TreeType) -> TreeSum {
    if tt.n() == 2 && tt.l == tt.ks[0] + tt.ks[1] {
        TreeSum::single(cup_tree(tt.ks[0], tt.ks[1]))
    } else {
        TreeSum::zero()
    }
}

fn brace_family(tt: &TreeType) -> TreeSum {
    if tt.n() == 2 && tt.ks[1] > 0 && tt.l + 1 == tt.ks[0] + tt.ks[1] {
        brace(tt.ks[0], &tt.ks[1..]).scaled(brace_twist(tt.ks[0], &tt.ks[1..]))
    } else {
        TreeSum::zero()
    }
}

/// `d(f ∪ g) = 0` for all arities with `k + m <= k_max`.
pub fn cup_is_cocycle(conv: &SignConvention, k_max: usize) -> bool {
    compositions_bounded(2, k_max).iter().all(|ks| {
        let target = TreeType::new(ks[0] + ks[1] + 1, ks.clone());
        family_differential(&cup_family, &target, conv).is_zero()
    })
}

/// `d(f{g}) = ±(f ∪ g) ± (g ∪ f)` for all arities with `k + m <= k_max`, `m >= 1`.
pub fn brace_closes(conv: &SignConvention, k_max: usize) -> bool {
    let swap = Perm::new(vec![2, 1]).unwrap();
    compositions_bounded(2, k_max)
        .iter()
        .filter(|ks| ks[1] > 0)
        .all(|ks| {
            let (k, m) = (ks[0], ks[1]);
            let target = TreeType::new(k + m, ks.clone());
            let d = family_differential(&brace_family, &target, conv);
            let fg = cup_tree(k, m);
            let gf = cup_tree(m, k).sym_act(&swap).unwrap();
            let (a, b) = (d.coeff(&fg), d.coeff(&gf));
            let mut rest = d.clone();
            rest.add_term(fg, -a);
            rest.add_term(gf, -b);
            rest.is_zero() && a.abs() == 1 && b.abs() == 1
        })
}

/// Outcome of the checks for one candidate convention.
#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub convention: SignConvention,
    pub square_zero: bool,
    pub leibniz: bool,
    pub cup_cocycle: bool,
    pub brace_closed: bool,
}

impl SearchOutcome {
    pub fn survives(&self) -> bool {
        self.square_zero && self.leibniz && self.cup_cocycle && self.brace_closed
    }
}

/// Run every candidate through `d² = 0` and Leibniz in the window
/// `n <= 2, Σk <= k_max, l <= l_max`, then through the cup and brace checks.
/// Later checks are skipped (reported false) once one fails.
pub fn search(k_max: usize, l_max: usize) -> Vec<SearchOutcome> {
    let types: Vec<TreeType> = (0..=2)
        .flat_map(|n| types_in_window(n, k_max, l_max))
        .collect();
    SignConvention::candidates()
        .into_iter()
        .map(|conv| {
            let square_zero = square_zero_counterexample(&types, &conv).is_none();
            let leibniz = square_zero && leibniz_counterexample(k_max, l_max, &conv).is_none();
            let cup_cocycle = leibniz && cup_is_cocycle(&conv, k_max + 1);
            let brace_closed = cup_cocycle && brace_closes(&conv, k_max + 1);
            SearchOutcome {
                convention: conv,
                square_zero,
                leibniz,
                cup_cocycle,
                brace_closed,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::tree::Node;

    #[test]
    fn differential_of_the_identity_operation() {
        // d(id) for id ∈ C^1 is the Hochschild coboundary of the identity cochain
        let id = NatTree::corolla_white(1);
        let d = differential(&id, &SignConvention::CHOSEN);
        let shown = d.to_string();
        assert!(shown.contains("m(1,f1(2))"));
        assert!(shown.contains("f1(m(1,2))"));
        assert!(shown.contains("m(f1(1),2)"));
        // the ∂ part lands in type (1;0)
        assert!(shown.contains("m(1,f1())"));
        assert!(shown.contains("m(f1(),1)"));
        assert_eq!(d.len(), 5);
    }

    #[test]
    fn chosen_convention_squares_to_zero_small() {
        let conv = SignConvention::CHOSEN;
        for ks in [
            vec![],
            vec![0],
            vec![1],
            vec![2],
            vec![1, 1],
            vec![2, 0],
            vec![0, 1],
        ] {
            for l in 0..=3 {
                for t in enumerate_basis(&TreeType::new(l, ks.clone())) {
                    assert!(
                        differential_sum(&differential(&t, &conv), &conv).is_zero(),
                        "{t}"
                    );
                }
            }
        }
    }

    #[test]
    fn cup_is_a_cocycle() {
        let conv = SignConvention::CHOSEN;
        let cup = |tt: &TreeType| {
            if tt.n() == 2 && tt.l == tt.ks[0] + tt.ks[1] {
                TreeSum::single(cup_tree(tt.ks[0], tt.ks[1]))
            } else {
                TreeSum::zero()
            }
        };
        for k in 0..3 {
            for m in 0..3 {
                let target = TreeType::new(k + m + 1, vec![k, m]);
                assert!(family_differential(&cup, &target, &conv).is_zero());
            }
        }
    }

    #[test]
    fn dot_is_a_cycle() {
        let d = differential(&NatTree::dot(), &SignConvention::CHOSEN);
        assert!(d.is_zero());
        let bar = differential(&NatTree::bar(), &SignConvention::CHOSEN);
        // the three cofaces of ∣ all collapse to the corolla m(1,2)
        assert_eq!(bar.len(), 1);
        assert!(bar
            .iter()
            .all(|(t, c)| matches!(t.root(), Node::Black(_)) && c == 1));
    }

    #[test]
    fn search_singles_out_the_chosen_convention() {
        let outcomes = search(2, 2);
        for o in &outcomes {
            if o.square_zero && o.leibniz {
                eprintln!(
                    "{} cup={} brace={}",
                    o.convention.describe(),
                    o.cup_cocycle,
                    o.brace_closed
                );
            }
        }
        let survivors: Vec<_> = outcomes
            .iter()
            .filter(|o| o.survives())
            .map(|o| o.convention)
            .collect();
        assert_eq!(survivors, vec![SignConvention::CHOSEN]);
    }
}
