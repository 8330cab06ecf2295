//! Distinguished trees: the operations `O_g` of interval morphisms, the
//! Hochschild cofaces and codegeneracies, cup products and braces.

use super::sum::TreeSum;
use super::tree::{NatTree, Node, TreeType};
use crate::error::{Error, Result};
use crate::interval::IntervalMorphism;

/// The one-white-vertex tree of `O_g` for `g: ⟨l-1⟩ → ⟨k-1⟩`.
pub fn realize_interval(g: &IntervalMorphism) -> NatTree {
    let l = (g.src() + 1) as usize;
    let k = (g.dst() + 1) as usize;
    let interior = |j: i64| -> Vec<Node> {
        g.fiber(j)
            .iter()
            .filter(|&&x| (0..l as i64).contains(&x))
            .map(|&x| Node::Leg(x as usize + 1))
            .collect()
    };
    let slots = (0..k as i64).map(|i| Node::Black(interior(i))).collect();
    let mut top = interior(-1);
    top.push(Node::White(1, slots));
    top.extend(interior(k as i64));
    NatTree::new(TreeType::new(l, vec![k]), Node::Black(top)).expect("O_g is well typed")
}

/// The tree of the coface `d_i: C^l → C^{l+1}`, `0 <= i <= l+1`, in B^{l+1}_l.
pub fn coface_tree(l: usize, i: usize) -> Result<NatTree> {
    if i > l + 1 {
        return Err(Error::IndexOutOfRange {
            index: i as i64,
            max: l as i64 + 1,
        });
    }
    Ok(realize_interval(&IntervalMorphism::face(
        l as i64 + 1,
        i as i64,
    )?))
}

/// The tree of the codegeneracy `s_i: C^{k+1} → C^k`, `0 <= i <= k`, in B^k_{k+1}:
/// a white vertex with a stub in slot `i`.
pub fn codegeneracy_tree(k: usize, i: usize) -> Result<NatTree> {
    if i > k {
        return Err(Error::IndexOutOfRange {
            index: i as i64,
            max: k as i64,
        });
    }
    Ok(realize_interval(&IntervalMorphism::degeneracy(
        k as i64, i as i64,
    )?))
}

/// `(f ∪ g)(a_1..a_{k+m}) = f(a_1..a_k) g(a_{k+1}..a_{k+m})`.
pub fn cup_tree(k: usize, m: usize) -> NatTree {
    let f = Node::White(1, (1..=k).map(Node::Leg).collect());
    let g = Node::White(2, (k + 1..=k + m).map(Node::Leg).collect());
    NatTree::new(TreeType::new(k + m, vec![k, m]), Node::Black(vec![f, g])).unwrap()
}

/// The brace `f{g_2..g_n}` for `f` of arity `k` and `g_j` of arities `ms`:
/// the signed sum over order preserving placements of the `g_j` into the
/// inputs of `f`, with sign `Σ (m_j - 1) t_j`, `t_j` the number of legs in
/// front of `g_j`.
pub fn brace(k: usize, ms: &[usize]) -> TreeSum {
    let r = ms.len();
    let mut out = TreeSum::zero();
    if r > k {
        return out;
    }
    let mut ks = vec![k];
    ks.extend_from_slice(ms);
    let tt = TreeType::new(k + ms.iter().sum::<usize>() - r, ks);
    for slots in increasing_tuples(k, r) {
        let mut children = Vec::with_capacity(k);
        let mut leg = 1;
        let mut eps = 0;
        let mut next = 0;
        for s in 0..k {
            if next < r && slots[next] == s {
                let m = ms[next];
                eps += (m as i64 - 1) * (leg as i64 - 1);
                children.push(Node::White(
                    next + 2,
                    (leg..leg + m).map(Node::Leg).collect(),
                ));
                leg += m;
                next += 1;
            } else {
                children.push(Node::Leg(leg));
                leg += 1;
            }
        }
        let t = NatTree::new(tt.clone(), Node::White(1, children)).unwrap();
        out.add_term(t, if eps.rem_euclid(2) == 0 { 1 } else { -1 });
    }
    out
}

/// Strictly increasing `r`-tuples in `0..k`.
pub(crate) fn increasing_tuples(k: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(k: usize, r: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in lo..k {
            cur.push(v);
            rec(k, r, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(k, r, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_morphism_gives_the_identity_operation() {
        for k in 0..4 {
            let t = realize_interval(&IntervalMorphism::identity(k as i64 - 1));
            assert_eq!(t, NatTree::corolla_white(k));
        }
    }

    #[test]
    fn empty_source_gives_stubs_only() {
        for k in 0..4 {
            let homs = IntervalMorphism::hom_set(-1, k as i64 - 1);
            assert_eq!(homs.len(), 1);
            let t = realize_interval(&homs[0]);
            assert_eq!(t.root(), &Node::White(1, vec![Node::Special; k]));
        }
    }

    #[test]
    fn coface_and_codegeneracy_shapes() {
        assert_eq!(coface_tree(2, 0).unwrap().to_string(), "m(1,f1(2,3))");
        assert_eq!(coface_tree(2, 1).unwrap().to_string(), "f1(m(1,2),3)");
        assert_eq!(coface_tree(2, 2).unwrap().to_string(), "f1(1,m(2,3))");
        assert_eq!(coface_tree(2, 3).unwrap().to_string(), "m(f1(1,2),3)");
        assert_eq!(coface_tree(0, 0).unwrap().to_string(), "m(1,f1())");
        assert_eq!(codegeneracy_tree(2, 0).unwrap().to_string(), "f1(e,1,2)");
        assert_eq!(codegeneracy_tree(2, 2).unwrap().to_string(), "f1(1,2,e)");
        assert!(coface_tree(2, 4).is_err());
        assert!(codegeneracy_tree(2, 3).is_err());
    }

    #[test]
    fn brace_examples() {
        // f{g} with k = 2, m = 1: two placements, both with sign +
        let b = brace(2, &[1]);
        assert_eq!(b.to_string(), "f1(1,f2(2)) +f1(f2(1),2)");
        // with m = 2 the second placement has one leg in front: sign -
        let b = brace(2, &[2]);
        assert_eq!(
            b.coeff(
                &NatTree::new(
                    TreeType::new(3, vec![2, 2]),
                    Node::White(
                        1,
                        vec![
                            Node::Leg(1),
                            Node::White(2, vec![Node::Leg(2), Node::Leg(3)])
                        ]
                    )
                )
                .unwrap()
            ),
            -1
        );
        // f{g2, g3}: one term per 2-subset of the slots of f
        for k in 0..6 {
            assert_eq!(
                brace(k, &[1, 2]).len(),
                if k >= 2 { k * (k - 1) / 2 } else { 0 }
            );
        }
        assert_eq!(cup_tree(1, 1).to_string(), "m(f1(1),f2(2))");
    }

    #[test]
    fn interval_morphisms_span_one_vertex_trees() {
        use crate::operad::basis::enumerate_basis;
        use std::collections::BTreeSet;
        for l in 0..=3usize {
            for k in 0..=3usize {
                let image: BTreeSet<String> = IntervalMorphism::hom_set(l as i64 - 1, k as i64 - 1)
                    .iter()
                    .map(|g| realize_interval(g).to_string())
                    .collect();
                let basis: BTreeSet<String> =
                    enumerate_basis(&TreeType::new(l, vec![k])).iter().map(ToString::to_string).collect();
                assert_eq!(image.len(), IntervalMorphism::hom_set(l as i64 - 1, k as i64 - 1).len());
                assert_eq!(image, basis, "l = {l}, k = {k}");
            }
        }
    }

    #[test]
    fn realization_is_functorial() {
        for l in 0..=2i64 {
            for k in 0..=2i64 {
                for m in 0..=2i64 {
                    for g in IntervalMorphism::hom_set(l - 1, k - 1) {
                        let og = realize_interval(&g);
                        for h in IntervalMorphism::hom_set(k - 1, m - 1) {
                            let hg = IntervalMorphism::compose(&h, &g).unwrap();
                            assert_eq!(realize_interval(&hg), og.insert(1, &realize_interval(&h)).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cofaces_respect_leg_labels() {
        use crate::operad::basis::enumerate_basis;
        for l in 0..=3 {
            for k in 0..=2 {
                for t in enumerate_basis(&TreeType::new(l, vec![k])) {
                    let (planar, sigma) = t.split_labels();
                    let h = sigma.inverse();
                    for i in 0..=l + 1 {
                        let (p, s) = coface_tree(l, i).unwrap().insert(1, &t).unwrap().split_labels();
                        let expect = coface_tree(l, h.bar_index(i).unwrap()).unwrap().insert(1, &planar).unwrap();
                        assert_eq!(p, expect);
                        assert_eq!(s.inverse(), h.coface(i).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn stubs_come_from_codegeneracies() {
        use crate::operad::basis::{compositions_bounded, enumerate_basis};
        use std::collections::BTreeSet;
        for n in 1..=2 {
            for ks in compositions_bounded(n, 2) {
                for l in 0..=2 {
                    for j in 1..=n {
                        let mut big = ks.clone();
                        big[j - 1] += 1;
                        let stubbed: BTreeSet<NatTree> = enumerate_basis(&TreeType::new(l, big))
                            .into_iter()
                            .filter(|t| t.has_stub_at(j))
                            .collect();
                        let mut image = BTreeSet::new();
                        for t in enumerate_basis(&TreeType::new(l, ks.clone())) {
                            for i in 0..=ks[j - 1] {
                                image.insert(t.insert(j, &codegeneracy_tree(ks[j - 1], i).unwrap()).unwrap());
                            }
                        }
                        assert_eq!(image, stubbed, "ks = {ks:?}, l = {l}, j = {j}");
                    }
                }
            }
        }
    }
}
