//! Enumeration of canonical trees of a given type.

use std::collections::HashMap;
use std::rc::Rc;

use super::tree::{NatTree, Node, TreeType};
use crate::perm::Perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Ctx {
    Root,
    UnderWhite,
    UnderBlack,
}

struct Planar<'a> {
    ks: &'a [usize],
    trees: HashMap<(u32, usize, Ctx), Rc<Vec<Node>>>,
    forests: HashMap<(u32, usize, usize, Ctx), Rc<Vec<Vec<Node>>>>,
}

impl Planar<'_> {
    fn trees(&mut self, mask: u32, legs: usize, ctx: Ctx) -> Rc<Vec<Node>> {
        if let Some(v) = self.trees.get(&(mask, legs, ctx)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if mask == 0 && legs == 1 && ctx != Ctx::Root {
            out.push(Node::Leg(0));
        }
        if mask == 0 && legs == 0 && ctx == Ctx::UnderWhite {
            out.push(Node::Special);
        }
        for j in 0..self.ks.len() {
            if mask & (1 << j) != 0 {
                let fs = self.forests(mask & !(1 << j), legs, self.ks[j], Ctx::UnderWhite);
                out.extend(fs.iter().map(|f| Node::White(j + 1, f.clone())));
            }
        }
        if ctx != Ctx::UnderBlack {
            let max = mask.count_ones() as usize + legs;
            for c in 2..=max {
                let fs = self.forests(mask, legs, c, Ctx::UnderBlack);
                out.extend(fs.iter().map(|f| Node::Black(f.clone())));
            }
        }
        let rc = Rc::new(out);
        self.trees.insert((mask, legs, ctx), rc.clone());
        rc
    }

    fn forests(&mut self, mask: u32, legs: usize, count: usize, ctx: Ctx) -> Rc<Vec<Vec<Node>>> {
        if let Some(v) = self.forests.get(&(mask, legs, count, ctx)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if count == 0 {
            if mask == 0 && legs == 0 {
                out.push(Vec::new());
            }
        } else {
            // the first tree takes a submask and some of the legs
            let mut sub = mask;
            loop {
                for first_legs in 0..=legs {
                    let firsts = self.trees(sub, first_legs, ctx);
                    if firsts.is_empty() {
                        continue;
                    }
                    let rests = self.forests(mask & !sub, legs - first_legs, count - 1, ctx);
                    for a in firsts.iter() {
                        for rest in rests.iter() {
                            let mut f = Vec::with_capacity(count);
                            f.push(a.clone());
                            f.extend(rest.iter().cloned());
                            out.push(f);
                        }
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
        let rc = Rc::new(out);
        self.forests.insert((mask, legs, count, ctx), rc.clone());
        rc
    }
}

fn number_legs(node: &Node, next: &mut usize) -> Node {
    match node {
        Node::Leg(_) => {
            *next += 1;
            Node::Leg(*next)
        }
        Node::Special => Node::Special,
        Node::Black(c) => Node::Black(c.iter().map(|x| number_legs(x, next)).collect()),
        Node::White(j, c) => Node::White(*j, c.iter().map(|x| number_legs(x, next)).collect()),
    }
}

/// All trees of type `tt` whose legs are labelled in planar order (the basis of T).
pub fn enumerate_planar(tt: &TreeType) -> Vec<NatTree> {
    if tt.n() == 0 && tt.l <= 1 {
        return vec![if tt.l == 0 {
            NatTree::dot()
        } else {
            NatTree::bar()
        }];
    }
    let mut p = Planar {
        ks: &tt.ks,
        trees: HashMap::new(),
        forests: HashMap::new(),
    };
    let full = if tt.n() == 0 { 0 } else { (1u32 << tt.n()) - 1 };
    let roots = p.trees(full, tt.l, Ctx::Root);
    let mut out: Vec<NatTree> = roots
        .iter()
        .map(|r| NatTree::from_parts_unchecked(tt.clone(), number_legs(r, &mut 0)))
        .collect();
    out.sort();
    out
}

/// All canonical trees of type `tt`: planar trees with every leg labelling.
pub fn enumerate_basis(tt: &TreeType) -> Vec<NatTree> {
    let planar = enumerate_planar(tt);
    let perms = Perm::all(tt.l);
    let mut out = Vec::with_capacity(planar.len() * perms.len());
    for t in &planar {
        for s in &perms {
            out.push(t.relabel_legs(s).unwrap());
        }
    }
    out.sort();
    out
}

/// Types with `n` white vertices, `Σk <= k_max` and `l <= l_max`.
pub fn types_in_window(n: usize, k_max: usize, l_max: usize) -> Vec<TreeType> {
    let mut out = Vec::new();
    for ks in compositions_bounded(n, k_max) {
        for l in 0..=l_max {
            out.push(TreeType::new(l, ks.clone()));
        }
    }
    out
}

/// All `n`-tuples of non-negative integers with sum at most `max`.
pub fn compositions_bounded(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(n, left - v, cur, out);
            cur.pop();
        }
    }
    rec(n, max, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::IntervalMorphism;

    fn count(l: usize, ks: &[usize]) -> usize {
        enumerate_basis(&TreeType::new(l, ks.to_vec())).len()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(0, &[2]), 1);
        assert_eq!(count(1, &[1]), 3);
        assert_eq!(count(1, &[]), 1);
        assert_eq!(count(0, &[]), 1);
        assert_eq!(count(2, &[]), 2);
        assert_eq!(count(0, &[0, 0]), 2);
        for k in 0..5 {
            assert_eq!(count(0, &[k]), 1);
        }
    }

    #[test]
    fn enumeration_is_canonical_and_duplicate_free() {
        for tt in types_in_window(2, 3, 3) {
            let b = enumerate_basis(&tt);
            for t in &b {
                assert_eq!(&NatTree::new(tt.clone(), t.root().clone()).unwrap(), t);
            }
            let mut d = b.clone();
            d.dedup();
            assert_eq!(d.len(), b.len());
        }
    }

    #[test]
    fn one_white_vertex_matches_hom_sets() {
        for l in 0..=3 {
            for k in 0..=3 {
                let homs = IntervalMorphism::hom_set(l as i64 - 1, k as i64 - 1).len();
                assert_eq!(count(l, &[k]), homs, "l={l} k={k}");
            }
        }
    }

    #[test]
    fn planar_trees_are_planar() {
        for t in enumerate_planar(&TreeType::new(3, vec![1, 2])) {
            assert!(t.is_planar());
        }
    }

    /// Independent count of (l;k)-trees: choose the root legs and, for each of
    /// the k slots, a sequence of legs (empty sequence = stub); then order legs.
    #[test]
    fn one_white_vertex_direct_count() {
        for l in 0..=4usize {
            for k in 0..=3usize {
                // ways to split l ordered legs into k+2 ordered blocks, times l!
                let blocks = k + 2;
                let mut comps = 0usize;
                for c in compositions_bounded(blocks, l) {
                    if c.iter().sum::<usize>() == l {
                        comps += 1;
                    }
                }
                let fact: usize = (1..=l).product();
                assert_eq!(count(l, &[k]), comps * fact, "l={l} k={k}");
            }
        }
    }
}
