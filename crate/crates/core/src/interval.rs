//! Intervals ⟨n⟩ = {-1, 0..n, n+1} and the category IS of endpoint-preserving
//! maps with linearly ordered fibers. Automorphisms are interior permutations.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// A morphism ⟨src⟩ → ⟨dst⟩ of IS.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalMorphism {
    src: i64,
    dst: i64,
    /// `map[x + 1] = f(x)` for `x` in `-1..=src+1`.
    map: Vec<i64>,
    /// `fibers[j + 1]` is `f^{-1}(j)` in its specified order.
    fibers: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct MorphismJson {
    src: i64,
    dst: i64,
    map: Vec<i64>,
    fibers: BTreeMap<i64, Vec<i64>>,
}

impl Serialize for IntervalMorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let fibers = (-1..=self.dst + 1)
            .map(|j| (j, self.fiber(j).to_vec()))
            .collect();
        MorphismJson {
            src: self.src,
            dst: self.dst,
            map: self.map.clone(),
            fibers,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntervalMorphism {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MorphismJson::deserialize(d)?;
        let fibers = (-1..=j.dst + 1)
            .map(|i| j.fibers.get(&i).cloned().unwrap_or_default())
            .collect();
        IntervalMorphism::new(j.src, j.dst, j.map, fibers).map_err(serde::de::Error::custom)
    }
}

/// A morphism `[m] -> [n]` of the symmetric category: a map with ordered fibers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSMorphism {
    pub src: usize,
    pub dst: usize,
    pub map: Vec<usize>,
    pub fibers: Vec<Vec<usize>>,
}

impl IntervalMorphism {
    pub fn new(src: i64, dst: i64, map: Vec<i64>, fibers: Vec<Vec<i64>>) -> Result<Self> {
        let bad = |s: &str| Err(Error::InvalidMorphism(s.to_string()));
        if src < -1 || dst < -1 {
            return bad("intervals start at <-1>");
        }
        if map.len() != (src + 3) as usize || fibers.len() != (dst + 3) as usize {
            return bad("wrong table length");
        }
        if map.iter().any(|&v| v < -1 || v > dst + 1) {
            return bad("value out of range");
        }
        if map[0] != -1 || map[(src + 2) as usize] != dst + 1 {
            return bad("endpoints not preserved");
        }
        for j in -1..=dst + 1 {
            let fib = &fibers[(j + 1) as usize];
            let mut want: Vec<i64> = (-1..=src + 1)
                .filter(|&x| map[(x + 1) as usize] == j)
                .collect();
            let mut got = fib.clone();
            got.sort_unstable();
            want.sort_unstable();
            if got != want {
                return bad("fiber order is not a permutation of the fiber");
            }
        }
        if fibers[0][0] != -1 {
            return bad("-1 must be minimal in its fiber");
        }
        if *fibers[(dst + 2) as usize].last().unwrap() != src + 1 {
            return bad("top endpoint must be maximal in its fiber");
        }
        Ok(IntervalMorphism {
            src,
            dst,
            map,
            fibers,
        })
    }

    /// A map with every fiber in its natural order.
    pub fn from_map(src: i64, dst: i64, map: Vec<i64>) -> Result<Self> {
        let mut fibers = vec![Vec::new(); (dst + 3).max(0) as usize];
        for (k, &v) in map.iter().enumerate() {
            if v < -1 || v > dst + 1 {
                return Err(Error::InvalidMorphism("value out of range".into()));
            }
            fibers[(v + 1) as usize].push(k as i64 - 1);
        }
        IntervalMorphism::new(src, dst, map, fibers)
    }

    pub fn identity(n: i64) -> Self {
        IntervalMorphism::from_map(n, n, (-1..=n + 1).collect()).unwrap()
    }

    /// The automorphism of ⟨n⟩ acting on the interior by `h ∈ S_{n+1}`.
    pub fn aut(h: &Perm) -> Self {
        let n = h.arity() as i64 - 1;
        let mut map = vec![-1];
        map.extend(h.images().iter().map(|&v| v as i64 - 1));
        map.push(n + 1);
        IntervalMorphism::from_map(n, n, map).unwrap()
    }

    pub fn src(&self) -> i64 {
        self.src
    }

    pub fn dst(&self) -> i64 {
        self.dst
    }

    pub fn apply(&self, x: i64) -> i64 {
        self.map[(x + 1) as usize]
    }

    pub fn map(&self) -> &[i64] {
        &self.map
    }

    pub fn fiber(&self, j: i64) -> &[i64] {
        &self.fibers[(j + 1) as usize]
    }

    /// Membership in the subcategory I: non-decreasing with natural fiber orders.
    pub fn is_order_preserving(&self) -> bool {
        self.map.windows(2).all(|w| w[0] <= w[1])
            && self
                .fibers
                .iter()
                .all(|f| f.windows(2).all(|w| w[0] < w[1]))
    }

    /// Interior bijection test.
    pub fn is_automorphism(&self) -> bool {
        self.src == self.dst && self.fibers.iter().all(|f| f.len() == 1)
    }

    /// `g ∘ f` with fibers in block order.
    pub fn compose(g: &IntervalMorphism, f: &IntervalMorphism) -> Result<IntervalMorphism> {
        if f.dst != g.src {
            return Err(Error::ObjectMismatch(format!("<{}> vs <{}>", f.dst, g.src)));
        }
        let map = f.map.iter().map(|&y| g.apply(y)).collect();
        let fibers = g
            .fibers
            .iter()
            .map(|gf| {
                gf.iter()
                    .flat_map(|&j| f.fiber(j).iter().copied())
                    .collect()
            })
            .collect();
        Ok(IntervalMorphism {
            src: f.src,
            dst: g.dst,
            map,
            fibers,
        })
    }

    /// `f = phi ∘ aut(h)` with `phi` in I.
    pub fn factorize(&self) -> (IntervalMorphism, Perm) {
        // h sends an interior point to its rank in the concatenated fibers;
        // the bottom endpoint has rank 0, so interior ranks are 1-based
        let mut h = vec![0usize; (self.src + 1) as usize];
        let mut rank = 0i64;
        for fib in &self.fibers {
            for &x in fib {
                if x >= 0 && x <= self.src {
                    h[x as usize] = rank as usize;
                }
                rank += 1;
            }
        }
        let h = Perm::from_vec_unchecked(h);
        let mut map = Vec::with_capacity(self.map.len());
        for (j, fib) in self.fibers.iter().enumerate() {
            map.extend(std::iter::repeat(j as i64 - 1).take(fib.len()));
        }
        (
            IntervalMorphism::from_map(self.src, self.dst, map).unwrap(),
            h,
        )
    }

    /// Joyal face `j(δ_i)` for `δ_i : [n-1] -> [n]`: ⟨n-1⟩ → ⟨n-2⟩ hitting `i-1` twice.
    pub fn face(n: i64, i: i64) -> Result<Self> {
        if n < 1 || i < 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        let map = (-1..=n).map(|x| if x < i { x } else { x - 1 }).collect();
        IntervalMorphism::from_map(n - 1, n - 2, map)
    }

    /// Joyal degeneracy `j(σ_i)` for `σ_i : [n+1] -> [n]`: ⟨n-1⟩ → ⟨n⟩ missing `i`.
    pub fn degeneracy(n: i64, i: i64) -> Result<Self> {
        if n < 0 || i < 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        let map = (-1..=n).map(|x| if x < i { x } else { x + 1 }).collect();
        IntervalMorphism::from_map(n - 1, n, map)
    }

    /// Image in the symmetric category: `g(i) = f(i-1) + 1` on `[m+2] -> [n+2]`.
    pub fn embed_into_delta_s(&self) -> DeltaSMorphism {
        DeltaSMorphism {
            src: (self.src + 2) as usize,
            dst: (self.dst + 2) as usize,
            map: self.map.iter().map(|&v| (v + 1) as usize).collect(),
            fibers: self
                .fibers
                .iter()
                .map(|f| f.iter().map(|&x| (x + 1) as usize).collect())
                .collect(),
        }
    }

    /// All morphisms ⟨m⟩ → ⟨n⟩, in a canonical order.
    pub fn hom_set(m: i64, n: i64) -> Vec<IntervalMorphism> {
        let mut out = Vec::new();
        if m < -1 || n < -1 {
            return out;
        }
        let interior = (m + 1) as usize;
        let mut vals = vec![-1i64; interior];
        loop {
            let mut map = vec![-1];
            map.extend(vals.iter().copied());
            map.push(n + 1);
            push_orders(m, n, &map, &mut out);
            // odometer over interior values in -1..=n+1
            let mut k = 0;
            loop {
                if k == interior {
                    return out;
                }
                if vals[k] < n + 1 {
                    vals[k] += 1;
                    break;
                }
                vals[k] = -1;
                k += 1;
            }
        }
    }

    /// All morphisms of I (order preserving) ⟨m⟩ → ⟨n⟩.
    pub fn hom_set_i(m: i64, n: i64) -> Vec<IntervalMorphism> {
        IntervalMorphism::hom_set(m, n)
            .into_iter()
            .filter(|f| f.is_order_preserving())
            .collect()
    }
}

/// Every admissible choice of fiber orders for a fixed map.
fn push_orders(m: i64, n: i64, map: &[i64], out: &mut Vec<IntervalMorphism>) {
    let base: Vec<Vec<i64>> = (-1..=n + 1)
        .map(|j| {
            (-1..=m + 1)
                .filter(|&x| map[(x + 1) as usize] == j)
                .collect()
        })
        .collect();
    let choices: Vec<Vec<Vec<i64>>> = base
        .iter()
        .enumerate()
        .map(|(idx, fib)| {
            let j = idx as i64 - 1;
            Perm::all(fib.len())
                .into_iter()
                .map(|p| p.images().iter().map(|&k| fib[k - 1]).collect::<Vec<i64>>())
                .filter(|ord| {
                    (j != -1 || ord[0] == -1) && (j != n + 1 || *ord.last().unwrap() == m + 1)
                })
                .collect()
        })
        .collect();
    let mut pick = vec![0usize; choices.len()];
    loop {
        let fibers = pick
            .iter()
            .zip(&choices)
            .map(|(&p, c)| c[p].clone())
            .collect();
        out.push(IntervalMorphism {
            src: m,
            dst: n,
            map: map.to_vec(),
            fibers,
        });
        let mut k = 0;
        loop {
            if k == pick.len() {
                return;
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

/// `h ∘ phi = h*(phi) ∘ phi*(h)`; returns `(phi*(h), h*(phi))`.
pub fn crossed_action(h: &Perm, phi: &IntervalMorphism) -> Result<(Perm, IntervalMorphism)> {
    let (psi, k) = IntervalMorphism::compose(&IntervalMorphism::aut(h), phi)?.factorize();
    Ok((k, psi))
}

/// Coface of a free crossed element: `d_i(x, h) = (d_{h̄(i)} x, d_i h)`, extended linearly.
pub fn free_coface<X, F>(base_coface: F, x: &X, h: &Perm, i: usize) -> Result<Vec<((X, Perm), i64)>>
where
    F: Fn(&X, usize) -> Vec<(X, i64)>,
{
    let dh = h.coface(i)?;
    let j = h.bar_index(i)?;
    Ok(base_coface(x, j)
        .into_iter()
        .map(|(y, c)| ((y, dh.clone()), c))
        .collect())
}

/// Codegeneracy of a free crossed element: `s_i(x, h) = (s_{h̲(i)} x, s_i h)`.
pub fn free_codegeneracy<X, F>(
    base_codegen: F,
    x: &X,
    h: &Perm,
    i: usize,
) -> Result<Vec<((X, Perm), i64)>>
where
    F: Fn(&X, usize) -> Vec<(X, i64)>,
{
    let sh = h.codegeneracy(i)?;
    let j = h.under_index(i)?;
    Ok(base_codegen(x, j)
        .into_iter()
        .map(|(y, c)| ((y, sh.clone()), c))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all_among(lo: i64, hi: i64) -> Vec<IntervalMorphism> {
        let mut v = Vec::new();
        for m in lo..=hi {
            for n in lo..=hi {
                v.extend(IntervalMorphism::hom_set(m, n));
            }
        }
        v
    }

    #[test]
    fn order_preserving_examples() {
        assert!(IntervalMorphism::identity(2).is_order_preserving());
        for k in 0..4 {
            let hs = IntervalMorphism::hom_set(-1, k - 1);
            assert_eq!(hs.len(), 1);
            assert!(hs[0].is_order_preserving());
        }
        let swap = IntervalMorphism::aut(&Perm::new(vec![2, 1]).unwrap());
        assert!(!swap.is_order_preserving());
    }

    #[test]
    fn hom_set_sizes() {
        assert_eq!(IntervalMorphism::hom_set(0, 0).len(), 3);
        // brute force: count endpoint-preserving maps with admissible orders
        for (m, n) in [(0, 1), (1, 0), (1, 1), (2, 0), (0, 2)] {
            let mut count = 0u64;
            let pts = (m + 2) as u32;
            let vals = (n + 3) as u64;
            for code in 0..vals.pow(pts - 1) {
                let mut c = code;
                let mut map = vec![-1i64];
                for _ in 0..m + 1 {
                    map.push((c % vals) as i64 - 1);
                    c /= vals;
                }
                map.push(n + 1);
                if c != 0 {
                    continue;
                }
                let mut ways = 1u64;
                for j in -1..=n + 1 {
                    let s = map.iter().filter(|&&v| v == j).count() as u64;
                    let pinned = u64::from(j == -1) + u64::from(j == n + 1);
                    let free = s - pinned;
                    ways *= (1..=free).product::<u64>();
                }
                count += ways;
            }
            assert_eq!(
                IntervalMorphism::hom_set(m, n).len() as u64,
                count,
                "({m},{n})"
            );
        }
    }

    #[test]
    fn category_laws() {
        let all = all_among(-1, 1);
        for f in &all {
            let idl = IntervalMorphism::identity(f.dst());
            let idr = IntervalMorphism::identity(f.src());
            assert_eq!(&IntervalMorphism::compose(&idl, f).unwrap(), f);
            assert_eq!(&IntervalMorphism::compose(f, &idr).unwrap(), f);
        }
        for f in &all {
            for g in all.iter().filter(|g| g.src() == f.dst()) {
                let gf = IntervalMorphism::compose(g, f).unwrap();
                for h in all.iter().filter(|h| h.src() == g.dst()) {
                    let l = IntervalMorphism::compose(h, &gf).unwrap();
                    let r = IntervalMorphism::compose(&IntervalMorphism::compose(h, g).unwrap(), f)
                        .unwrap();
                    assert_eq!(l, r);
                }
            }
        }
        assert!(IntervalMorphism::compose(
            &IntervalMorphism::identity(1),
            &IntervalMorphism::identity(0)
        )
        .is_err());
    }

    #[test]
    fn unique_factorization() {
        for f in all_among(-1, 2) {
            let (phi, h) = f.factorize();
            assert!(phi.is_order_preserving());
            assert_eq!(
                IntervalMorphism::compose(&phi, &IntervalMorphism::aut(&h)).unwrap(),
                f
            );
            let mut hits = 0;
            for phi2 in IntervalMorphism::hom_set_i(f.src(), f.dst()) {
                for h2 in Perm::all((f.src() + 1) as usize) {
                    if IntervalMorphism::compose(&phi2, &IntervalMorphism::aut(&h2)).unwrap() == f {
                        hits += 1;
                    }
                }
            }
            assert_eq!(hits, 1);
        }
    }

    #[test]
    fn factorization_of_special_morphisms() {
        for f in IntervalMorphism::hom_set_i(1, 2) {
            assert_eq!(f.factorize(), (f.clone(), Perm::identity(2)));
        }
        for h in Perm::all(3) {
            let a = IntervalMorphism::aut(&h);
            assert_eq!(a.factorize(), (IntervalMorphism::identity(2), h));
        }
    }

    #[test]
    fn automorphisms_compose_plainly() {
        // aut(h) ∘ aut(k) = aut(h ∘ k): the automorphism group is S_{n+1} under ∘
        for h in Perm::all(3) {
            for k in Perm::all(3) {
                let l = IntervalMorphism::compose(
                    &IntervalMorphism::aut(&h),
                    &IntervalMorphism::aut(&k),
                )
                .unwrap();
                assert_eq!(l, IntervalMorphism::aut(&h.compose(&k).unwrap()));
            }
        }
    }

    #[test]
    fn generator_examples() {
        let s0 = IntervalMorphism::degeneracy(1, 0).unwrap();
        assert_eq!((s0.src(), s0.dst(), s0.apply(0)), (0, 1, 1));
        let d1 = IntervalMorphism::face(2, 1).unwrap();
        assert_eq!((d1.src(), d1.dst(), d1.apply(0), d1.apply(1)), (1, 0, 0, 0));
        let d0 = IntervalMorphism::face(1, 0).unwrap();
        assert_eq!((d0.src(), d0.dst(), d0.apply(0)), (0, -1, -1));
        assert!(IntervalMorphism::face(2, 3).is_err());
        assert!(IntervalMorphism::degeneracy(2, 3).is_err());
    }

    /// Joyal duality turns the simplicial identities of Δ around.
    #[test]
    fn joyal_generators_satisfy_dual_identities() {
        let c =
            |g: &IntervalMorphism, f: &IntervalMorphism| IntervalMorphism::compose(g, f).unwrap();
        let d = |n, i| IntervalMorphism::face(n, i).unwrap();
        let s = |n, i| IntervalMorphism::degeneracy(n, i).unwrap();
        for n in 1..5 {
            // δ_j δ_i = δ_i δ_{j-1}, i < j, with δ_i:[n-1]->[n], δ_j:[n]->[n+1]
            for j in 0..=n + 1 {
                for i in 0..j {
                    assert_eq!(c(&d(n, i), &d(n + 1, j)), c(&d(n, j - 1), &d(n + 1, i)));
                }
            }
            // σ_j σ_i = σ_i σ_{j+1}, i <= j, with σ_i:[n+2]->[n+1], σ_j:[n+1]->[n]
            for j in 0..=n {
                for i in 0..=j {
                    assert_eq!(c(&s(n + 1, i), &s(n, j)), c(&s(n + 1, j + 1), &s(n, i)));
                }
            }
        }
    }

    #[test]
    fn crossed_action_matches_perm_cofaces() {
        // h ∘ j(δ_i) = j(δ_{h̄(i)}) ∘ aut(d_i h)
        for n in 1..5usize {
            for h in Perm::all(n - 1) {
                for i in 0..=n {
                    let phi = IntervalMorphism::face(n as i64, i as i64).unwrap();
                    let (k, psi) = crossed_action(&h, &phi).unwrap();
                    assert_eq!(k, h.coface(i).unwrap());
                    assert_eq!(
                        psi,
                        IntervalMorphism::face(n as i64, h.bar_index(i).unwrap() as i64).unwrap()
                    );
                }
            }
        }
        // h ∘ j(σ_i) = j(σ_{h̲(i)}) ∘ aut(s_i h)
        for n in 1..5usize {
            for h in Perm::all(n + 1) {
                for i in 0..=n {
                    let phi = IntervalMorphism::degeneracy(n as i64, i as i64).unwrap();
                    let (k, psi) = crossed_action(&h, &phi).unwrap();
                    assert_eq!(k, h.codegeneracy(i).unwrap());
                    let j = h.under_index(i).unwrap() as i64;
                    assert_eq!(psi, IntervalMorphism::degeneracy(n as i64, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn crossed_action_exhaustive() {
        for h in Perm::all(3) {
            for phi in IntervalMorphism::hom_set_i(1, 2) {
                let (k, psi) = crossed_action(&h, &phi).unwrap();
                assert!(psi.is_order_preserving());
                let lhs = IntervalMorphism::compose(&IntervalMorphism::aut(&h), &phi).unwrap();
                let rhs = IntervalMorphism::compose(&psi, &IntervalMorphism::aut(&k)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let phi = IntervalMorphism::hom_set_i(1, 2).swap_remove(3);
        assert_eq!(
            crossed_action(&Perm::identity(3), &phi).unwrap(),
            (Perm::identity(2), phi)
        );
        let h = Perm::new(vec![2, 3, 1]).unwrap();
        assert_eq!(
            crossed_action(&h, &IntervalMorphism::identity(2)).unwrap(),
            (h.clone(), IntervalMorphism::identity(2))
        );
    }

    #[test]
    fn embedding_examples() {
        let e = IntervalMorphism::identity(0).embed_into_delta_s();
        assert_eq!((e.src, e.dst, e.map.clone()), (2, 2, vec![0, 1, 2]));
        let e = IntervalMorphism::face(2, 1).unwrap().embed_into_delta_s();
        assert_eq!((e.src, e.dst, e.map), (3, 2, vec![0, 1, 1, 2]));
        for f in all_among(-1, 1) {
            let g = f.embed_into_delta_s();
            assert_eq!(g.map[0], 0);
            assert_eq!(*g.map.last().unwrap(), g.dst);
        }
    }

    #[test]
    fn json_roundtrip() {
        for f in all_among(-1, 1) {
            let s = serde_json::to_string(&f).unwrap();
            assert_eq!(serde_json::from_str::<IntervalMorphism>(&s).unwrap(), f);
        }
        let bad = r#"{"src":0,"dst":0,"map":[-1,0,1],"fibers":{"-1":[-1],"0":[0],"1":[]}}"#;
        assert!(serde_json::from_str::<IntervalMorphism>(bad).is_err());
    }

    #[test]
    fn invalid_morphisms_rejected() {
        assert!(IntervalMorphism::from_map(0, 0, vec![0, 0, 1]).is_err());
        assert!(IntervalMorphism::from_map(0, 0, vec![-1, 0, 0]).is_err());
        // -1 not minimal in its fiber
        assert!(
            IntervalMorphism::new(0, 0, vec![-1, -1, 1], vec![vec![0, -1], vec![], vec![1]])
                .is_err()
        );
    }

    /// Relation (1) and (2) of the characterization of crossed interval groups.
    #[test]
    fn crossed_group_relations() {
        for n in 0..=4 {
            let all = Perm::all(n);
            for h in &all {
                for k in &all {
                    let hk = k.compose(h).unwrap();
                    for i in 0..=n + 1 {
                        let l = hk.coface(i).unwrap();
                        let r = k
                            .coface(h.bar_index(i).unwrap())
                            .unwrap()
                            .compose(&h.coface(i).unwrap())
                            .unwrap();
                        assert_eq!(l, r);
                    }
                    for i in 0..n {
                        let l = hk.codegeneracy(i).unwrap();
                        let r = k
                            .codegeneracy(h.under_index(i).unwrap())
                            .unwrap()
                            .compose(&h.codegeneracy(i).unwrap())
                            .unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn free_structure_untwisted_for_identity() {
        let base = |x: &usize, i: usize| vec![(x * 10 + i, 1)];
        let id = Perm::identity(2);
        for i in 0..4 {
            let v = free_coface(base, &7, &id, i).unwrap();
            assert_eq!(v, vec![((70 + i, id.coface(i).unwrap()), 1)]);
        }
        let h = Perm::new(vec![2, 1]).unwrap();
        let v = free_coface(base, &7, &h, 0).unwrap();
        assert_eq!(v, vec![((70, Perm::identity(1).times(&h)), 1)]);
        let v = free_codegeneracy(base, &7, &h, 0).unwrap();
        assert_eq!(v, vec![((71, Perm::identity(1)), 1)]);
    }

    proptest! {
        #[test]
        fn compose_then_factorize_roundtrip(m in -1i64..3, n in -1i64..3, pick in any::<usize>()) {
            let hs = IntervalMorphism::hom_set(m, n);
            prop_assume!(!hs.is_empty());
            let f = &hs[pick % hs.len()];
            let (phi, h) = f.factorize();
            prop_assert_eq!(&IntervalMorphism::compose(&phi, &IntervalMorphism::aut(&h)).unwrap(), f);
        }
    }
}
