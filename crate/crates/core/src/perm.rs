//! Symmetric groups in 1-based one-line notation, with the grade calculus
//! (a, b, c, omega, kappa), strand-doubling cofaces and the twisted index maps.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A permutation of {1..q}; `images[i]` is the image of `i+1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    images: Vec<usize>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Perm::new(v)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Vec<usize> {
        p.images
    }
}

/// Output of [`Perm::grade`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeDecomposition {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// `q - 1` for the identity of `S_q`; so `-1` only for the empty permutation.
    pub g: i64,
    pub omega: Perm,
    pub kappa: Perm,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let q = images.len();
        let mut seen = vec![false; q + 1];
        for &v in &images {
            if v == 0 || v > q || seen[v] {
                return Err(Error::InvalidPerm(images.clone()));
            }
            seen[v] = true;
        }
        Ok(Perm { images })
    }

    /// Caller guarantees bijectivity.
    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Perm::new(images.clone()).is_ok());
        Perm { images }
    }

    pub fn identity(q: usize) -> Self {
        Perm {
            images: (1..=q).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `sigma(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.arity()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Perm { images: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch(self.arity(), other.arity()));
        }
        Ok(Perm {
            images: other.images.iter().map(|&j| self.images[j - 1]).collect(),
        })
    }

    pub fn inversions(&self) -> usize {
        let v = &self.images;
        let mut n = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    n += 1;
                }
            }
        }
        n
    }

    pub fn sign(&self) -> i64 {
        if self.inversions() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Block sum `self × other`.
    pub fn times(&self, other: &Perm) -> Perm {
        let shift = self.arity();
        let mut v = self.images.clone();
        v.extend(other.images.iter().map(|&x| x + shift));
        Perm { images: v }
    }

    /// Length of the largest identity prefix.
    fn fixed_prefix(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .take_while(|&(k, &v)| v == k + 1)
            .count()
    }

    fn fixed_suffix(&self) -> usize {
        let q = self.arity();
        let mut c = 0;
        for k in (0..q).rev() {
            if self.images[k] == k + 1 {
                c += 1;
            } else {
                break;
            }
        }
        c
    }

    /// Restriction to inputs `from+1..=to` when that block is closed under `self`,
    /// renumbered to start at 1.
    fn block(&self, from: usize, to: usize) -> Perm {
        Perm {
            images: self.images[from..to].iter().map(|&v| v - from).collect(),
        }
    }

    /// Number of `s` with `self(s+1) = self(s) + 1`.
    pub fn doubled_strings(&self) -> usize {
        self.images.windows(2).filter(|w| w[1] == w[0] + 1).count()
    }

    pub fn grade(&self) -> GradeDecomposition {
        let q = self.arity();
        if self.is_identity() {
            return GradeDecomposition {
                a: 0,
                b: 0,
                c: 0,
                g: q as i64 - 1,
                omega: self.clone(),
                kappa: Perm::identity(1),
            };
        }
        let a = self.fixed_prefix();
        let c = self.fixed_suffix();
        let omega = self.block(a, q - c);
        let b = omega.doubled_strings();
        let kappa = contract_simple(&omega);
        GradeDecomposition {
            a,
            b,
            c,
            g: (a + b + c) as i64,
            omega,
            kappa,
        }
    }

    pub fn is_simple(&self) -> bool {
        self.grade().g == 0
    }

    /// The simple permutation κ(σ).
    pub fn contract(&self) -> Perm {
        self.grade().kappa
    }

    /// Merge inputs `s, s+1` (1-based) which must form a doubled string.
    pub fn merge_at(&self, s: usize) -> Perm {
        let v = &self.images;
        assert!(
            s >= 1 && s < v.len() && v[s] == v[s - 1] + 1,
            "not a doubled string"
        );
        let dropped = v[s];
        let images = v
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != s)
            .map(|(_, &x)| if x > dropped { x - 1 } else { x })
            .collect();
        Perm { images }
    }

    /// Coface `d_i : S_q -> S_{q+1}`, `0 <= i <= q+1`.
    pub fn coface(&self, i: usize) -> Result<Perm> {
        let q = self.arity();
        if i > q + 1 {
            return Err(Error::IndexOutOfRange {
                index: i as i64,
                max: q as i64 + 1,
            });
        }
        if i == 0 {
            return Ok(Perm::identity(1).times(self));
        }
        if i == q + 1 {
            return Ok(self.times(&Perm::identity(1)));
        }
        let t = self.images[i - 1];
        let mut v = Vec::with_capacity(q + 1);
        for (k, &x) in self.images.iter().enumerate() {
            if k + 1 == i {
                v.push(t);
                v.push(t + 1);
            } else {
                v.push(if x > t { x + 1 } else { x });
            }
        }
        Ok(Perm { images: v })
    }

    /// Codegeneracy `s_i : S_q -> S_{q-1}`, `0 <= i <= q-1`: delete input `i+1`.
    pub fn codegeneracy(&self, i: usize) -> Result<Perm> {
        let q = self.arity();
        if i >= q {
            return Err(Error::IndexOutOfRange {
                index: i as i64,
                max: q as i64 - 1,
            });
        }
        let dropped = self.images[i];
        let images = self
            .images
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, &x)| if x > dropped { x - 1 } else { x })
            .collect();
        Ok(Perm { images })
    }

    /// `h̄(i)` for `0 <= i <= q+1`: fixes `0` and `q+1`, equals `h` inside.
    pub fn bar_index(&self, i: usize) -> Result<usize> {
        let q = self.arity();
        match i {
            0 => Ok(0),
            _ if i == q + 1 => Ok(q + 1),
            _ if i <= q => Ok(self.images[i - 1]),
            _ => Err(Error::IndexOutOfRange {
                index: i as i64,
                max: q as i64 + 1,
            }),
        }
    }

    /// `h̲(i) = h(i+1) - 1` for `0 <= i <= q-1`.
    pub fn under_index(&self, i: usize) -> Result<usize> {
        let q = self.arity();
        if i >= q {
            return Err(Error::IndexOutOfRange {
                index: i as i64,
                max: q as i64 - 1,
            });
        }
        Ok(self.images[i] - 1)
    }

    /// Position in the lexicographic order of `S_q` (Lehmer code).
    pub fn lex_rank(&self) -> usize {
        let v = &self.images;
        let q = v.len();
        let mut rank = 0;
        for i in 0..q {
            let smaller = v[i + 1..].iter().filter(|&&x| x < v[i]).count();
            rank = rank * (q - i) + smaller;
        }
        rank
    }

    pub fn from_lex_rank(q: usize, mut rank: usize) -> Perm {
        let mut digits = vec![0; q];
        for i in (0..q).rev() {
            let base = q - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<usize> = (1..=q).collect();
        let images = digits.into_iter().map(|d| pool.remove(d)).collect();
        Perm { images }
    }

    /// All of `S_q` in lexicographic order.
    pub fn all(q: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=q).collect();
        loop {
            out.push(Perm {
                images: cur.clone(),
            });
            // next lexicographic permutation
            if q < 2 {
                break;
            }
            let mut k = q - 1;
            while k > 0 && cur[k - 1] >= cur[k] {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            let mut j = q - 1;
            while cur[j] <= cur[k - 1] {
                j -= 1;
            }
            cur.swap(k - 1, j);
            cur[k..].reverse();
        }
        out
    }
}

/// Contract every doubled string of a permutation with no fixed prefix/suffix.
fn contract_simple(omega: &Perm) -> Perm {
    // Collapse maximal runs where consecutive inputs go to consecutive outputs.
    let v = &omega.images;
    let mut heads = Vec::new();
    for (k, &x) in v.iter().enumerate() {
        if k == 0 || x != v[k - 1] + 1 {
            heads.push(x);
        }
    }
    let mut sorted = heads.clone();
    sorted.sort_unstable();
    let images = heads
        .iter()
        .map(|h| sorted.binary_search(h).unwrap() + 1)
        .collect();
    Perm { images }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Perm {
        Perm::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::new(vec![1, 1]).is_err());
        assert!(Perm::new(vec![0, 1]).is_err());
        assert!(Perm::new(vec![3, 1]).is_err());
        assert!(Perm::new(vec![]).is_ok());
    }

    #[test]
    fn compose_examples() {
        assert_eq!(p(&[2, 1]).compose(&p(&[2, 1])).unwrap(), p(&[1, 2]));
        let s = p(&[3, 1, 2]);
        assert_eq!(Perm::identity(3).compose(&s).unwrap(), s);
        assert_eq!(
            p(&[2, 3, 1]).compose(&p(&[3, 1, 2])).unwrap(),
            p(&[1, 2, 3])
        );
        assert!(p(&[1]).compose(&p(&[1, 2])).is_err());
    }

    #[test]
    fn sign_examples() {
        assert_eq!(Perm::identity(4).sign(), 1);
        assert_eq!(p(&[2, 1]).sign(), -1);
        assert_eq!(p(&[3, 2, 1]).sign(), -1);
    }

    #[test]
    fn grade_examples() {
        for n in 1..6 {
            assert_eq!(Perm::identity(n).grade().g, n as i64 - 1);
        }
        let g = p(&[2, 1]).grade();
        assert_eq!((g.a, g.b, g.c, g.g), (0, 0, 0, 0));
        let g = p(&[1, 3, 4, 2]).grade();
        assert_eq!((g.a, g.b, g.c, g.g), (1, 1, 0, 2));
        assert_eq!(g.omega, p(&[2, 3, 1]));
        assert_eq!(g.kappa, p(&[2, 1]));
    }

    #[test]
    fn ten_strand_permutation() {
        let s = p(&[1, 2, 5, 6, 7, 3, 4, 9, 8, 10]);
        let g = s.grade();
        assert_eq!((g.a, g.b, g.c, g.g), (2, 3, 1, 6));
        assert_eq!(g.omega, p(&[3, 4, 5, 1, 2, 7, 6]));
        assert_eq!(g.kappa, p(&[2, 1, 4, 3]));
    }

    #[test]
    fn contract_examples() {
        assert_eq!(Perm::identity(5).contract(), Perm::identity(1));
        assert_eq!(p(&[2, 1]).contract(), p(&[2, 1]));
        assert_eq!(p(&[1, 3, 4, 2]).contract(), p(&[2, 1]));
    }

    #[test]
    fn coface_examples() {
        let s = p(&[2, 1]);
        assert_eq!(s.coface(0).unwrap(), p(&[1, 3, 2]));
        assert_eq!(s.coface(3).unwrap(), p(&[2, 1, 3]));
        assert_eq!(s.coface(1).unwrap(), p(&[2, 3, 1]));
        assert!(s.coface(4).is_err());
    }

    #[test]
    fn index_map_examples() {
        let id = Perm::identity(3);
        for i in 0..=4 {
            assert_eq!(id.bar_index(i).unwrap(), i);
        }
        for i in 0..3 {
            assert_eq!(id.under_index(i).unwrap(), i);
        }
        let s = p(&[2, 1]);
        assert_eq!(s.bar_index(1).unwrap(), 2);
        assert_eq!(s.bar_index(0).unwrap(), 0);
        assert_eq!(s.bar_index(3).unwrap(), 3);
        assert!(s.bar_index(4).is_err());
        assert!(s.under_index(2).is_err());
    }

    #[test]
    fn lex_rank_matches_enumeration() {
        for q in 0..=5 {
            for (r, s) in Perm::all(q).into_iter().enumerate() {
                assert_eq!(s.lex_rank(), r);
                assert_eq!(Perm::from_lex_rank(q, r), s);
            }
        }
    }

    #[test]
    fn enumeration_sizes() {
        let sizes: Vec<usize> = (0..7).map(|q| Perm::all(q).len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 6, 24, 120, 720]);
    }

    /// Brute force: grade read off the definition with explicit factorizations.
    fn grade_oracle(s: &Perm) -> (usize, usize, usize) {
        let q = s.arity();
        let v = s.images();
        let a = (0..=q)
            .filter(|&i| (0..i).all(|k| v[k] == k + 1))
            .max()
            .unwrap();
        let c = (0..=q)
            .filter(|&j| (q - j..q).all(|k| v[k] == k + 1))
            .max()
            .unwrap();
        let w: Vec<usize> = v[a..q - c].iter().map(|x| x - a).collect();
        let b = (1..w.len()).filter(|&s| w[s] == w[s - 1] + 1).count();
        (a, b, c)
    }

    #[test]
    fn grade_matches_oracle_exhaustively() {
        for q in 1..=6 {
            for s in Perm::all(q) {
                if s.is_identity() {
                    continue;
                }
                let g = s.grade();
                assert_eq!((g.a, g.b, g.c), grade_oracle(&s), "{s}");
                assert_eq!(
                    Perm::identity(g.a)
                        .times(&g.omega)
                        .times(&Perm::identity(g.c)),
                    s
                );
                assert_eq!(g.g, q as i64 - g.kappa.arity() as i64);
                assert!(g.kappa.is_simple());
            }
        }
    }

    #[test]
    fn kappa_stable_under_cofaces() {
        for q in 0..=6 {
            for s in Perm::all(q) {
                for i in 1..=q + 1 {
                    assert_eq!(s.coface(i).unwrap().contract(), s.contract(), "{s} d{i}");
                }
            }
        }
    }

    #[test]
    fn sign_identity_exhaustive() {
        for q in 0..=6 {
            for s in Perm::all(q) {
                for i in 0..=q + 1 {
                    let lhs = if s.bar_index(i).unwrap() % 2 == 0 {
                        1
                    } else {
                        -1
                    } * s.sign();
                    let rhs = if i % 2 == 0 { 1 } else { -1 } * s.coface(i).unwrap().sign();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn simple_counts() {
        let count = |q| Perm::all(q).into_iter().filter(|s| s.is_simple()).count();
        assert_eq!(count(1), 1);
        assert_eq!(count(2), 1);
        assert_eq!(count(3), 1);
        let scan = Perm::all(4)
            .into_iter()
            .filter(|s| {
                let v = s.images();
                v[0] != 1 && v[3] != 4 && s.doubled_strings() == 0
            })
            .count();
        assert_eq!(count(4), scan);
    }

    #[test]
    fn cosimplicial_identities_on_perms() {
        for q in 0..=4 {
            for s in Perm::all(q) {
                for j in 0..=q + 2 {
                    for i in 0..j {
                        let l = s.coface(i).unwrap().coface(j).unwrap();
                        let r = s.coface(j - 1).unwrap().coface(i).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let s = p(&[3, 1, 2]);
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, "[3,1,2]");
        assert_eq!(serde_json::from_str::<Perm>(&js).unwrap(), s);
        assert!(serde_json::from_str::<Perm>("[1,1]").is_err());
    }

    fn arb_perm(max: usize) -> impl Strategy<Value = Perm> {
        (0..=max).prop_flat_map(|q| {
            Just((1..=q).collect::<Vec<usize>>())
                .prop_shuffle()
                .prop_map(Perm::from_vec_unchecked)
        })
    }

    /// Merge doubled strings in a random order until none are left.
    fn contract_random(s: &Perm, picks: &[usize]) -> Perm {
        let g = s.grade();
        let mut w = g.omega.clone();
        let mut k = 0;
        loop {
            let spots: Vec<usize> = (1..w.arity())
                .filter(|&t| w.apply(t + 1) == w.apply(t) + 1)
                .collect();
            if spots.is_empty() {
                return w;
            }
            let pick = spots[picks.get(k).copied().unwrap_or(0) % spots.len()];
            k += 1;
            w = w.merge_at(pick);
        }
    }

    proptest! {
        #[test]
        fn contraction_is_confluent(s in arb_perm(7), picks in prop::collection::vec(0usize..8, 8)) {
            prop_assume!(!s.is_identity());
            prop_assert_eq!(contract_random(&s, &picks), s.contract());
        }

        #[test]
        fn inverse_composes_to_identity(s in arb_perm(7)) {
            prop_assert!(s.compose(&s.inverse()).unwrap().is_identity());
            prop_assert_eq!(s.inverse().sign(), s.sign());
        }

        #[test]
        fn sign_is_multiplicative(s in arb_perm(6), seed in any::<u64>()) {
            let mut all = Perm::all(s.arity());
            let t = all.swap_remove((seed as usize) % all.len());
            prop_assert_eq!(s.compose(&t).unwrap().sign(), s.sign() * t.sign());
        }
    }
}
