//! The models D[q] and D̂[q], the free crossed complex F_S(C), the sign map
//! m(a, σ) = sgn(σ) a, and the decomposition of N(F_S(D[q])) into summands
//! indexed by simple permutations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};

use super::{
    kunneth, AbGroup, ChainComplex, Component, CosimplicialComplex, GradedHomology, SparseMat,
};
use crate::interval::{free_codegeneracy, free_coface};
use crate::perm::Perm;

/// Weakly increasing tuples of length `n+1` with entries in `0..=q`
/// (one empty tuple for `n = -1`), in lexicographic order.
pub fn simplices(q: usize, n: i64) -> Vec<Vec<usize>> {
    let len = (n + 1) as usize;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(q: usize, len: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=q {
            cur.push(v);
            rec(q, len, v, cur, out);
            cur.pop();
        }
    }
    rec(q, len, 0, &mut cur, &mut out);
    out
}

/// `dim D̂[p]^d = C(p+d+1, d+1)` for `d >= -1`.
pub fn simplex_count(p: usize, d: i64) -> u128 {
    if d < -1 {
        return 0;
    }
    let k = (d + 1) as u128;
    let mut r: u128 = 1;
    for i in 1..=k {
        r = r * (p as u128 + i) / i;
    }
    r
}

pub fn bracket_label(a: &[usize]) -> String {
    let inner: Vec<String> = a.iter().map(ToString::to_string).collect();
    format!("<{}>", inner.join(","))
}

fn index_of(basis: &[Vec<usize>]) -> HashMap<Vec<usize>, usize> {
    basis
        .iter()
        .enumerate()
        .map(|(i, a)| (a.clone(), i))
        .collect()
}

/// Coface on a single bracket: `d_i <a_0..a_n> = Σ_{a_{i-1} <= s <= a_i} <..., s, ...>`.
pub fn bracket_coface(q: usize, a: &[usize], i: usize) -> Vec<Vec<usize>> {
    let lo = if i == 0 { 0 } else { a[i - 1] };
    let hi = if i == a.len() { q } else { a[i] };
    (lo..=hi)
        .map(|s| {
            let mut b = a.to_vec();
            b.insert(i, s);
            b
        })
        .collect()
}

/// Codegeneracy on a single bracket: drop `b_{i+1}` when it repeats `b_i`, else zero.
pub fn bracket_codegeneracy(b: &[usize], i: usize) -> Option<Vec<usize>> {
    if b[i] == b[i + 1] {
        let mut a = b.to_vec();
        a.remove(i + 1);
        Some(a)
    } else {
        None
    }
}

fn build_brackets(q: usize, n_min: i64, n_max: i64) -> CosimplicialComplex {
    let bases: Vec<Vec<Vec<usize>>> = (n_min..=n_max).map(|n| simplices(q, n)).collect();
    let idx: Vec<HashMap<Vec<usize>, usize>> = bases.iter().map(|b| index_of(b)).collect();
    let comps = bases
        .iter()
        .map(|b| Component {
            labels: b.iter().map(|a| bracket_label(a)).collect(),
            chain_deg: vec![0; b.len()],
        })
        .collect();
    let mut cofaces = vec![Vec::new()];
    for k in 1..bases.len() {
        let n = n_min + k as i64;
        let maps = (0..=(n as usize))
            .map(|i| {
                let cols = bases[k - 1]
                    .iter()
                    .map(|a| {
                        bracket_coface(q, a, i)
                            .into_iter()
                            .map(|b| (idx[k][&b], 1))
                            .collect()
                    })
                    .collect();
                SparseMat::from_columns(bases[k].len(), cols)
            })
            .collect();
        cofaces.push(maps);
    }
    let mut codegens = Vec::new();
    for k in 0..bases.len() {
        let n = n_min + k as i64;
        if n < 0 || k + 1 == bases.len() {
            codegens.push(Vec::new());
            continue;
        }
        let maps = (0..=(n as usize))
            .map(|i| {
                let cols = bases[k + 1]
                    .iter()
                    .map(|b| {
                        bracket_codegeneracy(b, i)
                            .map(|a| (idx[k][&a], 1))
                            .into_iter()
                            .collect()
                    })
                    .collect();
                SparseMat::from_columns(bases[k].len(), cols)
            })
            .collect();
        codegens.push(maps);
    }
    let boundary = bases
        .iter()
        .map(|b| SparseMat::zeros(b.len(), b.len()))
        .collect();
    CosimplicialComplex {
        n_min,
        comps,
        cofaces,
        codegens,
        boundary,
    }
}

/// D[q] in cosimplicial degrees `0..=n_max`.
pub fn build_d(q: usize, n_max: i64) -> CosimplicialComplex {
    build_brackets(q, 0, n_max)
}

/// D̂[q]: D[q] extended by the empty bracket in degree -1.
pub fn build_dhat(q: usize, n_max: i64) -> CosimplicialComplex {
    build_brackets(q, -1, n_max)
}

fn fact(n: usize) -> usize {
    (1..=n).product()
}

/// F_S(C): level `n` has basis `(x, σ)`, `σ ∈ S_n`, indexed `x * n! + rank(σ)`.
pub fn free_crossed(c: &CosimplicialComplex) -> CosimplicialComplex {
    assert_eq!(c.n_min, 0, "the free crossed complex starts in degree 0");
    let n_max = c.n_max();
    let comps: Vec<Component> = (0..=n_max)
        .map(|n| {
            let base = c.comp(n);
            let perms = Perm::all(n as usize);
            let mut labels = Vec::with_capacity(base.len() * perms.len());
            let mut chain_deg = Vec::with_capacity(base.len() * perms.len());
            for (x, l) in base.labels.iter().enumerate() {
                for p in &perms {
                    labels.push(format!("{l}|{p}"));
                    chain_deg.push(base.chain_deg[x]);
                }
            }
            Component { labels, chain_deg }
        })
        .collect();
    let mut cofaces = vec![Vec::new()];
    for n in 1..=n_max {
        let src_perms = Perm::all((n - 1) as usize);
        let f_src = fact((n - 1) as usize);
        let f_dst = fact(n as usize);
        let rows = comps[n as usize].len();
        let maps = (0..=(n as usize))
            .map(|i| {
                let mut cols = Vec::with_capacity(c.comp(n - 1).len() * f_src);
                for x in 0..c.comp(n - 1).len() {
                    for h in &src_perms {
                        let base = |x: &usize, j: usize| c.coface(n, j).columns[*x].clone();
                        let terms = free_coface(base, &x, h, i).unwrap();
                        cols.push(
                            terms
                                .into_iter()
                                .map(|((y, p), v)| (y * f_dst + p.lex_rank(), v))
                                .collect(),
                        );
                    }
                }
                SparseMat::from_columns(rows, cols)
            })
            .collect();
        cofaces.push(maps);
    }
    let mut codegens = Vec::new();
    for n in 0..=n_max {
        if n == n_max {
            codegens.push(Vec::new());
            continue;
        }
        let src_perms = Perm::all((n + 1) as usize);
        let f_dst = fact(n as usize);
        let rows = comps[n as usize].len();
        let maps = (0..=(n as usize))
            .map(|i| {
                let mut cols = Vec::new();
                for x in 0..c.comp(n + 1).len() {
                    for h in &src_perms {
                        let base = |x: &usize, j: usize| c.codegen(n, j).columns[*x].clone();
                        let terms = free_codegeneracy(base, &x, h, i).unwrap();
                        cols.push(
                            terms
                                .into_iter()
                                .map(|((y, p), v)| (y * f_dst + p.lex_rank(), v))
                                .collect(),
                        );
                    }
                }
                SparseMat::from_columns(rows, cols)
            })
            .collect();
        codegens.push(maps);
    }
    let boundary = (0..=n_max)
        .map(|n| {
            let f = fact(n as usize);
            let b = &c.boundary[n as usize];
            let cols = (0..b.cols * f)
                .map(|k| {
                    b.columns[k / f]
                        .iter()
                        .map(|&(r, v)| (r * f + k % f, v))
                        .collect()
                })
                .collect();
            SparseMat::from_columns(b.rows * f, cols)
        })
        .collect();
    CosimplicialComplex {
        n_min: 0,
        comps,
        cofaces,
        codegens,
        boundary,
    }
}

/// N(F_S(D[q])) as a cochain complex in degrees `0..=n_max`, built directly
/// from `d(a, σ) = Σ (-1)^{i+n} (d_{σ̄(i)} a, d_i σ)` without storing each coface.
pub fn free_nerve_of_d(q: usize, n_max: i64) -> ChainComplex {
    let bases: Vec<Vec<Vec<usize>>> = (0..=n_max).map(|n| simplices(q, n)).collect();
    let idx: Vec<HashMap<Vec<usize>, usize>> = bases.iter().map(|b| index_of(b)).collect();
    let mut labels = Vec::new();
    for n in 0..=n_max {
        let perms = Perm::all(n as usize);
        let mut l = Vec::with_capacity(bases[n as usize].len() * perms.len());
        for a in &bases[n as usize] {
            for p in &perms {
                l.push(format!("{}|{}", bracket_label(a), p));
            }
        }
        labels.push(l);
    }
    let mut d = Vec::new();
    for n in 0..n_max {
        let nu = n as usize;
        let perms = Perm::all(nu);
        let f_dst = fact(nu + 1);
        let mut cols = Vec::with_capacity(bases[nu].len() * perms.len());
        for a in &bases[nu] {
            for h in &perms {
                let mut col = Vec::new();
                for i in 0..=nu + 1 {
                    let sign = if (i + nu) % 2 == 0 { 1 } else { -1 };
                    let j = h.bar_index(i).unwrap();
                    let r = h.coface(i).unwrap().lex_rank();
                    for b in bracket_coface(q, a, j) {
                        col.push((idx[nu + 1][&b] * f_dst + r, sign));
                    }
                }
                cols.push(col);
            }
        }
        d.push(SparseMat::from_columns(labels[nu + 1].len(), cols));
    }
    ChainComplex { lo: 0, labels, d }
}

/// `m(x, σ) = sgn(σ) x` from level `n` of F_S(C) to level `n` of C.
pub fn miraculous(c: &CosimplicialComplex, n: i64) -> SparseMat {
    let f = fact(n as usize);
    let signs: Vec<i64> = Perm::all(n as usize).iter().map(Perm::sign).collect();
    let cols = (0..c.comp(n).len() * f)
        .map(|k| vec![(k / f, signs[k % f])])
        .collect();
    SparseMat::from_columns(c.comp(n).len(), cols)
}

/// `ι(x) = (x, 1)` from level `n` of C to level `n` of F_S(C).
pub fn iota(c: &CosimplicialComplex, n: i64) -> SparseMat {
    let f = fact(n as usize);
    let cols = (0..c.comp(n).len()).map(|x| vec![(x * f, 1)]).collect();
    SparseMat::from_columns(c.comp(n).len() * f, cols)
}

/// Which summand of N(F_S(D[q])) a basis element lies in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum L1Key {
    /// The copy of N(D[q]) spanned by identity permutations.
    Base,
    /// The summand attached to a simple `χ ∈ S_m` (not `1_1`) and `x_0 <= ... <= x_m`.
    Twisted { chi: Perm, xs: Vec<usize> },
}

/// A tensor factor: an element of `D̂[p]^{entries.len() - 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L1Factor {
    pub p: usize,
    pub entries: Vec<usize>,
}

/// Classify `(<a_0..a_n>, σ)`: keep the entries that are not between doubled
/// arrows, not left of the last fixed input of the prefix, and not right of
/// the first fixed input of the suffix; split the rest at the kept ones.
pub fn l1_classify(q: usize, a: &[usize], sigma: &Perm) -> (L1Key, Vec<L1Factor>) {
    let n = sigma.arity();
    assert_eq!(a.len(), n + 1);
    if sigma.is_identity() {
        return (L1Key::Base, Vec::new());
    }
    let g = sigma.grade();
    let inv = sigma.inverse();
    let deleted = |j: usize| {
        j < g.a || j > n - g.c || (j >= 1 && j < n && inv.apply(j + 1) == inv.apply(j) + 1)
    };
    let kept: Vec<usize> = (0..=n).filter(|&j| !deleted(j)).collect();
    debug_assert_eq!(kept.len(), g.kappa.arity() + 1);
    let xs: Vec<usize> = kept.iter().map(|&j| a[j]).collect();
    let mut factors = Vec::with_capacity(kept.len() + 1);
    let mut start = 0;
    let mut floor = 0;
    for (&j, &x) in kept.iter().zip(&xs) {
        factors.push(L1Factor {
            p: x - floor,
            entries: a[start..j].iter().map(|v| v - floor).collect(),
        });
        start = j + 1;
        floor = x;
    }
    factors.push(L1Factor {
        p: q - floor,
        entries: a[start..].iter().map(|v| v - floor).collect(),
    });
    (L1Key::Twisted { chi: g.kappa, xs }, factors)
}

/// Simple permutations of `S_m` other than `1_1`.
pub fn simple_perms(m: usize) -> Vec<Perm> {
    if m < 2 {
        return Vec::new();
    }
    Perm::all(m).into_iter().filter(Perm::is_simple).collect()
}

/// Compositions of `total` into `parts` integers, each `>= -1`.
fn degree_splits(parts: usize, total: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    fn rec(parts: usize, total: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let min_rest = -(parts as i64 - 1);
        let mut d = -1;
        while total - d >= min_rest {
            cur.push(d);
            rec(parts - 1, total - d, cur, out);
            cur.pop();
            d += 1;
        }
    }
    rec(parts, total, &mut Vec::new(), &mut out);
    out
}

/// Rank of each summand in degree `n`, computed from the right-hand side:
/// `dim D[q]^n` for the base summand, and products of `dim D̂` for the others.
pub fn l1_summand_ranks(q: usize, n: i64) -> BTreeMap<L1Key, u128> {
    let mut out = BTreeMap::new();
    out.insert(L1Key::Base, simplex_count(q, n));
    for m in 2..=(n.max(0) as usize) {
        let shift = 2 * m as i64 + 2;
        let splits = degree_splits(m + 2, n - shift);
        if splits.is_empty() {
            continue;
        }
        for chi in simple_perms(m) {
            for xs in simplices(q, m as i64) {
                let mut ps = vec![xs[0]];
                ps.extend(xs.windows(2).map(|w| w[1] - w[0]));
                ps.push(q - xs[m]);
                let r: u128 = splits
                    .iter()
                    .map(|s| {
                        ps.iter()
                            .zip(s)
                            .map(|(&p, &d)| simplex_count(p, d))
                            .product::<u128>()
                    })
                    .sum();
                out.insert(
                    L1Key::Twisted {
                        chi: chi.clone(),
                        xs,
                    },
                    r,
                );
            }
        }
    }
    out
}

/// Total rank of the right-hand side in degree `n`.
pub fn l1_rank_rhs(q: usize, n: i64) -> u128 {
    l1_summand_ranks(q, n).values().sum()
}

/// `H^*(N(F_S(D[q])))` in degrees `0..=t_max` assembled from the summands:
/// the homology of N(D[q]) plus shifted Künneth products of the homology of
/// the N(D̂[p]) factors.
pub fn l1_homology(q: usize, t_max: i64) -> GradedHomology {
    let base = build_d(q, t_max + 1)
        .nerve()
        .totalize()
        .homology_in(0, t_max);
    let mut factor_h: BTreeMap<usize, GradedHomology> = BTreeMap::new();
    for p in 0..=q {
        let h = build_dhat(p, t_max + 1)
            .nerve()
            .totalize()
            .homology_in(-1, t_max);
        factor_h.insert(p, h);
    }
    let mut out = base;
    for m in 2..=(t_max.max(0) as usize) {
        let shift = 2 * m as i64 + 2;
        if shift - (m as i64 + 2) > t_max {
            break;
        }
        let chis = simple_perms(m);
        for xs in simplices(q, m as i64) {
            let mut ps = vec![xs[0]];
            ps.extend(xs.windows(2).map(|w| w[1] - w[0]));
            ps.push(q - xs[m]);
            let mut acc = factor_h[&ps[0]].clone();
            for p in &ps[1..] {
                acc = kunneth(&acc, &factor_h[p]);
            }
            for (t, g) in acc {
                let tt = t + shift;
                if (0..=t_max).contains(&tt) {
                    for _ in &chis {
                        let e = out.entry(tt).or_default();
                        *e = e.direct_sum(&g);
                    }
                }
            }
        }
    }
    out
}

/// `θ^*: D[p] → D[r]` dual to the simplicial map induced by monotone `θ: [r] → [p]`.
fn dual_of_monotone(theta: &[usize], p: usize, r: usize, n: i64) -> SparseMat {
    let src = simplices(p, n);
    let dst = simplices(r, n);
    let idx = index_of(&src);
    let mut cols = vec![Vec::new(); src.len()];
    for (k, a) in dst.iter().enumerate() {
        let image: Vec<usize> = a.iter().map(|&v| theta[v]).collect();
        cols[idx[&image]].push((k, 1));
    }
    SparseMat::from_columns(dst.len(), cols)
}

fn block_diag(a: &SparseMat, b: &SparseMat) -> SparseMat {
    let mut cols = a.columns.clone();
    cols.extend(
        b.columns
            .iter()
            .map(|c| c.iter().map(|&(r, v)| (r + a.rows, v)).collect()),
    );
    SparseMat::from_columns(a.rows + b.rows, cols)
}

/// Direct sum of two cosimplicial chain complexes over the same range.
pub fn direct_sum(a: &CosimplicialComplex, b: &CosimplicialComplex) -> CosimplicialComplex {
    assert_eq!((a.n_min, a.n_max()), (b.n_min, b.n_max()));
    let comps = a
        .comps
        .iter()
        .zip(&b.comps)
        .map(|(x, y)| Component {
            labels: x.labels.iter().chain(&y.labels).cloned().collect(),
            chain_deg: x.chain_deg.iter().chain(&y.chain_deg).copied().collect(),
        })
        .collect();
    let pair = |u: &Vec<Vec<SparseMat>>, v: &Vec<Vec<SparseMat>>| -> Vec<Vec<SparseMat>> {
        u.iter()
            .zip(v)
            .map(|(x, y)| x.iter().zip(y).map(|(p, q)| block_diag(p, q)).collect())
            .collect()
    };
    CosimplicialComplex {
        n_min: a.n_min,
        comps,
        cofaces: pair(&a.cofaces, &b.cofaces),
        codegens: pair(&a.codegens, &b.codegens),
        boundary: a
            .boundary
            .iter()
            .zip(&b.boundary)
            .map(|(x, y)| block_diag(x, y))
            .collect(),
    }
}

/// Raise every chain degree by `k`.
pub fn shift_chain(c: &CosimplicialComplex, k: i64) -> CosimplicialComplex {
    let mut out = c.clone();
    for comp in &mut out.comps {
        for d in &mut comp.chain_deg {
            *d += k;
        }
    }
    out
}

/// Two-term complex `D[p]` (chain degree 1) `--c θ^*-->` `D[r]` (chain degree 0).
pub fn cone_piece(p: usize, r: usize, theta: &[usize], c: i64, n_max: i64) -> CosimplicialComplex {
    let top = shift_chain(&build_d(p, n_max), 1);
    let bottom = build_d(r, n_max);
    let mut sum = direct_sum(&top, &bottom);
    for n in 0..=n_max {
        let t = dual_of_monotone(theta, p, r, n).scale(c);
        let np = top.comp(n).len();
        let nr = bottom.comp(n).len();
        let mut cols = vec![Vec::new(); np + nr];
        for (k, col) in t.columns.iter().enumerate() {
            cols[k] = col.iter().map(|&(row, v)| (row + np, v)).collect();
        }
        sum.boundary[n as usize] = SparseMat::from_columns(np + nr, cols);
    }
    sum
}

/// A seeded random small torsion-free cosimplicial chain complex: a direct sum
/// of copies of D[q] in chain degree 0 or 1 and two-term pieces `c θ^*`.
pub fn random_cosimplicial(seed: u64, n_max: i64) -> CosimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pieces = rng.gen_range(1..=2);
    let mut acc: Option<CosimplicialComplex> = None;
    for _ in 0..pieces {
        let piece = if rng.gen_bool(0.4) {
            let q = rng.gen_range(0..=2);
            shift_chain(&build_d(q, n_max), rng.gen_range(0..=1))
        } else {
            let p = rng.gen_range(0..=2);
            let r = rng.gen_range(0..=1);
            let mut theta: Vec<usize> = (0..=r).map(|_| rng.gen_range(0..=p)).collect();
            theta.sort_unstable();
            let c = [-2i64, -1, 1, 2, 3][rng.gen_range(0..5)];
            cone_piece(p, r, &theta, c, n_max)
        };
        acc = Some(match acc {
            None => piece,
            Some(a) => direct_sum(&a, &piece),
        });
    }
    acc.unwrap()
}

/// Homology of the product totalization in total degrees `lo..=hi`.
pub fn total_homology(c: &CosimplicialComplex, lo: i64, hi: i64) -> GradedHomology {
    c.nerve().totalize().homology_in(lo, hi)
}

/// Whether all groups in the table vanish.
pub fn all_zero(h: &GradedHomology) -> bool {
    h.values().all(AbGroup::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_dimensions() {
        for q in 0..4 {
            let d = build_d(q, 3);
            assert_eq!(d.comp(0).len(), q + 1);
            for n in 0..=3 {
                assert_eq!(d.comp(n).len() as u128, simplex_count(q, n));
            }
        }
        assert_eq!(build_dhat(2, 1).comp(-1).labels, vec!["<>".to_string()]);
    }

    #[test]
    fn cofaces_of_one_one_in_d3() {
        let b = |v: &[&[usize]]| v.iter().map(|x| x.to_vec()).collect::<Vec<_>>();
        assert_eq!(bracket_coface(3, &[1, 1], 0), b(&[&[0, 1, 1], &[1, 1, 1]]));
        assert_eq!(bracket_coface(3, &[1, 1], 1), b(&[&[1, 1, 1]]));
        assert_eq!(
            bracket_coface(3, &[1, 1], 2),
            b(&[&[1, 1, 1], &[1, 1, 2], &[1, 1, 3]])
        );
    }

    #[test]
    fn nerve_differential_of_one_one() {
        // d<1,1> at m = 2 in N(D[3]): Σ_{i=0}^{3} (-1)^{i+2} d_i
        let d = build_d(3, 3);
        let nd = d.nerve();
        let src = d.comp(1).labels.iter().position(|l| l == "<1,1>").unwrap();
        let col = &nd.d[1].columns[src];
        let lab = |i: usize| d.comp(2).labels[i].clone();
        let got: BTreeMap<String, i64> = col.iter().map(|&(r, v)| (lab(r), v)).collect();
        // (-1)^{1+i}: d_0 ↦ -, d_1 ↦ +, d_2 ↦ -  (m = 1 for a 2-entry bracket)
        let mut want = BTreeMap::new();
        want.insert("<0,1,1>".to_string(), -1);
        want.insert("<1,1,2>".to_string(), -1);
        want.insert("<1,1,3>".to_string(), -1);
        want.insert("<1,1,1>".to_string(), -1);
        assert_eq!(got, want);
    }

    #[test]
    fn cosimplicial_identities_hold() {
        for q in 0..=3 {
            build_d(q, 4).check().unwrap();
            build_dhat(q, 4).check().unwrap();
        }
    }

    #[test]
    fn nerve_squares_to_zero() {
        for q in 0..=2 {
            let b = build_d(q, 4).nerve();
            b.check().unwrap();
            assert!(b.totalize().squares_to_zero());
        }
    }

    #[test]
    fn constant_cosimplicial_object_telescopes() {
        // all cofaces the identity: N has d = 0 in odd m... check the parity pattern
        let n_max = 4;
        let one = SparseMat::identity(1);
        let comps = (0..=n_max)
            .map(|_| Component {
                labels: vec!["x".into()],
                chain_deg: vec![0],
            })
            .collect();
        let mut cofaces = vec![Vec::new()];
        let mut codegens = Vec::new();
        for n in 1..=n_max {
            cofaces.push(vec![one.clone(); n as usize + 1]);
        }
        for n in 0..=n_max {
            codegens.push(if n == n_max {
                vec![]
            } else {
                vec![one.clone(); n as usize + 1]
            });
        }
        let boundary = vec![SparseMat::zeros(1, 1); n_max as usize + 1];
        let c = CosimplicialComplex {
            n_min: 0,
            comps,
            cofaces,
            codegens,
            boundary,
        };
        c.check().unwrap();
        let nd = c.nerve();
        for m in 0..n_max {
            let want = if m % 2 == 0 { 0 } else { -1 };
            assert_eq!(nd.d[m as usize].get(0, 0), want, "m = {m}");
        }
    }

    #[test]
    fn homology_of_d_and_dhat() {
        for q in 0..=3 {
            let h = total_homology(&build_d(q, 5), 0, 4);
            assert_eq!(h[&0], AbGroup::free(1));
            assert!((1..=4).all(|t| h[&t].is_zero()));
            let h = total_homology(&build_dhat(q, 5), -1, 4);
            assert!(all_zero(&h));
        }
    }

    #[test]
    fn free_crossed_dimensions_and_identities() {
        for q in 0..=2 {
            let d = build_d(q, 3);
            let f = free_crossed(&d);
            for n in 0..=3 {
                assert_eq!(f.comp(n).len(), d.comp(n).len() * fact(n as usize));
            }
            f.check().unwrap();
        }
    }

    #[test]
    fn iota_is_cosimplicial() {
        let d = build_d(2, 4);
        let f = free_crossed(&d);
        for n in 1..=4 {
            for i in 0..=(n as usize) {
                assert_eq!(
                    f.coface(n, i).mul(&iota(&d, n - 1)),
                    iota(&d, n).mul(d.coface(n, i))
                );
            }
        }
        for n in 0..4 {
            for i in 0..=(n as usize) {
                assert_eq!(
                    f.codegen(n, i).mul(&iota(&d, n + 1)),
                    iota(&d, n).mul(d.codegen(n, i))
                );
            }
        }
    }

    #[test]
    fn miraculous_is_a_chain_map_and_splits_iota() {
        for q in 0..=3 {
            let d = build_d(q, 5);
            let f = free_crossed(&d);
            let nd = d.nerve();
            let nf = f.nerve();
            for n in 0..4i64 {
                let lhs = miraculous(&d, n + 1).mul(&nf.d[n as usize]);
                let rhs = nd.d[n as usize].mul(&miraculous(&d, n));
                assert_eq!(lhs, rhs, "q={q} n={n}");
                assert_eq!(
                    miraculous(&d, n).mul(&iota(&d, n)),
                    SparseMat::identity(d.comp(n).len())
                );
            }
        }
    }

    #[test]
    fn direct_free_nerve_matches_generic_construction() {
        for q in 0..=2 {
            let generic = free_crossed(&build_d(q, 4)).nerve().totalize();
            let direct = free_nerve_of_d(q, 4);
            assert_eq!(generic.d, direct.d);
        }
    }

    #[test]
    fn ten_input_classification() {
        let sigma = Perm::new(vec![1, 2, 5, 6, 7, 3, 4, 9, 8, 10]).unwrap();
        let a = vec![0, 1, 1, 2, 3, 3, 4, 5, 6, 6, 8];
        let q = 9;
        let (key, factors) = l1_classify(q, &a, &sigma);
        let xs = vec![a[2], a[4], a[7], a[8], a[9]];
        assert_eq!(
            key,
            L1Key::Twisted {
                chi: Perm::new(vec![2, 1, 4, 3]).unwrap(),
                xs: xs.clone()
            }
        );
        let want = vec![
            L1Factor {
                p: a[2],
                entries: vec![a[0], a[1]],
            },
            L1Factor {
                p: a[4] - a[2],
                entries: vec![a[3] - a[2]],
            },
            L1Factor {
                p: a[7] - a[4],
                entries: vec![a[5] - a[4], a[6] - a[4]],
            },
            L1Factor {
                p: a[8] - a[7],
                entries: vec![],
            },
            L1Factor {
                p: a[9] - a[8],
                entries: vec![],
            },
            L1Factor {
                p: q - a[9],
                entries: vec![a[10] - a[9]],
            },
        ];
        assert_eq!(factors, want);
        // degrees 1, 0, 1, -1, -1, 0 and shift 2m+2 = 10 add up to n = 10
        let degs: i64 = factors.iter().map(|f| f.entries.len() as i64 - 1).sum();
        assert_eq!(degs + 10, 10);
    }

    #[test]
    fn identity_permutations_form_the_base_summand() {
        for n in 0..4 {
            let (k, f) = l1_classify(2, &vec![0; n + 1], &Perm::identity(n));
            assert_eq!(k, L1Key::Base);
            assert!(f.is_empty());
        }
    }

    fn classify_counts(q: usize, n: i64) -> BTreeMap<L1Key, u128> {
        let mut counts = BTreeMap::new();
        for a in simplices(q, n) {
            for s in Perm::all(n as usize) {
                let (k, factors) = l1_classify(q, &a, &s);
                if let L1Key::Twisted { chi, .. } = &k {
                    let degs: i64 = factors.iter().map(|f| f.entries.len() as i64 - 1).sum();
                    assert_eq!(degs + 2 * chi.arity() as i64 + 2, n);
                    for f in &factors {
                        assert!(f.entries.iter().all(|&v| v <= f.p));
                    }
                }
                *counts.entry(k).or_insert(0) += 1;
            }
        }
        counts
    }

    #[test]
    fn per_summand_ranks_match() {
        for q in 0..=2 {
            for n in 0..=5 {
                let mut want = l1_summand_ranks(q, n);
                want.retain(|_, v| *v > 0);
                assert_eq!(classify_counts(q, n), want, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn rank_identity_small() {
        for q in 0..=3 {
            for n in 0..=5 {
                let lhs = simplex_count(q, n) * fact(n as usize) as u128;
                assert_eq!(lhs, l1_rank_rhs(q, n), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn coboundary_preserves_summands() {
        for q in 0..=2 {
            let c = free_nerve_of_d(q, 4);
            let bases: Vec<Vec<Vec<usize>>> = (0..=4).map(|n| simplices(q, n)).collect();
            for n in 0..4usize {
                let f = fact(n);
                let g = fact(n + 1);
                for (col_idx, col) in c.d[n].columns.iter().enumerate() {
                    let a = &bases[n][col_idx / f];
                    let s = Perm::from_lex_rank(n, col_idx % f);
                    let key = l1_classify(q, a, &s).0;
                    for &(r, _) in col {
                        let b = &bases[n + 1][r / g];
                        let t = Perm::from_lex_rank(n + 1, r % g);
                        assert_eq!(l1_classify(q, b, &t).0, key);
                    }
                }
            }
        }
    }

    #[test]
    fn random_complexes_are_valid() {
        for seed in 0..10 {
            let c = random_cosimplicial(seed, 3);
            c.check().unwrap();
            c.nerve().check().unwrap();
            free_crossed(&c).check().unwrap();
        }
    }

    #[test]
    fn cone_with_coefficient_two_has_torsion() {
        // D[0] --2--> D[0]: homology Z/2 in total degree 0
        let c = cone_piece(0, 0, &[0], 2, 4);
        c.check().unwrap();
        let h = total_homology(&c, -1, 2);
        assert_eq!(
            h[&0],
            AbGroup {
                rank: 0,
                torsion: vec![num_bigint::BigInt::from(2)]
            }
        );
        assert!(h[&-1].is_zero());
    }

    #[test]
    fn degree_splits_count() {
        assert_eq!(degree_splits(2, -2), vec![vec![-1, -1]]);
        assert_eq!(degree_splits(2, 0).len(), 3);
    }
}
