//! Evaluation of trees on Hochschild cochains of the free algebra
//! `U = T(x_1, x_2, ...)`, the cochains that single out one tree, and the
//! action of interval morphisms on the bar construction.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::interval::IntervalMorphism;
use crate::operad::basis::enumerate_basis;
use crate::operad::{NatTree, Node, TreeSum, TreeType};

/// A word in the generators; the empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<usize>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        Monomial(vec![i])
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Monomial(w)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("x{i}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// An integer combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, i64>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn one() -> Self {
        AlgebraElement::monomial(Monomial::one())
    }

    pub fn gen(i: usize) -> Self {
        AlgebraElement::monomial(Monomial::gen(i))
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut e = AlgebraElement::zero();
        e.add_term(m, 1);
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(m.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&mut self, other: &AlgebraElement, c: i64) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    /// The coefficient `e|_h`.
    pub fn coefficient(&self, h: &Monomial) -> i64 {
        self.terms.get(h).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn product<'a>(items: impl IntoIterator<Item = &'a AlgebraElement>) -> AlgebraElement {
        items.into_iter().fold(AlgebraElement::one(), |acc, x| acc.mul(x))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| match c {
                1 => m.to_string(),
                -1 => format!("-{m}"),
                c => format!("{c}*{m}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Anything that can decorate a white vertex.
pub trait Cochain {
    fn arity(&self) -> usize;
    fn apply(&self, args: &[AlgebraElement]) -> AlgebraElement;
}

/// A multilinear map given on finitely many tuples of monomials, zero elsewhere.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolicCochain {
    pub arity: usize,
    pub table: BTreeMap<Vec<Monomial>, AlgebraElement>,
}

impl SymbolicCochain {
    pub fn new(arity: usize) -> Self {
        SymbolicCochain { arity, table: BTreeMap::new() }
    }

    pub fn set(&mut self, key: Vec<Monomial>, value: AlgebraElement) -> Result<()> {
        if key.len() != self.arity {
            return Err(Error::ArityMismatch(key.len(), self.arity));
        }
        self.table.insert(key, value);
        Ok(())
    }
}

impl Cochain for SymbolicCochain {
    fn arity(&self) -> usize {
        self.arity
    }

    fn apply(&self, args: &[AlgebraElement]) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (key, value) in &self.table {
            let c: i64 = key.iter().zip(args).map(|(m, a)| a.coefficient(m)).product();
            if c != 0 {
                out.add(value, c);
            }
        }
        out
    }
}

/// The operation of a tree with its white vertices decorated, as a cochain.
pub struct TreeCochain<'a> {
    pub tree: &'a NatTree,
    pub fs: Vec<&'a dyn Cochain>,
}

impl Cochain for TreeCochain<'_> {
    fn arity(&self) -> usize {
        self.tree.l()
    }

    fn apply(&self, args: &[AlgebraElement]) -> AlgebraElement {
        evaluate(self.tree, &self.fs, args).expect("arities checked at construction")
    }
}

fn eval_node(v: &Node, fs: &[&dyn Cochain], args: &[AlgebraElement]) -> AlgebraElement {
    match v {
        Node::Leg(p) => args[p - 1].clone(),
        Node::Special => AlgebraElement::one(),
        Node::Black(c) => {
            let vals: Vec<AlgebraElement> = c.iter().map(|x| eval_node(x, fs, args)).collect();
            AlgebraElement::product(&vals)
        }
        Node::White(j, c) => {
            let vals: Vec<AlgebraElement> = c.iter().map(|x| eval_node(x, fs, args)).collect();
            fs[j - 1].apply(&vals)
        }
    }
}

/// `O_T(f_1..f_n)(a_1..a_l)`.
pub fn evaluate(t: &NatTree, fs: &[&dyn Cochain], args: &[AlgebraElement]) -> Result<AlgebraElement> {
    if fs.len() != t.n() {
        return Err(Error::ArityMismatch(fs.len(), t.n()));
    }
    for (f, &k) in fs.iter().zip(t.ks()) {
        if f.arity() != k {
            return Err(Error::ArityMismatch(f.arity(), k));
        }
    }
    if args.len() != t.l() {
        return Err(Error::ArityMismatch(args.len(), t.l()));
    }
    Ok(eval_node(t.root(), fs, args))
}

pub fn evaluate_sum(s: &TreeSum, fs: &[&dyn Cochain], args: &[AlgebraElement]) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (t, c) in s.iter() {
        out.add(&evaluate(t, fs, args)?, c);
    }
    Ok(out)
}

/// The generators `x_1..x_l` as arguments.
pub fn generic_args(l: usize) -> Vec<AlgebraElement> {
    (1..=l).map(AlgebraElement::gen).collect()
}

/// Cochains `f_1..f_n` and a monomial `h` such that `O_S(f)(x_1..x_l)|_h` is
/// 1 for `S = T` and 0 for every other tree `S` of the same type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L9Witness {
    pub fs: Vec<SymbolicCochain>,
    pub target: Monomial,
    /// `values[i-1]` is the generator index `f_i` returns.
    pub values: Vec<usize>,
}

impl L9Witness {
    pub fn cochains(&self) -> Vec<&dyn Cochain> {
        self.fs.iter().map(|f| f as &dyn Cochain).collect()
    }

    pub fn to_json(&self) -> Value {
        let table: Vec<Value> = self
            .fs
            .iter()
            .map(|f| {
                Value::Array(
                    f.table
                        .iter()
                        .map(|(k, v)| {
                            let value: Vec<Value> = v.iter().map(|(m, c)| json!({"coeff": c, "word": m.0})).collect();
                            json!({"args": k.iter().map(|m| m.0.clone()).collect::<Vec<_>>(), "value": value})
                        })
                        .collect(),
                )
            })
            .collect();
        json!({"values": self.values, "table": table, "target": self.target.0})
    }
}

/// Replace legs by `x_p`, specials by 1, white vertex `i` by `x_{l+i}` and
/// black vertices by products.
fn substitute(v: &Node, l: usize) -> Monomial {
    match v {
        Node::Leg(p) => Monomial::gen(*p),
        Node::Special => Monomial::one(),
        Node::Black(c) => c.iter().fold(Monomial::one(), |acc, x| acc.mul(&substitute(x, l))),
        Node::White(j, _) => Monomial::gen(l + j),
    }
}

pub fn build_l9_witness(t: &NatTree) -> L9Witness {
    let l = t.l();
    let mut fs: Vec<SymbolicCochain> = t.ks().iter().map(|&k| SymbolicCochain::new(k)).collect();
    fn walk(v: &Node, l: usize, fs: &mut [SymbolicCochain]) {
        if let Node::White(j, c) = v {
            let key = c.iter().map(|x| substitute(x, l)).collect();
            fs[j - 1].set(key, AlgebraElement::gen(l + j)).unwrap();
        }
        for c in v.children() {
            walk(c, l, fs);
        }
    }
    walk(t.root(), l, &mut fs);
    L9Witness { fs, target: substitute(t.root(), l), values: (1..=t.n()).map(|i| l + i).collect() }
}

/// The matrix `O_S(f^T)(x_1..x_l)|_{h^T}` over all pairs of trees of type `tt`,
/// rows indexed by `T`.
pub fn genericity_matrix(tt: &TreeType) -> Vec<Vec<i64>> {
    let basis = enumerate_basis(tt);
    let args = generic_args(tt.l);
    basis
        .iter()
        .map(|t| {
            let w = build_l9_witness(t);
            let fs = w.cochains();
            basis.iter().map(|s| evaluate(s, &fs, &args).unwrap().coefficient(&w.target)).collect()
        })
        .collect()
}

/// Whether the matrix of [`genericity_matrix`] is the identity.
pub fn genericity_check(tt: &TreeType) -> bool {
    let basis = enumerate_basis(tt);
    let args = generic_args(tt.l);
    basis.iter().enumerate().all(|(i, t)| {
        let w = build_l9_witness(t);
        let fs = w.cochains();
        basis.iter().enumerate().all(|(j, s)| evaluate(s, &fs, &args).unwrap().coefficient(&w.target) == i64::from(i == j))
    })
}

/// `g_*(a_{-1} ⊗ a_0 ⊗ .. ⊗ a_{m+1})`: position `i` of the result is the
/// product of the `a_j` with `g(j) = i`, in fiber order, or 1 for an empty fiber.
pub fn bar_action(g: &IntervalMorphism, tensor: &[AlgebraElement]) -> Result<Vec<AlgebraElement>> {
    let m = g.src();
    if tensor.len() as i64 != m + 3 {
        return Err(Error::ArityMismatch(tensor.len(), (m + 3) as usize));
    }
    Ok((-1..=g.dst() + 1)
        .map(|i| AlgebraElement::product(g.fiber(i).iter().map(|&j| &tensor[(j + 1) as usize])))
        .collect())
}

/// `ā_{-1} f(ā_0..ā_{k-1}) ā_k` with `ā = g_*(1 ⊗ a_0 ⊗ .. ⊗ a_{l-1} ⊗ 1)`.
pub fn interval_operation(g: &IntervalMorphism, f: &dyn Cochain, args: &[AlgebraElement]) -> Result<AlgebraElement> {
    let mut tensor = vec![AlgebraElement::one()];
    tensor.extend_from_slice(args);
    tensor.push(AlgebraElement::one());
    let bar = bar_action(g, &tensor)?;
    let k = bar.len() - 2;
    Ok(bar[0].mul(&f.apply(&bar[1..=k])).mul(&bar[k + 1]))
}
