//! Canonical (l; k_1..k_n)-trees, vertex insertion and relabelling.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// A vertex together with the subtree above it. Children are in planar
/// (left to right) order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Leg(usize),
    Special,
    Black(Vec<Node>),
    White(usize, Vec<Node>),
}

/// Output colour `l` and input colours `k_1..k_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TreeType {
    pub l: usize,
    pub ks: Vec<usize>,
}

impl TreeType {
    pub fn new(l: usize, ks: Vec<usize>) -> Self {
        TreeType { l, ks }
    }

    pub fn n(&self) -> usize {
        self.ks.len()
    }

    pub fn sum_k(&self) -> usize {
        self.ks.iter().sum()
    }

    pub fn degree(&self) -> i64 {
        self.l as i64 - self.sum_k() as i64
    }
}

impl fmt::Display for TreeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ks: Vec<String> = self.ks.iter().map(ToString::to_string).collect();
        write!(f, "({};{})", self.l, ks.join(","))
    }
}

/// A canonical tree: rewritten to normal form and checked against its type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatTree {
    tt: TreeType,
    root: Node,
}

impl Node {
    pub fn white(label: usize, children: Vec<Node>) -> Node {
        Node::White(label, children)
    }

    pub fn black(children: Vec<Node>) -> Node {
        Node::Black(children)
    }

    pub fn children(&self) -> &[Node] {
        match self {
            Node::Black(c) | Node::White(_, c) => c,
            _ => &[],
        }
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Node)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    fn map_labels(&self, white: &impl Fn(usize) -> usize, leg: &impl Fn(usize) -> usize) -> Node {
        match self {
            Node::Leg(p) => Node::Leg(leg(*p)),
            Node::Special => Node::Special,
            Node::Black(c) => Node::Black(c.iter().map(|x| x.map_labels(white, leg)).collect()),
            Node::White(j, c) => Node::White(
                white(*j),
                c.iter().map(|x| x.map_labels(white, leg)).collect(),
            ),
        }
    }

    /// Replace each leg `p` by `subs[p - 1]`.
    fn graft(&self, subs: &[Node]) -> Node {
        match self {
            Node::Leg(p) => subs[p - 1].clone(),
            Node::Special => Node::Special,
            Node::Black(c) => Node::Black(c.iter().map(|x| x.graft(subs)).collect()),
            Node::White(j, c) => Node::White(*j, c.iter().map(|x| x.graft(subs)).collect()),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Node::Leg(p) => json!({"kind": "leg", "label": p, "children": []}),
            Node::Special => json!({"kind": "special", "children": []}),
            Node::Black(c) => {
                json!({"kind": "black", "children": c.iter().map(Node::to_json).collect::<Vec<_>>()})
            }
            Node::White(j, c) => {
                json!({"kind": "white", "label": j, "children": c.iter().map(Node::to_json).collect::<Vec<_>>()})
            }
        }
    }

    fn from_json(v: &Value) -> Result<Node> {
        let bad = |m: &str| Error::TypeViolation(m.to_string());
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("node without kind"))?;
        let label = v.get("label").and_then(Value::as_u64).map(|x| x as usize);
        let children = match v.get("children") {
            Some(Value::Array(a)) => a.iter().map(Node::from_json).collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
            _ => return Err(bad("children must be an array")),
        };
        match kind {
            "leg" => Ok(Node::Leg(label.ok_or_else(|| bad("leg without label"))?)),
            "special" => Ok(Node::Special),
            "black" => Ok(Node::Black(children)),
            "white" => Ok(Node::White(
                label.ok_or_else(|| bad("white vertex without label"))?,
                children,
            )),
            other => Err(bad(&format!("unknown node kind {other}"))),
        }
    }
}

/// Rewrite to normal form: merge black into black parents, drop specials
/// under black vertices, splice out black vertices of arity one and turn
/// black vertices of arity zero into specials.
pub fn canonicalize(node: Node) -> Node {
    match node {
        Node::Black(children) => {
            let mut kept = Vec::with_capacity(children.len());
            for c in children {
                match canonicalize(c) {
                    Node::Black(grand) => kept.extend(grand),
                    Node::Special => {}
                    other => kept.push(other),
                }
            }
            match kept.len() {
                0 => Node::Special,
                1 => kept.pop().unwrap(),
                _ => Node::Black(kept),
            }
        }
        Node::White(j, children) => {
            Node::White(j, children.into_iter().map(canonicalize).collect())
        }
        other => other,
    }
}

impl NatTree {
    /// Canonicalize `root` and check it has type `tt`.
    pub fn new(tt: TreeType, root: Node) -> Result<Self> {
        let t = NatTree {
            tt,
            root: canonicalize(root),
        };
        t.validate()?;
        Ok(t)
    }

    /// The tree `∣` of type (1;).
    pub fn bar() -> Self {
        NatTree {
            tt: TreeType::new(1, vec![]),
            root: Node::Leg(1),
        }
    }

    /// The tree `•` of type (0;).
    pub fn dot() -> Self {
        NatTree {
            tt: TreeType::new(0, vec![]),
            root: Node::Special,
        }
    }

    /// A single white vertex of arity `k` with legs `1..k` in order.
    pub fn corolla_white(k: usize) -> Self {
        NatTree {
            tt: TreeType::new(k, vec![k]),
            root: Node::White(1, (1..=k).map(Node::Leg).collect()),
        }
    }

    /// The (8;3,3,1,3)-tree computing `a3 f1(f2(a5 a6, 1, a8), a1, f3(a7)) f4(a4, 1, a2)`.
    pub fn worked_example() -> NatTree {
        use Node::{Black, Leg, Special, White};
        let f2 = White(2, vec![Black(vec![Leg(5), Leg(6)]), Special, Leg(8)]);
        let f3 = White(3, vec![Leg(7)]);
        let f1 = White(1, vec![f2, Leg(1), f3]);
        let f4 = White(4, vec![Leg(4), Special, Leg(2)]);
        NatTree::new(TreeType::new(8, vec![3, 3, 1, 3]), Black(vec![Leg(3), f1, f4])).unwrap()
    }

    pub(crate) fn from_parts_unchecked(tt: TreeType, root: Node) -> Self {
        NatTree { tt, root }
    }

    pub fn tree_type(&self) -> &TreeType {
        &self.tt
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn l(&self) -> usize {
        self.tt.l
    }

    pub fn ks(&self) -> &[usize] {
        &self.tt.ks
    }

    pub fn n(&self) -> usize {
        self.tt.n()
    }

    pub fn degree(&self) -> i64 {
        self.tt.degree()
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::TypeViolation(m));
        let n = self.tt.n();
        let mut seen_white = vec![false; n];
        let mut seen_leg = vec![false; self.tt.l];
        let mut problem: Option<String> = None;
        self.root.visit(&mut |v| {
            if problem.is_some() {
                return;
            }
            match v {
                Node::Leg(p) => {
                    if *p == 0 || *p > seen_leg.len() || seen_leg[p - 1] {
                        problem = Some(format!("bad leg label {p}"));
                    } else {
                        seen_leg[p - 1] = true;
                    }
                }
                Node::White(j, c) => {
                    if *j == 0 || *j > n || seen_white[j - 1] {
                        problem = Some(format!("bad white label {j}"));
                    } else if c.len() != self.tt.ks[j - 1] {
                        problem = Some(format!(
                            "white {j} has {} inputs, expected {}",
                            c.len(),
                            self.tt.ks[j - 1]
                        ));
                    } else {
                        seen_white[j - 1] = true;
                    }
                }
                Node::Black(c) => {
                    if c.len() < 2 {
                        problem = Some("black vertex of arity < 2".into());
                    } else if c
                        .iter()
                        .any(|x| matches!(x, Node::Black(_) | Node::Special))
                    {
                        problem = Some("black vertex above black or special vertex".into());
                    }
                }
                Node::Special => {}
            }
        });
        if let Some(p) = problem {
            return bad(p);
        }
        if seen_white.iter().any(|s| !s) {
            return bad("missing white vertex".into());
        }
        if seen_leg.iter().any(|s| !s) {
            return bad("missing leg".into());
        }
        match &self.root {
            Node::Special if !(n == 0 && self.tt.l == 0) => {
                bad("special root outside the tree •".into())
            }
            Node::Leg(_) if !(n == 0 && self.tt.l == 1) => {
                bad("bare leg outside the tree ∣".into())
            }
            _ => Ok(()),
        }
    }

    /// Vertex insertion `self ∘_i other`, followed by rewriting to normal form.
    pub fn insert(&self, i: usize, other: &NatTree) -> Result<NatTree> {
        let n1 = self.n();
        if i == 0 || i > n1 {
            return Err(Error::IndexOutOfRange {
                index: i as i64,
                max: n1 as i64,
            });
        }
        let slot = self.tt.ks[i - 1];
        if other.tt.l != slot {
            return Err(Error::ColourMismatch {
                slot,
                tree: other.tt.l,
            });
        }
        let m = other.n();
        let shifted_other = other.root.map_labels(&|j| j + i - 1, &|p| p);
        let outer = |j: usize| if j < i { j } else { j + m - 1 };
        fn go(v: &Node, i: usize, inner: &Node, outer: &dyn Fn(usize) -> usize) -> Node {
            match v {
                Node::White(j, c) if *j == i => {
                    let subs: Vec<Node> = c.iter().map(|x| go(x, i, inner, outer)).collect();
                    inner.graft(&subs)
                }
                Node::White(j, c) => Node::White(
                    outer(*j),
                    c.iter().map(|x| go(x, i, inner, outer)).collect(),
                ),
                Node::Black(c) => Node::Black(c.iter().map(|x| go(x, i, inner, outer)).collect()),
                other => other.clone(),
            }
        }
        let root = canonicalize(go(&self.root, i, &shifted_other, &outer));
        let mut ks = self.tt.ks[..i - 1].to_vec();
        ks.extend_from_slice(&other.tt.ks);
        ks.extend_from_slice(&self.tt.ks[i..]);
        let tt = TreeType::new(self.tt.l, ks);
        debug_assert!(NatTree {
            tt: tt.clone(),
            root: root.clone()
        }
        .validate()
        .is_ok());
        Ok(NatTree { tt, root })
    }

    /// Relabel white vertex `j` as `σ(j)`.
    pub fn sym_act(&self, sigma: &Perm) -> Result<NatTree> {
        if sigma.arity() != self.n() {
            return Err(Error::ArityMismatch(sigma.arity(), self.n()));
        }
        let mut ks = vec![0; self.n()];
        for j in 1..=self.n() {
            ks[sigma.apply(j) - 1] = self.tt.ks[j - 1];
        }
        let root = self.root.map_labels(&|j| sigma.apply(j), &|p| p);
        Ok(NatTree {
            tt: TreeType::new(self.tt.l, ks),
            root,
        })
    }

    /// Relabel leg `p` as `τ(p)`.
    pub fn relabel_legs(&self, tau: &Perm) -> Result<NatTree> {
        if tau.arity() != self.l() {
            return Err(Error::ArityMismatch(tau.arity(), self.l()));
        }
        let root = self.root.map_labels(&|j| j, &|p| tau.apply(p));
        Ok(NatTree {
            tt: self.tt.clone(),
            root,
        })
    }

    /// Leg labels in planar (left to right) order.
    pub fn leg_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.l());
        self.root.visit(&mut |v| {
            if let Node::Leg(p) = v {
                out.push(*p);
            }
        });
        out
    }

    /// Whether legs are labelled in planar order.
    pub fn is_planar(&self) -> bool {
        self.leg_order()
            .iter()
            .enumerate()
            .all(|(pos, &p)| p == pos + 1)
    }

    /// Number of stubs (special vertices below a white vertex).
    pub fn stub_count(&self) -> usize {
        if self.root == Node::Special {
            return 0;
        }
        let mut count = 0;
        self.root.visit(&mut |v| {
            if let Node::White(_, c) = v {
                count += c.iter().filter(|x| **x == Node::Special).count();
            }
        });
        count
    }

    /// Whether white vertex `j` carries a stub.
    pub fn has_stub_at(&self, j: usize) -> bool {
        let mut found = false;
        self.root.visit(&mut |v| {
            if let Node::White(x, c) = v {
                if *x == j && c.contains(&Node::Special) {
                    found = true;
                }
            }
        });
        found
    }

    pub fn is_dot(&self) -> bool {
        self.root == Node::Special
    }

    /// `(planar, σ)` with `σ(position) = label`.
    pub fn split_labels(&self) -> (NatTree, Perm) {
        let order = self.leg_order();
        let sigma = Perm::new(order).expect("legs form a bijection");
        let planar = self.relabel_legs(&sigma.inverse()).unwrap();
        (planar, sigma)
    }

    /// Inverse of [`NatTree::split_labels`].
    pub fn join_labels(planar: &NatTree, sigma: &Perm) -> Result<NatTree> {
        planar.relabel_legs(sigma)
    }

    pub fn to_json(&self) -> Value {
        json!({"l": self.tt.l, "ks": self.tt.ks, "root": self.root.to_json()})
    }

    pub fn from_json(v: &Value) -> Result<NatTree> {
        let tt: TreeType = serde_json::from_value(json!({"l": v["l"], "ks": v["ks"]}))?;
        let root = Node::from_json(
            v.get("root")
                .ok_or_else(|| Error::TypeViolation("tree without root".into()))?,
        )?;
        NatTree::new(tt, root)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, c: &[Node]| -> fmt::Result {
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        };
        match self {
            Node::Leg(p) => write!(f, "{p}"),
            Node::Special => write!(f, "e"),
            Node::Black(c) => {
                write!(f, "m(")?;
                list(f, c)?;
                write!(f, ")")
            }
            Node::White(j, c) => {
                write!(f, "f{j}(")?;
                list(f, c)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for NatTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)
    }
}

/// Parses the notation of `Display`: `m(..)` black, `fj(..)` white, `e`
/// special, integers legs. The type is read off the tree and the result is
/// brought to normal form.
impl std::str::FromStr for NatTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let root = parse_node(&bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::InvalidArgument(format!("trailing input at {pos}")));
        }
        let mut l = 0;
        let mut ks: Vec<Option<usize>> = Vec::new();
        root.visit(&mut |v| match v {
            Node::Leg(_) => l += 1,
            Node::White(j, c) => {
                if ks.len() < *j {
                    ks.resize(*j, None);
                }
                ks[j - 1] = Some(c.len());
            }
            _ => {}
        });
        let ks = ks
            .into_iter()
            .collect::<Option<Vec<usize>>>()
            .ok_or_else(|| Error::InvalidArgument("white labels must be 1..n".into()))?;
        NatTree::new(TreeType::new(l, ks), canonicalize(root))
    }
}

fn parse_node(s: &[char], pos: &mut usize) -> Result<Node> {
    let err = |p: usize, what: &str| Error::InvalidArgument(format!("{what} at {p}"));
    let number = |pos: &mut usize| -> Option<usize> {
        let start = *pos;
        while *pos < s.len() && s[*pos].is_ascii_digit() {
            *pos += 1;
        }
        s[start..*pos].iter().collect::<String>().parse().ok()
    };
    let children = |pos: &mut usize| -> Result<Vec<Node>> {
        if s.get(*pos) != Some(&'(') {
            return Err(err(*pos, "expected '('"));
        }
        *pos += 1;
        let mut out = Vec::new();
        if s.get(*pos) == Some(&')') {
            *pos += 1;
            return Ok(out);
        }
        loop {
            out.push(parse_node(s, pos)?);
            match s.get(*pos) {
                Some(',') => *pos += 1,
                Some(')') => {
                    *pos += 1;
                    return Ok(out);
                }
                _ => return Err(err(*pos, "expected ',' or ')'")),
            }
        }
    };
    match s.get(*pos) {
        Some('e') => {
            *pos += 1;
            Ok(Node::Special)
        }
        Some('m') => {
            *pos += 1;
            Ok(Node::Black(children(pos)?))
        }
        Some('f') => {
            *pos += 1;
            let j = number(pos).filter(|&j| j > 0).ok_or_else(|| err(*pos, "expected a white label"))?;
            Ok(Node::White(j, children(pos)?))
        }
        Some(c) if c.is_ascii_digit() => {
            let p = number(pos).filter(|&p| p > 0).ok_or_else(|| err(*pos, "expected a leg label"))?;
            Ok(Node::Leg(p))
        }
        _ => Err(err(*pos, "unexpected input")),
    }
}
