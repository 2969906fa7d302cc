//! Predilators on finite linear orders and their combinators.
//!
//! A value of `D(n)` is a [`Value`] whose base-element leaves are indices
//! below `n`. Every operation is driven by a [`Predilator`] description.

use crate::error::{malformed, Error, Result};
use crate::goodstein::{GTerm, WTerm};
use crate::order::{is_weakly_decreasing, seq_cmp, weakly_decreasing_choices};
use crate::sexp::Sexp;
use num_bigint::BigUint;
use num_rational::Ratio;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Elem(usize),
    Int(i64),
    Rat(Rational),
    G(GTerm),
    W(WTerm),
    Inl(Box<Value>),
    Inr(Box<Value>),
    Seq(Vec<Value>),
    /// Bump components ⟨0,σ,n⟩, ⟨1,n⟩ and ⟨2,σ,n⟩.
    Low(Box<Value>, u64),
    Mid(u64),
    High(Box<Value>, u64),
    Leaf(usize),
    Node(usize, usize, usize),
    /// ω^X + ω×X: a weakly decreasing sequence or a pair ⟨n,x⟩.
    Pow(Vec<usize>),
    Mul(u64, usize),
    Shape(OtShape),
}

/// Shapes of ϑ-notation terms over atoms from X: Ω, atoms, and ω-sums.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OtShape {
    Omega,
    Atom(usize),
    Sum(Vec<OtShape>),
}

impl OtShape {
    pub fn cmp(a: &OtShape, b: &OtShape) -> Ordering {
        use OtShape::*;
        match (a, b) {
            (Omega, Omega) => Ordering::Equal,
            (Atom(x), Atom(y)) => x.cmp(y),
            (Atom(_), Omega) => Ordering::Less,
            (Omega, Atom(_)) => Ordering::Greater,
            (Sum(xs), Sum(ys)) => seq_cmp(xs, ys, OtShape::cmp),
            (Sum(xs), other) => match xs.first() {
                Some(x0) if OtShape::cmp(other, x0) != Ordering::Greater => Ordering::Greater,
                _ => Ordering::Less,
            },
            (other, Sum(_)) => OtShape::cmp(b, other).reverse(),
        }
    }

    fn validate(&self, base: usize) -> Result<()> {
        match self {
            OtShape::Omega => Ok(()),
            OtShape::Atom(x) if *x < base => Ok(()),
            OtShape::Atom(x) => malformed(format!("atom {x} outside base of size {base}")),
            OtShape::Sum(xs) => {
                for x in xs {
                    x.validate(base)?;
                }
                if xs.len() == 1 && !matches!(xs[0], OtShape::Sum(_)) {
                    return malformed("ω^Ω and ω^x must be written as Ω and x");
                }
                if !is_weakly_decreasing(xs, OtShape::cmp) {
                    return malformed("exponents not weakly decreasing");
                }
                Ok(())
            }
        }
    }

    fn act(&self, f: &[usize]) -> OtShape {
        match self {
            OtShape::Omega => OtShape::Omega,
            OtShape::Atom(x) => OtShape::Atom(f[*x]),
            OtShape::Sum(xs) => OtShape::Sum(xs.iter().map(|x| x.act(f)).collect()),
        }
    }

    fn supp_into(&self, out: &mut Vec<usize>) {
        match self {
            OtShape::Omega => {}
            OtShape::Atom(x) => out.push(*x),
            OtShape::Sum(xs) => xs.iter().for_each(|x| x.supp_into(out)),
        }
    }

    fn size(&self, w: &dyn Fn(usize) -> usize) -> usize {
        match self {
            OtShape::Omega => 1,
            OtShape::Atom(x) => w(*x),
            OtShape::Sum(xs) if xs.is_empty() => 1,
            OtShape::Sum(xs) => xs.iter().map(|x| 1 + x.size(w)).sum(),
        }
    }

    fn enumerate(base: usize, bound: usize) -> Vec<OtShape> {
        if bound == 0 {
            return Vec::new();
        }
        let mut out = vec![OtShape::Omega, OtShape::Sum(Vec::new())];
        out.extend((0..base).map(OtShape::Atom));
        if bound >= 2 {
            let mut exps = OtShape::enumerate(base, bound - 1);
            exps.sort_by(|a, b| OtShape::cmp(b, a));
            let sized: Vec<_> = exps.iter().map(|e| (e.clone(), 1 + e.size(&|_| 1))).collect();
            fn go(sized: &[(OtShape, usize)], from: usize, room: usize, cur: &mut Vec<OtShape>, out: &mut Vec<OtShape>) {
                if !cur.is_empty() && !(cur.len() == 1 && !matches!(cur[0], OtShape::Sum(_))) {
                    out.push(OtShape::Sum(cur.clone()));
                }
                for i in from..sized.len() {
                    if sized[i].1 <= room {
                        cur.push(sized[i].0.clone());
                        go(sized, i, room - sized[i].1, cur, out);
                        cur.pop();
                    }
                }
            }
            go(&sized, 0, bound, &mut Vec::new(), &mut out);
        }
        out
    }

    fn to_sexp(&self) -> Sexp {
        match self {
            OtShape::Omega => Sexp::atom("O"),
            OtShape::Atom(x) => Sexp::tagged("at", vec![Sexp::atom(x.to_string())]),
            OtShape::Sum(xs) if xs.is_empty() => Sexp::atom("0"),
            OtShape::Sum(xs) => Sexp::tagged("+", xs.iter().map(|x| Sexp::tagged("w", vec![x.to_sexp()])).collect()),
        }
    }

    fn from_sexp(sx: &Sexp) -> Result<OtShape> {
        match sx {
            Sexp::Atom(a) if a == "O" => Ok(OtShape::Omega),
            Sexp::Atom(a) if a == "0" => Ok(OtShape::Sum(Vec::new())),
            _ => match sx.as_tagged() {
                Some(("at", [x])) => Ok(OtShape::Atom(x.parse_usize()?)),
                Some(("+", args)) => {
                    let mut xs = Vec::new();
                    for a in args {
                        match a.expect_tagged("w")? {
                            [x] => xs.push(OtShape::from_sexp(x)?),
                            _ => return Err(Error::Parse(format!("bad summand {a}"))),
                        }
                    }
                    if xs.len() == 1 && !matches!(xs[0], OtShape::Sum(_)) {
                        return Ok(xs.pop().unwrap());
                    }
                    Ok(OtShape::Sum(xs))
                }
                _ => Err(Error::Parse(format!("not a shape term: {sx}"))),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConstOrder {
    Finite(u64),
    Integers,
    Rationals,
}

/// A finite binary tree with nodes ordered by the Kleene-Brouwer order:
/// proper extensions lie below, incomparable nodes compare lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeShape {
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Option<(usize, usize)>>,
    pub address: Vec<Vec<u8>>,
    pub rank: Vec<usize>,
}

impl TreeShape {
    /// Reads the node-per-line format: `<parent|-> <L|I>`; `#` starts a comment.
    pub fn parse(src: &str) -> Result<TreeShape> {
        let mut parent = Vec::new();
        let mut internal = Vec::new();
        for line in src.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (p, flag) = match (parts.next(), parts.next(), parts.next()) {
                (Some(p), Some(f), None) => (p, f),
                _ => return Err(Error::Parse(format!("bad tree line: {line}"))),
            };
            parent.push(match p {
                "-" | "-1" => None,
                p => Some(p.parse::<usize>().map_err(|_| Error::Parse(format!("bad parent index: {p}")))?),
            });
            internal.push(match flag {
                "I" | "i" | "internal" => true,
                "L" | "l" | "leaf" => false,
                f => return Err(Error::Parse(format!("bad node flag: {f}"))),
            });
        }
        TreeShape::from_parents(parent, internal)
    }

    pub fn from_parents(parent: Vec<Option<usize>>, internal: Vec<bool>) -> Result<TreeShape> {
        let n = parent.len();
        if n == 0 || parent.iter().filter(|p| p.is_none()).count() != 1 {
            return malformed("a tree needs exactly one root");
        }
        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                if *p >= n || *p == i {
                    return malformed(format!("node {i} has invalid parent {p}"));
                }
                kids[*p].push(i);
            }
        }
        let mut children = vec![None; n];
        for i in 0..n {
            match (internal[i], kids[i].len()) {
                (true, 2) => children[i] = Some((kids[i][0], kids[i][1])),
                (false, 0) => {}
                _ => return malformed(format!("node {i} must have 0 (leaf) or 2 (internal) children")),
            }
        }
        let root = parent.iter().position(|p| p.is_none()).unwrap();
        let mut address = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            if let Some((a, b)) = children[v] {
                for (bit, c) in [(0u8, a), (1u8, b)] {
                    if seen[c] {
                        return malformed("tree contains a cycle");
                    }
                    seen[c] = true;
                    let mut addr = address[v].clone();
                    addr.push(bit);
                    address[c] = addr;
                    stack.push(c);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return malformed("tree is not connected");
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| kb_cmp(&address[a], &address[b]));
        let mut rank = vec![0; n];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        Ok(TreeShape { parent, children, address, rank })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_none()
    }

    pub fn node_cmp(&self, a: usize, b: usize) -> Ordering {
        self.rank[a].cmp(&self.rank[b])
    }
}

/// Kleene-Brouwer comparison of binary addresses.
pub fn kb_cmp(s: &[u8], t: &[u8]) -> Ordering {
    for (x, y) in s.iter().zip(t) {
        if x != y {
            return x.cmp(y);
        }
    }
    t.len().cmp(&s.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Predilator {
    Id,
    Const(ConstOrder),
    Goodstein,
    Weak,
    Sum(Box<Predilator>, Box<Predilator>),
    Omega(Box<Predilator>),
    Bump(Box<Predilator>),
    Tree(Arc<TreeShape>),
    /// D∘(α+Id)
    Shift(Box<Predilator>, usize),
    /// X ↦ ω^X + ω×X
    PowMul,
    /// ϑ-notation shapes over X
    Shapes,
}

fn dedup_sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

impl Predilator {
    pub fn konst(n: u64) -> Predilator {
        Predilator::Const(ConstOrder::Finite(n))
    }

    pub fn sum(a: Predilator, b: Predilator) -> Predilator {
        Predilator::Sum(Box::new(a), Box::new(b))
    }

    pub fn omega(a: Predilator) -> Predilator {
        Predilator::Omega(Box::new(a))
    }

    pub fn bump(a: Predilator) -> Predilator {
        Predilator::Bump(Box::new(a))
    }

    pub fn shift(a: Predilator, alpha: usize) -> Predilator {
        Predilator::Shift(Box::new(a), alpha)
    }

    /// Parses a name such as `goodstein`, `const:3`, `sum:const:2,const:3`,
    /// `omega:weak`, `bump:goodstein`, `tree:<file>` or `shift:goodstein:2`.
    pub fn parse_name(name: &str) -> Result<Predilator> {
        let name = name.trim();
        let name = name.strip_prefix('(').and_then(|n| n.strip_suffix(')')).unwrap_or(name);
        match name {
            "goodstein" | "G" => return Ok(Predilator::Goodstein),
            "weak" | "W" => return Ok(Predilator::Weak),
            "id" => return Ok(Predilator::Id),
            "powmul" => return Ok(Predilator::PowMul),
            "shapes" => return Ok(Predilator::Shapes),
            _ => {}
        }
        let (head, rest) = name
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unknown predilator: {name}")))?;
        match head {
            "const" => match rest {
                "Z" | "int" => Ok(Predilator::Const(ConstOrder::Integers)),
                "Q" | "rat" => Ok(Predilator::Const(ConstOrder::Rationals)),
                n => n
                    .parse()
                    .map(Predilator::konst)
                    .map_err(|_| Error::Parse(format!("bad constant order: {n}"))),
            },
            "sum" => {
                for (i, c) in rest.char_indices() {
                    if c == ',' {
                        if let (Ok(a), Ok(b)) =
                            (Predilator::parse_name(&rest[..i]), Predilator::parse_name(&rest[i + 1..]))
                        {
                            return Ok(Predilator::sum(a, b));
                        }
                    }
                }
                Err(Error::Parse(format!("bad sum: {rest}")))
            }
            "omega" => Ok(Predilator::omega(Predilator::parse_name(rest)?)),
            "bump" => Ok(Predilator::bump(Predilator::parse_name(rest)?)),
            "shift" => {
                let (inner, alpha) = rest
                    .rsplit_once(':')
                    .ok_or_else(|| Error::Parse(format!("bad shift: {rest}")))?;
                let alpha = alpha.parse().map_err(|_| Error::Parse(format!("bad shift amount: {alpha}")))?;
                Ok(Predilator::shift(Predilator::parse_name(inner)?, alpha))
            }
            "tree" => {
                let src = std::fs::read_to_string(rest)
                    .map_err(|e| Error::Parse(format!("cannot read tree file {rest}: {e}")))?;
                Ok(Predilator::Tree(Arc::new(TreeShape::parse(&src)?)))
            }
            _ => Err(Error::Parse(format!("unknown predilator: {name}"))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Predilator::Id => "id".into(),
            Predilator::Const(ConstOrder::Finite(n)) => format!("const:{n}"),
            Predilator::Const(ConstOrder::Integers) => "const:Z".into(),
            Predilator::Const(ConstOrder::Rationals) => "const:Q".into(),
            Predilator::Goodstein => "goodstein".into(),
            Predilator::Weak => "weak".into(),
            Predilator::Sum(a, b) => format!("sum:({}),({})", a.name(), b.name()),
            Predilator::Omega(a) => format!("omega:{}", a.name()),
            Predilator::Bump(a) => format!("bump:{}", a.name()),
            Predilator::Tree(t) => format!("tree[{} nodes]", t.len()),
            Predilator::Shift(a, n) => format!("shift:{}:{n}", a.name()),
            Predilator::PowMul => "powmul".into(),
            Predilator::Shapes => "shapes".into(),
        }
    }

    pub fn cmp(&self, a: &Value, b: &Value) -> Ordering {
        use Value::*;
        match (self, a, b) {
            (Predilator::Id, Elem(x), Elem(y)) => x.cmp(y),
            (Predilator::Const(_), Int(x), Int(y)) => x.cmp(y),
            (Predilator::Const(_), Rat(x), Rat(y)) => x.cmp(y),
            (Predilator::Goodstein, G(x), G(y)) => GTerm::cmp(x, y),
            (Predilator::Weak, W(x), W(y)) => WTerm::cmp(x, y),
            (Predilator::Sum(d, _), Inl(x), Inl(y)) => d.cmp(x, y),
            (Predilator::Sum(_, e), Inr(x), Inr(y)) => e.cmp(x, y),
            (Predilator::Sum(..), Inl(_), Inr(_)) => Ordering::Less,
            (Predilator::Sum(..), Inr(_), Inl(_)) => Ordering::Greater,
            (Predilator::Omega(d), Seq(xs), Seq(ys)) => seq_cmp(xs, ys, |x, y| d.cmp(x, y)),
            (Predilator::Bump(d), x, y) => {
                let tag = |v: &Value| match v {
                    Low(..) => 0,
                    Mid(_) => 1,
                    _ => 2,
                };
                tag(x).cmp(&tag(y)).then_with(|| match (x, y) {
                    (Low(s, n), Low(t, m)) | (High(s, n), High(t, m)) => d.cmp(s, t).then(n.cmp(m)),
                    (Mid(n), Mid(m)) => n.cmp(m),
                    _ => panic!("bump values expected"),
                })
            }
            (Predilator::Tree(t), x, y) => match (x, y) {
                (Leaf(l), Leaf(m)) => t.node_cmp(*l, *m),
                (Leaf(l), Node(s, ..)) => t.node_cmp(*l, *s),
                (Node(s, ..), Leaf(l)) => t.node_cmp(*s, *l),
                (Node(s, x1, y1), Node(u, x2, y2)) => {
                    t.node_cmp(*s, *u).then(x1.cmp(x2)).then(y1.cmp(y2))
                }
                _ => panic!("tree values expected"),
            },
            (Predilator::Shift(d, _), x, y) => d.cmp(x, y),
            (Predilator::PowMul, x, y) => match (x, y) {
                (Pow(xs), Pow(ys)) => seq_cmp(xs, ys, |a, b| a.cmp(b)),
                (Pow(_), Mul(..)) => Ordering::Less,
                (Mul(..), Pow(_)) => Ordering::Greater,
                (Mul(n, x), Mul(m, y)) => n.cmp(m).then(x.cmp(y)),
                _ => panic!("powmul values expected"),
            },
            (Predilator::Shapes, Value::Shape(x), Value::Shape(y)) => OtShape::cmp(x, y),
            _ => panic!("values {a:?} and {b:?} do not belong to {}", self.name()),
        }
    }

    /// D(f) for an order map `f` given as an index vector.
    pub fn act(&self, f: &[usize], v: &Value) -> Value {
        use Value::*;
        match (self, v) {
            (Predilator::Id, Elem(x)) => Elem(f[*x]),
            (Predilator::Const(_), v) => v.clone(),
            (Predilator::Goodstein, G(g)) => G(g.act(f)),
            (Predilator::Weak, W(w)) => W(w.act(f)),
            (Predilator::Sum(d, _), Inl(x)) => Inl(Box::new(d.act(f, x))),
            (Predilator::Sum(_, e), Inr(x)) => Inr(Box::new(e.act(f, x))),
            (Predilator::Omega(d), Seq(xs)) => Seq(xs.iter().map(|x| d.act(f, x)).collect()),
            (Predilator::Bump(d), Low(s, n)) => Low(Box::new(d.act(f, s)), *n),
            (Predilator::Bump(_), Mid(n)) => Mid(*n),
            (Predilator::Bump(d), High(s, n)) => High(Box::new(d.act(f, s)), *n),
            (Predilator::Tree(_), Leaf(l)) => Leaf(*l),
            (Predilator::Tree(_), Node(t, x, y)) => Node(*t, f[*x], f[*y]),
            (Predilator::Shift(d, alpha), v) => {
                let g: Vec<usize> = (0..*alpha).chain(f.iter().map(|i| i + alpha)).collect();
                d.act(&g, v)
            }
            (Predilator::PowMul, Pow(xs)) => Pow(xs.iter().map(|x| f[*x]).collect()),
            (Predilator::PowMul, Mul(n, x)) => Mul(*n, f[*x]),
            (Predilator::Shapes, Shape(s)) => Shape(s.act(f)),
            _ => panic!("value {v:?} does not belong to {}", self.name()),
        }
    }

    /// Support as a sorted list of base indices.
    pub fn supp(&self, v: &Value) -> Vec<usize> {
        let mut out = Vec::new();
        self.supp_into(v, &mut out);
        dedup_sorted(out)
    }

    fn supp_into(&self, v: &Value, out: &mut Vec<usize>) {
        use Value::*;
        match (self, v) {
            (Predilator::Id, Elem(x)) => out.push(*x),
            (Predilator::Const(_), _) => {}
            (Predilator::Goodstein, G(g)) => g.supp_into(out),
            (Predilator::Weak, W(w)) => w.supp_into(out),
            (Predilator::Sum(d, _), Inl(x)) => d.supp_into(x, out),
            (Predilator::Sum(_, e), Inr(x)) => e.supp_into(x, out),
            (Predilator::Omega(d), Seq(xs)) => xs.iter().for_each(|x| d.supp_into(x, out)),
            (Predilator::Bump(d), Low(s, _) | High(s, _)) => d.supp_into(s, out),
            (Predilator::Bump(_), Mid(_)) => {}
            (Predilator::Tree(_), Leaf(_)) => {}
            (Predilator::Tree(_), Node(_, x, y)) => out.extend([*x, *y]),
            (Predilator::Shift(d, alpha), v) => {
                out.extend(d.supp(v).into_iter().filter(|x| x >= alpha).map(|x| x - alpha))
            }
            (Predilator::PowMul, Pow(xs)) => out.extend(xs.iter().copied()),
            (Predilator::PowMul, Mul(_, x)) => out.push(*x),
            (Predilator::Shapes, Shape(s)) => s.supp_into(out),
            _ => panic!("value {v:?} does not belong to {}", self.name()),
        }
    }

    /// Checks that `v` is an element of D(base).
    pub fn validate(&self, base: usize, v: &Value) -> Result<()> {
        use Value::*;
        let bad = || malformed(format!("{v:?} is not an element of {}({base})", self.name()));
        match (self, v) {
            (Predilator::Id, Elem(x)) if *x < base => Ok(()),
            (Predilator::Const(ConstOrder::Finite(n)), Int(x)) if *x >= 0 && (*x as u64) < *n => Ok(()),
            (Predilator::Const(ConstOrder::Integers), Int(_)) => Ok(()),
            (Predilator::Const(ConstOrder::Rationals), Rat(_)) => Ok(()),
            (Predilator::Goodstein, G(g)) => g.validate(base),
            (Predilator::Weak, W(w)) => w.validate(base),
            (Predilator::Sum(d, _), Inl(x)) => d.validate(base, x),
            (Predilator::Sum(_, e), Inr(x)) => e.validate(base, x),
            (Predilator::Omega(d), Seq(xs)) => {
                for x in xs {
                    d.validate(base, x)?;
                }
                if is_weakly_decreasing(xs, |a, b| d.cmp(a, b)) {
                    Ok(())
                } else {
                    malformed("sequence is not weakly decreasing")
                }
            }
            (Predilator::Bump(d), Low(s, _) | High(s, _)) => d.validate(base, s),
            (Predilator::Bump(_), Mid(_)) => Ok(()),
            (Predilator::Tree(t), Leaf(l)) if *l < t.len() && t.is_leaf(*l) => Ok(()),
            (Predilator::Tree(t), Node(s, x, y)) if *s < t.len() && !t.is_leaf(*s) && *x < base && *y < base => {
                Ok(())
            }
            (Predilator::Shift(d, alpha), v) => d.validate(alpha + base, v),
            (Predilator::PowMul, Pow(xs)) if xs.iter().all(|x| *x < base) => {
                if xs.windows(2).all(|w| w[0] >= w[1]) {
                    Ok(())
                } else {
                    malformed("sequence is not weakly decreasing")
                }
            }
            (Predilator::PowMul, Mul(_, x)) if *x < base => Ok(()),
            (Predilator::Shapes, Shape(s)) => s.validate(base),
            _ => bad(),
        }
    }

    /// Symbol count, with base element `x` counting `weight(x)`.
    pub fn size(&self, v: &Value, weight: &dyn Fn(usize) -> usize) -> usize {
        use Value::*;
        match (self, v) {
            (Predilator::Id, Elem(x)) => weight(*x),
            (Predilator::Const(_), Int(x)) => 1 + x.unsigned_abs() as usize,
            (Predilator::Const(_), Rat(r)) => (r.numer().unsigned_abs() + r.denom().unsigned_abs()) as usize,
            (Predilator::Goodstein, G(g)) => g.size(&|x| weight(x)),
            (Predilator::Weak, W(w)) => w.size(&|x| weight(x)),
            (Predilator::Sum(d, _), Inl(x)) => 1 + d.size(x, weight),
            (Predilator::Sum(_, e), Inr(x)) => 1 + e.size(x, weight),
            (Predilator::Omega(d), Seq(xs)) => 1 + xs.iter().map(|x| d.size(x, weight)).sum::<usize>(),
            (Predilator::Bump(d), Low(s, n) | High(s, n)) => 1 + d.size(s, weight) + *n as usize,
            (Predilator::Bump(_), Mid(n)) => 1 + *n as usize,
            (Predilator::Tree(_), Leaf(_)) => 1,
            (Predilator::Tree(_), Node(_, x, y)) => 1 + weight(*x) + weight(*y),
            (Predilator::Shift(d, alpha), v) => {
                let a = *alpha;
                d.size(v, &|x| if x < a { 1 } else { weight(x - a) })
            }
            (Predilator::PowMul, Pow(xs)) => 1 + xs.iter().map(|x| weight(*x)).sum::<usize>(),
            (Predilator::PowMul, Mul(n, x)) => 1 + *n as usize + weight(*x),
            (Predilator::Shapes, Shape(s)) => s.size(weight),
            _ => panic!("value {v:?} does not belong to {}", self.name()),
        }
    }

    /// Every element of D(base) of size at most `bound`.
    pub fn enumerate(&self, base: usize, bound: usize) -> Vec<Value> {
        use Value::*;
        if bound == 0 {
            return Vec::new();
        }
        match self {
            Predilator::Id => (0..base).map(Elem).collect(),
            Predilator::Const(ConstOrder::Finite(n)) => (0..*n as i64).map(Int).collect(),
            Predilator::Const(ConstOrder::Integers) => {
                let r = (bound - 1) as i64;
                (-r..=r).map(Int).collect()
            }
            Predilator::Const(ConstOrder::Rationals) => {
                let mut out = Vec::new();
                for q in 1..=bound as i64 {
                    for p in -(bound as i64)..=bound as i64 {
                        let r = Rational::new(p, q);
                        if (p.unsigned_abs() + q as u64) as usize <= bound && *r.denom() == q {
                            out.push(Rat(r));
                        }
                    }
                }
                out
            }
            Predilator::Goodstein => GTerm::enumerate(base, bound).into_iter().map(G).collect(),
            Predilator::Weak => WTerm::enumerate(base, bound).into_iter().map(W).collect(),
            Predilator::Sum(d, e) => d
                .enumerate(base, bound - 1)
                .into_iter()
                .map(|x| Inl(Box::new(x)))
                .chain(e.enumerate(base, bound - 1).into_iter().map(|x| Inr(Box::new(x))))
                .collect(),
            Predilator::Omega(d) => {
                let mut members = d.enumerate(base, bound - 1);
                members.sort_by(|a, b| d.cmp(b, a));
                let mut seqs = Vec::new();
                weakly_decreasing_choices(&members, 0, bound - 1, &mut Vec::new(), &mut seqs);
                seqs.into_iter()
                    .map(Seq)
                    .filter(|s| self.size(s, &|_| 1) <= bound)
                    .collect()
            }
            Predilator::Bump(d) => {
                let inner = d.enumerate(base, bound - 1);
                let mut out = Vec::new();
                for s in &inner {
                    let room = bound - 1 - d.size(s, &|_| 1);
                    for n in 0..=room as u64 {
                        out.push(Low(Box::new(s.clone()), n));
                        out.push(High(Box::new(s.clone()), n));
                    }
                }
                out.extend((0..bound as u64).map(Mid));
                out
            }
            Predilator::Tree(t) => {
                let mut out = Vec::new();
                for v in 0..t.len() {
                    if t.is_leaf(v) {
                        out.push(Leaf(v));
                    } else if bound >= 3 {
                        for x in 0..base {
                            for y in 0..base {
                                out.push(Node(v, x, y));
                            }
                        }
                    }
                }
                out
            }
            Predilator::Shift(d, alpha) => d.enumerate(alpha + base, bound),
            Predilator::PowMul => {
                let mut seqs = Vec::new();
                let desc: Vec<usize> = (0..base).rev().collect();
                weakly_decreasing_choices(&desc, 0, bound - 1, &mut Vec::new(), &mut seqs);
                let mut out: Vec<Value> = seqs.into_iter().map(Pow).collect();
                for n in 0..bound.saturating_sub(1) as u64 {
                    for x in 0..base {
                        if 2 + n as usize <= bound {
                            out.push(Mul(n, x));
                        }
                    }
                }
                out
            }
            Predilator::Shapes => OtShape::enumerate(base, bound).into_iter().map(Shape).collect(),
        }
    }

    /// Elements of D(base) of size at most `bound` whose support is all of `base`.
    pub fn enumerate_full_support(&self, base: usize, bound: usize) -> Vec<Value> {
        self.enumerate(base, bound)
            .into_iter()
            .filter(|v| self.supp(v).len() == base)
            .collect()
    }

    /// The least element of D(base) above every member of `set`; `Ok(None)` if
    /// no element lies above, an error when no least one exists or the
    /// predilator does not provide it.
    pub fn least_above(&self, base: usize, set: &[Value]) -> Result<Option<Value>> {
        use Value::*;
        let max = set.iter().max_by(|a, b| self.cmp(a, b));
        match self {
            Predilator::Id => {
                let next = match max {
                    None => 0,
                    Some(Elem(x)) => x + 1,
                    Some(v) => return malformed(format!("{v:?}")),
                };
                Ok((next < base).then_some(Elem(next)))
            }
            Predilator::Const(ConstOrder::Finite(n)) => {
                let next = match max {
                    None => 0,
                    Some(Int(x)) => x + 1,
                    Some(v) => return malformed(format!("{v:?}")),
                };
                Ok(((next as u64) < *n).then_some(Int(next)))
            }
            Predilator::Const(ConstOrder::Integers) => match max {
                None => Err(Error::Unsupported("the integers have no least element".into())),
                Some(Int(x)) => Ok(Some(Int(x + 1))),
                Some(v) => malformed(format!("{v:?}")),
            },
            Predilator::Const(ConstOrder::Rationals) => {
                Err(Error::Unsupported("no rational is least above another".into()))
            }
            Predilator::Goodstein | Predilator::Weak => {
                let b = base as u64 + 1;
                let next = match max {
                    None => BigUint::from(0u32),
                    Some(_) if base == 0 => return Ok(None),
                    Some(G(g)) => g.eval(b) + 1u32,
                    Some(W(w)) => w.eval(b) + 1u32,
                    Some(v) => return malformed(format!("{v:?}")),
                };
                Ok(Some(match self {
                    Predilator::Goodstein => G(GTerm::encode(&next, b.max(2))),
                    _ => W(WTerm::encode(&next, b.max(2))),
                }))
            }
            Predilator::Sum(d, e) => {
                let rights: Vec<Value> =
                    set.iter().filter_map(|v| if let Inr(x) = v { Some((**x).clone()) } else { None }).collect();
                if rights.is_empty() {
                    let lefts: Vec<Value> =
                        set.iter().filter_map(|v| if let Inl(x) = v { Some((**x).clone()) } else { None }).collect();
                    if let Some(x) = d.least_above(base, &lefts)? {
                        return Ok(Some(Inl(Box::new(x))));
                    }
                }
                Ok(e.least_above(base, &rights)?.map(|x| Inr(Box::new(x))))
            }
            Predilator::Omega(d) => match max {
                None => Ok(Some(Seq(Vec::new()))),
                Some(Seq(xs)) => Ok(d.least_above(base, &[])?.map(|m| {
                    let mut ys = xs.clone();
                    ys.push(m);
                    Seq(ys)
                })),
                Some(v) => malformed(format!("{v:?}")),
            },
            Predilator::Bump(d) => match max {
                None => Ok(Some(match d.least_above(base, &[])? {
                    Some(m) => Low(Box::new(m), 0),
                    None => Mid(0),
                })),
                Some(Low(s, n)) => Ok(Some(Low(s.clone(), n + 1))),
                Some(Mid(n)) => Ok(Some(Mid(n + 1))),
                Some(High(s, n)) => Ok(Some(High(s.clone(), n + 1))),
                Some(v) => malformed(format!("{v:?}")),
            },
            Predilator::Shift(d, alpha) => d.least_above(alpha + base, set),
            Predilator::Tree(_) | Predilator::PowMul | Predilator::Shapes => {
                Err(Error::Unsupported(format!("{} provides no least-above operation", self.name())))
            }
        }
    }

    pub fn to_sexp(&self, v: &Value) -> Sexp {
        use Value::*;
        let num = |n: &dyn fmt::Display| Sexp::atom(n.to_string());
        match (self, v) {
            (_, Elem(x)) => num(x),
            (_, Int(x)) => num(x),
            (_, Rat(r)) => num(r),
            (_, G(g)) => g.to_sexp(),
            (_, W(w)) => w.to_sexp(),
            (Predilator::Sum(d, _), Inl(x)) => Sexp::tagged("inl", vec![d.to_sexp(x)]),
            (Predilator::Sum(_, e), Inr(x)) => Sexp::tagged("inr", vec![e.to_sexp(x)]),
            (Predilator::Omega(d), Seq(xs)) => Sexp::tagged("seq", xs.iter().map(|x| d.to_sexp(x)).collect()),
            (Predilator::Bump(d), Low(s, n)) => Sexp::tagged("lo", vec![d.to_sexp(s), num(n)]),
            (Predilator::Bump(_), Mid(n)) => Sexp::tagged("mid", vec![num(n)]),
            (Predilator::Bump(d), High(s, n)) => Sexp::tagged("hi", vec![d.to_sexp(s), num(n)]),
            (_, Leaf(l)) => Sexp::tagged("leaf", vec![num(l)]),
            (_, Node(t, x, y)) => Sexp::tagged("node", vec![num(t), num(x), num(y)]),
            (Predilator::Shift(d, _), v) => d.to_sexp(v),
            (_, Pow(xs)) => Sexp::tagged("pow", xs.iter().map(|x| num(x)).collect()),
            (_, Mul(n, x)) => Sexp::tagged("mul", vec![num(n), num(x)]),
            (_, Shape(s)) => s.to_sexp(),
            _ => Sexp::atom(format!("{v:?}")),
        }
    }

    pub fn from_sexp(&self, sx: &Sexp) -> Result<Value> {
        use Value::*;
        let arity = |args: &[Sexp], n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::Parse(format!("wrong number of arguments in {sx}")))
            }
        };
        match self {
            Predilator::Id => Ok(Elem(sx.parse_usize()?)),
            Predilator::Const(ConstOrder::Rationals) => sx
                .as_atom()
                .and_then(|a| a.parse::<Rational>().ok())
                .map(Rat)
                .ok_or_else(|| Error::Parse(format!("expected a rational, found {sx}"))),
            Predilator::Const(_) => Ok(Int(sx.parse_i64()?)),
            Predilator::Goodstein => Ok(G(GTerm::from_sexp(sx)?)),
            Predilator::Weak => Ok(W(WTerm::from_sexp(sx)?)),
            Predilator::Sum(d, e) => match sx.as_tagged() {
                Some(("inl", [x])) => Ok(Inl(Box::new(d.from_sexp(x)?))),
                Some(("inr", [x])) => Ok(Inr(Box::new(e.from_sexp(x)?))),
                _ => Err(Error::Parse(format!("expected (inl _) or (inr _), found {sx}"))),
            },
            Predilator::Omega(d) => {
                let args = sx.expect_tagged("seq")?;
                Ok(Seq(args.iter().map(|a| d.from_sexp(a)).collect::<Result<_>>()?))
            }
            Predilator::Bump(d) => match sx.as_tagged() {
                Some(("lo", args)) => {
                    arity(args, 2)?;
                    Ok(Low(Box::new(d.from_sexp(&args[0])?), args[1].parse_u64()?))
                }
                Some(("mid", args)) => {
                    arity(args, 1)?;
                    Ok(Mid(args[0].parse_u64()?))
                }
                Some(("hi", args)) => {
                    arity(args, 2)?;
                    Ok(High(Box::new(d.from_sexp(&args[0])?), args[1].parse_u64()?))
                }
                _ => Err(Error::Parse(format!("expected a bump value, found {sx}"))),
            },
            Predilator::Tree(_) => match sx.as_tagged() {
                Some(("leaf", args)) => {
                    arity(args, 1)?;
                    Ok(Leaf(args[0].parse_usize()?))
                }
                Some(("node", args)) => {
                    arity(args, 3)?;
                    Ok(Node(args[0].parse_usize()?, args[1].parse_usize()?, args[2].parse_usize()?))
                }
                _ => Err(Error::Parse(format!("expected a tree value, found {sx}"))),
            },
            Predilator::Shift(d, _) => d.from_sexp(sx),
            Predilator::PowMul => match sx.as_tagged() {
                Some(("pow", args)) => Ok(Pow(args.iter().map(Sexp::parse_usize).collect::<Result<_>>()?)),
                Some(("mul", args)) => {
                    arity(args, 2)?;
                    Ok(Mul(args[0].parse_u64()?, args[1].parse_usize()?))
                }
                _ => Err(Error::Parse(format!("expected a powmul value, found {sx}"))),
            },
            Predilator::Shapes => Ok(Value::Shape(OtShape::from_sexp(sx)?)),
        }
    }
}

impl fmt::Display for Predilator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// All order maps from `n` into `m`.
pub fn order_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(n: usize, m: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in from..m {
            cur.push(i);
            go(n, m, i + 1, cur, out);
            cur.pop();
        }
    }
    go(n, m, 0, &mut Vec::new(), &mut out);
    out
}

/// Checks the functor laws, naturality of supports, monotonicity of D(f) and
/// the support condition for all bases up to `max_base` and values up to `bound`.
pub fn check_predilator(d: &Predilator, max_base: usize, bound: usize) -> Vec<String> {
    let mut issues = Vec::new();
    for n in 0..=max_base {
        let vals = d.enumerate(n, bound);
        for v in &vals {
            if let Err(e) = d.validate(n, v) {
                issues.push(format!("enumerated value invalid: {e}"));
            }
            if d.act(&(0..n).collect::<Vec<_>>(), v) != *v {
                issues.push(format!("D(id) moves {v:?}"));
            }
        }
        for m in n..=max_base {
            for f in order_maps(n, m) {
                for v in &vals {
                    let img = d.act(&f, v);
                    if d.validate(m, &img).is_err() {
                        issues.push(format!("D(f)({v:?}) leaves D({m})"));
                    }
                    let mapped: Vec<usize> = d.supp(v).iter().map(|&x| f[x]).collect();
                    if d.supp(&img) != mapped {
                        issues.push(format!("support not natural at {v:?}"));
                    }
                }
                for (i, a) in vals.iter().enumerate() {
                    for b in &vals[i + 1..] {
                        let before = d.cmp(a, b);
                        if d.cmp(&d.act(&f, a), &d.act(&f, b)) != before {
                            issues.push(format!("D(f) not monotone on {a:?}, {b:?}"));
                        }
                    }
                }
                for p in m..=max_base.min(m + 1) {
                    for g in order_maps(m, p) {
                        let gf: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                        for v in &vals {
                            if d.act(&gf, v) != d.act(&g, &d.act(&f, v)) {
                                issues.push(format!("D(g∘f) ≠ D(g)∘D(f) at {v:?}"));
                            }
                        }
                    }
                }
                for w in d.enumerate(m, bound) {
                    if d.supp(&w).iter().all(|x| f.contains(x)) {
                        let back: Vec<usize> =
                            (0..m).map(|y| f.iter().position(|&x| x == y).unwrap_or(0)).collect();
                        let pre = d.act(&back, &w);
                        if d.validate(n, &pre).is_err() || d.act(&f, &pre) != w {
                            issues.push(format!("support condition fails for {w:?}"));
                        }
                    }
                }
            }
        }
    }
    issues
}

/// A finite stretch A_α, A_{α+1}, … of the increasing sequence of
/// Definition-1.1 type, stopping when D(γ) has nothing above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversePrefix {
    pub alpha: usize,
    pub values: Vec<Value>,
    pub terminated_at: Option<usize>,
}

/// A_γ for γ = α, …, α+stages-1, each the least value of D(γ) above all earlier ones.
pub fn inverse_prefix_from(d: &Predilator, alpha: usize, stages: usize) -> Result<InversePrefix> {
    let mut values: Vec<Value> = Vec::new();
    for k in 0..stages {
        let gamma = alpha + k;
        // inclusions of initial segments leave indices unchanged
        match d.least_above(gamma, &values)? {
            Some(v) => values.push(v),
            None => {
                return Ok(InversePrefix { alpha, values, terminated_at: Some(gamma) });
            }
        }
    }
    Ok(InversePrefix { alpha, values, terminated_at: None })
}

pub fn inverse_prefix(d: &Predilator, stages: usize) -> Result<InversePrefix> {
    inverse_prefix_from(d, 0, stages)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_preds() -> Vec<Predilator> {
        let tree = TreeShape::from_parents(vec![None, Some(0), Some(0)], vec![true, false, false]).unwrap();
        vec![
            Predilator::Id,
            Predilator::konst(3),
            Predilator::Const(ConstOrder::Integers),
            Predilator::Goodstein,
            Predilator::Weak,
            Predilator::sum(Predilator::konst(2), Predilator::Goodstein),
            Predilator::omega(Predilator::Id),
            Predilator::bump(Predilator::Goodstein),
            Predilator::Tree(Arc::new(tree)),
            Predilator::shift(Predilator::Goodstein, 1),
            Predilator::PowMul,
            Predilator::Shapes,
        ]
    }

    #[test]
    fn functor_laws() {
        for d in all_preds() {
            let issues = check_predilator(&d, 3, 5);
            assert!(issues.is_empty(), "{}: {:?}", d.name(), &issues[..issues.len().min(3)]);
        }
    }

    #[test]
    fn enumerations_are_linear() {
        for d in all_preds() {
            for n in 0..3 {
                let vals = d.enumerate(n, 5);
                crate::order::check_linear(&vals, |a, b| d.cmp(a, b)).unwrap();
            }
        }
    }

    #[test]
    fn least_above_is_least() {
        for d in [Predilator::Goodstein, Predilator::Weak, Predilator::konst(4), Predilator::bump(Predilator::Goodstein)] {
            for n in 0..3 {
                let vals = d.enumerate(n, 6);
                for s in vals.iter().take(30) {
                    let set = vec![s.clone()];
                    if let Some(l) = d.least_above(n, &set).unwrap() {
                        assert_eq!(d.cmp(s, &l), Ordering::Less);
                        for v in &vals {
                            if d.cmp(s, v) == Ordering::Less {
                                assert_ne!(d.cmp(v, &l), Ordering::Less, "{} {v:?} below {l:?}", d.name());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn constant_predilators_terminate() {
        for beta in 0..=20u64 {
            let p = inverse_prefix(&Predilator::konst(beta), 30).unwrap();
            assert_eq!(p.terminated_at, Some(beta as usize));
            for (g, v) in p.values.iter().enumerate() {
                assert_eq!(*v, Value::Int(g as i64));
            }
        }
    }

    #[test]
    fn names_roundtrip() {
        for n in ["goodstein", "weak", "const:3", "const:Z", "omega:weak", "bump:goodstein", "shift:goodstein:2"] {
            let p = Predilator::parse_name(n).unwrap();
            assert_eq!(Predilator::parse_name(&p.name()).unwrap(), p);
        }
        let s = Predilator::parse_name("sum:const:2,const:3").unwrap();
        assert_eq!(s, Predilator::sum(Predilator::konst(2), Predilator::konst(3)));
        assert!(Predilator::parse_name("nonsense").is_err());
    }

    #[test]
    fn kleene_brouwer_tree_order() {
        let t = TreeShape::parse("- I\n0 L\n0 L\n").unwrap();
        // left leaf < right leaf < root
        assert_eq!(t.node_cmp(1, 2), Ordering::Less);
        assert_eq!(t.node_cmp(2, 0), Ordering::Less);
    }
}
