//! Termination points that are ill-founded, not unique or not regular.

use crate::error::{Error, Result};
use crate::fixpoint::{
    int_code, int_decode, normalize_lifted, synthesize_height, IntegerChain, Precedence, System, Tree, DEFAULT_FUEL,
};
use crate::predilator::{ConstOrder, Predilator, Rational, TreeShape, Value};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::rc::Rc;
use std::sync::Arc;

/// Findings of a finite check; `notes` are informational.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    fn new(name: &str) -> Report {
        Report { name: name.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

// ---------------------------------------------------------------------------
// ℤ as an Id-sequence termination point with A_z = z - 1.

#[derive(Debug, Clone)]
pub struct ZCheck {
    pub report: Report,
    /// A ≺-descent z, z-1, … found when height synthesis runs out of fuel.
    pub descent: Vec<i64>,
}

/// Checks conditions (1) and (2)/(4) for A_z = z - 1 on `lo..=hi` and runs
/// height synthesis at 0, which must fail with a descent of length ≥ `descent_len`.
pub fn z_point_check(lo: i64, hi: i64, descent_len: usize) -> ZCheck {
    let mut rep = Report::new("z-point");
    let a = |z: i64| z - 1;
    for z in lo + 1..=hi {
        rep.checked += 1;
        if a(z) >= z {
            rep.violations.push(format!("A_{z} is not in ℤ↾{z}"));
        }
        // least v in ℤ↾z (within the window) above every earlier A_y
        let least = (lo - 1..z).find(|&v| (lo..z).all(|y| a(y) < v));
        if least != Some(a(z)) {
            rep.violations.push(format!("A_{z} = {} is not the least bound, found {least:?}", a(z)));
        }
    }
    for s in lo - 1..hi {
        rep.checked += 1;
        let least = (lo..=hi).find(|&z| s <= a(z));
        if least != Some(s + 1) {
            rep.violations.push(format!("least z with {s} ≤ A_z is {least:?}, expected {}", s + 1));
        }
    }
    let mut fuel = DEFAULT_FUEL;
    let descent = match synthesize_height(&IntegerChain, int_code(0), &mut fuel) {
        Ok(h) => {
            rep.violations.push(format!("height synthesis unexpectedly returned {h}"));
            Vec::new()
        }
        Err(e) => e.descent.iter().map(|&c| int_decode(c)).collect::<Vec<i64>>(),
    };
    if descent.len() < descent_len {
        rep.violations.push(format!("descent of length {} is shorter than {descent_len}", descent.len()));
    }
    for w in descent.windows(2) {
        if w[1] != w[0] - 1 {
            rep.violations.push(format!("{} ≺ {} fails", w[1], w[0]));
        }
    }
    rep.notes.push(format!("height synthesis exhausted {DEFAULT_FUEL} steps; descent length {}", descent.len()));
    ZCheck { report: rep, descent }
}

// ---------------------------------------------------------------------------
// A second 1-fixed point of the tree predilator: nodes of T and terms P(t,x,y).

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum XTerm {
    Node(usize),
    P(usize, Rc<XTerm>, Rc<XTerm>),
}

impl XTerm {
    pub fn size(&self) -> usize {
        match self {
            XTerm::Node(_) => 1,
            XTerm::P(_, x, y) => 1 + x.size() + y.size(),
        }
    }

    pub fn show(&self) -> String {
        match self {
            XTerm::Node(v) => format!("n{v}"),
            XTerm::P(t, x, y) => format!("P(n{t},{},{})", x.show(), y.show()),
        }
    }
}

/// The value π⁺(x) of D(X⁺): a leaf, or a node label with two arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PiValue {
    Leaf(usize),
    Node(usize, Rc<XTerm>, Rc<XTerm>),
}

#[derive(Debug, Clone)]
pub struct TreeFixedPoint {
    pub shape: Arc<TreeShape>,
    /// The enumerated elements of X, ascending.
    pub elems: Vec<Rc<XTerm>>,
}

impl TreeFixedPoint {
    fn kids(&self, t: usize) -> Option<(usize, usize)> {
        self.shape.children[t]
    }

    pub fn pi(&self, x: &XTerm) -> PiValue {
        match x {
            XTerm::Node(v) => match self.kids(*v) {
                None => PiValue::Leaf(*v),
                Some((a, b)) => PiValue::Node(*v, Rc::new(XTerm::Node(a)), Rc::new(XTerm::Node(b))),
            },
            XTerm::P(t, x, y) => PiValue::Node(*t, x.clone(), y.clone()),
        }
    }

    pub fn pi_cmp(&self, a: &PiValue, b: &PiValue) -> Ordering {
        let s = &self.shape;
        match (a, b) {
            (PiValue::Leaf(l), PiValue::Leaf(m)) => s.node_cmp(*l, *m),
            (PiValue::Leaf(l), PiValue::Node(t, ..)) => s.node_cmp(*l, *t),
            (PiValue::Node(t, ..), PiValue::Leaf(l)) => s.node_cmp(*t, *l),
            (PiValue::Node(t, x, y), PiValue::Node(u, x2, y2)) => {
                s.node_cmp(*t, *u).then_with(|| self.cmp(x, x2)).then_with(|| self.cmp(y, y2))
            }
        }
    }

    /// Nodes of T keep their order; everything else is compared through π⁺.
    pub fn cmp(&self, a: &XTerm, b: &XTerm) -> Ordering {
        match (a, b) {
            (XTerm::Node(u), XTerm::Node(v)) => self.shape.node_cmp(*u, *v),
            _ => self.pi_cmp(&self.pi(a), &self.pi(b)),
        }
    }

    /// P(t,x,y) exists in X⁺ only when (x,y) ≠ (t∗⟨0⟩, t∗⟨1⟩).
    pub fn in_x_plus(&self, x: &XTerm) -> bool {
        match x {
            XTerm::Node(_) => true,
            XTerm::P(t, a, b) => match self.kids(*t) {
                None => false,
                Some((c0, c1)) => {
                    !(**a == XTerm::Node(c0) && **b == XTerm::Node(c1)) && self.in_x_plus(a) && self.in_x_plus(b)
                }
            },
        }
    }

    /// Membership in X: arguments lie in X and below the term.
    pub fn in_x(&self, x: &XTerm) -> bool {
        match x {
            XTerm::Node(_) => true,
            XTerm::P(_, a, b) => {
                self.in_x_plus(x)
                    && self.in_x(a)
                    && self.in_x(b)
                    && self.cmp(a, x) == Ordering::Less
                    && self.cmp(b, x) == Ordering::Less
            }
        }
    }

    /// The preimage of a value of D(X) under π, if one exists.
    pub fn pi_inverse(&self, v: &PiValue) -> Option<XTerm> {
        match v {
            PiValue::Leaf(l) => self.shape.is_leaf(*l).then_some(XTerm::Node(*l)),
            PiValue::Node(t, a, b) => {
                let (c0, c1) = self.kids(*t)?;
                if **a == XTerm::Node(c0) && **b == XTerm::Node(c1) {
                    Some(XTerm::Node(*t))
                } else {
                    Some(XTerm::P(*t, a.clone(), b.clone()))
                }
            }
        }
    }

    pub fn supp(&self, x: &XTerm) -> Vec<Rc<XTerm>> {
        match self.pi(x) {
            PiValue::Leaf(_) => Vec::new(),
            PiValue::Node(_, a, b) => vec![a, b],
        }
    }
}

/// Builds X over `shape` with all elements of size at most `bound`.
pub fn tree_fixed_point(shape: Arc<TreeShape>, bound: usize) -> TreeFixedPoint {
    let mut fp = TreeFixedPoint { shape: shape.clone(), elems: Vec::new() };
    let mut by_size: Vec<Vec<Rc<XTerm>>> = vec![Vec::new(); bound + 1];
    if bound >= 1 {
        by_size[1] = (0..shape.len()).map(|v| Rc::new(XTerm::Node(v))).collect();
    }
    let internal: Vec<usize> = (0..shape.len()).filter(|&v| !shape.is_leaf(v)).collect();
    for s in 3..=bound {
        let mut fresh = Vec::new();
        for sx in 1..s - 1 {
            let sy = s - 1 - sx;
            for x in &by_size[sx] {
                for y in &by_size[sy] {
                    for &t in &internal {
                        let p = XTerm::P(t, x.clone(), y.clone());
                        if fp.in_x(&p) {
                            fresh.push(Rc::new(p));
                        }
                    }
                }
            }
        }
        by_size[s] = fresh;
    }
    let mut all: Vec<Rc<XTerm>> = by_size.into_iter().flatten().collect();
    all.sort_by(|a, b| fp.cmp(a, b));
    fp.elems = all;
    fp
}

/// x ◁ y on the enumerated elements, by index.
pub struct TreePrecedence {
    below: Vec<Vec<u64>>,
}

impl Precedence for TreePrecedence {
    fn below(&self, k: u64) -> Vec<u64> {
        self.below.get(k as usize).cloned().unwrap_or_default()
    }
}

impl TreeFixedPoint {
    pub fn precedence(&self) -> Result<TreePrecedence> {
        let index: HashMap<&XTerm, usize> = self.elems.iter().enumerate().map(|(i, x)| (&**x, i)).collect();
        let below = self
            .elems
            .iter()
            .map(|x| {
                self.supp(x)
                    .iter()
                    .map(|s| index.get(&**s).map(|&i| i as u64).ok_or_else(|| Error::Malformed(format!("{} is missing", s.show()))))
                    .collect::<Result<Vec<u64>>>()
            })
            .collect::<Result<_>>()?;
        Ok(TreePrecedence { below })
    }

    /// Heights along ◁ from the generic synthesis, by element index.
    pub fn synthesize_heights(&self) -> Result<Vec<u64>> {
        let rel = self.precedence()?;
        (0..self.elems.len() as u64)
            .map(|i| {
                let mut fuel = DEFAULT_FUEL;
                synthesize_height(&rel, i, &mut fuel)
                    .map_err(|e| Error::Fuel { steps: e.steps })
            })
            .collect()
    }

    /// Checks π is an embedding, ◁ has a height function, and both range
    /// inclusions on the enumerated part; the converse inclusion is tested
    /// on values whose arguments have size at most `arg_size`.
    pub fn check(&self, arg_size: usize) -> Report {
        let mut rep = Report::new("tree fixed point");
        for w in self.elems.windows(2) {
            rep.checked += 1;
            if self.pi_cmp(&self.pi(&w[0]), &self.pi(&w[1])) != Ordering::Less {
                rep.violations.push(format!("π is not increasing at {}", w[1].show()));
            }
        }
        match self.precedence() {
            Err(e) => rep.violations.push(e.to_string()),
            Ok(rel) => {
                let mut h: Vec<u64> = Vec::with_capacity(self.elems.len());
                for y in 0..self.elems.len() {
                    let below = rel.below(y as u64);
                    if below.iter().any(|&x| x as usize >= y) {
                        rep.violations.push(format!("◁ does not point downwards at {}", self.elems[y].show()));
                        h.push(0);
                        continue;
                    }
                    h.push(1 + below.iter().map(|&x| h[x as usize]).max().unwrap_or(0));
                }
            }
        }
        // ⊆: supports lie below their element
        for x in &self.elems {
            for s in self.supp(x) {
                rep.checked += 1;
                if self.cmp(&s, x) != Ordering::Less {
                    rep.violations.push(format!("{} is not below {}", s.show(), x.show()));
                }
            }
        }
        // ⊇: values dominating the π-images of their supports are π-images
        let index: HashMap<&XTerm, usize> = self.elems.iter().enumerate().map(|(i, x)| (&**x, i)).collect();
        let mut values: Vec<PiValue> =
            (0..self.shape.len()).filter(|&v| self.shape.is_leaf(v)).map(PiValue::Leaf).collect();
        let max_size = self.elems.iter().map(|e| e.size()).max().unwrap_or(1);
        let small: Vec<&Rc<XTerm>> = self.elems.iter().filter(|x| x.size() <= arg_size).collect();
        for t in (0..self.shape.len()).filter(|&v| !self.shape.is_leaf(v)) {
            for a in &small {
                for b in &small {
                    values.push(PiValue::Node(t, (*a).clone(), (*b).clone()));
                }
            }
        }
        for v in values {
            let supp: Vec<Rc<XTerm>> = match &v {
                PiValue::Leaf(_) => Vec::new(),
                PiValue::Node(_, a, b) => vec![a.clone(), b.clone()],
            };
            if !supp.iter().all(|s| self.pi_cmp(&self.pi(s), &v) == Ordering::Less) {
                continue;
            }
            rep.checked += 1;
            match self.pi_inverse(&v) {
                Some(x) if self.in_x(&x) && self.pi(&x) == v => {
                    if x.size() <= max_size && !index.contains_key(&x) {
                        rep.violations.push(format!("{} is missing from the enumeration", x.show()));
                    }
                }
                _ => rep.violations.push(format!("a value over {} elements has no π-preimage", supp.len())),
            }
        }
        rep
    }

    /// Compares X with the canonical ψ₁ of the tree predilator through the
    /// unique homomorphism and its inverse.
    pub fn compare_to_canonical(&self, bound: usize) -> Report {
        let mut rep = Report::new("tree fixed point vs canonical");
        let sys = System::psi(Predilator::Tree(self.shape.clone()));
        let mut memo: HashMap<usize, Tree> = HashMap::new();
        let mut images = Vec::new();
        for x in &self.elems {
            match self.to_canonical(&sys, x, &mut memo) {
                Ok(t) => {
                    if !sys.is_valid(&t) {
                        rep.violations.push(format!("image of {} is not in ψ₁", x.show()));
                    }
                    images.push(t);
                }
                Err(e) => {
                    rep.violations.push(format!("{}: {e}", x.show()));
                    return rep;
                }
            }
        }
        for (i, w) in images.windows(2).enumerate() {
            rep.checked += 1;
            if sys.cmp(&w[0], &w[1]) != Ordering::Less {
                rep.violations.push(format!("homomorphism not increasing at {}", self.elems[i + 1].show()));
            }
        }
        for (x, t) in self.elems.iter().zip(&images) {
            match self.from_canonical(&sys, t) {
                Ok(y) if y == **x => {}
                _ => rep.violations.push(format!("{} does not round-trip", x.show())),
            }
        }
        for t in sys.enumerate(bound, true) {
            rep.checked += 1;
            match self.from_canonical(&sys, &t) {
                Ok(y) if self.in_x(&y) => match self.to_canonical(&sys, &y, &mut memo) {
                    Ok(u) if u == t => {}
                    _ => rep.violations.push(format!("{} does not round-trip", sys.show(&t))),
                },
                _ => rep.violations.push(format!("{} has no preimage in X", sys.show(&t))),
            }
        }
        rep
    }

    fn to_canonical(&self, sys: &System, x: &XTerm, memo: &mut HashMap<usize, Tree>) -> Result<Tree> {
        if let XTerm::Node(v) = x {
            if let Some(t) = memo.get(v) {
                return Ok(t.clone());
            }
        }
        let t = match self.pi(x) {
            PiValue::Leaf(l) => sys.collapse(&Value::Leaf(l), &[])?,
            PiValue::Node(t, a, b) => {
                let ta = self.to_canonical(sys, &a, memo)?;
                let tb = self.to_canonical(sys, &b, memo)?;
                let l = normalize_lifted(&sys.d, &Value::Node(t, 0, 1), &[ta, tb], &|p, q| sys.cmp(p, q))?;
                sys.collapse(&l.payload, &l.leaves)?
            }
        };
        if let XTerm::Node(v) = x {
            memo.insert(*v, t.clone());
        }
        Ok(t)
    }

    fn from_canonical(&self, sys: &System, t: &Tree) -> Result<XTerm> {
        let v = match t.payload() {
            Value::Leaf(l) => PiValue::Leaf(*l),
            Value::Node(n, i, j) => PiValue::Node(
                *n,
                Rc::new(self.from_canonical(sys, &t.children()[*i])?),
                Rc::new(self.from_canonical(sys, &t.children()[*j])?),
            ),
            _ => return Err(Error::Malformed("not a tree value".into())),
        };
        self.pi_inverse(&v).ok_or_else(|| Error::Malformed(format!("{} has no π-preimage", sys.show(t))))
    }
}

/// Every tree whose nodes have 0 or 2 children, with at most `max_nodes` nodes.
pub fn full_binary_trees(max_nodes: usize) -> Vec<Arc<TreeShape>> {
    // each shape as a nested structure, then flattened to parent lists
    #[derive(Clone)]
    enum S {
        L,
        I(Box<S>, Box<S>),
    }
    let mut by_n: Vec<Vec<S>> = vec![Vec::new(); max_nodes + 1];
    if max_nodes >= 1 {
        by_n[1].push(S::L);
    }
    for n in (3..=max_nodes).step_by(2) {
        let mut out = Vec::new();
        for a in (1..n - 1).step_by(2) {
            let b = n - 1 - a;
            for x in &by_n[a] {
                for y in &by_n[b] {
                    out.push(S::I(Box::new(x.clone()), Box::new(y.clone())));
                }
            }
        }
        by_n[n] = out;
    }
    fn flatten(s: &S, parent: Option<usize>, ps: &mut Vec<Option<usize>>, internal: &mut Vec<bool>) {
        let me = ps.len();
        ps.push(parent);
        match s {
            S::L => internal.push(false),
            S::I(a, b) => {
                internal.push(true);
                flatten(a, Some(me), ps, internal);
                flatten(b, Some(me), ps, internal);
            }
        }
    }
    by_n.iter()
        .flatten()
        .map(|s| {
            let (mut ps, mut internal) = (Vec::new(), Vec::new());
            flatten(s, None, &mut ps, &mut internal);
            Arc::new(TreeShape::from_parents(ps, internal).expect("generated trees are well formed"))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// The bump combinator E(X) = (D(X) + 1 + D(X)) × ω.

fn bump_next(v: &Value) -> Value {
    match v {
        Value::Low(s, n) => Value::Low(s.clone(), n + 1),
        Value::Mid(n) => Value::Mid(n + 1),
        Value::High(s, n) => Value::High(s.clone(), n + 1),
        other => other.clone(),
    }
}

/// In ψ₁(bump(D)) every enumerated term has a successor with the same support.
pub fn successor_check(d: &Predilator, bound: usize) -> Report {
    let mut rep = Report::new("successor");
    let sys = System::psi(Predilator::bump(d.clone()));
    let terms = sys.enumerate(bound, true);
    for (i, s) in terms.iter().enumerate() {
        rep.checked += 1;
        let next = match sys.collapse(&bump_next(s.payload()), s.children()) {
            Ok(t) => t,
            Err(e) => {
                rep.violations.push(format!("no successor for {}: {e}", sys.show(s)));
                continue;
            }
        };
        if sys.cmp(s, &next) != Ordering::Less {
            rep.violations.push(format!("successor of {} is not above it", sys.show(s)));
        }
        if next.children() != s.children() {
            rep.violations.push(format!("successor of {} changes the support", sys.show(s)));
        }
        if let Some(r) = terms[i + 1..].iter().find(|r| sys.cmp(r, &next) == Ordering::Less) {
            rep.violations.push(format!("{} lies between {} and its successor", sys.show(r), sys.show(s)));
        }
    }
    rep.notes.push(format!("{} terms of ψ₁({}) up to size {bound}", terms.len(), sys.d.name()));
    rep
}

/// A finite approximation of a termination point of bump(D) that has an
/// element without successor.
#[derive(Debug, Clone)]
pub struct AltTermination {
    pub e: System,
    /// Stage n and element, ascending in ψ₁(E).
    pub elems: Vec<(usize, Tree)>,
    /// B_x over the indices of X↾x.
    pub b: Vec<Value>,
    /// π⁻¹(⟨2, σ_n, 0⟩).
    pub tau: Vec<Tree>,
    /// The element with π(x) = ⟨1,0⟩.
    pub gap: Tree,
    pub report: Report,
}

/// x ↦ π⁻¹(⟨0, D(f)(κ(x)), 0⟩) from ψ₁(D) into ψ₁(bump(D)).
pub fn transport_low(e: &System, t: &Tree, memo: &mut HashMap<u64, Tree>) -> Result<Tree> {
    transport(e, t, memo, |v| Value::Low(Box::new(v.clone()), 0))
}

fn transport(e: &System, t: &Tree, memo: &mut HashMap<u64, Tree>, wrap: impl Fn(&Value) -> Value + Copy) -> Result<Tree> {
    let kids: Vec<Tree> = t.children().iter().map(|c| transport_low(e, c, memo)).collect::<Result<_>>()?;
    let low = matches!(wrap(&Value::Mid(0)), Value::Low(..));
    if low {
        if let Some(r) = memo.get(&t.id()) {
            return Ok(r.clone());
        }
    }
    let r = e.collapse(&wrap(t.payload()), &kids)?;
    if low {
        memo.insert(t.id(), r.clone());
    }
    Ok(r)
}

/// Builds X₀, X₁, … from a strictly descending list in ψ₁(D). Candidates are
/// the terms of ψ₁(E) up to size `bound` together with the τₙ and their supports.
pub fn alt_termination_from_descent(d: &Predilator, descent: &[Tree], bound: usize) -> Result<AltTermination> {
    if descent.is_empty() {
        return Err(Error::Malformed("the descent is empty".into()));
    }
    let dsys = System::psi(d.clone());
    for w in descent.windows(2) {
        if dsys.cmp(&w[1], &w[0]) != Ordering::Less {
            return Err(Error::Malformed("the descent is not strictly decreasing".into()));
        }
    }
    let e = System::psi(Predilator::bump(d.clone()));
    let mut rep = Report::new("alternative termination point");
    let mut memo = HashMap::new();
    let tau: Vec<Tree> = descent
        .iter()
        .map(|x| transport(&e, x, &mut memo, |v| Value::High(Box::new(v.clone()), 0)))
        .collect::<Result<_>>()?;
    let gap = e.collapse(&Value::Mid(0), &[])?;
    let mut pool = e.enumerate(bound, true);
    pool.extend(tau.iter().cloned());
    pool.extend(tau.iter().flat_map(|t| t.descendants()));
    pool.push(gap.clone());
    e.sort(&mut pool);
    pool.dedup();

    // transport of the descent into the low copy is monotone
    let lows: Vec<Tree> = descent.iter().map(|x| transport_low(&e, x, &mut memo)).collect::<Result<_>>()?;
    for w in lows.windows(2) {
        rep.checked += 1;
        if e.cmp(&w[1], &w[0]) != Ordering::Less {
            rep.violations.push("the low transport is not monotone".into());
        }
    }

    let mut stage: HashMap<u64, usize> = HashMap::new();
    for t in &pool {
        if matches!(t.payload(), Value::Low(..) | Value::Mid(0)) {
            stage.insert(t.id(), 0);
        }
    }
    for n in 1..descent.len() {
        let prior: Vec<u64> = stage.keys().copied().collect();
        for t in &pool {
            if matches!(t.payload(), Value::High(..))
                && !stage.contains_key(&t.id())
                && e.cmp(t, &tau[n]) == Ordering::Greater
                && t.children().iter().all(|c| prior.contains(&c.id()))
            {
                stage.insert(t.id(), n);
            }
        }
    }
    let elems: Vec<(usize, Tree)> =
        pool.iter().filter_map(|t| stage.get(&t.id()).map(|&n| (n, t.clone()))).collect();

    let index: HashMap<u64, usize> = elems.iter().enumerate().map(|(i, (_, t))| (t.id(), i)).collect();
    let mut b = Vec::new();
    for (i, (_, t)) in elems.iter().enumerate() {
        let map: Option<Vec<usize>> = t.children().iter().map(|c| index.get(&c.id()).copied()).collect();
        match map {
            Some(m) if m.iter().all(|&j| j < i) => b.push(e.d.act(&m, t.payload())),
            _ => {
                rep.violations.push(format!("support of {} is not in X↾x", e.show(t)));
                b.push(t.payload().clone());
            }
        }
    }
    for (n, t) in tau.iter().enumerate().take(descent.len().saturating_sub(1)) {
        rep.checked += 1;
        if !index.contains_key(&t.id()) {
            rep.violations.push(format!("τ_{n} is missing from X"));
        }
    }
    // no successor of the gap element: each larger element has some τ in X strictly between
    for (n, y) in elems.iter().filter(|(_, y)| e.cmp(&gap, y) == Ordering::Less) {
        rep.checked += 1;
        let witness = tau.iter().find(|t| {
            index.contains_key(&t.id()) && e.cmp(&gap, t) == Ordering::Less && e.cmp(t, y) == Ordering::Less
        });
        if witness.is_none() {
            if *n + 1 >= descent.len() {
                rep.notes.push(format!("{} at the last stage has no witness within the descent depth", e.show(y)));
            } else {
                rep.violations.push(format!("{} is a successor of ⟨1,0⟩", e.show(y)));
            }
        }
    }
    Ok(AltTermination { e, elems, b, tau, gap, report: rep })
}

/// A strictly descending list z, z-1, … in ψ₁(const ℤ).
pub fn const_z_descent(start: i64, len: usize) -> Vec<Tree> {
    let sys = System::psi(Predilator::Const(ConstOrder::Integers));
    (0..len as i64)
        .map(|k| sys.collapse(&Value::Int(start - k), &[]).expect("constant values have empty support"))
        .collect()
}

// ---------------------------------------------------------------------------
// Carriers ℚ ∖ [r, r+1] of the constant-ℚ predilator.

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Carrier {
    Rationals,
    Gap(Rational),
}

impl Carrier {
    pub fn contains(&self, q: &Rational) -> bool {
        match self {
            Carrier::Rationals => true,
            Carrier::Gap(r) => q < r || *q > r + Rational::one(),
        }
    }

    /// Some element strictly between the bounds, which must be elements.
    pub fn pick(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> Option<Rational> {
        let one = Rational::one();
        let two = Rational::from_integer(2);
        let cands: Vec<Rational> = match (lo, hi) {
            (None, None) => vec![Rational::zero()],
            (Some(a), None) => vec![a + &one],
            (None, Some(b)) => vec![b - &one],
            (Some(a), Some(b)) => vec![(a + b) / &two],
        };
        let mut cands = cands;
        if let Carrier::Gap(r) = self {
            let top = r + &one;
            cands.push(match lo {
                Some(a) if *a > top => a + &one,
                _ => &top + &one,
            });
            cands.push(match hi {
                Some(b) if *b < *r => b - &one,
                _ => r - &one,
            });
            if let (Some(a), Some(b)) = (lo, hi) {
                if *a < *r {
                    cands.push((a + b.min(r)) / &two);
                }
                if *b > top {
                    cands.push((a.max(&top) + b) / &two);
                }
            }
        }
        cands.into_iter().find(|c| {
            self.contains(c) && lo.is_none_or(|a| a < c) && hi.is_none_or(|b| c < b)
        })
    }
}

/// All rationals, ordered by |numerator| + denominator.
pub fn rationals() -> impl Iterator<Item = Rational> {
    (1i64..).flat_map(|h| {
        (1..=h).flat_map(move |den| {
            let num = h - den;
            let mut v = vec![Rational::new(num, den)];
            if num != 0 {
                v.push(Rational::new(-num, den));
            }
            v.into_iter().filter(move |q| *q.denom() == den)
        })
    })
}

/// Checks conditions (1) and (2) for ℚ ∖ [r, r+1] with A_q = q on rationals
/// with denominator at most `den`, between r - 3 and r + 4.
pub fn dense_window_check(r: Rational, den: i64) -> Report {
    let mut rep = Report::new("dense window");
    let x = Carrier::Gap(r);
    let top = r + Rational::one();
    let lo = (r - Rational::from_integer(3)).floor().to_integer();
    let hi = (r + Rational::from_integer(4)).ceil().to_integer();
    let mut sample = Vec::new();
    for q in 1..=den {
        for p in lo * q..=hi * q {
            sample.push(Rational::new(p, q));
        }
    }
    sample.sort();
    sample.dedup();
    for q in &sample {
        if x.contains(q) {
            // (1): q is the supremum of the carrier points below it
            let mut eps = Rational::one();
            for _ in 0..8 {
                rep.checked += 1;
                let p = if *q < r {
                    q - &eps / Rational::from_integer(2)
                } else {
                    (q - &eps / Rational::from_integer(2)).max((q + top) / Rational::from_integer(2))
                };
                if !(x.contains(&p) && p < *q && q - p < eps) {
                    rep.violations.push(format!("no carrier point within {eps} below {q}"));
                }
                eps /= Rational::from_integer(2);
            }
        }
        // (2): some element above q
        rep.checked += 1;
        let w = q.max(&top) + Rational::one();
        if !(x.contains(&w) && w > *q) {
            rep.violations.push(format!("no carrier point above {q}"));
        }
    }
    rep.notes.push(format!("{} sample points", sample.len()));
    rep
}

/// Extends a partial isomorphism between two dense unbounded carriers by
/// alternately placing the next unmatched element of each side.
pub fn back_and_forth(x: &Carrier, y: &Carrier, steps: usize) -> std::result::Result<Vec<(Rational, Rational)>, String> {
    let mut pairs: Vec<(Rational, Rational)> = Vec::new();
    let mut xs: Box<dyn Iterator<Item = Rational>> = Box::new(rationals().filter(|q| x.contains(q)));
    let mut ys: Box<dyn Iterator<Item = Rational>> = Box::new(rationals().filter(|q| y.contains(q)));
    for step in 0..steps {
        let forth = step % 2 == 0;
        let (src, src_carrier, dst_carrier) = if forth { (&mut xs, x, y) } else { (&mut ys, y, x) };
        let side = |p: &(Rational, Rational)| if forth { p.0 } else { p.1 };
        let other = |p: &(Rational, Rational)| if forth { p.1 } else { p.0 };
        let a = src.find(|q| !pairs.iter().any(|p| side(p) == *q)).ok_or("source exhausted")?;
        debug_assert!(src_carrier.contains(&a));
        let below = pairs.iter().filter(|p| side(p) < a).max_by(|p, q| side(p).cmp(&side(q))).map(other);
        let above = pairs.iter().filter(|p| side(p) > a).min_by(|p, q| side(p).cmp(&side(q))).map(other);
        let b = dst_carrier
            .pick(below.as_ref(), above.as_ref())
            .ok_or_else(|| format!("stuck placing {a} between {below:?} and {above:?}"))?;
        pairs.push(if forth { (a, b) } else { (b, a) });
    }
    for p in &pairs {
        for q in &pairs {
            if (p.0 < q.0) != (p.1 < q.1) || !x.contains(&p.0) || !y.contains(&p.1) {
                return Err(format!("partial map is not an isomorphism at {} ↦ {}", p.0, p.1));
            }
        }
    }
    Ok(pairs)
}

/// Two gap carriers give non-isomorphic termination points: a point of one is missing from the other.
pub fn distinguishing_point(r1: Rational, r2: Rational) -> Option<Rational> {
    let (x, y) = (Carrier::Gap(r1), Carrier::Gap(r2));
    rationals().take(100_000).find(|q| x.contains(q) && !y.contains(q))
}

// ---------------------------------------------------------------------------
// Constant ℤ: every termination point is isomorphic to ℤ.

#[derive(Debug, Clone)]
pub struct ConstZDemo {
    pub report: Report,
    /// x ↦ A_x when it is onto the window.
    pub iso: Option<Vec<(usize, i64)>>,
}

/// Reads `values` as A_0 < A_1 < … and checks that x ↦ A_x hits every integer
/// between A_0 and the last value; a gap gives a violation of minimality.
pub fn const_z_uniqueness_demo(values: &[i64]) -> ConstZDemo {
    let mut rep = Report::new("constant ℤ");
    for (x, w) in values.windows(2).enumerate() {
        rep.checked += 1;
        if w[1] <= w[0] {
            rep.violations.push(format!("A_{} is not above A_{x}", x + 1));
        } else if w[1] > w[0] + 1 {
            let c = w[1] - 1;
            rep.violations.push(format!(
                "minimality fails at {}: {c} lies below A_{} = {} and above every earlier value",
                x + 1,
                x + 1,
                w[1]
            ));
        }
    }
    let iso = rep.passed().then(|| values.iter().copied().enumerate().collect());
    ConstZDemo { report: rep, iso }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_window_passes_and_descends() {
        let z = z_point_check(-3, 3, 10);
        assert!(z.report.passed(), "{:?}", z.report.violations);
        assert_eq!(&z.descent[..3], &[0, -1, -2]);
    }

    #[test]
    fn single_leaf_tree() {
        let t = Arc::new(TreeShape::from_parents(vec![None], vec![false]).unwrap());
        let fp = tree_fixed_point(t, 5);
        assert_eq!(fp.elems.len(), 1);
        assert_eq!(fp.pi(&fp.elems[0]), PiValue::Leaf(0));
    }

    #[test]
    fn rationals_enumeration_is_injective() {
        let qs: Vec<Rational> = rationals().take(200).collect();
        let mut s = qs.clone();
        s.sort();
        s.dedup();
        assert_eq!(s.len(), qs.len());
    }

    #[test]
    fn gap_membership() {
        let x = Carrier::Gap(Rational::zero());
        assert!(!x.contains(&Rational::new(1, 2)));
        assert!(x.contains(&Rational::new(3, 2)));
    }
}
