//! Collapse terms for ψ₁(D) and ϑ(D), termination prefixes, the conditions
//! on them, height synthesis, unique homomorphisms and Bachmann-Howard
//! collapses.

use crate::error::{malformed, Error, Result};
use crate::order::merge_sort_by;
use crate::predilator::{Predilator, Value};
use crate::sexp::Sexp;
use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, LazyLock, Mutex};

/// A term `σ` over its sorted list of children; structurally equal terms share one node.
#[derive(Clone)]
pub struct Tree(Arc<Node>);

struct Node {
    id: u64,
    payload: Value,
    children: Vec<Tree>,
    height: usize,
}

type InternKey = (Value, Vec<u64>);

static INTERNER: LazyLock<Mutex<HashMap<InternKey, Tree>>> = LazyLock::new(|| Mutex::new(HashMap::new()));
static PREDILATORS: LazyLock<Mutex<Vec<Predilator>>> = LazyLock::new(|| Mutex::new(Vec::new()));

thread_local! {
    static CMP_MEMO: RefCell<HashMap<(u32, u64, u64), Ordering>> = RefCell::new(HashMap::new());
    static VALID_MEMO: RefCell<HashMap<(u32, u64), bool>> = RefCell::new(HashMap::new());
}

impl Tree {
    fn intern(payload: Value, children: Vec<Tree>) -> Tree {
        let key = (payload, children.iter().map(|c| c.id()).collect::<Vec<_>>());
        let mut table = INTERNER.lock().unwrap();
        if let Some(t) = table.get(&key) {
            return t.clone();
        }
        let id = table.len() as u64;
        let height = 1 + children.iter().map(|c| c.height()).max().unwrap_or(0);
        let t = Tree(Arc::new(Node { id, payload: key.0.clone(), children, height }));
        table.insert(key, t.clone());
        t
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn payload(&self) -> &Value {
        &self.0.payload
    }

    pub fn children(&self) -> &[Tree] {
        &self.0.children
    }

    /// Nesting depth; a term without children has height 1.
    pub fn height(&self) -> usize {
        self.0.height
    }

    /// Symbol count of the fully expanded term.
    pub fn size(&self, d: &Predilator) -> usize {
        let sizes: Vec<usize> = self.children().iter().map(|c| c.size(d)).collect();
        d.size(self.payload(), &|i| sizes[i])
    }

    /// Every strict hereditary subterm, without repetitions.
    pub fn descendants(&self) -> Vec<Tree> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut stack: Vec<Tree> = self.children().to_vec();
        while let Some(t) = stack.pop() {
            if seen.insert(t.id()) {
                stack.extend(t.children().iter().cloned());
                out.push(t);
            }
        }
        out
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Tree) -> bool {
        self.id() == other.id()
    }
}

impl Eq for Tree {}

impl Hash for Tree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.id().hash(state)
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree#{}({:?}; {:?})", self.id(), self.payload(), self.children())
    }
}

/// Which order a family of trees carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// ψ₁(D): compare payloads in D of the merged children.
    Psi,
    /// ϑ(D): the Bachmann-Howard order.
    Theta,
}

/// A predilator together with the order placed on its trees.
#[derive(Debug, Clone)]
pub struct System {
    pub d: Predilator,
    pub mode: Mode,
    key: u32,
}

/// A D-value over an explicit sorted list of leaves from some order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lifted<E> {
    pub payload: Value,
    pub leaves: Vec<E>,
}

/// Merges two ascending lists, returning the union and both index maps.
pub fn merge_leaves<E: Clone>(
    a: &[E],
    b: &[E],
    cmp: &impl Fn(&E, &E) -> Ordering,
) -> (Vec<E>, Vec<usize>, Vec<usize>) {
    let (mut out, mut ma, mut mb) = (Vec::new(), Vec::new(), Vec::new());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let o = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => cmp(x, y),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match o {
            Ordering::Less => {
                ma.push(out.len());
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                mb.push(out.len());
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                ma.push(out.len());
                mb.push(out.len());
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    (out, ma, mb)
}

/// Compares two lifted values in D of the union of their leaves.
pub fn lifted_cmp<E: Clone>(
    d: &Predilator,
    a: &Lifted<E>,
    b: &Lifted<E>,
    cmp: &impl Fn(&E, &E) -> Ordering,
) -> Ordering {
    let (_, ma, mb) = merge_leaves(&a.leaves, &b.leaves, cmp);
    d.cmp(&d.act(&ma, &a.payload), &d.act(&mb, &b.payload))
}

/// Canonical form of a D-value whose base indices refer to `leaves` in any
/// order: leaves are sorted, merged when equal and cut down to the support.
pub fn normalize_lifted<E: Clone>(
    d: &Predilator,
    payload: &Value,
    leaves: &[E],
    cmp: &impl Fn(&E, &E) -> Ordering,
) -> Result<Lifted<E>> {
    let used = d.supp(payload);
    if used.last().is_some_and(|&i| i >= leaves.len()) {
        return malformed(format!("payload refers to leaf {} of {}", used.last().unwrap(), leaves.len()));
    }
    let mut order = used.clone();
    merge_sort_by(&mut order, &mut |&i, &j| cmp(&leaves[i], &leaves[j]));
    let mut sorted: Vec<E> = Vec::new();
    let mut map = vec![0usize; leaves.len()];
    for &i in &order {
        match sorted.last() {
            Some(last) if cmp(last, &leaves[i]) == Ordering::Equal => map[i] = sorted.len() - 1,
            _ => {
                map[i] = sorted.len();
                sorted.push(leaves[i].clone());
            }
        }
    }
    let payload = d.act(&map, payload);
    d.validate(sorted.len(), &payload)?;
    Ok(Lifted { payload, leaves: sorted })
}

impl System {
    fn register(d: Predilator, mode: Mode) -> System {
        let mut reg = PREDILATORS.lock().unwrap();
        let idx = match reg.iter().position(|p| *p == d) {
            Some(i) => i,
            None => {
                reg.push(d.clone());
                reg.len() - 1
            }
        };
        let key = (idx as u32) * 2 + (mode == Mode::Theta) as u32;
        System { d, mode, key }
    }

    pub fn psi(d: Predilator) -> System {
        System::register(d, Mode::Psi)
    }

    pub fn theta(d: Predilator) -> System {
        System::register(d, Mode::Theta)
    }

    pub fn cmp(&self, a: &Tree, b: &Tree) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        let key = (self.key, a.id(), b.id());
        if let Some(o) = CMP_MEMO.with(|m| m.borrow().get(&key).copied()) {
            return o;
        }
        let o = match self.mode {
            Mode::Psi => self.payload_cmp(a, b),
            Mode::Theta => match (self.theta_less(a, b), self.theta_less(b, a)) {
                (true, _) => Ordering::Less,
                (false, true) => Ordering::Greater,
                // neither: surfaced by the linearity suite
                (false, false) => Ordering::Equal,
            },
        };
        CMP_MEMO.with(|m| m.borrow_mut().insert(key, o));
        o
    }

    /// Compares the payloads of `a` and `b` in D of their merged children.
    pub fn payload_cmp(&self, a: &Tree, b: &Tree) -> Ordering {
        let (_, ma, mb) = merge_leaves(a.children(), b.children(), &|x, y| self.cmp(x, y));
        self.d.cmp(&self.d.act(&ma, a.payload()), &self.d.act(&mb, b.payload()))
    }

    /// ϑσ < ϑτ iff (σ < τ and supp σ <_fin ϑτ) or ϑσ ≤_fin supp τ.
    fn theta_less(&self, a: &Tree, b: &Tree) -> bool {
        (self.payload_cmp(a, b) == Ordering::Less
            && a.children().iter().all(|c| self.cmp(c, b) == Ordering::Less))
            || b.children().iter().any(|c| self.cmp(a, c) != Ordering::Greater)
    }

    /// Builds the term for a payload whose indices refer to `leaves`.
    pub fn build(&self, payload: &Value, leaves: &[Tree]) -> Result<Tree> {
        let l = normalize_lifted(&self.d, payload, leaves, &|x, y| self.cmp(x, y))?;
        Ok(Tree::intern(l.payload, l.leaves))
    }

    /// π⁻¹ on D(ψ₁(D)): builds the term and checks the range condition at the root.
    pub fn collapse(&self, payload: &Value, leaves: &[Tree]) -> Result<Tree> {
        let t = self.build(payload, leaves)?;
        if let Some(c) = t.children().iter().find(|c| self.cmp(c, &t) != Ordering::Less) {
            return Err(Error::Range(format!("child {} is not below {}", self.show(c), self.show(&t))));
        }
        Ok(t)
    }

    /// Hereditary range condition: every child lies below its parent.
    pub fn is_valid(&self, t: &Tree) -> bool {
        let key = (self.key, t.id());
        if let Some(v) = VALID_MEMO.with(|m| m.borrow().get(&key).copied()) {
            return v;
        }
        let v = t
            .children()
            .iter()
            .all(|c| self.is_valid(c) && self.cmp(c, t) == Ordering::Less);
        VALID_MEMO.with(|m| m.borrow_mut().insert(key, v));
        v
    }

    /// G₀(π(t)) in simplified form: the children of `t`.
    pub fn g0(&self, t: &Tree) -> Vec<Tree> {
        t.children().to_vec()
    }

    pub fn sort(&self, terms: &mut Vec<Tree>) {
        merge_sort_by(terms, &mut |a, b| self.cmp(a, b));
    }

    /// All terms of size at most `bound`, sorted by the order; with
    /// `valid_only` the range condition is imposed hereditarily.
    pub fn enumerate(&self, bound: usize, valid_only: bool) -> Vec<Tree> {
        let mut pool: Vec<(Tree, usize)> = Vec::new();
        for s in 1..=bound {
            let mut fresh = Vec::new();
            for m in 0..s {
                if m > pool.len() {
                    break;
                }
                for payload in self.d.enumerate_full_support(m, s) {
                    let base_size = self.d.size(&payload, &|_| 1);
                    if base_size > s {
                        continue;
                    }
                    let mut pick = Vec::new();
                    self.choose(&pool, &payload, m, 0, s, &mut pick, &mut fresh, valid_only);
                }
            }
            pool.extend(fresh.into_iter().map(|t| (t, s)));
            merge_sort_by(&mut pool, &mut |a, b| self.cmp(&a.0, &b.0));
        }
        pool.into_iter().map(|(t, _)| t).collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn choose(
        &self,
        pool: &[(Tree, usize)],
        payload: &Value,
        m: usize,
        from: usize,
        target: usize,
        pick: &mut Vec<usize>,
        out: &mut Vec<Tree>,
        valid_only: bool,
    ) {
        if pick.len() == m {
            let sizes: Vec<usize> = pick.iter().map(|&i| pool[i].1).collect();
            if self.d.size(payload, &|i| sizes[i]) != target {
                return;
            }
            let children: Vec<Tree> = pick.iter().map(|&i| pool[i].0.clone()).collect();
            let t = Tree::intern(payload.clone(), children);
            if !valid_only || self.is_valid(&t) {
                out.push(t);
            }
            return;
        }
        for i in from..pool.len() {
            if pool.len() - i < m - pick.len() {
                break;
            }
            pick.push(i);
            self.choose(pool, payload, m, i + 1, target, pick, out, valid_only);
            pick.pop();
        }
    }

    pub fn to_sexp(&self, t: &Tree) -> Sexp {
        let head = if self.mode == Mode::Psi { "cl" } else { "th" };
        let mut items = vec![self.d.to_sexp(t.payload())];
        items.extend(t.children().iter().map(|c| self.to_sexp(c)));
        Sexp::tagged(head, items)
    }

    pub fn show(&self, t: &Tree) -> String {
        self.to_sexp(t).to_string()
    }

    /// Reads `(cl <payload> <child>...)`; payload indices refer to the listed children.
    pub fn from_sexp(&self, sx: &Sexp) -> Result<Tree> {
        let head = if self.mode == Mode::Psi { "cl" } else { "th" };
        let args = sx.expect_tagged(head)?;
        let (payload, kids) = args
            .split_first()
            .ok_or_else(|| Error::Parse(format!("({head}) needs a payload")))?;
        let leaves: Vec<Tree> = kids.iter().map(|k| self.from_sexp(k)).collect::<Result<_>>()?;
        let payload = self.d.from_sexp(payload)?;
        self.build(&payload, &leaves)
    }

    pub fn parse(&self, src: &str) -> Result<Tree> {
        self.from_sexp(&crate::sexp::parse(src)?)
    }
}

/// Terms of a ν-collapse for finite ν: π(t) = (α, τ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuTerm {
    pub alpha: usize,
    pub payload: Value,
    pub children: Vec<NuTerm>,
}

impl NuTerm {
    pub fn from_tree(t: &Tree, alpha: &impl Fn(&Tree) -> usize) -> NuTerm {
        NuTerm {
            alpha: alpha(t),
            payload: t.payload().clone(),
            children: t.children().iter().map(|c| NuTerm::from_tree(c, alpha)).collect(),
        }
    }

    /// Lexicographic on ν × D(X).
    pub fn cmp(d: &Predilator, a: &NuTerm, b: &NuTerm) -> Ordering {
        a.alpha.cmp(&b.alpha).then_with(|| {
            let (_, ma, mb) = merge_leaves(&a.children, &b.children, &|x, y| NuTerm::cmp(d, x, y));
            d.cmp(&d.act(&ma, &a.payload), &d.act(&mb, &b.payload))
        })
    }

    /// G^D_γ(t): the term and its G_γ when its level reaches γ.
    pub fn g_term(&self, gamma: usize) -> Vec<&NuTerm> {
        if self.alpha >= gamma {
            let mut out = vec![self];
            out.extend(self.g(gamma));
            out
        } else {
            Vec::new()
        }
    }

    /// G_γ(τ) for the payload τ of this term.
    pub fn g(&self, gamma: usize) -> Vec<&NuTerm> {
        self.children.iter().flat_map(|c| c.g_term(gamma)).collect()
    }

    /// Range condition G_α(τ) <_fin (α, τ), imposed hereditarily.
    pub fn range_condition(&self, d: &Predilator) -> bool {
        self.children.iter().all(|c| c.range_condition(d))
            && self.g(self.alpha).iter().all(|s| NuTerm::cmp(d, s, self) == Ordering::Less)
    }
}

/// A_x ∈ D(x) for x in a finite initial segment 0..n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminationPrefix {
    pub values: Vec<Value>,
}

/// π(x) ∈ D(n) for x in 0..n with supp π(x) <_fin x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    pub values: Vec<Value>,
}

/// π(x) = D(ι_{X↾x}^X)(A_x); inclusions of initial segments keep indices.
pub fn termination_to_fp(p: &TerminationPrefix) -> Fragment {
    Fragment { values: p.values.iter().map(|a| a.clone()).collect() }
}

/// A_x is π(x) read in D(X↾x), which needs supp π(x) <_fin x.
pub fn fp_to_termination(d: &Predilator, fp: &Fragment) -> Result<TerminationPrefix> {
    let mut values = Vec::new();
    for (x, v) in fp.values.iter().enumerate() {
        if d.supp(v).iter().any(|&s| s >= x) {
            return Err(Error::Range(format!("support of π({x}) is not below {x}")));
        }
        d.validate(x, v)?;
        values.push(v.clone());
    }
    Ok(TerminationPrefix { values })
}

/// Reads a sorted, ◁-closed list of terms as a fragment.
pub fn terms_to_fragment(sys: &System, terms: &[Tree]) -> Result<Fragment> {
    let index: HashMap<u64, usize> = terms.iter().enumerate().map(|(i, t)| (t.id(), i)).collect();
    let mut values = Vec::new();
    for (x, t) in terms.iter().enumerate() {
        if x > 0 && sys.cmp(&terms[x - 1], t) != Ordering::Less {
            return malformed("terms are not strictly increasing");
        }
        let map: Vec<usize> = t
            .children()
            .iter()
            .map(|c| index.get(&c.id()).copied().ok_or_else(|| Error::Malformed("terms are not ◁-closed".into())))
            .collect::<Result<_>>()?;
        values.push(sys.d.act(&map, t.payload()));
    }
    Ok(Fragment { values })
}

/// Rebuilds the terms of a fragment: x ↦ π⁻¹(π(x)).
pub fn fragment_to_terms(sys: &System, fp: &Fragment) -> Result<Vec<Tree>> {
    let mut out: Vec<Tree> = Vec::new();
    for v in &fp.values {
        let t = sys.collapse(v, &out)?;
        out.push(t);
    }
    Ok(out)
}

/// The D-sequence termination prefix determined by an initial list of ψ₁(D).
pub fn prefix_of_terms(sys: &System, terms: &[Tree]) -> Result<TerminationPrefix> {
    fp_to_termination(&sys.d, &terms_to_fragment(sys, terms)?)
}

/// Outcome of checking conditions (1)-(4) on a finite prefix.
#[derive(Debug, Clone, Default)]
pub struct ConditionReport {
    pub minimality: Vec<String>,
    pub cofinality: Vec<String>,
    pub height: Vec<String>,
    pub strong: Vec<String>,
    /// Enumerated values of D(X) above the top of the prefix.
    pub horizon: usize,
    pub checked: usize,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.minimality.is_empty() && self.cofinality.is_empty() && self.height.is_empty() && self.strong.is_empty()
    }
}

/// Checks the termination-point conditions on a finite prefix against all
/// values of size at most `bound`. Conditions (2) and (4) are checked for
/// values up to the top of the prefix; values beyond it are counted as horizon.
pub fn check_conditions(d: &Predilator, p: &TerminationPrefix, bound: usize) -> ConditionReport {
    let mut rep = ConditionReport::default();
    let a = &p.values;
    let n = a.len();
    for x in 0..n {
        for y in 0..x {
            if d.cmp(&a[y], &a[x]) != Ordering::Less {
                rep.minimality.push(format!("A_{y} is not below A_{x}"));
            }
        }
        for s in d.enumerate(x, bound) {
            rep.checked += 1;
            if d.cmp(&s, &a[x]) != Ordering::Less {
                continue;
            }
            let supp = d.supp(&s);
            let witness = (0..x).any(|y| {
                d.cmp(&s, &a[y]) != Ordering::Greater && (s == a[y] || supp.contains(&y))
            });
            if !witness {
                rep.minimality.push(format!("{} lies below A_{x} but above every earlier A_y", d.to_sexp(&s)));
            }
        }
    }
    if n > 0 {
        for s in d.enumerate(n, bound) {
            rep.checked += 1;
            if d.cmp(&s, &a[n - 1]) == Ordering::Greater {
                rep.horizon += 1;
                continue;
            }
            let supp = d.supp(&s);
            let first = (0..n).find(|&x| d.cmp(&s, &a[x]) != Ordering::Greater);
            let smallest = (0..n).find(|&x| supp.iter().all(|&q| q <= x) && d.cmp(&s, &a[x]) != Ordering::Greater);
            if first.is_none() {
                rep.cofinality.push(format!("{} is above every A_x", d.to_sexp(&s)));
            }
            if smallest.is_none() {
                rep.strong.push(format!("no smallest bound for {}", d.to_sexp(&s)));
            }
        }
    }
    let rel = PrefixPrecedence { d: d.clone(), values: a.clone() };
    for x in 0..n as u64 {
        let mut fuel = DEFAULT_FUEL;
        match synthesize_height(&rel, x, &mut fuel) {
            Ok(_) => {}
            Err(e) => rep.height.push(format!("height synthesis failed at {x}: {e:?}")),
        }
    }
    if let Err(v) = check_heights(&rel, n as u64) {
        rep.height.push(v);
    }
    rep
}

/// Relation l ≺ k on natural-number codes, given by the ≺-predecessors of k.
pub trait Precedence {
    fn below(&self, k: u64) -> Vec<u64>;
}

/// x ≺ y iff x ∈ supp A_y on a finite prefix.
pub struct PrefixPrecedence {
    pub d: Predilator,
    pub values: Vec<Value>,
}

impl Precedence for PrefixPrecedence {
    fn below(&self, k: u64) -> Vec<u64> {
        match self.values.get(k as usize) {
            Some(v) => self.d.supp(v).into_iter().map(|x| x as u64).collect(),
            None => Vec::new(),
        }
    }
}

/// The integers coded as 0, -1, 1, -2, 2, … with z-1 ≺ z.
pub struct IntegerChain;

pub fn int_code(z: i64) -> u64 {
    if z >= 0 {
        2 * z as u64
    } else {
        2 * (-z) as u64 - 1
    }
}

pub fn int_decode(c: u64) -> i64 {
    if c % 2 == 0 {
        (c / 2) as i64
    } else {
        -(c.div_ceil(2) as i64)
    }
}

impl Precedence for IntegerChain {
    fn below(&self, k: u64) -> Vec<u64> {
        vec![int_code(int_decode(k) - 1)]
    }
}

pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exhausted {
    pub steps: u64,
    /// The longest ≺-descent found, starting at the queried element.
    pub descent: Vec<u64>,
}

/// Height h(x): the least n such that no ≺-descending sequence of length n
/// starts at x. Codes in such sequences are bounded by f(x, n-1), where
/// f(x,0) = x and f(x,n) = max of f(x,n-1) and all l ≺ k ≤ f(x,n-1); the
/// bounded search space is explored depth first.
pub fn synthesize_height(rel: &dyn Precedence, x: u64, fuel: &mut u64) -> std::result::Result<u64, Exhausted> {
    let start = *fuel;
    let mut bound = x;
    let mut best = vec![x];
    let mut n = 1u64;
    loop {
        // bound = f(x, n-1); look for a descent of length n
        let mut path = vec![x];
        let found = descend(rel, &mut path, n as usize, bound, fuel);
        if path.len() > best.len() {
            best = path.clone();
        }
        if *fuel == 0 {
            return Err(Exhausted { steps: start, descent: best });
        }
        if !found {
            return Ok(n);
        }
        let mut next = bound;
        for k in 0..=bound {
            if *fuel == 0 {
                return Err(Exhausted { steps: start, descent: best });
            }
            *fuel -= 1;
            for l in rel.below(k) {
                next = next.max(l);
            }
        }
        bound = next;
        n += 1;
    }
}

fn descend(rel: &dyn Precedence, path: &mut Vec<u64>, len: usize, bound: u64, fuel: &mut u64) -> bool {
    if path.len() >= len {
        return true;
    }
    if *fuel == 0 {
        return false;
    }
    *fuel -= 1;
    let last = *path.last().unwrap();
    for l in rel.below(last) {
        if l > bound {
            continue;
        }
        path.push(l);
        if descend(rel, path, len, bound, fuel) {
            return true;
        }
        path.pop();
    }
    false
}

/// Checks h(x) < h(y) whenever x ≺ y among codes below `n`.
pub fn check_heights(rel: &dyn Precedence, n: u64) -> std::result::Result<Vec<u64>, String> {
    let mut h = Vec::new();
    for x in 0..n {
        let mut fuel = DEFAULT_FUEL;
        h.push(synthesize_height(rel, x, &mut fuel).map_err(|e| format!("fuel exhausted at {x}: {e:?}"))?);
    }
    for y in 0..n {
        for x in rel.below(y) {
            if x < n && h[x as usize] >= h[y as usize] {
                return Err(format!("{x} ≺ {y} but h({x}) = {} ≥ h({y}) = {}", h[x as usize], h[y as usize]));
            }
        }
    }
    Ok(h)
}

/// The unique homomorphism from a fragment into ψ₁(D):
/// f(x) = π⁻¹(D(f↾S)(π(x))) with S the support of π(x).
pub fn unique_hom(sys: &System, source: &Fragment) -> Result<Vec<Tree>> {
    let mut images: Vec<Tree> = Vec::new();
    for (x, v) in source.values.iter().enumerate() {
        if sys.d.supp(v).iter().any(|&s| s >= x) {
            return Err(Error::Range(format!("support of π({x}) is not below {x}")));
        }
        let t = sys.collapse(v, &images)?;
        images.push(t);
    }
    Ok(images)
}

/// Checks that `f` is an embedding and respects the sequences:
/// D(f↾(X↾x))(A_x) = B_{f(x)}, with B read off the target terms.
pub fn check_hom(sys: &System, source: &Fragment, images: &[Tree]) -> Vec<String> {
    let mut issues = Vec::new();
    for w in images.windows(2) {
        if sys.cmp(&w[0], &w[1]) != Ordering::Less {
            issues.push(format!("not monotone at {}", sys.show(&w[1])));
        }
    }
    for (x, v) in source.values.iter().enumerate() {
        match sys.build(v, &images[..x]) {
            Ok(t) if t == images[x] => {}
            _ => issues.push(format!("B_f({x}) differs from D(f)(A_{x})")),
        }
    }
    issues
}

/// Checks the Bachmann-Howard conditions for `collapse: D(X) → X` on a
/// sorted sample of X:
/// (i) σ < τ and supp σ <_fin θ(τ) imply θ(σ) < θ(τ);
/// (ii) supp σ <_fin θ(σ).
pub fn bh_collapse_check<E: Clone>(
    d: &Predilator,
    sample: &[E],
    cmp: &impl Fn(&E, &E) -> Ordering,
    collapse: &impl Fn(&Value) -> Result<E>,
    bound: usize,
    show: &impl Fn(&E) -> String,
) -> Vec<String> {
    let mut issues = Vec::new();
    let vals = d.enumerate(sample.len(), bound);
    let mut images = Vec::new();
    for v in &vals {
        match collapse(v) {
            Ok(e) => images.push(e),
            Err(err) => {
                issues.push(format!("collapse undefined at {}: {err}", d.to_sexp(v)));
                return issues;
            }
        }
    }
    for (v, e) in vals.iter().zip(&images) {
        for s in d.supp(v) {
            if cmp(&sample[s], e) != Ordering::Less {
                issues.push(format!("(ii) fails: {} not below θ({})", show(&sample[s]), d.to_sexp(v)));
            }
        }
    }
    for (i, s) in vals.iter().enumerate() {
        for (j, t) in vals.iter().enumerate() {
            if d.cmp(s, t) != Ordering::Less {
                continue;
            }
            if d.supp(s).iter().all(|&q| cmp(&sample[q], &images[j]) == Ordering::Less)
                && cmp(&images[i], &images[j]) != Ordering::Less
            {
                issues.push(format!("(i) fails: θ({}) ≮ θ({})", d.to_sexp(s), d.to_sexp(t)));
            }
        }
    }
    issues
}

/// The embedding of ϑ(D) into a Bachmann-Howard fixed point:
/// e(ϑ(σ)) = Θ(D(e)(σ)), with leaves given in the order of the children.
pub fn bh_initial_embed<E: Clone>(
    t: &Tree,
    collapse: &impl Fn(&Value, &[E]) -> Result<E>,
    memo: &mut HashMap<u64, E>,
) -> Result<E> {
    if let Some(e) = memo.get(&t.id()) {
        return Ok(e.clone());
    }
    let leaves: Vec<E> = t
        .children()
        .iter()
        .map(|c| bh_initial_embed(c, collapse, memo))
        .collect::<Result<_>>()?;
    let e = collapse(t.payload(), &leaves)?;
    memo.insert(t.id(), e.clone());
    Ok(e)
}

/// A 1-fixed point of ω∘D: an order with an embedding κ into ω^{D(·)} whose
/// range is given by the range condition.
pub trait OmegaFixedPoint {
    type Elem: Clone;

    fn d(&self) -> &Predilator;

    fn cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// κ(s): the members of a weakly decreasing sequence in D over the leaves.
    fn kappa(&self, s: &Self::Elem) -> Result<(Vec<Value>, Vec<Self::Elem>)>;

    /// κ⁻¹ of a weakly decreasing sequence over sorted leaves.
    fn kappa_inv(&self, members: &[Value], leaves: &[Self::Elem]) -> Result<Self::Elem>;

    /// Θ(σ) = κ⁻¹(κ(m) + ω^σ) for m the largest element of supp σ
    /// (κ(m) read as ⟨⟩ when the support is empty). The sum keeps the members
    /// of κ(m) that are at least σ and appends σ.
    fn theta(&self, payload: &Value, leaves: &[Self::Elem]) -> Result<Self::Elem> {
        let d = self.d().clone();
        let sigma = normalize_lifted(&d, payload, leaves, &|a, b| self.cmp(a, b))?;
        let (base, base_leaves) = match sigma.leaves.last() {
            Some(m) => self.kappa(m)?,
            None => (Vec::new(), Vec::new()),
        };
        let (merged, mb, ms) = merge_leaves(&base_leaves, &sigma.leaves, &|a, b| self.cmp(a, b));
        let top = d.act(&ms, &sigma.payload);
        let mut members: Vec<Value> = base
            .iter()
            .map(|v| d.act(&mb, v))
            .take_while(|v| d.cmp(v, &top) != Ordering::Less)
            .collect();
        members.push(top);
        let seq = Predilator::omega(d.clone());
        let l = normalize_lifted(&seq, &Value::Seq(members), &merged, &|a, b| self.cmp(a, b))?;
        match l.payload {
            Value::Seq(ms) => self.kappa_inv(&ms, &l.leaves),
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goodstein::GTerm;

    #[test]
    fn coded_naturals_order() {
        let sys = System::psi(Predilator::Goodstein);
        let mut nat = sys.collapse(&Value::G(GTerm::zero()), &[]).unwrap();
        for _ in 0..6 {
            let next = sys.collapse(&Value::G(GTerm(vec![(GTerm::zero(), 0)])), &[nat.clone()]).unwrap();
            assert_eq!(sys.cmp(&nat, &next), Ordering::Less);
            nat = next;
        }
    }

    #[test]
    fn enumeration_is_sorted_and_valid() {
        let sys = System::psi(Predilator::Goodstein);
        let terms = sys.enumerate(7, true);
        assert!(terms.len() > 3);
        for w in terms.windows(2) {
            assert_eq!(sys.cmp(&w[0], &w[1]), Ordering::Less);
        }
        assert!(terms.iter().all(|t| sys.is_valid(t)));
    }

    #[test]
    fn parse_print_roundtrip() {
        let sys = System::psi(Predilator::Goodstein);
        for t in sys.enumerate(7, false) {
            assert_eq!(sys.parse(&sys.show(&t)).unwrap(), t);
        }
    }

    #[test]
    fn integer_chain_exhausts_fuel() {
        let mut fuel = DEFAULT_FUEL;
        let e = synthesize_height(&IntegerChain, int_code(0), &mut fuel).unwrap_err();
        assert!(e.descent.len() >= 10);
        for w in e.descent.windows(2) {
            assert_eq!(int_decode(w[1]), int_decode(w[0]) - 1);
        }
    }

    #[test]
    fn codes_roundtrip() {
        for z in -50..50 {
            assert_eq!(int_decode(int_code(z)), z);
        }
    }
}
