//! Embeddings between the fixed points of G and W and the notation systems.

use crate::error::{Error, Result};
use crate::fixpoint::{bh_initial_embed, normalize_lifted, Lifted, OmegaFixedPoint, System, Tree};
use crate::goodstein::{aca_backward_f, aca_forward_g, GTerm, WTerm};
use crate::notations::nf::{collapse_g, normalize};
use crate::notations::{Low, Nf, Ot, Phi, P};
use crate::order::Tower;
use crate::predilator::{Predilator, Value};
use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;

/// Outcome of a monotonicity check of one map on an ascending list of sources.
#[derive(Debug, Clone, Default)]
pub struct EmbeddingReport {
    pub map: String,
    pub bound: usize,
    pub terms: usize,
    pub pairs: usize,
    pub violations: Vec<String>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `f` is strictly monotone on `items`, which must be strictly ascending.
pub fn check_monotone<S, T>(
    map: &str,
    bound: usize,
    items: &[S],
    f: impl Fn(&S) -> Result<T>,
    cmp: impl Fn(&T, &T) -> Ordering,
    show: impl Fn(&S) -> String,
) -> EmbeddingReport {
    let mut rep = EmbeddingReport { map: map.into(), bound, terms: items.len(), ..Default::default() };
    let mut images = Vec::new();
    for s in items {
        match f(s) {
            Ok(t) => images.push(Some(t)),
            Err(e) => {
                rep.violations.push(format!("undefined at {}: {e}", show(s)));
                images.push(None);
            }
        }
    }
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if let (Some(a), Some(b)) = (&images[i], &images[j]) {
                rep.pairs += 1;
                if cmp(a, b) != Ordering::Less {
                    rep.violations.push(format!("{} < {} but images are not increasing", show(&items[i]), show(&items[j])));
                }
            }
        }
    }
    rep
}

// ---------------------------------------------------------------------------
// The Goodstein side: 𝔠, κ_C and the suborder S of ψ₁(G).

/// κ: G(C) → 𝔠, where the leaves are ϑ-terms of 𝔠.
pub fn kappa_c(g: &GTerm, leaves: &[Nf]) -> Result<Nf> {
    let mut out = Vec::new();
    for (gamma, c) in &g.0 {
        let arg = leaves[*c]
            .as_theta()
            .ok_or_else(|| Error::Malformed(format!("coefficient {} is not a ϑ-term", leaves[*c])))?;
        out.push((kappa_c(gamma, leaves)?, Low::theta(arg.clone())));
    }
    Ok(Nf(out))
}

/// The collapse σ ↦ ϑ(κ(σ)) on G(C).
pub fn theta_kappa_c(v: &Value, leaves: &[Nf]) -> Result<Nf> {
    match v {
        Value::G(g) => Ok(Nf::theta_term(kappa_c(g, leaves)?)),
        _ => Err(Error::Malformed("κ_C expects a G-value".into())),
    }
}

/// κ⁻¹ on 𝔠: the G-value over sorted ϑ-term leaves.
pub fn kappa_c_inverse(x: &Nf) -> Result<Lifted<Nf>> {
    fn go(x: &Nf, leaves: &mut Vec<Nf>) -> Result<GTerm> {
        let mut out = Vec::new();
        for (g, d) in &x.0 {
            let Low::Theta(arg) = d else {
                return Err(Error::Malformed(format!("{x} does not have collapsed coefficients")));
            };
            let exp = go(g, leaves)?;
            leaves.push(Nf::theta_term((**arg).clone()));
            out.push((exp, leaves.len() - 1));
        }
        Ok(GTerm(out))
    }
    let mut leaves = Vec::new();
    let g = go(x, &mut leaves)?;
    normalize_lifted(&Predilator::Goodstein, &Value::G(g), &leaves, &Nf::cmp)
}

/// ϑ-terms of 𝔠: images ϑ(g(σ)) for σ below Ω of size at most `bound`,
/// together with the coded naturals up to `naturals`, ascending.
pub fn c_sample(bound: usize, naturals: usize) -> Vec<Nf> {
    let mut out: Vec<Nf> = crate::notations::nf::enumerate_low(bound).iter().map(|d| Nf::theta_term(collapse_g(d))).collect();
    out.extend((1..=naturals).map(Nf::coded));
    out.sort_by(Nf::cmp);
    out.dedup();
    out
}

pub fn psi1g_system() -> System {
    System::psi(Predilator::Goodstein)
}

/// The coded natural n̄ in ψ₁(G): 0̄ = π⁻¹(0), (n+1)̄ = π⁻¹((1+X)⁰·(1+n̄)).
pub fn psi1g_coded(n: usize) -> Tree {
    let sys = psi1g_system();
    let mut t = sys.collapse(&Value::G(GTerm::zero()), &[]).expect("0 is in range");
    for _ in 0..n {
        t = sys.collapse(&Value::G(GTerm(vec![(GTerm::zero(), 0)])), &[t]).expect("successor is in range");
    }
    t
}

/// e: ψ₁(G) → C, e(t) = ϑ(κ_C(G(e)(π(t)))).
pub fn psi1g_to_c(t: &Tree, memo: &mut HashMap<u64, Nf>) -> Result<Nf> {
    if let Some(x) = memo.get(&t.id()) {
        return Ok(x.clone());
    }
    let leaves: Vec<Nf> = t.children().iter().map(|c| psi1g_to_c(c, memo)).collect::<Result<_>>()?;
    let l = normalize_lifted(&Predilator::Goodstein, t.payload(), &leaves, &Nf::cmp)?;
    let x = theta_kappa_c(&l.payload, &l.leaves)?;
    memo.insert(t.id(), x.clone());
    Ok(x)
}

/// ψ₁(G) → ϑ(ε_{Ω+1}) by evaluating the image in C.
pub fn psi1g_to_bhord(t: &Tree) -> Result<Ot> {
    Ok(psi1g_to_c(t, &mut HashMap::new())?.eval())
}

/// The suborder S = S⁺ ∩ ψ₁(G) whose coefficients are coded naturals,
/// with κ: S → (ω∘G)(S).
pub struct GoodsteinS {
    pub sys: System,
    coded: RefCell<Vec<Tree>>,
}

impl Default for GoodsteinS {
    fn default() -> Self {
        GoodsteinS::new()
    }
}

impl GoodsteinS {
    pub fn new() -> GoodsteinS {
        GoodsteinS { sys: psi1g_system(), coded: RefCell::new(vec![psi1g_coded(0)]) }
    }

    pub fn coded(&self, n: usize) -> Tree {
        let mut c = self.coded.borrow_mut();
        while c.len() <= n {
            let last = c.last().unwrap().clone();
            let next = self.sys.collapse(&Value::G(GTerm(vec![(GTerm::zero(), 0)])), &[last]).expect("successor");
            c.push(next);
        }
        c[n].clone()
    }

    /// The n with t = n̄, if any.
    pub fn coded_value(&self, t: &Tree) -> Option<usize> {
        match t.payload() {
            Value::G(g) if g.is_zero() => Some(0),
            Value::G(g) => match g.0.as_slice() {
                [(e, 0)] if e.is_zero() && t.children().len() == 1 => Some(self.coded_value(&t.children()[0])? + 1),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn in_s_plus(&self, t: &Tree) -> bool {
        let Value::G(g) = t.payload() else { return false };
        g.0.iter().all(|(_, c)| self.coded_value(&t.children()[*c]).is_some())
            && t.children().iter().all(|c| self.in_s_plus(c))
    }

    pub fn in_s(&self, t: &Tree) -> bool {
        self.in_s_plus(t) && self.sys.is_valid(t)
    }

    /// κ(s) as a lifted sequence: each exponent repeated 1+m times.
    pub fn kappa_lifted(&self, t: &Tree) -> Result<Lifted<Tree>> {
        let Value::G(g) = t.payload() else {
            return Err(Error::Malformed("not a G-term".into()));
        };
        let mut members = Vec::new();
        for (gamma, c) in &g.0 {
            let m = self
                .coded_value(&t.children()[*c])
                .ok_or_else(|| Error::Malformed(format!("coefficient of {} is not a coded natural", self.sys.show(t))))?;
            members.extend(std::iter::repeat_n(Value::G(gamma.clone()), m + 1));
        }
        normalize_lifted(&Predilator::omega(Predilator::Goodstein), &Value::Seq(members), t.children(), &|a, b| {
            self.sys.cmp(a, b)
        })
    }
}

impl OmegaFixedPoint for GoodsteinS {
    type Elem = Tree;

    fn d(&self) -> &Predilator {
        &Predilator::Goodstein
    }

    fn cmp(&self, a: &Tree, b: &Tree) -> Ordering {
        self.sys.cmp(a, b)
    }

    fn kappa(&self, s: &Tree) -> Result<(Vec<Value>, Vec<Tree>)> {
        let l = self.kappa_lifted(s)?;
        match l.payload {
            Value::Seq(ms) => Ok((ms, l.leaves)),
            _ => unreachable!(),
        }
    }

    fn kappa_inv(&self, members: &[Value], leaves: &[Tree]) -> Result<Tree> {
        let mut all = leaves.to_vec();
        let mut summands = Vec::new();
        let mut i = 0;
        while i < members.len() {
            let run = members[i..].iter().take_while(|v| **v == members[i]).count();
            let Value::G(g) = &members[i] else {
                return Err(Error::Malformed("member is not a G-value".into()));
            };
            all.push(self.coded(run - 1));
            summands.push((g.clone(), all.len() - 1));
            i += run;
        }
        let t = self.sys.collapse(&Value::G(GTerm(summands)), &all)?;
        if !self.in_s(&t) {
            return Err(Error::Range(format!("{} is not in S", self.sys.show(&t))));
        }
        Ok(t)
    }
}

/// Initiality of C: e(ϑ(κ(γ))) = Θ_S(G(e)(γ)).
pub fn c_to_s(s: &GoodsteinS, c: &Nf, memo: &mut HashMap<Nf, Tree>) -> Result<Tree> {
    if let Some(t) = memo.get(c) {
        return Ok(t.clone());
    }
    let x = c.as_theta().ok_or_else(|| Error::Malformed(format!("{c} is not a ϑ-term")))?;
    let l = kappa_c_inverse(x)?;
    let images: Vec<Tree> = l.leaves.iter().map(|leaf| c_to_s(s, leaf, memo)).collect::<Result<_>>()?;
    let t = s.theta(&l.payload, &images)?;
    memo.insert(c.clone(), t.clone());
    Ok(t)
}

/// ϑ(ε_{Ω+1}) → ψ₁(G): σ ↦ ϑ(g(σ)) in C, then initiality into S ⊆ ψ₁(G).
pub fn bhord_to_psi1g(s: &GoodsteinS, sigma: &Ot, memo: &mut HashMap<Nf, Tree>) -> Result<Tree> {
    if !sigma.below_omega() {
        return Err(Error::Malformed(format!("{sigma} is not below Ω")));
    }
    let c = Nf::theta_term(collapse_g(&Low::from_ot(sigma)?));
    c_to_s(s, &c, memo)
}

/// Ω-normalization of OT(ϑ), compared in OT(ϑ).
pub fn omega_normalize_map(s: &Ot) -> Result<Nf> {
    Ok(normalize(s))
}

// ---------------------------------------------------------------------------
// The weak side: φ(ω,0), ϑ(D) for D(X) = ω^X + ω×X, 𝔓 and ψ₁(W).

pub fn powmul_theta() -> System {
    System::theta(Predilator::PowMul)
}

/// x ↦ ϑ(f(x)) into the generic ϑ-terms of D(X) = ω^X + ω×X.
pub fn phi_to_theta(sys: &System, x: &Phi) -> Result<Tree> {
    let (payload, leaves) = match x {
        Phi::Zero => (Value::Pow(Vec::new()), Vec::new()),
        Phi::Sum(xs) => (
            Value::Pow((0..xs.len()).collect()),
            xs.iter().map(|y| phi_to_theta(sys, y)).collect::<Result<Vec<_>>>()?,
        ),
        Phi::App(n, y) => (Value::Mul(*n, 0), vec![phi_to_theta(sys, y)?]),
    };
    sys.build(&payload, &leaves)
}

/// f(⟨x₀,…⟩) = x₀ + ψ(x₀) + … + ψ(xₙ₋₁), f(⟨⟩) = 0.
pub fn p_f_seq(xs: &[P]) -> P {
    match xs.first() {
        None => P::zero(),
        Some(x0) => P::add(x0, &p_g(xs)),
    }
}

/// g(⟨x₀,…⟩) = ψ(x₀) + … + ψ(xₙ₋₁).
pub fn p_g(xs: &[P]) -> P {
    P(xs.iter().map(|x| (0, x.clone())).collect())
}

/// x₀ + ψ(x₁) + … + ψ(xₙ₋₁): the variant omitting ψ(x₀).
pub fn p_f_omit(xs: &[P]) -> P {
    match xs.first() {
        None => P::zero(),
        Some(x0) => P::add(x0, &p_g(&xs[1..])),
    }
}

/// The preimage of `y` under `p_f_seq`, if `y` is in its range.
pub fn p_f_seq_inverse(y: &P) -> Option<Vec<P>> {
    if y.is_zero() {
        return Some(Vec::new());
    }
    let tail = y.0.iter().rev().take_while(|(m, _)| *m == 0).count();
    (1..=tail)
        .map(|k| y.0[y.0.len() - k..].iter().map(|(_, x)| x.clone()).collect::<Vec<P>>())
        .find(|xs| p_f_seq(xs) == *y)
}

/// The suborder S ⊆ ψ(Ω^ω) with π: S → (ω∘D)(S).
#[derive(Default)]
pub struct PsiS;

/// The S⁺ shape: summands Ω^{m+2}·ψ(sᵢ) and sequences tⱼ with Ω·ψ(f(tⱼ)).
pub type SShape = (Vec<(u64, P)>, Vec<Vec<P>>);

impl PsiS {
    pub fn decompose(&self, s: &P) -> Option<SShape> {
        let mut high = Vec::new();
        let mut seqs = Vec::new();
        for (m, x) in &s.0 {
            match m {
                0 => return None,
                1 => seqs.push(p_f_seq_inverse(x)?),
                m => high.push((m - 2, x.clone())),
            }
        }
        let ok = high.iter().all(|(_, x)| self.in_s(x)) && seqs.iter().flatten().all(|x| self.in_s(x));
        ok.then_some((high, seqs))
    }

    pub fn in_s_plus(&self, s: &P) -> bool {
        self.decompose(s).is_some()
    }

    pub fn in_s(&self, s: &P) -> bool {
        match self.decompose(s) {
            None => false,
            Some((high, seqs)) => {
                high.iter().all(|(_, x)| P::cmp(x, s) == Ordering::Less)
                    && seqs.iter().filter_map(|t| t.first()).all(|x| P::cmp(x, s) == Ordering::Less)
            }
        }
    }

    /// π(s) = ⟨φ(m₀,s₀),…, t₀,…⟩ over its sorted support.
    pub fn pi(&self, s: &P) -> Result<Lifted<P>> {
        let (high, seqs) = self.decompose(s).ok_or_else(|| Error::Range(format!("{s} is not in S⁺")))?;
        let mut leaves = Vec::new();
        let mut members = Vec::new();
        for (m, x) in high {
            leaves.push(x);
            members.push(Value::Mul(m, leaves.len() - 1));
        }
        for t in seqs {
            let mut idx = Vec::new();
            for x in t {
                leaves.push(x);
                idx.push(leaves.len() - 1);
            }
            members.push(Value::Pow(idx));
        }
        normalize_lifted(&Predilator::omega(Predilator::PowMul), &Value::Seq(members), &leaves, &P::cmp)
    }
}

impl OmegaFixedPoint for PsiS {
    type Elem = P;

    fn d(&self) -> &Predilator {
        &Predilator::PowMul
    }

    fn cmp(&self, a: &P, b: &P) -> Ordering {
        P::cmp(a, b)
    }

    fn kappa(&self, s: &P) -> Result<(Vec<Value>, Vec<P>)> {
        let l = self.pi(s)?;
        match l.payload {
            Value::Seq(ms) => Ok((ms, l.leaves)),
            _ => unreachable!(),
        }
    }

    fn kappa_inv(&self, members: &[Value], leaves: &[P]) -> Result<P> {
        let mut out = Vec::new();
        for v in members {
            match v {
                Value::Mul(m, i) => out.push((m + 2, leaves[*i].clone())),
                Value::Pow(xs) => {
                    let t: Vec<P> = xs.iter().map(|i| leaves[*i].clone()).collect();
                    out.push((1, p_f_seq(&t)));
                }
                _ => return Err(Error::Malformed("member is not a D-value".into())),
            }
        }
        let s = P(out);
        if !self.in_s(&s) {
            return Err(Error::Range(format!("{s} is not in S")));
        }
        Ok(s)
    }
}

/// φ(ω,0) → ψ(Ω^ω): ϑ(f(x)) followed by initiality into S.
pub fn phi_to_pomega(x: &Phi, memo: &mut HashMap<u64, P>) -> Result<P> {
    let t = phi_to_theta(&powmul_theta(), x)?;
    bh_initial_embed(&t, &|v: &Value, leaves: &[P]| PsiS.theta(v, leaves), memo)
}

/// Writes x ∈ ψ(Ω^ω) as Ω^m₀·g(σ₀) + … with m strictly descending.
pub fn p_blocks(x: &P) -> Vec<(u64, Vec<P>)> {
    let mut out: Vec<(u64, Vec<P>)> = Vec::new();
    for (m, c) in &x.0 {
        match out.last_mut() {
            Some((k, cs)) if k == m => cs.push(c.clone()),
            _ => out.push((*m, vec![c.clone()])),
        }
    }
    out
}

pub fn psi1w_system() -> System {
    System::psi(Predilator::Weak)
}

/// h: ψ(Ω^ω) → W(ψ₁(W)) followed by π⁻¹.
pub fn pomega_to_psi1w(sys: &System, x: &P, memo: &mut HashMap<P, Tree>) -> Result<Tree> {
    if let Some(t) = memo.get(x) {
        return Ok(t.clone());
    }
    let mut leaves = Vec::new();
    let mut summands = Vec::new();
    for (m, sigma) in p_blocks(x) {
        leaves.push(pomega_to_psi1w(sys, &sigma[0], memo)?);
        summands.push((2 * m + 2, leaves.len() - 1));
        leaves.push(pomega_to_psi1w(sys, &p_f_omit(&sigma), memo)?);
        summands.push((2 * m + 1, leaves.len() - 1));
    }
    let t = sys.collapse(&Value::W(WTerm(summands)), &leaves)?;
    memo.insert(x.clone(), t.clone());
    Ok(t)
}

/// f∘π: ψ₁(W) → φ(ω,0).
pub fn psi1w_to_phi(t: &Tree, memo: &mut HashMap<u64, Phi>) -> Result<Phi> {
    if let Some(x) = memo.get(&t.id()) {
        return Ok(x.clone());
    }
    let Value::W(w) = t.payload() else {
        return Err(Error::Malformed("not a W-term".into()));
    };
    let mut acc = Phi::Zero;
    for (m, c) in &w.0 {
        let b = psi1w_to_phi(&t.children()[*c], memo)?;
        let mut arg = if Phi::cmp(&b, &acc) == Ordering::Greater { Vec::new() } else { acc.members() };
        arg.extend(b.members());
        arg.push(Phi::one());
        acc = Phi::app(*m, Phi::from_members(arg))?;
    }
    memo.insert(t.id(), acc.clone());
    Ok(acc)
}

// ---------------------------------------------------------------------------
// The ACA′ maps.

/// Forward g_n on G-terms of height at most `n` over a base of `base` elements.
pub fn aca_forward_report(n: usize, base: usize) -> EmbeddingReport {
    let mut terms: Vec<GTerm> = GTerm::enumerate_height(base, n);
    terms.sort_by(GTerm::cmp);
    check_monotone(
        "aca_forward_g",
        n,
        &terms,
        |s| aca_forward_g(n, base, s),
        Tower::cmp,
        |s| s.to_sexp().to_string(),
    )
}

/// Backward f_n on ω^⟨n,X⟩ with sequences of length at most `max_len`.
pub fn aca_backward_report(n: usize, base: usize, max_len: usize) -> EmbeddingReport {
    let mut towers = Tower::enumerate(n, base, max_len);
    towers.sort_by(Tower::cmp);
    check_monotone(
        "aca_backward_f",
        n,
        &towers,
        |t| aca_backward_f(n, base, t),
        GTerm::cmp,
        |t| t.to_string(),
    )
}

// ---------------------------------------------------------------------------
// Named maps and the equimorphism suite.

/// Maps accepted by `verify_map`.
pub const MAPS: &[&str] = &[
    "omega_normalize",
    "collapse_f",
    "theta_g",
    "kappa_c",
    "phi_to_bh",
    "f_seq",
    "pi_s",
    "pomega_to_psi1w",
    "psi1w_to_phi",
    "psi1g_to_bhord",
    "bhord_to_psi1g",
    "phi_to_pomega",
    "aca_forward_g",
    "aca_backward_f",
];

/// Weakly decreasing sequences of length at most 2 over ψ(Ω^ω) terms of size ≤ `size`, ascending.
pub fn short_psi_sequences(size: usize) -> Vec<Vec<P>> {
    let psi = P::enumerate_psi(size);
    let mut seqs: Vec<Vec<P>> = vec![Vec::new()];
    for a in &psi {
        seqs.push(vec![a.clone()]);
        for b in psi.iter().filter(|b| P::cmp(a, b) != Ordering::Less) {
            seqs.push(vec![a.clone(), b.clone()]);
        }
    }
    seqs.sort_by(|a, b| crate::order::seq_cmp(a, b, P::cmp));
    seqs
}

fn merge_reports(map: &str, bound: usize, parts: Vec<EmbeddingReport>) -> EmbeddingReport {
    let mut out = EmbeddingReport { map: map.into(), bound, ..Default::default() };
    for r in parts {
        out.terms += r.terms;
        out.pairs += r.pairs;
        out.violations.extend(r.violations.into_iter().map(|v| format!("[{}] {v}", r.map)));
    }
    out
}

fn show_p(x: &P) -> String {
    x.to_string()
}

/// Strict monotonicity of a named map on all enumerated sources of size ≤ `size`.
pub fn verify_map(name: &str, size: usize) -> Result<EmbeddingReport> {
    let rep = match name {
        "omega_normalize" => check_monotone(name, size, &Ot::enumerate(size), omega_normalize_map, Nf::cmp, Ot::to_string),
        "collapse_f" => check_monotone(
            name,
            size,
            &crate::notations::nf::enumerate(size),
            |x| Ok(crate::notations::nf::collapse_f(x)),
            Nf::cmp,
            Nf::to_string,
        ),
        "theta_g" => check_monotone(
            name,
            size,
            &crate::notations::nf::enumerate_low(size),
            |x| Ok(crate::notations::nf::collapse_theta_g(x)),
            Nf::cmp,
            Low::to_string,
        ),
        "kappa_c" => {
            let sample = c_sample(size.saturating_sub(1).max(1), 3);
            let mut vals = Predilator::Goodstein.enumerate(sample.len(), size);
            vals.sort_by(|a, b| Predilator::Goodstein.cmp(a, b));
            check_monotone(
                name,
                size,
                &vals,
                |v| match v {
                    Value::G(g) => kappa_c(g, &sample),
                    _ => Err(Error::Malformed("not a G-value".into())),
                },
                Nf::cmp,
                |v| Predilator::Goodstein.to_sexp(v).to_string(),
            )
        }
        "phi_to_bh" => {
            let sys = powmul_theta();
            check_monotone(name, size, &Phi::enumerate(size), |x| phi_to_theta(&sys, x), |a, b| sys.cmp(a, b), Phi::to_string)
        }
        "f_seq" => check_monotone(name, size, &short_psi_sequences(size), |xs| Ok(p_f_seq(xs)), P::cmp, |xs| {
            xs.iter().map(show_p).collect::<Vec<_>>().join(" ")
        }),
        "pi_s" => {
            let s = PsiS;
            let terms: Vec<P> = P::enumerate(size).into_iter().filter(|x| s.in_s(x)).collect();
            let seq = Predilator::omega(Predilator::PowMul);
            check_monotone(name, size, &terms, |x| s.pi(x), |a, b| crate::fixpoint::lifted_cmp(&seq, a, b, &P::cmp), show_p)
        }
        "pomega_to_psi1w" => {
            let sys = psi1w_system();
            let memo = RefCell::new(HashMap::new());
            check_monotone(
                name,
                size,
                &P::enumerate_psi(size),
                |x| pomega_to_psi1w(&sys, x, &mut memo.borrow_mut()),
                |a, b| sys.cmp(a, b),
                show_p,
            )
        }
        "psi1w_to_phi" => {
            let sys = psi1w_system();
            let memo = RefCell::new(HashMap::new());
            check_monotone(
                name,
                size,
                &sys.enumerate(size, true),
                |t| psi1w_to_phi(t, &mut memo.borrow_mut()),
                Phi::cmp,
                |t| sys.show(t),
            )
        }
        "psi1g_to_bhord" => {
            let sys = psi1g_system();
            check_monotone(name, size, &sys.enumerate(size, true), psi1g_to_bhord, Ot::cmp, |t| sys.show(t))
        }
        "bhord_to_psi1g" => {
            let s = GoodsteinS::new();
            let terms: Vec<Ot> = Ot::enumerate(size).into_iter().filter(Ot::below_omega).collect();
            let memo = RefCell::new(HashMap::new());
            check_monotone(
                name,
                size,
                &terms,
                |x| bhord_to_psi1g(&s, x, &mut memo.borrow_mut()),
                |a, b| s.sys.cmp(a, b),
                Ot::to_string,
            )
        }
        "phi_to_pomega" => {
            let memo = RefCell::new(HashMap::new());
            check_monotone(
                name,
                size,
                &Phi::enumerate(size),
                |x| phi_to_pomega(x, &mut memo.borrow_mut()),
                P::cmp,
                Phi::to_string,
            )
        }
        "aca_forward_g" => merge_reports(name, size, (0..=size.min(3)).map(|n| aca_forward_report(n, 3)).collect()),
        "aca_backward_f" => merge_reports(name, size, (0..=size.min(2)).map(|n| aca_backward_report(n, 2, 3)).collect()),
        _ => return Err(Error::Unsupported(format!("unknown map {name}; known maps: {}", MAPS.join(", ")))),
    };
    Ok(rep)
}

/// The pairs accepted by `equimorphism_suite`.
pub const PAIRS: &[&str] = &["psi1g-bhord", "psi1w-phi", "phi-pomega"];

/// Both directions of an equimorphism and both round trips, each checked for
/// strict monotonicity on sources of size ≤ `size`.
pub fn equimorphism_suite(pair: &str, size: usize) -> Result<Vec<EmbeddingReport>> {
    let mut out = Vec::new();
    match pair {
        "psi1g-bhord" => {
            let s = GoodsteinS::new();
            let sys = &s.sys;
            let memo = RefCell::new(HashMap::new());
            let back = |x: &Ot| bhord_to_psi1g(&s, x, &mut memo.borrow_mut());
            let trees = sys.enumerate(size, true);
            let ots: Vec<Ot> = Ot::enumerate(size).into_iter().filter(Ot::below_omega).collect();
            out.push(check_monotone("psi1g_to_bhord", size, &trees, psi1g_to_bhord, Ot::cmp, |t| sys.show(t)));
            out.push(check_monotone("bhord_to_psi1g", size, &ots, back, |a, b| sys.cmp(a, b), Ot::to_string));
            out.push(check_monotone(
                "psi1g round trip",
                size,
                &trees,
                |t| back(&psi1g_to_bhord(t)?),
                |a, b| sys.cmp(a, b),
                |t| sys.show(t),
            ));
            out.push(check_monotone(
                "bhord round trip",
                size,
                &ots,
                |x| psi1g_to_bhord(&back(x)?),
                Ot::cmp,
                Ot::to_string,
            ));
        }
        "psi1w-phi" | "phi-pomega" => {
            let sys = psi1w_system();
            let pm = RefCell::new(HashMap::new());
            let wm = RefCell::new(HashMap::new());
            let fm = RefCell::new(HashMap::new());
            let to_p = |x: &Phi| phi_to_pomega(x, &mut pm.borrow_mut());
            let to_w = |x: &P| pomega_to_psi1w(&sys, x, &mut wm.borrow_mut());
            let to_phi = |t: &Tree| psi1w_to_phi(t, &mut fm.borrow_mut());
            let phis = Phi::enumerate(size);
            if pair == "psi1w-phi" {
                let trees = sys.enumerate(size, true);
                out.push(check_monotone("psi1w_to_phi", size, &trees, to_phi, Phi::cmp, |t| sys.show(t)));
                out.push(check_monotone(
                    "phi_to_psi1w",
                    size,
                    &phis,
                    |x| to_w(&to_p(x)?),
                    |a, b| sys.cmp(a, b),
                    Phi::to_string,
                ));
                out.push(check_monotone(
                    "psi1w round trip",
                    size,
                    &trees,
                    |t| to_w(&to_p(&to_phi(t)?)?),
                    |a, b| sys.cmp(a, b),
                    |t| sys.show(t),
                ));
                out.push(check_monotone("phi round trip", size, &phis, |x| to_phi(&to_w(&to_p(x)?)?), Phi::cmp, Phi::to_string));
            } else {
                let ps = P::enumerate_psi(size);
                out.push(check_monotone("phi_to_pomega", size, &phis, to_p, P::cmp, Phi::to_string));
                out.push(check_monotone("pomega_to_phi", size, &ps, |x| to_phi(&to_w(x)?), Phi::cmp, show_p));
                out.push(check_monotone("phi round trip", size, &phis, |x| to_phi(&to_w(&to_p(x)?)?), Phi::cmp, Phi::to_string));
                out.push(check_monotone("pomega round trip", size, &ps, |x| to_p(&to_phi(&to_w(x)?)?), P::cmp, show_p));
            }
        }
        _ => return Err(Error::Unsupported(format!("unknown pair {pair}; known pairs: {}", PAIRS.join(", ")))),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_c_inverts() {
        for c in c_sample(4, 3) {
            let x = c.as_theta().unwrap();
            let l = kappa_c_inverse(x).unwrap();
            let Value::G(g) = &l.payload else { panic!() };
            assert_eq!(&kappa_c(g, &l.leaves).unwrap(), x);
        }
    }

    #[test]
    fn coded_naturals_lie_in_s() {
        let s = GoodsteinS::new();
        for n in 0..6 {
            assert!(s.in_s(&s.coded(n)));
            assert_eq!(s.coded_value(&s.coded(n)), Some(n));
        }
    }

    #[test]
    fn omitting_the_head_is_not_injective() {
        let psi0 = P::psi(P::zero());
        let a = P(vec![(1, P::zero()), (0, P::zero())]);
        let b = P::mono(1, P::zero());
        let expect = P(vec![(1, P::zero()), (0, psi0.clone())]);
        assert_eq!(p_f_omit(&[a, psi0.clone()]), expect);
        assert_eq!(p_f_omit(&[b, psi0]), expect);
    }

    #[test]
    fn f_seq_examples() {
        assert_eq!(p_f_seq(&[]), P::zero());
        let psi0 = P::psi(P::zero());
        let want = P(vec![(0, P::zero()), (0, P::zero())]);
        // ψ(0) + ψ(ψ(0)) keeps only the larger summand
        assert_eq!(p_f_seq(&[psi0.clone()]), P(vec![(0, psi0.clone())]));
        assert_ne!(p_f_seq(&[psi0]), want);
    }

    #[test]
    fn phi_zero_maps_to_empty_sequence() {
        let t = phi_to_theta(&powmul_theta(), &Phi::Zero).unwrap();
        assert_eq!(t.payload(), &Value::Pow(Vec::new()));
        assert!(t.children().is_empty());
    }
}
