//! The Goodstein predilator G, the weak predilator W, hereditary base
//! notation, the sequence steppers and the embeddings between G and the
//! iterated ω-powers.

use crate::error::{malformed, Error, Result};
use crate::order::{seq_cmp, Tower};
use crate::sexp::Sexp;
use num_bigint::BigUint;
use std::cmp::Ordering;
use std::fmt;

/// A G-term `Σ (1+X)^{γ_i}·(1+δ_i)` with strictly decreasing exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GTerm(pub Vec<(GTerm, usize)>);

impl GTerm {
    pub fn zero() -> GTerm {
        GTerm(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn cmp(a: &GTerm, b: &GTerm) -> Ordering {
        seq_cmp(&a.0, &b.0, |(g, d), (h, e)| GTerm::cmp(g, h).then(d.cmp(e)))
    }

    pub fn validate(&self, base: usize) -> Result<()> {
        for (i, (g, d)) in self.0.iter().enumerate() {
            if *d >= base {
                return malformed(format!("coefficient {d} outside base of size {base}"));
            }
            g.validate(base)?;
            if i > 0 && GTerm::cmp(&self.0[i - 1].0, g) != Ordering::Greater {
                return malformed(format!("exponents of {self} are not strictly decreasing"));
            }
        }
        Ok(())
    }

    pub fn act(&self, f: &[usize]) -> GTerm {
        GTerm(self.0.iter().map(|(g, d)| (g.act(f), f[*d])).collect())
    }

    pub fn supp_into(&self, out: &mut Vec<usize>) {
        for (g, d) in &self.0 {
            out.push(*d);
            g.supp_into(out);
        }
    }

    /// h(0) = 1 and h(Σ) = 1 + max h(γ_i).
    pub fn height(&self) -> usize {
        1 + self.0.iter().map(|(g, _)| g.height()).max().unwrap_or(0)
    }

    pub fn size(&self, weight: &impl Fn(usize) -> usize) -> usize {
        1 + self.0.iter().map(|(g, d)| g.size(weight) + weight(*d)).sum::<usize>()
    }

    /// Hereditary base-`b` notation of `n`, as an element of G(b-1).
    pub fn encode(n: &BigUint, b: u64) -> GTerm {
        assert!(b >= 2);
        let mut summands = Vec::new();
        let mut rest = n.clone();
        let mut e = 0u64;
        let bb = BigUint::from(b);
        let zero = BigUint::from(0u32);
        while rest != zero {
            let digit = (&rest % &bb).to_u64_digits().first().copied().unwrap_or(0);
            if digit > 0 {
                summands.push((GTerm::encode(&BigUint::from(e), b), (digit - 1) as usize));
            }
            rest /= &bb;
            e += 1;
        }
        summands.reverse();
        GTerm(summands)
    }

    /// Value of the term read in base `b`, i.e. with `X` of size `b - 1`.
    pub fn eval(&self, b: u64) -> BigUint {
        let mut total = BigUint::from(0u32);
        for (g, d) in &self.0 {
            let exp = g.eval(b);
            let exp: u32 = exp.try_into().expect("exponent too large to evaluate");
            total += BigUint::from(b).pow(exp) * BigUint::from(*d as u64 + 1);
        }
        total
    }

    /// Hereditary notation such as `2^(2^(2^0))+2^0`, digits written as `d*`.
    pub fn notation(&self, b: u64) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(g, d)| {
                let digit = if *d == 0 { String::new() } else { format!("{}*", d + 1) };
                let exp = if g.is_zero() { "0".to_string() } else { format!("({})", g.notation(b)) };
                format!("{digit}{b}^{exp}")
            })
            .collect();
        parts.join("+")
    }

    /// Every term over `base` with size at most `bound`, coefficients weighing 1.
    pub fn enumerate(base: usize, bound: usize) -> Vec<GTerm> {
        if bound == 0 {
            return Vec::new();
        }
        let mut exps = if bound >= 3 { GTerm::enumerate(base, bound - 2) } else { Vec::new() };
        exps.sort_by(|a, b| GTerm::cmp(b, a));
        let sized: Vec<(GTerm, usize)> = exps.into_iter().map(|g| {
            let s = g.size(&|_| 1);
            (g, s)
        }).collect();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn go(
            sized: &[(GTerm, usize)],
            from: usize,
            room: usize,
            base: usize,
            cur: &mut Vec<(GTerm, usize)>,
            out: &mut Vec<GTerm>,
        ) {
            out.push(GTerm(cur.clone()));
            for i in from..sized.len() {
                let cost = sized[i].1 + 1;
                if cost > room {
                    continue;
                }
                for d in 0..base {
                    cur.push((sized[i].0.clone(), d));
                    go(sized, i + 1, room - cost, base, cur, out);
                    cur.pop();
                }
            }
        }
        go(&sized, 0, bound - 1, base, &mut cur, &mut out);
        out
    }

    /// Every term over `base` of height at most `h`.
    pub fn enumerate_height(base: usize, h: usize) -> Vec<GTerm> {
        if h == 0 {
            return Vec::new();
        }
        let mut exps = GTerm::enumerate_height(base, h - 1);
        exps.sort_by(|a, b| GTerm::cmp(b, a));
        let mut out = vec![GTerm::zero()];
        for g in exps.iter().rev() {
            // exps ascending here, so prepend to keep exponents decreasing
            let mut more = Vec::new();
            for t in &out {
                if t.0.first().map_or(true, |(e, _)| GTerm::cmp(g, e) == Ordering::Greater) {
                    for d in 0..base {
                        let mut s = vec![(g.clone(), d)];
                        s.extend(t.0.iter().cloned());
                        more.push(GTerm(s));
                    }
                }
            }
            out.extend(more);
        }
        out
    }

    pub fn to_sexp(&self) -> Sexp {
        Sexp::tagged(
            "+",
            self.0
                .iter()
                .map(|(g, d)| Sexp::tagged("g", vec![g.to_sexp(), Sexp::atom(d.to_string())]))
                .collect(),
        )
    }

    pub fn from_sexp(sx: &Sexp) -> Result<GTerm> {
        if sx.as_atom() == Some("0") {
            return Ok(GTerm::zero());
        }
        let args = sx.expect_tagged("+")?;
        let mut out = Vec::new();
        for a in args {
            match a.expect_tagged("g")? {
                [g, d] => out.push((GTerm::from_sexp(g)?, d.parse_usize()?)),
                _ => return Err(Error::Parse(format!("expected (g <exp> <coef>), found {a}"))),
            }
        }
        Ok(GTerm(out))
    }
}

impl fmt::Display for GTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexp())
    }
}

/// A W-term `Σ (1+X)^{m_i}·(1+δ_i)` with strictly decreasing natural exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WTerm(pub Vec<(u64, usize)>);

impl WTerm {
    pub fn zero() -> WTerm {
        WTerm(Vec::new())
    }

    pub fn cmp(a: &WTerm, b: &WTerm) -> Ordering {
        seq_cmp(&a.0, &b.0, |x, y| x.cmp(y))
    }

    pub fn validate(&self, base: usize) -> Result<()> {
        if self.0.iter().any(|(_, d)| *d >= base) {
            return malformed(format!("coefficient outside base of size {base} in {self}"));
        }
        if self.0.windows(2).any(|w| w[0].0 <= w[1].0) {
            return malformed(format!("exponents of {self} are not strictly decreasing"));
        }
        Ok(())
    }

    pub fn act(&self, f: &[usize]) -> WTerm {
        WTerm(self.0.iter().map(|(m, d)| (*m, f[*d])).collect())
    }

    pub fn supp_into(&self, out: &mut Vec<usize>) {
        out.extend(self.0.iter().map(|(_, d)| *d));
    }

    pub fn size(&self, weight: &impl Fn(usize) -> usize) -> usize {
        1 + self.0.iter().map(|(m, d)| 1 + *m as usize + weight(*d)).sum::<usize>()
    }

    /// Plain base-`b` notation of `n`, as an element of W(b-1).
    pub fn encode(n: &BigUint, b: u64) -> WTerm {
        let mut out = Vec::new();
        let mut rest = n.clone();
        let bb = BigUint::from(b);
        let mut e = 0u64;
        while rest != BigUint::from(0u32) {
            let digit = (&rest % &bb).to_u64_digits().first().copied().unwrap_or(0);
            if digit > 0 {
                out.push((e, digit as usize - 1));
            }
            rest /= &bb;
            e += 1;
        }
        out.reverse();
        WTerm(out)
    }

    pub fn eval(&self, b: u64) -> BigUint {
        self.0
            .iter()
            .map(|(m, d)| BigUint::from(b).pow(*m as u32) * BigUint::from(*d as u64 + 1))
            .sum()
    }

    pub fn notation(&self, b: u64) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(m, d)| {
                let digit = if *d == 0 { String::new() } else { format!("{}*", d + 1) };
                format!("{digit}{b}^{m}")
            })
            .collect();
        parts.join("+")
    }

    pub fn enumerate(base: usize, bound: usize) -> Vec<WTerm> {
        let mut out = Vec::new();
        fn go(max_exp: Option<u64>, room: usize, base: usize, cur: &mut Vec<(u64, usize)>, out: &mut Vec<WTerm>) {
            out.push(WTerm(cur.clone()));
            let top = match max_exp {
                Some(0) => return,
                Some(m) => m - 1,
                None => room as u64,
            };
            for m in (0..=top).rev() {
                let cost = 2 + m as usize;
                if cost > room {
                    continue;
                }
                for d in 0..base {
                    cur.push((m, d));
                    go(Some(m), room - cost, base, cur, out);
                    cur.pop();
                }
            }
        }
        if bound >= 1 {
            go(None, bound - 1, base, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn to_sexp(&self) -> Sexp {
        Sexp::tagged(
            "+",
            self.0
                .iter()
                .map(|(m, d)| Sexp::tagged("m", vec![Sexp::atom(m.to_string()), Sexp::atom(d.to_string())]))
                .collect(),
        )
    }

    pub fn from_sexp(sx: &Sexp) -> Result<WTerm> {
        if sx.as_atom() == Some("0") {
            return Ok(WTerm::zero());
        }
        let args = sx.expect_tagged("+")?;
        let mut out = Vec::new();
        for a in args {
            match a.expect_tagged("m")? {
                [m, d] => out.push((m.parse_u64()?, d.parse_usize()?)),
                _ => return Err(Error::Parse(format!("expected (m <nat> <coef>), found {a}"))),
            }
        }
        Ok(WTerm(out))
    }
}

impl fmt::Display for WTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexp())
    }
}

/// One stage of a Goodstein-type sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub stage: usize,
    pub base: u64,
    pub value: BigUint,
    pub notation: String,
}

/// Result of a single step: the value after the base change and after the decrement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub lifted: BigUint,
    pub next: BigUint,
}

/// Step from stage `n` (base `n + 2`) to stage `n + 1`; `None` once the value is 0.
pub fn classic_step(value: &BigUint, stage: usize) -> Option<Step> {
    let b = stage as u64 + 2;
    if *value == BigUint::from(0u32) {
        return None;
    }
    let lifted = GTerm::encode(value, b).eval(b + 1);
    let next = &lifted - 1u32;
    Some(Step { lifted, next })
}

pub fn weak_step(value: &BigUint, stage: usize) -> Option<Step> {
    let b = stage as u64 + 2;
    if *value == BigUint::from(0u32) {
        return None;
    }
    let lifted = WTerm::encode(value, b).eval(b + 1);
    let next = &lifted - 1u32;
    Some(Step { lifted, next })
}

fn run(seed: u64, steps: usize, weak: bool) -> Vec<Stage> {
    let mut out = Vec::new();
    let mut value = BigUint::from(seed);
    for stage in 0..=steps {
        let b = stage as u64 + 2;
        let notation =
            if weak { WTerm::encode(&value, b).notation(b) } else { GTerm::encode(&value, b).notation(b) };
        out.push(Stage { stage, base: b, value: value.clone(), notation });
        if stage == steps {
            break;
        }
        let step = if weak { weak_step(&value, stage) } else { classic_step(&value, stage) };
        match step {
            Some(s) => value = s.next,
            None => break,
        }
    }
    out
}

/// Stages 0..=steps of the classic sequence, stopping early at 0.
pub fn classic_run(seed: u64, steps: usize) -> Vec<Stage> {
    run(seed, steps, false)
}

pub fn weak_run(seed: u64, steps: usize) -> Vec<Stage> {
    run(seed, steps, true)
}

/// Number of steps until the weak sequence reaches 0, if within `cap` steps.
pub fn weak_length(seed: u64, cap: usize) -> Option<usize> {
    let mut value = BigUint::from(seed);
    for stage in 0..=cap {
        match weak_step(&value, stage) {
            Some(s) => value = s.next,
            None => return Some(stage),
        }
    }
    None
}

/// f_n: X′ → ω^⟨2n+1, X′⟩, with the top element of X′ at index `base`.
pub fn aca_forward_f(n: usize, x: usize) -> Tower {
    let inner = Tower::Seq(vec![Tower::Base(x)]);
    (0..n).fold(inner, |t, _| Tower::Seq(vec![Tower::Seq(vec![t])]))
}

/// g_n: G(X) → ω^⟨2n+1, X′⟩ on terms of height at most `n`.
pub fn aca_forward_g(n: usize, base: usize, sigma: &GTerm) -> Result<Tower> {
    if sigma.height() > n {
        return Err(Error::Unsupported(format!("height {} exceeds level {n}", sigma.height())));
    }
    let m = n - 1;
    let mut out = Vec::new();
    for (g, d) in &sigma.0 {
        out.push(Tower::Seq(vec![aca_forward_g(m, base, g)?, aca_forward_f(m, *d)]));
    }
    out.push(Tower::Seq(vec![aca_forward_f(m, base)]));
    Ok(Tower::Seq(out))
}

/// f_n: ω^⟨n,X⟩ → G(X+ℕ); the natural `k` is the index `base + k`.
pub fn aca_backward_f(n: usize, base: usize, t: &Tower) -> Result<GTerm> {
    match (n, t) {
        (0, Tower::Base(x)) => Ok(GTerm(vec![(GTerm::zero(), *x)])),
        (n, Tower::Seq(xs)) if n > 0 => {
            let mut out = Vec::new();
            let mut i = 0;
            while i < xs.len() {
                let run = xs[i..].iter().take_while(|y| Tower::cmp(y, &xs[i]) == Ordering::Equal).count();
                out.push((aca_backward_f(n - 1, base, &xs[i])?, base + run));
                i += run;
            }
            Ok(GTerm(out))
        }
        _ => malformed(format!("{t} is not at level {n}")),
    }
}
