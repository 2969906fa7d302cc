//! The notation system OT(ϑ) with its order, E-sets, height and arithmetic.

use super::decreasing_seqs;
use crate::error::{malformed, Error, Result};
use crate::order::{is_weakly_decreasing, merge_sort_by, seq_cmp};
use crate::sexp::Sexp;
use std::cmp::Ordering;
use std::fmt;

/// A term of OT(ϑ). `Sum` lists the exponents γ₀ ≥ γ₁ ≥ … of ω^γ₀ + ω^γ₁ + ….
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ot {
    Omega,
    Theta(Box<Ot>),
    Sum(Vec<Ot>),
}

impl Ot {
    pub fn zero() -> Ot {
        Ot::Sum(Vec::new())
    }

    pub fn one() -> Ot {
        Ot::Sum(vec![Ot::zero()])
    }

    pub fn theta(s: Ot) -> Ot {
        Ot::Theta(Box::new(s))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Ot::Sum(xs) if xs.is_empty())
    }

    /// ω^γ, with ω^Ω = Ω and ω^ϑ(σ) = ϑ(σ).
    pub fn omega_pow(g: Ot) -> Ot {
        match g {
            Ot::Omega | Ot::Theta(_) => g,
            g => Ot::Sum(vec![g]),
        }
    }

    /// The exponents of the term written as a sum of ω-powers.
    pub fn powers(&self) -> Vec<Ot> {
        match self {
            Ot::Sum(xs) => xs.clone(),
            other => vec![other.clone()],
        }
    }

    pub fn from_powers(mut xs: Vec<Ot>) -> Ot {
        if xs.len() == 1 {
            Ot::omega_pow(xs.pop().unwrap())
        } else {
            Ot::Sum(xs)
        }
    }

    pub fn cmp(a: &Ot, b: &Ot) -> Ordering {
        if a == b {
            Ordering::Equal
        } else if Ot::less(a, b) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    fn less(a: &Ot, b: &Ot) -> bool {
        use Ot::*;
        match (a, b) {
            (Omega, Omega) | (Omega, Theta(_)) => false,
            (Omega, Sum(ys)) => ys.first().is_some_and(|y| Ot::cmp(&Omega, y) != Ordering::Greater),
            (Theta(_), Omega) => true,
            (Theta(s), Theta(t)) => {
                t.e().iter().any(|e| Ot::cmp(a, e) != Ordering::Greater)
                    || (Ot::less(s, t) && s.e().iter().all(|e| Ot::less(e, b)))
            }
            (Theta(_), Sum(ys)) => ys.first().is_some_and(|y| Ot::cmp(a, y) != Ordering::Greater),
            (Sum(xs), Omega) | (Sum(xs), Theta(_)) => xs.first().is_none_or(|x| Ot::less(x, b)),
            (Sum(xs), Sum(ys)) => seq_cmp(xs, ys, Ot::cmp) == Ordering::Less,
        }
    }

    /// E(σ): the ϑ-subterms that are not inside another ϑ.
    pub fn e(&self) -> Vec<Ot> {
        let mut out = Vec::new();
        self.e_into(&mut out);
        out
    }

    fn e_into(&self, out: &mut Vec<Ot>) {
        match self {
            Ot::Omega => {}
            Ot::Theta(_) => {
                if !out.contains(self) {
                    out.push(self.clone())
                }
            }
            Ot::Sum(xs) => xs.iter().for_each(|x| x.e_into(out)),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            Ot::Omega => 0,
            Ot::Theta(s) => s.height() + 1,
            Ot::Sum(xs) => xs.iter().map(|x| x.height() + 1).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Ot::Omega => 1,
            Ot::Theta(s) => 1 + s.size(),
            Ot::Sum(xs) if xs.is_empty() => 1,
            Ot::Sum(xs) => xs.iter().map(|x| 1 + x.size()).sum(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Ot::Omega => Ok(()),
            Ot::Theta(s) => s.validate(),
            Ot::Sum(xs) => {
                xs.iter().try_for_each(Ot::validate)?;
                if xs.len() == 1 && matches!(xs[0], Ot::Omega | Ot::Theta(_)) {
                    return malformed("a single ω-power of Ω or of a ϑ-term is written without ω");
                }
                if !is_weakly_decreasing(xs, Ot::cmp) {
                    return malformed(format!("exponents of {self} are not weakly decreasing"));
                }
                Ok(())
            }
        }
    }

    /// Members of ϑ(ε_{Ω+1}).
    pub fn below_omega(&self) -> bool {
        Ot::less(self, &Ot::Omega)
    }

    /// σ + τ: keeps the powers of σ down to the last one at least the
    /// leading power of τ, then appends τ.
    pub fn add(a: &Ot, b: &Ot) -> Ot {
        let ys = b.powers();
        let Some(d0) = ys.first() else { return a.clone() };
        let mut xs = a.powers();
        if a.is_zero() {
            xs.clear();
        }
        let keep = xs.iter().rposition(|g| Ot::cmp(g, d0) != Ordering::Less).map_or(0, |i| i + 1);
        xs.truncate(keep);
        xs.extend(ys);
        Ot::from_powers(xs)
    }

    /// Ω·σ.
    pub fn omega_mul(s: &Ot) -> Ot {
        if s.is_zero() {
            return Ot::zero();
        }
        Ot::from_powers(s.powers().iter().map(|g| Ot::add(&Ot::Omega, g)).collect())
    }

    /// Ω^σ·τ.
    pub fn omega_pow_mul(s: &Ot, t: &Ot) -> Ot {
        if t.is_zero() {
            return Ot::zero();
        }
        let os = Ot::omega_mul(s);
        Ot::from_powers(t.powers().iter().map(|d| Ot::add(&os, d)).collect())
    }

    /// All terms of size exactly `s`, given every term of smaller size
    /// sorted descending along with its size.
    fn of_size(s: usize, smaller_desc: &[(Ot, usize)]) -> Vec<Ot> {
        let mut out = Vec::new();
        if s == 1 {
            out.push(Ot::Omega);
            out.push(Ot::zero());
        }
        out.extend(smaller_desc.iter().filter(|(_, k)| k + 1 == s).map(|(t, _)| Ot::theta(t.clone())));
        let costs: Vec<(Ot, usize)> = smaller_desc.iter().map(|(t, k)| (t.clone(), k + 1)).collect();
        for xs in decreasing_seqs(&costs, s) {
            if !(xs.len() == 1 && matches!(xs[0], Ot::Omega | Ot::Theta(_))) {
                out.push(Ot::Sum(xs));
            }
        }
        out
    }

    /// All terms of size at most `bound`, ascending.
    pub fn enumerate(bound: usize) -> Vec<Ot> {
        let mut all: Vec<(Ot, usize)> = Vec::new();
        for s in 1..=bound {
            let fresh = Ot::of_size(s, &all);
            all.extend(fresh.into_iter().map(|t| (t, s)));
            merge_sort_by(&mut all, &mut |a, b| Ot::cmp(&b.0, &a.0));
        }
        all.reverse();
        all.into_iter().map(|(t, _)| t).collect()
    }

    pub fn to_sexp(&self) -> Sexp {
        match self {
            Ot::Omega => Sexp::atom("O"),
            Ot::Theta(s) => Sexp::tagged("v", vec![s.to_sexp()]),
            Ot::Sum(xs) if xs.is_empty() => Sexp::atom("0"),
            Ot::Sum(xs) => Sexp::tagged("+", xs.iter().map(|x| Sexp::tagged("w", vec![x.to_sexp()])).collect()),
        }
    }

    pub fn from_sexp(sx: &Sexp) -> Result<Ot> {
        let t = match sx {
            Sexp::Atom(a) if a == "O" => Ot::Omega,
            Sexp::Atom(a) if a == "0" => Ot::zero(),
            _ => match sx.as_tagged() {
                Some(("v", [s])) => Ot::theta(Ot::from_sexp(s)?),
                Some(("w", [g])) => Ot::omega_pow(Ot::from_sexp(g)?),
                Some(("+", items)) => {
                    let mut xs = Vec::new();
                    for it in items {
                        xs.extend(Ot::from_sexp(it)?.powers_of_summand());
                    }
                    Ot::from_powers(xs)
                }
                _ => return Err(Error::Parse(format!("not an OT(ϑ) term: {sx}"))),
            },
        };
        t.validate()?;
        Ok(t)
    }

    fn powers_of_summand(&self) -> Vec<Ot> {
        if self.is_zero() {
            Vec::new()
        } else {
            self.powers()
        }
    }

    pub fn parse(src: &str) -> Result<Ot> {
        Ot::from_sexp(&crate::sexp::parse(src)?)
    }
}

impl fmt::Display for Ot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexp())
    }
}
