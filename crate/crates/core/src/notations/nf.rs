//! Ω-normal forms 𝔑 and Ω-normal forms with collapsed coefficients 𝔠.

use super::ot::Ot;
use crate::error::{malformed, Error, Result};
use crate::order::is_weakly_decreasing;
use crate::sexp::Sexp;
use std::cmp::Ordering;
use std::fmt;

/// A term below Ω whose ϑ-arguments are in Ω-normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Low {
    Theta(Box<Nf>),
    /// Exponents of ω-powers, weakly decreasing; empty for 0.
    Sum(Vec<Low>),
}

/// Ω^γ₀·δ₀ + … + Ω^γₙ₋₁·δₙ₋₁ with strictly descending exponents and 0 < δᵢ < Ω.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Nf(pub Vec<(Nf, Low)>);

impl Low {
    pub fn zero() -> Low {
        Low::Sum(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Low::Sum(xs) if xs.is_empty())
    }

    pub fn theta(n: Nf) -> Low {
        Low::Theta(Box::new(n))
    }

    pub fn from_powers(mut xs: Vec<Low>) -> Low {
        if xs.len() == 1 && matches!(xs[0], Low::Theta(_)) {
            xs.pop().unwrap()
        } else {
            Low::Sum(xs)
        }
    }

    /// Reads a term below Ω, normalizing every ϑ-argument.
    pub fn from_ot(s: &Ot) -> Result<Low> {
        match s {
            Ot::Omega => malformed("Ω is not below Ω"),
            Ot::Theta(t) => Ok(Low::theta(normalize(t))),
            Ot::Sum(xs) => Ok(Low::Sum(xs.iter().map(Low::from_ot).collect::<Result<_>>()?)),
        }
    }

    pub fn eval(&self) -> Ot {
        match self {
            Low::Theta(n) => Ot::theta(n.eval()),
            Low::Sum(xs) => Ot::from_powers(xs.iter().map(Low::eval).collect()),
        }
    }

    pub fn cmp(a: &Low, b: &Low) -> Ordering {
        Ot::cmp(&a.eval(), &b.eval())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Low::Theta(n) => n.validate(),
            Low::Sum(xs) => {
                xs.iter().try_for_each(Low::validate)?;
                if xs.len() == 1 && matches!(xs[0], Low::Theta(_)) {
                    return malformed("a single ω-power of a ϑ-term is written without ω");
                }
                if !is_weakly_decreasing(xs, Low::cmp) {
                    return malformed("coefficient exponents are not weakly decreasing");
                }
                Ok(())
            }
        }
    }

    pub fn is_collapsed_theta(&self) -> bool {
        matches!(self, Low::Theta(n) if n.is_collapsed())
    }

    pub fn to_sexp(&self) -> Sexp {
        match self {
            Low::Theta(n) => Sexp::tagged("v", vec![n.to_sexp()]),
            Low::Sum(xs) if xs.is_empty() => Sexp::atom("0"),
            Low::Sum(xs) => Sexp::tagged("+", xs.iter().map(|x| Sexp::tagged("w", vec![x.to_sexp()])).collect()),
        }
    }

    pub fn from_sexp(sx: &Sexp) -> Result<Low> {
        match sx {
            Sexp::Atom(a) if a == "0" => Ok(Low::zero()),
            _ => match sx.as_tagged() {
                Some(("v", [n])) => Ok(Low::theta(Nf::from_sexp(n)?)),
                Some(("+", items)) => {
                    let xs = items
                        .iter()
                        .map(|it| match it.as_tagged() {
                            Some(("w", [x])) => Low::from_sexp(x),
                            _ => Err(Error::Parse(format!("expected (w …), got {it}"))),
                        })
                        .collect::<Result<_>>()?;
                    Ok(Low::Sum(xs))
                }
                _ => Err(Error::Parse(format!("not a coefficient: {sx}"))),
            },
        }
    }
}

impl Nf {
    pub fn zero() -> Nf {
        Nf(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self) -> Ot {
        self.0.iter().fold(Ot::zero(), |acc, (g, d)| {
            Ot::add(&acc, &Ot::omega_pow_mul(&g.eval(), &d.eval()))
        })
    }

    pub fn cmp(a: &Nf, b: &Nf) -> Ordering {
        Ot::cmp(&a.eval(), &b.eval())
    }

    pub fn validate(&self) -> Result<()> {
        for (g, d) in &self.0 {
            g.validate()?;
            d.validate()?;
            if d.is_zero() {
                return malformed("zero coefficient");
            }
        }
        for w in self.0.windows(2) {
            if Nf::cmp(&w[0].0, &w[1].0) != Ordering::Greater {
                return malformed("Ω-exponents are not strictly descending");
            }
        }
        Ok(())
    }

    /// Membership in 𝔠: every coefficient, hereditarily, is a ϑ-term.
    pub fn is_collapsed(&self) -> bool {
        self.0.iter().all(|(g, d)| g.is_collapsed() && d.is_collapsed_theta())
    }

    /// The ϑ-terms of 𝔠: Ω⁰·ϑ(δ).
    pub fn as_theta(&self) -> Option<&Nf> {
        match self.0.as_slice() {
            [(g, Low::Theta(n))] if g.is_zero() => Some(n),
            _ => None,
        }
    }

    /// Ω⁰·ϑ(n).
    pub fn theta_term(n: Nf) -> Nf {
        Nf(vec![(Nf::zero(), Low::theta(n))])
    }

    /// The coded natural n̄: 0̄ = 0 and (n+1)̄ = Ω⁰·ϑ(n̄).
    pub fn coded(n: usize) -> Nf {
        (0..n).fold(Nf::zero(), |acc, _| Nf::theta_term(acc))
    }

    pub fn to_sexp(&self) -> Sexp {
        if self.0.is_empty() {
            return Sexp::atom("0");
        }
        Sexp::tagged(
            "N",
            self.0.iter().map(|(g, d)| Sexp::tagged("o", vec![g.to_sexp(), d.to_sexp()])).collect(),
        )
    }

    pub fn from_sexp(sx: &Sexp) -> Result<Nf> {
        if sx.as_atom() == Some("0") {
            return Ok(Nf::zero());
        }
        let items = sx.expect_tagged("N")?;
        let mut out = Vec::new();
        for it in items {
            match it.as_tagged() {
                Some(("o", [g, d])) => out.push((Nf::from_sexp(g)?, Low::from_sexp(d)?)),
                _ => return Err(Error::Parse(format!("expected (o E C), got {it}"))),
            }
        }
        let n = Nf(out);
        n.validate()?;
        Ok(n)
    }

    pub fn parse(src: &str) -> Result<Nf> {
        Nf::from_sexp(&crate::sexp::parse(src)?)
    }
}

impl fmt::Display for Nf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexp())
    }
}

impl fmt::Display for Low {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexp())
    }
}

fn at_least_omega(s: &Ot) -> bool {
    Ot::cmp(s, &Ot::Omega) != Ordering::Less
}

/// δ with Ω + δ = γ, for γ ≥ Ω.
fn minus_omega(g: &Ot) -> Ot {
    if *g == Ot::Omega {
        return Ot::zero();
    }
    let ps = g.powers();
    if ps.len() == 1 {
        return g.clone();
    }
    let head = minus_omega(&Ot::omega_pow(ps[0].clone()));
    Ot::add(&head, &Ot::from_powers(ps[1..].to_vec()))
}

/// (δ, ρ) with γ = Ω·δ + ρ and ρ < Ω.
fn split_omega(g: &Ot) -> (Ot, Ot) {
    let ps = g.powers();
    let i = if g.is_zero() { 0 } else { ps.iter().take_while(|p| at_least_omega(p)).count() };
    let d = Ot::from_powers(ps[..i].iter().map(minus_omega).collect());
    let r = Ot::from_powers(ps[i..].to_vec());
    (d, r)
}

/// Writes any OT(ϑ) term in Ω-normal form, normalizing every ϑ-argument.
pub fn normalize(s: &Ot) -> Nf {
    if s.is_zero() {
        return Nf::zero();
    }
    let ps = s.powers();
    let i = ps.iter().take_while(|p| at_least_omega(p)).count();
    let mut parts: Vec<(Ot, Vec<Ot>)> = Vec::new();
    for (j, p) in ps.iter().enumerate() {
        let (d, eta) = if j < i { split_omega(p) } else { (Ot::zero(), p.clone()) };
        match parts.last_mut() {
            Some((last, etas)) if *last == d => etas.push(eta),
            _ => parts.push((d, vec![eta])),
        }
    }
    Nf(parts
        .into_iter()
        .map(|(d, etas)| {
            let coef = Low::from_ot(&Ot::from_powers(etas)).expect("coefficients lie below Ω");
            (normalize(&d), coef)
        })
        .collect())
}

/// f: 𝔑 → 𝔠.
pub fn collapse_f(s: &Nf) -> Nf {
    if s.is_zero() {
        return Nf(vec![(Nf::coded(3), Low::theta(Nf::zero()))]);
    }
    Nf(s.0.iter().map(|(g, d)| (collapse_f(g), Low::theta(collapse_g(d)))).collect())
}

/// g: 𝔐 → 𝔠, on terms below Ω.
pub fn collapse_g(d: &Low) -> Nf {
    match d {
        Low::Sum(ps) if ps.is_empty() => Nf::zero(),
        Low::Theta(t) => Nf(vec![(Nf::coded(2), Low::theta(collapse_f(t)))]),
        Low::Sum(ps) => {
            let rest = Low::from_powers(ps[1..].to_vec());
            Nf(vec![
                (Nf::coded(1), Low::theta(collapse_g(&ps[0]))),
                (Nf::coded(0), Low::theta(collapse_g(&rest))),
            ])
        }
    }
}

/// σ ↦ ϑ(g(σ)), embedding ϑ(ε_{Ω+1}) into the ϑ-terms of 𝔠.
pub fn collapse_theta_g(d: &Low) -> Nf {
    Nf::theta_term(collapse_g(d))
}

/// Terms of 𝔑 obtained by normalizing OT(ϑ) terms of size at most `bound`, ascending.
pub fn enumerate(bound: usize) -> Vec<Nf> {
    Ot::enumerate(bound).iter().map(normalize).collect()
}

/// Terms of 𝔐 (values below Ω) from OT(ϑ) terms of size at most `bound`, ascending.
pub fn enumerate_low(bound: usize) -> Vec<Low> {
    Ot::enumerate(bound)
        .iter()
        .filter(|t| t.below_omega())
        .map(|t| Low::from_ot(t).expect("below Ω"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_examples() {
        assert_eq!(normalize(&Ot::zero()), Nf::zero());
        let omega = normalize(&Ot::Omega);
        let one = Nf(vec![(Nf::zero(), Low::Sum(vec![Low::zero()]))]);
        assert_eq!(omega, Nf(vec![(one, Low::Sum(vec![Low::zero()]))]));
        assert_eq!(omega.eval(), Ot::Omega);
    }

    #[test]
    fn normalize_evaluates_back() {
        for t in Ot::enumerate(5) {
            let n = normalize(&t);
            n.validate().unwrap();
            assert_eq!(Ot::cmp(&n.eval(), &t), Ordering::Equal, "{t}");
            assert_eq!(normalize(&n.eval()), n);
        }
    }

    #[test]
    fn coded_naturals_increase() {
        for n in 0..10 {
            assert_eq!(Nf::cmp(&Nf::coded(n), &Nf::coded(n + 1)), Ordering::Less);
            assert!(Nf::coded(n).is_collapsed());
        }
    }

    #[test]
    fn collapse_lands_in_collapsed_forms() {
        assert_eq!(collapse_g(&Low::zero()), Nf::zero());
        for n in enumerate(4) {
            assert!(collapse_f(&n).is_collapsed());
        }
    }
}
