//! The notation system 𝔓 with its suborder ψ(Ω^ω).

use super::decreasing_seqs;
use crate::error::{malformed, Error, Result};
use crate::order::{merge_sort_by, seq_cmp};
use crate::sexp::Sexp;
use std::cmp::Ordering;
use std::fmt;

/// Ω^m₀·ψ(x₀) + … + Ω^mₙ₋₁·ψ(xₙ₋₁) with summands weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct P(pub Vec<(u64, P)>);

fn summand_cmp(a: &(u64, P), b: &(u64, P)) -> Ordering {
    a.0.cmp(&b.0).then_with(|| P::cmp(&a.1, &b.1))
}

impl P {
    pub fn zero() -> P {
        P(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Ω^m·ψ(x).
    pub fn mono(m: u64, x: P) -> P {
        P(vec![(m, x)])
    }

    /// ψ(x).
    pub fn psi(x: P) -> P {
        P::mono(0, x)
    }

    pub fn cmp(a: &P, b: &P) -> Ordering {
        seq_cmp(&a.0, &b.0, summand_cmp)
    }

    /// Membership in ψ(Ω^ω): every coefficient lies below the term.
    pub fn in_psi(&self) -> bool {
        self.0.iter().all(|(_, x)| P::cmp(x, self) == Ordering::Less)
    }

    pub fn validate(&self) -> Result<()> {
        for (_, x) in &self.0 {
            x.validate()?;
            if !x.in_psi() {
                return malformed(format!("coefficient {x} is not in ψ(Ω^ω)"));
            }
        }
        for w in self.0.windows(2) {
            if summand_cmp(&w[0], &w[1]) == Ordering::Less {
                return malformed("summands are not weakly decreasing");
            }
        }
        Ok(())
    }

    /// x + y: keeps the summands of x down to the last one at least the
    /// leading summand of y, then appends y.
    pub fn add(x: &P, y: &P) -> P {
        let Some(y0) = y.0.first() else { return x.clone() };
        let keep = x.0.iter().rposition(|s| summand_cmp(s, y0) != Ordering::Less).map_or(0, |i| i + 1);
        let mut out = x.0[..keep].to_vec();
        out.extend(y.0.iter().cloned());
        P(out)
    }

    pub fn size(&self) -> usize {
        1 + self.0.iter().map(|(m, x)| 1 + *m as usize + x.size()).sum::<usize>()
    }

    /// All terms of 𝔓 of size at most `bound`, ascending.
    pub fn enumerate(bound: usize) -> Vec<P> {
        let mut all: Vec<(P, usize)> = Vec::new();
        for s in 1..=bound {
            let mut coefs: Vec<(P, usize)> = all.iter().filter(|(x, _)| x.in_psi()).cloned().collect();
            merge_sort_by(&mut coefs, &mut |a, b| P::cmp(&b.0, &a.0));
            let mut summands: Vec<((u64, P), usize)> = Vec::new();
            for m in (0..s as u64).rev() {
                for (x, k) in &coefs {
                    let c = 1 + m as usize + k;
                    if c < s {
                        summands.push(((m, x.clone()), c));
                    }
                }
            }
            let fresh: Vec<P> = decreasing_seqs(&summands, s - 1).into_iter().map(P).collect();
            all.extend(fresh.into_iter().map(|t| (t, s)));
        }
        let mut out: Vec<P> = all.into_iter().map(|(t, _)| t).collect();
        merge_sort_by(&mut out, &mut |a, b| P::cmp(a, b));
        out
    }

    /// Terms of ψ(Ω^ω) of size at most `bound`, ascending.
    pub fn enumerate_psi(bound: usize) -> Vec<P> {
        P::enumerate(bound).into_iter().filter(P::in_psi).collect()
    }

    pub fn to_sexp(&self) -> Sexp {
        if self.0.is_empty() {
            return Sexp::atom("0");
        }
        Sexp::tagged(
            "+",
            self.0
                .iter()
                .map(|(m, x)| Sexp::tagged("P", vec![Sexp::atom(m.to_string()), Sexp::tagged("c", vec![x.to_sexp()])]))
                .collect(),
        )
    }

    pub fn from_sexp(sx: &Sexp) -> Result<P> {
        if sx.as_atom() == Some("0") {
            return Ok(P::zero());
        }
        let items = sx.expect_tagged("+")?;
        let mut out = Vec::new();
        for it in items {
            match it.as_tagged() {
                Some(("P", [m, c])) => {
                    let x = match c.as_tagged() {
                        Some(("c", [x])) => P::from_sexp(x)?,
                        _ => return Err(Error::Parse(format!("expected (c T), got {c}"))),
                    };
                    out.push((m.parse_u64()?, x));
                }
                _ => return Err(Error::Parse(format!("expected (P m (c T)), got {it}"))),
            }
        }
        let p = P(out);
        p.validate()?;
        Ok(p)
    }

    pub fn parse(src: &str) -> Result<P> {
        P::from_sexp(&crate::sexp::parse(src)?)
    }
}

impl fmt::Display for P {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexp())
    }
}
