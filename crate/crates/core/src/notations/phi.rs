//! The notation system φ(ω,0) for the finite Veblen hierarchy.

use super::decreasing_seqs;
use crate::error::{malformed, Error, Result};
use crate::order::{is_weakly_decreasing, merge_sort_by, seq_cmp};
use crate::sexp::Sexp;
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Phi {
    Zero,
    /// At least two indecomposable summands, weakly decreasing.
    Sum(Vec<Phi>),
    /// φ(n, x) with head(x) ≤ n.
    App(u64, Box<Phi>),
}

impl Phi {
    /// φ(n, x); fails when the head constraint is violated.
    pub fn app(n: u64, x: Phi) -> Result<Phi> {
        if x.head() > n {
            return malformed(format!("head of {x} exceeds {n}"));
        }
        Ok(Phi::App(n, Box::new(x)))
    }

    /// φ(0,0), the least indecomposable term.
    pub fn one() -> Phi {
        Phi::App(0, Box::new(Phi::Zero))
    }

    pub fn head(&self) -> u64 {
        match self {
            Phi::App(n, _) => *n,
            _ => 0,
        }
    }

    pub fn is_indecomposable(&self) -> bool {
        matches!(self, Phi::App(..))
    }

    /// The indecomposable summands, empty for 0.
    pub fn members(&self) -> Vec<Phi> {
        match self {
            Phi::Zero => Vec::new(),
            Phi::Sum(xs) => xs.clone(),
            other => vec![other.clone()],
        }
    }

    pub fn from_members(mut xs: Vec<Phi>) -> Phi {
        match xs.len() {
            0 => Phi::Zero,
            1 => xs.pop().unwrap(),
            _ => Phi::Sum(xs),
        }
    }

    pub fn cmp(a: &Phi, b: &Phi) -> Ordering {
        use Phi::*;
        match (a, b) {
            (Zero, Zero) => Ordering::Equal,
            (Zero, _) => Ordering::Less,
            (_, Zero) => Ordering::Greater,
            (Sum(xs), Sum(ys)) => seq_cmp(xs, ys, Phi::cmp),
            (Sum(xs), App(..)) => {
                if Phi::cmp(&xs[0], b) == Ordering::Less {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (App(..), Sum(_)) => Phi::cmp(b, a).reverse(),
            (App(n, x), App(m, y)) => {
                let less = |n: u64, x: &Phi, m: u64, y: &Phi, whole_b: &Phi| match n.cmp(&m) {
                    Ordering::Less => Phi::cmp(x, whole_b) == Ordering::Less,
                    Ordering::Equal => Phi::cmp(x, y) == Ordering::Less,
                    Ordering::Greater => false,
                };
                if a == b {
                    Ordering::Equal
                } else if less(*n, x, *m, y, b) || (*n > *m && Phi::cmp(a, y) == Ordering::Less) {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Phi::Zero => Ok(()),
            Phi::App(n, x) => {
                x.validate()?;
                if x.head() > *n {
                    return malformed(format!("head of {x} exceeds {n}"));
                }
                Ok(())
            }
            Phi::Sum(xs) => {
                if xs.len() < 2 || !xs.iter().all(Phi::is_indecomposable) {
                    return malformed("a sum needs at least two indecomposable summands");
                }
                xs.iter().try_for_each(Phi::validate)?;
                if !is_weakly_decreasing(xs, Phi::cmp) {
                    return malformed("summands are not weakly decreasing");
                }
                Ok(())
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Phi::Zero => 1,
            Phi::App(n, x) => 1 + *n as usize + x.size(),
            Phi::Sum(xs) => 1 + xs.iter().map(Phi::size).sum::<usize>(),
        }
    }

    /// Every strict subterm used in building this term.
    pub fn strict_subterms(&self) -> Vec<Phi> {
        let mut out = Vec::new();
        let direct: Vec<&Phi> = match self {
            Phi::Zero => Vec::new(),
            Phi::App(_, x) => vec![x],
            Phi::Sum(xs) => xs.iter().collect(),
        };
        for d in direct {
            out.push(d.clone());
            out.extend(d.strict_subterms());
        }
        out
    }

    /// All terms of size at most `bound`, ascending.
    pub fn enumerate(bound: usize) -> Vec<Phi> {
        let mut all: Vec<(Phi, usize)> = Vec::new();
        for s in 1..=bound {
            let mut fresh = Vec::new();
            if s == 1 {
                fresh.push(Phi::Zero);
            }
            for (x, k) in &all {
                if k + 1 <= s {
                    let n = (s - 1 - k) as u64;
                    if x.head() <= n {
                        fresh.push(Phi::App(n, Box::new(x.clone())));
                    }
                }
            }
            let mut desc: Vec<(Phi, usize)> =
                all.iter().filter(|(x, _)| x.is_indecomposable()).cloned().collect();
            merge_sort_by(&mut desc, &mut |a, b| Phi::cmp(&b.0, &a.0));
            if s > 1 {
                for xs in decreasing_seqs(&desc, s - 1) {
                    if xs.len() >= 2 {
                        fresh.push(Phi::Sum(xs));
                    }
                }
            }
            all.extend(fresh.into_iter().map(|t| (t, s)));
        }
        let mut out: Vec<Phi> = all.into_iter().map(|(t, _)| t).collect();
        merge_sort_by(&mut out, &mut |a, b| Phi::cmp(a, b));
        out
    }

    pub fn to_sexp(&self) -> Sexp {
        match self {
            Phi::Zero => Sexp::atom("0"),
            Phi::App(n, x) => Sexp::tagged("p", vec![Sexp::atom(n.to_string()), x.to_sexp()]),
            Phi::Sum(xs) => Sexp::tagged("+", xs.iter().map(Phi::to_sexp).collect()),
        }
    }

    pub fn from_sexp(sx: &Sexp) -> Result<Phi> {
        let t = match sx {
            Sexp::Atom(a) if a == "0" => Phi::Zero,
            _ => match sx.as_tagged() {
                Some(("p", [n, x])) => Phi::App(n.parse_u64()?, Box::new(Phi::from_sexp(x)?)),
                Some(("+", items)) => Phi::Sum(items.iter().map(Phi::from_sexp).collect::<Result<_>>()?),
                _ => return Err(Error::Parse(format!("not a φ-term: {sx}"))),
            },
        };
        t.validate()?;
        Ok(t)
    }

    pub fn parse(src: &str) -> Result<Phi> {
        Phi::from_sexp(&crate::sexp::parse(src)?)
    }
}

impl fmt::Display for Phi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_comparisons() {
        let p00 = Phi::one();
        let p10 = Phi::app(1, Phi::Zero).unwrap();
        assert!(Phi::app(0, p10.clone()).is_err());
        let p0s = Phi::app(0, Phi::Sum(vec![p10.clone(), p00.clone()])).unwrap();
        assert_eq!(Phi::cmp(&Phi::Zero, &p00), Ordering::Less);
        assert_eq!(Phi::cmp(&p00, &p10), Ordering::Less);
        assert_eq!(Phi::cmp(&p10, &p0s), Ordering::Less);
        assert_eq!(Phi::cmp(&p0s, &Phi::app(1, p00.clone()).unwrap()), Ordering::Less);
    }

    #[test]
    fn enumeration_is_linear() {
        let terms = Phi::enumerate(6);
        assert!(terms.iter().all(|t| t.validate().is_ok()));
        crate::order::check_linear(&terms, Phi::cmp).unwrap();
    }
}
