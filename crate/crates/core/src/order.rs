//! Finite linear orders, order maps, ω-powers and the linearity suite.
//!
//! A finite order of size `n` is the set `0..n` with the usual order. An order
//! map `f: n -> m` is a strictly increasing index vector of length `n`.

use crate::error::{malformed, Error, Result};
use crate::sexp::Sexp;
use std::cmp::Ordering;
use std::fmt;

pub type OrderMap = Vec<usize>;

pub fn is_order_map(f: &[usize], codomain: usize) -> bool {
    f.windows(2).all(|w| w[0] < w[1]) && f.last().map_or(true, |&l| l < codomain)
}

/// The inclusion of `n` into `m` as an initial segment.
pub fn inclusion(n: usize) -> OrderMap {
    (0..n).collect()
}

pub fn compose(g: &[usize], f: &[usize]) -> OrderMap {
    f.iter().map(|&i| g[i]).collect()
}

/// `f↾(X↾x)`: restriction to the elements below `x`, with codomain `Y↾f(x)`.
pub fn restrict(f: &[usize], x: usize) -> (OrderMap, usize) {
    (f[..x].to_vec(), f[x])
}

/// The order map enumerating `subset` (sorted) inside its ambient order.
pub fn enumeration_of(subset: &[usize]) -> OrderMap {
    subset.to_vec()
}

/// `a <_fin x`: every element of `a` lies below `x`.
pub fn all_below<T>(a: &[T], x: &T, cmp: impl Fn(&T, &T) -> Ordering) -> bool {
    a.iter().all(|y| cmp(y, x) == Ordering::Less)
}

/// `x ≤_fin a`: some element of `a` lies at or above `x`.
pub fn some_at_least<T>(x: &T, a: &[T], cmp: impl Fn(&T, &T) -> Ordering) -> bool {
    a.iter().any(|y| cmp(x, y) != Ordering::Greater)
}

/// Order on ω^X: proper extension or smaller at the first difference.
pub fn seq_cmp<T>(a: &[T], b: &[T], cmp: impl Fn(&T, &T) -> Ordering) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match cmp(x, y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

pub fn is_weakly_decreasing<T>(a: &[T], cmp: impl Fn(&T, &T) -> Ordering) -> bool {
    a.windows(2).all(|w| cmp(&w[0], &w[1]) != Ordering::Less)
}

/// Elements of the iterated power ω^⟨n,X⟩. The base `X` may carry an extra
/// top element, written `T`, which is the index equal to the base size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tower {
    Base(usize),
    Seq(Vec<Tower>),
}

impl Tower {
    pub fn level(&self) -> Option<usize> {
        match self {
            Tower::Base(_) => Some(0),
            Tower::Seq(xs) => {
                let mut lvl = None;
                for x in xs {
                    let l = x.level()?;
                    if lvl.is_some_and(|m| m != l) {
                        return None;
                    }
                    lvl = Some(l);
                }
                Some(lvl.map_or(1, |l| l + 1))
            }
        }
    }

    /// Checks membership in ω^⟨n,X⟩ for a base of `base` elements.
    pub fn validate(&self, n: usize, base: usize) -> Result<()> {
        match (self, n) {
            (Tower::Base(x), 0) if *x < base => Ok(()),
            (Tower::Base(x), 0) => malformed(format!("element {x} outside base of size {base}")),
            (Tower::Seq(xs), n) if n > 0 => {
                for x in xs {
                    x.validate(n - 1, base)?;
                }
                if !is_weakly_decreasing(xs, Tower::cmp) {
                    return malformed(format!("{self} is not weakly decreasing"));
                }
                Ok(())
            }
            _ => malformed(format!("{self} is not at level {n}")),
        }
    }

    pub fn cmp(a: &Tower, b: &Tower) -> Ordering {
        match (a, b) {
            (Tower::Base(x), Tower::Base(y)) => x.cmp(y),
            (Tower::Seq(xs), Tower::Seq(ys)) => seq_cmp(xs, ys, Tower::cmp),
            (Tower::Base(_), Tower::Seq(_)) => Ordering::Less,
            (Tower::Seq(_), Tower::Base(_)) => Ordering::Greater,
        }
    }

    /// Every element of ω^⟨n,X⟩ whose sequences all have length at most `max_len`.
    pub fn enumerate(n: usize, base: usize, max_len: usize) -> Vec<Tower> {
        if n == 0 {
            return (0..base).map(Tower::Base).collect();
        }
        let mut below = Tower::enumerate(n - 1, base, max_len);
        below.sort_by(|a, b| Tower::cmp(b, a));
        let mut out = Vec::new();
        let mut cur = Vec::new();
        weakly_decreasing_choices(&below, 0, max_len, &mut cur, &mut out);
        out.into_iter().map(Tower::Seq).collect()
    }

    pub fn to_sexp(&self, base: usize) -> Sexp {
        match self {
            Tower::Base(x) if *x == base => Sexp::atom("T"),
            Tower::Base(x) => Sexp::atom(x.to_string()),
            Tower::Seq(xs) => Sexp::tagged("s", xs.iter().map(|x| x.to_sexp(base)).collect()),
        }
    }

    pub fn from_sexp(sx: &Sexp, base: usize) -> Result<Tower> {
        match sx {
            Sexp::Atom(a) if a == "T" => Ok(Tower::Base(base)),
            Sexp::Atom(_) => Ok(Tower::Base(sx.parse_usize()?)),
            _ => {
                let args = sx.expect_tagged("s")?;
                Ok(Tower::Seq(
                    args.iter().map(|a| Tower::from_sexp(a, base)).collect::<Result<_>>()?,
                ))
            }
        }
    }
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tower::Base(x) => write!(f, "{x}"),
            Tower::Seq(xs) => {
                write!(f, "<")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ">")
            }
        }
    }
}

/// Pushes every weakly decreasing sequence over `desc` (sorted descending)
/// starting at index `from` with at most `room` further members.
pub fn weakly_decreasing_choices<T: Clone>(
    desc: &[T],
    from: usize,
    room: usize,
    cur: &mut Vec<T>,
    out: &mut Vec<Vec<T>>,
) {
    out.push(cur.clone());
    if room == 0 {
        return;
    }
    for i in from..desc.len() {
        cur.push(desc[i].clone());
        weakly_decreasing_choices(desc, i, room - 1, cur, out);
        cur.pop();
    }
}

/// Stable merge sort that tolerates inconsistent comparators.
pub fn merge_sort_by<T: Clone>(items: &mut Vec<T>, cmp: &mut impl FnMut(&T, &T) -> Ordering) {
    if items.len() <= 1 {
        return;
    }
    let mut right = items.split_off(items.len() / 2);
    merge_sort_by(items, cmp);
    merge_sort_by(&mut right, cmp);
    let left = std::mem::take(items);
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        if cmp(&right[j], &left[i]) == Ordering::Less {
            items.push(right[j].clone());
            j += 1;
        } else {
            items.push(left[i].clone());
            i += 1;
        }
    }
    items.extend_from_slice(&left[i..]);
    items.extend_from_slice(&right[j..]);
}

/// Sorts by size first and by the term order among terms of equal size.
pub fn canonical_sort<T: Clone>(
    items: &mut Vec<T>,
    size: impl Fn(&T) -> usize,
    cmp: impl Fn(&T, &T) -> Ordering,
) {
    merge_sort_by(items, &mut |a, b| size(a).cmp(&size(b)).then_with(|| cmp(a, b)));
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearityViolation {
    Irreflexive(usize),
    Antisymmetry(usize, usize),
    Asymmetry(usize, usize),
    Transitivity(usize, usize, usize),
}

impl fmt::Display for LinearityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearityViolation::Irreflexive(i) => write!(f, "term #{i} does not compare equal to itself"),
            LinearityViolation::Antisymmetry(i, j) => write!(f, "distinct terms #{i} and #{j} compare equal"),
            LinearityViolation::Asymmetry(i, j) => write!(f, "terms #{i} and #{j} compare inconsistently in the two directions"),
            LinearityViolation::Transitivity(i, j, k) => write!(f, "#{i} < #{j} < #{k} but not #{i} < #{k}"),
        }
    }
}

const BRUTE_FORCE_LIMIT: usize = 120;

/// Checks that `cmp` is a strict linear order on the pairwise distinct `items`.
///
/// Small inputs are checked triple by triple. Larger inputs are sorted and
/// every pair is compared against the sorted positions, which certifies
/// transitivity for all triples at quadratic cost.
pub fn check_linear<T: Clone>(
    items: &[T],
    cmp: impl Fn(&T, &T) -> Ordering,
) -> std::result::Result<(), LinearityViolation> {
    let n = items.len();
    for i in 0..n {
        if cmp(&items[i], &items[i]) != Ordering::Equal {
            return Err(LinearityViolation::Irreflexive(i));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let a = cmp(&items[i], &items[j]);
            if a == Ordering::Equal {
                return Err(LinearityViolation::Antisymmetry(i, j));
            }
            if cmp(&items[j], &items[i]) != a.reverse() {
                return Err(LinearityViolation::Asymmetry(i, j));
            }
        }
    }
    if n <= BRUTE_FORCE_LIMIT {
        return brute_transitivity(items, &cmp, &(0..n).collect::<Vec<_>>());
    }
    let mut idx: Vec<usize> = (0..n).collect();
    merge_sort_by(&mut idx, &mut |&a, &b| cmp(&items[a], &items[b]));
    for p in 0..n {
        for q in p + 1..n {
            if cmp(&items[idx[p]], &items[idx[q]]) != Ordering::Less {
                // the first failure after a run of successes yields a triple
                if q > p + 1 && cmp(&items[idx[p]], &items[idx[q - 1]]) == Ordering::Less
                    && cmp(&items[idx[q - 1]], &items[idx[q]]) == Ordering::Less
                {
                    return Err(LinearityViolation::Transitivity(idx[p], idx[q - 1], idx[q]));
                }
                return brute_transitivity(items, &cmp, &idx);
            }
        }
    }
    Ok(())
}

fn brute_transitivity<T>(
    items: &[T],
    cmp: &impl Fn(&T, &T) -> Ordering,
    idx: &[usize],
) -> std::result::Result<(), LinearityViolation> {
    for &i in idx {
        for &j in idx {
            if cmp(&items[i], &items[j]) != Ordering::Less {
                continue;
            }
            for &k in idx {
                if cmp(&items[j], &items[k]) == Ordering::Less
                    && cmp(&items[i], &items[k]) != Ordering::Less
                {
                    return Err(LinearityViolation::Transitivity(i, j, k));
                }
            }
        }
    }
    Ok(())
}

/// Convenience wrapper turning a linearity violation into an error message.
pub fn require_linear<T: Clone + fmt::Display>(
    name: &str,
    items: &[T],
    cmp: impl Fn(&T, &T) -> Ordering,
) -> Result<()> {
    check_linear(items, cmp).map_err(|v| {
        let show = |i: usize| items[i].to_string();
        let detail = match &v {
            LinearityViolation::Irreflexive(i) => show(*i),
            LinearityViolation::Antisymmetry(i, j) | LinearityViolation::Asymmetry(i, j) => {
                format!("{} / {}", show(*i), show(*j))
            }
            LinearityViolation::Transitivity(i, j, k) => {
                format!("{} / {} / {}", show(*i), show(*j), show(*k))
            }
        };
        Error::Violation(format!("{name}: {v}: {detail}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_counts() {
        // weakly decreasing sequences over 2 elements of length ≤ 4
        assert_eq!(Tower::enumerate(1, 2, 4).len(), 15);
        // six level-one sequences of length ≤ 2, then 1 + 6 + 21
        assert_eq!(Tower::enumerate(2, 2, 2).len(), 28);
    }

    #[test]
    fn omega_power_order() {
        let a = Tower::Seq(vec![Tower::Base(1)]);
        let b = Tower::Seq(vec![Tower::Base(1), Tower::Base(0)]);
        let c = Tower::Seq(vec![Tower::Base(0), Tower::Base(0), Tower::Base(0)]);
        assert_eq!(Tower::cmp(&a, &b), Ordering::Less);
        assert_eq!(Tower::cmp(&c, &a), Ordering::Less);
        assert!(Tower::Seq(vec![Tower::Base(0), Tower::Base(1)]).validate(1, 2).is_err());
    }

    #[test]
    fn linear_suite_detects_corruption() {
        let items: Vec<i32> = (0..10).collect();
        assert!(check_linear(&items, |a, b| a.cmp(b)).is_ok());
        // rock-paper-scissors on residues mod 3
        let bad = |a: &i32, b: &i32| {
            if a == b {
                Ordering::Equal
            } else if (a % 3 + 1) % 3 == b % 3 {
                Ordering::Less
            } else if (b % 3 + 1) % 3 == a % 3 {
                Ordering::Greater
            } else {
                a.cmp(b)
            }
        };
        assert!(matches!(check_linear(&items, bad), Err(LinearityViolation::Transitivity(..))));
        let big: Vec<i32> = (0..300).collect();
        assert!(matches!(check_linear(&big, bad), Err(LinearityViolation::Transitivity(..))));
        assert!(check_linear(&big, |a, b| a.cmp(b)).is_ok());
    }

    #[test]
    fn restriction_and_inclusion() {
        let f = vec![0, 2, 5, 7];
        assert!(is_order_map(&f, 8));
        assert_eq!(restrict(&f, 2), (vec![0, 2], 5));
        assert_eq!(compose(&f, &inclusion(3)), vec![0, 2, 5]);
    }
}
