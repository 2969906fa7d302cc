//! Reference implementations that share no code with the library.
#![allow(dead_code)]

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Hereditary base-`b` notation of `n` with the base written as the letter `B`,
/// e.g. 5 in base 2 is `1*B^(1*B^(1*B^(0)))+1*B^(0)`.
pub fn hereditary(n: &BigUint, b: u32) -> String {
    if n.is_zero() {
        return "0".into();
    }
    let mut digits = Vec::new();
    let mut rest = n.clone();
    while !rest.is_zero() {
        digits.push((&rest % b).to_u32().unwrap());
        rest /= b;
    }
    let mut parts = Vec::new();
    for (e, d) in digits.iter().enumerate().rev() {
        if *d > 0 {
            parts.push(format!("{d}*B^({})", hereditary(&BigUint::from(e), b)));
        }
    }
    parts.join("+")
}

/// Evaluates `expr := '0' | term ('+' term)*`, `term := num '*' num '^(' expr ')'`.
pub fn eval_expr(s: &str) -> BigUint {
    fn expr(s: &[u8], i: &mut usize) -> BigUint {
        if s.get(*i) == Some(&b'0') && matches!(s.get(*i + 1), None | Some(b')')) {
            *i += 1;
            return BigUint::zero();
        }
        let mut total = BigUint::zero();
        loop {
            let coef = num(s, i);
            expect(s, i, b'*');
            let base = num(s, i);
            expect(s, i, b'^');
            expect(s, i, b'(');
            let e = expr(s, i);
            expect(s, i, b')');
            total += coef * base.pow(e.to_u32().unwrap());
            if s.get(*i) == Some(&b'+') {
                *i += 1;
            } else {
                return total;
            }
        }
    }
    fn num(s: &[u8], i: &mut usize) -> BigUint {
        let start = *i;
        while s.get(*i).is_some_and(u8::is_ascii_digit) {
            *i += 1;
        }
        std::str::from_utf8(&s[start..*i]).unwrap().parse().unwrap()
    }
    fn expect(s: &[u8], i: &mut usize, c: u8) {
        assert_eq!(s[*i], c, "at {i} in {}", std::str::from_utf8(s).unwrap());
        *i += 1;
    }
    let mut i = 0;
    let v = expr(s.as_bytes(), &mut i);
    assert_eq!(i, s.len());
    v
}

/// Classic Goodstein values by rewriting the base letter; stage n uses base n+2.
pub fn classic(seed: u64, steps: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::from(seed)];
    for n in 0..steps {
        let v = out.last().unwrap();
        if v.is_zero() {
            break;
        }
        let s = hereditary(v, n as u32 + 2).replace('B', &(n + 3).to_string());
        out.push(eval_expr(&s) - 1u32);
    }
    out
}

/// Weak Goodstein values by plain base-digit simulation, until 0 or `cap` steps.
pub fn weak(seed: u64, cap: usize) -> Vec<u128> {
    let mut out = vec![seed as u128];
    let mut b: u128 = 2;
    while *out.last().unwrap() != 0 && out.len() <= cap {
        let mut v = *out.last().unwrap();
        let mut lifted: u128 = 0;
        let mut place: u128 = 1;
        while v > 0 {
            lifted += (v % b) * place;
            place *= b + 1;
            v /= b;
        }
        out.push(lifted - 1);
        b += 1;
    }
    out
}

/// Increasing sequence over an order isomorphic to ℕ: a_k is the least number above all earlier ones.
pub fn least_upper_naturals(n: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for _ in 0..n {
        let next = (0..).find(|c| out.iter().all(|a| a < c)).unwrap();
        out.push(next);
    }
    out
}

/// Reads `(+ (g exp coef) ...)` in base `b`: Σ b^exp·(1+coef).
pub fn eval_g_sexp(s: &str, b: u64) -> BigUint {
    fn term(s: &[u8], i: &mut usize, b: u64) -> BigUint {
        skip(s, i);
        assert!(s[*i..].starts_with(b"(+"));
        *i += 2;
        let mut total = BigUint::zero();
        loop {
            skip(s, i);
            if s[*i] == b')' {
                *i += 1;
                return total;
            }
            assert!(s[*i..].starts_with(b"(g"));
            *i += 2;
            let e = term(s, i, b);
            skip(s, i);
            let start = *i;
            while s[*i].is_ascii_digit() {
                *i += 1;
            }
            let c: u64 = std::str::from_utf8(&s[start..*i]).unwrap().parse().unwrap();
            skip(s, i);
            assert_eq!(s[*i], b')');
            *i += 1;
            total += BigUint::from(b).pow(e.to_u32().unwrap()) * (c + 1);
        }
    }
    fn skip(s: &[u8], i: &mut usize) {
        while s[*i] == b' ' {
            *i += 1;
        }
    }
    let mut i = 0;
    term(s.as_bytes(), &mut i, b)
}
