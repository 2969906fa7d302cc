//! Concrete ordinal notation systems: OT(ϑ), its Ω-normal forms, φ(ω,0) and 𝔓.

pub mod nf;
pub mod ot;
pub mod phi;
pub mod pterm;

pub use nf::{Low, Nf};
pub use ot::Ot;
pub use phi::Phi;
pub use pterm::P;

/// Every sequence over `desc` taken with non-decreasing indices whose costs
/// add up to exactly `total`. Each entry of `desc` carries its cost.
pub(crate) fn decreasing_seqs<T: Clone>(desc: &[(T, usize)], total: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(desc: &[(T, usize)], from: usize, left: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..desc.len() {
            let c = desc[i].1;
            if c == 0 || c > left {
                continue;
            }
            cur.push(desc[i].0.clone());
            go(desc, i, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(desc, 0, total, &mut Vec::new(), &mut out);
    out
}
