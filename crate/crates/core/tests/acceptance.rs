mod oracle;

use fixord::embeddings::{c_sample, kappa_c, p_f_omit, psi1g_to_c, GoodsteinS};
use fixord::fixpoint::*;
use fixord::goodstein::{classic_run, classic_step, weak_run, weak_step};
use fixord::notations::{Nf, Ot, Phi, P};
use fixord::pathologies::{
    const_z_uniqueness_demo, dense_window_check, full_binary_trees, successor_check, tree_fixed_point, z_point_check,
};
use fixord::predilator::{inverse_prefix, Rational};
use fixord::verify::{self, fixture_predilators};
use fixord::{Predilator, Value};
use num_bigint::BigUint;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
    /// Set when part of the criterion cannot be met at desk scale; a failure is then reported but tolerated.
    unattainable: Option<&'static str>,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn worked_examples() -> Outcome {
    let five = BigUint::from(5u32);
    let c = classic_step(&five, 0).ok_or("no classic step")?;
    ensure(c.lifted == BigUint::from(28u32) && c.next == BigUint::from(27u32), || format!("classic {c:?}"))?;
    let w = weak_step(&five, 0).ok_or("no weak step")?;
    ensure(w.lifted == BigUint::from(10u32) && w.next == BigUint::from(9u32), || format!("weak {w:?}"))?;
    Ok("classic 5 ⇝ 28 ⇝ 27, weak 5 ⇝ 10 ⇝ 9".into())
}

const WEAK_SEED_8_CAP: usize = 100_000;

fn sequence_oracles() -> Outcome {
    for seed in 1..=6 {
        let ours: Vec<BigUint> = classic_run(seed, 50).into_iter().map(|s| s.value).collect();
        ensure(ours == oracle::classic(seed, 50), || format!("classic seed {seed} differs from the oracle"))?;
    }
    let to_u128 = |v: &BigUint| -> u128 { v.try_into().expect("weak values fit in u128") };
    for seed in 1..=7 {
        let theirs = oracle::weak(seed, 10_000);
        ensure(theirs.last() == Some(&0), || format!("oracle for weak seed {seed} did not terminate"))?;
        let ours: Vec<u128> = weak_run(seed, 10_000).iter().map(|s| to_u128(&s.value)).collect();
        ensure(ours == theirs, || format!("weak seed {seed} differs from the oracle"))?;
    }
    let ours: Vec<u128> = weak_run(8, WEAK_SEED_8_CAP).iter().map(|s| to_u128(&s.value)).collect();
    let theirs = oracle::weak(8, WEAK_SEED_8_CAP);
    ensure(ours == theirs, || "weak seed 8 prefix differs from the oracle".into())?;
    Err(format!(
        "classic 1–6 × 50 steps and weak 1–7 to termination agree; weak seed 8 agrees on {} steps but does not \
         reach 0 (value {} at base {})",
        WEAK_SEED_8_CAP,
        ours.last().unwrap(),
        WEAK_SEED_8_CAP + 2
    ))
}

fn inverse_prefixes() -> Outcome {
    let p = inverse_prefix(&Predilator::Goodstein, 20).map_err(|e| e.to_string())?;
    let expect = oracle::least_upper_naturals(20);
    for (k, v) in p.values.iter().enumerate() {
        let sx = Predilator::Goodstein.to_sexp(v).to_string();
        let b = (k as u64 + 1).max(2);
        ensure(oracle::eval_g_sexp(&sx, b) == BigUint::from(expect[k]), || format!("A_{k} = {sx}"))?;
    }
    ensure(p.values.len() == 20 && p.values[0] == Value::G(Default::default()), || "A_0 is not 0".into())?;
    for beta in 0..=20u64 {
        let q = inverse_prefix(&Predilator::konst(beta), 25).map_err(|e| e.to_string())?;
        let want: Vec<Value> = (0..beta as i64).map(Value::Int).collect();
        ensure(q.values == want && q.terminated_at == Some(beta as usize), || format!("const {beta}"))?;
    }
    let rights = [Predilator::Goodstein, Predilator::Weak, Predilator::konst(4), Predilator::bump(Predilator::Goodstein)];
    for d2 in rights {
        let a = inverse_prefix(&Predilator::sum(Predilator::Id, d2.clone()), 12).map_err(|e| e.to_string())?;
        let b = inverse_prefix(&d2, 12).map_err(|e| e.to_string())?;
        let shifted: Vec<Value> = b.values.into_iter().map(|v| Value::Inr(Box::new(v))).collect();
        ensure(a.values == shifted && a.terminated_at == b.terminated_at, || format!("sum id + {}", d2.name()))?;
    }
    Ok("G: A_k = k for k < 20; const β ≤ 20 terminates at β; id + D shifts D's sequence".into())
}

fn round_trip(d: &Predilator, sys: &System, terms: &[Tree]) -> Result<(), String> {
    let fail = |e: fixord::Error| format!("{}: {e}", d.name());
    let fp = terms_to_fragment(sys, terms).map_err(fail)?;
    let p = fp_to_termination(d, &fp).map_err(fail)?;
    ensure(termination_to_fp(&p) == fp, || format!("{}: fragment changed", d.name()))?;
    ensure(fp_to_termination(d, &termination_to_fp(&p)).map_err(fail)? == p, || format!("{}: prefix changed", d.name()))?;
    ensure(fragment_to_terms(sys, &fp).map_err(fail)? == terms, || format!("{}: terms changed", d.name()))
}

fn correspondence() -> Outcome {
    let mut count = 0;
    for d in fixture_predilators() {
        let sys = System::psi(d.clone());
        let terms = sys.enumerate(7, true);
        for k in 0..=terms.len().min(12) {
            round_trip(&d, &sys, &terms[..k])?;
            count += 1;
        }
        let canonical = TerminationPrefix { values: inverse_prefix(&d, 12).map_err(|e| e.to_string())?.values };
        let terms = fragment_to_terms(&sys, &termination_to_fp(&canonical)).map_err(|e| e.to_string())?;
        for k in 0..=terms.len() {
            round_trip(&d, &sys, &terms[..k])?;
            count += 1;
        }
    }
    Ok(format!("{count} prefixes of at most 12 terms over five predilators"))
}

fn results(rs: Vec<verify::CheckResult>) -> Outcome {
    let failed: Vec<String> = rs.iter().filter(|r| !r.passed).map(|r| format!("{}: {}", r.name, r.detail)).collect();
    let checked: usize = rs.iter().map(|r| r.checked).sum();
    ensure(failed.is_empty(), || failed.join("; "))?;
    Ok(format!("{} checks, {checked} items or pairs, zero violations", rs.len()))
}

fn linearity() -> Outcome {
    results(verify::linearity(6))
}

fn embeddings() -> Outcome {
    results(verify::embeddings(5))
}

fn pinned_identities() -> Outcome {
    let sample = c_sample(4, 3);
    let mut vals = Predilator::Goodstein.enumerate(sample.len(), 5);
    vals.sort_by(|a, b| Predilator::Goodstein.cmp(a, b));
    for v in &vals {
        let Value::G(g) = v else { unreachable!() };
        let mut e = kappa_c(g, &sample).map_err(|e| e.to_string())?.eval().e();
        let mut s: Vec<Ot> = Predilator::Goodstein.supp(v).into_iter().map(|i| sample[i].eval()).collect();
        for xs in [&mut e, &mut s] {
            xs.sort_by(Ot::cmp);
            xs.dedup();
        }
        ensure(e == s, || format!("E(κ(σ)) ≠ supp σ at {}", Predilator::Goodstein.to_sexp(v)))?;
    }
    let psi0 = P::psi(P::zero());
    let omega_psi0 = P::mono(1, P::zero());
    let lhs = p_f_omit(&[P::add(&omega_psi0, &psi0), psi0.clone()]);
    let rhs = p_f_omit(&[omega_psi0.clone(), psi0.clone()]);
    let expect = P::add(&omega_psi0, &P::psi(psi0.clone()));
    ensure(lhs == rhs && rhs == expect, || format!("omitted head: {lhs}, {rhs}, expected {expect}"))?;
    let s = GoodsteinS::new();
    let mut memo = HashMap::new();
    for n in 0..6 {
        ensure(Nf::cmp(&Nf::coded(n), &Nf::coded(n + 1)) == Ordering::Less, || format!("𝔠 coded {n}"))?;
        ensure(s.sys.cmp(&s.coded(n), &s.coded(n + 1)) == Ordering::Less, || format!("ψ₁(G) coded {n}"))?;
        let a = psi1g_to_c(&s.coded(n), &mut memo).map_err(|e| e.to_string())?;
        let b = psi1g_to_c(&s.coded(n + 1), &mut memo).map_err(|e| e.to_string())?;
        ensure(Nf::cmp(&a, &b) == Ordering::Less, || format!("image of coded {n}"))?;
    }
    let terms = Phi::enumerate(5);
    for z in &terms {
        for y in z.strict_subterms() {
            for x in &terms {
                if Phi::cmp(x, &y) != Ordering::Greater && Phi::cmp(x, z) != Ordering::Less {
                    return Err(format!("subterm property: {x} ≤ {y} ⊏ {z}"));
                }
            }
        }
    }
    Ok(format!(
        "E∘κ = supp on {} values; omitted-head collision; coded naturals ≤ 6; subterm property on {} terms",
        vals.len(),
        terms.len()
    ))
}

fn height_synthesis() -> Outcome {
    let mut prefixes = 0;
    for d in fixture_predilators() {
        let sys = System::psi(d.clone());
        let canonical = inverse_prefix(&d, 12).map_err(|e| e.to_string())?.values;
        let enumerated = terms_to_fragment(&sys, &sys.enumerate(7, true)).map_err(|e| e.to_string())?.values;
        for values in [canonical, enumerated] {
            let n = values.len() as u64;
            check_heights(&PrefixPrecedence { d: d.clone(), values }, n).map_err(|e| format!("{}: {e}", d.name()))?;
            prefixes += 1;
        }
    }
    let trees = full_binary_trees(7);
    for t in &trees {
        let fp = tree_fixed_point(t.clone(), 4);
        let rel = fp.precedence().map_err(|e| e.to_string())?;
        check_heights(&rel, fp.elems.len() as u64)?;
    }
    let z = z_point_check(-10, 10, 10);
    ensure(z.descent.len() >= 10, || format!("ℤ descent of length {}", z.descent.len()))?;
    ensure(z.descent.windows(2).all(|w| w[1] == w[0] - 1), || "ℤ descent is not a ≺-chain".into())?;
    Ok(format!(
        "{prefixes} ψ₁ prefixes and {} tree fixed points certified; ℤ reports a descent of length {}",
        trees.len(),
        z.descent.len()
    ))
}

fn pathology_checks() -> Outcome {
    let z = z_point_check(-10, 10, 10);
    ensure(z.report.passed(), || format!("ℤ point: {:?}", z.report.violations))?;
    let s = successor_check(&Predilator::Goodstein, 4);
    ensure(s.passed() && s.checked > 0, || format!("successor: {:?}", s.violations))?;
    for r in [Rational::from_integer(0), Rational::new(1, 3), Rational::new(7, 2)] {
        let rep = dense_window_check(r, 6);
        ensure(rep.passed(), || format!("dense r = {r}: {:?}", rep.violations))?;
    }
    for width in 1..=20i64 {
        for start in [-10i64, 0, 7] {
            let window: Vec<i64> = (start..start + width).collect();
            let demo = const_z_uniqueness_demo(&window);
            ensure(demo.iso.is_some(), || format!("no isomorphism on window of width {width} at {start}"))?;
        }
    }
    Ok(format!("ℤ point, {} successors in ψ₁(bump(G)), three dense windows, widths 1–20", s.checked))
}

fn uniqueness() -> Outcome {
    let mut total = 0;
    for d in [Predilator::Goodstein, Predilator::Weak] {
        let sys = System::psi(d.clone());
        let terms = sys.enumerate(6, true);
        let fp = terms_to_fragment(&sys, &terms).map_err(|e| e.to_string())?;
        let images = unique_hom(&sys, &fp).map_err(|e| e.to_string())?;
        ensure(images == terms, || format!("{}: not the identity", d.name()))?;
        ensure(check_hom(&sys, &fp, &images).is_empty(), || format!("{}: not a homomorphism", d.name()))?;
        total += terms.len();
    }
    Ok(format!("identity on {total} terms of ψ₁(G) and ψ₁(W)"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "worked examples", limit: Duration::from_secs(1), run: worked_examples, unattainable: None },
        Criterion {
            id: 2,
            name: "sequence oracles",
            limit: Duration::from_secs(10),
            run: sequence_oracles,
            unattainable: Some("weak seed 8 needs more steps than can be run"),
        },
        Criterion { id: 3, name: "inverse prefixes", limit: Duration::from_secs(10), run: inverse_prefixes, unattainable: None },
        Criterion { id: 4, name: "correspondence round trips", limit: Duration::from_secs(60), run: correspondence, unattainable: None },
        Criterion { id: 5, name: "linearity", limit: Duration::from_secs(300), run: linearity, unattainable: None },
        Criterion { id: 6, name: "embedding monotonicity", limit: Duration::from_secs(600), run: embeddings, unattainable: None },
        Criterion { id: 7, name: "pinned identities", limit: Duration::from_secs(60), run: pinned_identities, unattainable: None },
        Criterion { id: 8, name: "height synthesis", limit: Duration::from_secs(60), run: height_synthesis, unattainable: None },
        Criterion { id: 9, name: "pathologies", limit: Duration::from_secs(60), run: pathology_checks, unattainable: None },
        Criterion { id: 10, name: "uniqueness", limit: Duration::from_secs(60), run: uniqueness, unattainable: None },
    ];
    let mut unexpected = 0;
    for c in &criteria {
        let start = Instant::now();
        let out = (c.run)();
        let elapsed = start.elapsed();
        let timely = elapsed <= c.limit;
        let (status, detail) = match (&out, timely) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over time limit; {d}")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        let note = match (status, c.unattainable) {
            ("FAIL", Some(why)) => format!(" [known unattainable: {why}]"),
            ("FAIL", None) => {
                unexpected += 1;
                String::new()
            }
            _ => String::new(),
        };
        println!(
            "{status} {:>2} {:<28} {:>8.2}s / {:>4}s  {detail}{note}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
