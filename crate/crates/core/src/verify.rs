//! Aggregated check suites over the term orders, fixed points, embeddings and pathologies.

use crate::embeddings::{self, c_sample};
use crate::fixpoint::{
    fp_to_termination, fragment_to_terms, termination_to_fp, terms_to_fragment, unique_hom, System,
};
use crate::goodstein::{classic_step, weak_step, GTerm, WTerm};
use crate::notations::{nf, Nf, Ot, Phi, P};
use crate::order::{check_linear, Tower};
use crate::pathologies;
use crate::predilator::{Predilator, Rational};
use num_bigint::BigUint;
use std::cmp::Ordering;
use std::time::Instant;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub detail: String,
    pub millis: u128,
}

fn timed(suite: &str, name: &str, f: impl FnOnce() -> (usize, Result<(), String>)) -> CheckResult {
    let start = Instant::now();
    let (checked, out) = f();
    CheckResult {
        suite: suite.into(),
        name: name.into(),
        passed: out.is_ok(),
        checked,
        detail: out.err().unwrap_or_default(),
        millis: start.elapsed().as_millis(),
    }
}

fn linear<T: Clone>(name: &str, items: Vec<T>, cmp: impl Fn(&T, &T) -> Ordering) -> CheckResult {
    timed("linearity", name, || (items.len(), check_linear(&items, cmp).map_err(|v| v.to_string())))
}

/// The predilators whose fixed points are checked by the suites.
pub fn fixture_predilators() -> Vec<Predilator> {
    vec![
        Predilator::Goodstein,
        Predilator::Weak,
        Predilator::konst(3),
        Predilator::sum(Predilator::konst(2), Predilator::konst(3)),
        Predilator::bump(Predilator::Goodstein),
    ]
}

/// Irreflexivity, trichotomy and transitivity for every shipped term order.
pub fn linearity(size: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for k in 1..=3 {
        out.push(linear(&format!("G({k})"), GTerm::enumerate(k, size), GTerm::cmp));
        out.push(linear(&format!("W({k})"), WTerm::enumerate(k, size), WTerm::cmp));
    }
    for n in 0..=2 {
        out.push(linear(&format!("omega^<{n},2>"), Tower::enumerate(n, 2, size.min(4)), Tower::cmp));
    }
    out.push(linear("OT", Ot::enumerate(size), Ot::cmp));
    // Nf::cmp compares evaluations, so each term is evaluated once
    let evaluated = |xs: Vec<Nf>| xs.into_iter().map(|x| (x.eval(), x)).collect::<Vec<_>>();
    out.push(linear("N", evaluated(nf::enumerate(size)), |a, b| Ot::cmp(&a.0, &b.0)));
    let mut c: Vec<_> = nf::enumerate(size).into_iter().filter(|x| x.is_collapsed()).collect();
    c.extend(c_sample(size, 3));
    c.sort_by(Nf::cmp);
    c.dedup();
    out.push(linear("C", evaluated(c), |a, b| Ot::cmp(&a.0, &b.0)));
    out.push(linear("phi", Phi::enumerate(size), Phi::cmp));
    out.push(linear("P", P::enumerate(size), P::cmp));
    for d in fixture_predilators() {
        let sys = System::psi(d.clone());
        out.push(linear(&format!("psi1({})", d.name()), sys.enumerate(size, true), |a, b| sys.cmp(a, b)));
    }
    out
}

/// The worked examples of both Goodstein sequences.
pub fn sequences() -> Vec<CheckResult> {
    let expect = |name: &str, step: Option<crate::goodstein::Step>, lifted: u32, next: u32| {
        timed("sequences", name, || {
            let ok = step.as_ref().is_some_and(|s| s.lifted == BigUint::from(lifted) && s.next == BigUint::from(next));
            (1, if ok { Ok(()) } else { Err(format!("expected {lifted} then {next}, got {step:?}")) })
        })
    };
    let five = BigUint::from(5u32);
    vec![
        expect("classic seed 5", classic_step(&five, 0), 28, 27),
        expect("weak seed 5", weak_step(&five, 0), 10, 9),
    ]
}

/// Round trips between fixed-point fragments and termination prefixes, and
/// the identity as the unique homomorphism, on prefixes of at most 12 terms.
pub fn fixpoints(size: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for d in fixture_predilators() {
        let sys = System::psi(d.clone());
        let terms = sys.enumerate(size, true);
        out.push(timed("fixpoints", &format!("round trip {}", d.name()), || {
            let mut checked = 0;
            for k in 0..=terms.len().min(12) {
                checked += 1;
                let res = (|| -> crate::Result<()> {
                    let fp = terms_to_fragment(&sys, &terms[..k])?;
                    let p = fp_to_termination(&d, &fp)?;
                    if termination_to_fp(&p) != fp {
                        return Err(crate::Error::Violation("fragment changed".into()));
                    }
                    if fp_to_termination(&d, &termination_to_fp(&p))? != p {
                        return Err(crate::Error::Violation("prefix changed".into()));
                    }
                    if fragment_to_terms(&sys, &fp)? != terms[..k] {
                        return Err(crate::Error::Violation("terms changed".into()));
                    }
                    Ok(())
                })();
                if let Err(e) = res {
                    return (checked, Err(format!("prefix of length {k}: {e}")));
                }
            }
            (checked, Ok(()))
        }));
    }
    for d in [Predilator::Goodstein, Predilator::Weak] {
        let sys = System::psi(d.clone());
        out.push(timed("fixpoints", &format!("unique hom {}", d.name()), || {
            let terms = sys.enumerate(size, true);
            let res = terms_to_fragment(&sys, &terms).and_then(|fp| unique_hom(&sys, &fp));
            match res {
                Ok(images) if images == terms => (terms.len(), Ok(())),
                Ok(_) => (terms.len(), Err("homomorphism is not the identity".into())),
                Err(e) => (terms.len(), Err(e.to_string())),
            }
        }));
    }
    out
}

/// Strict monotonicity of every named embedding.
pub fn embeddings(size: usize) -> Vec<CheckResult> {
    embeddings::MAPS.iter().map(|name| embedding(name, size)).collect()
}

pub fn embedding(name: &str, size: usize) -> CheckResult {
    timed("embeddings", name, || match embeddings::verify_map(name, size) {
        Ok(r) if r.passed() => (r.pairs, Ok(())),
        Ok(r) => (r.pairs, Err(format!("{} violations, first: {}", r.violations.len(), r.violations[0]))),
        Err(e) => (0, Err(e.to_string())),
    })
}

fn report(r: pathologies::Report) -> (usize, Result<(), String>) {
    let checked = r.checked;
    if r.passed() {
        (checked, Ok(()))
    } else {
        (checked, Err(format!("{} violations, first: {}", r.violations.len(), r.violations[0])))
    }
}

/// The ℤ point, tree fixed points, bumped successors, dense carriers and const-ℤ prefixes.
pub fn pathologies(size: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.push(timed("pathologies", "z point [-10,10]", || {
        let z = pathologies::z_point_check(-10, 10, 10);
        let len = z.descent.len();
        match report(z.report) {
            (n, Ok(())) if len >= 10 => (n, Ok(())),
            (n, Ok(())) => (n, Err(format!("descent of length {len} only"))),
            other => other,
        }
    }));
    out.push(timed("pathologies", "tree fixed points", || {
        let mut checked = 0;
        for t in pathologies::full_binary_trees(7) {
            let fp = pathologies::tree_fixed_point(t, 3);
            let (n, r) = report(fp.check(1));
            checked += n;
            if r.is_err() {
                return (checked, r);
            }
            if let Err(e) = fp.synthesize_heights() {
                return (checked, Err(e.to_string()));
            }
        }
        (checked, Ok(()))
    }));
    out.push(timed("pathologies", "successor bump:goodstein", || {
        report(pathologies::successor_check(&Predilator::Goodstein, size))
    }));
    for r in [Rational::from_integer(0), Rational::new(1, 3), Rational::new(7, 2)] {
        out.push(timed("pathologies", &format!("dense window r={r}"), || report(pathologies::dense_window_check(r, 6))));
    }
    out.push(timed("pathologies", "const-Z uniqueness width 20", || {
        let values: Vec<i64> = (-10..10).collect();
        let demo = pathologies::const_z_uniqueness_demo(&values);
        let found = demo.iso.is_some();
        match report(demo.report) {
            (n, Ok(())) if found => (n, Ok(())),
            (n, Ok(())) => (n, Err("no isomorphism found".into())),
            other => other,
        }
    }));
    out
}

/// Every suite at the given size bound.
pub fn all(size: usize) -> Vec<CheckResult> {
    let mut out = sequences();
    out.extend(linearity(size));
    out.extend(fixpoints(size));
    out.extend(embeddings(size));
    out.extend(pathologies(size));
    out
}
