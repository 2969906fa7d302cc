use fixord::embeddings::*;
use fixord::fixpoint::{bh_collapse_check, OmegaFixedPoint, System};
use fixord::notations::nf::{collapse_f, collapse_theta_g, enumerate as nf_enumerate, enumerate_low, normalize};
use fixord::notations::{Low, Nf, Ot, Phi, P};
use fixord::{Predilator, Value};
use std::cmp::Ordering;
use std::collections::HashMap;

fn report(r: &EmbeddingReport) {
    println!("{}: bound {} terms {} pairs {} violations {}", r.map, r.bound, r.terms, r.pairs, r.violations.len());
    for v in r.violations.iter().take(5) {
        println!("  {v}");
    }
    assert!(r.passed(), "{} has violations", r.map);
}

#[test]
fn omega_normalization_is_monotone() {
    let terms = Ot::enumerate(5);
    report(&check_monotone("omega_normalize", 5, &terms, omega_normalize_map, Nf::cmp, |s| s.to_string()));
}

#[test]
fn coefficient_collapses_are_monotone() {
    let nfs = nf_enumerate(5);
    report(&check_monotone("collapse_f", 5, &nfs, |x| Ok(collapse_f(x)), Nf::cmp, |s| s.to_string()));
    let lows = enumerate_low(5);
    report(&check_monotone("theta_g", 5, &lows, |x| Ok(collapse_theta_g(x)), Nf::cmp, |s| s.to_string()));
}

#[test]
fn kappa_c_is_monotone_and_support_preserving() {
    let sample = c_sample(4, 3);
    let vals = Predilator::Goodstein.enumerate(sample.len(), 5);
    let mut items: Vec<Value> = vals;
    items.sort_by(|a, b| Predilator::Goodstein.cmp(a, b));
    report(&check_monotone(
        "kappa_c",
        5,
        &items,
        |v| match v {
            Value::G(g) => kappa_c(g, &sample),
            _ => unreachable!(),
        },
        Nf::cmp,
        |v| Predilator::Goodstein.to_sexp(v).to_string(),
    ));
    for v in &items {
        let Value::G(g) = v else { unreachable!() };
        let mut e: Vec<Ot> = kappa_c(g, &sample).unwrap().eval().e();
        let mut s: Vec<Ot> = Predilator::Goodstein.supp(v).into_iter().map(|i| sample[i].eval()).collect();
        e.sort_by(Ot::cmp);
        e.dedup();
        s.sort_by(Ot::cmp);
        assert_eq!(e, s, "E(κ(σ)) ≠ supp σ at {}", Predilator::Goodstein.to_sexp(v));
    }
}

#[test]
fn kappa_c_collapse_conditions_and_surjectivity() {
    let sample = c_sample(3, 2);
    let issues = bh_collapse_check(
        &Predilator::Goodstein,
        &sample,
        &Nf::cmp,
        &|v| theta_kappa_c(v, &sample),
        4,
        &|x| x.to_string(),
    );
    assert!(issues.is_empty(), "{issues:?}");
    for c in &sample {
        let l = kappa_c_inverse(c.as_theta().unwrap()).unwrap();
        assert_eq!(&theta_kappa_c(&l.payload, &l.leaves).unwrap(), c);
    }
}

#[test]
fn goodstein_s_membership_and_kappa_support() {
    let s = GoodsteinS::new();
    let sys = System::psi(Predilator::Goodstein);
    let terms = sys.enumerate(9, true);
    let mut members = 0;
    for t in &terms {
        if !s.in_s(t) {
            continue;
        }
        members += 1;
        let (_, leaves) = s.kappa(t).unwrap();
        assert!(leaves.iter().all(|l| s.in_s(l)));
        assert!(leaves.iter().all(|l| sys.cmp(l, t) == Ordering::Less));
    }
    assert!(members >= 6);
    for w in terms.windows(2) {
        if s.in_s(&w[0]) && s.in_s(&w[1]) {
            let a = s.kappa_lifted(&w[0]).unwrap();
            let b = s.kappa_lifted(&w[1]).unwrap();
            let seq = Predilator::omega(Predilator::Goodstein);
            let ord = fixord::fixpoint::lifted_cmp(&seq, &a, &b, &|x, y| sys.cmp(x, y));
            assert_eq!(ord, Ordering::Less);
        }
    }
}

#[test]
fn coded_naturals_are_coherent() {
    let s = GoodsteinS::new();
    let sys = System::psi(Predilator::Goodstein);
    let mut memo = HashMap::new();
    for n in 0..6 {
        assert_eq!(Nf::cmp(&Nf::coded(n), &Nf::coded(n + 1)), Ordering::Less);
        assert_eq!(sys.cmp(&s.coded(n), &s.coded(n + 1)), Ordering::Less);
        let a = psi1g_to_c(&s.coded(n), &mut memo).unwrap();
        let b = psi1g_to_c(&s.coded(n + 1), &mut memo).unwrap();
        assert_eq!(Nf::cmp(&a, &b), Ordering::Less);
    }
}

#[test]
fn psi1g_to_bhord_is_monotone() {
    let sys = System::psi(Predilator::Goodstein);
    let terms = sys.enumerate(9, true);
    report(&check_monotone("psi1g_to_bhord", 9, &terms, psi1g_to_bhord, Ot::cmp, |t| sys.show(t)));
}

#[test]
fn bhord_to_psi1g_is_monotone() {
    let s = GoodsteinS::new();
    let sys = System::psi(Predilator::Goodstein);
    let terms: Vec<Ot> = Ot::enumerate(6).into_iter().filter(Ot::below_omega).collect();
    let memo = std::cell::RefCell::new(HashMap::new());
    report(&check_monotone(
        "bhord_to_psi1g",
        6,
        &terms,
        |x| bhord_to_psi1g(&s, x, &mut memo.borrow_mut()),
        |a, b| sys.cmp(a, b),
        |x| x.to_string(),
    ));
}

#[test]
fn phi_to_theta_is_monotone() {
    let sys = powmul_theta();
    let terms = Phi::enumerate(8);
    report(&check_monotone("phi_to_bh", 8, &terms, |x| phi_to_theta(&sys, x), |a, b| sys.cmp(a, b), |x| x.to_string()));
    let one = phi_to_theta(&sys, &Phi::one()).unwrap();
    assert_eq!(one.payload(), &Value::Mul(0, 0));
    assert_eq!(one.children()[0].payload(), &Value::Pow(Vec::new()));
}

#[test]
fn f_seq_range_decision_matches_search() {
    let psi = P::enumerate_psi(5);
    let mut seqs: Vec<Vec<P>> = vec![Vec::new()];
    for a in &psi {
        seqs.push(vec![a.clone()]);
        for b in &psi {
            if P::cmp(a, b) != Ordering::Less {
                seqs.push(vec![a.clone(), b.clone()]);
            }
        }
    }
    for y in P::enumerate(5) {
        let found = seqs.iter().find(|xs| p_f_seq(xs) == y);
        match (p_f_seq_inverse(&y), found) {
            (Some(xs), Some(_)) => assert_eq!(p_f_seq(&xs), y),
            (None, None) => {}
            (Some(xs), None) => assert!(xs.len() > 2 || xs.iter().any(|x| x.size() > 5)),
            (None, Some(xs)) => panic!("missed preimage {xs:?} of {y}"),
        }
    }
    let psi0 = P::psi(P::zero());
    assert_eq!(p_f_seq(&[psi0.clone()]), P::add(&psi0, &P::psi(psi0.clone())));
}

#[test]
fn f_seq_is_monotone() {
    let psi = P::enumerate_psi(4);
    let mut seqs: Vec<Vec<P>> = vec![Vec::new()];
    for a in &psi {
        seqs.push(vec![a.clone()]);
        for b in psi.iter().filter(|b| P::cmp(a, b) != Ordering::Less) {
            seqs.push(vec![a.clone(), b.clone()]);
        }
    }
    seqs.sort_by(|a, b| fixord::order::seq_cmp(a, b, P::cmp));
    report(&check_monotone("f_seq", 4, &seqs, |xs| Ok(p_f_seq(xs)), P::cmp, |xs| format!("{xs:?}")));
}

#[test]
fn psi_s_pi_is_monotone_with_support_below() {
    let s = PsiS;
    let terms: Vec<P> = P::enumerate(9).into_iter().filter(|x| s.in_s(x)).collect();
    assert!(terms.len() >= 5);
    for x in &terms {
        let l = s.pi(x).unwrap();
        assert!(l.leaves.iter().all(|y| P::cmp(y, x) == Ordering::Less));
        assert_eq!(&s.kappa_inv(&s.kappa(x).unwrap().0, &l.leaves).unwrap(), x);
    }
    let seq = Predilator::omega(Predilator::PowMul);
    report(&check_monotone(
        "pi_S",
        9,
        &terms,
        |x| s.pi(x),
        |a, b| fixord::fixpoint::lifted_cmp(&seq, a, b, &P::cmp),
        |x| x.to_string(),
    ));
}

#[test]
fn phi_to_pomega_is_monotone() {
    let terms = Phi::enumerate(8);
    let memo = std::cell::RefCell::new(HashMap::new());
    report(&check_monotone(
        "phi_to_pomega",
        8,
        &terms,
        |x| {
            let y = phi_to_pomega(x, &mut memo.borrow_mut())?;
            assert!(y.in_psi());
            Ok(y)
        },
        P::cmp,
        |x| x.to_string(),
    ));
}

#[test]
fn pomega_to_psi1w_is_monotone() {
    let sys = psi1w_system();
    let terms = P::enumerate_psi(8);
    let memo = std::cell::RefCell::new(HashMap::new());
    report(&check_monotone(
        "pomega_to_psi1w",
        8,
        &terms,
        |x| pomega_to_psi1w(&sys, x, &mut memo.borrow_mut()),
        |a, b| sys.cmp(a, b),
        |x| x.to_string(),
    ));
}

#[test]
fn helper_f_is_monotone_for_equal_heads() {
    let psi = P::enumerate_psi(4);
    let mut seqs: Vec<Vec<P>> = Vec::new();
    for a in &psi {
        seqs.push(vec![a.clone()]);
        for b in psi.iter().filter(|b| P::cmp(a, b) != Ordering::Less) {
            seqs.push(vec![a.clone(), b.clone()]);
        }
    }
    for x in &seqs {
        for y in &seqs {
            if x[0] == y[0] && fixord::order::seq_cmp(x, y, P::cmp) == Ordering::Less {
                assert_eq!(P::cmp(&p_f_omit(x), &p_f_omit(y)), Ordering::Less, "{x:?} {y:?}");
            }
        }
    }
}

#[test]
fn psi1w_to_phi_is_monotone() {
    let sys = psi1w_system();
    let terms = sys.enumerate(8, true);
    let memo = std::cell::RefCell::new(HashMap::new());
    report(&check_monotone(
        "psi1w_to_phi",
        8,
        &terms,
        |t| psi1w_to_phi(t, &mut memo.borrow_mut()),
        Phi::cmp,
        |t| sys.show(t),
    ));
    let mut memo = HashMap::new();
    assert_eq!(psi1w_to_phi(&terms[0], &mut memo).unwrap(), Phi::Zero);
}

#[test]
fn aca_maps_are_monotone() {
    for n in 0..4 {
        report(&aca_forward_report(n, 3));
    }
    for n in 0..3 {
        report(&aca_backward_report(n, 2, 3));
    }
}

#[test]
fn low_terms_roundtrip_through_ot() {
    for d in enumerate_low(4) {
        assert_eq!(Low::from_ot(&d.eval()).unwrap().eval(), d.eval());
        assert_eq!(normalize(&d.eval()).eval(), d.eval());
    }
}

#[test]
fn every_named_map_verifies_at_size_five() {
    for name in MAPS {
        report(&verify_map(name, 5).unwrap());
    }
    assert!(verify_map("nope", 5).is_err());
}

#[test]
fn equimorphism_pairs_round_trip_monotonically() {
    for pair in PAIRS {
        for r in equimorphism_suite(pair, 6).unwrap() {
            report(&r);
        }
    }
    assert!(equimorphism_suite("nope", 4).is_err());
}
