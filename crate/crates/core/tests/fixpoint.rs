use fixord::fixpoint::*;
use fixord::predilator::{inverse_prefix, ConstOrder};
use fixord::{Predilator, Value};

fn fixtures() -> Vec<Predilator> {
    vec![
        Predilator::Goodstein,
        Predilator::Weak,
        Predilator::konst(3),
        Predilator::sum(Predilator::konst(2), Predilator::konst(3)),
        Predilator::bump(Predilator::Goodstein),
    ]
}

fn round_trip(d: &Predilator, sys: &System, terms: &[Tree]) {
    let fp = terms_to_fragment(sys, terms).unwrap();
    let p = fp_to_termination(d, &fp).unwrap();
    assert_eq!(termination_to_fp(&p), fp);
    assert_eq!(fp_to_termination(d, &termination_to_fp(&p)).unwrap(), p);
    assert_eq!(fragment_to_terms(sys, &fp).unwrap(), terms);
}

#[test]
fn correspondence_round_trips_on_enumerated_prefixes() {
    for d in fixtures() {
        let sys = System::psi(d.clone());
        let terms = sys.enumerate(7, true);
        for k in 0..=terms.len().min(12) {
            round_trip(&d, &sys, &terms[..k]);
        }
    }
}

#[test]
fn canonical_prefixes_are_termination_prefixes() {
    for d in fixtures() {
        let sys = System::psi(d.clone());
        let ip = inverse_prefix(&d, 12).unwrap();
        let p = TerminationPrefix { values: ip.values.clone() };
        let terms = fragment_to_terms(&sys, &termination_to_fp(&p)).unwrap();
        round_trip(&d, &sys, &terms);
        for w in terms.windows(2) {
            assert_eq!(sys.cmp(&w[0], &w[1]), std::cmp::Ordering::Less);
        }
        let rep = check_conditions(&d, &p, 4);
        assert!(rep.passed(), "{}: {rep:?}", d.name());
    }
}

#[test]
fn first_member_is_zero() {
    let p = inverse_prefix(&Predilator::Goodstein, 1).unwrap();
    assert_eq!(p.values, vec![Value::G(Default::default())]);
    let w = inverse_prefix(&Predilator::Weak, 1).unwrap();
    assert_eq!(w.values, vec![Value::W(Default::default())]);
}

#[test]
fn constant_predilators_count_to_their_value() {
    for beta in 0..=20u64 {
        let p = inverse_prefix(&Predilator::konst(beta), 25).unwrap();
        assert_eq!(p.terminated_at, Some(beta as usize));
        let expect: Vec<Value> = (0..beta as i64).map(Value::Int).collect();
        assert_eq!(p.values, expect);
    }
}

#[test]
fn sum_with_empty_left_part_shifts_the_sequence() {
    for d2 in [Predilator::Goodstein, Predilator::Weak, Predilator::konst(4), Predilator::bump(Predilator::Goodstein)] {
        let sum = Predilator::sum(Predilator::Id, d2.clone());
        let a = inverse_prefix(&sum, 10).unwrap();
        let b = inverse_prefix(&d2, 10).unwrap();
        assert_eq!(a.terminated_at, b.terminated_at);
        let shifted: Vec<Value> = b.values.into_iter().map(|v| Value::Inr(Box::new(v))).collect();
        assert_eq!(a.values, shifted, "{}", d2.name());
    }
}

#[test]
fn identity_is_the_unique_endomorphism() {
    for d in [Predilator::Goodstein, Predilator::Weak] {
        let sys = System::psi(d);
        let terms = sys.enumerate(6, true);
        let fp = terms_to_fragment(&sys, &terms).unwrap();
        let images = unique_hom(&sys, &fp).unwrap();
        assert_eq!(images, terms);
        assert!(check_hom(&sys, &fp, &images).is_empty());
    }
}

#[test]
fn homomorphism_into_a_larger_constant() {
    let from = System::psi(Predilator::konst(2));
    let to = System::psi(Predilator::konst(3));
    let terms = from.enumerate(4, true);
    let fp = terms_to_fragment(&from, &terms).unwrap();
    let images = unique_hom(&to, &fp).unwrap();
    assert!(check_hom(&to, &fp, &images).is_empty());
    assert_eq!(images.len(), 2);
}

#[test]
fn fragments_need_supports_below() {
    let bad = Fragment { values: vec![Value::G(fixord::GTerm(vec![(Default::default(), 0)]))] };
    assert!(fp_to_termination(&Predilator::Goodstein, &bad).is_err());
    assert!(unique_hom(&System::psi(Predilator::Goodstein), &bad).is_err());
}

#[test]
fn integers_have_no_canonical_prefix() {
    assert!(inverse_prefix(&Predilator::Const(ConstOrder::Integers), 3).is_err());
}
