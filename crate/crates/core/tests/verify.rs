use fixord::verify;

fn assert_all(results: &[verify::CheckResult]) {
    for r in results {
        println!("{:<12} {:<32} {:>6} {:>6}ms {}", r.suite, r.name, r.checked, r.millis, r.detail);
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).map(|r| &r.name).collect();
    assert!(failed.is_empty(), "failed: {failed:?}");
}

#[test]
fn full_suite_passes_at_size_four() {
    assert_all(&verify::all(4));
}

#[test]
fn linearity_at_size_six() {
    assert_all(&verify::linearity(6));
}
