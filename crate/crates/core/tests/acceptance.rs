//! One PASS/FAIL line per acceptance criterion. The only tolerated failures
//! are the listed table rows that contradict their own defining formula.

use qh_core::verify;

/// (criterion, check) pairs expected to fail, with the reason.
const KNOWN: &[(u32, &str, &str)] = &[(
    3,
    "est Gr(3,9)",
    "the formula gives 1 + 8 + 1 = 10 and the computed dim F is already 10; the table lists 9",
)];

#[test]
fn acceptance() {
    let report = verify::run(&[]);
    let mut unexpected = Vec::new();
    for c in &report.criteria {
        println!("{}", c.summary_line());
        for f in c.failures() {
            match KNOWN.iter().find(|k| k.0 == c.id && k.1 == f.name) {
                Some(k) => println!("     known deviation: {} ({})", f.name, k.2),
                None => unexpected.push(format!("criterion {}: {}", c.id, f.name)),
            }
        }
    }
    for k in KNOWN {
        let still_failing = report
            .criteria
            .iter()
            .any(|c| c.id == k.0 && c.failures().any(|f| f.name == k.1));
        assert!(still_failing, "known deviation {} now passes; update the list", k.1);
    }
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
}

#[test]
fn verify_is_deterministic() {
    let a = serde_json::to_string(&verify::run(&[1, 2, 6])).unwrap();
    let b = serde_json::to_string(&verify::run(&[6, 2, 1])).unwrap();
    assert_eq!(a, b);
}
