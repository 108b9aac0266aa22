//! The acceptance gate: twelve exact criteria, one pass/fail line each.
//! The checks live in `cqca::selftest` (shared with the CLI's `selftest`
//! command); the base seed is fixed here so every run is identical.

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for (name, outcome) in cqca::selftest::run(0) {
        match outcome {
            Ok(()) => println!("criterion {name}: PASS"),
            Err(msg) => {
                println!("criterion {name}: FAIL — {msg}");
                failures.push(format!("{name}: {msg}"));
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria:\n{}", failures.join("\n"));
}
