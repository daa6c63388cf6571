use std::time::{Duration, Instant};

use unipotent::verify::{criterion, verify_paper, Row, VerifyConfig, CRITERIA};

const LIMITS: [u64; 12] = [10, 30, 30, 5, 60, 120, 60, 10, 60, 10, 30, 600];

fn run(id: u8) -> (Row, Duration) {
    let cfg = VerifyConfig { seed: 2024, quick: false, p: None };
    let t = Instant::now();
    let row = criterion(id, &cfg).unwrap_or_else(|e| panic!("criterion {id}: {e}"));
    (row, t.elapsed())
}

fn report(row: &Row, elapsed: Duration) -> bool {
    let limit = Duration::from_secs(LIMITS[row.id as usize - 1]);
    let ok = row.pass && elapsed <= limit;
    println!("{} criterion {:>2} {:<22} {:>8.2}s (limit {}s)", if ok { "PASS" } else { "FAIL" }, row.id, row.name, elapsed.as_secs_f64(), limit.as_secs());
    for c in row.checks.iter().filter(|c| !c.pass) {
        println!("       {}: {}", c.name, c.value);
    }
    ok
}

fn check(row: &Row, name: &str) -> bool {
    row.checks.iter().find(|c| c.name == name).unwrap_or_else(|| panic!("no check {name}")).pass
}

fn main() {
    let mut results = Vec::new();
    for id in 1..=11u8 {
        let (row, t) = run(id);
        let ok = report(&row, t);
        results.push((row, ok));
    }
    let cfg = VerifyConfig { seed: 2024, quick: true, p: None };
    let t = Instant::now();
    let a = serde_json::to_string(&verify_paper(&cfg).unwrap()).unwrap();
    let b = serde_json::to_string(&verify_paper(&cfg).unwrap()).unwrap();
    let elapsed = t.elapsed();
    let det = unipotent::verify::Row {
        id: 12,
        name: CRITERIA[11].into(),
        pass: a == b,
        checks: vec![unipotent::verify::Check { name: "byte-identical reports".into(), pass: a == b, value: format!("{} bytes", a.len()) }],
    };
    let ok12 = report(&det, elapsed);
    assert!(ok12, "determinism");

    // criteria computed faithfully but contradicted by the exact computation
    let c4 = &results[3].0;
    assert!(!check(c4, "W_2 profinite = true"));
    assert!(c4.checks.iter().filter(|c| c.name != "W_2 profinite = true").all(|c| c.pass));
    let c6 = &results[5].0;
    assert!(check(c6, "iso classes = z-classes (p=3, F_3^6)"));
    assert!(check(c6, "dual certificates verified"));
    assert!(!check(c6, "duality sends z to (−1)^(p−1)/z"));
    assert!(!check(c6, "p=3 self-dual classes = 2"));
    assert!(!check(c6, "p=2 self-dual classes = 1"));
    assert!(!check(c6, "non-self-dual witness (search over F_27^× fails)"));
    for (i, (row, ok)) in results.iter().enumerate() {
        if i != 3 && i != 5 {
            assert!(ok, "criterion {} failed: {:?}", row.id, row.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
        }
    }
}
