//! Acceptance criteria 1-10. Runs every check once in-process (timed) and
//! once through the binary, then prints one pass/fail line per criterion.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;
use sl2harm_cli::config::{Overrides, RawConfig, SuiteConfig};
use sl2harm_cli::suites::{assemble, checks, render, run_check};

const CRITERIA: &[(u32, &str, &[&str], Option<u64>)] = &[
    (1, "c-function spot values", &["c-function-odd-at-zero", "c-function-even-pole", "c-function-conjugation"], Some(1)),
    (2, "numeric J against the analytic c-function", &["j-line-integral"], Some(10)),
    (3, "J I = id on bumps", &["j-inverts-i"], Some(60)),
    (4, "adjointness of I+ and I-", &["i-adjoint"], None),
    (5, "Xi identities", &["xi-spherical", "xi-plane-spherical", "xi-at-identity"], None),
    (6, "Haar integral in two coordinate systems", &["haar-kna-vs-nln"], None),
    (
        7,
        "Frobenius pairing, counit and unit",
        &["pairing-bimodule", "pairing-g-invariance", "counit-balanced", "counit-restriction", "unit-kernel-reproduces"],
        None,
    ),
    (8, "second-adjoint triangle identities", &["triangle-first", "triangle-second", "triangle-narrow"], Some(600)),
    (9, "wave-packet regularity", &["wave-symmetric-antisymmetric", "wave-decay-even", "wave-decay-odd"], None),
];

fn describe(e: &Value) -> String {
    match e.get("error") {
        Some(err) => format!("{} error: {}", e["test-name"].as_str().unwrap_or("?"), err),
        None => {
            // the narrow-bump check passes against its bound plus the tolerance
            let bound = e["grid-params"]["bump-bound"].as_f64().map(|b| format!("{b:.2e}+")).unwrap_or_default();
            format!(
                "{} {:.2e}/{bound}{:.0e}",
                e["test-name"].as_str().unwrap_or("?"),
                e["residual-sup"].as_f64().unwrap_or(f64::NAN),
                e["tolerance"].as_f64().unwrap_or(f64::NAN)
            )
        }
    }
}

#[test]
fn acceptance_criteria() {
    let cfg = SuiteConfig::resolve(
        &RawConfig::default(),
        &Overrides {
            seed: Some(42),
            ..Overrides::default()
        },
    )
    .unwrap();

    let mut entries = BTreeMap::new();
    let mut times = BTreeMap::new();
    for c in checks("all").unwrap() {
        let start = Instant::now();
        let e = run_check(&c, &cfg);
        times.insert(c.name, start.elapsed());
        entries.insert(c.name, e);
    }

    let mut failed = Vec::new();
    for &(n, what, names, limit) in CRITERIA {
        let pass = names.iter().all(|k| entries[k]["pass"] == true);
        let elapsed: Duration = names.iter().map(|k| times[k]).sum();
        let in_time = limit.is_none_or(|s| elapsed <= Duration::from_secs(s));
        let detail: Vec<String> = names.iter().map(|k| describe(&entries[k])).collect();
        let budget = limit.map(|s| format!(" (limit {s}s)")).unwrap_or_default();
        let ok = pass && in_time;
        println!(
            "criterion {n:2} {}: {what}; {}; {:.2}s{budget}",
            if ok { "PASS" } else { "FAIL" },
            detail.join(", "),
            elapsed.as_secs_f64()
        );
        if !ok {
            failed.push(n);
        }
    }

    // the binary run is a second, independent run with the same seed
    let (report, _) = assemble("all", &cfg, entries.into_values().collect());
    let local = render(&report);
    let path = std::env::temp_dir().join(format!("sl2harm-acceptance-{}.json", std::process::id()));
    let status = Command::new(env!("CARGO_BIN_EXE_sl2harm"))
        .args(["verify", "all", "--seed", "42", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    let remote = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let same = remote == local.as_bytes();
    println!(
        "criterion 10 {}: byte-identical reports for verify all --seed 42 ({} bytes, exit {:?})",
        if same { "PASS" } else { "FAIL" },
        remote.len(),
        status.code()
    );
    if !same {
        failed.push(10);
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
