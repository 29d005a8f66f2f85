//! Runs every acceptance criterion with seed 42 and prints one line each.

use nakayama::verify::{run_criterion, Status, CRITERIA};

const SEED: u64 = 42;

fn main() {
    let mut failed = 0;
    for c in CRITERIA.iter() {
        let outcome = run_criterion(c.number, SEED);
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {verdict}: {} ({} ms, limit {} ms, {} records)",
            c.number,
            c.title,
            outcome.elapsed_ms,
            outcome.limit_ms,
            outcome.records.len()
        );
        if !outcome.passed {
            failed += 1;
            if !outcome.within_limit {
                println!("    over the time limit");
            }
            for r in outcome.records.iter().filter(|r| r.status != Status::Pass) {
                println!("    {} {}: {}", r.status, r.id, r.witness);
            }
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
