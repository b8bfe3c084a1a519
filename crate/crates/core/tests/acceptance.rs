//! Runs every acceptance criterion and prints one line per criterion.
//! Exits nonzero if any criterion fails.

use hyperturan::verify::{run_criterion, Suite, CRITERIA};

fn main() {
    let filter: Vec<u8> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (id, _) in CRITERIA {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let out = run_criterion(id, Suite::Paper);
        println!("{out}");
        if !out.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
