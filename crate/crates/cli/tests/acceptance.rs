//! The fifteen acceptance criteria, one line each. Runs without the libtest
//! harness so the lines are always printed.

use tropzeta::verify::{run_all, CRITERIA};

fn main() {
    let ids: Vec<u8> = CRITERIA.iter().map(|c| c.0).collect();
    let outcomes = run_all(&ids);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    println!("{} of {} criteria passed", outcomes.len() - failed.len(), outcomes.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
