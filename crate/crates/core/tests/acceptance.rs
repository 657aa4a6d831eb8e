//! Acceptance criteria 1 to 11, one line each.

use std::process::ExitCode;
use std::time::Instant;

use witt_theta::verify::acceptance_suite;

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria = acceptance_suite();
    for c in &criteria {
        println!("{}", c.line());
        for s in &c.skipped {
            println!("       skipped: {s}");
        }
    }
    let failed = criteria.iter().filter(|c| !c.passed()).count();
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
