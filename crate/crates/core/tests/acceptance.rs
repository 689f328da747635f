//! Runs the twelve acceptance criteria and prints one line per criterion.

use std::process::ExitCode;

use genwait::corpus;
use genwait::Caps;

fn main() -> ExitCode {
    let caps = Caps::from_env();
    let results = match corpus::run_all(&caps) {
        Ok(r) => r,
        Err(e) => {
            println!("[FAIL] corpus did not load: {e}");
            return ExitCode::FAILURE;
        }
    };
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
