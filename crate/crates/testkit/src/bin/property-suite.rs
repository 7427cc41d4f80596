use std::process::ExitCode;

use testkit::{run_property_suite_with, SuiteOptions};

fn main() -> ExitCode {
    let seed = match std::env::args().nth(1).map(|s| s.parse::<u64>()) {
        None => 0x5eed,
        Some(Ok(seed)) => seed,
        Some(Err(e)) => {
            eprintln!("property-suite: bad seed: {e}");
            return ExitCode::from(2);
        }
    };
    let report = run_property_suite_with(&SuiteOptions::with_seed(seed));
    print!("{report}");
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
