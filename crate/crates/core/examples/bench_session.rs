use sigmalab::lattice::CheckStatus;
use sigmalab::suites::{render_report, Runner, SUITE_NAMES};
use std::time::Instant;

fn main() {
    let runner = Runner::new(42);
    let total = Instant::now();
    let mut failed = false;
    for name in SUITE_NAMES {
        let t = Instant::now();
        match runner.run(name) {
            Ok(report) => {
                let fails = report.checks.iter().filter(|c| c.status == CheckStatus::Fail).count();
                println!("== {name}: {} checks, {fails} FAIL, {} GAP  [{:?}]", report.checks.len(), report.gaps(), t.elapsed());
                if fails > 0 {
                    failed = true;
                    print!("{}", render_report(&report));
                }
            }
            Err(e) => { failed = true; println!("== {name}: ERROR {e}"); }
        }
    }
    println!("total: {:?}", total.elapsed());
    std::process::exit(if failed { 1 } else { 0 });
}
