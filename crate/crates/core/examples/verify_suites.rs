use huabell::verify::{run_suite, Suite, VerifyConfig};

fn main() -> huabell::Result<()> {
    let cfg = VerifyConfig::new(1, 200);
    for report in run_suite(Suite::All, &cfg)? {
        println!("[{}] passed: {}", report.suite, report.passed);
        for c in &report.checks {
            let mark = if c.passed { "ok " } else if c.assertive { "BAD" } else { "-- " };
            println!("  {mark} {:<70} worst {:+.3e} (tol {:.0e})", c.name, c.worst, c.tolerance);
        }
    }
    Ok(())
}
