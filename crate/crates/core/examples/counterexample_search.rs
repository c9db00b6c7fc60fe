use huabell::kernel::{counterexample_search, SearchConfig};

fn main() -> huabell::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let mut cfg = SearchConfig::new(8, 2, 0.5, trials, 42);

    let outcome = counterexample_search(&cfg)?;
    println!("{} of {trials} trials have lambda_min < -{}", outcome.records.len(), cfg.tolerance);
    println!("min {:?}, median {:?}", outcome.min(), outcome.median());
    if let Some(first) = outcome.records.first() {
        println!("first hit: {:?}, lambda_min {:.6e}", first.origin, first.min_eigenvalue);
    }

    // same streams on a single thread
    cfg.workers = Some(1);
    let serial = counterexample_search(&cfg)?;
    println!("identical with one worker: {}", serial.min_eigenvalues == outcome.min_eigenvalues);
    Ok(())
}
