use huabell::kernel::{
    bellman_counterexample_matrices, bellman_counterexample_replay, build_hua_bellman, symmetrized_hua_bellman,
    PSD_REL_TOL,
};
use huabell::matrix::hermitian_eigen;
use huabell::perm::exponent_admissible;
use huabell::Field;

fn main() -> huabell::Result<()> {
    let matrices = bellman_counterexample_matrices();
    for (i, a) in matrices.iter().enumerate() {
        println!("A_{i} (norm {:.3}) = {}", a.norm(), a.as_dmatrix());
    }

    let h = build_hua_bellman(&matrices, 0.5, Field::Real)?;
    let report = h.pd_check(PSD_REL_TOL)?;
    println!("H_1/2 = {}", h.gram().as_dmatrix().map(|z| z.re));
    println!("lambda_min = {:.6e}, verdict {:?}", report.min_eigenvalue, report.verdict);
    println!("exponent 1/2 admissible for real 2x2: {}", exponent_admissible(0.5, 2, Field::Real));

    // entrywise larger, yet positive definite
    let sym = symmetrized_hua_bellman(&matrices, 0.5)?;
    println!("symmetrized lambda_min = {:.6e}", hermitian_eigen(&sym)?.min());

    let record = bellman_counterexample_replay()?;
    println!("replay lambda_min = {:.10e}", record.min_eigenvalue);
    Ok(())
}
