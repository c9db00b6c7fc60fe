use huabell::kernel::{build_hua_bellman, hua_block_psd, hua_identity_residual, PSD_REL_TOL};
use huabell::sampling::{random_contraction, substream};
use huabell::Field;

fn main() -> huabell::Result<()> {
    let mut rng = substream(11, 0);
    let family: Vec<_> = (0..5).map(|_| random_contraction(&mut rng, 3, Field::Complex)).collect();

    for alpha in [1.0, 2.0, 2.5, 0.5] {
        let h = build_hua_bellman(&family, alpha, Field::Complex)?;
        let report = h.pd_check(PSD_REL_TOL)?;
        println!(
            "alpha {alpha}: lambda_min {:+.4e}, {:?}, fingerprint {}",
            report.min_eigenvalue, report.verdict, report.fingerprint
        );
    }

    let (a, b) = (&family[0], &family[1]);
    println!("Hua identity residual {:.2e}", hua_identity_residual(a, b)?);
    println!("Hua block matrix min eigenvalue {:.4e}", hua_block_psd(a, b)?.min_eigenvalue);
    Ok(())
}
