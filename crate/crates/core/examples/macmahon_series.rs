use huabell::perm::{block_alpha_permanent, block_expand, macmahon_closed_form, macmahon_partial_sums, MultiIndex};
use huabell::verify::reference_series_instance;
use huabell::C64;

fn main() -> huabell::Result<()> {
    let (a, x) = reference_series_instance();

    // A[m] repeats a_ij as an m_i x m_j block
    let m = MultiIndex::new(vec![2, 1]);
    println!("A[(2,1)] =\n{}", block_expand(&a, &m)?.as_dmatrix());
    println!("per_1.5(A[(2,1)]) = {}", block_alpha_permanent(&a, &m, C64::new(1.5, 0.0))?);

    for alpha in [0.5, 1.5, 3.0] {
        let alpha = C64::new(alpha, 0.0);
        let exact = macmahon_closed_form(&a, &x, alpha)?;
        println!("alpha = {}: det(I - XA)^-alpha = {:.15}", alpha.re, exact.re);
        for (k, s) in macmahon_partial_sums(&a, &x, alpha, 12)?.iter().enumerate() {
            println!("  order {k:>2}: {:.15}  error {:.3e}", s.re, (s - exact).norm());
        }
    }
    Ok(())
}
