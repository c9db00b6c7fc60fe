use huabell::perm::{alpha_permanent, permanent, ryser_permanent};
use huabell::{ComplexMatrix, C64};

fn main() -> huabell::Result<()> {
    #[rustfmt::skip]
    let a = ComplexMatrix::from_real_rows(&[
        vec![1.0, 2.0, 0.5],
        vec![0.0, 1.0, 3.0],
        vec![2.0, 1.0, 1.0],
    ])?;

    // α = 1 is the permanent, α = -1 the determinant up to (-1)^n
    println!("per     = {}", permanent(&a)?);
    println!("ryser   = {}", ryser_permanent(&a)?);
    println!("-per_-1 = {}", -alpha_permanent(&a, C64::new(-1.0, 0.0))?);
    println!("det     = {}", a.as_dmatrix().determinant());

    for alpha in [0.5, 2.0, 3.0] {
        println!("per_{alpha} = {}", alpha_permanent(&a, C64::new(alpha, 0.0))?);
    }
    println!("per_i   = {}", alpha_permanent(&a, C64::new(0.0, 1.0))?);
    Ok(())
}
