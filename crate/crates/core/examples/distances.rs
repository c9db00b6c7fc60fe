use huabell::matrix::{as_contraction, DEFAULT_MARGIN};
use huabell::metric::{
    cayley_klein_sq, delta_p_sq, diagonal_cayley_klein_sq, hua_distance_sq, row_embedding, s_divergence,
};
use huabell::sampling::{random_contraction, random_hpd, substream};
use huabell::{ComplexMatrix, Field, C64};

fn main() -> huabell::Result<()> {
    let mut rng = substream(3, 0);
    let a = random_contraction(&mut rng, 3, Field::Complex);
    let b = random_contraction(&mut rng, 3, Field::Complex);
    println!("d(A,B)       = {:.12}", hua_distance_sq(&a, &b)?.value);
    println!("d(A,A)       = {}", hua_distance_sq(&a, &a)?.value);

    let x = random_hpd(&mut rng, 3, Field::Complex);
    let y = random_hpd(&mut rng, 3, Field::Complex);
    println!("delta_S(X,Y) = {:.12}", s_divergence(&x, &y)?.value);
    for p in [0.0, 0.5, 1.0, 2.0] {
        println!("delta_{p}(X,Y) = {:.12}", delta_p_sq(&x, &y, p)?.value);
    }

    // diagonal contractions split into one-dimensional terms
    let (u, v) = ([C64::new(0.5, 0.0), C64::new(-0.2, 0.1)], [C64::new(0.1, 0.0), C64::new(0.3, 0.0)]);
    let du = as_contraction(ComplexMatrix::from_diagonal(&u), DEFAULT_MARGIN)?;
    let dv = as_contraction(ComplexMatrix::from_diagonal(&v), DEFAULT_MARGIN)?;
    println!("diagonal d^2 {:.15} = sum {:.15}", hua_distance_sq(&du, &dv)?.squared, diagonal_cayley_klein_sq(&u, &v)?);

    // vectors embedded as a single row recover the Cayley-Klein form
    let d = hua_distance_sq(&row_embedding(&u)?, &row_embedding(&v)?)?.squared;
    println!("row embedding d^2 {d:.15} = {:.15}", cayley_klein_sq(&u, &v)?);
    Ok(())
}
