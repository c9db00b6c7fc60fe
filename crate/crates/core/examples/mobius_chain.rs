use huabell::metric::{decomposition_check, hua_distance_sq, majorization_chain, mobius_transform};
use huabell::sampling::{gaussian_matrix, random_contraction, substream};
use huabell::{ComplexMatrix, Field};

fn main() -> huabell::Result<()> {
    let mut rng = substream(5, 0);
    let a = random_contraction(&mut rng, 3, Field::Complex);
    let b = random_contraction(&mut rng, 3, Field::Complex);

    let pair = mobius_transform(&a, &b)?;
    println!("min eig Re X {:.4}, Re Y {:.4}", pair.min_eig_re_x, pair.min_eig_re_y);
    println!("identity residuals {:.2e} {:.2e}", pair.residual_product, pair.residual_real_part);

    let split = decomposition_check(&pair.x, &pair.y)?;
    println!("d^2(A,B)                 = {:.15}", hua_distance_sq(&a, &b)?.squared);
    println!("delta^2(X,Y)             = {:.15}", split.lhs);
    println!("delta_S^2 + delta_2^2/2  = {:.15}", split.rhs);
    println!("  terms {:.6} + {:.6}", split.s_divergence_term, split.delta_two_term);

    let pts: Vec<ComplexMatrix> =
        (0..3).map(|_| ComplexMatrix::new(gaussian_matrix(&mut rng, 3, 3, Field::Complex))).collect::<Result<_, _>>()?;
    for p in [0.5, 1.0, 2.0] {
        let c = majorization_chain(&pts[0], &pts[1], &pts[2], p)?;
        println!("p = {p}: majorized {}, squared {}, minkowski {}, triangle gap {:.4}", c.majorized, c.squared_majorized, c.minkowski, c.triangle_gap);
    }
    Ok(())
}
