use huabell::perm::{
    alpha_permanent, immanant, immanant_coefficient, partitions, per_via_immanants, CharacterTable,
};
use huabell::sampling::{gaussian_matrix, substream};
use huabell::{ComplexMatrix, Field, C64};

fn main() -> huabell::Result<()> {
    // character table of S_4: rows are irreps, columns cycle types
    let table = CharacterTable::new(4);
    for (i, lambda) in table.irreps().iter().enumerate() {
        println!("{:>12}  {:?}", lambda.to_string(), table.row(i));
    }

    let a = ComplexMatrix::new(gaussian_matrix(&mut substream(7, 0), 4, 4, Field::Real))?;
    for lambda in partitions(4) {
        println!("d_{lambda} = {:.6}", immanant(&a, &lambda)?);
    }

    let alpha = C64::new(2.7, 0.0);
    for lambda in partitions(4) {
        println!("c_{lambda}^2.7 = {:.6}", immanant_coefficient(&lambda, alpha));
    }
    println!("per_2.7 directly      {:.12}", alpha_permanent(&a, alpha)?);
    println!("per_2.7 via immanants {:.12}", per_via_immanants(&a, alpha)?);
    Ok(())
}
