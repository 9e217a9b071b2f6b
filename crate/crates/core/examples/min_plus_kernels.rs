//! Min-plus products, Kleene star, cycle mean and eigenvectors.

use tropbbs::trop::{Trop, TropMatrix};

fn main() -> tropbbs::Result<()> {
    let inf = Trop::Infinity;
    let a = TropMatrix::from_rows(vec![
        vec![inf, Trop::int(1), Trop::int(4)],
        vec![Trop::int(2), inf, Trop::int(1)],
        vec![Trop::int(3), Trop::int(0), inf],
    ])?;
    println!("A =\n{a}");
    println!("A (x) A =\n{}", a.mul(&a)?);
    println!("A* =\n{}", a.kleene_star()?);
    let lambda = a.min_cycle_mean()?;
    let eig = a.eigenvector(lambda)?;
    println!("cycle mean {lambda}, eigenvector {:?}", eig.vector.iter().map(|v| v.to_string()).collect::<Vec<_>>());
    Ok(())
}
