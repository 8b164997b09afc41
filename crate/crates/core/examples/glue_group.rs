//! Discriminant group of the rank-2 lattice 3001·[[2, 1], [1, -2]], its
//! torsion forms, Sylow parts and the action of the isometry [[1, 1], [1, 2]].
//!
//!     cargo run --example glue_group

use k3glue::arith::rat;
use k3glue::certify::build_l1;

fn main() -> k3glue::Result<()> {
    let (l1, t1) = build_l1()?;
    let g = l1.glue_group();
    println!("invariants: {:?}", l1.invariants()?);
    println!("glue group orders: {:?}", g.orders().iter().map(|o| o.to_string()).collect::<Vec<_>>());

    let v = [rat(2, 5), rat(1, 5)];
    println!("q(2/5, 1/5) = {}", g.quadratic_lift(&v)?);

    let action = t1.induced_glue_action();
    println!("t̄ preserves the torsion forms: {}", action.preserves_forms());
    for (comp, pa) in action.components.iter().zip(&action.primes) {
        println!(
            "{}-part: orders {:?}, t̄ = {:?}, charpoly mod p = {}",
            comp.prime,
            comp.orders.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
            pa.matrix.row_vecs(),
            pa.charpoly_mod_p.as_ref().map_or("-".into(), |c| c.to_string()),
        );
    }
    Ok(())
}
