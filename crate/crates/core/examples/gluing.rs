//! Gluing lattices along anti-isometries of their discriminant groups, from a
//! toy example to the rank-22 lattice with isometry of char poly
//! (X^2 - 3X + 1)·Φ50.
//!
//!     cargo run --release --example gluing

use k3glue::certify::{build_l1, build_twisted_lattice};
use k3glue::gluing::{glue_with_isometries, GlueMethod};
use k3glue::lattice::{is_primitive, Isometry, Lattice};
use k3glue::linalg::IntMatrix;

fn main() -> k3glue::Result<()> {
    // warm-up: A2 and A2(-1) glue to an even unimodular lattice of rank 4
    let a2 = Lattice::new(IntMatrix::from_i64(&[&[2, -1], &[-1, 2]]))?;
    let a2neg = Lattice::new(IntMatrix::from_i64(&[&[-2, 1], &[1, -2]]))?;
    let (_, small, _) = glue_with_isometries(&Isometry::identity(&a2), &Isometry::identity(&a2neg))?;
    println!("A2 glued with A2(-1): {:?}", small.ambient.invariants()?);

    let (_, t1) = build_l1()?;
    let l2 = build_twisted_lattice()?;
    let (gamma, result, t) = glue_with_isometries(&t1, &l2.isometry)?;
    for pg in &gamma.primes {
        let how = match &pg.method {
            GlueMethod::Scalar { c } => format!("scalar {c}"),
            GlueMethod::Eigenline { lambda, scale } => format!("eigenlines of λ = {lambda}, pairing scale {scale}"),
            GlueMethod::Search => "exhaustive search".into(),
        };
        println!("γ on the {}-part: {how}", pg.prime);
    }
    println!("index [L : L1 ⊕ L(a)] = {}", result.index);
    println!("glued lattice: {:?}", result.ambient.invariants()?);
    println!("L1 primitive: {}", is_primitive(&result.embed1).primitive);
    println!("extended isometry charpoly: {}", t.charpoly());
    Ok(())
}
