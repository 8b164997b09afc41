//! Twisting a lattice with isometry by a self-adjoint polynomial in the
//! isometry: L(a) arises from the plain trace-form lattice by A(t) = a.
//!
//!     cargo run --release --example twist

use k3glue::cyclotomic::{build_trace_form_lattice, build_twist_element, CycloElement, CycloField};
use k3glue::linalg;

fn main() -> k3glue::Result<()> {
    let field = CycloField::new(50);
    let (plain, zeta) = build_trace_form_lattice(&field, &CycloElement::one(&field))?;
    let a = build_twist_element(&field)?.a;
    let poly = a.to_int_poly().expect("a is integral");

    let twisted = zeta.twist(&poly)?;
    let det_a = linalg::det(&linalg::poly_at_matrix(&poly, zeta.matrix())?)?;
    println!("det L = {}, det A(t) = {}, det L(a) = {}", plain.det(), det_a, twisted.det());
    assert_eq!(twisted.det(), &(&det_a * plain.det()));

    let (direct, _) = build_trace_form_lattice(&field, &a)?;
    println!("twist agrees with the direct trace form: {}", direct.gram() == twisted.gram());
    println!("signature of the twist: {:?}", twisted.signature()?);
    let t = zeta.on(&twisted)?;
    println!("multiplication by ζ is still an isometry, charpoly {}", t.charpoly());
    Ok(())
}
