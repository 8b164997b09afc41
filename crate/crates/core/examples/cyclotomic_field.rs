//! Arithmetic in Q(ζ50): traces, norms, the twist element a and the
//! trace-form lattice it defines.
//!
//!     cargo run --release --example cyclotomic_field

use k3glue::cyclotomic::{build_trace_form_lattice, build_twist_element, CycloElement, CycloField};

fn main() -> k3glue::Result<()> {
    let field = CycloField::new(50);
    println!("Φ50 = {}", field.phi());
    println!("Ψ50 = {}", field.trace_polynomial()?);
    for k in [0, 1, 5, 10, 25] {
        println!("Tr(ζ^{k}) = {}", CycloElement::zeta_pow(&field, k).trace());
    }

    let t = build_twist_element(&field)?;
    println!("\na = {}", t.a.as_poly());
    println!("N(u1) = {}, N(u2) = {}, N(a') = {}, N(a) = {}", t.norm_u1, t.norm_u2, t.norm_a_prime, t.norm_a);

    let (plain, _) = build_trace_form_lattice(&field, &CycloElement::one(&field))?;
    let (twisted, _) = build_trace_form_lattice(&field, &t.a)?;
    println!("\nuntwisted: {:?}", plain.invariants()?);
    println!("twisted:   {:?}", twisted.invariants()?);
    println!("first Gram row of L(a): {:?}", twisted.gram().row(0).iter().map(|x| x.to_string()).collect::<Vec<_>>());
    Ok(())
}
