//! Smith and Hermite normal forms, integer kernels and exact determinants.
//!
//!     cargo run --example normal_forms

use k3glue::linalg::{charpoly, det, hermite_normal_form, integer_kernel, smith_normal_form, IntMatrix};

fn main() {
    let m = IntMatrix::from_i64(&[&[6002, 3001], &[3001, -6002]]);
    let snf = smith_normal_form(&m);
    println!("M = {:?}", m.row_vecs());
    println!("invariant factors: {:?}", snf.diagonal());
    assert_eq!(snf.u.mul(&m).unwrap().mul(&snf.v).unwrap(), snf.d);
    println!("U·M·V = D verified");

    let a = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let h = hermite_normal_form(&a);
    println!("\nHNF of {:?}:\n{:?} (rank {})", a.row_vecs(), h.h.row_vecs(), h.rank);
    println!("det = {}", det(&a).unwrap());
    println!("charpoly = {}", charpoly(&a).unwrap());

    let b = IntMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
    println!("\ninteger kernel of {:?}: {:?}", b.row_vecs(), integer_kernel(&b).row_vecs());
}
