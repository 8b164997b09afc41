//! Exact signs and certified approximations of a/Ψ'(ζ + ζ^-1) at the ten
//! real embeddings of Q(ζ50 + ζ50^-1).
//!
//!     cargo run --release --example embedding_signs [digits]

use k3glue::arith::{parse_rat, to_f64};
use k3glue::certify::{build_twisted_lattice, table1};

fn main() -> k3glue::Result<()> {
    let digits = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let table = table1(&build_twisted_lattice()?, digits)?;
    print!("{}", table.to_table());
    let r = &table.rows[2];
    let width = parse_rat(&r.upper).unwrap() - parse_rat(&r.lower).unwrap();
    println!("\nexact enclosure at k = {} has width {:.3e}", r.k, to_f64(&width));
    let positive: Vec<u64> = table.rows.iter().filter(|r| r.sign > 0).map(|r| r.k).collect();
    println!("positive at k = {positive:?}");
    Ok(())
}
