//! Run the full rank-22 construction and print the certification report.
//!
//!     cargo run --release --example certify_k3

use k3glue::certify::certify;

fn main() {
    let report = certify(5);
    print!("{}", report.to_table());
    std::process::exit(if report.verdict { 0 } else { 1 });
}
