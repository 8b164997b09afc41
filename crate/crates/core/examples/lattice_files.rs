//! Reading and writing lattice documents, as used by the command line.
//!
//!     cargo run --example lattice_files

use k3glue::certify::build_l1;
use k3glue::lattice::io::LatticeDocument;

fn main() -> k3glue::Result<()> {
    let (l1, t1) = build_l1()?;
    let text = LatticeDocument::from_lattice(&l1, Some(&t1)).to_text();
    print!("{text}");
    let (back, iso) = LatticeDocument::parse(&text)?.load()?;
    println!("round trip preserves the lattice: {}", back == l1);
    println!("isometry charpoly: {}", iso.expect("isometry stored").charpoly());

    let bad = r#"{"rank": 2, "gram": [["2", "1"], ["1", "2.0"]]}"#;
    println!("strict parsing: {}", LatticeDocument::parse(bad)?.load().unwrap_err());
    Ok(())
}
