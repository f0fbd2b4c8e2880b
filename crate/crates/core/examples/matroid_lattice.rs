//! Lattice of flats, coloops and deletion pairs for a matroid file or a
//! built-in uniform matroid.
//!
//!     cargo run --example matroid_lattice -- data/k4_graphic.json

use hodge_forge::Matroid;

fn main() -> hodge_forge::Result<()> {
    let m = match std::env::args().nth(1) {
        Some(path) => Matroid::from_json(&std::fs::read_to_string(path)?)?,
        None => Matroid::uniform(3, 4)?.named("U(3,4)"),
    };
    println!("{}: rank {}, ground size {}", m.name().unwrap_or("matroid"), m.rank(), m.ground_size());
    println!("flats by rank: {:?}", m.flat_counts_by_rank());
    for f in m.flats() {
        println!("  rank {} {:?}", m.flat_rank(*f).unwrap(), m.labels_of(*f));
    }
    println!("coloops: {:?}", m.coloops());
    for &e in m.elements() {
        if let Ok(pairs) = m.deletion_flat_pairs(e) {
            let shown: Vec<Vec<usize>> = pairs.iter().map(|&f| m.labels_of(f)).collect();
            println!("S_{e} = {shown:?}");
        }
    }
    Ok(())
}
