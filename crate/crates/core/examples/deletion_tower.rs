//! The deletion tower of U(3,4) at element 4, its orthogonal decompositions,
//! and the full tower-mode verification.

use hodge_forge::chow::ChowSpace;
use hodge_forge::hodge::ortho_decomp_check;
use hodge_forge::theorem::{verify_main_theorem, Mode, VerifyOptions};
use hodge_forge::tower::DeletionTower;
use hodge_forge::weights::{positive_weight, DegreeMap};
use hodge_forge::Matroid;

fn main() -> hodge_forge::Result<()> {
    let m = Matroid::uniform(3, 4)?;
    let tower = DeletionTower::build(&m, 4)?;
    println!("k = {} subdivisions", tower.len());
    for (j, fan) in tower.fans.iter().enumerate() {
        println!("  Δ_{j}: {} rays, Hilbert {:?}", fan.num_rays(), ChowSpace::new(fan).hilbert());
    }

    for j in 1..=tower.len() {
        let coarse = ChowSpace::new(&tower.fans[j]);
        let w = positive_weight(&coarse)?;
        let deg = DegreeMap::new(&coarse, &w)?;
        let sub = tower.fans[j].star_subdivision(&tower.subdivided_cones[j - 1])?;
        let r = ortho_decomp_check(&coarse, &deg, &sub, None)?;
        println!("  step {j}: {:?} = {:?} + x0·{:?}, passed {}", r.fine_hilbert, r.coarse_hilbert, r.link_hilbert, r.passed());
    }

    let opts = VerifyOptions { mode: Mode::Tower, element: Some(4), ..VerifyOptions::default() };
    let report = verify_main_theorem(&m, &opts)?;
    for c in &report.checks {
        println!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
    }
    Ok(())
}
