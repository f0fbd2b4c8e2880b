//! Sampling the segment between two witness classes, and between a witness
//! and zero, for Hard Lefschetz and constant signatures.

use hodge_forge::bergman::bergman_fan;
use hodge_forge::chow::{ChowSpace, DivisorClass};
use hodge_forge::convexity::{submodular_class, SubmodularFunction};
use hodge_forge::hodge::deformation_scan;
use hodge_forge::weights::standard_degree;
use hodge_forge::Matroid;

fn main() -> hodge_forge::Result<()> {
    let m = Matroid::uniform(3, 4)?;
    let ch = ChowSpace::new(&bergman_fan(&m));
    let deg = standard_degree(&ch)?;
    let l0 = submodular_class(&m, &SubmodularFunction::Default)?;
    let l1 = submodular_class(&m, &SubmodularFunction::Cubic)?;

    let r = deformation_scan(&ch, &deg, &l0, &l1, 16)?;
    println!("witness to witness: HL at every sample {}, constant signatures {}", r.all_hard_lefschetz, r.constant_signatures);

    let zero = DivisorClass::zero(l0.coeffs.len());
    let r = deformation_scan(&ch, &deg, &l0, &zero, 4)?;
    println!("witness to zero: first failure at t = {:?}", r.first_failure);
    for s in &r.samples {
        println!("  t = {}: HL {}, signatures {:?}", s.t, s.hard_lefschetz, s.signatures.iter().map(|g| (g.positive, g.negative, g.zero)).collect::<Vec<_>>());
    }
    Ok(())
}
