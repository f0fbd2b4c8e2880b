//! Poincaré duality, Hard Lefschetz and Hodge-Riemann for a witness class,
//! with the signatures of the Lefschetz forms.

use hodge_forge::bergman::bergman_fan;
use hodge_forge::chow::ChowSpace;
use hodge_forge::convexity::{submodular_class, SubmodularFunction};
use hodge_forge::hodge::{check_poincare_duality, hr_check, signature_lemma_check};
use hodge_forge::weights::standard_degree;
use hodge_forge::Matroid;

fn main() -> hodge_forge::Result<()> {
    let m = Matroid::boolean(4)?;
    let ch = ChowSpace::new(&bergman_fan(&m));
    let deg = standard_degree(&ch)?;
    println!("Poincaré duality: {}", check_poincare_duality(&ch, &deg).passed);

    let ell = ch.divisor(&submodular_class(&m, &SubmodularFunction::Default)?);
    let r = hr_check(&ch, &deg, &ell);
    for g in &r.degrees {
        let s = g.form_signature;
        println!(
            "CH^{}: dim {}, HL {}, Q_ℓ inertia ({}, {}, {}), dim P {}, HR {:?}",
            g.degree, g.dim, g.hard_lefschetz, s.positive, s.negative, s.zero,
            g.primitive_dim.unwrap(), g.hodge_riemann
        );
    }
    let lemma = signature_lemma_check(&ch, &deg, &ell)?;
    for g in &lemma.degrees {
        println!("signature on CH^{} = {} (alternating primitive sum {})", g.degree, g.signature, g.formula);
    }
    Ok(())
}
