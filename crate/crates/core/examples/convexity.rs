//! Strict convexity of submodular witness classes, with certificates, and a
//! class that fails.

use hodge_forge::bergman::bergman_fan;
use hodge_forge::convexity::{classify, submodular_class, verify_verdict, SubmodularFunction};
use hodge_forge::chow::DivisorClass;
use hodge_forge::rational::int;
use hodge_forge::Matroid;

fn main() -> hodge_forge::Result<()> {
    let m = Matroid::uniform(3, 4)?;
    let fan = bergman_fan(&m);
    for f in [SubmodularFunction::Default, SubmodularFunction::Cubic] {
        let class = submodular_class(&m, &f)?;
        let v = classify(&fan, &class)?;
        println!("{f:?}: strictly convex {}, certificates check {}", v.strictly_convex, verify_verdict(&fan, &class, &v)?);
    }

    let mut bad = DivisorClass::zero(fan.num_rays());
    bad.coeffs[0] = int(-1);
    let v = classify(&fan, &bad)?;
    println!("-x_0: convex {}, strictly convex {}", v.convex, v.strictly_convex);
    if let Some(f) = v.failures.first() {
        println!("  first failure on the link of {:?}, at ray {:?}", f.cone, f.ray);
    }
    Ok(())
}
