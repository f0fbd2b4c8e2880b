//! Rays and maximal cones of a Bergman fan, and the link of a ray as a
//! product of interval fans.

use hodge_forge::bergman::{bergman_fan, flat_ray, link_of_ray_as_product};
use hodge_forge::rational::to_pq;
use hodge_forge::Matroid;

fn main() -> hodge_forge::Result<()> {
    let m = Matroid::boolean(3)?;
    let fan = bergman_fan(&m);
    println!("Δ_B3 lives in R^{} with {} rays", fan.ambient_dim(), fan.num_rays());
    for r in 0..fan.num_rays() {
        let v: Vec<String> = fan.ray(r).iter().map(to_pq).collect();
        println!("  {r}: {} -> ({})", fan.label(r).unwrap(), v.join(", "));
    }
    println!("maximal cones: {:?}", fan.max_cones());

    let flat = m.set_of_labels(&[1, 2])?;
    let pl = link_of_ray_as_product(&m, flat)?;
    println!(
        "link of {{1,2}}: {} rays, factors of rank {:?}",
        pl.link.fan.num_rays(),
        pl.factors.iter().map(Matroid::rank).collect::<Vec<_>>()
    );
    let r = flat_ray(&m, flat).unwrap();
    let star = fan.star(&[r])?;
    println!("star of ray {r} has {} cones", star.fan.num_cones());
    Ok(())
}
