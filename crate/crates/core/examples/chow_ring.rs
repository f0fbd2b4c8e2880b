//! Hilbert function, standard monomials, and top-degree products in the
//! Chow ring of a Bergman fan.

use hodge_forge::bergman::{bergman_fan, flat_ray};
use hodge_forge::chow::{ChowSpace, Monomial};
use hodge_forge::rational::to_pq;
use hodge_forge::weights::standard_degree;
use hodge_forge::Matroid;

fn main() -> hodge_forge::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(4, |s| s.parse().expect("an integer"));
    let m = Matroid::boolean(n)?;
    let ch = ChowSpace::new(&bergman_fan(&m));
    println!("CH(Δ_B{n}) has Hilbert function {:?}", ch.hilbert());
    for k in 0..=ch.top_degree().min(1) {
        let basis: Vec<String> = ch.basis(k).iter().map(ToString::to_string).collect();
        println!("  CH^{k}: {}", basis.join(" "));
    }

    let deg = standard_degree(&ch)?;
    let x1 = flat_ray(&m, m.set_of_labels(&[1])?).unwrap();
    let x = ch.monomial(&Monomial::ray(x1));
    let top = ch.power(&x, ch.top_degree());
    println!("deg(x_{{1}}^{}) = {}", ch.top_degree(), to_pq(&deg.degree(&top)?));
    Ok(())
}
