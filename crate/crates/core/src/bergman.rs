//! Bergman fans of matroids and the product structure of their links.

use crate::error::{Error, Result};
use crate::fan::{product, Cone, Fan, Link, RayLabel};
use crate::linalg::Matrix;
use crate::matroid::{ElementSet, Matroid};
use crate::rational::{one, zero, Rational};

/// Generator of `e_S` in `R^E / e_E`, represented with the last ground
/// element's coordinate set to zero (that coordinate is dropped).
pub fn set_vector(m: &Matroid, set: ElementSet) -> Vec<Rational> {
    let n = m.ground_size();
    if n == 0 {
        return Vec::new();
    }
    let last = n - 1;
    (0..last)
        .map(|p| {
            let inside = set.contains(p);
            match (set.contains(last), inside) {
                (false, true) => one(),
                (true, false) => -one(),
                _ => zero(),
            }
        })
        .collect()
}

/// Chains of nontrivial flats, each listed by increasing flat index into
/// `flats` (which must refine inclusion), including the empty chain.
pub(crate) fn chains(flats: &[ElementSet]) -> Vec<Vec<usize>> {
    fn extend(flats: &[ElementSet], chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(chain.clone());
        let start = chain.last().map_or(0, |&l| l + 1);
        for j in start..flats.len() {
            if chain.last().is_none_or(|&l| flats[l] != flats[j] && flats[l].is_subset(flats[j])) {
                chain.push(j);
                extend(flats, chain, out);
                chain.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(flats, &mut Vec::new(), &mut out);
    out
}

/// One ray per nontrivial flat (in canonical flat order), one cone per chain.
pub fn bergman_fan(m: &Matroid) -> Fan {
    let flats = m.nontrivial_flats();
    let dim = m.ground_size().saturating_sub(1);
    let rays = flats.iter().map(|&f| set_vector(m, f)).collect();
    let labels = flats.iter().map(|&f| Some(RayLabel::Flat(m.labels_of(f)))).collect();
    Fan::new(dim, rays, chains(&flats), labels).expect("Bergman fan data is well formed")
}

/// Ray index of a nontrivial flat in [`bergman_fan`].
pub fn flat_ray(m: &Matroid, flat: ElementSet) -> Option<usize> {
    m.nontrivial_flats().iter().position(|&f| f == flat)
}

/// The link of a chain cone, identified with a product of interval fans.
#[derive(Clone, Debug)]
pub struct ProductLink {
    /// Interval matroids `[∅,G₁], [G₁,G₂], …, [G_s,E]`.
    pub factors: Vec<Matroid>,
    pub factor_fans: Vec<Fan>,
    /// Product of the factor fans, in concatenated block coordinates.
    pub product: Fan,
    /// Linear isomorphism from block coordinates to the link's quotient
    /// coordinates.
    pub to_link: Matrix,
    pub link: Link,
}

/// Link of the cone on a chain of nontrivial flats, as a product of Bergman
/// fans of the intervals of the chain. Fails with `InternalMismatch` if the
/// transported product differs from the computed link as embedded fans.
pub fn link_of_chain_as_product(m: &Matroid, chain: &[ElementSet]) -> Result<ProductLink> {
    let mut chain = chain.to_vec();
    chain.sort_by_key(|f| f.len());
    for w in chain.windows(2) {
        if !(w[0].is_subset(w[1]) && w[0] != w[1]) {
            return Err(Error::InvalidInput("flats do not form a chain".into()));
        }
    }
    let mut cone: Cone = Vec::new();
    for &f in &chain {
        if !m.is_flat(f) || !m.is_nontrivial(f) {
            return Err(Error::InvalidInput(format!("{:?} is not a nontrivial flat", m.labels_of(f))));
        }
        cone.push(flat_ray(m, f).expect("nontrivial flat has a ray"));
    }
    let fan = bergman_fan(m);
    let link = fan.link(&cone)?;

    let mut bounds = vec![ElementSet::EMPTY];
    bounds.extend(chain.iter().copied());
    bounds.push(m.ground());
    let mut factors = Vec::new();
    for w in bounds.windows(2) {
        factors.push(m.interval(w[0], w[1])?);
    }
    let factor_fans: Vec<Fan> = factors.iter().map(bergman_fan).collect();
    let prod = factor_fans.iter().skip(1).fold(factor_fans[0].clone(), |acc, f| product(&acc, f));

    // Block coordinates: for interval t, its ground positions except the last.
    let n = m.ground_size();
    let ambient = n - 1;
    let mut columns = Vec::new();
    for w in bounds.windows(2) {
        let block: Vec<usize> = w[1].difference(w[0]).positions().collect();
        for &p in &block[..block.len() - 1] {
            // e_p in R^E, reduced modulo e_E with the last coordinate zeroed.
            let mut v = vec![zero(); ambient];
            if p < ambient {
                v[p] = one();
            } else {
                v.iter_mut().for_each(|x| *x = -one());
            }
            columns.push(link.quotient.mul_vec(&v));
        }
    }
    let to_link = Matrix::from_columns(&columns, link.fan.ambient_dim());
    let transported = prod.transform(&to_link)?;
    if !transported.same_embedded(&link.fan) {
        return Err(Error::InternalMismatch(format!(
            "link of chain {:?} is not the product of its interval fans",
            chain.iter().map(|&f| m.labels_of(f)).collect::<Vec<_>>()
        )));
    }
    Ok(ProductLink { factors, factor_fans, product: prod, to_link, link })
}

/// Link of the ray of `flat`, as `Δ_[∅,F] × Δ_[F,E]`.
pub fn link_of_ray_as_product(m: &Matroid, flat: ElementSet) -> Result<ProductLink> {
    if !m.is_nontrivial(flat) {
        return Err(Error::InvalidInput("flat must be nonempty and proper".into()));
    }
    link_of_chain_as_product(m, &[flat])
}
