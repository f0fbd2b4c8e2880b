//! Maps between Chow rings: pullback along fan morphisms, restriction to links
//! (with the transported Minkowski weight), the adjunction identity, and the
//! Künneth map for product fans.

use num_traits::One;

use crate::chow::{ChowElement, ChowSpace, DivisorClass, Monomial};
use crate::error::{Error, Result};
use crate::fan::{Cone, Fan, FanMap, Link};
use crate::linalg::Matrix;
use crate::rational::{dot, zero, Rational};
use crate::weights::{is_balanced, Balance, DegreeMap, MinkowskiWeight};

/// Pullback of a piecewise-linear representative: its value at each source
/// ray, read off the carrier cone of the ray's image.
pub fn pullback_divisor(f: &FanMap, class: &DivisorClass) -> DivisorClass {
    DivisorClass::new(
        (0..f.num_source_rays())
            .map(|r| f.ray_image(r).iter().fold(zero(), |acc, (t, c)| acc + c * &class.coeffs[*t]))
            .collect(),
    )
}

/// Ring map `f*: CH(target) → CH(source)`.
pub fn pullback(f: &FanMap, source: &ChowSpace, target: &ChowSpace, x: &ChowElement) -> ChowElement {
    let rays: Vec<ChowElement> = (0..target.fan().num_rays())
        .map(|t| {
            let mut e = DivisorClass::zero(target.fan().num_rays());
            e.coeffs[t] = Rational::one();
            source.divisor(&pullback_divisor(f, &e))
        })
        .collect();
    let mut out = source.zero(x.degree());
    for (m, c) in target.terms(x) {
        out = out.add(&image_of_monomial(source, &m, &rays).scale(&c));
    }
    out
}

/// Matrix of `f*` on degree `k`.
pub fn pullback_matrix(f: &FanMap, source: &ChowSpace, target: &ChowSpace, k: usize) -> Matrix {
    let cols: Vec<Vec<Rational>> = (0..target.dim(k))
        .map(|b| pullback(f, source, target, &target.basis_element(k, b)).coords().to_vec())
        .collect();
    Matrix::from_columns(&cols, source.dim(k))
}

fn image_of_monomial(ring: &ChowSpace, m: &Monomial, images: &[ChowElement]) -> ChowElement {
    let mut acc = ring.one();
    for &(r, e) in m.exponents() {
        for _ in 0..e {
            acc = ring.multiply(&acc, &images[r]);
        }
    }
    acc
}

/// Functionals `θ̃_j` with `θ̃_j(v_i) = δ_ij` on the rays of `τ`.
fn dual_functionals(fan: &Fan, tau: &[usize]) -> Vec<Vec<Rational>> {
    let gens = Matrix::from_rows(fan.generators(tau), fan.ambient_dim());
    (0..tau.len())
        .map(|j| {
            let mut e = vec![zero(); tau.len()];
            e[j] = Rational::one();
            gens.solve(&e).expect("cone generators are independent")
        })
        .collect()
}

/// Subtracts the linear function agreeing with `class` on `τ`, then reads
/// the values on the link generators `c_k·Q(v_k)`.
fn link_divisor(fan: &Fan, tau: &[usize], dual: &[Vec<Rational>], link: &Link, class: &DivisorClass) -> DivisorClass {
    let mut phi = vec![zero(); fan.ambient_dim()];
    for (j, &r) in tau.iter().enumerate() {
        for (p, d) in phi.iter_mut().zip(&dual[j]) {
            *p += &class.coeffs[r] * d;
        }
    }
    DivisorClass::new(
        link.parent_rays
            .iter()
            .zip(&link.scales)
            .map(|(&r, c)| c * (&class.coeffs[r] - dot(&phi, fan.ray(r))))
            .collect(),
    )
}

/// A degree-one class restricted to `link(Δ, τ)`, without building the
/// link's Chow ring.
pub fn restrict_divisor_to_link(fan: &Fan, tau: &[usize], link: &Link, class: &DivisorClass) -> DivisorClass {
    link_divisor(fan, tau, &dual_functionals(fan, tau), link, class)
}

/// Restriction `CH(Δ) → CH(Star τ) ≅ CH(Link τ)`.
#[derive(Clone, Debug)]
pub struct LinkRestriction {
    pub tau: Cone,
    pub link: Link,
    pub chow: ChowSpace,
    /// Functionals `θ̃_j` with `θ̃_j(v_i) = δ_ij` on the rays of `τ`.
    dual: Vec<Vec<Rational>>,
    /// Restriction of each `x_r` of `Δ`, as link divisors.
    ray_classes: Vec<DivisorClass>,
}

impl LinkRestriction {
    pub fn new(fan: &Fan, tau: &[usize]) -> Result<Self> {
        let mut tau = tau.to_vec();
        tau.sort_unstable();
        let link = fan.link(&tau)?;
        let chow = ChowSpace::new(&link.fan);
        let dual = dual_functionals(fan, &tau);
        let mut out = LinkRestriction { tau, link, chow, dual, ray_classes: Vec::new() };
        out.ray_classes = (0..fan.num_rays())
            .map(|r| {
                let mut e = DivisorClass::zero(fan.num_rays());
                e.coeffs[r] = Rational::one();
                out.restrict_divisor(fan, &e)
            })
            .collect();
        Ok(out)
    }

    pub fn restrict_divisor(&self, fan: &Fan, class: &DivisorClass) -> DivisorClass {
        link_divisor(fan, &self.tau, &self.dual, &self.link, class)
    }

    pub fn restrict(&self, ch: &ChowSpace, x: &ChowElement) -> ChowElement {
        let images: Vec<ChowElement> = self.ray_classes.iter().map(|c| self.chow.divisor(c)).collect();
        let mut out = self.chow.zero(x.degree());
        for (m, c) in ch.terms(x) {
            out = out.add(&image_of_monomial(&self.chow, &m, &images).scale(&c));
        }
        out
    }

    /// `x_τ · π*(f)` in `CH(Δ)`, where `π*(x̄_k) = x_{p(k)} / c_k`.
    pub fn x_tau_times_pullback(&self, ch: &ChowSpace, f: &ChowElement) -> ChowElement {
        let x_tau = Monomial::of_cone(&self.tau);
        let mut terms = Vec::new();
        for (m, c) in self.chow.terms(f) {
            let mut scale = c;
            for &(k, e) in m.exponents() {
                for _ in 0..e {
                    scale /= &self.link.scales[k];
                }
            }
            let lifted = m.relabel(|k| self.link.parent_rays[k]);
            terms.push((x_tau.times(&lifted), scale));
        }
        ch.element(self.tau.len() + f.degree(), &terms)
    }

    /// `res w` on the link: `w_{τ∪γ} / Π_{k∈γ} c_k`, checked for balancing.
    pub fn restrict_weight(&self, w: &MinkowskiWeight) -> Result<MinkowskiWeight> {
        let fan = &self.link.fan;
        let cones = fan.max_cones();
        let mut values = Vec::with_capacity(cones.len());
        for gamma in &cones {
            let mut sigma: Cone = self.tau.iter().copied().chain(gamma.iter().map(|&k| self.link.parent_rays[k])).collect();
            sigma.sort_unstable();
            let ws = w
                .value(&sigma)
                .ok_or_else(|| Error::InvalidInput(format!("weight has no value on {sigma:?}")))?;
            let scale = gamma.iter().fold(Rational::one(), |acc, &k| acc * &self.link.scales[k]);
            values.push(ws / scale);
        }
        let res = MinkowskiWeight::new(fan, values)?;
        if let Balance::Unbalanced(t) = is_balanced(fan, &res)? {
            return Err(Error::VerificationFailure(format!("restricted weight unbalanced at {t:?}")));
        }
        Ok(res)
    }
}

/// `deg_w(x_τ · π*(f)) = deg_{res w}(f)` for `f` of top degree on the link.
pub fn adjunction_check(
    ch: &ChowSpace,
    deg: &DegreeMap,
    restriction: &LinkRestriction,
    link_deg: &DegreeMap,
    f: &ChowElement,
) -> Result<bool> {
    if f.degree() != restriction.chow.top_degree() {
        return Err(Error::InvalidInput("adjunction needs a top-degree link class".into()));
    }
    let lhs = deg.degree(&restriction.x_tau_times_pullback(ch, f))?;
    Ok(lhs == link_deg.degree(f)?)
}

/// Checks `CH(Δ₁ × Δ₂) ≅ CH(Δ₁) ⊗ CH(Δ₂)`: Hilbert functions convolve and
/// products of basis monomials span each degree of the product ring.
pub fn product_chow_iso_check(a: &ChowSpace, b: &ChowSpace, prod: &ChowSpace) -> bool {
    let (ha, hb, hp) = (a.hilbert(), b.hilbert(), prod.hilbert());
    let mut conv = vec![0usize; ha.len() + hb.len() - 1];
    for (i, x) in ha.iter().enumerate() {
        for (j, y) in hb.iter().enumerate() {
            conv[i + j] += x * y;
        }
    }
    if conv != hp {
        return false;
    }
    let offset = a.fan().num_rays();
    (0..hp.len()).all(|k| {
        let mut cols = Vec::new();
        for i in 0..=k.min(ha.len() - 1) {
            let j = k - i;
            if j >= hb.len() {
                continue;
            }
            for ma in a.basis(i) {
                for mb in b.basis(j) {
                    let m = ma.times(&mb.relabel(|r| r + offset));
                    cols.push(prod.monomial(&m).coords().to_vec());
                }
            }
        }
        cols.len() == hp[k] && Matrix::from_columns(&cols, hp[k]).rank() == hp[k]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bergman::{bergman_fan, flat_ray};
    use crate::chow::linear_relations;
    use crate::fan::product;
    use crate::matroid::Matroid;
    use crate::rational::int;
    use crate::weights::standard_degree;

    fn b3() -> (Matroid, Fan, ChowSpace) {
        let m = Matroid::boolean(3).unwrap();
        let fan = bergman_fan(&m);
        let ch = ChowSpace::new(&fan);
        (m, fan, ch)
    }

    #[test]
    fn identity_pullback() {
        let (_, fan, ch) = b3();
        let id = FanMap::identity(&fan, &fan).unwrap();
        for k in 0..=2 {
            assert_eq!(pullback_matrix(&id, &ch, &ch, k), Matrix::identity(ch.dim(k)));
        }
    }

    #[test]
    fn subdivision_pullback_values() {
        let (m, fan, _) = b3();
        let r1 = flat_ray(&m, m.set_of_labels(&[1]).unwrap()).unwrap();
        let r12 = flat_ray(&m, m.set_of_labels(&[1, 2]).unwrap()).unwrap();
        let sub = fan.star_subdivision(&[r1, r12]).unwrap();
        let mut e = DivisorClass::zero(fan.num_rays());
        e.coeffs[r1] = int(3);
        e.coeffs[r12] = int(5);
        let pulled = pullback_divisor(&sub.map, &e);
        assert_eq!(pulled.coeffs[sub.new_ray], int(8) / &sub.scale);
        assert_eq!(pulled.coeffs[r1], int(3));
    }

    #[test]
    fn linear_functions_restrict_to_zero() {
        let (m, fan, ch) = b3();
        let r12 = flat_ray(&m, m.set_of_labels(&[1, 2]).unwrap()).unwrap();
        let res = LinkRestriction::new(&fan, &[r12]).unwrap();
        for rel in linear_relations(&fan) {
            let d = res.restrict_divisor(&fan, &rel.expansion);
            assert!(res.chow.divisor(&d).is_zero());
        }
        let x = ch.monomial(&Monomial::ray(r12));
        assert_eq!(res.restrict(&ch, &x).degree(), 1);
    }

    #[test]
    fn restriction_is_multiplicative() {
        let m = Matroid::uniform(3, 4).unwrap();
        let fan = bergman_fan(&m);
        let ch = ChowSpace::new(&fan);
        for r in 0..fan.num_rays() {
            let res = LinkRestriction::new(&fan, &[r]).unwrap();
            for a in 0..ch.dim(1) {
                for b in 0..ch.dim(1) {
                    let (x, y) = (ch.basis_element(1, a), ch.basis_element(1, b));
                    let lhs = res.restrict(&ch, &ch.multiply(&x, &y));
                    let rhs = res.chow.multiply(&res.restrict(&ch, &x), &res.restrict(&ch, &y));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn adjunction_on_b3_ray() {
        let (m, fan, ch) = b3();
        let deg = standard_degree(&ch).unwrap();
        let r12 = flat_ray(&m, m.set_of_labels(&[1, 2]).unwrap()).unwrap();
        let res = LinkRestriction::new(&fan, &[r12]).unwrap();
        let w = res.restrict_weight(&deg.weight).unwrap();
        assert!(w.values.iter().all(|v| *v == int(1)));
        let link_deg = DegreeMap::new(&res.chow, &w).unwrap();
        for b in 0..res.chow.dim(1) {
            assert!(adjunction_check(&ch, &deg, &res, &link_deg, &res.chow.basis_element(1, b)).unwrap());
        }
        let tau = fan.max_cones()[0].clone();
        let full = LinkRestriction::new(&fan, &tau).unwrap();
        let w0 = full.restrict_weight(&deg.weight).unwrap();
        let d0 = DegreeMap::new(&full.chow, &w0).unwrap();
        assert!(adjunction_check(&ch, &deg, &full, &d0, &full.chow.one()).unwrap());
        assert_eq!(w0.values, vec![int(1)]);
    }

    #[test]
    fn product_iso() {
        let b2 = bergman_fan(&Matroid::boolean(2).unwrap());
        let b3 = bergman_fan(&Matroid::boolean(3).unwrap());
        let (c2, c3) = (ChowSpace::new(&b2), ChowSpace::new(&b3));
        let p22 = ChowSpace::new(&product(&b2, &b2));
        assert_eq!(p22.hilbert(), vec![1, 2, 1]);
        assert!(product_chow_iso_check(&c2, &c2, &p22));
        let p23 = ChowSpace::new(&product(&b2, &b3));
        assert_eq!(p23.hilbert(), vec![1, 5, 5, 1]);
        assert!(product_chow_iso_check(&c2, &c3, &p23));
        let z = ChowSpace::new(&Fan::zero(0));
        assert!(product_chow_iso_check(&c3, &z, &ChowSpace::new(&product(&b3, &Fan::zero(0)))));
        assert!(!product_chow_iso_check(&c2, &c2, &c3));
    }
}
