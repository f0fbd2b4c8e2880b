//! Minkowski weights, the balancing condition, and the degree map on `CH^d`.

use crate::chow::{ChowElement, ChowSpace, Monomial};
use crate::error::{Error, Result};
use crate::fan::{quotient_map, Cone, Fan};
use crate::linalg::{in_span, Matrix};
use num_traits::Signed;

use crate::rational::{dot, int, scale_vec, zero, Rational};

/// Weights on the maximal cones of a pure fan, in `Fan::max_cones` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinkowskiWeight {
    pub cones: Vec<Cone>,
    pub values: Vec<Rational>,
}

impl MinkowskiWeight {
    pub fn new(fan: &Fan, values: Vec<Rational>) -> Result<Self> {
        let cones = pure_max_cones(fan)?;
        if values.len() != cones.len() {
            return Err(Error::InvalidInput(format!(
                "{} weights for {} maximal cones",
                values.len(),
                cones.len()
            )));
        }
        Ok(MinkowskiWeight { cones, values })
    }

    pub fn all_ones(fan: &Fan) -> Result<Self> {
        let n = pure_max_cones(fan)?.len();
        Self::new(fan, vec![int(1); n])
    }

    pub fn value(&self, cone: &[usize]) -> Option<&Rational> {
        self.cones.iter().position(|c| c == cone).map(|i| &self.values[i])
    }
}

fn pure_max_cones(fan: &Fan) -> Result<Vec<Cone>> {
    if !fan.is_pure() {
        return Err(Error::NotPure);
    }
    Ok(fan.max_cones())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Balance {
    Balanced,
    /// A codimension-one cone where the balancing sum leaves its span.
    Unbalanced(Cone),
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced)
    }
}

/// Maximal cones containing `tau`, with the ray each adds to it.
fn cofacets(cones: &[Cone], tau: &[usize]) -> Vec<(usize, usize)> {
    cones
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() == tau.len() + 1 && tau.iter().all(|r| c.contains(r)))
        .map(|(i, c)| (i, *c.iter().find(|r| !tau.contains(r)).unwrap()))
        .collect()
}

/// Checks `Σ w_σ v_{σ∖τ} ∈ span τ` at every codimension-one cone `τ`.
pub fn is_balanced(fan: &Fan, w: &MinkowskiWeight) -> Result<Balance> {
    let cones = pure_max_cones(fan)?;
    if cones != w.cones {
        return Err(Error::InvalidInput("weight does not match the fan's maximal cones".into()));
    }
    let d = fan.dim();
    if d == 0 {
        return Ok(Balance::Balanced);
    }
    for tau in fan.cones_of_dim(d - 1) {
        let mut sum = vec![zero(); fan.ambient_dim()];
        for (i, r) in cofacets(&cones, &tau) {
            for (s, x) in sum.iter_mut().zip(scale_vec(&w.values[i], fan.ray(r))) {
                *s += x;
            }
        }
        if !in_span(&fan.generators(&tau), &sum) {
            return Ok(Balance::Unbalanced(tau));
        }
    }
    Ok(Balance::Balanced)
}

/// Basis of the space of balanced weights.
pub fn mw_basis(fan: &Fan) -> Result<Vec<MinkowskiWeight>> {
    let cones = pure_max_cones(fan)?;
    let d = fan.dim();
    let mut rows = Vec::new();
    if d > 0 {
        for tau in fan.cones_of_dim(d - 1) {
            let q = quotient_map(&fan.generators(&tau), fan.ambient_dim());
            let cof = cofacets(&cones, &tau);
            for row in 0..q.nrows() {
                let mut eq = vec![zero(); cones.len()];
                for &(i, r) in &cof {
                    eq[i] = dot(q.row(row), fan.ray(r));
                }
                rows.push(eq);
            }
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::identity(cones.len()).to_rows()
    } else {
        Matrix::from_rows(rows, cones.len()).kernel()
    };
    Ok(kernel.into_iter().map(|values| MinkowskiWeight { cones: cones.clone(), values }).collect())
}

/// `dim MW(Δ)`, checked against `dim CH^d(Δ)`.
pub fn mw_space(ch: &ChowSpace) -> Result<Vec<MinkowskiWeight>> {
    let basis = mw_basis(ch.fan())?;
    let top = ch.dim(ch.top_degree());
    if basis.len() != top {
        return Err(Error::VerificationFailure(format!(
            "dim MW = {} but dim CH^{} = {}",
            basis.len(),
            ch.top_degree(),
            top
        )));
    }
    Ok(basis)
}

/// The linear functional `deg_w` on `CH^d`, determined by `deg_w(x_σ) = w_σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeMap {
    pub weight: MinkowskiWeight,
    pub top_degree: usize,
    /// Values on the standard basis of `CH^d`.
    pub values: Vec<Rational>,
}

impl DegreeMap {
    pub fn new(ch: &ChowSpace, w: &MinkowskiWeight) -> Result<Self> {
        let d = ch.top_degree();
        if w.cones != pure_max_cones(ch.fan())? {
            return Err(Error::InvalidInput("weight does not match the fan's maximal cones".into()));
        }
        let classes: Vec<Vec<Rational>> =
            w.cones.iter().map(|c| ch.monomial(&Monomial::of_cone(c)).coords().to_vec()).collect();
        let system = Matrix::from_rows(classes, ch.dim(d));
        let values = system.solve(&w.values).ok_or_else(|| {
            Error::VerificationFailure("weights do not induce a functional on CH^d (unbalanced)".into())
        })?;
        Ok(DegreeMap { weight: w.clone(), top_degree: d, values })
    }

    pub fn degree(&self, x: &ChowElement) -> Result<Rational> {
        if x.degree() != self.top_degree {
            return Err(Error::InvalidInput("degree of a class that is not of top degree".into()));
        }
        Ok(dot(&self.values, x.coords()))
    }
}

/// The balanced weight on a fan with `dim MW = 1`, signed to be positive.
pub fn positive_weight(ch: &ChowSpace) -> Result<MinkowskiWeight> {
    let mut basis = mw_space(ch)?;
    if basis.len() != 1 {
        return Err(Error::VerificationFailure(format!("dim MW = {}, expected 1", basis.len())));
    }
    let mut w = basis.remove(0);
    if w.values.iter().all(|v| v.is_negative()) {
        w.values.iter_mut().for_each(|v| *v = -v.clone());
    }
    if !w.values.iter().all(|v| v.is_positive()) {
        return Err(Error::VerificationFailure("balanced weight changes sign".into()));
    }
    Ok(w)
}

/// Degree with respect to the all-ones weight on a balanced fan.
pub fn standard_degree(ch: &ChowSpace) -> Result<DegreeMap> {
    let w = MinkowskiWeight::all_ones(ch.fan())?;
    if let Balance::Unbalanced(tau) = is_balanced(ch.fan(), &w)? {
        return Err(Error::VerificationFailure(format!("all-ones weight unbalanced at {tau:?}")));
    }
    DegreeMap::new(ch, &w)
}

/// Sum of monomial terms' degrees, for callers holding raw expansions.
pub fn degree_of_terms(ch: &ChowSpace, deg: &DegreeMap, terms: &[(Monomial, Rational)]) -> Result<Rational> {
    let d = ch.top_degree();
    if terms.iter().any(|(m, _)| m.degree() != d) {
        return Err(Error::InvalidInput("terms are not of top degree".into()));
    }
    deg.degree(&ch.element(d, terms))
}

/// `deg(x_σ) = w_σ` for every maximal cone.
pub fn matches_weight_on_max_cones(ch: &ChowSpace, deg: &DegreeMap) -> bool {
    deg.weight.cones.iter().zip(&deg.weight.values).all(|(c, w)| {
        deg.degree(&ch.monomial(&Monomial::of_cone(c))).is_ok_and(|v| v == *w)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bergman::{bergman_fan, flat_ray};
    use crate::chow::linear_relations;
    use crate::matroid::Matroid;

    #[test]
    fn all_ones_is_balanced() {
        for m in [Matroid::boolean(3).unwrap(), Matroid::uniform(2, 3).unwrap(), Matroid::uniform(3, 4).unwrap()] {
            let fan = bergman_fan(&m);
            let w = MinkowskiWeight::all_ones(&fan).unwrap();
            assert!(is_balanced(&fan, &w).unwrap().is_balanced());
        }
    }

    #[test]
    fn flipped_weight_is_unbalanced() {
        let fan = bergman_fan(&Matroid::boolean(3).unwrap());
        let mut w = MinkowskiWeight::all_ones(&fan).unwrap();
        w.values[0] = int(2);
        assert!(matches!(is_balanced(&fan, &w).unwrap(), Balance::Unbalanced(t) if t.len() == 1));
        let ch = ChowSpace::new(&fan);
        assert!(matches!(DegreeMap::new(&ch, &w), Err(Error::VerificationFailure(_))));
    }

    #[test]
    fn mw_dimensions() {
        for fan in [
            bergman_fan(&Matroid::boolean(3).unwrap()),
            bergman_fan(&Matroid::uniform(2, 3).unwrap()),
            Fan::zero(0),
            Fan::zero(2),
        ] {
            let ch = ChowSpace::new(&fan);
            assert_eq!(mw_space(&ch).unwrap().len(), 1);
        }
    }

    #[test]
    fn degree_of_flag_monomial() {
        let m = Matroid::boolean(3).unwrap();
        let ch = ChowSpace::new(&bergman_fan(&m));
        let deg = standard_degree(&ch).unwrap();
        let r1 = flat_ray(&m, m.set_of_labels(&[1]).unwrap()).unwrap();
        let r12 = flat_ray(&m, m.set_of_labels(&[1, 2]).unwrap()).unwrap();
        let x = ch.multiply(&ch.monomial(&Monomial::ray(r1)), &ch.monomial(&Monomial::ray(r12)));
        assert_eq!(deg.degree(&x).unwrap(), int(1));
        assert_eq!(deg.degree(&ch.zero(2)).unwrap(), int(0));
        assert!(matches_weight_on_max_cones(&ch, &deg));
    }

    #[test]
    fn degree_ignores_relations() {
        let m = Matroid::uniform(3, 4).unwrap();
        let ch = ChowSpace::new(&bergman_fan(&m));
        let deg = standard_degree(&ch).unwrap();
        let sigma = Monomial::of_cone(&ch.fan().max_cones()[0]);
        let base = degree_of_terms(&ch, &deg, &[(sigma.clone(), int(1))]).unwrap();
        assert_eq!(base, int(1));
        for (j, rel) in linear_relations(ch.fan()).iter().enumerate() {
            for m in ch.monomials(1) {
                let mut terms = vec![(sigma.clone(), int(1))];
                for (r, c) in rel.expansion.coeffs.iter().enumerate() {
                    terms.push((m.times_ray(r), c * int(j as i64 + 2)));
                }
                assert_eq!(degree_of_terms(&ch, &deg, &terms).unwrap(), base);
            }
        }
        assert!(deg.degree(&ch.one()).is_err());
    }
}
