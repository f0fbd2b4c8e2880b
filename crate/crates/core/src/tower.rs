//! Factorization of the deletion projection `Δ_M → Δ_{M∖i}` into star
//! subdivisions at two-dimensional cones followed by a projection.
//!
//! `fans[j]` is built from the quotient poset in which `F_l ~ F_l ∪ i` for
//! `l ≤ j` (the merged class sits at `e_{F_l}`). Independently, `fans[j-1]`
//! is recomputed as the star subdivision of `fans[j]` at the cone
//! `{i} < F_j ∪ i`, and the two constructions must agree.

use std::collections::BTreeMap;

use crate::bergman::{bergman_fan, chains, set_vector};
use crate::error::{Error, Result};
use crate::fan::{Cone, Fan, FanMap, RayLabel};
use crate::linalg::Matrix;
use crate::matroid::{ElementSet, Matroid};
use crate::rational::{one, primitive, zero};

#[derive(Clone, Debug)]
pub struct DeletionTower {
    pub matroid: Matroid,
    /// Label of the deleted element.
    pub element: usize,
    /// `S_i = [F_1, …, F_k]` in the order used.
    pub flat_pairs: Vec<ElementSet>,
    /// `Δ_0 = Δ_M, …, Δ_k`.
    pub fans: Vec<Fan>,
    /// `subdivided_cones[j-1]` is the cone `{i} < F_j ∪ i` of `fans[j]`.
    pub subdivided_cones: Vec<Cone>,
    /// `subdivision_maps[j-1]`: ambient identity `fans[j-1] → fans[j]`.
    pub subdivision_maps: Vec<FanMap>,
    /// Index of the ray inserted into `fans[j-1]` by the j-th subdivision.
    pub new_rays: Vec<usize>,
    pub deleted: Matroid,
    pub target: Fan,
    /// `Δ_k → Δ_{M∖i}`.
    pub projection: FanMap,
    /// Ray of `Δ_k` spanned by `e_i`, if `{i}` is a flat.
    pub contracted_ray: Option<usize>,
}

impl DeletionTower {
    /// Tower for the canonical (rank, lex) ordering of `S_i`.
    pub fn build(m: &Matroid, element: usize) -> Result<Self> {
        let order = m.deletion_flat_pairs(element)?;
        Self::build_with_order(m, element, &order)
    }

    /// Tower for a caller-chosen linear extension of `S_i`.
    pub fn build_with_order(m: &Matroid, element: usize, order: &[ElementSet]) -> Result<Self> {
        let pairs = m.deletion_flat_pairs(element)?;
        let mut sorted = order.to_vec();
        sorted.sort_by_key(|s| s.bits());
        let mut expected = pairs.clone();
        expected.sort_by_key(|s| s.bits());
        if sorted != expected {
            return Err(Error::InvalidInput("ordering is not a permutation of S_i".into()));
        }
        for (a, &f) in order.iter().enumerate() {
            if order[..a].iter().any(|&g| f.is_subset(g)) {
                return Err(Error::InvalidInput("ordering does not refine inclusion".into()));
            }
        }

        let p = m.position(element).expect("checked by deletion_flat_pairs");
        let k = order.len();
        let fans: Vec<Fan> = (0..=k).map(|j| quotient_fan(m, p, &order[..j])).collect::<Result<_>>()?;
        if !fans[0].same_embedded(&bergman_fan(m)) {
            return Err(Error::InternalMismatch("Δ_0 differs from the Bergman fan".into()));
        }

        let single = ElementSet::EMPTY.with(p);
        let mut subdivided_cones = Vec::with_capacity(k);
        let mut subdivision_maps = Vec::with_capacity(k);
        let mut new_rays = Vec::with_capacity(k);
        for j in 1..=k {
            let fj = order[j - 1];
            let coarse = &fans[j];
            let ri = ray_of_flat(coarse, m, single)
                .ok_or_else(|| Error::InternalMismatch("no ray for {i}".into()))?;
            let rf = ray_of_flat(coarse, m, fj)
                .ok_or_else(|| Error::InternalMismatch("no ray for merged class".into()))?;
            let mut tau = vec![ri, rf];
            tau.sort_unstable();
            let sub = coarse.star_subdivision(&tau)?;
            if !sub.fan.same_embedded(&fans[j - 1]) {
                return Err(Error::InternalMismatch(format!(
                    "subdividing Δ_{j} at {{i}} < F_{j} ∪ i does not give Δ_{}",
                    j - 1
                )));
            }
            let fine = &fans[j - 1];
            let new_ray = ray_of_flat(fine, m, fj.with(p))
                .ok_or_else(|| Error::InternalMismatch("no ray for F_j ∪ i".into()))?;
            subdivision_maps.push(FanMap::identity(fine, coarse)?);
            subdivided_cones.push(tau);
            new_rays.push(new_ray);
        }

        let deleted = m.delete(element)?;
        let target = bergman_fan(&deleted);
        let matrix = deletion_projection(m, p);
        let last = &fans[k];
        let projection = FanMap::new(matrix.clone(), last, &target)?;

        let contracted_ray = ray_of_flat(last, m, single);
        let mut hit = BTreeMap::new();
        for r in 0..last.num_rays() {
            if Some(r) == contracted_ray {
                continue;
            }
            let image = matrix.mul_vec(last.ray(r));
            let t = (0..target.num_rays()).find(|&t| target.ray(t) == primitive(&image).0.as_slice());
            match t {
                Some(t) if hit.insert(t, r).is_none() => {}
                _ => {
                    return Err(Error::InternalMismatch(format!(
                        "projection is not a bijection on rays (ray {r})"
                    )))
                }
            }
        }
        if hit.len() != target.num_rays() {
            return Err(Error::InternalMismatch("projection misses rays of Δ_{M∖i}".into()));
        }

        Ok(DeletionTower {
            matroid: m.clone(),
            element,
            flat_pairs: order.to_vec(),
            fans,
            subdivided_cones,
            subdivision_maps,
            new_rays,
            deleted,
            target,
            projection,
            contracted_ray,
        })
    }

    pub fn len(&self) -> usize {
        self.flat_pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flat_pairs.is_empty()
    }

    /// The cone `{i} < F_j ∪ i` (1-based `j`) inside `fans[m]`.
    pub fn tau_in(&self, m: usize, j: usize) -> Cone {
        let p = self.matroid.position(self.element).unwrap();
        let single = ElementSet::EMPTY.with(p);
        let fj = self.flat_pairs[j - 1];
        let fan = &self.fans[m];
        let a = ray_of_flat(fan, &self.matroid, single).unwrap();
        let b = ray_of_flat(fan, &self.matroid, fj.with(p)).unwrap();
        let mut c = vec![a, b];
        c.sort_unstable();
        c
    }
}

/// The ray of `fan` whose label names `flat` (alone or inside a class).
fn ray_of_flat(fan: &Fan, m: &Matroid, flat: ElementSet) -> Option<usize> {
    let labels = m.labels_of(flat);
    fan.labels().iter().position(|l| match l {
        Some(RayLabel::Flat(s)) => *s == labels,
        Some(RayLabel::Class(c)) => c.contains(&labels),
        _ => false,
    })
}

/// Fan of the quotient poset with `F ~ F ∪ i` for every `F` in `merged`.
fn quotient_fan(m: &Matroid, p: usize, merged: &[ElementSet]) -> Result<Fan> {
    let flats = m.nontrivial_flats();
    let merged_up: Vec<ElementSet> = merged.iter().map(|f| f.with(p)).collect();
    let mut ray_of = vec![usize::MAX; flats.len()];
    let mut rays = Vec::new();
    let mut labels = Vec::new();
    for (idx, &f) in flats.iter().enumerate() {
        if merged_up.contains(&f) {
            continue;
        }
        ray_of[idx] = rays.len();
        rays.push(set_vector(m, f));
        if merged.contains(&f) {
            labels.push(Some(RayLabel::Class(vec![m.labels_of(f), m.labels_of(f.with(p))])));
        } else {
            labels.push(Some(RayLabel::Flat(m.labels_of(f))));
        }
    }
    for (idx, &f) in flats.iter().enumerate() {
        if let Some(l) = merged_up.iter().position(|&g| g == f) {
            let base = flats.iter().position(|&g| g == merged[l]).unwrap();
            ray_of[idx] = ray_of[base];
        }
    }
    let cones = chains(&flats).into_iter().map(|chain| {
        let mut c: Cone = chain.iter().map(|&i| ray_of[i]).collect();
        c.sort_unstable();
        c.dedup();
        c
    });
    Fan::new(m.ground_size() - 1, rays, cones, labels)
}

/// `R^E / e_E → R^{E∖i} / e_{E∖i}` in last-coordinate-zero representatives.
pub fn deletion_projection(m: &Matroid, p: usize) -> Matrix {
    let n = m.ground_size();
    let kept: Vec<usize> = (0..n).filter(|&q| q != p).collect();
    let rows = n.saturating_sub(2);
    let mut columns = Vec::with_capacity(n - 1);
    for c in 0..n - 1 {
        let mut y = vec![zero(); n - 1];
        if let Some(idx) = kept.iter().position(|&q| q == c) {
            y[idx] = one();
        }
        let shift = y[n - 2].clone();
        let col: Vec<_> = y[..rows].iter().map(|v| v - &shift).collect();
        columns.push(col);
    }
    Matrix::from_columns(&columns, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u34_tower_has_three_steps() {
        let m = Matroid::uniform(3, 4).unwrap();
        let t = DeletionTower::build(&m, 4).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.fans.len(), 4);
        assert!(t.deleted.is_boolean());
        assert!(t.contracted_ray.is_some());
        assert_eq!(t.fans[3].num_rays(), t.target.num_rays() + 1);
        for f in &t.fans {
            f.validate().unwrap();
        }
    }

    #[test]
    fn u23_tower_is_a_projection() {
        let m = Matroid::uniform(2, 3).unwrap();
        let t = DeletionTower::build(&m, 3).unwrap();
        assert_eq!(t.len(), 0);
        assert_eq!(t.fans.len(), 1);
    }

    #[test]
    fn coloop_rejected() {
        let m = Matroid::boolean(3).unwrap();
        assert!(matches!(DeletionTower::build(&m, 3), Err(Error::ColoopInput(3))));
    }

    #[test]
    fn bad_orderings_rejected() {
        let m = Matroid::uniform(4, 5).unwrap();
        let pairs = m.deletion_flat_pairs(5).unwrap();
        let mut rev = pairs.clone();
        rev.reverse();
        assert!(pairs.iter().any(|f| f.len() == 2));
        assert!(DeletionTower::build_with_order(&m, 5, &rev).is_err());
        assert!(DeletionTower::build_with_order(&m, 5, &pairs[1..]).is_err());
    }

    #[test]
    fn other_elements_and_matroids() {
        for (m, e) in [
            (Matroid::uniform(3, 4).unwrap(), 1),
            (Matroid::uniform(3, 5).unwrap(), 5),
            (Matroid::uniform(2, 4).unwrap(), 2),
            (Matroid::uniform(4, 5).unwrap(), 3),
        ] {
            let t = DeletionTower::build(&m, e).unwrap();
            assert_eq!(t.subdivided_cones.len(), t.len());
        }
    }
}
