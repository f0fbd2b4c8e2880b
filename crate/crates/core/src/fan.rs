//! Embedded rational simplicial fans.
//!
//! A fan stores canonical integer ray generators and every cone (all faces,
//! including the zero cone) as a sorted list of ray indices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasibility::{self, Inequality};
use crate::linalg::Matrix;
use crate::rational::{self, add_vec, is_zero_vec, primitive, to_pq, zero, Rational};

/// Sorted ray indices.
pub type Cone = Vec<usize>;

/// What a ray stands for, when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RayLabel {
    /// Ray of a flat (element labels).
    Flat(Vec<usize>),
    /// Ray of an equivalence class of flats, listed smallest first.
    Class(Vec<Vec<usize>>),
    /// Ray coming from factor `side` of a product.
    Factor(usize, Box<RayLabel>),
    /// Ray inserted by subdividing the cone on the two given rays.
    Sum(usize, usize),
    Named(String),
}

impl fmt::Display for RayLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn set(s: &[usize]) -> String {
            let inner: Vec<String> = s.iter().map(|e| e.to_string()).collect();
            format!("{{{}}}", inner.join(","))
        }
        match self {
            RayLabel::Flat(s) => f.write_str(&set(s)),
            RayLabel::Class(c) => {
                let parts: Vec<String> = c.iter().map(|s| set(s)).collect();
                f.write_str(&parts.join("~"))
            }
            RayLabel::Factor(side, inner) => write!(f, "{side}:{inner}"),
            RayLabel::Sum(a, b) => write!(f, "r{a}+r{b}"),
            RayLabel::Named(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Fan {
    ambient_dim: usize,
    rays: Vec<Vec<Rational>>,
    cones: BTreeSet<Cone>,
    labels: Vec<Option<RayLabel>>,
}

/// A subfan together with the parent index of each of its rays.
#[derive(Clone, Debug)]
pub struct SubFan {
    pub fan: Fan,
    pub parent_rays: Vec<usize>,
}

/// The link of a cone, embedded in the quotient by the cone's span.
#[derive(Clone, Debug)]
pub struct Link {
    pub fan: Fan,
    /// Linear map from the parent ambient space onto the quotient coordinates.
    pub quotient: Matrix,
    /// Parent ray index of each link ray.
    pub parent_rays: Vec<usize>,
    /// Positive factors with `fan.ray(k) = scales[k] * quotient * parent.ray(parent_rays[k])`.
    pub scales: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct Subdivision {
    pub fan: Fan,
    /// Index of the inserted ray in `fan`.
    pub new_ray: usize,
    /// Positive factor with `fan.ray(new_ray) = scale * (v1 + v2)`.
    pub scale: Rational,
    /// The ambient identity, as a fan map from the subdivision to the original.
    pub map: FanMap,
}

impl Fan {
    /// Builds a fan from generators and maximal cones, closing under faces.
    ///
    /// Generators are rescaled to primitive integer vectors. Cones must be
    /// simplicial; the pairwise intersection condition is checked separately
    /// by [`Fan::validate`].
    pub fn new(
        ambient_dim: usize,
        rays: Vec<Vec<Rational>>,
        max_cones: impl IntoIterator<Item = Cone>,
        labels: Vec<Option<RayLabel>>,
    ) -> Result<Fan> {
        let mut canonical = Vec::with_capacity(rays.len());
        for (i, r) in rays.iter().enumerate() {
            if r.len() != ambient_dim {
                return Err(Error::InvalidInput(format!("ray {i} has dimension {} != {ambient_dim}", r.len())));
            }
            if is_zero_vec(r) {
                return Err(Error::InvalidInput(format!("ray {i} is zero")));
            }
            canonical.push(primitive(r).0);
        }
        let mut seen = BTreeSet::new();
        for (i, r) in canonical.iter().enumerate() {
            if !seen.insert(r.clone()) {
                return Err(Error::InvalidInput(format!("ray {i} repeats an earlier direction")));
            }
        }
        if labels.len() != canonical.len() {
            return Err(Error::InvalidInput("label count differs from ray count".into()));
        }
        let mut cones = BTreeSet::new();
        cones.insert(Vec::new());
        for mut cone in max_cones {
            cone.sort_unstable();
            cone.dedup();
            if let Some(&r) = cone.iter().find(|&&r| r >= canonical.len()) {
                return Err(Error::InvalidInput(format!("cone refers to missing ray {r}")));
            }
            if !cones.contains(&cone) {
                let gens: Vec<_> = cone.iter().map(|&r| canonical[r].clone()).collect();
                if crate::linalg::rank_of(&gens, ambient_dim) != cone.len() {
                    return Err(Error::InvalidInput(format!("cone {cone:?} is not simplicial")));
                }
                insert_with_faces(&mut cones, &cone);
            }
        }
        Ok(Fan { ambient_dim, rays: canonical, cones, labels })
    }

    /// The fan consisting of the zero cone only.
    pub fn zero(ambient_dim: usize) -> Fan {
        Fan { ambient_dim, rays: Vec::new(), cones: BTreeSet::from([Vec::new()]), labels: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn ray(&self, i: usize) -> &[Rational] {
        &self.rays[i]
    }

    pub fn rays(&self) -> &[Vec<Rational>] {
        &self.rays
    }

    pub fn label(&self, i: usize) -> Option<&RayLabel> {
        self.labels[i].as_ref()
    }

    pub fn labels(&self) -> &[Option<RayLabel>] {
        &self.labels
    }

    pub fn ray_of_label(&self, label: &RayLabel) -> Option<usize> {
        self.labels.iter().position(|l| l.as_ref() == Some(label))
    }

    /// All cones, including the zero cone, in lexicographic order.
    pub fn cones(&self) -> impl Iterator<Item = &Cone> {
        self.cones.iter()
    }

    pub fn num_cones(&self) -> usize {
        self.cones.len()
    }

    pub fn contains_cone(&self, cone: &[usize]) -> bool {
        self.cones.contains(cone)
    }

    pub fn dim(&self) -> usize {
        self.cones.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn cones_of_dim(&self, k: usize) -> Vec<Cone> {
        self.cones.iter().filter(|c| c.len() == k).cloned().collect()
    }

    /// Cones not properly contained in another cone, in lexicographic order.
    pub fn max_cones(&self) -> Vec<Cone> {
        self.cones
            .iter()
            .filter(|c| (0..self.rays.len()).all(|r| c.contains(&r) || !self.cones.contains(&with(c, r))))
            .cloned()
            .collect()
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.max_cones().iter().all(|c| c.len() == d)
    }

    pub fn generators(&self, cone: &[usize]) -> Vec<Vec<Rational>> {
        cone.iter().map(|&r| self.rays[r].clone()).collect()
    }

    fn require_cone(&self, cone: &[usize]) -> Result<Cone> {
        let mut c = cone.to_vec();
        c.sort_unstable();
        if self.cones.contains(&c) {
            Ok(c)
        } else {
            Err(Error::MissingCone(c))
        }
    }

    /// Cones `σ` with `σ ∪ τ` a cone, embedded in the same space.
    pub fn star(&self, tau: &[usize]) -> Result<SubFan> {
        let tau = self.require_cone(tau)?;
        let parent_rays: Vec<usize> = (0..self.rays.len())
            .filter(|&r| self.cones.contains(&union(&tau, &[r])))
            .collect();
        let index: BTreeMap<usize, usize> = parent_rays.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let cones = self
            .cones
            .iter()
            .filter(|c| self.cones.contains(&union(&tau, c)))
            .map(|c| c.iter().map(|r| index[r]).collect());
        let fan = Fan::new(
            self.ambient_dim,
            parent_rays.iter().map(|&r| self.rays[r].clone()).collect(),
            cones,
            parent_rays.iter().map(|&r| self.labels[r].clone()).collect(),
        )?;
        Ok(SubFan { fan, parent_rays })
    }

    /// Cones of the star meeting `τ` only at the origin, embedded in `V / span τ`.
    ///
    /// Quotient coordinates drop the pivot coordinates of the reduced row
    /// echelon basis of `span τ`.
    pub fn link(&self, tau: &[usize]) -> Result<Link> {
        let tau = self.require_cone(tau)?;
        let quotient = quotient_map(&self.generators(&tau), self.ambient_dim);
        let parent_rays: Vec<usize> = (0..self.rays.len())
            .filter(|r| !tau.contains(r) && self.cones.contains(&union(&tau, &[*r])))
            .collect();
        let index: BTreeMap<usize, usize> = parent_rays.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut rays = Vec::with_capacity(parent_rays.len());
        let mut scales = Vec::with_capacity(parent_rays.len());
        for &r in &parent_rays {
            let image = quotient.mul_vec(&self.rays[r]);
            let (p, c) = primitive(&image);
            rays.push(p);
            scales.push(c);
        }
        let cones = self
            .cones
            .iter()
            .filter(|c| c.iter().all(|r| !tau.contains(r)) && self.cones.contains(&union(&tau, c)))
            .map(|c| c.iter().map(|r| index[r]).collect());
        let fan = Fan::new(
            quotient.nrows(),
            rays,
            cones,
            parent_rays.iter().map(|&r| self.labels[r].clone()).collect(),
        )?;
        Ok(Link { fan, quotient, parent_rays, scales })
    }

    /// Star subdivision at a two-dimensional cone `{a, b}` by the ray `v_a + v_b`.
    pub fn star_subdivision(&self, tau: &[usize]) -> Result<Subdivision> {
        let tau = self.require_cone(tau)?;
        if tau.len() != 2 {
            return Err(Error::InvalidInput(format!(
                "star subdivision needs a two-dimensional cone, got {tau:?}"
            )));
        }
        let new_ray = self.rays.len();
        let sum = add_vec(&self.rays[tau[0]], &self.rays[tau[1]]);
        let (generator, scale) = primitive(&sum);
        let mut rays = self.rays.clone();
        rays.push(generator);
        let mut labels = self.labels.clone();
        labels.push(Some(RayLabel::Sum(tau[0], tau[1])));

        let mut cones: Vec<Cone> = self.cones.iter().filter(|c| !is_subset(&tau, c)).cloned().collect();
        for c in &self.cones {
            if !is_subset(&tau, c) && self.cones.contains(&union(&tau, c)) {
                cones.push(with(c, new_ray));
            }
        }
        let fan = Fan::new(self.ambient_dim, rays, cones, labels)?;
        let map = FanMap::new(Matrix::identity(self.ambient_dim), &fan, self)?;
        Ok(Subdivision { fan, new_ray, scale, map })
    }

    /// Applies an invertible linear change of coordinates to every ray.
    pub fn transform(&self, matrix: &Matrix) -> Result<Fan> {
        if matrix.ncols() != self.ambient_dim {
            return Err(Error::InvalidInput("transform has the wrong source dimension".into()));
        }
        Fan::new(
            matrix.nrows(),
            self.rays.iter().map(|r| matrix.mul_vec(r)).collect(),
            self.cones.iter().cloned(),
            self.labels.clone(),
        )
    }

    /// Sorted generators and cones re-indexed against them; labels ignored.
    pub fn canonical_form(&self) -> (Vec<Vec<Rational>>, BTreeSet<Cone>) {
        let mut order: Vec<usize> = (0..self.rays.len()).collect();
        order.sort_by(|&a, &b| self.rays[a].cmp(&self.rays[b]));
        let mut position = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let rays = order.iter().map(|&i| self.rays[i].clone()).collect();
        let cones = self
            .cones
            .iter()
            .map(|c| {
                let mut m: Cone = c.iter().map(|&r| position[r]).collect();
                m.sort_unstable();
                m
            })
            .collect();
        (rays, cones)
    }

    /// Equality as embedded fans: same ray directions, same cones.
    pub fn same_embedded(&self, other: &Fan) -> bool {
        self.ambient_dim == other.ambient_dim && self.canonical_form() == other.canonical_form()
    }

    /// Face closure, simplicial cones, and cone intersections being common faces.
    pub fn validate(&self) -> Result<()> {
        for c in &self.cones {
            for &r in c {
                if !self.cones.contains(&without(c, r)) {
                    return Err(Error::VerificationFailure(format!("face of {c:?} missing")));
                }
            }
            if crate::linalg::rank_of(&self.generators(c), self.ambient_dim) != c.len() {
                return Err(Error::VerificationFailure(format!("cone {c:?} is not simplicial")));
            }
        }
        let max = self.max_cones();
        for (i, a) in max.iter().enumerate() {
            for b in &max[i + 1..] {
                if !self.meet_is_common_face(a, b) {
                    return Err(Error::VerificationFailure(format!(
                        "cones {a:?} and {b:?} do not meet in a common face"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `cone(A) ∩ cone(B) = cone(A ∩ B)`; decided by the strict feasibility of
    /// `Σ_A λ v − Σ_B μ v = 0`, `λ, μ ≥ 0`, with positive mass off `A ∩ B`.
    fn meet_is_common_face(&self, a: &[usize], b: &[usize]) -> bool {
        let only_a: Vec<usize> = a.iter().copied().filter(|r| !b.contains(r)).collect();
        let only_b: Vec<usize> = b.iter().copied().filter(|r| !a.contains(r)).collect();
        let shared: Vec<usize> = a.iter().copied().filter(|r| b.contains(r)).collect();
        let mut columns: Vec<Vec<Rational>> = only_a.iter().map(|&r| self.rays[r].clone()).collect();
        columns.extend(only_b.iter().map(|&r| self.rays[r].iter().map(|x| -x).collect::<Vec<_>>()));
        columns.extend(shared.iter().map(|&r| self.rays[r].clone()));
        let w = Matrix::from_columns(&columns, self.ambient_dim);
        let kernel = w.kernel();
        if kernel.is_empty() {
            return true;
        }
        let signed = only_a.len() + only_b.len();
        let k = kernel.len();
        let mut system: Vec<Inequality> = (0..signed)
            .map(|j| Inequality::new(kernel.iter().map(|z| z[j].clone()).collect(), zero(), false))
            .collect();
        let total = (0..k)
            .map(|t| (0..signed).fold(zero(), |acc, j| acc + &kernel[t][j]))
            .collect();
        system.push(Inequality::new(total, zero(), true));
        !feasibility::solve(k, &system).is_feasible()
    }

    /// Coefficients of `point` in the generators of `cone`, if it lies in its span.
    pub fn coordinates_in(&self, cone: &[usize], point: &[Rational]) -> Option<Vec<Rational>> {
        if cone.is_empty() {
            return is_zero_vec(point).then(Vec::new);
        }
        Matrix::from_columns(&self.generators(cone), self.ambient_dim).solve(point)
    }

    /// Cones whose relative interior contains `point`; a valid fan gives at
    /// most one.
    pub fn carriers(&self, point: &[Rational]) -> Vec<Cone> {
        self.cones
            .iter()
            .filter(|c| {
                self.coordinates_in(c, point)
                    .is_some_and(|lam| lam.iter().all(Signed::is_positive))
            })
            .cloned()
            .collect()
    }

    /// Points sampled from every maximal cone: the generator sum and the
    /// midpoints of generator pairs.
    pub fn sample_points(&self) -> Vec<Vec<Rational>> {
        let half = rational::frac(1, 2);
        let mut out = Vec::new();
        for c in self.max_cones() {
            let sum = c.iter().fold(vec![zero(); self.ambient_dim], |acc, &r| add_vec(&acc, &self.rays[r]));
            out.push(sum);
            for (i, &p) in c.iter().enumerate() {
                for &q in &c[i + 1..] {
                    out.push(rational::scale_vec(&half, &add_vec(&self.rays[p], &self.rays[q])));
                }
            }
        }
        out
    }

    pub fn to_document(&self) -> FanDocument {
        let labels: BTreeMap<String, String> = self
            .labels
            .iter()
            .enumerate()
            .filter_map(|(i, l)| l.as_ref().map(|l| (i.to_string(), l.to_string())))
            .collect();
        FanDocument {
            ambient_dim: self.ambient_dim,
            rays: self.rays.iter().map(|r| r.iter().map(to_pq).collect()).collect(),
            max_cones: self.max_cones(),
            labels: (!labels.is_empty()).then_some(labels),
        }
    }

    pub fn from_document(doc: &FanDocument) -> Result<Fan> {
        let rays = doc
            .rays
            .iter()
            .map(|r| r.iter().map(|s| rational::parse_pq(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut labels = vec![None; rays.len()];
        if let Some(map) = &doc.labels {
            for (k, v) in map {
                let i: usize = k.parse().map_err(|_| Error::Parse(format!("bad label key {k:?}")))?;
                if i >= labels.len() {
                    return Err(Error::Parse(format!("label for missing ray {i}")));
                }
                labels[i] = Some(RayLabel::Named(v.clone()));
            }
        }
        Fan::new(doc.ambient_dim, rays, doc.max_cones.clone(), labels)
    }
}

/// JSON dump of a fan; faces are reconstructed on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDocument {
    pub ambient_dim: usize,
    pub rays: Vec<Vec<String>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
}

/// Product fan in the concatenated space; rays of `a` come first.
pub fn product(a: &Fan, b: &Fan) -> Fan {
    let dim = a.ambient_dim + b.ambient_dim;
    let mut rays = Vec::with_capacity(a.num_rays() + b.num_rays());
    for r in &a.rays {
        let mut v = r.clone();
        v.extend(std::iter::repeat_with(zero).take(b.ambient_dim));
        rays.push(v);
    }
    for r in &b.rays {
        let mut v: Vec<Rational> = std::iter::repeat_with(zero).take(a.ambient_dim).collect();
        v.extend(r.iter().cloned());
        rays.push(v);
    }
    let offset = a.num_rays();
    let mut cones = BTreeSet::new();
    for ca in &a.cones {
        for cb in &b.cones {
            let mut c = ca.clone();
            c.extend(cb.iter().map(|r| r + offset));
            cones.insert(c);
        }
    }
    let labels = a
        .labels
        .iter()
        .map(|l| l.clone().map(|l| RayLabel::Factor(0, Box::new(l))))
        .chain(b.labels.iter().map(|l| l.clone().map(|l| RayLabel::Factor(1, Box::new(l)))))
        .collect();
    Fan { ambient_dim: dim, rays, cones, labels }
}

/// A linear map between ambient spaces that sends each source cone into some
/// target cone. Built against a specific pair of fans.
#[derive(Clone, Debug)]
pub struct FanMap {
    matrix: Matrix,
    /// Per source ray: the image as a non-negative combination of the rays of
    /// its carrier cone in the target.
    images: Vec<Vec<(usize, Rational)>>,
}

impl FanMap {
    pub fn new(matrix: Matrix, source: &Fan, target: &Fan) -> Result<FanMap> {
        if matrix.ncols() != source.ambient_dim || matrix.nrows() != target.ambient_dim {
            return Err(Error::InvalidInput("fan map has the wrong shape".into()));
        }
        let target_max = target.max_cones();
        let mut images = Vec::with_capacity(source.num_rays());
        for (i, r) in source.rays.iter().enumerate() {
            let image = matrix.mul_vec(r);
            let carrier = target_max.iter().find_map(|c| {
                target
                    .coordinates_in(c, &image)
                    .filter(|lam| lam.iter().all(|x| !x.is_negative()))
                    .map(|lam| {
                        c.iter()
                            .zip(lam)
                            .filter(|(_, x)| !x.is_zero())
                            .map(|(&r, x)| (r, x))
                            .collect::<Vec<_>>()
                    })
            });
            match carrier {
                Some(c) => images.push(c),
                None => {
                    return Err(Error::InvalidInput(format!(
                        "image of source ray {i} lies in no target cone"
                    )))
                }
            }
        }
        for cone in source.max_cones() {
            let mut support: Cone = cone
                .iter()
                .flat_map(|&r| images[r].iter().map(|(t, _)| *t))
                .collect();
            support.sort_unstable();
            support.dedup();
            if !target.cones.contains(&support) {
                return Err(Error::InvalidInput(format!(
                    "source cone {cone:?} is not mapped into a target cone"
                )));
            }
        }
        Ok(FanMap { matrix, images })
    }

    pub fn identity(source: &Fan, target: &Fan) -> Result<FanMap> {
        FanMap::new(Matrix::identity(source.ambient_dim), source, target)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Image of source ray `r` as `(target ray, coefficient)` pairs.
    pub fn ray_image(&self, r: usize) -> &[(usize, Rational)] {
        &self.images[r]
    }

    pub fn num_source_rays(&self) -> usize {
        self.images.len()
    }

    /// Composition `self ∘ inner` (apply `inner` first), for maps through
    /// the same intermediate fan.
    pub fn after(&self, inner: &FanMap, source: &Fan, target: &Fan) -> Result<FanMap> {
        FanMap::new(self.matrix.mul(&inner.matrix), source, target)
    }
}

/// Map `V → V / span(generators)` dropping pivot coordinates of the reduced
/// row echelon form of the generators.
pub fn quotient_map(generators: &[Vec<Rational>], dim: usize) -> Matrix {
    if generators.is_empty() {
        return Matrix::identity(dim);
    }
    let rref = Matrix::from_rows(generators.to_vec(), dim).rref();
    let free: Vec<usize> = (0..dim).filter(|c| !rref.pivots.contains(c)).collect();
    let mut q = Matrix::zeros(free.len(), dim);
    for (out, &c) in free.iter().enumerate() {
        q[(out, c)] = rational::one();
        for (row, &p) in rref.pivots.iter().enumerate() {
            q[(out, p)] = -rref.matrix[(row, c)].clone();
        }
    }
    q
}

pub(crate) fn union(a: &[usize], b: &[usize]) -> Cone {
    let mut c: Cone = a.iter().chain(b).copied().collect();
    c.sort_unstable();
    c.dedup();
    c
}

pub(crate) fn with(c: &[usize], r: usize) -> Cone {
    union(c, &[r])
}

fn without(c: &[usize], r: usize) -> Cone {
    c.iter().copied().filter(|&x| x != r).collect()
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn insert_with_faces(cones: &mut BTreeSet<Cone>, cone: &[usize]) {
    let n = cone.len();
    for mask in 0u64..1 << n {
        let face: Cone = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| cone[i]).collect();
        cones.insert(face);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    /// Complete fan in the plane with rays ±e1, ±e2.
    fn square() -> Fan {
        Fan::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, 0]), v(&[0, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
            vec![None; 4],
        )
        .unwrap()
    }

    #[test]
    fn faces_and_validation() {
        let f = square();
        assert_eq!(f.num_cones(), 9);
        assert_eq!(f.dim(), 2);
        assert!(f.is_pure());
        f.validate().unwrap();
    }

    #[test]
    fn overlapping_cones_rejected() {
        let f = Fan::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])],
            vec![vec![0, 1], vec![0, 2]],
            vec![None; 3],
        )
        .unwrap();
        assert!(f.validate().is_err());
    }

    #[test]
    fn non_simplicial_rejected() {
        let r = Fan::new(2, vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])], vec![vec![0, 1, 2]], vec![None; 3]);
        assert!(r.is_err());
        assert!(Fan::new(1, vec![v(&[0])], vec![vec![0]], vec![None]).is_err());
    }

    #[test]
    fn generators_are_primitive() {
        let f = Fan::new(2, vec![vec![rational::frac(1, 2), int(1)]], vec![vec![0]], vec![None]).unwrap();
        assert_eq!(f.ray(0), v(&[1, 2]).as_slice());
    }

    #[test]
    fn link_in_square() {
        let f = square();
        let l = f.link(&[0]).unwrap();
        assert_eq!(l.fan.ambient_dim(), 1);
        assert_eq!(l.parent_rays, vec![1, 3]);
        assert_eq!(l.fan.ray(0), v(&[1]).as_slice());
        assert_eq!(l.fan.ray(1), v(&[-1]).as_slice());
        assert!(f.link(&[0, 2]).is_err());
        let zero_link = f.link(&[]).unwrap();
        assert!(zero_link.fan.same_embedded(&f));
    }

    #[test]
    fn subdivision_of_square() {
        let f = square();
        let s = f.star_subdivision(&[0, 1]).unwrap();
        assert_eq!(s.fan.num_rays(), 5);
        assert_eq!(s.fan.max_cones().len(), 5);
        assert_eq!(s.fan.ray(s.new_ray), v(&[1, 1]).as_slice());
        s.fan.validate().unwrap();
        assert!(f.star_subdivision(&[0]).is_err());
    }

    #[test]
    fn product_dims() {
        let line = Fan::new(1, vec![v(&[1]), v(&[-1])], vec![vec![0], vec![1]], vec![None; 2]).unwrap();
        let p = product(&line, &line);
        assert_eq!(p.num_rays(), 4);
        assert_eq!(p.max_cones().len(), 4);
        assert!(p.same_embedded(&square()));
        let q = product(&square(), &Fan::zero(0));
        assert!(q.same_embedded(&square()));
    }

    #[test]
    fn document_round_trip() {
        let f = square();
        let doc = f.to_document();
        assert_eq!(doc.rays[0], vec!["1/1".to_string(), "0/1".to_string()]);
        let back = Fan::from_document(&doc).unwrap();
        assert!(back.same_embedded(&f));
    }

    #[test]
    fn fan_map_checks_cones() {
        let f = square();
        let line = Fan::new(1, vec![v(&[1]), v(&[-1])], vec![vec![0], vec![1]], vec![None; 2]).unwrap();
        let proj = Matrix::from_rows(vec![v(&[1, 0])], 2);
        let m = FanMap::new(proj, &f, &line).unwrap();
        assert_eq!(m.ray_image(1), &[]);
        assert_eq!(m.ray_image(2), &[(1, int(1))]);
        let half = Fan::new(1, vec![v(&[1])], vec![vec![0]], vec![None]).unwrap();
        assert!(FanMap::new(Matrix::from_rows(vec![v(&[1, 0])], 2), &f, &half).is_err());
    }
}
