//! Chow rings of simplicial fans: the Stanley–Reisner ring modulo the ideal
//! generated by global linear functions, computed degree by degree.
//!
//! Degree `k` is the span of monomials of degree `k` supported on cones, modulo
//! the products `θ_j · m` for `m` of degree `k − 1`. The monomials are sorted in
//! decreasing graded-lex order and the relation rows are brought to reduced
//! echelon form; pivots are leading monomials, and the remaining (standard)
//! monomials form the basis. Every monomial's normal form is stored.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::fan::{Cone, Fan};
use crate::linalg::Matrix;
use crate::rational::{zero, Rational};

/// A monomial `Π x_r^{e_r}` as sorted `(ray, exponent)` pairs, exponents > 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn ray(r: usize) -> Self {
        Monomial(vec![(r, 1)])
    }

    /// Square-free monomial of a cone.
    pub fn of_cone(cone: &[usize]) -> Self {
        let mut v: Vec<(usize, u32)> = cone.iter().map(|&r| (r, 1)).collect();
        v.sort_unstable();
        v.dedup_by_key(|p| p.0);
        Monomial(v)
    }

    pub fn from_exponents(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut m = Monomial::one();
        for (r, e) in pairs {
            for _ in 0..e {
                m = m.times_ray(r);
            }
        }
        m
    }

    pub fn exponents(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn exponent(&self, r: usize) -> u32 {
        self.0.iter().find(|p| p.0 == r).map_or(0, |p| p.1)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|p| p.1 as usize).sum()
    }

    pub fn support(&self) -> Cone {
        self.0.iter().map(|p| p.0).collect()
    }

    pub fn times_ray(&self, r: usize) -> Self {
        let mut v = self.0.clone();
        match v.binary_search_by_key(&r, |p| p.0) {
            Ok(i) => v[i].1 += 1,
            Err(i) => v.insert(i, (r, 1)),
        }
        Monomial(v)
    }

    pub fn times(&self, other: &Monomial) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    out.push(*a);
                    i += 1;
                }
                (Some(a), None) => {
                    out.push(*a);
                    i += 1;
                }
                (_, Some(b)) => {
                    out.push(*b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// Renames rays through `map` (used to move monomials between fans).
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Self {
        Monomial::from_exponents(self.0.iter().map(|&(r, e)| (map(r), e)))
    }
}

/// Graded-lex order: higher degree first; within a degree, compare exponents
/// ray by ray from the smallest index, a larger exponent being larger.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                if a.0 != b.0 {
                    // The monomial using the smaller ray has a positive exponent
                    // where the other has zero.
                    return b.0.cmp(&a.0);
                }
                if a.1 != b.1 {
                    return a.1.cmp(&b.1);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|(r, e)| format!("{r}^{e}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A homogeneous class, as coordinates in the standard-monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowElement {
    degree: usize,
    coords: Vec<Rational>,
}

impl ChowElement {
    pub fn new(degree: usize, coords: Vec<Rational>) -> Self {
        ChowElement { degree, coords }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &ChowElement) -> ChowElement {
        assert_eq!(self.degree, other.degree, "adding classes of different degrees");
        ChowElement::new(self.degree, self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ChowElement) -> ChowElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> ChowElement {
        ChowElement::new(self.degree, self.coords.iter().map(|a| a * c).collect())
    }
}

/// A degree-one class given by a representative `Σ a_r x_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    pub coeffs: Vec<Rational>,
}

impl DivisorClass {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        DivisorClass { coeffs }
    }

    pub fn zero(num_rays: usize) -> Self {
        DivisorClass { coeffs: vec![zero(); num_rays] }
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Rational) -> DivisorClass {
        DivisorClass::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `(1 − t)·self + t·other`.
    pub fn interpolate(&self, other: &DivisorClass, t: &Rational) -> DivisorClass {
        self.scale(&(Rational::one() - t)).add(&other.scale(t))
    }
}

/// A global linear function `θ` and its expansion `Σ θ(v_r) x_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRelation {
    pub functional: Vec<Rational>,
    pub expansion: DivisorClass,
}

/// One relation per coordinate functional of the ambient space.
pub fn linear_relations(fan: &Fan) -> Vec<LinearRelation> {
    (0..fan.ambient_dim())
        .map(|j| {
            let mut functional = vec![zero(); fan.ambient_dim()];
            functional[j] = Rational::one();
            let expansion = DivisorClass::new(fan.rays().iter().map(|v| v[j].clone()).collect());
            LinearRelation { functional, expansion }
        })
        .collect()
}

/// Divisor of the linear function `φ`: `Σ φ(v_r) x_r` (zero in the Chow ring).
pub fn linear_function_divisor(fan: &Fan, functional: &[Rational]) -> DivisorClass {
    DivisorClass::new(fan.rays().iter().map(|v| crate::rational::dot(functional, v)).collect())
}

type SparseRow = Vec<(usize, Rational)>;

#[derive(Clone, Debug)]
struct Graded {
    /// Monomials of this degree supported on cones, in decreasing order.
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Positions in `monomials` of the standard monomials.
    basis: Vec<usize>,
    /// Normal form of each monomial over `basis`.
    normal_forms: Vec<SparseRow>,
    relation_rank: usize,
}

/// `CH(Δ)` as an explicit graded vector space with multiplication.
#[derive(Clone, Debug)]
pub struct ChowSpace {
    fan: Fan,
    relations: Vec<LinearRelation>,
    graded: Vec<Graded>,
}

impl ChowSpace {
    pub fn new(fan: &Fan) -> Self {
        let top = fan.dim();
        let monomials: Vec<Vec<Monomial>> = (0..=top).map(|k| monomials_of_degree(fan, k)).collect();
        let relations = linear_relations(fan);
        let graded = (0..=top)
            .into_par_iter()
            .map(|k| {
                let prev = if k == 0 { &[][..] } else { &monomials[k - 1][..] };
                build_degree(&relations, prev, monomials[k].clone())
            })
            .collect();
        ChowSpace { fan: fan.clone(), relations, graded }
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn relations(&self) -> &[LinearRelation] {
        &self.relations
    }

    /// `d`, the dimension of the fan.
    pub fn top_degree(&self) -> usize {
        self.graded.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.graded.get(k).map_or(0, |g| g.basis.len())
    }

    pub fn hilbert(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|k| self.dim(k)).collect()
    }

    /// Rank of the relation span in degree `k`.
    pub fn relation_rank(&self, k: usize) -> usize {
        self.graded.get(k).map_or(0, |g| g.relation_rank)
    }

    pub fn monomials(&self, k: usize) -> &[Monomial] {
        self.graded.get(k).map_or(&[], |g| &g.monomials)
    }

    pub fn basis(&self, k: usize) -> Vec<Monomial> {
        self.graded.get(k).map_or_else(Vec::new, |g| g.basis.iter().map(|&i| g.monomials[i].clone()).collect())
    }

    pub fn zero(&self, k: usize) -> ChowElement {
        ChowElement::new(k, vec![zero(); self.dim(k)])
    }

    pub fn one(&self) -> ChowElement {
        self.monomial(&Monomial::one())
    }

    /// The `b`-th basis vector of degree `k`.
    pub fn basis_element(&self, k: usize, b: usize) -> ChowElement {
        let mut e = self.zero(k);
        e.coords[b] = Rational::one();
        e
    }

    /// Normal form of a monomial; zero if its support is not a cone or its
    /// degree exceeds `d`.
    pub fn monomial(&self, m: &Monomial) -> ChowElement {
        let k = m.degree();
        let mut e = self.zero(k);
        if let Some(g) = self.graded.get(k) {
            if let Some(&i) = g.index.get(m) {
                for (b, c) in &g.normal_forms[i] {
                    e.coords[*b] = c.clone();
                }
            }
        }
        e
    }

    pub fn element(&self, k: usize, terms: &[(Monomial, Rational)]) -> ChowElement {
        let mut e = self.zero(k);
        for (m, c) in terms {
            assert_eq!(m.degree(), k, "term of the wrong degree");
            if let Some(g) = self.graded.get(k) {
                if let Some(&i) = g.index.get(m) {
                    for (b, v) in &g.normal_forms[i] {
                        e.coords[*b] += c * v;
                    }
                }
            }
        }
        e
    }

    pub fn divisor(&self, class: &DivisorClass) -> ChowElement {
        assert_eq!(class.coeffs.len(), self.fan.num_rays(), "divisor has the wrong number of rays");
        let terms: Vec<_> = class
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(r, c)| (Monomial::ray(r), c.clone()))
            .collect();
        self.element(1, &terms)
    }

    /// Expansion of a class over the standard monomials.
    pub fn terms(&self, x: &ChowElement) -> Vec<(Monomial, Rational)> {
        let basis = self.basis(x.degree);
        basis.into_iter().zip(x.coords.iter().cloned()).filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn multiply(&self, a: &ChowElement, b: &ChowElement) -> ChowElement {
        let k = a.degree + b.degree;
        let mut out = self.zero(k);
        if k > self.top_degree() {
            return out;
        }
        let (ba, bb) = (self.basis(a.degree), self.basis(b.degree));
        let g = &self.graded[k];
        for (ma, ca) in ba.iter().zip(&a.coords) {
            if ca.is_zero() {
                continue;
            }
            for (mb, cb) in bb.iter().zip(&b.coords) {
                if cb.is_zero() {
                    continue;
                }
                if let Some(&i) = g.index.get(&ma.times(mb)) {
                    let c = ca * cb;
                    for (t, v) in &g.normal_forms[i] {
                        out.coords[*t] += &c * v;
                    }
                }
            }
        }
        out
    }

    pub fn power(&self, a: &ChowElement, n: usize) -> ChowElement {
        (0..n).fold(self.one(), |acc, _| self.multiply(&acc, a))
    }

    /// Matrix of `x ↦ a·x` from degree `k` to degree `k + deg a`, in the
    /// standard bases (columns are images of basis vectors).
    pub fn multiplication_matrix(&self, a: &ChowElement, k: usize) -> Matrix {
        let target = k + a.degree;
        let cols: Vec<Vec<Rational>> =
            (0..self.dim(k)).map(|b| self.multiply(a, &self.basis_element(k, b)).coords).collect();
        Matrix::from_columns(&cols, self.dim(target))
    }

    /// Reduces an arbitrary combination of degree-`k` monomials; used to check
    /// that normal forms are a well-defined linear projection.
    pub fn reduce_terms(&self, k: usize, terms: &[(Monomial, Rational)]) -> Vec<(Monomial, Rational)> {
        self.terms(&self.element(k, terms))
    }
}

/// Monomials of degree `k` whose support is a cone, in decreasing order.
pub fn monomials_of_degree(fan: &Fan, k: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    if k == 0 {
        out.push(Monomial::one());
        return out;
    }
    for cone in fan.cones() {
        let s = cone.len();
        if s == 0 || s > k {
            continue;
        }
        // Exponents ≥ 1 on each ray of the cone, summing to k.
        let mut exps = vec![1u32; s];
        exps[s - 1] += (k - s) as u32;
        loop {
            out.push(Monomial(cone.iter().copied().zip(exps.iter().copied()).collect()));
            if !next_composition(&mut exps) {
                break;
            }
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out.dedup();
    out
}

/// Advances `exps` (all ≥ 1) to the next composition with the same sum, or
/// returns false after the last one.
fn next_composition(exps: &mut [u32]) -> bool {
    let s = exps.len();
    // Rightmost position that can take one unit from the tail.
    for j in (0..s.saturating_sub(1)).rev() {
        let rest: u32 = exps[j + 1..].iter().sum();
        let slots = (s - j - 1) as u32;
        if rest > slots {
            exps[j] += 1;
            for e in &mut exps[j + 1..] {
                *e = 1;
            }
            exps[s - 1] = rest - 1 - (slots - 1);
            return true;
        }
    }
    false
}

fn build_degree(relations: &[LinearRelation], prev: &[Monomial], monomials: Vec<Monomial>) -> Graded {
    let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let ncols = monomials.len();
    let mut echelon = Echelon::new(ncols);
    for m in prev {
        for theta in relations {
            let mut row: SparseRow = Vec::new();
            for (r, c) in theta.expansion.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let product = m.times_ray(r);
                if let Some(&i) = index.get(&product) {
                    row.push((i, c.clone()));
                }
            }
            if !row.is_empty() {
                row.sort_by_key(|p| p.0);
                echelon.insert(row);
            }
        }
    }
    let relation_rank = echelon.rows.len();
    let basis: Vec<usize> = (0..ncols).filter(|&c| echelon.pivot_of[c].is_none()).collect();
    let mut basis_pos = vec![usize::MAX; ncols];
    for (b, &c) in basis.iter().enumerate() {
        basis_pos[c] = b;
    }
    let normal_forms = (0..ncols)
        .map(|c| match echelon.pivot_of[c] {
            None => vec![(basis_pos[c], Rational::one())],
            Some(r) => echelon.rows[r]
                .iter()
                .filter(|(t, _)| *t != c)
                .map(|(t, v)| (basis_pos[*t], -v.clone()))
                .collect(),
        })
        .collect();
    Graded { monomials, index, basis, normal_forms, relation_rank }
}

/// Incrementally maintained reduced row echelon form of sparse rows. Each
/// stored row has leading coefficient 1 at its pivot and no entries in other
/// pivot columns.
struct Echelon {
    rows: Vec<SparseRow>,
    pivot_of: Vec<Option<usize>>,
    scratch: Vec<Rational>,
    touched: Vec<bool>,
}

impl Echelon {
    fn new(ncols: usize) -> Self {
        Echelon { rows: Vec::new(), pivot_of: vec![None; ncols], scratch: vec![zero(); ncols], touched: vec![false; ncols] }
    }

    fn insert(&mut self, row: SparseRow) {
        let mut cols: Vec<usize> = Vec::with_capacity(row.len());
        for (c, v) in &row {
            self.scratch[*c] += v;
            if !self.touched[*c] {
                self.touched[*c] = true;
                cols.push(*c);
            }
        }
        for (c, _) in &row {
            let Some(r) = self.pivot_of[*c] else { continue };
            let f = std::mem::take(&mut self.scratch[*c]);
            if f.is_zero() {
                continue;
            }
            for (t, v) in &self.rows[r] {
                if *t == *c {
                    continue;
                }
                self.scratch[*t] -= &f * v;
                if !self.touched[*t] {
                    self.touched[*t] = true;
                    cols.push(*t);
                }
            }
        }
        cols.sort_unstable();
        let mut reduced: SparseRow = Vec::new();
        for c in cols {
            self.touched[c] = false;
            let v = std::mem::take(&mut self.scratch[c]);
            if !v.is_zero() {
                reduced.push((c, v));
            }
        }
        if reduced.is_empty() {
            return;
        }
        let pivot = reduced[0].0;
        let inv = reduced[0].1.recip();
        for (_, v) in reduced.iter_mut() {
            *v *= &inv;
        }
        for stored in self.rows.iter_mut() {
            let Ok(pos) = stored.binary_search_by_key(&pivot, |p| p.0) else { continue };
            let f = stored[pos].1.clone();
            *stored = axpy(stored, &-f, &reduced);
        }
        self.pivot_of[pivot] = Some(self.rows.len());
        self.rows.push(reduced);
    }
}

/// `a + f·b` for sorted sparse rows.
fn axpy(a: &SparseRow, f: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, f * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + f * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bergman::{bergman_fan, flat_ray};
    use crate::matroid::Matroid;
    use crate::rational::int;

    #[test]
    fn graded_lex_order() {
        let a = Monomial::from_exponents([(0, 2)]);
        let b = Monomial::from_exponents([(0, 1), (1, 1)]);
        let c = Monomial::from_exponents([(1, 2)]);
        let d = Monomial::ray(0);
        assert!(a > b && b > c && c > d);
        assert_eq!(b.to_string(), "0^1*1^1");
        assert_eq!(Monomial::one().to_string(), "1");
    }

    #[test]
    fn compositions_enumerated() {
        let mut e = vec![1, 1, 3];
        let mut seen = vec![e.clone()];
        while next_composition(&mut e) {
            seen.push(e.clone());
        }
        assert_eq!(seen.len(), 6);
        assert!(seen.iter().all(|v| v.iter().sum::<u32>() == 5));
    }

    #[test]
    fn monomial_counts() {
        let fan = bergman_fan(&Matroid::boolean(3).unwrap());
        // degree 2: x_r^2 for 6 rays plus 6 two-cones
        assert_eq!(monomials_of_degree(&fan, 2).len(), 12);
    }

    #[test]
    fn u23_relations() {
        let fan = bergman_fan(&Matroid::uniform(2, 3).unwrap());
        let rel = linear_relations(&fan);
        assert_eq!(rel.len(), 2);
        assert_eq!(rel[0].expansion.coeffs, vec![int(1), int(0), int(-1)]);
        assert_eq!(rel[1].expansion.coeffs, vec![int(0), int(1), int(-1)]);
        assert!(linear_relations(&Fan::zero(0)).is_empty());
    }

    #[test]
    fn hilbert_functions() {
        let h = |m: Matroid| ChowSpace::new(&bergman_fan(&m)).hilbert();
        assert_eq!(h(Matroid::boolean(3).unwrap()), vec![1, 4, 1]);
        assert_eq!(h(Matroid::uniform(2, 3).unwrap()), vec![1, 1]);
        assert_eq!(h(Matroid::boolean(4).unwrap()), vec![1, 11, 11, 1]);
        assert_eq!(ChowSpace::new(&Fan::zero(0)).hilbert(), vec![1]);
    }

    #[test]
    fn stanley_reisner_vanishing() {
        let m = Matroid::uniform(2, 3).unwrap();
        let ch = ChowSpace::new(&bergman_fan(&m));
        let x = |r| ch.monomial(&Monomial::ray(r));
        assert!(ch.multiply(&x(0), &x(1)).is_zero());
        assert_eq!(ch.multiply(&x(0), &ch.one()), x(0));
    }

    #[test]
    fn relations_vanish_and_forms_are_idempotent() {
        let m = Matroid::boolean(3).unwrap();
        let fan = bergman_fan(&m);
        let ch = ChowSpace::new(&fan);
        for rel in ch.relations() {
            let theta = ch.divisor(&rel.expansion);
            assert!(theta.is_zero());
            for b in 0..ch.dim(1) {
                assert!(ch.multiply(&theta, &ch.basis_element(1, b)).is_zero());
            }
        }
        for k in 0..=2 {
            for m in ch.monomials(k) {
                let once = ch.reduce_terms(k, &[(m.clone(), int(3))]);
                assert_eq!(ch.reduce_terms(k, &once), once);
            }
        }
        let r1 = flat_ray(&m, m.set_of_labels(&[1]).unwrap()).unwrap();
        let r12 = flat_ray(&m, m.set_of_labels(&[1, 2]).unwrap()).unwrap();
        assert!(!ch.monomial(&Monomial::of_cone(&[r1, r12])).is_zero());
    }
}
