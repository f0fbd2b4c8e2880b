//! Poincaré duality, Hard Lefschetz and Hodge–Riemann checks on Chow rings,
//! with exact inertia computations.
//!
//! Notation: `B_ℓ(x, y) = deg(x·ℓ^{d−2i}·y)` on `CH^i`, `Q_ℓ(x) = B_ℓ(x, x)`,
//! and `P^i = ker(ℓ^{d−2i+1}: CH^i → CH^{d−i+1})`.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::chow::{ChowElement, ChowSpace, DivisorClass, Monomial};
use crate::error::{Error, Result};
use crate::fan::{Cone, RayLabel, Subdivision};
use crate::linalg::Matrix;
use crate::maps::{pullback_matrix, LinkRestriction};
use crate::rational::{int, to_pq, zero, Rational};
use crate::weights::{is_balanced, Balance, DegreeMap, MinkowskiWeight};

/// Inertia `(positive, negative, zero)` of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureTriple {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl SignatureTriple {
    /// `positive − negative`.
    pub fn index(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Diagonalizes `a` by simultaneous row and column operations.
pub fn signature(a: &Matrix) -> Result<SignatureTriple> {
    if !a.is_symmetric() {
        return Err(Error::InvalidInput("signature of a non-symmetric matrix".into()));
    }
    let n = a.nrows();
    let mut m = a.to_rows();
    let mut s = SignatureTriple { positive: 0, negative: 0, zero: 0 };
    for k in 0..n {
        if m[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(k, j);
                for row in m.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                // Row/column k += row/column j makes the pivot 2·m[k][j].
                for c in 0..n {
                    let v = m[j][c].clone();
                    m[k][c] += v;
                }
                for row in m.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            } else {
                s.zero += 1;
                continue;
            }
        }
        let pivot = m[k][k].clone();
        if pivot.is_positive() {
            s.positive += 1;
        } else {
            s.negative += 1;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            for c in k..n {
                let v = &f * &m[k][c];
                m[i][c] -= v;
            }
            for row in m.iter_mut().skip(k) {
                let v = &f * &row[k];
                row[i] -= v;
            }
        }
    }
    Ok(s)
}

/// `deg(b_a · b'_c)` over the bases of `CH^i` and `CH^{d−i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    pub degree: usize,
    pub matrix: Matrix,
}

pub fn poincare_pairing(ch: &ChowSpace, deg: &DegreeMap, i: usize) -> PairingMatrix {
    let d = ch.top_degree();
    let (left, right) = (ch.basis(i), ch.basis(d - i));
    let rows = left
        .iter()
        .map(|a| right.iter().map(|b| deg.degree(&ch.monomial(&a.times(b))).expect("top degree")).collect())
        .collect();
    PairingMatrix { degree: i, matrix: Matrix::from_rows(rows, right.len()) }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincareReport {
    pub hilbert: Vec<usize>,
    pub ranks: Vec<usize>,
    pub symmetric: bool,
    pub passed: bool,
}

pub fn check_poincare_duality(ch: &ChowSpace, deg: &DegreeMap) -> PoincareReport {
    let d = ch.top_degree();
    let hilbert = ch.hilbert();
    let symmetric = (0..=d).all(|i| hilbert[i] == hilbert[d - i]);
    let ranks: Vec<usize> = (0..=d).into_par_iter().map(|i| poincare_pairing(ch, deg, i).matrix.rank()).collect();
    let passed = symmetric && (0..=d).all(|i| ranks[i] == hilbert[i] && ranks[i] == hilbert[d - i]);
    PoincareReport { hilbert, ranks, symmetric, passed }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub dim: usize,
    /// Rank of `ℓ^{d−2i}: CH^i → CH^{d−i}`.
    pub lefschetz_rank: usize,
    pub hard_lefschetz: bool,
    /// Inertia of `Q_ℓ` on all of `CH^i`.
    pub form_signature: SignatureTriple,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primitive_dim: Option<usize>,
    /// Inertia of `(−1)^i Q_ℓ` on `P^i`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primitive_signature: Option<SignatureTriple>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge_riemann: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzReport {
    pub top_degree: usize,
    pub hilbert: Vec<usize>,
    pub degrees: Vec<DegreeReport>,
    pub hard_lefschetz: bool,
    /// `None` when only Hard Lefschetz was evaluated.
    pub hodge_riemann: Option<bool>,
    /// HL verdict agrees with non-degeneracy of `Q_ℓ` in every degree.
    pub hl_iff_nondegenerate: bool,
    /// `dim P^i = dim CH^i − dim CH^{i−1}` wherever HL holds.
    pub primitive_dims_consistent: bool,
}

impl LefschetzReport {
    pub fn passed(&self) -> bool {
        self.hard_lefschetz && self.hodge_riemann.unwrap_or(true)
    }
}

/// Matrices shared by the Lefschetz computations.
struct Forms<'a> {
    ch: &'a ChowSpace,
    deg: &'a DegreeMap,
    powers: Vec<ChowElement>,
}

impl<'a> Forms<'a> {
    fn new(ch: &'a ChowSpace, deg: &'a DegreeMap, ell: &ChowElement) -> Self {
        assert_eq!(ell.degree(), 1, "Lefschetz class must have degree one");
        let d = ch.top_degree();
        let mut powers = vec![ch.one()];
        for _ in 0..=d {
            let next = ch.multiply(powers.last().unwrap(), ell);
            powers.push(next);
        }
        Forms { ch, deg, powers }
    }

    fn d(&self) -> usize {
        self.ch.top_degree()
    }

    /// `ℓ^e` on `CH^i`, as a matrix into `CH^{i+e}` (zero beyond `d`).
    fn power_map(&self, e: usize, i: usize) -> Matrix {
        if i + e > self.d() {
            return Matrix::zeros(0, self.ch.dim(i));
        }
        self.ch.multiplication_matrix(&self.powers[e], i)
    }

    /// Gram matrix of `B_ℓ` on `CH^i`.
    fn gram(&self, i: usize) -> Matrix {
        let d = self.d();
        let pairing = poincare_pairing(self.ch, self.deg, i).matrix;
        pairing.mul(&self.power_map(d - 2 * i, i))
    }

    fn primitive_basis(&self, i: usize) -> Vec<Vec<Rational>> {
        let d = self.d();
        let map = self.power_map(d + 1 - 2 * i, i);
        if map.nrows() == 0 {
            return Matrix::identity(self.ch.dim(i)).to_rows();
        }
        map.kernel()
    }
}

fn lefschetz(ch: &ChowSpace, deg: &DegreeMap, ell: &ChowElement, with_hr: bool) -> LefschetzReport {
    let forms = Forms::new(ch, deg, ell);
    let d = ch.top_degree();
    let hilbert = ch.hilbert();
    let degrees: Vec<DegreeReport> = (0..=d / 2)
        .into_par_iter()
        .map(|i| {
            let dim = hilbert[i];
            let lefschetz_rank = forms.power_map(d - 2 * i, i).rank();
            let hard_lefschetz = hilbert[d - i] == dim && lefschetz_rank == dim;
            let gram = forms.gram(i);
            let form_signature = signature(&gram).expect("B_ℓ is symmetric on CH^i");
            let (mut primitive_dim, mut primitive_signature, mut hodge_riemann) = (None, None, None);
            if with_hr {
                let basis = forms.primitive_basis(i);
                let k = Matrix::from_columns(&basis, dim);
                let sign = if i % 2 == 0 { int(1) } else { int(-1) };
                let restricted = k.transpose().mul(&gram).mul(&k).scaled(&sign);
                let sig = signature(&restricted).expect("restricted form is symmetric");
                primitive_dim = Some(basis.len());
                hodge_riemann = Some(hard_lefschetz && sig.positive == basis.len());
                primitive_signature = Some(sig);
            }
            DegreeReport {
                degree: i,
                dim,
                lefschetz_rank,
                hard_lefschetz,
                form_signature,
                primitive_dim,
                primitive_signature,
                hodge_riemann,
            }
        })
        .collect();
    let hard_lefschetz = degrees.iter().all(|r| r.hard_lefschetz);
    let hodge_riemann = with_hr.then(|| degrees.iter().all(|r| r.hodge_riemann == Some(true)));
    let hl_iff_nondegenerate = degrees.iter().all(|r| r.hard_lefschetz == (r.form_signature.zero == 0));
    let primitive_dims_consistent = degrees.iter().all(|r| match r.primitive_dim {
        Some(p) if r.hard_lefschetz => p == r.dim - if r.degree == 0 { 0 } else { hilbert[r.degree - 1] },
        _ => true,
    });
    LefschetzReport {
        top_degree: d,
        hilbert,
        degrees,
        hard_lefschetz,
        hodge_riemann,
        hl_iff_nondegenerate,
        primitive_dims_consistent,
    }
}

pub fn hl_check(ch: &ChowSpace, deg: &DegreeMap, ell: &ChowElement) -> LefschetzReport {
    lefschetz(ch, deg, ell, false)
}

pub fn hr_check(ch: &ChowSpace, deg: &DegreeMap, ell: &ChowElement) -> LefschetzReport {
    lefschetz(ch, deg, ell, true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureLemmaDegree {
    pub degree: usize,
    pub signature: i64,
    pub formula: i64,
    /// Dimensions of `ℓ^j P^{m−j}`, `j = 0..=m`.
    pub summand_dims: Vec<usize>,
    pub decomposition_spans: bool,
    pub decomposition_orthogonal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureLemmaReport {
    pub degrees: Vec<SignatureLemmaDegree>,
    /// Signature identity and HR verdict agree, as the lemma states.
    pub consistent_with_hr: bool,
    pub passed: bool,
}

/// Compares the signature of `Q_ℓ` on `CH^m` with `Σ_{i≤m} (−1)^i dim P^i`
/// and checks the Lefschetz decomposition `CH^m = ⊕ ℓ^j P^{m−j}`.
pub fn signature_lemma_check(ch: &ChowSpace, deg: &DegreeMap, ell: &ChowElement) -> Result<SignatureLemmaReport> {
    let report = hr_check(ch, deg, ell);
    if !report.hard_lefschetz {
        return Err(Error::PreconditionFailure("signature lemma needs Hard Lefschetz".into()));
    }
    let forms = Forms::new(ch, deg, ell);
    let d = ch.top_degree();
    let primitive: Vec<Vec<Vec<Rational>>> = (0..=d / 2).map(|i| forms.primitive_basis(i)).collect();
    let mut degrees = Vec::new();
    let mut formula = 0i64;
    for m in 0..=d / 2 {
        let p = primitive[m].len() as i64;
        formula += if m % 2 == 0 { p } else { -p };
        let signature = report.degrees[m].form_signature.index();

        // Summand j: ℓ^j · P^{m−j}, as coordinate vectors in CH^m.
        let summands: Vec<Vec<Vec<Rational>>> = (0..=m)
            .map(|j| {
                let map = forms.power_map(j, m - j);
                primitive[m - j].iter().map(|v| map.mul_vec(v)).collect()
            })
            .collect();
        let summand_dims: Vec<usize> = summands.iter().map(Vec::len).collect();
        let all: Vec<Vec<Rational>> = summands.iter().flatten().cloned().collect();
        let decomposition_spans = all.len() == ch.dim(m) && Matrix::from_columns(&all, ch.dim(m)).rank() == ch.dim(m);
        let gram = forms.gram(m);
        let mut decomposition_orthogonal = true;
        for a in 0..summands.len() {
            for b in a + 1..summands.len() {
                for x in &summands[a] {
                    let gx = gram.mul_vec(x);
                    for y in &summands[b] {
                        let v = y.iter().zip(&gx).fold(zero(), |acc, (p, q)| acc + p * q);
                        decomposition_orthogonal &= v.is_zero();
                    }
                }
            }
        }
        degrees.push(SignatureLemmaDegree {
            degree: m,
            signature,
            formula,
            summand_dims,
            decomposition_spans,
            decomposition_orthogonal,
        });
    }
    let identity = degrees.iter().all(|g| g.signature == g.formula);
    let consistent_with_hr = identity == report.hodge_riemann.unwrap_or(false);
    let passed = consistent_with_hr && degrees.iter().all(|g| g.decomposition_spans && g.decomposition_orthogonal);
    Ok(SignatureLemmaReport { degrees, consistent_with_hr, passed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationSample {
    pub t: String,
    pub hard_lefschetz: bool,
    pub signatures: Vec<SignatureTriple>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    /// Always true: only `steps + 1` points of the segment are examined.
    pub sampled: bool,
    pub steps: usize,
    pub samples: Vec<DeformationSample>,
    pub all_hard_lefschetz: bool,
    pub constant_signatures: bool,
    /// First sample (as `"p/q"`) where HL fails.
    pub first_failure: Option<String>,
}

/// Samples `ℓ_t = (1 − t)ℓ₀ + tℓ₁` at `t = j/steps`.
pub fn deformation_scan(
    ch: &ChowSpace,
    deg: &DegreeMap,
    l0: &DivisorClass,
    l1: &DivisorClass,
    steps: usize,
) -> Result<DeformationReport> {
    if steps == 0 {
        return Err(Error::InvalidInput("deformation needs at least one step".into()));
    }
    let samples: Vec<DeformationSample> = (0..=steps)
        .into_par_iter()
        .map(|j| {
            let t = Rational::new(j.into(), steps.into());
            let ell = ch.divisor(&l0.interpolate(l1, &t));
            let r = hl_check(ch, deg, &ell);
            DeformationSample {
                t: to_pq(&t),
                hard_lefschetz: r.hard_lefschetz,
                signatures: r.degrees.iter().map(|g| g.form_signature).collect(),
            }
        })
        .collect();
    let all_hard_lefschetz = samples.iter().all(|s| s.hard_lefschetz);
    let constant_signatures = samples.windows(2).all(|w| w[0].signatures == w[1].signatures);
    let first_failure = samples.iter().find(|s| !s.hard_lefschetz).map(|s| s.t.clone());
    Ok(DeformationReport { sampled: true, steps, samples, all_hard_lefschetz, constant_signatures, first_failure })
}

/// Weight on a star subdivision: `ŵ_σ̂ = w_{s(σ̂)}`, divided by the scale of
/// the new generator on cones that contain it. Balancing is asserted.
pub fn induced_weight(sub: &Subdivision, w: &MinkowskiWeight) -> Result<MinkowskiWeight> {
    let tau = match sub.fan.labels()[sub.new_ray] {
        Some(RayLabel::Sum(a, b)) => vec![a, b],
        _ => return Err(Error::InvalidInput("subdivision does not record its cone".into())),
    };
    let cones = sub.fan.max_cones();
    let mut values = Vec::with_capacity(cones.len());
    for c in &cones {
        let (image, scale): (Cone, Rational) = if c.contains(&sub.new_ray) {
            let mut img: Cone = c.iter().copied().filter(|&r| r != sub.new_ray).chain(tau.iter().copied()).collect();
            img.sort_unstable();
            img.dedup();
            (img, sub.scale.clone())
        } else {
            (c.clone(), int(1))
        };
        let v = w.value(&image).ok_or_else(|| {
            Error::InternalMismatch(format!("subdivided cone {c:?} has no carrier among maximal cones"))
        })?;
        values.push(v / scale);
    }
    let hat = MinkowskiWeight::new(&sub.fan, values)?;
    if let Balance::Unbalanced(t) = is_balanced(&sub.fan, &hat)? {
        return Err(Error::VerificationFailure(format!("induced weight unbalanced at {t:?}")));
    }
    Ok(hat)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthoDecompReport {
    pub coarse_hilbert: Vec<usize>,
    pub fine_hilbert: Vec<usize>,
    pub link_hilbert: Vec<usize>,
    pub dimension_identity: bool,
    pub summands_span: bool,
    pub summands_orthogonal: bool,
    /// `c²·deg(x₀²·π*f) = −deg_link(f)` on top-degree link basis classes,
    /// `c` the scale of the new generator (`u₀ = c·(v₁+v₂)`).
    pub x0_square_identity: bool,
    /// `Q_ℓ(x₀f) = −Q_{ℓ|link}(f)/c²` on link basis classes, when a class is given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_summand_form: Option<bool>,
}

impl OrthoDecompReport {
    pub fn passed(&self) -> bool {
        self.dimension_identity
            && self.summands_span
            && self.summands_orthogonal
            && self.x0_square_identity
            && self.second_summand_form.unwrap_or(true)
    }
}

/// Checks `CH(Δ̂) = s*CH(Δ) ⊕ x₀·CH(link τ)` degree by degree.
pub fn ortho_decomp_check(
    coarse: &ChowSpace,
    deg: &DegreeMap,
    sub: &Subdivision,
    ell: Option<&DivisorClass>,
) -> Result<OrthoDecompReport> {
    let tau = match sub.fan.labels()[sub.new_ray] {
        Some(RayLabel::Sum(a, b)) => vec![a, b],
        _ => return Err(Error::InvalidInput("subdivision does not record its cone".into())),
    };
    let fan = coarse.fan();
    let fine = ChowSpace::new(&sub.fan);
    let hat_w = induced_weight(sub, &deg.weight)?;
    let fine_deg = DegreeMap::new(&fine, &hat_w)?;
    let res = LinkRestriction::new(fan, &tau)?;
    let link_w = res.restrict_weight(&deg.weight)?;
    let link_deg = DegreeMap::new(&res.chow, &link_w)?;
    let d = coarse.top_degree();
    let (hc, hf, hl) = (coarse.hilbert(), fine.hilbert(), res.chow.hilbert());
    let dimension_identity =
        hf.len() == hc.len() && (0..=d).all(|k| hf[k] == hc[k] + if k == 0 { 0 } else { *hl.get(k - 1).unwrap_or(&0) });

    let x0 = sub.new_ray;
    // x₀ · s*π*(f) for a link class f, as a class on Δ̂.
    let lift = |f: &ChowElement, x0_power: u32| -> ChowElement {
        let mut terms = Vec::new();
        for (m, c) in res.chow.terms(f) {
            let mut scale = c;
            for &(k, e) in m.exponents() {
                for _ in 0..e {
                    scale /= &res.link.scales[k];
                }
            }
            let lifted = m.relabel(|k| res.link.parent_rays[k]);
            terms.push((lifted.times(&Monomial::from_exponents([(x0, x0_power)])), scale));
        }
        fine.element(f.degree() + x0_power as usize, &terms)
    };

    let first: Vec<Matrix> = (0..=d).map(|k| pullback_matrix(&sub.map, &fine, coarse, k)).collect();
    let second: Vec<Vec<Vec<Rational>>> = (0..=d)
        .map(|k| {
            if k == 0 {
                return Vec::new();
            }
            (0..res.chow.dim(k - 1))
                .map(|b| lift(&res.chow.basis_element(k - 1, b), 1).coords().to_vec())
                .collect()
        })
        .collect();
    let summands_span = (0..=d).all(|k| {
        let mut cols: Vec<Vec<Rational>> = (0..first[k].ncols()).map(|c| first[k].column(c)).collect();
        cols.extend(second[k].iter().cloned());
        cols.len() == fine.dim(k) && Matrix::from_columns(&cols, fine.dim(k)).rank() == fine.dim(k)
    });
    let mut summands_orthogonal = true;
    for k in 0..=d {
        for a in 0..first[k].ncols() {
            let x = ChowElement::new(k, first[k].column(a));
            for y in &second[d - k] {
                let y = ChowElement::new(d - k, y.clone());
                summands_orthogonal &= fine_deg.degree(&fine.multiply(&x, &y))?.is_zero();
            }
        }
    }

    let scale2 = &sub.scale * &sub.scale;
    let top_link = res.chow.top_degree();
    let mut x0_square_identity = true;
    for b in 0..res.chow.dim(top_link) {
        let f = res.chow.basis_element(top_link, b);
        let lhs = &scale2 * fine_deg.degree(&lift(&f, 2))?;
        x0_square_identity &= lhs == -link_deg.degree(&f)?;
    }

    let second_summand_form = match ell {
        None => None,
        Some(l) => {
            let hat_l = fine.divisor(&crate::maps::pullback_divisor(&sub.map, l));
            let link_l = res.chow.divisor(&res.restrict_divisor(fan, l));
            let mut ok = true;
            for i in 1..=d / 2 {
                let e = d - 2 * i;
                let pow_hat = fine.power(&hat_l, e);
                let pow_link = res.chow.power(&link_l, e);
                for b in 0..res.chow.dim(i - 1) {
                    let f = res.chow.basis_element(i - 1, b);
                    let x = lift(&f, 1);
                    let q_hat = fine_deg.degree(&fine.multiply(&fine.multiply(&x, &pow_hat), &x))?;
                    let q_link =
                        link_deg.degree(&res.chow.multiply(&res.chow.multiply(&f, &pow_link), &f))?;
                    ok &= &scale2 * q_hat == -q_link;
                }
            }
            Some(ok)
        }
    };

    Ok(OrthoDecompReport {
        coarse_hilbert: hc,
        fine_hilbert: hf,
        link_hilbert: hl,
        dimension_identity,
        summands_span,
        summands_orthogonal,
        x0_square_identity,
        second_summand_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bergman::{bergman_fan, flat_ray};
    use crate::convexity::{submodular_class, SubmodularFunction};
    use crate::matroid::Matroid;
    use crate::weights::standard_degree;

    fn setup(m: &Matroid) -> (ChowSpace, DegreeMap, DivisorClass) {
        let ch = ChowSpace::new(&bergman_fan(m));
        let deg = standard_degree(&ch).unwrap();
        let l = submodular_class(m, &SubmodularFunction::Default).unwrap();
        (ch, deg, l)
    }

    fn sym(rows: &[&[i64]]) -> Matrix {
        let n = rows.len();
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(), n)
    }

    #[test]
    fn small_signatures() {
        let t = |p, n, z| SignatureTriple { positive: p, negative: n, zero: z };
        assert_eq!(signature(&sym(&[&[1, 0], &[0, -1]])).unwrap(), t(1, 1, 0));
        assert_eq!(signature(&sym(&[&[0, 1], &[1, 0]])).unwrap(), t(1, 1, 0));
        assert_eq!(signature(&sym(&[&[0, 0], &[0, 0]])).unwrap(), t(0, 0, 2));
        assert_eq!(signature(&sym(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]])).unwrap(), t(1, 1, 1));
        assert!(signature(&Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(2), int(0)]], 2)).is_err());
    }

    #[test]
    fn b3_lefschetz() {
        let m = Matroid::boolean(3).unwrap();
        let (ch, deg, l) = setup(&m);
        assert!(check_poincare_duality(&ch, &deg).passed);
        let r = hr_check(&ch, &deg, &ch.divisor(&l));
        assert!(r.passed());
        assert_eq!(r.degrees[1].form_signature, SignatureTriple { positive: 1, negative: 3, zero: 0 });
        assert_eq!(r.degrees[1].primitive_dim, Some(3));
        assert!(r.hl_iff_nondegenerate && r.primitive_dims_consistent);
        let lemma = signature_lemma_check(&ch, &deg, &ch.divisor(&l)).unwrap();
        assert!(lemma.passed);
        assert_eq!(lemma.degrees[1].signature, -2);
        assert_eq!(lemma.degrees[1].formula, -2);
    }

    #[test]
    fn zero_class_fails_hl() {
        let (ch, deg, _) = setup(&Matroid::uniform(2, 3).unwrap());
        let r = hl_check(&ch, &deg, &ch.zero(1));
        assert!(!r.hard_lefschetz && r.hl_iff_nondegenerate);
        assert!(signature_lemma_check(&ch, &deg, &ch.zero(1)).is_err());
    }

    #[test]
    fn zero_weight_breaks_duality() {
        let (ch, _, _) = setup(&Matroid::boolean(3).unwrap());
        let w = MinkowskiWeight::new(ch.fan(), vec![int(0); 6]).unwrap();
        let deg = DegreeMap::new(&ch, &w).unwrap();
        assert!(!check_poincare_duality(&ch, &deg).passed);
    }

    #[test]
    fn deformation_between_witnesses() {
        let m = Matroid::boolean(3).unwrap();
        let (ch, deg, l0) = setup(&m);
        let l1 = submodular_class(&m, &SubmodularFunction::Cubic).unwrap();
        let r = deformation_scan(&ch, &deg, &l0, &l1, 8).unwrap();
        assert!(r.sampled && r.all_hard_lefschetz && r.constant_signatures);
        let z = DivisorClass::zero(l0.coeffs.len());
        let r = deformation_scan(&ch, &deg, &l0, &z, 4).unwrap();
        assert_eq!(r.first_failure.as_deref(), Some("1/1"));
        assert!(!r.constant_signatures);
    }

    #[test]
    fn b3_subdivision() {
        let m = Matroid::boolean(3).unwrap();
        let (ch, deg, l) = setup(&m);
        let r1 = flat_ray(&m, m.set_of_labels(&[1]).unwrap()).unwrap();
        let r12 = flat_ray(&m, m.set_of_labels(&[1, 2]).unwrap()).unwrap();
        let sub = ch.fan().star_subdivision(&[r1, r12]).unwrap();
        let report = ortho_decomp_check(&ch, &deg, &sub, Some(&l)).unwrap();
        assert_eq!(report.fine_hilbert, vec![1, 5, 1]);
        assert!(report.passed(), "{report:?}");
    }
}
