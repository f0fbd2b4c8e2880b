//! End-to-end verification of Poincaré duality, Hard Lefschetz and
//! Hodge–Riemann for a Bergman fan, either directly or by walking the
//! deletion tower of a non-coloop.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bergman::{bergman_fan, link_of_chain_as_product, ProductLink};
use crate::check::{all_passed, Check};
use crate::chow::{ChowSpace, DivisorClass};
use crate::convexity::{classify, submodular_class, tower_convexity_check, verify_verdict, SubmodularFunction};
use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};
use crate::hodge::{
    check_poincare_duality, deformation_scan, hr_check, ortho_decomp_check, induced_weight,
    signature_lemma_check, DeformationReport, LefschetzReport,
};
use crate::maps::{pullback_matrix, LinkRestriction};
use crate::matroid::{ElementSet, Matroid};
use crate::rational::Rational;
use crate::tower::DeletionTower;
use crate::weights::{is_balanced, mw_space, positive_weight, standard_degree, DegreeMap, MinkowskiWeight};
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Direct,
    Tower,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Mode::Direct),
            "tower" => Ok(Mode::Tower),
            _ => Err(Error::InvalidInput(format!("unknown mode {s:?} (expected direct or tower)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Direct => "direct",
            Mode::Tower => "tower",
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub mode: Mode,
    /// Element label to delete in tower mode; defaults to the smallest non-coloop.
    pub element: Option<usize>,
    /// Builds the witness on `Δ_M` and, in tower mode, on `Δ_{M∖i}`.
    pub witness: SubmodularFunction,
    pub steps: usize,
    /// Linear extension of `S_i` (flats as label lists); canonical if absent.
    pub order: Option<Vec<Vec<usize>>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { mode: Mode::Direct, element: None, witness: SubmodularFunction::Default, steps: 16, order: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremReport {
    pub matroid: String,
    pub rank: usize,
    /// Mode actually run (Boolean matroids always run directly).
    pub mode: Mode,
    pub requested_mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subdivisions: Option<usize>,
    pub hilbert: Vec<usize>,
    /// HL and HR for the witness on `Δ_M`.
    pub lefschetz: LefschetzReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deformation: Option<DeformationReport>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Runs the verification pipeline on `Δ_M`.
pub fn verify_main_theorem(m: &Matroid, opts: &VerifyOptions) -> Result<MainTheoremReport> {
    if m.rank() < 1 {
        return Err(Error::InvalidInput("matroid must have rank at least 1".into()));
    }
    if opts.steps == 0 {
        return Err(Error::InvalidInput("steps must be at least 1".into()));
    }
    let element = match (opts.mode, opts.element) {
        (Mode::Direct, _) => None,
        (Mode::Tower, Some(e)) => {
            if m.is_coloop(e)? {
                return Err(Error::InvalidInput(format!("element {e} is a coloop")));
            }
            Some(e)
        }
        (Mode::Tower, None) => m.elements().iter().copied().find(|&e| !m.is_coloop(e).unwrap_or(true)),
    };

    let mut checks = Vec::new();
    let fan = bergman_fan(m);
    let ch = ChowSpace::new(&fan);
    let deg = weight_checks(&ch, &mut checks)?;
    let witness = submodular_class(m, &opts.witness)?;
    convexity_check("convexity", &fan, &witness, &mut checks)?;
    let pd = check_poincare_duality(&ch, &deg);
    checks.push(Check::new("poincare-duality", pd.passed, format!("pairing ranks {:?}", pd.ranks)));

    let (mode, subdivisions, deformation) = match element {
        None => (Mode::Direct, None, None),
        Some(e) => {
            let (k, deformation) = tower_checks(m, e, opts, &ch, &deg, &witness, &mut checks)?;
            (Mode::Tower, Some(k), Some(deformation))
        }
    };

    let ell = ch.divisor(&witness);
    let lefschetz = hr_check(&ch, &deg, &ell);
    lefschetz_checks("", &lefschetz, &mut checks);
    if lefschetz.hard_lefschetz {
        let lemma = signature_lemma_check(&ch, &deg, &ell)?;
        checks.push(Check::new("HR-signature", lemma.passed, ""));
    }
    checks.push(hr_implies_hl(&fan, &deg, &witness, lefschetz.hard_lefschetz)?);

    let passed = all_passed(&checks);
    Ok(MainTheoremReport {
        matroid: m.name().unwrap_or("").to_string(),
        rank: m.rank(),
        mode,
        requested_mode: opts.mode,
        element,
        subdivisions,
        hilbert: ch.hilbert(),
        lefschetz,
        deformation,
        checks,
        passed,
    })
}

fn weight_checks(ch: &ChowSpace, checks: &mut Vec<Check>) -> Result<DegreeMap> {
    let w = MinkowskiWeight::all_ones(ch.fan())?;
    let balanced = is_balanced(ch.fan(), &w)?;
    checks.push(Check::new("balancing", balanced.is_balanced(), format!("{balanced:?}")));
    let mw = mw_space(ch);
    checks.push(Check::new("mw-dimension", mw.is_ok(), mw.as_ref().err().map(|e| e.to_string()).unwrap_or_default()));
    standard_degree(ch)
}

fn convexity_check(name: &str, fan: &Fan, class: &DivisorClass, checks: &mut Vec<Check>) -> Result<()> {
    let verdict = classify(fan, class)?;
    let certified = verify_verdict(fan, class, &verdict)?;
    let detail = match verdict.failures.first() {
        Some(f) => format!("fails on link of cone {:?} (ray {:?})", f.cone, f.ray),
        None => String::new(),
    };
    checks.push(Check::new(name, verdict.strictly_convex && certified, detail));
    Ok(())
}

fn lefschetz_checks(prefix: &str, r: &LefschetzReport, checks: &mut Vec<Check>) {
    let failing: Vec<usize> = r.degrees.iter().filter(|g| !g.hard_lefschetz).map(|g| g.degree).collect();
    let detail = if failing.is_empty() { String::new() } else { format!("fails in degrees {failing:?}") };
    checks.push(Check::new(format!("{prefix}hard-lefschetz"), r.hard_lefschetz && r.hl_iff_nondegenerate, detail));
    let failing: Vec<usize> =
        r.degrees.iter().filter(|g| g.hodge_riemann != Some(true)).map(|g| g.degree).collect();
    let detail = if failing.is_empty() { String::new() } else { format!("fails in degrees {failing:?}") };
    checks.push(Check::new(
        format!("{prefix}hodge-riemann"),
        r.hodge_riemann == Some(true) && r.primitive_dims_consistent,
        detail,
    ));
}

/// If every ray link satisfies HR with the restricted class, `Δ` must satisfy HL.
fn hr_implies_hl(fan: &Fan, deg: &DegreeMap, class: &DivisorClass, hl: bool) -> Result<Check> {
    if fan.dim() == 0 {
        return Ok(Check::new("HR-implies-HL", true, "no rays"));
    }
    let mut all_links = true;
    for r in 0..fan.num_rays() {
        let res = LinkRestriction::new(fan, &[r])?;
        let w = res.restrict_weight(&deg.weight)?;
        let link_deg = DegreeMap::new(&res.chow, &w)?;
        let ell = res.chow.divisor(&res.restrict_divisor(fan, class));
        all_links &= hr_check(&res.chow, &link_deg, &ell).passed();
    }
    let detail = format!("ray links HR: {all_links}, HL: {hl}");
    Ok(Check::new("HR-implies-HL", !all_links || hl, detail))
}

/// For each ray of `a`, the ray of `b` with the same generator.
pub fn match_rays(a: &Fan, b: &Fan) -> Result<Vec<usize>> {
    (0..a.num_rays())
        .map(|r| {
            (0..b.num_rays())
                .find(|&s| b.ray(s) == a.ray(r))
                .ok_or_else(|| Error::InternalMismatch(format!("ray {r} has no counterpart")))
        })
        .collect()
}

/// Moves a weight between two numberings of the same embedded fan.
fn transport_weight(from: &Fan, w: &MinkowskiWeight, to: &Fan) -> Result<MinkowskiWeight> {
    let map = match_rays(from, to)?;
    let target = to.max_cones();
    let mut values = vec![Rational::zero(); target.len()];
    for (c, v) in w.cones.iter().zip(&w.values) {
        let mut img: Cone = c.iter().map(|&r| map[r]).collect();
        img.sort_unstable();
        let i = target
            .iter()
            .position(|t| *t == img)
            .ok_or_else(|| Error::InternalMismatch(format!("cone {c:?} has no counterpart")))?;
        values[i] = v.clone();
    }
    MinkowskiWeight::new(to, values)
}

fn is_positive_multiple(w: &MinkowskiWeight, ones: &MinkowskiWeight) -> bool {
    w.cones == ones.cones && w.values.first().is_none_or(|v0| v0.is_positive() && w.values.iter().all(|v| v == v0))
}

fn tower_checks(
    m: &Matroid,
    element: usize,
    opts: &VerifyOptions,
    ch_m: &ChowSpace,
    deg_m: &DegreeMap,
    witness_m: &DivisorClass,
    checks: &mut Vec<Check>,
) -> Result<(usize, DeformationReport)> {
    let tower = match &opts.order {
        None => DeletionTower::build(m, element)?,
        Some(order) => {
            let order = order.iter().map(|f| m.set_of_labels(f)).collect::<Result<Vec<_>>>()?;
            DeletionTower::build_with_order(m, element, &order)?
        }
    };
    let k = tower.len();
    checks.push(Check::new("deletion-tower", true, format!("element {element}, {k} subdivisions")));

    let base = submodular_class(&tower.deleted, &opts.witness)?;
    convexity_check("convexity: witness on Δ_{M∖i}", &tower.target, &base, checks)?;
    let tc = tower_convexity_check(&tower, &base)?;
    for c in &tc.checks {
        checks.push(Check::new(format!("convexity: {}", c.name), c.passed, c.detail.clone()));
    }

    let ch_t = ChowSpace::new(&tower.target);
    let deg_t = standard_degree(&ch_t)?;
    lefschetz_checks("Δ_{M∖i}: ", &hr_check(&ch_t, &deg_t, &ch_t.divisor(&base)), checks);

    let mut ch = ChowSpace::new(&tower.fans[k]);
    let bijective = (0..=ch.top_degree().max(ch_t.top_degree())).all(|d| {
        ch.dim(d) == ch_t.dim(d) && {
            let p = pullback_matrix(&tower.projection, &ch, &ch_t, d);
            p.rank() == ch.dim(d)
        }
    });
    checks.push(Check::new("projection-iso", bijective, format!("hilbert {:?}", ch.hilbert())));

    let mut w = positive_weight(&ch)?;
    let mut deg = DegreeMap::new(&ch, &w)?;
    lefschetz_checks(&format!("pullbackHLHR Δ_{k}: "), &hr_check(&ch, &deg, &ch.divisor(&tc.classes[k])), checks);

    for j in (1..=k).rev() {
        let tau = tower.tau_in(j, j);
        link_product_checks(m, &tower, j, &tc.classes[0], checks)?;

        let sub = tower.fans[j].star_subdivision(&tau)?;
        let ortho = ortho_decomp_check(&ch, &deg, &sub, Some(&tc.classes[j]))?;
        checks.push(Check::new(
            format!("ortho-decomp τ_{j}"),
            ortho.passed(),
            format!("{:?} = {:?} + x0·{:?}", ortho.fine_hilbert, ortho.coarse_hilbert, ortho.link_hilbert),
        ));

        let hat = induced_weight(&sub, &w)?;
        w = transport_weight(&sub.fan, &hat, &tower.fans[j - 1])?;
        ch = if j == 1 { ch_m.clone() } else { ChowSpace::new(&tower.fans[j - 1]) };
        deg = DegreeMap::new(&ch, &w)?;
        let r = hr_check(&ch, &deg, &ch.divisor(&tc.classes[j - 1]));
        lefschetz_checks(&format!("pullbackHLHR Δ_{}: ", j - 1), &r, checks);
    }
    let w = transport_weight(&tower.fans[0], &w, ch_m.fan())?;
    let ones = MinkowskiWeight::all_ones(ch_m.fan())?;
    checks.push(Check::new("induced-weight", is_positive_multiple(&w, &ones), ""));

    let ell0 = transport_divisor(&tower.fans[0], &tc.classes[0], ch_m.fan())?;
    let deformation = deformation_scan(ch_m, deg_m, &ell0, witness_m, opts.steps)?;
    let detail = match &deformation.first_failure {
        Some(t) => format!("HL fails at t = {t}"),
        None => format!("{} samples", deformation.samples.len()),
    };
    checks.push(Check::new(
        "HL-implies-HR",
        deformation.all_hard_lefschetz && deformation.constant_signatures,
        detail,
    ));
    Ok((k, deformation))
}

fn transport_divisor(from: &Fan, class: &DivisorClass, to: &Fan) -> Result<DivisorClass> {
    let map = match_rays(from, to)?;
    let mut coeffs = vec![Rational::zero(); to.num_rays()];
    for (r, c) in class.coeffs.iter().enumerate() {
        coeffs[map[r]] = c.clone();
    }
    Ok(DivisorClass::new(coeffs))
}

/// `link(Δ_m, τ_j)` is the same fan for every `m`, equals the product of the
/// interval fans of `{i} < F_j ∪ i`, and inherits HL/HR from the factors.
fn link_product_checks(
    m: &Matroid,
    tower: &DeletionTower,
    j: usize,
    ell0: &DivisorClass,
    checks: &mut Vec<Check>,
) -> Result<()> {
    let p = m.position(tower.element).expect("tower element");
    let chain = [ElementSet::EMPTY.with(p), tower.flat_pairs[j - 1].with(p)];
    let pl = link_of_chain_as_product(m, &chain)?;
    let links: Vec<Fan> =
        (0..tower.fans.len()).map(|mm| tower.fans[mm].link(&tower.tau_in(mm, j)).map(|l| l.fan)).collect::<Result<_>>()?;
    let same = links.iter().all(|l| l.same_embedded(&pl.link.fan));
    checks.push(Check::new(format!("subdivision-link-product τ_{j}"), same, ""));

    let fan0 = &tower.fans[0];
    let res = LinkRestriction::new(fan0, &tower.tau_in(0, j))?;
    let restricted = res.restrict_divisor(fan0, ell0);
    let on_link = transport_divisor(&res.link.fan, &restricted, &pl.link.fan)?;
    let ok = product_hl_hr(&pl, &on_link)?;
    checks.push(Check::new(format!("product-HL-HR τ_{j}"), ok, ""));
    Ok(())
}

/// Splits the class along the product and checks each factor, the tensor
/// Hilbert identity, and HL/HR on the product.
fn product_hl_hr(pl: &ProductLink, on_link: &DivisorClass) -> Result<bool> {
    // Product rays map to positive multiples of link rays.
    let mut coeffs = Vec::with_capacity(pl.product.num_rays());
    for r in 0..pl.product.num_rays() {
        let u = pl.to_link.mul_vec(pl.product.ray(r));
        let (k, c) = (0..pl.link.fan.num_rays())
            .find_map(|k| scale_of(&u, pl.link.fan.ray(k)).map(|c| (k, c)))
            .ok_or_else(|| Error::InternalMismatch("product ray is not a link ray".into()))?;
        coeffs.push(c * &on_link.coeffs[k]);
    }
    let mut ok = true;
    let mut offset = 0;
    let mut acc: Option<(Fan, ChowSpace)> = None;
    for f in &pl.factor_fans {
        let ch = ChowSpace::new(f);
        let class = DivisorClass::new(coeffs[offset..offset + f.num_rays()].to_vec());
        offset += f.num_rays();
        let deg = standard_degree(&ch)?;
        ok &= hr_check(&ch, &deg, &ch.divisor(&class)).passed();
        acc = Some(match acc {
            None => (f.clone(), ch),
            Some((pf, pch)) => {
                let prod = crate::fan::product(&pf, f);
                let prod_ch = ChowSpace::new(&prod);
                ok &= crate::maps::product_chow_iso_check(&pch, &ch, &prod_ch);
                (prod, prod_ch)
            }
        });
    }
    let (_, prod_ch) = acc.expect("at least one factor");
    let deg = standard_degree(&prod_ch)?;
    ok &= hr_check(&prod_ch, &deg, &prod_ch.divisor(&DivisorClass::new(coeffs))).passed();
    Ok(ok)
}

/// `c > 0` with `u = c·v`, if any.
fn scale_of(u: &[Rational], v: &[Rational]) -> Option<Rational> {
    let i = v.iter().position(|x| !x.is_zero())?;
    let c = &u[i] / &v[i];
    (c.is_positive() && u.iter().zip(v).all(|(a, b)| *a == &c * b)).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(m: &Matroid, mode: Mode) -> MainTheoremReport {
        let opts = VerifyOptions { mode, steps: 4, ..VerifyOptions::default() };
        verify_main_theorem(m, &opts).unwrap()
    }

    fn failing(r: &MainTheoremReport) -> Vec<&str> {
        r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    #[test]
    fn u23_direct() {
        let r = run(&Matroid::uniform(2, 3).unwrap(), Mode::Direct);
        assert!(r.passed, "{:?}", failing(&r));
        assert_eq!(r.hilbert, vec![1, 1]);
    }

    #[test]
    fn u34_tower() {
        let r = run(&Matroid::uniform(3, 4).unwrap(), Mode::Tower);
        assert!(r.passed, "{:?}", failing(&r));
        assert_eq!(r.mode, Mode::Tower);
        assert_eq!(r.element, Some(1));
        assert_eq!(r.subdivisions, Some(3));
        assert!(r.checks.iter().any(|c| c.name == "ortho-decomp τ_3"));
    }

    #[test]
    fn u34_tower_last_element() {
        let opts = VerifyOptions { mode: Mode::Tower, element: Some(4), steps: 2, ..VerifyOptions::default() };
        let r = verify_main_theorem(&Matroid::uniform(3, 4).unwrap(), &opts).unwrap();
        assert!(r.passed, "{:?}", failing(&r));
        assert_eq!(r.subdivisions, Some(3));
    }

    #[test]
    fn boolean_routes_to_direct() {
        let r = run(&Matroid::boolean(3).unwrap(), Mode::Tower);
        assert_eq!(r.mode, Mode::Direct);
        assert!(r.passed);
    }

    #[test]
    fn coloop_element_rejected() {
        let opts = VerifyOptions { mode: Mode::Tower, element: Some(1), ..VerifyOptions::default() };
        assert!(verify_main_theorem(&Matroid::boolean(2).unwrap(), &opts).is_err());
    }

    #[test]
    fn trivial_tower() {
        let r = run(&Matroid::uniform(2, 3).unwrap(), Mode::Tower);
        assert!(r.passed, "{:?}", failing(&r));
        assert_eq!(r.subdivisions, Some(0));
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("tower".parse::<Mode>().unwrap(), Mode::Tower);
        assert!("both".parse::<Mode>().is_err());
        assert_eq!(Mode::Direct.to_string(), "direct");
    }
}
