//! Positivity and convexity of degree-one classes.
//!
//! A class `ℓ = Σ a_r x_r` is positive when some representative `ℓ + m`
//! (with `m` a global linear function) takes positive values on every ray
//! generator, i.e. when the system `a_r + m(v_r) > 0` has a solution `m`.
//! Strict convexity asks for positivity of the restriction to every link,
//! the zero cone included; convexity uses the non-strict system.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bergman::bergman_fan;
use crate::check::Check;
use crate::chow::DivisorClass;
use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};
use crate::feasibility::{is_farkas_certificate, solve, Feasibility, Inequality};
use crate::maps::{pullback_divisor, restrict_divisor_to_link};
use crate::matroid::{ElementSet, Matroid};
use crate::rational::{int, parse_pq, Rational};
use crate::tower::DeletionTower;

/// Outcome of one positivity test on one fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Positivity {
    pub strict: bool,
    /// A functional `m` making every value positive, or ray multipliers
    /// proving that none exists.
    pub outcome: Feasibility,
}

impl Positivity {
    pub fn holds(&self) -> bool {
        self.outcome.is_feasible()
    }

    pub fn certificate(&self) -> Option<&[Rational]> {
        match &self.outcome {
            Feasibility::Feasible(m) => Some(m),
            Feasibility::Infeasible(_) => None,
        }
    }

    /// First ray carrying weight in the infeasibility certificate.
    pub fn failing_ray(&self) -> Option<usize> {
        match &self.outcome {
            Feasibility::Feasible(_) => None,
            Feasibility::Infeasible(y) => y.iter().position(|c| !c.is_zero()),
        }
    }
}

fn system(fan: &Fan, class: &DivisorClass, strict: bool) -> Vec<Inequality> {
    fan.rays()
        .iter()
        .zip(&class.coeffs)
        .map(|(v, a)| Inequality::new(v.clone(), a.clone(), strict))
        .collect()
}

fn positivity(fan: &Fan, class: &DivisorClass, strict: bool) -> Positivity {
    assert_eq!(class.coeffs.len(), fan.num_rays(), "class has the wrong number of rays");
    Positivity { strict, outcome: solve(fan.ambient_dim(), &system(fan, class, strict)) }
}

pub fn is_positive(fan: &Fan, class: &DivisorClass) -> Positivity {
    positivity(fan, class, true)
}

pub fn is_nonnegative(fan: &Fan, class: &DivisorClass) -> Positivity {
    positivity(fan, class, false)
}

/// Re-checks a positivity outcome exactly against the inequalities.
pub fn verify_positivity(fan: &Fan, class: &DivisorClass, p: &Positivity) -> bool {
    let sys = system(fan, class, p.strict);
    match &p.outcome {
        Feasibility::Feasible(m) => sys.iter().all(|i| i.holds_at(m)),
        Feasibility::Infeasible(y) => is_farkas_certificate(&sys, y),
    }
}

/// Results on the link of one cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeCheck {
    pub cone: Cone,
    /// Rays of the ambient fan underlying the link rays.
    pub link_rays: Vec<usize>,
    pub restricted: DivisorClass,
    pub strict: Positivity,
    pub weak: Positivity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub cone: Cone,
    /// Ray of the ambient fan (not of the link).
    pub ray: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexityVerdict {
    pub positive: bool,
    pub nonnegative: bool,
    pub strictly_convex: bool,
    pub convex: bool,
    /// Cones whose link restriction is not positive.
    pub failures: Vec<Failure>,
    /// Cones whose link restriction is not non-negative.
    pub convex_failures: Vec<Failure>,
    /// Functional making the global representative positive (or non-negative).
    pub certificate: Option<Vec<Rational>>,
    pub cones: Vec<ConeCheck>,
}

/// Runs both the strict and the non-strict test on the link of every cone.
pub fn classify(fan: &Fan, class: &DivisorClass) -> Result<ConvexityVerdict> {
    let cones: Vec<Cone> = fan.cones().cloned().collect();
    let checks: Vec<ConeCheck> = cones
        .par_iter()
        .map(|tau| {
            let link = fan.link(tau)?;
            let restricted = restrict_divisor_to_link(fan, tau, &link, class);
            let strict = is_positive(&link.fan, &restricted);
            let weak = if strict.holds() {
                Positivity { strict: false, outcome: strict.outcome.clone() }
            } else {
                is_nonnegative(&link.fan, &restricted)
            };
            Ok(ConeCheck { cone: tau.clone(), link_rays: link.parent_rays, restricted, strict, weak })
        })
        .collect::<Result<_>>()?;

    let mut failures = Vec::new();
    let mut convex_failures = Vec::new();
    for c in &checks {
        let link_rays = &c.link_rays;
        if !c.strict.holds() {
            failures.push(Failure { cone: c.cone.clone(), ray: c.strict.failing_ray().map(|k| link_rays[k]) });
        }
        if !c.weak.holds() {
            convex_failures.push(Failure { cone: c.cone.clone(), ray: c.weak.failing_ray().map(|k| link_rays[k]) });
        }
    }
    let zero_cone = &checks[0];
    debug_assert!(zero_cone.cone.is_empty());
    let certificate = zero_cone.weak.certificate().map(<[Rational]>::to_vec);
    Ok(ConvexityVerdict {
        positive: zero_cone.strict.holds(),
        nonnegative: zero_cone.weak.holds(),
        strictly_convex: failures.is_empty(),
        convex: convex_failures.is_empty(),
        failures,
        convex_failures,
        certificate,
        cones: checks,
    })
}

pub fn is_strictly_convex(fan: &Fan, class: &DivisorClass) -> Result<bool> {
    Ok(classify(fan, class)?.strictly_convex)
}

pub fn is_convex(fan: &Fan, class: &DivisorClass) -> Result<bool> {
    Ok(classify(fan, class)?.convex)
}

/// Re-derives every link restriction and re-checks every stored certificate.
pub fn verify_verdict(fan: &Fan, class: &DivisorClass, verdict: &ConvexityVerdict) -> Result<bool> {
    for c in &verdict.cones {
        let link = fan.link(&c.cone)?;
        if restrict_divisor_to_link(fan, &c.cone, &link, class) != c.restricted {
            return Ok(false);
        }
        if !verify_positivity(&link.fan, &c.restricted, &c.strict)
            || !verify_positivity(&link.fan, &c.restricted, &c.weak)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Values on flats used to build witness classes `Σ f(F) x_F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubmodularFunction {
    /// `f(S) = |S|·(|E| − |S|)`.
    Default,
    /// `f(S) = |S|·(|E|² − |S|²)`, another strictly concave function of `|S|`.
    Cubic,
    /// Explicit values keyed by sorted element labels.
    Table(BTreeMap<Vec<usize>, Rational>),
}

impl SubmodularFunction {
    pub fn value(&self, m: &Matroid, set: ElementSet) -> Result<Rational> {
        let (s, n) = (set.len() as i64, m.ground_size() as i64);
        match self {
            SubmodularFunction::Default => Ok(int(s * (n - s))),
            SubmodularFunction::Cubic => Ok(int(s * (n * n - s * s))),
            SubmodularFunction::Table(t) => {
                let labels = m.labels_of(set);
                t.get(&labels)
                    .cloned()
                    .ok_or_else(|| Error::InvalidInput(format!("witness has no value for flat {labels:?}")))
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: WitnessDocument = serde_json::from_str(text)?;
        let mut table = BTreeMap::new();
        for entry in doc.values {
            let mut flat = entry.flat;
            flat.sort_unstable();
            if table.insert(flat.clone(), parse_pq(&entry.value)?).is_some() {
                return Err(Error::InvalidInput(format!("witness lists flat {flat:?} twice")));
            }
        }
        Ok(SubmodularFunction::Table(table))
    }
}

/// `{"values": [{"flat": [1, 2], "value": "3/1"}, ...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDocument {
    pub values: Vec<WitnessEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessEntry {
    pub flat: Vec<usize>,
    pub value: String,
}

/// `Σ_F f(F)·x_F` over the nontrivial flats, in the ray order of
/// [`bergman_fan`]. Convexity is not assumed; callers check it.
pub fn submodular_class(m: &Matroid, f: &SubmodularFunction) -> Result<DivisorClass> {
    let coeffs = m.nontrivial_flats().into_iter().map(|fl| f.value(m, fl)).collect::<Result<_>>()?;
    Ok(DivisorClass::new(coeffs))
}

#[derive(Clone, Debug)]
pub struct TowerConvexity {
    /// `ℓ_0, …, ℓ_k` on `Δ_0, …, Δ_k`.
    pub classes: Vec<DivisorClass>,
    pub checks: Vec<Check>,
}

impl TowerConvexity {
    pub fn passed(&self) -> bool {
        crate::check::all_passed(&self.checks)
    }
}

/// Pulls `ℓ` back through the tower and checks convexity of every `ℓ_m` and
/// strict convexity on every `link(Δ_m, τ_j)`.
pub fn tower_convexity_check(tower: &DeletionTower, class: &DivisorClass) -> Result<TowerConvexity> {
    if !is_strictly_convex(&tower.target, class)? {
        return Err(Error::PreconditionFailure("class is not strictly convex on the deletion fan".into()));
    }
    let k = tower.len();
    let mut classes = vec![DivisorClass::zero(0); k + 1];
    classes[k] = pullback_divisor(&tower.projection, class);
    for m in (0..k).rev() {
        classes[m] = pullback_divisor(&tower.subdivision_maps[m], &classes[m + 1]);
    }
    let mut checks = Vec::new();
    for (m, l) in classes.iter().enumerate() {
        let fan = &tower.fans[m];
        checks.push(Check::new(format!("convex on Δ_{m}"), is_convex(fan, l)?, ""));
        for j in 1..=k {
            let tau = tower.tau_in(m, j);
            let link = fan.link(&tau)?;
            let restricted = restrict_divisor_to_link(fan, &tau, &link, l);
            let ok = is_strictly_convex(&link.fan, &restricted)?;
            checks.push(Check::new(format!("strictly convex on link(Δ_{m}, τ_{j})"), ok, ""));
        }
    }
    Ok(TowerConvexity { classes, checks })
}

/// `bergman_fan(m)` and the class of `f` on it.
pub fn witness(m: &Matroid, f: &SubmodularFunction) -> Result<(Fan, DivisorClass)> {
    Ok((bergman_fan(m), submodular_class(m, f)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn default_witness(m: &Matroid) -> (Fan, DivisorClass) {
        witness(m, &SubmodularFunction::Default).unwrap()
    }

    #[test]
    fn default_coefficients() {
        let c = |m: Matroid| submodular_class(&m, &SubmodularFunction::Default).unwrap().coeffs;
        assert_eq!(c(Matroid::uniform(2, 3).unwrap()), vec![int(2); 3]);
        assert_eq!(c(Matroid::boolean(3).unwrap()), vec![int(2); 6]);
        let u34 = c(Matroid::uniform(3, 4).unwrap());
        assert_eq!(&u34[..4], &[int(3), int(3), int(3), int(3)]);
        assert!(u34[4..].iter().all(|x| *x == int(4)));
    }

    #[test]
    fn zero_class() {
        let (fan, _) = default_witness(&Matroid::uniform(2, 3).unwrap());
        let v = classify(&fan, &DivisorClass::zero(3)).unwrap();
        assert!(!v.positive && v.nonnegative && v.convex && !v.strictly_convex);
        assert!(v.failures.iter().any(|f| f.cone.is_empty() && f.ray.is_some()));
        assert!(verify_verdict(&fan, &DivisorClass::zero(3), &v).unwrap());
    }

    #[test]
    fn constant_class_on_u23() {
        let (fan, l) = default_witness(&Matroid::uniform(2, 3).unwrap());
        let p = is_positive(&fan, &l);
        assert_eq!(p.certificate(), Some(&[int(0), int(0)][..]));
        let v = classify(&fan, &l).unwrap();
        assert!(v.strictly_convex && v.positive);
        assert!(verify_verdict(&fan, &l, &v).unwrap());
    }

    #[test]
    fn empty_fan_is_vacuously_positive() {
        let fan = Fan::zero(2);
        assert!(is_positive(&fan, &DivisorClass::zero(0)).holds());
    }

    #[test]
    fn witnesses_strictly_convex() {
        for m in [Matroid::boolean(3).unwrap(), Matroid::uniform(3, 4).unwrap(), Matroid::uniform(2, 4).unwrap()] {
            for f in [SubmodularFunction::Default, SubmodularFunction::Cubic] {
                let (fan, l) = witness(&m, &f).unwrap();
                let v = classify(&fan, &l).unwrap();
                assert!(v.strictly_convex, "{:?} {:?}", m.name(), f);
                assert!(verify_verdict(&fan, &l, &v).unwrap());
            }
        }
    }

    #[test]
    fn open_cone_properties() {
        let m = Matroid::boolean(3).unwrap();
        let (fan, a) = witness(&m, &SubmodularFunction::Default).unwrap();
        let (_, b) = witness(&m, &SubmodularFunction::Cubic).unwrap();
        assert!(is_strictly_convex(&fan, &a.add(&b)).unwrap());
        assert!(is_strictly_convex(&fan, &a.scale(&frac(1, 7))).unwrap());
        assert!(!is_strictly_convex(&fan, &a.scale(&int(-1))).unwrap());
    }

    #[test]
    fn witness_file() {
        let f = SubmodularFunction::from_json(
            r#"{"values": [{"flat": [1], "value": "2/1"}, {"flat": [2], "value": "2"}, {"flat": [3], "value": "5/2"}]}"#,
        )
        .unwrap();
        let m = Matroid::uniform(2, 3).unwrap();
        assert_eq!(submodular_class(&m, &f).unwrap().coeffs[2], frac(5, 2));
        assert!(submodular_class(&Matroid::boolean(3).unwrap(), &f).is_err());
        assert!(SubmodularFunction::from_json(r#"{"values": [], "x": 1}"#).is_err());
    }

    #[test]
    fn tower_convexity() {
        let m = Matroid::uniform(3, 4).unwrap();
        let tower = DeletionTower::build(&m, 4).unwrap();
        let base = submodular_class(&tower.deleted, &SubmodularFunction::Default).unwrap();
        let report = tower_convexity_check(&tower, &base).unwrap();
        assert!(report.passed(), "{:?}", report.checks);
        assert_eq!(report.checks.len(), 4 * 4);
        let bad = base.scale(&int(-1));
        assert!(matches!(tower_convexity_check(&tower, &bad), Err(Error::PreconditionFailure(_))));

        let t23 = DeletionTower::build(&Matroid::uniform(2, 3).unwrap(), 3).unwrap();
        let b = submodular_class(&t23.deleted, &SubmodularFunction::Default).unwrap();
        let r = tower_convexity_check(&t23, &b).unwrap();
        assert_eq!(r.checks.len(), 1);
        assert!(r.passed());
    }
}
