//! Exact Fourier–Motzkin elimination for mixed strict / non-strict systems.
//!
//! Each derived inequality carries the non-negative multipliers that produce it
//! from the input rows, so an infeasible system yields a Farkas certificate and
//! a feasible one yields a point by back-substitution.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::rational::{dot, one, zero, Rational};

/// `coeffs · x + constant > 0` (strict) or `≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
    pub strict: bool,
}

impl Inequality {
    pub fn new(coeffs: Vec<Rational>, constant: Rational, strict: bool) -> Self {
        Inequality { coeffs, constant, strict }
    }

    pub fn holds_at(&self, x: &[Rational]) -> bool {
        let v = dot(&self.coeffs, x) + &self.constant;
        if self.strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// A point satisfying every inequality.
    Feasible(Vec<Rational>),
    /// Non-negative multipliers, one per input inequality, whose combination
    /// has zero coefficients and a constant that contradicts the combined sense.
    Infeasible(Vec<Rational>),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Rational>,
    constant: Rational,
    strict: bool,
    multipliers: Vec<Rational>,
}

impl Row {
    fn scale(&mut self, c: &Rational) {
        for x in self.coeffs.iter_mut().chain(self.multipliers.iter_mut()) {
            *x *= c;
        }
        self.constant *= c;
    }
}

/// Decides feasibility of `system` over `num_vars` rational unknowns.
pub fn solve(num_vars: usize, system: &[Inequality]) -> Feasibility {
    let m = system.len();
    let mut stage: Vec<Row> = system
        .iter()
        .enumerate()
        .map(|(i, ineq)| {
            assert_eq!(ineq.coeffs.len(), num_vars, "inequality has wrong arity");
            let mut multipliers = vec![zero(); m];
            multipliers[i] = one();
            Row { coeffs: ineq.coeffs.clone(), constant: ineq.constant.clone(), strict: ineq.strict, multipliers }
        })
        .collect();

    let mut stages = Vec::with_capacity(num_vars + 1);
    for var in 0..=num_vars {
        stage = match prune(stage) {
            Ok(rows) => rows,
            Err(certificate) => return Feasibility::Infeasible(certificate),
        };
        stages.push(stage.clone());
        if var == num_vars {
            break;
        }
        stage = eliminate(&stage, var);
    }

    // Back-substitute: stage `var` constrains x_var given x_{var+1..}.
    let mut x = vec![zero(); num_vars];
    for var in (0..num_vars).rev() {
        x[var] = pick_value(&stages[var], var, &x);
    }
    debug_assert!(system.iter().all(|i| i.holds_at(&x)));
    Feasibility::Feasible(x)
}

/// Whether `multipliers` is a valid infeasibility certificate for `system`.
pub fn is_farkas_certificate(system: &[Inequality], multipliers: &[Rational]) -> bool {
    if multipliers.len() != system.len() || multipliers.iter().any(Signed::is_negative) {
        return false;
    }
    let n = system.first().map_or(0, |i| i.coeffs.len());
    let mut combo = vec![zero(); n];
    let mut constant = zero();
    let mut strict = false;
    for (ineq, y) in system.iter().zip(multipliers) {
        if y.is_zero() {
            continue;
        }
        for (c, a) in combo.iter_mut().zip(&ineq.coeffs) {
            *c += y * a;
        }
        constant += y * &ineq.constant;
        strict |= ineq.strict;
    }
    combo.iter().all(Zero::is_zero) && (constant.is_negative() || (constant.is_zero() && strict))
}

fn eliminate(rows: &[Row], var: usize) -> Vec<Row> {
    let mut out = Vec::new();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for row in rows {
        let c = &row.coeffs[var];
        if c.is_zero() {
            out.push(row.clone());
        } else if c.is_positive() {
            pos.push(row);
        } else {
            neg.push(row);
        }
    }
    for p in &pos {
        let pc = p.coeffs[var].recip();
        for q in &neg {
            let qc = -q.coeffs[var].recip();
            let coeffs = p.coeffs.iter().zip(&q.coeffs).map(|(a, b)| a * &pc + b * &qc).collect();
            let multipliers =
                p.multipliers.iter().zip(&q.multipliers).map(|(a, b)| a * &pc + b * &qc).collect();
            out.push(Row {
                coeffs,
                constant: &p.constant * &pc + &q.constant * &qc,
                strict: p.strict || q.strict,
                multipliers,
            });
        }
    }
    out
}

/// Drops satisfied constant rows, reports contradictory ones, and keeps only
/// the tightest row per normalized direction.
fn prune(rows: Vec<Row>) -> Result<Vec<Row>, Vec<Rational>> {
    let mut best: HashMap<Vec<Rational>, Row> = HashMap::new();
    let mut order = Vec::new();
    for mut row in rows {
        let Some(lead) = row.coeffs.iter().find(|c| !c.is_zero()).cloned() else {
            let ok = if row.strict { row.constant.is_positive() } else { !row.constant.is_negative() };
            if ok {
                continue;
            }
            return Err(row.multipliers);
        };
        row.scale(&lead.abs().recip());
        let key = row.coeffs.clone();
        match best.get_mut(&key) {
            Some(kept) => {
                let tighter = row.constant < kept.constant
                    || (row.constant == kept.constant && row.strict && !kept.strict);
                if tighter {
                    *kept = row;
                }
            }
            None => {
                order.push(key.clone());
                best.insert(key, row);
            }
        }
    }
    Ok(order.into_iter().map(|k| best.remove(&k).unwrap()).collect())
}

fn pick_value(rows: &[Row], var: usize, x: &[Rational]) -> Rational {
    // Bounds: c x_var + rest (>|≥) 0.
    let mut lower: Option<(Rational, bool)> = None;
    let mut upper: Option<(Rational, bool)> = None;
    for row in rows {
        let c = &row.coeffs[var];
        if c.is_zero() {
            continue;
        }
        let rest = row.coeffs[var + 1..].iter().zip(&x[var + 1..]).fold(row.constant.clone(), |acc, (a, b)| acc + a * b);
        let bound = -rest / c;
        if c.is_positive() {
            let tighter = match &lower {
                None => true,
                Some((b, s)) => bound > *b || (bound == *b && row.strict && !s),
            };
            if tighter {
                lower = Some((bound, row.strict));
            }
        } else {
            let tighter = match &upper {
                None => true,
                Some((b, s)) => bound < *b || (bound == *b && row.strict && !s),
            };
            if tighter {
                upper = Some((bound, row.strict));
            }
        }
    }
    let admits = |v: &Rational| {
        lower.as_ref().is_none_or(|(b, s)| if *s { v > b } else { v >= b })
            && upper.as_ref().is_none_or(|(b, s)| if *s { v < b } else { v <= b })
    };
    let z = zero();
    if admits(&z) {
        return z;
    }
    match (&lower, &upper) {
        (Some((l, _)), Some((u, _))) => {
            if l == u {
                l.clone()
            } else {
                (l + u) / Rational::from_integer(2.into())
            }
        }
        (Some((l, _)), None) => l.floor() + Rational::one(),
        (None, Some((u, _))) => u.ceil() - Rational::one(),
        (None, None) => z,
    }
}
