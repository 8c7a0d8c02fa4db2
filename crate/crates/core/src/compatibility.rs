//! E-compatibility and E(K)-compatibility of finite measurement sets.
//!
//! Both questions are posed as one LP over the product outcome set: a joint
//! effect `h_lambda` for every tuple `lambda = (a_1, ..., a_n)` whose marginals
//! reproduce each measurement. Effects are handled through their values at
//! the vertices of `K`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gpt::{EffectRestriction, Measurement, RestrictedTheory, StateSpace};
use crate::lp::{LpProblem, LpStatus, Relation};
use crate::polytope::AffineFunctional;
use crate::rational::{self, RVec, Rational, Vector};

/// An infeasibility certificate for the LP that a decision was reduced to.
/// `subset` names the measurements the LP was built from when it is a strict
/// subset of the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FarkasWitness {
    #[serde(with = "rational::serde_str::vec")]
    pub multipliers: Vector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "answer", content = "evidence")]
pub enum Decision<Y> {
    Yes(Y),
    No(FarkasWitness),
}

impl<Y> Decision<Y> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn yes(&self) -> Option<&Y> {
        match self {
            Decision::Yes(y) => Some(y),
            Decision::No(_) => None,
        }
    }

    pub fn no(&self) -> Option<&FarkasWitness> {
        match self {
            Decision::Yes(_) => None,
            Decision::No(w) => Some(w),
        }
    }
}

/// Joint measurement: effects `h_lambda` and response tables
/// `responses[lambda][x][a] = p(a | x, lambda)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointMeasurementCert {
    pub outcomes: Vec<Vec<usize>>,
    pub effects: Vec<AffineFunctional>,
    pub responses: Vec<Vec<RVec>>,
    /// For E-compatibility: convex weights of each `h_lambda` over the generators of E.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub membership: Option<Vec<RVec>>,
}

/// All outcome tuples, last measurement varying fastest.
pub fn product_outcomes(ms: &[Measurement]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for m in ms {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..m.outcomes()).map(move |a| {
                    let mut t = prefix.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

fn deterministic_responses(ms: &[Measurement], lam: &[usize]) -> Vec<RVec> {
    ms.iter()
        .zip(lam)
        .map(|(m, &a)| RVec(rational::unit_vector(m.outcomes(), a)))
        .collect()
}

/// Variables `h_lambda(v) >= 0`, index `lambda * |V| + v`.
pub fn ek_problem(ms: &[Measurement], k: &StateSpace) -> LpProblem {
    let nv = k.vertices().len();
    let lams = product_outcomes(ms);
    let mut lp = LpProblem::new(lams.len() * nv);
    for (li, _) in lams.iter().enumerate() {
        for a in k.affine_dependencies() {
            let terms: Vec<(usize, Rational)> = a
                .iter()
                .enumerate()
                .map(|(v, c)| (li * nv + v, c.clone()))
                .collect();
            lp.add_sparse(&terms, Relation::Eq, Rational::zero());
        }
    }
    add_marginals(&mut lp, ms, k, &lams, |li, v| {
        vec![(li * nv + v, Rational::one())]
    });
    lp
}

/// Variables `c_{lambda, g} >= 0`, index `lambda * |G| + g`, with
/// `h_lambda = sum_g c_{lambda,g} g` and `sum_g c_{lambda,g} = 1`.
pub fn e_problem(ms: &[Measurement], k: &StateSpace, e: &EffectRestriction) -> LpProblem {
    let ng = e.generators.len();
    let lams = product_outcomes(ms);
    let gvals: Vec<Vector> = e.generators.iter().map(|g| k.values(g)).collect();
    let mut lp = LpProblem::new(lams.len() * ng);
    for li in 0..lams.len() {
        let terms: Vec<(usize, Rational)> =
            (0..ng).map(|g| (li * ng + g, Rational::one())).collect();
        lp.add_sparse(&terms, Relation::Eq, Rational::one());
    }
    add_marginals(&mut lp, ms, k, &lams, |li, v| {
        (0..ng)
            .filter(|&g| !gvals[g][v].is_zero())
            .map(|g| (li * ng + g, gvals[g][v].clone()))
            .collect()
    });
    lp
}

fn add_marginals(
    lp: &mut LpProblem,
    ms: &[Measurement],
    k: &StateSpace,
    lams: &[Vec<usize>],
    value_terms: impl Fn(usize, usize) -> Vec<(usize, Rational)>,
) {
    let nv = k.vertices().len();
    if ms.is_empty() {
        for v in 0..nv {
            let terms: Vec<(usize, Rational)> =
                (0..lams.len()).flat_map(|li| value_terms(li, v)).collect();
            lp.add_sparse(&terms, Relation::Eq, Rational::one());
        }
        return;
    }
    for (x, m) in ms.iter().enumerate() {
        for (a, f) in m.effects.iter().enumerate() {
            let fv = k.values(f);
            for (v, val) in fv.into_iter().enumerate() {
                let terms: Vec<(usize, Rational)> = lams
                    .iter()
                    .enumerate()
                    .filter(|(_, lam)| lam[x] == a)
                    .flat_map(|(li, _)| value_terms(li, v))
                    .collect();
                lp.add_sparse(&terms, Relation::Eq, val);
            }
        }
    }
}

fn select(ms: &[Measurement], subset: &Option<Vec<usize>>) -> Option<Vec<Measurement>> {
    match subset {
        None => Some(ms.to_vec()),
        Some(idx) => idx.iter().map(|&i| ms.get(i).cloned()).collect(),
    }
}

fn decide<Y>(
    ms: &[Measurement],
    build: impl Fn(&[Measurement]) -> LpProblem,
    certify: impl Fn(&[Rational]) -> Y,
) -> Decision<Y> {
    if ms.len() > 2 {
        for i in 0..ms.len() {
            for j in (i + 1)..ms.len() {
                let pair = [ms[i].clone(), ms[j].clone()];
                let res = build(&pair).solve();
                if res.status == LpStatus::Infeasible {
                    return Decision::No(FarkasWitness {
                        multipliers: res.farkas.expect("infeasible results carry a certificate"),
                        subset: Some(vec![i, j]),
                    });
                }
            }
        }
    }
    let res = build(ms).solve();
    match res.status {
        LpStatus::Infeasible => Decision::No(FarkasWitness {
            multipliers: res.farkas.expect("infeasible results carry a certificate"),
            subset: None,
        }),
        _ => Decision::Yes(certify(&res.point.expect("feasible results carry a point"))),
    }
}

const PRODUCT_LIMIT: usize = 1 << 14;

/// On a simplex every vertex assignment is affine, so the joint measurement with
/// `h_lambda(v) = prod_x m_x(lambda_x | v)` exists. `None` if it has too many
/// nonzero outcomes to write down.
fn product_joint(ms: &[Measurement], k: &StateSpace) -> Option<JointMeasurementCert> {
    let vals: Vec<Vec<Vector>> = ms
        .iter()
        .map(|m| m.effects.iter().map(|f| k.values(f)).collect())
        .collect();
    let nv = k.vertices().len();
    let mut joint: BTreeMap<Vec<usize>, Vector> = BTreeMap::new();
    for v in 0..nv {
        let mut partial: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), Rational::one())];
        for mv in &vals {
            let mut next = Vec::new();
            for (lam, p) in &partial {
                for (a, fv) in mv.iter().enumerate() {
                    if fv[v].is_zero() {
                        continue;
                    }
                    let mut l = lam.clone();
                    l.push(a);
                    next.push((l, p * &fv[v]));
                }
            }
            if next.len() > PRODUCT_LIMIT {
                return None;
            }
            partial = next;
        }
        for (lam, p) in partial {
            joint.entry(lam).or_insert_with(|| rational::zeros(nv))[v] = p;
        }
        if joint.len() > PRODUCT_LIMIT {
            return None;
        }
    }
    let mut cert = JointMeasurementCert {
        outcomes: Vec::new(),
        effects: Vec::new(),
        responses: Vec::new(),
        membership: None,
    };
    for (lam, hv) in joint {
        cert.effects.push(k.functional_from_values(&hv)?);
        cert.responses.push(deterministic_responses(ms, &lam));
        cert.outcomes.push(lam);
    }
    Some(cert)
}

pub fn ek_compatible(ms: &[Measurement], k: &StateSpace) -> Result<Decision<JointMeasurementCert>> {
    for m in ms {
        m.validate(k)?;
    }
    if k.is_simplex() {
        if let Some(cert) = product_joint(ms, k) {
            return Ok(Decision::Yes(cert));
        }
    }
    let nv = k.vertices().len();
    Ok(decide(
        ms,
        |sub| ek_problem(sub, k),
        |x| {
            let mut cert = JointMeasurementCert {
                outcomes: Vec::new(),
                effects: Vec::new(),
                responses: Vec::new(),
                membership: None,
            };
            for (li, lam) in product_outcomes(ms).into_iter().enumerate() {
                let hv = &x[li * nv..(li + 1) * nv];
                if rational::is_zero_vec(hv) {
                    continue;
                }
                cert.effects.push(
                    k.functional_from_values(hv)
                        .expect("consistent vertex values"),
                );
                cert.responses.push(deterministic_responses(ms, &lam));
                cert.outcomes.push(lam);
            }
            cert
        },
    ))
}

pub fn e_compatible(
    ms: &[Measurement],
    k: &StateSpace,
    e: &EffectRestriction,
) -> Result<Decision<JointMeasurementCert>> {
    for (mi, m) in ms.iter().enumerate() {
        m.validate(k)?;
        for (fi, f) in m.effects.iter().enumerate() {
            if !e.contains(k, f) {
                return Err(Error::NotInRestriction {
                    measurement: mi,
                    effect: fi,
                });
            }
        }
    }
    let ng = e.generators.len();
    let d = k.dim();
    Ok(decide(
        ms,
        |sub| e_problem(sub, k, e),
        |x| {
            let mut cert = JointMeasurementCert {
                outcomes: Vec::new(),
                effects: Vec::new(),
                responses: Vec::new(),
                membership: Some(Vec::new()),
            };
            let membership = cert.membership.as_mut().expect("just set");
            for (li, lam) in product_outcomes(ms).into_iter().enumerate() {
                let w = &x[li * ng..(li + 1) * ng];
                let h = e
                    .generators
                    .iter()
                    .zip(w)
                    .fold(AffineFunctional::zero(d), |acc, (g, c)| {
                        acc.add(&g.scale(c))
                    });
                let h = k.canonical(&h);
                if k.values(&h).iter().all(Zero::is_zero) {
                    continue;
                }
                cert.effects.push(h);
                membership.push(RVec(w.to_vec()));
                cert.responses.push(deterministic_responses(ms, &lam));
                cert.outcomes.push(lam);
            }
            cert
        },
    ))
}

/// Whether all measurements of the theory are E-compatible, i.e. whether `S(E)` is a simplex.
pub fn se_is_simplex(t: &RestrictedTheory) -> Result<bool> {
    Ok(t.dual_state_space()?.body.is_simplex())
}

/// Independent check of a joint measurement: nonnegativity (or membership in
/// E when `e` is given), normalization, valid response tables and exact
/// reproduction of every marginal.
pub fn verify_joint(
    ms: &[Measurement],
    k: &StateSpace,
    e: Option<&EffectRestriction>,
    cert: &JointMeasurementCert,
) -> bool {
    let n = cert.effects.len();
    if n == 0 || cert.responses.len() != n || cert.effects.iter().any(|h| h.dim() != k.dim()) {
        return false;
    }
    if !cert.effects.iter().all(|h| k.is_nonnegative(h)) {
        return false;
    }
    if !k.same_on(&AffineFunctional::sum(k.dim(), &cert.effects), &k.unit()) {
        return false;
    }
    for table in &cert.responses {
        if table.len() != ms.len() {
            return false;
        }
        for (m, p) in ms.iter().zip(table) {
            if p.len() != m.outcomes()
                || p.iter().any(Signed::is_negative)
                || p.iter().sum::<Rational>() != Rational::one()
            {
                return false;
            }
        }
    }
    for (x, m) in ms.iter().enumerate() {
        for (a, f) in m.effects.iter().enumerate() {
            let recon = cert
                .effects
                .iter()
                .zip(&cert.responses)
                .fold(AffineFunctional::zero(k.dim()), |acc, (h, p)| {
                    acc.add(&h.scale(&p[x][a]))
                });
            if !k.same_on(&recon, f) {
                return false;
            }
        }
    }
    if let Some(e) = e {
        let Some(weights) = &cert.membership else {
            return false;
        };
        if weights.len() != n {
            return false;
        }
        for (h, w) in cert.effects.iter().zip(weights) {
            if w.len() != e.generators.len()
                || w.iter().any(Signed::is_negative)
                || w.iter().sum::<Rational>() != Rational::one()
            {
                return false;
            }
            let combo = e
                .generators
                .iter()
                .zip(w.iter())
                .fold(AffineFunctional::zero(k.dim()), |acc, (g, c)| {
                    acc.add(&g.scale(c))
                });
            if !k.same_on(&combo, h) {
                return false;
            }
        }
    }
    true
}

pub fn verify_ek_no(ms: &[Measurement], k: &StateSpace, w: &FarkasWitness) -> bool {
    select(ms, &w.subset).is_some_and(|sub| ek_problem(&sub, k).verify_farkas(&w.multipliers))
}

pub fn verify_e_no(
    ms: &[Measurement],
    k: &StateSpace,
    e: &EffectRestriction,
    w: &FarkasWitness,
) -> bool {
    select(ms, &w.subset).is_some_and(|sub| e_problem(&sub, k, e).verify_farkas(&w.multipliers))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gpt::{apply_postprocessing, effect_polytope, PostProcessing};
    use crate::rational::{frac, ints};

    fn square() -> StateSpace {
        StateSpace::new(
            "square",
            vec![
                ints(&[1, 1]),
                ints(&[1, -1]),
                ints(&[-1, 1]),
                ints(&[-1, -1]),
            ],
        )
        .unwrap()
    }

    fn face(axis: usize) -> Measurement {
        let mut l = rational::zeros(2);
        l[axis] = frac(1, 2);
        Measurement::binary(AffineFunctional::new(l, frac(1, 2)))
    }

    #[test]
    fn measurement_with_itself() {
        let k = square();
        let m = face(0);
        let e = effect_polytope(&k).closed_on(&k).unwrap();
        let d = e_compatible(&[m.clone(), m.clone()], &k, &e).unwrap();
        let cert = d.yes().unwrap();
        assert!(verify_joint(&[m.clone(), m.clone()], &k, Some(&e), cert));
        // off-diagonal joint effects vanish
        for (lam, h) in cert.outcomes.iter().zip(&cert.effects) {
            if lam[0] != lam[1] {
                assert!(k.values(h).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn opposite_faces_of_square_are_incompatible() {
        let k = square();
        let ms = [face(0), face(1)];
        let e = effect_polytope(&k).closed_on(&k).unwrap();
        let d = e_compatible(&ms, &k, &e).unwrap();
        assert!(verify_e_no(&ms, &k, &e, d.no().unwrap()));
        let d = ek_compatible(&ms, &k).unwrap();
        assert!(verify_ek_no(&ms, &k, d.no().unwrap()));
    }

    #[test]
    fn trivial_measurements_are_compatible() {
        let k = square();
        let t = Measurement::new(vec![
            AffineFunctional::constant(2, frac(1, 3)),
            AffineFunctional::constant(2, frac(2, 3)),
        ]);
        let ms = [t.clone(), face(0), t];
        let d = ek_compatible(&ms, &k).unwrap();
        assert!(verify_joint(&ms, &k, None, d.yes().unwrap()));
    }

    #[test]
    fn triangle_everything_compatible() {
        let k = StateSpace::new(
            "triangle",
            vec![ints(&[0, 0]), ints(&[1, 0]), ints(&[0, 1])],
        )
        .unwrap();
        let m1 = Measurement::binary(AffineFunctional::new(
            vec![frac(1, 3), frac(1, 2)],
            frac(1, 4),
        ));
        let m2 = Measurement::new(vec![
            AffineFunctional::new(vec![frac(-1, 5), frac(0, 1)], frac(1, 5)),
            AffineFunctional::new(vec![frac(1, 5), frac(-1, 2)], frac(1, 2)),
            AffineFunctional::new(vec![frac(0, 1), frac(1, 2)], frac(3, 10)),
        ]);
        let ms = [m1, m2];
        let d = ek_compatible(&ms, &k).unwrap();
        assert!(verify_joint(&ms, &k, None, d.yes().unwrap()));
    }

    #[test]
    fn tampered_marginal_fails() {
        let k = square();
        let m = face(0);
        let ms = [m.clone(), m];
        let mut cert = ek_compatible(&ms, &k).unwrap().yes().unwrap().clone();
        cert.effects[0].constant += frac(1, 100);
        assert!(!verify_joint(&ms, &k, None, &cert));
    }

    #[test]
    fn postprocessed_copy_keeps_verdict() {
        let k = square();
        let flip = PostProcessing::new(vec![ints(&[0, 1]), ints(&[1, 0])]).unwrap();
        let ms = [face(0), face(1)];
        let extended = [
            face(0),
            face(1),
            apply_postprocessing(&face(0), &flip).unwrap(),
        ];
        assert_eq!(
            ek_compatible(&ms, &k).unwrap().is_yes(),
            ek_compatible(&extended, &k).unwrap().is_yes()
        );
        let d = ek_compatible(&extended, &k).unwrap();
        assert!(verify_ek_no(&extended, &k, d.no().unwrap()));
    }

    #[test]
    fn effect_outside_e_is_a_precondition_error() {
        let k = square();
        let e = crate::gpt::EffectRestriction::trivial(2)
            .closed_on(&k)
            .unwrap();
        assert!(matches!(
            e_compatible(&[face(0)], &k, &e),
            Err(Error::NotInRestriction { .. })
        ));
    }
}
