//! Simplex embeddability and preparation noncontextuality.
//!
//! The embedding search fixes the hidden variables to the vertices of `S(E)`:
//! any `psi_lambda` in `S(E)` splits over those vertices and the weights are
//! absorbed into the `h_lambda`, so this loses nothing and bounds `|Lambda|` by
//! the vertex count of `S(E)`. That bound is a property of this construction,
//! not a general statement about embeddings.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::compatibility::{self, Decision, FarkasWitness, JointMeasurementCert};
use crate::error::Result;
use crate::gpt::{DualStateSpace, RestrictedTheory};
use crate::lp::{LpProblem, LpStatus, Relation};
use crate::polytope::AffineFunctional;
use crate::rational::{self, RVec, Rational, Vector};

/// Effects `h` of `iota: K -> S_Lambda` and points `psi` of `S(E)` (in the
/// coordinates of `basis`, whose first element is `1_K`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexEmbeddingCert {
    pub h: Vec<AffineFunctional>,
    pub psi: Vec<RVec>,
    pub basis: Vec<AffineFunctional>,
}

/// A preparation noncontextual model: parent effects in `E(K)` and response
/// tables reproducing every generating measurement.
pub type PrepNcModelCert = JointMeasurementCert;

/// Variables `h_p(v) >= 0` for vertices `p` of `S(E)` and `v` of `K`,
/// index `p * |V| + v`.
pub fn embedding_problem(t: &RestrictedTheory, dss: &DualStateSpace) -> LpProblem {
    let k = &t.k;
    let nv = k.vertices().len();
    let pts = dss.vertices();
    let mut lp = LpProblem::new(pts.len() * nv);
    let deps = k.affine_dependencies();
    for p in 0..pts.len() {
        for a in &deps {
            let terms: Vec<(usize, Rational)> = a
                .iter()
                .enumerate()
                .map(|(v, c)| (p * nv + v, c.clone()))
                .collect();
            lp.add_sparse(&terms, Relation::Eq, Rational::zero());
        }
    }
    // sum_p h_p(v) psi_p(b_j) = b_j(v) for each basis element; linearity covers all of E
    for (j, b) in dss.basis.iter().enumerate() {
        let bv = k.values(b);
        for (v, target) in bv.into_iter().enumerate() {
            let terms: Vec<(usize, Rational)> = pts
                .iter()
                .enumerate()
                .map(|(p, z)| {
                    (
                        p * nv + v,
                        if j == 0 {
                            Rational::one()
                        } else {
                            z[j - 1].clone()
                        },
                    )
                })
                .filter(|(_, c)| !c.is_zero())
                .collect();
            lp.add_sparse(&terms, Relation::Eq, target);
        }
    }
    lp
}

pub fn simplex_embeddable(t: &RestrictedTheory) -> Result<Decision<SimplexEmbeddingCert>> {
    let dss = t.dual_state_space()?;
    let lp = embedding_problem(t, &dss);
    let res = lp.solve();
    if res.status == LpStatus::Infeasible {
        return Ok(Decision::No(FarkasWitness {
            multipliers: res.farkas.expect("infeasible results carry a certificate"),
            subset: None,
        }));
    }
    let x = res.point.expect("feasible results carry a point");
    let nv = t.k.vertices().len();
    let mut h = Vec::new();
    let mut psi = Vec::new();
    for (p, z) in dss.vertices().iter().enumerate() {
        let vals = &x[p * nv..(p + 1) * nv];
        if rational::is_zero_vec(vals) {
            continue;
        }
        h.push(
            t.k.functional_from_values(vals)
                .expect("consistent vertex values"),
        );
        psi.push(RVec(z.clone()));
    }
    Ok(Decision::Yes(SimplexEmbeddingCert {
        h,
        psi,
        basis: dss.basis.clone(),
    }))
}

pub fn verify_embedding(t: &RestrictedTheory, cert: &SimplexEmbeddingCert) -> bool {
    let Ok(dss) = t.dual_state_space() else {
        return false;
    };
    let k = &t.k;
    if cert.h.is_empty() || cert.h.len() != cert.psi.len() || cert.basis != dss.basis {
        return false;
    }
    if cert
        .h
        .iter()
        .any(|h| h.dim() != k.dim() || !k.is_nonnegative(h))
    {
        return false;
    }
    if !cert.psi.iter().all(|z| dss.contains(z)) {
        return false;
    }
    if !k.same_on(&AffineFunctional::sum(k.dim(), &cert.h), &k.unit()) {
        return false;
    }
    let hv: Vec<Vector> = cert.h.iter().map(|h| k.values(h)).collect();
    for (f, alpha) in t.e.generators.iter().zip(dss.generator_coords()) {
        let pairs: Vec<Rational> = cert
            .psi
            .iter()
            .map(|z| DualStateSpace::pair(z, alpha))
            .collect();
        for (v, target) in k.values(f).into_iter().enumerate() {
            let mut s = Rational::zero();
            for (vals, p) in hv.iter().zip(&pairs) {
                s += &vals[v] * p;
            }
            if s != target {
                return false;
            }
        }
    }
    true
}

pub fn verify_embedding_no(t: &RestrictedTheory, w: &FarkasWitness) -> bool {
    match t.dual_state_space() {
        Ok(dss) => w.subset.is_none() && embedding_problem(t, &dss).verify_farkas(&w.multipliers),
        Err(_) => false,
    }
}

/// Preparation noncontextuality of `(K, effect(M))`, decided as
/// E(K)-compatibility of the generating measurements.
pub fn prep_noncontextual(t: &RestrictedTheory) -> Result<Decision<PrepNcModelCert>> {
    let ms = t.measurements()?;
    compatibility::ek_compatible(ms, &t.k)
}

pub fn verify_prep_nc(t: &RestrictedTheory, cert: &PrepNcModelCert) -> bool {
    match t.measurements() {
        Ok(ms) => compatibility::verify_joint(ms, &t.k, None, cert),
        Err(_) => false,
    }
}

pub fn verify_prep_nc_no(t: &RestrictedTheory, w: &FarkasWitness) -> bool {
    match t.measurements() {
        Ok(ms) => compatibility::verify_ek_no(ms, &t.k, w),
        Err(_) => false,
    }
}

/// Response weights are valid distributions (shared sanity check for callers
/// that build certificates by hand).
pub fn is_distribution(p: &[Rational]) -> bool {
    !p.is_empty()
        && p.iter().all(|x| !x.is_negative())
        && p.iter().sum::<Rational>() == Rational::one()
}
