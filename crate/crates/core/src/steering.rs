//! Steering scenarios, local hidden state models and the conditioned theory `(K_rho, E_m)`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bipartite::{self, BipartiteState, Side, TensorKind, TensorProductSpace};
use crate::compatibility::{self, Decision, FarkasWitness, JointMeasurementCert};
use crate::contextuality;
use crate::error::{Error, Result};
use crate::gpt::{Measurement, RestrictedTheory, StateSpace};
use crate::linalg::{self, Matrix};
use crate::lp::{LpProblem, LpStatus, Relation};
use crate::polytope::{self, Halfspace, Polytope};
use crate::rational::{self, RVec, Rational, Vector};

/// The declared bipartite state space `K_AB`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ambient {
    Min,
    Max,
    /// An explicit body in the flattened coordinates of [`BipartiteState::coordinates`].
    Explicit(Polytope),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteeringScenario {
    pub ka: StateSpace,
    pub kb: StateSpace,
    pub ambient: Ambient,
    pub rho: BipartiteState,
    pub ms: Vec<Measurement>,
}

impl SteeringScenario {
    pub fn new(
        ka: StateSpace,
        kb: StateSpace,
        ambient: Ambient,
        rho: BipartiteState,
        ms: Vec<Measurement>,
    ) -> Result<Self> {
        if rho.dims() != (ka.dim(), kb.dim()) {
            return Err(Error::InvalidState(format!(
                "tensor is {:?} but the factors have dimensions ({}, {})",
                rho.dims(),
                ka.dim(),
                kb.dim()
            )));
        }
        for m in &ms {
            m.validate(&ka)?;
        }
        match &ambient {
            Ambient::Min => {
                if bipartite::in_minimal(&ka, &kb, &rho).is_none() {
                    return Err(Error::InvalidState(
                        "state is not in the minimal tensor product".into(),
                    ));
                }
            }
            Ambient::Max => {
                if !bipartite::in_maximal(&ka, &kb, &rho) {
                    return Err(Error::InvalidState(
                        "state is not in the maximal tensor product".into(),
                    ));
                }
            }
            Ambient::Explicit(body) => {
                let space = bipartite::explicit_tensor((ka.dim(), kb.dim()), body.clone())?;
                if !space.contains(&rho) {
                    return Err(Error::InvalidState(
                        "state is not in the declared ambient".into(),
                    ));
                }
                let min = bipartite::minimal_tensor(&ka, &kb);
                if !min.body.verts().iter().all(|x| space.body.contains(x)) {
                    return Err(Error::InvalidState(
                        "ambient does not contain the minimal tensor product".into(),
                    ));
                }
                for s in space.vertex_states()? {
                    if !bipartite::in_maximal(&ka, &kb, &s) {
                        return Err(Error::InvalidState(
                            "ambient is not inside the maximal tensor product".into(),
                        ));
                    }
                }
            }
        }
        Ok(SteeringScenario {
            ka,
            kb,
            ambient,
            rho,
            ms,
        })
    }

    pub fn ambient_space(&self) -> Result<TensorProductSpace> {
        match &self.ambient {
            Ambient::Min => Ok(bipartite::minimal_tensor(&self.ka, &self.kb)),
            Ambient::Max => Ok(bipartite::maximal_tensor(&self.ka, &self.kb)),
            Ambient::Explicit(p) => {
                bipartite::explicit_tensor((self.ka.dim(), self.kb.dim()), p.clone())
            }
        }
    }
}

/// `entries[x][a]` is `sigma_{a|x}` in homogeneous coordinates on `B`; the
/// first entry is its weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assemblage {
    pub entries: Vec<Vec<RVec>>,
}

impl Assemblage {
    pub fn settings(&self) -> usize {
        self.entries.len()
    }

    pub fn outcome_counts(&self) -> Vec<usize> {
        self.entries.iter().map(Vec::len).collect()
    }

    /// `sum_a sigma_{a|x}` is the same for every `x`.
    pub fn is_no_signalling(&self) -> bool {
        let sums: Vec<Vector> = self
            .entries
            .iter()
            .map(|row| {
                let mut s = rational::zeros(row[0].len());
                for v in row {
                    rational::axpy(&mut s, &Rational::one(), v);
                }
                s
            })
            .collect();
        sums.windows(2).all(|w| w[0] == w[1]) && sums.first().is_none_or(|s| s[0].is_one())
    }
}

pub fn assemblage(sc: &SteeringScenario) -> Assemblage {
    Assemblage {
        entries: sc
            .ms
            .iter()
            .map(|m| {
                m.effects
                    .iter()
                    .map(|f| {
                        RVec(
                            bipartite::partial_apply_effect(&sc.rho, f, Side::A)
                                .expect("validated dimensions"),
                        )
                    })
                    .collect()
            })
            .collect(),
    }
}

/// Local hidden state model: weights `p(lambda)`, states `sigma_lambda` in `K_B`
/// with convex weights over its vertices, and response tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LhsModelCert {
    pub strategies: Vec<Vec<usize>>,
    #[serde(with = "rational::serde_str::vec")]
    pub weights: Vector,
    pub states: Vec<RVec>,
    pub state_weights: Vec<RVec>,
    pub responses: Vec<Vec<RVec>>,
}

fn strategies(counts: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &n in counts {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..n).map(move |a| {
                    let mut t = p.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

/// Variables `omega_{lambda,k} >= 0` (unnormalized weight of vertex `k` of
/// `K_B` under strategy `lambda`), index `lambda * |V_B| + k`.
pub fn lhs_problem(asm: &Assemblage, kb: &StateSpace) -> LpProblem {
    let verts: Vec<Vector> = kb
        .vertices()
        .iter()
        .map(|v| bipartite::homogenize(v))
        .collect();
    let nk = verts.len();
    let lams = strategies(&asm.outcome_counts());
    let mut lp = LpProblem::new(lams.len() * nk);
    for (x, row) in asm.entries.iter().enumerate() {
        for (a, sigma) in row.iter().enumerate() {
            for c in 0..=kb.dim() {
                let terms: Vec<(usize, Rational)> = lams
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| l[x] == a)
                    .flat_map(|(li, _)| {
                        verts
                            .iter()
                            .enumerate()
                            .filter(|(_, v)| !v[c].is_zero())
                            .map(move |(k, v)| (li * nk + k, v[c].clone()))
                    })
                    .collect();
                lp.add_sparse(&terms, Relation::Eq, sigma[c].clone());
            }
        }
    }
    lp
}

pub fn has_lhs_model(asm: &Assemblage, kb: &StateSpace) -> Decision<LhsModelCert> {
    let res = lhs_problem(asm, kb).solve();
    if res.status == LpStatus::Infeasible {
        return Decision::No(FarkasWitness {
            multipliers: res.farkas.expect("infeasible results carry a certificate"),
            subset: None,
        });
    }
    let w = res.point.expect("feasible results carry a point");
    let verts = kb.vertices();
    let nk = verts.len();
    let counts = asm.outcome_counts();
    let mut cert = LhsModelCert {
        strategies: Vec::new(),
        weights: Vec::new(),
        states: Vec::new(),
        state_weights: Vec::new(),
        responses: Vec::new(),
    };
    for (li, lam) in strategies(&counts).into_iter().enumerate() {
        let block = &w[li * nk..(li + 1) * nk];
        let p: Rational = block.iter().sum();
        if p.is_zero() {
            continue;
        }
        let cw: Vector = block.iter().map(|x| x / &p).collect();
        let mut state = rational::zeros(kb.dim());
        for (c, v) in cw.iter().zip(verts) {
            rational::axpy(&mut state, c, v);
        }
        cert.responses.push(
            counts
                .iter()
                .zip(&lam)
                .map(|(&n, &a)| RVec(rational::unit_vector(n, a)))
                .collect(),
        );
        cert.strategies.push(lam);
        cert.weights.push(p);
        cert.states.push(RVec(state));
        cert.state_weights.push(RVec(cw));
    }
    Decision::Yes(cert)
}

pub fn verify_lhs(asm: &Assemblage, kb: &StateSpace, cert: &LhsModelCert) -> bool {
    let n = cert.weights.len();
    if n == 0
        || [
            cert.states.len(),
            cert.state_weights.len(),
            cert.responses.len(),
        ]
        .iter()
        .any(|&l| l != n)
    {
        return false;
    }
    if cert.weights.iter().any(Signed::is_negative)
        || cert.weights.iter().sum::<Rational>() != Rational::one()
    {
        return false;
    }
    let verts = kb.vertices();
    for (s, cw) in cert.states.iter().zip(&cert.state_weights) {
        if s.len() != kb.dim() || cw.len() != verts.len() || !contextuality::is_distribution(cw) {
            return false;
        }
        let mut combo = rational::zeros(kb.dim());
        for (c, v) in cw.iter().zip(verts) {
            rational::axpy(&mut combo, c, v);
        }
        if combo != s.0 {
            return false;
        }
    }
    let counts = asm.outcome_counts();
    for table in &cert.responses {
        if table.len() != counts.len()
            || table
                .iter()
                .zip(&counts)
                .any(|(p, &c)| p.len() != c || !contextuality::is_distribution(p))
        {
            return false;
        }
    }
    for (x, row) in asm.entries.iter().enumerate() {
        for (a, sigma) in row.iter().enumerate() {
            let mut recon = rational::zeros(kb.dim() + 1);
            for ((p, s), table) in cert.weights.iter().zip(&cert.states).zip(&cert.responses) {
                let c = p * &table[x][a];
                rational::axpy(&mut recon, &c, &bipartite::homogenize(s));
            }
            if recon != sigma.0 {
                return false;
            }
        }
    }
    true
}

pub fn verify_lhs_no(asm: &Assemblage, kb: &StateSpace, w: &FarkasWitness) -> bool {
    w.subset.is_none() && lhs_problem(asm, kb).verify_farkas(&w.multipliers)
}

/// `K_rho`: normalized `(id (x) g)(rho)` over generators `g` of the cone of
/// nonnegative effects on `K_B` with positive weight. Every effect of `E(K_B)`
/// is a nonnegative combination of these generators, so the hull is the same
/// as over all of `E(K_B)`.
pub fn conditioned_state_space(sc: &SteeringScenario) -> Result<StateSpace> {
    let mut pts = Vec::new();
    for g in sc.kb.positive_generators() {
        let v = bipartite::partial_apply_effect(&sc.rho, &g, Side::B)?;
        if let Some(c) = bipartite::conditioned(&v) {
            pts.push(c);
        }
    }
    if pts.is_empty() {
        return Err(Error::InvalidState(
            "every conditioning effect has zero weight".into(),
        ));
    }
    StateSpace::new(format!("K_rho({})", sc.ka.label), pts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FullDimMode {
    ExactDef7,
    SufficientLemma8,
}

fn span_dim(k: &StateSpace) -> usize {
    k.affine_dim() + 1
}

/// Rank of `{(f (x) id)(rho)}` over a spanning family of effects on the
/// relevant Alice-side space, compared with `dim span(K_B)`.
pub fn is_full_dimensional(sc: &SteeringScenario, mode: FullDimMode) -> Result<bool> {
    let space = match mode {
        FullDimMode::ExactDef7 => conditioned_state_space(sc)?,
        FullDimMode::SufficientLemma8 => sc.ka.clone(),
    };
    let rows: Vec<Vector> = space
        .positive_generators()
        .iter()
        .map(|f| bipartite::partial_apply_effect(&sc.rho, f, Side::A))
        .collect::<Result<_>>()?;
    Ok(linalg::rank(&rows) == span_dim(&sc.kb))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    Reduced {
        scenario: Box<SteeringScenario>,
        retraction: Matrix,
    },
    NotReducible(FarkasWitness),
}

/// `J = span{(f (x) id)(rho)}`, as a basis in homogeneous coordinates on `B`.
pub fn j_space(sc: &SteeringScenario) -> Vec<Vector> {
    let rows = sc.rho.tensor.rows().to_vec();
    let (r, _) = linalg::rref(&rows);
    r
}

/// `K_B ∩ J` as a state space in the coordinates of `K_B`.
pub fn kb_cap_j(sc: &SteeringScenario, j: &[Vector]) -> Result<StateSpace> {
    let db = sc.kb.dim();
    let mut facets: Vec<Halfspace> = sc.kb.facets().to_vec();
    for n in linalg::nullspace(j, db + 1) {
        // n . (1, x) = 0
        facets.push(Halfspace::new(n[1..].to_vec(), -n[0].clone()));
        facets.push(Halfspace::new(
            n[1..].iter().map(|x| -x).collect(),
            n[0].clone(),
        ));
    }
    let body = polytope::dd_hrep_to_vrep(&Polytope::from_facets(db, facets)?)?;
    StateSpace::from_polytope(format!("{} ∩ J", sc.kb.label), body)
}

/// Unknowns: the entries of `P` (free, row-major) and `W[k][j] >= 0`.
/// Constraints: `P k = sum_j W[k][j] j` for vertices `k` of `K_B` and `j` of
/// `K_B ∩ J`, `sum_j W[k][j] = 1`, and `P u = u` on a basis of `J`.
pub fn retraction_problem(sc: &SteeringScenario, j: &[Vector], cap: &StateSpace) -> LpProblem {
    let n = sc.kb.dim() + 1;
    let kv: Vec<Vector> = sc
        .kb
        .vertices()
        .iter()
        .map(|v| bipartite::homogenize(v))
        .collect();
    let jv: Vec<Vector> = cap
        .vertices()
        .iter()
        .map(|v| bipartite::homogenize(v))
        .collect();
    let np = n * n;
    let nw = kv.len() * jv.len();
    let mut lp = LpProblem::new(np + nw);
    for i in 0..np {
        lp.set_free(i);
    }
    let w = |k: usize, jj: usize| np + k * jv.len() + jj;
    for (k, kh) in kv.iter().enumerate() {
        for r in 0..n {
            let mut terms: Vec<(usize, Rational)> = (0..n)
                .filter(|&c| !kh[c].is_zero())
                .map(|c| (r * n + c, kh[c].clone()))
                .collect();
            for (jj, jh) in jv.iter().enumerate() {
                if !jh[r].is_zero() {
                    terms.push((w(k, jj), -jh[r].clone()));
                }
            }
            lp.add_sparse(&terms, Relation::Eq, Rational::zero());
        }
        let terms: Vec<(usize, Rational)> = (0..jv.len())
            .map(|jj| (w(k, jj), Rational::one()))
            .collect();
        lp.add_sparse(&terms, Relation::Eq, Rational::one());
    }
    for u in j {
        for r in 0..n {
            let terms: Vec<(usize, Rational)> = (0..n)
                .filter(|&c| !u[c].is_zero())
                .map(|c| (r * n + c, u[c].clone()))
                .collect();
            lp.add_sparse(&terms, Relation::Eq, u[r].clone());
        }
    }
    lp
}

/// Replace `K_B` by `K_B ∩ J` when an affine retraction of `K_B` onto it exists.
pub fn restrict_to_j(sc: &SteeringScenario) -> Result<Reduction> {
    let j = j_space(sc);
    let cap = kb_cap_j(sc, &j)?;
    let lp = retraction_problem(sc, &j, &cap);
    let res = lp.solve();
    if res.status == LpStatus::Infeasible {
        return Ok(Reduction::NotReducible(FarkasWitness {
            multipliers: res.farkas.expect("infeasible results carry a certificate"),
            subset: None,
        }));
    }
    let x = res.point.expect("feasible results carry a point");
    let n = sc.kb.dim() + 1;
    let retraction = Matrix::from_flat(n, n, &x[..n * n])?;
    let ambient = match sc.ambient {
        Ambient::Min => Ambient::Min,
        _ => Ambient::Max,
    };
    let scenario =
        SteeringScenario::new(sc.ka.clone(), cap, ambient, sc.rho.clone(), sc.ms.clone())?;
    Ok(Reduction::Reduced {
        scenario: Box::new(scenario),
        retraction,
    })
}

/// Independent check that `P` retracts `K_B` onto `K_B ∩ J` and fixes `J`.
pub fn verify_retraction(sc: &SteeringScenario, p: &Matrix) -> bool {
    let j = j_space(sc);
    let Ok(cap) = kb_cap_j(sc, &j) else {
        return false;
    };
    let n = sc.kb.dim() + 1;
    if p.nrows() != n || p.ncols() != n {
        return false;
    }
    let fixes = j.iter().all(|u| p.apply(u) == *u);
    let into = sc.kb.vertices().iter().all(|v| {
        let y = p.apply(&bipartite::homogenize(v));
        y[0].is_one() && cap.contains(&y[1..])
    });
    fixes && into
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem9Report {
    pub lhs: Decision<LhsModelCert>,
    pub prep_nc: Decision<JointMeasurementCert>,
    pub agree: bool,
    #[serde(with = "rational::serde_str::mat")]
    pub k_rho: Vec<Vector>,
}

/// Runs the steering LP and the preparation noncontextuality LP on
/// `(K_rho, effect(M))` side by side. Refuses scenarios that are not
/// `K_B`-full-dimensional.
pub fn theorem9_crosscheck(sc: &SteeringScenario) -> Result<Theorem9Report> {
    if !is_full_dimensional(sc, FullDimMode::ExactDef7)? {
        return Err(Error::TheoremInapplicable(
            "state is not K_B-full-dimensional".into(),
        ));
    }
    let k_rho = conditioned_state_space(sc)?;
    let theory = RestrictedTheory::from_measurements(k_rho.clone(), sc.ms.clone())?;
    let prep_nc = contextuality::prep_noncontextual(&theory)?;
    let lhs = has_lhs_model(&assemblage(sc), &sc.kb);
    Ok(Theorem9Report {
        agree: lhs.is_yes() == prep_nc.is_yes(),
        lhs,
        prep_nc,
        k_rho: k_rho.vertices().to_vec(),
    })
}

pub fn verify_theorem9(sc: &SteeringScenario, report: &Theorem9Report) -> bool {
    let asm = assemblage(sc);
    let lhs_ok = match &report.lhs {
        Decision::Yes(c) => verify_lhs(&asm, &sc.kb, c),
        Decision::No(w) => verify_lhs_no(&asm, &sc.kb, w),
    };
    let Ok(k_rho) = conditioned_state_space(sc) else {
        return false;
    };
    let prep_ok = match &report.prep_nc {
        Decision::Yes(c) => compatibility::verify_joint(&sc.ms, &k_rho, None, c),
        Decision::No(w) => compatibility::verify_ek_no(&sc.ms, &k_rho, w),
    };
    lhs_ok && prep_ok && report.agree == (report.lhs.is_yes() == report.prep_nc.is_yes())
}

/// The isotropic-analog tensor `diag(1, g, -g, g)` on three-dimensional factors.
pub fn isotropic_tensor(gamma: &Rational) -> BipartiteState {
    let mut t = Matrix::zeros(4, 4);
    t.set(0, 0, Rational::one());
    t.set(1, 1, gamma.clone());
    t.set(2, 2, -gamma.clone());
    t.set(3, 3, gamma.clone());
    BipartiteState::new(t).expect("normalized")
}

/// The three binary measurements `(1 +- x_i)/2`.
pub fn mub_measurements() -> Vec<Measurement> {
    (0..3)
        .map(|i| {
            let mut l = rational::zeros(3);
            l[i] = rational::frac(1, 2);
            Measurement::binary(crate::polytope::AffineFunctional::new(
                l,
                rational::frac(1, 2),
            ))
        })
        .collect()
}

fn isotropic_assemblage(gamma: &Rational) -> Assemblage {
    let rho = isotropic_tensor(gamma);
    Assemblage {
        entries: mub_measurements()
            .iter()
            .map(|m| {
                m.effects
                    .iter()
                    .map(|f| {
                        RVec(
                            bipartite::partial_apply_effect(&rho, f, Side::A).expect("dimension 3"),
                        )
                    })
                    .collect()
            })
            .collect(),
    }
}

pub fn isotropic_has_lhs(gamma: &Rational, kb: &StateSpace) -> Decision<LhsModelCert> {
    has_lhs_model(&isotropic_assemblage(gamma), kb)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bisection {
    #[serde(with = "rational::serde_str")]
    pub lower: Rational,
    #[serde(with = "rational::serde_str")]
    pub upper: Rational,
    pub steps: Vec<(RVec, bool)>,
}

/// Bisection for the largest `gamma` in `[lo, hi]` with `yes(gamma)`, assuming
/// monotonicity; stops when the bracket is narrower than `tol`.
pub fn bisect(
    mut lo: Rational,
    mut hi: Rational,
    tol: &Rational,
    mut yes: impl FnMut(&Rational) -> bool,
) -> Bisection {
    let mut steps = Vec::new();
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        let ans = yes(&mid);
        steps.push((RVec(vec![mid.clone()]), ans));
        if ans {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Bisection {
        lower: lo,
        upper: hi,
        steps,
    }
}

/// Exact largest `gamma` for which the isotropic-analog assemblage of the
/// three binary measurements has an LHS model with states in `K_B`.
pub fn isotropic_threshold(kb: &StateSpace) -> Rational {
    let one = isotropic_assemblage(&Rational::one());
    let base = isotropic_assemblage(&Rational::zero());
    let mut lp = lhs_problem(&base, kb);
    // sigma(gamma) = base + gamma (one - base); move the gamma part to the left
    let n = lp.num_vars;
    lp.num_vars += 1;
    lp.bounds.push(crate::lp::VarBound::nonnegative());
    lp.objective.push(Rational::zero());
    let mut row = 0;
    for (x, r) in one.entries.iter().enumerate() {
        for (a, s1) in r.iter().enumerate() {
            for c in 0..=kb.dim() {
                let slope = &s1[c] - &base.entries[x][a][c];
                lp.constraints[row].coeffs.push(-slope);
                row += 1;
            }
        }
    }
    let mut obj = rational::zeros(n + 1);
    obj[n] = Rational::one();
    lp.maximize(obj);
    let res = lp.solve();
    match res.status {
        LpStatus::Optimal => res.objective_value.expect("optimal value"),
        _ => panic!("isotropic threshold LP is bounded and feasible at gamma = 0"),
    }
}

impl TensorKind {
    pub fn ambient(self) -> Ambient {
        match self {
            TensorKind::Minimal => Ambient::Min,
            TensorKind::Maximal => Ambient::Max,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::AffineFunctional;
    use crate::rational::{frac, int, ints};

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

    fn pr_box() -> BipartiteState {
        BipartiteState::new(
            Matrix::from_rows(vec![ints(&[1, 0, 0]), ints(&[0, 1, 1]), ints(&[0, 1, -1])]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn pr_box_steers() {
        let sc = SteeringScenario::new(
            square(),
            square(),
            Ambient::Max,
            pr_box(),
            vec![face(0), face(1)],
        )
        .unwrap();
        let asm = assemblage(&sc);
        assert!(asm.is_no_signalling());
        let d = has_lhs_model(&asm, &sc.kb);
        assert!(verify_lhs_no(&asm, &sc.kb, d.no().unwrap()));
        assert!(
            SteeringScenario::new(square(), square(), Ambient::Min, pr_box(), vec![face(0)])
                .is_err()
        );
        let report = theorem9_crosscheck(&sc).unwrap();
        assert!(report.agree);
        assert!(!report.lhs.is_yes());
        assert!(verify_theorem9(&sc, &report));
    }

    #[test]
    fn product_state_is_unsteerable_and_degenerate() {
        let rho = BipartiteState::product(&[frac(1, 2), frac(-1, 3)], &[frac(1, 4), int(0)]);
        let sc = SteeringScenario::new(
            square(),
            square(),
            Ambient::Min,
            rho,
            vec![face(0), face(1)],
        )
        .unwrap();
        let asm = assemblage(&sc);
        let d = has_lhs_model(&asm, &sc.kb);
        assert!(verify_lhs(&asm, &sc.kb, d.yes().unwrap()));
        let k_rho = conditioned_state_space(&sc).unwrap();
        assert_eq!(k_rho.vertices(), &[vec![frac(1, 2), frac(-1, 3)]]);
        assert!(!is_full_dimensional(&sc, FullDimMode::ExactDef7).unwrap());
        assert!(!is_full_dimensional(&sc, FullDimMode::SufficientLemma8).unwrap());
        assert!(matches!(
            theorem9_crosscheck(&sc),
            Err(Error::TheoremInapplicable(_))
        ));
        match restrict_to_j(&sc).unwrap() {
            Reduction::Reduced {
                scenario,
                retraction,
            } => {
                assert_eq!(scenario.kb.vertices().len(), 1);
                assert!(verify_retraction(&sc, &retraction));
            }
            Reduction::NotReducible(_) => panic!("product states reduce"),
        }
    }

    #[test]
    fn diagonal_correlations_reduce_to_a_segment() {
        let seg = StateSpace::new("segment", vec![ints(&[-1]), ints(&[1])]).unwrap();
        let t = Matrix::from_rows(vec![ints(&[1, 0, 0]), ints(&[0, 1, 1])]).unwrap();
        let sc = SteeringScenario::new(
            seg.clone(),
            square(),
            Ambient::Min,
            BipartiteState::new(t).unwrap(),
            vec![],
        )
        .unwrap();
        match restrict_to_j(&sc).unwrap() {
            Reduction::Reduced {
                scenario,
                retraction,
            } => {
                assert_eq!(scenario.kb.vertices().len(), 2);
                assert!(verify_retraction(&sc, &retraction));
            }
            Reduction::NotReducible(_) => panic!("diagonal projection exists"),
        }
    }

    #[test]
    fn bisection_brackets() {
        let b = bisect(int(0), int(1), &frac(1, 64), |g| *g <= frac(1, 3));
        assert!(b.lower <= frac(1, 3) && frac(1, 3) <= b.upper);
        assert!(&b.upper - &b.lower <= frac(1, 64));
    }

    #[test]
    fn octahedron_threshold_is_exact() {
        // with K_B the octahedron, the conditioned states +-g e_i need g <= 1/3
        let mut v = Vec::new();
        for i in 0..3 {
            for s in [-1, 1] {
                let mut p = rational::zeros(3);
                p[i] = int(s);
                v.push(p);
            }
        }
        let kb = StateSpace::new("octahedron", v).unwrap();
        assert_eq!(isotropic_threshold(&kb), frac(1, 3));
        assert!(isotropic_has_lhs(&frac(1, 3), &kb).is_yes());
        assert!(!isotropic_has_lhs(&frac(34, 100), &kb).is_yes());
    }
}
