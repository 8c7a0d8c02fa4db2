//! State spaces, effect restrictions, measurements and the dual state space.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp;
use crate::polytope::{self, AffineChart, AffineFunctional, Halfspace, Polytope};
use crate::rational::{self, Rational, Vector};

/// A polytopic state space `K`, kept with both representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    pub label: String,
    body: Polytope,
    chart: AffineChart,
}

impl StateSpace {
    pub fn new(label: impl Into<String>, points: Vec<Vector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidStateSpace("no vertices".into()));
        }
        let body = Polytope::hull(points).map_err(|e| Error::InvalidStateSpace(e.to_string()))?;
        StateSpace::from_polytope(label, body)
    }

    pub fn from_polytope(label: impl Into<String>, body: Polytope) -> Result<Self> {
        let body = body
            .complete()
            .map_err(|e| Error::InvalidStateSpace(e.to_string()))?;
        let chart = body.chart();
        Ok(StateSpace {
            label: label.into(),
            body,
            chart,
        })
    }

    pub fn body(&self) -> &Polytope {
        &self.body
    }

    pub fn chart(&self) -> &AffineChart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.body.ambient_dim
    }

    pub fn affine_dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn vertices(&self) -> &[Vector] {
        self.body.verts()
    }

    pub fn facets(&self) -> &[Halfspace] {
        self.body.halfspaces()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.body.contains(x)
    }

    pub fn is_simplex(&self) -> bool {
        self.body.is_simplex()
    }

    pub fn unit(&self) -> AffineFunctional {
        AffineFunctional::unit(self.dim())
    }

    pub fn zero(&self) -> AffineFunctional {
        AffineFunctional::zero(self.dim())
    }

    /// Values of `f` at the vertices of `K`; these determine `f` on `aff(K)`.
    pub fn values(&self, f: &AffineFunctional) -> Vector {
        self.vertices().iter().map(|v| f.eval(v)).collect()
    }

    pub fn is_effect(&self, f: &AffineFunctional) -> bool {
        f.dim() == self.dim()
            && self
                .values(f)
                .iter()
                .all(|x| !x.is_negative() && *x <= Rational::one())
    }

    pub fn is_nonnegative(&self, f: &AffineFunctional) -> bool {
        f.dim() == self.dim() && self.values(f).iter().all(|x| !x.is_negative())
    }

    /// Equality of functionals on `aff(K)`.
    pub fn same_on(&self, f: &AffineFunctional, g: &AffineFunctional) -> bool {
        self.vertices().iter().all(|v| f.eval(v) == g.eval(v))
    }

    pub fn canonical(&self, f: &AffineFunctional) -> AffineFunctional {
        self.chart.canonical_functional(f)
    }

    /// The affine functional on `aff(K)` taking the given values at the vertices.
    pub fn functional_from_values(&self, values: &[Rational]) -> Option<AffineFunctional> {
        let rows: Vec<Vector> = self
            .vertices()
            .iter()
            .map(|v| {
                let mut r = vec![Rational::one()];
                r.extend(self.chart.project(v));
                r
            })
            .collect();
        let h = linalg::solve(&rows, values)?;
        Some(self.chart.lift_functional(&h[1..], &h[0]))
    }

    /// Affine dependencies among the vertices: vectors `a` with
    /// `sum_v a_v = 0` and `sum_v a_v v = 0`. Vertex values `h` come from an
    /// affine functional iff `a . h = 0` for all of them.
    pub fn affine_dependencies(&self) -> Vec<Vector> {
        let verts = self.vertices();
        let mut rows = vec![vec![Rational::one(); verts.len()]];
        for c in 0..self.dim() {
            rows.push(verts.iter().map(|v| v[c].clone()).collect());
        }
        linalg::nullspace(&rows, verts.len())
    }

    /// The facet functionals `offset - normal . x >= 0` that generate the cone of
    /// nonnegative affine functionals on `K`, together with `1_K`.
    pub fn positive_generators(&self) -> Vec<AffineFunctional> {
        let mut out: BTreeSet<AffineFunctional> = BTreeSet::new();
        for h in self.facets() {
            let f = AffineFunctional::new(h.normal.iter().map(|x| -x).collect(), h.offset.clone());
            let f = self.canonical(&f);
            if self.values(&f).iter().any(|x| !x.is_zero()) {
                out.insert(f);
            }
        }
        out.insert(self.unit());
        out.into_iter().collect()
    }
}

/// The set `E` of allowed effects, given by generators (its V-representation).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EffectRestriction {
    pub generators: Vec<AffineFunctional>,
}

impl EffectRestriction {
    pub fn new(generators: Vec<AffineFunctional>) -> Self {
        EffectRestriction { generators }
    }

    pub fn trivial(dim: usize) -> Self {
        EffectRestriction::new(vec![
            AffineFunctional::zero(dim),
            AffineFunctional::unit(dim),
        ])
    }

    /// Canonical form relative to `K`: generators rewritten on the chart of
    /// `K`, closed under `f -> 1 - f`, with `0_K` and `1_K` included,
    /// deduplicated and sorted with `1_K` first.
    pub fn closed_on(&self, k: &StateSpace) -> Result<Self> {
        let d = k.dim();
        let mut set: BTreeSet<AffineFunctional> = BTreeSet::new();
        for (i, f) in self.generators.iter().enumerate() {
            if f.dim() != d {
                return Err(Error::InvalidEffect(format!(
                    "generator {i} has dimension {} but K has {d}",
                    f.dim()
                )));
            }
            if !k.is_effect(f) {
                return Err(Error::InvalidEffect(format!(
                    "generator {i} leaves [0,1] on a vertex of K"
                )));
            }
            let f = k.canonical(f);
            set.insert(f.complement());
            set.insert(f);
        }
        set.insert(k.zero());
        let unit = k.unit();
        set.remove(&unit);
        let mut generators = vec![unit];
        generators.extend(set);
        Ok(EffectRestriction { generators })
    }

    /// Extreme generators only (drops generators that are convex combinations of others).
    pub fn pruned_on(&self, k: &StateSpace) -> Self {
        let values: Vec<Vector> = self.generators.iter().map(|g| k.values(g)).collect();
        let keep: Vec<AffineFunctional> = self
            .generators
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let others: Vec<Vector> = values
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| j != i)
                    .map(|(_, v)| v.clone())
                    .collect();
                others.is_empty() || lp::convex_combination(&others, &values[*i]).is_none()
            })
            .map(|(_, g)| g.clone())
            .collect();
        EffectRestriction::new(keep)
    }

    /// Convex weights over the generators representing `f` on `K`, if `f` is in `E`.
    pub fn membership(&self, k: &StateSpace, f: &AffineFunctional) -> Option<Vector> {
        let gens: Vec<Vector> = self.generators.iter().map(|g| k.values(g)).collect();
        lp::convex_combination(&gens, &k.values(f))
    }

    pub fn contains(&self, k: &StateSpace, f: &AffineFunctional) -> bool {
        self.membership(k, f).is_some()
    }
}

/// A measurement: effects summing to `1_K`, one per outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measurement {
    pub effects: Vec<AffineFunctional>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

impl Measurement {
    pub fn new(effects: Vec<AffineFunctional>) -> Self {
        let labels = (0..effects.len()).map(|i| i.to_string()).collect();
        Measurement { effects, labels }
    }

    pub fn binary(f: AffineFunctional) -> Self {
        let g = f.complement();
        Measurement::new(vec![f, g])
    }

    pub fn trivial(dim: usize) -> Self {
        Measurement::new(vec![AffineFunctional::unit(dim)])
    }

    pub fn outcomes(&self) -> usize {
        self.effects.len()
    }

    pub fn dim(&self) -> usize {
        self.effects.first().map_or(0, AffineFunctional::dim)
    }

    pub fn validate(&self, k: &StateSpace) -> Result<()> {
        if self.effects.is_empty() {
            return Err(Error::InvalidMeasurement("no outcomes".into()));
        }
        if !self.labels.is_empty() && self.labels.len() != self.effects.len() {
            return Err(Error::InvalidMeasurement(
                "label count differs from outcome count".into(),
            ));
        }
        for (i, f) in self.effects.iter().enumerate() {
            if f.dim() != k.dim() {
                return Err(Error::InvalidMeasurement(format!(
                    "effect {i} has the wrong dimension"
                )));
            }
            if !k.is_effect(f) {
                return Err(Error::InvalidMeasurement(format!(
                    "effect {i} leaves [0,1] on K"
                )));
            }
        }
        let total = AffineFunctional::sum(k.dim(), &self.effects);
        if !k.same_on(&total, &k.unit()) {
            return Err(Error::InvalidMeasurement(
                "effects do not sum to the unit effect".into(),
            ));
        }
        Ok(())
    }

    /// Outcome distribution at a state.
    pub fn probabilities(&self, x: &[Rational]) -> Vector {
        self.effects.iter().map(|f| f.eval(x)).collect()
    }
}

/// A right-stochastic matrix relabelling outcomes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostProcessing {
    #[serde(with = "rational::serde_str::mat")]
    pub matrix: Vec<Vector>,
}

impl PostProcessing {
    pub fn new(matrix: Vec<Vector>) -> Result<Self> {
        let p = PostProcessing { matrix };
        p.validate()?;
        Ok(p)
    }

    pub fn identity(n: usize) -> Self {
        PostProcessing {
            matrix: (0..n).map(|i| rational::unit_vector(n, i)).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let cols = self.matrix.first().map_or(0, Vec::len);
        if cols == 0 {
            return Err(Error::InvalidPostProcessing("empty matrix".into()));
        }
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidPostProcessing(format!(
                    "row {i} has the wrong length"
                )));
            }
            if row.iter().any(Signed::is_negative) {
                return Err(Error::InvalidPostProcessing(format!(
                    "row {i} has a negative entry"
                )));
            }
            if row.iter().sum::<Rational>() != Rational::one() {
                return Err(Error::InvalidPostProcessing(format!(
                    "row {i} does not sum to 1"
                )));
            }
        }
        Ok(())
    }
}

pub fn apply_postprocessing(m: &Measurement, nu: &PostProcessing) -> Result<Measurement> {
    nu.validate()?;
    if nu.matrix.len() != m.outcomes() {
        return Err(Error::Dimension(format!(
            "post-processing has {} rows but the measurement has {} outcomes",
            nu.matrix.len(),
            m.outcomes()
        )));
    }
    let out = nu.matrix[0].len();
    let d = m.dim();
    let effects = (0..out)
        .map(|j| {
            m.effects
                .iter()
                .zip(&nu.matrix)
                .fold(AffineFunctional::zero(d), |acc, (f, row)| {
                    acc.add(&f.scale(&row[j]))
                })
        })
        .collect();
    Ok(Measurement::new(effects))
}

/// `effect(M)`: all subset sums of the effects of each measurement, plus `0` and `1`.
pub fn generate_effect_algebra(dim: usize, ms: &[Measurement]) -> EffectRestriction {
    let mut set: BTreeSet<AffineFunctional> = BTreeSet::new();
    set.insert(AffineFunctional::zero(dim));
    set.insert(AffineFunctional::unit(dim));
    for m in ms {
        let n = m.outcomes();
        assert!(n < 24, "too many outcomes for subset enumeration");
        for mask in 0u32..(1 << n) {
            let f = m
                .effects
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .fold(AffineFunctional::zero(dim), |acc, (_, f)| acc.add(f));
            set.insert(f);
        }
    }
    EffectRestriction::new(set.into_iter().collect())
}

/// `E(K)` as a V-representation of extreme effects.
pub fn effect_polytope(k: &StateSpace) -> EffectRestriction {
    let chart = k.chart();
    let dim = chart.dim();
    // unknowns (c, l) in chart coordinates; 0 <= c + l . y_i <= 1
    let mut facets = Vec::new();
    for v in k.vertices() {
        let mut row = vec![Rational::one()];
        row.extend(chart.project(v));
        facets.push(Halfspace::new(
            row.iter().map(|x| -x).collect(),
            Rational::zero(),
        ));
        facets.push(Halfspace::new(row, Rational::one()));
    }
    let p = Polytope::from_facets(dim + 1, facets).expect("well-formed facets");
    let p = polytope::dd_hrep_to_vrep(&p)
        .expect("the effect polytope of a polytope is bounded and nonempty");
    let mut gens: Vec<AffineFunctional> = p
        .verts()
        .iter()
        .map(|h| chart.lift_functional(&h[1..], &h[0]))
        .collect();
    gens.sort();
    let unit = k.unit();
    gens.retain(|g| *g != unit);
    gens.insert(0, unit);
    EffectRestriction::new(gens)
}

/// `S(E)` in coordinates of a basis of `span(E)` whose first element is `1_K`:
/// a point `z` stands for the functional with `psi(b_0) = 1`, `psi(b_j) = z_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualStateSpace {
    pub body: Polytope,
    pub basis: Vec<AffineFunctional>,
    // coordinates of each generator of E in the basis
    coords: Vec<Vector>,
    // evaluation vectors of the basis on K's vertices
    basis_values: Vec<Vector>,
}

impl DualStateSpace {
    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn vertices(&self) -> &[Vector] {
        self.body.verts()
    }

    pub fn generator_coords(&self) -> &[Vector] {
        &self.coords
    }

    /// Coordinates of `f` (given by its values on K's vertices) in the basis.
    pub fn coords_of_values(&self, values: &[Rational]) -> Option<Vector> {
        let n = values.len();
        let a: Vec<Vector> = (0..n)
            .map(|i| self.basis_values.iter().map(|b| b[i].clone()).collect())
            .collect();
        linalg::solve(&a, values)
    }

    pub fn coords_of(&self, k: &StateSpace, f: &AffineFunctional) -> Option<Vector> {
        self.coords_of_values(&k.values(f))
    }

    /// `psi(f)` for `psi` at point `z` and `f` with basis coordinates `alpha`.
    pub fn pair(z: &[Rational], alpha: &[Rational]) -> Rational {
        &alpha[0] + rational::dot(&alpha[1..], z)
    }

    pub fn contains(&self, z: &[Rational]) -> bool {
        z.len() == self.dim()
            && self
                .coords
                .iter()
                .all(|a| !DualStateSpace::pair(z, a).is_negative())
    }
}

pub fn dual_state_space(k: &StateSpace, e: &EffectRestriction) -> Result<DualStateSpace> {
    let values: Vec<Vector> = e.generators.iter().map(|g| k.values(g)).collect();
    let unit = k.unit();
    let mut order: Vec<usize> = (0..e.generators.len()).collect();
    // 1_K first so that it heads the basis
    order.sort_by_key(|&i| !k.same_on(&e.generators[i], &unit));
    if !order
        .first()
        .is_some_and(|&i| k.same_on(&e.generators[i], &unit))
    {
        return Err(Error::InvalidEffect(
            "E does not contain the unit effect".into(),
        ));
    }
    let ordered: Vec<Vector> = order.iter().map(|&i| values[i].clone()).collect();
    let chosen: Vec<usize> = linalg::independent_subset(&ordered)
        .into_iter()
        .map(|j| order[j])
        .collect();
    let basis: Vec<AffineFunctional> = chosen.iter().map(|&i| e.generators[i].clone()).collect();
    let basis_values: Vec<Vector> = chosen.iter().map(|&i| values[i].clone()).collect();
    let mut dss = DualStateSpace {
        body: Polytope::from_vertices(vec![vec![]])?,
        basis,
        coords: Vec::new(),
        basis_values,
    };
    dss.coords = values
        .iter()
        .map(|v| {
            dss.coords_of_values(v)
                .expect("generators lie in their own span")
        })
        .collect();
    let r = dss.basis.len() - 1;
    dss.body = if r == 0 {
        Polytope::hull(vec![vec![]])?
    } else {
        let facets: Vec<Halfspace> = dss
            .coords
            .iter()
            .filter(|a| !rational::is_zero_vec(a))
            .map(|a| Halfspace::new(a[1..].iter().map(|x| -x).collect(), a[0].clone()))
            .collect();
        polytope::dd_hrep_to_vrep(&Polytope::from_facets(r, facets)?)?
    };
    Ok(dss)
}

/// A restricted theory `(K, E)` with an optional generating measurement set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedTheory {
    pub k: StateSpace,
    pub e: EffectRestriction,
    pub m: Option<Vec<Measurement>>,
}

impl RestrictedTheory {
    pub fn new(k: StateSpace, e: EffectRestriction, m: Option<Vec<Measurement>>) -> Result<Self> {
        let e = e.closed_on(&k)?;
        if let Some(ms) = &m {
            for (mi, meas) in ms.iter().enumerate() {
                meas.validate(&k)?;
                for (fi, f) in meas.effects.iter().enumerate() {
                    if !e.contains(&k, f) {
                        return Err(Error::NotInRestriction {
                            measurement: mi,
                            effect: fi,
                        });
                    }
                }
            }
        }
        Ok(RestrictedTheory { k, e, m })
    }

    /// `(K, effect(M))` with `M` as the generating set.
    pub fn from_measurements(k: StateSpace, ms: Vec<Measurement>) -> Result<Self> {
        for m in &ms {
            m.validate(&k)?;
        }
        let e = generate_effect_algebra(k.dim(), &ms);
        RestrictedTheory::new(k, e, Some(ms))
    }

    /// `(K, E(K))`.
    pub fn unrestricted(k: StateSpace) -> Result<Self> {
        let e = effect_polytope(&k);
        RestrictedTheory::new(k, e, None)
    }

    pub fn dual_state_space(&self) -> Result<DualStateSpace> {
        dual_state_space(&self.k, &self.e)
    }

    /// `Phi(rho)`: the point of `S(E)` evaluating every effect as `rho` does.
    pub fn evaluation_channel(&self, dss: &DualStateSpace, rho: &[Rational]) -> Result<Vector> {
        if rho.len() != self.k.dim() || !self.k.contains(rho) {
            return Err(Error::InvalidState("state is not in K".into()));
        }
        Ok(dss.basis[1..].iter().map(|b| b.eval(rho)).collect())
    }

    pub fn is_tomographically_complete(&self) -> bool {
        let verts = self.k.vertices();
        let rows: Vec<Vector> = self
            .e
            .generators
            .iter()
            .map(|f| {
                let f0 = f.eval(&verts[0]);
                verts[1..].iter().map(|v| f.eval(v) - &f0).collect()
            })
            .collect();
        linalg::rank(&rows) == self.k.affine_dim()
    }

    pub fn measurements(&self) -> Result<&[Measurement]> {
        self.m.as_deref().ok_or(Error::MissingMeasurements)
    }
}

/// Outcome probabilities of `m` at a point of `S(E)`.
pub fn probabilities_on_dual(
    dss: &DualStateSpace,
    k: &StateSpace,
    m: &Measurement,
    z: &[Rational],
) -> Result<Vector> {
    m.effects
        .iter()
        .map(|f| {
            dss.coords_of(k, f)
                .map(|a| DualStateSpace::pair(z, &a))
                .ok_or_else(|| Error::InvalidEffect("effect outside span(E)".into()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
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

    fn segment() -> StateSpace {
        StateSpace::new("segment", vec![ints(&[0]), ints(&[1])]).unwrap()
    }

    fn face(axis: usize, sign: i64) -> AffineFunctional {
        let mut l = rational::zeros(2);
        l[axis] = frac(sign, 2);
        AffineFunctional::new(l, frac(1, 2))
    }

    #[test]
    fn segment_effects() {
        let e = effect_polytope(&segment());
        assert_eq!(e.generators.len(), 4);
    }

    #[test]
    fn square_has_six_extreme_effects() {
        let k = square();
        let e = effect_polytope(&k);
        assert_eq!(e.generators.len(), 6);
        for axis in 0..2 {
            for s in [-1, 1] {
                assert!(e.generators.contains(&face(axis, s)));
            }
        }
    }

    #[test]
    fn triangle_effects_are_subset_sums() {
        let k = StateSpace::new(
            "triangle",
            vec![ints(&[0, 0]), ints(&[1, 0]), ints(&[0, 1])],
        )
        .unwrap();
        let e = effect_polytope(&k);
        assert_eq!(e.generators.len(), 8);
        let vals: BTreeSet<Vector> = e.generators.iter().map(|g| k.values(g)).collect();
        for mask in 0..8 {
            let v: Vector = (0..3).map(|i| int((mask >> i) & 1)).collect();
            assert!(vals.contains(&v));
        }
    }

    #[test]
    fn no_restriction_dual_is_square() {
        let t = RestrictedTheory::unrestricted(square()).unwrap();
        let dss = t.dual_state_space().unwrap();
        assert_eq!(dss.vertices().len(), 4);
        assert!(!dss.body.is_simplex());
        assert!(t.is_tomographically_complete());
    }

    #[test]
    fn trivial_restriction_gives_point() {
        let k = square();
        let t = RestrictedTheory::new(k, EffectRestriction::trivial(2), None).unwrap();
        let dss = t.dual_state_space().unwrap();
        assert_eq!(dss.dim(), 0);
        assert_eq!(dss.vertices().len(), 1);
        assert!(!t.is_tomographically_complete());
    }

    #[test]
    fn postprocessing_examples() {
        let m = Measurement::binary(face(0, 1));
        assert_eq!(
            apply_postprocessing(&m, &PostProcessing::identity(2)).unwrap(),
            m
        );
        let coarse = PostProcessing::new(vec![ints(&[1]), ints(&[1])]).unwrap();
        let t = apply_postprocessing(&m, &coarse).unwrap();
        assert_eq!(t.effects, vec![AffineFunctional::unit(2)]);
        let flip = PostProcessing::new(vec![ints(&[0, 1]), ints(&[1, 0])]).unwrap();
        let f = apply_postprocessing(&m, &flip).unwrap();
        assert_eq!(f.effects[0], m.effects[1]);
        assert_eq!(f.effects[1], m.effects[0]);
        assert!(PostProcessing::new(vec![vec![frac(1, 2), frac(1, 3)]]).is_err());
        assert!(apply_postprocessing(&m, &PostProcessing::identity(3)).is_err());
    }

    #[test]
    fn effect_algebra_of_binary_measurement() {
        let f = face(0, 1);
        let e = generate_effect_algebra(2, &[Measurement::binary(f.clone())]);
        assert_eq!(e.generators.len(), 4);
        assert!(e.generators.contains(&f.complement()));
        let e = generate_effect_algebra(2, &[Measurement::trivial(2)]);
        assert_eq!(e.generators.len(), 2);
    }

    #[test]
    fn measurement_outside_restriction_is_rejected() {
        let k = square();
        let m = Measurement::binary(face(0, 1));
        let err =
            RestrictedTheory::new(k, EffectRestriction::trivial(2), Some(vec![m])).unwrap_err();
        assert_eq!(
            err,
            Error::NotInRestriction {
                measurement: 0,
                effect: 0
            }
        );
    }

    #[test]
    fn channel_reproduces_probabilities() {
        let k = square();
        let m = Measurement::binary(face(1, -1));
        let t = RestrictedTheory::from_measurements(k, vec![m.clone()]).unwrap();
        let dss = t.dual_state_space().unwrap();
        let rho = vec![frac(1, 3), frac(-1, 5)];
        let z = t.evaluation_channel(&dss, &rho).unwrap();
        assert!(dss.contains(&z));
        assert_eq!(
            probabilities_on_dual(&dss, &t.k, &m, &z).unwrap(),
            m.probabilities(&rho)
        );
        assert!(t.evaluation_channel(&dss, &ints(&[2, 0])).is_err());
    }
}
