//! Tensor products of polytopic state spaces and bipartite states.
//!
//! A bipartite state is a `(dA+1) x (dB+1)` matrix `T` in homogeneous
//! coordinates: a product state `a (x) b` is `(1, a)(1, b)^T`, and the value of
//! `f (x) g` is `f^T T g` with functionals written as `(constant, linear...)`.
//! `T[0][0] = 1` is the normalization.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gpt::{Measurement, StateSpace};
use crate::linalg::{self, Matrix};
use crate::lp;
use crate::polytope::{self, AffineFunctional, Halfspace, Polytope};
use crate::rational::{self, Rational, Vector};

pub fn homogenize(x: &[Rational]) -> Vector {
    let mut h = Vec::with_capacity(x.len() + 1);
    h.push(Rational::one());
    h.extend(x.iter().cloned());
    h
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteState {
    pub tensor: Matrix,
}

impl BipartiteState {
    pub fn new(tensor: Matrix) -> Result<Self> {
        if tensor.nrows() == 0 || tensor.ncols() == 0 {
            return Err(Error::InvalidState("empty tensor".into()));
        }
        if !tensor.get(0, 0).is_one() {
            return Err(Error::InvalidState(
                "tensor is not normalized: (1 x 1)(rho) != 1".into(),
            ));
        }
        Ok(BipartiteState { tensor })
    }

    pub fn product(a: &[Rational], b: &[Rational]) -> Self {
        BipartiteState {
            tensor: Matrix::outer(&homogenize(a), &homogenize(b)),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.tensor.nrows() - 1, self.tensor.ncols() - 1)
    }

    /// `(f (x) g)(rho)`
    pub fn evaluate(&self, f: &AffineFunctional, g: &AffineFunctional) -> Rational {
        self.tensor.bilinear(&f.homogeneous(), &g.homogeneous())
    }

    pub fn reduced(&self, side: Side) -> Vector {
        let (da, db) = self.dims();
        let unit = match side {
            Side::A => AffineFunctional::unit(db),
            Side::B => AffineFunctional::unit(da),
        };
        let other = match side {
            Side::A => Side::B,
            Side::B => Side::A,
        };
        partial_apply_effect(self, &unit, other).expect("unit has the right dimension")[1..]
            .to_vec()
    }

    pub fn mix(states: &[(Rational, &BipartiteState)]) -> Result<BipartiteState> {
        let (first_w, first) = states
            .first()
            .ok_or_else(|| Error::InvalidState("empty mixture".into()))?;
        let mut t = first.tensor.scaled(first_w);
        for (w, s) in &states[1..] {
            t = t.add(&s.tensor.scaled(w))?;
        }
        BipartiteState::new(t)
    }

    /// Flattened coordinates without the fixed normalization entry.
    pub fn coordinates(&self) -> Vector {
        self.tensor.flatten()[1..].to_vec()
    }

    pub fn from_coordinates(da: usize, db: usize, x: &[Rational]) -> Result<Self> {
        let mut flat = vec![Rational::one()];
        flat.extend(x.iter().cloned());
        BipartiteState::new(Matrix::from_flat(da + 1, db + 1, &flat)?)
    }
}

/// `(f (x) id)(rho)` for `side = A`, `(id (x) f)(rho)` for `side = B`,
/// as a homogeneous vector on the other side whose first entry is the weight.
pub fn partial_apply_effect(
    rho: &BipartiteState,
    f: &AffineFunctional,
    side: Side,
) -> Result<Vector> {
    let (da, db) = rho.dims();
    match side {
        Side::A if f.dim() == da => Ok(rho.tensor.apply_left(&f.homogeneous())),
        Side::B if f.dim() == db => Ok(rho.tensor.apply(&f.homogeneous())),
        _ => Err(Error::Dimension(format!(
            "effect of dimension {} applied on side {side:?} of a {da} x {db} state",
            f.dim()
        ))),
    }
}

/// The normalized conditional state, or `None` when the weight vanishes.
pub fn conditioned(v: &[Rational]) -> Option<Vector> {
    if v[0].is_zero() {
        return None;
    }
    Some(v[1..].iter().map(|x| x / &v[0]).collect())
}

pub fn chsh_value(
    rho: &BipartiteState,
    a1: &Measurement,
    a2: &Measurement,
    b1: &Measurement,
    b2: &Measurement,
) -> Result<Rational> {
    for m in [a1, a2, b1, b2] {
        if m.outcomes() != 2 {
            return Err(Error::InvalidMeasurement(
                "CHSH needs binary measurements".into(),
            ));
        }
    }
    let corr = |a: &Measurement, b: &Measurement| -> Rational {
        let mut e = Rational::zero();
        for (i, f) in a.effects.iter().enumerate() {
            for (j, g) in b.effects.iter().enumerate() {
                let p = rho.evaluate(f, g);
                if i == j {
                    e += p;
                } else {
                    e -= p;
                }
            }
        }
        e
    };
    Ok(corr(a1, b1) + corr(a1, b2) + corr(a2, b1) - corr(a2, b2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorKind {
    Minimal,
    Maximal,
}

/// A tensor product body in the flattened coordinates of [`BipartiteState::coordinates`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorProductSpace {
    pub kind: TensorKind,
    pub dims: (usize, usize),
    pub body: Polytope,
}

impl TensorProductSpace {
    pub fn contains(&self, rho: &BipartiteState) -> bool {
        if rho.dims() != self.dims {
            return false;
        }
        let x = rho.coordinates();
        match self.body.facets() {
            Some(_) => self.body.contains(&x),
            None => self.body.convex_weights(&x).is_some(),
        }
    }

    pub fn complete(&self) -> Result<TensorProductSpace> {
        Ok(TensorProductSpace {
            kind: self.kind,
            dims: self.dims,
            body: self.body.complete()?,
        })
    }

    pub fn vertex_states(&self) -> Result<Vec<BipartiteState>> {
        let c = self.body.complete()?;
        c.verts()
            .iter()
            .map(|x| BipartiteState::from_coordinates(self.dims.0, self.dims.1, x))
            .collect()
    }

    pub fn same_set(&self, other: &TensorProductSpace) -> Result<bool> {
        Ok(self.dims == other.dims && self.body.same_set(&other.body)?)
    }
}

pub fn minimal_tensor(ka: &StateSpace, kb: &StateSpace) -> TensorProductSpace {
    let mut verts: Vec<Vector> = Vec::new();
    for a in ka.vertices() {
        for b in kb.vertices() {
            verts.push(BipartiteState::product(a, b).coordinates());
        }
    }
    verts.sort();
    verts.dedup();
    TensorProductSpace {
        kind: TensorKind::Minimal,
        dims: (ka.dim(), kb.dim()),
        body: Polytope::from_vertices(verts).expect("state spaces are nonempty"),
    }
}

/// Homogeneous annihilators of `span{(1, v)}` over the vertices.
fn annihilators(k: &StateSpace) -> Vec<Vector> {
    let rows: Vec<Vector> = k.vertices().iter().map(|v| homogenize(v)).collect();
    linalg::nullspace(&rows, k.dim() + 1)
}

/// Linear functionals on the flattened coordinates: `(coeffs, constant)` with
/// value `coeffs . x + constant`, representing `T -> u^T T w`.
fn bilinear_row(u: &[Rational], w: &[Rational]) -> (Vector, Rational) {
    let full = Matrix::outer(u, w).flatten();
    (full[1..].to_vec(), full[0].clone())
}

pub fn maximal_tensor(ka: &StateSpace, kb: &StateSpace) -> TensorProductSpace {
    let fa: Vec<Vector> = ka
        .positive_generators()
        .iter()
        .map(AffineFunctional::homogeneous)
        .collect();
    let fb: Vec<Vector> = kb
        .positive_generators()
        .iter()
        .map(AffineFunctional::homogeneous)
        .collect();
    let mut facets = Vec::new();
    for u in &fa {
        for w in &fb {
            // u^T T w >= 0  <=>  -coeffs . x <= constant
            let (c, k) = bilinear_row(u, w);
            facets.push(Halfspace::new(c.iter().map(|x| -x).collect(), k));
        }
    }
    let mut push_eq = |c: Vector, k: Rational| {
        facets.push(Halfspace::new(c.iter().map(|x| -x).collect(), k.clone()));
        facets.push(Halfspace::new(c, -k));
    };
    let (da, db) = (ka.dim(), kb.dim());
    for n in annihilators(ka) {
        for j in 0..=db {
            let (c, k) = bilinear_row(&n, &rational::unit_vector(db + 1, j));
            push_eq(c, k);
        }
    }
    for n in annihilators(kb) {
        for i in 0..=da {
            let (c, k) = bilinear_row(&rational::unit_vector(da + 1, i), &n);
            push_eq(c, k);
        }
    }
    TensorProductSpace {
        kind: TensorKind::Maximal,
        dims: (da, db),
        body: Polytope::from_facets((da + 1) * (db + 1) - 1, facets)
            .expect("consistent dimensions"),
    }
}

/// Direct check of maximal tensor product membership, without vertex enumeration.
pub fn in_maximal(ka: &StateSpace, kb: &StateSpace, rho: &BipartiteState) -> bool {
    if rho.dims() != (ka.dim(), kb.dim()) {
        return false;
    }
    let t = &rho.tensor;
    let na = annihilators(ka);
    let nb = annihilators(kb);
    if na.iter().any(|n| !rational::is_zero_vec(&t.apply_left(n)))
        || nb.iter().any(|n| !rational::is_zero_vec(&t.apply(n)))
    {
        return false;
    }
    let gb = kb.positive_generators();
    ka.positive_generators().iter().all(|f| {
        let row = t.apply_left(&f.homogeneous());
        gb.iter()
            .all(|g| !rational::dot(&row, &g.homogeneous()).is_negative())
    })
}

/// Convex weights over product vertices, if the state is separable.
pub fn in_minimal(ka: &StateSpace, kb: &StateSpace, rho: &BipartiteState) -> Option<Vector> {
    if rho.dims() != (ka.dim(), kb.dim()) {
        return None;
    }
    let mut verts = Vec::new();
    for a in ka.vertices() {
        for b in kb.vertices() {
            verts.push(BipartiteState::product(a, b).coordinates());
        }
    }
    lp::convex_combination(&verts, &rho.coordinates())
}

/// A point set given as an explicit polytope in flattened coordinates.
pub fn explicit_tensor(dims: (usize, usize), body: Polytope) -> Result<TensorProductSpace> {
    if body.ambient_dim != (dims.0 + 1) * (dims.1 + 1) - 1 {
        return Err(Error::Dimension(
            "explicit ambient has the wrong dimension".into(),
        ));
    }
    Ok(TensorProductSpace {
        kind: TensorKind::Maximal,
        dims,
        body: polytope::dd_vrep_to_hrep(&body.complete()?)?,
    })
}
