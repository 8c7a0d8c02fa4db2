//! Polytopes with exact vertex and facet representations.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dd;
use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{self, LpProblem, LpStatus, Relation};
use crate::rational::{self, Rational, Vector};

/// `normal . x <= offset`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Halfspace {
    #[serde(with = "rational::serde_str::vec")]
    pub normal: Vector,
    #[serde(with = "rational::serde_str")]
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: Vector, offset: Rational) -> Self {
        Halfspace { normal, offset }
    }

    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.offset - rational::dot(&self.normal, x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.slack(x).is_zero()
    }

    // Scale to a primitive integer row so equal halfspaces compare equal.
    fn normalized(&self) -> Halfspace {
        let mut v = self.normal.clone();
        v.push(self.offset.clone());
        let p = rational::from_integers(&rational::primitive_integer(&v));
        let offset = p[p.len() - 1].clone();
        Halfspace {
            normal: p[..p.len() - 1].to_vec(),
            offset,
        }
    }
}

/// An affine functional `x -> linear . x + constant`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AffineFunctional {
    #[serde(with = "rational::serde_str::vec")]
    pub linear: Vector,
    #[serde(with = "rational::serde_str")]
    pub constant: Rational,
}

impl AffineFunctional {
    pub fn new(linear: Vector, constant: Rational) -> Self {
        AffineFunctional { linear, constant }
    }

    pub fn zero(dim: usize) -> Self {
        AffineFunctional::new(rational::zeros(dim), Rational::zero())
    }

    pub fn unit(dim: usize) -> Self {
        AffineFunctional::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        AffineFunctional::new(rational::zeros(dim), c)
    }

    /// Homogeneous coordinates `(constant, linear...)`.
    pub fn from_homogeneous(h: &[Rational]) -> Self {
        AffineFunctional::new(h[1..].to_vec(), h[0].clone())
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        rational::dot(&self.linear, x) + &self.constant
    }

    pub fn homogeneous(&self) -> Vector {
        let mut h = Vec::with_capacity(self.linear.len() + 1);
        h.push(self.constant.clone());
        h.extend(self.linear.iter().cloned());
        h
    }

    pub fn add(&self, other: &AffineFunctional) -> AffineFunctional {
        AffineFunctional::new(
            rational::add(&self.linear, &other.linear),
            &self.constant + &other.constant,
        )
    }

    pub fn sub(&self, other: &AffineFunctional) -> AffineFunctional {
        AffineFunctional::new(
            rational::sub(&self.linear, &other.linear),
            &self.constant - &other.constant,
        )
    }

    pub fn scale(&self, s: &Rational) -> AffineFunctional {
        AffineFunctional::new(rational::scale(&self.linear, s), &self.constant * s)
    }

    pub fn complement(&self) -> AffineFunctional {
        AffineFunctional::unit(self.dim()).sub(self)
    }

    pub fn sum<'a>(
        dim: usize,
        fs: impl IntoIterator<Item = &'a AffineFunctional>,
    ) -> AffineFunctional {
        fs.into_iter()
            .fold(AffineFunctional::zero(dim), |acc, f| acc.add(f))
    }
}

/// Affine coordinates on the affine hull of a point set.
///
/// The hull is parametrized by the pivot coordinates of the row-reduced
/// difference vectors; every other coordinate is an affine function of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineChart {
    ambient: usize,
    origin: Vector,
    pivots: Vec<usize>,
    // reduced rows of the direction space; row j has a 1 at pivots[j]
    directions: Vec<Vector>,
}

impl AffineChart {
    pub fn from_points(points: &[Vector]) -> Result<Self> {
        let origin = points.first().ok_or(Error::EmptyPolytope)?.clone();
        let ambient = origin.len();
        if points.iter().any(|p| p.len() != ambient) {
            return Err(Error::Dimension("points of different dimensions".into()));
        }
        let diffs: Vec<Vector> = points[1..]
            .iter()
            .map(|p| rational::sub(p, &origin))
            .collect();
        let (directions, pivots) = linalg::rref(&diffs);
        Ok(AffineChart {
            ambient,
            origin,
            pivots,
            directions,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn project(&self, x: &[Rational]) -> Vector {
        self.pivots.iter().map(|&p| x[p].clone()).collect()
    }

    pub fn lift(&self, y: &[Rational]) -> Vector {
        let mut x = self.origin.clone();
        for ((row, &p), yj) in self.directions.iter().zip(&self.pivots).zip(y) {
            let t = yj - &self.origin[p];
            rational::axpy(&mut x, &t, row);
        }
        x
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.ambient && self.lift(&self.project(x)) == x
    }

    /// Equations `normal . x = offset` cutting out the affine hull.
    pub fn equations(&self) -> Vec<(Vector, Rational)> {
        (0..self.ambient)
            .filter(|q| !self.pivots.contains(q))
            .map(|q| {
                let mut normal = rational::zeros(self.ambient);
                normal[q] = Rational::one();
                let mut offset = self.origin[q].clone();
                for (row, &p) in self.directions.iter().zip(&self.pivots) {
                    normal[p] -= &row[q];
                    offset -= &self.origin[p] * &row[q];
                }
                (normal, offset)
            })
            .collect()
    }

    /// Extend a functional given in chart coordinates to the ambient space,
    /// supported on the pivot coordinates only.
    pub fn lift_functional(&self, linear: &[Rational], constant: &Rational) -> AffineFunctional {
        let mut l = rational::zeros(self.ambient);
        for (&p, v) in self.pivots.iter().zip(linear) {
            l[p] = v.clone();
        }
        AffineFunctional::new(l, constant.clone())
    }

    /// Rewrite an ambient functional so that it only uses pivot coordinates,
    /// without changing its values on the affine hull.
    pub fn canonical_functional(&self, f: &AffineFunctional) -> AffineFunctional {
        let mut linear = rational::zeros(self.dim());
        let mut constant = f.constant.clone();
        for (j, &p) in self.pivots.iter().enumerate() {
            linear[j] += &f.linear[p];
        }
        for (normal, offset) in self.equations() {
            // x_q = offset - sum_{pivots} normal_p x_p on the hull
            let q = (0..self.ambient)
                .find(|&q| !self.pivots.contains(&q) && normal[q].is_one())
                .expect("equation has a unit non-pivot entry");
            let c = &f.linear[q];
            if c.is_zero() {
                continue;
            }
            constant += c * &offset;
            for (j, &p) in self.pivots.iter().enumerate() {
                linear[j] -= c * &normal[p];
            }
        }
        self.lift_functional(&linear, &constant)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepStatus {
    VertexOnly,
    FacetOnly,
    Both,
}

/// A bounded convex polytope in `R^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polytope {
    pub ambient_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_points")]
    vertices: Option<Vec<Vector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    facets: Option<Vec<Halfspace>>,
}

mod opt_points {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wire(#[serde(with = "rational::serde_str::mat")] Vec<Vector>);

    pub fn serialize<S: Serializer>(
        v: &Option<Vec<Vector>>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        v.as_ref().map(|p| Wire(p.clone())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Vec<Vector>>, D::Error> {
        Ok(Option::<Wire>::deserialize(d)?.map(|w| w.0))
    }
}

impl Polytope {
    pub fn from_vertices(vertices: Vec<Vector>) -> Result<Self> {
        let ambient_dim = vertices.first().ok_or(Error::EmptyPolytope)?.len();
        if vertices.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::Dimension("vertices of different dimensions".into()));
        }
        Ok(Polytope {
            ambient_dim,
            vertices: Some(vertices),
            facets: None,
        })
    }

    pub fn from_facets(ambient_dim: usize, facets: Vec<Halfspace>) -> Result<Self> {
        if facets.iter().any(|h| h.normal.len() != ambient_dim) {
            return Err(Error::Dimension("facet normals of wrong dimension".into()));
        }
        Ok(Polytope {
            ambient_dim,
            vertices: None,
            facets: Some(facets),
        })
    }

    /// Build from points and compute both representations.
    pub fn hull(points: Vec<Vector>) -> Result<Self> {
        dd_vrep_to_hrep(&Polytope::from_vertices(points)?)
    }

    pub fn rep_status(&self) -> RepStatus {
        match (&self.vertices, &self.facets) {
            (Some(_), Some(_)) => RepStatus::Both,
            (Some(_), None) => RepStatus::VertexOnly,
            _ => RepStatus::FacetOnly,
        }
    }

    pub fn vertices(&self) -> Option<&[Vector]> {
        self.vertices.as_deref()
    }

    pub fn facets(&self) -> Option<&[Halfspace]> {
        self.facets.as_deref()
    }

    /// Make both representations available.
    pub fn complete(&self) -> Result<Polytope> {
        match self.rep_status() {
            RepStatus::Both => Ok(self.clone()),
            RepStatus::VertexOnly => dd_vrep_to_hrep(self),
            RepStatus::FacetOnly => dd_hrep_to_vrep(self),
        }
    }

    /// Vertex list, panicking if only the H-representation is present.
    pub fn verts(&self) -> &[Vector] {
        self.vertices
            .as_deref()
            .expect("vertex representation not computed")
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        self.facets
            .as_deref()
            .expect("facet representation not computed")
    }

    pub fn affine_dim(&self) -> usize {
        match &self.vertices {
            Some(v) => AffineChart::from_points(v).map_or(0, |c| c.dim()),
            None => self.complete().map_or(0, |p| p.affine_dim()),
        }
    }

    pub fn chart(&self) -> AffineChart {
        AffineChart::from_points(self.verts()).expect("polytope has vertices")
    }

    /// Membership via the H-representation.
    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.ambient_dim && self.halfspaces().iter().all(|h| h.contains(x))
    }

    /// Membership via an LP over the vertices, returning the convex weights.
    pub fn convex_weights(&self, x: &[Rational]) -> Option<Vector> {
        if x.len() != self.ambient_dim {
            return None;
        }
        lp::convex_combination(self.verts(), x)
    }

    pub fn is_simplex(&self) -> bool {
        linalg::is_affinely_independent(self.verts())
    }

    /// Equality as point sets (vertex sets compared after canonical sorting).
    pub fn same_set(&self, other: &Polytope) -> Result<bool> {
        if self.ambient_dim != other.ambient_dim {
            return Ok(false);
        }
        let a = self.complete()?;
        let b = other.complete()?;
        let va: BTreeSet<&Vector> = a.verts().iter().collect();
        let vb: BTreeSet<&Vector> = b.verts().iter().collect();
        Ok(va == vb)
    }
}

fn dedup_points(points: &[Vector]) -> Vec<Vector> {
    let set: BTreeSet<Vector> = points.iter().cloned().collect();
    set.into_iter().collect()
}

/// Facets of the convex hull of the points in chart coordinates, as
/// homogeneous integer rows `(w0, w)` meaning `w0 + w . y >= 0`.
fn chart_facets(ys: &[Vector], k: usize) -> Result<Vec<Vec<BigInt>>> {
    let rows: Vec<Vector> = ys
        .iter()
        .map(|y| {
            let mut r = Vec::with_capacity(k + 1);
            r.push(Rational::one());
            r.extend(y.iter().cloned());
            r
        })
        .collect();
    let rays = dd::extreme_rays(&rows)?;
    Ok(rays
        .into_iter()
        .filter(|w| w[1..].iter().any(|x| !x.is_zero()))
        .collect())
}

/// V-representation to H-representation.
///
/// The vertex list is pruned to the extreme points; equations of the affine
/// hull appear as pairs of opposite inequalities.
pub fn dd_vrep_to_hrep(p: &Polytope) -> Result<Polytope> {
    let pts = p.vertices().ok_or(Error::EmptyPolytope)?;
    if pts.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let pts = dedup_points(pts);
    let chart = AffineChart::from_points(&pts)?;
    let d = chart.ambient_dim();
    let k = chart.dim();
    let mut facets: Vec<Halfspace> = Vec::new();
    for (normal, offset) in chart.equations() {
        let h = Halfspace::new(normal, offset).normalized();
        facets.push(Halfspace::new(
            h.normal.iter().map(|x| -x).collect(),
            -h.offset.clone(),
        ));
        facets.push(h);
    }
    let vertices = if k == 0 {
        vec![pts[0].clone()]
    } else {
        let ys: Vec<Vector> = pts.iter().map(|x| chart.project(x)).collect();
        let mut tight_normals: Vec<Vec<Vector>> = vec![Vec::new(); pts.len()];
        for w in chart_facets(&ys, k)? {
            let w = rational::from_integers(&w);
            // w0 + w'.y >= 0  <=>  -w'.y <= w0
            let lin: Vector = w[1..].iter().map(|x| -x).collect();
            let h = Halfspace::new(lin.clone(), w[0].clone());
            for (i, y) in ys.iter().enumerate() {
                if h.is_tight(y) {
                    tight_normals[i].push(lin.clone());
                }
            }
            let mut normal = rational::zeros(d);
            for (&piv, v) in chart.pivots().iter().zip(&lin) {
                normal[piv] = v.clone();
            }
            facets.push(Halfspace::new(normal, w[0].clone()).normalized());
        }
        pts.iter()
            .zip(&tight_normals)
            .filter(|(_, tn)| linalg::rank(tn) == k)
            .map(|(x, _)| x.clone())
            .collect()
    };
    facets.sort();
    facets.dedup();
    Ok(Polytope {
        ambient_dim: d,
        vertices: Some(vertices),
        facets: Some(facets),
    })
}

/// H-representation to V-representation. Errors on unbounded or empty regions.
pub fn dd_hrep_to_vrep(p: &Polytope) -> Result<Polytope> {
    let facets = p.facets().ok_or(Error::Infeasible)?;
    let d = p.ambient_dim;
    let mut rows: Vec<Vector> = facets
        .iter()
        .map(|h| {
            let mut r = Vec::with_capacity(d + 1);
            r.push(h.offset.clone());
            r.extend(h.normal.iter().map(|x| -x));
            r
        })
        .collect();
    rows.push(rational::unit_vector(d + 1, 0));
    let rays = match dd::extreme_rays(&rows) {
        Ok(r) => r,
        Err(Error::Unbounded) => {
            return Err(if feasible(facets, d) {
                Error::Unbounded
            } else {
                Error::Infeasible
            })
        }
        Err(e) => return Err(e),
    };
    let mut vertices = Vec::new();
    let mut recession = false;
    for r in &rays {
        if r[0].is_positive() {
            let t = Rational::from_integer(r[0].clone());
            vertices.push(
                r[1..]
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()) / &t)
                    .collect(),
            );
        } else {
            recession = true;
        }
    }
    if vertices.is_empty() {
        return Err(Error::Infeasible);
    }
    if recession {
        return Err(Error::Unbounded);
    }
    dd_vrep_to_hrep(&Polytope::from_vertices(vertices)?)
}

fn feasible(facets: &[Halfspace], d: usize) -> bool {
    let mut lp = LpProblem::new(d);
    for j in 0..d {
        lp.set_free(j);
    }
    for h in facets {
        lp.add_constraint(h.normal.clone(), Relation::Le, h.offset.clone());
    }
    lp.solve().status != LpStatus::Infeasible
}

/// Membership of a rational point in the convex hull of `points`, exact.
pub fn in_hull(points: &[Vector], x: &[Rational]) -> bool {
    lp::convex_combination(points, x).is_some()
}
