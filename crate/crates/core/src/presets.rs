//! Named theories and scenarios.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bipartite::BipartiteState;
use crate::error::{Error, Result};
use crate::gpt::{self, Measurement, RestrictedTheory, StateSpace};
use crate::linalg::Matrix;
use crate::polytope::{AffineFunctional, Halfspace, Polytope};
use crate::rational::{self, frac, int, ints, Rational, Vector};
use crate::steering::{self, Ambient, SteeringScenario};

pub fn square() -> StateSpace {
    StateSpace::new(
        "square",
        vec![
            ints(&[1, 1]),
            ints(&[1, -1]),
            ints(&[-1, 1]),
            ints(&[-1, -1]),
        ],
    )
    .expect("square")
}

pub fn diamond() -> StateSpace {
    StateSpace::new(
        "diamond",
        vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[-1, 0]), ints(&[0, -1])],
    )
    .expect("diamond")
}

pub fn pentagon() -> StateSpace {
    StateSpace::new(
        "pentagon",
        vec![
            ints(&[0, 0]),
            ints(&[2, 0]),
            ints(&[3, 2]),
            ints(&[1, 3]),
            ints(&[-1, 2]),
        ],
    )
    .expect("pentagon")
}

/// The simplex with `n` vertices: `0, e_1, ..., e_{n-1}`.
pub fn simplex(n: usize) -> Result<StateSpace> {
    if n == 0 {
        return Err(Error::UnknownPreset("simplex(0)".into()));
    }
    let d = n - 1;
    let mut v = vec![rational::zeros(d)];
    v.extend((0..d).map(|i| rational::unit_vector(d, i)));
    StateSpace::new(format!("simplex({n})"), v)
}

/// The regular tetrahedron with vertices `(1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1)`.
pub fn tetrahedron() -> StateSpace {
    StateSpace::new(
        "tetrahedron",
        vec![
            ints(&[1, 1, 1]),
            ints(&[1, -1, -1]),
            ints(&[-1, 1, -1]),
            ints(&[-1, -1, 1]),
        ],
    )
    .expect("tetrahedron")
}

/// Face measurements `(1 +- x_i)/2` for each coordinate.
pub fn face_measurements(d: usize) -> Vec<Measurement> {
    (0..d)
        .map(|i| {
            let mut l = rational::zeros(d);
            l[i] = frac(1, 2);
            Measurement::binary(AffineFunctional::new(l, frac(1, 2)))
        })
        .collect()
}

/// Binary measurements `{g, 1 - g}` for the nontrivial extreme effects `g` of `E(K)`,
/// one per complementary pair. Their subset sums generate `E(K)`.
pub fn extreme_binary_measurements(k: &StateSpace) -> Vec<Measurement> {
    let e = gpt::effect_polytope(k);
    let mut seen: BTreeSet<Vector> = BTreeSet::new();
    let mut out = Vec::new();
    for g in &e.generators {
        let v = k.values(g);
        if v.iter().all(Zero::is_zero) || v.iter().all(One::is_one) {
            continue;
        }
        let c = k.values(&g.complement());
        if seen.contains(&c) {
            continue;
        }
        seen.insert(v);
        out.push(Measurement::binary(g.clone()));
    }
    out
}

/// `(K, E(K))` with the extreme binary measurements as generating set.
pub fn unrestricted(k: StateSpace) -> Result<RestrictedTheory> {
    let ms = extreme_binary_measurements(&k);
    let t = RestrictedTheory::from_measurements(k, ms)?;
    Ok(t)
}

/// Inner diamond inside the square `[-1,1]^2`; `E` is generated by the two
/// face measurements of the outer square.
pub fn square_in_square() -> RestrictedTheory {
    RestrictedTheory::from_measurements(diamond(), face_measurements(2)).expect("valid preset")
}

/// Rational point on the unit circle from the half-angle tangent `t`
/// (`None` is the point at infinity, `(-1, 0)`).
pub fn circle_point(t: Option<&Rational>) -> Vector {
    match t {
        None => ints(&[-1, 0]),
        Some(t) => {
            let t2 = t * t;
            let den = Rational::one() + &t2;
            vec![(Rational::one() - &t2) / &den, (t * int(2)) / &den]
        }
    }
}

/// Vertices of a rational polygon inscribed in the unit circle, close to regular.
pub fn ngon_points(n: usize) -> Vec<Vector> {
    (0..n)
        .map(|k| {
            if 2 * k == n {
                return circle_point(None);
            }
            let theta = std::f64::consts::PI * k as f64 / n as f64;
            let t = rational::approximate(theta.tan(), 4 * n as i64);
            circle_point(Some(&t))
        })
        .collect()
}

/// A triangle `K` inscribed in a rational `n`-gon `P`, with `E = E(P)`.
pub fn triangle_in_ngon(n: usize) -> Result<RestrictedTheory> {
    if n < 3 {
        return Err(Error::UnknownPreset(format!("triangle_in_ngon({n})")));
    }
    let pts = ngon_points(n);
    let outer = StateSpace::new(format!("{n}-gon"), pts.clone())?;
    if outer.vertices().len() != n {
        return Err(Error::UnknownPreset(format!(
            "triangle_in_ngon({n}): polygon is degenerate"
        )));
    }
    let idx = [0, (n + 1) / 3, (2 * n + 1) / 3];
    let k = StateSpace::new("triangle", idx.iter().map(|&i| pts[i].clone()).collect())?;
    let ms = extreme_binary_measurements(&outer);
    RestrictedTheory::from_measurements(k, ms)
}

/// Points `(a, b, c)/d` of the unit sphere from primitive integer solutions of
/// `a^2 + b^2 + c^2 = d^2`, taken in whole orbits of the octahedral group by
/// increasing `d` until there are at least `n`.
pub fn sphere_points(n: usize) -> Vec<Vector> {
    let mut set: BTreeSet<Vector> = BTreeSet::new();
    let mut d: i64 = 1;
    while set.len() < n.max(1) {
        for a in 0..=d {
            for b in a..=d {
                let rest = d * d - a * a - b * b;
                if rest < b * b {
                    continue;
                }
                let c = (rest as f64).sqrt().round() as i64;
                if c * c != rest || c < b {
                    continue;
                }
                if a.gcd(&b).gcd(&c).gcd(&d) != 1 {
                    continue;
                }
                for perm in permutations([a, b, c]) {
                    for signs in 0..8 {
                        let p: Vector = (0..3)
                            .map(|i| {
                                let s = if signs & (1 << i) != 0 { -1 } else { 1 };
                                frac(s * perm[i], d)
                            })
                            .collect();
                        set.insert(p);
                    }
                }
            }
        }
        d += 1;
    }
    set.into_iter().collect()
}

fn permutations(v: [i64; 3]) -> Vec<[i64; 3]> {
    let [a, b, c] = v;
    vec![
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ]
}

/// Inscribed polytope of the Bloch ball.
pub fn bloch_inner(n: usize) -> Result<StateSpace> {
    StateSpace::new(format!("bloch_inner({n})"), sphere_points(n))
}

/// Circumscribed polytope of the Bloch ball: tangent planes at the same points.
pub fn bloch_outer(n: usize) -> Result<StateSpace> {
    let facets: Vec<Halfspace> = sphere_points(n)
        .into_iter()
        .map(|p| Halfspace::new(p, Rational::one()))
        .collect();
    let body = Polytope::from_facets(3, facets)?;
    let mut k = StateSpace::from_polytope(format!("bloch_outer({n})"), body)?;
    k.label = format!("bloch_outer({n})");
    Ok(k)
}

pub fn pr_box_tensor() -> BipartiteState {
    BipartiteState::new(
        Matrix::from_rows(vec![ints(&[1, 0, 0]), ints(&[0, 1, 1]), ints(&[0, 1, -1])])
            .expect("3x3"),
    )
    .expect("normalized")
}

/// The square as the square of edge midpoints `(0, (u+v)/2, (u-v)/2)` of the tetrahedron.
pub fn square_into_tetrahedron() -> Matrix {
    let h = frac(1, 2);
    Matrix::from_rows(vec![
        ints(&[1, 0, 0]),
        ints(&[0, 0, 0]),
        vec![int(0), h.clone(), h.clone()],
        vec![int(0), h.clone(), -h],
    ])
    .expect("4x3")
}

/// The PR box shared between a square and a square (`ambient = max`), or the
/// same tensor with Bob's square mapped into the tetrahedron (`ambient = min`).
pub fn square_tetra_pr(ambient: Ambient) -> Result<SteeringScenario> {
    let t = pr_box_tensor();
    match ambient {
        Ambient::Max => {
            SteeringScenario::new(square(), square(), Ambient::Max, t, face_measurements(2))
        }
        Ambient::Min => {
            let emb = square_into_tetrahedron();
            let t2 = t.tensor.mul(&emb.transpose())?;
            SteeringScenario::new(
                square(),
                tetrahedron(),
                Ambient::Min,
                BipartiteState::new(t2)?,
                face_measurements(2),
            )
        }
        Ambient::Explicit(_) => Err(Error::UnknownPreset(
            "square_tetra_pr takes --ambient min or max".into(),
        )),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlochSide {
    Inner,
    Outer,
}

/// Isotropic analog on Bloch polytopes: `K_A` inner, `K_B` inner or outer.
pub fn bloch_isotropic(gamma: &Rational, side: BlochSide, n: usize) -> Result<SteeringScenario> {
    let ka = bloch_inner(n)?;
    let kb = match side {
        BlochSide::Inner => ka.clone(),
        BlochSide::Outer => bloch_outer(n)?,
    };
    SteeringScenario::new(
        ka,
        kb,
        Ambient::Max,
        steering::isotropic_tensor(gamma),
        steering::mub_measurements(),
    )
}

/// A parsed preset name.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Preset {
    Theory(RestrictedTheory),
    Scenario(SteeringScenario),
}

fn parse_call(name: &str) -> (String, Vec<String>) {
    let name = name.trim();
    match name.split_once('(') {
        Some((head, rest)) => {
            let args = rest
                .trim_end_matches(')')
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            (head.trim().to_string(), args)
        }
        None => (name.to_string(), Vec::new()),
    }
}

fn usize_arg(args: &[String], i: usize, default: usize, name: &str) -> Result<usize> {
    match args.get(i) {
        None => Ok(default),
        Some(s) => s
            .parse()
            .map_err(|_| Error::UnknownPreset(format!("{name}: bad argument {s:?}"))),
    }
}

/// Look up a state space by name (used for scenario parents).
pub fn state_space(name: &str) -> Result<StateSpace> {
    let (head, args) = parse_call(name);
    match head.as_str() {
        "square" => Ok(square()),
        "diamond" => Ok(diamond()),
        "pentagon" => Ok(pentagon()),
        "segment" => simplex(2),
        "triangle" => simplex(3),
        "tetrahedron" => Ok(tetrahedron()),
        "simplex" => simplex(usize_arg(&args, 0, 3, name)?),
        "bloch_inner" => bloch_inner(usize_arg(&args, 0, 100, name)?),
        "bloch_outer" => bloch_outer(usize_arg(&args, 0, 100, name)?),
        "ngon" => StateSpace::new(name, ngon_points(usize_arg(&args, 0, 12, name)?)),
        _ => Err(Error::UnknownPreset(name.to_string())),
    }
}

/// Resolve a preset name. `ambient` selects the variant of scenario presets.
pub fn lookup(name: &str, ambient: Option<Ambient>) -> Result<Preset> {
    let (head, args) = parse_call(name);
    let theory = |k: StateSpace| unrestricted(k).map(Preset::Theory);
    match head.as_str() {
        "square_in_square" => Ok(Preset::Theory(square_in_square())),
        "triangle_in_ngon" => triangle_in_ngon(usize_arg(&args, 0, 12, name)?).map(Preset::Theory),
        "square_tetra_pr" => square_tetra_pr(ambient.unwrap_or(Ambient::Max)).map(Preset::Scenario),
        "bloch_isotropic" => {
            let gamma = match args.first() {
                Some(s) => rational::parse(s)?,
                None => frac(1, 2),
            };
            let side = match args.get(1).map(String::as_str) {
                None | Some("inner") => BlochSide::Inner,
                Some("outer") => BlochSide::Outer,
                Some(s) => {
                    return Err(Error::UnknownPreset(format!("bloch_isotropic: side {s:?}")))
                }
            };
            bloch_isotropic(&gamma, side, usize_arg(&args, 2, 100, name)?).map(Preset::Scenario)
        }
        "bloch_inner" | "bloch_outer" => {
            let k = state_space(name)?;
            RestrictedTheory::from_measurements(k, steering::mub_measurements()).map(Preset::Theory)
        }
        "square" | "pentagon" | "segment" | "triangle" | "tetrahedron" | "simplex" | "diamond"
        | "ngon" => theory(state_space(name)?),
        _ => Err(Error::UnknownPreset(name.to_string())),
    }
}

pub const THEORY_PRESETS: &[&str] = &[
    "square",
    "diamond",
    "pentagon",
    "segment",
    "triangle",
    "tetrahedron",
    "simplex(3)",
    "simplex(4)",
    "square_in_square",
    "triangle_in_ngon(12)",
    "ngon(6)",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite;

    #[test]
    fn circle_points_are_exact() {
        for p in ngon_points(12) {
            assert_eq!(&p[0] * &p[0] + &p[1] * &p[1], Rational::one());
        }
    }

    #[test]
    fn sphere_points_are_exact_and_symmetric() {
        let pts = sphere_points(100);
        assert!(pts.len() >= 100);
        for p in &pts {
            assert_eq!(rational::dot(p, p), Rational::one());
            let flipped: Vector = vec![p[0].clone(), -p[1].clone(), p[2].clone()];
            assert!(pts.contains(&flipped));
        }
    }

    #[test]
    fn square_in_square_dual_is_outer_square() {
        let t = square_in_square();
        let dss = t.dual_state_space().unwrap();
        assert_eq!(dss.vertices().len(), 4);
        assert!(!dss.body.is_simplex());
        assert!(t.is_tomographically_complete());
        // an inner vertex lands on an edge midpoint of the outer square
        let z = t.evaluation_channel(&dss, &ints(&[1, 0])).unwrap();
        let edge_mid = dss.vertices().iter().filter(|v| {
            let dist: Vec<Rational> = v.iter().zip(&z).map(|(a, b)| a - b).collect();
            dist.iter().filter(|x| !x.is_zero()).count() == 1
        });
        assert_eq!(edge_mid.count(), 2);
    }

    #[test]
    fn ngon_dual_has_n_vertices() {
        let t = triangle_in_ngon(12).unwrap();
        let dss = t.dual_state_space().unwrap();
        assert_eq!(dss.vertices().len(), 12);
    }

    #[test]
    fn square_embeds_in_tetrahedron() {
        let sc = square_tetra_pr(Ambient::Min).unwrap();
        assert!(bipartite::in_maximal(&sc.ka, &sc.kb, &sc.rho));
        let emb = square_into_tetrahedron();
        for v in square().vertices() {
            let y = emb.apply(&bipartite::homogenize(v));
            assert!(tetrahedron().contains(&y[1..]));
        }
    }

    #[test]
    fn names_resolve() {
        for n in THEORY_PRESETS {
            assert!(matches!(lookup(n, None).unwrap(), Preset::Theory(_)), "{n}");
        }
        assert!(lookup("nope", None).is_err());
        assert!(matches!(
            lookup("square_tetra_pr", Some(Ambient::Min)).unwrap(),
            Preset::Scenario(_)
        ));
    }
}
