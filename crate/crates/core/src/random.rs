//! Seeded random instances for batch runs and property tests.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bipartite::{self, BipartiteState};
use crate::error::Result;
use crate::gpt::{self, Measurement, RestrictedTheory, StateSpace};
use crate::lp::{LpProblem, LpStatus};
use crate::polytope::AffineFunctional;
use crate::rational::{self, frac, int, Rational, Vector};
use crate::steering::{self, Ambient, FullDimMode, SteeringScenario};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A full-dimensional polytope with at most `max_vertices` vertices and small
/// integer coordinates.
pub fn polytope(rng: &mut Rng64, dim: usize, max_vertices: usize) -> StateSpace {
    loop {
        let n = rng.gen_range(dim + 1..=max_vertices.max(dim + 1));
        let pts: Vec<Vector> = (0..n)
            .map(|_| (0..dim).map(|_| int(rng.gen_range(-3..=3))).collect())
            .collect();
        if let Ok(k) = StateSpace::new("random", pts) {
            if k.affine_dim() == dim {
                return k;
            }
        }
    }
}

/// A random convex combination of a few of `gens` (all effects on `k`).
fn mix_effects(rng: &mut Rng64, gens: &[AffineFunctional]) -> AffineFunctional {
    let n = rng.gen_range(1..=2.min(gens.len()));
    let picks: Vec<&AffineFunctional> = gens.choose_multiple(rng, n).collect();
    let ws: Vec<i64> = picks.iter().map(|_| rng.gen_range(1..=3)).collect();
    let total: i64 = ws.iter().sum();
    let mut f = AffineFunctional::zero(gens[0].dim());
    for (g, w) in picks.iter().zip(&ws) {
        f = f.add(&g.scale(&frac(*w, total)));
    }
    f
}

/// A binary or ternary measurement built from the effects `gens` of `E(K)`.
pub fn measurement(rng: &mut Rng64, gens: &[AffineFunctional]) -> Measurement {
    let f = mix_effects(rng, gens);
    if rng.gen_bool(0.5) {
        return Measurement::binary(f);
    }
    let g = mix_effects(rng, gens);
    let half = frac(1, 2);
    let (a, b) = (f.scale(&half), g.scale(&half));
    let rest = AffineFunctional::unit(f.dim()).sub(&a).sub(&b);
    Measurement::new(vec![a, b, rest])
}

fn nontrivial_effects(k: &StateSpace) -> Vec<AffineFunctional> {
    gpt::effect_polytope(k)
        .generators
        .into_iter()
        .filter(|g| {
            let v = k.values(g);
            !v.iter().all(Zero::is_zero) && !v.iter().all(One::is_one)
        })
        .collect()
}

/// `(K, effect(M))` for a random polytope of dimension 1 to 3 and one to three measurements.
pub fn theory(rng: &mut Rng64) -> Result<RestrictedTheory> {
    let dim = rng.gen_range(1..=3);
    let k = polytope(rng, dim, dim + 3);
    let gens = nontrivial_effects(&k);
    let n = rng.gen_range(1..=3);
    let ms = (0..n).map(|_| measurement(rng, &gens)).collect();
    RestrictedTheory::from_measurements(k, ms)
}

/// A state of the maximal tensor product extremal in a random direction.
pub fn maximal_vertex_state(
    rng: &mut Rng64,
    ka: &StateSpace,
    kb: &StateSpace,
) -> Option<BipartiteState> {
    let max = bipartite::maximal_tensor(ka, kb);
    let n = max.body.ambient_dim;
    let mut lp = LpProblem::new(n);
    for i in 0..n {
        lp.set_free(i);
    }
    for h in max.body.halfspaces() {
        lp.add_constraint(h.normal.clone(), crate::lp::Relation::Le, h.offset.clone());
    }
    let c: Vector = (0..n).map(|_| int(rng.gen_range(-5..=5))).collect();
    lp.maximize(c);
    let res = lp.solve();
    if res.status != LpStatus::Optimal {
        return None;
    }
    BipartiteState::from_coordinates(ka.dim(), kb.dim(), &res.point?).ok()
}

fn barycenter(k: &StateSpace) -> Vector {
    let vs = k.vertices();
    let mut c = rational::zeros(k.dim());
    for v in vs {
        rational::axpy(&mut c, &Rational::one(), v);
    }
    rational::scale(&c, &frac(1, vs.len() as i64))
}

/// A polygon with at least four vertices.
pub fn polygon(rng: &mut Rng64, max_vertices: usize) -> StateSpace {
    loop {
        let k = polytope(rng, 2, max_vertices.max(4) + 2);
        if k.vertices().len() >= 4 && k.vertices().len() <= max_vertices.max(4) {
            return k;
        }
    }
}

/// A full-dimensional steering scenario over small polygons with a state mixed
/// from a maximal-tensor vertex and a product state.
pub fn theorem9_scenario(rng: &mut Rng64) -> Result<SteeringScenario> {
    loop {
        let ka = polygon(rng, 5);
        let kb = polygon(rng, 5);
        let Some(ent) = maximal_vertex_state(rng, &ka, &kb) else {
            continue;
        };
        let a = ka.vertices().choose(rng).expect("nonempty").clone();
        let prod = BipartiteState::product(
            &rational::scale(&rational::add(&a, &barycenter(&ka)), &frac(1, 2)),
            &barycenter(&kb),
        );
        let p = frac(rng.gen_range(2..=4), 4);
        let rho = BipartiteState::mix(&[(p.clone(), &ent), (Rational::one() - p, &prod)])?;
        let gens = nontrivial_effects(&ka);
        let n = rng.gen_range(2..=3);
        let ms: Vec<Measurement> = (0..n)
            .map(|_| match rng.gen_bool(0.6) {
                true => Measurement::binary(gens.choose(rng).expect("nonempty").clone()),
                false => measurement(rng, &gens),
            })
            .collect();
        let Ok(sc) = SteeringScenario::new(ka, kb, Ambient::Max, rho, ms) else {
            continue;
        };
        if steering::is_full_dimensional(&sc, FullDimMode::ExactDef7)? {
            return Ok(sc);
        }
    }
}
