//! Worked examples for every module, checked against hand-computed oracles.

use gptlab::bipartite::{self, BipartiteState, Side};
use gptlab::compatibility::{self, Decision};
use gptlab::contextuality;
use gptlab::gpt::{
    self, EffectRestriction, Measurement, PostProcessing, RestrictedTheory, StateSpace,
};
use gptlab::linalg::{self, Matrix};
use gptlab::lp::{LpProblem, LpStatus, Relation};
use gptlab::polytope::{self, AffineFunctional, Halfspace, Polytope};
use gptlab::presets;
use gptlab::random;
use gptlab::rational::{frac, int, ints, Rational, Vector};
use gptlab::steering::{self, Ambient, FullDimMode, Reduction, SteeringScenario};
use num_traits::{One, Zero};

fn face(axis: usize, d: usize) -> Measurement {
    presets::face_measurements(d).swap_remove(axis)
}

fn sorted(mut v: Vec<Vector>) -> Vec<Vector> {
    v.sort();
    v
}

// geometry

fn unit_normal(h: &Halfspace) -> Halfspace {
    let s = h.normal.iter().find(|x| !x.is_zero()).unwrap();
    let s = if *s < Rational::zero() {
        -s.clone()
    } else {
        s.clone()
    };
    Halfspace::new(h.normal.iter().map(|x| x / &s).collect(), &h.offset / &s)
}

#[test]
fn segment_facets() {
    let p =
        polytope::dd_vrep_to_hrep(&Polytope::from_vertices(vec![ints(&[0]), ints(&[1])]).unwrap())
            .unwrap();
    let mut f: Vec<Halfspace> = p.halfspaces().iter().map(unit_normal).collect();
    f.sort();
    let mut want = vec![
        Halfspace::new(ints(&[1]), int(1)),
        Halfspace::new(ints(&[-1]), int(0)),
    ];
    want.sort();
    assert_eq!(f, want);
}

#[test]
fn square_facets() {
    let sq = presets::square();
    assert_eq!(sq.facets().len(), 4);
    let mut f: Vec<Halfspace> = sq.facets().iter().map(unit_normal).collect();
    f.sort();
    let mut want: Vec<Halfspace> = [[1, 0], [-1, 0], [0, 1], [0, -1]]
        .iter()
        .map(|n| Halfspace::new(ints(n), int(1)))
        .collect();
    want.sort();
    assert_eq!(f, want);
}

#[test]
fn interval_and_simplex_vertices() {
    let p = Polytope::from_facets(
        1,
        vec![
            Halfspace::new(ints(&[1]), int(1)),
            Halfspace::new(ints(&[-1]), int(0)),
        ],
    )
    .unwrap();
    let v = polytope::dd_hrep_to_vrep(&p).unwrap();
    assert_eq!(sorted(v.verts().to_vec()), vec![ints(&[0]), ints(&[1])]);
    let mut hs = vec![Halfspace::new(ints(&[1, 1, 1]), int(1))];
    for i in 0..3 {
        let mut n = vec![Rational::zero(); 3];
        n[i] = -Rational::one();
        hs.push(Halfspace::new(n, int(0)));
    }
    let v = polytope::dd_hrep_to_vrep(&Polytope::from_facets(3, hs).unwrap()).unwrap();
    assert_eq!(v.verts().len(), 4);
}

#[test]
fn dual_of_square_in_square_from_facets() {
    let dss = presets::square_in_square().dual_state_space().unwrap();
    let back = polytope::dd_hrep_to_vrep(
        &Polytope::from_facets(dss.dim(), dss.body.halfspaces().to_vec()).unwrap(),
    )
    .unwrap();
    assert_eq!(back.verts().len(), 4);
}

#[test]
fn random_3d_round_trip() {
    let mut rng = random::rng(11);
    for _ in 0..10 {
        let k = random::polytope(&mut rng, 3, 9);
        let back = Polytope::from_facets(3, k.facets().to_vec())
            .unwrap()
            .complete()
            .unwrap();
        assert_eq!(sorted(k.vertices().to_vec()), sorted(back.verts().to_vec()));
    }
}

#[test]
fn ranks() {
    assert_eq!(Matrix::identity(3).rank(), 3);
    assert_eq!(Matrix::zeros(3, 4).rank(), 0);
    let asm = steering::assemblage(
        &presets::bloch_isotropic(&int(0), presets::BlochSide::Inner, 6).unwrap(),
    );
    let rows: Vec<Vector> = asm.entries.iter().flatten().map(|v| v.0.clone()).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(linalg::rank(&rows), 1);
}

#[test]
fn affine_independence() {
    assert!(linalg::is_affinely_independent(&[
        ints(&[0, 0]),
        ints(&[1, 0]),
        ints(&[0, 1])
    ]));
    assert!(!linalg::is_affinely_independent(&[
        ints(&[0, 0]),
        ints(&[1, 0]),
        ints(&[0, 1]),
        ints(&[1, 1])
    ]));
    let t = presets::unrestricted(presets::simplex(3).unwrap()).unwrap();
    let dss = t.dual_state_space().unwrap();
    assert!(linalg::is_affinely_independent(dss.vertices()));
}

// linear programming

#[test]
fn lp_interval_maximum() {
    let mut lp = LpProblem::new(1);
    lp.add_constraint(ints(&[1]), Relation::Le, int(1));
    lp.maximize(ints(&[1]));
    let r = lp.solve();
    assert_eq!(r.status, LpStatus::Optimal);
    assert_eq!(r.point.unwrap(), ints(&[1]));
}

#[test]
fn lp_farkas_for_empty_interval() {
    let mut lp = LpProblem::new(1);
    lp.set_free(0);
    lp.add_constraint(ints(&[1]), Relation::Ge, int(1));
    lp.add_constraint(ints(&[1]), Relation::Le, int(0));
    let r = lp.solve();
    assert_eq!(r.status, LpStatus::Infeasible);
    let y = r.farkas.unwrap();
    assert!(lp.verify_farkas(&y));
    assert_eq!(y, ints(&[1, 1]));
}

#[test]
fn lp_for_square_face_pair_is_infeasible() {
    let t = presets::square_in_square();
    let lp = compatibility::e_problem(t.measurements().unwrap(), &t.k, &t.e);
    let r = lp.solve();
    assert_eq!(r.status, LpStatus::Infeasible);
    assert!(lp.verify_farkas(&r.farkas.unwrap()));
}

// gpt core

#[test]
fn effect_polytopes() {
    let seg = presets::simplex(2).unwrap();
    assert_eq!(gpt::effect_polytope(&seg).generators.len(), 4);
    // 0, 1 and the four face effects (1 +- x)/2, (1 +- y)/2
    assert_eq!(gpt::effect_polytope(&presets::square()).generators.len(), 6);
    let tri = presets::simplex(3).unwrap();
    let e = gpt::effect_polytope(&tri);
    let mut got: Vec<Vector> = e.generators.iter().map(|g| tri.values(g)).collect();
    got.sort();
    let mut want: Vec<Vector> = (0..8)
        .map(|s: i64| (0..3).map(|i| int((s >> i) & 1)).collect())
        .collect();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn dual_state_spaces() {
    let sq = RestrictedTheory::unrestricted(presets::square()).unwrap();
    let dss = sq.dual_state_space().unwrap();
    assert_eq!(dss.vertices().len(), 4);
    assert_eq!(dss.dim(), 2);
    let trivial =
        RestrictedTheory::new(presets::square(), EffectRestriction::trivial(2), None).unwrap();
    let dss = trivial.dual_state_space().unwrap();
    assert_eq!(dss.vertices().len(), 1);
}

#[test]
fn evaluation_channels() {
    let sq = RestrictedTheory::unrestricted(presets::square()).unwrap();
    let dss = sq.dual_state_space().unwrap();
    let images: Vec<Vector> =
        sq.k.vertices()
            .iter()
            .map(|v| sq.evaluation_channel(&dss, v).unwrap())
            .collect();
    assert_eq!(sorted(images), sorted(dss.vertices().to_vec()));

    let t = presets::square_in_square();
    let dss = t.dual_state_space().unwrap();
    let z = t.evaluation_channel(&dss, &ints(&[0, 1])).unwrap();
    assert!(dss.contains(&z) && !dss.vertices().contains(&z));
    let on_edges = dss
        .body
        .halfspaces()
        .iter()
        .filter(|h| h.is_tight(&z))
        .count();
    assert_eq!(on_edges, 1);

    let point = StateSpace::new("point", vec![ints(&[1, 0])]).unwrap();
    let t = RestrictedTheory::from_measurements(point, vec![face(0, 2)]).unwrap();
    let dss = t.dual_state_space().unwrap();
    assert_eq!(dss.vertices().len(), 1);
}

#[test]
fn generated_effect_algebras() {
    let sq = presets::square();
    let e = gpt::generate_effect_algebra(2, &[Measurement::trivial(2)])
        .closed_on(&sq)
        .unwrap();
    assert_eq!(e.generators.len(), 2);
    let e = gpt::generate_effect_algebra(2, &[face(0, 2)])
        .closed_on(&sq)
        .unwrap();
    assert_eq!(e.generators.len(), 4);
    let t = RestrictedTheory::from_measurements(sq, vec![face(0, 2), face(1, 2)]).unwrap();
    assert_eq!(t.e.generators.len(), 6);
    let dss = t.dual_state_space().unwrap();
    assert_eq!(dss.vertices().len(), 4);
    assert!(!dss.body.is_simplex());
}

#[test]
fn post_processings() {
    let m = face(0, 2);
    assert_eq!(
        gpt::apply_postprocessing(&m, &PostProcessing::identity(2)).unwrap(),
        m
    );
    let all = PostProcessing::new(vec![ints(&[1]), ints(&[1])]).unwrap();
    let coarse = gpt::apply_postprocessing(&m, &all).unwrap();
    assert_eq!(coarse.effects, vec![AffineFunctional::unit(2)]);
    let flip = PostProcessing::new(vec![ints(&[0, 1]), ints(&[1, 0])]).unwrap();
    let f = gpt::apply_postprocessing(&m, &flip).unwrap();
    assert_eq!(f.effects, vec![m.effects[1].clone(), m.effects[0].clone()]);
}

#[test]
fn tomographic_completeness() {
    assert!(RestrictedTheory::unrestricted(presets::square())
        .unwrap()
        .is_tomographically_complete());
    assert!(
        !RestrictedTheory::new(presets::square(), EffectRestriction::trivial(2), None)
            .unwrap()
            .is_tomographically_complete()
    );
    assert!(presets::square_in_square().is_tomographically_complete());
}

// bipartite

#[test]
fn minimal_and_maximal_tensors() {
    let seg = presets::simplex(2).unwrap();
    let min = bipartite::minimal_tensor(&seg, &seg).complete().unwrap();
    assert_eq!(min.body.verts().len(), 4);
    let max = bipartite::maximal_tensor(&seg, &seg);
    assert!(min.same_set(&max).unwrap());

    let min = bipartite::minimal_tensor(&presets::square(), &presets::tetrahedron())
        .complete()
        .unwrap();
    assert_eq!(min.body.verts().len(), 16);
    assert!(min
        .same_set(&bipartite::maximal_tensor(
            &presets::square(),
            &presets::tetrahedron()
        ))
        .unwrap());

    let tri = presets::simplex(3).unwrap();
    assert!(bipartite::minimal_tensor(&tri, &tri)
        .same_set(&bipartite::maximal_tensor(&tri, &tri))
        .unwrap());

    let sq = presets::square();
    let pr = presets::pr_box_tensor();
    assert!(bipartite::in_maximal(&sq, &sq, &pr));
    assert!(bipartite::in_minimal(&sq, &sq, &pr).is_none());
}

#[test]
fn partial_application() {
    let a = ints(&[1, 0]);
    let b = vec![frac(1, 2), frac(-1, 3)];
    let rho = BipartiteState::product(&a, &b);
    let f = face(0, 2).effects[0].clone();
    let v = bipartite::partial_apply_effect(&rho, &f, Side::A).unwrap();
    assert_eq!(v[0], f.eval(&a));
    assert_eq!(bipartite::conditioned(&v).unwrap(), b);
    let u = bipartite::partial_apply_effect(&rho, &AffineFunctional::unit(2), Side::A).unwrap();
    assert_eq!(u[0], Rational::one());
    assert_eq!(u[1..].to_vec(), rho.reduced(Side::B));

    let pr = presets::pr_box_tensor();
    let v = bipartite::partial_apply_effect(&pr, &f, Side::A).unwrap();
    assert_eq!(v, vec![frac(1, 2), frac(1, 2), frac(1, 2)]);
    assert_eq!(bipartite::conditioned(&v).unwrap(), ints(&[1, 1]));
}

#[test]
fn chsh_values() {
    let ms = presets::face_measurements(2);
    let (x, y) = (&ms[0], &ms[1]);
    let prod = BipartiteState::product(&ints(&[1, -1]), &ints(&[-1, 1]));
    let v = bipartite::chsh_value(&prod, x, y, x, y).unwrap();
    assert!(v <= int(2) && v >= int(-2));
    assert_eq!(
        bipartite::chsh_value(&presets::pr_box_tensor(), x, y, x, y).unwrap(),
        int(4)
    );
    let mixed = BipartiteState::product(&ints(&[0, 0]), &ints(&[0, 0]));
    assert_eq!(bipartite::chsh_value(&mixed, x, y, x, y).unwrap(), int(0));
}

// compatibility

#[test]
fn e_compatibility_examples() {
    let t = presets::square_in_square();
    let m = t.measurements().unwrap()[0].clone();
    let d = compatibility::e_compatible(&[m.clone(), m.clone()], &t.k, &t.e).unwrap();
    let cert = d.yes().unwrap();
    assert!(compatibility::verify_joint(
        &[m.clone(), m],
        &t.k,
        Some(&t.e),
        cert
    ));

    let half = Measurement::new(vec![
        AffineFunctional::constant(2, frac(1, 2)),
        AffineFunctional::constant(2, frac(1, 2)),
    ]);
    let third = Measurement::new(vec![
        AffineFunctional::constant(2, frac(1, 3)),
        AffineFunctional::constant(2, frac(2, 3)),
    ]);
    let e = EffectRestriction::trivial(2).closed_on(&t.k).unwrap();
    let e = EffectRestriction::new(
        e.generators
            .into_iter()
            .chain(half.effects.iter().chain(&third.effects).cloned())
            .collect(),
    );
    assert!(compatibility::e_compatible(&[half, third], &t.k, &e)
        .unwrap()
        .is_yes());

    let d = compatibility::e_compatible(t.measurements().unwrap(), &t.k, &t.e).unwrap();
    assert!(compatibility::verify_e_no(
        t.measurements().unwrap(),
        &t.k,
        &t.e,
        d.no().unwrap()
    ));
}

#[test]
fn ek_compatibility_examples() {
    let tri = presets::simplex(3).unwrap();
    let mut rng = random::rng(3);
    let gens = gpt::effect_polytope(&tri).generators;
    for _ in 0..5 {
        let ms: Vec<Measurement> = (0..3)
            .map(|_| random::measurement(&mut rng, &gens))
            .collect();
        let d = compatibility::ek_compatible(&ms, &tri).unwrap();
        assert!(compatibility::verify_joint(
            &ms,
            &tri,
            None,
            d.yes().unwrap()
        ));
    }
    let t = presets::square_in_square();
    assert!(
        compatibility::ek_compatible(t.measurements().unwrap(), &t.k)
            .unwrap()
            .is_yes()
    );
    let sq = presets::square();
    let ms = presets::face_measurements(2);
    let d = compatibility::ek_compatible(&ms, &sq).unwrap();
    assert!(compatibility::verify_ek_no(&ms, &sq, d.no().unwrap()));
}

#[test]
fn dual_simplex_checks() {
    let one = RestrictedTheory::from_measurements(presets::square(), vec![face(0, 2)]).unwrap();
    assert!(compatibility::se_is_simplex(&one).unwrap());
    assert!(!compatibility::se_is_simplex(&presets::square_in_square()).unwrap());
    assert!(compatibility::se_is_simplex(
        &presets::unrestricted(presets::simplex(3).unwrap()).unwrap()
    )
    .unwrap());
}

// contextuality

#[test]
fn embedding_examples() {
    let tri = presets::simplex(3).unwrap();
    let m = Measurement::binary(AffineFunctional::new(
        vec![frac(1, 2), frac(1, 3)],
        frac(1, 6),
    ));
    let t = RestrictedTheory::from_measurements(tri, vec![m]).unwrap();
    let d = contextuality::simplex_embeddable(&t).unwrap();
    assert!(contextuality::verify_embedding(&t, d.yes().unwrap()));

    let t = presets::square_in_square();
    let cert = contextuality::simplex_embeddable(&t)
        .unwrap()
        .yes()
        .unwrap()
        .clone();
    assert!(contextuality::verify_embedding(&t, &cert));
    let mut moved = cert.clone();
    moved.psi[0].0 = moved.psi[0].iter().map(|x| x * int(3)).collect();
    moved.psi[0].0[0] = int(5);
    assert!(!contextuality::verify_embedding(&t, &moved));

    let sq = RestrictedTheory::unrestricted(presets::square()).unwrap();
    let d = contextuality::simplex_embeddable(&sq).unwrap();
    assert!(contextuality::verify_embedding_no(&sq, d.no().unwrap()));

    let seg = RestrictedTheory::unrestricted(presets::simplex(2).unwrap()).unwrap();
    let cert = contextuality::simplex_embeddable(&seg)
        .unwrap()
        .yes()
        .unwrap()
        .clone();
    assert_eq!(cert.h.len(), 2);
    assert!(contextuality::verify_embedding(&seg, &cert));
}

#[test]
fn preparation_noncontextuality_examples() {
    let t = presets::triangle_in_ngon(12).unwrap();
    let d = contextuality::prep_noncontextual(&t).unwrap();
    assert!(contextuality::verify_prep_nc(&t, d.yes().unwrap()));

    let sq = RestrictedTheory::from_measurements(presets::square(), presets::face_measurements(2))
        .unwrap();
    let d = contextuality::prep_noncontextual(&sq).unwrap();
    assert!(contextuality::verify_prep_nc_no(&sq, d.no().unwrap()));

    let sc = presets::square_tetra_pr(Ambient::Min).unwrap();
    let k_rho = steering::conditioned_state_space(&sc).unwrap();
    let t = RestrictedTheory::from_measurements(k_rho, sc.ms.clone()).unwrap();
    // LHS holds but the scenario is not full-dimensional, so the verdicts may differ
    assert!(!contextuality::prep_noncontextual(&t).unwrap().is_yes());
    assert!(steering::has_lhs_model(&steering::assemblage(&sc), &sc.kb).is_yes());
    assert!(matches!(
        steering::theorem9_crosscheck(&sc),
        Err(gptlab::Error::TheoremInapplicable(_))
    ));
}

// steering

fn product_scenario() -> SteeringScenario {
    let rho = BipartiteState::product(&ints(&[1, 0]), &[frac(1, 2), frac(-1, 2)]);
    SteeringScenario::new(
        presets::square(),
        presets::square(),
        Ambient::Max,
        rho,
        presets::face_measurements(2),
    )
    .unwrap()
}

#[test]
fn assemblage_examples() {
    let sc = product_scenario();
    let asm = steering::assemblage(&sc);
    for (x, row) in asm.entries.iter().enumerate() {
        for (a, sigma) in row.iter().enumerate() {
            let w = sc.ms[x].effects[a].eval(&ints(&[1, 0]));
            assert_eq!(sigma[0], w);
            if !w.is_zero() {
                assert_eq!(
                    bipartite::conditioned(sigma).unwrap(),
                    vec![frac(1, 2), frac(-1, 2)]
                );
            }
        }
    }
    assert!(asm.is_no_signalling());

    let pr = presets::square_tetra_pr(Ambient::Max).unwrap();
    for row in &steering::assemblage(&pr).entries {
        for sigma in row {
            let c = bipartite::conditioned(sigma).unwrap();
            assert!(pr.kb.vertices().contains(&c));
        }
    }

    let iso = presets::bloch_isotropic(&int(0), presets::BlochSide::Inner, 6).unwrap();
    for row in &steering::assemblage(&iso).entries {
        for sigma in row {
            assert_eq!(bipartite::conditioned(sigma).unwrap(), ints(&[0, 0, 0]));
        }
    }
}

#[test]
fn lhs_examples() {
    let sc = product_scenario();
    assert!(steering::has_lhs_model(&steering::assemblage(&sc), &sc.kb).is_yes());

    let sq = presets::square();
    let a = BipartiteState::product(&ints(&[1, 1]), &ints(&[-1, 1]));
    let b = BipartiteState::product(&ints(&[-1, 1]), &ints(&[1, -1]));
    let rho = BipartiteState::mix(&[(frac(1, 3), &a), (frac(2, 3), &b)]).unwrap();
    let sc = SteeringScenario::new(
        sq.clone(),
        sq,
        Ambient::Min,
        rho,
        presets::face_measurements(2),
    )
    .unwrap();
    let asm = steering::assemblage(&sc);
    let d = steering::has_lhs_model(&asm, &sc.kb);
    assert!(steering::verify_lhs(&asm, &sc.kb, d.yes().unwrap()));

    let pr = presets::square_tetra_pr(Ambient::Max).unwrap();
    let asm = steering::assemblage(&pr);
    assert!(matches!(
        steering::has_lhs_model(&asm, &pr.kb),
        Decision::No(_)
    ));
}

#[test]
fn conditioned_state_spaces() {
    let sc = product_scenario();
    let k = steering::conditioned_state_space(&sc).unwrap();
    assert_eq!(k.vertices(), &[ints(&[1, 0])]);
    assert!(k.contains(&sc.rho.reduced(Side::A)));

    let ka = presets::bloch_outer(30).unwrap();
    let kb = presets::bloch_inner(30).unwrap();
    let sc = SteeringScenario::new(
        ka.clone(),
        kb,
        Ambient::Max,
        steering::isotropic_tensor(&int(1)),
        steering::mub_measurements(),
    )
    .unwrap();
    let k_rho = steering::conditioned_state_space(&sc).unwrap();
    assert!(k_rho.contains(&sc.rho.reduced(Side::A)));
    assert!(k_rho.body().same_set(ka.body()).unwrap());
}

#[test]
fn full_dimensionality() {
    assert!(!steering::is_full_dimensional(&product_scenario(), FullDimMode::ExactDef7).unwrap());
    let sc = presets::bloch_isotropic(&frac(1, 5), presets::BlochSide::Inner, 30).unwrap();
    assert!(steering::is_full_dimensional(&sc, FullDimMode::ExactDef7).unwrap());
    let mut rng = random::rng(5);
    for _ in 0..10 {
        let sc = random::theorem9_scenario(&mut rng).unwrap();
        let sufficient = steering::is_full_dimensional(&sc, FullDimMode::SufficientLemma8).unwrap();
        let exact = steering::is_full_dimensional(&sc, FullDimMode::ExactDef7).unwrap();
        assert!(!sufficient || exact);
    }
}

#[test]
fn restriction_to_j() {
    let sc = product_scenario();
    match steering::restrict_to_j(&sc).unwrap() {
        Reduction::Reduced {
            scenario,
            retraction,
        } => {
            assert_eq!(scenario.kb.vertices(), &[vec![frac(1, 2), frac(-1, 2)]]);
            assert!(steering::verify_retraction(&sc, &retraction));
        }
        Reduction::NotReducible(_) => panic!("a product state always reduces"),
    }
    let pr = presets::square_tetra_pr(Ambient::Min).unwrap();
    assert!(matches!(
        steering::restrict_to_j(&pr).unwrap(),
        Reduction::NotReducible(_)
    ));
}

#[test]
fn theorem9_on_random_instances() {
    let mut rng = random::rng(9);
    let (mut yes, mut no) = (0, 0);
    while yes == 0 || no == 0 {
        let sc = random::theorem9_scenario(&mut rng).unwrap();
        let r = steering::theorem9_crosscheck(&sc).unwrap();
        assert!(r.agree);
        assert!(steering::verify_theorem9(&sc, &r));
        if r.lhs.is_yes() {
            yes += 1;
        } else {
            no += 1;
        }
    }
}

#[test]
fn isotropic_flip_is_shared() {
    let mut last: Option<(bool, bool)> = None;
    let mut flips = 0;
    for i in 1..=12 {
        let g = frac(i, 12);
        let Ok(sc) = presets::bloch_isotropic(&g, presets::BlochSide::Inner, 30) else {
            break;
        };
        let r = steering::theorem9_crosscheck(&sc).unwrap();
        let now = (r.lhs.is_yes(), r.prep_nc.is_yes());
        assert_eq!(now.0, now.1, "gamma = {g}");
        if let Some(prev) = last {
            if prev != now {
                flips += 1;
            }
        }
        last = Some(now);
    }
    assert_eq!(flips, 1);
}
