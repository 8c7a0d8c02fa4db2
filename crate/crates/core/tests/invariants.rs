use gptlab::compatibility::{self, Decision};
use gptlab::contextuality;
use gptlab::gpt;
use gptlab::random;
use gptlab::steering::{self, FullDimMode};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hierarchy_and_certificates(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let t = random::theory(&mut rng).unwrap();
        let ms = t.measurements().unwrap();
        let ec = compatibility::e_compatible(ms, &t.k, &t.e).unwrap();
        let emb = contextuality::simplex_embeddable(&t).unwrap();
        let pnc = contextuality::prep_noncontextual(&t).unwrap();
        match &emb {
            Decision::Yes(c) => prop_assert!(contextuality::verify_embedding(&t, c)),
            Decision::No(w) => prop_assert!(contextuality::verify_embedding_no(&t, w)),
        }
        match &pnc {
            Decision::Yes(c) => prop_assert!(contextuality::verify_prep_nc(&t, c)),
            Decision::No(w) => prop_assert!(contextuality::verify_prep_nc_no(&t, w)),
        }
        if compatibility::se_is_simplex(&t).unwrap() || ec.is_yes() {
            prop_assert!(emb.is_yes());
        }
        if emb.is_yes() {
            prop_assert!(pnc.is_yes());
        }
    }

    #[test]
    fn evaluation_channel_lands_in_dual(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let t = random::theory(&mut rng).unwrap();
        let dss = t.dual_state_space().unwrap();
        for v in t.k.vertices() {
            let z = t.evaluation_channel(&dss, v).unwrap();
            prop_assert!(dss.contains(&z));
            for m in t.measurements().unwrap() {
                prop_assert_eq!(gpt::probabilities_on_dual(&dss, &t.k, m, &z).unwrap(), m.probabilities(v));
            }
        }
    }

    #[test]
    fn random_scenarios_agree(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let sc = random::theorem9_scenario(&mut rng).unwrap();
        let asm = steering::assemblage(&sc);
        prop_assert!(asm.is_no_signalling());
        if steering::is_full_dimensional(&sc, FullDimMode::SufficientLemma8).unwrap() {
            prop_assert!(steering::is_full_dimensional(&sc, FullDimMode::ExactDef7).unwrap());
        }
        let r = steering::theorem9_crosscheck(&sc).unwrap();
        prop_assert!(r.agree);
        prop_assert!(steering::verify_theorem9(&sc, &r));
    }
}
