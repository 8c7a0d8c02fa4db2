//! Seeded batch experiments.

use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;

use gptlab::compatibility;
use gptlab::contextuality;
use gptlab::io::{InputFile, ScenarioFile, TheoryFile};
use gptlab::random;
use gptlab::steering::{self, Bisection};
use gptlab::Rational;

use crate::verdict::{self, Answer, Question, Verdict};

#[derive(Debug, Serialize)]
pub struct Theorem9Summary {
    pub seed: u64,
    pub count: usize,
    pub lhs_yes: usize,
    pub lhs_no: usize,
    pub agree: usize,
    pub verified: usize,
}

/// Random full-dimensional scenarios, generated sequentially from `seed` so the
/// instances do not depend on `jobs`.
pub fn theorem9(seed: u64, count: usize) -> Result<(Theorem9Summary, Vec<Verdict>)> {
    let mut rng = random::rng(seed);
    let scenarios = (0..count)
        .map(|_| random::theorem9_scenario(&mut rng))
        .collect::<gptlab::Result<Vec<_>>>()?;
    let verdicts: Vec<Verdict> = scenarios
        .par_iter()
        .map(|sc| -> Result<Verdict> {
            let report = steering::theorem9_crosscheck(sc)?;
            let input = InputFile::Scenario(ScenarioFile::explicit(sc));
            Ok(Verdict {
                question: Question::Crosscheck,
                answer: if report.agree {
                    Answer::Yes
                } else {
                    Answer::No
                },
                certificate: Some(serde_json::to_value(&report)?),
                witness: None,
                measurements: None,
                input_digest: verdict::digest(&input),
                input,
                wall_time_ms: None,
            })
        })
        .collect::<Result<_>>()?;
    let verified = verdicts
        .par_iter()
        .filter(|v| verdict::verify(v).unwrap_or(false))
        .count();
    let mut s = Theorem9Summary {
        seed,
        count,
        lhs_yes: 0,
        lhs_no: 0,
        agree: 0,
        verified,
    };
    for v in &verdicts {
        let lhs_yes = v
            .certificate
            .as_ref()
            .and_then(|c| c["lhs"]["answer"].as_str())
            == Some("yes");
        if lhs_yes {
            s.lhs_yes += 1;
        } else {
            s.lhs_no += 1;
        }
        if v.answer == Answer::Yes {
            s.agree += 1;
        }
    }
    Ok((s, verdicts))
}

#[derive(Debug, Serialize)]
pub struct HierarchySummary {
    pub seed: u64,
    pub count: usize,
    pub simplex_dual: usize,
    pub embeddable: usize,
    pub prep_nc: usize,
    pub violations: usize,
    pub verified: usize,
    pub verdicts_checked: usize,
}

/// For each theory: S(E) simplex (all of effect(M) jointly E-compatible) implies
/// simplex embeddable implies E(K)-compatibility of M.
pub fn hierarchy(seed: u64, count: usize) -> Result<(HierarchySummary, Vec<Verdict>)> {
    let mut rng = random::rng(seed);
    let theories = (0..count)
        .map(|_| random::theory(&mut rng))
        .collect::<gptlab::Result<Vec<_>>>()?;
    let rows: Vec<(bool, Vec<Verdict>)> = theories
        .par_iter()
        .map(|t| -> Result<(bool, Vec<Verdict>)> {
            let input = InputFile::Theory(TheoryFile::explicit(t));
            let simplex = compatibility::se_is_simplex(t)?;
            let ms = t.measurements()?;
            let ec = Verdict::new(
                Question::ECompat,
                compatibility::e_compatible(ms, &t.k, &t.e)?,
                input.clone(),
            );
            let emb = Verdict::new(
                Question::Embed,
                contextuality::simplex_embeddable(t)?,
                input.clone(),
            );
            let pnc = Verdict::new(
                Question::PrepNc,
                contextuality::prep_noncontextual(t)?,
                input,
            );
            Ok((simplex, vec![ec, emb, pnc]))
        })
        .collect::<Result<_>>()?;
    let mut s = HierarchySummary {
        seed,
        count,
        simplex_dual: 0,
        embeddable: 0,
        prep_nc: 0,
        violations: 0,
        verified: 0,
        verdicts_checked: 0,
    };
    let mut all = Vec::new();
    for (simplex, vs) in rows {
        let [ec, emb, pnc] = [&vs[0], &vs[1], &vs[2]].map(|v| v.answer == Answer::Yes);
        s.simplex_dual += simplex as usize;
        s.embeddable += emb as usize;
        s.prep_nc += pnc as usize;
        if (simplex && !emb) || (ec && !emb) || (emb && !pnc) {
            s.violations += 1;
        }
        all.extend(vs);
    }
    s.verdicts_checked = all.len();
    s.verified = all
        .par_iter()
        .filter(|v| verdict::verify(v).unwrap_or(false))
        .count();
    Ok((s, all))
}

/// LHS verdicts of the isotropic-analog assemblage on a grid of `gamma`.
pub fn sweep(kb: &gptlab::gpt::StateSpace, steps: usize) -> Vec<(Rational, bool)> {
    (0..=steps)
        .into_par_iter()
        .map(|i| {
            let g = Rational::new((i as i64).into(), (steps as i64).into());
            let yes = steering::isotropic_has_lhs(&g, kb).is_yes();
            (g, yes)
        })
        .collect()
}

pub fn bracket(kb: &gptlab::gpt::StateSpace, hi: Rational, tol: &Rational) -> Bisection {
    steering::bisect(Rational::from_integer(0.into()), hi, tol, |g| {
        steering::isotropic_has_lhs(g, kb).is_yes()
    })
}
