//! Verdict files and their independent re-verification.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use gptlab::compatibility::{self, Decision, FarkasWitness, JointMeasurementCert};
use gptlab::contextuality::{self, SimplexEmbeddingCert};
use gptlab::gpt::{Measurement, RestrictedTheory};
use gptlab::io::InputFile;
use gptlab::presets::Preset;
use gptlab::steering::{self, LhsModelCert, SteeringScenario, Theorem9Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Question {
    ECompat,
    EkCompat,
    Embed,
    PrepNc,
    Steer,
    Crosscheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub question: Question,
    pub answer: Answer,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<FarkasWitness>,
    /// Indices of the generating measurements the question was asked about.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measurements: Option<Vec<usize>>,
    pub input: InputFile,
    pub input_digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

pub fn digest(input: &InputFile) -> String {
    let bytes = serde_json::to_vec(input).expect("inputs serialize");
    hex::encode(Sha256::digest(bytes))
}

impl Verdict {
    pub fn new<Y: Serialize>(
        question: Question,
        decision: Decision<Y>,
        input: InputFile,
    ) -> Verdict {
        let (answer, certificate, witness) = match decision {
            Decision::Yes(c) => (
                Answer::Yes,
                Some(serde_json::to_value(c).expect("certificates serialize")),
                None,
            ),
            Decision::No(w) => (Answer::No, None, Some(w)),
        };
        Verdict {
            question,
            answer,
            certificate,
            witness,
            measurements: None,
            input_digest: digest(&input),
            input,
            wall_time_ms: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.answer {
            Answer::Yes => 0,
            Answer::No => 1,
        }
    }

    fn cert<T: for<'de> Deserialize<'de>>(&self) -> Result<T> {
        let v = self
            .certificate
            .clone()
            .ok_or_else(|| anyhow!("verdict has no certificate"))?;
        serde_json::from_value(v).context("malformed certificate")
    }

    fn witness(&self) -> Result<&FarkasWitness> {
        self.witness
            .as_ref()
            .ok_or_else(|| anyhow!("verdict has no Farkas witness"))
    }
}

pub fn select(ms: &[Measurement], idx: Option<&[usize]>) -> Result<Vec<Measurement>> {
    match idx {
        None => Ok(ms.to_vec()),
        Some(idx) => idx
            .iter()
            .map(|&i| {
                ms.get(i).cloned().ok_or_else(|| {
                    anyhow!(
                        "measurement index {i} out of range ({} measurements)",
                        ms.len()
                    )
                })
            })
            .collect(),
    }
}

pub fn theory(p: &Preset) -> Result<&RestrictedTheory> {
    match p {
        Preset::Theory(t) => Ok(t),
        Preset::Scenario(_) => bail!("expected a theory, got a steering scenario"),
    }
}

pub fn scenario(p: &Preset) -> Result<&SteeringScenario> {
    match p {
        Preset::Scenario(s) => Ok(s),
        Preset::Theory(_) => bail!("expected a steering scenario, got a theory"),
    }
}

/// Re-run the exact checker for a verdict. `Err` means the verdict cannot be
/// checked at all (missing or malformed parts); `Ok(false)` means it was
/// checked and rejected.
pub fn verify(v: &Verdict) -> Result<bool> {
    if digest(&v.input) != v.input_digest {
        return Ok(false);
    }
    let resolved = v.input.resolve()?;
    let yes = v.answer == Answer::Yes;
    Ok(match v.question {
        Question::ECompat | Question::EkCompat | Question::PrepNc | Question::Embed => {
            let t = theory(&resolved)?;
            match v.question {
                Question::Embed => {
                    if yes {
                        contextuality::verify_embedding(t, &v.cert::<SimplexEmbeddingCert>()?)
                    } else {
                        contextuality::verify_embedding_no(t, v.witness()?)
                    }
                }
                Question::PrepNc => {
                    if yes {
                        contextuality::verify_prep_nc(t, &v.cert::<JointMeasurementCert>()?)
                    } else {
                        contextuality::verify_prep_nc_no(t, v.witness()?)
                    }
                }
                _ => {
                    let ms = select(t.measurements()?, v.measurements.as_deref())?;
                    let e = (v.question == Question::ECompat).then_some(&t.e);
                    match (yes, e) {
                        (true, e) => compatibility::verify_joint(
                            &ms,
                            &t.k,
                            e,
                            &v.cert::<JointMeasurementCert>()?,
                        ),
                        (false, Some(e)) => compatibility::verify_e_no(&ms, &t.k, e, v.witness()?),
                        (false, None) => compatibility::verify_ek_no(&ms, &t.k, v.witness()?),
                    }
                }
            }
        }
        Question::Steer => {
            let sc = scenario(&resolved)?;
            let asm = steering::assemblage(sc);
            if yes {
                steering::verify_lhs(&asm, &sc.kb, &v.cert::<LhsModelCert>()?)
            } else {
                steering::verify_lhs_no(&asm, &sc.kb, v.witness()?)
            }
        }
        Question::Crosscheck => {
            let sc = scenario(&resolved)?;
            let report: Theorem9Report = v.cert()?;
            yes == report.agree && steering::verify_theorem9(sc, &report)
        }
    })
}
