//! JSON formats for theories and steering scenarios.
//!
//! Rationals are `"p/q"` strings (plain integers are also accepted on input).
//! A state space is either a preset name or an object with `vertices` or
//! `facets`.

use serde::{Deserialize, Serialize};

use crate::bipartite::BipartiteState;
use crate::error::{Error, Result};
use crate::gpt::{EffectRestriction, Measurement, RestrictedTheory, StateSpace};
use crate::linalg::Matrix;
use crate::polytope::{AffineFunctional, Halfspace, Polytope};
use crate::presets::{self, Preset};
use crate::rational::RVec;
use crate::steering::{Ambient, SteeringScenario};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpaceSpec {
    Named(String),
    Explicit {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vertices: Option<Vec<RVec>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        facets: Option<Vec<Halfspace>>,
    },
}

impl StateSpaceSpec {
    pub fn resolve(&self) -> Result<StateSpace> {
        match self {
            StateSpaceSpec::Named(n) => presets::state_space(n),
            StateSpaceSpec::Explicit {
                label,
                vertices,
                facets,
            } => {
                let label = label.clone().unwrap_or_else(|| "K".into());
                match (vertices, facets) {
                    (Some(v), _) => StateSpace::new(label, v.iter().map(|x| x.0.clone()).collect()),
                    (None, Some(f)) => {
                        let dim = f.first().ok_or(Error::EmptyPolytope)?.normal.len();
                        StateSpace::from_polytope(label, Polytope::from_facets(dim, f.clone())?)
                    }
                    (None, None) => {
                        Err(Error::Parse("state space needs vertices or facets".into()))
                    }
                }
            }
        }
    }

    pub fn explicit(k: &StateSpace) -> Self {
        StateSpaceSpec::Explicit {
            label: Some(k.label.clone()),
            vertices: Some(k.vertices().iter().cloned().map(RVec).collect()),
            facets: None,
        }
    }
}

/// `effects` absent means `effect(measurements)`, or `E(K)` when both are absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoryFile {
    pub state_space: StateSpaceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effects: Option<Vec<AffineFunctional>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measurements: Option<Vec<Measurement>>,
}

impl TheoryFile {
    pub fn resolve(&self) -> Result<RestrictedTheory> {
        let k = self.state_space.resolve()?;
        match (&self.effects, &self.measurements) {
            (Some(e), m) => RestrictedTheory::new(k, EffectRestriction::new(e.clone()), m.clone()),
            (None, Some(m)) => RestrictedTheory::from_measurements(k, m.clone()),
            (None, None) => presets::unrestricted(k),
        }
    }

    pub fn explicit(t: &RestrictedTheory) -> Self {
        TheoryFile {
            state_space: StateSpaceSpec::explicit(&t.k),
            effects: Some(t.e.generators.clone()),
            measurements: t.m.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AmbientSpec {
    /// `"min"` or `"max"`
    Kind(String),
    Explicit(Polytope),
}

impl AmbientSpec {
    pub fn resolve(&self) -> Result<Ambient> {
        match self {
            AmbientSpec::Kind(s) => parse_ambient(s),
            AmbientSpec::Explicit(p) => Ok(Ambient::Explicit(p.clone())),
        }
    }

    pub fn of(a: &Ambient) -> Self {
        match a {
            Ambient::Min => AmbientSpec::Kind("min".into()),
            Ambient::Max => AmbientSpec::Kind("max".into()),
            Ambient::Explicit(p) => AmbientSpec::Explicit(p.clone()),
        }
    }
}

pub fn parse_ambient(s: &str) -> Result<Ambient> {
    match s {
        "min" => Ok(Ambient::Min),
        "max" => Ok(Ambient::Max),
        _ => Err(Error::Parse(format!(
            "ambient must be min, max or a polytope, got {s:?}"
        ))),
    }
}

/// A steering scenario: `parents` are `[K_A, K_B]`, `measurements` are Alice's.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub parents: Vec<StateSpaceSpec>,
    pub ambient: AmbientSpec,
    pub tensor: Matrix,
    #[serde(default)]
    pub measurements: Vec<Measurement>,
}

impl ScenarioFile {
    pub fn resolve(&self) -> Result<SteeringScenario> {
        let [a, b] = self.parents.as_slice() else {
            return Err(Error::Parse("a scenario needs exactly two parents".into()));
        };
        SteeringScenario::new(
            a.resolve()?,
            b.resolve()?,
            self.ambient.resolve()?,
            BipartiteState::new(self.tensor.clone())?,
            self.measurements.clone(),
        )
    }

    pub fn explicit(sc: &SteeringScenario) -> Self {
        ScenarioFile {
            parents: vec![
                StateSpaceSpec::explicit(&sc.ka),
                StateSpaceSpec::explicit(&sc.kb),
            ],
            ambient: AmbientSpec::of(&sc.ambient),
            tensor: sc.rho.tensor.clone(),
            measurements: sc.ms.clone(),
        }
    }
}

/// Any input file: a preset reference, a theory or a scenario.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputFile {
    Preset {
        preset: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ambient: Option<String>,
    },
    Theory(TheoryFile),
    Scenario(ScenarioFile),
}

impl InputFile {
    pub fn resolve(&self) -> Result<Preset> {
        match self {
            InputFile::Preset { preset, ambient } => {
                let a = ambient.as_deref().map(parse_ambient).transpose()?;
                presets::lookup(preset, a)
            }
            InputFile::Theory(t) => t.resolve().map(Preset::Theory),
            InputFile::Scenario(s) => s.resolve().map(Preset::Scenario),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Preset {
    pub fn explicit(&self) -> InputFile {
        match self {
            Preset::Theory(t) => InputFile::Theory(TheoryFile::explicit(t)),
            Preset::Scenario(s) => InputFile::Scenario(ScenarioFile::explicit(s)),
        }
    }
}
