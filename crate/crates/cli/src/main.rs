mod batch;
mod verdict;

use std::io::{ErrorKind, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use gptlab::bipartite;
use gptlab::compatibility;
use gptlab::contextuality;
use gptlab::io::{self, InputFile, StateSpaceSpec};
use gptlab::presets::{self, Preset};
use gptlab::rational;
use gptlab::steering;

use verdict::{Answer, Question, Verdict};

/// Exact decision procedures for restricted GPTs: compatibility, simplex
/// embedding, preparation noncontextuality and steering.
///
/// Exit codes: 0 = YES, 1 = NO, 2 = error or theorem inapplicable.
#[derive(Parser)]
#[command(name = "gptlab", version)]
struct Cli {
    /// Add `wall_time_ms` to verdicts (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    /// Worker threads for batch commands.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Input {
    /// Theory or scenario JSON file (`-` for stdin).
    file: Option<PathBuf>,
    /// Use a named preset instead of a file.
    #[arg(long)]
    preset: Option<String>,
    /// Ambient tensor product for scenarios: `min` or `max`.
    #[arg(long)]
    ambient: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a preset as explicit JSON.
    Preset {
        name: Option<String>,
        #[arg(long)]
        ambient: Option<String>,
        /// List preset names.
        #[arg(long)]
        list: bool,
    },
    /// E-compatibility of the generating measurements.
    Compat {
        #[command(flatten)]
        input: Input,
        /// Comma-separated measurement indices (default: all).
        #[arg(long, value_delimiter = ',')]
        measurements: Option<Vec<usize>>,
    },
    /// E(K)-compatibility of the generating measurements.
    EkCompat {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',')]
        measurements: Option<Vec<usize>>,
    },
    /// Simplex embeddability of (K, E).
    Embed {
        #[command(flatten)]
        input: Input,
    },
    /// Preparation noncontextuality of (K, effect(M)).
    PrepNc {
        #[command(flatten)]
        input: Input,
    },
    /// Does the assemblage have a local hidden state model?
    Steer {
        #[command(flatten)]
        input: Input,
    },
    /// Steering verdict against preparation noncontextuality on (K_rho, effect(M)).
    Crosscheck {
        #[command(flatten)]
        input: Input,
    },
    /// Re-check a verdict file with the exact checkers.
    Verify { file: PathBuf },
    /// Compare the minimal and maximal tensor products of two state spaces.
    Tensor {
        /// Preset name or JSON file for K_A.
        a: String,
        /// Preset name or JSON file for K_B.
        b: String,
    },
    /// CHSH value of a scenario with Alice's first two measurements on both sides.
    Chsh {
        #[command(flatten)]
        input: Input,
    },
    /// Seeded random experiments.
    Batch {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also print every verdict as one JSON line.
        #[arg(long)]
        emit: bool,
    },
    /// LHS verdicts of the isotropic-analog state on a grid of gamma.
    Sweep {
        #[arg(long, value_enum, default_value_t = Side::Inner)]
        side: Side,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Bisection and exact thresholds for the isotropic-analog state.
    Bracket {
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Bisection tolerance as `p/q`.
        #[arg(long, default_value = "1/4096")]
        tol: String,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Suite {
    Theorem9,
    Hierarchy,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Side {
    Inner,
    Outer,
}

impl Input {
    fn load(&self) -> Result<(InputFile, Preset)> {
        let ambient = self.ambient.as_deref().map(io::parse_ambient).transpose()?;
        let resolved = match (&self.preset, &self.file) {
            (Some(name), None) => presets::lookup(name, ambient)?,
            (None, Some(path)) => {
                let text = read_input(path)?;
                let mut file = InputFile::parse(&text)?;
                if let Some(a) = &self.ambient {
                    match &mut file {
                        InputFile::Preset { ambient, .. } => *ambient = Some(a.clone()),
                        InputFile::Scenario(s) => s.ambient = io::AmbientSpec::Kind(a.clone()),
                        InputFile::Theory(_) => bail!("--ambient applies to scenarios only"),
                    }
                }
                file.resolve()?
            }
            (Some(_), Some(_)) => bail!("give either a file or --preset, not both"),
            (None, None) => bail!("no input: give a file or --preset"),
        };
        Ok((resolved.explicit(), resolved))
    }
}

/// `println!` that returns an error instead of panicking when stdout is closed.
macro_rules! out {
    ($($t:tt)*) => {
        writeln!(std::io::stdout().lock(), $($t)*)?
    };
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    out!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn emit(mut v: Verdict, started: Instant, timing: bool) -> Result<u8> {
    if timing {
        v.wall_time_ms = Some(started.elapsed().as_millis());
    }
    print_json(&v)?;
    Ok(v.exit_code() as u8)
}

fn state_space_arg(s: &str) -> Result<gptlab::gpt::StateSpace> {
    let path = PathBuf::from(s);
    if path.is_file() {
        let spec: StateSpaceSpec = serde_json::from_str(&read_input(&path)?)?;
        return Ok(spec.resolve()?);
    }
    Ok(presets::state_space(s)?)
}

fn run(cli: Cli) -> Result<u8> {
    let started = Instant::now();
    let timing = cli.timing;
    match cli.cmd {
        Cmd::Preset {
            name,
            ambient,
            list,
        } => {
            if list {
                for n in presets::THEORY_PRESETS {
                    out!("{n}");
                }
                out!("square_tetra_pr");
                out!("bloch_inner(n)\nbloch_outer(n)\nbloch_isotropic(gamma, inner|outer, n)");
                return Ok(0);
            }
            let name = name.ok_or_else(|| anyhow!("preset name required"))?;
            let ambient = ambient.as_deref().map(io::parse_ambient).transpose()?;
            print_json(&presets::lookup(&name, ambient)?.explicit())?;
            Ok(0)
        }
        Cmd::Compat {
            input,
            measurements,
        } => {
            let (file, p) = input.load()?;
            let t = verdict::theory(&p)?;
            let ms = verdict::select(t.measurements()?, measurements.as_deref())?;
            let mut v = Verdict::new(
                Question::ECompat,
                compatibility::e_compatible(&ms, &t.k, &t.e)?,
                file,
            );
            v.measurements = measurements;
            emit(v, started, timing)
        }
        Cmd::EkCompat {
            input,
            measurements,
        } => {
            let (file, p) = input.load()?;
            let t = verdict::theory(&p)?;
            let ms = verdict::select(t.measurements()?, measurements.as_deref())?;
            let mut v = Verdict::new(
                Question::EkCompat,
                compatibility::ek_compatible(&ms, &t.k)?,
                file,
            );
            v.measurements = measurements;
            emit(v, started, timing)
        }
        Cmd::Embed { input } => {
            let (file, p) = input.load()?;
            let t = verdict::theory(&p)?;
            emit(
                Verdict::new(Question::Embed, contextuality::simplex_embeddable(t)?, file),
                started,
                timing,
            )
        }
        Cmd::PrepNc { input } => {
            let (file, p) = input.load()?;
            let t = verdict::theory(&p)?;
            emit(
                Verdict::new(
                    Question::PrepNc,
                    contextuality::prep_noncontextual(t)?,
                    file,
                ),
                started,
                timing,
            )
        }
        Cmd::Steer { input } => {
            let (file, p) = input.load()?;
            let sc = verdict::scenario(&p)?;
            let d = steering::has_lhs_model(&steering::assemblage(sc), &sc.kb);
            emit(Verdict::new(Question::Steer, d, file), started, timing)
        }
        Cmd::Crosscheck { input } => {
            let (file, p) = input.load()?;
            let sc = verdict::scenario(&p)?;
            let report = match steering::theorem9_crosscheck(sc) {
                Ok(r) => r,
                Err(gptlab::Error::TheoremInapplicable(msg)) => {
                    let reduction = match steering::restrict_to_j(sc)? {
                        steering::Reduction::Reduced { .. } => {
                            "reducible to K_B cap J; rerun on the reduced scenario"
                        }
                        steering::Reduction::NotReducible(_) => {
                            "no retraction onto K_B cap J exists"
                        }
                    };
                    eprintln!("theorem inapplicable: {msg} ({reduction})");
                    return Ok(2);
                }
                Err(e) => return Err(e.into()),
            };
            let v = Verdict {
                question: Question::Crosscheck,
                answer: if report.agree {
                    Answer::Yes
                } else {
                    Answer::No
                },
                certificate: Some(serde_json::to_value(&report)?),
                witness: None,
                measurements: None,
                input_digest: verdict::digest(&file),
                input: file,
                wall_time_ms: None,
            };
            emit(v, started, timing)
        }
        Cmd::Verify { file } => {
            let v: Verdict =
                serde_json::from_str(&read_input(&file)?).context("malformed verdict")?;
            if v.certificate.is_none() && v.witness.is_none() {
                bail!("verdict carries neither a certificate nor a Farkas witness");
            }
            if verdict::verify(&v)? {
                out!("pass");
                Ok(0)
            } else {
                out!("fail");
                Ok(1)
            }
        }
        Cmd::Tensor { a, b } => {
            let (ka, kb) = (state_space_arg(&a)?, state_space_arg(&b)?);
            let min = bipartite::minimal_tensor(&ka, &kb).complete()?;
            let max = bipartite::maximal_tensor(&ka, &kb).complete()?;
            let equal = min.same_set(&max)?;
            #[derive(Serialize)]
            struct Report {
                a: String,
                b: String,
                min_vertices: usize,
                max_vertices: usize,
                equal: bool,
            }
            print_json(&Report {
                a: ka.label.clone(),
                b: kb.label.clone(),
                min_vertices: min.body.verts().len(),
                max_vertices: max.body.verts().len(),
                equal,
            })?;
            Ok(if equal { 0 } else { 1 })
        }
        Cmd::Chsh { input } => {
            let (_, p) = input.load()?;
            let sc = verdict::scenario(&p)?;
            if sc.ms.len() < 2 || sc.ka.dim() != sc.kb.dim() {
                bail!("chsh needs two binary measurements usable on both factors");
            }
            let v = bipartite::chsh_value(&sc.rho, &sc.ms[0], &sc.ms[1], &sc.ms[0], &sc.ms[1])?;
            out!(
                "{}",
                serde_json::json!({ "chsh": rational::format(&v), "local_bound": "2" })
            );
            Ok(0)
        }
        Cmd::Batch {
            suite,
            count,
            seed,
            emit,
        } => {
            let (ok, lines) = match suite {
                Suite::Theorem9 => {
                    let (s, vs) = batch::theorem9(seed, count)?;
                    print_json(&s)?;
                    (s.agree == s.count && s.verified == s.count, vs)
                }
                Suite::Hierarchy => {
                    let (s, vs) = batch::hierarchy(seed, count)?;
                    print_json(&s)?;
                    (s.violations == 0 && s.verified == s.verdicts_checked, vs)
                }
            };
            if emit {
                for v in lines {
                    out!("{}", serde_json::to_string(&v)?);
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Sweep {
            side,
            n,
            steps,
            csv,
        } => {
            let kb = bloch(side, n)?;
            let rows = batch::sweep(&kb, steps.max(1));
            if csv {
                out!("gamma,lhs");
                for (g, yes) in rows {
                    out!("{},{}", rational::format(&g), yes);
                }
            } else {
                let v: Vec<_> = rows
                    .iter()
                    .map(|(g, y)| serde_json::json!({ "gamma": rational::format(g), "lhs": y }))
                    .collect();
                print_json(&v)?;
            }
            Ok(0)
        }
        Cmd::Bracket { n, tol } => {
            let tol = rational::parse(&tol)?;
            let mut out = serde_json::Map::new();
            for (name, side) in [("inner", Side::Inner), ("outer", Side::Outer)] {
                let kb = bloch(side, n)?;
                let exact = steering::isotropic_threshold(&kb);
                let b = batch::bracket(&kb, rational::frac(3, 4), &tol);
                out.insert(
                    name.into(),
                    serde_json::json!({
                        "vertices": kb.vertices().len(),
                        "facets": kb.facets().len(),
                        "exact": rational::format(&exact),
                        "lower": rational::format(&b.lower),
                        "upper": rational::format(&b.upper),
                        "steps": b.steps.len(),
                    }),
                );
            }
            print_json(&out)?;
            Ok(0)
        }
    }
}

fn bloch(side: Side, n: usize) -> Result<gptlab::gpt::StateSpace> {
    Ok(match side {
        Side::Inner => presets::bloch_inner(n)?,
        Side::Outer => presets::bloch_outer(n)?,
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("GPTLAB_LOG")).init();
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .ok();
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e)
            if e.downcast_ref::<std::io::Error>()
                .is_some_and(|e| e.kind() == ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
