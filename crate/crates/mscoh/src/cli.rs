//! Command-line front end. Every command reads line-delimited JSON from
//! stdin (one document per nonblank line) and writes one line per document.
//!
//! Exit codes: 0 success, 1 domain failure (a Postnikov–Wu violation, a
//! failed round trip), 2 malformed input, invalid arguments or unknown
//! commands. With several input lines the largest code wins.

use std::io::{BufRead, Write};

use clap::{Parser, Subcommand, ValueEnum};
use mscoh_core::classify::WClass;
use mscoh_core::normal::normalize;
use mscoh_core::realize::{realize, roundtrip, Mismatch};
use mscoh_core::{catalogue, Error, MsDescriptor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::json::{self, CensusJson, InputError, NormalFormJson};
use crate::parallel::census_parallel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "mscoh",
    version,
    about = "Mod-2 cohomology rings of 3-manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WArg {
    Zero,
    Nonzero,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Postnikov–Wu identity of each form.
    Verify,
    /// Print the normalizing basis change, its report and the normal form.
    Normalize,
    /// Compile each form into a surgery plan.
    Realize,
    /// Evaluate each plan to its form.
    Evalplan,
    /// Realize and re-evaluate each form, or a random sample of one rank.
    Roundtrip {
        #[arg(long)]
        sample_rank: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the census of isomorphism classes at one rank.
    Classify {
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum)]
        w: WArg,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
    },
    /// Print the dimension of the kernel of cup product on each form.
    Kernel,
    /// Print a built-in form, or its plan with --plan.
    Example {
        name: String,
        #[arg(long)]
        plan: bool,
    },
}

/// A per-line outcome: text to print and an exit code.
struct Outcome {
    line: String,
    code: i32,
}

impl Outcome {
    fn ok(line: String) -> Self {
        Outcome {
            line,
            code: EXIT_OK,
        }
    }

    fn domain(line: String) -> Self {
        Outcome {
            line,
            code: EXIT_DOMAIN,
        }
    }
}

fn malformed(e: InputError) -> Outcome {
    Outcome {
        line: format!("error: {e}"),
        code: EXIT_MALFORMED,
    }
}

fn pw_failure(d: &MsDescriptor) -> Outcome {
    let pairs = d
        .form
        .pw_violations(&d.w)
        .expect("dimensions checked on parse");
    let listed: Vec<String> = pairs
        .iter()
        .map(|(i, j)| format!("({},{})", i + 1, j + 1))
        .collect();
    Outcome::domain(format!("violated {}", listed.join(" ")))
}

fn verify(line: &str) -> Outcome {
    match json::parse_form(line) {
        Err(e) => malformed(e),
        Ok(d) if d.check_pw() => Outcome::ok("ok".into()),
        Ok(d) => pw_failure(&d),
    }
}

fn normalize_line(line: &str) -> Outcome {
    let d = match json::parse_form(line) {
        Ok(d) => d,
        Err(e) => return malformed(e),
    };
    match normalize(&d) {
        Ok(nf) => Outcome::ok(json::to_line(&NormalFormJson::new(&d, &nf))),
        Err(Error::PostnikovWu { .. }) => pw_failure(&d),
        Err(e) => Outcome::domain(format!("error: {e}")),
    }
}

fn realize_line(line: &str) -> Outcome {
    let d = match json::parse_form(line) {
        Ok(d) => d,
        Err(e) => return malformed(e),
    };
    match realize(&d) {
        Ok(r) => Outcome::ok(json::plan_line(&r.plan)),
        Err(Error::PostnikovWu { .. }) => pw_failure(&d),
        Err(e) => Outcome::domain(format!("error: {e}")),
    }
}

fn evalplan(line: &str) -> Outcome {
    let plan = match json::parse_plan(line) {
        Ok(p) => p,
        Err(e) => return malformed(e),
    };
    match plan.eval() {
        Ok(r) => Outcome::ok(json::form_line(&r.descriptor)),
        Err(e) => malformed(InputError::Invalid(e.to_string())),
    }
}

fn describe_mismatch(m: &Mismatch) -> String {
    match m {
        Mismatch::NotRealizable { i, j } => {
            format!("mismatch: violated ({},{})", i + 1, j + 1)
        }
        Mismatch::Entry([i, j, k]) => {
            format!("mismatch: entry ({},{},{})", i + 1, j + 1, k + 1)
        }
        Mismatch::OrientationClass => "mismatch: orientation class".into(),
        Mismatch::Evaluation => "mismatch: evaluation".into(),
    }
}

fn roundtrip_line(line: &str) -> Outcome {
    match json::parse_form(line) {
        Err(e) => malformed(e),
        Ok(d) => match roundtrip(&d) {
            Ok(()) => Outcome::ok("ok".into()),
            Err(m) => Outcome::domain(describe_mismatch(&m)),
        },
    }
}

/// Uniform sample from the Postnikov–Wu descriptors of one rank: `w` is
/// uniform, then the form is uniform in the solution space of that `w`.
pub fn sample_descriptor(rng: &mut ChaCha8Rng, rank: usize) -> mscoh_core::Result<MsDescriptor> {
    let w = mscoh_core::F2Vector::from_bits(rank, rng.gen::<u64>() & ((1u64 << rank) - 1));
    let space = mscoh_core::enumerate_pw(rank, &w)?;
    let code = space.member(rng.gen::<u64>());
    Ok(space.descriptor(code))
}

fn roundtrip_sample(rank: usize, samples: u64, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let d = match sample_descriptor(&mut rng, rank) {
            Ok(d) => d,
            Err(e) => return malformed(InputError::Invalid(e.to_string())),
        };
        if let Err(m) = roundtrip(&d) {
            return Outcome::domain(format!(
                "{} on {}",
                describe_mismatch(&m),
                json::form_line(&d)
            ));
        }
    }
    Outcome::ok(format!("ok {samples}"))
}

fn kernel(line: &str) -> Outcome {
    match json::parse_form(line) {
        Err(e) => malformed(e),
        Ok(d) => Outcome::ok(d.form.cup_kernel_dim().to_string()),
    }
}

fn example(name: &str, plan: bool) -> Outcome {
    match catalogue::get(name) {
        None => malformed(InputError::Invalid(format!(
            "unknown example {name:?}; known: {}",
            catalogue::NAMES.join(", ")
        ))),
        Some(e) if plan => Outcome::ok(json::plan_line(&e.plan)),
        Some(e) => Outcome::ok(json::form_line(&e.descriptor)),
    }
}

fn classify(rank: usize, w: WArg, threads: usize) -> Outcome {
    let w_class = match w {
        WArg::Zero => WClass::Zero,
        WArg::Nonzero => WClass::Nonzero,
    };
    match census_parallel(rank, w_class, threads) {
        Ok(c) => Outcome::ok(json::to_line(&CensusJson::from_census(&c))),
        Err(e) => malformed(InputError::Invalid(e.to_string())),
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, S>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_MALFORMED
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };

    let per_line: Option<fn(&str) -> Outcome> = match cli.command {
        Command::Verify => Some(verify),
        Command::Normalize => Some(normalize_line),
        Command::Realize => Some(realize_line),
        Command::Evalplan => Some(evalplan),
        Command::Kernel => Some(kernel),
        Command::Roundtrip {
            sample_rank: None, ..
        } => Some(roundtrip_line),
        _ => None,
    };

    let outcomes = match (per_line, cli.command) {
        (Some(f), _) => {
            let mut out = Vec::new();
            for line in stdin.lines() {
                let line = match line {
                    Ok(l) => l,
                    Err(e) => {
                        out.push(malformed(InputError::Invalid(format!(
                            "unreadable input: {e}"
                        ))));
                        break;
                    }
                };
                if !line.trim().is_empty() {
                    out.push(f(line.trim()));
                }
            }
            out
        }
        (
            None,
            Command::Roundtrip {
                sample_rank: Some(rank),
                samples,
                seed,
            },
        ) => {
            vec![roundtrip_sample(rank, samples, seed)]
        }
        (None, Command::Classify { rank, w, parallel }) => vec![classify(rank, w, parallel)],
        (None, Command::Example { name, plan }) => vec![example(&name, plan)],
        (None, _) => unreachable!("every line command has a handler"),
    };

    let mut code = EXIT_OK;
    for o in outcomes {
        code = code.max(o.code);
        let sink: &mut dyn Write = if o.code == EXIT_MALFORMED {
            &mut *stderr
        } else {
            &mut *stdout
        };
        let _ = writeln!(sink, "{}", o.line);
    }
    code
}
