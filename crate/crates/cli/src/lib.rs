//! Command-line driver: generates instances, reconstructs and verifies
//! witnesses, validates transition-probability preservation, and inverts
//! resolving-set profiles.
//!
//! Exit codes: `0` success, `1` mathematical failure (verification or
//! validation), `2` bad input or I/O.

pub mod format;
pub mod json;
pub mod report;

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use wigner::generators::symmetry_from_witness;
use wigner::reconstruct::{contradiction_moduli, run_pipeline, validate_symmetry_detailed, verification_samples, verify_witness};
use wigner::resolving::{gap_readings, DistanceProfile};
use wigner::sampling::{mix_seed, random_in_domain, rng_from_seed};
use wigner::{
    build_resolving_set, canonicalize, gap_distance, profile_of, recover_from_profile, Error, GeneratorKind,
    GeneratorSpec, Linearity, SymmetryMap, Tolerances64,
};

use format::{write_atomic, Meta, OperatorFile, RecordKind};
use report::{
    ContradictionRecord, ProfileRecord, ReconstructionRecord, ResolveRecord, TolerancesRecord, ValidateRecord,
    VerifyRecord,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Parser, Debug)]
#[command(name = "wigner", version, about = "Reconstruct the isometry behind a Wigner symmetry")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a ground-truth instance to an operator file.
    Generate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reconstruct the witness of an instance and report residuals.
    Reconstruct {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check a given witness against an instance.
    Verify {
        /// Operator file holding the witness to check.
        #[arg(long)]
        witness: PathBuf,
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Measure how far an instance is from preserving transition probabilities.
    Validate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Round-trip a projection through its resolving-set profile.
    Resolve {
        /// Vector record; a random element of D is drawn when absent.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Where the instance comes from: an operator file or generator flags.
#[derive(Args, Debug, Clone, Default)]
pub struct InstanceArgs {
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub kind: Option<GeneratorKind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Conjugation boundary for partial_conjugation (one-based).
    #[arg(long)]
    pub j: Option<usize>,
    /// Linearity of a random_isometry instance.
    #[arg(long)]
    pub tag: Option<Linearity>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long = "tol-verify")]
    pub tol_verify: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Result of one invocation. `report` is the JSON document produced, if
/// any; it has also been written to `--out` when that flag was given.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: u8,
    pub report: Option<String>,
    pub message: Option<String>,
    pub wrote_file: bool,
}

impl Outcome {
    fn error(e: CliError) -> Self {
        Self {
            code: e.code,
            report: None,
            message: Some(e.message),
            wrote_file: false,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            Outcome {
                code,
                report: None,
                message: Some(e.render().to_string()),
                wrote_file: false,
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Generate { instance, out } => cmd_generate(instance, out.as_ref()),
        Command::Reconstruct { instance, run } => cmd_reconstruct(instance, run),
        Command::Verify { witness, instance, run } => cmd_verify(witness, instance, run),
        Command::Validate { instance, run } => cmd_validate(instance, run),
        Command::Resolve { input, n, seed, out } => cmd_resolve(input.as_ref(), *n, *seed, out.as_ref()),
    };
    result.unwrap_or_else(Outcome::error)
}

fn timestamp() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

fn tolerances(tol_verify: Option<f64>) -> Result<Tolerances64, CliError> {
    let base = Tolerances64::default();
    match tol_verify {
        Some(v) => base.with_verify(v).map_err(CliError::input),
        None => Ok(base),
    }
}

fn emit(code: u8, json: String, out: Option<&PathBuf>, message: Option<String>) -> Result<Outcome, CliError> {
    if let Some(path) = out {
        write_atomic(path, &json)?;
    }
    Ok(Outcome {
        code,
        report: Some(json),
        message,
        wrote_file: out.is_some(),
    })
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    json::to_pretty(value)
}

fn generator_spec(args: &InstanceArgs) -> Result<GeneratorSpec, CliError> {
    let kind = args
        .kind
        .ok_or_else(|| CliError::input("an instance needs --in or --kind"))?;
    let n = args.n.ok_or_else(|| CliError::input("--n is required with --kind"))?;
    let spec = GeneratorSpec {
        kind,
        n,
        m: args.m,
        seed: args.seed,
        j: args.j,
        tag: args.tag,
    };
    spec.validate().map_err(CliError::input)?;
    Ok(spec)
}

struct Instance {
    map: Box<dyn SymmetryMap<f64>>,
    record: OperatorFile,
}

fn load_instance(args: &InstanceArgs) -> Result<Instance, CliError> {
    let Some(path) = &args.input else {
        let spec = generator_spec(args)?;
        let map = spec.build::<f64>().map_err(CliError::input)?;
        return Ok(Instance {
            map,
            record: OperatorFile::from_generator(&spec),
        });
    };
    let file = OperatorFile::read(path)?;
    match file.kind {
        RecordKind::Witness => {
            let w = file.to_witness()?;
            let scramble = mix_seed(file.meta.seed.unwrap_or(args.seed), 0x5ca1_ab1e);
            Ok(Instance {
                map: Box::new(symmetry_from_witness(w, scramble)),
                record: file,
            })
        }
        RecordKind::Generator => {
            let spec = file.to_generator()?;
            let map = spec.build::<f64>().map_err(CliError::input)?;
            Ok(Instance { map, record: file })
        }
        RecordKind::Vector => Err(CliError::input(format!(
            "{}: field `kind`: a vector record does not describe a map",
            path.display()
        ))),
    }
}

pub fn cmd_generate(args: &InstanceArgs, out: Option<&PathBuf>) -> Result<Outcome, CliError> {
    let spec = generator_spec(args)?;
    let record = match spec.witness::<f64>().map_err(CliError::input)? {
        Some(w) => OperatorFile::from_witness(
            &w,
            Meta {
                seed: Some(spec.seed),
                generator: Some(spec.kind),
                j: spec.j,
            },
        ),
        None => OperatorFile::from_generator(&spec),
    };
    emit(EXIT_OK, record.to_json(), out, None)
}

fn failure_reason(e: &Error) -> Option<&'static str> {
    match e {
        Error::Verification { .. } => Some("verification"),
        Error::NotASymmetry(_) => Some("not_a_symmetry"),
        Error::PhaseRelation { .. } => Some("phase_relation"),
        Error::Parseval(_) => Some("parseval"),
        _ => None,
    }
}

pub fn cmd_reconstruct(args: &InstanceArgs, run: &RunArgs) -> Result<Outcome, CliError> {
    let tol = tolerances(run.tol_verify)?;
    let instance = load_instance(args)?;
    let mut record = ReconstructionRecord {
        command: "reconstruct",
        status: "ok",
        reason: None,
        message: None,
        instance: instance.record,
        witness: None,
        max_gap_residual: None,
        mean_gap_residual: None,
        parseval_residual: None,
        classification_evidence: None,
        phase_relation_residual: None,
        fixture_residual: None,
        delta: None,
        epsilon: None,
        sample_count: run.samples,
        seed: args.seed,
        tolerances: TolerancesRecord::from(&tol),
        timestamp: timestamp(),
    };
    let code = match run_pipeline(&*instance.map, run.samples, args.seed, &tol) {
        Ok(report) => {
            record.fill_from(&report);
            if report.is_certified(&tol) {
                EXIT_OK
            } else {
                let e = Error::Verification {
                    max_gap_residual: report.max_gap_residual,
                    fixture_residual: report.fixture_residual,
                };
                record.status = "failed";
                record.reason = Some("verification".into());
                record.message = Some(e.to_string());
                EXIT_FAILURE
            }
        }
        Err(e) => match failure_reason(&e) {
            Some(reason) => {
                record.status = "failed";
                record.reason = Some(reason.into());
                record.message = Some(e.to_string());
                EXIT_FAILURE
            }
            None => return Err(CliError::input(e)),
        },
    };
    let message = record.message.clone();
    emit(code, to_json(&record), run.out.as_ref(), message)
}

pub fn cmd_verify(witness: &Path, args: &InstanceArgs, run: &RunArgs) -> Result<Outcome, CliError> {
    let tol = tolerances(run.tol_verify)?;
    let w = OperatorFile::read(witness)?.to_witness()?;
    let instance = load_instance(args)?;
    if run.samples == 0 {
        return Err(CliError::input("--samples must be at least 1"));
    }
    let samples = verification_samples::<f64>(instance.map.domain_dim(), run.samples, args.seed)
        .map_err(CliError::input)?;
    let (max, mean) = verify_witness(&*instance.map, &w, &samples, &tol).map_err(CliError::input)?;
    let ok = max <= tol.verify;
    let record = VerifyRecord {
        command: "verify",
        status: if ok { "ok" } else { "failed" },
        reason: (!ok).then(|| "verification".to_string()),
        instance: instance.record,
        max_gap_residual: max,
        mean_gap_residual: mean,
        sample_count: run.samples,
        seed: args.seed,
        tolerances: TolerancesRecord::from(&tol),
        timestamp: timestamp(),
    };
    emit(if ok { EXIT_OK } else { EXIT_FAILURE }, to_json(&record), run.out.as_ref(), None)
}

pub fn cmd_validate(args: &InstanceArgs, run: &RunArgs) -> Result<Outcome, CliError> {
    let tol = tolerances(run.tol_verify)?;
    let instance = load_instance(args)?;
    if run.samples == 0 {
        return Err(CliError::input("--samples must be at least 1"));
    }
    let map = &*instance.map;
    let v = validate_symmetry_detailed(map, run.samples, args.seed, &tol).map_err(CliError::input)?;
    let contradiction_pairs = (2..map.domain_dim())
        .map(|j| {
            contradiction_moduli(map, j, &tol).map(|(before, after)| ContradictionRecord {
                j,
                modulus_before: before,
                modulus_after: after,
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::input)?;
    let ok = v.max_residual <= tol.verify;
    let record = ValidateRecord {
        command: "validate",
        status: if ok { "ok" } else { "failed" },
        reason: (!ok).then(|| "validation".to_string()),
        instance: instance.record,
        max_residual: v.max_residual,
        random_residual: v.random_residual,
        fixture_residual: v.fixture_residual,
        basis_residual: v.basis_residual,
        contradiction_pairs,
        pair_count: v.pair_count,
        seed: args.seed,
        tolerances: TolerancesRecord::from(&tol),
        timestamp: timestamp(),
    };
    emit(if ok { EXIT_OK } else { EXIT_FAILURE }, to_json(&record), run.out.as_ref(), None)
}

pub fn cmd_resolve(
    input: Option<&PathBuf>,
    n: Option<usize>,
    seed: u64,
    out: Option<&PathBuf>,
) -> Result<Outcome, CliError> {
    let tol = Tolerances64::default();
    let v = match (input, n) {
        (Some(path), _) => OperatorFile::read(path)?.to_vector()?,
        (None, Some(n)) => random_in_domain(n, &mut rng_from_seed(seed), &tol).map_err(CliError::input)?,
        (None, None) => return Err(CliError::input("resolve needs --in or --n")),
    };
    let p = canonicalize(&v, &tol).map_err(CliError::input)?;
    let r = build_resolving_set(p.dim()).map_err(CliError::input)?;
    let readings = gap_readings(&p, &r).map_err(CliError::input)?;
    let profile: DistanceProfile<f64> = profile_of(&p, &r).map_err(CliError::input)?;
    let mut record = ResolveRecord {
        command: "resolve",
        status: "ok",
        reason: None,
        message: None,
        input: OperatorFile::from_vector(&v),
        gap_readings: readings,
        profile: ProfileRecord {
            moduli_basis: profile.moduli_basis.clone(),
            moduli_diff: profile.moduli_diff.clone(),
            moduli_idiff: profile.moduli_idiff.clone(),
        },
        recovered: None,
        residual: None,
        tolerances: TolerancesRecord::from(&tol),
        timestamp: timestamp(),
    };
    let code = match recover_from_profile(&profile, &tol) {
        Ok(q) => {
            let residual = gap_distance(&p, &q).map_err(CliError::input)?;
            record.recovered = Some(OperatorFile::from_vector(q.rep()));
            record.residual = Some(residual);
            if residual <= tol.eq {
                EXIT_OK
            } else {
                record.status = "failed";
                record.reason = Some("residual".into());
                EXIT_FAILURE
            }
        }
        Err(e @ (Error::NotInDomain { .. } | Error::InconsistentProfile { .. } | Error::ZeroPivot(_))) => {
            record.status = "failed";
            record.reason = Some(
                if matches!(e, Error::NotInDomain { .. }) {
                    "not in D"
                } else {
                    "inconsistent profile"
                }
                .into(),
            );
            record.message = Some(e.to_string());
            EXIT_FAILURE
        }
        Err(e) => return Err(CliError::input(e)),
    };
    let message = record.message.clone();
    emit(code, to_json(&record), out, message)
}
