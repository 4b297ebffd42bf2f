//! Command-line front end: constructs covariant matrices, converts states
//! to and from coordinate tensors, rotates, reduces, samples random states,
//! and classifies anticoherence. JSON in, JSON out.
//!
//! Exit codes: 0 success, 1 input error, 2 internal-consistency failure
//! (anticoherence criteria disagreeing).

use std::fs;
use std::io::Read as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use spintensor::anticoherence::{
    moment_residuals, multipole_residuals, order_from_residuals, reduction_residuals,
    DirectionSet,
};
use spintensor::multi_index::MultiIndex;
use spintensor::spin::{HalfIntegerSpin, DEFAULT_SPIN_CAP};
use spintensor::tensor::{
    coordinates_of, random_density_matrix, reconstruct, reduced_density, rotate_tensor,
};
use spintensor::weinberg::covariant_set_with_cap;

use spintensor_cli::doc::{
    AnticoherenceDocument, CriterionReport, Metadata, StateDocument, TensorDocument,
    WeinbergDocument, WeinbergEntry,
};
use spintensor_cli::CliError;

#[derive(Parser)]
#[command(
    name = "spintensor",
    version,
    about = "Tensor representation of spin states: covariant matrices, coordinate tensors, anticoherence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Spin cap: commands refuse two_j beyond this.
    #[arg(long, default_value_t = DEFAULT_SPIN_CAP)]
    cap: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the canonical covariant matrices for a spin.
    Weinberg {
        /// Doubled spin quantum number N = 2j.
        #[arg(long = "two-j")]
        two_j: u32,
        /// Only the matrix for this comma-separated index, e.g. "1,2".
        #[arg(long)]
        index: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Expand a state file into its coordinate tensor.
    Coords {
        /// State JSON file, or - for stdin.
        #[arg(default_value = "-")]
        file: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Rebuild the density matrix of a coordinate tensor file.
    Reconstruct {
        /// Tensor JSON file, or - for stdin.
        #[arg(default_value = "-")]
        file: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Classify the anticoherence order of a state.
    Anticoherence {
        /// State JSON file, or - for stdin.
        #[arg(default_value = "-")]
        file: String,
        /// Residual tolerance for the order decision.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Sample Hilbert-Schmidt-ensemble random states (one JSON document per line).
    Random {
        #[arg(long = "two-j")]
        two_j: u32,
        #[arg(long, default_value_t = 1)]
        count: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Rotate a state: coordinates are contracted with the rotation matrix
    /// and the state is rebuilt.
    Rotate {
        /// State JSON file, or - for stdin.
        #[arg(default_value = "-")]
        file: String,
        /// Rotation axis as "x,y,z" (normalized before use).
        #[arg(long)]
        axis: String,
        /// Rotation angle in radians.
        #[arg(long)]
        angle: f64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Partial-trace a state down to a smaller spin.
    Reduce {
        /// State JSON file, or - for stdin.
        #[arg(default_value = "-")]
        file: String,
        /// Doubled target spin, must not exceed the state's two_j.
        #[arg(long = "two-k")]
        two_k: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::input(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::input(format!("reading {path}: {e}")))
    }
}

fn parse_state(path: &str, cap: u32) -> Result<(StateDocument, spintensor::tensor::DensityMatrix), CliError> {
    let text = read_input(path)?;
    let document: StateDocument = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("malformed state JSON: {e}")))?;
    let rho = document.to_density_matrix(cap)?;
    Ok((document, rho))
}

/// Writes one line to stdout; a closed pipe (e.g. `| head`) ends the process
/// quietly with success, matching usual Unix tool behavior.
fn write_line(text: &str) -> Result<(), CliError> {
    use std::io::Write as _;
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        return Err(CliError::input(format!("writing stdout: {e}")));
    }
    Ok(())
}

fn emit<T: serde::Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Consistency(format!("serializing output: {e}")))?;
    write_line(&text)
}

fn parse_index_list(raw: &str, rank: usize) -> Result<MultiIndex, CliError> {
    let parts: Result<Vec<u8>, _> = raw.split(',').map(|p| p.trim().parse::<u8>()).collect();
    let parts = parts.map_err(|e| CliError::input(format!("bad index list {raw:?}: {e}")))?;
    if parts.len() != rank {
        return Err(CliError::input(format!(
            "index {raw:?} has {} entries, want {rank}",
            parts.len()
        )));
    }
    MultiIndex::new(parts).map_err(|e| CliError::input(format!("bad index {raw:?}: {e}")))
}

fn cmd_weinberg(two_j: u32, index: Option<String>, cap: u32) -> Result<(), CliError> {
    let spin = HalfIntegerSpin::from_two_j(two_j);
    let set = covariant_set_with_cap(spin, cap)
        .map_err(|e| CliError::input(e.to_string()))?;
    let wanted = index
        .map(|raw| parse_index_list(&raw, spin.qubit_count()))
        .transpose()?;
    let matrices: Vec<WeinbergEntry> = set
        .iter()
        .filter(|(idx, _)| wanted.as_ref().map_or(true, |w| *idx == w))
        .map(|(idx, m)| {
            let dim = spin.dim();
            WeinbergEntry {
                index: idx.indices().to_vec(),
                multiplicity: idx.multiplicity(),
                matrix: (0..dim)
                    .map(|i| (0..dim).map(|j| m[(i, j)].into()).collect())
                    .collect(),
            }
        })
        .collect();
    if matrices.is_empty() {
        return Err(CliError::input("index filter matched no canonical index"));
    }
    emit(&WeinbergDocument {
        metadata: Metadata::current(cap),
        two_j,
        matrices,
    })
}

fn cmd_coords(file: &str, cap: u32) -> Result<(), CliError> {
    let (document, rho) = parse_state(file, cap)?;
    let set = covariant_set_with_cap(rho.spin(), cap)
        .map_err(|e| CliError::input(e.to_string()))?;
    let x = coordinates_of(&rho, &set)
        .map_err(|e| CliError::Consistency(format!("coordinate extraction failed: {e}")))?;
    emit(&TensorDocument::from_tensor(
        &x,
        document.label,
        Metadata::current(cap),
    ))
}

fn cmd_reconstruct(file: &str, cap: u32) -> Result<(), CliError> {
    let text = read_input(file)?;
    let document: TensorDocument = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("malformed tensor JSON: {e}")))?;
    let x = document.to_tensor(cap)?;
    let set = covariant_set_with_cap(x.spin(), cap)
        .map_err(|e| CliError::input(e.to_string()))?;
    let rho = reconstruct(&x, &set)
        .map_err(|e| CliError::input(format!("tensor does not reconstruct a valid state: {e}")))?;
    emit(&StateDocument::from_density_matrix(
        &rho,
        document.label,
        Metadata::current(cap),
    ))
}

fn cmd_anticoherence(file: &str, tol: f64, cap: u32) -> Result<(), CliError> {
    let (document, rho) = parse_state(file, cap)?;
    let reduction = reduction_residuals(&rho);
    let multipole = multipole_residuals(&rho);
    let moments = moment_residuals(&rho, &DirectionSet::standard());
    let orders = [
        order_from_residuals(&reduction, tol),
        order_from_residuals(&multipole, tol),
        order_from_residuals(&moments, tol),
    ];
    let agreed = orders[0] == orders[1] && orders[1] == orders[2];
    let report = AnticoherenceDocument {
        metadata: Metadata::current(cap),
        two_j: rho.spin().two_j(),
        label: document.label,
        tolerance: tol,
        order: agreed.then_some(orders[0]),
        reduced_state: CriterionReport {
            order: orders[0],
            residuals: reduction,
        },
        multipole: CriterionReport {
            order: orders[1],
            residuals: multipole,
        },
        direct_moment: CriterionReport {
            order: orders[2],
            residuals: moments,
        },
    };
    emit(&report)?;
    if !agreed {
        return Err(CliError::Consistency(format!(
            "anticoherence criteria disagree: reduced-state {}, multipole {}, direct-moment {}",
            orders[0], orders[1], orders[2]
        )));
    }
    Ok(())
}

fn cmd_random(two_j: u32, count: u32, seed: u64, cap: u32) -> Result<(), CliError> {
    if two_j > cap {
        return Err(CliError::input(format!(
            "two_j = {two_j} exceeds the spin cap {cap}"
        )));
    }
    let spin = HalfIntegerSpin::from_two_j(two_j);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for i in 0..count {
        let rho = random_density_matrix(spin, &mut rng);
        let document = StateDocument::from_density_matrix(
            &rho,
            Some(format!("random-{seed}-{i}")),
            Metadata::current(cap),
        );
        let line = serde_json::to_string(&document)
            .map_err(|e| CliError::Consistency(format!("serializing output: {e}")))?;
        write_line(&line)?;
    }
    Ok(())
}

fn parse_axis(raw: &str) -> Result<[f64; 3], CliError> {
    let parts: Result<Vec<f64>, _> = raw.split(',').map(|p| p.trim().parse::<f64>()).collect();
    let parts = parts.map_err(|e| CliError::input(format!("bad axis {raw:?}: {e}")))?;
    if parts.len() != 3 {
        return Err(CliError::input(format!(
            "axis {raw:?} has {} components, want 3",
            parts.len()
        )));
    }
    let norm = (parts[0] * parts[0] + parts[1] * parts[1] + parts[2] * parts[2]).sqrt();
    if !norm.is_finite() || norm == 0.0 {
        return Err(CliError::input("axis must be a finite nonzero vector"));
    }
    Ok([parts[0] / norm, parts[1] / norm, parts[2] / norm])
}

fn cmd_rotate(file: &str, axis: &str, angle: f64, cap: u32) -> Result<(), CliError> {
    let (document, rho) = parse_state(file, cap)?;
    let axis = parse_axis(axis)?;
    let r = spintensor::angular::rotation_matrix_3d(axis, angle)
        .map_err(|e| CliError::input(e.to_string()))?;
    let set = covariant_set_with_cap(rho.spin(), cap)
        .map_err(|e| CliError::input(e.to_string()))?;
    let x = coordinates_of(&rho, &set)
        .map_err(|e| CliError::Consistency(e.to_string()))?;
    let rotated = rotate_tensor(&x, &r).map_err(|e| CliError::input(e.to_string()))?;
    let back = reconstruct(&rotated, &set)
        .map_err(|e| CliError::Consistency(format!("rotated state failed revalidation: {e}")))?;
    emit(&StateDocument::from_density_matrix(
        &back,
        document.label,
        Metadata::current(cap),
    ))
}

fn cmd_reduce(file: &str, two_k: u32, cap: u32) -> Result<(), CliError> {
    let (document, rho) = parse_state(file, cap)?;
    let k = HalfIntegerSpin::from_two_j(two_k);
    let reduced = reduced_density(&rho, k).map_err(|e| CliError::input(e.to_string()))?;
    emit(&StateDocument::from_density_matrix(
        &reduced,
        document.label,
        Metadata::current(cap),
    ))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Weinberg {
            two_j,
            index,
            common,
        } => cmd_weinberg(two_j, index, common.cap),
        Command::Coords { file, common } => cmd_coords(&file, common.cap),
        Command::Reconstruct { file, common } => cmd_reconstruct(&file, common.cap),
        Command::Anticoherence { file, tol, common } => {
            cmd_anticoherence(&file, tol, common.cap)
        }
        Command::Random {
            two_j,
            count,
            seed,
            common,
        } => cmd_random(two_j, count, seed, common.cap),
        Command::Rotate {
            file,
            axis,
            angle,
            common,
        } => cmd_rotate(&file, &axis, angle, common.cap),
        Command::Reduce {
            file,
            two_k,
            common,
        } => cmd_reduce(&file, two_k, common.cap),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version print to stdout and exit 0; argument errors are
            // input errors (exit 1)
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ CliError::Input(_)) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
        Err(e @ CliError::Consistency(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
