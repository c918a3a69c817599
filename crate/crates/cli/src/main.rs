//! `lcdsub`: validate inputs, search for unbiased matrices, run the code
//! constructions, decode and simulate.
//!
//! Results go to stdout (or `-o`) as JSON. Failures print
//! `{error, message, witness}` on stderr and exit with status 1; usage
//! errors exit with status 2.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lcd_core::code::{decode_naive, ProjectionDecoder};
use lcd_core::constructions::{theorem_pipeline, PartitionSpec, PipelineInput, PipelineOptions, TheoremKind};
use lcd_core::drg::{intersection_array, DrgResult};
use lcd_core::formats::{
    code_from_json, code_to_json, parse_graph, parse_group, parse_matrices, parse_partition, read_file, write_matrices,
    MatrixFile,
};
use lcd_core::hadamard::{
    are_unbiased, search_unbiased_extension, validate, HadamardMatrix, MatrixKind, SearchOptions, SearchOutcome,
    UnbiasedSet,
};
use lcd_core::scheme::{divisibility_screen, quotient_matrices, verify_equitable, AssociationScheme};
use lcd_core::simulator::{run_experiment, ChannelSpec};
use lcd_core::{Error, IntMatrix, Subspace};

#[derive(Parser)]
#[command(name = "lcdsub", version, about = "LCD subspace codes from association schemes and Hadamard matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate matrices, schemes, graphs and partitions.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Search for mutually unbiased matrices.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Run one of the code constructions and verify its output.
    Construct(ConstructArgs),
    /// Minimum-distance decoding of one received subspace.
    Decode(DecodeArgs),
    /// Operator-channel simulation with both decoders.
    Simulate(SimulateArgs),
    /// Maximal class sets whose intersection numbers are all divisible by p.
    Screen(ScreenArgs),
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Hadamard matrices; several matrices are also checked for mutual unbiasedness.
    Hadamard {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Weighing matrices W(n, k).
    Weighing {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        weight: Option<usize>,
    },
    /// Relation matrices of a symmetric association scheme (the identity is added when missing).
    Scheme {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Distance-regularity of a graph given as an edge list or adjacency matrix.
    Drg { file: PathBuf },
    /// Equitability of a partition for the given matrices.
    Partition {
        partition: PathBuf,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Hadamard,
    Weighing,
}

impl From<KindArg> for MatrixKind {
    fn from(k: KindArg) -> MatrixKind {
        match k {
            KindArg::Hadamard => MatrixKind::Hadamard,
            KindArg::Weighing => MatrixKind::Weighing,
        }
    }
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Extend a seed set to `target` mutually unbiased matrices.
    Mub(MubArgs),
}

#[derive(Args)]
struct MubArgs {
    #[arg(long)]
    order: usize,
    #[arg(long, default_value_t = 2)]
    target: usize,
    #[arg(long, default_value_t = 100_000_000)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = KindArg::Hadamard)]
    kind: KindArg,
    /// Weight k of W(n, k); defaults to the order.
    #[arg(long)]
    weight: Option<usize>,
    #[arg(long)]
    seed_file: Option<PathBuf>,
    /// Only Bush-type Hadamard matrices.
    #[arg(long)]
    bush: bool,
    /// Search even when the seed set already meets the size bound.
    #[arg(long)]
    no_bound: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Thm {
    Thm42,
    Thm43,
    Cor45,
    Thm51,
    Thm52,
    Thm54,
    Thm55,
    Thm56,
    Thm58,
    Thm59,
}

impl From<Thm> for TheoremKind {
    fn from(t: Thm) -> TheoremKind {
        match t {
            Thm::Thm42 => TheoremKind::Thm42,
            Thm::Thm43 => TheoremKind::Thm43,
            Thm::Cor45 => TheoremKind::Cor45,
            Thm::Thm51 => TheoremKind::Thm51,
            Thm::Thm52 => TheoremKind::Thm52,
            Thm::Thm54 => TheoremKind::Thm54,
            Thm::Thm55 => TheoremKind::Thm55,
            Thm::Thm56 => TheoremKind::Thm56,
            Thm::Thm58 => TheoremKind::Thm58,
            Thm::Thm59 => TheoremKind::Thm59,
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    theorem: Thm,
    /// Relation matrices, a graph, or Hadamard/weighing matrices depending on the construction.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Also sweep alpha over all nonzero field elements.
    #[arg(long)]
    alpha_sweep: bool,
    /// Also include the word of the zero matrix.
    #[arg(long)]
    include_zero_x: bool,
    /// Largest algebra enumerated completely.
    #[arg(long, default_value_t = lcd_core::constructions::DEFAULT_CAP)]
    cap: u128,
    #[arg(long, default_value_t = lcd_core::constructions::DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Alpha for the single-generator construction.
    #[arg(long, default_value_t = 1)]
    alpha: u32,
    /// Partition file (1-based cells).
    #[arg(long, conflicts_with = "blocks")]
    partition: Option<PathBuf>,
    /// Partition into consecutive cells of this size.
    #[arg(long)]
    blocks: Option<usize>,
    /// Automorphism generators for cor45.
    #[arg(long)]
    group: Option<PathBuf>,
    /// Class indices I, comma separated; defaults to the largest set from the divisibility screen.
    #[arg(long, value_delimiter = ',')]
    indices: Vec<usize>,
    #[arg(long, default_value_t = 10_000)]
    codeword_limit: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write the code in the JSON format read by `decode` and `simulate`.
    #[arg(long)]
    code_out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Naive,
    Projection,
    Both,
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long)]
    code: PathBuf,
    /// Matrix whose rows span the received subspace.
    #[arg(long)]
    received: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    method: Method,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long, default_value_t = 0)]
    erasures: usize,
    #[arg(long, default_value_t = 0)]
    errors: usize,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ScreenArgs {
    #[arg(long, num_args = 1.., required = true)]
    scheme: Vec<PathBuf>,
    #[arg(long)]
    p: u64,
}

/// A validation failure with its witness.
struct Failure {
    error: String,
    message: String,
    witness: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            error: e.kind().to_string(),
            message: e.to_string(),
            witness: serde_json::to_value(&e).unwrap_or(Value::Null),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    Ok(read_file(path)?)
}

fn load_matrices(files: &[PathBuf]) -> Result<Vec<MatrixFile>, Failure> {
    let mut out = Vec::new();
    for f in files {
        out.extend(parse_matrices(&read(f)?)?);
    }
    Ok(out)
}

fn load_int_matrices(files: &[PathBuf]) -> Result<Vec<IntMatrix>, Failure> {
    load_matrices(files)?.into_iter().map(|m| m.into_int().map_err(Failure::from)).collect()
}

/// Relation matrices with the identity put in front when it is missing.
fn load_relations(files: &[PathBuf]) -> Result<Vec<IntMatrix>, Failure> {
    let mut mats = load_int_matrices(files)?;
    let n = mats.first().map(IntMatrix::rows).unwrap_or(0);
    if mats.first() != Some(&IntMatrix::identity(n)) {
        mats.insert(0, IntMatrix::identity(n));
    }
    Ok(mats)
}

fn emit(value: &impl serde::Serialize, output: Option<&Path>) -> CmdResult {
    let text = serde_json::to_string_pretty(value).expect("plain data") + "\n";
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())).into()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(cmd: VerifyCmd) -> CmdResult {
    match cmd {
        VerifyCmd::Hadamard { files } => {
            let mats = load_int_matrices(&files)?;
            let mut info = Vec::new();
            for m in &mats {
                let h = HadamardMatrix::new(m.clone())?;
                let square = lcd_core::hadamard::exact_sqrt(h.order() as u64).is_some();
                let regular = square && h.is_regular()?;
                let bush = square && h.order() % 4 == 0 && h.is_bush_type().unwrap_or(false);
                info.push(json!({"order": h.order(), "regular": regular, "bush_type": bush}));
            }
            check_pairs(&mats, MatrixKind::Hadamard)?;
            emit(&json!({"kind": "hadamard", "ok": true, "matrices": info, "mutually_unbiased": mats.len() > 1}), None)
        }
        VerifyCmd::Weighing { files, weight } => {
            let mats = load_int_matrices(&files)?;
            let mut info = Vec::new();
            for m in &mats {
                let k = validate(m, MatrixKind::Weighing, weight)?;
                info.push(json!({"order": m.rows(), "weight": k}));
            }
            check_pairs(&mats, MatrixKind::Weighing)?;
            emit(&json!({"kind": "weighing", "ok": true, "matrices": info, "mutually_unbiased": mats.len() > 1}), None)
        }
        VerifyCmd::Scheme { files } => {
            let scheme = AssociationScheme::from_matrices(load_relations(&files)?)?;
            emit(&scheme_json(&scheme), None)
        }
        VerifyCmd::Drg { file } => {
            let graph = parse_graph(&read(&file)?)?;
            match intersection_array(&graph)? {
                DrgResult::Drg(array) => emit(
                    &json!({
                        "ok": true,
                        "vertices": graph.vertex_count(),
                        "diameter": array.diameter(),
                        "intersection_array": array,
                    }),
                    None,
                ),
                DrgResult::NotDrg(w) => Err(Failure {
                    error: "NotDRG".into(),
                    message: format!("{} differs between vertex pairs at distance {}", w.parameter, w.distance),
                    witness: serde_json::to_value(&w).unwrap_or(Value::Null),
                }),
            }
        }
        VerifyCmd::Partition { partition, files } => {
            let mats = load_int_matrices(&files)?;
            let points = mats.first().map(IntMatrix::rows).unwrap_or(0);
            let part = parse_partition(&read(&partition)?, points)?;
            let check = verify_equitable(&part, &mats)?;
            if let Some((matrix, cell_a, cell_b, axis)) = check.witness {
                return Err(Error::NotEquitable { matrix, cell_a, cell_b, axis }.into());
            }
            let quotients = quotient_matrices(&part, &mats)?;
            let q: Vec<Vec<Vec<i64>>> = quotients.matrices.iter().map(IntMatrix::to_rows).collect();
            emit(
                &json!({"ok": true, "cells": part.cell_count(), "equal_cells": quotients.equal_cells, "quotients": q}),
                None,
            )
        }
    }
}

fn check_pairs(mats: &[IntMatrix], kind: MatrixKind) -> CmdResult {
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            let check = are_unbiased(&mats[i], &mats[j], kind)?;
            if !check.unbiased {
                return Err(Failure {
                    error: "NotUnbiased".into(),
                    message: format!("matrices {} and {} are not unbiased", i + 1, j + 1),
                    witness: json!({"pair": [i + 1, j + 1], "detail": check.witness}),
                });
            }
        }
    }
    Ok(())
}

fn scheme_json(scheme: &AssociationScheme) -> Value {
    let d = scheme.classes();
    let numbers: Vec<Vec<Vec<i64>>> =
        (0..=d).map(|i| (0..=d).map(|j| (0..=d).map(|k| scheme.p(i, j, k)).collect()).collect()).collect();
    let valencies: Vec<i64> = (0..=d).map(|i| scheme.intersection_numbers().valency(i)).collect();
    json!({"ok": true, "points": scheme.points(), "classes": d, "valencies": valencies, "p": numbers})
}

fn search(cmd: SearchCmd) -> CmdResult {
    let SearchCmd::Mub(args) = cmd;
    let kind = MatrixKind::from(args.kind);
    let weight = match kind {
        MatrixKind::Hadamard => args.order,
        MatrixKind::Weighing => args.weight.unwrap_or(args.order),
    };
    let mut set = match &args.seed_file {
        Some(f) => UnbiasedSet::new(kind, load_int_matrices(std::slice::from_ref(f))?)?,
        None => UnbiasedSet::empty(kind, args.order, weight),
    };
    if set.order() != args.order {
        return Err(Error::InvalidSpec(format!("seed matrices have order {}, not {}", set.order(), args.order)).into());
    }
    let opts = SearchOptions { budget: args.budget, bush: args.bush, use_bound: !args.no_bound };
    while set.len() < args.target {
        match search_unbiased_extension(&set, &opts)? {
            SearchOutcome::Found(m) => set.push(m)?,
            SearchOutcome::Nonexistent(reason) => {
                return Err(Failure {
                    error: "Nonexistent".into(),
                    message: format!("no matrix extends the current set of {}", set.len()),
                    witness: json!({"reason": reason, "size": set.len()}),
                })
            }
        }
    }
    let files: Vec<MatrixFile> = set.matrices().iter().cloned().map(MatrixFile::tagged).collect();
    let text = write_matrices(&files);
    match &args.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            emit(&json!({"found": set.len(), "order": set.order(), "kind": kind, "output": path}), None)
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn partition_spec(args: &ConstructArgs, points: Option<usize>) -> Result<PartitionSpec, Failure> {
    Ok(match (&args.partition, args.blocks) {
        (Some(f), _) => {
            let text = read(f)?;
            let points = match points {
                Some(p) => p,
                None => text
                    .lines()
                    .map(|l| l.split('#').next().unwrap_or(""))
                    .flat_map(|l| l.split_whitespace().filter_map(|t| t.parse::<usize>().ok()))
                    .max()
                    .unwrap_or(0),
            };
            PartitionSpec::Explicit(parse_partition(&text, points)?)
        }
        (None, Some(size)) => PartitionSpec::Blocks(size),
        (None, None) => PartitionSpec::Singletons,
    })
}

fn construct(args: ConstructArgs) -> CmdResult {
    let kind = TheoremKind::from(args.theorem);
    let indices = (!args.indices.is_empty()).then(|| args.indices.clone());
    let input = match kind {
        TheoremKind::Thm42 | TheoremKind::Thm43 => {
            let matrices = load_relations(&args.inputs)?;
            let points = matrices[0].rows();
            PipelineInput::Scheme { partition: partition_spec(&args, Some(points))?, matrices, indices }
        }
        TheoremKind::Cor45 => {
            let [file] = args.inputs.as_slice() else {
                return Err(Error::InvalidSpec("cor45 takes exactly one graph file".into()).into());
            };
            let group_file = args
                .group
                .as_ref()
                .ok_or_else(|| Failure::from(Error::InvalidSpec("cor45 needs --group".into())))?;
            PipelineInput::Drg { graph: parse_graph(&read(file)?)?, group: parse_group(&read(group_file)?)?, indices }
        }
        _ => {
            let mkind = match kind {
                TheoremKind::Thm52 | TheoremKind::Thm55 => MatrixKind::Weighing,
                _ => MatrixKind::Hadamard,
            };
            // scheme constructions partition the scheme's points, whose number the
            // pipeline knows; a partition file then gives it by its largest index
            PipelineInput::Matrices { kind: mkind, matrices: load_int_matrices(&args.inputs)?, partition: partition_spec(&args, None)? }
        }
    };
    let opts = PipelineOptions {
        p: args.p,
        r: args.r,
        code: lcd_core::constructions::CodeOptions {
            cap: args.cap,
            samples: args.samples,
            include_zero_x: args.include_zero_x,
            alpha_sweep: args.alpha_sweep,
            seed: args.seed,
        },
        alpha: args.alpha,
        codeword_limit: args.codeword_limit,
    };
    let report = theorem_pipeline(kind, &input, &opts)?;
    if let Some(path) = &args.code_out {
        std::fs::write(path, code_to_json(&report.code)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    emit(&report, args.output.as_deref())
}

fn decode(args: DecodeArgs) -> CmdResult {
    let code = code_from_json(&read(&args.code)?)?;
    let files = parse_matrices(&read(&args.received)?)?;
    let [m] = files.as_slice() else {
        return Err(Error::InvalidSpec("the received file must hold one matrix".into()).into());
    };
    let received = Subspace::row_space(&m.to_fq(code.field())?);
    let naive = || decode_naive(&code, &received);
    let projection = || ProjectionDecoder::new(&code)?.decode(&received);
    let value = match args.method {
        Method::Naive => json!({"naive": naive()?}),
        Method::Projection => json!({"projection": projection()?}),
        Method::Both => {
            let (a, b) = (naive()?, projection()?);
            json!({"naive": a, "projection": b, "agree": a == b})
        }
    };
    emit(&value, None)
}

fn simulate(args: SimulateArgs) -> CmdResult {
    let code = code_from_json(&read(&args.code)?)?;
    let spec = ChannelSpec { erasures: args.erasures, errors: args.errors, seed: args.seed };
    let stats = run_experiment(&code, &spec, args.trials)?;
    emit(&stats, None)
}

fn screen(args: ScreenArgs) -> CmdResult {
    let scheme = AssociationScheme::from_matrices(load_relations(&args.scheme)?)?;
    let sets = divisibility_screen(scheme.intersection_numbers(), args.p)?;
    emit(&json!({"p": args.p, "classes": scheme.classes(), "sets": sets}), None)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(cmd) => verify(cmd),
        Command::Search(cmd) => search(cmd),
        Command::Construct(args) => construct(args),
        Command::Decode(args) => decode(args),
        Command::Simulate(args) => simulate(args),
        Command::Screen(args) => screen(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let body = json!({"error": f.error, "message": f.message, "witness": f.witness});
            eprintln!("{}", serde_json::to_string(&body).expect("plain data"));
            ExitCode::from(1)
        }
    }
}
