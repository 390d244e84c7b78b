//! Command-line front end. [`run`] takes the argument list and output
//! streams so it can be driven from tests.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::crypto::{self, BlockCode};
use crate::enumerate::{census_filter, enumerate_solutions, CensusPredicate};
use crate::error::{Error, Result};
use crate::lazy_tree::{
    attack_cost, cost_model, sample_points, search_space_log10, CostConstants, CostVariant,
    LazyKey, PumpTree, DEFAULT_MATERIALIZE_BOUND,
};
use crate::permutation::CycleType;
use crate::pump::{frt_relation_classes, frt_relations, pump_iterate, split_index, DEFAULT_PUMP_CELL_BOUND};
use crate::solution::{AnalysisOptions, Solution};

pub const ENV_MATERIALIZE_BOUND: &str = "YBPUMP_MATERIALIZE_BOUND";
pub const ENV_OP_SECONDS: &str = "YBPUMP_OP_SECONDS";
pub const ENV_SEARCH_SECONDS: &str = "YBPUMP_SEARCH_SECONDS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_A_SOLUTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    pub materialize_bound: usize,
    pub costs: CostConstants,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            materialize_bound: DEFAULT_MATERIALIZE_BOUND,
            costs: CostConstants::default(),
        }
    }
}

impl Config {
    pub fn from_env() -> Result<Self> {
        Self::from_lookup(|k| std::env::var(k).ok())
    }

    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Self> {
        fn parse<T: std::str::FromStr>(name: &str, v: Option<String>, default: T) -> Result<T> {
            match v {
                None => Ok(default),
                Some(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("{name}={s:?} is not a valid value"))),
            }
        }
        let d = Config::default();
        Ok(Config {
            materialize_bound: parse(ENV_MATERIALIZE_BOUND, lookup(ENV_MATERIALIZE_BOUND), d.materialize_bound)?,
            costs: CostConstants {
                op_seconds: parse(ENV_OP_SECONDS, lookup(ENV_OP_SECONDS), d.costs.op_seconds)?,
                search_seconds: parse(ENV_SEARCH_SECONDS, lookup(ENV_SEARCH_SECONDS), d.costs.search_seconds)?,
            },
        })
    }
}

#[derive(Parser, Debug)]
#[command(name = "ybpump", version, about = "Yang-Baxter solutions, pumping and the toy protocols built on them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct KeyArgs {
    /// Solution file of the base solution.
    solution: PathBuf,
    /// Number of pump iterations.
    #[arg(long)]
    k: u32,
    /// Public point of the key.
    #[arg(long)]
    i: BigUint,
}

#[derive(Args, Debug)]
struct StreamArgs {
    /// Blocks (or text with --text); read from stdin when absent.
    #[arg(long)]
    input: Option<String>,
    /// Letter codec: blank = 00, A = 01, ..., Z = 26.
    #[arg(long)]
    text: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check non-degeneracy, involutivity and braiding.
    Verify {
        solution: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Full structural report.
    Analyze {
        solution: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Pump a solution and write the result.
    Pump {
        solution: PathBuf,
        #[arg(long, default_value_t = 1)]
        iterations: u32,
        /// Output file; stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the label tree of a point.
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        i: BigUint,
    },
    /// Evaluate g^_i at a point.
    Eval {
        #[command(flatten)]
        key: KeyArgs,
        #[arg(long)]
        point: BigUint,
        #[arg(long)]
        inverse: bool,
        /// Never materialize the permutation.
        #[arg(long)]
        lazy: bool,
    },
    /// Encrypt blocks with g^_i.
    Encrypt {
        #[command(flatten)]
        key: KeyArgs,
        #[command(flatten)]
        stream: StreamArgs,
    },
    /// Decrypt blocks with g^_i.
    Decrypt {
        #[command(flatten)]
        key: KeyArgs,
        #[command(flatten)]
        stream: StreamArgs,
    },
    /// Sign with the sender's point j and encrypt for the receiver's point i.
    Sign {
        #[command(flatten)]
        key: KeyArgs,
        #[arg(long)]
        j: BigUint,
        #[command(flatten)]
        stream: StreamArgs,
        /// Also print the signed blocks before encryption.
        #[arg(long)]
        trace: bool,
    },
    /// Open a signed message sent by j to i.
    Open {
        #[command(flatten)]
        key: KeyArgs,
        #[arg(long)]
        j: BigUint,
        #[command(flatten)]
        stream: StreamArgs,
    },
    /// Simulate a key exchange with secrets j (Bob) and l (Alice).
    Kx {
        #[command(flatten)]
        key: KeyArgs,
        #[arg(long)]
        j: BigUint,
        #[arg(long)]
        l: BigUint,
        /// Points compared when the keys are too large to materialize.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Enumerate all solutions of size n and write a census.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Directory for the census files; summary only when absent.
        #[arg(long)]
        output: Option<PathBuf>,
        /// indecomposable, irretractable, condition-c or class=M (repeatable).
        #[arg(long)]
        filter: Vec<String>,
    },
    /// Print structure relations, or the relations of the pumped solution with --frt.
    Relations {
        solution: PathBuf,
        #[arg(long)]
        frt: bool,
    },
    /// Estimated cost of computing one g^_i, and of the attacks.
    Cost {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        small_i: bool,
        /// Number of candidate base solutions for the attack estimate.
        #[arg(long)]
        solutions: Option<u64>,
    },
    /// Number of permutations of a given cycle type.
    CountCycles {
        #[arg(long)]
        size: usize,
        /// Cycle type as length^multiplicity terms, e.g. 4^64 or 1^2,2^3.
        #[arg(long = "type")]
        cycle_type: String,
    },
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run(args: &[String], input: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let config = match Config::from_env() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    run_with_config(args, &config, input, out, err)
}

pub fn run_with_config(args: &[String], config: &Config, input: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, config, input, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::NotASolution(_) => EXIT_NOT_A_SOLUTION,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn load(path: &Path) -> Result<Solution> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Solution::parse_file(&text)
}

fn load_key(args: &KeyArgs, config: &Config, lazy: bool) -> Result<(Solution, LazyKey)> {
    let base = load(&args.solution)?;
    let mut key = LazyKey::new(&base, &args.i, args.k)?;
    if !lazy {
        match key.materialize(config.materialize_bound) {
            Ok(_) | Err(Error::MaterializationBound { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok((base, key))
}

fn read_stream(stream: &StreamArgs, input: &mut dyn Read) -> Result<String> {
    match &stream.input {
        Some(s) => Ok(s.clone()),
        None => {
            let mut s = String::new();
            input.read_to_string(&mut s)?;
            Ok(s.trim_end_matches(['\n', '\r']).to_string())
        }
    }
}

fn read_plain(stream: &StreamArgs, input: &mut dyn Read) -> Result<BlockCode> {
    let raw = read_stream(stream, input)?;
    if stream.text {
        crypto::encode_text(&raw)
    } else {
        raw.parse()
    }
}

fn width(stream: &StreamArgs) -> usize {
    if stream.text {
        2
    } else {
        1
    }
}

fn write_plain(out: &mut dyn Write, stream: &StreamArgs, code: &BlockCode) -> Result<()> {
    if stream.text {
        writeln!(out, "{}", crypto::decode_text(code)?)?;
    } else {
        writeln!(out, "{code}")?;
    }
    Ok(())
}

fn dispatch(command: Command, config: &Config, input: &mut dyn Read, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Verify { solution, format } => {
            let s = load(&solution)?;
            let v = s.verify();
            match format {
                Format::Text => {
                    writeln!(out, "nondegenerate: {}", v.nondegenerate)?;
                    writeln!(out, "involutive: {}", v.involutive())?;
                    writeln!(out, "braided: {}", v.braided())?;
                }
                Format::Json => {
                    let j = serde_json::json!({
                        "nondegenerate": v.nondegenerate,
                        "involutive": v.involutive(),
                        "braided": v.braided(),
                    });
                    writeln!(out, "{j}")?;
                }
            }
            if let Some((x, y)) = v.involutive_witness {
                return Err(Error::NotASolution(format!("r(r({x}, {y})) != ({x}, {y})")));
            }
            if let Some(w) = v.braided_witness {
                return Err(Error::NotASolution(format!(
                    "braiding fails on the triple ({}, {}, {}) [{:?} identity]",
                    w.x, w.y, w.z, w.identity
                )));
            }
        }
        Command::Analyze { solution, format } => {
            let r = load(&solution)?.analyze(&AnalysisOptions::default())?;
            match format {
                Format::Text => write!(out, "{}", r.to_text())?,
                Format::Json => writeln!(out, "{}", r.to_json())?,
            }
        }
        Command::Pump {
            solution,
            iterations,
            output,
        } => {
            let s = load(&solution)?;
            let pumped = pump_iterate(&s, iterations, DEFAULT_PUMP_CELL_BOUND)?;
            let text = pumped.to_file_string(&[format!("pumped from n={} with {iterations} iteration(s)", s.n())]);
            match output {
                Some(p) => fs::write(p, text)?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Tree { n, k, i } => {
            out.write_all(PumpTree::build(&i, n, k)?.render().as_bytes())?;
        }
        Command::Eval {
            key,
            point,
            inverse,
            lazy,
        } => {
            let (_, k) = load_key(&key, config, lazy)?;
            let v = if inverse { k.eval_inverse(&point)? } else { k.eval(&point)? };
            writeln!(out, "{v}")?;
        }
        Command::Encrypt { key, stream } => {
            let (_, k) = load_key(&key, config, false)?;
            let c = crypto::encrypt(&read_plain(&stream, input)?, &k)?;
            writeln!(out, "{}", c.render(width(&stream)))?;
        }
        Command::Decrypt { key, stream } => {
            let (_, k) = load_key(&key, config, false)?;
            let c: BlockCode = read_stream(&stream, input)?.parse()?;
            write_plain(out, &stream, &crypto::decrypt(&c, &k)?)?;
        }
        Command::Sign { key, j, stream, trace } => {
            let (base, receiver) = load_key(&key, config, false)?;
            let sender = LazyKey::new(&base, &j, key.k)?;
            let t = crypto::sign(&read_plain(&stream, input)?, &sender, &receiver)?;
            if trace {
                writeln!(out, "signed: {}", t.intermediate.render(width(&stream)))?;
                writeln!(out, "transmitted: {}", t.transmitted.render(width(&stream)))?;
            } else {
                writeln!(out, "{}", t.transmitted.render(width(&stream)))?;
            }
        }
        Command::Open { key, j, stream } => {
            let (base, receiver) = load_key(&key, config, false)?;
            let sender = LazyKey::new(&base, &j, key.k)?;
            let c: BlockCode = read_stream(&stream, input)?.parse()?;
            write_plain(out, &stream, &crypto::open_signature(&c, &receiver, &sender)?)?;
        }
        Command::Kx {
            key,
            j,
            l,
            samples,
            seed,
        } => {
            let base = load(&key.solution)?;
            let kx = crypto::key_exchange(&base, key.k, &key.i, &j, &l)?;
            for line in kx.transcript() {
                writeln!(out, "{line}")?;
            }
            writeln!(out, "bob key: {}", kx.bob_key.describe())?;
            writeln!(out, "alice key: {}", kx.alice_key.describe())?;
            let points = sample_points(kx.bob_key.outer.size(), samples, seed);
            let equal = kx.keys_agree(config.materialize_bound, &points)?;
            writeln!(out, "keys equal: {equal}")?;
            if !equal {
                return Ok(EXIT_NOT_A_SOLUTION);
            }
        }
        Command::Enumerate { n, output, filter } => {
            let preds = filter
                .iter()
                .map(|f| CensusPredicate::parse(f))
                .collect::<Result<Vec<_>>>()?;
            let census = census_filter(&enumerate_solutions(n)?, &preds);
            if let Some(dir) = output {
                census.write_dir(&dir)?;
            }
            out.write_all(census.summary().as_bytes())?;
        }
        Command::Relations { solution, frt } => {
            let s = load(&solution)?;
            if frt {
                let n = s.n();
                let label = |m: usize| {
                    let (i, k) = split_index(n, m);
                    format!("T_{i}^{k}")
                };
                for r in frt_relation_classes(&s)? {
                    writeln!(out, "{}", r.render(label))?;
                }
                let (_, report) = frt_relations(&s)?;
                writeln!(
                    out,
                    "# generators {}, zero {}, classes up to sign {} (expected {}), properties hold: {}",
                    report.generators,
                    report.zero_generators,
                    report.nonzero_classes,
                    report.expected_classes,
                    report.all_hold()
                )?;
            } else {
                for r in s.structure_relations() {
                    writeln!(out, "{r}")?;
                }
            }
        }
        Command::Cost {
            n,
            k,
            small_i,
            solutions,
        } => {
            let variant = if small_i { CostVariant::SmallI } else { CostVariant::General };
            let e = cost_model(n, k, variant, &config.costs)?;
            writeln!(out, "operations: {}", e.ops)?;
            writeln!(out, "seconds: {:e}", e.seconds)?;
            if let Some(count) = solutions {
                writeln!(out, "attack seconds: {:e}", attack_cost(n, k, count, &config.costs)?)?;
            }
            let space = search_space_log10(n, k, &config.costs);
            writeln!(out, "search space log10: {:.3}", space.log10_permutations)?;
            writeln!(out, "search seconds log10: {:.3}", space.log10_seconds)?;
        }
        Command::CountCycles { size, cycle_type } => {
            let ct = CycleType::parse(size, &cycle_type)?;
            writeln!(out, "log10 count: {:.4}", ct.count_log10())?;
            if size <= 1000 {
                writeln!(out, "count: {}", ct.count_exact())?;
            }
        }
    }
    Ok(EXIT_OK)
}
