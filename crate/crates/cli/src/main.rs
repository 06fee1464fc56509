use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use orderdim::homogeneity::two_homogeneity_certificate;
use orderdim::io::{tuple_labels, CloudJson, PosetJson, RealizerSetJson, StructureJson};
use orderdim::{
    ap_failure_certificate, back_and_forth_iso, check_dpo_fragment, crown, dimension, enumerate_realizers,
    forth_extend, nonhom_witness, product_ramsey_number, qn_lex_nonhom_witness, ramsey_witness_check, rigid_embed,
    sample_dn, semidirect_decomposition, symmetric_sample, Budget, Error, FinitePoset, Fragment, GridStruct,
    OrderedStructure, PartialEmbedding, PointCloud, WitnessPath,
};

/// Order dimension, realizers and generic n-dimensional orders.
///
/// JSON is read from `--in` (or stdin) and written to `--out` (or stdout).
/// Randomness comes only from `--seed`, default 0. The environment variable
/// ORDERDIM_BUDGET caps the nodes and extensions of every search.
#[derive(Parser)]
#[command(name = "orderdim", version)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a crown, a grid or a sampled cloud.
    #[command(subcommand)]
    Gen(Gen),
    /// Order dimension with a witnessing realizer.
    Dim {
        #[command(flatten)]
        input: Input,
        /// Most linear extensions to enumerate.
        #[arg(long)]
        max_ext: Option<u64>,
    },
    /// Rigid embedding of a structure into its grid.
    #[command(subcommand)]
    Embed(Embed),
    /// Embed a structure into a cloud point by point.
    #[command(subcommand)]
    Extend(Extend),
    /// Back-and-forth between two clouds.
    #[command(subcommand)]
    Iso(Iso),
    /// Axioms and cells of a finite cloud.
    #[command(subcommand)]
    Check(Check),
    /// Replayable certificates.
    Certify {
        kind: CertKind,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Product Ramsey numbers and Ramsey witnesses on grids.
    #[command(subcommand)]
    Ramsey(Ramsey),
    /// Realizer census and automorphism factorization.
    #[command(subcommand)]
    Flow(Flow),
    /// Export to other formats.
    #[command(subcommand)]
    Export(Export),
}

#[derive(Args)]
struct Input {
    /// Input JSON file; stdin when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Gen {
    Crown {
        #[arg(long)]
        n: usize,
    },
    Grid {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Close the sample under coordinate permutations.
        #[arg(long)]
        symmetric: bool,
    },
}

#[derive(Subcommand)]
enum Embed {
    Rigid(Input),
}

#[derive(Subcommand)]
enum Extend {
    Forth {
        #[arg(long = "struct")]
        structure: PathBuf,
        #[arg(long)]
        cloud: PathBuf,
    },
}

#[derive(Subcommand)]
enum Iso {
    Bnf {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
}

#[derive(Subcommand)]
enum Check {
    Dpo(Input),
}

#[derive(Clone, Copy, ValueEnum)]
enum CertKind {
    Ap,
    Nonhom,
    Qnlex,
    Twohom,
}

#[derive(Subcommand)]
enum Ramsey {
    Number {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        rmax: usize,
    },
    Witness {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = PathArg::Both)]
        path: PathArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathArg {
    Exhaustive,
    Proof,
    Both,
}

#[derive(Subcommand)]
enum Flow {
    Realizers(Input),
    Decompose(Input),
}

#[derive(Subcommand)]
enum Export {
    Dot(Input),
}

fn budget() -> Result<Budget, Error> {
    match std::env::var("ORDERDIM_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Budget::with_limit)
            .map_err(|_| Error::InvalidArgument(format!("ORDERDIM_BUDGET must be an integer, got {v:?}"))),
        Err(_) => Ok(Budget::default()),
    }
}

fn read_text(path: Option<&Path>) -> Result<String, Error> {
    let mut text = String::new();
    match path {
        Some(p) => text = fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?,
        None => {
            io::stdin().read_to_string(&mut text).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

/// Parses the wire format `J`, then converts so validation errors keep their kind.
fn read<J: DeserializeOwned, T: TryFrom<J, Error = Error>>(path: Option<&Path>) -> Result<T, Error> {
    let wire: J = serde_json::from_str(&read_text(path)?)?;
    T::try_from(wire)
}

fn to_value<T: serde::Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

fn dot(p: &FinitePoset) -> String {
    let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for l in p.labels() {
        out.push_str(&format!("  {};\n", quote(l)));
    }
    for (a, b) in p.covers() {
        out.push_str(&format!("  {} -> {};\n", quote(p.label(a)), quote(p.label(b))));
    }
    out.push_str("}\n");
    out
}

enum Output {
    Json(Value),
    Text(String),
}

fn run(command: Command) -> Result<Output, Error> {
    let json = |v: Value| Ok(Output::Json(v));
    match command {
        Command::Gen(Gen::Crown { n }) => json(to_value(crown(n))),
        Command::Gen(Gen::Grid { m, n }) => json(to_value(GridStruct::new(m, n)?.structure().clone())),
        Command::Gen(Gen::Sample { n, count, seed, symmetric }) => {
            let c = if symmetric { symmetric_sample(n, count, seed)? } else { sample_dn(n, count, seed) };
            json(to_value(c))
        }
        Command::Dim { input, max_ext } => {
            let p: FinitePoset = read::<PosetJson, _>(input.input.as_deref())?;
            let mut b = budget()?;
            if let Some(limit) = max_ext {
                b.max_extensions = limit;
            }
            let r = dimension(&p, &b)?;
            json(json!({"dim": r.dim, "witness": tuple_labels(p.labels(), &r.witness)}))
        }
        Command::Embed(Embed::Rigid(input)) => {
            let s: OrderedStructure = read::<StructureJson, _>(input.input.as_deref())?;
            let points: Vec<Value> = rigid_embed(&s)
                .into_iter()
                .enumerate()
                .map(|(e, c)| json!({"element": s.poset().label(e), "coords": c}))
                .collect();
            json(json!({"m": s.len(), "n": s.arity(), "points": points}))
        }
        Command::Extend(Extend::Forth { structure, cloud }) => {
            let s: OrderedStructure = read::<StructureJson, _>(Some(&structure))?;
            let c: PointCloud = read::<CloudJson, _>(Some(&cloud))?;
            if s.arity() != c.dim() {
                return Err(Error::DimensionMismatch { expected: c.dim(), found: s.arity() });
            }
            let mut f = PartialEmbedding::empty(s.clone(), c)?;
            for q in 0..s.len() {
                f = forth_extend(&f, q)?;
            }
            f.validate()?;
            let embedding: Vec<Value> = (0..s.len())
                .map(|e| json!({"element": s.poset().label(e), "point": f.image(e).unwrap().to_strings()}))
                .collect();
            json(json!({"cloud": to_value(f.cloud().clone()), "embedding": embedding}))
        }
        Command::Iso(Iso::Bnf { a, b, steps }) => {
            let a: PointCloud = read::<CloudJson, _>(Some(&a))?;
            let b: PointCloud = read::<CloudJson, _>(Some(&b))?;
            let iso = back_and_forth_iso(&a, &b, steps)?;
            let pairs: Vec<Value> = iso
                .pairs
                .iter()
                .map(|&(x, y)| json!({"a": iso.a.point(x).to_strings(), "b": iso.b.point(y).to_strings()}))
                .collect();
            json(json!({
                "verified": iso.verify(),
                "axis_map": iso.axis_map,
                "pairs": pairs,
                "a": to_value(iso.a.clone()),
                "b": to_value(iso.b.clone()),
            }))
        }
        Command::Check(Check::Dpo(input)) => {
            let c: PointCloud = read::<CloudJson, _>(input.input.as_deref())?;
            json(to_value(check_dpo_fragment(Fragment::Cloud(&c))))
        }
        Command::Certify { kind, n, seed, steps } => {
            let cert = match kind {
                CertKind::Ap => ap_failure_certificate(n)?,
                CertKind::Nonhom => nonhom_witness(n)?,
                CertKind::Qnlex => qn_lex_nonhom_witness(n)?,
                CertKind::Twohom => two_homogeneity_certificate(n, seed, steps)?,
            };
            json(to_value(cert))
        }
        Command::Ramsey(Ramsey::Number { k, l, m, n, rmax }) => {
            let r = product_ramsey_number(k, l, m, n, rmax, &budget()?)?;
            json(json!({"k": k, "l": l, "m": m, "n": n, "rmax": rmax, "r": r}))
        }
        Command::Ramsey(Ramsey::Witness { a, b, k, r, path }) => {
            let a: OrderedStructure = read::<StructureJson, _>(Some(&a))?;
            let b: OrderedStructure = read::<StructureJson, _>(Some(&b))?;
            let bud = budget()?;
            let mut out = json!({"k": k, "r": r});
            if path != PathArg::Proof {
                out["exhaustive"] = json!(ramsey_witness_check(&a, &b, k, r, WitnessPath::Exhaustive, &bud)?);
            }
            if path != PathArg::Exhaustive {
                out["proof_reduction"] = json!(ramsey_witness_check(&a, &b, k, r, WitnessPath::ProofReduction, &bud)?);
            }
            json(out)
        }
        Command::Flow(Flow::Realizers(input)) => {
            let s: OrderedStructure = read::<StructureJson, _>(input.input.as_deref())?;
            json(to_value(RealizerSetJson::from(&enumerate_realizers(&s, &budget()?)?)))
        }
        Command::Flow(Flow::Decompose(input)) => {
            let c: PointCloud = read::<CloudJson, _>(input.input.as_deref())?;
            json(to_value(semidirect_decomposition(&c, &budget()?)?))
        }
        Command::Export(Export::Dot(input)) => {
            let p: FinitePoset = read::<PosetJson, _>(input.input.as_deref())?;
            Ok(Output::Text(dot(&p)))
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|o| {
        let text = match o {
            Output::Json(v) => serde_json::to_string_pretty(&v).expect("json value") + "\n",
            Output::Text(t) => t,
        };
        emit(cli.out.as_deref(), &text).map_err(|e| Error::InvalidArgument(format!("cannot write output: {e}")))
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", json!({"error": e.kind(), "message": e.to_string()}));
            ExitCode::from(1)
        }
    }
}
