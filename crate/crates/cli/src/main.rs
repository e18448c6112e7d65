mod dot;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fermap::encoding::detect_classical_with;
use fermap::equiv::{self, Budget, Equivalence, Witness};
use fermap::mapping::MappingError;
use fermap::oracle::{self, Sweep};
use fermap::ttree::{self, TernaryTree};
use fermap::{BinMatrix, FermionQubitMapping, NamedMapping, ProductState};
use serde_json::{json, Value};

/// Largest qubit count the `verify --oracle` sweep runs on.
const ORACLE_LIMIT: usize = fermap::oracle::CAR_LIMIT;

#[derive(Parser)]
#[command(name = "fermap", version, about = "Fermion-to-qubit mapping toolkit")]
struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Known {
    Jw,
    Bk,
    Parity,
    Sierpinski,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pairing {
    Canonical,
    Legacy,
    Real,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a named mapping.
    Known {
        #[arg(long, value_enum)]
        name: Known,
        #[arg(long)]
        n: usize,
    },
    /// Emit a mapping built from a ternary tree.
    TreeMapping {
        #[arg(long)]
        tree: PathBuf,
        /// Product vacuum as symbols from 0 1 + - r l.
        #[arg(long)]
        vacuum: Option<String>,
        #[arg(long, value_enum, default_value = "canonical")]
        pairing: Pairing,
    },
    /// Emit the matrix of the canonical tree mapping.
    TreeMatrix {
        #[arg(long)]
        tree: PathBuf,
    },
    /// Validate a mapping, detect a classical encoding, optionally check densely.
    Verify {
        #[arg(long)]
        mapping: PathBuf,
        #[arg(long)]
        oracle: bool,
    },
    /// Maximum and mean Pauli weight.
    Weights {
        #[arg(long)]
        mapping: PathBuf,
    },
    /// Two-mode template of a mapping.
    Classify2 {
        #[arg(long)]
        mapping: PathBuf,
    },
    /// Decide equivalence under relabelling.
    Equivalent {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Replay a witness log on a mapping.
    Apply {
        #[arg(long)]
        mapping: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Transform a product of ladder operators, e.g. "a† 3 a 1".
    Transform {
        #[arg(long)]
        mapping: PathBuf,
        #[arg(long)]
        term: String,
    },
    /// DOT rendering of the mapping diagram.
    Dot {
        #[arg(long)]
        mapping: PathBuf,
    },
}

enum CliError {
    /// Bad file, flag or argument. Exit 2.
    Input(String),
}

struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Report { text: text.into(), json, ok: true }
    }
}

type Outcome = Result<Report, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn seed() -> u64 {
    std::env::var("FERMAP_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_mapping(path: &Path) -> Result<FermionQubitMapping, CliError> {
    FermionQubitMapping::parse(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_tree(path: &Path) -> Result<TernaryTree, CliError> {
    TernaryTree::parse(read(path)?.trim()).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn mapping_json(m: &FermionQubitMapping) -> Value {
    let pairs: Vec<Value> = m.pairs().iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect();
    json!({ "n": m.n(), "pairs": pairs })
}

fn matrix_json(g: &BinMatrix) -> Value {
    json!(g.rows().iter().map(|r| r.to_string()).collect::<Vec<_>>())
}

fn known(name: Known, n: usize) -> Outcome {
    let bad = |e: &dyn std::fmt::Display| input(format!("--n {n}: {e}"));
    if n == 0 {
        return Err(input("--n must be at least 1"));
    }
    let m = match name {
        Known::Jw => FermionQubitMapping::jordan_wigner(n),
        Known::Bk => FermionQubitMapping::named(NamedMapping::BravyiKitaev, n).map_err(|e| bad(&e))?,
        Known::Parity => FermionQubitMapping::named(NamedMapping::Parity, n).map_err(|e| bad(&e))?,
        Known::Sierpinski => {
            let depth = [(1, 1), (4, 2), (13, 3), (40, 4)]
                .iter()
                .find(|&&(size, _)| size == n)
                .map(|&(_, d)| d)
                .ok_or_else(|| input(format!("--n {n}: sierpinski needs n in 1, 4, 13, 40")))?;
            ttree::canonical_mapping(&TernaryTree::complete(depth))
        }
    };
    Ok(Report::ok(m.to_string(), mapping_json(&m)))
}

fn tree_mapping(tree: &Path, vacuum: Option<&str>, pairing: Pairing) -> Outcome {
    let t = load_tree(tree)?;
    let vac = match vacuum {
        Some(s) => {
            let v = ProductState::from_symbols(s).ok_or_else(|| input(format!("--vacuum {s:?}: bad symbol")))?;
            if v.n() != t.n() {
                return Err(input(format!("--vacuum has {} qubits, tree has {}", v.n(), t.n())));
            }
            Some(v)
        }
        None => None,
    };
    let err = |e: ttree::TreeError| input(format!("{}: {e}", tree.display()));
    let m = match (pairing, vac) {
        (Pairing::Canonical, None) => ttree::canonical_mapping(&t),
        (Pairing::Canonical, Some(v)) => ttree::revacuum(&t, &ttree::canonical_mapping(&t), &v).map_err(err)?.1,
        (Pairing::Legacy, v) => {
            ttree::pair_for_vacuum(&t, &v.unwrap_or_else(|| ProductState::zeros(t.n()))).map_err(err)?
        }
        (Pairing::Real, None) => ttree::braided_real_pairing(&t),
        (Pairing::Real, Some(_)) => return Err(input("--vacuum is not supported with --pairing real")),
    };
    Ok(Report::ok(m.to_string(), mapping_json(&m)))
}

fn tree_matrix(tree: &Path) -> Outcome {
    let g = ttree::tree_matrix(&load_tree(tree)?);
    Ok(Report::ok(g.to_string(), json!({ "n": g.n(), "rows": matrix_json(&g) })))
}

fn verify(path: &Path, run_oracle: bool) -> Outcome {
    let m = match FermionQubitMapping::parse(&read(path)?) {
        Ok(m) => m,
        Err(MappingError::Invalid(v)) => {
            let msg = format!("invalid mapping: {v}");
            return Ok(Report { text: msg.clone(), json: json!({ "valid": false, "error": msg }), ok: false });
        }
        Err(e) => return Err(input(format!("{}: {e}", path.display()))),
    };
    let n = m.n();
    let mut lines = vec![format!("valid: {} Hermitian operators, pairwise anticommuting", 2 * n)];
    let mut summary = Vec::new();
    let mut js = json!({ "valid": true, "n": n });
    let mut ok = true;

    let encoding = detect_classical_with(&m, 2 * n, seed());
    match &encoding {
        Ok(enc) if enc.is_linear() => summary.push("linear encoding, G read back".to_string()),
        Ok(enc) => summary.push(format!("affine encoding with b={}, G read back", enc.b())),
        Err(e) => summary.push(e.to_string()),
    }
    match &encoding {
        Ok(enc) => {
            js["classical"] = json!({ "linear": enc.is_linear(), "g": matrix_json(enc.g()), "b": enc.b().to_string() });
            lines.push(format!("G =\n{}", enc.g().to_string().trim_end()));
        }
        Err(e) => js["classical"] = json!({ "error": e.to_string() }),
    }

    if run_oracle {
        if n > ORACLE_LIMIT {
            summary.push(format!("oracle skipped above {ORACLE_LIMIT} qubits"));
            js["oracle"] = json!({ "skipped": true });
        } else {
            let sweep = Sweep::default_for(n, seed());
            let sampled = match sweep {
                Sweep::Sampled { count, .. } => format!(" (sampled {count})"),
                Sweep::Exhaustive => String::new(),
            };
            let result = oracle::check_car(&m, oracle::TOLERANCE)
                .map_err(|e| format!("dense CAR check failed: {e}"))
                .and_then(|()| match &encoding {
                    Ok(enc) => oracle::verify_affine_with(&m, enc.g(), enc.b(), sweep)
                        .map(|()| format!("all 2^{n} Fock states +1 phase{sampled}"))
                        .map_err(|e| e.to_string()),
                    Err(_) => oracle::verify_fock_basis_with(&m, sweep)
                        .map(|()| format!("all 2^{n} Fock states orthonormal stabilizer eigenstates{sampled}"))
                        .map_err(|e| e.to_string()),
                });
            match result {
                Ok(s) => {
                    js["oracle"] = json!({ "passed": true, "detail": s });
                    summary.push(s);
                }
                Err(e) => {
                    ok = false;
                    js["oracle"] = json!({ "passed": false, "detail": e });
                    summary.push(format!("oracle FAILED: {e}"));
                }
            }
        }
    }
    let summary = summary.join(", ");
    js["summary"] = json!(summary);
    lines.push(summary);
    Ok(Report { text: lines.join("\n"), json: js, ok })
}

fn weights(path: &Path) -> Outcome {
    let m = load_mapping(path)?;
    let w = m.weight_stats();
    let mean = *w.mean.numer() as f64 / *w.mean.denom() as f64;
    Ok(Report::ok(
        format!("max weight {}\nmean weight {} ({mean:.4})", w.max, w.mean),
        json!({ "max": w.max, "mean": w.mean.to_string(), "mean_value": mean }),
    ))
}

fn classify2(path: &Path) -> Outcome {
    let m = load_mapping(path)?;
    let t = equiv::classify_two_mode(&m).map_err(|e| input(format!("{}: {e}", path.display())))?;
    Ok(Report::ok(t.name(), json!({ "template": t.name() })))
}

fn equivalent(a: &Path, b: &Path, max_n: usize) -> Outcome {
    let (ma, mb) = (load_mapping(a)?, load_mapping(b)?);
    let e = equiv::equivalent(&ma, &mb, Budget::with_max_n(max_n)).map_err(|e| input(e.to_string()))?;
    let (text, js) = match &e {
        Equivalence::Equivalent(w) => (
            format!("Equivalent\n{}", w.to_string().trim_end()),
            json!({ "result": "Equivalent", "witness": w.ops().iter().map(|o| o.to_string()).collect::<Vec<_>>() }),
        ),
        Equivalence::Inequivalent(r) | Equivalence::Unknown(r) => {
            (format!("{}\n{r}", e.label()), json!({ "result": e.label(), "reason": r }))
        }
    };
    Ok(Report::ok(text.trim_end(), js))
}

fn apply(mapping: &Path, witness: &Path) -> Outcome {
    let m = load_mapping(mapping)?;
    let w = Witness::parse(&read(witness)?).map_err(|e| input(format!("{}: {e}", witness.display())))?;
    let out = w.replay(&m).map_err(|e| input(format!("{}: {e}", witness.display())))?;
    Ok(Report::ok(out.to_string(), mapping_json(&out)))
}

/// `a† 3 a 1`, `a^3 a1`, `a+ 3`: creation markers are `†`, `^`, `+`.
fn parse_term(term: &str) -> Result<Vec<(usize, bool)>, String> {
    let mut ops = Vec::new();
    let mut tokens = term.split_whitespace().peekable();
    while let Some(tok) = tokens.next() {
        let rest = tok.strip_prefix('a').ok_or_else(|| format!("expected a ladder operator, got {tok:?}"))?;
        let (dagger, rest) = match rest.chars().next() {
            Some(c @ ('†' | '^' | '+')) => (true, &rest[c.len_utf8()..]),
            _ => (false, rest),
        };
        let index = if rest.is_empty() {
            tokens.next().ok_or_else(|| format!("{tok:?} is missing a mode index"))?
        } else {
            rest
        };
        let i = index.parse().map_err(|_| format!("bad mode index {index:?}"))?;
        ops.push((i, dagger));
    }
    if ops.is_empty() {
        return Err("empty term".into());
    }
    Ok(ops)
}

fn transform(path: &Path, term: &str) -> Outcome {
    let m = load_mapping(path)?;
    let ops = parse_term(term).map_err(|e| input(format!("--term: {e}")))?;
    let sum = m.transform_ladder_term(&ops).map_err(|e| input(format!("--term: {e}")))?;
    let terms: Vec<Value> = sum.terms().map(|(c, p)| json!({ "coefficient": c.to_string(), "pauli": p.unsigned().to_string() })).collect();
    Ok(Report::ok(sum.to_string(), json!({ "n": m.n(), "terms": terms })))
}

fn render_dot(path: &Path) -> Outcome {
    let m = load_mapping(path)?;
    let d = dot::to_dot(&m);
    Ok(Report::ok(d.clone(), json!({ "dot": d })))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Known { name, n } => known(*name, *n),
        Command::TreeMapping { tree, vacuum, pairing } => tree_mapping(tree, vacuum.as_deref(), *pairing),
        Command::TreeMatrix { tree } => tree_matrix(tree),
        Command::Verify { mapping, oracle } => verify(mapping, *oracle),
        Command::Weights { mapping } => weights(mapping),
        Command::Classify2 { mapping } => classify2(mapping),
        Command::Equivalent { a, b, max_n } => equivalent(a, b, *max_n),
        Command::Apply { mapping, witness } => apply(mapping, witness),
        Command::Transform { mapping, term } => transform(mapping, term),
        Command::Dot { mapping } => render_dot(mapping),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable"));
            } else {
                print!("{}", r.text);
                if !r.text.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(CliError::Input(msg)) => {
            if cli.json {
                println!("{}", json!({ "error": msg }));
            }
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
