use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use siegel_char::character::closed_form_residuals;
use siegel_char::io::{
    characteristic_to_json, eighth_root_to_json, matrix_from_json, matrix_to_json,
    parse_characteristic_list, word_from_json, word_to_json,
};
use siegel_char::suites::{run_all, RunConfig};
use siegel_char::symplectic::random_word_seeded;
use siegel_char::{
    chi_detailed, chi_generator, closed_form_eval, enumerate_all_mod2, extract_abelian_exponents,
    word_to_matrix, Error, Generator, SymplecticMatrix,
};

const EXIT_SUITE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(
    name = "siegel-char",
    version,
    about = "Exact character of the level-2 Siegel modular group"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Degree g.
    #[arg(long, global = true, default_value_t = 1)]
    g: usize,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    #[arg(long = "word-length", global = true, default_value_t = 8)]
    word_length: usize,
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long = "tail-tol", global = true, default_value_t = 1e-12)]
    tail_tol: f64,
    /// Matrix or word JSON file, `-` for stdin.
    #[arg(long, global = true)]
    matrix: Option<String>,
    /// Characteristic as comma separated integers `c1,...,c2g`.
    #[arg(long = "char", global = true)]
    characteristic: Option<String>,
    /// Output file, `-` for stdout.
    #[arg(long, global = true, default_value = "-")]
    output: String,
    #[arg(long, global = true)]
    markdown: bool,
    #[arg(long = "no-timestamp", global = true)]
    no_timestamp: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate chi_m(M).
    Chi,
    /// Generator values from both evaluation paths.
    Table,
    /// Run the randomized verification suites.
    Verify,
    /// Membership in Sp, Gamma(2), Gamma(4) and Gamma(4,8).
    Member,
    /// Sample a random generator word.
    Random,
    /// Abelianization exponents of a level-2 matrix.
    Decompose,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::BadShape(_)
            | Error::IndexOutOfRange { .. }
            | Error::NonPositiveTolerance(_) => EXIT_PARSE,
            Error::NotSymplectic(_)
            | Error::NotLevel2(_)
            | Error::DegreeMismatch { .. }
            | Error::ParityMismatch(_)
            | Error::NotUpperHalfSpace(_) => EXIT_PRECONDITION,
            _ => EXIT_MISMATCH,
        };
        Self::new(code, e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_input(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
            .map_err(|e| Failure::new(EXIT_PARSE, format!("reading {path}: {e}")))
    }
}

fn write_output(path: &str, text: &str) -> CliResult<()> {
    let result = if path == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())
            .and_then(|_| out.write_all(b"\n"))
    } else {
        fs::write(PathBuf::from(path), format!("{text}\n"))
    };
    result.map_err(|e| Failure::new(EXIT_MISMATCH, format!("writing {path}: {e}")))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

/// Reads `--matrix`, accepting either the matrix format or a generator word.
fn load_value(cli: &Cli) -> CliResult<Value> {
    let path = cli
        .matrix
        .as_deref()
        .ok_or_else(|| Failure::new(EXIT_PARSE, "--matrix <file|-> is required"))?;
    serde_json::from_str(&read_input(path)?)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("invalid JSON: {e}")))
}

fn value_to_matrix(v: &Value) -> CliResult<SymplecticMatrix> {
    if v.get("letters").is_some() {
        Ok(word_to_matrix(&word_from_json(v)?))
    } else {
        Ok(matrix_from_json(v)?)
    }
}

fn load_matrix(cli: &Cli) -> CliResult<SymplecticMatrix> {
    value_to_matrix(&load_value(cli)?)
}

fn cmd_chi(cli: &Cli) -> CliResult<()> {
    let mat = load_matrix(cli)?;
    let text = cli
        .characteristic
        .as_deref()
        .ok_or_else(|| Failure::new(EXIT_PARSE, "--char c1,...,c2g is required"))?;
    let m = parse_characteristic_list(text)?;
    if m.degree() != mat.degree() {
        return Err(Failure::new(
            EXIT_PARSE,
            format!(
                "characteristic has {} entries, matrix needs {}",
                2 * m.degree(),
                2 * mat.degree()
            ),
        ));
    }
    let ev = chi_detailed(&m, &mat)?;
    let out = json!({
        "exponent": ev.value.exponent(),
        "value": ev.value.name(),
        "phi_mod1": ev.phi.to_string(),
        "delta_sign": ev.delta_sign,
    });
    write_output(&cli.output, &pretty(&out))
}

struct TableRow {
    generator: String,
    m: Vec<i64>,
    chi: u8,
    closed_form: u8,
}

fn cmd_table(cli: &Cli) -> CliResult<()> {
    let g = cli.g;
    if g == 0 {
        return Err(Failure::new(EXIT_PARSE, "g must be at least 1"));
    }
    let chars = enumerate_all_mod2(g);
    let mut rows = Vec::new();
    for gen in Generator::all(g) {
        let mat = gen.matrix(g);
        for m in &chars {
            rows.push(TableRow {
                generator: gen.to_string(),
                m: m.to_i64s().expect("entries are 0 or 1"),
                chi: siegel_char::chi(m, &mat)?.exponent(),
                closed_form: chi_generator(m, &gen)?.exponent(),
            });
        }
    }
    let mismatches = rows.iter().filter(|r| r.chi != r.closed_form).count();
    let text = if cli.markdown {
        let mut s =
            String::from("| generator | m | chi | closed form | match |\n|---|---|---|---|---|\n");
        for r in &rows {
            let m: Vec<String> = r.m.iter().map(i64::to_string).collect();
            s.push_str(&format!(
                "| {} | ({}) | e({}/8) | e({}/8) | {} |\n",
                r.generator,
                m.join(","),
                r.chi,
                r.closed_form,
                if r.chi == r.closed_form { "yes" } else { "NO" }
            ));
        }
        s.trim_end().to_string()
    } else {
        let entries: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "generator": r.generator,
                    "m": r.m,
                    "chi": r.chi,
                    "closed_form": r.closed_form,
                    "match": r.chi == r.closed_form,
                })
            })
            .collect();
        pretty(&json!({ "g": g, "rows": entries, "mismatches": mismatches }))
    };
    write_output(&cli.output, &text)?;
    if mismatches > 0 {
        return Err(Failure::new(
            EXIT_MISMATCH,
            format!("{mismatches} table mismatches"),
        ));
    }
    Ok(())
}

fn cmd_verify(cli: &Cli) -> CliResult<()> {
    let cfg = RunConfig {
        g: cli.g,
        seed: cli.seed,
        trials: cli.trials,
        word_length: cli.word_length,
        tol: cli.tol,
        tail_tol: cli.tail_tol,
    };
    let timestamp = (!cli.no_timestamp).then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    let report = run_all(&cfg, timestamp)?;
    let text = serde_json::to_string_pretty(&report)
        .map_err(|e| Failure::new(EXIT_MISMATCH, e.to_string()))?;
    write_output(&cli.output, &text)?;
    if !report.ok {
        let failed: Vec<&str> = report
            .suites
            .iter()
            .filter(|s| !s.ok)
            .map(|s| s.name.as_str())
            .collect();
        return Err(Failure::new(
            EXIT_SUITE,
            format!("failed suites: {}", failed.join(", ")),
        ));
    }
    Ok(())
}

fn cmd_member(cli: &Cli) -> CliResult<()> {
    let out = match value_to_matrix(&load_value(cli)?) {
        Ok(mat) => json!({
            "sp": true,
            "level2": mat.is_level2(),
            "level4": mat.is_level4(),
            "igusa48": mat.is_igusa48(),
        }),
        Err(f) if f.code == EXIT_PRECONDITION => json!({
            "sp": false,
            "level2": false,
            "level4": false,
            "igusa48": false,
        }),
        Err(f) => return Err(f),
    };
    write_output(&cli.output, &pretty(&out))
}

fn cmd_random(cli: &Cli) -> CliResult<()> {
    if cli.g == 0 {
        return Err(Failure::new(EXIT_PARSE, "g must be at least 1"));
    }
    let w = random_word_seeded(cli.g, cli.word_length, cli.seed);
    let out = json!({
        "seed": cli.seed,
        "word": word_to_json(&w),
        "matrix": matrix_to_json(&word_to_matrix(&w)),
    });
    write_output(&cli.output, &pretty(&out))
}

fn cmd_decompose(cli: &Cli) -> CliResult<()> {
    let mat = load_matrix(cli)?;
    let e = extract_abelian_exponents(&mat)?;
    let residuals = closed_form_residuals(&mat, &e)?;
    let sample: Vec<Value> = enumerate_all_mod2(mat.degree())
        .iter()
        .map(|m| {
            Ok(json!({
                "m": characteristic_to_json(m),
                "value": eighth_root_to_json(closed_form_eval(m, &e)?),
            }))
        })
        .collect::<Result<_, Error>>()?;
    let check = if residuals.is_empty() {
        "ok"
    } else {
        "mismatch"
    };
    let out = json!({
        "exponents": serde_json::to_value(&e).map_err(|x| Failure::new(EXIT_MISMATCH, x.to_string()))?,
        "word": word_to_json(&e.to_word()),
        "values": sample,
        "residual_check": check,
        "residuals": residuals.iter().map(characteristic_to_json).collect::<Vec<_>>(),
    });
    write_output(&cli.output, &pretty(&out))?;
    if !residuals.is_empty() {
        return Err(Failure::new(
            EXIT_MISMATCH,
            "closed form disagrees with chi",
        ));
    }
    Ok(())
}

fn configure_threads() {
    if let Some(n) = std::env::var("SIEGEL_CHAR_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // a second initialisation only happens in tests and is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let result = match cli.command {
        Command::Chi => cmd_chi(&cli),
        Command::Table => cmd_table(&cli),
        Command::Verify => cmd_verify(&cli),
        Command::Member => cmd_member(&cli),
        Command::Random => cmd_random(&cli),
        Command::Decompose => cmd_decompose(&cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
