mod macros;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use garside_core::criterion::{candidate_deltas, garside_report, CheckOptions, GarsideStructure, Verdict};
use garside_core::generators::{
    mk22_presentation, torus_complement_table, torus_presentation, wirtinger_monoid, BraidWord, TorusParams,
};
use garside_core::lattice::SimpleLattice;
use garside_core::normalform::{checked, fraction_normal_form, word_problem};
use garside_core::oracle::{complete_by_lcm, default_slack, Ball, OracleError, Side};
use garside_core::reversing::DEFAULT_MAX_CELLS;
use garside_core::transducer::Transducer;
use garside_core::{ComplementTable, Error, Presentation};

use macros::Macros;

#[derive(Parser)]
#[command(name = "garside", version, about = "Garside structures, normal forms and torus link monoids")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Config {
    /// Bound on elementary reversing steps per computation.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CELLS, value_parser = positive)]
    max_cells: usize,
    /// Bound on the number of simple elements.
    #[arg(long, global = true, default_value_t = garside_core::lattice::DEFAULT_MAX_SIMPLES, value_parser = positive)]
    max_simples: usize,
    /// Bound on the number of words enumerated by an oracle ball.
    #[arg(long, global = true, default_value_t = garside_core::oracle::DEFAULT_MAX_BALL, value_parser = positive)]
    max_ball: usize,
    /// Extra length allowed to rewrites beyond the ball radius.
    #[arg(long, global = true)]
    slack: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the coherence check.
    #[arg(long, global = true, value_parser = positive)]
    jobs: Option<usize>,
    /// Accept a quasi-central candidate when the criterion is not conclusive.
    #[arg(long, global = true)]
    best_effort: bool,
    /// File of `let name = word` lines expanded in word arguments.
    #[arg(long, global = true)]
    script: Option<PathBuf>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated presentation.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run the Garside criterion.
    Check {
        file: PathBuf,
        /// Candidate Garside element; searched for when omitted.
        #[arg(long)]
        delta: Option<String>,
    },
    /// Build the lattice of simple elements.
    Lattice {
        file: PathBuf,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        count: bool,
    },
    /// Normal form of a signed word.
    Nf {
        file: PathBuf,
        #[arg(short = 'w', long = "word", allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        delta: Option<String>,
    },
    /// Decide equality of two signed words in the group of fractions.
    Eq {
        file: PathBuf,
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: String,
        #[arg(short = 'b', allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        delta: Option<String>,
    },
    /// Compile the normal-form transducer.
    Transducer {
        file: PathBuf,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        dot: bool,
    },
    /// Brute-force queries on a ball of words.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Torus link monoid A_{p,q}.
    Torus {
        #[arg(short)]
        p: usize,
        #[arg(short)]
        q: usize,
        /// Emit the relations induced by the complement table.
        #[arg(long)]
        complemented: bool,
    },
    /// Wirtinger monoid of the closure of (σ1⋯σ_{p−1})^q.
    Wirtinger {
        #[arg(short)]
        p: usize,
        #[arg(short)]
        q: usize,
        /// Complete into a complemented presentation from ball lcms.
        #[arg(long)]
        complemented: bool,
        /// Ball radius used by the completion.
        #[arg(long, default_value_t = 4)]
        radius: usize,
    },
    /// The two-generator monoid M_k^{(2,2)}.
    Mk22 {
        #[arg(short)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum OracleQuery {
    /// Class count of a ball, and the class of a word.
    Ball {
        file: PathBuf,
        #[arg(short = 'L', long)]
        radius: usize,
        #[arg(short = 'w', long = "word")]
        word: Option<String>,
    },
    /// Minimal common right multiples of two words.
    Lcm {
        file: PathBuf,
        #[arg(short = 'L', long)]
        radius: usize,
        #[arg(short = 'u')]
        u: String,
        #[arg(short = 'v')]
        v: String,
    },
    /// First failure of cancellativity inside the ball.
    CancelWitness {
        file: PathBuf,
        #[arg(short = 'L', long)]
        radius: usize,
    },
}

/// A failed command and the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::ResourceLimit { .. } => 3,
            Error::NotVerified(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure { code: 1, message: format!("inconclusive: {e}") }
    }
}

/// Printed output plus the exit status of a completed command.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

type CmdResult = Result<Output, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.config.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if !out.text.ends_with('\n') {
                println!();
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let cfg = &cli.config;
    match &cli.command {
        Command::Gen { kind } => cmd_gen(kind),
        Command::Check { file, delta } => cmd_check(cfg, file, delta.as_deref()),
        Command::Lattice { file, delta, dot, count } => {
            let l = lattice(cfg, file, delta.as_deref())?;
            if *count {
                Ok(Output::ok(l.len().to_string()))
            } else if *dot {
                Ok(Output::ok(l.export_dot()))
            } else if cfg.format == Format::Json {
                Ok(Output::ok(l.to_json()))
            } else {
                let lines: Vec<String> = l.ids().map(|s| format!("{} {}", s.0, l.format(s))).collect();
                Ok(Output::ok(lines.join("\n")))
            }
        }
        Command::Nf { file, word, delta } => {
            let l = lattice(cfg, file, delta.as_deref())?;
            let a = l.structure().table.alphabet();
            let w = a.parse_signed(&expand(cfg, word)?)?;
            let nf = checked(&l, fraction_normal_form(&l, &w)?)?;
            if cfg.format == Format::Json {
                let side = |v: &[garside_core::lattice::SimpleId]| v.iter().map(|&s| l.format(s)).collect::<Vec<_>>();
                let v = json!({"numerator": side(&nf.numerator), "denominator": side(&nf.denominator)});
                Ok(Output::ok(serde_json::to_string_pretty(&v).unwrap()))
            } else {
                Ok(Output::ok(nf.format(&l)))
            }
        }
        Command::Eq { file, a, b, delta } => {
            let l = lattice(cfg, file, delta.as_deref())?;
            let al = l.structure().table.alphabet();
            let wa = al.parse_signed(&expand(cfg, a)?)?;
            let wb = al.parse_signed(&expand(cfg, b)?)?;
            let equal = word_problem(&l, &wa, &wb)?;
            let text = if cfg.format == Format::Json {
                json!({ "equal": equal }).to_string()
            } else {
                equal.to_string()
            };
            Ok(Output { text, code: if equal { 0 } else { 1 } })
        }
        Command::Transducer { file, delta, dot } => {
            let l = lattice(cfg, file, delta.as_deref())?;
            let t = Transducer::build(&l)?;
            Ok(Output::ok(if *dot { t.export_dot() } else { t.to_json() }))
        }
        Command::Oracle { query } => cmd_oracle(cfg, query),
    }
}

fn cmd_gen(kind: &GenKind) -> CmdResult {
    let p = match kind {
        GenKind::Torus { p, q, complemented } => {
            let t = TorusParams::new(*p, *q)?;
            if *complemented {
                torus_complement_table(t).to_presentation()
            } else {
                torus_presentation(t)
            }
        }
        GenKind::Wirtinger { p, q, complemented, radius } => {
            TorusParams::new((*p).min(*q), (*p).max(*q))?;
            let w = wirtinger_monoid(&BraidWord::torus(*p, *q)?)?;
            if *complemented {
                complete_by_lcm(&w, *radius)?
            } else {
                w
            }
        }
        GenKind::Mk22 { k } => mk22_presentation(*k),
    };
    Ok(Output::ok(p.format()))
}

fn read_presentation(file: &Path) -> Result<Presentation, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", file.display()),
    })?;
    Ok(Presentation::parse(&text)?)
}

fn expand(cfg: &Config, word: &str) -> Result<String, Failure> {
    match &cfg.script {
        None => Ok(word.to_string()),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure {
                code: 2,
                message: format!("{}: {e}", path.display()),
            })?;
            Ok(Macros::parse(&text)?.expand(word))
        }
    }
}

fn options(cfg: &Config) -> CheckOptions {
    CheckOptions {
        max_cells: cfg.max_cells,
        ..CheckOptions::default()
    }
}

fn cmd_check(cfg: &Config, file: &Path, delta: Option<&str>) -> CmdResult {
    let p = read_presentation(file)?;
    let d = delta.map(|s| p.alphabet.parse_word(&expand(cfg, s)?).map_err(Failure::from)).transpose()?;
    let report = garside_report(&p, d.as_deref(), &options(cfg));
    let text = match cfg.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    let code = match report.verdict {
        Verdict::Garside => 0,
        _ if report.hit_limit => 3,
        _ => 1,
    };
    Ok(Output { text, code })
}

/// Certifies the structure (criterion first, then `--best-effort`) and
/// builds its lattice.
fn lattice(cfg: &Config, file: &Path, delta: Option<&str>) -> Result<SimpleLattice, Failure> {
    let p = read_presentation(file)?;
    let d = delta.map(|s| p.alphabet.parse_word(&expand(cfg, s)?).map_err(Failure::from)).transpose()?;
    let opts = options(cfg);
    let report = garside_report(&p, d.as_deref(), &opts);
    let structure = match GarsideStructure::from_report(&p, &report, cfg.max_cells) {
        Ok(s) => s,
        Err(e) if !cfg.best_effort => return Err(e.into()),
        Err(e) => {
            let table = ComplementTable::from_presentation(&p)?;
            let candidates = match d {
                Some(d) => vec![d],
                None => candidate_deltas(&table, &opts)?,
            };
            candidates
                .iter()
                .find_map(|c| GarsideStructure::assume(&p, c, cfg.max_cells).ok())
                .ok_or(Failure::from(e))?
        }
    };
    if structure.best_effort {
        eprintln!(
            "warning: unverified structure, using quasi-central Δ = {}",
            p.alphabet.format_word(&structure.delta)
        );
    }
    Ok(SimpleLattice::build_with_limit(&structure, cfg.max_simples)?)
}

fn cmd_oracle(cfg: &Config, query: &OracleQuery) -> CmdResult {
    let (file, radius) = match query {
        OracleQuery::Ball { file, radius, .. }
        | OracleQuery::Lcm { file, radius, .. }
        | OracleQuery::CancelWitness { file, radius } => (file, *radius),
    };
    if radius == 0 {
        return Err(Failure { code: 2, message: "radius must be at least 1".into() });
    }
    let p = read_presentation(file)?;
    let slack = cfg.slack.unwrap_or_else(|| default_slack(&p));
    let ball = Ball::build(&p, radius, slack, cfg.max_ball)?;
    let a = &p.alphabet;
    let rep = |c: u32| {
        let w = ball.rep(c);
        if w.is_empty() {
            "1".to_string()
        } else {
            a.format_word(&w)
        }
    };
    let v = match query {
        OracleQuery::Ball { word, .. } => {
            let mut v = json!({"radius": radius, "slack": slack, "exact": ball.is_exact(), "classes": ball.class_count()});
            if let Some(w) = word {
                let w = a.parse_word(&expand(cfg, w)?)?;
                let c = ball.class_of(&w)?;
                let members: Vec<String> = ball.members(c).iter().map(|m| a.format_word(m)).collect();
                v["class"] = json!({"id": c, "rep": rep(c), "members": members});
            }
            v
        }
        OracleQuery::Lcm { u, v, .. } => {
            let wu = a.parse_word(&expand(cfg, u)?)?;
            let wv = a.parse_word(&expand(cfg, v)?)?;
            let set = ball.lcm_set(&wu, &wv)?;
            let reps: Vec<String> = set.iter().map(|&c| rep(c)).collect();
            json!({"radius": radius, "unique": set.len() == 1, "lcm_set": reps})
        }
        OracleQuery::CancelWitness { .. } => match ball.find_cancellativity_witness() {
            Some(w) => json!({
                "radius": radius,
                "found": true,
                "side": match w.side { Side::Left => "left", Side::Right => "right" },
                "a": a.format_word(&w.a),
                "u": a.format_word(&w.u),
                "v": a.format_word(&w.v),
            }),
            None => json!({"radius": radius, "found": false, "note": format!("none found up to {radius}")}),
        },
    };
    Ok(Output::ok(serde_json::to_string_pretty(&v).unwrap()))
}
