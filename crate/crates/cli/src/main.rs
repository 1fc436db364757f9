//! Command-line surface for the exact pattern-betting engine.
//!
//! Every subcommand prints its data on stdout (text by default, `--json`
//! for machine-readable output) and diagnostics on stderr.  Exit codes:
//! 0 success, 2 invalid input, 3 computational failure.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pattern_duel::asymptotics::{
    rank_counter_bets, whowon_asymptotic, AsymptoticVerdict, PipelineConfig, RankedBet,
};
use pattern_duel::gf::{cluster_gf, transfer_gf, DEFAULT_TRANSFER_BUDGET};
use pattern_duel::pattern::{brute_split, BetSpec, Pattern, DEFAULT_BRUTE_BUDGET};
use pattern_duel::rational::decimal_sig;
use pattern_duel::recurrence::{deficit_sequence, guess, GuessConfig, Side};
use pattern_duel::series::{verdict, Favored, GameVerdict, DISPLAY_DIGITS};
use pattern_duel::tripoly::TriRat;
use pattern_duel::{Error, Rat};

/// Environment variable overriding the fitter working precision.
const PRECISION_ENV: &str = "PATTERN_DUEL_PRECISION";

#[derive(Parser)]
#[command(
    name = "pattern-duel",
    version,
    about = "Exact win probabilities, recurrences and asymptotics for pattern-occurrence betting games"
)]
struct Cli {
    /// Emit machine-readable json instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum GfMethod {
    Cluster,
    Transfer,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Alice,
    Bob,
    Tie,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Alice => Side::Alice,
            SideArg::Bob => Side::Bob,
            SideArg::Tie => Side::Tie,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the weight-enumerator F(x;a,b) as an exact rational function
    Gf {
        /// Alphabet size
        #[arg(short)]
        m: u32,
        /// Alice's pattern set (may be empty)
        #[arg(long, default_value = "")]
        alice: String,
        /// Bob's pattern set (may be empty)
        #[arg(long, default_value = "")]
        bob: String,
        #[arg(long, value_enum, default_value = "cluster")]
        method: GfMethod,
    },
    /// Exact verdict after n rolls from the series
    Whowon {
        #[arg(short)]
        m: u32,
        #[arg(long)]
        alice: String,
        #[arg(long)]
        bob: String,
        /// Number of rolls
        #[arg(short)]
        n: usize,
    },
    /// Same verdict by brute-force enumeration of all m^n words
    Brute {
        #[arg(short)]
        m: u32,
        #[arg(long)]
        alice: String,
        #[arg(long)]
        bob: String,
        #[arg(short)]
        n: usize,
        /// Refuse to enumerate more than this many words
        #[arg(long, default_value_t = DEFAULT_BRUTE_BUDGET)]
        budget: u64,
    },
    /// Guess a linear recurrence for a deficit sequence and print it
    Rec {
        #[arg(short)]
        m: u32,
        #[arg(long)]
        alice: String,
        #[arg(long)]
        bob: String,
        /// Which sequence: alice/bob deficit or tie probability
        #[arg(long, value_enum, default_value = "alice")]
        side: SideArg,
        /// Series terms fed to the guesser
        #[arg(long, default_value_t = 200)]
        terms: usize,
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        /// Held-out verification terms
        #[arg(long, default_value_t = 20)]
        guard: usize,
    },
    /// Estimate the asymptotic constants c_alice, c_bob in 1/2 - c/sqrt(n)
    Asymp {
        #[arg(short)]
        m: u32,
        #[arg(long)]
        alice: String,
        #[arg(long)]
        bob: String,
        /// Sequence terms used for the fit
        #[arg(short = 'K', long, default_value_t = 30000)]
        terms: usize,
        /// Expansion order: fits c_0 .. c_J
        #[arg(short = 'J', long, default_value_t = 2)]
        order: usize,
    },
    /// Rank every counter bet for Bob against Alice's single pattern
    Rank {
        #[arg(short)]
        m: u32,
        /// Alice's pattern
        #[arg(long)]
        alice: String,
        #[arg(short = 'K', long, default_value_t = 20000)]
        terms: usize,
        #[arg(short = 'J', long, default_value_t = 2)]
        order: usize,
    },
}

enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_validation() => 2,
            CliError::Core(_) => 3,
            CliError::Usage(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(m) => m.clone(),
        }
    }
}

/// Parses a comma-separated pattern set: digit strings (`111,222`) or
/// bracketed letter lists (`[1,2,3],[3,2,1]`), mixed freely.
fn parse_patterns(expr: &str) -> Result<Vec<Pattern>, CliError> {
    let expr = expr.trim();
    if expr.is_empty() {
        return Ok(Vec::new());
    }
    // split on commas outside brackets
    let mut tokens = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in expr.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| CliError::Usage(format!("unbalanced brackets in `{expr}`")))?;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                tokens.push(std::mem::take(&mut cur));
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(CliError::Usage(format!("unbalanced brackets in `{expr}`")));
    }
    tokens.push(cur);
    let mut out = Vec::new();
    for tok in tokens {
        let tok = tok.trim();
        let letters: Vec<u32> = if let Some(inner) = tok
            .strip_prefix('[')
            .and_then(|rest| rest.strip_suffix(']'))
        {
            inner
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::Usage(format!("cannot parse pattern `{tok}`")))?
        } else if tok.chars().all(|c| c.is_ascii_digit()) && !tok.is_empty() {
            tok.chars().map(|c| c.to_digit(10).unwrap()).collect()
        } else {
            return Err(CliError::Usage(format!("cannot parse pattern `{tok}`")));
        };
        if letters.iter().any(|&l| l == 0) || letters.is_empty() {
            return Err(CliError::Core(Error::LetterOutOfRange));
        }
        out.push(Pattern::new(letters));
    }
    Ok(out)
}

/// Assembles a validated spec; both sets must be nonempty unless
/// `allow_empty`.
fn build_spec(m: u32, alice: &str, bob: &str, allow_empty: bool) -> Result<BetSpec, CliError> {
    let alice = parse_patterns(alice)?;
    let bob = parse_patterns(bob)?;
    if !allow_empty && (alice.is_empty() || bob.is_empty()) {
        return Err(CliError::Core(Error::EmptyPatternSet));
    }
    Ok(BetSpec::new(m, alice, bob)?)
}

fn pipeline_config() -> Result<PipelineConfig, CliError> {
    let mut cfg = PipelineConfig::default();
    if let Ok(v) = std::env::var(PRECISION_ENV) {
        cfg.precision = v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&p| p >= 1)
            .ok_or_else(|| {
                CliError::Usage(format!("invalid {PRECISION_ENV}: `{v}` (want a positive integer)"))
            })?;
    }
    Ok(cfg)
}

fn rat_json(r: &Rat) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

/// Three-valued outcome flag: did Alice win?  Null on a dead heat.
fn favored_bool(f: Favored) -> Value {
    match f {
        Favored::Alice => Value::Bool(true),
        Favored::Bob => Value::Bool(false),
        Favored::Equal => Value::Null,
    }
}

fn print_verdict(v: &GameVerdict, as_json: bool) {
    if as_json {
        let out = json!({
            "favored": v.favored.to_string(),
            "alice_won": favored_bool(v.favored),
            "p_alice": rat_json(&v.p_alice),
            "p_bob": rat_json(&v.p_bob),
            "p_tie": rat_json(&v.p_tie),
            "display": v.display,
        });
        println!("{out}");
    } else if v.favored == Favored::Equal {
        println!("{} {} {} (tie {})", v.favored, v.display[0], v.display[1], v.display[2]);
    } else {
        println!("{} {} {}", v.favored, v.display[0], v.display[1]);
    }
}

fn print_gf(f: &TriRat, as_json: bool) {
    if as_json {
        println!(
            "{}",
            json!({ "num": f.num().to_string(), "den": f.den().to_string() })
        );
    } else {
        println!("{f}");
    }
}

fn print_asymp(v: &AsymptoticVerdict, as_json: bool) {
    let ca = decimal_sig(v.alice.c0(), DISPLAY_DIGITS);
    let cb = decimal_sig(v.bob.c0(), DISPLAY_DIGITS);
    if as_json {
        let coeffs = |fit: &pattern_duel::asymptotics::AsymptoticFit| -> Vec<String> {
            fit.coeffs()
                .iter()
                .map(|c| decimal_sig(c, DISPLAY_DIGITS))
                .collect()
        };
        let out = json!({
            "favored": v.favored.to_string(),
            "alice_won": favored_bool(v.favored),
            "c_alice": ca,
            "c_bob": cb,
            "coeffs_alice": coeffs(&v.alice),
            "coeffs_bob": coeffs(&v.bob),
            "stability": [v.alice.stability()[0], v.bob.stability()[0]],
        });
        println!("{out}");
    } else {
        println!(
            "{} {} {} (stability {} {})",
            v.favored,
            ca,
            cb,
            v.alice.stability()[0],
            v.bob.stability()[0]
        );
    }
}

fn print_ranking(rows: &[RankedBet], as_json: bool) {
    if as_json {
        let arr: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "bobs": r.bobs.iter().map(Pattern::to_string).collect::<Vec<_>>(),
                    "advantage": decimal_sig(&r.advantage, DISPLAY_DIGITS),
                    "exact_zero": r.exact_zero,
                    "stability": r.stability,
                })
            })
            .collect();
        println!("{}", Value::Array(arr));
    } else {
        for r in rows {
            let bobs: Vec<String> = r.bobs.iter().map(Pattern::to_string).collect();
            let adv = decimal_sig(&r.advantage, DISPLAY_DIGITS);
            if r.exact_zero {
                println!("{} {adv} (exact)", bobs.join(","));
            } else {
                println!("{} {adv}", bobs.join(","));
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Gf {
            m,
            alice,
            bob,
            method,
        } => {
            let spec = build_spec(m, &alice, &bob, true)?;
            let f = match method {
                GfMethod::Cluster => cluster_gf(&spec),
                GfMethod::Transfer => transfer_gf(&spec, DEFAULT_TRANSFER_BUDGET)?,
            };
            print_gf(&f, cli.json);
        }
        Cmd::Whowon { m, alice, bob, n } => {
            let spec = build_spec(m, &alice, &bob, false)?;
            print_verdict(&verdict(&spec, n)?, cli.json);
        }
        Cmd::Brute {
            m,
            alice,
            bob,
            n,
            budget,
        } => {
            let spec = build_spec(m, &alice, &bob, false)?;
            let (plus, zero, minus) = brute_split(&spec, n, budget)?;
            let split = pattern_duel::series::TieSplit { plus, zero, minus };
            print_verdict(&GameVerdict::from_split(&split, n, m), cli.json);
        }
        Cmd::Rec {
            m,
            alice,
            bob,
            side,
            terms,
            max_order,
            max_degree,
            guard,
        } => {
            let spec = build_spec(m, &alice, &bob, false)?;
            let seq = deficit_sequence(&spec, side.into(), terms)?;
            let cfg = GuessConfig {
                max_order,
                max_degree,
                guard_terms: guard,
            };
            let rec = guess(&seq, &cfg).ok_or(Error::NoRecurrenceFound)?;
            let seed: Vec<Rat> = (rec.n0()..rec.n0() + rec.order() as i64)
                .map(|n| seq.get(n).expect("seed inside sequence"))
                .collect();
            if cli.json {
                let out = json!({
                    "coeffs": rec.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "n0": rec.n0(),
                    "seed": seed.iter().map(ToString::to_string).collect::<Vec<_>>(),
                });
                println!("{out}");
            } else {
                println!("{}", rec.serialize_coeffs());
                println!("n0 = {}", rec.n0());
                let seed: Vec<String> = seed.iter().map(ToString::to_string).collect();
                println!("seed = {}", seed.join(", "));
            }
        }
        Cmd::Asymp {
            m,
            alice,
            bob,
            terms,
            order,
        } => {
            let spec = build_spec(m, &alice, &bob, false)?;
            let cfg = pipeline_config()?;
            let v = whowon_asymptotic(&spec, terms, order, &cfg)?;
            print_asymp(&v, cli.json);
        }
        Cmd::Rank {
            m,
            alice,
            terms,
            order,
        } => {
            let pats = parse_patterns(&alice)?;
            let [pat] = pats.as_slice() else {
                return Err(CliError::Usage(
                    "rank takes exactly one alice pattern".to_string(),
                ));
            };
            // validate letters against the alphabet up front
            BetSpec::new(m, vec![pat.clone()], vec![])?;
            let cfg = pipeline_config()?;
            let rows = rank_counter_bets(m, pat, terms, order, &cfg)?;
            print_ranking(&rows, cli.json);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
