//! The `esgame` command line: solving, censuses, strategy verification,
//! simulation, terminal play, boundary-word conversion and the HTTP service.

mod play;

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use esgame_core::{
    census_of, label_states_with_limit, play_game, shape_to_word, strategy_supported, table_winner, verify_strategy,
    word_to_shape, BoundaryWord, EngineError, GameConfig, GameError, LossCensus, PlayPolicy, Shape, SimulationStats,
    StateTable, StrategyError, Variant, DEFAULT_STATE_LIMIT,
};
use thiserror::Error;

pub use play::play;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Game(#[from] GameError),

    #[error(transparent)]
    Engine(#[from] EngineError),

    #[error(transparent)]
    Strategy(#[from] StrategyError),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Service(#[from] esgame_service::ServiceError),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input, 3 for a failed verification, 4 for resource limits.
    pub fn exit_code(&self) -> u8 {
        fn game(e: &GameError) -> u8 {
            match e {
                GameError::StateLimit { .. } => 4,
                _ => 2,
            }
        }
        match self {
            CliError::Usage(_) => 2,
            CliError::Game(e) | CliError::Strategy(StrategyError::Game(e)) => game(e),
            CliError::Engine(EngineError::Game(e)) => game(e),
            CliError::Engine(EngineError::Strategy(StrategyError::Game(e))) => game(e),
            CliError::Engine(EngineError::PolicyUnavailable { .. } | EngineError::Strategy(_)) => 2,
            CliError::Strategy(_) => 2,
            CliError::Verification(_) => 3,
            CliError::Engine(_) | CliError::Service(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "esgame", version, about = "Solve, verify and play the Erdős–Szekeres permutation game")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Winner from the empty board and the number of states.
    Solve(SolveArgs),
    /// Next-player-loss census over a range of boards.
    Count(CountArgs),
    /// Certify the player-1 strategy against the solver.
    Verify(VerifyArgs),
    /// Play many engine-vs-engine games.
    Simulate(SimulateArgs),
    /// Play against the engine in the terminal.
    Play(PlayArgs),
    /// Convert between shapes and boundary words.
    #[command(subcommand)]
    Word(WordCommand),
    /// Run the HTTP play service.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Avoidance,
    Achievement,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Avoidance => Variant::Avoidance,
            VariantArg::Achievement => Variant::Achievement,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Strategy,
    Solver,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Table,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub b: u32,
    #[arg(long, value_enum, default_value = "avoidance")]
    pub variant: VariantArg,
    #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
    pub max_states: u128,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub a_min: u32,
    #[arg(long)]
    pub a_max: u32,
    #[arg(long)]
    pub b_min: u32,
    #[arg(long)]
    pub b_max: u32,
    #[arg(long, value_enum, default_value = "avoidance")]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
    pub max_states: u128,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub b: u32,
    /// Boards with a < b are skipped.
    #[arg(long, default_value_t = 2)]
    pub a_min: u32,
    #[arg(long, default_value_t = 12)]
    pub a_max: u32,
    #[arg(long, value_enum, default_value = "avoidance")]
    pub variant: VariantArg,
    /// Write the per-state report for every board to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
    pub max_states: u128,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub b: u32,
    #[arg(long, value_enum, default_value = "avoidance")]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value = "strategy")]
    pub p1: PolicyArg,
    #[arg(long, value_enum, default_value = "random")]
    pub p2: PolicyArg,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Print one log line per game.
    #[arg(long)]
    pub logs: bool,
    #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
    pub max_states: u128,
}

#[derive(Debug, Args)]
pub struct PlayArgs {
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub b: u32,
    #[arg(long, value_enum, default_value = "avoidance")]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value = "strategy")]
    pub engine: PolicyArg,
    /// The human moves first (the default).
    #[arg(long, conflicts_with = "engine_first")]
    pub human_first: bool,
    #[arg(long)]
    pub engine_first: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
    pub max_states: u128,
}

#[derive(Debug, Subcommand)]
pub enum WordCommand {
    /// Shape rows (comma-separated) to boundary word.
    Encode {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
    /// Boundary word to shape rows.
    Decode {
        #[arg(long)]
        word: String,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: IpAddr,
    /// Directory with the web UI bundle, served outside the API paths.
    #[arg(long)]
    pub static_dir: Option<PathBuf>,
    #[arg(long, default_value = "")]
    pub base_path: String,
    #[arg(long, default_value_t = 1024)]
    pub capacity: usize,
    #[arg(long, default_value_t = esgame_service::DEFAULT_SERVICE_STATE_LIMIT)]
    pub max_states: u128,
    #[arg(long)]
    pub cors_origin: Option<String>,
}

pub fn run(cli: Cli, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Solve(args) => solve(&args, out),
        Command::Count(args) => count(&args, out),
        Command::Verify(args) => verify(&args, out),
        Command::Simulate(args) => simulate(&args, out),
        Command::Play(args) => play(&args, input, out),
        Command::Word(cmd) => word(&cmd, out),
        Command::Serve(args) => serve(args),
    }
}

pub(crate) fn solve_table(cfg: &GameConfig, variant: Variant, limit: u128) -> Result<StateTable, CliError> {
    Ok(label_states_with_limit(cfg, variant, limit)?)
}

fn solve(args: &SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = GameConfig::new(args.a, args.b)?;
    let table = solve_table(&cfg, args.variant.into(), args.max_states)?;
    writeln!(out, "winner={} states={} loss_states={}", table_winner(&table), table.len(), table.loss_count())?;
    Ok(())
}

fn count(args: &CountArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let variant: Variant = args.variant.into();
    for v in [args.a_min, args.a_max, args.b_min, args.b_max] {
        if v < 2 {
            return Err(GameError::InvalidConfig(format!("board parameters must be at least 2, got {v}")).into());
        }
    }
    let mut rows: Vec<(u32, Vec<LossCensus>)> = Vec::new();
    for b in args.b_min..=args.b_max {
        let mut row = Vec::new();
        for a in args.a_min..=args.a_max {
            let cfg = GameConfig::new(a, b)?;
            row.push(census_of(&solve_table(&cfg, variant, args.max_states)?));
        }
        if !row.is_empty() {
            rows.push((b, row));
        }
    }
    if rows.is_empty() {
        return Ok(());
    }
    match args.format {
        Format::Csv => {
            writeln!(out, "{}", LossCensus::csv_header())?;
            for census in rows.iter().flat_map(|(_, row)| row) {
                writeln!(out, "{}", census.csv_row())?;
            }
        }
        Format::Table => out.write_all(census_table(&rows).as_bytes())?,
    }
    Ok(())
}

/// One row per `b`, one column per `a`; each cell is `count (fraction)`.
fn census_table(rows: &[(u32, Vec<LossCensus>)]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|(_, row)| row.iter().map(|c| format!("{} ({:.4})", c.loss_count, c.fraction())).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut text = format!("{:>5}", "b\\a");
    for c in &rows[0].1 {
        let _ = write!(text, "  {:>width$}", c.config.a());
    }
    text.push('\n');
    for ((b, _), row) in rows.iter().zip(&cells) {
        let _ = write!(text, "{b:>5}");
        for cell in row {
            let _ = write!(text, "  {cell:>width$}");
        }
        text.push('\n');
    }
    text
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let variant: Variant = args.variant.into();
    let probe = GameConfig::new(args.b.max(2), args.b)?;
    if !strategy_supported(&probe, variant) {
        return Err(CliError::Usage(format!("no strategy for b={} {variant}", args.b)));
    }
    let mut report_text = String::new();
    let mut failed = Vec::new();
    for a in args.a_min.max(args.b)..=args.a_max {
        let cfg = GameConfig::new(a, args.b)?;
        let table = solve_table(&cfg, variant, args.max_states)?;
        let report = verify_strategy(&cfg, variant, &table)?;
        let verdict = if report.passed() { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "a={a} b={} variant={variant} decisions={} failures={} fallbacks={} lengths={}..{} {verdict}",
            args.b,
            report.entries.len(),
            report.failures(),
            report.fallbacks(),
            report.min_length().unwrap_or(0),
            report.max_length().unwrap_or(0),
        )?;
        if !report.passed() {
            failed.push(format!("a={a}"));
        }
        if args.report.is_some() {
            let _ = writeln!(report_text, "# a={a} b={} variant={variant}", args.b);
            report_text.push_str(&report.to_text());
        }
    }
    if let Some(path) = &args.report {
        std::fs::write(path, report_text)?;
    }
    if failed.is_empty() {
        writeln!(out, "PASS")?;
        Ok(())
    } else {
        writeln!(out, "FAIL")?;
        Err(CliError::Verification(format!("b={} {variant}: {}", args.b, failed.join(", "))))
    }
}

pub(crate) fn policy_of(arg: PolicyArg, seed: u64) -> PlayPolicy {
    match arg {
        PolicyArg::Strategy => PlayPolicy::Strategy,
        PolicyArg::Solver => PlayPolicy::Solver,
        PolicyArg::Random => PlayPolicy::random(seed),
    }
}

/// The solver table a set of policies needs: required by the solver, used
/// by the strategy as a fallback when it is affordable.
pub(crate) fn table_for(
    cfg: &GameConfig,
    variant: Variant,
    policies: &[PolicyArg],
    limit: u128,
) -> Result<Option<StateTable>, CliError> {
    if policies.contains(&PolicyArg::Solver) || (policies.contains(&PolicyArg::Strategy) && cfg.state_count() <= limit) {
        return Ok(Some(solve_table(cfg, variant, limit)?));
    }
    Ok(None)
}

fn simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = GameConfig::new(args.a, args.b)?;
    let variant: Variant = args.variant.into();
    let mut p1 = policy_of(args.p1, args.seed);
    let mut p2 = policy_of(args.p2, args.seed.wrapping_add(1));
    let table = table_for(&cfg, variant, &[args.p1, args.p2], args.max_states)?;
    p1.check(&cfg, variant, table.as_ref())?;
    p2.check(&cfg, variant, table.as_ref())?;
    let mut stats = SimulationStats::default();
    for _ in 0..args.trials {
        let log = play_game(cfg, variant, &mut p1, &mut p2, table.as_ref())?;
        if args.logs {
            writeln!(out, "{log}")?;
        }
        stats.record(&log);
    }
    let opt = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
    writeln!(
        out,
        "games={} player1_wins={} player2_wins={} min_length={} max_length={}",
        stats.games,
        stats.player1_wins,
        stats.player2_wins,
        opt(stats.min_length),
        opt(stats.max_length)
    )?;
    for (len, n) in &stats.histogram {
        writeln!(out, "length={len} games={n}")?;
    }
    Ok(())
}

fn word(cmd: &WordCommand, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        WordCommand::Encode { shape, a, b } => {
            let cfg = GameConfig::new(*a, *b)?;
            let s = Shape::parse(shape, &cfg)?;
            writeln!(out, "{}", shape_to_word(&s)?)?;
        }
        WordCommand::Decode { word, a, b } => {
            let cfg = GameConfig::new(*a, *b)?;
            let w: BoundaryWord = word.parse()?;
            writeln!(out, "{}", word_to_shape(&w, &cfg)?)?;
        }
    }
    Ok(())
}

fn serve(args: ServeArgs) -> Result<(), CliError> {
    let config = esgame_service::ServiceConfig {
        base_path: args.base_path,
        capacity: args.capacity,
        state_limit: args.max_states,
        static_dir: args.static_dir,
        cors_origin: args.cors_origin,
    };
    if let Some(dir) = &config.static_dir {
        if !dir.is_dir() {
            return Err(CliError::Usage(format!("static directory {} does not exist", dir.display())));
        }
    }
    let addr = SocketAddr::new(args.host, args.port);
    let runtime = tokio::runtime::Runtime::new()?;
    eprintln!("serving on http://{addr}{}", config.base_path);
    runtime.block_on(esgame_service::serve(config, addr))?;
    Ok(())
}
