use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sympow::{run, Command, Flags, IdealDocument};
use sympow_core::{fixtures, SymbolicMode};

#[derive(Parser, Debug)]
#[command(
    name = "sympow",
    version,
    about = "Symbolic powers, closures and resurgence of monomial ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Ideal file (JSON or `vars:`/`gens:` text).
    #[arg(long, global = true, conflicts_with = "fixture")]
    ideal: Option<PathBuf>,

    /// Built-in ideal by name, e.g. `fano` or `triangle`.
    #[arg(long, global = true)]
    fixture: Option<String>,

    /// Largest r examined by the resurgence search.
    #[arg(long, global = true, default_value_t = 20)]
    search_cap: u32,

    /// Cap for the fallback Rees generation-degree window.
    #[arg(long, global = true)]
    rees_cap: Option<u32>,

    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Mode {
    Sqfree,
    Ass,
    Minprimes,
    Components,
}

impl From<Mode> for SymbolicMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Sqfree => SymbolicMode::Squarefree,
            Mode::Ass => SymbolicMode::Associated,
            Mode::Minprimes => SymbolicMode::MinimalPrimes,
            Mode::Components => SymbolicMode::Components,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Resurgence with witness, finite search box and maximizers.
    Resurgence,
    /// Asymptotic resurgence from the Rees valuations.
    Asymptotic,
    /// Waldschmidt constant.
    Waldschmidt,
    /// Is I^(s) contained in I^r?
    Containment { s: u32, r: u32 },
    /// Generators of the integral closure of I^r.
    Closure { r: u32 },
    /// Generators of I^(s).
    Symbolic { s: u32 },
    /// Smallest k with closure(I^{r+k}) in I^r for all r.
    B,
    /// Generation degree of the normalized Rees algebra.
    ReesDegree,
    /// lambda_r and the brackets it gives.
    Lambda {
        #[arg(required = true)]
        r: Vec<u32>,
    },
    /// gamma_1..gamma_n and the linear-programming bound.
    Gamma { n: u32 },
    /// Certificate that the resurgence is below the big height.
    CertifyExpected,
    /// Strict bound from I^(s+1) in J times closure(I^r).
    StrictBound { s: u32, r: u32 },
    /// Bound from I^(s+1) in closure(I^r).
    RhoHatBound { s: u32, r: u32 },
    /// Waldschmidt lower bounds from I^(s+1) in J^{rC} times closure(I^r).
    Chudnovsky { s: u32, r: u32, c: u32 },
    /// Minimal and associated primes, irreducible components.
    Decompose,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Resurgence => Command::Resurgence,
            Cmd::Asymptotic => Command::Asymptotic,
            Cmd::Waldschmidt => Command::Waldschmidt,
            Cmd::Containment { s, r } => Command::Containment { s, r },
            Cmd::Closure { r } => Command::Closure { r },
            Cmd::Symbolic { s } => Command::Symbolic { s },
            Cmd::B => Command::B,
            Cmd::ReesDegree => Command::ReesDegree,
            Cmd::Lambda { r } => Command::Lambda { rs: r },
            Cmd::Gamma { n } => Command::Gamma { n },
            Cmd::CertifyExpected => Command::CertifyExpected,
            Cmd::StrictBound { s, r } => Command::StrictBound { s, r },
            Cmd::RhoHatBound { s, r } => Command::RhoHatBound { s, r },
            Cmd::Chudnovsky { s, r, c } => Command::Chudnovsky { s, r, c },
            Cmd::Decompose => Command::Decompose,
        }
    }
}

fn load(cli: &Cli) -> Result<IdealDocument, String> {
    if let Some(path) = &cli.ideal {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        return IdealDocument::parse(&text).map_err(|e| format!("{}: {e}", path.display()));
    }
    if let Some(name) = &cli.fixture {
        return fixtures::all()
            .into_iter()
            .find(|f| f.name == name)
            .map(|f| IdealDocument::from_ideal(f.vars, &f.ideal))
            .ok_or_else(|| format!("unknown fixture {name:?}"));
    }
    Err("one of --ideal or --fixture is required".into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let doc = match load(&cli) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let flags = Flags {
        search_cap: cli.search_cap,
        rees_cap: cli.rees_cap,
        mode: cli.mode.map(Into::into),
        timing: cli.timing,
        cache_dir: std::env::var_os("SYMPOW_CACHE_DIR").map(PathBuf::from),
    };
    let out = cli.out.clone();
    let outcome = match run(&cli.command.into(), &doc, &flags) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let text = outcome.to_pretty();
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(outcome.exit_code as u8)
}
