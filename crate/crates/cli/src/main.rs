mod render;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fibbraid::algebra::{enumerate_basis, QSpin};
use fibbraid::braid::{classify_weave, evaluate, format, named_target, parse, BraidWord, GateTarget, Weave};
use fibbraid::io::{MatrixJson, SearchReport};
use fibbraid::search::{
    exhaustive_search, find_effective_braiding_weave, find_injection_weave, find_not_weave, mitm_search, search,
    SearchOptions,
};
use fibbraid::sk::{sk_refine, BaseNet, Lookup, SkLevel, SkParams};
use fibbraid::two_qubit::{compile_cnot, compile_controlled_phase};
use fibbraid::Error;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "fibbraid", version, about = "Compile gates into braids of Fibonacci anyons")]
struct Cli {
    /// Worker threads for searches (default: all cores).
    #[arg(long, global = true, env = "FIBBRAID_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the dimension and charge-block split for n anyons.
    Basis {
        n: i64,
        /// Also list the basis states.
        #[arg(long)]
        list: bool,
    },
    /// Evaluate a braid word to its unitary.
    Eval {
        #[arg(short = 'n', long = "anyons")]
        n: usize,
        #[command(flatten)]
        input: WordInput,
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Find the best braid or weave up to a length budget.
    Search {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        max_length: usize,
        /// Restrict to weaves whose mobile strand starts at this position.
        #[arg(long)]
        weave: Option<usize>,
        /// Required end position of the mobile strand.
        #[arg(long, requires = "weave")]
        endpoints: Option<usize>,
        #[arg(long, value_enum, default_value_t = Strategy::Auto)]
        strategy: Strategy,
    },
    /// Refine a single-qubit approximation with Solovay-Kitaev.
    Sk {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Load the base net from this file instead of building it.
        #[arg(long)]
        net_file: Option<PathBuf>,
        /// Write the base net to this file.
        #[arg(long)]
        save_net: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        base_length: usize,
        /// Mobile-strand position of the net's return weaves.
        #[arg(long, default_value_t = 2)]
        slot: usize,
        #[arg(long, value_enum, default_value_t = LookupArg::Paired)]
        lookup: LookupArg,
    },
    /// Controlled rotation by m double braidings, printed as a gate report.
    CompileCphase {
        #[arg(long)]
        m: i64,
        /// Interchange budget for the effective-braiding weave search.
        #[arg(long, default_value_t = 24)]
        max_length: usize,
        /// Use this weave (pair in slot 1) instead of searching.
        #[arg(long)]
        weave: Option<String>,
    },
    /// Injection-based controlled-NOT, printed as a gate report.
    CompileCnot {
        #[arg(long, default_value_t = 24)]
        max_length: usize,
        /// Injection weave (slot 1 to slot 3) instead of searching.
        #[arg(long)]
        injection: Option<String>,
        /// NOT weave (slot 2 to slot 2) instead of searching.
        #[arg(long)]
        not: Option<String>,
    },
    /// Run the invariant suite.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Draw a braid word.
    Render {
        #[arg(short = 'n', long = "anyons")]
        n: usize,
        #[command(flatten)]
        input: WordInput,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
        /// Draw the word as written instead of its canonical form.
        #[arg(long)]
        raw: bool,
    },
}

#[derive(Args)]
struct WordInput {
    /// Word text; otherwise read from FILE or standard input.
    #[arg(long, conflicts_with = "file")]
    word: Option<String>,
    file: Option<PathBuf>,
}

#[derive(Args)]
struct TargetArgs {
    /// Named target: not, x, h, identity, s<i>^<k>, rot:nx,ny,nz,angle.
    #[arg(long, conflicts_with = "target_file")]
    target: Option<String>,
    /// Target matrix JSON ({dim, entries}); 2x2 is compared to the qubit block.
    #[arg(long)]
    target_file: Option<PathBuf>,
    /// Ignore global phase.
    #[arg(long)]
    phase_free: bool,
    /// Compare the qubit block only.
    #[arg(long)]
    block_only: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Auto,
    Exhaustive,
    Mitm,
}

#[derive(Clone, Copy, ValueEnum)]
enum LookupArg {
    Single,
    Paired,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Ascii,
    Svg,
}

enum Failure {
    Usage(String),
    Core(Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_text(input: &WordInput) -> CliResult<String> {
    if let Some(w) = &input.word {
        return Ok(w.clone());
    }
    match &input.file {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(s)
        }
    }
}

impl TargetArgs {
    fn resolve(&self) -> CliResult<Option<GateTarget>> {
        let base = match (&self.target, &self.target_file) {
            (Some(name), _) => named_target(name)?,
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                let m: MatrixJson = serde_json::from_str(&text).map_err(Error::from)?;
                let m = m.to_matrix()?;
                if m.nrows() == 2 {
                    GateTarget::block(m, false)?
                } else {
                    GateTarget::full(m, false)?
                }
            }
            (None, None) => return Ok(None),
        };
        let t = if self.phase_free { base.with_phase_free(true) } else { base };
        Ok(Some(if self.block_only { t.into_block_only()? } else { t }))
    }

    fn required(&self) -> CliResult<GateTarget> {
        self.resolve()?.ok_or_else(|| Failure::Usage("a --target or --target-file is required".into()))
    }
}

/// Write to standard output; a closed pipe ends the output quietly.
fn emit(text: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Usage(e.to_string())),
        _ => Ok(()),
    }
}

fn print_json<T: Serialize>(value: &T) -> CliResult<()> {
    emit(&(serde_json::to_string_pretty(value).map_err(Error::from)? + "\n"))
}

/// Matrices are printed on one line; they are read by programs, not people.
fn print_compact<T: Serialize>(value: &T) -> CliResult<()> {
    emit(&(serde_json::to_string(value).map_err(Error::from)? + "\n"))
}

fn charge_name(q: QSpin) -> &'static str {
    match q {
        QSpin::Zero => "q-spin0",
        QSpin::One => "q-spin1",
    }
}

fn basis(n: i64, list: bool) -> CliResult<()> {
    let b = enumerate_basis(n)?;
    let mut blocks: Vec<_> = b.blocks.iter().collect();
    blocks.sort_by_key(|blk| blk.charge);
    let split: Vec<String> = blocks.iter().map(|blk| format!("{}={}", charge_name(blk.charge), blk.len())).collect();
    let mut text = format!("dim={} blocks: {}\n", b.dim(), split.join(" "));
    if list {
        for (i, p) in b.paths.iter().enumerate() {
            text += &format!("{i:>4} {}\n", p.notation());
        }
    }
    emit(&text)
}

#[derive(Serialize)]
struct EvalOutput {
    matrix: MatrixJson,
    epsilon: f64,
    phase: f64,
}

fn eval(n: usize, input: &WordInput, target: &TargetArgs) -> CliResult<()> {
    let word = parse(&read_text(input)?, n)?;
    let u = evaluate(&word, n)?;
    let matrix = MatrixJson::from_block_unitary(&u);
    match target.resolve()? {
        None => print_compact(&matrix),
        Some(t) => {
            let (epsilon, phase) = t.epsilon(&u.entries)?;
            print_compact(&EvalOutput { matrix, epsilon, phase })
        }
    }
}

fn run_search(cli_threads: Option<usize>, target: &TargetArgs, max_length: usize, weave: Option<usize>, end: Option<usize>, strategy: Strategy) -> CliResult<()> {
    let t = target.required()?;
    let mut opts = SearchOptions::with_length(max_length).threads(cli_threads);
    if let Some(start) = weave {
        opts = opts.weave(start, end);
    }
    let clock = Instant::now();
    let result = match strategy {
        Strategy::Auto => search(&t, &opts)?,
        Strategy::Exhaustive => exhaustive_search(&t, &opts)?,
        Strategy::Mitm => mitm_search(&t, &opts)?,
    };
    eprintln!("search finished in {:.2?}; {}", clock.elapsed(), result.wall_notes);
    print_json(&SearchReport::from(&result))
}

#[derive(Serialize)]
struct SkOutput {
    word: String,
    length: u64,
    epsilon: f64,
    slot: usize,
    base_length: usize,
    trace: Vec<SkLevel>,
}

#[allow(clippy::too_many_arguments)]
fn run_sk(target: &TargetArgs, depth: usize, net_file: &Option<PathBuf>, save_net: &Option<PathBuf>, base_length: usize, slot: usize, lookup: LookupArg) -> CliResult<()> {
    let t = target.required()?;
    let block = match t.matrix.nrows() {
        2 => t.matrix.clone(),
        _ => fibbraid::braid::target::qubit_block(&t.matrix),
    };
    let clock = Instant::now();
    let net = match net_file {
        Some(p) => BaseNet::load(p)?,
        None => BaseNet::build(base_length, slot)?,
    };
    eprintln!("net of {} entries ready in {:.2?}", net.len(), clock.elapsed());
    if let Some(p) = save_net {
        net.save(p)?;
    }
    let lookup = match lookup {
        LookupArg::Single => Lookup::Single,
        LookupArg::Paired => Lookup::Paired,
    };
    let r = sk_refine(&block, &SkParams { depth, lookup }, &net)?;
    print_json(&SkOutput {
        word: format(&r.word),
        length: r.word.length(),
        epsilon: r.epsilon,
        slot: net.slot,
        base_length: net.max_base_length,
        trace: r.trace,
    })
}

fn given_weave(text: &str, slot: usize) -> CliResult<Weave> {
    Ok(classify_weave(&parse(text, 3)?, slot)?)
}

fn found_weave(r: fibbraid::search::SearchResult, what: &str) -> CliResult<Weave> {
    eprintln!("{what} weave: eps = {:.3e}, {}", r.epsilon, format(&r.best_word));
    r.weave.ok_or_else(|| Failure::Usage(format!("{what} search returned no weave")))
}

fn cphase(threads: Option<usize>, m: i64, max_length: usize, weave: &Option<String>) -> CliResult<()> {
    if m % 5 == 0 {
        eprintln!("warning: m = {m} is divisible by 5, so the rotation is trivial");
    }
    let w = match weave {
        Some(text) => given_weave(text, 1)?,
        None => found_weave(find_effective_braiding_weave(m, &SearchOptions::with_length(max_length).threads(threads))?, "effective")?,
    };
    let (_, report) = compile_controlled_phase(m, &w)?;
    print_json(&report)
}

fn cnot(threads: Option<usize>, max_length: usize, injection: &Option<String>, not: &Option<String>) -> CliResult<()> {
    let opts = SearchOptions::with_length(max_length).threads(threads);
    let inj = match injection {
        Some(text) => given_weave(text, 1)?,
        None => found_weave(find_injection_weave(&opts)?, "injection")?,
    };
    let flip = match not {
        Some(text) => given_weave(text, 2)?,
        None => found_weave(find_not_weave(&opts)?, "NOT")?,
    };
    let (_, report) = compile_cnot(&inj, &flip)?;
    print_json(&report)
}

fn verify(seed: u64) -> CliResult<()> {
    let checks = fibbraid::verify::invariant_suite(seed);
    let mut ok = true;
    let mut text = String::new();
    for c in &checks {
        text += &format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        ok &= c.passed;
    }
    emit(&text)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn draw(n: usize, input: &WordInput, fmt: RenderFormat, raw: bool) -> CliResult<()> {
    let text = read_text(input)?;
    let parsed = parse(&text, n)?;
    let word: BraidWord = if raw { parsed } else { parsed.free_reduce() };
    emit(&match fmt {
        RenderFormat::Ascii => render::ascii(&word),
        RenderFormat::Svg => render::svg(&word),
    })
}

fn run(cli: Cli) -> CliResult<()> {
    if cli.threads == Some(0) {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    let threads = cli.threads;
    match &cli.command {
        Command::Basis { n, list } => basis(*n, *list),
        Command::Eval { n, input, target } => eval(*n, input, target),
        Command::Search { target, max_length, weave, endpoints, strategy } => {
            run_search(threads, target, *max_length, *weave, *endpoints, *strategy)
        }
        Command::Sk { target, depth, net_file, save_net, base_length, slot, lookup } => {
            run_sk(target, *depth, net_file, save_net, *base_length, *slot, *lookup)
        }
        Command::CompileCphase { m, max_length, weave } => cphase(threads, *m, *max_length, weave),
        Command::CompileCnot { max_length, injection, not } => cnot(threads, *max_length, injection, not),
        Command::Verify { seed } => verify(*seed),
        Command::Render { n, input, format, raw } => draw(*n, input, *format, *raw),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource_guard() { 3 } else { 2 })
        }
    }
}
