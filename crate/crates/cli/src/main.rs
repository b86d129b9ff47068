use std::io::{self, BufRead, BufWriter, Write};
use std::ops::ControlFlow;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use majordex::bench::{self, GeneratorId, KPolicy};
use majordex::colexgen::gen_colex;
use majordex::graygen::{gen1_gray, gen1_gray_bounded, gen2_gray, DeltaEmission};
use majordex::permgen::{gen_perm_major, PermEmission};
use majordex::seqcore::{min_colex, ClosenessTable};
use majordex::verify::{self, Suite};
use majordex::BoundingSequence;

/// Gray codes for subexcedant sequences and for permutations with a given
/// major index.
#[derive(Parser)]
#[command(name = "majordex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bounded compositions of k in co-lex order.
    Compositions {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Comma or space separated bounds, or `subexcedant` for 0 1 ... n-1.
        #[arg(long, default_value = "subexcedant")]
        bounds: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The Gray code list of subexcedant sequences of length n and weight k.
    Gray {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Emit::Full)]
        emit: Emit,
        /// Apply the same ordering to arbitrary bounds. Consecutive
        /// outputs are not guaranteed to be close.
        #[arg(long, requires = "bounds")]
        unsafe_general_bounds: bool,
        /// Bounds for --unsafe-general-bounds.
        #[arg(long, requires = "unsafe_general_bounds")]
        bounds: Option<String>,
    },
    /// Permutations of 1..n with major index k, in Gray code order.
    Perms {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Check all generators against the brute-force oracles.
    Verify {
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Drop the (0, 1, -1) tuple from the closeness relation.
        #[arg(long, hide = true)]
        inject_closeness_fault: bool,
    },
    /// Work-per-object measurements as JSON.
    Bench {
        #[arg(long, default_value = "gray2")]
        generator: GeneratorId,
        /// Inclusive range `lo:hi`; empty when lo > hi.
        #[arg(long, value_parser = parse_range)]
        n_range: (usize, usize),
        #[arg(long, default_value = "mid")]
        k_policy: KPolicy,
        /// Stop each run after this many objects.
        #[arg(long)]
        budget: Option<u64>,
        /// JSON output (the only report format; accepted for explicitness).
        #[arg(long)]
        json: bool,
    },
    /// Rebuild full sequences from `gray --emit delta` output on stdin.
    Replay,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Full,
    Delta,
}

enum Failure {
    Usage(String),
    Failed(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<majordex::Error> for Failure {
    fn from(e: majordex::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got `{s}`"))?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((num(lo)?, num(hi)?))
}

fn parse_bounds(s: &str, n: usize) -> Result<BoundingSequence, Failure> {
    if s.trim() == "subexcedant" {
        return Ok(BoundingSequence::subexcedant(n));
    }
    let values = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Failure::Usage(format!("bad bound `{t}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != n {
        return Err(Failure::Usage(format!(
            "{} bounds given for n = {n}",
            values.len()
        )));
    }
    Ok(BoundingSequence::new(values)?)
}

/// Buffered stdout that turns a write error into a stop request.
struct Sink {
    out: BufWriter<io::StdoutLock<'static>>,
    error: Option<io::Error>,
}

impl Sink {
    fn new() -> Self {
        Self {
            out: BufWriter::new(io::stdout().lock()),
            error: None,
        }
    }

    fn line(&mut self, write: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> ControlFlow<()> {
        match write(&mut self.out).and_then(|_| self.out.write_all(b"\n")) {
            Ok(()) => ControlFlow::Continue(()),
            Err(e) => {
                self.error = Some(e);
                ControlFlow::Break(())
            }
        }
    }

    fn finish(mut self) -> Result<(), Failure> {
        if let Some(e) = self.error.take() {
            return Err(e.into());
        }
        self.out.flush()?;
        Ok(())
    }
}

fn write_seq(w: &mut dyn Write, c: &[usize]) -> io::Result<()> {
    for (i, v) in c.iter().enumerate() {
        if i > 0 {
            w.write_all(b" ")?;
        }
        write!(w, "{v}")?;
    }
    Ok(())
}

fn write_json_seq(w: &mut dyn Write, c: &[usize]) -> io::Result<()> {
    w.write_all(b"[")?;
    for (i, v) in c.iter().enumerate() {
        if i > 0 {
            w.write_all(b",")?;
        }
        write!(w, "{v}")?;
    }
    w.write_all(b"]")
}

fn compositions(n: usize, k: usize, bounds: &str, format: Format) -> Result<u64, Failure> {
    let b = parse_bounds(bounds, n)?;
    let mut sink = Sink::new();
    let count = match format {
        Format::Text => gen_colex(k, &b, |c: &[usize]| sink.line(|w| write_seq(w, c))),
        Format::Json => {
            let mut first = true;
            let _ = sink.line(|w| w.write_all(b"["));
            let count = gen_colex(k, &b, |c: &[usize]| {
                let lead: &[u8] = if first { b"  " } else { b", " };
                first = false;
                sink.line(|w| {
                    w.write_all(lead)?;
                    write_json_seq(w, c)
                })
            });
            let _ = sink.line(|w| w.write_all(b"]"));
            count
        }
    };
    sink.finish()?;
    Ok(count)
}

fn gray(n: usize, k: usize, emit: Emit, bounds: Option<&str>) -> Result<u64, Failure> {
    let mut sink = Sink::new();
    let count = match (bounds, emit) {
        (Some(bounds), Emit::Full) => {
            let b = parse_bounds(bounds, n)?;
            eprintln!("warning: --unsafe-general-bounds makes no closeness guarantee");
            gen1_gray_bounded(k, &b, |c: &[usize]| sink.line(|w| write_seq(w, c)))
        }
        (Some(_), Emit::Delta) => {
            return Err(Failure::Usage(
                "--emit delta is only defined for subexcedant bounds".into(),
            ))
        }
        (None, Emit::Full) => gen1_gray(k, n, |c: &[usize]| sink.line(|w| write_seq(w, c)))?,
        (None, Emit::Delta) => {
            let initial = min_colex(k, n)?;
            gen2_gray(k, n, |e: DeltaEmission<'_>| {
                sink.line(|w| match e.window {
                    None => {
                        w.write_all(b"0 0 ")?;
                        write_seq(w, initial.as_slice())
                    }
                    Some(window) => {
                        write!(w, "{} {} ", e.p, e.u)?;
                        write_seq(w, window)
                    }
                })
            })?
        }
    };
    sink.finish()?;
    Ok(count)
}

fn perms(n: usize, k: usize) -> Result<u64, Failure> {
    let mut sink = Sink::new();
    let count = gen_perm_major(k, n, |e: PermEmission<'_>| sink.line(|w| write_seq(w, e.sigma)))?;
    sink.finish()?;
    Ok(count)
}

fn run_verify(n_max: usize, suite: Suite, fault: bool) -> Result<(), Failure> {
    if let Some(workers) = std::env::var("MAJORDEX_WORKERS").ok().filter(|v| !v.is_empty()) {
        let workers: usize = workers
            .parse()
            .map_err(|_| Failure::Usage(format!("MAJORDEX_WORKERS=`{workers}` is not a number")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| Failure::Failed(e.to_string()))?;
    }
    let mut opts = verify::Options::default();
    if fault {
        opts.closeness = ClosenessTable::default().without([0, 1, -1]);
    }
    let report = verify::run(n_max, suite, &opts)?;
    let mut out = io::stdout().lock();
    for failure in &report.failures {
        writeln!(out, "{failure}")?;
    }
    eprintln!(
        "verify: {} instances, {} failures",
        report.instances,
        report.failures.len()
    );
    if report.passed() {
        writeln!(out, "PASS suite={suite} n-max={n_max}")?;
        Ok(())
    } else {
        Err(Failure::Failed(format!(
            "{} properties failed",
            report.failures.len()
        )))
    }
}

fn run_bench(
    generator: GeneratorId,
    (lo, hi): (usize, usize),
    policy: KPolicy,
    budget: Option<u64>,
) -> Result<(), Failure> {
    let stats = (lo..=hi)
        .map(|n| bench::measure_with_budget(generator, policy.weight_for(n), n, budget))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = io::stdout().lock();
    writeln!(out, "{}", bench::report_json(&stats))?;
    Ok(())
}

fn parse_line(line: &str) -> Result<Vec<usize>, Failure> {
    line.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Failure::Usage(format!("bad number `{t}` in `{line}`")))
        })
        .collect()
}

fn replay() -> Result<u64, Failure> {
    let stdin = io::stdin().lock();
    let mut sink = Sink::new();
    let mut d: Vec<usize> = Vec::new();
    let mut count = 0;
    for line in stdin.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields = parse_line(&line)?;
        match fields.as_slice() {
            [0, 0, initial @ ..] if count == 0 => d = initial.to_vec(),
            &[p, _u, a, b, c] if count > 0 && p >= 3 && p <= d.len() => {
                d[p - 3..p].copy_from_slice(&[a, b, c]);
            }
            _ => return Err(Failure::Usage(format!("unexpected delta line `{line}`"))),
        }
        count += 1;
        if sink.line(|w| write_seq(w, &d)).is_break() {
            break;
        }
    }
    sink.finish()?;
    Ok(count)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compositions {
            n,
            k,
            bounds,
            format,
        } => compositions(n, k, &bounds, format).map(Some),
        Command::Gray {
            n,
            k,
            emit,
            bounds,
            ..
        } => gray(n, k, emit, bounds.as_deref()).map(Some),
        Command::Perms { n, k } => perms(n, k).map(Some),
        Command::Verify {
            n_max,
            suite,
            inject_closeness_fault,
        } => run_verify(n_max, suite, inject_closeness_fault).map(|_| None),
        Command::Bench {
            generator,
            n_range,
            k_policy,
            budget,
            json: _,
        } => run_bench(generator, n_range, k_policy, budget).map(|_| None),
        Command::Replay => replay().map(Some),
    };
    match result {
        Ok(count) => {
            if let Some(count) = count {
                eprintln!("count: {count}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
