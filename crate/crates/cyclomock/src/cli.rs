//! Command-line front end.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclomock_core::catalog::{evaluate_at_root, FunctionId};
use cyclomock_core::embed::embed_complex;
use cyclomock_core::poly::gcd;

use crate::records::{self, value_string, Record, RecordWriter, ScanRecord, SCHEMA};
use crate::scan::{odd_range, prime_sum_search, root_sum_record, scan_nonvanishing, ScanOptions};
use crate::suites::{run_suite, Suite};

/// Environment variable naming the directory that relative `--out` paths
/// resolve against.
pub const OUT_DIR_ENV: &str = "CYCLOMOCK_OUT";

#[derive(Parser, Debug)]
#[command(name = "cyclomock", version, about = "Exact mock theta values at odd roots of unity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate functions at ζ_n^j.
    Eval {
        #[command(flatten)]
        fns: FnArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        j: i64,
        /// Also print the complex value.
        #[arg(long)]
        approx: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run exact verification suites over odd n.
    Verify {
        /// Suites to run (repeatable; default all).
        #[arg(long, value_enum)]
        suite: Vec<Suite>,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Scan for zeros at primitive roots over odd n.
    Scan {
        #[command(flatten)]
        fns: FnArgs,
        #[command(flatten)]
        range: RangeArgs,
        /// Record file to continue; computed (fn, n) pairs are skipped and
        /// new records are appended to it unless --out is given.
        #[arg(long, value_name = "PATH")]
        resume: Option<PathBuf>,
        /// Attach terminal-term margins where defined.
        #[arg(long)]
        margins: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact sums over all n-th roots of unity.
    Sum {
        #[command(flatten)]
        fns: FnArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Root sums at odd primes up to --p-max, reporting the vanishing ones.
    Search {
        #[command(flatten)]
        fns: FnArgs,
        #[arg(long)]
        p_max: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct FnArgs {
    /// Catalog function (repeatable).
    #[arg(long = "fn", value_name = "ID", value_parser = parse_fn)]
    pub fns: Vec<FunctionId>,
    /// Every main catalog function.
    #[arg(long)]
    pub all: bool,
}

#[derive(Args, Debug, Clone)]
pub struct RangeArgs {
    /// A single odd order.
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub n_min: usize,
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write output here instead of stdout (records are appended).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Decimal digits for complex embeddings.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(6..))]
    pub digits: u32,
    /// Term cap as a multiple of the root order.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_multiplier: u64,
}

fn parse_fn(s: &str) -> Result<FunctionId, String> {
    s.parse::<FunctionId>().map_err(|e| e.to_string())
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Records(#[from] records::RecordError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// `path` as given, or under `$CYCLOMOCK_OUT` when relative and the variable is set.
pub fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() && !dir.is_empty() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

impl FnArgs {
    fn ids(&self) -> Result<Vec<FunctionId>, CliError> {
        if self.all {
            return Ok(FunctionId::MAIN.to_vec());
        }
        if self.fns.is_empty() {
            return Err(usage("--fn or --all is required"));
        }
        Ok(self.fns.clone())
    }
}

impl RangeArgs {
    fn bounds(&self) -> Result<(usize, usize), CliError> {
        let (lo, hi) = match (self.n, self.n_max) {
            (Some(n), _) => (n, n),
            (None, Some(hi)) => (self.n_min, hi),
            (None, None) => return Err(usage("--n or --n-max is required")),
        };
        odd_range(lo, hi).map_err(|e| usage(format!("--n-min/--n-max: {e}")))?;
        Ok((lo, hi))
    }
}

/// Primary output sink: a file (`--out`) or the given writer.
struct Sink<'a> {
    file: Option<Box<dyn Write>>,
    stdout: &'a mut dyn Write,
}

impl<'a> Sink<'a> {
    fn open(out: &OutputArgs, stdout: &'a mut dyn Write) -> Result<Self, CliError> {
        let file: Option<Box<dyn Write>> = match &out.out {
            None => None,
            Some(p) => {
                let p = resolve_out(p);
                if out.format == Format::Records {
                    Some(Box::new(FileRecords(RecordWriter::append(&p)?)))
                } else {
                    Some(Box::new(io::BufWriter::new(File::create(&p)?)))
                }
            }
        };
        Ok(Sink { file, stdout })
    }

    fn line(&mut self, s: &str) -> io::Result<()> {
        match &mut self.file {
            Some(f) => writeln!(f, "{s}"),
            None => writeln!(self.stdout, "{s}"),
        }
    }

    fn finish(mut self) -> io::Result<()> {
        if let Some(f) = &mut self.file {
            f.flush()?;
        }
        self.stdout.flush()
    }
}

/// Adapts a [`RecordWriter`] to line output; lines are already serialized records.
struct FileRecords(RecordWriter);

impl Write for FileRecords {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let text = std::str::from_utf8(buf).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
        for line in text.lines().filter(|l| !l.is_empty()) {
            let r: Record = serde_json::from_str(line)?;
            self.0.write(&r).map_err(io::Error::other)?;
        }
        Ok(buf.len())
    }

    fn flush(&mut self) -> io::Result<()> {
        self.0.flush().map_err(io::Error::other)
    }
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

/// Runs a parsed command, writing primary output to `stdout` (or `--out`)
/// and diagnostics to `stderr`. Returns the process exit code.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let started = Instant::now();
    let code = match cli.command {
        Command::Eval { fns, n, j, approx, out } => eval(&fns, n, j, approx, &out, stdout, stderr)?,
        Command::Verify { suite, range, out } => verify(&suite, &range, &out, stdout)?,
        Command::Scan { fns, range, resume, margins, out } => {
            scan(&fns, &range, resume.as_deref(), margins, &out, stdout, stderr)?
        }
        Command::Sum { fns, range, out } => sum(&fns, &range, &out, stdout)?,
        Command::Search { fns, p_max, out } => search(&fns, p_max, &out, stdout)?,
    };
    writeln!(stderr, "# cyclomock {} elapsed_ms={}", env!("CARGO_PKG_VERSION"), started.elapsed().as_millis())?;
    Ok(code)
}

fn eval(
    fns: &FnArgs,
    n: usize,
    j: i64,
    approx: bool,
    out: &OutputArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let ids = fns.ids()?;
    if n % 2 == 0 {
        return Err(usage(format!("--n must be odd, got {n}")));
    }
    if j < 0 || j as usize >= n {
        return Err(usage(format!("--j must lie in 0..{n}, got {j}")));
    }
    let mut sink = Sink::open(out, stdout)?;
    if out.format == Format::Csv {
        sink.line("fn,n,j,terminated_at,value")?;
    }
    let mut code = 0;
    for id in ids {
        let start = Instant::now();
        let r = match evaluate_at_root(id, n, j) {
            Ok(r) => r,
            Err(e) => {
                writeln!(stderr, "error: {id} at zeta_{n}^{j}: {e}")?;
                code = 1;
                continue;
            }
        };
        match out.format {
            Format::Text => {
                let point = if j == 1 { format!("zeta_{n}") } else { format!("zeta_{n}^{j}") };
                let mut s = format!("{id}({point}) = {}", r.value);
                let m = n / gcd(j as usize, n);
                if m != n {
                    s.push_str(&format!("  [z = zeta_{m}]"));
                }
                if approx {
                    let c = embed_complex(&r.value, out.digits);
                    let d = out.digits as usize;
                    s.push_str(&format!("  ~ {:.d$} {} {:.d$}i", c.re, if c.im < 0.0 { '-' } else { '+' }, c.im.abs()));
                }
                sink.line(&s)?;
            }
            Format::Records => {
                let rec = ScanRecord {
                    schema: SCHEMA,
                    function: id.name().to_string(),
                    n,
                    j,
                    is_zero: r.value.is_zero(),
                    terminated_at: r.terminated_at as i64,
                    value: value_string(&r.value),
                    elapsed_ms: start.elapsed().as_millis() as u64,
                    margin: None,
                    error: None,
                };
                sink.line(&Record::Scan(rec).to_line())?;
            }
            Format::Csv => {
                let v = csv_quote(&value_string(&r.value));
                sink.line(&format!("{id},{n},{j},{},{v}", r.terminated_at))?;
            }
        }
    }
    sink.finish()?;
    Ok(code)
}

fn verify(suites: &[Suite], range: &RangeArgs, out: &OutputArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    if out.format == Format::Records {
        return Err(usage("verify has no record form; use --format text or csv"));
    }
    let needs_range = suites.is_empty() || suites.iter().any(|&s| s != Suite::Disk);
    let (lo, hi) = if needs_range { range.bounds()? } else { (1, 1) };
    let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites.to_vec() };
    let mut sink = Sink::open(out, stdout)?;
    if out.format == Format::Csv {
        sink.line("suite,check,n,passed,detail")?;
    }
    let (mut total, mut failed) = (0usize, 0usize);
    for suite in suites {
        let rows = run_suite(suite, lo, hi, out.digits).map_err(|e| usage(e.to_string()))?;
        for row in rows {
            total += 1;
            failed += usize::from(!row.passed);
            match out.format {
                Format::Csv => {
                    let n = row.n.map(|n| n.to_string()).unwrap_or_default();
                    sink.line(&format!(
                        "{},{},{n},{},{}",
                        suite.name(),
                        row.check_id,
                        row.passed,
                        csv_quote(&row.detail)
                    ))?;
                }
                _ => sink.line(&format!("[{}] {row}", suite.name()))?,
            }
        }
    }
    if out.format == Format::Text {
        sink.line(&format!("{total} checks, {failed} failed"))?;
    }
    sink.finish()?;
    Ok(i32::from(failed > 0))
}

fn scan(
    fns: &FnArgs,
    range: &RangeArgs,
    resume: Option<&Path>,
    margins: bool,
    out: &OutputArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let ids = fns.ids()?;
    if let Some(bad) = ids.iter().find(|id| !id.is_main()) {
        return Err(usage(format!("--fn {bad}: diagnostic functions cannot be scanned")));
    }
    let (lo, hi) = range.bounds()?;
    let mut out = out.clone();
    let mut skip = Default::default();
    if let Some(path) = resume {
        let path = resolve_out(path);
        let done = records::resume_for_append(&path)?;
        skip = records::completed(&done);
        if out.out.is_none() {
            out.out = Some(path);
            out.format = Format::Records;
        }
    }
    let opts = ScanOptions { cap_multiplier: out.cap_multiplier as usize, margins, digits: out.digits };
    let recs = scan_nonvanishing(&ids, lo, hi, opts, &skip).map_err(|e| usage(e.to_string()))?;

    let mut sink = Sink::open(&out, stdout)?;
    if out.format == Format::Csv {
        sink.line("fn,n,j,is_zero,terminated_at,margin,value")?;
    }
    let mut code = 0;
    for r in &recs {
        match out.format {
            Format::Text => {
                let status = match (&r.error, r.is_zero) {
                    (Some(e), _) => format!("error: {e}"),
                    (None, true) => "ZERO".to_string(),
                    (None, false) => "nonzero".to_string(),
                };
                let margin = r.margin.map(|m| format!(" margin={m:+.9}")).unwrap_or_default();
                sink.line(&format!("{:>6} {:<12} {status} terminated_at={}{margin}", r.n, r.function, r.terminated_at))?;
            }
            Format::Records => sink.line(&Record::Scan(r.clone()).to_line())?,
            Format::Csv => {
                let margin = r.margin.map(|m| m.to_string()).unwrap_or_default();
                sink.line(&format!(
                    "{},{},{},{},{},{margin},{}",
                    r.function,
                    r.n,
                    r.j,
                    r.is_zero,
                    r.terminated_at,
                    csv_quote(&r.value)
                ))?;
            }
        }
        if r.is_zero {
            writeln!(stderr, "COUNTEREXAMPLE: {} vanishes at the primitive {}-th roots of unity", r.function, r.n)?;
            code = 1;
        }
        if let Some(e) = &r.error {
            writeln!(stderr, "error: {} at n={}: {e}", r.function, r.n)?;
            code = 1;
        }
    }
    sink.finish()?;
    writeln!(stderr, "# scanned {} new (fn, n) pairs, skipped {}", recs.len(), skip.len())?;
    Ok(code)
}

fn sum(fns: &FnArgs, range: &RangeArgs, out: &OutputArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let ids = fns.ids()?;
    let (lo, hi) = range.bounds()?;
    let mut sink = Sink::open(out, stdout)?;
    if out.format == Format::Csv {
        sink.line("fn,n,sum")?;
    }
    for n in (lo..=hi).step_by(2) {
        for &id in &ids {
            let r = root_sum_record(id, n).map_err(|e| usage(e.to_string()))?;
            match out.format {
                Format::Text => sink.line(&format!("sum of {} over the {n}-th roots = {}", r.function, r.sum))?,
                Format::Records => sink.line(&Record::Sum(r).to_line())?,
                Format::Csv => sink.line(&format!("{},{},{}", r.function, r.n, r.sum))?,
            }
        }
    }
    sink.finish()?;
    Ok(0)
}

fn search(fns: &FnArgs, p_max: usize, out: &OutputArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let ids = fns.ids()?;
    let report = prime_sum_search(&ids, p_max).map_err(|e| usage(format!("--p-max: {e}")))?;
    let mut sink = Sink::open(out, stdout)?;
    match out.format {
        Format::Records => {
            for r in report.table {
                sink.line(&Record::Sum(r).to_line())?;
            }
        }
        Format::Csv => {
            sink.line("fn,p,sum,vanishing")?;
            for r in report.table {
                sink.line(&format!("{},{},{},{}", r.function, r.n, r.sum, r.sum == "0/1"))?;
            }
        }
        Format::Text => {
            for r in &report.table {
                sink.line(&format!("{:>6} {:<12} {}", r.n, r.function, r.sum))?;
            }
            if report.vanishing.is_empty() {
                sink.line("vanishing: none")?;
            }
            for r in &report.vanishing {
                sink.line(&format!("vanishing: {} at p = {}", r.function, r.n))?;
            }
        }
    }
    sink.finish()?;
    Ok(0)
}
