use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::io::{self, BufRead, BufWriter, Write};
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use lextri_core::enumerate::{for_each, render_trace, trace, Visitor};
use lextri_core::equivelar::{admissible_pairs, admissible_triples, AdmissiblePairs};
use lextri_core::io::{
    create_output, open_input, parse_raw_at, CountKey, CountTable, ManifestEntry, RecordReader,
    RecordWriter,
};
use lextri_core::topology::census_key;
use lextri_core::{canonical_form, EnumerationConfig, EnumerationError, Facet, Stats, TopologyError, Triangulation};

#[derive(Debug, Error)]
enum CliError {
    /// Bad flags or an impossible configuration: exit 2.
    #[error("{0}")]
    Usage(String),
    /// Assertion, verification or data failure: exit 1.
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl From<EnumerationError> for CliError {
    fn from(e: EnumerationError) -> Self {
        match e {
            EnumerationError::Config(c) => CliError::Usage(c.to_string()),
            EnumerationError::Assertion(m) => CliError::Failure(format!("internal assertion failed: {m}")),
        }
    }
}

impl From<lextri_core::FormatError> for CliError {
    fn from(e: lextri_core::FormatError) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<TopologyError> for CliError {
    fn from(e: TopologyError) -> Self {
        CliError::Failure(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Slice {
    index: usize,
    modulus: usize,
}

impl FromStr for Slice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (i, m) = s.split_once('/').ok_or("expected I/M")?;
        let index: usize = i.parse().map_err(|_| format!("bad slice index {i:?}"))?;
        let modulus: usize = m.parse().map_err(|_| format!("bad slice modulus {m:?}"))?;
        if modulus == 0 || index >= modulus {
            return Err(format!("slice {index}/{modulus} needs 0 <= I < M"));
        }
        Ok(Slice { index, modulus })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Records,
    Counts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EquivelarTable {
    Pairs,
    Triples,
}

#[derive(clap::Args, Debug, Clone)]
struct RunArgs {
    /// 2 for surfaces, 3 for 3-manifolds.
    #[arg(long)]
    dim: usize,
    /// Number of vertices.
    #[arg(long)]
    vertices: usize,
    /// Require every vertex to have this degree (surfaces only).
    #[arg(long)]
    equivelar_degree: Option<usize>,
}

impl RunArgs {
    fn config(&self) -> Result<EnumerationConfig, CliError> {
        let mut cfg = EnumerationConfig::new(self.dim, self.vertices);
        cfg.degree_constraint = self.equivelar_degree;
        cfg.debug_asserts = std::env::var("LEXTRI_DEBUG_ASSERTS").is_ok_and(|v| v == "1");
        cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

#[derive(Parser, Debug)]
#[command(name = "lextri", version, about = "Enumerate triangulated surfaces and 3-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate canonical triangulations, as records or as a count table.
    Enumerate {
        #[command(flatten)]
        run: RunArgs,
        /// Run only slice I of M.
        #[arg(long, conflicts_with = "jobs")]
        slice: Option<Slice>,
        /// Run J slices in-process, writing OUT.IofJ per slice.
        #[arg(long, requires = "out")]
        jobs: Option<usize>,
        /// Output file (default: standard output). A `.gz` suffix compresses.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append one line per finished slice to this manifest.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Records)]
        format: Format,
    },
    /// Count table of a record file by orientability and genus or name.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Print the number of canonical triangulations.
    Count {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Admissible equivelar parameters for an Euler characteristic.
    Equivelar {
        #[arg(long, allow_negative_numbers = true)]
        chi: i64,
        #[arg(value_enum)]
        table: EquivelarTable,
        /// Largest vertex count listed for the infinite torus family.
        #[arg(long, default_value_t = 30)]
        max_n: u64,
    },
    /// Check that a record file is sorted, duplicate-free and canonical.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Print the step log of a run.
    Trace {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Merge sorted slice outputs into one sorted file.
    Merge {
        #[arg(long = "in", num_args = 1.., required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Streams results of one run into a record writer or a count table.
struct Sink<'a> {
    records: Option<RecordWriter<Box<dyn Write + 'a>>>,
    counts: Option<CountTable>,
    dim: usize,
    n: usize,
    emitted: u64,
    last: Option<String>,
    error: Option<CliError>,
    label: String,
}

impl Sink<'_> {
    fn record(&mut self, t: &Triangulation) -> Result<(), CliError> {
        self.emitted += 1;
        if let Some(w) = &mut self.records {
            w.write(t)?;
        }
        if let Some(table) = &mut self.counts {
            table.add(count_key(t, self.dim, self.n)?, 1);
        }
        Ok(())
    }
}

impl Visitor for Sink<'_> {
    fn triangulation(&mut self, t: &Triangulation) -> ControlFlow<()> {
        match self.record(t) {
            Ok(()) => ControlFlow::Continue(()),
            Err(e) => {
                self.error = Some(e);
                ControlFlow::Break(())
            }
        }
    }

    fn progress(&mut self, stats: &Stats) {
        eprintln!("{}progress: {} nodes, {} emitted", self.label, stats.nodes, stats.emitted);
    }
}

fn count_key(t: &Triangulation, dim: usize, n: usize) -> Result<CountKey, CliError> {
    let (orientable, key) = match census_key(t) {
        Ok(k) => k,
        Err(TopologyError::OutOfRange { .. }) => (lextri_core::topology::is_orientable(t), "unnamed".to_string()),
        Err(e) => return Err(e.into()),
    };
    Ok(CountKey { n: n as u64, dim: dim as u64, orientable, genus_or_name: key })
}

struct SliceResult {
    emitted: u64,
    last: Option<String>,
    counts: Option<CountTable>,
}

fn run_one(
    cfg: &EnumerationConfig,
    format: Format,
    out: Option<Box<dyn Write + '_>>,
    label: String,
) -> Result<SliceResult, CliError> {
    let mut sink = Sink {
        records: match format {
            Format::Records => Some(RecordWriter::new(out.expect("records need an output"))),
            Format::Counts => None,
        },
        counts: (format == Format::Counts).then(CountTable::new),
        dim: cfg.dim,
        n: cfg.n,
        emitted: 0,
        last: None,
        error: None,
        label,
    };
    for_each(cfg, &mut sink)?;
    if let Some(e) = sink.error {
        return Err(e);
    }
    if let Some(w) = sink.records.take() {
        sink.last = w.last().map(str::to_string);
        w.finish()?;
    }
    Ok(SliceResult { emitted: sink.emitted, last: sink.last, counts: sink.counts })
}

fn slice_path(out: &Path, index: usize, modulus: usize) -> PathBuf {
    let name = out.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let tag = format!("{index}of{modulus}");
    let name = match name.strip_suffix(".gz") {
        Some(stem) => format!("{stem}.{tag}.gz"),
        None => format!("{name}.{tag}"),
    };
    out.with_file_name(name)
}

fn append_manifest(path: &Path, entries: &[ManifestEntry]) -> Result<(), CliError> {
    let mut f = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    for e in entries {
        writeln!(f, "{}", e.to_line())?;
    }
    Ok(())
}

fn write_table(table: &CountTable) -> Result<(), CliError> {
    table.write_csv(io::stdout().lock())?;
    Ok(())
}

fn cmd_enumerate(
    run: &RunArgs,
    slice: Option<Slice>,
    jobs: Option<usize>,
    out: Option<&Path>,
    manifest: Option<&Path>,
    format: Format,
) -> Result<(), CliError> {
    let cfg = run.config()?;
    let (results, entries) = match jobs {
        Some(0) => return Err(CliError::Usage("--jobs must be positive".into())),
        Some(j) => {
            let out = out.expect("clap enforces --out with --jobs");
            let results: Vec<Result<SliceResult, CliError>> = std::thread::scope(|s| {
                let handles: Vec<_> = (0..j)
                    .map(|i| {
                        let cfg = cfg.clone().with_partition(i, j);
                        let path = slice_path(out, i, j);
                        s.spawn(move || {
                            let w = match format {
                                Format::Records => Some(create_output(&path)?),
                                Format::Counts => None,
                            };
                            run_one(&cfg, format, w, format!("[{i}/{j}] "))
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("slice thread panicked")).collect()
            });
            let results = results.into_iter().collect::<Result<Vec<_>, _>>()?;
            let entries =
                results.iter().enumerate().map(|(i, r)| manifest_entry(i, j, r)).collect::<Vec<_>>();
            (results, entries)
        }
        None => {
            let cfg = match slice {
                Some(s) => cfg.with_partition(s.index, s.modulus),
                None => cfg,
            };
            let w: Option<Box<dyn Write>> = match (format, out) {
                (Format::Counts, _) => None,
                (Format::Records, Some(p)) => Some(create_output(p)?),
                (Format::Records, None) => Some(Box::new(BufWriter::new(io::stdout().lock()))),
            };
            let r = run_one(&cfg, format, w, String::new())?;
            let s = slice.unwrap_or(Slice { index: 0, modulus: 1 });
            let entry = manifest_entry(s.index, s.modulus, &r);
            (vec![r], vec![entry])
        }
    };
    if let Some(m) = manifest {
        append_manifest(m, &entries)?;
    }
    if format == Format::Counts {
        let mut table = CountTable::new();
        for r in &results {
            table.merge(r.counts.as_ref().expect("counts mode"));
        }
        match out {
            Some(p) if jobs.is_none() => {
                let mut w = create_output(p)?;
                table.write_csv(&mut w)?;
                w.flush()?;
            }
            _ => write_table(&table)?,
        }
    }
    eprintln!("total {}", results.iter().map(|r| r.emitted).sum::<u64>());
    Ok(())
}

fn manifest_entry(index: usize, modulus: usize, r: &SliceResult) -> ManifestEntry {
    ManifestEntry { index, modulus, emitted: r.emitted, last: r.last.clone() }
}

fn cmd_classify(input: &Path) -> Result<(), CliError> {
    let mut table = CountTable::new();
    for rec in RecordReader::new(open_input(input)?) {
        let (line, t) = rec?;
        let key = count_key(&t, t.dim(), t.n()).map_err(|e| CliError::Failure(format!("line {line}: {e}")))?;
        table.add(key, 1);
    }
    write_table(&table)?;
    eprintln!("total {}", table.total());
    Ok(())
}

fn cmd_count(run: &RunArgs) -> Result<(), CliError> {
    let cfg = run.config()?;
    let mut progress = |s: &Stats| eprintln!("progress: {} nodes, {} emitted", s.nodes, s.emitted);
    struct Counter<'a, F: FnMut(&Stats)>(&'a mut F);
    impl<F: FnMut(&Stats)> Visitor for Counter<'_, F> {
        fn triangulation(&mut self, _t: &Triangulation) -> ControlFlow<()> {
            ControlFlow::Continue(())
        }
        fn progress(&mut self, stats: &Stats) {
            (self.0)(stats)
        }
    }
    let stats = for_each(&cfg, &mut Counter(&mut progress))?;
    println!("{}", stats.emitted);
    eprintln!(
        "nodes {} discarded {} degree prunes {} link prunes {} relabel prunes {}",
        stats.nodes, stats.discarded, stats.degree_prunes, stats.link_prunes, stats.relabel_prunes
    );
    Ok(())
}

fn cmd_equivelar(chi: i64, table: EquivelarTable, max_n: u64) -> Result<(), CliError> {
    let usage = |e: lextri_core::EquivelarError| CliError::Usage(e.to_string());
    let mut out = io::stdout().lock();
    match table {
        EquivelarTable::Pairs => {
            let pairs = admissible_pairs(chi).map_err(usage)?;
            if pairs == AdmissiblePairs::TorusFamily {
                eprintln!("chi = 0: every n >= 7 with q = 6; listing n <= {max_n}");
            }
            for (n, q) in pairs.up_to(max_n) {
                writeln!(out, "({n},{q})")?;
            }
        }
        EquivelarTable::Triples => {
            for s in admissible_triples(chi).map_err(usage)? {
                writeln!(out, "{s}")?;
            }
        }
    }
    Ok(())
}

fn cmd_verify(input: &Path) -> Result<(), CliError> {
    let fail = |line: usize, msg: String| CliError::Failure(format!("line {line}: {msg}"));
    let mut prev: Option<Vec<Facet>> = None;
    let mut dim = None;
    let mut count = 0u64;
    for rec in RecordReader::new(open_input(input)?) {
        let (line, t) = rec?;
        if *dim.get_or_insert(t.dim()) != t.dim() {
            return Err(fail(line, "dimension differs from the first record".into()));
        }
        let canon = canonical_form(t.dim(), t.facets()).map_err(|e| fail(line, e.to_string()))?;
        if canon != t.facets() {
            return Err(fail(line, "record is not in canonical form".into()));
        }
        if let Some(p) = &prev {
            if p.as_slice() == t.facets() {
                return Err(fail(line, "duplicate record".into()));
            }
            if p.as_slice() > t.facets() {
                return Err(fail(line, "records are not sorted".into()));
            }
        }
        prev = Some(t.facets().to_vec());
        count += 1;
    }
    eprintln!("ok: {count} records");
    Ok(())
}

fn cmd_trace(run: &RunArgs) -> Result<(), CliError> {
    let events = trace(&run.config()?)?;
    io::stdout().lock().write_all(render_trace(&events).as_bytes())?;
    Ok(())
}

/// Next record of one merge input, keyed by its packed facets.
fn next_record(
    lines: &mut io::Lines<Box<dyn BufRead>>,
    lineno: &mut usize,
    path: &Path,
) -> Result<Option<(Vec<Facet>, String)>, CliError> {
    let Some(text) = lines.next().transpose()? else {
        return Ok(None);
    };
    *lineno += 1;
    let (_, facets) = parse_raw_at(&text, *lineno).map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))?;
    Ok(Some((facets, text)))
}

fn cmd_merge(inputs: &[PathBuf], out: &Path) -> Result<(), CliError> {
    let mut sources = Vec::new();
    for p in inputs {
        sources.push((open_input(p)?.lines(), 0usize));
    }
    let mut heap = BinaryHeap::new();
    for (i, (lines, no)) in sources.iter_mut().enumerate() {
        if let Some((key, text)) = next_record(lines, no, &inputs[i])? {
            heap.push(Reverse((key, i, text)));
        }
    }
    let mut w = RecordWriter::new(create_output(out)?);
    let mut prev: Option<Vec<Facet>> = None;
    while let Some(Reverse((key, i, text))) = heap.pop() {
        if let Some(p) = &prev {
            if *p == key {
                return Err(CliError::Failure(format!(
                    "duplicate record {text:?} (second copy in {})",
                    inputs[i].display()
                )));
            }
        }
        let (lines, no) = &mut sources[i];
        if let Some((next, next_text)) = next_record(lines, no, &inputs[i])? {
            if next <= key {
                return Err(CliError::Failure(format!(
                    "{} line {no}: input is not strictly sorted",
                    inputs[i].display()
                )));
            }
            heap.push(Reverse((next, i, next_text)));
        }
        w.write_line(text)?;
        prev = Some(key);
    }
    let total = w.written();
    w.finish()?;
    eprintln!("total {total}");
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Enumerate { run, slice, jobs, out, manifest, format } => {
            cmd_enumerate(&run, slice, jobs, out.as_deref(), manifest.as_deref(), format)
        }
        Command::Classify { input } => cmd_classify(&input),
        Command::Count { run } => cmd_count(&run),
        Command::Equivelar { chi, table, max_n } => cmd_equivelar(chi, table, max_n),
        Command::Verify { input } => cmd_verify(&input),
        Command::Trace { run } => cmd_trace(&run),
        Command::Merge { inputs, out } => cmd_merge(&inputs, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
