//! Text formats: triangulation records, count tables and partition manifests.
//!
//! A record is one line: facets joined by `;`, each facet its labels joined
//! by single spaces, facets in lex order, e.g. `1 2 3;1 2 4;1 3 4;2 3 4`.
//! Files ending in `.gz` are transparently (de)compressed.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use flate2::read::MultiGzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;

use crate::complex::Triangulation;
use crate::error::FormatError;
use crate::facet::{Facet, Simplex, Vertex, MAX_LABEL};

/// Serializes a facet list.
pub fn serialize_facets(facets: &[Facet]) -> String {
    let mut out = String::with_capacity(facets.len() * 8);
    for (i, f) in facets.iter().enumerate() {
        if i > 0 {
            out.push(';');
        }
        for (j, v) in f.vertices().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            out.push_str(&v.to_string());
        }
    }
    out
}

/// Serializes a triangulation as one record line (without the newline).
pub fn serialize(t: &Triangulation) -> String {
    serialize_facets(t.facets())
}

fn malformed(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Malformed { line, msg: msg.into() }
}

fn parse_label(tok: &str, line: usize) -> Result<Vertex, FormatError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) || (tok.len() > 1 && tok.starts_with('0')) {
        return Err(malformed(line, format!("bad label {tok:?}")));
    }
    match tok.parse::<usize>() {
        Ok(v) if (1..=MAX_LABEL).contains(&v) => Ok(v as Vertex),
        _ => Err(malformed(line, format!("label {tok} out of range 1..={MAX_LABEL}"))),
    }
}

/// Parses a record at `line` without checking that it is a manifold.
///
/// Checks syntax, label range, sorted labels within each facet, strictly
/// increasing facets and a uniform facet size of 3 or 4. Returns the
/// dimension and the facets.
pub fn parse_raw_at(text: &str, line: usize) -> Result<(usize, Vec<Facet>), FormatError> {
    let mut facets = Vec::new();
    let mut size = None;
    for part in text.split(';') {
        let labels = part.split(' ').map(|t| parse_label(t, line)).collect::<Result<Vec<_>, _>>()?;
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(malformed(line, format!("facet {part:?} is not strictly increasing")));
        }
        if !(3..=4).contains(&labels.len()) {
            return Err(malformed(line, format!("facet {part:?} has {} labels", labels.len())));
        }
        if *size.get_or_insert(labels.len()) != labels.len() {
            return Err(malformed(line, "facets of mixed size"));
        }
        let f = Simplex::from_sorted(&labels);
        if let Some(&last) = facets.last() {
            if f == last {
                return Err(malformed(line, format!("duplicate facet {part:?}")));
            }
            if f < last {
                return Err(malformed(line, format!("facet {part:?} is out of order")));
            }
        }
        facets.push(f);
    }
    Ok((size.unwrap_or(3) - 1, facets))
}

/// [`parse_raw_at`] for a standalone line.
pub fn parse_raw(text: &str) -> Result<(usize, Vec<Facet>), FormatError> {
    parse_raw_at(text, 1)
}

/// Parses and verifies a record at `line`: the result is a closed
/// combinatorial manifold on `1..n`.
pub fn parse_at(text: &str, line: usize) -> Result<Triangulation, FormatError> {
    let (dim, facets) = parse_raw_at(text, line)?;
    Triangulation::new(dim, facets).map_err(|source| FormatError::Invalid { line, source })
}

/// [`parse_at`] for a standalone line.
pub fn parse(text: &str) -> Result<Triangulation, FormatError> {
    parse_at(text, 1)
}

fn is_gz(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "gz")
}

/// Opens a file for buffered reading, decompressing `.gz` files.
pub fn open_input(path: &Path) -> Result<Box<dyn BufRead>, FormatError> {
    let file = File::open(path)?;
    Ok(if is_gz(path) {
        Box::new(BufReader::new(MultiGzDecoder::new(file)))
    } else {
        Box::new(BufReader::new(file))
    })
}

/// Creates a file for buffered writing, compressing `.gz` files.
pub fn create_output(path: &Path) -> Result<Box<dyn Write>, FormatError> {
    let file = File::create(path)?;
    Ok(if is_gz(path) {
        Box::new(BufWriter::new(GzEncoder::new(file, Compression::default())))
    } else {
        Box::new(BufWriter::new(file))
    })
}

/// Iterates over the verified records of a reader, with 1-based line
/// numbers.
pub struct RecordReader<R> {
    inner: io::Lines<R>,
    line: usize,
}

impl<R: BufRead> RecordReader<R> {
    pub fn new(reader: R) -> Self {
        RecordReader { inner: reader.lines(), line: 0 }
    }
}

impl<R: BufRead> Iterator for RecordReader<R> {
    type Item = Result<(usize, Triangulation), FormatError>;

    fn next(&mut self) -> Option<Self::Item> {
        let text = match self.inner.next()? {
            Ok(t) => t,
            Err(e) => return Some(Err(e.into())),
        };
        self.line += 1;
        let line = self.line;
        Some(parse_at(&text, line).map(|t| (line, t)))
    }
}

/// Reads every record of a file.
pub fn read_records(path: &Path) -> Result<Vec<Triangulation>, FormatError> {
    RecordReader::new(open_input(path)?).map(|r| r.map(|(_, t)| t)).collect()
}

/// Writes records one per line and remembers the count and the last line.
pub struct RecordWriter<W: Write> {
    inner: W,
    written: u64,
    last: Option<String>,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(inner: W) -> Self {
        RecordWriter { inner, written: 0, last: None }
    }

    pub fn write(&mut self, t: &Triangulation) -> io::Result<()> {
        self.write_line(serialize(t))
    }

    /// Writes an already serialized record.
    pub fn write_line(&mut self, line: String) -> io::Result<()> {
        self.inner.write_all(line.as_bytes())?;
        self.inner.write_all(b"\n")?;
        self.written += 1;
        self.last = Some(line);
        Ok(())
    }

    pub fn written(&self) -> u64 {
        self.written
    }

    pub fn last(&self) -> Option<&str> {
        self.last.as_deref()
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.inner.flush()?;
        Ok(self.inner)
    }
}

/// One row key of a count table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CountKey {
    pub n: u64,
    pub dim: u64,
    pub orientable: bool,
    /// Genus for surfaces, a manifold name for 3-manifolds.
    pub genus_or_name: String,
}

impl CountKey {
    fn sort_key(&self) -> (u64, u64, bool, usize, &str) {
        // orientable rows first; numeric genera sort by value
        (self.n, self.dim, !self.orientable, self.genus_or_name.len(), &self.genus_or_name)
    }
}

impl Ord for CountKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for CountKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Aggregated counts keyed by `(n, dim, orientable, genus_or_name)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountTable {
    rows: BTreeMap<CountKey, u64>,
}

pub const COUNT_TABLE_HEADER: [&str; 5] = ["n", "dim", "orientable", "genus_or_name", "count"];

impl CountTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: CountKey, count: u64) {
        *self.rows.entry(key).or_default() += count;
    }

    pub fn merge(&mut self, other: &CountTable) {
        for (k, &c) in &other.rows {
            self.add(k.clone(), c);
        }
    }

    pub fn get(&self, key: &CountKey) -> u64 {
        self.rows.get(key).copied().unwrap_or(0)
    }

    pub fn rows(&self) -> impl Iterator<Item = (&CountKey, u64)> {
        self.rows.iter().map(|(k, &c)| (k, c))
    }

    pub fn total(&self) -> u64 {
        self.rows.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Writes the CSV form: a header, then one row per key in table order.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), FormatError> {
        let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        let mut emit = |rec: &[String]| out.write_record(rec).map_err(csv_error);
        emit(&COUNT_TABLE_HEADER.map(String::from))?;
        for (k, c) in self.rows() {
            emit(&[k.n.to_string(), k.dim.to_string(), k.orientable.to_string(), k.genus_or_name.clone(), c.to_string()])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    /// Reads the CSV form; repeated keys are summed.
    pub fn read_csv<R: io::Read>(r: R) -> Result<Self, FormatError> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
        let header = rdr.headers().map_err(csv_error)?.clone();
        if header.iter().ne(COUNT_TABLE_HEADER) {
            return Err(malformed(1, "unexpected count table header"));
        }
        let mut table = CountTable::new();
        for (i, rec) in rdr.records().enumerate() {
            let line = i + 2;
            let rec = rec.map_err(csv_error)?;
            let num = |j: usize| rec[j].parse::<u64>().map_err(|_| malformed(line, format!("bad number {:?}", &rec[j])));
            let orientable = rec[2].parse::<bool>().map_err(|_| malformed(line, "bad orientability"))?;
            table.add(
                CountKey { n: num(0)?, dim: num(1)?, orientable, genus_or_name: rec[3].to_string() },
                num(4)?,
            );
        }
        Ok(table)
    }
}

fn csv_error(e: csv::Error) -> FormatError {
    let line = e.position().map_or(0, |p| p.line() as usize);
    match e.into_kind() {
        csv::ErrorKind::Io(e) => FormatError::Io(e),
        kind => malformed(line, format!("{kind:?}")),
    }
}

/// One line of a partition manifest: slice `index` of `modulus` finished
/// with `emitted` records, the last of which was `last`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub index: usize,
    pub modulus: usize,
    pub emitted: u64,
    pub last: Option<String>,
}

impl ManifestEntry {
    /// Tab-separated `index modulus emitted last`, with `-` for no record.
    pub fn to_line(&self) -> String {
        format!("{}\t{}\t{}\t{}", self.index, self.modulus, self.emitted, self.last.as_deref().unwrap_or("-"))
    }

    pub fn parse_line(text: &str, line: usize) -> Result<Self, FormatError> {
        let cols: Vec<&str> = text.split('\t').collect();
        if cols.len() != 4 {
            return Err(malformed(line, "manifest lines have four tab-separated columns"));
        }
        let num = |s: &str| s.parse::<u64>().map_err(|_| malformed(line, format!("bad number {s:?}")));
        let index = num(cols[0])? as usize;
        let modulus = num(cols[1])? as usize;
        if index >= modulus {
            return Err(malformed(line, "slice index must be below the modulus"));
        }
        let last = match cols[3] {
            "-" => None,
            s => {
                parse_raw_at(s, line)?;
                Some(s.to_string())
            }
        };
        Ok(ManifestEntry { index, modulus, emitted: num(cols[2])?, last })
    }
}

/// Parses a whole manifest.
pub fn read_manifest<R: BufRead>(r: R) -> Result<Vec<ManifestEntry>, FormatError> {
    r.lines().enumerate().map(|(i, l)| ManifestEntry::parse_line(&l?, i + 1)).collect()
}

/// Slices of `modulus` that have no entry in `manifest` and still need a run.
pub fn missing_slices(manifest: &[ManifestEntry], modulus: usize) -> Vec<usize> {
    (0..modulus).filter(|&i| !manifest.iter().any(|e| e.modulus == modulus && e.index == i)).collect()
}
