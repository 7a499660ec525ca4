//! Lexicographic backtracking over canonical triangulations.

use std::fmt;
use std::ops::ControlFlow;

use crate::canonical::{has_smaller_relabeling, link_data, Scratch};
use crate::complex::{is_connected, is_cycle, is_two_sphere, PartialComplex, Triangulation, MAX_VERTICES_DIM3};
use crate::error::{ConfigError, EnumerationError};
use crate::facet::{compact, Facet, Ridge, Simplex, Vertex, MAX_LABEL};

/// Facets added beyond the initial star before the search tree is cut into
/// partition slices.
pub const PARTITION_DEPTH: usize = 2;

/// Number of search nodes between progress callbacks.
pub const PROGRESS_INTERVAL: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Partition {
    pub index: usize,
    pub modulus: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub dim: usize,
    pub n: usize,
    /// Every vertex must end with exactly this degree (surfaces only).
    pub degree_constraint: Option<usize>,
    pub partition: Option<Partition>,
    /// Record a step log.
    pub trace: bool,
    /// Run the relabeling test after every `relabel_interval`-th facet;
    /// 0 runs it only on closed complexes.
    pub relabel_interval: usize,
    /// Check incidence tables, connectivity and strong connectivity while
    /// searching.
    pub debug_asserts: bool,
}

impl EnumerationConfig {
    pub fn new(dim: usize, n: usize) -> Self {
        EnumerationConfig {
            dim,
            n,
            degree_constraint: None,
            partition: None,
            trace: false,
            relabel_interval: 1,
            debug_asserts: false,
        }
    }

    pub fn surfaces(n: usize) -> Self {
        Self::new(2, n)
    }

    pub fn manifolds(n: usize) -> Self {
        Self::new(3, n)
    }

    pub fn with_degree(mut self, q: usize) -> Self {
        self.degree_constraint = Some(q);
        self
    }

    pub fn with_partition(mut self, index: usize, modulus: usize) -> Self {
        self.partition = Some(Partition { index, modulus });
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let (min, max) = match self.dim {
            2 => (4, MAX_LABEL),
            3 => (5, MAX_VERTICES_DIM3),
            d => return Err(ConfigError::Dimension(d)),
        };
        if self.n < min {
            return Err(ConfigError::TooFewVertices { dim: self.dim, min, n: self.n });
        }
        if self.n > max {
            return Err(ConfigError::TooManyVertices { dim: self.dim, n: self.n, max });
        }
        if let Some(q) = self.degree_constraint {
            if self.dim != 2 {
                return Err(ConfigError::DegreeConstraintInDim3);
            }
            if q < 3 || q >= self.n {
                return Err(ConfigError::BadDegree { q, n: self.n });
            }
        }
        if let Some(p) = self.partition {
            if p.index >= p.modulus {
                return Err(ConfigError::BadPartition { index: p.index, modulus: p.modulus });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    RidgeOveruse,
    ClosedVertexTouched,
    DegreeTooSmall(Vertex),
    RelabelingSmaller,
    LinkNotSphere(Vertex),
    WrongVertexCount,
    DegreeConstraintViolated(Vertex),
    Exhausted,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::RidgeOveruse => write!(f, "ridge used twice"),
            Reason::ClosedVertexTouched => write!(f, "closed vertex touched"),
            Reason::DegreeTooSmall(v) => write!(f, "degree of {v} too small"),
            Reason::RelabelingSmaller => write!(f, "relabeling is smaller"),
            Reason::LinkNotSphere(v) => write!(f, "link of {v} is not a sphere"),
            Reason::WrongVertexCount => write!(f, "wrong vertex count"),
            Reason::DegreeConstraintViolated(v) => write!(f, "degree of {v} violates the constraint"),
            Reason::Exhausted => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EventKind {
    FacetAdded,
    Backtrack(Reason),
    SurfaceComplete,
    ManifoldEmitted,
    ManifoldDiscarded(Reason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationEvent {
    pub kind: EventKind,
    pub snapshot: Vec<Facet>,
    /// Vertices whose star is not closed, unused ones included.
    pub open_vertices: Vec<Vertex>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Facet additions, initial-star facets excluded.
    pub nodes: u64,
    pub emitted: u64,
    pub discarded: u64,
    pub degree_prunes: u64,
    pub link_prunes: u64,
    pub relabel_prunes: u64,
}

/// Receives the results of a run.
pub trait Visitor {
    fn triangulation(&mut self, t: &Triangulation) -> ControlFlow<()>;

    fn event(&mut self, _event: EnumerationEvent) {}

    fn progress(&mut self, _stats: &Stats) {}
}

impl<F: FnMut(&Triangulation) -> ControlFlow<()>> Visitor for F {
    fn triangulation(&mut self, t: &Triangulation) -> ControlFlow<()> {
        self(t)
    }
}

/// The closed star of vertex 1 for vertex-1 degree `d` on a surface:
/// `123, 124, 135, ..., 1(d-1)(d+1), 1d(d+1)`.
pub fn surface_star(d: usize) -> Vec<Facet> {
    assert!((3..MAX_LABEL).contains(&d));
    let d = d as Vertex;
    let mut out = vec![Simplex::from_sorted(&[1, 2, 3]), Simplex::from_sorted(&[1, 2, 4])];
    for i in 3..d {
        out.push(Simplex::from_sorted(&[1, i, i + 2]));
    }
    out.push(Simplex::from_sorted(&[1, d, d + 1]));
    out
}

/// Canonical triangulated 2-spheres on `d` vertices, in lex order.
pub fn canonical_spheres(d: usize) -> Vec<Vec<Facet>> {
    if d == 4 {
        return vec![crate::facet::facets(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]])];
    }
    let mut out = Vec::new();
    let cfg = EnumerationConfig::surfaces(d);
    let _ = for_each(&cfg, &mut |t: &Triangulation| {
        if t.facets().len() == 2 * d - 4 {
            out.push(t.facets().to_vec());
        }
        ControlFlow::Continue(())
    });
    out
}

fn cone(sphere: &[Facet]) -> Vec<Facet> {
    let shift: Vec<Vertex> = (0..=MAX_VERTICES_DIM3 as Vertex).map(|v| v + 1).collect();
    sphere
        .iter()
        .map(|f| f.map(&shift).expect("label in range").with(1))
        .collect()
}

/// Facet lists of the vertex-1 stars a run starts from, in lex order.
fn initial_star_facets(cfg: &EnumerationConfig) -> Vec<Vec<Facet>> {
    match cfg.dim {
        2 => match cfg.degree_constraint {
            Some(q) => vec![surface_star(q)],
            None => (3..cfg.n).map(surface_star).collect(),
        },
        _ => {
            let mut stars: Vec<Vec<Facet>> = (4..cfg.n)
                .flat_map(canonical_spheres)
                .map(|s| cone(&s))
                .collect();
            stars.sort();
            stars
        }
    }
}

/// The closed vertex-1 stars every canonical triangulation starts with.
pub fn initial_stars(cfg: &EnumerationConfig) -> Result<Vec<PartialComplex>, ConfigError> {
    cfg.validate()?;
    Ok(initial_star_facets(cfg)
        .into_iter()
        .map(|s| PartialComplex::from_facets(cfg.dim, cfg.n, &s).expect("initial star is legal"))
        .collect())
}

/// Largest facet through `r` using labels up to `n`.
#[inline]
fn max_completion(r: Ridge, n: usize) -> Facet {
    let mut x = n as Vertex;
    while r.contains(x) {
        x -= 1;
    }
    r.with(x)
}

/// Facets that may come next, in lex order; `None` if no vertex is open.
pub fn next_candidate_facets(k: &PartialComplex) -> Option<Vec<Facet>> {
    let mut out = Vec::new();
    candidates_into(k, &mut out)?;
    Some(out)
}

fn candidates_into(k: &PartialComplex, out: &mut Vec<Facet>) -> Option<()> {
    out.clear();
    let v = k.smallest_open_vertex()?;
    let n = k.n_target();
    let dim = k.dim();
    let used = k.used_vertex_count();
    let new_allowed = if dim == 2 { 1 } else { 2 };
    let lim = (used + new_allowed).min(n) as Vertex;
    let last = k.last();
    let open: Vec<Ridge> = k.open_ridges_at(v).collect();

    let admissible = |f: Facet| -> bool {
        if last.is_some_and(|l| f <= l) {
            return false;
        }
        if f.vertices().any(|x| k.is_closed_vertex(x)) {
            return false;
        }
        // new labels must be used+1 (and used+2 only together with used+1)
        let fresh: Vec<Vertex> = f.vertices().filter(|&x| x as usize > used).collect();
        if fresh.iter().enumerate().any(|(i, &x)| x as usize != used + 1 + i) {
            return false;
        }
        for r in f.boundary() {
            let u = k.ridge_use(r);
            if u >= 2 {
                return false;
            }
            if u == 0 && r.contains(v) && max_completion(r, n) <= f {
                return false;
            }
        }
        open.iter().all(|&r| {
            let in_f = r.vertices().all(|x| f.contains(x));
            in_f || max_completion(r, n) > f
        })
    };

    let others: Vec<Vertex> = (1..=lim).filter(|&x| x != v).collect();
    let m = others.len();
    if dim == 2 {
        for i in 0..m {
            for j in i + 1..m {
                let f = Simplex::new(&[v, others[i], others[j]]).expect("distinct");
                if admissible(f) {
                    out.push(f);
                }
            }
        }
    } else {
        for i in 0..m {
            for j in i + 1..m {
                for l in j + 1..m {
                    let f = Simplex::new(&[v, others[i], others[j], others[l]]).expect("distinct");
                    if admissible(f) {
                        out.push(f);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    Some(())
}

struct Engine<'a, V: Visitor> {
    cfg: &'a EnumerationConfig,
    k: PartialComplex,
    deg1: u32,
    base_class: Vec<Facet>,
    classes: Vec<Option<Vec<Facet>>>,
    orders: Vec<Vec<Vec<Vertex>>>,
    visitor: &'a mut V,
    stats: Stats,
    ordinal: u64,
    stopped: bool,
    error: Option<String>,
    scratch: Scratch,
}

impl<'a, V: Visitor> Engine<'a, V> {
    fn event(&mut self, kind: EventKind) {
        if self.cfg.trace {
            let e = EnumerationEvent {
                kind,
                snapshot: self.k.facets().to_vec(),
                open_vertices: self.k.incomplete_vertices(),
            };
            self.visitor.event(e);
        }
    }

    fn fail(&mut self, msg: String) {
        if self.error.is_none() {
            self.error = Some(msg);
        }
        self.stopped = true;
    }

    fn run_star(&mut self, star: &[Facet]) {
        self.k = PartialComplex::from_facets(self.cfg.dim, self.cfg.n, star).expect("initial star is legal");
        self.deg1 = self.k.degree(1);
        self.classes = vec![None; self.cfg.n + 1];
        self.orders = vec![Vec::new(); self.cfg.n + 1];
        if self.cfg.dim == 3 {
            let (class, orders) = link_data(self.k.star(1), 1);
            self.base_class = class.clone();
            self.classes[1] = Some(class);
            self.orders[1] = orders;
        }
        self.event(EventKind::FacetAdded);
        let mut children = 0;
        self.explore(0, &mut children);
    }

    fn explore(&mut self, depth: usize, children: &mut usize) {
        let mut cands = Vec::new();
        if candidates_into(&self.k, &mut cands).is_none() {
            return;
        }
        for f in cands {
            if self.stopped {
                return;
            }
            if *children > 0 && depth > 0 {
                self.event(EventKind::Backtrack(Reason::Exhausted));
            }
            *children += 1;
            self.step(f, depth + 1);
            if depth == 0 && !self.stopped {
                // the root is shown again after every child subtree
                self.event(EventKind::Backtrack(Reason::Exhausted));
            }
        }
    }

    fn step(&mut self, f: Facet, depth: usize) {
        let k_vertex = self.k.smallest_open_vertex();
        self.k.push_unchecked(f);
        self.stats.nodes += 1;
        if self.stats.nodes.is_multiple_of(PROGRESS_INTERVAL) {
            self.visitor.progress(&self.stats);
        }
        self.event(EventKind::FacetAdded);
        self.visit(f, depth, k_vertex);
        self.k.remove_last_facet().expect("non-empty");
        if self.cfg.dim == 3 {
            for v in f.vertices() {
                self.classes[v as usize] = None;
                self.orders[v as usize].clear();
            }
        }
    }

    fn prune(&mut self, reason: Reason) {
        match reason {
            Reason::DegreeTooSmall(_) | Reason::DegreeConstraintViolated(_) => self.stats.degree_prunes += 1,
            Reason::LinkNotSphere(_) => self.stats.link_prunes += 1,
            Reason::RelabelingSmaller => self.stats.relabel_prunes += 1,
            _ => {}
        }
        self.event(EventKind::Backtrack(reason));
    }

    fn visit(&mut self, f: Facet, depth: usize, k_vertex: Option<Vertex>) {
        let dim = self.cfg.dim;
        let mut closed_now = [0 as Vertex; 4];
        let mut n_closed = 0;
        for v in f.vertices() {
            if self.k.is_closed_vertex(v) {
                closed_now[n_closed] = v;
                n_closed += 1;
            }
        }
        let closed_now = &closed_now[..n_closed];

        if dim == 2 {
            if let Some(q) = self.cfg.degree_constraint {
                let q = q as u32;
                let bad = f.vertices().find(|&v| {
                    let d = self.k.degree(v);
                    d > q || (d == q && !self.k.is_closed_vertex(v)) || (d < q && self.k.is_closed_vertex(v))
                });
                if let Some(v) = bad {
                    return self.prune(Reason::DegreeConstraintViolated(v));
                }
            }
            if let Some(&v) = closed_now.iter().find(|&&v| self.k.degree(v) < self.deg1) {
                return self.prune(Reason::DegreeTooSmall(v));
            }
            for &v in closed_now {
                if !is_cycle(&self.k.link_of_vertex(v).faces) {
                    return self.prune(Reason::LinkNotSphere(v));
                }
            }
        } else {
            for &v in closed_now {
                if !is_two_sphere(&self.k.link_of_vertex(v).faces) {
                    return self.prune(Reason::LinkNotSphere(v));
                }
            }
            for &v in closed_now {
                let (cls, orders) = link_data(self.k.star(v), v);
                let smaller = cls < self.base_class;
                self.classes[v as usize] = Some(cls);
                self.orders[v as usize] = orders;
                if smaller {
                    return self.prune(Reason::DegreeTooSmall(v));
                }
            }
        }

        let closed = self.k.smallest_open_vertex().is_none();
        let j = self.cfg.relabel_interval;
        if closed || (j > 0 && depth.is_multiple_of(j)) {
            let seeds = self.seeds();
            if has_smaller_relabeling(self.k.facets(), self.k.stars(), &seeds, &self.orders, &mut self.scratch) {
                return self.prune(Reason::RelabelingSmaller);
            }
        }

        if self.cfg.debug_asserts {
            self.check_invariants(k_vertex);
            if self.stopped {
                return;
            }
        }

        if let Some(p) = self.cfg.partition {
            if depth == PARTITION_DEPTH || (closed && depth < PARTITION_DEPTH) {
                let ord = self.ordinal;
                self.ordinal += 1;
                if ord % p.modulus as u64 != p.index as u64 {
                    return;
                }
            }
        }

        if closed {
            self.event(EventKind::SurfaceComplete);
            if self.k.used_vertex_count() == self.cfg.n {
                self.stats.emitted += 1;
                self.event(EventKind::ManifoldEmitted);
                let t = Triangulation::from_verified(dim, self.k.facets().to_vec());
                if self.visitor.triangulation(&t).is_break() {
                    self.stopped = true;
                }
            } else {
                self.stats.discarded += 1;
                self.event(EventKind::ManifoldDiscarded(Reason::WrongVertexCount));
            }
            return;
        }

        let mut children = 0;
        self.explore(depth, &mut children);
    }

    fn seeds(&self) -> Vec<Vertex> {
        (1..=self.cfg.n as Vertex)
            .filter(|&v| {
                self.k.is_closed_vertex(v)
                    && if self.cfg.dim == 2 {
                        self.k.degree(v) == self.deg1
                    } else {
                        self.classes[v as usize].as_ref() == Some(&self.base_class)
                    }
            })
            .collect()
    }

    fn check_invariants(&mut self, k_vertex: Option<Vertex>) {
        if !self.k.recount_matches() {
            return self.fail(format!("incidence tables out of step at {:?}", self.k.facets()));
        }
        if !is_connected(self.k.facets()) {
            return self.fail(format!("disconnected partial complex {:?}", self.k.facets()));
        }
        if let Some(v) = k_vertex {
            if self.k.is_closed_vertex(v) && !self.k.is_strongly_connected() {
                self.fail(format!(
                    "star of {v} closed but the complex is not strongly connected: {:?}",
                    self.k.facets()
                ))
            }
        }
    }
}

/// Streams every canonical triangulation of the configured kind to
/// `visitor`, in lex order.
pub fn for_each<V: Visitor>(cfg: &EnumerationConfig, visitor: &mut V) -> Result<Stats, EnumerationError> {
    cfg.validate()?;
    let stars = initial_star_facets(cfg);
    let mut engine = Engine {
        cfg,
        k: PartialComplex::new(cfg.dim, cfg.n).expect("validated"),
        deg1: 0,
        base_class: Vec::new(),
        classes: Vec::new(),
        orders: Vec::new(),
        visitor,
        stats: Stats::default(),
        ordinal: 0,
        stopped: false,
        error: None,
        scratch: Scratch::default(),
    };
    for star in &stars {
        if engine.stopped {
            break;
        }
        engine.run_star(star);
    }
    match engine.error {
        Some(msg) => Err(EnumerationError::Assertion(msg)),
        None => Ok(engine.stats),
    }
}

/// Collects every canonical triangulation.
pub fn enumerate(cfg: &EnumerationConfig) -> Result<Vec<Triangulation>, EnumerationError> {
    let mut out = Vec::new();
    for_each(cfg, &mut |t: &Triangulation| {
        out.push(t.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Collects slice `index` of `modulus`.
pub fn enumerate_partition(
    cfg: &EnumerationConfig,
    index: usize,
    modulus: usize,
) -> Result<Vec<Triangulation>, EnumerationError> {
    enumerate(&cfg.clone().with_partition(index, modulus))
}

/// Counts without materializing results.
pub fn count(cfg: &EnumerationConfig) -> Result<Stats, EnumerationError> {
    for_each(cfg, &mut |_: &Triangulation| ControlFlow::Continue(()))
}

struct TraceCollector {
    events: Vec<EnumerationEvent>,
}

impl Visitor for TraceCollector {
    fn triangulation(&mut self, _t: &Triangulation) -> ControlFlow<()> {
        ControlFlow::Continue(())
    }

    fn event(&mut self, event: EnumerationEvent) {
        self.events.push(event);
    }
}

/// The full step log of a run.
pub fn trace(cfg: &EnumerationConfig) -> Result<Vec<EnumerationEvent>, EnumerationError> {
    let mut cfg = cfg.clone();
    cfg.trace = true;
    let mut c = TraceCollector { events: Vec::new() };
    for_each(&cfg, &mut c)?;
    Ok(c.events)
}

/// Renders a step log as a table, one row per displayed state:
/// `faces | incomplete vertices | reason`.
pub fn render_trace(events: &[EnumerationEvent]) -> String {
    let mut out = String::new();
    let mut it = events.iter().peekable();
    while let Some(e) = it.next() {
        let mut reason = String::new();
        match e.kind {
            EventKind::FacetAdded => match it.peek().map(|n| n.kind) {
                Some(EventKind::Backtrack(r)) if r != Reason::Exhausted => {
                    reason = r.to_string();
                    it.next();
                }
                Some(EventKind::SurfaceComplete) => {
                    it.next();
                    let word = if e.snapshot.first().map_or(2, |f| f.len() - 1) == 2 {
                        "surface complete"
                    } else {
                        "manifold complete"
                    };
                    reason = match it.peek().map(|n| n.kind) {
                        Some(EventKind::ManifoldEmitted) => {
                            it.next();
                            format!("{word}!")
                        }
                        Some(EventKind::ManifoldDiscarded(_)) => {
                            it.next();
                            word.to_string()
                        }
                        _ => word.to_string(),
                    };
                }
                _ => {}
            },
            EventKind::Backtrack(Reason::Exhausted) => {}
            _ => continue,
        }
        let faces: Vec<String> = e.snapshot.iter().map(|&f| compact(f)).collect();
        let open: Vec<String> = e.open_vertices.iter().map(|v| v.to_string()).collect();
        let line = format!("{} | {} | {}", faces.join("+"), open.join(" "), reason);
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
