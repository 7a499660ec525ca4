//! Partial complexes and the structural predicates built on them.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{ComplexError, Violation};
use crate::facet::{Facet, Ridge, Simplex, Vertex, MAX_LABEL};

/// Largest vertex budget supported for 3-manifolds (the ridge table is a
/// dense cube).
pub const MAX_VERTICES_DIM3: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexState {
    Unused,
    Open,
    /// Every ridge through the vertex is used twice.
    Closed,
}

/// The backtracking state: a lex-ordered facet list with incidence counts.
///
/// All tables are kept in step with `facets` by [`add_facet`] and
/// [`remove_last_facet`]; [`recount_matches`] checks them against a full
/// recomputation.
///
/// [`add_facet`]: PartialComplex::add_facet
/// [`remove_last_facet`]: PartialComplex::remove_last_facet
/// [`recount_matches`]: PartialComplex::recount_matches
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialComplex {
    dim: usize,
    n_target: usize,
    stride: usize,
    facets: Vec<Facet>,
    ridge_use: Vec<u8>,
    degree: Vec<u32>,
    // usage-1 ridges through each vertex; zero on a used vertex means closed
    open_ridges: Vec<u32>,
    stars: Vec<Vec<Facet>>,
    used: usize,
}

impl PartialComplex {
    pub fn new(dim: usize, n_target: usize) -> Result<Self, ComplexError> {
        let limit = match dim {
            2 => MAX_LABEL,
            3 => MAX_VERTICES_DIM3,
            _ => return Err(ComplexError::UnsupportedDimension(dim)),
        };
        if n_target < dim + 1 || n_target > limit {
            return Err(ComplexError::VertexBudget { dim, n: n_target });
        }
        let stride = n_target + 1;
        Ok(PartialComplex {
            dim,
            n_target,
            stride,
            facets: Vec::new(),
            ridge_use: vec![0; stride.pow(dim as u32)],
            degree: vec![0; stride],
            open_ridges: vec![0; stride],
            stars: vec![Vec::new(); stride],
            used: 0,
        })
    }

    /// Builds a complex by adding `facets` in order.
    pub fn from_facets(dim: usize, n_target: usize, facets: &[Facet]) -> Result<Self, ComplexError> {
        let mut k = Self::new(dim, n_target)?;
        for &f in facets {
            k.add_facet(f)?;
        }
        Ok(k)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn n_target(&self) -> usize {
        self.n_target
    }

    #[inline]
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.facets.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    #[inline]
    pub fn last(&self) -> Option<Facet> {
        self.facets.last().copied()
    }

    /// Number of vertices with at least one incident facet.
    #[inline]
    pub fn used_vertex_count(&self) -> usize {
        self.used
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> u32 {
        self.degree[v as usize]
    }

    #[inline]
    pub fn star(&self, v: Vertex) -> &[Facet] {
        &self.stars[v as usize]
    }

    /// Stars of every label `0..=n_target` (index 0 is always empty).
    #[inline]
    pub(crate) fn stars(&self) -> &[Vec<Facet>] {
        &self.stars
    }

    #[inline]
    fn ridge_index(&self, r: Ridge) -> usize {
        let (b, len) = r.labels();
        let mut idx = 0usize;
        for &x in &b[..len] {
            idx = idx * self.stride + x as usize;
        }
        idx
    }

    #[inline]
    pub fn ridge_use(&self, r: Ridge) -> u8 {
        self.ridge_use[self.ridge_index(r)]
    }

    #[inline]
    pub fn vertex_state(&self, v: Vertex) -> VertexState {
        let v = v as usize;
        if self.degree[v] == 0 {
            VertexState::Unused
        } else if self.open_ridges[v] == 0 {
            VertexState::Closed
        } else {
            VertexState::Open
        }
    }

    #[inline]
    pub fn is_closed_vertex(&self, v: Vertex) -> bool {
        self.vertex_state(v) == VertexState::Closed
    }

    /// True when the complex is non-empty and every used vertex is closed,
    /// i.e. every ridge has usage exactly two.
    pub fn is_closed(&self) -> bool {
        !self.facets.is_empty()
            && (1..=self.n_target).all(|v| self.vertex_state(v as Vertex) != VertexState::Open)
    }

    /// The smallest used vertex whose star is not closed.
    pub fn smallest_open_vertex(&self) -> Option<Vertex> {
        (1..=self.n_target)
            .map(|v| v as Vertex)
            .find(|&v| self.vertex_state(v) == VertexState::Open)
    }

    /// Vertices that are not closed (unused vertices included), ascending.
    pub fn incomplete_vertices(&self) -> Vec<Vertex> {
        (1..=self.n_target)
            .map(|v| v as Vertex)
            .filter(|&v| self.vertex_state(v) != VertexState::Closed)
            .collect()
    }

    /// Ridges through `v` that are used exactly once.
    pub fn open_ridges_at(&self, v: Vertex) -> impl Iterator<Item = Ridge> + '_ {
        self.stars[v as usize]
            .iter()
            .flat_map(move |f| f.boundary().filter(move |r| r.contains(v)))
            .filter(move |&r| self.ridge_use(r) == 1)
    }

    /// Checks whether `f` could be appended, without mutating.
    pub fn check_facet(&self, f: Facet) -> Result<(), Violation> {
        if f.len() != self.dim + 1 || f.vertices().any(|v| v as usize > self.n_target) {
            return Err(Violation::InvalidFacet(f));
        }
        if let Some(last) = self.last() {
            if f <= last {
                return Err(Violation::NotLexGreater { facet: f, last });
            }
        }
        let closed: Vec<Vertex> = f.vertices().filter(|&v| self.is_closed_vertex(v)).collect();
        if !closed.is_empty() {
            return Err(Violation::ClosedVertex(closed));
        }
        if let Some(r) = f.boundary().find(|&r| self.ridge_use(r) >= 2) {
            return Err(Violation::RidgeOveruse(r));
        }
        Ok(())
    }

    /// Appends `f` after checking the ordering contract and legality.
    pub fn add_facet(&mut self, f: Facet) -> Result<(), Violation> {
        self.check_facet(f)?;
        self.push_unchecked(f);
        Ok(())
    }

    /// Appends `f` without legality checks. The caller guarantees what
    /// [`check_facet`](Self::check_facet) would.
    pub(crate) fn push_unchecked(&mut self, f: Facet) {
        for r in f.boundary() {
            let idx = self.ridge_index(r);
            let before = self.ridge_use[idx];
            self.ridge_use[idx] = before + 1;
            for v in r.vertices() {
                if before == 0 {
                    self.open_ridges[v as usize] += 1;
                } else {
                    self.open_ridges[v as usize] -= 1;
                }
            }
        }
        for v in f.vertices() {
            let v = v as usize;
            if self.degree[v] == 0 {
                self.used += 1;
            }
            self.degree[v] += 1;
            self.stars[v].push(f);
        }
        self.facets.push(f);
    }

    /// Exact inverse of the matching [`add_facet`](Self::add_facet).
    pub fn remove_last_facet(&mut self) -> Result<Facet, ComplexError> {
        let f = self.facets.pop().ok_or(ComplexError::Empty)?;
        for r in f.boundary() {
            let idx = self.ridge_index(r);
            let before = self.ridge_use[idx];
            self.ridge_use[idx] = before - 1;
            for v in r.vertices() {
                if before == 1 {
                    self.open_ridges[v as usize] -= 1;
                } else {
                    self.open_ridges[v as usize] += 1;
                }
            }
        }
        for v in f.vertices() {
            let v = v as usize;
            self.degree[v] -= 1;
            if self.degree[v] == 0 {
                self.used -= 1;
            }
            let popped = self.stars[v].pop();
            debug_assert_eq!(popped, Some(f));
        }
        Ok(f)
    }

    /// Recomputes every incidence table from the facet list and compares.
    pub fn recount_matches(&self) -> bool {
        let Ok(mut fresh) = Self::new(self.dim, self.n_target) else {
            return false;
        };
        for &f in &self.facets {
            if fresh.check_facet(f).is_err() {
                return false;
            }
            fresh.push_unchecked(f);
        }
        fresh == *self
    }

    /// The link of `v`: a graph for surfaces, a 2-complex for 3-manifolds.
    pub fn link_of_vertex(&self, v: Vertex) -> Link {
        link_in(self.dim, self.star(v), v)
    }

    pub fn is_strongly_connected(&self) -> bool {
        is_strongly_connected(&self.facets)
    }
}

/// The link of a vertex: the faces opposite it in its incident facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    /// Dimension of the link (1 for surfaces, 2 for 3-manifolds).
    pub dim: usize,
    /// Sorted faces of the link.
    pub faces: Vec<Simplex>,
}

impl Link {
    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.faces.iter().flat_map(|f| f.vertices()).collect()
    }
}

/// Link of `v` within the facets in `star` (facets not containing `v` are
/// ignored).
pub fn link_in(dim: usize, star: &[Facet], v: Vertex) -> Link {
    let mut faces: Vec<Simplex> = star.iter().filter_map(|f| f.without(v)).collect();
    faces.sort_unstable();
    Link { dim: dim - 1, faces }
}

/// Whether a link is a circle (dimension 1) or a 2-sphere (dimension 2).
pub fn link_is_sphere(link: &Link) -> bool {
    match link.dim {
        1 => is_cycle(&link.faces),
        2 => is_two_sphere(&link.faces),
        _ => false,
    }
}

/// A non-empty graph that is a single cycle through all of its vertices.
pub fn is_cycle(edges: &[Simplex]) -> bool {
    if edges.len() < 3 {
        return false;
    }
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for e in edges {
        if e.len() != 2 {
            return false;
        }
        adj.entry(e.get(0)).or_default().push(e.get(1));
        adj.entry(e.get(1)).or_default().push(e.get(0));
    }
    if adj.values().any(|n| n.len() != 2) {
        return false;
    }
    // walk the cycle from the smallest vertex and count its length
    let start = *adj.keys().next().unwrap();
    let (mut prev, mut cur) = (start, adj[&start][0]);
    let mut steps = 1;
    while cur != start {
        let nb = &adj[&cur];
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
        steps += 1;
        if steps > edges.len() {
            return false;
        }
    }
    steps == edges.len()
}

/// A connected closed surface with Euler characteristic 2 whose vertex links
/// are circles.
pub fn is_two_sphere(triangles: &[Simplex]) -> bool {
    is_closed_surface(triangles) && surface_euler(triangles) == 2 && is_strongly_connected(triangles)
}

/// Every edge lies in exactly two triangles and every vertex link is a single
/// cycle.
pub fn is_closed_surface(triangles: &[Simplex]) -> bool {
    if triangles.is_empty() || triangles.iter().any(|t| t.len() != 3) {
        return false;
    }
    let mut edge_use: BTreeMap<Simplex, u32> = BTreeMap::new();
    let mut vstar: BTreeMap<Vertex, Vec<Simplex>> = BTreeMap::new();
    for &t in triangles {
        for e in t.boundary() {
            *edge_use.entry(e).or_default() += 1;
        }
        for v in t.vertices() {
            vstar.entry(v).or_default().push(t);
        }
    }
    edge_use.values().all(|&c| c == 2)
        && vstar.iter().all(|(&v, s)| is_cycle(&link_in(2, s, v).faces))
}

fn surface_euler(triangles: &[Simplex]) -> i64 {
    let mut verts = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for &t in triangles {
        verts.extend(t.vertices());
        edges.extend(t.boundary());
    }
    verts.len() as i64 - edges.len() as i64 + triangles.len() as i64
}

/// Connectivity of the dual graph (facets adjacent when sharing a ridge).
pub fn is_strongly_connected(facets: &[Facet]) -> bool {
    if facets.is_empty() {
        return true;
    }
    let mut by_ridge: BTreeMap<Ridge, Vec<usize>> = BTreeMap::new();
    for (i, f) in facets.iter().enumerate() {
        for r in f.boundary() {
            by_ridge.entry(r).or_default().push(i);
        }
    }
    let mut seen = vec![false; facets.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for r in facets[i].boundary() {
            for &j in &by_ridge[&r] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
    }
    count == facets.len()
}

/// Vertex connectivity of the 1-skeleton.
pub fn is_connected(facets: &[Facet]) -> bool {
    let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    fn find(p: &mut BTreeMap<Vertex, Vertex>, v: Vertex) -> Vertex {
        let mut root = v;
        while p[&root] != root {
            root = p[&root];
        }
        let mut cur = v;
        while p[&cur] != root {
            let next = p[&cur];
            p.insert(cur, root);
            cur = next;
        }
        root
    }
    for f in facets {
        for v in f.vertices() {
            parent.entry(v).or_insert(v);
        }
        let a = find(&mut parent, f.first());
        for v in f.vertices().skip(1) {
            let b = find(&mut parent, v);
            parent.insert(b, a);
        }
    }
    let verts: Vec<Vertex> = parent.keys().copied().collect();
    let mut roots = BTreeSet::new();
    for v in verts {
        roots.insert(find(&mut parent, v));
    }
    roots.len() <= 1
}

/// A completed, verified combinatorial manifold on the labels `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangulation {
    dim: usize,
    facets: Vec<Facet>,
}

impl Triangulation {
    /// Validates closure, vertex links, and contiguous labels.
    pub fn new(dim: usize, mut facets: Vec<Facet>) -> Result<Self, ComplexError> {
        if dim != 2 && dim != 3 {
            return Err(ComplexError::UnsupportedDimension(dim));
        }
        facets.sort_unstable();
        if facets.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateFacet);
        }
        if facets.iter().any(|f| f.len() != dim + 1) {
            return Err(ComplexError::WrongFacetSize { dim });
        }
        let verts: BTreeSet<Vertex> = facets.iter().flat_map(|f| f.vertices()).collect();
        let n = verts.len();
        if n == 0 || verts.iter().copied().ne(1..=n as Vertex) {
            return Err(ComplexError::NonContiguousLabels);
        }
        let mut ridge_use: BTreeMap<Ridge, u32> = BTreeMap::new();
        for f in &facets {
            for r in f.boundary() {
                *ridge_use.entry(r).or_default() += 1;
            }
        }
        if let Some((&r, _)) = ridge_use.iter().find(|(_, &c)| c != 2) {
            return Err(ComplexError::NotClosed(r));
        }
        let mut stars: BTreeMap<Vertex, Vec<Facet>> = BTreeMap::new();
        for &f in &facets {
            for v in f.vertices() {
                stars.entry(v).or_default().push(f);
            }
        }
        for (&v, star) in &stars {
            if !link_is_sphere(&link_in(dim, star, v)) {
                return Err(ComplexError::LinkNotSphere(v));
            }
        }
        if !is_connected(&facets) {
            return Err(ComplexError::Disconnected);
        }
        Ok(Triangulation { dim, facets })
    }

    /// Wraps a facet list the caller has already verified.
    pub(crate) fn from_verified(dim: usize, facets: Vec<Facet>) -> Self {
        Triangulation { dim, facets }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Number of vertices (`f0`).
    pub fn n(&self) -> usize {
        self.facets
            .iter()
            .flat_map(|f| f.vertices())
            .max()
            .unwrap_or(0) as usize
    }

    /// Face counts `(f0, f1, ..., f_dim)`.
    pub fn f_vector(&self) -> Vec<u64> {
        face_counts(&self.facets, self.dim)
    }

    /// Number of facets through each vertex, indexed by label (index 0 unused).
    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n() + 1];
        for f in &self.facets {
            for v in f.vertices() {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    /// Number of distinct neighbours of each vertex (index 0 unused).
    pub fn vertex_degrees(&self) -> Vec<u32> {
        let n = self.n();
        let mut nb = vec![BTreeSet::new(); n + 1];
        for f in &self.facets {
            for a in f.vertices() {
                for b in f.vertices() {
                    if a != b {
                        nb[a as usize].insert(b);
                    }
                }
            }
        }
        nb.iter().map(|s| s.len() as u32).collect()
    }
}

/// All faces of dimension `k` of the given facets, sorted and deduplicated.
pub fn faces_of_dim(facets: &[Facet], k: usize) -> Vec<Simplex> {
    let mut out = BTreeSet::new();
    for f in facets {
        let (b, len) = f.labels();
        let size = k + 1;
        if size > len {
            continue;
        }
        // enumerate size-subsets of the facet's labels by bitmask
        for mask in 0u32..(1 << len) {
            if mask.count_ones() as usize == size {
                let sub: Vec<Vertex> = (0..len).filter(|i| mask & (1 << i) != 0).map(|i| b[i]).collect();
                out.insert(Simplex::from_sorted(&sub));
            }
        }
    }
    out.into_iter().collect()
}

pub fn face_counts(facets: &[Facet], dim: usize) -> Vec<u64> {
    (0..=dim).map(|k| faces_of_dim(facets, k).len() as u64).collect()
}
