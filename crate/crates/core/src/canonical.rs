//! Lexicographically minimal relabelings.
//!
//! The sorted facet list of a relabeled complex splits into blocks: block `i`
//! holds the facets whose smallest new label is `i`. Once labels `1..=i` are
//! fixed, block `i` consists of exactly the facets through the vertex labeled
//! `i` that avoid smaller labels, and every still-unlabeled vertex will
//! receive a label larger than all labels in use. That makes block-by-block
//! minimization exact: within a block we repeatedly look at the facets with
//! the smallest partial key (known labels sorted, unknowns as +inf) and hand
//! the next free label to one of their unlabeled vertices, branching only
//! when several vertices tie.
//!
//! The same search serves two purposes: deciding whether some relabeling of
//! a (partial) complex is lex-smaller than the complex itself, which prunes
//! the enumeration, and computing the canonical form of a closed manifold.

use std::cmp::Ordering;

use crate::complex::{link_in, PartialComplex, Triangulation, VertexState};
use crate::error::CanonicalError;
use crate::facet::{Facet, Simplex, Vertex};

const UNKNOWN: u8 = 0xFF;

/// A bijection on the used labels, stored as `new_label[old_label]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    new_label: Vec<Vertex>,
}

impl Relabeling {
    /// `new_label[0]` is ignored; `new_label[1..]` must be a permutation of
    /// `1..=m`.
    pub fn new(mut new_label: Vec<Vertex>) -> Result<Self, CanonicalError> {
        if new_label.is_empty() {
            return Err(CanonicalError::NotBijective);
        }
        new_label[0] = 0;
        let m = new_label.len() - 1;
        let mut seen = vec![false; m + 1];
        for &l in &new_label[1..] {
            let l = l as usize;
            if l == 0 || l > m || seen[l] {
                return Err(CanonicalError::NotBijective);
            }
            seen[l] = true;
        }
        Ok(Relabeling { new_label })
    }

    pub fn identity(m: usize) -> Self {
        Relabeling { new_label: (0..=m).map(|v| v as Vertex).collect() }
    }

    /// Builds the relabeling that swaps labels pairwise along `pairs`.
    pub fn from_swaps(m: usize, pairs: &[(Vertex, Vertex)]) -> Result<Self, CanonicalError> {
        let mut r = Self::identity(m);
        for &(a, b) in pairs {
            if a as usize > m || b as usize > m || a == 0 || b == 0 {
                return Err(CanonicalError::NotBijective);
            }
            r.new_label.swap(a as usize, b as usize);
        }
        Ok(r)
    }

    pub fn size(&self) -> usize {
        self.new_label.len() - 1
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.new_label[v as usize]
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.new_label
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.new_label.len()];
        for (old, &new) in self.new_label.iter().enumerate().skip(1) {
            inv[new as usize] = old as Vertex;
        }
        Relabeling { new_label: inv }
    }
}

/// Relabels every facet and returns the sorted list.
pub fn apply_relabeling(facets: &[Facet], r: &Relabeling) -> Result<Vec<Facet>, CanonicalError> {
    let mut out = facets
        .iter()
        .map(|f| f.map(r.as_slice()).filter(|g| g.vertices().all(|v| v != 0)))
        .collect::<Option<Vec<_>>>()
        .ok_or(CanonicalError::NotBijective)?;
    out.sort_unstable();
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Stop at the first relabeling that beats the target.
    Detect,
    /// On beating the target, complete the labeling and record it.
    Improve,
    /// Record every complete labeling that reproduces the target.
    Collect,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flow {
    Found,
    NotFound,
}

/// Reusable buffers for the relabeling search.
#[derive(Default)]
pub(crate) struct Scratch {
    label: Vec<Vertex>,
    inv: Vec<Vertex>,
    keys: Vec<(u32, Facet)>,
    pool: Vec<Vec<Vertex>>,
}

impl Scratch {
    fn reset(&mut self, size: usize) {
        self.label.clear();
        self.label.resize(size, 0);
        self.inv.clear();
        self.inv.resize(size + 1, 0);
        if self.pool.len() < size + 2 {
            self.pool.resize_with(size + 2, Vec::new);
        }
    }
}

struct Search<'a> {
    target: &'a [Facet],
    stars: &'a [Vec<Facet>],
    s: &'a mut Scratch,
    width: usize,
    next: usize,
    mode: Mode,
    found: Option<Vec<Vertex>>,
    /// Per vertex: label orders of its link that realize the canonical link.
    orders: &'a [Vec<Vec<Vertex>>],
    collected: Vec<Vec<Vertex>>,
}

#[inline]
fn sort_small(k: &mut [u8; 4], w: usize) {
    for a in 1..w {
        let x = k[a];
        let mut b = a;
        while b > 0 && k[b - 1] > x {
            k[b] = k[b - 1];
            b -= 1;
        }
        k[b] = x;
    }
}

impl<'a> Search<'a> {
    fn new(target: &'a [Facet], stars: &'a [Vec<Facet>], s: &'a mut Scratch, mode: Mode) -> Self {
        s.reset(stars.len());
        let width = target.first().map_or(3, |f| f.len());
        Search { target, stars, s, width, next: 1, mode, found: None, orders: &[], collected: Vec::new() }
    }

    #[inline]
    fn incomplete(&self, key: u32) -> bool {
        (key >> (32 - 8 * self.width)) as u8 == UNKNOWN
    }

    #[inline]
    fn assign(&mut self, v: Vertex) {
        self.s.label[v as usize] = self.next as Vertex;
        self.s.inv[self.next] = v;
        self.next += 1;
    }

    #[inline]
    fn unassign(&mut self, v: Vertex) {
        self.next -= 1;
        self.s.label[v as usize] = 0;
        self.s.inv[self.next] = 0;
    }

    fn run_seed(&mut self, seed: Vertex) -> Flow {
        self.assign(seed);
        let orders = self.orders;
        let flow = match orders.get(seed as usize).filter(|o| !o.is_empty()) {
            Some(list) => self.run_orders(list),
            None => match self.link_cycle(seed) {
                Some(cycle) => self.run_cycle(&cycle),
                None => self.block(1, 0, 0),
            },
        };
        self.unassign(seed);
        flow
    }

    fn run_orders(&mut self, list: &[Vec<Vertex>]) -> Flow {
        for order in list {
            for &u in order {
                self.assign(u);
            }
            let flow = self.block(1, 0, 0);
            for &u in order.iter().rev() {
                self.unassign(u);
            }
            if flow == Flow::Found {
                return flow;
            }
        }
        Flow::NotFound
    }

    /// The link of `v` as a cyclic vertex sequence, when it is a single
    /// cycle (surfaces only).
    fn link_cycle(&self, v: Vertex) -> Option<Vec<Vertex>> {
        if self.width != 3 {
            return None;
        }
        let star = &self.stars[v as usize];
        let mut nb: Vec<(Vertex, [Vertex; 2], u8)> = Vec::with_capacity(star.len());
        for f in star {
            let e = f.without(v)?;
            for (a, b) in [(e.get(0), e.get(1)), (e.get(1), e.get(0))] {
                match nb.iter_mut().find(|x| x.0 == a) {
                    Some(x) if x.2 < 2 => {
                        x.1[x.2 as usize] = b;
                        x.2 += 1;
                    }
                    Some(_) => return None,
                    None => nb.push((a, [b, 0], 1)),
                }
            }
        }
        if nb.len() != star.len() || nb.iter().any(|x| x.2 != 2) {
            return None;
        }
        let mut cycle = Vec::with_capacity(nb.len());
        let (mut prev, mut cur) = (nb[0].1[0], nb[0].0);
        for _ in 0..nb.len() {
            cycle.push(cur);
            let x = nb.iter().find(|x| x.0 == cur)?;
            let nxt = if x.1[0] == prev { x.1[1] } else { x.1[0] };
            prev = cur;
            cur = nxt;
        }
        (cur == cycle[0]).then_some(cycle)
    }

    /// Tries every rotation and reflection of the seed's link cycle as the
    /// lex-minimal star pattern `123, 124, 135, 146, ...`.
    fn run_cycle(&mut self, cycle: &[Vertex]) -> Flow {
        let d = cycle.len();
        for start in 0..d {
            for dir in [1, d - 1] {
                let at = |k: usize| cycle[(start + k * dir) % d];
                let mut order = Vec::with_capacity(d);
                order.push(at(0));
                let (mut lo, mut hi) = (1, d - 1);
                while lo <= hi {
                    order.push(at(lo));
                    if lo != hi {
                        order.push(at(hi));
                    }
                    lo += 1;
                    hi -= 1;
                }
                for &u in &order {
                    self.assign(u);
                }
                let flow = self.block(1, 0, 0);
                for &u in order.iter().rev() {
                    self.unassign(u);
                }
                if flow == Flow::Found {
                    return flow;
                }
            }
        }
        Flow::NotFound
    }

    /// Collects the keys of block `i` into `keys`, sorted.
    fn block_keys(&mut self, i: usize) {
        let x = self.s.inv[i] as usize;
        let w = self.width;
        let label = &self.s.label;
        let keys = &mut self.s.keys;
        keys.clear();
        'facets: for &f in &self.stars[x] {
            let b = f.raw().to_be_bytes();
            let mut k = [0u8; 4];
            for j in 0..w {
                let l = label[b[j] as usize];
                if l == 0 {
                    k[j] = UNKNOWN;
                } else if (l as usize) < i {
                    continue 'facets;
                } else {
                    k[j] = l;
                }
            }
            sort_small(&mut k, w);
            let key = u32::from_be_bytes(k);
            // insertion keeps the list sorted; blocks are small
            let mut at = keys.len();
            while at > 0 && keys[at - 1].0 > key {
                at -= 1;
            }
            keys.insert(at, (key, f));
        }
    }

    fn block(&mut self, i: usize, pos: usize, emitted: usize) -> Flow {
        self.block_keys(i);
        // settled facets: complete keys below the smallest incomplete key
        let mut complete_seen = 0;
        let mut pos_now = pos + emitted;
        let mut group_key = None;
        for idx in 0..self.s.keys.len() {
            let k = self.s.keys[idx].0;
            if self.incomplete(k) {
                group_key = Some((k, idx));
                break;
            }
            if complete_seen >= emitted {
                match k.cmp(&self.target[pos_now].raw()) {
                    Ordering::Less => return self.beat(i),
                    Ordering::Greater => return Flow::NotFound,
                    Ordering::Equal => {}
                }
                pos_now += 1;
            }
            complete_seen += 1;
        }
        let Some((gk, start)) = group_key else {
            if i + 1 < self.next {
                return self.block(i + 1, pos + complete_seen, 0);
            }
            // every vertex reachable from the seed is labeled
            if self.mode == Mode::Collect {
                self.collected.push(self.s.inv[1..self.next].to_vec());
            }
            return Flow::NotFound;
        };
        let mut cands = std::mem::take(&mut self.s.pool[self.next]);
        cands.clear();
        for &(k, f) in &self.s.keys[start..] {
            if k != gk {
                break;
            }
            let b = f.raw().to_be_bytes();
            for &y in &b[..self.width] {
                if self.s.label[y as usize] == 0 && !cands.contains(&y) {
                    cands.push(y);
                }
            }
        }
        let mut flow = Flow::NotFound;
        for &c in &cands {
            self.assign(c);
            flow = self.block(i, pos, complete_seen);
            self.unassign(c);
            if flow == Flow::Found {
                break;
            }
        }
        let slot = self.next;
        self.s.pool[slot] = cands;
        flow
    }

    /// Called when the current partial labeling is already lex-smaller than
    /// the target.
    fn beat(&mut self, i: usize) -> Flow {
        if self.mode == Mode::Improve {
            let mut added = Vec::new();
            let mut blk = i;
            loop {
                self.block_keys(blk);
                let pick = self
                    .s
                    .keys
                    .iter()
                    .find(|e| self.incomplete(e.0))
                    .and_then(|e| e.1.vertices().find(|&y| self.s.label[y as usize] == 0));
                match pick {
                    Some(v) => {
                        self.assign(v);
                        added.push(v);
                    }
                    None if blk + 1 < self.next => blk += 1,
                    None => break,
                }
            }
            self.found = Some(self.s.label.clone());
            for v in added.into_iter().rev() {
                self.unassign(v);
            }
        }
        Flow::Found
    }
}

fn build_stars(facets: &[Facet]) -> Vec<Vec<Facet>> {
    let max = facets.iter().flat_map(|f| f.vertices()).max().unwrap_or(0) as usize;
    let mut stars = vec![Vec::new(); max + 1];
    for &f in facets {
        for v in f.vertices() {
            stars[v as usize].push(f);
        }
    }
    stars
}

/// Core prune test: does some seed, relabeled to 1 and extended
/// lex-minimally, beat the complex's own sorted facet list?
pub(crate) fn has_smaller_relabeling(
    facets: &[Facet],
    stars: &[Vec<Facet>],
    seeds: &[Vertex],
    orders: &[Vec<Vec<Vertex>>],
    scratch: &mut Scratch,
) -> bool {
    let mut s = Search::new(facets, stars, scratch, Mode::Detect);
    s.orders = orders;
    seeds.iter().any(|&v| s.run_seed(v) == Flow::Found)
}

/// Ordering key of a closed vertex: the canonical form of its link. For
/// surfaces this is equivalent to comparing degrees.
pub(crate) fn link_class(dim: usize, star: &[Facet], v: Vertex) -> Vec<Facet> {
    let link = link_in(dim, star, v);
    if dim == 2 {
        // a cycle of length d canonicalizes to 1-2, 1-3, 2-4, ...; the length
        // alone orders them
        return link.faces;
    }
    let verts = link.vertices();
    let mut map = vec![0 as Vertex; *verts.iter().max().unwrap_or(&0) as usize + 1];
    for (i, &u) in verts.iter().enumerate() {
        map[u as usize] = (i + 1) as Vertex;
    }
    let compact: Vec<Facet> = link.faces.iter().map(|f| f.map(&map).expect("compact link")).collect();
    canonical_form_unchecked(2, &compact)
}

/// The canonical link of a closed vertex of a 3-manifold together with every
/// ordering of its link vertices that realizes it.
pub(crate) fn link_data(star: &[Facet], v: Vertex) -> (Vec<Facet>, Vec<Vec<Vertex>>) {
    let link = link_in(3, star, v);
    let verts: Vec<Vertex> = link.vertices().into_iter().collect();
    let mut map = vec![0 as Vertex; *verts.last().unwrap_or(&0) as usize + 1];
    for (i, &u) in verts.iter().enumerate() {
        map[u as usize] = (i + 1) as Vertex;
    }
    let mut compact: Vec<Facet> = link.faces.iter().map(|f| f.map(&map).expect("compact link")).collect();
    compact.sort_unstable();
    let class = canonical_form_unchecked(2, &compact);
    let stars = build_stars(&compact);
    let seeds = minimal_seeds(2, &stars);
    let mut scratch = Scratch::default();
    let mut s = Search::new(&class, &stars, &mut scratch, Mode::Collect);
    for &seed in &seeds {
        s.run_seed(seed);
    }
    let orders = s
        .collected
        .iter()
        .map(|o| o.iter().map(|&c| verts[c as usize - 1]).collect())
        .collect();
    (class, orders)
}

/// Compares two link classes. Surfaces compare by degree (fewer is smaller).
pub(crate) fn cmp_link_class(dim: usize, a: &[Facet], b: &[Facet]) -> Ordering {
    if dim == 2 {
        a.len().cmp(&b.len())
    } else {
        a.cmp(b)
    }
}

/// Whether no relabeling of `k` found by the seeded search is lex-smaller.
///
/// Returns `false` immediately when a closed vertex has a smaller star than
/// vertex 1 (a smaller degree for surfaces). Otherwise every closed vertex
/// whose star matches vertex 1's is tried as the new vertex 1.
pub fn partial_is_lex_minimal(k: &PartialComplex) -> bool {
    if k.is_empty() || k.vertex_state(1) != VertexState::Closed {
        return true;
    }
    let dim = k.dim();
    let base = link_class(dim, k.star(1), 1);
    let mut seeds = Vec::new();
    for v in 1..=k.n_target() as Vertex {
        if !k.is_closed_vertex(v) {
            continue;
        }
        let cls = link_class(dim, k.star(v), v);
        match cmp_link_class(dim, &cls, &base) {
            Ordering::Less => return false,
            Ordering::Equal => seeds.push(v),
            Ordering::Greater => {}
        }
    }
    let stars: Vec<Vec<Facet>> = (0..=k.n_target() as Vertex).map(|v| k.star(v).to_vec()).collect();
    !has_smaller_relabeling(k.facets(), &stars, &seeds, &[], &mut Scratch::default())
}

/// Vertices whose link class is minimal: the only candidates for label 1.
fn minimal_seeds(dim: usize, stars: &[Vec<Facet>]) -> Vec<Vertex> {
    let mut best: Option<Vec<Facet>> = None;
    let mut seeds = Vec::new();
    for (v, star) in stars.iter().enumerate().skip(1) {
        if star.is_empty() {
            continue;
        }
        let cls = link_class(dim, star, v as Vertex);
        let ord = best.as_ref().map(|b| cmp_link_class(dim, &cls, b));
        match ord {
            None | Some(Ordering::Less) => {
                best = Some(cls);
                seeds.clear();
                seeds.push(v as Vertex);
            }
            Some(Ordering::Equal) => seeds.push(v as Vertex),
            Some(Ordering::Greater) => {}
        }
    }
    seeds
}

/// Canonical form of a facet list the caller knows to be a closed, connected
/// manifold with labels `1..=n`.
pub(crate) fn canonical_form_unchecked(dim: usize, facets: &[Facet]) -> Vec<Facet> {
    let mut orig: Vec<Facet> = facets.to_vec();
    orig.sort_unstable();
    let stars = build_stars(&orig);
    let seeds = minimal_seeds(dim, &stars);
    let mut current = orig.clone();
    let mut scratch = Scratch::default();
    loop {
        let mut improved = false;
        for &seed in &seeds {
            loop {
                let mut s = Search::new(&current, &stars, &mut scratch, Mode::Improve);
                if s.run_seed(seed) == Flow::NotFound {
                    break;
                }
                let map = s.found.take().expect("labeling recorded");
                let mut next: Vec<Facet> = orig.iter().map(|f| f.map(&map).expect("complete labeling")).collect();
                next.sort_unstable();
                debug_assert!(next < current);
                current = next;
                improved = true;
            }
        }
        if !improved {
            return current;
        }
    }
}

/// The lex-smallest facet list over all relabelings of a closed manifold.
pub fn canonical_form(dim: usize, facets: &[Facet]) -> Result<Vec<Facet>, CanonicalError> {
    let t = Triangulation::new(dim, facets.to_vec())?;
    Ok(canonical_form_unchecked(dim, t.facets()))
}

pub fn is_isomorphic(dim: usize, a: &[Facet], b: &[Facet]) -> Result<bool, CanonicalError> {
    if a.len() != b.len() {
        // still validate both inputs
        canonical_form(dim, a)?;
        canonical_form(dim, b)?;
        return Ok(false);
    }
    Ok(canonical_form(dim, a)? == canonical_form(dim, b)?)
}

/// Brute-force canonical form over all `n!` relabelings. Test oracle only.
#[doc(hidden)]
pub fn brute_force_canonical_form(facets: &[Facet]) -> Vec<Facet> {
    let n = facets.iter().flat_map(|f| f.vertices()).max().unwrap_or(0) as usize;
    let mut perm: Vec<Vertex> = (1..=n as Vertex).collect();
    let mut best: Option<Vec<Facet>> = None;
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut visit = |perm: &[Vertex]| {
        let mut map = vec![0 as Vertex; n + 1];
        for (i, &p) in perm.iter().enumerate() {
            map[i + 1] = p;
        }
        let mut img: Vec<Facet> = facets.iter().map(|f| f.map(&map).unwrap()).collect();
        img.sort_unstable();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
    };
    visit(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best.unwrap_or_default()
}

/// Renders a facet list in the compact trace notation, e.g. `123+124+134`.
pub fn render_plus(facets: &[Simplex]) -> String {
    facets.iter().map(|&f| crate::facet::compact(f)).collect::<Vec<_>>().join("+")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::facet::facets;

    fn octahedron() -> Vec<Facet> {
        facets(&[[1, 2, 3], [1, 2, 4], [1, 3, 5], [1, 4, 5], [2, 3, 6], [2, 4, 6], [3, 5, 6], [4, 5, 6]])
    }

    fn partial(rows: &[[Vertex; 3]]) -> PartialComplex {
        PartialComplex::from_facets(2, 6, &facets(rows)).unwrap()
    }

    #[test]
    fn relabeling_validation() {
        assert!(Relabeling::new(vec![0, 1, 1, 3]).is_err());
        assert!(Relabeling::new(vec![0, 2, 3, 4]).is_err());
        let r = Relabeling::new(vec![0, 3, 1, 2]).unwrap();
        assert_eq!(r.inverse().inverse(), r);
        let tet = facets(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]);
        let bad = Relabeling::identity(3);
        assert_eq!(apply_relabeling(&tet, &bad), Err(CanonicalError::NotBijective));
    }

    #[test]
    fn apply_examples() {
        let tet = facets(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]);
        assert_eq!(apply_relabeling(&tet, &Relabeling::identity(4)).unwrap(), tet);
        let swap = Relabeling::from_swaps(4, &[(1, 2)]).unwrap();
        assert_eq!(apply_relabeling(&tet, &swap).unwrap(), tet);
        // 1<->3 on {123,124,134}: {321,324,134} -> {123,134,234}
        let star = facets(&[[1, 2, 3], [1, 2, 4], [1, 3, 4]]);
        let r = Relabeling::from_swaps(4, &[(1, 3)]).unwrap();
        assert_eq!(apply_relabeling(&star, &r).unwrap(), facets(&[[1, 2, 3], [1, 3, 4], [2, 3, 4]]));
    }

    #[test]
    fn table_one_relabeling_decisions() {
        assert!(!partial_is_lex_minimal(&partial(&[
            [1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 5], [2, 4, 6], [2, 5, 6], [3, 4, 5]
        ])));
        assert!(partial_is_lex_minimal(&partial(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 5], [2, 4, 5]])));
        assert!(!partial_is_lex_minimal(&partial(&[
            [1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 5], [2, 4, 6], [2, 5, 6], [3, 4, 6]
        ])));
    }

    #[test]
    fn canonical_examples() {
        let tet = facets(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]);
        assert_eq!(canonical_form(2, &tet).unwrap(), tet);
        let oct = octahedron();
        let r = Relabeling::new(vec![0, 2, 5, 6, 1, 4, 3]).unwrap();
        let scrambled = apply_relabeling(&oct, &r).unwrap();
        assert_ne!(scrambled, oct);
        assert_eq!(canonical_form(2, &scrambled).unwrap(), oct);
        assert!(canonical_form(2, &facets(&[[1, 2, 3], [1, 2, 4]])).is_err());
    }

    #[test]
    fn matches_brute_force_on_small_surfaces() {
        let rp2 = facets(&[
            [1, 2, 3], [1, 2, 4], [1, 3, 5], [1, 4, 6], [1, 5, 6],
            [2, 3, 6], [2, 4, 5], [2, 5, 6], [3, 4, 5], [3, 4, 6],
        ]);
        for t in [octahedron(), rp2] {
            let r = Relabeling::new(vec![0, 4, 6, 1, 3, 2, 5]).unwrap();
            let s = apply_relabeling(&t, &r).unwrap();
            assert_eq!(canonical_form(2, &s).unwrap(), brute_force_canonical_form(&s));
        }
    }

    #[test]
    fn isomorphism() {
        let tet = facets(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]);
        let r = Relabeling::new(vec![0, 4, 2, 1, 3]).unwrap();
        assert!(is_isomorphic(2, &tet, &apply_relabeling(&tet, &r).unwrap()).unwrap());
        let rp2 = facets(&[
            [1, 2, 3], [1, 2, 4], [1, 3, 5], [1, 4, 6], [1, 5, 6],
            [2, 3, 6], [2, 4, 5], [2, 5, 6], [3, 4, 5], [3, 4, 6],
        ]);
        assert!(!is_isomorphic(2, &octahedron(), &rp2).unwrap());
    }

    #[test]
    fn three_dimensional_canonical_form() {
        let s3 = facets(&[[1, 2, 3, 4], [1, 2, 3, 5], [1, 2, 4, 5], [1, 3, 4, 5], [2, 3, 4, 5]]);
        let r = Relabeling::new(vec![0, 3, 5, 1, 2, 4]).unwrap();
        let s = apply_relabeling(&s3, &r).unwrap();
        assert_eq!(canonical_form(3, &s).unwrap(), s3);
    }
}
