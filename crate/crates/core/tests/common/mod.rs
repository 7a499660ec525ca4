//! Fixtures and an independent generate-then-canonicalize census used by
//! the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use lextri_core::{Facet, Simplex, Triangulation};

pub type Raw = Vec<Vec<u8>>;

pub fn to_facets(raw: &[Vec<u8>]) -> Vec<Facet> {
    raw.iter().map(|f| Simplex::new(f).expect("valid facet")).collect()
}

pub fn from_facets(facets: &[Facet]) -> Raw {
    facets.iter().map(|f| f.vertices().collect()).collect()
}

pub fn tri(dim: usize, raw: &[Vec<u8>]) -> Triangulation {
    Triangulation::new(dim, to_facets(raw)).expect("fixture is a closed manifold")
}

fn rows<const N: usize>(r: &[[u8; N]]) -> Raw {
    r.iter().map(|f| f.to_vec()).collect()
}

pub fn tetrahedron_boundary() -> Triangulation {
    tri(2, &rows(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]))
}

pub fn octahedron() -> Triangulation {
    tri(2, &rows(&[[1, 2, 3], [1, 2, 4], [1, 3, 5], [1, 4, 5], [2, 3, 6], [2, 4, 6], [3, 5, 6], [4, 5, 6]]))
}

/// The 6-vertex real projective plane (hemi-icosahedron).
pub fn rp2_6() -> Triangulation {
    tri(
        2,
        &rows(&[
            [1, 2, 3],
            [1, 2, 4],
            [1, 3, 5],
            [1, 4, 6],
            [1, 5, 6],
            [2, 3, 6],
            [2, 4, 5],
            [2, 5, 6],
            [3, 4, 5],
            [3, 4, 6],
        ]),
    )
}

/// The 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus_7() -> Triangulation {
    let mut raw = Vec::new();
    for i in 0..7u8 {
        for d in [[0, 1, 3], [0, 2, 3]] {
            let mut f: Vec<u8> = d.iter().map(|&x| (i + x) % 7 + 1).collect();
            f.sort_unstable();
            raw.push(f);
        }
    }
    tri(2, &raw)
}

/// Boundary of the 4-simplex.
pub fn boundary_4simplex() -> Triangulation {
    let raw = (1..=5u8).map(|skip| (1..=5u8).filter(|&v| v != skip).collect()).collect::<Raw>();
    tri(3, &raw)
}

/// Barycentric subdivision of the boundary of the 4-cube modulo the
/// antipodal map: a 40-vertex RP3.
pub fn rp3_40() -> Triangulation {
    // faces as sign vectors in {-1,0,1}^4, 0 marking a free coordinate
    let mut faces = Vec::new();
    for code in 0..81u32 {
        let mut c = code;
        let mut v = [0i8; 4];
        for x in v.iter_mut() {
            *x = (c % 3) as i8 - 1;
            c /= 3;
        }
        if v.iter().any(|&x| x != 0) {
            faces.push(v);
        }
    }
    let canon = |v: [i8; 4]| {
        let first = v.iter().find(|&&x| x != 0).copied().unwrap();
        if first > 0 {
            v
        } else {
            v.map(|x| -x)
        }
    };
    let classes: BTreeSet<[i8; 4]> = faces.iter().map(|&v| canon(v)).collect();
    let label: BTreeMap<[i8; 4], u8> = classes.iter().enumerate().map(|(i, &v)| (v, i as u8 + 1)).collect();
    let dim = |v: &[i8; 4]| v.iter().filter(|&&x| x == 0).count();
    let contains = |big: &[i8; 4], small: &[i8; 4]| (0..4).all(|i| big[i] == 0 || big[i] == small[i]);
    let mut facets = BTreeSet::new();
    for c in faces.iter().filter(|v| dim(v) == 3) {
        for s in faces.iter().filter(|v| dim(v) == 2 && contains(c, v)) {
            for e in faces.iter().filter(|v| dim(v) == 1 && contains(s, v)) {
                for p in faces.iter().filter(|v| dim(v) == 0 && contains(e, v)) {
                    let mut f: Vec<u8> = [p, e, s, c].iter().map(|v| label[&canon(**v)]).collect();
                    f.sort_unstable();
                    facets.insert(f);
                }
            }
        }
    }
    tri(3, &facets.into_iter().collect::<Raw>())
}

/// Staircase product of the tetrahedron boundary with a triangle: a
/// 12-vertex S2 x S1.
pub fn s2xs1_12() -> Triangulation {
    let lab = |a: u8, i: u8| (a - 1) * 3 + i + 1;
    let mut raw = Vec::new();
    for skip in 1..=4u8 {
        let t: Vec<u8> = (1..=4).filter(|&x| x != skip).collect();
        let (a, b, c) = (t[0], t[1], t[2]);
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            for chain in [
                [(a, i), (b, i), (c, i), (c, j)],
                [(a, i), (b, i), (b, j), (c, j)],
                [(a, i), (a, j), (b, j), (c, j)],
            ] {
                let mut f: Vec<u8> = chain.iter().map(|&(x, y)| lab(x, y)).collect();
                f.sort_unstable();
                raw.push(f);
            }
        }
    }
    tri(3, &raw)
}

/// Lexicographically smallest relabeling over all `n!` permutations.
pub fn brute_force_lexmin(raw: &[Vec<u8>]) -> Raw {
    let n = raw.iter().flatten().copied().max().unwrap_or(0) as usize;
    let mut perm: Vec<u8> = (1..=n as u8).collect();
    let apply = |perm: &[u8]| {
        let mut out: Raw = raw
            .iter()
            .map(|f| {
                let mut g: Vec<u8> = f.iter().map(|&v| perm[v as usize - 1]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        out.sort_unstable();
        out
    };
    let mut best = apply(&perm);
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let cand = apply(&perm);
            if cand < best {
                best = cand;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// Isomorphism invariant by breadth-first relabeling from every ordered
/// facet; complete, since each candidate is a relabeling of the input.
pub fn flag_canon(raw: &[Vec<u8>]) -> Raw {
    let mut by_ridge: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
    for (i, f) in raw.iter().enumerate() {
        for skip in 0..f.len() {
            let r: Vec<u8> = f.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
            by_ridge.entry(r).or_default().push(i);
        }
    }
    let n = raw.iter().flatten().copied().max().unwrap_or(0) as usize;
    let mut best: Option<Raw> = None;
    for start in 0..raw.len() {
        for order in permutations(&raw[start]) {
            let mut label = vec![0u8; n + 1];
            let mut next = 1u8;
            for &v in &order {
                label[v as usize] = next;
                next += 1;
            }
            let mut seen = vec![false; raw.len()];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(fi) = queue.pop_front() {
                let f = &raw[fi];
                let mut verts = f.clone();
                verts.sort_by_key(|&v| label[v as usize]);
                for u in verts {
                    let r: Vec<u8> = f.iter().copied().filter(|&v| v != u).collect();
                    for &g in &by_ridge[&r] {
                        if g == fi {
                            continue;
                        }
                        for &w in &raw[g] {
                            if label[w as usize] == 0 {
                                label[w as usize] = next;
                                next += 1;
                            }
                        }
                        if !seen[g] {
                            seen[g] = true;
                            queue.push_back(g);
                        }
                    }
                }
            }
            let mut out: Raw = raw
                .iter()
                .map(|f| {
                    let mut g: Vec<u8> = f.iter().map(|&v| label[v as usize]).collect();
                    g.sort_unstable();
                    g
                })
                .collect();
            out.sort_unstable();
            if best.as_ref().is_none_or(|b| out < *b) {
                best = Some(out);
            }
        }
    }
    best.unwrap_or_default()
}

fn permutations(v: &[u8]) -> Vec<Vec<u8>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// The link graph of `sigma` (a codimension-two face) must stay a disjoint
/// union of paths or become one single cycle.
fn codim2_link_ok(facets: &[Vec<u8>], sigma: &[u8]) -> bool {
    let edges: Vec<(u8, u8)> = facets
        .iter()
        .filter(|f| sigma.iter().all(|v| f.contains(v)))
        .map(|f| {
            let e: Vec<u8> = f.iter().copied().filter(|v| !sigma.contains(v)).collect();
            (e[0], e[1])
        })
        .collect();
    let mut parent: HashMap<u8, u8> = HashMap::new();
    fn find(p: &mut HashMap<u8, u8>, x: u8) -> u8 {
        let y = *p.entry(x).or_insert(x);
        if y == x {
            x
        } else {
            let r = find(p, y);
            p.insert(x, r);
            r
        }
    }
    let mut cycle = false;
    for &(a, b) in &edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            cycle = true;
        } else {
            parent.insert(ra, rb);
        }
    }
    if !cycle {
        return true;
    }
    let verts: Vec<u8> = parent.keys().copied().collect();
    let roots: BTreeSet<u8> = verts.iter().map(|&v| find(&mut parent, v)).collect();
    roots.len() == 1 && edges.len() == verts.len()
}

struct Naive {
    dim: usize,
    n: u8,
    facets: Vec<Vec<u8>>,
    ridges: BTreeMap<Vec<u8>, u8>,
    found: HashMap<Raw, Raw>,
}

impl Naive {
    fn ridges_of(f: &[u8]) -> Vec<Vec<u8>> {
        (0..f.len()).map(|s| f.iter().enumerate().filter(|&(j, _)| j != s).map(|(_, &v)| v).collect()).collect()
    }

    fn push(&mut self, f: Vec<u8>) {
        for r in Self::ridges_of(&f) {
            *self.ridges.entry(r).or_default() += 1;
        }
        self.facets.push(f);
    }

    fn pop(&mut self) {
        let f = self.facets.pop().unwrap();
        for r in Self::ridges_of(&f) {
            let c = self.ridges.get_mut(&r).unwrap();
            *c -= 1;
            if *c == 0 {
                self.ridges.remove(&r);
            }
        }
    }

    fn search(&mut self) {
        let open = self.ridges.iter().find(|&(_, &c)| c == 1).map(|(r, _)| r.clone());
        let Some(ridge) = open else {
            let used: BTreeSet<u8> = self.facets.iter().flatten().copied().collect();
            if used.len() == self.n as usize && Triangulation::new(self.dim, to_facets(&self.facets)).is_ok() {
                let key = flag_canon(&self.facets);
                self.found.entry(key).or_insert_with(|| self.facets.clone());
            }
            return;
        };
        for x in 1..=self.n {
            if ridge.contains(&x) {
                continue;
            }
            let mut f = ridge.clone();
            f.push(x);
            f.sort_unstable();
            if self.facets.contains(&f) || Self::ridges_of(&f).iter().any(|r| self.ridges.get(r).copied().unwrap_or(0) >= 2) {
                continue;
            }
            self.push(f.clone());
            let ok = (0..f.len()).all(|a| {
                (a + 1..f.len()).all(|b| {
                    let sigma: Vec<u8> = f.iter().enumerate().filter(|&(j, _)| j != a && j != b).map(|(_, &v)| v).collect();
                    codim2_link_ok(&self.facets, &sigma)
                })
            });
            if ok {
                self.search();
            }
            self.pop();
        }
    }
}

/// Every combinatorial surface (`dim` 2) or 3-manifold (`dim` 3) on exactly
/// `n` vertices, as lexicographically minimal facet lists. Vertex 1 is
/// given a fixed star, the rest is completed ridge by ridge and duplicates
/// are removed by an isomorphism invariant.
pub fn naive_census(dim: usize, n: u8) -> BTreeSet<Raw> {
    let mut stars: Vec<Raw> = Vec::new();
    for d in (dim as u8 + 1)..n {
        if dim == 2 {
            let cyc: Vec<u8> = (2..=d + 1).collect();
            stars.push((0..cyc.len()).map(|i| {
                let mut f = vec![1, cyc[i], cyc[(i + 1) % cyc.len()]];
                f.sort_unstable();
                f
            }).collect());
        } else {
            for sphere in naive_census(2, d) {
                if sphere.len() != 2 * d as usize - 4 {
                    continue;
                }
                stars.push(sphere.iter().map(|t| std::iter::once(1).chain(t.iter().map(|v| v + 1)).collect()).collect());
            }
        }
    }
    let mut found = HashMap::new();
    for star in stars {
        let mut s = Naive { dim, n, facets: Vec::new(), ridges: BTreeMap::new(), found: HashMap::new() };
        for f in star {
            s.push(f);
        }
        s.search();
        found.extend(s.found);
    }
    found.into_values().map(|rep| brute_force_lexmin(&rep)).collect()
}
