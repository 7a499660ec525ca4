//! Topological invariants of closed triangulations.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;

use crate::complex::{face_counts, faces_of_dim, is_connected, Triangulation};
use crate::error::TopologyError;
use crate::facet::{Facet, Simplex};
use crate::snf::smith_normal_form;

/// Largest vertex count for which homology and orientability determine the
/// type of a 3-manifold.
pub const NAMED_3MANIFOLD_MAX_VERTICES: usize = 11;

/// One integral homology group: `Z^rank` plus cyclic torsion summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup { rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ManifoldName {
    S3,
    S2xS1,
    S2twistS1,
    RP3,
}

impl ManifoldName {
    pub fn as_str(self) -> &'static str {
        match self {
            ManifoldName::S3 => "S3",
            ManifoldName::S2xS1 => "S2xS1",
            ManifoldName::S2twistS1 => "S2twistS1",
            ManifoldName::RP3 => "RP3",
        }
    }
}

impl fmt::Display for ManifoldName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ManifoldName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [ManifoldName::S3, ManifoldName::S2xS1, ManifoldName::S2twistS1, ManifoldName::RP3]
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown manifold name {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologicalType {
    pub dim: usize,
    pub euler: i64,
    pub orientable: bool,
    /// Surfaces only.
    pub genus: Option<u64>,
    /// `H_0, ..., H_dim`.
    pub homology: Vec<HomologyGroup>,
    /// 3-manifolds on at most eleven vertices only.
    pub name: Option<ManifoldName>,
}

/// Alternating sum of the face counts.
pub fn euler_characteristic(t: &Triangulation) -> i64 {
    t.f_vector()
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// Whether the facets admit a coherent orientation. Propagates signs over
/// the dual graph; a facet `v0 < ... < vd` with sign `s` induces sign
/// `s * (-1)^i` on the ridge without `vi`, and neighbours must induce
/// opposite signs.
pub fn is_orientable_facets(facets: &[Facet]) -> bool {
    let mut by_ridge: HashMap<Simplex, Vec<(usize, usize)>> = HashMap::new();
    for (idx, f) in facets.iter().enumerate() {
        for i in 0..f.len() {
            by_ridge.entry(f.without_index(i)).or_default().push((idx, i));
        }
    }
    let mut sign = vec![0i8; facets.len()];
    for start in 0..facets.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(idx) = queue.pop_front() {
            let f = facets[idx];
            for i in 0..f.len() {
                let induced = sign[idx] * if i % 2 == 0 { 1 } else { -1 };
                for &(other, j) in &by_ridge[&f.without_index(i)] {
                    if other == idx {
                        continue;
                    }
                    let want = -induced * if j % 2 == 0 { 1 } else { -1 };
                    match sign[other] {
                        0 => {
                            sign[other] = want;
                            queue.push_back(other);
                        }
                        s if s != want => return false,
                        _ => {}
                    }
                }
            }
        }
    }
    true
}

pub fn is_orientable(t: &Triangulation) -> bool {
    is_orientable_facets(t.facets())
}

/// Handles (orientable) or crosscaps (non-orientable) of a surface.
pub fn genus(t: &Triangulation) -> Result<u64, TopologyError> {
    if t.dim() != 2 {
        return Err(TopologyError::NotASurface);
    }
    if !is_connected(t.facets()) {
        return Err(TopologyError::Disconnected);
    }
    let chi = euler_characteristic(t);
    Ok(if is_orientable(t) { ((2 - chi) / 2) as u64 } else { (2 - chi) as u64 })
}

/// Dense matrix of the boundary map from `k`-faces to `(k-1)`-faces, with
/// rows indexed by `lower` and columns by `upper`.
fn boundary_matrix(upper: &[Simplex], lower: &[Simplex]) -> Vec<i64> {
    let index: HashMap<Simplex, usize> = lower.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let cols = upper.len();
    let mut m = vec![0i64; lower.len() * cols];
    for (c, s) in upper.iter().enumerate() {
        for i in 0..s.len() {
            let r = index[&s.without_index(i)];
            m[r * cols + c] = if i % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Integral simplicial homology `H_0, ..., H_dim` of a facet list.
pub fn homology_of(dim: usize, facets: &[Facet]) -> Vec<HomologyGroup> {
    let faces: Vec<Vec<Simplex>> = (0..=dim).map(|k| faces_of_dim(facets, k)).collect();
    // ranks and torsion of the boundary maps d_k : C_k -> C_{k-1}, k = 1..dim
    let mut rank = vec![0usize; dim + 2];
    let mut torsion: Vec<Vec<BigInt>> = vec![Vec::new(); dim + 2];
    for k in 1..=dim {
        let m = boundary_matrix(&faces[k], &faces[k - 1]);
        let snf = smith_normal_form(faces[k - 1].len(), faces[k].len(), &m);
        rank[k] = snf.rank();
        torsion[k] = snf.torsion();
    }
    (0..=dim)
        .map(|k| HomologyGroup {
            rank: faces[k].len() - rank[k] - rank[k + 1],
            torsion: torsion[k + 1].clone(),
        })
        .collect()
}

pub fn homology(t: &Triangulation) -> Vec<HomologyGroup> {
    homology_of(t.dim(), t.facets())
}

/// `H_1` alone: cheaper than the full homology for 3-manifolds.
pub fn first_homology(t: &Triangulation) -> HomologyGroup {
    let facets = t.facets();
    let vertices = faces_of_dim(facets, 0);
    let edges = faces_of_dim(facets, 1);
    let triangles = faces_of_dim(facets, 2);
    let d1 = boundary_matrix(&edges, &vertices);
    let d2 = boundary_matrix(&triangles, &edges);
    let r1 = smith_normal_form(vertices.len(), edges.len(), &d1).rank();
    let s2 = smith_normal_form(edges.len(), triangles.len(), &d2);
    HomologyGroup { rank: edges.len() - r1 - s2.rank(), torsion: s2.torsion() }
}

/// Names a closed 3-manifold on at most eleven vertices from its
/// orientability and first homology.
pub fn name_from_profile(orientable: bool, h1: &HomologyGroup) -> Result<ManifoldName, TopologyError> {
    let two = BigInt::from(2);
    match (orientable, h1.rank, h1.torsion.as_slice()) {
        (true, 0, []) => Ok(ManifoldName::S3),
        (true, 1, []) => Ok(ManifoldName::S2xS1),
        (false, 1, []) => Ok(ManifoldName::S2twistS1),
        (true, 0, [t]) if *t == two => Ok(ManifoldName::RP3),
        _ => Err(TopologyError::UnexpectedProfile {
            orientable,
            rank: h1.rank,
            torsion: h1.torsion.iter().map(|t| t.to_string()).collect(),
        }),
    }
}

pub fn classify_surface(t: &Triangulation) -> Result<TopologicalType, TopologyError> {
    let g = genus(t)?;
    Ok(TopologicalType {
        dim: 2,
        euler: euler_characteristic(t),
        orientable: is_orientable(t),
        genus: Some(g),
        homology: homology(t),
        name: None,
    })
}

pub fn classify_3manifold(t: &Triangulation) -> Result<TopologicalType, TopologyError> {
    if t.dim() != 3 || t.n() > NAMED_3MANIFOLD_MAX_VERTICES {
        return Err(TopologyError::OutOfRange { dim: t.dim(), n: t.n() });
    }
    if !is_connected(t.facets()) {
        return Err(TopologyError::Disconnected);
    }
    let orientable = is_orientable(t);
    let homology = homology(t);
    let name = name_from_profile(orientable, &homology[1])?;
    Ok(TopologicalType { dim: 3, euler: euler_characteristic(t), orientable, genus: None, homology, name: Some(name) })
}

/// Surface classification, or 3-manifold naming where it applies.
pub fn classify(t: &Triangulation) -> Result<TopologicalType, TopologyError> {
    match t.dim() {
        2 => classify_surface(t),
        _ => classify_3manifold(t),
    }
}

/// Cheap classification key for census tables: surfaces use Euler
/// characteristic and orientability, 3-manifolds orientability and `H_1`.
pub fn census_key(t: &Triangulation) -> Result<(bool, String), TopologyError> {
    match t.dim() {
        2 => Ok((is_orientable(t), genus(t)?.to_string())),
        _ => {
            if t.n() > NAMED_3MANIFOLD_MAX_VERTICES {
                return Err(TopologyError::OutOfRange { dim: 3, n: t.n() });
            }
            let orientable = is_orientable(t);
            let name = name_from_profile(orientable, &first_homology(t))?;
            Ok((orientable, name.to_string()))
        }
    }
}

/// f-vector identities every closed triangulation satisfies.
pub fn f_vector_identities_hold(t: &Triangulation) -> bool {
    let f = face_counts(t.facets(), t.dim());
    match t.dim() {
        2 => 3 * f[2] == 2 * f[1],
        3 => f[2] == 2 * f[3] && euler_characteristic(t) == 0,
        _ => false,
    }
}
