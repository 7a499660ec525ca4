//! Packed simplices.
//!
//! A simplex with at most four vertices is stored in a single `u32`, one byte
//! per label, most significant byte first and zero-padded. Labels are 1-based,
//! so the padding never collides with a real vertex and integer order on the
//! packed word is exactly lexicographic order on the sorted label tuple.

use std::fmt;

/// Vertex label. Labels start at 1.
pub type Vertex = u8;

/// Largest label a packed simplex can hold.
pub const MAX_LABEL: usize = 254;

/// A simplex of up to four vertices, packed so that `Ord` is lexicographic.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Simplex(u32);

/// A maximal face: a triangle (surfaces) or a tetrahedron (3-manifolds).
pub type Facet = Simplex;
/// A codimension-one face: an edge (surfaces) or a triangle (3-manifolds).
pub type Ridge = Simplex;

impl Simplex {
    /// Packs labels that are already strictly increasing.
    ///
    /// Panics in debug builds if the labels are unsorted, zero, or more than
    /// four.
    #[inline]
    pub fn from_sorted(labels: &[Vertex]) -> Self {
        debug_assert!(labels.len() <= 4);
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(labels.iter().all(|&v| v > 0));
        let mut word = 0u32;
        for (i, &v) in labels.iter().enumerate() {
            word |= (v as u32) << (24 - 8 * i);
        }
        Simplex(word)
    }

    /// Sorts the labels and packs them. Returns `None` on duplicates, zero
    /// labels, or more than four labels.
    pub fn new(labels: &[Vertex]) -> Option<Self> {
        if labels.is_empty() || labels.len() > 4 {
            return None;
        }
        let mut buf = [0u8; 4];
        buf[..labels.len()].copy_from_slice(labels);
        let buf = &mut buf[..labels.len()];
        buf.sort_unstable();
        if buf[0] == 0 || buf.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Self::from_sorted(buf))
    }

    #[inline]
    pub fn from_raw(word: u32) -> Self {
        Simplex(word)
    }

    #[inline]
    pub fn raw(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        if self.0 == 0 {
            0
        } else {
            4 - (self.0.trailing_zeros() / 8) as usize
        }
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Label at position `i` (0-based) of the sorted tuple.
    #[inline]
    pub fn get(self, i: usize) -> Vertex {
        (self.0 >> (24 - 8 * i)) as u8
    }

    #[inline]
    pub fn first(self) -> Vertex {
        self.get(0)
    }

    /// The sorted labels in a fixed buffer plus its length.
    #[inline]
    pub fn labels(self) -> ([Vertex; 4], usize) {
        let b = self.0.to_be_bytes();
        (b, self.len())
    }

    pub fn vertices(self) -> impl Iterator<Item = Vertex> {
        let (b, len) = self.labels();
        b.into_iter().take(len)
    }

    #[inline]
    pub fn contains(self, v: Vertex) -> bool {
        let (b, len) = self.labels();
        b[..len].contains(&v)
    }

    /// The face obtained by dropping the vertex at position `i`.
    #[inline]
    pub fn without_index(self, i: usize) -> Simplex {
        let (b, len) = self.labels();
        let mut out = [0u8; 4];
        let mut j = 0;
        for (idx, &v) in b[..len].iter().enumerate() {
            if idx != i {
                out[j] = v;
                j += 1;
            }
        }
        Simplex(u32::from_be_bytes(out))
    }

    /// The face obtained by dropping vertex `v`, or `None` if `v` is absent.
    pub fn without(self, v: Vertex) -> Option<Simplex> {
        let (b, len) = self.labels();
        b[..len].iter().position(|&x| x == v).map(|i| self.without_index(i))
    }

    /// Inserts `v` and re-sorts. `v` must be absent and the result must fit.
    #[inline]
    pub fn with(self, v: Vertex) -> Simplex {
        let (b, len) = self.labels();
        debug_assert!(len < 4 && !b[..len].contains(&v));
        let mut out = [0u8; 4];
        let mut j = 0;
        let mut placed = false;
        for &x in &b[..len] {
            if !placed && v < x {
                out[j] = v;
                j += 1;
                placed = true;
            }
            out[j] = x;
            j += 1;
        }
        if !placed {
            out[j] = v;
        }
        Simplex(u32::from_be_bytes(out))
    }

    /// All codimension-one faces in lexicographic order of the dropped index
    /// (last dropped first gives the smallest face).
    pub fn boundary(self) -> impl Iterator<Item = Simplex> {
        let len = self.len();
        (0..len).rev().map(move |i| self.without_index(i))
    }

    /// Applies a relabeling given as `map[old] = new`.
    pub fn map(self, map: &[Vertex]) -> Option<Simplex> {
        let (b, len) = self.labels();
        let mut out = [0u8; 4];
        for i in 0..len {
            out[i] = *map.get(b[i] as usize)?;
        }
        Simplex::new(&out[..len])
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Compact rendering used in trace tables: labels concatenated when all are
/// single digits (`123`), otherwise joined by commas (`1,10,12`).
pub fn compact(s: Simplex) -> String {
    if s.vertices().all(|v| v < 10) {
        s.vertices().map(|v| char::from(b'0' + v)).collect()
    } else {
        s.vertices()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Shorthand for tests and fixtures: `facets(&[[1,2,3],[1,2,4]])`.
pub fn facets<const N: usize>(rows: &[[Vertex; N]]) -> Vec<Facet> {
    let mut out: Vec<Facet> = rows
        .iter()
        .map(|r| Simplex::new(r).expect("valid facet"))
        .collect();
    out.sort_unstable();
    out
}
