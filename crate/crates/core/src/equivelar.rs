//! Admissible parameters of equivelar maps and degree-constrained runs.
//!
//! An equivelar map of type `{p, q}` has only `p`-gons and every vertex of
//! degree `q`. On a surface with Euler characteristic `chi` and `n` vertices
//! this forces `chi = n q (1/p + 1/q - 1/2)`; for triangulations (`p = 3`)
//! it reads `q = 6 - 6 chi / n`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;

use num_integer::Integer;

use crate::complex::Triangulation;
use crate::enumerate::{for_each, EnumerationConfig};
use crate::error::{EnumerationError, EquivelarError};
use crate::topology::{classify_surface, TopologicalType};

/// Smallest vertex count of an equivelar torus (degree 6).
pub const TORUS_MIN_VERTICES: u64 = 7;
/// Vertex degree of every equivelar triangulation with `chi = 0`.
pub const TORUS_DEGREE: u64 = 6;

/// The type `(p, q; n)` of an equivelar map on a surface with Euler
/// characteristic `chi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquivelarSpec {
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub chi: i64,
}

impl fmt::Display for EquivelarSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{})", self.p, self.q, self.n)
    }
}

/// Admissible `(n, q)` pairs of equivelar triangulations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdmissiblePairs {
    Finite(Vec<(u64, u64)>),
    /// `chi = 0`: every `n >= 7` with `q = 6`.
    TorusFamily,
}

impl AdmissiblePairs {
    /// Concrete pairs with `n` up to `max_n`.
    pub fn up_to(&self, max_n: u64) -> Vec<(u64, u64)> {
        match self {
            AdmissiblePairs::Finite(v) => v.iter().copied().filter(|&(n, _)| n <= max_n).collect(),
            AdmissiblePairs::TorusFamily => (TORUS_MIN_VERTICES..=max_n).map(|n| (n, TORUS_DEGREE)).collect(),
        }
    }
}

/// All `(n, q)` with `n | 6|chi|`, integral `q = 6 - 6 chi / n >= 3` and
/// `n >= q + 1`, sorted by `n`.
pub fn admissible_pairs(chi: i64) -> Result<AdmissiblePairs, EquivelarError> {
    if chi > 2 {
        return Err(EquivelarError::NotASurface(chi));
    }
    if chi == 0 {
        return Ok(AdmissiblePairs::TorusFamily);
    }
    let m = 6 * chi.unsigned_abs();
    let mut out = Vec::new();
    for n in 1..=m {
        if !m.is_multiple_of(n) {
            continue;
        }
        let q = 6 - 6 * chi / n as i64;
        if q >= 3 && n as i64 > q {
            out.push((n, q as u64));
        }
    }
    Ok(AdmissiblePairs::Finite(out))
}

/// All types `(p, q; n)` with `p, q >= 3` of equivelar maps on a surface with
/// `chi < 0`, sorted by `(p, q, n)`.
///
/// With `a = gcd(n, p)`, `n = k a` and `p = l a` the relation forces
/// `k | 2|chi|` and `k > 2l`, and `q = 2l(ka + |chi|) / (k(la - 2))`, which
/// drops below 3 once `a` is large. Besides `n >= q + 1` and `n > 2p`, the
/// dual map of type `(q, p; nq/p)` must exist as well.
pub fn admissible_triples(chi: i64) -> Result<Vec<EquivelarSpec>, EquivelarError> {
    if chi >= 0 {
        return Err(EquivelarError::NonNegativeChi);
    }
    let c = chi.unsigned_abs();
    let mut out = BTreeSet::new();
    for k in (3..=2 * c).filter(|k| (2 * c).is_multiple_of(*k)) {
        for l in (1..=(k - 1) / 2).filter(|&l| k.gcd(&l) == 1) {
            let mut a = 1;
            loop {
                let p = l * a;
                let n = k * a;
                // q >= 3 needs 2l(ka + c) >= 3k(la - 2), i.e. kla <= 2lc + 6k
                if k * l * a > 2 * l * c + 6 * k {
                    break;
                }
                a += 1;
                if p < 3 {
                    continue;
                }
                let num = 2 * l * (n + c);
                let den = k * (p - 2);
                if !num.is_multiple_of(den) {
                    continue;
                }
                let q = num / den;
                if q < 3 || n < q + 1 || n <= 2 * p || n < p {
                    continue;
                }
                if !(n * q).is_multiple_of(p) {
                    continue;
                }
                let dual_n = n * q / p;
                if dual_n < p + 1 || dual_n < q {
                    continue;
                }
                out.insert((p, q, n));
            }
        }
    }
    Ok(out.into_iter().map(|(p, q, n)| EquivelarSpec { p, q, n, chi }).collect())
}

/// The dual type `(q, p; nq/p)`.
pub fn dual_type(spec: EquivelarSpec) -> Result<EquivelarSpec, EquivelarError> {
    let EquivelarSpec { p, q, n, chi } = spec;
    if p == 0 || (n * q) % p != 0 {
        return Err(EquivelarError::NonIntegralDual { p, q, n });
    }
    Ok(EquivelarSpec { p: q, q: p, n: n * q / p, chi })
}

/// Euler characteristic of an equivelar triangulation with `n` vertices of
/// degree `q`.
pub fn triangulation_chi(n: u64, q: u64) -> i64 {
    // chi = n - nq/2 + nq/3 = n (6 - q) / 6
    (n as i64) * (6 - q as i64) / 6
}

fn check_pair(n: u64, q: u64) -> Result<(), EquivelarError> {
    let inadmissible = EquivelarError::Inadmissible { n: n as usize, q: q as usize };
    if q < 3 || n < q + 1 || !(n * (6 - q as i64).unsigned_abs()).is_multiple_of(6) {
        return Err(inadmissible);
    }
    let chi = triangulation_chi(n, q);
    if chi > 2 {
        return Err(inadmissible);
    }
    let ok = match admissible_pairs(chi)? {
        AdmissiblePairs::TorusFamily => q == TORUS_DEGREE && n >= TORUS_MIN_VERTICES,
        AdmissiblePairs::Finite(v) => v.contains(&(n, q)),
    };
    if ok {
        Ok(())
    } else {
        Err(inadmissible)
    }
}

/// Streams every equivelar triangulation on `n` vertices of degree `q` with
/// its type.
pub fn for_each_equivelar<F>(n: u64, q: u64, mut f: F) -> Result<u64, EquivelarError>
where
    F: FnMut(&Triangulation, &TopologicalType) -> ControlFlow<()>,
{
    check_pair(n, q)?;
    let cfg = EnumerationConfig::surfaces(n as usize).with_degree(q as usize);
    let mut failure = None;
    let stats = for_each(&cfg, &mut |t: &Triangulation| match classify_surface(t) {
        Ok(ty) => f(t, &ty),
        Err(e) => {
            failure = Some(e);
            ControlFlow::Break(())
        }
    })
    .map_err(|e| match e {
        EnumerationError::Config(c) => EquivelarError::Config(c),
        EnumerationError::Assertion(m) => EquivelarError::Assertion(m),
    })?;
    if let Some(e) = failure {
        return Err(EquivelarError::Topology(e));
    }
    Ok(stats.emitted)
}

/// Every equivelar triangulation on `n` vertices of degree `q`.
pub fn enumerate_equivelar(n: u64, q: u64) -> Result<Vec<(Triangulation, TopologicalType)>, EquivelarError> {
    let mut out = Vec::new();
    for_each_equivelar(n, q, |t, ty| {
        out.push((t.clone(), ty.clone()));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}
