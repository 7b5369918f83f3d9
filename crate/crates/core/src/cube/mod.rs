//! The n-cube `Q_n`: vertices are subsets of `[n]` stored as bitmasks, and
//! each edge has a dense canonical index.
//!
//! Directions are 0-based internally, so direction `i` is bit `i`. All
//! human-facing formatting (see [`fmt_set`]) prints them 1-based.
//!
//! The canonical id of the edge `{v, v ^ (1 << i)}` is
//! `i * 2^(n-1) + rank(v)`, where `rank` deletes bit `i` from the endpoint
//! with that bit clear. For `n = 4` a whole edge set fits in 32 bits.

mod graph;

pub use graph::{GraphExport, SimpleGraph};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub type Vertex = u32;
pub type EdgeId = usize;

/// Largest dimension the cube arithmetic accepts.
pub const MAX_DIM: usize = 16;
/// Largest dimension accepted without an explicit override (tree enumeration,
/// exhaustive searches).
pub const SAFE_DIM: usize = 4;

/// `Q_n` together with its derived counts. Cheap to copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CubeContext {
    n: usize,
}

impl CubeContext {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::DimensionUnsupported {
                n,
                max: MAX_DIM,
                overridable: false,
            });
        }
        Ok(CubeContext { n })
    }

    /// Like [`CubeContext::new`] but refuses `n > SAFE_DIM` unless `allow_large`.
    pub fn gated(n: usize, allow_large: bool) -> Result<Self> {
        if n > SAFE_DIM && !allow_large {
            return Err(Error::DimensionUnsupported {
                n,
                max: SAFE_DIM,
                overridable: true,
            });
        }
        Self::new(n)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.n << (self.n - 1)
    }

    /// Mask of all directions, i.e. the vertex `[n]`.
    #[inline]
    pub fn full(&self) -> Vertex {
        ((1u64 << self.n) - 1) as Vertex
    }

    #[inline]
    fn half(&self) -> usize {
        1 << (self.n - 1)
    }

    pub fn check_dir(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::DirectionOutOfRange { dir: i, n: self.n })
        }
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v & !self.full() == 0 {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Canonical id of the edge at `v` in direction `i`. Either endpoint may
    /// be given.
    pub fn edge_index(&self, v: Vertex, i: usize) -> Result<EdgeId> {
        self.check_dir(i)?;
        self.check_vertex(v)?;
        Ok(self.edge_id(v, i))
    }

    /// Unchecked form of [`CubeContext::edge_index`].
    #[inline]
    pub fn edge_id(&self, v: Vertex, i: usize) -> EdgeId {
        let v = v as usize;
        let low = v & ((1 << i) - 1);
        let high = (v >> (i + 1)) << i;
        i * self.half() + (low | high)
    }

    /// Direction of an edge.
    #[inline]
    pub fn direction(&self, e: EdgeId) -> usize {
        e >> (self.n - 1)
    }

    /// Endpoint of `e` with its direction bit clear.
    #[inline]
    pub fn lower(&self, e: EdgeId) -> Vertex {
        let i = self.direction(e);
        let rank = e & (self.half() - 1);
        let low = rank & ((1 << i) - 1);
        let high = (rank >> i) << (i + 1);
        (low | high) as Vertex
    }

    /// Both endpoints, lower first.
    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        let lo = self.lower(e);
        (lo, lo | (1 << self.direction(e)))
    }

    /// Image of `e` under the automorphism `X -> X xor {i}`. An edge in
    /// direction `i` is mapped to itself.
    #[inline]
    pub fn sigma(&self, e: EdgeId, i: usize) -> EdgeId {
        let j = self.direction(e);
        if i == j {
            return e;
        }
        self.edge_id(self.lower(e) ^ (1 << i), j)
    }

    /// Checked `sigma`.
    pub fn sigma_checked(&self, e: EdgeId, i: usize) -> Result<EdgeId> {
        self.check_dir(i)?;
        if e >= self.edge_count() {
            return Err(Error::EdgeNotInTree { edge: e });
        }
        Ok(self.sigma(e, i))
    }

    /// Which subcube `Q_n(R, X)` contains `v`.
    pub fn subcube_of(&self, v: Vertex, r: Vertex) -> Result<SubcubeId> {
        self.check_vertex(v)?;
        self.check_proper(r)?;
        Ok(SubcubeId { r, x: v & r })
    }

    pub fn check_proper(&self, r: Vertex) -> Result<()> {
        if r == 0 || r & !self.full() != 0 || r == self.full() {
            Err(Error::NotProperSubset { mask: r, n: self.n })
        } else {
            Ok(())
        }
    }

    /// All vertices of the subcube, in increasing order of their local
    /// coordinate.
    pub fn subcube_vertices(&self, sub: SubcubeId) -> Vec<Vertex> {
        let free = self.full() & !sub.r;
        (0..1u32 << free.count_ones())
            .map(|w| deposit(w, free) | sub.x)
            .collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        0..self.edge_count()
    }

    /// The cube as a plain graph with brace-set vertex names.
    pub fn graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.vertex_count());
        for e in self.edges() {
            let (a, b) = self.endpoints(e);
            g.add_edge(a as usize, b as usize);
        }
        g.set_names((0..self.vertex_count() as u32).map(fmt_set).collect());
        g
    }

    pub fn contraction(&self, r: Vertex) -> Result<ContractionGraph> {
        self.check_proper(r)?;
        Ok(ContractionGraph { cube: *self, r })
    }
}

/// The subcube `Q_n(R, X)` of vertices `W` with `W & R == X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubcubeId {
    pub r: Vertex,
    pub x: Vertex,
}

impl SubcubeId {
    pub fn contains(&self, v: Vertex) -> bool {
        v & self.r == self.x
    }
}

/// The multigraph `Q_n / R̄`: directions outside `R` contracted. Vertices are
/// the subsets of `R`; every edge of `Q_R` carries `2^(n-|R|)` parallel copies
/// labelled by the subsets `Y` of the complement.
///
/// An edge `(e, Y)` is identified with the `Q_n` edge whose lower endpoint is
/// `lower(e) | Y`, so edge sets of the contraction are just sets of `Q_n`
/// edges in directions of `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContractionGraph {
    cube: CubeContext,
    r: Vertex,
}

impl ContractionGraph {
    pub fn cube(&self) -> CubeContext {
        self.cube
    }

    pub fn r(&self) -> Vertex {
        self.r
    }

    pub fn complement(&self) -> Vertex {
        self.cube.full() & !self.r
    }

    pub fn vertex_count(&self) -> usize {
        1 << self.r.count_ones()
    }

    pub fn parallel_count(&self) -> usize {
        1 << (self.cube.n() - self.r.count_ones() as usize)
    }

    pub fn edge_count(&self) -> usize {
        let k = self.r.count_ones() as usize;
        (k << (k.max(1) - 1)) * self.parallel_count()
    }

    /// `Q_n` edge standing for the parallel copy labelled `y` of the `Q_R`
    /// edge at `x` (a subset of `R`) in direction `j ∈ R`.
    pub fn edge(&self, x: Vertex, j: usize, y: Vertex) -> EdgeId {
        debug_assert!(self.r >> j & 1 == 1);
        debug_assert!(x & !self.r == 0 && y & self.r == 0);
        self.cube.edge_id((x | y) & !(1 << j), j)
    }

    /// `(x, j, y)` for a `Q_n` edge in a direction of `R`.
    pub fn split(&self, e: EdgeId) -> (Vertex, usize, Vertex) {
        let lo = self.cube.lower(e);
        (lo & self.r, self.cube.direction(e), lo & !self.r)
    }

    /// All edges, grouped by parallel family.
    pub fn edges(&self) -> Vec<EdgeId> {
        self.cube
            .edges()
            .filter(|&e| self.r >> self.cube.direction(e) & 1 == 1)
            .collect()
    }
}

/// Software `pext`: gathers the bits of `v` selected by `mask` into the low
/// bits of the result.
#[inline]
pub fn extract(v: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut m = mask;
    let mut k = 0;
    while m != 0 {
        let b = m.trailing_zeros();
        out |= ((v >> b) & 1) << k;
        k += 1;
        m &= m - 1;
    }
    out
}

/// Software `pdep`: scatters the low bits of `w` into the positions of `mask`.
#[inline]
pub fn deposit(w: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut m = mask;
    let mut k = 0;
    while m != 0 {
        let b = m.trailing_zeros();
        out |= ((w >> k) & 1) << b;
        k += 1;
        m &= m - 1;
    }
    out
}

/// Brace-set notation with 1-based elements, e.g. `{1,3}` for `0b101`.
pub fn fmt_set(v: Vertex) -> String {
    let items: Vec<String> = elements(v).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// 0-based elements of a set, ascending.
pub fn elements(v: Vertex) -> impl Iterator<Item = usize> {
    let mut m = v;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// 1-based sorted element list, for JSON.
pub fn to_list(v: Vertex) -> Vec<usize> {
    elements(v).map(|i| i + 1).collect()
}

/// Inverse of [`to_list`].
pub fn from_list(items: &[usize], n: usize) -> Result<Vertex> {
    let mut v = 0;
    for &i in items {
        if i == 0 || i > n {
            return Err(Error::DirectionOutOfRange { dir: i, n });
        }
        v |= 1 << (i - 1);
    }
    Ok(v)
}

/// Largest element (0-based) of a nonempty set.
#[inline]
pub fn max_elem(v: Vertex) -> usize {
    debug_assert!(v != 0);
    31 - v.leading_zeros() as usize
}

/// Subsets of `mask` in increasing numeric order, starting with the empty set.
pub fn submasks(mask: Vertex) -> impl Iterator<Item = Vertex> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        let following = cur.wrapping_sub(mask) & mask;
        next = if following == 0 { None } else { Some(following) };
        Some(cur)
    })
}
