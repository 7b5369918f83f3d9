//! Spanning trees of `Q_n` as edge bitvectors, with restriction to subcubes,
//! contraction, projection and the decomposition bijection.

mod decompose;
mod enumerate;

pub use decompose::{ContractionTree, Decomposition};
pub use enumerate::{
    collect_trees_capped, collect_trees_with_signature, count_spanning_trees, enumerate_spanning_trees, fold_trees,
    random_spanning_tree, spanning_tree_formula, trees_with_signature,
};

use crate::cube::{deposit, elements, extract, from_list, to_list, CubeContext, EdgeId, SubcubeId, Vertex};
use crate::error::{Error, Result};
use crate::signature::Signature;
use serde::{Deserialize, Serialize};

/// Edge sets of cubes up to this dimension fit in a `u128`.
pub const MAX_TREE_DIM: usize = 5;

pub type EdgeSet = u128;

/// Mask of all vertices of `Q_n`, `n <= 5`.
#[inline]
pub fn vertex_mask(n: usize) -> u32 {
    ((1u64 << (1u64 << n)) - 1) as u32
}

/// Checks `n` against the tree width.
pub fn check_tree_dim(cube: CubeContext) -> Result<()> {
    if cube.n() > MAX_TREE_DIM {
        return Err(Error::DimensionUnsupported {
            n: cube.n(),
            max: MAX_TREE_DIM,
            overridable: false,
        });
    }
    Ok(())
}

/// Iterates the set bits of an edge set.
pub fn bits(mut set: EdgeSet) -> impl Iterator<Item = EdgeId> {
    std::iter::from_fn(move || {
        if set == 0 {
            return None;
        }
        let e = set.trailing_zeros() as usize;
        set &= set - 1;
        Some(e)
    })
}

/// Component labels of the graph `(V(Q_n), set)`.
fn components(cube: CubeContext, set: EdgeSet) -> (usize, Vec<u32>) {
    let v = cube.vertex_count();
    let mut parent: Vec<u32> = (0..v as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    for e in bits(set) {
        let (a, b) = cube.endpoints(e);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra as usize] = rb;
        }
    }
    let roots: Vec<u32> = (0..v as u32).map(|x| find(&mut parent, x)).collect();
    let mut distinct = roots.clone();
    distinct.sort_unstable();
    distinct.dedup();
    (distinct.len(), roots)
}

/// Reference check: `set` is a spanning tree of `Q_n`, verified by counting
/// edges and components from scratch.
pub fn is_spanning_tree(cube: CubeContext, set: EdgeSet) -> bool {
    if cube.n() > MAX_TREE_DIM || (cube.edge_count() < 128 && set >> cube.edge_count() != 0) {
        return false;
    }
    set.count_ones() as usize == cube.vertex_count() - 1 && components(cube, set).0 == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanningTree {
    cube: CubeContext,
    edges: EdgeSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub n: usize,
    /// `[lower endpoint as 1-based sorted list, 1-based direction]`.
    pub edges: Vec<(Vec<usize>, usize)>,
}

impl TreeJson {
    /// JSON form of an arbitrary edge set of `cube`.
    pub fn from_bits(cube: CubeContext, edges: EdgeSet) -> Self {
        TreeJson {
            n: cube.n(),
            edges: bits(edges)
                .map(|e| (to_list(cube.lower(e)), cube.direction(e) + 1))
                .collect(),
        }
    }
}

impl Serialize for SpanningTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpanningTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TreeJson::deserialize(d)?;
        SpanningTree::from_json(&j).map_err(serde::de::Error::custom)
    }
}

impl SpanningTree {
    pub fn new(cube: CubeContext, edges: EdgeSet) -> Result<Self> {
        check_tree_dim(cube)?;
        if !is_spanning_tree(cube, edges) {
            return Err(Error::NotSpanningTree(format!(
                "{} edges, expected a connected set of {}",
                edges.count_ones(),
                cube.vertex_count() - 1
            )));
        }
        Ok(SpanningTree { cube, edges })
    }

    /// Wraps a set already known to be a spanning tree.
    #[inline]
    pub fn from_bits_unchecked(cube: CubeContext, edges: EdgeSet) -> Self {
        debug_assert!(is_spanning_tree(cube, edges));
        SpanningTree { cube, edges }
    }

    pub fn from_edges(cube: CubeContext, list: &[EdgeId]) -> Result<Self> {
        let mut set = 0;
        for &e in list {
            if e >= cube.edge_count() {
                return Err(Error::EdgeNotInTree { edge: e });
            }
            set |= 1u128 << e;
        }
        Self::new(cube, set)
    }

    /// Builds a tree from vertex pairs, each pair at Hamming distance one.
    pub fn from_vertex_pairs(cube: CubeContext, pairs: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut list = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            cube.check_vertex(a)?;
            cube.check_vertex(b)?;
            let d = a ^ b;
            if d.count_ones() != 1 {
                return Err(Error::NotSpanningTree(format!("{a:#b} and {b:#b} are not adjacent")));
            }
            list.push(cube.edge_id(a & b, d.trailing_zeros() as usize));
        }
        Self::from_edges(cube, &list)
    }

    #[inline]
    pub fn cube(&self) -> CubeContext {
        self.cube
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.cube.n()
    }

    #[inline]
    pub fn bits(&self) -> EdgeSet {
        self.edges
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        e < 128 && self.edges >> e & 1 == 1
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        bits(self.edges)
    }

    /// Per-direction edge counts.
    pub fn direction_counts(&self) -> Vec<u32> {
        let half = self.cube.vertex_count() / 2;
        let block = if half == 128 { u128::MAX } else { (1u128 << half) - 1 };
        (0..self.n())
            .map(|i| ((self.edges >> (i * half)) & block).count_ones())
            .collect()
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.direction_counts()).expect("tree counts form a signature")
    }

    pub fn reduces_over(&self, r: Vertex) -> Result<bool> {
        self.cube.check_proper(r)?;
        let counts = self.direction_counts();
        let sum: u64 = elements(r).map(|i| counts[i] as u64).sum();
        Ok(sum == (1u64 << r.count_ones()) - 1)
    }

    /// Tree neighbours of `v`.
    pub fn neighbours(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n()).filter_map(move |i| {
            let e = self.cube.edge_id(v & !(1 << i), i);
            self.contains(e).then_some(v ^ (1 << i))
        })
    }

    /// Parent pointers and subtree vertex masks with the tree rooted at `∅`.
    pub fn rooted(&self) -> Rooted {
        let v = self.cube.vertex_count();
        let mut parent = vec![u32::MAX; v];
        let mut depth = vec![0u8; v];
        let mut order = Vec::with_capacity(v);
        parent[0] = 0;
        order.push(0u32);
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for y in self.neighbours(x) {
                if parent[y as usize] == u32::MAX {
                    parent[y as usize] = x;
                    depth[y as usize] = depth[x as usize] + 1;
                    order.push(y);
                }
            }
        }
        let mut subtree = vec![0u32; v];
        for &x in order.iter().rev() {
            subtree[x as usize] |= 1 << x;
            if x != 0 {
                let p = parent[x as usize] as usize;
                subtree[p] |= subtree[x as usize];
            }
        }
        Rooted { parent, depth, subtree }
    }

    /// Upright: every vertex `X` sits at tree distance `|X|` from `∅`.
    pub fn upright_defect(&self) -> Option<(Vertex, usize)> {
        let rooted = self.rooted();
        (0..self.cube.vertex_count() as u32)
            .find(|&x| rooted.depth[x as usize] as u32 != x.count_ones())
            .map(|x| (x, rooted.depth[x as usize] as usize))
    }

    pub fn is_upright(&self) -> bool {
        self.upright_defect().is_none()
    }

    /// `T ∩ Q_n(R, X)`, in local coordinates of the subcube.
    pub fn restrict(&self, r: Vertex, x: Vertex) -> Result<Forest> {
        self.cube.check_proper(r)?;
        if x & !r != 0 {
            return Err(Error::NotProperSubset { mask: x, n: self.n() });
        }
        let sub = SubcubeId { r, x };
        let free = self.cube.full() & !r;
        let local = CubeContext::new(free.count_ones() as usize)?;
        let mut set = 0u128;
        for e in self.edges() {
            let j = self.cube.direction(e);
            let lo = self.cube.lower(e);
            if free >> j & 1 == 1 && lo & r == x {
                set |= 1u128 << to_local(self.cube, free, local, e);
            }
        }
        Ok(Forest {
            sub,
            cube: local,
            edges: set,
            is_tree: is_spanning_tree(local, set),
        })
    }

    /// Image of `T` in `Q_n / R̄`: the edges of `T` in directions of `R`.
    pub fn contract(&self, r: Vertex) -> Result<Contracted> {
        self.cube.check_proper(r)?;
        let set = self.edges & direction_mask(self.cube, r);
        let k = r.count_ones() as usize;
        // the contraction always spans the contracted vertices
        let is_tree = set.count_ones() as usize == (1 << k) - 1;
        Ok(Contracted { r, edges: set, is_tree })
    }

    /// Composite of contraction and label dropping, as an edge set of `Q_R`.
    pub fn project(&self, r: Vertex) -> Result<Projected> {
        let c = self.contract(r)?;
        let local = CubeContext::new(r.count_ones() as usize)?;
        let mut set = 0u128;
        for e in bits(c.edges) {
            let j = self.cube.direction(e);
            let lo = self.cube.lower(e);
            let le = local.edge_id(extract(lo, r), rank_in(r, j));
            set |= 1u128 << le;
        }
        Ok(Projected {
            cube: local,
            edges: set,
            multiplicity: c.edges.count_ones() as usize,
            is_tree: c.edges.count_ones() == set.count_ones() && is_spanning_tree(local, set),
        })
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson::from_bits(self.cube, self.edges)
    }

    pub fn from_json(j: &TreeJson) -> Result<Self> {
        let cube = CubeContext::new(j.n)?;
        check_tree_dim(cube)?;
        let mut list = Vec::with_capacity(j.edges.len());
        for (v, d) in &j.edges {
            if *d == 0 || *d > j.n {
                return Err(Error::DirectionOutOfRange { dir: *d, n: j.n });
            }
            let lo = from_list(v, j.n)?;
            list.push(cube.edge_index(lo & !(1 << (d - 1)), d - 1)?);
        }
        Self::from_edges(cube, &list)
    }

    /// Little-endian bitvector of width `n * 2^(n-1)` bits.
    pub fn to_bytes(&self) -> Vec<u8> {
        let len = self.cube.edge_count().div_ceil(8);
        self.edges.to_le_bytes()[..len].to_vec()
    }

    pub fn from_bytes(n: usize, bytes: &[u8]) -> Result<Self> {
        let cube = CubeContext::new(n)?;
        check_tree_dim(cube)?;
        if bytes.len() != cube.edge_count().div_ceil(8) {
            return Err(Error::NotSpanningTree(format!(
                "expected {} bytes",
                cube.edge_count().div_ceil(8)
            )));
        }
        let mut buf = [0u8; 16];
        buf[..bytes.len()].copy_from_slice(bytes);
        Self::new(cube, u128::from_le_bytes(buf))
    }
}

/// Output of [`SpanningTree::rooted`]; vectors are indexed by vertex.
#[derive(Debug, Clone)]
pub struct Rooted {
    pub parent: Vec<u32>,
    pub depth: Vec<u8>,
    pub subtree: Vec<u32>,
}

/// `T ∩ Q_n(R, X)` as an edge set of the local cube `Q_{n-|R|}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Forest {
    pub sub: SubcubeId,
    pub cube: CubeContext,
    pub edges: EdgeSet,
    pub is_tree: bool,
}

impl Forest {
    pub fn tree(&self) -> Option<SpanningTree> {
        self.is_tree
            .then(|| SpanningTree::from_bits_unchecked(self.cube, self.edges))
    }

    /// Edge counts per local direction (the free directions in increasing order).
    pub fn direction_counts(&self) -> Vec<u32> {
        let mut c = vec![0; self.cube.n()];
        for e in bits(self.edges) {
            c[self.cube.direction(e)] += 1;
        }
        c
    }
}

/// Edges of `T` in directions of `R`, seen in `Q_n / R̄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Contracted {
    pub r: Vertex,
    pub edges: EdgeSet,
    pub is_tree: bool,
}

/// Projection onto the simple cube `Q_R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Projected {
    pub cube: CubeContext,
    pub edges: EdgeSet,
    /// Number of contracted edges before parallel copies were merged.
    pub multiplicity: usize,
    pub is_tree: bool,
}

/// Edges of `Q_n` whose direction lies in `dirs`.
pub fn direction_mask(cube: CubeContext, dirs: Vertex) -> EdgeSet {
    let half = cube.vertex_count() / 2;
    let block = if half == 128 { u128::MAX } else { (1u128 << half) - 1 };
    elements(dirs).fold(0, |m, i| m | block << (i * half))
}

/// Position of direction `j` among the elements of `mask`.
#[inline]
pub fn rank_in(mask: Vertex, j: usize) -> usize {
    (mask & ((1 << j) - 1)).count_ones() as usize
}

/// Maps an edge of `Q_n` in a direction of `free` to the local cube on `free`.
#[inline]
pub fn to_local(cube: CubeContext, free: Vertex, local: CubeContext, e: EdgeId) -> EdgeId {
    let j = cube.direction(e);
    local.edge_id(extract(cube.lower(e), free), rank_in(free, j))
}

/// Inverse of [`to_local`] on the subcube whose fixed coordinates are `x`.
#[inline]
pub fn from_local(cube: CubeContext, free: Vertex, x: Vertex, local: CubeContext, le: EdgeId) -> EdgeId {
    let k = local.direction(le);
    let j = deposit(1 << k, free).trailing_zeros() as usize;
    cube.edge_id(deposit(local.lower(le), free) | x, j)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn figure_signatures() {
        assert_eq!(fig1_right().signature().entries(), &[2, 2, 3]);
        assert_eq!(fig1_left().signature().entries(), &[2, 2, 3]);
        assert_eq!(fig5().signature().entries(), &[1, 3, 3]);
        let q1 = CubeContext::new(1).unwrap();
        assert_eq!(SpanningTree::new(q1, 1).unwrap().signature().entries(), &[1]);
    }

    #[test]
    fn rejects_non_trees() {
        let c = CubeContext::new(2).unwrap();
        assert!(SpanningTree::new(c, 0b1111).is_err());
        assert!(SpanningTree::new(c, 0b0011).is_err());
        assert!(SpanningTree::new(c, 0b0111).is_ok());
    }

    #[test]
    fn upright_examples() {
        assert!(fig1_right().is_upright());
        let (w, d) = fig1_left().upright_defect().unwrap();
        assert_eq!((w, d), (set(&[2]), 3));
    }

    #[test]
    fn reduces_over_examples() {
        let t = fig5();
        assert!(t.reduces_over(set(&[1])).unwrap());
        let f = fig1_right();
        for r in 1..7 {
            assert!(!f.reduces_over(r).unwrap());
        }
        assert!(f.reduces_over(7).is_err());
    }

    #[test]
    fn fig5_restriction_and_contraction() {
        let t = fig5();
        let f0 = t.restrict(0b001, 0).unwrap();
        let f1 = t.restrict(0b001, 0b001).unwrap();
        assert!(f0.is_tree && f1.is_tree);
        assert_eq!(f0.direction_counts(), vec![2, 1]);
        assert_eq!(f1.direction_counts(), vec![1, 2]);
        let c = t.contract(0b001).unwrap();
        assert!(c.is_tree);
        let cube = t.cube();
        assert_eq!(c.edges, 1u128 << cube.edge_id(set(&[2]), 0));
        let p = t.project(0b001).unwrap();
        assert!(p.is_tree);
        assert_eq!(p.edges, 1);
    }

    #[test]
    fn non_reducing_contraction_is_not_a_tree() {
        let t = fig1_right();
        for r in [1u32, 2, 4, 3, 5, 6] {
            let c = t.contract(r).unwrap();
            assert!(!c.is_tree);
            assert!(c.edges.count_ones() > (1 << r.count_ones()) - 1);
        }
    }

    #[test]
    fn serialisation_round_trips() {
        let t = fig5();
        let j = t.to_json();
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.starts_with("{\"n\":3,\"edges\":[["));
        let back: TreeJson = serde_json::from_str(&text).unwrap();
        assert_eq!(SpanningTree::from_json(&back).unwrap(), t);
        let b = t.to_bytes();
        assert_eq!(b.len(), 2);
        assert_eq!(SpanningTree::from_bytes(3, &b).unwrap(), t);
        assert!(SpanningTree::from_bytes(3, &[0xff, 0xff]).is_err());
    }

    #[test]
    fn local_maps_invert() {
        let cube = CubeContext::new(4).unwrap();
        for r in 1..15u32 {
            let free = cube.full() & !r;
            let local = CubeContext::new(free.count_ones() as usize).unwrap();
            for x in crate::cube::submasks(r) {
                for le in local.edges() {
                    let e = from_local(cube, free, x, local, le);
                    assert_eq!(cube.lower(e) & r, x);
                    assert_eq!(to_local(cube, free, local, e), le);
                }
            }
        }
    }
}
