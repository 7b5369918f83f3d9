use super::{bits, direction_mask, from_local, is_spanning_tree, rank_in, to_local, EdgeSet, SpanningTree};
use crate::cube::{deposit, extract, submasks, CubeContext, EdgeId, Vertex};
use crate::error::{Error, Result};

/// A spanning tree of the contraction `Q_n / R̄`, stored as the set of `Q_n`
/// edges it uses (so the label of an edge is its lower endpoint outside `R`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContractionTree {
    cube: CubeContext,
    r: Vertex,
    edges: EdgeSet,
}

impl ContractionTree {
    pub fn new(cube: CubeContext, r: Vertex, edges: EdgeSet) -> Result<Self> {
        cube.check_proper(r)?;
        if edges & !direction_mask(cube, r) != 0 {
            return Err(Error::MalformedDecomposition("contraction edge outside R".into()));
        }
        let t = ContractionTree { cube, r, edges };
        if t.projection_bits().count_ones() != edges.count_ones() {
            return Err(Error::MalformedDecomposition("two edges in one parallel family".into()));
        }
        if !is_spanning_tree(t.base(), t.projection_bits()) {
            return Err(Error::MalformedDecomposition(
                "projection is not a spanning tree of Q_R".into(),
            ));
        }
        Ok(t)
    }

    pub(crate) fn from_bits_unchecked(cube: CubeContext, r: Vertex, edges: EdgeSet) -> Self {
        ContractionTree { cube, r, edges }
    }

    pub fn cube(&self) -> CubeContext {
        self.cube
    }

    pub fn r(&self) -> Vertex {
        self.r
    }

    pub fn bits(&self) -> EdgeSet {
        self.edges
    }

    /// The simple cube `Q_R`.
    pub fn base(&self) -> CubeContext {
        CubeContext::new(self.r.count_ones() as usize).expect("R is nonempty")
    }

    /// Label `Y_e ⊆ R̄` of an edge.
    pub fn label(&self, e: EdgeId) -> Vertex {
        self.cube.lower(e) & !self.r
    }

    /// Maps a contraction edge to its edge of `Q_R`.
    pub fn base_edge(&self, e: EdgeId) -> EdgeId {
        let j = self.cube.direction(e);
        self.base()
            .edge_id(extract(self.cube.lower(e), self.r), rank_in(self.r, j))
    }

    /// Contraction edge lying over the base edge `be` with label `y`.
    pub fn lift(&self, be: EdgeId, y: Vertex) -> EdgeId {
        let base = self.base();
        let j = deposit(1 << base.direction(be), self.r).trailing_zeros() as usize;
        self.cube.edge_id(deposit(base.lower(be), self.r) | y, j)
    }

    pub fn projection_bits(&self) -> EdgeSet {
        bits(self.edges).fold(0, |m, e| m | 1u128 << self.base_edge(e))
    }

    pub fn projection(&self) -> SpanningTree {
        SpanningTree::from_bits_unchecked(self.base(), self.projection_bits())
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        bits(self.edges)
    }
}

/// `Ψ_R(T)`: the contraction tree together with one spanning tree of each
/// subcube `Q_n(R, X)`. `parts[k]` belongs to `X = deposit(k, R)` and is a
/// tree of the local cube on the directions outside `R`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub contraction: ContractionTree,
    pub parts: Vec<SpanningTree>,
}

impl Decomposition {
    pub fn r(&self) -> Vertex {
        self.contraction.r
    }

    /// `(X, part)` pairs with `X` increasing.
    pub fn parts_by_subset(&self) -> impl Iterator<Item = (Vertex, &SpanningTree)> {
        let r = self.r();
        self.parts
            .iter()
            .enumerate()
            .map(move |(k, t)| (deposit(k as u32, r), t))
    }

    /// Signatures of the parts, in the order of [`Decomposition::parts_by_subset`].
    pub fn part_signatures(&self) -> Vec<Vec<u32>> {
        self.parts.iter().map(SpanningTree::direction_counts).collect()
    }

    /// Reassembles the tree from its pieces.
    pub fn recompose(&self) -> Result<SpanningTree> {
        let cube = self.contraction.cube;
        let r = self.r();
        let free = cube.full() & !r;
        let m = free.count_ones() as usize;
        if self.parts.len() != 1 << r.count_ones() {
            return Err(Error::MalformedDecomposition(format!(
                "{} parts for |R| = {}",
                self.parts.len(),
                r.count_ones()
            )));
        }
        let mut set = self.contraction.edges;
        for (x, part) in self.parts_by_subset() {
            if part.n() != m {
                return Err(Error::MalformedDecomposition(format!(
                    "part at {x:#b} lives in Q_{}, expected Q_{m}",
                    part.n()
                )));
            }
            for le in part.edges() {
                set |= 1u128 << from_local(cube, free, x, part.cube(), le);
            }
        }
        SpanningTree::new(cube, set).map_err(|e| Error::MalformedDecomposition(e.to_string()))
    }
}

impl SpanningTree {
    /// `Ψ_R(T)`; requires that `T` reduces over `R`.
    pub fn decompose(&self, r: Vertex) -> Result<Decomposition> {
        if !self.reduces_over(r)? {
            return Err(Error::ReductionRequired { mask: r });
        }
        let cube = self.cube();
        let free = cube.full() & !r;
        let local = CubeContext::new(free.count_ones() as usize)?;
        let mut parts = vec![0u128; 1 << r.count_ones()];
        for e in self.edges() {
            let j = cube.direction(e);
            if free >> j & 1 == 1 {
                let x = cube.lower(e) & r;
                parts[extract(x, r) as usize] |= 1u128 << to_local(cube, free, local, e);
            }
        }
        let parts = parts
            .into_iter()
            .map(|p| SpanningTree::from_bits_unchecked(local, p))
            .collect();
        let contraction = ContractionTree::from_bits_unchecked(cube, r, self.bits() & direction_mask(cube, r));
        Ok(Decomposition { contraction, parts })
    }

    /// Every subcube of the partition by `R`, with the restricted forests.
    pub fn subcube_forests(&self, r: Vertex) -> Result<Vec<super::Forest>> {
        submasks(r).map(|x| self.restrict(r, x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::tree::enumerate_spanning_trees;

    #[test]
    fn fig5_decomposition() {
        let t = fig5();
        let d = t.decompose(0b001).unwrap();
        assert_eq!(d.contraction.edges().count(), 1);
        let e = d.contraction.edges().next().unwrap();
        assert_eq!(d.contraction.label(e), set(&[2]));
        assert_eq!(d.part_signatures(), vec![vec![2, 1], vec![1, 2]]);
        assert_eq!(d.recompose().unwrap(), t);
    }

    #[test]
    fn irreducible_tree_refuses() {
        let t = fig1_right();
        for r in 1..7 {
            assert_eq!(t.decompose(r), Err(Error::ReductionRequired { mask: r }));
        }
    }

    #[test]
    fn q3_three_way_equivalence_and_round_trip() {
        let cube = CubeContext::new(3).unwrap();
        let mut decomposed = 0;
        enumerate_spanning_trees(cube, false, |t| {
            let sig = t.direction_counts();
            for r in 1..7u32 {
                let red = t.reduces_over(r).unwrap();
                let all_trees = t.subcube_forests(r).unwrap().iter().all(|f| f.is_tree);
                let contracted = t.contract(r).unwrap().is_tree;
                assert_eq!(red, all_trees);
                assert_eq!(red, contracted);
                if red {
                    assert!(t.project(r).unwrap().is_tree);
                    let d = t.decompose(r).unwrap();
                    assert_eq!(d.recompose().unwrap(), t);
                    assert!(ContractionTree::new(cube, r, d.contraction.bits()).is_ok());
                    let free = cube.full() & !r;
                    let mut total = vec![0u32; free.count_ones() as usize];
                    for s in d.part_signatures() {
                        for (a, b) in total.iter_mut().zip(s) {
                            *a += b;
                        }
                    }
                    let expect: Vec<u32> = crate::cube::elements(free).map(|i| sig[i]).collect();
                    assert_eq!(total, expect);
                    decomposed += 1;
                }
            }
        })
        .unwrap();
        assert!(decomposed > 0);
    }

    #[test]
    fn malformed_decompositions_rejected() {
        let t = fig5();
        let mut d = t.decompose(0b001).unwrap();
        d.parts.pop();
        assert!(matches!(d.recompose(), Err(Error::MalformedDecomposition(_))));
        let cube = t.cube();
        // two parallel copies of the same Q_R edge
        let two = (1u128 << cube.edge_id(0, 0)) | (1u128 << cube.edge_id(0b010, 0));
        assert!(ContractionTree::new(cube, 0b001, two).is_err());
    }
}
