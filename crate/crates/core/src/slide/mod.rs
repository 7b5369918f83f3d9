//! Edge slides and edge-slide graphs.
//!
//! Sliding the edge `e` of `T` in direction `i` replaces `e` by `σ_i(e)`; it
//! is allowed when the result is again a spanning tree. With `T` rooted at
//! `∅`, deleting `e` cuts off the subtree below it, and the slide is valid
//! exactly when `σ_i(e)` is not already in `T` and has one endpoint on each
//! side of the cut (that is, when `e` lies on the fundamental cycle of
//! `σ_i(e)`).

mod checkpoint;
mod conjecture;
mod contraction;
mod explore;
mod product;
mod witness;

pub use checkpoint::{Checkpoint, FinishedComponent, OpenComponent};
pub use conjecture::{
    test_conjecture, test_conjecture_with, ConjectureReport, ConjectureRow, RowStatus, SaturationCheck,
};
pub use contraction::{
    all_contraction_trees, contraction_neighbors, contraction_slide_graph, is_contraction_slidable,
    is_contraction_slidable_direct, MAX_CONTRACTION_RANK,
};
pub use explore::{
    component_graph, component_members, components_of, explicit_graph, explore_signature, interrupt_flag,
    ComponentInfo, ComponentReport, ExploreMode, ExploreOptions, SlideSpace, TreeSpace, DEFAULT_CERTIFY_CAP,
    EXHAUSTIVE_BYTES_PER_TREE, HASHED_BYTES_PER_TREE,
};
pub use product::{
    predicted_slidable, saturated_cube_factor, slide_table_check, verify_product_isomorphism, verify_product_sampled,
    verify_saturated_product, ComponentShape, Counterexample, ProductCertificate, SampledProductCheck, TableReport,
};
pub use witness::{disconnection_witness, subtree_fingerprint, Fingerprint, Witness};

use crate::cube::{CubeContext, EdgeId};
use crate::error::{Error, Result};
use crate::tree::{is_spanning_tree, EdgeSet, SpanningTree};
use serde::{Deserialize, Serialize};

/// One edge slide: `edge` of the source tree moved in `direction`,
/// producing `result`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlideMove {
    pub edge: EdgeId,
    pub direction: usize,
    pub result: EdgeSet,
}

/// Parent pointers and subtree masks for a tree rooted at `∅`, computed
/// without allocation.
struct Cut {
    parent: [u8; 32],
    subtree: [u32; 32],
}

fn cut(cube: CubeContext, bits: EdgeSet) -> Cut {
    let n = cube.n();
    let v = cube.vertex_count();
    let mut parent = [u8::MAX; 32];
    let mut order = [0u8; 32];
    let mut len = 1;
    parent[0] = 0;
    let mut head = 0;
    while head < len {
        let x = order[head] as u32;
        head += 1;
        for i in 0..n {
            let y = x ^ (1 << i);
            if parent[y as usize] == u8::MAX && bits >> cube.edge_id(x & !(1 << i), i) & 1 == 1 {
                parent[y as usize] = x as u8;
                order[len] = y as u8;
                len += 1;
            }
        }
    }
    debug_assert_eq!(len, v);
    let mut subtree = [0u32; 32];
    for k in (0..v).rev() {
        let x = order[k] as usize;
        subtree[x] |= 1 << x;
        if x != 0 {
            let p = parent[x] as usize;
            subtree[p] |= subtree[x];
        }
    }
    Cut { parent, subtree }
}

impl Cut {
    /// Vertex mask of the side of `T - e` not containing `∅`.
    #[inline]
    fn below(&self, a: u32, b: u32) -> u32 {
        if self.parent[b as usize] as u32 == a && b != 0 {
            self.subtree[b as usize]
        } else {
            self.subtree[a as usize]
        }
    }
}

#[inline]
fn slide_ok(cube: CubeContext, bits: EdgeSet, cut: &Cut, e: EdgeId, i: usize) -> Option<EdgeId> {
    let f = cube.sigma(e, i);
    if bits >> f & 1 == 1 {
        return None;
    }
    let (a, b) = cube.endpoints(e);
    let side = cut.below(a, b);
    let (c, d) = cube.endpoints(f);
    ((side >> c & 1) != (side >> d & 1)).then_some(f)
}

fn check_move(t: &SpanningTree, e: EdgeId, i: usize) -> Result<()> {
    t.cube().check_dir(i)?;
    if !t.contains(e) {
        return Err(Error::EdgeNotInTree { edge: e });
    }
    let j = t.cube().direction(e);
    if i == j {
        return Err(Error::SameDirection { dir: j });
    }
    Ok(())
}

/// Whether `e` can be slid in direction `i`, by the cut test.
pub fn is_slidable(t: &SpanningTree, e: EdgeId, i: usize) -> Result<bool> {
    check_move(t, e, i)?;
    let c = cut(t.cube(), t.bits());
    Ok(slide_ok(t.cube(), t.bits(), &c, e, i).is_some())
}

/// Whether `e` can be slid in direction `i`, by rebuilding `T - e + σ_i(e)`
/// and checking it from scratch.
pub fn is_slidable_naive(t: &SpanningTree, e: EdgeId, i: usize) -> Result<bool> {
    check_move(t, e, i)?;
    let f = t.cube().sigma(e, i);
    if t.contains(f) {
        return Ok(false);
    }
    Ok(is_spanning_tree(t.cube(), (t.bits() & !(1u128 << e)) | 1u128 << f))
}

/// Applies a slide, failing if it is not valid.
pub fn slide(t: &SpanningTree, e: EdgeId, i: usize) -> Result<SpanningTree> {
    if !is_slidable(t, e, i)? {
        return Err(Error::NotSpanningTree(format!(
            "edge {e} is not slidable in direction {}",
            i + 1
        )));
    }
    let f = t.cube().sigma(e, i);
    Ok(SpanningTree::from_bits_unchecked(
        t.cube(),
        (t.bits() & !(1u128 << e)) | 1u128 << f,
    ))
}

/// Every valid slide of `T`, ordered by edge and then direction.
pub fn neighbors(t: &SpanningTree) -> Vec<SlideMove> {
    let mut out = Vec::new();
    for_each_slide(t.cube(), t.bits(), |edge, direction, result| {
        out.push(SlideMove {
            edge,
            direction,
            result,
        })
    });
    out
}

/// Raw form of [`neighbors`] used by the searches.
#[inline]
pub fn for_each_slide(cube: CubeContext, bits: EdgeSet, mut f: impl FnMut(EdgeId, usize, EdgeSet)) {
    let c = cut(cube, bits);
    let n = cube.n();
    let mut rest = bits;
    while rest != 0 {
        let e = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let j = cube.direction(e);
        for i in (0..n).filter(|&i| i != j) {
            if let Some(g) = slide_ok(cube, bits, &c, e, i) {
                f(e, i, (bits & !(1u128 << e)) | 1u128 << g);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::enumerate_spanning_trees;
    use crate::tree::fixtures::{fig1_left, fig1_right, fig5, set};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fig1_slide() {
        let t = fig1_left();
        let cube = t.cube();
        let e = cube.edge_id(set(&[1]), 1);
        assert!(is_slidable(&t, e, 0).unwrap());
        assert_eq!(slide(&t, e, 0).unwrap(), fig1_right());
        assert_eq!(cube.sigma(e, 0), cube.edge_id(0, 1));
    }

    #[test]
    fn fig5_slides() {
        let t = fig5();
        let cube = t.cube();
        let moves = neighbors(&t);
        let e = cube.edge_id(set(&[2]), 0);
        let dirs: Vec<usize> = moves.iter().filter(|m| m.edge == e).map(|m| m.direction).collect();
        assert_eq!(dirs, vec![1, 2]);
        // inside T({1}, ∅) only {∅, {3}} moves, and only in direction 2
        let lower_face: Vec<(EdgeId, usize)> = moves
            .iter()
            .filter(|m| cube.direction(m.edge) != 0 && cube.lower(m.edge) & 1 == 0)
            .map(|m| (m.edge, m.direction))
            .collect();
        assert_eq!(lower_face, vec![(cube.edge_id(0, 2), 1)]);
        let upper_face: Vec<(EdgeId, usize)> = moves
            .iter()
            .filter(|m| cube.direction(m.edge) != 0 && cube.lower(m.edge) & 1 == 1)
            .map(|m| (m.edge, m.direction))
            .collect();
        assert_eq!(upper_face, vec![(cube.edge_id(set(&[1, 3]), 1), 2)]);
    }

    #[test]
    fn errors() {
        let t = fig5();
        let cube = t.cube();
        let e = cube.edge_id(set(&[2]), 0);
        assert_eq!(is_slidable(&t, e, 0), Err(Error::SameDirection { dir: 0 }));
        let missing = cube.edge_id(0, 0);
        assert_eq!(is_slidable(&t, missing, 1), Err(Error::EdgeNotInTree { edge: missing }));
        assert!(is_slidable(&t, e, 3).is_err());
    }

    #[test]
    fn exhaustive_q3_routes_agree_and_slides_invert() {
        let cube = CubeContext::new(3).unwrap();
        enumerate_spanning_trees(cube, false, |t| {
            for e in t.edges() {
                for i in 0..3 {
                    if i == cube.direction(e) {
                        continue;
                    }
                    let fast = is_slidable(&t, e, i).unwrap();
                    assert_eq!(fast, is_slidable_naive(&t, e, i).unwrap());
                    if t.contains(cube.sigma(e, i)) {
                        assert!(!fast);
                    }
                    if fast {
                        let u = slide(&t, e, i).unwrap();
                        assert_eq!(u.direction_counts(), t.direction_counts());
                        let f = cube.sigma(e, i);
                        assert!(is_slidable(&u, f, i).unwrap());
                        assert_eq!(slide(&u, f, i).unwrap(), t);
                    }
                }
            }
        })
        .unwrap();
    }

    #[test]
    fn sampled_q4_routes_agree() {
        let cube = CubeContext::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20_000 {
            let t = crate::tree::random_spanning_tree(cube, &mut rng);
            let edges: Vec<EdgeId> = t.edges().collect();
            let e = edges[rng.gen_range(0..edges.len())];
            let mut i = rng.gen_range(0..3);
            if i >= cube.direction(e) {
                i += 1;
            }
            assert_eq!(is_slidable(&t, e, i).unwrap(), is_slidable_naive(&t, e, i).unwrap());
        }
    }
}
