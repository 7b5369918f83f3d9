//! Edge slides in the contraction `Q_n / R̄`.
//!
//! A contraction tree picks one labelled copy of every edge of a spanning
//! tree of `Q_R`. Sliding in a direction outside `R` toggles one bit of an
//! edge's label and is always allowed; sliding in a direction of `R` keeps
//! the label and moves the underlying edge of `Q_R`, so it is allowed
//! exactly when that slide is allowed in the projection.

use super::explore::{components_of, info, SlideSpace};
use super::{cut, slide_ok, ComponentReport, ExploreMode, SlideMove};
use crate::cube::{deposit, extract, to_list, CubeContext, EdgeId, Vertex};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::signature::Signature;
use crate::tree::{bits, enumerate_spanning_trees, rank_in, trees_with_signature, ContractionTree, EdgeSet};

/// Largest `|R|` for which the contraction trees are listed.
pub const MAX_CONTRACTION_RANK: usize = 3;

fn check_move(t: &ContractionTree, e: EdgeId, i: usize) -> Result<()> {
    t.cube().check_dir(i)?;
    if t.bits() >> e & 1 == 0 {
        return Err(Error::EdgeNotInTree { edge: e });
    }
    let j = t.cube().direction(e);
    if i == j {
        return Err(Error::SameDirection { dir: j });
    }
    Ok(())
}

/// Slidability through the projection to `Q_R`.
pub fn is_contraction_slidable(t: &ContractionTree, e: EdgeId, i: usize) -> Result<bool> {
    check_move(t, e, i)?;
    let r = t.r();
    if r >> i & 1 == 0 {
        return Ok(true);
    }
    let base = t.base();
    let p = t.projection_bits();
    Ok(slide_ok(base, p, &cut(base, p), t.base_edge(e), rank_in(r, i)).is_some())
}

/// Slidability by checking from scratch that `T - e + σ_i(e)` is a spanning
/// tree of the multigraph on the subsets of `R`.
pub fn is_contraction_slidable_direct(t: &ContractionTree, e: EdgeId, i: usize) -> Result<bool> {
    check_move(t, e, i)?;
    let cube = t.cube();
    let r = t.r();
    let f = cube.sigma(e, i);
    let set = (t.bits() & !(1u128 << e)) | 1u128 << f;
    let v = 1usize << r.count_ones();
    if set.count_ones() as usize != v - 1 {
        return Ok(false);
    }
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in bits(set) {
        let (a, b) = cube.endpoints(g);
        let (a, b) = (extract(a, r) as usize, extract(b, r) as usize);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Ok(false);
        }
        parent[ra] = rb;
    }
    Ok(true)
}

/// Every valid slide, ordered by edge and then direction.
pub fn contraction_neighbors(t: &ContractionTree) -> Vec<SlideMove> {
    let mut out = Vec::new();
    for_each_contraction_slide(t.cube(), t.r(), t.bits(), |edge, direction, result| {
        out.push(SlideMove {
            edge,
            direction,
            result,
        })
    });
    out
}

fn for_each_contraction_slide(cube: CubeContext, r: Vertex, set: EdgeSet, mut f: impl FnMut(EdgeId, usize, EdgeSet)) {
    let t = ContractionTree::from_bits_unchecked(cube, r, set);
    let base = t.base();
    let p = t.projection_bits();
    let c = cut(base, p);
    for e in bits(set) {
        let j = cube.direction(e);
        let be = t.base_edge(e);
        for i in (0..cube.n()).filter(|&i| i != j) {
            if r >> i & 1 == 0 || slide_ok(base, p, &c, be, rank_in(r, i)).is_some() {
                f(e, i, (set & !(1u128 << e)) | 1u128 << cube.sigma(e, i));
            }
        }
    }
}

pub(crate) struct ContractionSpace {
    pub cube: CubeContext,
    pub r: Vertex,
}

impl SlideSpace for ContractionSpace {
    fn neighbors(&self, v: EdgeSet, out: &mut Vec<EdgeSet>) {
        for_each_contraction_slide(self.cube, self.r, v, |_, _, w| out.push(w));
    }
}

fn check_rank(cube: CubeContext, r: Vertex) -> Result<()> {
    cube.check_proper(r)?;
    if r.count_ones() as usize > MAX_CONTRACTION_RANK {
        return Err(Error::DimensionUnsupported {
            n: r.count_ones() as usize,
            max: MAX_CONTRACTION_RANK,
            overridable: false,
        });
    }
    Ok(())
}

/// Every labelling of the edges of each base tree.
fn lift_all(cube: CubeContext, r: Vertex, base_trees: &[EdgeSet]) -> Vec<EdgeSet> {
    let free = cube.full() & !r;
    let m = free.count_ones();
    let mut out = Vec::new();
    for &p in base_trees {
        let edges: Vec<EdgeId> = bits(p).collect();
        let ct = ContractionTree::from_bits_unchecked(cube, r, 0);
        let total = 1u64 << (m as usize * edges.len());
        for code in 0..total {
            let mut set = 0u128;
            for (k, &be) in edges.iter().enumerate() {
                let y = deposit(((code >> (k * m as usize)) & ((1 << m) - 1)) as u32, free);
                set |= 1u128 << ct.lift(be, y);
            }
            out.push(set);
        }
    }
    out.sort_unstable();
    out
}

/// The trees of `Q_n / R̄` whose projection has signature `sig` (or any
/// signature when `sig` is `None`), sorted by edge bitvector.
pub fn all_contraction_trees(cube: CubeContext, r: Vertex, sig: Option<&Signature>) -> Result<Vec<EdgeSet>> {
    check_rank(cube, r)?;
    let base = CubeContext::new(r.count_ones() as usize)?;
    let mut base_trees = Vec::new();
    match sig {
        Some(s) => {
            if s.n() != base.n() {
                return Err(Error::InvalidSignature {
                    entries: s.entries().iter().map(|&a| a as u64).collect(),
                    reason: format!("expected a signature of Q_{}", base.n()),
                });
            }
            trees_with_signature(s, false, |t| base_trees.push(t.bits()))?;
        }
        None => {
            enumerate_spanning_trees(base, false, |t| base_trees.push(t.bits()))?;
        }
    }
    Ok(lift_all(cube, r, &base_trees))
}

/// Components of `E_{Q_n / R̄}(S)`.
pub fn contraction_slide_graph(cube: CubeContext, r: Vertex, sig: &Signature, exec: &Exec) -> Result<ComponentReport> {
    let trees = all_contraction_trees(cube, r, Some(sig))?;
    let comps = components_of(
        &trees,
        &ContractionSpace { cube, r },
        exec,
        super::explore::DEFAULT_CERTIFY_CAP,
    );
    Ok(ComponentReport {
        signature: sig.clone(),
        n: cube.n(),
        contraction: Some(to_list(r)),
        mode: ExploreMode::Exhaustive,
        exhaustive: true,
        partial: false,
        explored: trees.len() as u64,
        total: Some(trees.len() as u64),
        components: comps.iter().map(|c| info(cube, c, &[], false)).collect(),
        note: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::is_signature;
    use crate::slide::{explore_signature, ExploreOptions};
    use crate::tree::fixtures::set;

    fn cube(n: usize) -> CubeContext {
        CubeContext::new(n).unwrap()
    }

    fn all_signatures(k: usize) -> Vec<Signature> {
        let total = (1u64 << k) - 1;
        let mut out = Vec::new();
        let mut cur = vec![0u64; k];
        fn rec(pos: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Signature>) {
            if pos == cur.len() {
                if left == 0 && is_signature(cur) {
                    out.push(Signature::new(cur.iter().map(|&a| a as u32).collect()).unwrap());
                }
                return;
            }
            for a in 1..=left {
                cur[pos] = a;
                rec(pos + 1, left - a, cur, out);
            }
        }
        rec(0, total, &mut cur, &mut out);
        out
    }

    #[test]
    fn single_edge_contraction_is_a_cube() {
        let s = Signature::new(vec![1]).unwrap();
        let rep = contraction_slide_graph(cube(3), set(&[1]), &s, &Exec::sequential()).unwrap();
        assert_eq!(rep.sizes(), vec![4]);
        assert_eq!(rep.components[0].cube_dimension, Some(2));
        let rep = contraction_slide_graph(cube(2), set(&[1]), &s, &Exec::sequential()).unwrap();
        assert_eq!(rep.sizes(), vec![2]);
        assert_eq!(rep.components[0].cube_dimension, Some(1));
    }

    #[test]
    fn component_counts_match_the_base_cube() {
        for n in 2..=4 {
            let c = cube(n);
            for r in 1..c.full() {
                if r.count_ones() as usize > MAX_CONTRACTION_RANK {
                    continue;
                }
                for s in all_signatures(r.count_ones() as usize) {
                    let got = contraction_slide_graph(c, r, &s, &Exec::default()).unwrap();
                    let want = explore_signature(&s, &ExploreOptions::default()).unwrap();
                    assert_eq!(got.components.len(), want.components.len(), "n={n} R={r:#b} {s}");
                }
            }
        }
    }

    #[test]
    fn both_routes_agree() {
        for n in 2..=4 {
            let c = cube(n);
            for r in 1..c.full() {
                if r.count_ones() as usize > 2 {
                    continue;
                }
                for set in all_contraction_trees(c, r, None).unwrap() {
                    let t = ContractionTree::new(c, r, set).unwrap();
                    for e in t.edges() {
                        for i in (0..n).filter(|&i| i != c.direction(e)) {
                            assert_eq!(
                                is_contraction_slidable(&t, e, i).unwrap(),
                                is_contraction_slidable_direct(&t, e, i).unwrap()
                            );
                        }
                    }
                    for m in contraction_neighbors(&t) {
                        assert!(ContractionTree::new(c, r, m.result).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn counts_and_errors() {
        let c = cube(3);
        assert_eq!(all_contraction_trees(c, set(&[1, 2]), None).unwrap().len(), 4 * 8);
        assert!(all_contraction_trees(c, c.full(), None).is_err());
        let t = ContractionTree::new(c, set(&[1]), 1).unwrap();
        assert_eq!(is_contraction_slidable(&t, 0, 0), Err(Error::SameDirection { dir: 0 }));
        assert_eq!(is_contraction_slidable(&t, 2, 1), Err(Error::EdgeNotInTree { edge: 2 }));
    }
}
