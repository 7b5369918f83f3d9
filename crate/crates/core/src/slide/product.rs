//! The product structure of the slide graph of trees reducing over `R`:
//! `Ψ_R` identifies `E(Red_R)` with `E_{Q_n/R̄} □ (E_{n-|R|})^{□ 2^|R|}`.

use super::contraction::{all_contraction_trees, contraction_neighbors, ContractionSpace};
use super::explore::{explicit_graph, TreeSpace};
use super::{is_slidable, neighbors};
use crate::cube::{deposit, extract, to_list, CubeContext, EdgeId, SimpleGraph, Vertex};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::signature::Signature;
use crate::tree::{
    collect_trees_with_signature, enumerate_spanning_trees, random_spanning_tree, rank_in, to_local, ContractionTree,
    Decomposition, EdgeSet, SpanningTree, TreeJson,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A move or vertex that broke an expected correspondence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub tree: TreeJson,
    pub other: Option<TreeJson>,
    pub edge: Option<EdgeId>,
    pub direction: Option<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentShape {
    pub size: u64,
    pub cube_dimension: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductCertificate {
    pub n: usize,
    pub r: Vec<usize>,
    /// Set when only the trees of one signature were compared.
    pub signature: Option<Signature>,
    pub trees: u64,
    pub product_vertices: u64,
    pub slide_edges: u64,
    pub product_edges: u64,
    pub bijective: bool,
    pub edges_preserved: bool,
    pub components: Vec<ComponentShape>,
    pub counterexample: Option<Counterexample>,
}

impl ProductCertificate {
    pub fn holds(&self) -> bool {
        self.bijective && self.edges_preserved && self.counterexample.is_none()
    }
}

fn shapes(g: &SimpleGraph) -> Vec<ComponentShape> {
    let (count, labels) = g.component_labels();
    let mut groups = vec![Vec::new(); count];
    for (v, &l) in labels.iter().enumerate() {
        groups[l].push(v);
    }
    groups
        .iter()
        .map(|vs| ComponentShape {
            size: vs.len() as u64,
            cube_dimension: g.induced(vs).hypercube_dimension(),
        })
        .collect()
}

/// Index of `Ψ_R(T)` in the mixed-radix numbering of the product, with the
/// contraction factor most significant and then the parts for increasing
/// `X`.
fn product_index(d: &Decomposition, contr: &[EdgeSet], parts: &[EdgeSet]) -> Option<usize> {
    let mut idx = contr.binary_search(&d.contraction.bits()).ok()?;
    for p in &d.parts {
        idx = idx * parts.len() + parts.binary_search(&p.bits()).ok()?;
    }
    Some(idx)
}

fn check(
    cube: CubeContext,
    r: Vertex,
    signature: Option<Signature>,
    trees: &[EdgeSet],
    contr: &[EdgeSet],
    parts: &[EdgeSet],
    exec: &Exec,
) -> Result<ProductCertificate> {
    let local = CubeContext::new(cube.n() - r.count_ones() as usize)?;
    let g = explicit_graph(&TreeSpace(cube), trees);
    let c = explicit_graph(&ContractionSpace { cube, r }, contr);
    let e = explicit_graph(&TreeSpace(local), parts);
    let mut p = c;
    for _ in 0..1u32 << r.count_ones() {
        p = p.cartesian_product(&e);
    }
    let phi = exec.map(trees, |&t| {
        let d = SpanningTree::from_bits_unchecked(cube, t).decompose(r).ok()?;
        product_index(&d, contr, parts)
    });
    let json = |t: EdgeSet| TreeJson::from_bits(cube, t);
    let mut counterexample = None;
    if let Some(k) = phi.iter().position(Option::is_none) {
        counterexample = Some(Counterexample {
            tree: json(trees[k]),
            other: None,
            edge: None,
            direction: None,
            reason: "decomposition falls outside the product".into(),
        });
    }
    let mut seen: Vec<usize> = phi.iter().flatten().copied().collect();
    seen.sort_unstable();
    let injective = seen.len() == trees.len() && seen.windows(2).all(|w| w[0] < w[1]);
    if !injective && counterexample.is_none() {
        counterexample = Some(Counterexample {
            tree: json(trees[0]),
            other: None,
            edge: None,
            direction: None,
            reason: "two trees share a decomposition".into(),
        });
    }
    let bijective = injective && trees.len() == p.vertex_count();
    let mut mapped = counterexample.is_none();
    if mapped {
        for (u, v) in g.edge_list() {
            let (a, b) = (phi[u].unwrap(), phi[v].unwrap());
            if !p.has_edge(a, b) {
                mapped = false;
                counterexample = Some(Counterexample {
                    tree: json(trees[u]),
                    other: Some(json(trees[v])),
                    edge: None,
                    direction: None,
                    reason: "slide with no matching product edge".into(),
                });
                break;
            }
        }
    }
    let edges_preserved = mapped && g.edge_count() == p.edge_count();
    if mapped && !edges_preserved && counterexample.is_none() {
        counterexample = Some(Counterexample {
            tree: json(trees[0]),
            other: None,
            edge: None,
            direction: None,
            reason: format!("{} slides but {} product edges", g.edge_count(), p.edge_count()),
        });
    }
    Ok(ProductCertificate {
        n: cube.n(),
        r: to_list(r),
        signature,
        trees: trees.len() as u64,
        product_vertices: p.vertex_count() as u64,
        slide_edges: g.edge_count() as u64,
        product_edges: p.edge_count() as u64,
        bijective,
        edges_preserved,
        components: shapes(&g),
        counterexample,
    })
}

fn all_trees(cube: CubeContext) -> Result<Vec<EdgeSet>> {
    let mut out = Vec::new();
    enumerate_spanning_trees(cube, false, |t| out.push(t.bits()))?;
    out.sort_unstable();
    Ok(out)
}

/// Exhaustive check that `Ψ_R` is an isomorphism from `E(Red_R)` onto the
/// product graph. Only for `n ≤ 3`; use [`verify_product_sampled`] beyond.
pub fn verify_product_isomorphism(cube: CubeContext, r: Vertex, exec: &Exec) -> Result<ProductCertificate> {
    cube.check_proper(r)?;
    if cube.n() > 3 {
        return Err(Error::DimensionUnsupported {
            n: cube.n(),
            max: 3,
            overridable: false,
        });
    }
    let trees: Vec<EdgeSet> = all_trees(cube)?
        .into_iter()
        .filter(|&t| {
            SpanningTree::from_bits_unchecked(cube, t)
                .reduces_over(r)
                .unwrap_or(false)
        })
        .collect();
    let contr = all_contraction_trees(cube, r, None)?;
    let local = CubeContext::new(cube.n() - r.count_ones() as usize)?;
    let parts = all_trees(local)?;
    check(cube, r, None, &trees, &contr, &parts, exec)
}

/// The saturated case: for `S` saturated above `r` with `R` its `r`
/// smallest directions, `E(S)` against `E_{Q_n/R̄}(S|_R) □ E(S_{n-r})^{□ 2^r}`,
/// where every part carries the supersaturated signature.
pub fn verify_saturated_product(sig: &Signature, exec: &Exec) -> Result<ProductCertificate> {
    let class = sig.classify();
    let rr = class.saturated_above.ok_or_else(|| Error::InvalidSignature {
        entries: sig.entries().iter().map(|&a| a as u64).collect(),
        reason: "not saturated".into(),
    })?;
    let cube = CubeContext::new(sig.n())?;
    let r = sig.canonical().prefix_mask(rr);
    let free = cube.full() & !r;
    let head = Signature::new(sig.restrict(r))?;
    let part_sig = Signature::new(sig.restrict(free).iter().map(|&a| a >> rr).collect())?;
    let trees = collect_trees_with_signature(sig, false, exec)?;
    let contr = all_contraction_trees(cube, r, Some(&head))?;
    let parts = collect_trees_with_signature(&part_sig, false, exec)?;
    check(cube, r, Some(sig.clone()), &trees, &contr, &parts, exec)
}

/// `N = 2^r (2^(n-r) - (n-r) - 1)`, the dimension of the cube factor.
pub fn saturated_cube_factor(n: usize, r: usize) -> u64 {
    let m = n - r;
    (1u64 << r) * ((1u64 << m) - m as u64 - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledProductCheck {
    pub n: usize,
    pub r: Vec<usize>,
    pub samples: u64,
    pub moves: u64,
    pub mismatches: u64,
    pub counterexample: Option<Counterexample>,
}

fn random_decomposition(cube: CubeContext, r: Vertex, rng: &mut ChaCha8Rng) -> Decomposition {
    let base = CubeContext::new(r.count_ones() as usize).expect("R is nonempty");
    let free = cube.full() & !r;
    let m = free.count_ones();
    let local = CubeContext::new(m as usize).expect("R is proper");
    let p = random_spanning_tree(base, rng);
    let skeleton = ContractionTree::from_bits_unchecked(cube, r, 0);
    let mut set = 0u128;
    for be in p.edges() {
        let y = deposit(rng.gen_range(0..1u32 << m), free);
        set |= 1u128 << skeleton.lift(be, y);
    }
    Decomposition {
        contraction: ContractionTree::from_bits_unchecked(cube, r, set),
        parts: (0..1 << r.count_ones())
            .map(|_| random_spanning_tree(local, rng))
            .collect(),
    }
}

/// Compares the slide neighbourhood of random trees in `Red_R` with the
/// neighbourhood predicted by the product: one contraction move or one move
/// inside a single part.
pub fn verify_product_sampled(cube: CubeContext, r: Vertex, samples: u64, seed: u64) -> Result<SampledProductCheck> {
    cube.check_proper(r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut moves = 0;
    let mut mismatches = 0;
    let mut counterexample = None;
    for _ in 0..samples {
        let d = random_decomposition(cube, r, &mut rng);
        let t = d.recompose()?;
        let mut actual: Vec<EdgeSet> = neighbors(&t).iter().map(|m| m.result).collect();
        let mut predicted = Vec::new();
        for m in contraction_neighbors(&d.contraction) {
            let mut d2 = d.clone();
            d2.contraction = ContractionTree::from_bits_unchecked(cube, r, m.result);
            predicted.push(d2.recompose()?.bits());
        }
        for k in 0..d.parts.len() {
            for m in neighbors(&d.parts[k]) {
                let mut d2 = d.clone();
                d2.parts[k] = SpanningTree::from_bits_unchecked(d.parts[k].cube(), m.result);
                predicted.push(d2.recompose()?.bits());
            }
        }
        actual.sort_unstable();
        predicted.sort_unstable();
        moves += actual.len() as u64;
        if actual != predicted || t.decompose(r)? != d {
            mismatches += 1;
            if counterexample.is_none() {
                counterexample = Some(Counterexample {
                    tree: t.to_json(),
                    other: None,
                    edge: None,
                    direction: None,
                    reason: format!("{} slides, {} predicted by the product", actual.len(), predicted.len()),
                });
            }
        }
    }
    Ok(SampledProductCheck {
        n: cube.n(),
        r: to_list(r),
        samples,
        moves,
        mismatches,
        counterexample,
    })
}

/// Tally of the slidability case table for trees reducing over `R`, keyed
/// by whether the edge direction `j` and the slide direction `i` lie in `R`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    /// `[j∉R i∉R, j∉R i∈R, j∈R i∉R, j∈R i∈R]`.
    pub cases: [u64; 4],
    pub mismatches: u64,
    pub counterexample: Option<Counterexample>,
}

/// The predicted slidability of `e` in direction `i`, from the pieces of
/// `Ψ_R(T)` alone.
pub fn predicted_slidable(d: &Decomposition, e: EdgeId, i: usize) -> Result<bool> {
    let ct = &d.contraction;
    let cube = ct.cube();
    let r = ct.r();
    let free = cube.full() & !r;
    let j = cube.direction(e);
    Ok(match (r >> j & 1 == 1, r >> i & 1 == 1) {
        (false, true) => false,
        (false, false) => {
            let x = cube.lower(e) & r;
            let part = &d.parts[extract(x, r) as usize];
            is_slidable(part, to_local(cube, free, part.cube(), e), rank_in(free, i))?
        }
        (true, false) => true,
        (true, true) => is_slidable(&ct.projection(), ct.base_edge(e), rank_in(r, i))?,
    })
}

/// Checks the case table on every tree of `trees`, over every set `R` it
/// reduces over.
pub fn slide_table_check(trees: &[SpanningTree]) -> Result<TableReport> {
    let mut rep = TableReport::default();
    for t in trees {
        let cube = t.cube();
        for r in t.signature().reducing_sets() {
            let d = t.decompose(r)?;
            for e in t.edges() {
                let j = cube.direction(e);
                for i in (0..cube.n()).filter(|&i| i != j) {
                    let case = 2 * (r >> j & 1) as usize + (r >> i & 1) as usize;
                    rep.cases[case] += 1;
                    if is_slidable(t, e, i)? != predicted_slidable(&d, e, i)? {
                        rep.mismatches += 1;
                        if rep.counterexample.is_none() {
                            rep.counterexample = Some(Counterexample {
                                tree: t.to_json(),
                                other: None,
                                edge: Some(e),
                                direction: Some(i + 1),
                                reason: format!("table case {case} with R = {:?}", to_list(r)),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}
