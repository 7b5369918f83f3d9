//! Contraction–deletion enumeration of spanning trees.
//!
//! Edges are decided in id order. Including an edge that would close a cycle
//! is never tried, and excluding an edge is only allowed if the included and
//! still-undecided edges keep the cube connected, so every leaf of the search
//! is a spanning tree and no branch dies without output (unless a signature
//! budget cuts it off).

use super::{check_tree_dim, vertex_mask, EdgeSet, SpanningTree, MAX_TREE_DIM};
use crate::cube::{CubeContext, SAFE_DIM};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::signature::Signature;
use num_bigint::BigUint;
use rand::Rng;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

#[derive(Clone, Copy)]
struct State {
    pos: usize,
    inc: EdgeSet,
    total: u32,
    comp: [u8; 32],
    /// Per direction, lower endpoints of the edges still available.
    avail: [u32; MAX_TREE_DIM],
    cnt: [u32; MAX_TREE_DIM],
}

struct Search<'a> {
    cancel: Option<&'a AtomicBool>,
    cube: CubeContext,
    n: usize,
    half: usize,
    edges: usize,
    target: u32,
    budget: Option<[u32; MAX_TREE_DIM]>,
}

impl<'a> Search<'a> {
    fn new(cube: CubeContext, sig: Option<&Signature>) -> Self {
        let n = cube.n();
        let budget = sig.map(|s| {
            let mut b = [0; MAX_TREE_DIM];
            b[..n].copy_from_slice(s.entries());
            b
        });
        Search {
            cancel: None,
            cube,
            n,
            half: cube.vertex_count() / 2,
            edges: cube.edge_count(),
            target: cube.vertex_count() as u32 - 1,
            budget,
        }
    }

    fn root(&self) -> State {
        let mut comp = [0u8; 32];
        for (v, c) in comp.iter_mut().enumerate() {
            *c = v as u8;
        }
        let mut avail = [0u32; MAX_TREE_DIM];
        let all = vertex_mask(self.n);
        for (i, a) in avail.iter_mut().enumerate().take(self.n) {
            // vertices with bit i clear
            *a = (0..self.cube.vertex_count() as u32)
                .filter(|v| v >> i & 1 == 0)
                .fold(0, |m, v| m | 1 << v)
                & all;
        }
        State {
            pos: 0,
            inc: 0,
            total: 0,
            comp,
            avail,
            cnt: [0; MAX_TREE_DIM],
        }
    }

    /// Is `to` reachable from `from` through available edges?
    #[inline]
    fn reaches(&self, avail: &[u32; MAX_TREE_DIM], from: u32, to: u32) -> bool {
        let goal = 1u32 << to;
        let mut a = 1u32 << from;
        loop {
            let mut next = a;
            for (i, &l) in avail.iter().enumerate().take(self.n) {
                let s = 1u32 << i;
                next |= ((a & l) << s) | ((a >> s) & l);
            }
            if next & goal != 0 {
                return true;
            }
            if next == a {
                return false;
            }
            a = next;
        }
    }

    /// Depth-first search; `leaf` sees every completed tree, and also every
    /// state reaching position `stop`.
    fn dfs<F: FnMut(&State)>(&self, st: &State, stop: usize, leaf: &mut F) {
        if st.total == self.target || st.pos == stop {
            leaf(st);
            return;
        }
        if self.cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
            return;
        }
        debug_assert!(st.pos < self.edges);
        let e = st.pos;
        let i = e / self.half;
        let rank = e % self.half;
        let (a, b) = self.cube.endpoints(e);
        let (ca, cb) = (st.comp[a as usize], st.comp[b as usize]);
        let (inc_ok, exc_budget_ok) = match &self.budget {
            None => (true, true),
            Some(bud) => (st.cnt[i] < bud[i], st.cnt[i] + (self.half - rank - 1) as u32 >= bud[i]),
        };
        if ca != cb && inc_ok {
            let mut next = *st;
            next.pos += 1;
            next.inc |= 1u128 << e;
            next.total += 1;
            next.cnt[i] += 1;
            for c in next.comp.iter_mut() {
                if *c == cb {
                    *c = ca;
                }
            }
            self.dfs(&next, stop, leaf);
        }
        if exc_budget_ok {
            let mut avail = st.avail;
            avail[i] &= !(1u32 << a);
            if ca == cb || self.reaches(&avail, a, b) {
                let mut next = *st;
                next.pos += 1;
                next.avail = avail;
                self.dfs(&next, stop, leaf);
            }
        }
    }

    fn split_states(&self) -> Vec<State> {
        let stop = self.edges * 3 / 8;
        let mut out = Vec::new();
        self.dfs(&self.root(), stop, &mut |s| out.push(*s));
        out
    }

    fn run_from<F: FnMut(EdgeSet)>(&self, st: &State, f: &mut F) {
        self.dfs(st, usize::MAX, &mut |s| f(s.inc));
    }
}

fn gate(cube: CubeContext, allow_large: bool) -> Result<()> {
    check_tree_dim(cube)?;
    if cube.n() > SAFE_DIM && !allow_large {
        return Err(Error::DimensionUnsupported {
            n: cube.n(),
            max: SAFE_DIM,
            overridable: true,
        });
    }
    Ok(())
}

/// Streams every spanning tree of `Q_n` once; returns how many there were.
pub fn enumerate_spanning_trees(
    cube: CubeContext,
    allow_large: bool,
    mut sink: impl FnMut(SpanningTree),
) -> Result<u64> {
    gate(cube, allow_large)?;
    let s = Search::new(cube, None);
    let mut count = 0u64;
    s.run_from(&s.root(), &mut |bits| {
        count += 1;
        sink(SpanningTree::from_bits_unchecked(cube, bits));
    });
    Ok(count)
}

/// Streams the trees with signature `sig`.
pub fn trees_with_signature(sig: &Signature, allow_large: bool, mut sink: impl FnMut(SpanningTree)) -> Result<u64> {
    let cube = CubeContext::new(sig.n())?;
    gate(cube, allow_large)?;
    let s = Search::new(cube, Some(sig));
    let mut count = 0u64;
    s.run_from(&s.root(), &mut |bits| {
        count += 1;
        sink(SpanningTree::from_bits_unchecked(cube, bits));
    });
    Ok(count)
}

/// Splits the search at its top-level decisions and folds each piece
/// independently. The per-piece accumulators come back in search order, so
/// concatenating them reproduces the sequential stream.
pub fn fold_trees<A, I, F>(
    cube: CubeContext,
    sig: Option<&Signature>,
    allow_large: bool,
    exec: &Exec,
    init: I,
    fold: F,
) -> Result<Vec<A>>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, EdgeSet) + Sync + Send,
{
    gate(cube, allow_large)?;
    if let Some(s) = sig {
        if s.n() != cube.n() {
            return Err(Error::InvalidSignature {
                entries: s.entries().iter().map(|&a| a as u64).collect(),
                reason: format!("length differs from n = {}", cube.n()),
            });
        }
    }
    let search = Search::new(cube, sig);
    let states = search.split_states();
    Ok(exec.map(&states, |st| {
        let mut acc = init();
        search.run_from(st, &mut |bits| fold(&mut acc, bits));
        acc
    }))
}

pub fn count_spanning_trees(cube: CubeContext, allow_large: bool, exec: &Exec) -> Result<u64> {
    let parts = fold_trees(cube, None, allow_large, exec, || 0u64, |c, _| *c += 1)?;
    Ok(parts.into_iter().sum())
}

/// All trees with signature `sig`, sorted by edge bitvector.
pub fn collect_trees_with_signature(sig: &Signature, allow_large: bool, exec: &Exec) -> Result<Vec<EdgeSet>> {
    let cube = CubeContext::new(sig.n())?;
    let parts = fold_trees(cube, Some(sig), allow_large, exec, Vec::new, |v, t| v.push(t))?;
    let mut all: Vec<EdgeSet> = parts.into_iter().flatten().collect();
    all.sort_unstable();
    Ok(all)
}

/// Like [`collect_trees_with_signature`], but gives up (returning `None`)
/// as soon as more than `cap` trees have been found.
pub fn collect_trees_capped(sig: &Signature, allow_large: bool, exec: &Exec, cap: u64) -> Result<Option<Vec<EdgeSet>>> {
    let cube = CubeContext::new(sig.n())?;
    gate(cube, allow_large)?;
    let cancel = AtomicBool::new(false);
    let found = AtomicU64::new(0);
    let mut search = Search::new(cube, Some(sig));
    search.cancel = Some(&cancel);
    let states = search.split_states();
    let parts = exec.map(&states, |st| {
        let mut acc = Vec::new();
        search.run_from(st, &mut |bits| {
            if found.fetch_add(1, Ordering::Relaxed) >= cap {
                cancel.store(true, Ordering::Relaxed);
            } else {
                acc.push(bits);
            }
        });
        acc
    });
    if cancel.load(Ordering::Relaxed) {
        return Ok(None);
    }
    let mut all: Vec<EdgeSet> = parts.into_iter().flatten().collect();
    all.sort_unstable();
    Ok(Some(all))
}

/// `2^(2^n - n - 1) * prod_k k^C(n,k)`.
pub fn spanning_tree_formula(n: usize) -> BigUint {
    let mut total = BigUint::from(1u32) << ((1usize << n) - n - 1);
    let mut binom = BigUint::from(1u32);
    for k in 1..=n {
        binom = binom * BigUint::from(n - k + 1) / BigUint::from(k);
        let exp: u32 = binom.clone().try_into().expect("binomial fits for supported n");
        total *= BigUint::from(k).pow(exp);
    }
    total
}

/// A uniformly random spanning tree (Wilson's algorithm).
pub fn random_spanning_tree<R: Rng + ?Sized>(cube: CubeContext, rng: &mut R) -> SpanningTree {
    let v = cube.vertex_count();
    let n = cube.n();
    let mut in_tree = vec![false; v];
    let mut next = vec![0u32; v];
    in_tree[0] = true;
    let mut set = 0u128;
    for start in 0..v {
        let mut u = start;
        while !in_tree[u] {
            next[u] = u as u32 ^ (1 << rng.gen_range(0..n));
            u = next[u] as usize;
        }
        let mut u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            let w = next[u];
            let d = (u as u32 ^ w).trailing_zeros() as usize;
            set |= 1u128 << cube.edge_id(u as u32 & w, d);
            u = w as usize;
        }
    }
    SpanningTree::from_bits_unchecked(cube, set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::is_spanning_tree;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::{HashMap, HashSet};

    fn cube(n: usize) -> CubeContext {
        CubeContext::new(n).unwrap()
    }

    #[test]
    fn capped_collection() {
        let exec = Exec::default();
        let s = Signature::new(vec![1, 3, 3]).unwrap();
        let full = collect_trees_with_signature(&s, false, &exec).unwrap();
        assert_eq!(
            collect_trees_capped(&s, false, &exec, full.len() as u64).unwrap(),
            Some(full.clone())
        );
        assert_eq!(
            collect_trees_capped(&s, false, &exec, full.len() as u64 - 1).unwrap(),
            None
        );
    }

    #[test]
    fn formula_values() {
        assert_eq!(spanning_tree_formula(1), BigUint::from(1u32));
        assert_eq!(spanning_tree_formula(2), BigUint::from(4u32));
        assert_eq!(spanning_tree_formula(3), BigUint::from(384u32));
        assert_eq!(spanning_tree_formula(4), BigUint::from(42_467_328u64));
    }

    #[test]
    fn small_censuses_are_distinct_trees() {
        for n in 1..=3 {
            let c = cube(n);
            let mut seen = HashSet::new();
            let count = enumerate_spanning_trees(c, false, |t| {
                assert!(is_spanning_tree(c, t.bits()));
                assert!(seen.insert(t.bits()));
            })
            .unwrap();
            assert_eq!(BigUint::from(count), spanning_tree_formula(n));
        }
    }

    #[test]
    fn matches_brute_force_subsets_q2_q3() {
        // all 12-choose-7 edge subsets of Q3
        let c = cube(3);
        let brute = (0u32..1 << 12)
            .filter(|m| m.count_ones() == 7 && is_spanning_tree(c, *m as u128))
            .count();
        assert_eq!(brute, 384);
    }

    #[test]
    fn per_signature_counts_q3() {
        let mut by_sig: HashMap<Vec<u32>, u64> = HashMap::new();
        enumerate_spanning_trees(cube(3), false, |t| {
            *by_sig.entry(t.direction_counts()).or_default() += 1;
        })
        .unwrap();
        for (sig, count) in &by_sig {
            let s = Signature::new(sig.clone()).unwrap();
            let filtered = trees_with_signature(&s, false, |t| assert_eq!(&t.direction_counts(), sig)).unwrap();
            assert_eq!(filtered, *count);
        }
        assert_eq!(by_sig[&vec![1, 2, 4]], 16);
        assert_eq!(by_sig[&vec![2, 1, 4]], 16);
        assert_eq!(by_sig[&vec![1, 3, 3]], 32);
        assert_eq!(by_sig[&vec![2, 2, 3]], 64);
        assert_eq!(by_sig.len(), 12);
    }

    #[test]
    fn split_search_matches_sequential_stream() {
        let c = cube(3);
        let mut seq = Vec::new();
        enumerate_spanning_trees(c, false, |t| seq.push(t.bits())).unwrap();
        for workers in [1, 3] {
            let exec = Exec::with_workers(workers);
            let parts = fold_trees(c, None, false, &exec, Vec::new, |v, t| v.push(t)).unwrap();
            let flat: Vec<u128> = parts.into_iter().flatten().collect();
            assert_eq!(flat, seq);
        }
    }

    #[test]
    fn dimension_gate() {
        assert!(matches!(
            count_spanning_trees(cube(5), false, &Exec::sequential()),
            Err(Error::DimensionUnsupported { overridable: true, .. })
        ));
        assert!(matches!(
            count_spanning_trees(cube(6), true, &Exec::sequential()),
            Err(Error::DimensionUnsupported { overridable: false, .. })
        ));
    }

    #[test]
    fn supersaturated_q4_count() {
        let s = Signature::supersaturated(4);
        let got = collect_trees_with_signature(&s, false, &Exec::default()).unwrap();
        assert_eq!(got.len(), 1 << 11);
        assert!(got.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn wilson_trees_are_spanning() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=5 {
            let c = cube(n);
            for _ in 0..200 {
                assert!(is_spanning_tree(c, random_spanning_tree(c, &mut rng).bits()));
            }
        }
        // roughly uniform on Q2: four trees
        let c = cube(2);
        let mut hits: HashMap<u128, u32> = HashMap::new();
        for _ in 0..4000 {
            *hits.entry(random_spanning_tree(c, &mut rng).bits()).or_default() += 1;
        }
        assert_eq!(hits.len(), 4);
        assert!(hits.values().all(|&h| (800..1200).contains(&h)));
    }
}
