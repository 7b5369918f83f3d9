//! Connected components of edge-slide graphs by breadth-first search over
//! the implicit graph.
//!
//! Two visited-set layouts are used. When every vertex is known in advance
//! (exhaustive mode) the vertices are a sorted array and a vertex is marked
//! through its binary-search index. Otherwise (seeded from the upright
//! trees) a hash set split into mutex-guarded shards receives insertions
//! from all workers. In both cases insertion is idempotent and each BFS
//! level is sorted before use, so the components and their discovery order
//! do not depend on the worker count.

use super::checkpoint::{Checkpoint, FinishedComponent, OpenComponent, DEGREE_MIXED, DEGREE_UNSET};
use super::for_each_slide;
use super::witness::{subtree_fingerprint, Fingerprint};
use crate::cube::{CubeContext, SimpleGraph, SAFE_DIM};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::section::for_each_section_with_signature;
use crate::signature::Signature;
use crate::tree::{
    check_tree_dim, collect_trees_capped, collect_trees_with_signature, EdgeSet, SpanningTree, TreeJson,
};
use serde::{Deserialize, Serialize};
use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;

/// Estimated bytes per tree for the sorted vertex array plus marks.
pub const EXHAUSTIVE_BYTES_PER_TREE: u64 = 25;
/// Estimated bytes per entry of the sharded hash set.
pub const HASHED_BYTES_PER_TREE: u64 = 40;
/// Components up to this size get a hypercube certificate attempt.
pub const DEFAULT_CERTIFY_CAP: usize = 1 << 16;

const SHARDS: usize = 64;

static INTERRUPTED: AtomicBool = AtomicBool::new(false);

/// Process-wide flag polled between BFS levels; setting it makes the search
/// write its checkpoint (if any) and return a partial report.
pub fn interrupt_flag() -> &'static AtomicBool {
    &INTERRUPTED
}

/// An implicit graph on edge bitvectors.
pub trait SlideSpace: Sync {
    fn neighbors(&self, v: EdgeSet, out: &mut Vec<EdgeSet>);

    /// Vertices counted in [`FinishedComponent::upright`].
    fn marked(&self, _v: EdgeSet) -> bool {
        false
    }
}

/// The edge-slide graph of `Q_n`; marked vertices are the upright trees.
pub struct TreeSpace(pub CubeContext);

impl SlideSpace for TreeSpace {
    fn neighbors(&self, v: EdgeSet, out: &mut Vec<EdgeSet>) {
        for_each_slide(self.0, v, |_, _, w| out.push(w));
    }

    fn marked(&self, v: EdgeSet) -> bool {
        SpanningTree::from_bits_unchecked(self.0, v).is_upright()
    }
}

trait Visited: Sync {
    fn insert(&self, v: EdgeSet) -> bool;
    fn contains(&self, v: EdgeSet) -> bool;
    fn len(&self) -> usize;
}

struct IndexVisited<'a> {
    keys: &'a [EdgeSet],
    seen: Vec<AtomicBool>,
    count: AtomicUsize,
}

impl Visited for IndexVisited<'_> {
    fn insert(&self, v: EdgeSet) -> bool {
        let k = self.keys.binary_search(&v).expect("slides stay inside the vertex set");
        let fresh = !self.seen[k].swap(true, Ordering::Relaxed);
        if fresh {
            self.count.fetch_add(1, Ordering::Relaxed);
        }
        fresh
    }

    fn contains(&self, v: EdgeSet) -> bool {
        self.keys
            .binary_search(&v)
            .is_ok_and(|k| self.seen[k].load(Ordering::Relaxed))
    }

    fn len(&self) -> usize {
        self.count.load(Ordering::Relaxed)
    }
}

struct ShardedVisited {
    shards: Vec<Mutex<HashSet<EdgeSet>>>,
    count: AtomicUsize,
}

impl ShardedVisited {
    fn new() -> Self {
        ShardedVisited {
            shards: (0..SHARDS).map(|_| Mutex::new(HashSet::new())).collect(),
            count: AtomicUsize::new(0),
        }
    }

    fn shard(v: EdgeSet) -> usize {
        let mut h = DefaultHasher::new();
        v.hash(&mut h);
        h.finish() as usize % SHARDS
    }

    fn sorted_runs(&self) -> Vec<Vec<EdgeSet>> {
        self.shards
            .iter()
            .map(|s| {
                let mut run: Vec<EdgeSet> = s.lock().unwrap().iter().copied().collect();
                run.sort_unstable();
                run
            })
            .collect()
    }
}

impl Visited for ShardedVisited {
    fn insert(&self, v: EdgeSet) -> bool {
        let fresh = self.shards[Self::shard(v)].lock().unwrap().insert(v);
        if fresh {
            self.count.fetch_add(1, Ordering::Relaxed);
        }
        fresh
    }

    fn contains(&self, v: EdgeSet) -> bool {
        self.shards[Self::shard(v)].lock().unwrap().contains(&v)
    }

    fn len(&self) -> usize {
        self.count.load(Ordering::Relaxed)
    }
}

enum Stop {
    Cap,
    Interrupt,
}

enum Step {
    Done(FinishedComponent),
    Suspended(OpenComponent, Stop),
}

struct Engine<'a, S, V> {
    space: &'a S,
    visited: &'a V,
    exec: &'a Exec,
    certify_cap: usize,
    /// Largest number of visited entries allowed.
    limit: Option<usize>,
    interruptible: bool,
}

impl<S: SlideSpace, V: Visited> Engine<'_, S, V> {
    fn open(&self, seed: EdgeSet) -> OpenComponent {
        OpenComponent {
            size: 1,
            representative: seed,
            upright: 0,
            degree: DEGREE_UNSET,
            frontier: vec![seed],
            members: (self.certify_cap >= 1).then(|| vec![seed]),
        }
    }

    fn grow(&self, mut c: OpenComponent) -> Step {
        loop {
            if c.frontier.is_empty() {
                return Step::Done(self.finish(c));
            }
            if self.interruptible && INTERRUPTED.load(Ordering::Relaxed) {
                return Step::Suspended(c, Stop::Interrupt);
            }
            let lists = self.exec.map(&c.frontier, |&t| {
                let mut out = Vec::new();
                self.space.neighbors(t, &mut out);
                (out, self.space.marked(t))
            });
            let mut cands: Vec<EdgeSet> = lists.iter().flat_map(|(l, _)| l.iter().copied()).collect();
            if let Some(m) = self.limit {
                cands.sort_unstable();
                cands.dedup();
                let unseen = self.exec.map(&cands, |&v| !self.visited.contains(v));
                let grow = unseen.iter().filter(|&&u| u).count();
                if self.visited.len() + grow > m {
                    return Step::Suspended(c, Stop::Cap);
                }
            }
            for (l, m) in &lists {
                c.upright += *m as u64;
                let d = l.len() as u32;
                c.degree = match c.degree {
                    DEGREE_UNSET => d,
                    x if x == d => d,
                    _ => DEGREE_MIXED,
                };
            }
            let fresh = self.exec.map(&cands, |&v| self.visited.insert(v));
            let mut next: Vec<EdgeSet> = cands
                .into_iter()
                .zip(fresh)
                .filter_map(|(v, f)| f.then_some(v))
                .collect();
            next.sort_unstable();
            c.size += next.len() as u64;
            if let Some(&m) = next.first() {
                c.representative = c.representative.min(m);
            }
            if c.size as usize > self.certify_cap {
                c.members = None;
            } else if let Some(m) = &mut c.members {
                m.extend_from_slice(&next);
            }
            c.frontier = next;
        }
    }

    fn finish(&self, c: OpenComponent) -> FinishedComponent {
        let k = c.size.trailing_zeros();
        let cube_dimension = match &c.members {
            Some(m) if c.size.is_power_of_two() && c.degree == k => {
                let g = explicit_graph(self.space, m);
                g.is_hypercube(k as usize).then_some(k)
            }
            _ => None,
        };
        FinishedComponent {
            size: c.size,
            representative: c.representative,
            upright: c.upright,
            degree: c.degree,
            cube_dimension,
        }
    }
}

/// The subgraph induced on `members`, with vertices in sorted order.
pub fn explicit_graph<S: SlideSpace + ?Sized>(space: &S, members: &[EdgeSet]) -> SimpleGraph {
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    let mut g = SimpleGraph::new(sorted.len());
    let mut buf = Vec::new();
    for (u, &t) in sorted.iter().enumerate() {
        buf.clear();
        space.neighbors(t, &mut buf);
        for w in &buf {
            if let Ok(v) = sorted.binary_search(w) {
                if u < v {
                    g.add_edge(u, v);
                }
            }
        }
    }
    g
}

/// Components of the graph `space` restricted to the sorted vertex list
/// `vertices`, which must be closed under `space`'s neighbourhoods. Seeds
/// are taken in order, so each representative is the least vertex of its
/// component and components appear in the order of their representatives.
pub fn components_of<S: SlideSpace>(
    vertices: &[EdgeSet],
    space: &S,
    exec: &Exec,
    certify_cap: usize,
) -> Vec<FinishedComponent> {
    debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
    let visited = IndexVisited {
        keys: vertices,
        seen: (0..vertices.len()).map(|_| AtomicBool::new(false)).collect(),
        count: AtomicUsize::new(0),
    };
    let engine = Engine {
        space,
        visited: &visited,
        exec,
        certify_cap,
        limit: None,
        interruptible: false,
    };
    let mut out = Vec::new();
    for &seed in vertices {
        if visited.insert(seed) {
            match engine.grow(engine.open(seed)) {
                Step::Done(c) => out.push(c),
                Step::Suspended(..) => unreachable!("no limit and not interruptible"),
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExploreMode {
    /// Enumerate every tree with the signature, then label components.
    Exhaustive,
    /// Seed the search at the upright trees with the signature. Every
    /// component contains one, so this finds all components without
    /// enumerating the trees first.
    FromUpright,
}

impl fmt::Display for ExploreMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExploreMode::Exhaustive => "exhaustive",
            ExploreMode::FromUpright => "from-upright",
        })
    }
}

impl FromStr for ExploreMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(ExploreMode::Exhaustive),
            "from-upright" | "from_upright" => Ok(ExploreMode::FromUpright),
            _ => Err(Error::InvalidConstraint(format!("unknown exploration mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExploreOptions {
    pub mode: ExploreMode,
    /// Memory budget in bytes for the visited set; `None` is unlimited.
    pub mem_cap: Option<u64>,
    pub exec: Exec,
    /// Where from-upright searches save and resume their state.
    pub checkpoint: Option<PathBuf>,
    pub certify_cap: usize,
    pub allow_large: bool,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions {
            mode: ExploreMode::Exhaustive,
            mem_cap: None,
            exec: Exec::default(),
            checkpoint: None,
            certify_cap: DEFAULT_CERTIFY_CAP,
            allow_large: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentInfo {
    pub size: u64,
    /// Least edge bitvector in the component.
    pub representative: TreeJson,
    /// Number of upright trees in the component.
    pub upright: u64,
    pub regular_degree: Option<u32>,
    /// `k` when the component has been certified isomorphic to `Q_k`.
    pub cube_dimension: Option<u32>,
    /// One fingerprint per reducing set of the signature.
    pub fingerprints: Vec<Fingerprint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub signature: Signature,
    pub n: usize,
    /// For contraction graphs, the set `R` (1-based).
    pub contraction: Option<Vec<usize>>,
    pub mode: ExploreMode,
    /// Every vertex was enumerated and assigned to a component.
    pub exhaustive: bool,
    /// The search stopped early (memory cap or interrupt).
    pub partial: bool,
    /// Vertices in the reported components.
    pub explored: u64,
    /// Number of vertices of the graph, when it was enumerated.
    pub total: Option<u64>,
    pub components: Vec<ComponentInfo>,
    pub note: Option<String>,
}

impl ComponentReport {
    pub fn sizes(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.size).collect()
    }

    /// `Some` only when the report covers the whole graph.
    pub fn is_connected(&self) -> Option<bool> {
        (!self.partial).then_some(self.components.len() == 1)
    }
}

pub(crate) fn info(cube: CubeContext, c: &FinishedComponent, reducing: &[u32], tree: bool) -> ComponentInfo {
    let fingerprints = if tree {
        let t = SpanningTree::from_bits_unchecked(cube, c.representative);
        reducing
            .iter()
            .map(|&r| subtree_fingerprint(&t, r).expect("the signature reduces over r"))
            .collect()
    } else {
        Vec::new()
    };
    ComponentInfo {
        size: c.size,
        representative: TreeJson::from_bits(cube, c.representative),
        upright: c.upright,
        regular_degree: (c.degree < DEGREE_MIXED).then_some(c.degree),
        cube_dimension: c.cube_dimension,
        fingerprints,
    }
}

/// Components of `E(S)`.
pub fn explore_signature(sig: &Signature, opts: &ExploreOptions) -> Result<ComponentReport> {
    let cube = CubeContext::new(sig.n())?;
    check_tree_dim(cube)?;
    match opts.mode {
        ExploreMode::Exhaustive => {
            if cube.n() > SAFE_DIM {
                return Err(Error::DimensionUnsupported {
                    n: cube.n(),
                    max: SAFE_DIM,
                    overridable: false,
                });
            }
            let trees = match opts.mem_cap {
                None => collect_trees_with_signature(sig, false, &opts.exec)?,
                Some(cap) => match collect_trees_capped(sig, false, &opts.exec, cap / EXHAUSTIVE_BYTES_PER_TREE)? {
                    Some(t) => t,
                    None => {
                        let mut r = from_upright(cube, sig, opts)?;
                        let fallback = "tree list exceeds the memory cap; explored from the upright trees instead";
                        r.note = Some(match r.note {
                            Some(n) => format!("{fallback}; {n}"),
                            None => fallback.into(),
                        });
                        return Ok(r);
                    }
                },
            };
            let comps = components_of(&trees, &TreeSpace(cube), &opts.exec, opts.certify_cap);
            let reducing = sig.reducing_sets();
            Ok(ComponentReport {
                signature: sig.clone(),
                n: cube.n(),
                contraction: None,
                mode: ExploreMode::Exhaustive,
                exhaustive: true,
                partial: false,
                explored: trees.len() as u64,
                total: Some(trees.len() as u64),
                components: comps.iter().map(|c| info(cube, c, &reducing, true)).collect(),
                note: None,
            })
        }
        ExploreMode::FromUpright => from_upright(cube, sig, opts),
    }
}

fn from_upright(cube: CubeContext, sig: &Signature, opts: &ExploreOptions) -> Result<ComponentReport> {
    let mut seeds = Vec::new();
    let mut failed = None;
    for_each_section_with_signature(sig, opts.allow_large, |s| match s.to_tree() {
        Ok(t) => seeds.push(t.bits()),
        Err(e) => failed = Some(e),
    })?;
    if let Some(e) = failed {
        return Err(e);
    }
    seeds.sort_unstable();

    let visited = ShardedVisited::new();
    let mut finished = Vec::new();
    let mut open = None;
    let mut seed_pos = 0usize;
    if let Some(path) = opts.checkpoint.as_ref().filter(|p| p.exists()) {
        let ck = Checkpoint::load(path)?;
        if ck.n as usize != cube.n() || ck.signature != sig.entries() {
            return Err(Error::Checkpoint(format!(
                "{} belongs to signature {:?}, not {}",
                path.display(),
                ck.signature,
                sig
            )));
        }
        for v in ck.shards.into_iter().flatten() {
            visited.insert(v);
        }
        finished = ck.finished;
        open = ck.open;
        seed_pos = ck.seed_pos as usize;
    }

    let engine = Engine {
        space: &TreeSpace(cube),
        visited: &visited,
        exec: &opts.exec,
        certify_cap: opts.certify_cap,
        limit: opts.mem_cap.map(|c| (c / HASHED_BYTES_PER_TREE) as usize),
        interruptible: true,
    };
    let mut stopped = None;
    loop {
        let current = match open.take() {
            Some(c) => c,
            None => {
                let Some(&seed) = seeds.get(seed_pos) else { break };
                seed_pos += 1;
                if !visited.insert(seed) {
                    continue;
                }
                engine.open(seed)
            }
        };
        match engine.grow(current) {
            Step::Done(c) => finished.push(c),
            Step::Suspended(c, why) => {
                open = Some(c);
                stopped = Some(why);
                break;
            }
        }
    }

    let mut note = None;
    if let Some(why) = &stopped {
        let reason = match why {
            Stop::Cap => "memory cap reached",
            Stop::Interrupt => "interrupted",
        };
        note = Some(match &opts.checkpoint {
            Some(path) => {
                let ck = Checkpoint {
                    n: cube.n() as u32,
                    signature: sig.entries().to_vec(),
                    shards: visited.sorted_runs(),
                    seed_pos: seed_pos as u64,
                    finished: finished.clone(),
                    open: open.clone(),
                };
                ck.save(path)?;
                format!("{reason}; state saved to {}", path.display())
            }
            None => reason.to_string(),
        });
    } else if let Some(path) = &opts.checkpoint {
        if path.exists() {
            std::fs::remove_file(path).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
        }
    }
    let reducing = sig.reducing_sets();
    Ok(ComponentReport {
        signature: sig.clone(),
        n: cube.n(),
        contraction: None,
        mode: ExploreMode::FromUpright,
        exhaustive: false,
        partial: stopped.is_some(),
        explored: finished.iter().map(|c| c.size).sum(),
        total: None,
        components: finished.iter().map(|c| info(cube, c, &reducing, true)).collect(),
        note,
    })
}

/// The slide graph of the component containing `start`, refusing components
/// with more than `limit` vertices. Vertices are named by their bitvector in
/// hexadecimal.
pub fn component_graph(cube: CubeContext, start: EdgeSet, limit: usize) -> Result<SimpleGraph> {
    let members = component_members(cube, start, limit)?;
    let mut g = explicit_graph(&TreeSpace(cube), &members);
    g.set_names(members.iter().map(|b| format!("{b:#x}")).collect());
    Ok(g)
}

/// The sorted vertices of the component of `E(S)` containing `start`,
/// refusing components with more than `limit` vertices.
pub fn component_members(cube: CubeContext, start: EdgeSet, limit: usize) -> Result<Vec<EdgeSet>> {
    let space = TreeSpace(cube);
    let mut seen = HashSet::from([start]);
    let mut frontier = vec![start];
    let mut buf = Vec::new();
    while let Some(t) = frontier.pop() {
        buf.clear();
        space.neighbors(t, &mut buf);
        for &w in &buf {
            if seen.insert(w) {
                if seen.len() > limit {
                    return Err(Error::ResourceCap(format!("component has more than {limit} vertices")));
                }
                frontier.push(w);
            }
        }
    }
    let mut members: Vec<EdgeSet> = seen.into_iter().collect();
    members.sort_unstable();
    Ok(members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::enumerate_ordered_signatures;
    use crate::tree::trees_with_signature;

    fn sig(e: &[u32]) -> Signature {
        Signature::new(e.to_vec()).unwrap()
    }

    fn opts(mode: ExploreMode) -> ExploreOptions {
        ExploreOptions {
            mode,
            ..Default::default()
        }
    }

    #[test]
    fn q3_components() {
        for mode in [ExploreMode::Exhaustive, ExploreMode::FromUpright] {
            let r = explore_signature(&sig(&[1, 2, 4]), &opts(mode)).unwrap();
            assert_eq!(r.sizes(), vec![16]);
            assert_eq!(r.components[0].cube_dimension, Some(4));
            let r = explore_signature(&sig(&[1, 3, 3]), &opts(mode)).unwrap();
            assert_eq!(r.sizes(), vec![16, 16]);
            assert!(r.components.iter().all(|c| c.cube_dimension == Some(4)));
            assert_ne!(r.components[0].fingerprints, r.components[1].fingerprints);
            let r = explore_signature(&sig(&[2, 2, 3]), &opts(mode)).unwrap();
            assert_eq!(r.sizes(), vec![64]);
            assert_eq!(r.is_connected(), Some(true));
        }
    }

    #[test]
    fn q3_every_component_has_an_upright_tree_and_sizes_sum() {
        let cube = CubeContext::new(3).unwrap();
        let mut perms = Vec::new();
        for a in 1..=4u32 {
            for b in 1..=4u32 {
                for c in 1..=4u32 {
                    if a + b + c == 7 && crate::signature::is_signature(&[a as u64, b as u64, c as u64]) {
                        perms.push(vec![a, b, c]);
                    }
                }
            }
        }
        assert_eq!(perms.len(), 12);
        for p in perms {
            let s = sig(&p);
            let r = explore_signature(&s, &opts(ExploreMode::Exhaustive)).unwrap();
            let count = trees_with_signature(&s, false, |_| {}).unwrap();
            assert_eq!(r.sizes().iter().sum::<u64>(), count);
            assert!(r.components.iter().all(|c| c.upright >= 1));
            let u = explore_signature(&s, &opts(ExploreMode::FromUpright)).unwrap();
            let mut a = r.sizes();
            let mut b = u.sizes();
            a.sort();
            b.sort();
            assert_eq!(a, b);
            let _ = cube;
        }
    }

    #[test]
    fn worker_count_does_not_change_the_report() {
        for s in enumerate_ordered_signatures(3) {
            for mode in [ExploreMode::Exhaustive, ExploreMode::FromUpright] {
                let mut a = opts(mode);
                a.exec = Exec::sequential();
                let mut b = opts(mode);
                b.exec = Exec::with_workers(4);
                assert_eq!(explore_signature(&s, &a).unwrap(), explore_signature(&s, &b).unwrap());
            }
        }
    }

    #[test]
    fn memory_cap_falls_back_and_then_goes_partial() {
        let s = sig(&[2, 2, 3]);
        let mut o = opts(ExploreMode::Exhaustive);
        o.mem_cap = Some(10 * EXHAUSTIVE_BYTES_PER_TREE);
        let r = explore_signature(&s, &o).unwrap();
        assert_eq!(r.mode, ExploreMode::FromUpright);
        assert!(r.partial && !r.exhaustive);
        assert_eq!(r.is_connected(), None);
        o.mem_cap = Some(64 * EXHAUSTIVE_BYTES_PER_TREE);
        let r = explore_signature(&s, &o).unwrap();
        assert_eq!(r.mode, ExploreMode::Exhaustive);
        assert_eq!(r.sizes(), vec![64]);
        o.mode = ExploreMode::FromUpright;
        o.mem_cap = Some(64 * HASHED_BYTES_PER_TREE);
        let r = explore_signature(&s, &o).unwrap();
        assert!(!r.partial);
        assert_eq!(r.sizes(), vec![64]);
    }

    #[test]
    fn checkpoint_resume_matches_uninterrupted_run() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.ckpt");
        let s = sig(&[1, 3, 3]);
        let full = explore_signature(&s, &opts(ExploreMode::FromUpright)).unwrap();
        let mut cap = 4;
        let mut o = opts(ExploreMode::FromUpright);
        o.checkpoint = Some(path.clone());
        loop {
            o.mem_cap = Some(cap * HASHED_BYTES_PER_TREE);
            let r = explore_signature(&s, &o).unwrap();
            if !r.partial {
                assert_eq!(r.components, full.components);
                assert!(!path.exists());
                break;
            }
            assert!(path.exists());
            cap += 4;
        }
        let other = sig(&[2, 2, 3]);
        o.mem_cap = Some(4 * HASHED_BYTES_PER_TREE);
        assert!(explore_signature(&other, &o).unwrap().partial);
        o.mem_cap = None;
        assert!(matches!(explore_signature(&s, &o), Err(Error::Checkpoint(_))));
    }

    #[test]
    fn dot_dump_of_a_component() {
        let cube = CubeContext::new(3).unwrap();
        let s = sig(&[1, 2, 4]);
        let r = explore_signature(&s, &opts(ExploreMode::Exhaustive)).unwrap();
        let t = SpanningTree::from_json(&r.components[0].representative).unwrap();
        let g = component_graph(cube, t.bits(), 100).unwrap();
        assert_eq!(g.hypercube_dimension(), Some(4));
        assert!(g.to_dot("E").contains("--"));
        assert!(component_graph(cube, t.bits(), 10).is_err());
    }

    #[test]
    fn exhaustive_mode_refuses_q5() {
        let s = Signature::supersaturated(5);
        assert!(explore_signature(&s, &opts(ExploreMode::Exhaustive)).is_err());
    }
}
