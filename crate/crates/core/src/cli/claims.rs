//! The checks run by `verify`, one entry per claim.
//!
//! Every check runs at the dimension bound of its [`Ctx`]: `n = 3` is the
//! fast tier, `n = 4` the full one. Results contain no timings, so the
//! output of a run depends only on the configuration.

use crate::cube::{elements, max_elem, submasks, to_list, CubeContext, EdgeId, Vertex};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::section::{all_sections, count_upright, find_section, Section};
use crate::signature::{all_signatures, enumerate_ordered_signatures, is_signature, ClassKind, Signature};
use crate::slide::{
    component_members, contraction_slide_graph, disconnection_witness, explore_signature, is_slidable,
    saturated_cube_factor, slide_table_check, test_conjecture_with, verify_product_isomorphism, verify_product_sampled,
    verify_saturated_product, ComponentReport, ExploreMode, ExploreOptions, RowStatus, HASHED_BYTES_PER_TREE,
    MAX_CONTRACTION_RANK,
};
use crate::tree::{
    bits, direction_mask, enumerate_spanning_trees, fold_trees, random_spanning_tree, spanning_tree_formula, EdgeSet,
    SpanningTree,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Pass,
    Fail,
    /// The check stopped at a resource limit before reaching a verdict.
    Partial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub title: String,
    pub status: ClaimStatus,
    pub evidence: Value,
    /// Always present when `status` is `fail`.
    pub counterexample: Option<Value>,
}

/// What a check returns; the registry adds the id and title.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    status: ClaimStatus,
    evidence: Value,
    counterexample: Option<Value>,
}

impl Outcome {
    pub fn pass(evidence: Value) -> Self {
        Outcome {
            status: ClaimStatus::Pass,
            evidence,
            counterexample: None,
        }
    }

    pub fn partial(evidence: Value) -> Self {
        Outcome {
            status: ClaimStatus::Partial,
            evidence,
            counterexample: None,
        }
    }

    pub fn fail(evidence: Value, counterexample: Value) -> Self {
        Outcome {
            status: ClaimStatus::Fail,
            evidence,
            counterexample: Some(counterexample),
        }
    }

    /// Pass unless a counterexample turned up.
    fn check(evidence: Value, counterexample: Option<Value>) -> Self {
        match counterexample {
            Some(c) => Self::fail(evidence, c),
            None => Self::pass(evidence),
        }
    }
}

pub struct Claim {
    pub id: &'static str,
    pub title: &'static str,
    /// Part of the `fast` selection.
    pub fast: bool,
    /// Expected wall-clock seconds at `n = 4` on one core.
    pub budget_secs: u64,
    check: fn(&Ctx) -> Result<Outcome>,
}

impl Claim {
    pub fn run(&self, ctx: &Ctx) -> ClaimResult {
        let out = match (self.check)(ctx) {
            Ok(o) => o,
            Err(e @ (Error::ResourceCap(_) | Error::DimensionUnsupported { .. })) => {
                Outcome::partial(json!({ "stopped": e.to_string() }))
            }
            Err(e) => Outcome::fail(json!({}), json!({ "error": e.to_string() })),
        };
        ClaimResult {
            id: self.id.to_string(),
            title: self.title.to_string(),
            status: out.status,
            evidence: out.evidence,
            counterexample: out.counterexample,
        }
    }
}

/// Shared state for a run of checks: the dimension bound, resources, and
/// the census data reused between claims.
pub struct Ctx {
    pub n: usize,
    pub exec: Exec,
    pub mem_cap: Option<u64>,
    reports: Mutex<BTreeMap<Signature, ComponentReport>>,
    histograms: Mutex<BTreeMap<usize, BTreeMap<Signature, u64>>>,
}

impl Ctx {
    pub fn new(n: usize, exec: Exec, mem_cap: Option<u64>) -> Self {
        Ctx {
            n: n.clamp(2, 4),
            exec,
            mem_cap,
            reports: Mutex::new(BTreeMap::new()),
            histograms: Mutex::new(BTreeMap::new()),
        }
    }

    fn dims(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    /// Component report of `E(S)`, computed once per signature.
    pub fn explore(&self, sig: &Signature) -> Result<ComponentReport> {
        let mut cache = self.reports.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(r) = cache.get(sig) {
            return Ok(r.clone());
        }
        let opts = ExploreOptions {
            mode: ExploreMode::Exhaustive,
            mem_cap: self.mem_cap,
            exec: self.exec.clone(),
            ..Default::default()
        };
        let r = explore_signature(sig, &opts)?;
        cache.insert(sig.clone(), r.clone());
        Ok(r)
    }

    /// Number of spanning trees of `Q_n` per signature, from one pass over
    /// all trees.
    pub fn histogram(&self, n: usize) -> Result<BTreeMap<Signature, u64>> {
        let mut cache = self.histograms.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(h) = cache.get(&n) {
            return Ok(h.clone());
        }
        let cube = CubeContext::new(n)?;
        let masks: Vec<EdgeSet> = (0..n).map(|i| direction_mask(cube, 1 << i)).collect();
        let parts = fold_trees(cube, None, false, &self.exec, HashMap::<u64, u64>::new, |acc, t| {
            let key = masks.iter().fold(0u64, |k, &m| k << 8 | (t & m).count_ones() as u64);
            *acc.entry(key).or_default() += 1;
        })?;
        let mut out = BTreeMap::new();
        for (key, c) in parts.into_iter().flatten() {
            let entries: Vec<u32> = (0..n).rev().map(|i| (key >> (8 * i) & 0xff) as u32).collect();
            *out.entry(Signature::new(entries)?).or_default() += c;
        }
        cache.insert(n, out.clone());
        Ok(out)
    }

    fn search_limit(&self) -> usize {
        self.mem_cap
            .map_or(usize::MAX, |c| (c / HASHED_BYTES_PER_TREE) as usize)
    }
}

fn sig(e: &[u32]) -> Signature {
    Signature::new(e.to_vec()).expect("constant signature")
}

fn sig_str(s: &Signature) -> String {
    s.to_string()
}

fn random_member<R: Rng>(x: Vertex, rng: &mut R) -> usize {
    elements(x)
        .nth(rng.gen_range(0..x.count_ones() as usize))
        .expect("x is nonempty")
}

fn shuffled<R: Rng>(s: &Signature, rng: &mut R) -> Signature {
    let mut e = s.entries().to_vec();
    e.shuffle(rng);
    sig(&e)
}

fn constraint_json(cons: &[(Vertex, usize)]) -> Value {
    cons.iter().map(|&(x, v)| json!([to_list(x), v + 1])).collect()
}

fn satisfies(sec: &Section, s: &Signature, cons: &[(Vertex, usize)]) -> bool {
    sec.signature() == *s && cons.iter().all(|&(x, v)| sec.get(x) == v)
}

/// Expects a section meeting `cons`; returns the counterexample otherwise.
fn expect_section(s: &Signature, cons: &[(Vertex, usize)]) -> Result<Option<Value>> {
    Ok(match find_section(s, cons)? {
        Some(sec) if satisfies(&sec, s, cons) => None,
        Some(_) => Some(
            json!({ "signature": sig_str(s), "constraints": constraint_json(cons), "reason": "returned section violates the request" }),
        ),
        None => {
            Some(json!({ "signature": sig_str(s), "constraints": constraint_json(cons), "reason": "no section found" }))
        }
    })
}

fn expect_absent(s: &Signature, cons: &[(Vertex, usize)]) -> Result<Option<Value>> {
    Ok(find_section(s, cons)?.map(|sec| {
        json!({
            "signature": sig_str(s),
            "constraints": constraint_json(cons),
            "section": sec.to_json(),
            "reason": "section exists but should not",
        })
    }))
}

fn partial_if(reports: &[ComponentReport], evidence: Value, cex: Option<Value>) -> Outcome {
    if cex.is_none() && reports.iter().any(|r| r.partial) {
        let skipped: Vec<String> = reports
            .iter()
            .filter(|r| r.partial)
            .map(|r| sig_str(&r.signature))
            .collect();
        let mut ev = evidence;
        ev["skipped"] = json!(skipped);
        return Outcome::partial(ev);
    }
    Outcome::check(evidence, cex)
}

fn census(ctx: &Ctx) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut cex = None;
    for n in ctx.dims() {
        let counted: u64 = ctx.histogram(n)?.values().sum();
        let formula = spanning_tree_formula(n);
        if formula != num_bigint::BigUint::from(counted) && cex.is_none() {
            cex = Some(json!({ "n": n, "enumerated": counted, "formula": formula.to_string() }));
        }
        rows.push(json!({ "n": n, "enumerated": counted, "formula": formula.to_string() }));
    }
    Ok(Outcome::check(json!({ "counts": rows }), cex))
}

fn signature_counts(ctx: &Ctx) -> Result<Outcome> {
    let mut cex = None;
    let h3 = ctx.histogram(3)?;
    let expected: BTreeMap<Vec<u32>, u64> = [(vec![1, 2, 4], 16), (vec![1, 3, 3], 32), (vec![2, 2, 3], 64)].into();
    for (s, &c) in &h3 {
        let want = expected[s.sorted().entries()];
        if c != want && cex.is_none() {
            cex = Some(json!({ "signature": sig_str(s), "count": c, "expected": want }));
        }
    }
    if h3.len() != 12 && cex.is_none() {
        cex = Some(json!({ "reason": "expected 12 signatures of Q_3", "found": h3.len() }));
    }
    let mut evidence = json!({ "n3": h3.iter().map(|(s, c)| json!([sig_str(s), c])).collect::<Vec<_>>() });
    if ctx.n >= 4 {
        let h4 = ctx.histogram(4)?;
        let mut by_class: BTreeMap<Signature, BTreeSet<u64>> = BTreeMap::new();
        for (s, &c) in &h4 {
            by_class.entry(s.sorted()).or_default().insert(c);
        }
        for (s, counts) in &by_class {
            if counts.len() != 1 && cex.is_none() {
                cex = Some(
                    json!({ "signature": sig_str(s), "reason": "permutations have different counts", "counts": counts }),
                );
            }
        }
        evidence["n4_ordered"] = by_class
            .iter()
            .map(|(s, c)| json!([sig_str(s), c.iter().next().copied().unwrap_or(0)]))
            .collect();
    }
    Ok(Outcome::check(evidence, cex))
}

const Q4_TABLE: [[u32; 4]; 18] = [
    [1, 2, 4, 8],
    [1, 2, 5, 7],
    [1, 3, 5, 6],
    [2, 2, 4, 7],
    [2, 3, 4, 6],
    [3, 3, 3, 6],
    [1, 3, 3, 8],
    [1, 2, 6, 6],
    [1, 4, 4, 6],
    [2, 2, 5, 6],
    [2, 3, 5, 5],
    [3, 3, 4, 5],
    [2, 2, 3, 8],
    [1, 3, 4, 7],
    [1, 4, 5, 5],
    [2, 3, 3, 7],
    [2, 4, 4, 5],
    [3, 4, 4, 4],
];

fn signature_tables(_: &Ctx) -> Result<Outcome> {
    let mut cex = None;
    let got3: Vec<Vec<u32>> = enumerate_ordered_signatures(3)
        .iter()
        .map(|s| s.entries().to_vec())
        .collect();
    if got3 != vec![vec![1, 2, 4], vec![1, 3, 3], vec![2, 2, 3]] {
        cex = Some(json!({ "n": 3, "got": got3 }));
    }
    let got4: Vec<Vec<u32>> = enumerate_ordered_signatures(4)
        .iter()
        .map(|s| s.entries().to_vec())
        .collect();
    let mut want4: Vec<Vec<u32>> = Q4_TABLE.iter().map(|r| r.to_vec()).collect();
    want4.sort();
    if got4 != want4 && cex.is_none() {
        cex = Some(json!({ "n": 4, "got": got4, "expected": want4 }));
    }
    // the table is laid out in rows of six; column c holds entries c, c+6, c+12
    let mut classes = Vec::new();
    for (k, row) in Q4_TABLE.iter().enumerate() {
        let s = sig(row);
        let class = s.classify();
        let col = k % 6;
        let want = match col {
            0 if row == &[1, 3, 3, 8] => ClassKind::StrictlyReducible,
            0 => ClassKind::QuasiIrreducible,
            1 | 2 => ClassKind::StrictlyReducible,
            _ => ClassKind::Irreducible,
        };
        let reducing = class.reducing_prefix_sizes.clone();
        let reducing_ok = match col {
            0 => reducing.contains(&3),
            1 | 2 => reducing.contains(&1),
            _ => reducing.is_empty(),
        };
        let saturated_ok = (col == 0) == class.saturated_above.is_some();
        if (class.kind != want || !reducing_ok || !saturated_ok) && cex.is_none() {
            cex = Some(json!({ "signature": sig_str(&s), "class": class, "expected": want }));
        }
        classes.push(json!([sig_str(&s), class.kind]));
    }
    let unsat = [
        ([1, 2, 4, 8], vec![1]),
        ([1, 3, 3, 8], vec![1, 3, 3]),
        ([2, 2, 3, 8], vec![2, 2, 3]),
    ];
    for (s, u) in unsat {
        let got = sig(&s).unsaturated_part();
        if got.entries() != u.as_slice() && cex.is_none() {
            cex = Some(json!({ "signature": sig_str(&sig(&s)), "unsaturated": sig_str(&got), "expected": u }));
        }
    }
    let low = [
        (vec![1], ClassKind::Irreducible),
        (vec![1, 2], ClassKind::QuasiIrreducible),
    ]
    .into_iter()
    .chain([
        (vec![1, 2, 4], ClassKind::QuasiIrreducible),
        (vec![1, 3, 3], ClassKind::StrictlyReducible),
        (vec![2, 2, 3], ClassKind::Irreducible),
    ]);
    for (s, want) in low {
        let got = sig(&s).classify().kind;
        if got != want && cex.is_none() {
            cex = Some(json!({ "signature": s, "class": got, "expected": want }));
        }
    }
    Ok(Outcome::check(
        json!({ "n3": got3, "n4": got4.len(), "q4_classes": classes }),
        cex,
    ))
}

fn q7_classification(_: &Ctx) -> Result<Outcome> {
    let rows: [(&[u32], &[usize], &[u32], ClassKind, Option<usize>); 4] = [
        (
            &[2, 2, 4, 8, 16, 32, 63],
            &[],
            &[2, 2, 4, 8, 16, 32, 63],
            ClassKind::Irreducible,
            None,
        ),
        (
            &[2, 2, 3, 9, 15, 33, 63],
            &[3, 5],
            &[2, 2, 3, 9, 15, 33, 63],
            ClassKind::StrictlyReducible,
            None,
        ),
        (
            &[2, 2, 4, 8, 15, 32, 64],
            &[5, 6],
            &[2, 2, 4, 8, 15],
            ClassKind::QuasiIrreducible,
            Some(5),
        ),
        (
            &[2, 2, 3, 9, 15, 32, 64],
            &[3, 5, 6],
            &[2, 2, 3, 9, 15],
            ClassKind::StrictlyReducible,
            Some(5),
        ),
    ];
    let mut cex = None;
    let mut out = Vec::new();
    for (e, reducing, unsat, kind, sat) in rows {
        let s = sig(e);
        let c = s.classify();
        let u = s.unsaturated_part();
        if (c.reducing_prefix_sizes != reducing || u.entries() != unsat || c.kind != kind || c.saturated_above != sat)
            && cex.is_none()
        {
            cex = Some(json!({ "signature": sig_str(&s), "classification": c, "unsaturated": sig_str(&u) }));
        }
        out.push(json!({ "signature": sig_str(&s), "class": c.kind, "reducing_prefix_sizes": c.reducing_prefix_sizes, "unsaturated": sig_str(&u) }));
    }
    Ok(Outcome::check(json!({ "signatures": out }), cex))
}

fn slide_graphs_q3(ctx: &Ctx) -> Result<Outcome> {
    let expect: [(&[u32], &[u64], Option<u32>); 3] = [
        (&[1, 2, 4], &[16], Some(4)),
        (&[1, 3, 3], &[16, 16], Some(4)),
        (&[2, 2, 3], &[64], None),
    ];
    let mut cex = None;
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for (e, sizes, dim) in expect {
        let r = ctx.explore(&sig(e))?;
        let dims_ok = dim.is_none_or(|d| r.components.iter().all(|c| c.cube_dimension == Some(d)));
        if (r.sizes() != sizes || !dims_ok) && cex.is_none() && !r.partial {
            cex = Some(json!({ "signature": e, "sizes": r.sizes(), "expected": sizes }));
        }
        rows.push(json!({ "signature": e, "sizes": r.sizes(), "cube_dimensions": r.components.iter().map(|c| c.cube_dimension).collect::<Vec<_>>() }));
        reports.push(r);
    }
    let h3 = ctx.histogram(3)?;
    for s in all_signatures(3) {
        let r = ctx.explore(&s)?;
        let base = ctx.explore(&s.sorted())?;
        if !r.partial && (r.explored != h3[&s] || r.components.len() != base.components.len()) && cex.is_none() {
            cex = Some(json!({ "signature": sig_str(&s), "sizes": r.sizes(), "trees": h3[&s] }));
        }
        reports.push(r);
    }
    Ok(partial_if(&reports, json!({ "components": rows }), cex))
}

fn supersat_cube(ctx: &Ctx) -> Result<Outcome> {
    let mut cex = None;
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for n in 2..=ctx.n {
        let s = Signature::supersaturated(n);
        let k = (1u32 << n) - n as u32 - 1;
        let r = ctx.explore(&s)?;
        let ok = r.sizes() == [1u64 << k] && r.components[0].cube_dimension == Some(k);
        if !ok && !r.partial && cex.is_none() {
            cex = Some(json!({ "signature": sig_str(&s), "sizes": r.sizes(), "expected_dimension": k }));
        }
        rows.push(json!({ "signature": sig_str(&s), "sizes": r.sizes(), "cube_dimension": r.components.first().and_then(|c| c.cube_dimension) }));
        reports.push(r);
    }
    Ok(partial_if(&reports, json!({ "components": rows }), cex))
}

fn product_isomorphism(ctx: &Ctx) -> Result<Outcome> {
    let mut cex = None;
    let mut rows = Vec::new();
    for n in 2..=ctx.n.min(3) {
        let cube = CubeContext::new(n)?;
        for r in 1..cube.full() {
            let cert = verify_product_isomorphism(cube, r, &ctx.exec)?;
            if !cert.holds() && cex.is_none() {
                cex = Some(serde_json::to_value(&cert).expect("serialisable"));
            }
            rows.push(json!({
                "n": n,
                "r": to_list(r),
                "trees": cert.trees,
                "slide_edges": cert.slide_edges,
                "product_edges": cert.product_edges,
                "components": cert.components.len(),
            }));
        }
    }
    let red1 = verify_product_isomorphism(CubeContext::new(3)?, 1, &ctx.exec)?;
    let four_q4 = red1.components.len() == 4
        && red1
            .components
            .iter()
            .all(|c| c.size == 16 && c.cube_dimension == Some(4));
    if !four_q4 && cex.is_none() {
        cex = Some(json!({ "r": [1], "components": red1.components, "expected": "four copies of Q_4" }));
    }
    let mut sampled = Vec::new();
    if ctx.n >= 4 {
        let cube = CubeContext::new(4)?;
        for r in 1..cube.full() {
            let s = verify_product_sampled(cube, r, 200, 0x5eed ^ r as u64)?;
            if s.mismatches > 0 && cex.is_none() {
                cex = Some(serde_json::to_value(&s).expect("serialisable"));
            }
            sampled.push(json!({ "r": s.r, "samples": s.samples, "moves": s.moves, "mismatches": s.mismatches }));
        }
    }
    Ok(Outcome::check(
        json!({ "exhaustive": rows, "sampled_n4": sampled }),
        cex,
    ))
}

fn slidability_table(ctx: &Ctx) -> Result<Outcome> {
    let mut trees = Vec::new();
    for n in 2..=3 {
        enumerate_spanning_trees(CubeContext::new(n)?, false, |t| trees.push(t))?;
    }
    if ctx.n >= 4 {
        let cube = CubeContext::new(4)?;
        for s in [sig(&[1, 3, 3, 8]), sig(&[2, 2, 3, 8]), sig(&[1, 2, 5, 7])] {
            for t in crate::tree::collect_trees_with_signature(&s, false, &ctx.exec)? {
                trees.push(SpanningTree::from_bits_unchecked(cube, t));
            }
        }
    }
    let rep = slide_table_check(&trees)?;
    let cex = rep
        .counterexample
        .as_ref()
        .map(|c| serde_json::to_value(c).expect("serialisable"));
    Ok(Outcome::check(
        json!({ "trees": trees.len(), "cases": rep.cases, "mismatches": rep.mismatches }),
        cex,
    ))
}

fn saturated_product(ctx: &Ctx) -> Result<Outcome> {
    let mut cex = None;
    let mut rows = Vec::new();
    for n in 2..=ctx.n {
        for s in enumerate_ordered_signatures(n) {
            let Some(r) = s.classify().saturated_above else {
                continue;
            };
            let cert = verify_saturated_product(&s, &ctx.exec)?;
            let cube = CubeContext::new(n)?;
            let mask = s.canonical().prefix_mask(r);
            let head = sig(&s.restrict(mask));
            let contr = contraction_slide_graph(cube, mask, &head, &ctx.exec)?;
            let dim = saturated_cube_factor(n, r);
            let mut want: Vec<u64> = contr.sizes().iter().map(|c| c << dim).collect();
            want.sort_unstable();
            let mut got: Vec<u64> = cert.components.iter().map(|c| c.size).collect();
            got.sort_unstable();
            if (!cert.holds() || got != want) && cex.is_none() {
                cex = Some(json!({ "signature": sig_str(&s), "sizes": got, "expected": want, "holds": cert.holds() }));
            }
            rows.push(json!({ "signature": sig_str(&s), "r": r, "cube_factor": dim, "sizes": got }));
        }
    }
    Ok(Outcome::check(json!({ "signatures": rows }), cex))
}

fn contraction_components(ctx: &Ctx) -> Result<Outcome> {
    let mut cex = None;
    let mut cases = 0u64;
    let mut reports = Vec::new();
    for n in 2..=ctx.n {
        let cube = CubeContext::new(n)?;
        for r in 1..cube.full() {
            let k = r.count_ones() as usize;
            if k > MAX_CONTRACTION_RANK {
                continue;
            }
            for s in all_signatures(k) {
                let got = contraction_slide_graph(cube, r, &s, &ctx.exec)?;
                let base = ctx.explore(&s)?;
                cases += 1;
                if !base.partial && got.components.len() != base.components.len() && cex.is_none() {
                    cex = Some(
                        json!({ "n": n, "r": to_list(r), "signature": sig_str(&s), "contraction": got.sizes(), "base": base.sizes() }),
                    );
                }
                reports.push(base);
            }
        }
    }
    Ok(partial_if(&reports, json!({ "cases": cases }), cex))
}

fn disconnected(ctx: &Ctx) -> Result<Outcome> {
    let mut cex = None;
    let mut rows = Vec::new();
    let mut partial = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 3..=ctx.n {
        let cube = CubeContext::new(n)?;
        for base in enumerate_ordered_signatures(n) {
            if base.classify().kind != ClassKind::StrictlyReducible {
                continue;
            }
            for s in [base.clone(), shuffled(&base, &mut rng)] {
                let w = disconnection_witness(&s)?;
                let separated = match component_members(cube, w.first.bits(), ctx.search_limit()) {
                    Ok(members) => Some(members.binary_search(&w.second.bits()).is_err()),
                    Err(Error::ResourceCap(_)) => None,
                    Err(e) => return Err(e),
                };
                if separated.is_none() {
                    partial.push(sig_str(&s));
                }
                if (!w.separated() || separated == Some(false)) && cex.is_none() {
                    cex = Some(serde_json::to_value(&w).expect("serialisable"));
                }
                rows.push(json!({ "signature": sig_str(&s), "r": to_list(w.r), "different_components": separated }));
            }
        }
    }
    let evidence = json!({ "witnesses": rows });
    if cex.is_none() && !partial.is_empty() {
        let mut ev = evidence;
        ev["skipped"] = json!(partial);
        return Ok(Outcome::partial(ev));
    }
    Ok(Outcome::check(evidence, cex))
}

fn reducible_sections(ctx: &Ctx) -> Result<Outcome> {
    let mut cex = None;
    let mut sections = 0u64;
    let mut cases = 0u64;
    for n in 2..=ctx.n {
        for sec in all_sections(n) {
            sections += 1;
            let s = sec.signature();
            for r in s.reducing_sets() {
                cases += 1;
                let bad = (1..1u32 << n).find(|&x| (r >> sec.get(x) & 1 == 1) != (x & !r == 0));
                if let Some(x) = bad {
                    if cex.is_none() {
                        cex = Some(json!({ "section": sec.to_json(), "r": to_list(r), "x": to_list(x) }));
                    }
                }
            }
        }
    }
    // randomised: asking for a value in R on a set leaving R is impossible
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let pool: Vec<Signature> = (3..=5)
        .flat_map(enumerate_ordered_signatures)
        .filter(|s| s.classify().is_reducible())
        .collect();
    let mut random = 0;
    while random < 500 {
        let s = shuffled(pool.choose(&mut rng).expect("nonempty pool"), &mut rng);
        let sets = s.reducing_sets();
        let r = *sets.choose(&mut rng).expect("reducible");
        let full = (1u32 << s.n()) - 1;
        let x = rng.gen_range(1..=full);
        if x & !r == 0 || x & r == 0 {
            continue;
        }
        random += 1;
        let v = random_member(x & r, &mut rng);
        if let Some(c) = expect_absent(&s, &[(x, v)])? {
            cex.get_or_insert(c);
        }
    }
    Ok(Outcome::check(
        json!({ "sections": sections, "section_reducing_pairs": cases, "random_find_section": random }),
        cex,
    ))
}

fn saturated_values(ctx: &Ctx) -> Result<Outcome> {
    let mut cex = None;
    let mut checked = 0u64;
    for n in 2..=ctx.n {
        for sec in all_sections(n) {
            let s = sec.signature();
            let Some(r) = s.classify().saturated_above else {
                continue;
            };
            checked += 1;
            // "max X" is taken in the sorted order of the directions
            let canon = s.canonical();
            let low = canon.prefix_mask(r);
            let top = |x: Vertex| {
                *canon
                    .order
                    .iter()
                    .rev()
                    .find(|&&d| x >> d & 1 == 1)
                    .expect("x is nonempty")
            };
            let bad = (1..1u32 << n).find(|&x| x & !low != 0 && sec.get(x) != top(x));
            if let (Some(x), None) = (bad, &cex) {
                cex = Some(json!({ "section": sec.to_json(), "r": r, "x": to_list(x) }));
            }
        }
    }
    Ok(Outcome::check(json!({ "sections": checked }), cex))
}

fn distinct_sets<R: Rng>(n: usize, k: usize, rng: &mut R) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::new();
    while out.len() < k {
        let x = rng.gen_range(1..1u32 << n);
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

fn excess_ell(_: &Ctx) -> Result<Outcome> {
    let mut cex = None;
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    let mut rows = Vec::new();
    for ell in 1..=2usize {
        let pool: Vec<Signature> = (2..=5)
            .flat_map(enumerate_ordered_signatures)
            .filter(|s| s.excess_vector()[..s.n() - 1].iter().all(|&e| e >= ell as u64))
            .collect();
        for _ in 0..500 {
            let s = shuffled(pool.choose(&mut rng).expect("nonempty pool"), &mut rng);
            let cons: Vec<(Vertex, usize)> = distinct_sets(s.n(), ell, &mut rng)
                .into_iter()
                .map(|x| (x, random_member(x, &mut rng)))
                .collect();
            if let Some(c) = expect_section(&s, &cons)? {
                cex.get_or_insert(c);
            }
        }
        rows.push(json!({ "ell": ell, "signatures": pool.len(), "cases": 500 }));
    }
    Ok(Outcome::check(json!({ "trials": rows }), cex))
}

fn specify_one(ctx: &Ctx) -> Result<Outcome> {
    let mut cex = None;
    let mut exhaustive = 0u64;
    for n in 1..=ctx.n {
        for s in all_signatures(n).into_iter().filter(|s| !s.classify().is_reducible()) {
            for x in 1..1u32 << n {
                for v in elements(x) {
                    exhaustive += 1;
                    if let Some(c) = expect_section(&s, &[(x, v)])? {
                        cex.get_or_insert(c);
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let pool: Vec<Signature> = enumerate_ordered_signatures(5)
        .into_iter()
        .filter(|s| !s.classify().is_reducible())
        .collect();
    for _ in 0..500 {
        let s = shuffled(pool.choose(&mut rng).expect("nonempty pool"), &mut rng);
        let x = rng.gen_range(1..1u32 << 5);
        let v = random_member(x, &mut rng);
        if let Some(c) = expect_section(&s, &[(x, v)])? {
            cex.get_or_insert(c);
        }
    }
    Ok(Outcome::check(
        json!({ "exhaustive": exhaustive, "random_n5": 500 }),
        cex,
    ))
}

/// Which hypotheses of the two-value theorem hold; directions 0-based.
fn two_value_conditions(s: &Signature, c: &[(Vertex, usize); 2]) -> (bool, bool) {
    let n = s.n();
    let ex = s.excess_vector();
    let top = c[0].1.max(c[1].1) + 1;
    let first = (top..n).all(|k| ex[k - 1] >= 2);
    let second = c[0].1 != c[1].1 && c.iter().any(|&(x, v)| max_elem(x) == v);
    (first, second)
}

fn for_each_constraint_pair(n: usize, mut f: impl FnMut([(Vertex, usize); 2]) -> Result<()>) -> Result<()> {
    let pairs: Vec<(Vertex, usize)> = (1..1u32 << n).flat_map(|x| elements(x).map(move |v| (x, v))).collect();
    for (k, &a) in pairs.iter().enumerate() {
        for &b in &pairs[k + 1..] {
            if a.0 != b.0 {
                f([a, b])?;
            }
        }
    }
    Ok(())
}

fn specify_two(_: &Ctx) -> Result<Outcome> {
    let mut cex = None;
    let mut counts = [0u64; 2];
    let irreducible = |n| -> Vec<Signature> {
        enumerate_ordered_signatures(n)
            .into_iter()
            .filter(|s| !s.classify().is_reducible())
            .collect()
    };
    for s in irreducible(4) {
        for_each_constraint_pair(4, |c| {
            let (first, second) = two_value_conditions(&s, &c);
            counts[0] += first as u64;
            counts[1] += second as u64;
            if first || second {
                if let Some(x) = expect_section(&s, &c)? {
                    cex.get_or_insert(x);
                }
            }
            Ok(())
        })?;
    }
    let pool = irreducible(5);
    let mut rng = ChaCha8Rng::seed_from_u64(54);
    let mut random = [0u64; 2];
    let mut draws = 0u64;
    while random.iter().any(|&c| c < 500) && draws < 1_000_000 {
        draws += 1;
        let s = pool.choose(&mut rng).expect("nonempty pool");
        let xs = distinct_sets(5, 2, &mut rng);
        let c = [
            (xs[0], random_member(xs[0], &mut rng)),
            (xs[1], random_member(xs[1], &mut rng)),
        ];
        let (first, second) = two_value_conditions(s, &c);
        if (first && random[0] < 500) || (second && random[1] < 500) {
            random[0] += first as u64;
            random[1] += second as u64;
            if let Some(x) = expect_section(s, &c)? {
                cex.get_or_insert(x);
            }
        }
    }
    Ok(Outcome::check(
        json!({ "exhaustive_n4": { "condition_1": counts[0], "condition_2": counts[1] }, "random_n5": { "condition_1": random[0], "condition_2": random[1] } }),
        cex,
    ))
}

fn adjacent_excess(_: &Ctx) -> Result<Outcome> {
    let mut cex = None;
    let mut cases = 0u64;
    for n in 4..=6 {
        for s in enumerate_ordered_signatures(n) {
            if s.classify().is_reducible() {
                continue;
            }
            let a = s.entries();
            for i in 2..n {
                if a[i] - a[i - 1] <= 1 {
                    cases += 1;
                    if s.excess(i)? < 2 && cex.is_none() {
                        cex = Some(json!({ "signature": sig_str(&s), "i": i, "excess": s.excess(i)? }));
                    }
                }
            }
        }
    }
    // the bound n ≥ 4 is needed: (2,2,3) at i = 2
    let small = sig(&[2, 2, 3]);
    let small_fails =
        !small.classify().is_reducible() && small.entries()[2] - small.entries()[1] <= 1 && small.excess(2)? < 2;
    if !small_fails && cex.is_none() {
        cex = Some(json!({ "signature": "2,2,3", "reason": "expected to violate the bound at i = 2" }));
    }
    Ok(Outcome::check(
        json!({ "cases": cases, "n3_counterexample_fails": small_fails }),
        cex,
    ))
}

/// The exceptional configuration of the equal-values case.
fn exceptional(s: &Signature, c: &[(Vertex, usize); 2]) -> bool {
    let low = 0b11;
    let a = s.entries();
    c[0].1 == 1
        && a[0] == 2
        && a[1] == 2
        && ((c[0].0 == low && c[1].0 & !low != 0) || (c[1].0 == low && c[0].0 & !low != 0))
}

fn equal_values_case(c: &[(Vertex, usize); 2]) -> bool {
    c[0].1 == c[1].1 && c.iter().any(|&(x, v)| max_elem(x) == v)
}

fn prop_exception(_: &Ctx) -> Result<Outcome> {
    let mut cex = None;
    let named = sig(&[2, 2, 4, 7]);
    let named_cons = [(0b011, 1), (0b111, 1)];
    if let Some(c) = expect_absent(&named, &named_cons)? {
        cex = Some(c);
    }
    let mut counts = [0u64; 2];
    let check = |s: &Signature, c: [(Vertex, usize); 2], counts: &mut [u64; 2]| -> Result<Option<Value>> {
        if exceptional(s, &c) {
            counts[1] += 1;
            expect_absent(s, &c)
        } else {
            counts[0] += 1;
            expect_section(s, &c)
        }
    };
    for s in enumerate_ordered_signatures(4)
        .into_iter()
        .filter(|s| !s.classify().is_reducible())
    {
        for_each_constraint_pair(4, |c| {
            if equal_values_case(&c) {
                if let Some(x) = check(&s, c, &mut counts)? {
                    cex.get_or_insert(x);
                }
            }
            Ok(())
        })?;
    }
    let pool: Vec<Signature> = enumerate_ordered_signatures(5)
        .into_iter()
        .filter(|s| !s.classify().is_reducible())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut random = 0;
    while random < 500 {
        let s = pool.choose(&mut rng).expect("nonempty pool");
        let xs = distinct_sets(5, 2, &mut rng);
        let common = xs[0] & xs[1];
        if common == 0 {
            continue;
        }
        let v = random_member(common, &mut rng);
        let c = [(xs[0], v), (xs[1], v)];
        if !equal_values_case(&c) {
            continue;
        }
        random += 1;
        if let Some(x) = check(s, c, &mut counts)? {
            cex.get_or_insert(x);
        }
    }
    Ok(Outcome::check(
        json!({ "named": { "signature": "2,2,4,7", "constraints": constraint_json(&named_cons) }, "existing": counts[0], "exceptional": counts[1], "random_n5": random }),
        cex,
    ))
}

fn conjecture(ctx: &Ctx) -> Result<Outcome> {
    let rep = test_conjecture_with(ctx.n, |s| ctx.explore(s))?;
    let cex = rep
        .rows
        .iter()
        .find(|r| r.status == RowStatus::Inconsistent)
        .map(|r| serde_json::to_value(r).expect("serialisable"))
        .or_else(|| {
            rep.saturation
                .iter()
                .find(|s| s.agrees == Some(false))
                .map(|s| serde_json::to_value(s).expect("serialisable"))
        });
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| json!({ "signature": sig_str(&r.signature), "kind": r.kind, "components": r.components, "status": r.status }))
        .collect();
    let evidence =
        json!({ "label": rep.label, "rows": rows, "skipped": rep.skipped, "inconsistent": rep.inconsistent });
    if cex.is_none() && rep.skipped > 0 {
        return Ok(Outcome::partial(evidence));
    }
    Ok(Outcome::check(evidence, cex))
}

fn connected_from_scratch(cube: CubeContext, set: EdgeSet) -> bool {
    let v = cube.vertex_count();
    let mut adj = vec![Vec::new(); v];
    for e in bits(set) {
        let (a, b) = cube.endpoints(e);
        adj[a as usize].push(b as usize);
        adj[b as usize].push(a as usize);
    }
    let mut seen = vec![false; v];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == v && set.count_ones() as usize == v - 1
}

/// Every subcube `Q_n(R, X)` meets `T` in a tree.
fn reduces_from_scratch(cube: CubeContext, set: EdgeSet, r: Vertex) -> bool {
    submasks(r).all(|x| {
        let verts: Vec<Vertex> = (0..cube.vertex_count() as u32).filter(|w| w & r == x).collect();
        let inside: Vec<EdgeId> = bits(set)
            .filter(|&e| {
                let (a, b) = cube.endpoints(e);
                a & r == x && b & r == x
            })
            .collect();
        let mut seen = vec![verts[0]];
        let mut stack = vec![verts[0]];
        while let Some(u) = stack.pop() {
            for &e in &inside {
                let (a, b) = cube.endpoints(e);
                let w = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if !seen.contains(&w) {
                    seen.push(w);
                    stack.push(w);
                }
            }
        }
        seen.len() == verts.len() && inside.len() == verts.len() - 1
    })
}

fn oracle_case(t: &SpanningTree, e: EdgeId, i: usize, r: Vertex) -> Result<Option<Value>> {
    let cube = t.cube();
    let mut counts = vec![0u32; cube.n()];
    for f in t.edges() {
        let (a, b) = cube.endpoints(f);
        counts[(a ^ b).trailing_zeros() as usize] += 1;
    }
    let moved = (t.bits() & !(1u128 << e)) | 1u128 << cube.sigma(e, i);
    let fast = is_slidable(t, e, i)?;
    let slow = connected_from_scratch(cube, moved);
    let red = t.reduces_over(r)?;
    let red_slow = reduces_from_scratch(cube, t.bits(), r);
    if fast != slow || t.direction_counts() != counts || red != red_slow {
        return Ok(Some(json!({
            "tree": t.to_json(),
            "edge": e,
            "direction": i + 1,
            "r": to_list(r),
            "slidable": [fast, slow],
            "signature": [t.direction_counts(), counts],
            "reduces": [red, red_slow],
        })));
    }
    Ok(None)
}

fn oracle_equivalence(ctx: &Ctx) -> Result<Outcome> {
    let mut cex = None;
    let cube = CubeContext::new(3)?;
    let mut trees = Vec::new();
    enumerate_spanning_trees(cube, false, |t| trees.push(t))?;
    let mut exhaustive = 0u64;
    for t in &trees {
        for e in t.edges() {
            for i in (0..3).filter(|&i| i != cube.direction(e)) {
                for r in 1..cube.full() {
                    exhaustive += 1;
                    if let Some(c) = oracle_case(t, e, i, r)? {
                        cex.get_or_insert(c);
                    }
                }
            }
        }
    }
    let random_cases: u64 = if ctx.n >= 4 { 1_000_000 } else { 10_000 };
    let q4 = CubeContext::new(4)?;
    let chunks = 64u64;
    let found = ctx.exec.map_range(chunks as usize, |k| -> Result<Option<Value>> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0c1e ^ k as u64);
        let per = random_cases / chunks + u64::from((k as u64) < random_cases % chunks);
        for _ in 0..per {
            let t = random_spanning_tree(q4, &mut rng);
            let edges: Vec<EdgeId> = t.edges().collect();
            let e = *edges.choose(&mut rng).expect("trees have edges");
            let j = q4.direction(e);
            let i = (j + rng.gen_range(1..4)) % 4;
            let r = rng.gen_range(1..q4.full());
            if let Some(c) = oracle_case(&t, e, i, r)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    });
    for f in found {
        if let Some(c) = f? {
            cex.get_or_insert(c);
        }
    }
    Ok(Outcome::check(
        json!({ "q3_cases": exhaustive, "q3_trees": trees.len(), "random_q4_cases": random_cases }),
        cex,
    ))
}

/// Compositions of `total` into `n` positive parts.
fn compositions(n: usize, total: u64, mut f: impl FnMut(&[u64])) {
    fn rec(left: u64, cur: &mut Vec<u64>, n: usize, f: &mut dyn FnMut(&[u64])) {
        if cur.len() + 1 == n {
            cur.push(left);
            f(cur);
            cur.pop();
            return;
        }
        for a in 1..=left - (n - cur.len() - 1) as u64 {
            cur.push(a);
            rec(left - a, cur, n, f);
            cur.pop();
        }
    }
    rec(total, &mut Vec::new(), n, &mut f);
}

fn characterisation(ctx: &Ctx) -> Result<Outcome> {
    let mut cex = None;
    let mut rows = Vec::new();
    for n in ctx.dims() {
        let h = ctx.histogram(n)?;
        let mut tuples = 0u64;
        let mut accepted = 0u64;
        compositions(n, (1u64 << n) - 1, |t| {
            tuples += 1;
            let predicted = is_signature(t);
            accepted += predicted as u64;
            let entries: Vec<u32> = t.iter().map(|&a| a as u32).collect();
            let realised = Signature::new(entries.clone()).is_ok_and(|s| h.contains_key(&s));
            let upright = Signature::new(entries.clone())
                .ok()
                .map(|s| count_upright(&s, false).map(|c| c > 0))
                .transpose();
            let upright = match upright {
                Ok(u) => u.unwrap_or(false),
                Err(_) => false,
            };
            if (predicted != realised || predicted != upright) && cex.is_none() {
                cex = Some(
                    json!({ "tuple": t, "predicted": predicted, "tree_exists": realised, "upright_exists": upright }),
                );
            }
        });
        if accepted != h.len() as u64 && cex.is_none() {
            cex = Some(json!({ "n": n, "accepted": accepted, "realised": h.len() }));
        }
        rows.push(json!({ "n": n, "tuples": tuples, "signatures": accepted }));
    }
    Ok(Outcome::check(json!({ "dimensions": rows }), cex))
}

fn upright_reachability(ctx: &Ctx) -> Result<Outcome> {
    let mut cex = None;
    let mut components = 0u64;
    let mut reports = Vec::new();
    for n in ctx.dims() {
        for s in enumerate_ordered_signatures(n) {
            let r = ctx.explore(&s)?;
            let upright: u64 = r.components.iter().map(|c| c.upright).sum();
            components += r.components.len() as u64;
            let lonely = r.components.iter().find(|c| c.upright == 0);
            if !r.partial && cex.is_none() {
                if let Some(c) = lonely {
                    cex = Some(json!({ "signature": sig_str(&s), "component": c }));
                } else if u128::from(upright) != count_upright(&s, false)? {
                    cex = Some(
                        json!({ "signature": sig_str(&s), "upright_seen": upright, "reason": "upright count mismatch" }),
                    );
                }
            }
            reports.push(r);
        }
    }
    Ok(partial_if(&reports, json!({ "components": components }), cex))
}

pub static REGISTRY: &[Claim] = &[
    Claim {
        id: "census",
        title: "Enumerated spanning-tree counts equal the closed formula",
        fast: true,
        budget_secs: 600,
        check: census,
    },
    Claim {
        id: "signature-counts",
        title: "Trees per signature of Q_3 are 16, 32 and 64, invariant under permutation",
        fast: true,
        budget_secs: 600,
        check: signature_counts,
    },
    Claim {
        id: "thm-characterisation",
        title: "A tuple is a signature iff its sorted prefix sums are at least 2^k - 1",
        fast: true,
        budget_secs: 600,
        check: characterisation,
    },
    Claim {
        id: "signature-tables",
        title: "Ordered signatures of Q_3 and Q_4 and their classification",
        fast: true,
        budget_secs: 1,
        check: signature_tables,
    },
    Claim {
        id: "q7-classification",
        title: "Classification of the four Q_7 examples",
        fast: true,
        budget_secs: 1,
        check: q7_classification,
    },
    Claim {
        id: "lem-reducible-sections",
        title: "For S reducing over R, psi(X) lies in R iff X is a subset of R",
        fast: true,
        budget_secs: 10,
        check: reducible_sections,
    },
    Claim {
        id: "cor-saturated-values",
        title: "Saturated above r forces psi(X) = max X off [r]",
        fast: true,
        budget_secs: 10,
        check: saturated_values,
    },
    Claim {
        id: "thm-excess-ell",
        title: "Excess at least l allows any l prescribed values",
        fast: true,
        budget_secs: 10,
        check: excess_ell,
    },
    Claim {
        id: "cor-specify-one",
        title: "Irreducible signatures allow any single prescribed value",
        fast: true,
        budget_secs: 10,
        check: specify_one,
    },
    Claim {
        id: "thm-specify-two",
        title: "Two prescribed values under either excess or maximum condition",
        fast: true,
        budget_secs: 30,
        check: specify_two,
    },
    Claim {
        id: "lem-adjacent-excess",
        title: "Close adjacent entries force excess at least 2 for n >= 4",
        fast: true,
        budget_secs: 1,
        check: adjacent_excess,
    },
    Claim {
        id: "prop-exception",
        title: "Equal prescribed values fail exactly in the exceptional configuration",
        fast: true,
        budget_secs: 30,
        check: prop_exception,
    },
    Claim {
        id: "slide-graphs-q3",
        title: "Components of the slide graphs of Q_3",
        fast: true,
        budget_secs: 1,
        check: slide_graphs_q3,
    },
    Claim {
        id: "cor-supersat-cube",
        title: "The slide graph of (1,2,...,2^(n-1)) is a (2^n - n - 1)-cube",
        fast: true,
        budget_secs: 30,
        check: supersat_cube,
    },
    Claim {
        id: "thm-product-isomorphism",
        title: "Psi_R is an isomorphism onto the product of slide graphs",
        fast: true,
        budget_secs: 60,
        check: product_isomorphism,
    },
    Claim {
        id: "thm-slidability-table",
        title: "Slidability of a reducing tree is read off its decomposition",
        fast: true,
        budget_secs: 30,
        check: slidability_table,
    },
    Claim {
        id: "cor-saturated-product",
        title: "A saturated slide graph is its contraction graph times a cube",
        fast: true,
        budget_secs: 60,
        check: saturated_product,
    },
    Claim {
        id: "obs-contraction-components",
        title: "Contraction slide graphs have as many components as the base slide graph",
        fast: true,
        budget_secs: 60,
        check: contraction_components,
    },
    Claim {
        id: "thm-disconnected",
        title: "Strictly reducible signatures have disconnected slide graphs",
        fast: true,
        budget_secs: 120,
        check: disconnected,
    },
    Claim {
        id: "upright-reachability",
        title: "Every slide component contains an upright tree",
        fast: true,
        budget_secs: 120,
        check: upright_reachability,
    },
    Claim {
        id: "conjecture",
        title: "Observed connectivity matches the irreducible / quasi-irreducible expectation",
        fast: true,
        budget_secs: 120,
        check: conjecture,
    },
    Claim {
        id: "oracle-equivalence",
        title: "Fast slidability, signature and reducibility agree with naive re-verification",
        fast: true,
        budget_secs: 120,
        check: oracle_equivalence,
    },
];

const PREFIXES: [&str; 5] = ["thm", "cor", "lem", "prop", "obs"];

/// The claims named by `selector`: `all`, `fast`, or `thm:<id>` where `<id>`
/// is a registry id with or without its `thm-`/`cor-`/... prefix.
pub fn select(selector: &str) -> Option<Vec<&'static Claim>> {
    match selector {
        "all" => Some(REGISTRY.iter().collect()),
        "fast" => Some(REGISTRY.iter().filter(|c| c.fast).collect()),
        s => {
            let key = s.strip_prefix("thm:")?;
            let hit: Vec<&Claim> = REGISTRY
                .iter()
                .filter(|c| {
                    c.id == key
                        || PREFIXES
                            .iter()
                            .any(|p| c.id.strip_prefix(p).and_then(|r| r.strip_prefix('-')) == Some(key))
                })
                .collect();
            (!hit.is_empty()).then_some(hit)
        }
    }
}

/// Exit status for a batch of results: 1 on any failure, else 3 on any
/// partial result, else 0.
pub fn exit_code(results: &[ClaimResult]) -> i32 {
    if results.iter().any(|r| r.status == ClaimStatus::Fail) {
        1
    } else if results.iter().any(|r| r.status == ClaimStatus::Partial) {
        3
    } else {
        0
    }
}
