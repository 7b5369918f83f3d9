//! Sections of the nonempty power set, the bijection with upright trees, and
//! construction of sections with a prescribed signature by bipartite
//! matching.
//!
//! The matching graph `G_S` has the nonempty subsets of `[n]` on one side and
//! `a_i` interchangeable copies of each label `i` on the other. Since the
//! copies are interchangeable the search runs on label capacities, so the
//! right-hand side has only `n` nodes.

use crate::cube::{elements, from_list, max_elem, to_list, CubeContext, Vertex};
use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::tree::{check_tree_dim, SpanningTree};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Largest `n` for which [`count_upright`] runs without an override.
pub const COUNT_DIM: usize = 5;
/// Hard limit for [`count_upright`] even with an override.
pub const COUNT_DIM_MAX: usize = 7;

/// A choice `ψ(X) ∈ X` for every nonempty `X ⊆ [n]`. Values are 0-based
/// directions; `values[0]` is unused.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Section {
    n: usize,
    values: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionJson {
    pub n: usize,
    /// `[subset as 1-based sorted list, chosen 1-based element]`, subsets in
    /// increasing bitmask order.
    pub values: Vec<(Vec<usize>, usize)>,
}

impl Section {
    pub fn new(n: usize, values: Vec<u8>) -> Result<Self> {
        CubeContext::new(n)?;
        if values.len() != 1 << n {
            return Err(Error::InvalidSection(format!("expected {} entries", 1usize << n)));
        }
        for x in 1..values.len() as u32 {
            if x >> values[x as usize] & 1 == 0 {
                return Err(Error::InvalidSection(format!(
                    "value {} not in {}",
                    values[x as usize] + 1,
                    crate::cube::fmt_set(x)
                )));
            }
        }
        Ok(Section { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(Vertex) -> usize) -> Result<Self> {
        let mut values = vec![0u8; 1 << n];
        for x in 1..1u32 << n {
            values[x as usize] = f(x) as u8;
        }
        Self::new(n, values)
    }

    /// `ψ(X) = max X` everywhere: the section of the supersaturated signature.
    pub fn max_section(n: usize) -> Self {
        Self::from_fn(n, max_elem).expect("max X is in X")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `ψ(X)` as a 0-based direction.
    #[inline]
    pub fn get(&self, x: Vertex) -> usize {
        debug_assert!(x != 0);
        self.values[x as usize] as usize
    }

    pub fn direction_counts(&self) -> Vec<u32> {
        let mut c = vec![0u32; self.n];
        for &v in &self.values[1..] {
            c[v as usize] += 1;
        }
        c
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.direction_counts()).expect("section counts form a signature")
    }

    /// The upright tree with edges `{X, X - ψ(X)}`.
    pub fn to_tree(&self) -> Result<SpanningTree> {
        let cube = CubeContext::new(self.n)?;
        check_tree_dim(cube)?;
        let mut set = 0u128;
        for x in 1..1u32 << self.n {
            let i = self.get(x);
            set |= 1u128 << cube.edge_id(x & !(1 << i), i);
        }
        Ok(SpanningTree::from_bits_unchecked(cube, set))
    }

    /// Inverse of [`Section::to_tree`]; fails with a witness vertex when the
    /// tree is not upright.
    pub fn from_tree(t: &SpanningTree) -> Result<Self> {
        let rooted = t.rooted();
        let n = t.n();
        let mut values = vec![0u8; 1 << n];
        for x in 1..1u32 << n {
            let depth = rooted.depth[x as usize] as usize;
            if depth != x.count_ones() as usize {
                return Err(Error::NonUpright { witness: x, depth });
            }
            let p = rooted.parent[x as usize];
            values[x as usize] = (x ^ p).trailing_zeros() as u8;
        }
        Ok(Section { n, values })
    }

    pub fn to_json(&self) -> SectionJson {
        SectionJson {
            n: self.n,
            values: (1..1u32 << self.n).map(|x| (to_list(x), self.get(x) + 1)).collect(),
        }
    }

    pub fn from_json(j: &SectionJson) -> Result<Self> {
        CubeContext::new(j.n)?;
        let mut values = vec![u8::MAX; 1 << j.n];
        values[0] = 0;
        for (set, x) in &j.values {
            let m = from_list(set, j.n)?;
            if m == 0 || *x == 0 || *x > j.n || values[m as usize] != u8::MAX {
                return Err(Error::InvalidSection(format!("bad entry {set:?} -> {x}")));
            }
            values[m as usize] = (*x - 1) as u8;
        }
        if values.contains(&u8::MAX) {
            return Err(Error::InvalidSection("missing subsets".into()));
        }
        Self::new(j.n, values)
    }
}

/// Every section of `[n]`, in mixed-radix order with `X = 1` varying fastest.
pub fn all_sections(n: usize) -> impl Iterator<Item = Section> {
    let sizes: Vec<Vec<u8>> = (0..1u32 << n).map(|x| elements(x).map(|i| i as u8).collect()).collect();
    let mut digits = vec![0usize; 1 << n];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mut values = vec![0u8; 1 << n];
        for x in 1..1usize << n {
            values[x] = sizes[x][digits[x]];
        }
        // advance
        let mut x = 1;
        loop {
            if x == 1 << n {
                done = true;
                break;
            }
            digits[x] += 1;
            if digits[x] < sizes[x].len() {
                break;
            }
            digits[x] = 0;
            x += 1;
        }
        Some(Section { n, values })
    })
}

/// The bipartite graph `G_S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingGraph {
    n: usize,
    counts: Vec<u32>,
}

/// Builds `G_S` for a tuple with `Σ a_i = 2^n - 1`.
pub fn build_matching_graph(t: &[u32]) -> Result<MatchingGraph> {
    let n = t.len();
    CubeContext::new(n)?;
    let total: u64 = t.iter().map(|&a| a as u64).sum();
    if total != (1u64 << n) - 1 {
        return Err(Error::InvalidSignature {
            entries: t.iter().map(|&a| a as u64).collect(),
            reason: "entries must sum to 2^n - 1".into(),
        });
    }
    Ok(MatchingGraph { n, counts: t.to_vec() })
}

impl MatchingGraph {
    pub fn left_count(&self) -> usize {
        (1 << self.n) - 1
    }

    pub fn right_count(&self) -> usize {
        self.counts.iter().map(|&a| a as usize).sum()
    }

    /// Label of each right vertex: `a_1` copies of `0`, then `a_2` of `1`, ...
    pub fn right_labels(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| std::iter::repeat_n(i, a as usize))
            .collect()
    }

    pub fn has_edge(&self, x: Vertex, right: usize) -> bool {
        x >> self.right_labels()[right] & 1 == 1
    }

    pub fn degree(&self, x: Vertex) -> u64 {
        elements(x).map(|i| self.counts[i] as u64).sum()
    }

    /// `|N(Y)|` for a family `Y` of left vertices.
    pub fn neighbourhood_size(&self, family: &[Vertex]) -> u64 {
        let support = family.iter().fold(0, |m, &x| m | x);
        self.degree(support)
    }

    /// Hall's condition for a family.
    pub fn hall_holds(&self, family: &[Vertex]) -> bool {
        self.neighbourhood_size(family) >= family.len() as u64
    }
}

/// Capacity-constrained augmenting-path matching of subsets to labels.
struct Matcher {
    cap: Vec<u32>,
    holders: Vec<Vec<Vertex>>,
    assign: Vec<u8>,
    seen: Vec<bool>,
}

impl Matcher {
    fn augment(&mut self, x: Vertex) -> bool {
        for i in elements(x) {
            if self.seen[i] {
                continue;
            }
            self.seen[i] = true;
            if (self.holders[i].len() as u32) < self.cap[i] {
                self.holders[i].push(x);
                self.assign[x as usize] = i as u8;
                return true;
            }
            for k in 0..self.holders[i].len() {
                let y = self.holders[i][k];
                if self.augment(y) {
                    self.holders[i][k] = x;
                    self.assign[x as usize] = i as u8;
                    return true;
                }
            }
        }
        false
    }
}

fn check_constraints(n: usize, constraints: &[(Vertex, usize)]) -> Result<()> {
    let full = ((1u64 << n) - 1) as u32;
    let mut seen = std::collections::HashSet::new();
    for &(x, v) in constraints {
        if x == 0 || x & !full != 0 {
            return Err(Error::InvalidConstraint(format!(
                "{x:#b} is not a nonempty subset of [{n}]"
            )));
        }
        if v >= n || x >> v & 1 == 0 {
            return Err(Error::InvalidConstraint(format!(
                "{} is not an element of {}",
                v + 1,
                crate::cube::fmt_set(x)
            )));
        }
        if !seen.insert(x) {
            return Err(Error::InvalidConstraint(format!(
                "{} constrained twice",
                crate::cube::fmt_set(x)
            )));
        }
    }
    Ok(())
}

/// A section with signature `sig` and `ψ(X_t) = x_t` for each constraint, if
/// one exists. Directions in constraints are 0-based.
pub fn find_section(sig: &Signature, constraints: &[(Vertex, usize)]) -> Result<Option<Section>> {
    let n = sig.n();
    check_constraints(n, constraints)?;
    let mut cap: Vec<u32> = sig.entries().to_vec();
    let mut values = vec![u8::MAX; 1 << n];
    for &(x, v) in constraints {
        if cap[v] == 0 {
            return Ok(None);
        }
        cap[v] -= 1;
        values[x as usize] = v as u8;
    }
    let mut m = Matcher {
        holders: vec![Vec::new(); n],
        cap,
        assign: values,
        seen: vec![false; n],
    };
    // larger sets first: they are the most flexible to re-route through
    let mut order: Vec<Vertex> = (1..1u32 << n).filter(|&x| m.assign[x as usize] == u8::MAX).collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(x.count_ones()), x));
    for x in order {
        m.seen.iter_mut().for_each(|s| *s = false);
        if !m.augment(x) {
            return Ok(None);
        }
    }
    m.assign[0] = 0;
    Ok(Some(Section { n, values: m.assign }))
}

type Memo = HashMap<(usize, [u8; COUNT_DIM_MAX]), u128>;

struct Counter {
    order: Vec<Vertex>,
    memo: Memo,
}

impl Counter {
    fn new(sig: &Signature, allow_large: bool) -> Result<(Self, [u8; COUNT_DIM_MAX])> {
        let n = sig.n();
        let limit = if allow_large { COUNT_DIM_MAX } else { COUNT_DIM };
        if n > limit {
            return Err(Error::DimensionUnsupported {
                n,
                max: limit,
                overridable: !allow_large,
            });
        }
        let mut order: Vec<Vertex> = (1..1u32 << n).collect();
        order.sort_by_key(|&x| (std::cmp::Reverse(x.count_ones()), x));
        let mut caps = [0u8; COUNT_DIM_MAX];
        for (c, &a) in caps.iter_mut().zip(sig.entries()) {
            *c = a as u8;
        }
        Ok((
            Counter {
                order,
                memo: HashMap::new(),
            },
            caps,
        ))
    }

    /// Completions of the assignment from `pos` on with capacities `caps`.
    fn count(&mut self, pos: usize, caps: &mut [u8; COUNT_DIM_MAX]) -> u128 {
        if pos == self.order.len() {
            return 1;
        }
        if let Some(&v) = self.memo.get(&(pos, *caps)) {
            return v;
        }
        let mut total = 0;
        for i in elements(self.order[pos]) {
            if caps[i] > 0 {
                caps[i] -= 1;
                total += self.count(pos + 1, caps);
                caps[i] += 1;
            }
        }
        self.memo.insert((pos, *caps), total);
        total
    }

    fn emit(
        &mut self,
        pos: usize,
        caps: &mut [u8; COUNT_DIM_MAX],
        values: &mut Vec<u8>,
        n: usize,
        f: &mut dyn FnMut(&Section),
    ) {
        if pos == self.order.len() {
            f(&Section {
                n,
                values: values.clone(),
            });
            return;
        }
        let x = self.order[pos];
        for i in elements(x) {
            if caps[i] > 0 {
                caps[i] -= 1;
                if self.count(pos + 1, caps) > 0 {
                    values[x as usize] = i as u8;
                    self.emit(pos + 1, caps, values, n, f);
                }
                caps[i] += 1;
            }
        }
    }
}

/// Number of sections (equivalently upright trees) with signature `sig`.
pub fn count_upright(sig: &Signature, allow_large: bool) -> Result<u128> {
    let (mut c, mut caps) = Counter::new(sig, allow_large)?;
    Ok(c.count(0, &mut caps))
}

/// Streams every section with signature `sig`; dead ends are pruned with the
/// same memoised counts as [`count_upright`].
pub fn for_each_section_with_signature(sig: &Signature, allow_large: bool, mut f: impl FnMut(&Section)) -> Result<()> {
    let (mut c, mut caps) = Counter::new(sig, allow_large)?;
    let mut values = vec![0u8; 1 << sig.n()];
    c.emit(0, &mut caps, &mut values, sig.n(), &mut f);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::enumerate_ordered_signatures;
    use crate::tree::fixtures::{fig1_left, fig1_right, set};

    fn sig(e: &[u32]) -> Signature {
        Signature::new(e.to_vec()).unwrap()
    }

    fn fig1_section() -> Section {
        Section::from_fn(3, |x| match x {
            0b111 => 2,
            0b011 => 0,
            0b101 => 2,
            0b110 => 1,
            _ => x.trailing_zeros() as usize,
        })
        .unwrap()
    }

    #[test]
    fn fig1_section_and_tree() {
        let s = fig1_section();
        assert_eq!(s.signature().entries(), &[2, 2, 3]);
        assert_eq!(s.to_tree().unwrap(), fig1_right());
        assert_eq!(Section::from_tree(&fig1_right()).unwrap(), s);
        assert_eq!(
            Section::from_tree(&fig1_left()),
            Err(Error::NonUpright {
                witness: set(&[2]),
                depth: 3
            })
        );
    }

    #[test]
    fn trivial_section() {
        let s = Section::from_fn(1, |_| 0).unwrap();
        assert_eq!(s.signature().entries(), &[1]);
        assert!(Section::from_fn(2, |_| 0).is_err());
    }

    #[test]
    fn round_trip_all_small_sections() {
        for n in 1..=4 {
            let mut count = 0;
            for s in all_sections(n) {
                let t = s.to_tree().unwrap();
                assert!(t.is_upright());
                assert_eq!(t.direction_counts(), s.direction_counts());
                assert_eq!(Section::from_tree(&t).unwrap(), s);
                count += 1;
            }
            let expect: usize = (1..1u32 << n).map(|x| x.count_ones() as usize).product();
            assert_eq!(count, expect);
        }
        assert_eq!(all_sections(3).count(), 24);
    }

    #[test]
    fn json_round_trip() {
        let s = fig1_section();
        let text = serde_json::to_string(&s.to_json()).unwrap();
        assert!(text.starts_with("{\"n\":3,\"values\":[[[1],1],[[2],2],[[1,2],1]"));
        let back: SectionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Section::from_json(&back).unwrap(), s);
    }

    #[test]
    fn matching_graph_examples() {
        let g = build_matching_graph(&[2, 2, 3]).unwrap();
        assert_eq!(g.left_count(), 7);
        assert_eq!(g.right_count(), 7);
        assert_eq!(g.degree(0b110), 5);
        let y = [0b010, 0b110];
        assert_eq!(g.neighbourhood_size(&y), 5);
        assert!(g.hall_holds(&y));
        let g1 = build_matching_graph(&[1]).unwrap();
        assert_eq!((g1.left_count(), g1.right_count()), (1, 1));
        assert!(g1.has_edge(1, 0));
        assert!(build_matching_graph(&[1, 1]).is_err());
    }

    #[test]
    fn find_section_examples() {
        let s = find_section(&sig(&[2, 2, 3]), &[]).unwrap().unwrap();
        assert_eq!(s.signature(), sig(&[2, 2, 3]));
        // {1} reduces (1,3,3), so ψ(X) = 1 forces X ⊆ {1}
        assert_eq!(find_section(&sig(&[1, 3, 3]), &[(0b011, 0)]).unwrap(), None);
        assert_eq!(find_section(&sig(&[1, 3, 3]), &[(0b111, 0)]).unwrap(), None);
        assert!(find_section(&sig(&[1, 3, 3]), &[(0b110, 0)]).is_err());
        // the exceptional case
        let c = [(0b0011, 1), (0b0111, 1)];
        assert_eq!(find_section(&sig(&[2, 2, 4, 7]), &c).unwrap(), None);
        assert!(matches!(
            find_section(&sig(&[2, 2, 3]), &[(0b011, 2)]),
            Err(Error::InvalidConstraint(_))
        ));
        assert!(matches!(
            find_section(&sig(&[2, 2, 3]), &[(0b011, 0), (0b011, 1)]),
            Err(Error::InvalidConstraint(_))
        ));
    }

    #[test]
    fn find_section_agrees_with_exhaustive_search_q3() {
        let sections: Vec<Section> = all_sections(3).collect();
        for s in enumerate_ordered_signatures(3) {
            for perm in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
                let e: Vec<u32> = perm.iter().map(|&p| s.get(p)).collect();
                let s = sig(&e);
                for x in 1..8u32 {
                    for v in elements(x) {
                        for y in 1..8u32 {
                            for w in elements(y) {
                                if x == y {
                                    continue;
                                }
                                let c = [(x, v), (y, w)];
                                let got = find_section(&s, &c).unwrap();
                                let exists = sections
                                    .iter()
                                    .any(|p| p.direction_counts() == e && p.get(x) == v && p.get(y) == w);
                                assert_eq!(got.is_some(), exists);
                                if let Some(p) = got {
                                    assert_eq!(p.direction_counts(), e);
                                    assert_eq!((p.get(x), p.get(y)), (v, w));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn count_upright_matches_enumeration() {
        for n in 1..=4 {
            let mut by_sig: HashMap<Vec<u32>, u128> = HashMap::new();
            for s in all_sections(n) {
                *by_sig.entry(s.direction_counts()).or_default() += 1;
            }
            for (e, c) in by_sig {
                assert_eq!(count_upright(&sig(&e), false).unwrap(), c, "{e:?}");
            }
        }
    }

    #[test]
    fn streamed_sections_match_filter() {
        for s in enumerate_ordered_signatures(4) {
            let mut got = Vec::new();
            for_each_section_with_signature(&s, false, |p| got.push(p.clone())).unwrap();
            let want: Vec<Section> = all_sections(4)
                .filter(|p| p.direction_counts() == s.entries())
                .collect();
            assert_eq!(got.len() as u128, count_upright(&s, false).unwrap());
            let a: std::collections::HashSet<_> = got.into_iter().collect();
            let b: std::collections::HashSet<_> = want.into_iter().collect();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn count_upright_examples() {
        for n in 1..=5 {
            assert_eq!(count_upright(&Signature::supersaturated(n), false).unwrap(), 1);
        }
        let total: u128 = enumerate_ordered_signatures(3)
            .iter()
            .map(|s| {
                // each ordered class has 6 / |stabiliser| permutations
                let perms: std::collections::HashSet<Vec<u32>> =
                    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
                        .iter()
                        .map(|p| p.iter().map(|&i| s.get(i)).collect())
                        .collect();
                perms
                    .iter()
                    .map(|e| count_upright(&sig(e), false).unwrap())
                    .sum::<u128>()
            })
            .sum();
        assert_eq!(total, 24);
        assert_eq!(
            count_upright(&sig(&[1, 3, 3, 8]), false).unwrap(),
            count_upright(&sig(&[1, 3, 3]), false).unwrap()
        );
        assert!(count_upright(&Signature::supersaturated(6), false).is_err());
        assert_eq!(count_upright(&Signature::supersaturated(6), true).unwrap(), 1);
    }
}
