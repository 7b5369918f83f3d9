//! Signature arithmetic: the Hall-type characterisation, excess, reducing
//! sets and the irreducible / quasi-irreducible / strictly reducible
//! taxonomy.
//!
//! A [`Signature`] keeps its entries in the order given (entry `i` belongs to
//! direction `i`). Anything that needs the nondecreasing form goes through
//! [`Signature::canonical`], which also reports the sorting permutation so
//! callers can map positions back to directions.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest dimension for which signatures are represented.
pub const MAX_SIG_DIM: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Signature(Vec<u32>);

impl TryFrom<Vec<u32>> for Signature {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Signature::new(v)
    }
}

impl From<Signature> for Vec<u32> {
    fn from(s: Signature) -> Self {
        s.0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Why a tuple is not a signature.
fn tuple_defect(t: &[u64]) -> Option<String> {
    let n = t.len();
    if n == 0 {
        return Some("empty tuple".into());
    }
    if n > MAX_SIG_DIM {
        return Some(format!("length {n} exceeds {MAX_SIG_DIM}"));
    }
    let total: u64 = t.iter().sum();
    let want = (1u64 << n) - 1;
    if total != want {
        return Some(format!("entries sum to {total}, expected {want}"));
    }
    let cap = 1u64 << (n - 1);
    if let Some(&a) = t.iter().find(|&&a| a == 0 || a > cap) {
        return Some(format!("entry {a} outside 1..={cap}"));
    }
    let mut sorted = t.to_vec();
    sorted.sort_unstable();
    let mut prefix = 0u64;
    let mut prefix_ok = None;
    for (k, &a) in sorted.iter().enumerate() {
        prefix += a;
        if prefix < (1u64 << (k + 1)) - 1 {
            prefix_ok = Some(k + 1);
            break;
        }
    }
    // suffix form: sum_{j>k} a_j <= 2^k (2^(n-k) - 1)
    let mut suffix_ok = None;
    for k in 1..=n {
        let tail: u64 = sorted[k..].iter().sum();
        if tail > (1u64 << k) * ((1u64 << (n - k)) - 1) {
            suffix_ok = Some(k);
            break;
        }
    }
    assert_eq!(
        prefix_ok.is_none(),
        suffix_ok.is_none(),
        "prefix and suffix forms disagree on {t:?}"
    );
    prefix_ok.map(|k| format!("sum of the {k} smallest entries is below 2^{k}-1"))
}

/// True iff some spanning tree of `Q_n` (n = tuple length) has per-direction
/// edge counts `t`. Malformed tuples are simply rejected.
pub fn is_signature(t: &[u64]) -> bool {
    tuple_defect(t).is_none()
}

/// The sorted form of a signature plus the permutation that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub sorted: Signature,
    /// `order[k]` is the original direction of the `k`-th smallest entry
    /// (stable for ties).
    pub order: Vec<usize>,
}

impl Canonical {
    /// Original-direction mask of the first `k` sorted positions.
    pub fn prefix_mask(&self, k: usize) -> u32 {
        self.order[..k].iter().fold(0, |m, &d| m | 1 << d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassKind {
    Irreducible,
    QuasiIrreducible,
    StrictlyReducible,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassKind::Irreducible => "irreducible",
            ClassKind::QuasiIrreducible => "quasi-irreducible",
            ClassKind::StrictlyReducible => "strictly-reducible",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: ClassKind,
    /// Least `r < n` (1-based) with zero excess on `[r, n]`, if any.
    pub saturated_above: Option<usize>,
    /// Length `s` of the unsaturated part.
    pub unsaturated_len: usize,
    pub supersaturated: bool,
    /// Sizes `r < n` for which the sorted prefix of length `r` reduces.
    pub reducing_prefix_sizes: Vec<usize>,
    /// Set when selecting the unsaturated entries by the threshold
    /// `a_i < 2^(s-1)` picks different positions than the sorted prefix.
    pub unsat_threshold_disagrees: bool,
}

impl Classification {
    pub fn is_reducible(&self) -> bool {
        self.kind != ClassKind::Irreducible
    }
}

impl Signature {
    /// Validates `entries` as a signature of `Q_n`, `n = entries.len()`.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let wide: Vec<u64> = entries.iter().map(|&a| a as u64).collect();
        match tuple_defect(&wide) {
            None => Ok(Signature(entries)),
            Some(reason) => Err(Error::InvalidSignature { entries: wide, reason }),
        }
    }

    /// Parses a comma-separated tuple such as `2,2,3` (parentheses allowed).
    pub fn parse(text: &str) -> Result<Self> {
        let body = text.trim().trim_start_matches('(').trim_end_matches(')');
        let entries: std::result::Result<Vec<u32>, _> = body.split(',').map(|p| p.trim().parse::<u32>()).collect();
        match entries {
            Ok(e) => Signature::new(e),
            Err(_) => Err(Error::SignatureParse(text.to_string())),
        }
    }

    /// `(1, 2, 4, ..., 2^(n-1))`.
    pub fn supersaturated(n: usize) -> Self {
        Signature((0..n).map(|i| 1u32 << i).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, dir: usize) -> u32 {
        self.0[dir]
    }

    pub fn is_ordered(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn canonical(&self) -> Canonical {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by_key(|&i| self.0[i]);
        let sorted = Signature(order.iter().map(|&i| self.0[i]).collect());
        Canonical { sorted, order }
    }

    pub fn sorted(&self) -> Signature {
        self.canonical().sorted
    }

    /// Entry sum over a set of directions.
    pub fn sum_over(&self, mask: u32) -> u64 {
        crate::cube::elements(mask).map(|i| self.0[i] as u64).sum()
    }

    /// Sub-tuple on the directions of `mask`, in direction order.
    pub fn restrict(&self, mask: u32) -> Vec<u32> {
        crate::cube::elements(mask).map(|i| self.0[i]).collect()
    }

    /// Entry-wise sum of tuples of equal length.
    pub fn add(a: &[u32], b: &[u32]) -> Vec<u32> {
        assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn sorted_prefix_sums(&self) -> Vec<u64> {
        let mut s: Vec<u64> = self.0.iter().map(|&a| a as u64).collect();
        s.sort_unstable();
        let mut acc = 0;
        s.iter()
            .map(|a| {
                acc += a;
                acc
            })
            .collect()
    }

    /// Minimum slack over `k`-sets of directions above `2^k - 1`.
    pub fn excess(&self, k: usize) -> Result<u64> {
        if k == 0 || k > self.n() {
            return Err(Error::IndexOutOfRange { k, n: self.n() });
        }
        Ok(self.sorted_prefix_sums()[k - 1] - ((1u64 << k) - 1))
    }

    /// `excess(k)` for `k = 1..=n`.
    pub fn excess_vector(&self) -> Vec<u64> {
        self.sorted_prefix_sums()
            .iter()
            .enumerate()
            .map(|(k, p)| p - ((1u64 << (k + 1)) - 1))
            .collect()
    }

    pub fn reduces_over(&self, mask: u32) -> bool {
        let full = ((1u64 << self.n()) - 1) as u32;
        mask != 0 && mask & !full == 0 && mask != full && self.sum_over(mask) == (1u64 << mask.count_ones()) - 1
    }

    /// Every proper nonempty reducing set, by size and then lexicographically
    /// on the sorted element lists.
    pub fn reducing_sets(&self) -> Vec<u32> {
        let n = self.n();
        let excess = self.excess_vector();
        let mut out = Vec::new();
        for k in 1..n {
            // sizes whose smallest possible sum already exceeds the target are skipped
            if excess[k - 1] != 0 {
                continue;
            }
            let target = (1u64 << k) - 1;
            let mut chosen = Vec::with_capacity(k);
            self.combos(0, k, target, &mut chosen, &mut out);
        }
        out
    }

    fn combos(&self, start: usize, left: usize, budget: u64, chosen: &mut Vec<usize>, out: &mut Vec<u32>) {
        if left == 0 {
            if budget == 0 {
                out.push(chosen.iter().fold(0, |m, &d| m | 1 << d));
            }
            return;
        }
        for d in start..=self.n() - left {
            let a = self.0[d] as u64;
            // each of the remaining picks costs at least 1
            if a + (left as u64 - 1) > budget {
                continue;
            }
            chosen.push(d);
            self.combos(d + 1, left - 1, budget - a, chosen, out);
            chosen.pop();
        }
    }

    /// Least `s` with zero excess on `[s, n]`.
    pub fn unsaturated_len(&self) -> usize {
        let ex = self.excess_vector();
        let mut s = self.n();
        while s > 1 && ex[s - 2] == 0 {
            s -= 1;
        }
        s
    }

    pub fn saturated_above(&self) -> Option<usize> {
        let s = self.unsaturated_len();
        (s < self.n()).then_some(s)
    }

    /// Directions making up the unsaturated part, ascending.
    pub fn unsaturated_directions(&self) -> Vec<usize> {
        let can = self.canonical();
        let mut dirs = can.order[..self.unsaturated_len()].to_vec();
        dirs.sort_unstable();
        dirs
    }

    /// The unsaturated part, with entries kept in their original order.
    pub fn unsaturated_part(&self) -> Signature {
        let part = self.unsaturated_directions().into_iter().map(|d| self.0[d]).collect();
        Signature(part)
    }

    /// Directions selected by the threshold rule `a_i < 2^(s-1)`.
    pub fn unsaturated_by_threshold(&self) -> Vec<usize> {
        let s = self.unsaturated_len();
        let bound = 1u64 << (s - 1);
        (0..self.n()).filter(|&i| (self.0[i] as u64) < bound).collect()
    }

    /// Supersaturated means a permutation of `(1, 2, ..., 2^(n-1))`, `n >= 2`.
    pub fn is_supersaturated(&self) -> bool {
        self.n() >= 2 && self.excess_vector().iter().all(|&e| e == 0)
    }

    pub fn classify(&self) -> Classification {
        let ex = self.excess_vector();
        let n = self.n();
        let reducing_prefix_sizes: Vec<usize> = (1..n).filter(|&k| ex[k - 1] == 0).collect();
        let s = self.unsaturated_len();
        let kind = if reducing_prefix_sizes.is_empty() {
            ClassKind::Irreducible
        } else {
            // the unsaturated part is the sorted prefix of length s, which is
            // irreducible iff no shorter prefix has zero excess
            let unsat_reducible = reducing_prefix_sizes.iter().any(|&k| k < s);
            if unsat_reducible {
                ClassKind::StrictlyReducible
            } else {
                ClassKind::QuasiIrreducible
            }
        };
        Classification {
            kind,
            saturated_above: (s < n).then_some(s),
            unsaturated_len: s,
            supersaturated: self.is_supersaturated(),
            reducing_prefix_sizes,
            unsat_threshold_disagrees: self.unsaturated_by_threshold() != self.unsaturated_directions(),
        }
    }
}

/// All nondecreasing signatures of `Q_n` in lexicographic order.
pub fn enumerate_ordered_signatures(n: usize) -> Vec<Signature> {
    let mut out = Vec::new();
    for_each_ordered_signature(n, |s| out.push(Signature(s.to_vec())));
    out
}

/// Every signature of `Q_n`, permutations included, in lexicographic order.
/// Meant for small `n`: there are `n!` orderings per ordered signature.
pub fn all_signatures(n: usize) -> Vec<Signature> {
    let mut out = Vec::new();
    for_each_ordered_signature(n, |s| {
        let mut p = s.to_vec();
        loop {
            out.push(Signature(p.clone()));
            if !next_permutation(&mut p) {
                break;
            }
        }
    });
    out.sort();
    out
}

fn next_permutation(p: &mut [u32]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("p[i] qualifies");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Streaming form of [`enumerate_ordered_signatures`].
pub fn for_each_ordered_signature(n: usize, mut f: impl FnMut(&[u32])) {
    assert!((1..=MAX_SIG_DIM).contains(&n));
    let total = (1u64 << n) - 1;
    let cap = 1u64 << (n - 1);
    let mut buf = Vec::with_capacity(n);
    fn rec(n: usize, total: u64, cap: u64, sum: u64, buf: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        let k = buf.len();
        if k == n {
            if sum == total {
                f(buf);
            }
            return;
        }
        let lo = buf.last().map_or(1, |&a| a as u64);
        let left = (n - k) as u64;
        // the final entry is forced
        if left == 1 {
            let a = total - sum;
            if a >= lo && a <= cap && sum + a >= (1u64 << (k + 1)) - 1 {
                buf.push(a as u32);
                f(buf);
                buf.pop();
            }
            return;
        }
        let mut a = lo.max(((1u64 << (k + 1)) - 1).saturating_sub(sum));
        while a <= cap && sum + a * left <= total {
            buf.push(a as u32);
            rec(n, total, cap, sum + a, buf, f);
            buf.pop();
            a += 1;
        }
    }
    rec(n, total, cap, 0, &mut buf, &mut f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_signatures_include_permutations() {
        let got: Vec<Vec<u32>> = all_signatures(3).iter().map(|s| s.entries().to_vec()).collect();
        assert_eq!(got.len(), 12);
        assert_eq!(got[0], vec![1, 2, 4]);
        assert!(got.contains(&vec![3, 3, 1]));
        assert!(got.windows(2).all(|w| w[0] < w[1]));
        assert!(all_signatures(4)
            .iter()
            .all(|s| Signature::new(s.entries().to_vec()).is_ok()));
    }

    fn sig(e: &[u32]) -> Signature {
        Signature::new(e.to_vec()).unwrap()
    }

    #[test]
    fn characterisation_examples() {
        assert!(is_signature(&[2, 2, 3]));
        assert!(is_signature(&[1]));
        assert!(!is_signature(&[1, 1, 5]));
        assert!(is_signature(&[3, 4, 4, 4]));
        assert!(is_signature(&[4, 2, 1]));
        assert!(!is_signature(&[]));
        assert!(!is_signature(&[0, 3, 4]));
        assert!(!is_signature(&[1, 1, 1]));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Signature::parse("2,2,3").unwrap().entries(), &[2, 2, 3]);
        assert_eq!(Signature::parse("(1, 2, 4)").unwrap().entries(), &[1, 2, 4]);
        assert!(matches!(Signature::parse("1,x"), Err(Error::SignatureParse(_))));
        assert!(matches!(Signature::parse("1,1,5"), Err(Error::InvalidSignature { .. })));
        let json = serde_json::to_string(&sig(&[2, 2, 3])).unwrap();
        assert_eq!(json, "[2,2,3]");
        assert!(serde_json::from_str::<Signature>("[1,1,5]").is_err());
    }

    #[test]
    fn excess_examples() {
        for s in enumerate_ordered_signatures(4) {
            assert_eq!(s.excess(4).unwrap(), 0);
        }
        let s = sig(&[1, 2, 4]);
        assert_eq!(s.excess_vector(), vec![0, 0, 0]);
        let s = sig(&[2, 2, 3]);
        assert_eq!(s.excess(1).unwrap(), 1);
        assert_eq!(s.excess(2).unwrap(), 1);
        // unordered: min over singletons
        assert_eq!(sig(&[3, 2, 2]).excess(1).unwrap(), 1);
        assert!(s.excess(0).is_err());
        assert!(s.excess(4).is_err());
    }

    #[test]
    fn reducing_set_examples() {
        assert_eq!(sig(&[1, 3, 3]).reducing_sets(), vec![0b001]);
        assert!(sig(&[2, 2, 3]).reducing_sets().is_empty());
        let s = sig(&[2, 2, 3, 9, 15, 32, 64]);
        let sizes: Vec<u32> = s.reducing_sets().iter().map(|m| m.count_ones()).collect();
        assert_eq!(sizes, vec![3, 5, 6]);
        // (1,2,4): {1}, {1,2}
        assert_eq!(sig(&[1, 2, 4]).reducing_sets(), vec![0b001, 0b011]);
    }

    #[test]
    fn reducing_sets_match_brute_force() {
        for n in 1..=6 {
            for s in enumerate_ordered_signatures(n) {
                // check on a rotated copy so ties and order both matter
                let mut e = s.entries().to_vec();
                e.rotate_left(n / 2);
                let s = sig(&e);
                let full = (1u32 << n) - 1;
                let mut brute: Vec<u32> = (1..full).filter(|&m| s.reduces_over(m)).collect();
                brute.sort_by_key(|&m| {
                    let els: Vec<usize> = crate::cube::elements(m).collect();
                    (m.count_ones(), els)
                });
                assert_eq!(s.reducing_sets(), brute, "{s}");
            }
        }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(sig(&[1, 2, 4]).classify().kind, ClassKind::QuasiIrreducible);
        assert_eq!(sig(&[1, 3, 3]).classify().kind, ClassKind::StrictlyReducible);
        assert_eq!(sig(&[2, 2, 3]).classify().kind, ClassKind::Irreducible);
        assert_eq!(sig(&[1, 3, 3, 8]).classify().kind, ClassKind::StrictlyReducible);
        assert_eq!(sig(&[2, 2, 3, 8]).classify().kind, ClassKind::QuasiIrreducible);
        let c = sig(&[2, 2, 4, 8, 15, 32, 64]).classify();
        assert_eq!(c.kind, ClassKind::QuasiIrreducible);
        assert_eq!(c.saturated_above, Some(5));
        assert_eq!(sig(&[1]).classify().kind, ClassKind::Irreducible);
        let c = sig(&[1, 2]).classify();
        assert_eq!(c.kind, ClassKind::QuasiIrreducible);
        assert!(c.supersaturated);
        assert_eq!(c.saturated_above, Some(1));
        assert!(!sig(&[1]).classify().supersaturated);
    }

    #[test]
    fn unsaturated_part_examples() {
        assert_eq!(sig(&[1, 2, 4, 8]).unsaturated_part(), sig(&[1]));
        assert_eq!(sig(&[2, 2, 3, 8]).unsaturated_part(), sig(&[2, 2, 3]));
        assert_eq!(sig(&[2, 2, 3]).unsaturated_part(), sig(&[2, 2, 3]));
        assert_eq!(sig(&[8, 3, 3, 1]).unsaturated_part(), sig(&[3, 3, 1]));
        assert!(!sig(&[8, 3, 3, 1]).classify().unsat_threshold_disagrees);
        // with s = 1 the strict threshold 2^0 selects nothing
        assert!(sig(&[1, 2, 4, 8]).classify().unsat_threshold_disagrees);
    }

    #[test]
    fn low_dimensional_tables() {
        let t = |n| -> Vec<Vec<u32>> {
            enumerate_ordered_signatures(n)
                .into_iter()
                .map(|s| s.entries().to_vec())
                .collect()
        };
        assert_eq!(t(1), vec![vec![1]]);
        assert_eq!(t(2), vec![vec![1, 2]]);
        assert_eq!(t(3), vec![vec![1, 2, 4], vec![1, 3, 3], vec![2, 2, 3]]);
        assert_eq!(t(4).len(), 18);
    }

    #[test]
    fn ordered_signatures_are_exactly_the_sorted_valid_tuples() {
        // brute force over all nondecreasing tuples bounded by 2^(n-1)
        for n in 1..=5usize {
            let cap = 1u32 << (n - 1);
            let mut brute = Vec::new();
            let mut cur = vec![1u32; n];
            loop {
                let wide: Vec<u64> = cur.iter().map(|&a| a as u64).collect();
                if cur.windows(2).all(|w| w[0] <= w[1]) && is_signature(&wide) {
                    brute.push(cur.clone());
                }
                let mut i = n;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    if cur[i] < cap {
                        cur[i] += 1;
                        for j in i + 1..n {
                            cur[j] = 1;
                        }
                        break;
                    } else if i == 0 {
                        i = usize::MAX;
                        break;
                    }
                }
                if i == usize::MAX {
                    break;
                }
            }
            let got: Vec<Vec<u32>> = enumerate_ordered_signatures(n).into_iter().map(|s| s.0).collect();
            assert_eq!(got, brute, "n = {n}");
        }
    }

    #[test]
    fn growth_lemma_and_saturation_remark() {
        for n in 1..=6 {
            for s in enumerate_ordered_signatures(n) {
                for (i, &a) in s.entries().iter().enumerate() {
                    assert!((i as u32) < a, "{s}");
                }
                let ex = s.excess_vector();
                for k in 2..=n {
                    if ex[k - 2] == 0 && ex[k - 1] == 0 {
                        assert_eq!(s.get(k - 1), 1 << (k - 1), "{s} k={k}");
                    }
                }
                // a reducing set of size r exists iff [r] reduces
                let sets = s.reducing_sets();
                for r in 1..n {
                    let any = sets.iter().any(|m| m.count_ones() as usize == r);
                    assert_eq!(any, s.reduces_over((1 << r) - 1));
                }
            }
        }
    }

    #[test]
    fn classify_is_permutation_invariant() {
        for s in enumerate_ordered_signatures(5) {
            let c = s.classify();
            let mut e = s.entries().to_vec();
            e.reverse();
            let r = sig(&e);
            let cr = r.classify();
            assert_eq!(c.kind, cr.kind);
            assert_eq!(c.unsaturated_len, cr.unsaturated_len);
            let mut a = r.unsaturated_part().0;
            a.sort_unstable();
            assert_eq!(a, s.unsaturated_part().0);
        }
    }

    #[test]
    fn q4_classification_counts() {
        let mut counts = [0; 3];
        for s in enumerate_ordered_signatures(4) {
            counts[s.classify().kind as usize] += 1;
        }
        assert_eq!(counts, [9, 2, 7]);
    }
}
