mod common;

use proptest::prelude::*;
use qslide::cube::{CubeContext, SimpleGraph};
use qslide::exec::Exec;
use qslide::section::{count_upright, find_section, Section};
use qslide::signature::{all_signatures, is_signature, Signature};
use qslide::slide::{neighbors, slide};
use qslide::tree::{count_spanning_trees, random_spanning_tree, spanning_tree_formula, SpanningTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn sections_by_signature(n: usize) -> BTreeMap<Vec<u32>, Vec<Vec<u8>>> {
    let mut out: BTreeMap<Vec<u32>, Vec<Vec<u8>>> = BTreeMap::new();
    for f in common::all_choice_functions(n) {
        out.entry(common::choice_signature(n, &f)).or_default().push(f);
    }
    out
}

#[test]
fn formula_matches_matrix_tree_count() {
    for n in 1..=4 {
        let k = common::kirchhoff(n);
        assert_eq!(spanning_tree_formula(n), (k as u64).into(), "n = {n}");
    }
    let c = CubeContext::new(3).unwrap();
    assert_eq!(
        count_spanning_trees(c, false, &Exec::sequential()).unwrap() as i128,
        common::kirchhoff(3)
    );
}

#[test]
fn upright_counts_match_brute_force() {
    for n in 1..=4 {
        let table = sections_by_signature(n);
        for s in all_signatures(n) {
            let want = table.get(s.entries()).map_or(0, Vec::len);
            assert_eq!(count_upright(&s, false).unwrap(), want as u128, "{s}");
        }
        // every tuple realised by a choice function is a signature
        assert_eq!(table.len(), all_signatures(n).len());
    }
}

#[test]
fn signature_test_matches_brute_force() {
    for n in 1..=4 {
        let table = sections_by_signature(n);
        let total = (1u64 << n) - 1;
        let mut t = vec![1u64; n];
        loop {
            if t.iter().sum::<u64>() == total {
                let key: Vec<u32> = t.iter().map(|&a| a as u32).collect();
                assert_eq!(is_signature(&t), table.contains_key(&key), "{t:?}");
            }
            let Some(k) = (0..n).find(|&k| t[k] < total) else { break };
            t[k] += 1;
            t[..k].fill(1);
        }
    }
}

#[test]
fn excess_and_reducing_sets_match_brute_force() {
    for n in 2..=5 {
        for s in qslide::signature::enumerate_ordered_signatures(n) {
            let a = s.entries();
            for k in 1..=n {
                assert_eq!(s.excess(k).unwrap() as i64, common::excess(a, k), "{s} k={k}");
            }
            let want: Vec<u32> = (1..(1u32 << n) - 1)
                .filter(|&m| {
                    let sum: u64 = (0..n).filter(|&i| m >> i & 1 == 1).map(|i| a[i] as u64).sum();
                    sum == (1u64 << m.count_ones()) - 1
                })
                .collect();
            let mut got = s.reducing_sets();
            got.sort_unstable();
            assert_eq!(got, want, "{s}");
        }
    }
}

fn brute_force_exists(table: &BTreeMap<Vec<u32>, Vec<Vec<u8>>>, s: &Signature, cons: &[(u32, usize)]) -> bool {
    table.get(s.entries()).is_some_and(|fs| {
        fs.iter()
            .any(|f| cons.iter().all(|&(x, v)| f[x as usize] as usize == v))
    })
}

#[test]
fn find_section_matches_brute_force_single() {
    for n in 1..=4 {
        let table = sections_by_signature(n);
        for s in all_signatures(n) {
            for x in 1..1u32 << n {
                for v in (0..n).filter(|&v| x >> v & 1 == 1) {
                    let got = find_section(&s, &[(x, v)]).unwrap();
                    assert_eq!(
                        got.is_some(),
                        brute_force_exists(&table, &s, &[(x, v)]),
                        "{s} {x:#b} {v}"
                    );
                    if let Some(sec) = got {
                        assert_eq!(sec.signature(), s);
                        assert_eq!(sec.get(x), v);
                    }
                }
            }
        }
    }
}

#[test]
fn find_section_matches_brute_force_random() {
    let table = sections_by_signature(4);
    let sigs = all_signatures(4);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..3000 {
        let s = &sigs[rng.gen_range(0..sigs.len())];
        let k = rng.gen_range(0..=4);
        let mut cons: Vec<(u32, usize)> = Vec::new();
        while cons.len() < k {
            let x = rng.gen_range(1..16u32);
            if cons.iter().any(|c| c.0 == x) {
                continue;
            }
            let elems: Vec<usize> = (0..4).filter(|&i| x >> i & 1 == 1).collect();
            cons.push((x, elems[rng.gen_range(0..elems.len())]));
        }
        let got = find_section(s, &cons).unwrap();
        assert_eq!(got.is_some(), brute_force_exists(&table, s, &cons), "{s} {cons:?}");
    }
}

#[test]
fn section_tree_round_trip() {
    for n in 1..=4 {
        for f in common::all_choice_functions(n).into_iter().step_by(7) {
            let sec = Section::new(n, f.clone()).unwrap();
            let t = sec.to_tree().unwrap();
            assert!(t.is_upright());
            let cube = t.cube();
            let p = common::pairs(cube, t.bits());
            assert!(common::is_spanning_tree(n, &p));
            assert_eq!(common::signature(n, &p), common::choice_signature(n, &f));
            assert_eq!(Section::from_tree(&t).unwrap(), sec);
        }
    }
}

#[test]
fn hypercube_recognition() {
    for k in 0..=6 {
        assert!(SimpleGraph::hypercube(k).is_hypercube(k));
    }
    // 3-regular on 8 vertices but not a cube
    let prism = SimpleGraph::from_edges(
        8,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 4),
            (0, 4),
            (1, 6),
            (2, 5),
            (3, 7),
        ],
    );
    assert_eq!(prism.regular_degree(), Some(3));
    assert!(!prism.is_hypercube(3));
    assert!(!SimpleGraph::cycle(8).is_hypercube(3));
    assert!(SimpleGraph::cycle(4).is_hypercube(2));
    let q2 = SimpleGraph::hypercube(2);
    assert!(q2.cartesian_product(&SimpleGraph::hypercube(1)).is_hypercube(3));
}

fn tree_strategy(n: usize) -> impl Strategy<Value = SpanningTree> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_spanning_tree(CubeContext::new(n).unwrap(), &mut rng)
    })
}

proptest! {
    #[test]
    fn slides_preserve_signature_and_invert(t in tree_strategy(4)) {
        let cube = t.cube();
        for m in neighbors(&t) {
            let u = SpanningTree::new(cube, m.result).unwrap();
            prop_assert_eq!(u.signature(), t.signature());
            prop_assert!(common::slidable(cube, t.bits(), m.edge, m.direction));
            let back = slide(&u, cube.sigma(m.edge, m.direction), m.direction).unwrap();
            prop_assert_eq!(back, t);
        }
    }

    #[test]
    fn decomposition_round_trips(t in tree_strategy(4)) {
        for r in t.signature().reducing_sets() {
            let d = t.decompose(r).unwrap();
            prop_assert_eq!(d.recompose().unwrap(), t);
            prop_assert!(common::reduces(t.cube(), t.bits(), r));
        }
    }

    #[test]
    fn tuple_serialisation_round_trips(t in tree_strategy(3)) {
        let j = serde_json::to_string(&t).unwrap();
        let back: SpanningTree = serde_json::from_str(&j).unwrap();
        prop_assert_eq!(back, t);
        prop_assert_eq!(SpanningTree::from_bytes(3, &t.to_bytes()).unwrap(), t);
    }
}
