//! Naive re-implementations used as oracles. Each works from vertex and edge
//! lists only and shares no code with the library beyond the edge numbering.

#![allow(dead_code)]

use qslide::cube::CubeContext;
use qslide::tree::{bits, EdgeSet};

/// `(lower endpoint, upper endpoint)` of every edge in `set`.
pub fn pairs(cube: CubeContext, set: EdgeSet) -> Vec<(u32, u32)> {
    bits(set).map(|e| cube.endpoints(e)).collect()
}

/// Connected, spanning and with `|V| - 1` edges, by depth-first search.
pub fn is_spanning_tree(n: usize, edges: &[(u32, u32)]) -> bool {
    spans(n, edges, &(0..1u32 << n).collect::<Vec<_>>())
}

/// `edges` form a spanning tree of the vertex set `verts`.
pub fn spans(_n: usize, edges: &[(u32, u32)], verts: &[u32]) -> bool {
    if edges.len() + 1 != verts.len() {
        return false;
    }
    let mut seen = vec![verts[0]];
    let mut stack = vec![verts[0]];
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
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
    seen.len() == verts.len()
}

/// Edges per direction, read off the endpoints.
pub fn signature(n: usize, edges: &[(u32, u32)]) -> Vec<u32> {
    let mut c = vec![0; n];
    for &(a, b) in edges {
        c[(a ^ b).trailing_zeros() as usize] += 1;
    }
    c
}

/// Whether `T - e + σ_i(e)` is again a spanning tree.
pub fn slidable(cube: CubeContext, set: EdgeSet, e: usize, i: usize) -> bool {
    let (a, b) = cube.endpoints(e);
    let moved = (a ^ 1 << i, b ^ 1 << i);
    let mut edges: Vec<(u32, u32)> = pairs(cube, set).into_iter().filter(|&p| p != (a, b)).collect();
    let norm = (moved.0.min(moved.1), moved.0.max(moved.1));
    if edges.contains(&norm) {
        return false;
    }
    edges.push(norm);
    is_spanning_tree(cube.n(), &edges)
}

/// Every subcube `{W : W ∩ R = X}` meets the tree in a spanning tree of it.
pub fn reduces(cube: CubeContext, set: EdgeSet, r: u32) -> bool {
    let edges = pairs(cube, set);
    let mut x = 0u32;
    loop {
        let verts: Vec<u32> = (0..1u32 << cube.n()).filter(|w| w & r == x).collect();
        let inside: Vec<(u32, u32)> = edges
            .iter()
            .copied()
            .filter(|&(a, b)| a & r == x && b & r == x)
            .collect();
        if !spans(cube.n(), &inside, &verts) {
            return false;
        }
        x = x.wrapping_sub(r) & r;
        if x == 0 {
            return true;
        }
    }
}

/// Minimum over `k`-sets of directions of the entry sum, minus `2^k - 1`.
pub fn excess(a: &[u32], k: usize) -> i64 {
    let n = a.len();
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).map(|i| a[i] as i64).sum::<i64>())
        .min()
        .unwrap()
        - ((1i64 << k) - 1)
}

/// Every choice function on the nonempty subsets of `[n]`, as a value table
/// indexed by subset bitmask (entry 0 unused).
pub fn all_choice_functions(n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![0u8; 1 << n]];
    for x in 1..1u32 << n {
        let mut next = Vec::new();
        for f in &out {
            for i in 0..n {
                if x >> i & 1 == 1 {
                    let mut g = f.clone();
                    g[x as usize] = i as u8;
                    next.push(g);
                }
            }
        }
        out = next;
    }
    out
}

pub fn choice_signature(n: usize, f: &[u8]) -> Vec<u32> {
    let mut c = vec![0; n];
    for &v in &f[1..] {
        c[v as usize] += 1;
    }
    c
}

/// Number of spanning trees of `Q_n` by the matrix-tree theorem, with a
/// fraction-free elimination of the reduced Laplacian.
pub fn kirchhoff(n: usize) -> i128 {
    let v = 1usize << n;
    let m = v - 1;
    let mut a = vec![vec![0i128; m]; m];
    for (r, row) in a.iter_mut().enumerate() {
        let x = r + 1;
        row[r] = n as i128;
        for i in 0..n {
            let y = x ^ 1 << i;
            if y != 0 {
                row[y - 1] = -1;
            }
        }
    }
    let mut prev = 1i128;
    for k in 0..m {
        // the reduced Laplacian is positive definite, so pivots stay positive
        assert!(a[k][k] > 0);
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    prev
}
