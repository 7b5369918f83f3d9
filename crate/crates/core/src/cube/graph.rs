use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::fmt::Write;

/// Undirected simple graph on vertices `0..len`, stored as adjacency lists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<u32>>,
    names: Option<Vec<String>>,
}

/// JSON adjacency form: `{"n": .., "vertices": [..], "edges": [[u, v], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub n: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

impl SimpleGraph {
    pub fn new(vertices: usize) -> Self {
        SimpleGraph {
            adj: vec![Vec::new(); vertices],
            names: None,
        }
    }

    /// Builds from an edge list, dropping duplicates. Panics on a self-loop.
    pub fn from_edges(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(vertices);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g.dedup();
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loop at {u}");
        self.adj[u].push(v as u32);
        self.adj[v].push(u as u32);
    }

    fn dedup(&mut self) {
        for list in &mut self.adj {
            list.sort_unstable();
            list.dedup();
        }
    }

    pub fn set_names(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.adj.len());
        self.names = Some(names);
    }

    pub fn name(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => v.to_string(),
        }
    }

    /// The `k`-cube on vertices `0..2^k`, adjacent when they differ in one bit.
    pub fn hypercube(k: usize) -> Self {
        let mut g = Self::new(1 << k);
        for v in 0..1usize << k {
            for i in 0..k {
                let w = v ^ (1 << i);
                if v < w {
                    g.add_edge(v, w);
                }
            }
        }
        g
    }

    pub fn cycle(len: usize) -> Self {
        Self::from_edges(len, (0..len).map(|i| (i, (i + 1) % len)))
    }

    pub fn path(len: usize) -> Self {
        Self::from_edges(len + 1, (0..len).map(|i| (i, i + 1)))
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&(v as u32))
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, sorted.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v as usize)).filter(|(u, v)| u < v))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Component index per vertex, numbered in order of smallest vertex.
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.adj.len()];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.adj.len() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if label[w as usize] == usize::MAX {
                        label[w as usize] = count;
                        queue.push_back(w as usize);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().0
    }

    pub fn is_connected(&self) -> bool {
        self.adj.len() <= 1 || self.component_count() == 1
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> SimpleGraph {
        let mut index = vec![u32::MAX; self.adj.len()];
        for (k, &v) in vertices.iter().enumerate() {
            index[v] = k as u32;
        }
        let mut g = SimpleGraph::new(vertices.len());
        for (k, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w as usize];
                if j != u32::MAX && (k as u32) < j {
                    g.add_edge(k, j as usize);
                }
            }
        }
        if let Some(names) = &self.names {
            g.names = Some(vertices.iter().map(|&v| names[v].clone()).collect());
        }
        g
    }

    /// Disconnected sum; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let shift = self.adj.len() as u32;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|l| l.iter().map(|&w| w + shift).collect()));
        SimpleGraph { adj, names: None }
    }

    /// Cartesian product. Vertex `(g, h)` gets index `g * |H| + h`.
    pub fn cartesian_product(&self, other: &SimpleGraph) -> SimpleGraph {
        let m = other.adj.len();
        let mut adj = Vec::with_capacity(self.adj.len() * m);
        for g in 0..self.adj.len() {
            for h in 0..m {
                let mut list: Vec<u32> = Vec::with_capacity(self.adj[g].len() + other.adj[h].len());
                list.extend(self.adj[g].iter().map(|&g2| (g2 as usize * m + h) as u32));
                list.extend(other.adj[h].iter().map(|&h2| (g * m + h2 as usize) as u32));
                list.sort_unstable();
                adj.push(list);
            }
        }
        let names = match (&self.names, &other.names) {
            (Some(a), Some(b)) => Some(
                a.iter()
                    .flat_map(|x| b.iter().map(move |y| format!("({x},{y})")))
                    .collect(),
            ),
            _ => None,
        };
        SimpleGraph { adj, names }
    }

    /// Tries to coordinatise the graph as `Q_k`. On success returns the label
    /// (a `k`-bit vector) of every vertex; the labelling is then an
    /// isomorphism onto [`SimpleGraph::hypercube`].
    ///
    /// Vertex 0 is labelled `0` and its neighbours get the unit vectors in
    /// adjacency order. Every vertex at distance `d >= 2` is labelled with the
    /// union of the labels of its neighbours at distance `d - 1`. The result
    /// is accepted only if it is a bijection onto `0..2^k` under which every
    /// edge flips exactly one bit.
    pub fn hypercube_labeling(&self, k: usize) -> Option<Vec<u32>> {
        let nv = self.adj.len();
        if k > 31 || nv != 1usize << k {
            return None;
        }
        if self.regular_degree() != Some(k) {
            return None;
        }
        if k == 0 {
            return Some(vec![0]);
        }
        let mut dist = vec![u32::MAX; nv];
        let mut label = vec![0u32; nv];
        let mut order = Vec::with_capacity(nv);
        dist[0] = 0;
        order.push(0usize);
        for (bit, &w) in self.adj[0].iter().enumerate() {
            dist[w as usize] = 1;
            label[w as usize] = 1 << bit;
            order.push(w as usize);
        }
        let mut head = 1;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in &self.adj[u] {
                let w = w as usize;
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    order.push(w);
                }
            }
        }
        if order.len() != nv {
            return None;
        }
        for &u in &order[1 + k..] {
            let d = dist[u];
            let mut acc = 0u32;
            let mut down = 0;
            for &w in &self.adj[u] {
                let w = w as usize;
                if dist[w] + 1 == d {
                    acc |= label[w];
                    down += 1;
                }
            }
            if down != d || acc.count_ones() != d {
                return None;
            }
            label[u] = acc;
        }
        let mut seen = vec![false; nv];
        for &l in &label {
            if seen[l as usize] {
                return None;
            }
            seen[l as usize] = true;
        }
        for (u, list) in self.adj.iter().enumerate() {
            for &w in list {
                if (label[u] ^ label[w as usize]).count_ones() != 1 {
                    return None;
                }
            }
        }
        Some(label)
    }

    pub fn is_hypercube(&self, k: usize) -> bool {
        self.hypercube_labeling(k).is_some()
    }

    /// `Some(k)` if the graph is isomorphic to `Q_k`.
    pub fn hypercube_dimension(&self) -> Option<usize> {
        let nv = self.adj.len();
        if !nv.is_power_of_two() {
            return None;
        }
        let k = nv.trailing_zeros() as usize;
        self.is_hypercube(k).then_some(k)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{name}\" {{");
        for v in 0..self.adj.len() {
            if self.adj[v].is_empty() {
                let _ = writeln!(out, "  \"{}\";", self.name(v));
            }
        }
        for (u, v) in self.edge_list() {
            let _ = writeln!(out, "  \"{}\" -- \"{}\";", self.name(u), self.name(v));
        }
        out.push_str("}\n");
        out
    }

    pub fn export(&self, n: usize) -> GraphExport {
        GraphExport {
            n,
            vertices: (0..self.adj.len()).map(|v| self.name(v)).collect(),
            edges: self.edge_list().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_export(ex: &GraphExport) -> SimpleGraph {
        let mut g = Self::from_edges(ex.vertices.len(), ex.edges.iter().map(|e| (e[0], e[1])));
        g.set_names(ex.vertices.clone());
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn q1_squared_is_q2() {
        let q1 = SimpleGraph::hypercube(1);
        let p = q1.cartesian_product(&q1);
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.edge_count(), 4);
        assert!(p.is_hypercube(2));
    }

    #[test]
    fn product_distributes_over_disjoint_union() {
        let g = SimpleGraph::hypercube(1).disjoint_union(&SimpleGraph::hypercube(2));
        let h = SimpleGraph::path(2);
        let lhs = g.cartesian_product(&h);
        let rhs = SimpleGraph::hypercube(1)
            .cartesian_product(&h)
            .disjoint_union(&SimpleGraph::hypercube(2).cartesian_product(&h));
        // same vertex ordering: (g, h) -> g * |H| + h on both sides
        assert_eq!(lhs.edge_list(), rhs.edge_list());
        assert_eq!(lhs.component_count(), 2);
    }

    #[test]
    fn recognition_basics() {
        assert!(SimpleGraph::hypercube(4).is_hypercube(4));
        assert!(!SimpleGraph::hypercube(4).is_hypercube(3));
        for k in 0..8 {
            assert!(!SimpleGraph::cycle(6).is_hypercube(k));
        }
        assert!(SimpleGraph::cycle(4).is_hypercube(2));
        assert!(!SimpleGraph::cycle(8).is_hypercube(3));
        assert_eq!(SimpleGraph::new(1).hypercube_dimension(), Some(0));
        // 3-regular on 8 vertices but not Q3: two disjoint K4
        let k4 = SimpleGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(!k4.disjoint_union(&k4).is_hypercube(3));
        // the Wagner graph: 3-regular on 8 vertices, but has 5-cycles
        let mut edges: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        edges.extend((0..4).map(|i| (i, i + 4)));
        assert!(!SimpleGraph::from_edges(8, edges).is_hypercube(3));
    }

    #[test]
    fn relabelled_cube_is_recognised_with_certificate() {
        let q = SimpleGraph::hypercube(5);
        // scramble vertex ids with a fixed permutation
        let perm: Vec<usize> = (0..32).map(|v| (v * 13 + 7) % 32).collect();
        let g = SimpleGraph::from_edges(32, q.edge_list().into_iter().map(|(u, v)| (perm[u], perm[v])));
        let labels = g.hypercube_labeling(5).expect("is a 5-cube");
        for (u, v) in g.edge_list() {
            assert_eq!((labels[u] ^ labels[v]).count_ones(), 1);
        }
    }

    #[test]
    fn dot_and_json_forms() {
        let mut g = SimpleGraph::hypercube(1);
        g.set_names(vec!["{}".into(), "{1}".into()]);
        assert_eq!(g.to_dot("q1"), "graph \"q1\" {\n  \"{}\" -- \"{1}\";\n}\n");
        let ex = g.export(1);
        let text = serde_json::to_string(&ex).unwrap();
        assert_eq!(text, r#"{"n":1,"vertices":["{}","{1}"],"edges":[[0,1]]}"#);
        let back: GraphExport = serde_json::from_str(&text).unwrap();
        assert_eq!(SimpleGraph::from_export(&back), g);
    }

    proptest! {
        #[test]
        fn product_counts(a in 0usize..5, b in 0usize..5) {
            let ga = SimpleGraph::hypercube(a);
            let gb = SimpleGraph::cycle(3).disjoint_union(&SimpleGraph::hypercube(b));
            let p = ga.cartesian_product(&gb);
            prop_assert_eq!(p.vertex_count(), ga.vertex_count() * gb.vertex_count());
            prop_assert_eq!(
                p.edge_count(),
                ga.edge_count() * gb.vertex_count() + ga.vertex_count() * gb.edge_count()
            );
        }

        #[test]
        fn cube_products_are_cubes(a in 0usize..7, b in 0usize..7) {
            let p = SimpleGraph::hypercube(a).cartesian_product(&SimpleGraph::hypercube(b));
            prop_assert!(p.is_hypercube(a + b));
        }
    }
}
