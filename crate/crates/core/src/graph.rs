//! Simple undirected graphs on `{0..n-1}` with packed bitset adjacency.
//!
//! Each vertex owns a row of `words_for(n)` words; adjacency tests are a
//! single shift and mask, and neighbourhood intersections are word-wise ANDs.
//! Equality is labelled equality (identical adjacency on identical vertex
//! numbering).

use std::collections::VecDeque;
use std::fmt;

use crate::bits;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edge_count())
            .finish()
    }
}

/// A line graph together with the edge of the base graph each vertex stands for.
#[derive(Debug, Clone)]
pub struct LineGraph {
    pub graph: Graph,
    pub edges: Vec<(usize, usize)>,
}

/// An induced subgraph and the original vertex behind each new index.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub vertices: Vec<usize>,
}

impl Graph {
    /// The null graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = bits::words_for(n);
        Graph { n, words, adj: vec![0; n * words] }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::PointOutOfRange { point: u.max(v), degree: n });
            }
            if u == v {
                return Err(Error::BadParameter(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        if n >= 3 {
            for i in 0..n {
                g.add_edge(i, (i + 1) % n);
            }
        } else if n == 2 {
            g.add_edge(0, 1);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    /// The Petersen graph as the Kneser graph K(5,2): 2-subsets of a 5-set,
    /// adjacent when disjoint.
    pub fn petersen() -> Self {
        let pairs: Vec<(usize, usize)> =
            (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        let mut g = Graph::empty(pairs.len());
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, d)) in pairs.iter().enumerate().skip(i + 1) {
                if a != c && a != d && b != c && b != d {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Adds the edge `{u, v}`. Panics on a loop or an out-of-range vertex.
    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loops are not allowed");
        assert!(u < self.n && v < self.n, "vertex out of range");
        bits::set(&mut self.adj[u * self.words..(u + 1) * self.words], v);
        bits::set(&mut self.adj[v * self.words..(v + 1) * self.words], u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        bits::clear(&mut self.adj[u * self.words..(u + 1) * self.words], v);
        bits::clear(&mut self.adj[v * self.words..(v + 1) * self.words], u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Words per adjacency row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        bits::test(self.row(u), v)
    }

    /// The adjacency row of `v` as a bitset over vertices.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.row(v))
    }

    pub fn degree(&self, v: usize) -> usize {
        bits::count(self.row(v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn is_null(&self) -> bool {
        bits::is_empty(&self.adj)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.neighbours(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// The common valency if the graph is regular. The graph on zero
    /// vertices is reported as 0-regular.
    pub fn regular_valency(&self) -> Option<usize> {
        let k = if self.n == 0 { 0 } else { self.degree(0) };
        (1..self.n).all(|v| self.degree(v) == k).then_some(k)
    }

    /// Open neighbourhood of `v` as a sorted vertex list.
    pub fn neighbourhood(&self, v: usize) -> Vec<usize> {
        self.neighbours(v).collect()
    }

    /// Closed neighbourhood `N(v) ∪ {v}`, sorted.
    pub fn closed_neighbourhood(&self, v: usize) -> Vec<usize> {
        let mut row = self.row(v).to_vec();
        bits::set(&mut row, v);
        bits::ones(&row).collect()
    }

    pub fn common_neighbour_count(&self, u: usize, v: usize) -> usize {
        bits::and_count(self.row(u), self.row(v))
    }

    /// True when no two distinct vertices share an open neighbourhood. Graphs
    /// with a primitive automorphism group that are neither null nor complete
    /// always satisfy this.
    pub fn has_distinct_neighbourhoods(&self) -> bool {
        let mut rows: Vec<&[u64]> = (0..self.n).map(|v| self.row(v)).collect();
        rows.sort_unstable();
        rows.windows(2).all(|w| w[0] != w[1])
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        let mut full = vec![0u64; self.words];
        bits::fill(&mut full, self.n);
        for v in 0..self.n {
            let dst = &mut g.adj[v * self.words..(v + 1) * self.words];
            for ((d, s), f) in dst.iter_mut().zip(self.row(v)).zip(&full) {
                *d = !s & f;
            }
            bits::clear(dst, v);
        }
        g
    }

    /// Cartesian product. Vertex `(x, y)` has index `x * other.n() + y`.
    pub fn box_product(&self, other: &Graph) -> Graph {
        let m = other.n;
        let mut g = Graph::empty(self.n * m);
        for x in 0..self.n {
            for y in 0..m {
                let v = x * m + y;
                for y2 in other.neighbours(y).filter(|&y2| y2 > y) {
                    g.add_edge(v, x * m + y2);
                }
                for x2 in self.neighbours(x).filter(|&x2| x2 > x) {
                    g.add_edge(v, x2 * m + y);
                }
            }
        }
        g
    }

    /// Direct (tensor) product: adjacent iff adjacent in both coordinates.
    /// Vertex indexing as for [`Graph::box_product`].
    pub fn direct_product(&self, other: &Graph) -> Graph {
        let m = other.n;
        let mut g = Graph::empty(self.n * m);
        for (x1, x2) in self.edges() {
            for (y1, y2) in other.edges() {
                g.add_edge(x1 * m + y1, x2 * m + y2);
                g.add_edge(x1 * m + y2, x2 * m + y1);
            }
        }
        g
    }

    /// The line graph; vertex `i` is the `i`-th edge in lexicographic order.
    pub fn line_graph(&self) -> Result<LineGraph> {
        let edges = self.edges();
        if edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut g = Graph::empty(edges.len());
        for i in 0..edges.len() {
            let (a, b) = edges[i];
            for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
                if a == c || a == d || b == c || b == d {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(LineGraph { graph: g, edges })
    }

    /// Triangular graph `T(m) = L(K_m)`; vertex `i` is the `i`-th 2-subset of
    /// `{0..m-1}` in lexicographic order (see [`pair_index`]).
    pub fn triangular(m: usize) -> Result<Graph> {
        if m < 3 {
            return Err(Error::BadParameter(format!("triangular graph needs m >= 3, got {m}")));
        }
        Ok(Graph::complete(m).line_graph()?.graph)
    }

    pub fn induced_subgraph(&self, vertices: &[usize]) -> InducedSubgraph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        InducedSubgraph { graph: g, vertices: vertices.to_vec() }
    }

    /// Two triangles sharing vertex `A`. Labels `A..E` are indices `0..4`;
    /// the triangles are `{A,B,C}` and `{A,D,E}`.
    pub fn butterfly() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)]).unwrap()
    }

    /// Cayley graph of `GF(2)^dim`: `u ~ v` iff `u ^ v` is in the connection set.
    pub fn cayley_gf2(dim: u32, connection: &[u64]) -> Result<Graph> {
        if dim > 16 {
            return Err(Error::TooLarge(format!("GF(2)^{dim} has too many vectors")));
        }
        let n = 1usize << dim;
        if connection.iter().any(|&c| c == 0) {
            return Err(Error::ZeroInConnectionSet);
        }
        if let Some(&c) = connection.iter().find(|&&c| c as usize >= n) {
            return Err(Error::BadParameter(format!("vector {c:#b} outside GF(2)^{dim}")));
        }
        let mut g = Graph::empty(n);
        for u in 0..n {
            for &c in connection {
                let v = u ^ c as usize;
                if v > u {
                    g.add_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbours(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbours(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Two-colouring of a bipartite graph (colour of each vertex), if one exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbours(u) {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_independent(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }

    /// True when `images` is a bijection of the vertex set preserving adjacency.
    pub fn is_automorphism(&self, images: &[usize]) -> bool {
        if images.len() != self.n {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &x in images {
            if x >= self.n || std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        self.edges().iter().all(|&(u, v)| self.has_edge(images[u], images[v]))
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Brute-force isomorphism test over all `n!` bijections, for `n <= 10`.
    pub fn is_isomorphic_brute_force(&self, other: &Graph) -> Result<bool> {
        if self.n > 10 {
            return Err(Error::TooLarge(format!("brute-force isomorphism on {} vertices", self.n)));
        }
        if self.n != other.n || self.edge_count() != other.edge_count() {
            return Ok(false);
        }
        let mut a = self.degrees();
        let mut b = other.degrees();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(false);
        }
        let mut perm: Vec<usize> = (0..self.n).collect();
        let edges = self.edges();
        let found = permutations_any(&mut perm, 0, &mut |p| {
            edges.iter().all(|&(u, v)| other.has_edge(p[u], p[v]))
        });
        Ok(found)
    }
}

fn permutations_any(p: &mut [usize], k: usize, pred: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return pred(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permutations_any(p, k + 1, pred) {
            p.swap(k, i);
            return true;
        }
        p.swap(k, i);
    }
    false
}

/// Index of the 2-subset `{a, b}` (`a != b`) of `{0..m-1}` in lexicographic order.
pub fn pair_index(m: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    a * (2 * m - a - 1) / 2 + (b - a - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_complete_is_null() {
        assert!(Graph::complete(6).complement().is_null());
        let g = Graph::cycle(7);
        assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn rook_graphs() {
        let k4 = Graph::complete(4);
        let r = k4.box_product(&k4);
        assert_eq!(r.n(), 16);
        assert_eq!(r.regular_valency(), Some(6));
        assert_eq!(r.complement().regular_valency(), Some(9));
        let k3 = Graph::complete(3);
        assert_eq!(k3.box_product(&k3).regular_valency(), Some(4));
        assert_eq!(Graph::complete(1).box_product(&Graph::petersen()), Graph::petersen());
    }

    #[test]
    fn line_graphs() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.line_graph().unwrap().graph, k3);
        let t6 = Graph::triangular(6).unwrap();
        assert_eq!(t6.n(), 15);
        assert_eq!(t6.regular_valency(), Some(8));
        assert_eq!(Graph::triangular(3).unwrap(), k3);
        assert_eq!(Graph::empty(4).line_graph().unwrap_err(), Error::EmptyGraph);
        assert!(matches!(Graph::triangular(2), Err(Error::BadParameter(_))));
        let t8 = Graph::triangular(8).unwrap();
        assert_eq!((t8.n(), t8.regular_valency()), (28, Some(12)));
    }

    #[test]
    fn pair_index_is_lexicographic() {
        let m = 7;
        let mut i = 0;
        for a in 0..m {
            for b in a + 1..m {
                assert_eq!(pair_index(m, a, b), i);
                assert_eq!(pair_index(m, b, a), i);
                i += 1;
            }
        }
    }

    #[test]
    fn induced_subgraphs() {
        let p = Graph::petersen();
        let all: Vec<usize> = (0..10).collect();
        assert_eq!(p.induced_subgraph(&all).graph, p);
        // {01, 02, 03, 04} pairwise intersect, so independent in K(5,2)
        let ind = p.induced_subgraph(&[0, 1, 2, 3]);
        assert!(ind.graph.is_null());
    }

    #[test]
    fn butterfly_shape() {
        let b = Graph::butterfly();
        assert_eq!(b.n(), 5);
        assert_eq!(b.edge_count(), 6);
        assert_eq!(b.degrees(), vec![4, 2, 2, 2, 2]);
    }

    #[test]
    fn cayley_small() {
        assert_eq!(Graph::cayley_gf2(2, &[1, 2]).unwrap(), Graph::cycle(4).permuted(&[0, 1, 3, 2]));
        let all: Vec<u64> = (1..8).collect();
        assert_eq!(Graph::cayley_gf2(3, &all).unwrap(), Graph::complete(8));
        assert_eq!(Graph::cayley_gf2(3, &[0, 1]).unwrap_err(), Error::ZeroInConnectionSet);
    }

    #[test]
    fn neighbourhoods() {
        let mut g = Graph::complete(4);
        assert_eq!(g.neighbourhood(0).len(), 3);
        assert_eq!(g.closed_neighbourhood(2), vec![0, 1, 2, 3]);
        g = Graph::empty(3);
        assert!(g.neighbourhood(1).is_empty());
        assert!(Graph::petersen().has_distinct_neighbourhoods());
        // opposite vertices of a 4-cycle share both neighbours
        assert!(!Graph::cycle(4).has_distinct_neighbourhoods());
    }

    #[test]
    fn girth_and_components() {
        assert_eq!(Graph::petersen().girth(), Some(5));
        assert_eq!(Graph::path(4).girth(), None);
        assert_eq!(Graph::cycle(6).girth(), Some(6));
        let mut g = Graph::cycle(3).box_product(&Graph::empty(2));
        assert_eq!(g.components().len(), 2);
        g.add_edge(0, 1);
        assert!(g.bipartition().is_none());
        assert!(Graph::cycle(10).bipartition().is_some());
    }

    #[test]
    fn brute_force_isomorphism() {
        let c5 = Graph::cycle(5);
        let p = c5.permuted(&[2, 4, 1, 3, 0]);
        assert!(c5.is_isomorphic_brute_force(&p).unwrap());
        assert!(!c5.is_isomorphic_brute_force(&Graph::path(5)).unwrap());
    }
}
