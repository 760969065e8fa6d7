//! Permutations and permutation groups given by generators.
//!
//! Points are `0..n`. Permutations act on the right: `x·(p*q) = (x·p)·q`,
//! which matches reading a word of generators left to right. Nothing here
//! enumerates group elements; every predicate is decided from orbits of the
//! generators on points or pairs.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", crate::io::format_cycles(self))
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Validates that `images` is a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::PointOutOfRange { point: x, degree: n });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPermutation(format!("{x} appears twice")));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of degree `n` from disjoint 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut moved = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return Err(Error::PointOutOfRange { point: x, degree: n });
                }
                if std::mem::replace(&mut moved[x], true) {
                    return Err(Error::NotAPermutation(format!("{x} in two cycles")));
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` then `other`: `x ↦ other(self(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: other.degree() });
        }
        Ok(Permutation { images: self.images.iter().map(|&x| other.images[x]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for s in 0..self.degree() {
            if seen[s] || self.images[s] == s {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.images[s];
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }
}

/// A permutation group on `0..degree`, given by a non-empty generator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let degree = first.degree();
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
        }
        Ok(PermGroup { degree, generators })
    }

    /// The symmetric group on `n` points, generated by a transposition and an `n`-cycle.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[0, 1]]).unwrap());
        }
        if n >= 3 {
            let cyc: Vec<usize> = (0..n).collect();
            gens.push(Permutation::from_cycles(n, &[&cyc]).unwrap());
        }
        if gens.is_empty() {
            gens.push(Permutation::identity(n));
        }
        PermGroup { degree: n, generators: gens }
    }

    pub fn cyclic(n: usize) -> Self {
        let cyc: Vec<usize> = (0..n).collect();
        PermGroup { degree: n, generators: vec![Permutation::from_cycles(n, &[&cyc]).unwrap()] }
    }

    /// The dihedral group of order `2n` acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let rot = Permutation { images: (0..n).map(|i| (i + 1) % n).collect() };
        let refl = Permutation { images: (0..n).map(|i| (n - i) % n).collect() };
        PermGroup { degree: n, generators: vec![rot, refl] }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn orbit(&self, x: usize) -> Result<Vec<usize>> {
        if x >= self.degree {
            return Err(Error::PointOutOfRange { point: x, degree: self.degree });
        }
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut orbit = vec![x];
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            i += 1;
            for g in &self.generators {
                let z = g.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    orbit.push(z);
                }
            }
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    /// All orbits on points, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !seen[x] {
                let o = self.orbit(x).expect("point in range");
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    /// The finest block system in which `a` and `b` lie in a common block.
    ///
    /// Union-find closure: whenever two classes are merged, the images of
    /// their representatives under every generator are merged too.
    pub fn block_system(&self, a: usize, b: usize) -> Result<Vec<Vec<usize>>> {
        for p in [a, b] {
            if p >= self.degree {
                return Err(Error::PointOutOfRange { point: p, degree: self.degree });
            }
        }
        if a == b {
            return Err(Error::BadParameter("seed points must be distinct".into()));
        }
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let mut uf = UnionFind::new(self.degree);
        uf.union(a, b);
        let mut queue = VecDeque::from([(a, b)]);
        while let Some((x, y)) = queue.pop_front() {
            for g in &self.generators {
                let u = uf.find(g.apply(x));
                let v = uf.find(g.apply(y));
                if u != v {
                    uf.union(u, v);
                    queue.push_back((u, v));
                }
            }
        }
        Ok(uf.classes())
    }

    /// Transitive with no block system other than the trivial ones. Degree 1
    /// and transitive degree 2 groups count as primitive.
    pub fn is_primitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        (1..self.degree).all(|x| {
            self.block_system(0, x).map(|b| b.len() == 1).unwrap_or(false)
        })
    }

    /// Orbital index of each ordered pair `(x, y)`, stored at `x * n + y`, with
    /// orbitals numbered in order of first appearance.
    pub fn orbitals(&self) -> Vec<usize> {
        let n = self.degree;
        let mut label = vec![usize::MAX; n * n];
        let mut next = 0;
        let mut queue = Vec::new();
        for start in 0..n * n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            queue.clear();
            queue.push(start);
            while let Some(p) = queue.pop() {
                let (x, y) = (p / n, p % n);
                for g in &self.generators {
                    let q = g.apply(x) * n + g.apply(y);
                    if label[q] == usize::MAX {
                        label[q] = next;
                        queue.push(q);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Lengths of the orbits of a point stabiliser, sorted ascending. Their
    /// count is the permutation rank.
    pub fn suborbit_lengths(&self) -> Result<Vec<usize>> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let n = self.degree;
        let label = self.orbitals();
        let mut counts = std::collections::BTreeMap::new();
        for y in 0..n {
            *counts.entry(label[y]).or_insert(0usize) += 1;
        }
        let mut lens: Vec<usize> = counts.into_values().collect();
        lens.sort_unstable();
        Ok(lens)
    }

    /// The permutation rank: number of orbits on ordered pairs.
    pub fn permutation_rank(&self) -> Result<usize> {
        Ok(self.suborbit_lengths()?.len())
    }

    /// The undirected graph whose edges are the images of `{a, b}`.
    pub fn orbital_graph(&self, a: usize, b: usize) -> Result<Graph> {
        for p in [a, b] {
            if p >= self.degree {
                return Err(Error::PointOutOfRange { point: p, degree: self.degree });
            }
        }
        if a == b {
            return Err(Error::BadParameter("orbital graph needs distinct points".into()));
        }
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let mut g = Graph::empty(self.degree);
        g.add_edge(a, b);
        let mut stack = vec![(a, b)];
        while let Some((x, y)) = stack.pop() {
            for p in &self.generators {
                let (u, v) = (p.apply(x), p.apply(y));
                if !g.has_edge(u, v) {
                    g.add_edge(u, v);
                    stack.push((u, v));
                }
            }
        }
        Ok(g)
    }

    /// True when every generator maps every part of `partition` onto a part.
    pub fn preserves_partition(&self, partition: &[Vec<usize>]) -> bool {
        let mut part_of = vec![usize::MAX; self.degree];
        for (i, p) in partition.iter().enumerate() {
            for &x in p {
                part_of[x] = i;
            }
        }
        self.generators.iter().all(|g| {
            partition.iter().all(|p| {
                let target = part_of[g.apply(p[0])];
                p.iter().all(|&x| part_of[g.apply(x)] == target)
            })
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
    }

    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn group(gens: Vec<Permutation>) -> PermGroup {
        PermGroup::new(gens).unwrap()
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = perm(6, &[&[0, 3, 5], &[1, 2]]);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        assert_eq!(p.cycles(), vec![vec![0, 3, 5], vec![1, 2]]);
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(p.compose(&Permutation::identity(5)).is_err());
    }

    #[test]
    fn orbits() {
        let g = PermGroup::cyclic(4);
        assert_eq!(g.orbit(0).unwrap(), vec![0, 1, 2, 3]);
        let h = group(vec![perm(3, &[&[0, 1]])]);
        assert_eq!(h.orbit(2).unwrap(), vec![2]);
        assert!(!h.is_transitive());
        assert!(PermGroup::symmetric(4).is_transitive());
        assert_eq!(PermGroup::new(vec![]).unwrap_err(), Error::NoGenerators);
    }

    #[test]
    fn block_systems() {
        let d4 = group(vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 2]])]);
        assert_eq!(d4.block_system(0, 2).unwrap(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(PermGroup::symmetric(4).block_system(0, 1).unwrap(), vec![vec![0, 1, 2, 3]]);
        let c6 = PermGroup::cyclic(6);
        assert_eq!(c6.block_system(0, 3).unwrap(), vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        let h = group(vec![perm(3, &[&[0, 1]])]);
        assert_eq!(h.block_system(0, 1).unwrap_err(), Error::NotTransitive);
    }

    #[test]
    fn primitivity() {
        let d4 = group(vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 2]])]);
        assert!(!d4.is_primitive());
        for n in 1..7 {
            assert!(PermGroup::symmetric(n).is_primitive(), "S_{n}");
        }
        assert!(PermGroup::cyclic(2).is_primitive());
        assert!(PermGroup::cyclic(7).is_primitive());
        assert!(!PermGroup::cyclic(6).is_primitive());
    }

    #[test]
    fn suborbits() {
        assert_eq!(PermGroup::symmetric(4).suborbit_lengths().unwrap(), vec![1, 3]);
        assert_eq!(PermGroup::cyclic(5).suborbit_lengths().unwrap(), vec![1; 5]);
        assert_eq!(PermGroup::cyclic(5).permutation_rank().unwrap(), 5);
    }

    #[test]
    fn orbital_graphs() {
        assert_eq!(PermGroup::symmetric(4).orbital_graph(0, 1).unwrap(), Graph::complete(4));
        assert_eq!(PermGroup::cyclic(5).orbital_graph(0, 1).unwrap(), Graph::cycle(5));
        let g = PermGroup::cyclic(5).orbital_graph(0, 2).unwrap();
        assert_eq!(g.regular_valency(), Some(2));
    }
}
