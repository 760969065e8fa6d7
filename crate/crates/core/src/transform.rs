//! Transformations of `{0..n-1}`: rank, kernel, kernel type.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    images: Vec<usize>,
}

/// Multiset of kernel class sizes, stored in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KernelType {
    pub part_sizes: Vec<usize>,
}

impl KernelType {
    pub fn new(mut sizes: Vec<usize>) -> Self {
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        KernelType { part_sizes: sizes }
    }

    /// Builds a kernel type from `(size, multiplicity)` pairs, e.g.
    /// `[(1, 4), (2, 4), (4, 1)]` for `{1^4, 2^4, 4}`.
    pub fn from_powers(powers: &[(usize, usize)]) -> Self {
        KernelType::new(powers.iter().flat_map(|&(s, m)| std::iter::repeat(s).take(m)).collect())
    }

    pub fn total(&self) -> usize {
        self.part_sizes.iter().sum()
    }

    pub fn is_uniform(&self) -> bool {
        self.part_sizes.windows(2).all(|w| w[0] == w[1])
    }

    /// `(size, multiplicity)` pairs in ascending size order.
    pub fn powers(&self) -> Vec<(usize, usize)> {
        let mut m = BTreeMap::new();
        for &s in &self.part_sizes {
            *m.entry(s).or_insert(0) += 1;
        }
        m.into_iter().collect()
    }

    /// Every class scaled by `factor`.
    pub fn scaled(&self, factor: usize) -> KernelType {
        KernelType { part_sizes: self.part_sizes.iter().map(|s| s * factor).collect() }
    }
}

impl fmt::Display for KernelType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.part_sizes.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Transformation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if let Some(&x) = images.iter().find(|&&x| x >= n) {
            return Err(Error::PointOutOfRange { point: x, degree: n });
        }
        Ok(Transformation { images })
    }

    pub fn identity(n: usize) -> Self {
        Transformation { images: (0..n).collect() }
    }

    pub fn constant(n: usize, value: usize) -> Result<Self> {
        if value >= n {
            return Err(Error::PointOutOfRange { point: value, degree: n });
        }
        Ok(Transformation { images: vec![value; n] })
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

    /// Sorted list of distinct image points.
    pub fn image(&self) -> Vec<usize> {
        let mut hit = vec![false; self.degree()];
        for &x in &self.images {
            hit[x] = true;
        }
        (0..self.degree()).filter(|&x| hit[x]).collect()
    }

    pub fn rank(&self) -> usize {
        self.image().len()
    }

    pub fn is_permutation(&self) -> bool {
        self.rank() == self.degree()
    }

    /// Fibres of the map, each sorted, ordered by smallest element.
    pub fn kernel(&self) -> Vec<Vec<usize>> {
        let mut fibre: Vec<Vec<usize>> = vec![Vec::new(); self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            fibre[y].push(x);
        }
        let mut parts: Vec<Vec<usize>> = fibre.into_iter().filter(|p| !p.is_empty()).collect();
        parts.sort_unstable();
        parts
    }

    pub fn kernel_type(&self) -> KernelType {
        KernelType::new(self.kernel().iter().map(Vec::len).collect())
    }

    pub fn is_uniform(&self) -> bool {
        self.kernel_type().is_uniform()
    }

    /// `self` then `other`: `x ↦ other(self(x))`.
    pub fn compose(&self, other: &Transformation) -> Result<Transformation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: other.degree() });
        }
        Ok(Transformation { images: self.images.iter().map(|&x| other.images[x]).collect() })
    }
}

/// Canonical form of the functional digraph `x -> f(x)`: a code string that
/// is equal for two maps exactly when they are conjugate under a permutation,
/// together with a canonical ordering of the points.
fn functional_canon(f: &Transformation) -> (String, Vec<usize>) {
    let n = f.degree();
    // points on cycles are those surviving n iterations of f
    let mut on_cycle = vec![false; n];
    let mut cur: Vec<usize> = (0..n).collect();
    for _ in 0..n {
        for c in cur.iter_mut() {
            *c = f.images[*c];
        }
    }
    for &c in &cur {
        on_cycle[c] = true;
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        if !on_cycle[x] {
            children[f.images[x]].push(x);
        }
    }
    let mut code = vec![String::new(); n];
    // process tree nodes leaves-first by depth
    let mut depth = vec![0usize; n];
    for x in 0..n {
        let mut y = x;
        while !on_cycle[y] {
            depth[x] += 1;
            y = f.images[y];
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(depth[x]));
    for &x in &order {
        children[x].sort_by(|&a, &b| code[a].cmp(&code[b]));
        let inner: String = children[x].iter().map(|&c| code[c].as_str()).collect();
        code[x] = format!("({inner})");
    }
    fn preorder(x: usize, children: &[Vec<usize>], out: &mut Vec<usize>) {
        out.push(x);
        for &c in &children[x] {
            preorder(c, children, out);
        }
    }
    let mut seen = vec![false; n];
    let mut components: Vec<(String, Vec<usize>)> = Vec::new();
    for start in 0..n {
        if !on_cycle[start] || seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut y = f.images[start];
        while y != start {
            seen[y] = true;
            cycle.push(y);
            y = f.images[y];
        }
        let len = cycle.len();
        let best = (0..len)
            .min_by(|&a, &b| {
                let ka = (0..len).map(|i| code[cycle[(a + i) % len]].as_str());
                let kb = (0..len).map(|i| code[cycle[(b + i) % len]].as_str());
                ka.cmp(kb)
            })
            .unwrap_or(0);
        let rotated: Vec<usize> = (0..len).map(|i| cycle[(best + i) % len]).collect();
        let key = format!("[{}]", rotated.iter().map(|&c| code[c].as_str()).collect::<String>());
        let mut pts = Vec::new();
        for &c in &rotated {
            preorder(c, &children, &mut pts);
        }
        components.push((key, pts));
    }
    components.sort();
    let key = components.iter().map(|c| c.0.as_str()).collect();
    let points = components.into_iter().flat_map(|c| c.1).collect();
    (key, points)
}

impl Transformation {
    /// A permutation `s` with `s(self(x)) = other(s(x))` for all `x`, if one exists.
    pub fn conjugating_permutation(&self, other: &Transformation) -> Option<Permutation> {
        if self.degree() != other.degree() {
            return None;
        }
        let (ka, pa) = functional_canon(self);
        let (kb, pb) = functional_canon(other);
        if ka != kb {
            return None;
        }
        let mut s = vec![0; self.degree()];
        for (&a, &b) in pa.iter().zip(&pb) {
            s[a] = b;
        }
        Permutation::from_images(s).ok()
    }

    pub fn is_conjugate(&self, other: &Transformation) -> bool {
        self.degree() == other.degree() && functional_canon(self).0 == functional_canon(other).0
    }

    /// `x ↦ s(self(s⁻¹(x)))`.
    pub fn conjugate_by(&self, s: &Permutation) -> Result<Transformation> {
        if s.degree() != self.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: s.degree() });
        }
        let mut images = vec![0; self.degree()];
        for x in 0..self.degree() {
            images[s.apply(x)] = s.apply(self.images[x]);
        }
        Ok(Transformation { images })
    }
}

impl From<&Permutation> for Transformation {
    fn from(p: &Permutation) -> Self {
        Transformation { images: p.images().to_vec() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kernels_of_simple_maps() {
        let id = Transformation::identity(5);
        assert_eq!(id.kernel().len(), 5);
        assert_eq!(id.kernel_type(), KernelType::new(vec![1; 5]));
        let c = Transformation::constant(5, 2).unwrap();
        assert_eq!(c.kernel(), vec![vec![0, 1, 2, 3, 4]]);
        let f = Transformation::new(vec![0, 0, 2, 2]).unwrap();
        assert_eq!(f.kernel_type().part_sizes, vec![2, 2]);
        assert!(f.is_uniform());
        assert!(Transformation::new(vec![0, 4]).is_err());
    }

    #[test]
    fn non_uniform_kernel() {
        let f = Transformation::new(vec![0, 0, 0, 1, 2]).unwrap();
        assert_eq!(f.kernel_type().to_string(), "(3,1,1)");
        assert!(!f.is_uniform());
        let kt = KernelType::from_powers(&[(5, 2), (10, 2), (15, 1)]);
        assert_eq!(kt.part_sizes, vec![15, 10, 10, 5, 5]);
        assert!(!kt.is_uniform());
    }

    #[test]
    fn composition() {
        let c = Transformation::constant(4, 0).unwrap();
        let g = Transformation::new(vec![3, 1, 1, 0]).unwrap();
        assert_eq!(c.compose(&g).unwrap(), Transformation::constant(4, 3).unwrap());
        assert_eq!(g.compose(&Transformation::identity(4)).unwrap(), g);
        let r3 = Transformation::new(vec![0, 1, 2, 2]).unwrap();
        let r2 = Transformation::new(vec![1, 1, 3, 3]).unwrap();
        let h = r3.compose(&r2).unwrap();
        for x in 0..4 {
            assert_eq!(h.apply(x), r2.apply(r3.apply(x)));
        }
        assert!(h.rank() <= 2);
        assert!(c.compose(&Transformation::identity(3)).is_err());
    }

    #[test]
    fn conjugacy_of_small_maps() {
        let f = Transformation::new(vec![1, 2, 0, 0, 3]).unwrap();
        let s = Permutation::from_images(vec![4, 0, 3, 1, 2]).unwrap();
        let g = f.conjugate_by(&s).unwrap();
        assert!(f.is_conjugate(&g));
        let t = f.conjugating_permutation(&g).unwrap();
        assert_eq!(f.conjugate_by(&t).unwrap(), g);
        let h = Transformation::new(vec![1, 2, 0, 0, 0]).unwrap();
        assert!(!f.is_conjugate(&h));
        assert!(f.conjugating_permutation(&h).is_none());
    }

    fn map(n: usize) -> impl Strategy<Value = Transformation> {
        proptest::collection::vec(0..n, n).prop_map(|v| Transformation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn rank_of_composite_is_bounded((f, g) in (1usize..9).prop_flat_map(|n| (map(n), map(n)))) {
            let h = f.compose(&g).unwrap();
            prop_assert!(h.rank() <= f.rank().min(g.rank()));
        }

        #[test]
        fn kernel_partitions_the_domain(f in (1usize..12).prop_flat_map(map)) {
            let kernel = f.kernel();
            let mut all: Vec<usize> = kernel.iter().flatten().copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..f.degree()).collect::<Vec<_>>());
            prop_assert_eq!(kernel.len(), f.rank());
            let kt = f.kernel_type();
            prop_assert_eq!(kt.total(), f.degree());
            let max = kt.part_sizes.first().copied();
            let min = kt.part_sizes.last().copied();
            prop_assert_eq!(f.is_uniform(), max == min);
        }

        #[test]
        fn conjugates_are_recognised((f, perm) in (1usize..10).prop_flat_map(|n| (map(n), Just((0..n).collect::<Vec<usize>>()).prop_shuffle()))) {
            let s = Permutation::from_images(perm).unwrap();
            let g = f.conjugate_by(&s).unwrap();
            let t = f.conjugating_permutation(&g).unwrap();
            prop_assert_eq!(f.conjugate_by(&t).unwrap(), g);
        }
    }
}
