//! Synchronization of a transformation by a permutation group.
//!
//! For `S = <G, f>` a pair `{v, w}` is *collapsible* when some element of `S`
//! maps `v` and `w` to the same point. `G` synchronizes `f` exactly when every
//! pair is collapsible, and the non-collapsible pairs are the edges of
//! `Gr(S)`. Collapsibility is computed once for all pairs by a backward
//! breadth-first search over the pair graph, starting from the pairs that a
//! single generator already merges.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::PermGroup;
use crate::search::{self, find_clique_of_size, SearchOptions};
use crate::transform::{KernelType, Transformation};

#[inline]
fn tri_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// Collapsibility of every unordered pair under a set of generating maps.
#[derive(Debug, Clone)]
pub struct PairClosure {
    n: usize,
    collapsible: Vec<bool>,
}

impl PairClosure {
    /// Closure for the semigroup generated by `maps` (each a self-map of `0..n`).
    pub fn new(n: usize, maps: &[&[usize]]) -> Result<Self> {
        if let Some(m) = maps.iter().find(|m| m.len() != n) {
            return Err(Error::DegreeMismatch { expected: n, found: m.len() });
        }
        let pairs = n * n.saturating_sub(1) / 2;
        let mut collapsible = vec![false; pairs];
        let mut queue = Vec::new();
        // reverse edges of the pair graph in CSR form
        let mut targets = vec![u32::MAX; pairs * maps.len()];
        let mut indeg = vec![0u32; pairs + 1];
        let mut p = 0;
        for a in 0..n {
            for b in a + 1..n {
                for (k, m) in maps.iter().enumerate() {
                    let (x, y) = (m[a], m[b]);
                    if x == y {
                        if !collapsible[p] {
                            collapsible[p] = true;
                            queue.push(p);
                        }
                    } else {
                        let q = tri_index(n, x, y);
                        targets[p * maps.len() + k] = q as u32;
                        indeg[q + 1] += 1;
                    }
                }
                p += 1;
            }
        }
        for i in 0..pairs {
            indeg[i + 1] += indeg[i];
        }
        let mut fill = indeg.clone();
        let mut preds = vec![0u32; indeg[pairs] as usize];
        for (slot, &q) in targets.iter().enumerate() {
            if q != u32::MAX {
                let q = q as usize;
                preds[fill[q] as usize] = (slot / maps.len()) as u32;
                fill[q] += 1;
            }
        }
        while let Some(q) = queue.pop() {
            for &p in &preds[indeg[q] as usize..indeg[q + 1] as usize] {
                let p = p as usize;
                if !collapsible[p] {
                    collapsible[p] = true;
                    queue.push(p);
                }
            }
        }
        Ok(PairClosure { n, collapsible })
    }

    /// Closure for `<G, f>`.
    pub fn for_group_and_map(group: &PermGroup, f: &Transformation) -> Result<Self> {
        if group.degree() != f.degree() {
            return Err(Error::DegreeMismatch { expected: group.degree(), found: f.degree() });
        }
        let mut maps: Vec<&[usize]> = group.generators().iter().map(|g| g.images()).collect();
        maps.push(f.images());
        PairClosure::new(group.degree(), &maps)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Whether some element maps `a` and `b` to one point. `a == b` counts as collapsed.
    pub fn is_collapsible(&self, a: usize, b: usize) -> bool {
        a == b || self.collapsible[tri_index(self.n, a, b)]
    }

    pub fn all_collapsible(&self) -> bool {
        self.collapsible.iter().all(|&c| c)
    }

    /// Sorted list of collapsible pairs `(a, b)` with `a < b`.
    pub fn collapsible_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.collapsible[tri_index(self.n, a, b)] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// `Gr(S)`: edges are the non-collapsible pairs.
    pub fn graph(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !self.collapsible[tri_index(self.n, a, b)] {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }
}

/// Does `<G, f>` contain a constant map?
pub fn synchronizes(group: &PermGroup, f: &Transformation) -> Result<bool> {
    if group.degree() != f.degree() {
        return Err(Error::DegreeMismatch { expected: group.degree(), found: f.degree() });
    }
    if f.is_permutation() {
        return Err(Error::IsPermutation);
    }
    Ok(PairClosure::for_group_and_map(group, f)?.all_collapsible())
}

/// `Gr(<G, f>)`.
pub fn graph_of(group: &PermGroup, f: &Transformation) -> Result<Graph> {
    Ok(PairClosure::for_group_and_map(group, f)?.graph())
}

/// `Gr(S)` for the semigroup generated by arbitrary transformations.
pub fn graph_of_maps(n: usize, maps: &[Transformation]) -> Result<Graph> {
    let refs: Vec<&[usize]> = maps.iter().map(|m| m.images()).collect();
    Ok(PairClosure::new(n, &refs)?.graph())
}

/// `Gr'`: keeps exactly the edges lying in a maximum clique.
pub fn derived_graph(g: &Graph) -> Result<Graph> {
    if g.is_null() {
        return Err(Error::NullGraph);
    }
    let r = search::max_clique(g, None)?.len();
    let mut out = Graph::empty(g.n());
    let mut common = vec![0u64; g.words()];
    for (u, v) in g.edges() {
        common.copy_from_slice(g.row(u));
        bits::and_assign(&mut common, g.row(v));
        if find_clique_of_size(g, &common, r - 2).is_some() {
            out.add_edge(u, v);
        }
    }
    Ok(out)
}

/// Minimum rank in `<G, f>`, as the clique number of `Gr(<G, f>)`. The
/// colouring given by a minimum-rank element makes the chromatic number equal;
/// a disagreement is reported as an internal error.
pub fn min_rank(group: &PermGroup, f: &Transformation, opts: &SearchOptions) -> Result<usize> {
    let g = graph_of(group, f)?;
    let (omega, _) = search::clique_number(&g, opts)?;
    let (chi, _) = search::chromatic_number(&g, opts)?;
    if omega != chi {
        return Err(Error::Internal(format!("Gr(S) has clique number {omega} but chromatic number {chi}")));
    }
    Ok(omega)
}

/// Whether every two distinct vertices share at most `k - 2` neighbours, for
/// a `k`-regular graph.
pub fn neighbourhood_bound_check(g: &Graph) -> Result<bool> {
    let k = g.regular_valency().ok_or(Error::NotRegular)?;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.common_neighbour_count(u, v) + 2 > k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub const DEFAULT_ORBIT_BUDGET: usize = 1_000_000;

/// Whether every image `A·g` (`g ∈ G`) meets each part of `partition` exactly
/// once. Explores the orbit of `A` under the generators, visiting at most
/// `budget` distinct sets.
pub fn is_g_section(group: &PermGroup, set: &[usize], partition: &[Vec<usize>], budget: usize) -> Result<bool> {
    let n = group.degree();
    let distinct: BTreeSet<usize> = set.iter().copied().collect();
    if distinct.len() != partition.len() {
        return Err(Error::SizeMismatch(format!(
            "set of size {} against {} parts",
            distinct.len(),
            partition.len()
        )));
    }
    let mut part_of = vec![usize::MAX; n];
    for (i, p) in partition.iter().enumerate() {
        for &x in p {
            if x >= n {
                return Err(Error::PointOutOfRange { point: x, degree: n });
            }
            part_of[x] = i;
        }
    }
    if part_of.contains(&usize::MAX) {
        return Err(Error::BadParameter("partition does not cover every point".into()));
    }
    let is_section = |s: &[usize]| {
        let mut hit = vec![false; partition.len()];
        s.iter().all(|&x| !std::mem::replace(&mut hit[part_of[x]], true))
    };
    let start: Vec<usize> = distinct.into_iter().collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(s) = stack.pop() {
        if !is_section(&s) {
            return Ok(false);
        }
        for g in group.generators() {
            let mut img: Vec<usize> = s.iter().map(|&x| g.apply(x)).collect();
            img.sort_unstable();
            if !seen.contains(&img) {
                if seen.len() >= budget {
                    return Err(Error::OrbitBudgetExceeded(budget));
                }
                seen.insert(img.clone());
                stack.push(img);
            }
        }
    }
    Ok(true)
}

/// Stirling numbers of the second kind `S(i, j)` for `i <= n`, as `f64`.
fn stirling_table(n: usize) -> Vec<Vec<f64>> {
    let mut s = vec![vec![0.0f64; n + 1]; n + 1];
    s[0][0] = 1.0;
    for i in 1..=n {
        for j in 1..=i {
            s[i][j] = j as f64 * s[i - 1][j] + s[i - 1][j - 1];
        }
    }
    s
}

/// A uniformly random transformation of `0..n` with rank exactly `rank`:
/// a uniform set partition into `rank` blocks (drawn through the Stirling
/// recurrence), mapped bijectively onto a uniform `rank`-subset.
pub fn random_map_of_rank<R: Rng>(n: usize, rank: usize, rng: &mut R) -> Result<Transformation> {
    if rank == 0 || rank > n {
        return Err(Error::BadParameter(format!("rank {rank} impossible on {n} points")));
    }
    if n > 150 {
        return Err(Error::TooLarge(format!("uniform rank sampling on {n} points")));
    }
    let s = stirling_table(n);
    // decide, from the last element down, whether each element opens a block
    // or joins one of the blocks formed by the elements before it
    let mut choice = vec![None; n];
    let mut k = rank;
    for i in (1..=n).rev() {
        let p_open = s[i - 1][k - 1] / s[i][k];
        if rng.gen::<f64>() < p_open {
            k -= 1;
        } else {
            choice[i - 1] = Some(rng.gen_range(0..k));
        }
    }
    let mut block = vec![0usize; n];
    let mut blocks = 0;
    for x in 0..n {
        block[x] = match choice[x] {
            None => {
                blocks += 1;
                blocks - 1
            }
            Some(j) => block[(0..x).find(|&y| choice[y].is_none() && block[y] == j).expect("block exists")],
        };
    }
    debug_assert_eq!(blocks, rank);
    let mut points: Vec<usize> = (0..n).collect();
    points.shuffle(rng);
    Transformation::new(block.iter().map(|&b| points[b]).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct RankScanEntry {
    pub rank: usize,
    pub samples: usize,
    pub synchronized: usize,
    /// Sampled maps that were not synchronized (1-based image lists in reports).
    #[serde(serialize_with = "ser_maps")]
    pub witnesses: Vec<Transformation>,
}

fn ser_maps<S: serde::Serializer>(maps: &[Transformation], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(maps.iter().map(crate::io::format_transformation))
}

#[derive(Debug, Clone, Serialize)]
pub struct RankScanReport {
    pub degree: usize,
    pub seed: u64,
    pub entries: Vec<RankScanEntry>,
}

impl RankScanReport {
    pub fn all_synchronized(&self) -> bool {
        self.entries.iter().all(|e| e.synchronized == e.samples)
    }
}

/// Samples `samples` random maps of each requested rank and records which are
/// synchronized by the primitive group `group`. Seeded and reproducible.
pub fn synchronization_rank_scan(
    group: &PermGroup,
    samples: usize,
    ranks: &BTreeSet<usize>,
    seed: u64,
) -> Result<RankScanReport> {
    let n = group.degree();
    if !group.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    if let Some(&r) = ranks.iter().find(|&&r| r < 2 || r >= n) {
        return Err(Error::BadParameter(format!("rank {r} outside 2..{}", n.saturating_sub(1))));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::new();
    for &rank in ranks {
        let mut entry = RankScanEntry { rank, samples, synchronized: 0, witnesses: Vec::new() };
        for _ in 0..samples {
            let f = random_map_of_rank(n, rank, &mut rng)?;
            if synchronizes(group, &f)? {
                entry.synchronized += 1;
            } else {
                entry.witnesses.push(f);
            }
        }
        entries.push(entry);
    }
    Ok(RankScanReport { degree: n, seed, entries })
}

/// Degree, rank and kernel data for an instance plus the invariants of `Gr(S)`.
#[derive(Debug, Clone, Serialize)]
pub struct SyncReport {
    pub degree: usize,
    pub rank: usize,
    pub kernel_type: KernelType,
    pub synchronizes: bool,
    pub min_rank: usize,
    pub graph_stats: GraphStats,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphStats {
    pub valency: Option<usize>,
    pub edges: usize,
    pub omega: usize,
    pub chi: usize,
}

impl GraphStats {
    pub fn of(g: &Graph, opts: &SearchOptions) -> Result<Self> {
        let (omega, _) = search::clique_number(g, opts)?;
        let (chi, _) = search::chromatic_number(g, opts)?;
        Ok(GraphStats { valency: g.regular_valency(), edges: g.edge_count(), omega, chi })
    }
}

pub fn analyze(group: &PermGroup, f: &Transformation, opts: &SearchOptions) -> Result<SyncReport> {
    let sync = synchronizes(group, f)?;
    let g = graph_of(group, f)?;
    let stats = GraphStats::of(&g, opts)?;
    if stats.omega != stats.chi {
        return Err(Error::Internal(format!("Gr(S) has clique number {} but chromatic number {}", stats.omega, stats.chi)));
    }
    Ok(SyncReport {
        degree: group.degree(),
        rank: f.rank(),
        kernel_type: f.kernel_type(),
        synchronizes: sync,
        min_rank: stats.omega,
        graph_stats: stats,
    })
}

#[cfg(test)]
mod tests;
