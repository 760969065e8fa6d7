//! Graph homomorphism search by forward-checking backtracking.
//!
//! Each source vertex keeps a candidate bitset over target vertices. Fixing
//! `u ↦ a` intersects the candidates of every unassigned neighbour of `u`
//! with `N(a)`; an empty domain fails the branch. Variables are chosen
//! most-constrained first (ties: smallest index) and values in ascending
//! order, so single-worker runs visit solutions in a fixed order.
//!
//! No symmetry is broken during enumeration: every homomorphism is reported
//! exactly once, which is what rank censuses need.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::time::Instant;

use rayon::prelude::*;

use crate::bits;
use crate::graph::Graph;

use super::{Enumeration, Homomorphism, SearchOptions};

const UNASSIGNED: usize = usize::MAX;

/// Rank constraints derived from [`SearchOptions`].
#[derive(Clone)]
struct RankGate {
    min: usize,
    max: usize,
    filter: Option<Vec<bool>>,
    proper_below: Option<usize>,
}

impl RankGate {
    fn new(opts: &SearchOptions, n_src: usize, n_dst: usize) -> Self {
        let cap = n_src.min(n_dst);
        let mut min = if n_src == 0 { 0 } else { 1 };
        let mut max = cap;
        let mut filter = None;
        if let Some(ranks) = &opts.rank_filter {
            min = ranks.iter().copied().min().unwrap_or(usize::MAX).max(min);
            max = ranks.iter().copied().max().unwrap_or(0).min(max);
            let mut f = vec![false; cap + 1];
            for &r in ranks.iter().filter(|&&r| r <= cap) {
                f[r] = true;
            }
            filter = Some(f);
        }
        let proper_below = opts.proper_only.then_some(n_src);
        if let Some(p) = proper_below {
            max = max.min(p.saturating_sub(1));
        }
        RankGate { min, max, filter, proper_below }
    }

    fn accepts(&self, rank: usize) -> bool {
        rank >= self.min
            && rank <= self.max
            && self.filter.as_ref().is_none_or(|f| f.get(rank).copied().unwrap_or(false))
            && self.proper_below.is_none_or(|p| rank < p)
    }

    fn infeasible(&self) -> bool {
        self.min > self.max
    }
}

struct Solver<'a> {
    src: &'a Graph,
    dst: &'a Graph,
    tw: usize,
    gate: RankGate,
    injective: bool,
    /// `levels[d]` holds every source vertex's domain at depth `d`.
    levels: Vec<Vec<u64>>,
    assign: Vec<usize>,
    img_count: Vec<u32>,
    distinct: usize,
    deadline: Option<Instant>,
    nodes: u64,
    aborted: bool,
}

impl<'a> Solver<'a> {
    fn new(src: &'a Graph, dst: &'a Graph, opts: &SearchOptions) -> Self {
        let n = src.n();
        let tw = dst.words().max(1);
        let gate = RankGate::new(opts, n, dst.n());
        let injective = n > 0 && gate.min >= n;
        let mut root = vec![0u64; n * tw];
        for v in 0..n {
            bits::fill(&mut root[v * tw..(v + 1) * tw], dst.n());
        }
        let mut levels = Vec::with_capacity(n + 1);
        levels.push(root);
        for _ in 0..n {
            levels.push(vec![0u64; n * tw]);
        }
        Solver {
            src,
            dst,
            tw,
            gate,
            injective,
            levels,
            assign: vec![UNASSIGNED; n],
            img_count: vec![0; dst.n()],
            distinct: 0,
            deadline: opts.time_budget.map(|b| Instant::now() + b),
            nodes: 0,
            aborted: false,
        }
    }

    fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    fn domain(&self, depth: usize, v: usize) -> &[u64] {
        &self.levels[depth][v * self.tw..(v + 1) * self.tw]
    }

    /// Most-constrained unassigned vertex at `depth`, or `None` when all are assigned.
    fn choose(&self, depth: usize) -> Option<usize> {
        let mut best = None;
        let mut best_size = usize::MAX;
        for v in 0..self.src.n() {
            if self.assign[v] != UNASSIGNED {
                continue;
            }
            let s = bits::count(self.domain(depth, v));
            if s < best_size {
                best_size = s;
                best = Some(v);
                if s <= 1 {
                    break;
                }
            }
        }
        best
    }

    /// Assigns `v ↦ a` moving from `depth` to `depth + 1`; false if some
    /// domain empties or the rank bounds become unreachable.
    fn assign(&mut self, depth: usize, v: usize, a: usize) -> bool {
        self.assign[v] = a;
        if self.img_count[a] == 0 {
            self.distinct += 1;
        }
        self.img_count[a] += 1;
        let unassigned = self.src.n() - depth - 1;
        if self.distinct > self.gate.max || self.distinct + unassigned < self.gate.min {
            return false;
        }
        let tw = self.tw;
        let (lo, hi) = self.levels.split_at_mut(depth + 1);
        let cur = &lo[depth];
        let next = &mut hi[0];
        next.copy_from_slice(cur);
        let vd = &mut next[v * tw..(v + 1) * tw];
        vd.iter_mut().for_each(|w| *w = 0);
        bits::set(vd, a);
        let row = self.dst.row(a);
        for w in self.src.neighbours(v) {
            if self.assign[w] != UNASSIGNED {
                continue;
            }
            let d = &mut next[w * tw..(w + 1) * tw];
            bits::and_assign(d, row);
            if bits::is_empty(d) {
                return false;
            }
        }
        if self.injective {
            for w in 0..self.src.n() {
                if self.assign[w] != UNASSIGNED {
                    continue;
                }
                let d = &mut next[w * tw..(w + 1) * tw];
                bits::clear(d, a);
                if bits::is_empty(d) {
                    return false;
                }
            }
        }
        true
    }

    fn unassign(&mut self, v: usize) {
        let a = std::mem::replace(&mut self.assign[v], UNASSIGNED);
        self.img_count[a] -= 1;
        if self.img_count[a] == 0 {
            self.distinct -= 1;
        }
    }

    fn tick(&mut self) {
        self.nodes += 1;
        if self.nodes & 0xfff == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.aborted = true;
        }
    }

    fn run<F>(&mut self, depth: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize], usize) -> ControlFlow<()>,
    {
        self.tick();
        if self.aborted {
            return ControlFlow::Break(());
        }
        let Some(v) = self.choose(depth) else {
            if self.gate.accepts(self.distinct) {
                return visit(&self.assign, self.distinct);
            }
            return ControlFlow::Continue(());
        };
        let values: Vec<usize> = bits::ones(self.domain(depth, v)).collect();
        for a in values {
            let ok = self.assign(depth, v, a);
            let flow = if ok { self.run(depth + 1, visit) } else { ControlFlow::Continue(()) };
            self.unassign(v);
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Runs the subtree under the root choice `v ↦ a`.
    fn run_branch<F>(&mut self, v: usize, a: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize], usize) -> ControlFlow<()>,
    {
        let ok = self.assign(0, v, a);
        let flow = if ok { self.run(1, visit) } else { ControlFlow::Continue(()) };
        self.unassign(v);
        flow
    }
}

/// Streams every homomorphism `src → dst` passing the rank filters to `visit`
/// in deterministic order. Returns `false` when the time budget cut the search
/// short, `true` when it ran to completion or `visit` asked to stop.
pub fn for_each_homomorphism<F>(src: &Graph, dst: &Graph, opts: &SearchOptions, mut visit: F) -> bool
where
    F: FnMut(&[usize], usize) -> ControlFlow<()>,
{
    let mut solver = Solver::new(src, dst, opts);
    if solver.gate.infeasible() {
        return true;
    }
    let _ = solver.run(0, &mut visit);
    !solver.aborted
}

/// Enumerates homomorphisms, optionally in parallel by splitting on the root
/// variable's candidate values. Counts do not depend on `opts.parallelism`.
pub fn enumerate(src: &Graph, dst: &Graph, opts: &SearchOptions) -> Enumeration {
    let workers = opts.parallelism.max(1);
    let probe = Solver::new(src, dst, opts);
    if probe.gate.infeasible() {
        return Enumeration::complete_empty();
    }
    let deadline = probe.deadline;
    let Some(root) = probe.choose(0) else {
        // empty source graph: the empty map is the only homomorphism
        let mut e = Enumeration::complete_empty();
        if probe.gate.accepts(0) {
            e.record(&[], 0, opts.count_only);
        }
        return e;
    };
    let values: Vec<usize> = bits::ones(probe.domain(0, root)).collect();
    drop(probe);

    let branch = |a: usize| -> Enumeration {
        let mut solver = Solver::new(src, dst, opts).with_deadline(deadline);
        let mut part = Enumeration::complete_empty();
        let _ = solver.run_branch(root, a, &mut |images: &[usize], rank: usize| {
            part.record(images, rank, opts.count_only);
            ControlFlow::Continue(())
        });
        part.complete = !solver.aborted;
        part
    };

    let parts: Vec<Enumeration> = if workers == 1 {
        values.iter().map(|&a| branch(a)).collect()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            Ok(pool) => pool.install(|| values.par_iter().map(|&a| branch(a)).collect()),
            Err(_) => values.iter().map(|&a| branch(a)).collect(),
        }
    };
    let mut out = Enumeration::complete_empty();
    for p in parts {
        out.merge(p);
    }
    out
}

/// First homomorphism in search order that passes the filters.
pub fn find_first(src: &Graph, dst: &Graph, opts: &SearchOptions) -> (Option<Homomorphism>, bool) {
    let mut found = None;
    let complete = for_each_homomorphism(src, dst, opts, |images, _| {
        found = Some(Homomorphism::from_images(images.to_vec()));
        ControlFlow::Break(())
    });
    (found, complete)
}

impl Enumeration {
    fn complete_empty() -> Self {
        Enumeration { total: 0, by_rank: BTreeMap::new(), complete: true, homomorphisms: Vec::new() }
    }

    fn record(&mut self, images: &[usize], rank: usize, count_only: bool) {
        self.total += 1;
        *self.by_rank.entry(rank).or_insert(0) += 1;
        if !count_only {
            self.homomorphisms.push(Homomorphism::from_images(images.to_vec()));
        }
    }

    fn merge(&mut self, other: Enumeration) {
        self.total += other.total;
        for (r, c) in other.by_rank {
            *self.by_rank.entry(r).or_insert(0) += c;
        }
        self.complete &= other.complete;
        self.homomorphisms.extend(other.homomorphisms);
    }
}
