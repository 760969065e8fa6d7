//! Maximum clique by branch and bound with greedy-colouring bounds.
//!
//! Candidate sets are bitsets; at every node the candidates are greedily
//! coloured and visited in reverse colour order, so a branch is cut as soon
//! as `|current| + colour(v)` cannot beat the incumbent.

use std::time::Instant;

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub(crate) struct CliqueSearch<'a> {
    g: &'a Graph,
    best: Vec<usize>,
    current: Vec<usize>,
    /// Stop as soon as a clique of this size is found.
    target: Option<usize>,
    deadline: Option<Instant>,
    nodes: u64,
    aborted: bool,
}

impl<'a> CliqueSearch<'a> {
    pub(crate) fn new(g: &'a Graph, target: Option<usize>, deadline: Option<Instant>) -> Self {
        CliqueSearch { g, best: Vec::new(), current: Vec::new(), target, deadline, nodes: 0, aborted: false }
    }

    /// Runs the search over `within`; returns the best clique found and
    /// whether the search finished.
    pub(crate) fn run(mut self, within: &[u64]) -> (Vec<usize>, bool) {
        if !bits::is_empty(within) {
            self.expand(within.to_vec());
        }
        let done = !self.aborted;
        let mut best = self.best;
        best.sort_unstable();
        (best, done)
    }

    fn reached_target(&self) -> bool {
        self.target.is_some_and(|t| self.best.len() >= t)
    }

    fn expand(&mut self, mut cand: Vec<u64>) {
        self.nodes += 1;
        if self.nodes & 0x3ff == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.aborted = true;
                }
            }
        }
        if self.aborted || self.reached_target() {
            return;
        }
        let (order, colours) = greedy_colour_order(self.g, &cand);
        for i in (0..order.len()).rev() {
            if self.current.len() + colours[i] <= self.best.len() {
                return;
            }
            let v = order[i];
            self.current.push(v);
            let mut next = cand.clone();
            bits::and_assign(&mut next, self.g.row(v));
            if bits::is_empty(&next) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            if self.aborted || self.reached_target() {
                return;
            }
            bits::clear(&mut cand, v);
        }
    }
}

/// Sequential greedy colouring of the candidate set; returns vertices in
/// colouring order with the (1-based) colour of each.
fn greedy_colour_order(g: &Graph, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
    let mut uncoloured = cand.to_vec();
    let mut order = Vec::with_capacity(bits::count(cand));
    let mut colours = Vec::with_capacity(order.capacity());
    let mut colour = 0;
    let mut q = vec![0u64; cand.len()];
    while !bits::is_empty(&uncoloured) {
        colour += 1;
        q.copy_from_slice(&uncoloured);
        while let Some(v) = bits::first(&q) {
            bits::clear(&mut q, v);
            bits::clear(&mut uncoloured, v);
            bits::and_not_assign(&mut q, g.row(v));
            order.push(v);
            colours.push(colour);
        }
    }
    (order, colours)
}

/// A maximum clique of `g` (sorted). Errors with the best size found when the
/// deadline passes first.
pub fn max_clique(g: &Graph, deadline: Option<Instant>) -> Result<Vec<usize>> {
    let mut all = vec![0u64; g.words()];
    bits::fill(&mut all, g.n());
    let (best, done) = CliqueSearch::new(g, None, deadline).run(&all);
    if done {
        Ok(best)
    } else {
        Err(Error::TimeBudgetExceeded { best: Some(best.len()) })
    }
}

/// Some clique of exactly `size` vertices inside `within`, if one exists.
pub fn find_clique_of_size(g: &Graph, within: &[u64], size: usize) -> Option<Vec<usize>> {
    if size == 0 {
        return Some(Vec::new());
    }
    let (best, _) = CliqueSearch::new(g, Some(size), None).run(within);
    (best.len() >= size).then(|| best[..size].to_vec())
}
