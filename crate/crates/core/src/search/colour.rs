//! Exact vertex colouring.
//!
//! The chromatic number is bracketed by a maximum clique (lower bound) and a
//! DSATUR greedy colouring (upper bound); each `k` in between is decided by
//! DSATUR-ordered backtracking with the clique precoloured.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::clique::max_clique;

const UNCOLOURED: usize = usize::MAX;

/// Greedy DSATUR colouring; returns one colour per vertex.
pub fn dsatur_greedy(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colour = vec![UNCOLOURED; n];
    let mut seen: Vec<Vec<bool>> = vec![vec![false; n + 1]; n];
    let mut sat = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colour[v] == UNCOLOURED)
            .max_by(|&a, &b| sat[a].cmp(&sat[b]).then(g.degree(a).cmp(&g.degree(b))).then(b.cmp(&a)))
            .expect("uncoloured vertex remains");
        let c = (0..=n).find(|&c| !seen[v][c]).expect("a free colour exists");
        colour[v] = c;
        for w in g.neighbours(v) {
            if !seen[w][c] {
                seen[w][c] = true;
                sat[w] += 1;
            }
        }
    }
    colour
}

struct KColour<'a> {
    g: &'a Graph,
    k: usize,
    colour: Vec<usize>,
    /// `forbid[v * k + c]` counts coloured neighbours of `v` with colour `c`.
    forbid: Vec<u32>,
    sat: Vec<usize>,
    deadline: Option<Instant>,
    nodes: u64,
    aborted: bool,
}

impl KColour<'_> {
    fn set(&mut self, v: usize, c: usize) {
        self.colour[v] = c;
        for w in self.g.neighbours(v) {
            let slot = &mut self.forbid[w * self.k + c];
            if *slot == 0 {
                self.sat[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unset(&mut self, v: usize) {
        let c = self.colour[v];
        self.colour[v] = UNCOLOURED;
        for w in self.g.neighbours(v) {
            let slot = &mut self.forbid[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    fn solve(&mut self, coloured: usize, max_used: usize) -> bool {
        let n = self.g.n();
        if coloured == n {
            return true;
        }
        self.nodes += 1;
        if self.nodes & 0xfff == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.aborted = true;
        }
        if self.aborted {
            return false;
        }
        let mut v = UNCOLOURED;
        for u in 0..n {
            if self.colour[u] != UNCOLOURED {
                continue;
            }
            if self.sat[u] >= self.k {
                return false;
            }
            if v == UNCOLOURED
                || self.sat[u] > self.sat[v]
                || (self.sat[u] == self.sat[v] && self.g.degree(u) > self.g.degree(v))
            {
                v = u;
            }
        }
        let limit = (max_used + 1).min(self.k);
        for c in 0..limit {
            if self.forbid[v * self.k + c] != 0 {
                continue;
            }
            self.set(v, c);
            if self.solve(coloured + 1, max_used.max(c + 1)) {
                return true;
            }
            self.unset(v);
            if self.aborted {
                return false;
            }
        }
        false
    }
}

/// A proper colouring with at most `k` colours, if one exists. `clique` is
/// precoloured `0..clique.len()` to break colour symmetry.
fn k_colouring(g: &Graph, k: usize, clique: &[usize], deadline: Option<Instant>) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if clique.len() > k {
        return Ok(None);
    }
    let mut st = KColour {
        g,
        k,
        colour: vec![UNCOLOURED; n],
        forbid: vec![0; n * k],
        sat: vec![0; n],
        deadline,
        nodes: 0,
        aborted: false,
    };
    for (c, &v) in clique.iter().enumerate() {
        st.set(v, c);
    }
    let found = st.solve(clique.len(), clique.len());
    if st.aborted {
        return Err(Error::TimeBudgetExceeded { best: None });
    }
    Ok(found.then_some(st.colour))
}

/// Exact chromatic number with a witness colouring (`colour[v] < chi`).
pub fn chromatic_number(g: &Graph, deadline: Option<Instant>) -> Result<(usize, Vec<usize>)> {
    if g.n() == 0 {
        return Ok((0, Vec::new()));
    }
    let mut best = dsatur_greedy(g);
    let upper = best.iter().max().map_or(0, |m| m + 1);
    let clique = max_clique(g, deadline).map_err(|e| match e {
        Error::TimeBudgetExceeded { .. } => Error::TimeBudgetExceeded { best: Some(upper) },
        other => other,
    })?;
    let mut chi = upper;
    for k in clique.len()..upper {
        match k_colouring(g, k, &clique, deadline) {
            Ok(Some(c)) => {
                best = c;
                chi = k;
                break;
            }
            Ok(None) => {}
            Err(_) => return Err(Error::TimeBudgetExceeded { best: Some(upper) }),
        }
    }
    Ok((chi, best))
}

pub fn is_proper_colouring(g: &Graph, colour: &[usize]) -> bool {
    colour.len() == g.n() && g.edges().iter().all(|&(u, v)| colour[u] != colour[v])
}
