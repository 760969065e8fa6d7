//! Exact combinatorial search: clique number, chromatic number, and graph
//! homomorphism search/enumeration.

mod clique;
mod colour;
mod hom;

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::transform::{KernelType, Transformation};

pub use clique::{find_clique_of_size, max_clique};
pub use colour::{dsatur_greedy, is_proper_colouring};

/// Knobs shared by the homomorphism searches.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Only homomorphisms whose rank is in this set are reported.
    pub rank_filter: Option<BTreeSet<usize>>,
    /// Only non-injective homomorphisms (rank below the source order).
    pub proper_only: bool,
    /// Count without materialising the homomorphisms.
    pub count_only: bool,
    pub time_budget: Option<Duration>,
    /// Worker threads for enumeration; 1 gives deterministic streaming order.
    pub parallelism: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { rank_filter: None, proper_only: false, count_only: false, time_budget: None, parallelism: 1 }
    }
}

impl SearchOptions {
    pub fn with_ranks(mut self, ranks: impl IntoIterator<Item = usize>) -> Self {
        self.rank_filter = Some(ranks.into_iter().collect());
        self
    }

    pub fn proper(mut self) -> Self {
        self.proper_only = true;
        self
    }

    pub fn count_only(mut self) -> Self {
        self.count_only = true;
        self
    }

    pub fn jobs(mut self, n: usize) -> Self {
        self.parallelism = n.max(1);
        self
    }

    pub fn budget(mut self, d: Duration) -> Self {
        self.time_budget = Some(d);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.time_budget.is_some_and(|b| b.is_zero()) {
            return Err(Error::BadParameter("time budget must be positive".into()));
        }
        Ok(())
    }

    fn deadline(&self) -> Option<Instant> {
        self.time_budget.map(|b| Instant::now() + b)
    }
}

/// A vertex map between two graphs. The graphs themselves are not stored;
/// [`Homomorphism::check`] validates against a given pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    pub images: Vec<usize>,
}

impl Homomorphism {
    pub fn from_images(images: Vec<usize>) -> Self {
        Homomorphism { images }
    }

    /// Validates `images` as a homomorphism `src → dst`.
    pub fn new(src: &Graph, dst: &Graph, images: Vec<usize>) -> Result<Self> {
        let h = Homomorphism { images };
        h.check(src, dst)?;
        Ok(h)
    }

    pub fn check(&self, src: &Graph, dst: &Graph) -> Result<()> {
        if self.images.len() != src.n() {
            return Err(Error::HomomorphismInvalid(format!(
                "{} images for {} source vertices",
                self.images.len(),
                src.n()
            )));
        }
        if let Some(&x) = self.images.iter().find(|&&x| x >= dst.n()) {
            return Err(Error::HomomorphismInvalid(format!("image {x} outside target")));
        }
        if let Some((u, v)) = src.edges().into_iter().find(|&(u, v)| !dst.has_edge(self.images[u], self.images[v])) {
            return Err(Error::HomomorphismInvalid(format!("edge ({u},{v}) not preserved")));
        }
        Ok(())
    }

    pub fn is_valid(&self, src: &Graph, dst: &Graph) -> bool {
        self.check(src, dst).is_ok()
    }

    pub fn rank(&self) -> usize {
        self.images.iter().collect::<BTreeSet<_>>().len()
    }

    /// Fibres over the image, ordered by smallest element.
    pub fn kernel(&self) -> Vec<Vec<usize>> {
        let mut by_image: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (x, &y) in self.images.iter().enumerate() {
            by_image.entry(y).or_default().push(x);
        }
        let mut parts: Vec<Vec<usize>> = by_image.into_values().collect();
        parts.sort_unstable();
        parts
    }

    pub fn kernel_type(&self) -> KernelType {
        KernelType::new(self.kernel().iter().map(Vec::len).collect())
    }

    /// Distinct image vertices, sorted.
    pub fn image(&self) -> Vec<usize> {
        self.images.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Reinterprets an endomorphism as a transformation of the vertex set.
    pub fn to_transformation(&self) -> Result<Transformation> {
        Transformation::new(self.images.clone())
    }
}

/// Result of an enumeration: total, histogram by rank, and (unless counting
/// only) the homomorphisms themselves. `complete == false` marks a partial
/// result cut off by the time budget.
#[derive(Debug, Clone, Serialize)]
pub struct Enumeration {
    pub total: u64,
    pub by_rank: BTreeMap<usize, u64>,
    pub complete: bool,
    #[serde(skip)]
    pub homomorphisms: Vec<Homomorphism>,
}

/// Maximum clique size with a witness.
pub fn clique_number(g: &Graph, opts: &SearchOptions) -> Result<(usize, Vec<usize>)> {
    opts.validate()?;
    let c = max_clique(g, opts.deadline())?;
    Ok((c.len(), c))
}

/// Exact chromatic number with a witness colouring.
pub fn chromatic_number(g: &Graph, opts: &SearchOptions) -> Result<(usize, Vec<usize>)> {
    opts.validate()?;
    colour::chromatic_number(g, opts.deadline())
}

/// Some homomorphism `src → dst` passing the filters, or `None` if there is
/// none. Errors when the budget expires before the question is settled.
pub fn find_homomorphism(src: &Graph, dst: &Graph, opts: &SearchOptions) -> Result<Option<Homomorphism>> {
    opts.validate()?;
    let (found, complete) = hom::find_first(src, dst, opts);
    match (found, complete) {
        (Some(h), _) => Ok(Some(h)),
        (None, true) => Ok(None),
        (None, false) => Err(Error::TimeBudgetExceeded { best: None }),
    }
}

/// Streams homomorphisms in deterministic order; `visit` may stop early.
/// Returns whether the search was not cut short by the budget.
pub fn for_each_homomorphism<F>(src: &Graph, dst: &Graph, opts: &SearchOptions, visit: F) -> Result<bool>
where
    F: FnMut(&[usize], usize) -> ControlFlow<()>,
{
    opts.validate()?;
    Ok(hom::for_each_homomorphism(src, dst, opts, visit))
}

pub fn enumerate_homomorphisms(src: &Graph, dst: &Graph, opts: &SearchOptions) -> Result<Enumeration> {
    opts.validate()?;
    Ok(hom::enumerate(src, dst, opts))
}

pub fn enumerate_endomorphisms(g: &Graph, opts: &SearchOptions) -> Result<Enumeration> {
    enumerate_homomorphisms(g, g, opts)
}

pub fn is_homomorphism(src: &Graph, dst: &Graph, images: &[usize]) -> bool {
    images.len() == src.n()
        && images.iter().all(|&x| x < dst.n())
        && src.edges().iter().all(|&(u, v)| dst.has_edge(images[u], images[v]))
}

pub fn is_endomorphism(g: &Graph, f: &Transformation) -> Result<bool> {
    if f.degree() != g.n() {
        return Err(Error::DegreeMismatch { expected: g.n(), found: f.degree() });
    }
    Ok(is_homomorphism(g, g, f.images()))
}

/// `|Aut(g)|`, counted as the bijective endomorphisms.
pub fn automorphism_count(g: &Graph, opts: &SearchOptions) -> Result<u64> {
    let opts = SearchOptions { rank_filter: Some([g.n()].into()), proper_only: false, count_only: true, ..opts.clone() };
    let e = enumerate_endomorphisms(g, &opts)?;
    if !e.complete {
        return Err(Error::TimeBudgetExceeded { best: None });
    }
    Ok(e.total)
}
