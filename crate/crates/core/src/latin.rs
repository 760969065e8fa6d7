//! Latin squares and the homomorphism constructions built from them.
//!
//! Superimposing two Latin squares of order `k` gives a homomorphism from the
//! rook's graph `K_k □ K_k` to its complement, whose rank is the number of
//! distinct symbol pairs. Composing such homomorphisms through colour classes
//! yields endomorphisms of box squares `X □ X`. The GF(2) Cayley family gives
//! rank-6 endomorphisms of graphs with primitive automorphism groups.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{pair_index, Graph};
use crate::perm::{PermGroup, Permutation};
use crate::search::{self, Homomorphism, SearchOptions};
use crate::transform::{KernelType, Transformation};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    k: usize,
    cells: Vec<u8>,
}

impl LatinSquare {
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let k = rows.len();
        if k == 0 || k > 255 {
            return Err(Error::InvalidLatinSquare(format!("order {k}")));
        }
        let mut cells = Vec::with_capacity(k * k);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidLatinSquare(format!("row {i} has {} entries, expected {k}", row.len())));
            }
            for &x in row {
                if x >= k {
                    return Err(Error::InvalidLatinSquare(format!("symbol {x} outside 0..{k}")));
                }
                cells.push(x as u8);
            }
        }
        let l = LatinSquare { k, cells };
        l.validate()?;
        Ok(l)
    }

    /// The cyclic square `L[i][j] = (i + j) mod k`.
    pub fn cyclic(k: usize) -> Self {
        LatinSquare { k, cells: (0..k * k).map(|c| ((c / k + c % k) % k) as u8).collect() }
    }

    fn validate(&self) -> Result<()> {
        let k = self.k;
        for i in 0..k {
            let mut row = vec![false; k];
            let mut col = vec![false; k];
            for j in 0..k {
                if std::mem::replace(&mut row[self.get(i, j)], true) {
                    return Err(Error::InvalidLatinSquare(format!("repeated symbol in row {i}")));
                }
                if std::mem::replace(&mut col[self.get(j, i)], true) {
                    return Err(Error::InvalidLatinSquare(format!("repeated symbol in column {i}")));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.k + j] as usize
    }

    /// Every Latin square of order `k`, in lexicographic order of cells.
    /// Counts: 1, 2, 12, 576 for `k = 1..4`.
    pub fn all(k: usize) -> Result<Vec<LatinSquare>> {
        if k == 0 || k > 5 {
            return Err(Error::BadParameter(format!("exhaustive Latin squares only for 1 <= k <= 5, got {k}")));
        }
        let mut out = Vec::new();
        let mut cells = vec![0u8; k * k];
        let mut row_used = vec![0u32; k];
        let mut col_used = vec![0u32; k];
        fill_cell(k, 0, &mut cells, &mut row_used, &mut col_used, &mut out);
        Ok(out)
    }

    /// A random Latin square: randomised backtracking fill, then random
    /// row, column and symbol permutations.
    pub fn random(k: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut cells = vec![0u8; k * k];
        let mut row_used = vec![0u32; k];
        let mut col_used = vec![0u32; k];
        let ok = random_fill(k, 0, &mut cells, &mut row_used, &mut col_used, rng);
        debug_assert!(ok);
        let mut rows: Vec<usize> = (0..k).collect();
        let mut cols: Vec<usize> = (0..k).collect();
        let mut syms: Vec<u8> = (0..k as u8).collect();
        rows.shuffle(rng);
        cols.shuffle(rng);
        syms.shuffle(rng);
        let mut out = vec![0u8; k * k];
        for i in 0..k {
            for j in 0..k {
                out[rows[i] * k + cols[j]] = syms[cells[i * k + j] as usize];
            }
        }
        LatinSquare { k, cells: out }
    }
}

fn fill_cell(
    k: usize,
    pos: usize,
    cells: &mut [u8],
    row_used: &mut [u32],
    col_used: &mut [u32],
    out: &mut Vec<LatinSquare>,
) {
    if pos == k * k {
        out.push(LatinSquare { k, cells: cells.to_vec() });
        return;
    }
    let (i, j) = (pos / k, pos % k);
    for s in 0..k {
        let bit = 1u32 << s;
        if row_used[i] & bit != 0 || col_used[j] & bit != 0 {
            continue;
        }
        cells[pos] = s as u8;
        row_used[i] |= bit;
        col_used[j] |= bit;
        fill_cell(k, pos + 1, cells, row_used, col_used, out);
        row_used[i] &= !bit;
        col_used[j] &= !bit;
    }
}

fn random_fill(
    k: usize,
    pos: usize,
    cells: &mut [u8],
    row_used: &mut [u32],
    col_used: &mut [u32],
    rng: &mut ChaCha8Rng,
) -> bool {
    if pos == k * k {
        return true;
    }
    let (i, j) = (pos / k, pos % k);
    let mut syms: Vec<usize> = (0..k).collect();
    syms.shuffle(rng);
    for s in syms {
        let bit = 1u32 << s;
        if row_used[i] & bit != 0 || col_used[j] & bit != 0 {
            continue;
        }
        cells[pos] = s as u8;
        row_used[i] |= bit;
        col_used[j] |= bit;
        if random_fill(k, pos + 1, cells, row_used, col_used, rng) {
            return true;
        }
        row_used[i] &= !bit;
        col_used[j] &= !bit;
    }
    false
}

fn check_orders(a: &LatinSquare, b: &LatinSquare) -> Result<usize> {
    if a.k != b.k {
        return Err(Error::OrderMismatch(a.k, b.k));
    }
    Ok(a.k)
}

/// Number of distinct ordered pairs `(a[i][j], b[i][j])`.
pub fn r_orthogonality(a: &LatinSquare, b: &LatinSquare) -> Result<usize> {
    let k = check_orders(a, b)?;
    let mut seen = vec![false; k * k];
    let mut r = 0;
    for (&x, &y) in a.cells.iter().zip(&b.cells) {
        let p = x as usize * k + y as usize;
        if !seen[p] {
            seen[p] = true;
            r += 1;
        }
    }
    Ok(r)
}

/// The rook's graph `K_k □ K_k`; vertex `(i, j)` has index `i * k + j`.
pub fn rook_graph(k: usize) -> Graph {
    let kk = Graph::complete(k);
    kk.box_product(&kk)
}

/// `(i, j) ↦ (a[i][j], b[i][j])` from `K_k □ K_k` to its complement, validated.
pub fn superposition_hom(a: &LatinSquare, b: &LatinSquare) -> Result<Homomorphism> {
    let k = check_orders(a, b)?;
    let images = (0..k * k).map(|c| a.cells[c] as usize * k + b.cells[c] as usize).collect();
    let rook = rook_graph(k);
    Homomorphism::new(&rook, &rook.complement(), images)
}

#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    pub order: usize,
    pub achievable: Vec<usize>,
    /// True when every ordered pair of squares was examined.
    pub exhaustive: bool,
}

/// Achievable `r` for pairs of `r`-orthogonal Latin squares of order `k`.
/// Exhaustive for `k <= 4`; beyond that, `samples` random pairs give a subset.
pub fn r_orthogonal_spectrum(k: usize, samples: usize, seed: u64) -> Result<Spectrum> {
    if k < 2 {
        return Err(Error::BadParameter(format!("spectrum needs k >= 2, got {k}")));
    }
    let mut found = BTreeSet::new();
    let exhaustive = k <= 4;
    if exhaustive {
        let squares = LatinSquare::all(k)?;
        for a in &squares {
            for b in &squares {
                found.insert(r_orthogonality(a, b)?);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let a = LatinSquare::random(k, &mut rng);
            let b = LatinSquare::random(k, &mut rng);
            found.insert(r_orthogonality(&a, &b)?);
        }
    }
    Ok(Spectrum { order: k, achievable: found.into_iter().collect(), exhaustive })
}

/// The values predicted by the Colbourn–Zhu / Zhu–Zhang theorem.
pub fn predicted_spectrum(k: usize) -> Vec<usize> {
    let excluded: &[usize] = match k {
        2 => &[4],
        3 => &[5, 6, 7],
        4 => &[7, 10, 11, 13, 14],
        5 => &[8, 9, 20, 22, 23],
        6 => &[33, 36],
        _ => &[],
    };
    let mut r: BTreeSet<usize> = [k, k * k].into();
    r.extend(k + 2..=(k * k).saturating_sub(2));
    r.into_iter().filter(|x| !excluded.contains(x)).collect()
}

/// `f((a,b)) = {a+1, b+1}` for `a != b` and `f((a,a)) = {0, a+1}`, from
/// `K_{m-1} □ K_{m-1}` to the triangular graph `T(m)`.
pub fn triangular_hom(m: usize) -> Result<Homomorphism> {
    if m < 4 {
        return Err(Error::BadParameter(format!("triangular homomorphism needs m >= 4, got {m}")));
    }
    let k = m - 1;
    let images = (0..k * k)
        .map(|c| {
            let (a, b) = (c / k, c % k);
            if a == b {
                pair_index(m, 0, a + 1)
            } else {
                pair_index(m, a + 1, b + 1)
            }
        })
        .collect();
    Homomorphism::new(&rook_graph(k), &Graph::triangular(m)?, images)
}

/// The endomorphism of `X □ X` obtained as
/// `X □ X → K_k □ K_k → X → X □ X`: collapse colour-class pairs, apply `h`,
/// then embed `X` as the fibre `x ↦ (x, 0)`.
pub fn box_power_endomorphism(x: &Graph, colouring: &[usize], h: &Homomorphism) -> Result<Transformation> {
    let n = x.n();
    if colouring.len() != n {
        return Err(Error::ColouringInvalid(format!("{} colours for {n} vertices", colouring.len())));
    }
    if !search::is_proper_colouring(x, colouring) {
        return Err(Error::ColouringInvalid("adjacent vertices share a colour".into()));
    }
    let k = colouring.iter().max().map_or(0, |c| c + 1);
    if (0..k).any(|c| !colouring.contains(&c)) {
        return Err(Error::ColouringInvalid("colours must be 0..k with every class non-empty".into()));
    }
    h.check(&rook_graph(k), x)?;
    if n == 0 {
        return Ok(Transformation::identity(0));
    }
    let images = (0..n * n)
        .map(|v| {
            let (u, w) = (v / n, v % n);
            h.images[colouring[u] * k + colouring[w]] * n
        })
        .collect();
    let f = Transformation::new(images)?;
    let xx = x.box_product(x);
    if !search::is_endomorphism(&xx, &f)? {
        return Err(Error::Internal("composite map is not an endomorphism of X□X".into()));
    }
    Ok(f)
}

/// Kernel type of the box-power endomorphism predicted from `h`: each
/// `h`-class `K` becomes a class of size `Σ_{(i,j) ∈ K} |V_i|·|V_j|`.
pub fn predicted_box_power_kernel(colouring: &[usize], h: &Homomorphism) -> KernelType {
    let k = colouring.iter().max().map_or(0, |c| c + 1);
    let mut size = vec![0usize; k];
    for &c in colouring {
        size[c] += 1;
    }
    KernelType::new(
        h.kernel()
            .iter()
            .map(|class| class.iter().map(|&c| size[c / k] * size[c % k]).sum())
            .collect(),
    )
}

/// The rank-6 construction on the GF(2) Cayley graph for prime `p`.
#[derive(Debug, Clone)]
pub struct CayleyFamily {
    pub p: u64,
    pub graph: Graph,
    pub group: PermGroup,
    pub endomorphism: Transformation,
    /// Connection set as bit-vectors over the basis `e_0..e_{p-2}`.
    pub connection: Vec<u64>,
    /// Bit-vector of each `e_i`, `i = 0..p`, with `e_{p-1}` the sum of the others.
    pub basis: Vec<u64>,
}

const MAX_CAYLEY_PRIME: u64 = 13;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Multiplicative order of 2 modulo odd `p`.
fn order_of_two(p: u64) -> u64 {
    let mut x = 2 % p;
    let mut k = 1;
    while x != 1 {
        x = x * 2 % p;
        k += 1;
    }
    k
}

/// Builds the Cayley graph of `V = <e_0..e_{p-1} | Σ e_i = 0>` over GF(2) with
/// connection set `{e_i, e_i + e_{i+1}}`, the group `V : D_{2p}`, and a rank-6
/// endomorphism collapsing the cosets of `X = <e_i + e_{i+2} : i <= p-5>`
/// onto a copy of the six-vertex "fat butterfly" quotient.
pub fn cayley_family(p: u64) -> Result<CayleyFamily> {
    if !is_prime(p) || p <= 5 {
        return Err(Error::BadParameter(format!("need a prime p > 5, got {p}")));
    }
    if order_of_two(p) != p - 1 {
        return Err(Error::BadPrime(p));
    }
    if p > MAX_CAYLEY_PRIME {
        return Err(Error::TooLarge(format!("p = {p} gives 2^{} vertices", p - 1)));
    }
    let p_us = p as usize;
    let dim = p_us - 1;
    let n = 1usize << dim;
    let all_ones = (n - 1) as u64;
    let basis: Vec<u64> = (0..p_us).map(|i| if i < dim { 1u64 << i } else { all_ones }).collect();
    let e = |i: usize| basis[i % p_us];
    let mut connection = Vec::with_capacity(2 * p_us);
    for i in 0..p_us {
        connection.push(e(i));
        connection.push(e(i) ^ e(i + 1));
    }
    let graph = Graph::cayley_gf2(dim as u32, &connection)?;

    // linear maps given by images of e_0..e_{p-2}
    let linear = |img: &dyn Fn(usize) -> u64| -> Permutation {
        let cols: Vec<u64> = (0..dim).map(img).collect();
        let images = (0..n)
            .map(|v| {
                let mut w = 0u64;
                for (i, c) in cols.iter().enumerate() {
                    if v >> i & 1 == 1 {
                        w ^= c;
                    }
                }
                w as usize
            })
            .collect();
        Permutation::from_images(images).expect("invertible linear map")
    };
    let rotation = linear(&|i| e(i + 1));
    let reflection = linear(&|i| e((p_us - i) % p_us));
    let translation = Permutation::from_images((0..n).map(|v| v ^ 1).collect()).expect("translation");
    let group = PermGroup::new(vec![translation, rotation, reflection])?;

    // the subspace X and a linear map V -> GF(2)^3 with kernel X
    let x_gens: Vec<u64> = (0..=p_us - 5).map(|i| e(i) ^ e(i + 2)).collect();
    let reducer = Reducer::new(&x_gens);
    if reducer.rank() != dim - 3 {
        return Err(Error::Internal("subspace X does not have codimension 3".into()));
    }
    let mut coset_id: HashMap<u64, usize> = HashMap::new();
    let mut coset = vec![0usize; n];
    for (v, c) in coset.iter_mut().enumerate() {
        let rep = reducer.reduce(v as u64);
        let next = coset_id.len();
        *c = *coset_id.entry(rep).or_insert(next);
    }
    if coset_id.len() != 8 {
        return Err(Error::Internal(format!("expected 8 cosets, found {}", coset_id.len())));
    }
    let class_of = |v: u64| coset[v as usize];
    // merge X+e_1 with X+e_{p-2}, and X+e_0+e_1 with X+e_0+e_{p-2}
    let mut merged: Vec<usize> = (0..8).collect();
    merged[class_of(e(p_us - 2))] = class_of(e(1));
    merged[class_of(e(0) ^ e(p_us - 2))] = class_of(e(0) ^ e(1));
    let labels: BTreeSet<usize> = merged.iter().copied().collect();
    let relabel: HashMap<usize, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let part: Vec<usize> = coset.iter().map(|&c| relabel[&merged[c]]).collect();

    let mut quotient = Graph::empty(labels.len());
    for (u, v) in graph.edges() {
        let (a, b) = (part[u], part[v]);
        if a == b {
            return Err(Error::Internal("a collapsed class contains an edge".into()));
        }
        if !quotient.has_edge(a, b) {
            quotient.add_edge(a, b);
        }
    }
    // the six target vertices: body {0, e_0}, wings {e_1, e_0+e_1} and {e_{p-1}, e_0+e_{p-1}}
    let target: Vec<usize> = [0, e(0), e(1), e(0) ^ e(1), e(p_us - 1), e(0) ^ e(p_us - 1)]
        .iter()
        .map(|&v| v as usize)
        .collect();
    let target_graph = graph.induced_subgraph(&target).graph;
    let onto = search::find_homomorphism(&quotient, &target_graph, &SearchOptions::default().with_ranks([6]))?
        .ok_or_else(|| Error::Internal("quotient does not map onto the target butterfly".into()))?;
    let endomorphism = Transformation::new(part.iter().map(|&c| target[onto.images[c]]).collect())?;
    if !search::is_endomorphism(&graph, &endomorphism)? {
        return Err(Error::Internal("Cayley construction is not an endomorphism".into()));
    }
    Ok(CayleyFamily { p, graph, group, endomorphism, connection, basis })
}

/// Gaussian elimination over GF(2) for reducing vectors modulo a subspace.
struct Reducer {
    /// Basis vectors keyed by their leading bit.
    rows: Vec<(u32, u64)>,
}

impl Reducer {
    fn new(gens: &[u64]) -> Self {
        let mut r = Reducer { rows: Vec::new() };
        for &g in gens {
            let v = r.reduce(g);
            if v != 0 {
                let lead = 63 - v.leading_zeros();
                r.rows.push((lead, v));
                r.rows.sort_unstable_by(|a, b| b.0.cmp(&a.0));
            }
        }
        r
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Canonical representative of `v + span`.
    fn reduce(&self, mut v: u64) -> u64 {
        for &(lead, row) in &self.rows {
            if v >> lead & 1 == 1 {
                v ^= row;
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(rows: [[usize; 4]; 4]) -> LatinSquare {
        LatinSquare::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn counts_of_small_squares() {
        let counts: Vec<usize> = (1..=4).map(|k| LatinSquare::all(k).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 12, 576]);
    }

    #[test]
    fn invalid_squares_rejected() {
        assert!(LatinSquare::from_rows(&[vec![0, 1], vec![0, 1]]).is_err());
        assert!(LatinSquare::from_rows(&[vec![0, 2], vec![1, 0]]).is_err());
        assert!(LatinSquare::from_rows(&[vec![0, 1], vec![1]]).is_err());
    }

    #[test]
    fn orthogonality_extremes() {
        let c = LatinSquare::cyclic(4);
        assert_eq!(r_orthogonality(&c, &c).unwrap(), 4);
        // GF(4)-based orthogonal pair
        let a = square([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]);
        let b = square([[0, 1, 2, 3], [2, 3, 0, 1], [3, 2, 1, 0], [1, 0, 3, 2]]);
        assert_eq!(r_orthogonality(&a, &b).unwrap(), 16);
        assert_eq!(r_orthogonality(&a, &LatinSquare::cyclic(3)).unwrap_err(), Error::OrderMismatch(4, 3));
    }

    #[test]
    fn superposition_rank_matches_orthogonality() {
        let squares = LatinSquare::all(3).unwrap();
        for a in &squares {
            for b in &squares {
                let h = superposition_hom(a, b).unwrap();
                assert_eq!(h.rank(), r_orthogonality(a, b).unwrap());
            }
        }
        let c = LatinSquare::cyclic(3);
        let h = superposition_hom(&c, &c).unwrap();
        assert_eq!(h.image(), vec![0, 4, 8]);
        for a in LatinSquare::all(2).unwrap() {
            for b in LatinSquare::all(2).unwrap() {
                assert!([2, 4].contains(&superposition_hom(&a, &b).unwrap().rank()));
            }
        }
    }

    #[test]
    fn predicted_spectra() {
        assert_eq!(predicted_spectrum(2), vec![2]);
        assert_eq!(predicted_spectrum(3), vec![3, 9]);
        assert_eq!(predicted_spectrum(4), vec![4, 6, 8, 9, 12, 16]);
    }

    #[test]
    fn sampled_spectrum_is_within_prediction() {
        let s = r_orthogonal_spectrum(5, 300, 1).unwrap();
        assert!(!s.exhaustive);
        let predicted = predicted_spectrum(5);
        assert!(s.achievable.iter().all(|r| predicted.contains(r)));
        assert!(r_orthogonal_spectrum(1, 1, 0).is_err());
    }

    #[test]
    fn triangular_homs() {
        let h = triangular_hom(4).unwrap();
        assert_eq!(h.rank(), 6);
        assert_eq!(h.kernel_type(), KernelType::from_powers(&[(1, 3), (2, 3)]));
        for m in (4..=12).step_by(2) {
            let h = triangular_hom(m).unwrap();
            let expected = KernelType::from_powers(&[(1, m - 1), (2, (m - 1) * (m - 2) / 2)]);
            assert_eq!(h.kernel_type(), expected, "m = {m}");
        }
        assert!(triangular_hom(3).is_err());
    }

    #[test]
    fn box_power_on_complete_graph() {
        // X = K_3: colouring by singletons, h maps K_3□K_3 onto the clique
        let x = Graph::complete(3);
        let colouring = vec![0, 1, 2];
        let h = Homomorphism::from_images((0..9).map(|c| (c / 3 + c % 3) % 3).collect());
        let f = box_power_endomorphism(&x, &colouring, &h).unwrap();
        assert_eq!(f.rank(), 3);
        assert!(search::is_endomorphism(&rook_graph(3), &f).unwrap());
    }

    #[test]
    fn box_power_rejects_bad_inputs() {
        let x = Graph::complete(3);
        let h = Homomorphism::from_images(vec![0; 9]);
        assert!(matches!(box_power_endomorphism(&x, &[0, 1, 2], &h), Err(Error::HomomorphismInvalid(_))));
        assert!(matches!(box_power_endomorphism(&x, &[0, 0, 1], &h), Err(Error::ColouringInvalid(_))));
    }

    #[test]
    fn cayley_prime_checks() {
        assert_eq!(cayley_family(7).unwrap_err(), Error::BadPrime(7));
        assert!(matches!(cayley_family(9), Err(Error::BadParameter(_))));
        assert!(matches!(cayley_family(5), Err(Error::BadParameter(_))));
        assert!(matches!(cayley_family(19), Err(Error::TooLarge(_))));
        assert_eq!(order_of_two(11), 10);
        assert_eq!(order_of_two(7), 3);
    }
}
