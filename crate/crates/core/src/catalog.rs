//! Named groups and graphs, built from explicit generators and constructions.
//!
//! Numbering is frozen by the constructions themselves:
//!
//! - the Tutte–Coxeter graph has the 15 duads of `{0..5}` (lexicographic) as
//!   vertices `0..15` and the 15 synthemes (sorted perfect matchings) as
//!   vertices `15..30`;
//! - its line graph numbers edges lexicographically;
//! - `PΓL(2,9)` acts on the 45 pairs of points of the projective line over
//!   `GF(9) = GF(3)[i]/(i² + 1)`, and is transported onto the line-graph
//!   numbering through a fixed isomorphism between its length-4 orbital
//!   graph and the line graph.
//!
//! Every entry re-verifies its certified properties when built.

use std::fmt::Display;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::{pair_index, Graph};
use crate::perm::{PermGroup, Permutation};
use crate::search::{self, SearchOptions};
use crate::transform::Transformation;

/// A rank-7 map of the 45 points in the numbering used by GAP's primitive
/// groups library, as a 1-based image list.
pub const REFERENCE_T45: [usize; 45] = [
    1, 1, 1, 14, 9, 14, 28, 41, 41, 1, 43, 28, 28, 41, 9, 1, 1, 25, 25, 28, 28, 25, 41, 28, 1, 1, 9, 43, 14, 9, 43, 28,
    28, 25, 41, 43, 14, 28, 43, 25, 14, 1, 28, 1, 9,
];

/// The reference map as a 0-based [`Transformation`].
pub fn reference_t45() -> Transformation {
    Transformation::new(REFERENCE_T45.iter().map(|x| x - 1).collect()).expect("valid image list")
}

// GF(9): a + b·i is stored as a + 3b.
fn gf9_add(x: usize, y: usize) -> usize {
    (x % 3 + y % 3) % 3 + 3 * ((x / 3 + y / 3) % 3)
}

fn gf9_mul(x: usize, y: usize) -> usize {
    let (a, b, c, d) = (x % 3, x / 3, y % 3, y / 3);
    let re = (a * c + 2 * b * d) % 3;
    let im = (a * d + b * c) % 3;
    re + 3 * im
}

fn gf9_inv(x: usize) -> usize {
    (1..9).find(|&y| gf9_mul(x, y) == 1).expect("non-zero element")
}

fn gf9_frobenius(x: usize) -> usize {
    // (a + b i)^3 = a - b i
    x % 3 + 3 * ((3 - x / 3) % 3)
}

const INFINITY: usize = 9;

/// Lifts a map on the 10 projective points to the 45 unordered pairs.
fn on_pairs(point_map: impl Fn(usize) -> usize) -> Permutation {
    let mut images = vec![0; 45];
    for a in 0..10 {
        for b in a + 1..10 {
            images[pair_index(10, a, b)] = pair_index(10, point_map(a), point_map(b));
        }
    }
    Permutation::from_images(images).expect("point map is a bijection")
}

/// `PΓL(2,9)` on pairs of projective points, pair `{a, b}` at `pair_index(10, a, b)`.
pub fn pgammal_2_9_on_pairs() -> PermGroup {
    let lambda = 1 + 3; // 1 + i, of multiplicative order 8
    let translate = on_pairs(|x| if x == INFINITY { x } else { gf9_add(x, 1) });
    let scale = on_pairs(|x| if x == INFINITY { x } else { gf9_mul(x, lambda) });
    let invert = on_pairs(|x| match x {
        0 => INFINITY,
        INFINITY => 0,
        _ => gf9_inv(x),
    });
    let frobenius = on_pairs(|x| if x == INFINITY { x } else { gf9_frobenius(x) });
    PermGroup::new(vec![translate, scale, invert, frobenius]).expect("generators of equal degree")
}

fn duads() -> Vec<(usize, usize)> {
    (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).collect()
}

fn synthemes() -> Vec<[(usize, usize); 3]> {
    let mut out = Vec::new();
    for b in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&x| x != b).collect();
        let (c, others) = (rest[0], &rest[1..]);
        for &d in others {
            let last: Vec<usize> = others.iter().copied().filter(|&x| x != d).collect();
            out.push([(0, b), (c, d), (last[0], last[1])]);
        }
    }
    out.sort();
    out
}

/// The Tutte–Coxeter graph: duads versus synthemes of a 6-set, by containment.
pub fn tutte_coxeter() -> Graph {
    let ds = duads();
    let mut g = Graph::empty(30);
    for (s, syn) in synthemes().iter().enumerate() {
        for pair in syn {
            let d = ds.iter().position(|x| x == pair).expect("syntheme pairs are duads");
            g.add_edge(d, 15 + s);
        }
    }
    g
}

pub fn tutte_coxeter_line_graph() -> Graph {
    tutte_coxeter().line_graph().expect("graph has edges").graph
}

/// The two 45-point objects in a common numbering.
#[derive(Debug, Clone)]
pub struct Degree45 {
    /// `PΓL(2,9)` acting on the vertices of `graph`.
    pub group: PermGroup,
    /// The line graph of the Tutte–Coxeter graph.
    pub graph: Graph,
    /// `matching[pair_index(10, a, b)]` is the line-graph vertex of the pair `{a, b}`.
    pub matching: Vec<usize>,
}

fn build_degree45() -> Result<Degree45> {
    let on_pairs = pgammal_2_9_on_pairs();
    let label = on_pairs.orbitals();
    let rep = (1..45)
        .find(|&y| (0..45).filter(|&z| label[z] == label[y]).count() == 4)
        .ok_or_else(|| Error::Internal("no suborbit of length 4".into()))?;
    let orbital = on_pairs.orbital_graph(0, rep)?;
    let graph = tutte_coxeter_line_graph();
    let iso = search::find_homomorphism(&orbital, &graph, &SearchOptions::default().with_ranks([45]))?
        .ok_or_else(|| Error::Internal("orbital graph is not isomorphic to the line graph".into()))?;
    if orbital.edge_count() != graph.edge_count() {
        return Err(Error::Internal("edge counts differ".into()));
    }
    let matching = iso.images;
    let generators = on_pairs
        .generators()
        .iter()
        .map(|g| {
            let mut images = vec![0; 45];
            for x in 0..45 {
                images[matching[x]] = matching[g.apply(x)];
            }
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    let group = PermGroup::new(generators)?;
    Ok(Degree45 { group, graph, matching })
}

/// The cached degree-45 pair. The isomorphism search runs once per process.
pub fn degree45() -> &'static Degree45 {
    static CELL: OnceLock<Degree45> = OnceLock::new();
    CELL.get_or_init(|| build_degree45().expect("degree-45 catalog construction"))
}

/// `PΓL(2,9)` in the line-graph numbering.
pub fn pgammal_2_9_deg45() -> PermGroup {
    degree45().group.clone()
}

/// `S_m wr S_d` in product action on `{0..m-1}^d`; tuple `(x_0..x_{d-1})` has
/// index `Σ x_i m^(d-1-i)`.
pub fn product_action(m: usize, d: usize) -> Result<PermGroup> {
    if m < 2 || d < 1 {
        return Err(Error::BadParameter(format!("product action needs m >= 2 and d >= 1, got m={m}, d={d}")));
    }
    let n = m.pow(d as u32);
    let decode = |v: usize| -> Vec<usize> {
        let mut t = vec![0; d];
        let mut v = v;
        for slot in t.iter_mut().rev() {
            *slot = v % m;
            v /= m;
        }
        t
    };
    let encode = |t: &[usize]| t.iter().fold(0, |acc, &x| acc * m + x);
    let lift = |f: &dyn Fn(&mut Vec<usize>)| -> Result<Permutation> {
        Permutation::from_images(
            (0..n)
                .map(|v| {
                    let mut t = decode(v);
                    f(&mut t);
                    encode(&t)
                })
                .collect(),
        )
    };
    let mut gens = vec![lift(&|t| t[0] = (t[0] + 1) % m)?];
    if m > 2 {
        gens.push(lift(&|t| {
            t[0] = match t[0] {
                0 => 1,
                1 => 0,
                x => x,
            }
        })?);
    }
    if d > 1 {
        gens.push(lift(&|t| t.swap(0, 1))?);
        gens.push(lift(&|t| t.rotate_left(1))?);
    }
    PermGroup::new(gens)
}

/// `S_m` acting on the 2-subsets of `{0..m-1}`.
pub fn symmetric_on_pairs(m: usize) -> Result<PermGroup> {
    if m < 3 {
        return Err(Error::BadParameter(format!("need m >= 3, got {m}")));
    }
    let lift = |f: &dyn Fn(usize) -> usize| {
        let mut images = vec![0; m * (m - 1) / 2];
        for a in 0..m {
            for b in a + 1..m {
                images[pair_index(m, a, b)] = pair_index(m, f(a), f(b));
            }
        }
        Permutation::from_images(images)
    };
    PermGroup::new(vec![lift(&|x| (x + 1) % m)?, lift(&|x| if x < 2 { 1 - x } else { x })?])
}

/// `AGL(1,p)`: `x ↦ x + 1` and `x ↦ a·x` for a primitive root `a`.
pub fn affine_line(p: usize) -> Result<PermGroup> {
    if p < 3 || (2..p).any(|d| d * d <= p && p % d == 0) {
        return Err(Error::BadParameter(format!("{p} is not an odd prime")));
    }
    let root = (2..p)
        .find(|&a| {
            let mut x = 1;
            (1..p - 1).all(|_| {
                x = x * a % p;
                x != 1
            })
        })
        .expect("primes have primitive roots");
    PermGroup::new(vec![
        Permutation::from_images((0..p).map(|x| (x + 1) % p).collect())?,
        Permutation::from_images((0..p).map(|x| x * root % p).collect())?,
    ])
}

/// Primitive groups of assorted shapes with degrees between 9 and 45.
pub fn primitive_groups() -> Vec<(&'static str, PermGroup)> {
    let groups = vec![
        ("S3wrS2-product-9", product_action(3, 2).unwrap()),
        ("S5-on-pairs-10", symmetric_on_pairs(5).unwrap()),
        ("C11", PermGroup::cyclic(11)),
        ("AGL(1,13)", affine_line(13).unwrap()),
        ("S6-on-pairs-15", symmetric_on_pairs(6).unwrap()),
        ("S4wrS2-product-16", product_action(4, 2).unwrap()),
        ("D17", PermGroup::dihedral(17)),
        ("S7-on-pairs-21", symmetric_on_pairs(7).unwrap()),
        ("D23", PermGroup::dihedral(23)),
        ("S3wrS3-product-27", product_action(3, 3).unwrap()),
        ("S8-on-pairs-28", symmetric_on_pairs(8).unwrap()),
        ("PGammaL(2,9)-45", pgammal_2_9_deg45()),
    ];
    for (name, g) in &groups {
        assert!(g.is_primitive(), "catalog group {name} is not primitive");
    }
    groups
}

/// A graph with its expected vertex count, valency and chromatic number.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub graph: Graph,
    pub n: usize,
    pub k: usize,
    pub chi: usize,
}

/// Vertex-primitive graphs with clique number equal to chromatic number.
pub fn small_primitive_graph_corpus() -> Vec<CorpusEntry> {
    let k3 = Graph::complete(3);
    let k4 = Graph::complete(4);
    let rook3 = k3.box_product(&k3);
    vec![
        CorpusEntry { name: "K3xK3-box", graph: rook3.clone(), n: 9, k: 4, chi: 3 },
        CorpusEntry { name: "K4xK4-box", graph: k4.box_product(&k4), n: 16, k: 6, chi: 4 },
        CorpusEntry { name: "K3xK3xK3-box", graph: rook3.box_product(&k3), n: 27, k: 6, chi: 3 },
        CorpusEntry { name: "K3xK3xK3-direct", graph: k3.direct_product(&k3).direct_product(&k3), n: 27, k: 8, chi: 3 },
        CorpusEntry { name: "T8", graph: Graph::triangular(8).unwrap(), n: 28, k: 12, chi: 7 },
    ]
}

/// A built catalog object.
#[derive(Debug, Clone)]
pub enum CatalogObject {
    Group(PermGroup),
    Graph(Graph),
}

/// One certified property: what was expected and what was computed.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Certificate {
    pub property: String,
    pub expected: String,
    pub actual: String,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.expected == self.actual
    }
}

fn cert(property: &str, expected: impl Display, actual: impl Display) -> Certificate {
    Certificate { property: property.into(), expected: expected.to_string(), actual: actual.to_string() }
}

type Builder = fn() -> CatalogObject;
type Certifier = fn(&CatalogObject) -> Result<Vec<Certificate>>;

pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    builder: Builder,
    certifier: Certifier,
}

impl std::fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CatalogEntry").field("name", &self.name).finish()
    }
}

impl CatalogEntry {
    /// Recomputes every certified property without failing on mismatches.
    pub fn verify(&self) -> Result<(CatalogObject, Vec<Certificate>)> {
        let obj = (self.builder)();
        let certs = (self.certifier)(&obj)?;
        Ok((obj, certs))
    }

    /// Builds the object, failing if any certified property does not hold.
    pub fn build(&self) -> Result<CatalogObject> {
        let (obj, certs) = self.verify()?;
        if let Some(c) = certs.iter().find(|c| !c.holds()) {
            return Err(Error::Internal(format!(
                "{}: {} expected {} but found {}",
                self.name, c.property, c.expected, c.actual
            )));
        }
        Ok(obj)
    }
}

fn as_graph(o: &CatalogObject) -> &Graph {
    match o {
        CatalogObject::Graph(g) => g,
        CatalogObject::Group(_) => unreachable!("graph entry built a group"),
    }
}

fn as_group(o: &CatalogObject) -> &PermGroup {
    match o {
        CatalogObject::Group(g) => g,
        CatalogObject::Graph(_) => unreachable!("group entry built a graph"),
    }
}

fn group_certs(g: &PermGroup, degree: usize) -> Result<Vec<Certificate>> {
    Ok(vec![
        cert("degree", degree, g.degree()),
        cert("transitive", true, g.is_transitive()),
        cert("primitive", true, g.is_primitive()),
    ])
}

fn corpus_certs(g: &Graph, n: usize, k: usize, chi: usize) -> Result<Vec<Certificate>> {
    let opts = SearchOptions::default();
    let valency = g.regular_valency().map_or("irregular".to_string(), |k| k.to_string());
    Ok(vec![
        cert("vertices", n, g.n()),
        cert("valency", k, valency),
        cert("chromatic number", chi, search::chromatic_number(g, &opts)?.0),
        cert("clique number", chi, search::clique_number(g, &opts)?.0),
    ])
}

fn closed_neighbourhoods_are_butterflies(g: &Graph) -> Result<bool> {
    let butterfly = Graph::butterfly();
    for v in 0..g.n() {
        let mut nb = vec![v];
        nb.extend(g.neighbourhood(v));
        if !g.induced_subgraph(&nb).graph.is_isomorphic_brute_force(&butterfly)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn corpus_entry(i: usize) -> CorpusEntry {
    small_primitive_graph_corpus().swap_remove(i)
}

macro_rules! corpus {
    ($i:expr, $name:expr, $desc:expr) => {
        CatalogEntry {
            name: $name,
            description: $desc,
            builder: || CatalogObject::Graph(corpus_entry($i).graph),
            certifier: |o| {
                let e = corpus_entry($i);
                corpus_certs(as_graph(o), e.n, e.k, e.chi)
            },
        }
    };
}

macro_rules! group {
    ($name:expr, $desc:expr, $degree:expr, $build:expr) => {
        CatalogEntry {
            name: $name,
            description: $desc,
            builder: || CatalogObject::Group($build),
            certifier: |o| group_certs(as_group(o), $degree),
        }
    };
}

/// Every catalog entry, in a fixed order.
pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "pgammal-2-9",
            description: "PΓL(2,9) on 45 points, in the Tutte–Coxeter line-graph numbering",
            builder: || CatalogObject::Group(pgammal_2_9_deg45()),
            certifier: |o| {
                let g = as_group(o);
                let mut c = group_certs(g, 45)?;
                c.push(cert("has suborbit of length 4", true, g.suborbit_lengths()?.contains(&4)));
                let graph = &degree45().graph;
                let auts = g.generators().iter().all(|p| graph.is_automorphism(p.images()));
                c.push(cert("generators are line-graph automorphisms", true, auts));
                Ok(c)
            },
        },
        CatalogEntry {
            name: "tutte-coxeter",
            description: "Tutte–Coxeter graph (duads and synthemes of a 6-set)",
            builder: || CatalogObject::Graph(tutte_coxeter()),
            certifier: |o| {
                let g = as_graph(o);
                Ok(vec![
                    cert("vertices", 30, g.n()),
                    cert("valency", 3, g.regular_valency().unwrap_or(0)),
                    cert("girth", 8, g.girth().unwrap_or(0)),
                    cert("automorphisms", 1440, search::automorphism_count(g, &SearchOptions::default())?),
                ])
            },
        },
        CatalogEntry {
            name: "tutte-coxeter-line-graph",
            description: "line graph of the Tutte–Coxeter graph (45 vertices, butterfly neighbourhoods)",
            builder: || CatalogObject::Graph(tutte_coxeter_line_graph()),
            certifier: |o| {
                let g = as_graph(o);
                let mut c = corpus_certs(g, 45, 4, 3)?;
                c.push(cert("closed neighbourhoods are butterflies", true, closed_neighbourhoods_are_butterflies(g)?));
                Ok(c)
            },
        },
        corpus!(0, "rook-3", "K3 □ K3"),
        corpus!(1, "rook-4", "K4 □ K4"),
        corpus!(2, "hamming-3-3", "K3 □ K3 □ K3"),
        corpus!(3, "k3-direct-cube", "K3 × K3 × K3 (direct product)"),
        corpus!(4, "triangular-8", "triangular graph T(8)"),
        group!("s3-wr-s2", "S3 wr S2 in product action on 9 points", 9, product_action(3, 2).unwrap()),
        group!("s5-on-pairs", "S5 on the 10 pairs of a 5-set", 10, symmetric_on_pairs(5).unwrap()),
        group!("c11", "cyclic group of order 11", 11, PermGroup::cyclic(11)),
        group!("agl-1-13", "AGL(1,13)", 13, affine_line(13).unwrap()),
        group!("s6-on-pairs", "S6 on the 15 pairs of a 6-set", 15, symmetric_on_pairs(6).unwrap()),
        group!("s4-wr-s2", "S4 wr S2 in product action on 16 points", 16, product_action(4, 2).unwrap()),
        group!("d17", "dihedral group of degree 17", 17, PermGroup::dihedral(17)),
        group!("s7-on-pairs", "S7 on the 21 pairs of a 7-set", 21, symmetric_on_pairs(7).unwrap()),
        group!("d23", "dihedral group of degree 23", 23, PermGroup::dihedral(23)),
        group!("s3-wr-s3", "S3 wr S3 in product action on 27 points", 27, product_action(3, 3).unwrap()),
        group!("s8-on-pairs", "S8 on the 28 pairs of an 8-set", 28, symmetric_on_pairs(8).unwrap()),
    ]
}

pub fn entry(name: &str) -> Option<CatalogEntry> {
    entries().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf9_is_a_field() {
        for x in 1..9 {
            assert_eq!(gf9_mul(x, gf9_inv(x)), 1);
            assert_eq!(gf9_frobenius(gf9_frobenius(x)), x);
            for y in 0..9 {
                assert_eq!(gf9_frobenius(gf9_mul(x, y)), gf9_mul(gf9_frobenius(x), gf9_frobenius(y)));
            }
        }
        // 1 + i generates the multiplicative group
        let mut x = 1;
        let powers: std::collections::BTreeSet<usize> = (0..8)
            .map(|_| {
                x = gf9_mul(x, 4);
                x
            })
            .collect();
        assert_eq!(powers.len(), 8);
    }

    #[test]
    fn synthemes_are_perfect_matchings() {
        let s = synthemes();
        assert_eq!(s.len(), 15);
        for syn in &s {
            let mut pts: Vec<usize> = syn.iter().flat_map(|&(a, b)| [a, b]).collect();
            pts.sort_unstable();
            assert_eq!(pts, (0..6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn pgammal_on_pairs_is_primitive_with_suborbit_4() {
        let g = pgammal_2_9_on_pairs();
        assert!(g.is_transitive());
        assert!(g.is_primitive());
        assert!(g.suborbit_lengths().unwrap().contains(&4));
        assert_eq!(g.suborbit_lengths().unwrap().iter().sum::<usize>(), 45);
    }

    #[test]
    fn tutte_coxeter_basics() {
        let g = tutte_coxeter();
        assert_eq!(g.regular_valency(), Some(3));
        assert_eq!(g.girth(), Some(8));
        assert!(g.bipartition().is_some());
    }

    #[test]
    fn degree45_objects_agree() {
        let d = degree45();
        for p in d.group.generators() {
            assert!(d.graph.is_automorphism(p.images()));
        }
        let orbital = d.group.orbital_graph(0, d.graph.neighbourhood(0)[0]).unwrap();
        assert_eq!(orbital, d.graph);
    }

    #[test]
    fn small_groups_are_primitive() {
        for (m, d) in [(3, 1), (3, 2), (4, 2), (3, 3)] {
            assert!(product_action(m, d).unwrap().is_primitive(), "{m}^{d}");
        }
        assert!(!product_action(2, 2).unwrap().is_primitive());
        for m in 5..9 {
            assert!(symmetric_on_pairs(m).unwrap().is_primitive());
        }
        assert!(!symmetric_on_pairs(4).unwrap().is_primitive());
        assert!(affine_line(11).unwrap().is_primitive());
        assert!(affine_line(9).is_err());
    }

    #[test]
    fn cheap_entries_build() {
        for name in ["rook-3", "rook-4", "s5-on-pairs", "c11", "s3-wr-s3", "tutte-coxeter"] {
            entry(name).unwrap().build().unwrap();
        }
        assert!(entry("nonexistent").is_none());
    }
}
