//! Text formats. Points are 1-based in every text format and 0-based in memory.
//!
//! - permutations: cycle notation `(1 2 3)(4 5)` or image list `[2,3,1,5,4]`
//! - group files: one generator per line, `#` starts a comment
//! - transformations: bracketed image list, optionally wrapped as
//!   `Transformation( [ ... ] )`
//! - graphs: adjacency lists (`v: u w ...`) or graph6
//! - Latin squares: `k` lines of `k` space-separated symbols `0..k-1`

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::latin::LatinSquare;
use crate::perm::{PermGroup, Permutation};
use crate::transform::Transformation;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_usize_list(body: &str) -> Result<Vec<usize>> {
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| parse_err(format!("bad number {t:?}"))))
        .collect()
}

fn one_based(xs: Vec<usize>) -> Result<Vec<usize>> {
    xs.into_iter()
        .map(|x| x.checked_sub(1).ok_or_else(|| parse_err("points are 1-based; found 0")))
        .collect()
}

/// Extracts the contents of the outermost `[...]`.
fn bracketed(s: &str) -> Result<&str> {
    let open = s.find('[').ok_or_else(|| parse_err("expected '['"))?;
    let close = s.rfind(']').ok_or_else(|| parse_err("expected ']'"))?;
    if close < open {
        return Err(parse_err("mismatched brackets"));
    }
    Ok(&s[open + 1..close])
}

/// Cycles of a cycle-notation string, 0-based.
fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(parse_err(format!("expected '(' at {rest:?}")));
        }
        let close = rest.find(')').ok_or_else(|| parse_err("unclosed cycle"))?;
        let pts = one_based(parse_usize_list(&rest[1..close])?)?;
        if !pts.is_empty() {
            cycles.push(pts);
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Largest point mentioned by a permutation string (1-based), used to infer degrees.
fn max_point(s: &str) -> Result<usize> {
    let s = s.trim();
    if s.starts_with('[') {
        Ok(parse_usize_list(bracketed(s)?)?.len())
    } else {
        Ok(parse_cycles(s)?.iter().flatten().map(|&x| x + 1).max().unwrap_or(0))
    }
}

/// Parses a permutation in either text form. Cycle notation needs `degree`
/// (points beyond those mentioned are fixed); image lists carry their own.
pub fn parse_permutation(s: &str, degree: Option<usize>) -> Result<Permutation> {
    let s = s.trim();
    if s.starts_with('[') {
        let p = Permutation::from_images(one_based(parse_usize_list(bracketed(s)?)?)?)?;
        if let Some(d) = degree.filter(|&d| d != p.degree()) {
            return Err(Error::DegreeMismatch { expected: d, found: p.degree() });
        }
        return Ok(p);
    }
    let cycles = parse_cycles(s)?;
    let n = match degree {
        Some(d) => d,
        None => cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0),
    };
    let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
    Permutation::from_cycles(n, &refs)
}

pub fn format_cycles(p: &Permutation) -> String {
    let cycles = p.cycles();
    if cycles.is_empty() {
        return "()".into();
    }
    cycles
        .iter()
        .map(|c| {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            format!("({})", pts.join(" "))
        })
        .collect()
}

pub fn format_image_list(images: &[usize]) -> String {
    let pts: Vec<String> = images.iter().map(|x| (x + 1).to_string()).collect();
    format!("[{}]", pts.join(","))
}

/// Parses a group file. An optional `degree N` line fixes the degree;
/// otherwise it is the largest point mentioned.
pub fn parse_group(text: &str) -> Result<PermGroup> {
    let mut degree = None;
    let mut lines = Vec::new();
    for raw in text.lines() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(d) = line.strip_prefix("degree") {
            let d = d.trim_start_matches([':', ' ', '=']).trim();
            degree = Some(d.parse().map_err(|_| parse_err(format!("bad degree {d:?}")))?);
            continue;
        }
        lines.push(line);
    }
    let n = match degree {
        Some(d) => d,
        None => lines.iter().map(|l| max_point(l)).collect::<Result<Vec<_>>>()?.into_iter().max().unwrap_or(0),
    };
    let gens = lines.iter().map(|l| parse_permutation(l, Some(n))).collect::<Result<Vec<_>>>()?;
    PermGroup::new(gens)
}

pub fn format_group(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for p in g.generators() {
        out.push_str(&format_cycles(p));
        out.push('\n');
    }
    out
}

/// Parses `[1, 1, 3, ...]` or `Transformation( [ ... ] )`, 1-based.
pub fn parse_transformation(s: &str) -> Result<Transformation> {
    let body: String = s.lines().map(strip_comment).collect::<Vec<_>>().join(" ");
    Transformation::new(one_based(parse_usize_list(bracketed(&body)?)?)?)
}

pub fn format_transformation(f: &Transformation) -> String {
    format_image_list(f.images())
}

/// Adjacency-list text: one line per vertex, `v: u w ...`, 1-based. The
/// `v:` label may be omitted, in which case line order gives the vertex.
pub fn parse_adjacency_list(text: &str) -> Result<Graph> {
    let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
    for raw in text.lines() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let (v, rest) = match line.split_once(':') {
            Some((v, rest)) => {
                let v: usize = v.trim().parse().map_err(|_| parse_err(format!("bad vertex label {v:?}")))?;
                (v.checked_sub(1).ok_or_else(|| parse_err("vertices are 1-based"))?, rest)
            }
            None => (rows.len(), line),
        };
        rows.push((v, one_based(parse_usize_list(rest)?)?));
    }
    let n = rows.len();
    let mut g = Graph::empty(n);
    for (v, nbrs) in rows {
        if v >= n {
            return Err(Error::PointOutOfRange { point: v + 1, degree: n });
        }
        for u in nbrs {
            if u >= n {
                return Err(Error::PointOutOfRange { point: u + 1, degree: n });
            }
            if u == v {
                return Err(parse_err(format!("loop at vertex {}", v + 1)));
            }
            g.add_edge(v, u);
        }
    }
    Ok(g)
}

pub fn format_adjacency_list(g: &Graph) -> String {
    let mut out = String::new();
    for v in 0..g.n() {
        let nbrs: Vec<String> = g.neighbours(v).map(|u| (u + 1).to_string()).collect();
        if nbrs.is_empty() {
            out.push_str(&format!("{}:\n", v + 1));
        } else {
            out.push_str(&format!("{}: {}\n", v + 1, nbrs.join(" ")));
        }
    }
    out
}

/// graph6 encoding of `g` (no header, no newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(parse_err(format!("invalid graph6 byte {b}")));
    }
    let val = |b: u8| (b - 63) as usize;
    let (n, mut pos) = match bytes {
        [] => return Err(parse_err("empty graph6 string")),
        [126, 126, rest @ ..] if rest.len() >= 6 => (rest[..6].iter().fold(0, |a, &b| (a << 6) | val(b)), 8),
        [126, rest @ ..] if rest.len() >= 3 => (rest[..3].iter().fold(0, |a, &b| (a << 6) | val(b)), 4),
        [126, ..] => return Err(parse_err("truncated graph6 size")),
        [b, ..] => (val(*b), 1),
    };
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if bytes.len() - pos != needed {
        return Err(parse_err(format!("graph6 body has {} bytes, expected {needed}", bytes.len() - pos)));
    }
    let mut g = Graph::empty(n);
    let mut bit = 0;
    let mut cur = 0usize;
    for j in 1..n {
        for i in 0..j {
            if bit == 0 {
                cur = val(bytes[pos]);
                pos += 1;
                bit = 6;
            }
            bit -= 1;
            if cur >> bit & 1 == 1 {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

pub fn parse_latin_square(text: &str) -> Result<LatinSquare> {
    let rows: Vec<Vec<usize>> = text
        .lines()
        .map(strip_comment)
        .filter(|l| !l.is_empty())
        .map(parse_usize_list)
        .collect::<Result<_>>()?;
    LatinSquare::from_rows(&rows)
}

pub fn format_latin_square(l: &LatinSquare) -> String {
    let mut out = String::new();
    for i in 0..l.order() {
        let row: Vec<String> = (0..l.order()).map(|j| l.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn permutation_formats() {
        let p = parse_permutation("(1 2 3)(4 5)", None).unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3]);
        assert_eq!(parse_permutation("[2,3,1,5,4]", None).unwrap(), p);
        assert_eq!(format_cycles(&p), "(1 2 3)(4 5)");
        assert_eq!(parse_permutation("(1 2)", Some(4)).unwrap().degree(), 4);
        assert_eq!(format_cycles(&Permutation::identity(3)), "()");
        assert!(parse_permutation("(0 1)", None).is_err());
        assert!(parse_permutation("[1,1]", None).is_err());
    }

    #[test]
    fn group_file() {
        let text = "# dihedral group of the square\n(1 2 3 4)\n(1 3)  # reflection\n";
        let g = parse_group(text).unwrap();
        assert_eq!(g.degree(), 4);
        assert_eq!(g.generators().len(), 2);
        assert_eq!(parse_group(&format_group(&g)).unwrap(), g);
        let h = parse_group("degree 6\n(1 2)\n").unwrap();
        assert_eq!(h.degree(), 6);
    }

    #[test]
    fn transformation_format() {
        let f = parse_transformation("Transformation( [ 1, 1,\n 3, 2 ] )").unwrap();
        assert_eq!(f.images(), &[0, 0, 2, 1]);
        assert_eq!(format_transformation(&f), "[1,1,3,2]");
        assert!(parse_transformation("[1, 5]").is_err());
    }

    #[test]
    fn adjacency_list() {
        let g = Graph::petersen();
        let text = format_adjacency_list(&g);
        assert_eq!(parse_adjacency_list(&text).unwrap(), g);
        let h = parse_adjacency_list("2\n1 3\n2\n").unwrap();
        assert_eq!(h, Graph::path(3));
    }

    #[test]
    fn graph6_known_strings() {
        // worked example from the graph6 format description
        let p5 = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&p5), "DQc");
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(from_graph6(">>graph6<<DQc").unwrap(), p5);
        assert!(from_graph6("DQ").is_err());
        let big = Graph::cycle(100);
        assert!(to_graph6(&big).starts_with('~'));
        assert_eq!(from_graph6(&to_graph6(&big)).unwrap(), big);
    }

    #[test]
    fn latin_format() {
        let l = parse_latin_square("0 1 2\n1 2 0\n2 0 1\n").unwrap();
        assert_eq!(parse_latin_square(&format_latin_square(&l)).unwrap(), l);
        assert!(parse_latin_square("0 1\n0 1\n").is_err());
    }

    proptest! {
        #[test]
        fn graph6_roundtrip(n in 0usize..80, seed in any::<u64>()) {
            let mut g = Graph::empty(n);
            let mut s = seed | 1;
            for u in 0..n {
                for v in u + 1..n {
                    s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                    if s & 3 == 0 { g.add_edge(u, v); }
                }
            }
            prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
            prop_assert_eq!(parse_adjacency_list(&format_adjacency_list(&g)).unwrap(), g);
        }
    }
}
