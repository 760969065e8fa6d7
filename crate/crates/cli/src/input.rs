use std::fs;
use std::path::Path;

use synchro::catalog::{self, CatalogObject};
use synchro::latin::LatinSquare;
use synchro::{io, Error, Graph, PermGroup, Transformation};

use crate::Failure;

/// Text of an input argument: `@name` names a catalog entry, anything else is a path.
pub struct Input {
    pub label: String,
    pub text: String,
    catalog: Option<CatalogObject>,
}

impl Input {
    pub fn load(arg: &str) -> Result<Input, Failure> {
        if let Some(name) = arg.strip_prefix('@') {
            let entry = catalog::entry(name).ok_or_else(|| Failure::usage(format!("no catalog entry named {name:?}")))?;
            let obj = entry.build().map_err(Failure::from)?;
            let text = match &obj {
                CatalogObject::Graph(g) => io::to_graph6(g),
                CatalogObject::Group(g) => io::format_group(g),
            };
            return Ok(Input { label: arg.to_string(), text, catalog: Some(obj) });
        }
        let text = fs::read_to_string(Path::new(arg)).map_err(|e| Failure::usage(format!("{arg}: {e}")))?;
        Ok(Input { label: arg.to_string(), text, catalog: None })
    }

    /// FNV-1a of the input text, as 16 hex digits.
    pub fn digest(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self.text.bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        format!("{h:016x}")
    }

    pub fn graph(&self) -> Result<Graph, Failure> {
        match &self.catalog {
            Some(CatalogObject::Graph(g)) => return Ok(g.clone()),
            Some(CatalogObject::Group(_)) => return Err(Failure::usage(format!("{} is a group, not a graph", self.label))),
            None => {}
        }
        parse_graph(&self.text).map_err(|e| Failure::input(&self.label, e))
    }

    pub fn group(&self) -> Result<PermGroup, Failure> {
        match &self.catalog {
            Some(CatalogObject::Group(g)) => Ok(g.clone()),
            Some(CatalogObject::Graph(_)) => Err(Failure::usage(format!("{} is a graph, not a group", self.label))),
            None => io::parse_group(&self.text).map_err(|e| Failure::input(&self.label, e)),
        }
    }

    pub fn transformation(&self) -> Result<Transformation, Failure> {
        io::parse_transformation(&self.text).map_err(|e| Failure::input(&self.label, e))
    }

    pub fn latin_square(&self) -> Result<LatinSquare, Failure> {
        io::parse_latin_square(&self.text).map_err(|e| Failure::input(&self.label, e))
    }
}

/// graph6 when the text is a single token (optionally after the header),
/// adjacency list otherwise.
pub fn parse_graph(text: &str) -> synchro::Result<Graph> {
    let body = text.trim().trim_start_matches(">>graph6<<");
    let is_graph6 = !body.is_empty() && !body.contains(':') && body.lines().count() == 1 && !body.contains(' ');
    if is_graph6 && body.bytes().all(|b| (63..=126).contains(&b)) {
        io::from_graph6(body)
    } else if text.trim().is_empty() {
        Err(Error::Parse("empty graph file".into()))
    } else {
        io::parse_adjacency_list(text)
    }
}
