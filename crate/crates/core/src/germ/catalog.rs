//! Line-oriented germ definition files.
//!
//! ```text
//! germ "C5" vars x y
//!   map x | y^2 | x*y^3 - x^5*y
//! end
//! unfolding "C5-triv" of "C5" param t
//!   map x | y^2 | x*y^3 - x^5*y
//! end
//! ```
//!
//! The declared variables play the roles of `x`, `y` (and `t`) by position.
//! An unfolding refers to a germ defined earlier in the same file.

use std::collections::HashMap;
use std::path::Path;

use thiserror::Error;

use crate::algebra::{parse_polynomial, AlgebraError, Polynomial, Ring};

use super::{family_ring, rename_positional, source_ring, validate_unfolding, MapGerm, Unfolding};

/// The catalog shipped with the library.
pub const BUNDLED_CATALOG: &str = include_str!("../../data/catalog.germ");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("line {line}: entry \"{name}\" violates {invariant}")]
    Validation { line: usize, name: String, invariant: String },
    #[error("cannot read catalog: {0}")]
    Io(String),
}

impl CatalogError {
    pub fn code(&self) -> &'static str {
        match self {
            CatalogError::Parse { .. } => "ParseError",
            CatalogError::Validation { .. } => "ValidationError",
            CatalogError::Io(_) => "Io",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogEntry {
    Germ(MapGerm),
    Unfolding(Unfolding),
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        match self {
            CatalogEntry::Germ(g) => g.name(),
            CatalogEntry::Unfolding(u) => u.name(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name() == name)
    }

    pub fn germ(&self, name: &str) -> Option<&MapGerm> {
        match self.get(name) {
            Some(CatalogEntry::Germ(g)) => Some(g),
            _ => None,
        }
    }

    pub fn unfolding(&self, name: &str) -> Option<&Unfolding> {
        match self.get(name) {
            Some(CatalogEntry::Unfolding(u)) => Some(u),
            _ => None,
        }
    }

    pub fn germs(&self) -> impl Iterator<Item = &MapGerm> {
        self.entries.iter().filter_map(|e| match e {
            CatalogEntry::Germ(g) => Some(g),
            _ => None,
        })
    }

    pub fn unfoldings(&self) -> impl Iterator<Item = &Unfolding> {
        self.entries.iter().filter_map(|e| match e {
            CatalogEntry::Unfolding(u) => Some(u),
            _ => None,
        })
    }
}

pub fn bundled_catalog() -> Catalog {
    parse_catalog(BUNDLED_CATALOG).expect("bundled catalog is valid")
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Catalog, CatalogError> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| CatalogError::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_catalog(&text)
}

enum Header {
    Germ { name: String, vars: Vec<String> },
    Unfolding { name: String, base: String, param: String },
}

struct Pending {
    header: Header,
    line: usize,
    map: Option<(usize, Vec<Polynomial>)>,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> CatalogError {
    CatalogError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits off a double-quoted name starting at byte `at`.
fn quoted(s: &str, at: usize, line: usize) -> Result<(String, usize), CatalogError> {
    let rest = &s[at..];
    let trimmed = rest.trim_start();
    let start = at + rest.len() - trimmed.len();
    if !trimmed.starts_with('"') {
        return Err(perr(line, start + 1, "expected a quoted name"));
    }
    match trimmed[1..].find('"') {
        Some(end) => {
            let name = trimmed[1..1 + end].to_string();
            if name.is_empty() {
                return Err(perr(line, start + 1, "empty name"));
            }
            Ok((name, start + end + 2))
        }
        None => Err(perr(line, start + 1, "unterminated name")),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn parse_header(text: &str, line: usize) -> Result<Header, CatalogError> {
    if let Some(rest) = text.strip_prefix("germ") {
        let offset = text.len() - rest.len();
        let (name, after) = quoted(text, offset, line)?;
        let words: Vec<&str> = text[after..].split_whitespace().collect();
        if words.first() != Some(&"vars") || words.len() != 3 {
            return Err(perr(line, after + 1, "expected `vars <x> <y>`"));
        }
        let vars: Vec<String> = words[1..].iter().map(|s| s.to_string()).collect();
        if !vars.iter().all(|v| is_identifier(v)) || vars[0] == vars[1] {
            return Err(perr(line, after + 1, "invalid variable names"));
        }
        return Ok(Header::Germ { name, vars });
    }
    if let Some(rest) = text.strip_prefix("unfolding") {
        let offset = text.len() - rest.len();
        let (name, after) = quoted(text, offset, line)?;
        let rest = &text[after..];
        let trimmed = rest.trim_start();
        let of_at = after + rest.len() - trimmed.len();
        let Some(after_of) = trimmed.strip_prefix("of") else {
            return Err(perr(line, of_at + 1, "expected `of \"<base>\"`"));
        };
        let (base, after_base) = quoted(text, text.len() - after_of.len(), line)?;
        let words: Vec<&str> = text[after_base..].split_whitespace().collect();
        if words.first() != Some(&"param") || words.len() != 2 || !is_identifier(words[1]) {
            return Err(perr(line, after_base + 1, "expected `param <t>`"));
        }
        return Ok(Header::Unfolding {
            name,
            base,
            param: words[1].to_string(),
        });
    }
    Err(perr(line, 1, "expected `germ`, `unfolding`, `map` or `end`"))
}

fn parse_map(raw: &str, body_at: usize, line: usize, ring: &std::sync::Arc<Ring>) -> Result<Vec<Polynomial>, CatalogError> {
    let body = &raw[body_at..];
    let parts: Vec<&str> = body.split('|').collect();
    if parts.len() != 3 {
        return Err(perr(line, body_at + 1, format!("expected 3 components separated by `|`, found {}", parts.len())));
    }
    let mut out = Vec::new();
    let mut at = body_at;
    for part in parts {
        match parse_polynomial(part, ring) {
            Ok(p) => out.push(p),
            Err(e) => {
                let (col, msg) = match &e {
                    AlgebraError::SyntaxError { position, .. } | AlgebraError::NegativeExponent { position } => {
                        (at + position + 1, e.to_string())
                    }
                    _ => (at + 1, e.to_string()),
                };
                return Err(perr(line, col, msg));
            }
        }
        at += part.len() + 1;
    }
    Ok(out)
}

pub fn parse_catalog(text: &str) -> Result<Catalog, CatalogError> {
    let mut catalog = Catalog::default();
    let mut pending: Option<Pending> = None;
    let mut declared: HashMap<String, Vec<String>> = HashMap::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let raw = match raw_line.find('#') {
            Some(c) => &raw_line[..c],
            None => raw_line,
        };
        let content = raw.trim();
        if content.is_empty() {
            continue;
        }
        let indent = raw.len() - raw.trim_start().len();
        if let Some(rest) = content.strip_prefix("map").filter(|r| r.starts_with(char::is_whitespace)) {
            let Some(p) = pending.as_mut() else {
                return Err(perr(line, indent + 1, "`map` outside of an entry"));
            };
            if p.map.is_some() {
                return Err(perr(line, indent + 1, "duplicate `map` line"));
            }
            let ring = match &p.header {
                Header::Germ { vars, .. } => Ring::new(vars.clone()),
                Header::Unfolding { base, param, .. } => {
                    let Some(CatalogEntry::Germ(_)) = catalog.get(base) else {
                        return Err(CatalogError::Validation {
                            line: p.line,
                            name: base.clone(),
                            invariant: "unfolding base must be a germ defined earlier".into(),
                        });
                    };
                    let mut vars = declared[base].clone();
                    if vars.contains(param) {
                        return Err(perr(p.line, 1, "parameter name clashes with a germ variable"));
                    }
                    vars.push(param.clone());
                    Ring::new(vars)
                }
            };
            let body_at = indent + (content.len() - rest.len());
            p.map = Some((line, parse_map(raw, body_at, line, &ring)?));
            continue;
        }
        if content == "end" {
            let Some(p) = pending.take() else {
                return Err(perr(line, indent + 1, "`end` without an entry"));
            };
            if let Header::Germ { name, vars } = &p.header {
                declared.insert(name.clone(), vars.clone());
            }
            let entry = finish(&catalog, p)?;
            catalog.entries.push(entry);
            continue;
        }
        if pending.is_some() {
            return Err(perr(line, indent + 1, "expected `map` or `end`"));
        }
        let header = parse_header(content, line).map_err(|e| match e {
            CatalogError::Parse { line, column, message } => CatalogError::Parse {
                line,
                column: column + indent,
                message,
            },
            other => other,
        })?;
        let name = match &header {
            Header::Germ { name, .. } | Header::Unfolding { name, .. } => name.clone(),
        };
        if catalog.get(&name).is_some() {
            return Err(CatalogError::Validation {
                line,
                name,
                invariant: "unique names".into(),
            });
        }
        pending = Some(Pending { header, line, map: None });
    }
    if let Some(p) = pending {
        return Err(perr(p.line, 1, "entry is missing `end`"));
    }
    Ok(catalog)
}

fn finish(catalog: &Catalog, p: Pending) -> Result<CatalogEntry, CatalogError> {
    let Some((map_line, comps)) = p.map else {
        return Err(perr(p.line, 1, "entry has no `map` line"));
    };
    match p.header {
        Header::Germ { name, .. } => {
            let src = source_ring();
            let comps: Vec<Polynomial> = comps.iter().map(|c| rename_positional(c, &src)).collect();
            let germ = MapGerm::new(name.clone(), comps.try_into().expect("three components")).map_err(|e| {
                CatalogError::Validation {
                    line: map_line,
                    name: name.clone(),
                    invariant: e.code().to_string(),
                }
            })?;
            Ok(CatalogEntry::Germ(germ))
        }
        Header::Unfolding { name, base, .. } => {
            let base = catalog.germ(&base).expect("checked when the map was read");
            let fam = family_ring();
            let comps: Vec<Polynomial> = comps.iter().map(|c| rename_positional(c, &fam)).collect();
            let u = validate_unfolding(name.clone(), base, comps.try_into().expect("three components")).map_err(|e| {
                CatalogError::Validation {
                    line: map_line,
                    name,
                    invariant: e.code().to_string(),
                }
            })?;
            Ok(CatalogEntry::Unfolding(u))
        }
    }
}
