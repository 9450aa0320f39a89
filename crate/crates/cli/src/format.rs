//! Plain-text profile files.
//!
//! ```text
//! # comment
//! worlds: x y z w          (or: atoms: p q)
//! tpo: [w] [z] [x y]
//! tpo: [w] < [y] < [x z]
//! ```
//!
//! Blocks run from most to least plausible. In `atoms:` files each block is
//! a formula and stands for its models.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use teamqueue::{parse_formula, LogicError, OrderError, Profile, Proposition, Tpo, Universe};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: expected `worlds:` or `atoms:` before any `tpo:` line")]
    MissingHeader { line: usize },
    #[error("line {line}: the universe is already declared")]
    DuplicateHeader { line: usize },
    #[error("line {line}: unrecognised line `{text}`")]
    UnknownLine { line: usize, text: String },
    #[error("line {line}: {source}")]
    Logic { line: usize, source: LogicError },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown world `{name}`")]
    UnknownWorld { line: usize, name: String },
    #[error("line {line}: world `{world}` appears twice")]
    Repeated { line: usize, world: String },
    #[error("line {line}: world `{world}` is missing")]
    Missing { line: usize, world: String },
    #[error("line {line}: empty block")]
    EmptyBlock { line: usize },
    #[error("no `tpo:` lines")]
    NoTpo,
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// A parsed profile file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileFile {
    pub universe: Universe,
    pub profile: Profile,
}

pub fn load_profile(path: &Path) -> Result<ProfileFile, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.to_path_buf(), source })?;
    parse_profile(&text)
}

pub fn parse_profile(text: &str) -> Result<ProfileFile, FormatError> {
    let mut universe: Option<Universe> = None;
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let (key, rest) = body.split_once(':').ok_or_else(|| FormatError::UnknownLine { line, text: body.into() })?;
        match key.trim() {
            "worlds" | "atoms" => {
                if universe.is_some() {
                    return Err(FormatError::DuplicateHeader { line });
                }
                let names: Vec<&str> = rest.split_whitespace().collect();
                let u = if key.trim() == "worlds" {
                    Universe::from_world_names(&names)
                } else {
                    Universe::from_atoms(&names)
                };
                universe = Some(u.map_err(|source| FormatError::Logic { line, source })?);
            }
            "tpo" => {
                let u = universe.as_ref().ok_or(FormatError::MissingHeader { line })?;
                entries.push(parse_tpo(u, rest, line)?);
            }
            _ => return Err(FormatError::UnknownLine { line, text: body.into() }),
        }
    }
    let universe = universe.ok_or(FormatError::NoTpo)?;
    if entries.is_empty() {
        return Err(FormatError::NoTpo);
    }
    Ok(ProfileFile { universe, profile: Profile::new(entries)? })
}

/// Parses bracketed blocks such as `[w] < [x y]`; `line` only labels errors.
pub fn parse_tpo(u: &Universe, text: &str, line: usize) -> Result<Tpo, FormatError> {
    let syntax = |message: String| FormatError::Syntax { line, message };
    let mut blocks = Vec::new();
    let mut placed = u.empty();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if let Some(after) = rest.strip_prefix('<') {
            if blocks.is_empty() {
                return Err(syntax("`<` before the first block".into()));
            }
            rest = after.trim_start();
            continue;
        }
        let inner = rest.strip_prefix('[').ok_or_else(|| syntax(format!("expected `[` at `{rest}`")))?;
        let close = inner.find(']').ok_or_else(|| syntax("unclosed `[`".into()))?;
        let block = parse_block(u, &inner[..close], line)?;
        if block.is_empty() {
            return Err(FormatError::EmptyBlock { line });
        }
        if let Some(w) = (block & placed).worlds().next() {
            return Err(FormatError::Repeated { line, world: u.world_name(w).into() });
        }
        placed = placed | block;
        blocks.push(block);
        rest = inner[close + 1..].trim_start();
    }
    if let Some(w) = (!placed).worlds().next() {
        return Err(FormatError::Missing { line, world: u.world_name(w).into() });
    }
    Ok(Tpo::from_blocks(u.size(), blocks)?)
}

fn parse_block(u: &Universe, text: &str, line: usize) -> Result<Proposition, FormatError> {
    if u.atoms().is_some() {
        let f = parse_formula(text).map_err(|e| FormatError::Logic { line, source: e.into() })?;
        return u.models(&f).map_err(|source| FormatError::Logic { line, source });
    }
    let mut block = u.empty();
    for name in text.split_whitespace() {
        let w = u.world(name).ok_or_else(|| FormatError::UnknownWorld { line, name: name.into() })?;
        if block.contains(w) {
            return Err(FormatError::Repeated { line, world: name.into() });
        }
        block = block | Proposition::singleton(u.size(), w);
    }
    Ok(block)
}

pub fn render_header(u: &Universe) -> String {
    match u.atoms() {
        Some(atoms) => format!("atoms: {}", atoms.join(" ")),
        None => {
            let names: Vec<&str> = u.worlds().map(|w| u.world_name(w)).collect();
            format!("worlds: {}", names.join(" "))
        }
    }
}

/// The canonical text of a profile file.
pub fn render_profile(file: &ProfileFile) -> String {
    let mut out = render_header(&file.universe);
    out.push('\n');
    for t in file.profile.iter() {
        let _ = writeln!(out, "tpo: {}", t.render(&file.universe));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const FOUR: &str = "# four inputs\nworlds: x y z w\n\ntpo: [w] [z] [x y]\ntpo: [w] [y] [x z]\ntpo: [z] [w] [x y]\ntpo: [z] [y] [x w]\n";

    #[test]
    fn parses_abstract_files() {
        let f = parse_profile(FOUR).unwrap();
        assert_eq!(f.profile.len(), 4);
        assert_eq!(f.profile.get(1).render(&f.universe), "[w] < [y] < [x z]");
        let again = parse_profile(&render_profile(&f)).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn parses_atom_files() {
        let f = parse_profile("atoms: p q\ntpo: [p&q] < [p&~q | ~p&q] < [~p&~q]\n").unwrap();
        let t = f.profile.get(0);
        assert_eq!(t.block_count(), 3);
        assert_eq!(t.size(), 4);
        assert_eq!(render_profile(&f), "atoms: p q\ntpo: [p&q] < [p&~q | ~p&q] < [~p&~q]\n");
    }

    #[test]
    fn reports_line_and_world() {
        let err = parse_profile("worlds: x y z w\ntpo: [x] [y z]\n").unwrap_err();
        assert_eq!(err.to_string(), "line 2: world `w` is missing");
        let err = parse_profile("worlds: x y\n\ntpo: [x x] [y]\n").unwrap_err();
        assert_eq!(err.to_string(), "line 3: world `x` appears twice");
        let err = parse_profile("worlds: x y\ntpo: [x] [y x]\n").unwrap_err();
        assert_eq!(err.to_string(), "line 2: world `x` appears twice");
        let err = parse_profile("atoms: p\ntpo: [p] [true]\n").unwrap_err();
        assert_eq!(err.to_string(), "line 2: world `p` appears twice");
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(matches!(parse_profile("tpo: [x]\n"), Err(FormatError::MissingHeader { line: 1 })));
        assert!(matches!(parse_profile("worlds: x\n"), Err(FormatError::NoTpo)));
        assert!(matches!(parse_profile("worlds: x\nworlds: y\n"), Err(FormatError::DuplicateHeader { line: 2 })));
        assert!(matches!(parse_profile("worlds: x\ntpo: < [x]\n"), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse_profile("worlds: x\ntpo: [x\n"), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse_profile("worlds: x\ntpo: [x] []\n"), Err(FormatError::EmptyBlock { .. })));
        assert!(matches!(parse_profile("worlds: x\ntpo: [v]\n"), Err(FormatError::UnknownWorld { .. })));
        assert!(matches!(parse_profile("worlds: x\nfoo\n"), Err(FormatError::UnknownLine { .. })));
        assert!(matches!(parse_profile("atoms: p\ntpo: [p &]\n"), Err(FormatError::Logic { .. })));
    }
}
