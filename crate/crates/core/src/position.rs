//! Positions: words over `{l, r, a}` addressing subterms.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One step of a position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    /// Function part of an application.
    L,
    /// Argument part of an application.
    R,
    /// Body of an abstraction.
    A,
}

impl Dir {
    pub fn letter(self) -> char {
        match self {
            Dir::L => 'l',
            Dir::R => 'r',
            Dir::A => 'a',
        }
    }
}

/// A path from the root of a term to one of its subterms. The empty
/// word addresses the term itself.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(Vec<Dir>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn from_dirs(dirs: impl IntoIterator<Item = Dir>) -> Self {
        Position(dirs.into_iter().collect())
    }

    pub fn dirs(&self) -> &[Dir] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of abstractions crossed along this path.
    pub fn a_depth(&self) -> usize {
        self.0.iter().filter(|d| **d == Dir::A).count()
    }

    pub fn child(&self, dir: Dir) -> Position {
        let mut dirs = self.0.clone();
        dirs.push(dir);
        Position(dirs)
    }

    pub fn push(&mut self, dir: Dir) {
        self.0.push(dir);
    }

    pub fn pop(&mut self) -> Option<Dir> {
        self.0.pop()
    }

    /// `self · other`
    pub fn concat(&self, other: &Position) -> Position {
        let mut dirs = self.0.clone();
        dirs.extend_from_slice(&other.0);
        Position(dirs)
    }

    pub fn is_prefix_of(&self, other: &Position) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_strict_prefix_of(&self, other: &Position) -> bool {
        self.0.len() < other.0.len() && self.is_prefix_of(other)
    }

    /// Renders the word, using `empty` for ε.
    pub fn render(&self, empty: &str) -> String {
        if self.0.is_empty() {
            empty.to_string()
        } else {
            self.0.iter().map(|d| d.letter()).collect()
        }
    }
}

impl FromIterator<Dir> for Position {
    fn from_iter<I: IntoIterator<Item = Dir>>(iter: I) -> Self {
        Position(iter.into_iter().collect())
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("ε"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid position letter `{0}` (expected l, r or a)")]
pub struct ParsePositionError(pub char);

impl FromStr for Position {
    type Err = ParsePositionError;

    /// Accepts `ε`, `eps` or the empty string for the root.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "ε" || s == "eps" {
            return Ok(Position::root());
        }
        s.chars()
            .map(|c| match c {
                'l' => Ok(Dir::L),
                'r' => Ok(Dir::R),
                'a' => Ok(Dir::A),
                other => Err(ParsePositionError(other)),
            })
            .collect()
    }
}
