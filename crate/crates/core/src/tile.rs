//! Glues and tile types.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{Dim, Direction};

/// A labeled, strength-weighted tile side. Two glues interact only when
/// label and strength both match and the strength is positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Glue {
    pub label: String,
    pub strength: u32,
}

impl Glue {
    pub fn new(label: impl Into<String>, strength: u32) -> Glue {
        Glue { label: label.into(), strength }
    }

    /// The distinguished null glue: empty label, strength 0.
    pub fn null() -> Glue {
        Glue::default()
    }

    pub fn is_null(&self) -> bool {
        self.label.is_empty() && self.strength == 0
    }

    /// Strength contributed when this glue abuts `other`.
    pub fn bond_strength(&self, other: &Glue) -> u32 {
        if self.strength > 0 && self == other {
            self.strength
        } else {
            0
        }
    }
}

impl fmt::Display for Glue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_null() {
            write!(f, "null")
        } else {
            write!(f, "{}:{}", self.label, self.strength)
        }
    }
}

/// Index of a tile type inside its [`TileSystem`](crate::TileSystem).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TileId(pub u32);

impl TileId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for TileId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A unit square (2D) or cube (3D) with one glue per side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TileType {
    pub name: String,
    dim: Dim,
    sides: Vec<Glue>,
}

impl TileType {
    /// A tile with all-null sides.
    pub fn new(name: impl Into<String>, dim: Dim) -> TileType {
        TileType {
            name: name.into(),
            dim,
            sides: vec![Glue::null(); 2 * dim.as_usize()],
        }
    }

    /// Builder-style side assignment.
    ///
    /// Panics if `dir` is not a side of a tile of this dimension.
    pub fn with(mut self, dir: Direction, label: impl Into<String>, strength: u32) -> TileType {
        self.set_glue(dir, Glue::new(label, strength));
        self
    }

    pub fn set_glue(&mut self, dir: Direction, glue: Glue) {
        assert!(
            dir.index() < self.sides.len(),
            "direction {dir} is not a side of a {} tile",
            self.dim
        );
        self.sides[dir.index()] = glue;
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn glue(&self, dir: Direction) -> &Glue {
        static NULL: Glue = Glue { label: String::new(), strength: 0 };
        self.sides.get(dir.index()).unwrap_or(&NULL)
    }

    /// Sides in canonical direction order.
    pub fn sides(&self) -> impl Iterator<Item = (Direction, &Glue)> {
        self.dim.directions().iter().map(move |&d| (d, &self.sides[d.index()]))
    }

    pub(crate) fn clip_strengths(&mut self, cap: u32) {
        for g in &mut self.sides {
            g.strength = g.strength.min(cap);
        }
    }
}
