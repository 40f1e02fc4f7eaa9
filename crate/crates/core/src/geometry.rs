//! Lattice points and the canonical axis directions.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Number of spatial dimensions a system lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn from_usize(d: usize) -> Option<Dim> {
        match d {
            2 => Some(Dim::Two),
            3 => Some(Dim::Three),
            _ => None,
        }
    }

    pub fn as_usize(self) -> usize {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }

    /// The `2d` directions of this dimension in canonical order.
    pub fn directions(self) -> &'static [Direction] {
        match self {
            Dim::Two => &Direction::ALL[..4],
            Dim::Three => &Direction::ALL[..],
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}D", self.as_usize())
    }
}

/// A point of the integer lattice. Two-dimensional points keep `z == 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pos {
    pub x: i32,
    pub y: i32,
    pub z: i32,
}

impl Pos {
    pub const ORIGIN: Pos = Pos { x: 0, y: 0, z: 0 };

    pub const fn new(x: i32, y: i32, z: i32) -> Pos {
        Pos { x, y, z }
    }

    pub const fn xy(x: i32, y: i32) -> Pos {
        Pos { x, y, z: 0 }
    }

    pub fn step(self, dir: Direction) -> Pos {
        self + dir.unit()
    }

    /// Direction `d` such that `self.step(d) == other`, if the points are adjacent.
    pub fn direction_to(self, other: Pos) -> Option<Direction> {
        let delta = other - self;
        Direction::ALL.iter().copied().find(|d| d.unit() == delta)
    }

    pub fn is_adjacent(self, other: Pos) -> bool {
        self.direction_to(other).is_some()
    }

    pub fn neighbors(self, dim: Dim) -> impl Iterator<Item = (Direction, Pos)> {
        dim.directions().iter().map(move |&d| (d, self.step(d)))
    }

    /// Coordinates as a vector of length `dim`.
    pub fn coords(self, dim: Dim) -> Vec<i32> {
        match dim {
            Dim::Two => vec![self.x, self.y],
            Dim::Three => vec![self.x, self.y, self.z],
        }
    }

    pub fn from_coords(coords: &[i32]) -> Option<Pos> {
        match *coords {
            [x, y] => Some(Pos::xy(x, y)),
            [x, y, z] => Some(Pos::new(x, y, z)),
            _ => None,
        }
    }

    /// Floor division of each coordinate by `m` (block index of the point).
    pub fn div_floor(self, m: i32) -> Pos {
        Pos::new(self.x.div_euclid(m), self.y.div_euclid(m), self.z.div_euclid(m))
    }

    pub fn rem_floor(self, m: i32) -> Pos {
        Pos::new(self.x.rem_euclid(m), self.y.rem_euclid(m), self.z.rem_euclid(m))
    }

    pub fn scale(self, m: i32) -> Pos {
        Pos::new(self.x * m, self.y * m, self.z * m)
    }
}

impl Add for Pos {
    type Output = Pos;
    fn add(self, o: Pos) -> Pos {
        Pos::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Pos {
    type Output = Pos;
    fn sub(self, o: Pos) -> Pos {
        Pos::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Pos {
    type Output = Pos;
    fn neg(self) -> Pos {
        Pos::new(-self.x, -self.y, -self.z)
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Axis directions. The declaration order N, E, S, W, U, D is the canonical
/// order used for serialization and for every tie-break.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    N,
    E,
    S,
    W,
    U,
    D,
}

impl Direction {
    pub const ALL: [Direction; 6] = [
        Direction::N,
        Direction::E,
        Direction::S,
        Direction::W,
        Direction::U,
        Direction::D,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn unit(self) -> Pos {
        match self {
            Direction::N => Pos::new(0, 1, 0),
            Direction::E => Pos::new(1, 0, 0),
            Direction::S => Pos::new(0, -1, 0),
            Direction::W => Pos::new(-1, 0, 0),
            Direction::U => Pos::new(0, 0, 1),
            Direction::D => Pos::new(0, 0, -1),
        }
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::N => Direction::S,
            Direction::E => Direction::W,
            Direction::S => Direction::N,
            Direction::W => Direction::E,
            Direction::U => Direction::D,
            Direction::D => Direction::U,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Direction::N => 'N',
            Direction::E => 'E',
            Direction::S => 'S',
            Direction::W => 'W',
            Direction::U => 'U',
            Direction::D => 'D',
        }
    }

    pub fn from_letter(c: char) -> Option<Direction> {
        Direction::ALL.iter().copied().find(|d| d.letter() == c)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Axis-aligned inclusive box of lattice points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub min: Pos,
    pub max: Pos,
}

impl Bounds {
    pub fn of<I: IntoIterator<Item = Pos>>(points: I) -> Option<Bounds> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut b = Bounds { min: first, max: first };
        for p in it {
            b.include(p);
        }
        Some(b)
    }

    pub fn include(&mut self, p: Pos) {
        self.min = Pos::new(self.min.x.min(p.x), self.min.y.min(p.y), self.min.z.min(p.z));
        self.max = Pos::new(self.max.x.max(p.x), self.max.y.max(p.y), self.max.z.max(p.z));
    }

    pub fn union(self, other: Bounds) -> Bounds {
        let mut b = self;
        b.include(other.min);
        b.include(other.max);
        b
    }

    /// Grow by `margin` in every axis of `dim` (z is left alone in 2D).
    pub fn expand(self, margin: i32, dim: Dim) -> Bounds {
        let dz = if dim == Dim::Three { margin } else { 0 };
        Bounds {
            min: self.min - Pos::new(margin, margin, dz),
            max: self.max + Pos::new(margin, margin, dz),
        }
    }

    pub fn contains(&self, p: Pos) -> bool {
        (self.min.x..=self.max.x).contains(&p.x)
            && (self.min.y..=self.max.y).contains(&p.y)
            && (self.min.z..=self.max.z).contains(&p.z)
    }

    pub fn volume(&self) -> usize {
        let w = (self.max.x - self.min.x + 1) as usize;
        let h = (self.max.y - self.min.y + 1) as usize;
        let d = (self.max.z - self.min.z + 1) as usize;
        w * h * d
    }
}
