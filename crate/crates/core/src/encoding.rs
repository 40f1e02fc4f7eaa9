//! String encoding of a tile set's binding relation.
//!
//! For each tile `i` and side `d ∈ {N, E, S, W}` the encoding lists every
//! tile `j` with a marker: `y` if side `d` of `i` binds the opposite side of
//! `j`, `f` if it does and `j` is the last such tile, `n` otherwise.
//!
//! Binary form: `B`, then per tile its index in binary padded to `w + 1`
//! digits, four side blocks (side letter, then marker and `w`-digit index per
//! tile), and `D`; finally `F`. Here `w = max(1, ⌈log₂ n⌉)`.
//!
//! Display form uses decimal indices and single spaces between the header,
//! each side block and the `D`/`F` markers.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::geometry::Direction;
use crate::system::TileSystem;
use crate::tile::TileId;

pub const SIDES: [Direction; 4] = [Direction::N, Direction::E, Direction::S, Direction::W];

/// For every tile and planar side, the set of tiles that bind to that side.
///
/// The relation is taken as given: it need not be symmetric.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BindingRelation {
    binders: Vec<[BTreeSet<usize>; 4]>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EncodingError {
    #[error("tile index {0} out of range")]
    OutOfRange(usize),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

fn side_index(d: Direction) -> usize {
    SIDES.iter().position(|&s| s == d).expect("planar side")
}

impl BindingRelation {
    pub fn new(size: usize) -> BindingRelation {
        BindingRelation { binders: vec![Default::default(); size] }
    }

    /// Builds a relation from `(tile, side, binders)` rows.
    pub fn from_rows(size: usize, rows: &[(usize, Direction, &[usize])]) -> Result<BindingRelation, EncodingError> {
        let mut r = BindingRelation::new(size);
        for &(i, d, js) in rows {
            for &j in js {
                r.insert(i, d, j)?;
            }
        }
        Ok(r)
    }

    /// The relation induced by glue matching on the planar sides of a system.
    pub fn of_system(system: &TileSystem) -> BindingRelation {
        let n = system.tiles().len();
        let mut r = BindingRelation::new(n);
        for i in 0..n {
            for d in SIDES {
                for j in 0..n {
                    if system.bond(TileId(i as u32), d, TileId(j as u32)) > 0 {
                        r.binders[i][side_index(d)].insert(j);
                    }
                }
            }
        }
        r
    }

    pub fn size(&self) -> usize {
        self.binders.len()
    }

    pub fn insert(&mut self, tile: usize, side: Direction, binder: usize) -> Result<(), EncodingError> {
        let n = self.size();
        if tile >= n {
            return Err(EncodingError::OutOfRange(tile));
        }
        if binder >= n {
            return Err(EncodingError::OutOfRange(binder));
        }
        self.binders[tile][side_index(side)].insert(binder);
        Ok(())
    }

    pub fn binds(&self, tile: usize, side: Direction, other: usize) -> bool {
        self.binders[tile][side_index(side)].contains(&other)
    }

    pub fn binders(&self, tile: usize, side: Direction) -> &BTreeSet<usize> {
        &self.binders[tile][side_index(side)]
    }

    /// The distinguished last binder of a side, if any.
    pub fn last_binder(&self, tile: usize, side: Direction) -> Option<usize> {
        self.binders(tile, side).last().copied()
    }

    /// Triples `(i, d, j)` where `j` binds side `d` of `i` but `i` does not
    /// bind the opposite side of `j`.
    pub fn symmetry_violations(&self) -> Vec<(usize, Direction, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size() {
            for d in SIDES {
                for &j in self.binders(i, d) {
                    if !self.binds(j, d.opposite(), i) {
                        out.push((i, d, j));
                    }
                }
            }
        }
        out
    }
}

/// Inner index width `max(1, ⌈log₂ n⌉)`; tile headers use one more digit.
pub fn index_width(n: usize) -> usize {
    if n <= 2 {
        1
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EncodingMode {
    Binary,
    Display,
}

fn side_block(r: &BindingRelation, i: usize, d: Direction, number: impl Fn(usize) -> String) -> String {
    let n = r.size();
    let last = r.last_binder(i, d);
    let mut s = String::new();
    s.push(d.letter());
    for j in 0..n {
        let marker = match (r.binds(i, d, j), last == Some(j)) {
            (true, true) => 'f',
            (true, false) => 'y',
            (false, _) => 'n',
        };
        s.push(marker);
        s.push_str(&number(j));
    }
    s
}

pub fn encode_tileset(r: &BindingRelation, mode: EncodingMode) -> String {
    let n = r.size();
    let w = index_width(n);
    match mode {
        EncodingMode::Binary => {
            let mut s = String::from("B");
            for i in 0..n {
                s.push_str(&format!("{:0width$b}", i, width = w + 1));
                for d in SIDES {
                    s.push_str(&side_block(r, i, d, |j| format!("{:0width$b}", j, width = w)));
                }
                s.push('D');
            }
            s.push('F');
            s
        }
        EncodingMode::Display => {
            let mut tokens = vec!["B".to_string()];
            for i in 0..n {
                tokens.push(i.to_string());
                for d in SIDES {
                    tokens.push(side_block(r, i, d, |j| j.to_string()));
                }
                tokens.push("D".into());
            }
            tokens.push("F".into());
            tokens.join(" ")
        }
    }
}

/// Exact length of the binary encoding of any relation on `n` tiles.
pub fn encoding_length(n: usize) -> usize {
    let w = index_width(n);
    2 + n * (w + 6 + 4 * n * (w + 1))
}

/// Length of one side block (side letter plus `n` marked indices) in binary.
pub fn side_list_length(n: usize) -> usize {
    1 + n * (1 + index_width(n))
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    display: bool,
}

impl Parser<'_> {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T, EncodingError> {
        Err(EncodingError::Parse { offset: self.pos, message: message.into() })
    }

    fn skip_spaces(&mut self) {
        if self.display {
            while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
                self.pos += 1;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_spaces();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), EncodingError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected `{}`", c as char))
        }
    }

    fn number(&mut self, width: usize) -> Result<usize, EncodingError> {
        self.skip_spaces();
        let start = self.pos;
        let digits: &[u8] = if self.display { b"0123456789" } else { b"01" };
        while self.bytes.get(self.pos).is_some_and(|b| digits.contains(b)) && (self.display || self.pos - start < width) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        if text.is_empty() || (!self.display && text.len() != width) {
            self.pos = start;
            return self.fail(format!("expected a {}-digit index", if self.display { 0 } else { width }));
        }
        let radix = if self.display { 10 } else { 2 };
        usize::from_str_radix(text, radix).or_else(|_| self.fail("index too large"))
    }
}

/// Parses either encoding form; strings containing whitespace are read as
/// the display form.
pub fn decode_tileset(s: &str) -> Result<BindingRelation, EncodingError> {
    let display = s.bytes().any(|b| b.is_ascii_whitespace());
    if display {
        return decode_with(s, true, None);
    }
    // In binary the index width depends on the tile count, which is only
    // known once the string is read; the count is recovered from the length.
    let n = (0..=s.len())
        .find(|&n| encoding_length(n) == s.len())
        .ok_or(EncodingError::Parse { offset: s.len(), message: "length matches no tile count".into() })?;
    decode_with(s, false, Some(n))
}

fn decode_with(s: &str, display: bool, size: Option<usize>) -> Result<BindingRelation, EncodingError> {
    let mut p = Parser { bytes: s.as_bytes(), pos: 0, display };
    p.expect(b'B')?;
    let mut rows: Vec<([Vec<(u8, usize)>; 4], [usize; 4])> = Vec::new();
    let w = size.map(index_width).unwrap_or(0);
    loop {
        match p.peek() {
            Some(b'F') => {
                p.pos += 1;
                break;
            }
            None => return p.fail("unexpected end of input"),
            _ => {}
        }
        let i = p.number(w + 1)?;
        if i != rows.len() {
            return p.fail(format!("expected tile {}", rows.len()));
        }
        let mut sides: [Vec<(u8, usize)>; 4] = Default::default();
        let mut offsets = [0; 4];
        for (k, d) in SIDES.iter().enumerate() {
            p.expect(d.letter() as u8)?;
            offsets[k] = p.pos - 1;
            loop {
                let marker = match p.bytes.get(p.pos) {
                    Some(&m @ (b'y' | b'f' | b'n')) => m,
                    _ => break,
                };
                p.pos += 1;
                let j = if display { p.number(0)? } else { p.number(w)? };
                sides[k].push((marker, j));
                if size.is_some_and(|n| sides[k].len() == n) {
                    break;
                }
            }
        }
        p.expect(b'D')?;
        rows.push((sides, offsets));
    }
    p.skip_spaces();
    if p.pos != p.bytes.len() {
        return p.fail("trailing input");
    }
    let n = rows.len();
    let mut r = BindingRelation::new(n);
    for (i, (sides, offsets)) in rows.iter().enumerate() {
        for (k, list) in sides.iter().enumerate() {
            let offset = offsets[k];
            let d = SIDES[k];
            let indices: Vec<usize> = list.iter().map(|&(_, j)| j).collect();
            if indices != (0..n).collect::<Vec<_>>() {
                return Err(EncodingError::Parse {
                    offset,
                    message: format!("tile {i} side {d} must list every tile once in order"),
                });
            }
            let bound: Vec<usize> = list.iter().filter(|(m, _)| *m != b'n').map(|&(_, j)| j).collect();
            let finals: Vec<usize> = list.iter().filter(|(m, _)| *m == b'f').map(|&(_, j)| j).collect();
            if bound.last().copied() != finals.first().copied() || finals.len() > 1 {
                return Err(EncodingError::Parse {
                    offset,
                    message: format!("tile {i} side {d} must mark exactly its last binder with `f`"),
                });
            }
            for j in bound {
                r.insert(i, d, j)?;
            }
        }
    }
    Ok(r)
}
