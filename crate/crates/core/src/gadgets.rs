//! Three-dimensional temperature-1 read/write bit gadgets.
//!
//! A writer path grows east from the seed along row `y = 0`, passing one bit
//! site every four columns. At the site with centre column `b` it writes
//!
//! * `0` as a flat run through `(b, 0, 0)`;
//! * `1` by stepping north into `(b - 1, 1, 0)` (the blocking tile), over
//!   the reader row in plane `z = 1`, and back down to `(b + 1, 0, 0)`.
//!
//! After the last site the path turns north and becomes the reader, which
//! grows back west along row `y = 1`. At each site it branches at
//! `(b, 1, 0)`: west through `(b - 1, 1, 0)`, open only if no blocking tile
//! was written, or down through `(b, 0, 0)` and back along plane `z = 1`,
//! open only if the writer left that cell empty. Both branches meet at
//! `(b - 2, 1, 0)`, whose tile type records the bit. Every reader glue
//! carries the bits read so far, so the reader's last tile, at `(0, 1, 0)`,
//! is named `READ_` followed by the whole string.

use std::collections::HashMap;

use thiserror::Error;

use crate::assembly::Assembly;
use crate::explore::explore;
use crate::geometry::{Dim, Pos};
use crate::system::TileSystem;
use crate::tile::{Glue, TileType};

/// Longest bit string a gadget may carry unless configured otherwise.
pub const DEFAULT_MAX_BITS: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GadgetError {
    #[error("{len} bits exceed the gadget bound of {max}")]
    TooLong { len: usize, max: usize },
}

/// Centre column of bit site `k`.
pub fn site_column(k: usize) -> i32 {
    3 + 4 * k as i32
}

/// Name of the reader's final tile for `bits`.
pub fn read_tile_name(bits: &[bool]) -> String {
    if bits.is_empty() {
        "READ_ε".to_string()
    } else {
        format!("READ_{}", bit_string(bits))
    }
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Accumulates tile types, each side glue unique to one designed edge.
#[derive(Default)]
struct Builder {
    tiles: Vec<TileType>,
    index: HashMap<String, usize>,
}

impl Builder {
    fn tile(&mut self, name: &str) -> &mut TileType {
        let i = match self.index.get(name) {
            Some(&i) => i,
            None => {
                self.tiles.push(TileType::new(name, Dim::Three));
                self.index.insert(name.to_string(), self.tiles.len() - 1);
                self.tiles.len() - 1
            }
        };
        &mut self.tiles[i]
    }

    /// Lets tile `to` attach at `q` next to tile `from` at `p`.
    fn link(&mut self, from: &str, p: Pos, to: &str, q: Pos) {
        let d = p.direction_to(q).expect("linked cells are adjacent");
        let label = format!("{from}>{to}");
        self.tile(from).set_glue(d, Glue::new(label.clone(), 1));
        self.tile(to).set_glue(d.opposite(), Glue::new(label, 1));
    }

    /// Links consecutive cells of a path.
    fn path(&mut self, cells: &[(String, Pos)]) {
        for w in cells.windows(2) {
            self.link(&w[0].0, w[0].1, &w[1].0, w[1].1);
        }
    }
}

fn writer_cells(bits: &[bool]) -> Vec<(String, Pos)> {
    let mut cells = vec![("seed".to_string(), Pos::ORIGIN)];
    let mut push = |name: String, x: i32, y: i32, z: i32| cells.push((name, Pos::new(x, y, z)));
    for (k, &bit) in bits.iter().enumerate() {
        let b = site_column(k);
        push(format!("write{k}_a"), b - 2, 0, 0);
        push(format!("write{k}_b"), b - 1, 0, 0);
        if bit {
            push(format!("write{k}_block"), b - 1, 1, 0);
            push(format!("write{k}_rise"), b - 1, 2, 0);
            push(format!("write{k}_over"), b, 2, 0);
            push(format!("write{k}_up"), b, 2, 1);
            push(format!("write{k}_cross"), b + 1, 2, 1);
            push(format!("write{k}_bridge"), b + 1, 1, 1);
            push(format!("write{k}_land"), b + 1, 0, 1);
            push(format!("write{k}_down"), b + 1, 0, 0);
        } else {
            push(format!("write{k}_flat"), b, 0, 0);
            push(format!("write{k}_end"), b + 1, 0, 0);
        }
    }
    let end = 4 * bits.len() as i32 + 1;
    push("write_end".to_string(), end, 0, 0);
    cells
}

fn history_tag(h: &str) -> &str {
    if h.is_empty() {
        "e"
    } else {
        h
    }
}

/// All bit strings of length `n`, as `'0'`/`'1'` text.
fn histories(n: usize) -> Vec<String> {
    (0..1usize << n)
        .map(|v| (0..n).rev().map(|i| if v >> i & 1 == 1 { '1' } else { '0' }).collect())
        .collect()
}

fn add_reader(b: &mut Builder, n: usize) {
    let end = 4 * n as i32 + 1;
    let start = ("read_start".to_string(), Pos::new(end, 1, 0));
    b.link("write_end", Pos::new(end, 0, 0), &start.0, start.1);
    // (name, position) of the tile that hands each history to the next site
    let mut handoff: HashMap<String, (String, Pos)> = HashMap::from([(String::new(), start)]);
    for k in (0..n).rev() {
        let c = site_column(k);
        let mut next = HashMap::new();
        for h in histories(n - 1 - k) {
            let tag = history_tag(&h);
            let cell = |role: &str, x: i32, y: i32, z: i32| (format!("read{k}_{role}_{tag}"), Pos::new(x, y, z));
            let (from, at) = handoff[&h].clone();
            let entry = cell("entry", c + 1, 1, 0);
            let branch = cell("branch", c, 1, 0);
            b.path(&[(from, at), entry.clone(), branch.clone()]);
            let flat = cell("flat", c - 1, 1, 0);
            let zero = (format!("read{k}_got_0{h}"), Pos::new(c - 2, 1, 0));
            b.path(&[branch.clone(), flat, zero.clone()]);
            let one = (format!("read{k}_got_1{h}"), Pos::new(c - 2, 1, 0));
            b.path(&[
                branch,
                cell("dip", c, 0, 0),
                cell("lift", c, 0, 1),
                cell("back", c, 1, 1),
                cell("pass", c - 1, 1, 1),
                cell("drop", c - 2, 1, 1),
                one.clone(),
            ]);
            next.insert(format!("0{h}"), zero);
            next.insert(format!("1{h}"), one);
        }
        handoff = next;
    }
    let mut keys: Vec<&String> = handoff.keys().collect();
    keys.sort();
    for h in keys {
        let bits: Vec<bool> = h.chars().map(|c| c == '1').collect();
        let (from, at) = &handoff[h];
        b.link(from, *at, &read_tile_name(&bits), Pos::new(0, 1, 0));
    }
}

/// A gadget writing `bits` at temperature 1 and reading them back, with the
/// default length bound.
pub fn build_bit_string_gadget(bits: &[bool]) -> Result<TileSystem, GadgetError> {
    build_bit_string_gadget_bounded(bits, DEFAULT_MAX_BITS)
}

pub fn build_bit_string_gadget_bounded(bits: &[bool], max_bits: usize) -> Result<TileSystem, GadgetError> {
    if bits.len() > max_bits {
        return Err(GadgetError::TooLong { len: bits.len(), max: max_bits });
    }
    let mut b = Builder::default();
    let writer = writer_cells(bits);
    b.tile("seed");
    b.path(&writer);
    add_reader(&mut b, bits.len());
    Ok(TileSystem::with_single_seed(Dim::Three, 1, b.tiles, "seed").expect("gadget tiles are well formed"))
}

pub fn build_bit_gadget(bit: bool) -> TileSystem {
    build_bit_string_gadget(&[bit]).expect("one bit is within every bound")
}

/// Number of tiles in the gadget's terminal assembly for `bits`.
pub fn terminal_size(bits: &[bool]) -> usize {
    let ones = bits.iter().filter(|&&b| b).count();
    let writer = 1 + 4 * bits.len() + 6 * ones + 1;
    let reader = 1 + 4 * bits.len() + 4 * ones + 1;
    writer + reader
}

/// The gadget's terminal assemblies, found by exhaustive exploration.
pub fn gadget_terminals(system: &TileSystem, max_tiles: usize) -> Vec<Assembly> {
    explore(system, max_tiles, crate::explore::DEFAULT_NODE_BUDGET).terminals().cloned().collect()
}

/// The bits a terminal assembly reports, read off its `READ_` tile.
pub fn readback(system: &TileSystem, terminal: &Assembly) -> Option<String> {
    let name = system.name(terminal.get(Pos::new(0, 1, 0))?);
    name.strip_prefix("READ_").map(|s| if s == "ε" { String::new() } else { s.to_string() })
}

/// Written bits as text.
pub fn bits_text(bits: &[bool]) -> String {
    bit_string(bits)
}

/// Parses a `0`/`1` string.
pub fn parse_bits(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}
