//! Tile assembly systems: tile set, seed and temperature.

use std::collections::HashMap;

use thiserror::Error;

use crate::assembly::Assembly;
use crate::geometry::{Dim, Direction, Pos};
use crate::tile::{Glue, TileId, TileType};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SystemError {
    #[error("temperature must be positive")]
    ZeroTemperature,
    #[error("tile set is empty")]
    NoTiles,
    #[error("duplicate tile name `{0}`")]
    DuplicateName(String),
    #[error("tile `{name}` is {found} but the system is {expected}")]
    DimensionMismatch { name: String, expected: Dim, found: Dim },
    #[error("unknown tile `{0}`")]
    UnknownTile(String),
    #[error("seed is empty")]
    EmptySeed,
    #[error("seed position {0} is outside the system's dimension")]
    SeedOffPlane(Pos),
    #[error("seed places two tiles at {0}")]
    SeedOverlap(Pos),
    #[error("seed is not connected")]
    SeedDisconnected,
    #[error("seed is not stable at temperature {0}")]
    SeedUnstable(u32),
}

/// A tile assembly system `(T, σ, τ)`.
///
/// Glue strengths above the temperature are clipped to it on construction.
#[derive(Clone, Debug)]
pub struct TileSystem {
    dim: Dim,
    temperature: u32,
    tiles: Vec<TileType>,
    seed: Assembly,
    names: HashMap<String, TileId>,
    // Interned positive-strength glue per (tile, side); 0 means non-binding.
    keys: Vec<[u32; 6]>,
    by_side: HashMap<(Direction, u32), Vec<TileId>>,
}

impl TileSystem {
    pub fn new(
        dim: Dim,
        temperature: u32,
        tiles: Vec<TileType>,
        seed: Vec<(Pos, TileId)>,
    ) -> Result<TileSystem, SystemError> {
        if temperature == 0 {
            return Err(SystemError::ZeroTemperature);
        }
        if tiles.is_empty() {
            return Err(SystemError::NoTiles);
        }
        let mut names = HashMap::new();
        let mut tiles = tiles;
        for (i, t) in tiles.iter_mut().enumerate() {
            if t.dim() != dim {
                return Err(SystemError::DimensionMismatch {
                    name: t.name.clone(),
                    expected: dim,
                    found: t.dim(),
                });
            }
            if names.insert(t.name.clone(), TileId(i as u32)).is_some() {
                return Err(SystemError::DuplicateName(t.name.clone()));
            }
            t.clip_strengths(temperature);
        }

        let mut interned: HashMap<Glue, u32> = HashMap::new();
        let mut keys = vec![[0u32; 6]; tiles.len()];
        let mut by_side: HashMap<(Direction, u32), Vec<TileId>> = HashMap::new();
        for (i, t) in tiles.iter().enumerate() {
            for (d, g) in t.sides() {
                if g.strength == 0 {
                    continue;
                }
                let next = interned.len() as u32 + 1;
                let k = *interned.entry(g.clone()).or_insert(next);
                keys[i][d.index()] = k;
                by_side.entry((d, k)).or_default().push(TileId(i as u32));
            }
        }

        let mut seed_asm = Assembly::new();
        for (p, t) in seed {
            if t.index() >= tiles.len() {
                return Err(SystemError::UnknownTile(t.to_string()));
            }
            if dim == Dim::Two && p.z != 0 {
                return Err(SystemError::SeedOffPlane(p));
            }
            if seed_asm.insert(p, t).is_some() {
                return Err(SystemError::SeedOverlap(p));
            }
        }
        if seed_asm.is_empty() {
            return Err(SystemError::EmptySeed);
        }
        if !seed_asm.is_connected(dim) {
            return Err(SystemError::SeedDisconnected);
        }
        let sys = TileSystem {
            dim,
            temperature,
            tiles,
            seed: seed_asm,
            names,
            keys,
            by_side,
        };
        if !sys.seed.is_stable(&sys) {
            return Err(SystemError::SeedUnstable(temperature));
        }
        Ok(sys)
    }

    /// Convenience constructor with a single seed tile at the origin.
    pub fn with_single_seed(
        dim: Dim,
        temperature: u32,
        tiles: Vec<TileType>,
        seed_name: &str,
    ) -> Result<TileSystem, SystemError> {
        let id = tiles
            .iter()
            .position(|t| t.name == seed_name)
            .ok_or_else(|| SystemError::UnknownTile(seed_name.to_string()))?;
        TileSystem::new(dim, temperature, tiles, vec![(Pos::ORIGIN, TileId(id as u32))])
    }

    /// Same tile set and seed at a different temperature.
    pub fn with_temperature(&self, temperature: u32) -> Result<TileSystem, SystemError> {
        TileSystem::new(self.dim, temperature, self.tiles.clone(), self.seed.iter().collect())
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn temperature(&self) -> u32 {
        self.temperature
    }

    pub fn tiles(&self) -> &[TileType] {
        &self.tiles
    }

    pub fn tile_ids(&self) -> impl Iterator<Item = TileId> {
        (0..self.tiles.len() as u32).map(TileId)
    }

    pub fn seed(&self) -> &Assembly {
        &self.seed
    }

    pub fn tile(&self, id: TileId) -> &TileType {
        &self.tiles[id.index()]
    }

    pub fn name(&self, id: TileId) -> &str {
        &self.tiles[id.index()].name
    }

    pub fn id(&self, name: &str) -> Option<TileId> {
        self.names.get(name).copied()
    }

    pub fn glue(&self, id: TileId, dir: Direction) -> &Glue {
        self.tiles[id.index()].glue(dir)
    }

    /// Bond strength between tile `a` and tile `b` placed one step in
    /// direction `dir` from `a`.
    pub fn bond(&self, a: TileId, dir: Direction, b: TileId) -> u32 {
        let ka = self.keys[a.index()][dir.index()];
        if ka != 0 && ka == self.keys[b.index()][dir.opposite().index()] {
            self.glue(a, dir).strength
        } else {
            0
        }
    }

    /// Tiles whose `dir` side can bond with the positive-strength glue on
    /// side `dir.opposite()` of `neighbor`.
    pub(crate) fn binders(&self, neighbor: TileId, dir: Direction) -> &[TileId] {
        let k = self.keys[neighbor.index()][dir.opposite().index()];
        if k == 0 {
            return &[];
        }
        self.by_side.get(&(dir, k)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Number of distinct positive-strength glues.
    pub fn glue_count(&self) -> usize {
        let mut seen: Vec<&Glue> = self
            .tiles
            .iter()
            .flat_map(|t| t.sides().map(|(_, g)| g))
            .filter(|g| g.strength > 0)
            .collect();
        seen.sort();
        seen.dedup();
        seen.len()
    }
}
