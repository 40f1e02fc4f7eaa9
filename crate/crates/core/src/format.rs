//! JSON interchange for systems, assemblies, sequences, windows and block
//! representations.
//!
//! Positions are coordinate arrays (`[x, y]` in 2D, `[x, y, z]` in 3D) and
//! tiles are referenced by name.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembly::Assembly;
use crate::explore::{Exploration, Truncation};
use crate::geometry::{Dim, Direction, Pos};
use crate::sequence::AssemblySequence;
use crate::simulation::{BlockRepresentation, RepresentationError};
use crate::system::{SystemError, TileSystem};
use crate::tile::{Glue, TileId, TileType};
use crate::windows::{Edge, Window};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("unsupported dimension {0}")]
    Dimension(usize),
    #[error("bad direction `{0}`")]
    Direction(String),
    #[error("position {0:?} does not have {1} coordinates")]
    Position(Vec<i32>, usize),
    #[error("unknown tile `{0}`")]
    UnknownTile(String),
    #[error("window edge between non-adjacent points {0} and {1}")]
    Edge(Pos, Pos),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Representation(#[from] RepresentationError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> FormatError {
        FormatError::Json { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileRecord {
    pub name: String,
    #[serde(default)]
    pub glues: BTreeMap<String, (String, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub step: Option<usize>,
    pub pos: Vec<i32>,
    pub tile: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemRecord {
    pub dimension: usize,
    pub temperature: u32,
    pub tiles: Vec<TileRecord>,
    pub seed: Vec<Placement>,
}

fn dim_of(d: usize) -> Result<Dim, FormatError> {
    Dim::from_usize(d).ok_or(FormatError::Dimension(d))
}

fn pos_of(coords: &[i32], dim: Dim) -> Result<Pos, FormatError> {
    if coords.len() != dim.as_usize() {
        return Err(FormatError::Position(coords.to_vec(), dim.as_usize()));
    }
    Pos::from_coords(coords).ok_or_else(|| FormatError::Position(coords.to_vec(), dim.as_usize()))
}

fn placement(system: &TileSystem, step: Option<usize>, p: Pos, t: TileId) -> Placement {
    Placement { step, pos: p.coords(system.dim()), tile: system.name(t).to_string() }
}

fn resolve(system: &TileSystem, rec: &Placement) -> Result<(Pos, TileId), FormatError> {
    let t = system.id(&rec.tile).ok_or_else(|| FormatError::UnknownTile(rec.tile.clone()))?;
    Ok((pos_of(&rec.pos, system.dim())?, t))
}

impl SystemRecord {
    pub fn of(system: &TileSystem) -> SystemRecord {
        let tiles = system
            .tiles()
            .iter()
            .map(|t| TileRecord {
                name: t.name.clone(),
                glues: t
                    .sides()
                    .filter(|(_, g)| !g.is_null())
                    .map(|(d, g)| (d.letter().to_string(), (g.label.clone(), g.strength)))
                    .collect(),
            })
            .collect();
        SystemRecord {
            dimension: system.dim().as_usize(),
            temperature: system.temperature(),
            tiles,
            seed: system.seed().iter().map(|(p, t)| placement(system, None, p, t)).collect(),
        }
    }

    pub fn build(&self) -> Result<TileSystem, FormatError> {
        let dim = dim_of(self.dimension)?;
        let mut tiles = Vec::with_capacity(self.tiles.len());
        let mut ids = BTreeMap::new();
        for (i, rec) in self.tiles.iter().enumerate() {
            let mut t = TileType::new(rec.name.clone(), dim);
            for (side, (label, strength)) in &rec.glues {
                let d = side
                    .chars()
                    .next()
                    .filter(|_| side.len() == 1)
                    .and_then(Direction::from_letter)
                    .filter(|d| dim.directions().contains(d))
                    .ok_or_else(|| FormatError::Direction(side.clone()))?;
                t.set_glue(d, Glue::new(label.clone(), *strength));
            }
            ids.entry(rec.name.clone()).or_insert(i);
            tiles.push(t);
        }
        let seed = self
            .seed
            .iter()
            .map(|p| {
                let t = ids.get(&p.tile).ok_or_else(|| FormatError::UnknownTile(p.tile.clone()))?;
                Ok((pos_of(&p.pos, dim)?, TileId(*t as u32)))
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(TileSystem::new(dim, self.temperature, tiles, seed)?)
    }
}

pub fn system_to_json(system: &TileSystem) -> String {
    serde_json::to_string_pretty(&SystemRecord::of(system)).expect("records serialize")
}

pub fn system_from_json(text: &str) -> Result<TileSystem, FormatError> {
    serde_json::from_str::<SystemRecord>(text)?.build()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssemblyRecord {
    pub tiles: Vec<Placement>,
}

impl AssemblyRecord {
    pub fn of(system: &TileSystem, a: &Assembly) -> AssemblyRecord {
        AssemblyRecord { tiles: a.iter().map(|(p, t)| placement(system, None, p, t)).collect() }
    }

    pub fn build(&self, system: &TileSystem) -> Result<Assembly, FormatError> {
        self.tiles.iter().map(|p| resolve(system, p)).collect()
    }
}

pub fn assembly_to_json(system: &TileSystem, a: &Assembly) -> String {
    serde_json::to_string_pretty(&AssemblyRecord::of(system, a)).expect("records serialize")
}

pub fn assembly_from_json(system: &TileSystem, text: &str) -> Result<Assembly, FormatError> {
    serde_json::from_str::<AssemblyRecord>(text)?.build(system)
}

/// Seed tiles, then one record per attachment with its step number
/// (the seed is step 0).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub seed: Vec<Placement>,
    pub steps: Vec<Placement>,
}

impl SequenceRecord {
    pub fn of(system: &TileSystem, seq: &AssemblySequence) -> SequenceRecord {
        SequenceRecord {
            seed: seq.seed.iter().map(|(p, t)| placement(system, None, p, t)).collect(),
            steps: seq
                .steps
                .iter()
                .enumerate()
                .map(|(i, &(p, t))| placement(system, Some(i + 1), p, t))
                .collect(),
        }
    }

    pub fn build(&self, system: &TileSystem) -> Result<AssemblySequence, FormatError> {
        let seed = self.seed.iter().map(|p| resolve(system, p)).collect::<Result<Assembly, _>>()?;
        let mut steps: Vec<&Placement> = self.steps.iter().collect();
        steps.sort_by_key(|p| p.step);
        let mut seq = AssemblySequence::new(seed);
        for p in steps {
            let (pos, t) = resolve(system, p)?;
            seq.push(pos, t);
        }
        Ok(seq)
    }
}

pub fn sequence_to_json(system: &TileSystem, seq: &AssemblySequence) -> String {
    serde_json::to_string_pretty(&SequenceRecord::of(system, seq)).expect("records serialize")
}

pub fn sequence_from_json(system: &TileSystem, text: &str) -> Result<AssemblySequence, FormatError> {
    serde_json::from_str::<SequenceRecord>(text)?.build(system)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExploredRecord {
    pub terminal: bool,
    pub tiles: Vec<Placement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplorationRecord {
    pub max_tiles: usize,
    pub complete_up_to: usize,
    pub truncated: bool,
    pub assemblies: Vec<ExploredRecord>,
}

impl ExplorationRecord {
    pub fn of(system: &TileSystem, e: &Exploration) -> ExplorationRecord {
        ExplorationRecord {
            max_tiles: e.max_tiles,
            complete_up_to: e.complete_up_to(),
            truncated: e.truncated.is_some(),
            assemblies: e
                .assemblies
                .iter()
                .map(|x| ExploredRecord { terminal: x.terminal, tiles: AssemblyRecord::of(system, &x.assembly).tiles })
                .collect(),
        }
    }

    pub fn assemblies(&self, system: &TileSystem) -> Result<Vec<Assembly>, FormatError> {
        self.assemblies
            .iter()
            .map(|x| AssemblyRecord { tiles: x.tiles.clone() }.build(system))
            .collect()
    }

    pub fn truncation(&self, budget: usize) -> Option<Truncation> {
        self.truncated.then_some(Truncation { budget, complete_up_to: self.complete_up_to })
    }
}

pub fn exploration_to_json(system: &TileSystem, e: &Exploration) -> String {
    serde_json::to_string_pretty(&ExplorationRecord::of(system, e)).expect("records serialize")
}

/// Windows are lists of `[p, q]` point pairs.
pub fn window_to_json(w: &Window, dim: Dim) -> String {
    let edges: Vec<[Vec<i32>; 2]> = w
        .edges()
        .map(|e| {
            let (a, b) = e.endpoints();
            [a.coords(dim), b.coords(dim)]
        })
        .collect();
    serde_json::to_string(&edges).expect("edges serialize")
}

pub fn window_from_json(text: &str, dim: Dim) -> Result<Window, FormatError> {
    let raw: Vec<[Vec<i32>; 2]> = serde_json::from_str(text)?;
    let edges = raw
        .iter()
        .map(|[a, b]| {
            let (a, b) = (pos_of(a, dim)?, pos_of(b, dim)?);
            Edge::new(a, b).ok_or(FormatError::Edge(a, b))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Window::new(edges))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub block: Vec<Placement>,
    pub tile: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationRecord {
    pub scale: u32,
    pub entries: Vec<EntryRecord>,
}

impl RepresentationRecord {
    pub fn of(rep: &BlockRepresentation, simulator: &TileSystem, simulated: &TileSystem) -> RepresentationRecord {
        RepresentationRecord {
            scale: rep.scale(),
            entries: rep
                .entries()
                .iter()
                .map(|(block, t)| EntryRecord {
                    block: block.iter().map(|(p, s)| placement(simulator, None, p, s)).collect(),
                    tile: simulated.name(*t).to_string(),
                })
                .collect(),
        }
    }

    pub fn build(&self, simulator: &TileSystem, simulated: &TileSystem) -> Result<BlockRepresentation, FormatError> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let block = e.block.iter().map(|p| resolve(simulator, p)).collect::<Result<Assembly, _>>()?;
                let t = simulated.id(&e.tile).ok_or_else(|| FormatError::UnknownTile(e.tile.clone()))?;
                Ok((block, t))
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(BlockRepresentation::new(self.scale, simulator.dim(), simulated.dim(), entries)?)
    }
}

pub fn representation_to_json(rep: &BlockRepresentation, simulator: &TileSystem, simulated: &TileSystem) -> String {
    serde_json::to_string_pretty(&RepresentationRecord::of(rep, simulator, simulated)).expect("records serialize")
}

pub fn representation_from_json(
    text: &str,
    simulator: &TileSystem,
    simulated: &TileSystem,
) -> Result<BlockRepresentation, FormatError> {
    serde_json::from_str::<RepresentationRecord>(text)?.build(simulator, simulated)
}
