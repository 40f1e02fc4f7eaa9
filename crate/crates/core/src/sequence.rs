//! Single-tile attachment, frontiers and assembly sequences.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::assembly::Assembly;
use crate::geometry::Pos;
use crate::system::TileSystem;
use crate::tile::TileId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AttachError {
    #[error("position {0} is occupied")]
    Occupied(Pos),
    #[error("position {0} is not adjacent to the assembly")]
    NotAdjacent(Pos),
}

/// Total strength of the glues `tile` would bond with if placed at `pos`.
pub fn attachment_strength(
    system: &TileSystem,
    assembly: &Assembly,
    pos: Pos,
    tile: TileId,
) -> Result<u32, AttachError> {
    if assembly.contains(pos) {
        return Err(AttachError::Occupied(pos));
    }
    let mut adjacent = false;
    let mut total = 0;
    for (d, q) in pos.neighbors(system.dim()) {
        if let Some(u) = assembly.get(q) {
            adjacent = true;
            total += system.bond(tile, d, u);
        }
    }
    if adjacent {
        Ok(total)
    } else {
        Err(AttachError::NotAdjacent(pos))
    }
}

/// Whether `tile` can stably attach at `pos`.
pub fn can_attach(system: &TileSystem, assembly: &Assembly, pos: Pos, tile: TileId) -> bool {
    matches!(attachment_strength(system, assembly, pos, tile), Ok(s) if s >= system.temperature())
}

/// All `(position, tile)` pairs that can stably attach, sorted.
pub fn frontier(system: &TileSystem, assembly: &Assembly) -> Vec<(Pos, TileId)> {
    let mut out = Vec::new();
    for p in assembly.empty_neighbors(system.dim()) {
        let mut candidates = BTreeSet::new();
        for (d, q) in p.neighbors(system.dim()) {
            if let Some(u) = assembly.get(q) {
                candidates.extend(system.binders(u, d).iter().copied());
            }
        }
        for t in candidates {
            if can_attach(system, assembly, p, t) {
                out.push((p, t));
            }
        }
    }
    out
}

/// Positions of the frontier, sorted and deduplicated.
pub fn frontier_positions(system: &TileSystem, assembly: &Assembly) -> Vec<Pos> {
    let mut ps: Vec<Pos> = frontier(system, assembly).into_iter().map(|(p, _)| p).collect();
    ps.dedup();
    ps
}

pub fn is_terminal(system: &TileSystem, assembly: &Assembly) -> bool {
    frontier(system, assembly).is_empty()
}

/// A seed followed by single-tile placements. Step 0 is the seed; step
/// `i > 0` is `steps[i - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AssemblySequence {
    pub seed: Assembly,
    pub steps: Vec<(Pos, TileId)>,
}

impl AssemblySequence {
    pub fn new(seed: Assembly) -> AssemblySequence {
        AssemblySequence { seed, steps: Vec::new() }
    }

    pub fn from_system(system: &TileSystem) -> AssemblySequence {
        AssemblySequence::new(system.seed().clone())
    }

    /// Number of assemblies in the sequence, counting the seed.
    pub fn len(&self) -> usize {
        self.steps.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn push(&mut self, pos: Pos, tile: TileId) {
        self.steps.push((pos, tile));
    }

    /// The assembly after the first `n` placements.
    pub fn prefix_result(&self, n: usize) -> Assembly {
        let mut a = self.seed.clone();
        for &(p, t) in &self.steps[..n.min(self.steps.len())] {
            a.insert(p, t);
        }
        a
    }

    pub fn result(&self) -> Assembly {
        self.prefix_result(self.steps.len())
    }

    pub fn translate(&self, by: Pos) -> AssemblySequence {
        AssemblySequence {
            seed: self.seed.translate(by),
            steps: self.steps.iter().map(|&(p, t)| (p + by, t)).collect(),
        }
    }

    /// Every placement in order, seed tiles first (sorted by position).
    pub fn placements(&self) -> impl Iterator<Item = (Pos, TileId)> + '_ {
        self.seed.iter().chain(self.steps.iter().copied())
    }
}

/// Outcome of checking a sequence against a system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Validity {
    /// Index of the first offending step (0 = seed), if any.
    pub first_violation: Option<usize>,
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Checks that the sequence starts at the system's seed and that every step
/// attaches stably at an empty location.
pub fn is_valid_sequence(system: &TileSystem, seq: &AssemblySequence) -> Validity {
    if &seq.seed != system.seed() {
        return Validity { first_violation: Some(0) };
    }
    let mut a = seq.seed.clone();
    for (i, &(p, t)) in seq.steps.iter().enumerate() {
        if t.index() >= system.tiles().len() || !can_attach(system, &a, p, t) {
            return Validity { first_violation: Some(i + 1) };
        }
        a.insert(p, t);
    }
    Validity { first_violation: None }
}

/// Tries to grow `from` into `to` one tile at a time. Attachment strength
/// only increases as tiles are added, so a greedy order succeeds whenever any
/// order does. Returns the placements in the order used.
pub fn reach(system: &TileSystem, from: &Assembly, to: &Assembly) -> Option<Vec<(Pos, TileId)>> {
    if !from.is_subassembly_of(to) {
        return None;
    }
    let mut current = from.clone();
    let mut pending: Vec<(Pos, TileId)> = to.iter().filter(|&(p, _)| !from.contains(p)).collect();
    let mut order = Vec::with_capacity(pending.len());
    while !pending.is_empty() {
        let before = pending.len();
        pending.retain(|&(p, t)| {
            if can_attach(system, &current, p, t) {
                current.insert(p, t);
                order.push((p, t));
                false
            } else {
                true
            }
        });
        if pending.len() == before {
            return None;
        }
    }
    Some(order)
}

/// A witness sequence if `assembly` is producible.
pub fn producing_sequence(system: &TileSystem, assembly: &Assembly) -> Option<AssemblySequence> {
    let steps = reach(system, system.seed(), assembly)?;
    Some(AssemblySequence { seed: system.seed().clone(), steps })
}

pub fn is_producible(system: &TileSystem, assembly: &Assembly) -> bool {
    reach(system, system.seed(), assembly).is_some()
}

/// `α →^T β`: β is reachable from α by zero or more attachments.
pub fn reaches(system: &TileSystem, alpha: &Assembly, beta: &Assembly) -> bool {
    reach(system, alpha, beta).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Dim, Direction};
    use crate::tile::TileType;

    fn line() -> TileSystem {
        TileSystem::with_single_seed(
            Dim::Two,
            1,
            vec![
                TileType::new("seed", Dim::Two).with(Direction::E, "a", 1),
                TileType::new("rep", Dim::Two).with(Direction::W, "a", 1).with(Direction::E, "a", 1),
            ],
            "seed",
        )
        .unwrap()
    }

    #[test]
    fn attachment_strength_errors() {
        let s = line();
        let seed = s.seed().clone();
        assert_eq!(
            attachment_strength(&s, &seed, Pos::ORIGIN, TileId(1)),
            Err(AttachError::Occupied(Pos::ORIGIN))
        );
        assert_eq!(
            attachment_strength(&s, &seed, Pos::xy(5, 5), TileId(1)),
            Err(AttachError::NotAdjacent(Pos::xy(5, 5)))
        );
        assert_eq!(attachment_strength(&s, &seed, Pos::xy(1, 0), TileId(1)), Ok(1));
        assert_eq!(attachment_strength(&s, &seed, Pos::xy(0, 1), TileId(1)), Ok(0));
    }

    #[test]
    fn line_frontier_is_one_position() {
        let s = line();
        assert_eq!(frontier(&s, s.seed()), vec![(Pos::xy(1, 0), TileId(1))]);
    }

    #[test]
    fn validity_reports_first_bad_step() {
        let s = line();
        let mut seq = AssemblySequence::from_system(&s);
        assert!(is_valid_sequence(&s, &seq).is_valid());
        seq.push(Pos::xy(1, 0), TileId(1));
        seq.push(Pos::xy(1, 0), TileId(1));
        assert_eq!(is_valid_sequence(&s, &seq).first_violation, Some(2));
    }

    #[test]
    fn greedy_producibility() {
        let s = line();
        let good: Assembly = (0..4).map(|x| (Pos::xy(x, 0), TileId(u32::from(x > 0)))).collect();
        assert!(is_producible(&s, &good));
        let gap = good.filter(|p, _| p.x != 2);
        assert!(!is_producible(&s, &gap));
        let seq = producing_sequence(&s, &good).unwrap();
        assert!(is_valid_sequence(&s, &seq).is_valid());
        assert_eq!(seq.result(), good);
    }
}
