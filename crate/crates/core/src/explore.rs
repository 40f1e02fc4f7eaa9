//! Bounded exhaustive exploration and random sampling of producible assemblies.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::assembly::Assembly;
use crate::sequence::{frontier, AssemblySequence};
use crate::system::TileSystem;

/// Node budget used when the caller does not pick one.
pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

/// Fixed seed for reproducible sampling when none is given.
pub const DEFAULT_RNG_SEED: u64 = 0x5EED_71E5;

#[derive(Clone, Debug)]
pub struct Explored {
    pub assembly: Assembly,
    /// No tile can attach anywhere.
    pub terminal: bool,
}

/// Why an exploration stopped short of its size bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub budget: usize,
    /// Every producible assembly with at most this many tiles was reported.
    pub complete_up_to: usize,
}

#[derive(Clone, Debug)]
pub struct Exploration {
    pub max_tiles: usize,
    /// Sorted by size, then by placement.
    pub assemblies: Vec<Explored>,
    pub truncated: Option<Truncation>,
    index: HashMap<Assembly, usize>,
    successors: Vec<Vec<usize>>,
}

impl Exploration {
    pub fn get(&self, a: &Assembly) -> Option<&Explored> {
        self.index.get(a).map(|&i| &self.assemblies[i])
    }

    pub fn index_of(&self, a: &Assembly) -> Option<usize> {
        self.index.get(a).copied()
    }

    /// Indices of the explored one-tile extensions of assembly `i`.
    pub fn successors(&self, i: usize) -> &[usize] {
        &self.successors[i]
    }

    pub fn contains(&self, a: &Assembly) -> bool {
        self.index.contains_key(a)
    }

    pub fn terminals(&self) -> impl Iterator<Item = &Assembly> {
        self.assemblies.iter().filter(|e| e.terminal).map(|e| &e.assembly)
    }

    /// Largest size up to which the result is exhaustive.
    pub fn complete_up_to(&self) -> usize {
        self.truncated.map_or(self.max_tiles, |t| t.complete_up_to)
    }

    pub fn is_complete(&self) -> bool {
        self.truncated.is_none()
    }

    pub fn len(&self) -> usize {
        self.assemblies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assemblies.is_empty()
    }
}

/// Every producible assembly with at most `max_tiles` tiles, level by level.
/// Stops with a [`Truncation`] instead of exceeding `budget` stored nodes.
pub fn explore(system: &TileSystem, max_tiles: usize, budget: usize) -> Exploration {
    let mut assemblies = Vec::new();
    let mut extensions: Vec<Vec<Assembly>> = Vec::new();
    let mut truncated = None;
    let mut level: Vec<Assembly> = if system.seed().len() <= max_tiles {
        vec![system.seed().clone()]
    } else {
        Vec::new()
    };
    while !level.is_empty() {
        let size = level[0].len();
        if assemblies.len() + level.len() > budget {
            truncated = Some(Truncation { budget, complete_up_to: size - 1 });
            break;
        }
        let grow = size < max_tiles;
        let expanded: Vec<(bool, Vec<Assembly>)> = level
            .par_iter()
            .map(|a| {
                let f = frontier(system, a);
                let next = if grow {
                    f.iter().map(|&(p, t)| a.with(p, t)).collect()
                } else {
                    Vec::new()
                };
                (f.is_empty(), next)
            })
            .collect();
        let mut next = BTreeSet::new();
        for (a, (terminal, ext)) in level.into_iter().zip(expanded) {
            assemblies.push(Explored { assembly: a, terminal });
            next.extend(ext.iter().cloned());
            extensions.push(ext);
        }
        level = next.into_iter().collect();
    }
    let index: HashMap<Assembly, usize> = assemblies
        .iter()
        .enumerate()
        .map(|(i, e)| (e.assembly.clone(), i))
        .collect();
    let successors = extensions
        .into_iter()
        .map(|ext| {
            let mut s: Vec<usize> = ext.iter().filter_map(|a| index.get(a).copied()).collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    Exploration { max_tiles, assemblies, truncated, index, successors }
}

/// A sequence built by repeatedly attaching a uniformly chosen frontier pair
/// until the assembly is terminal or has `max_tiles` tiles.
pub fn random_sequence(system: &TileSystem, max_tiles: usize, rng_seed: u64) -> AssemblySequence {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut seq = AssemblySequence::from_system(system);
    let mut current = system.seed().clone();
    while current.len() < max_tiles {
        let f = frontier(system, &current);
        if f.is_empty() {
            break;
        }
        let (p, t) = f[rng.gen_range(0..f.len())];
        current.insert(p, t);
        seq.push(p, t);
    }
    seq
}

/// Every assembly sequence that runs until its result is terminal or has
/// `max_tiles` tiles. Returns `None` if there are more than `budget`.
pub fn enumerate_sequences(
    system: &TileSystem,
    max_tiles: usize,
    budget: usize,
) -> Option<Vec<AssemblySequence>> {
    fn go(
        system: &TileSystem,
        max_tiles: usize,
        budget: usize,
        current: &mut Assembly,
        seq: &mut AssemblySequence,
        out: &mut Vec<AssemblySequence>,
    ) -> bool {
        let f = if current.len() < max_tiles { frontier(system, current) } else { Vec::new() };
        if f.is_empty() {
            if out.len() >= budget {
                return false;
            }
            out.push(seq.clone());
            return true;
        }
        for (p, t) in f {
            current.insert(p, t);
            seq.push(p, t);
            let ok = go(system, max_tiles, budget, current, seq, out);
            seq.steps.pop();
            current.remove(p);
            if !ok {
                return false;
            }
        }
        true
    }
    let mut out = Vec::new();
    let mut current = system.seed().clone();
    let mut seq = AssemblySequence::from_system(system);
    go(system, max_tiles, budget, &mut current, &mut seq, &mut out).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Dim, Direction, Pos};
    use crate::sequence::is_valid_sequence;
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
    fn lonely_seed_is_terminal() {
        let s = TileSystem::with_single_seed(Dim::Two, 1, vec![TileType::new("s", Dim::Two)], "s").unwrap();
        let e = explore(&s, 5, 100);
        assert_eq!(e.len(), 1);
        assert!(e.assemblies[0].terminal);
    }

    #[test]
    fn line_lengths_one_to_four() {
        let e = explore(&line(), 4, 100);
        assert_eq!(e.successors(0), &[1]);
        assert!(e.successors(3).is_empty());
        let sizes: Vec<usize> = e.assemblies.iter().map(|x| x.assembly.len()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 4]);
        assert!(e.assemblies.iter().all(|x| !x.terminal));
        assert!(e.is_complete());
    }

    #[test]
    fn budget_truncation_is_reported() {
        let e = explore(&line(), 10, 3);
        assert_eq!(e.truncated, Some(Truncation { budget: 3, complete_up_to: 3 }));
        assert_eq!(e.len(), 3);
    }

    #[test]
    fn random_sequences_are_reproducible_and_valid() {
        let s = line();
        let a = random_sequence(&s, 6, 9);
        assert_eq!(a, random_sequence(&s, 6, 9));
        assert!(is_valid_sequence(&s, &a).is_valid());
        assert_eq!(a.result().len(), 6);
        assert_eq!(a.steps.last().unwrap().0, Pos::xy(5, 0));
    }

    #[test]
    fn sequence_enumeration_respects_budget() {
        let s = line();
        assert_eq!(enumerate_sequences(&s, 4, 10).unwrap().len(), 1);
        assert!(enumerate_sequences(&s, 4, 0).is_none());
    }
}
