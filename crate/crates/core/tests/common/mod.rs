//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use atam::{Assembly, AssemblySequence, Dim, Direction, Pos, TileSystem, TileType};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Strength with which `tile` placed at `p` would bond to `assembly`,
/// computed straight from the tile types' side glues.
pub fn oracle_strength(system: &TileSystem, assembly: &Assembly, p: Pos, tile: &TileType) -> u32 {
    let mut total = 0;
    for &d in system.dim().directions() {
        if let Some(u) = assembly.get(p + d.unit()) {
            let mine = tile.glue(d);
            let theirs = system.tile(u).glue(d.opposite());
            if mine.strength > 0 && mine.label == theirs.label && mine.strength == theirs.strength {
                total += mine.strength;
            }
        }
    }
    total
}

/// Independent sequence validity check.
pub fn oracle_valid(system: &TileSystem, seq: &AssemblySequence) -> bool {
    if &seq.seed != system.seed() {
        return false;
    }
    let mut a = seq.seed.clone();
    for &(p, t) in &seq.steps {
        if a.contains(p) || t.index() >= system.tiles().len() {
            return false;
        }
        if oracle_strength(system, &a, p, system.tile(t)) < system.temperature() {
            return false;
        }
        a.insert(p, t);
    }
    true
}

/// Every `(p, t)` that can attach, by scanning all tiles at all empty
/// neighbors.
pub fn oracle_frontier(system: &TileSystem, a: &Assembly) -> Vec<(Pos, atam::TileId)> {
    let mut out = Vec::new();
    let mut cells: Vec<Pos> = a
        .positions()
        .flat_map(|p| system.dim().directions().iter().map(move |d| p + d.unit()))
        .filter(|q| !a.contains(*q))
        .collect();
    cells.sort();
    cells.dedup();
    for p in cells {
        for t in system.tile_ids() {
            if oracle_strength(system, a, p, system.tile(t)) >= system.temperature() {
                out.push((p, t));
            }
        }
    }
    out
}

/// A random planar system with a single seed, at most `max_tiles` tile
/// types, glue labels from a small alphabet and temperature 1 or 2.
pub fn random_system(rng_seed: u64, max_tiles: usize) -> TileSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let tau = rng.gen_range(1..=2);
    let labels = ["a", "b", "c"];
    let count = rng.gen_range(2..=max_tiles);
    let mut tiles = Vec::new();
    for i in 0..count {
        let mut t = TileType::new(format!("t{i}"), Dim::Two);
        for &d in Dim::Two.directions() {
            if rng.gen_bool(0.6) {
                let label = labels[rng.gen_range(0..labels.len())];
                t = t.with(d, label, rng.gen_range(1..=tau));
            }
        }
        tiles.push(t);
    }
    // make sure the seed can grow
    tiles[0] = tiles[0].clone().with(Direction::E, "a", tau);
    TileSystem::with_single_seed(Dim::Two, tau, tiles, "t0").expect("random system is well formed")
}

/// All 2-partitions of a connected assembly of at most 12 tiles; returns the
/// lightest cut weight.
pub fn brute_force_min_cut(system: &TileSystem, a: &Assembly) -> Option<u32> {
    let cells: Vec<(Pos, atam::TileId)> = a.iter().collect();
    let n = cells.len();
    assert!(n <= 12);
    if n < 2 {
        return None;
    }
    let mut best = u32::MAX;
    for mask in 1u32..(1 << (n - 1)) {
        let mut w = 0;
        for i in 0..n {
            for j in i + 1..n {
                if (mask >> i & 1) != (mask >> j & 1) {
                    if let Some(d) = cells[i].0.direction_to(cells[j].0) {
                        let gi = system.tile(cells[i].1).glue(d);
                        let gj = system.tile(cells[j].1).glue(d.opposite());
                        if gi.strength > 0 && gi == gj {
                            w += gi.strength;
                        }
                    }
                }
            }
        }
        best = best.min(w);
    }
    Some(best)
}

/// What one randomized splice trial found.
#[derive(Debug, PartialEq, Eq)]
pub enum Trial {
    /// Preconditions did not hold (no separation, seed split, movies differ).
    Skipped,
    /// Movies matched; `sound` says whether both compositions were valid
    /// sequences with the declared results.
    Matched { sound: bool, trivial: bool },
}

fn straight_window(vertical: bool, at: i32, lo: i32, hi: i32) -> atam::Window {
    if vertical {
        atam::Window::vertical(at, lo..=hi, 0..=0)
    } else {
        atam::Window::horizontal(at, lo..=hi, 0..=0)
    }
}

fn splice_ok(
    system: &TileSystem,
    a: &AssemblySequence,
    w: &atam::Window,
    b: &AssemblySequence,
    w2: &atam::Window,
    off: Pos,
) -> Option<bool> {
    use atam::windows::{declared_splice_result, splice, MovieMatch};
    let gamma = splice(system, a, w, b, w2, off, MovieMatch::BondForming).ok()?;
    let declared = declared_splice_result(system, a, w, b, off).ok()?;
    Some(oracle_valid(system, &gamma) && atam::is_valid_sequence(system, &gamma).is_valid() && gamma.result() == declared)
}

/// Draws a system, two sequences, a straight window and an offset, and
/// splices both ways when the bond-forming submovies agree.
pub fn splice_trial(system: &TileSystem, trial_seed: u64) -> Trial {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
    let a = atam::random_sequence(system, rng.gen_range(2..=40), rng.gen());
    let self_pump = rng.gen_bool(0.5);
    let b = if self_pump { a.clone() } else { atam::random_sequence(system, rng.gen_range(2..=40), rng.gen()) };
    let vertical = rng.gen_bool(0.5);
    let along = |p: Pos| if vertical { p.x } else { p.y };
    let ab = a.result().bounds().expect("nonempty");
    let at = rng.gen_range(along(ab.min) - 1..=along(ab.max));
    let shift = if self_pump { rng.gen_range(-3..=3) } else { rng.gen_range(-1..=1) };
    let off = if vertical { Pos::xy(shift, 0) } else { Pos::xy(0, shift) };
    let beta_shifted = b.result().translate(-off);
    let bounds = ab.union(beta_shifted.bounds().expect("nonempty"));
    let (lo, hi) = if vertical { (bounds.min.y - 1, bounds.max.y + 1) } else { (bounds.min.x - 1, bounds.max.x + 1) };
    let w = straight_window(vertical, at, lo, hi);
    let w2 = w.translate(off);
    let Some(forward) = splice_ok(system, &a, &w, &b, &w2, off) else {
        return Trial::Skipped;
    };
    let backward = splice_ok(system, &b, &w2, &a, &w, -off);
    let trivial = self_pump && shift == 0;
    Trial::Matched { sound: forward && backward == Some(true), trivial }
}

/// Binary tile-set encoding computed directly from a membership predicate.
pub fn oracle_encode(n: usize, binds: impl Fn(usize, usize, usize) -> bool) -> String {
    let mut w = 1;
    while (1usize << w) < n {
        w += 1;
    }
    let bin = |x: usize, width: usize| {
        (0..width).rev().map(|k| if x >> k & 1 == 1 { '1' } else { '0' }).collect::<String>()
    };
    let mut out = String::from("B");
    for i in 0..n {
        out += &bin(i, w + 1);
        for (side, letter) in ['N', 'E', 'S', 'W'].into_iter().enumerate() {
            out.push(letter);
            let last = (0..n).filter(|&j| binds(i, side, j)).max();
            for j in 0..n {
                out.push(if !binds(i, side, j) { 'n' } else if Some(j) == last { 'f' } else { 'y' });
                out += &bin(j, w);
            }
        }
        out.push('D');
    }
    out.push('F');
    out
}
