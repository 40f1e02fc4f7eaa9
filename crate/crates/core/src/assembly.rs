//! Finite placements of tiles on the lattice.
//!
//! An [`Assembly`] is a partial map from lattice points to tile types. The
//! same type also holds configurations (possibly empty or disconnected
//! placements, such as the two sides of a window cut); `is_connected`
//! distinguishes the two.

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::geometry::{Bounds, Dim, Pos};
use crate::system::TileSystem;
use crate::tile::TileId;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assembly {
    tiles: BTreeMap<Pos, TileId>,
}

impl Assembly {
    pub fn new() -> Assembly {
        Assembly::default()
    }

    pub fn single(pos: Pos, tile: TileId) -> Assembly {
        let mut a = Assembly::new();
        a.tiles.insert(pos, tile);
        a
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn get(&self, p: Pos) -> Option<TileId> {
        self.tiles.get(&p).copied()
    }

    pub fn contains(&self, p: Pos) -> bool {
        self.tiles.contains_key(&p)
    }

    /// Places `tile` at `pos`, returning the previous occupant.
    pub fn insert(&mut self, pos: Pos, tile: TileId) -> Option<TileId> {
        self.tiles.insert(pos, tile)
    }

    pub fn remove(&mut self, pos: Pos) -> Option<TileId> {
        self.tiles.remove(&pos)
    }

    /// Placements sorted by position.
    pub fn iter(&self) -> impl Iterator<Item = (Pos, TileId)> + '_ {
        self.tiles.iter().map(|(&p, &t)| (p, t))
    }

    pub fn positions(&self) -> impl Iterator<Item = Pos> + '_ {
        self.tiles.keys().copied()
    }

    pub fn bounds(&self) -> Option<Bounds> {
        Bounds::of(self.positions())
    }

    pub fn with(&self, pos: Pos, tile: TileId) -> Assembly {
        let mut a = self.clone();
        a.insert(pos, tile);
        a
    }

    pub fn translate(&self, by: Pos) -> Assembly {
        self.iter().map(|(p, t)| (p + by, t)).collect()
    }

    /// Subassembly relation: domain inclusion with pointwise equality.
    pub fn is_subassembly_of(&self, other: &Assembly) -> bool {
        self.len() <= other.len() && self.iter().all(|(p, t)| other.get(p) == Some(t))
    }

    /// Union of two configurations. Returns `None` when they disagree on a
    /// shared position.
    pub fn union(&self, other: &Assembly) -> Option<Assembly> {
        let mut out = self.clone();
        for (p, t) in other.iter() {
            if let Some(prev) = out.insert(p, t) {
                if prev != t {
                    return None;
                }
            }
        }
        Some(out)
    }

    pub fn filter(&self, mut keep: impl FnMut(Pos, TileId) -> bool) -> Assembly {
        self.iter().filter(|&(p, t)| keep(p, t)).collect()
    }

    /// Empty lattice points adjacent to the domain.
    pub fn empty_neighbors(&self, dim: Dim) -> Vec<Pos> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for p in self.positions() {
            for (_, q) in p.neighbors(dim) {
                if !self.contains(q) && seen.insert(q) {
                    out.push(q);
                }
            }
        }
        out.sort();
        out
    }

    /// Nonempty and connected in the full grid graph.
    pub fn is_connected(&self, dim: Dim) -> bool {
        let Some(start) = self.positions().next() else {
            return false;
        };
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for (_, q) in p.neighbors(dim) {
                if self.contains(q) && seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        seen.len() == self.len()
    }

    /// Edges of the binding graph: adjacent pairs `(p, q)` with `p < q` whose
    /// abutting glues interact, with the bond strength.
    pub fn binding_edges(&self, system: &TileSystem) -> Vec<(Pos, Pos, u32)> {
        let mut out = Vec::new();
        for (p, t) in self.iter() {
            for &d in system.dim().directions() {
                let q = p.step(d);
                if q <= p {
                    continue;
                }
                if let Some(u) = self.get(q) {
                    let s = system.bond(t, d, u);
                    if s > 0 {
                        out.push((p, q, s));
                    }
                }
            }
        }
        out
    }

    /// Minimum weight of a cut of the binding graph (Stoer–Wagner). Returns
    /// `None` for assemblies with fewer than two tiles, which have no cut.
    pub fn min_cut_weight(&self, system: &TileSystem) -> Option<u64> {
        let n = self.len();
        if n < 2 {
            return None;
        }
        let index: BTreeMap<Pos, usize> = self.positions().enumerate().map(|(i, p)| (p, i)).collect();
        let mut w = vec![vec![0u64; n]; n];
        for (p, q, s) in self.binding_edges(system) {
            let (i, j) = (index[&p], index[&q]);
            w[i][j] += s as u64;
            w[j][i] += s as u64;
        }
        let mut active: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        while active.len() > 1 {
            let mut added = vec![false; n];
            let mut key = vec![0u64; n];
            let mut prev = active[0];
            let mut last = active[0];
            for step in 0..active.len() {
                let next = active
                    .iter()
                    .copied()
                    .filter(|&v| !added[v])
                    .max_by_key(|&v| (key[v], std::cmp::Reverse(v)))
                    .expect("active vertex");
                added[next] = true;
                if step == active.len() - 1 {
                    best = best.min(key[next]);
                    // merge `next` into `prev`
                    for &v in &active {
                        w[prev][v] += w[next][v];
                        w[v][prev] = w[prev][v];
                    }
                    w[prev][prev] = 0;
                    last = next;
                } else {
                    prev = next;
                    for &v in &active {
                        if !added[v] {
                            key[v] += w[next][v];
                        }
                    }
                }
            }
            active.retain(|&v| v != last);
        }
        Some(best)
    }

    /// Every cut of the binding graph has weight at least the temperature.
    pub fn is_stable(&self, system: &TileSystem) -> bool {
        match self.min_cut_weight(system) {
            None => !self.is_empty(),
            Some(w) => w >= system.temperature() as u64,
        }
    }
}

impl FromIterator<(Pos, TileId)> for Assembly {
    fn from_iter<I: IntoIterator<Item = (Pos, TileId)>>(iter: I) -> Assembly {
        Assembly { tiles: iter.into_iter().collect() }
    }
}
