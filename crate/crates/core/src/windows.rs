//! Windows, window movies and sequence splicing.
//!
//! A [`Window`] is a finite set of lattice edges. Applied to an assembly it
//! must separate the seed from the rest of the assembly's bounding box (grown
//! by one cell). A [`WindowMovie`] records, in placement order, every glue a
//! tile exposes across a window edge. Two sequences whose movies agree along
//! translated windows can be spliced into a new valid sequence.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::assembly::Assembly;
use crate::geometry::{Bounds, Dim, Pos};
use crate::sequence::AssemblySequence;
use crate::system::TileSystem;
use crate::tile::{Glue, TileId};

/// An undirected lattice edge, stored with its smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge(Pos, Pos);

impl Edge {
    /// `None` unless the points are adjacent.
    pub fn new(a: Pos, b: Pos) -> Option<Edge> {
        if !a.is_adjacent(b) {
            return None;
        }
        Some(if a < b { Edge(a, b) } else { Edge(b, a) })
    }

    pub fn endpoints(self) -> (Pos, Pos) {
        (self.0, self.1)
    }

    pub fn translate(self, by: Pos) -> Edge {
        Edge(self.0 + by, self.1 + by)
    }

    /// The endpoint that is not `p`.
    pub fn other(self, p: Pos) -> Pos {
        if p == self.0 {
            self.1
        } else {
            self.0
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Window {
    edges: BTreeSet<Edge>,
}

impl Window {
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Window {
        Window { edges: edges.into_iter().collect() }
    }

    /// Edges between `(x, y, z)` and `(x + 1, y, z)` for the given ranges.
    pub fn vertical(x: i32, ys: std::ops::RangeInclusive<i32>, zs: std::ops::RangeInclusive<i32>) -> Window {
        let mut edges = BTreeSet::new();
        for y in ys {
            for z in zs.clone() {
                edges.insert(Edge(Pos::new(x, y, z), Pos::new(x + 1, y, z)));
            }
        }
        Window { edges }
    }

    /// Edges between `(x, y, z)` and `(x, y + 1, z)` for the given ranges.
    pub fn horizontal(y: i32, xs: std::ops::RangeInclusive<i32>, zs: std::ops::RangeInclusive<i32>) -> Window {
        let mut edges = BTreeSet::new();
        for x in xs {
            for z in zs.clone() {
                edges.insert(Edge(Pos::new(x, y, z), Pos::new(x, y + 1, z)));
            }
        }
        Window { edges }
    }

    /// Every edge leaving `region`.
    pub fn boundary_of(region: &HashSet<Pos>, dim: Dim) -> Window {
        let mut edges = BTreeSet::new();
        for &p in region {
            for (_, q) in p.neighbors(dim) {
                if !region.contains(&q) {
                    edges.insert(Edge::new(p, q).expect("neighbors are adjacent"));
                }
            }
        }
        Window { edges }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, a: Pos, b: Pos) -> bool {
        Edge::new(a, b).is_some_and(|e| self.edges.contains(&e))
    }

    pub fn translate(&self, by: Pos) -> Window {
        Window { edges: self.edges.iter().map(|e| e.translate(by)).collect() }
    }

    /// The vector `c` with `other == self + c`, if one exists.
    pub fn offset_to(&self, other: &Window) -> Option<Pos> {
        let (a, b) = (self.edges.iter().next()?, other.edges.iter().next()?);
        let c = b.0 - a.0;
        (self.len() == other.len() && &self.translate(c) == other).then_some(c)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WindowError {
    #[error("window does not separate the seed from the rest of the region around the assembly")]
    NotSeparating,
    #[error("window splits the seed: tile at {0} is on the far side")]
    SeedSplit(Pos),
    #[error("the second window is not the first translated by the offset")]
    NotATranslate,
    #[error("seed of the second sequence lies on the far side at {0}")]
    FarSeed(Pos),
    #[error("movies diverge at step {index}: {left} vs {right}")]
    MovieMismatch { index: usize, left: String, right: String },
    #[error("movie step at {0} lies on neither side of the window")]
    Unplaceable(Pos),
}

/// The side of a window each lattice point of a box falls on.
#[derive(Clone, Debug)]
pub struct Sides {
    bounds: Bounds,
    seed_side: HashSet<Pos>,
}

impl Sides {
    /// Flood fill from `seed` inside `bounds`, never crossing a window edge.
    pub fn compute(dim: Dim, bounds: Bounds, window: &Window, seed: &Assembly) -> Result<Sides, WindowError> {
        let start = seed.positions().next().ok_or(WindowError::NotSeparating)?;
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for (_, q) in p.neighbors(dim) {
                if bounds.contains(q) && !window.contains(p, q) && seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        if seen.len() == bounds.volume() {
            return Err(WindowError::NotSeparating);
        }
        if let Some(p) = seed.positions().find(|p| !seen.contains(p)) {
            return Err(WindowError::SeedSplit(p));
        }
        Ok(Sides { bounds, seed_side: seen })
    }

    pub fn is_seed_side(&self, p: Pos) -> bool {
        self.seed_side.contains(&p)
    }

    pub fn is_far_side(&self, p: Pos) -> bool {
        self.bounds.contains(p) && !self.seed_side.contains(&p)
    }
}

fn region(dim: Dim, assemblies: &[&Assembly]) -> Bounds {
    let b = assemblies
        .iter()
        .filter_map(|a| a.bounds())
        .reduce(Bounds::union)
        .unwrap_or(Bounds { min: Pos::ORIGIN, max: Pos::ORIGIN });
    b.expand(1, dim)
}

/// The two configurations a window cuts an assembly into.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub seed_side: Assembly,
    pub far_side: Assembly,
}

/// Splits `assembly` along `window`, with `system`'s seed on the seed side.
pub fn cut(system: &TileSystem, assembly: &Assembly, window: &Window) -> Result<Cut, WindowError> {
    let sides = Sides::compute(system.dim(), region(system.dim(), &[assembly]), window, system.seed())?;
    Ok(Cut {
        seed_side: assembly.filter(|p, _| sides.is_seed_side(p)),
        far_side: assembly.filter(|p, _| !sides.is_seed_side(p)),
    })
}

/// One glue appearing on a window edge, exposed by the tile at `from`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MovieStep {
    pub edge: Edge,
    pub from: Pos,
    pub glue: Glue,
}

impl std::fmt::Display for MovieStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} at {} toward {}", self.glue, self.from, self.edge.other(self.from))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WindowMovie {
    pub steps: Vec<MovieStep>,
}

impl WindowMovie {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn translate(&self, by: Pos) -> WindowMovie {
        WindowMovie {
            steps: self
                .steps
                .iter()
                .map(|s| MovieStep { edge: s.edge.translate(by), from: s.from + by, glue: s.glue.clone() })
                .collect(),
        }
    }

    /// Index of the first step where the two movies differ.
    pub fn first_divergence(&self, other: &WindowMovie) -> Option<usize> {
        let common = self.steps.iter().zip(&other.steps).position(|(a, b)| a != b);
        common.or_else(|| (self.len() != other.len()).then(|| self.len().min(other.len())))
    }
}

/// Glues exposed across `window` in placement order. Seed tiles come first
/// by position; a tile touching several window edges contributes its sides
/// contiguously in canonical direction order. Null glues are recorded too.
pub fn window_movie(system: &TileSystem, seq: &AssemblySequence, window: &Window) -> WindowMovie {
    let mut steps = Vec::new();
    for (p, t) in seq.placements() {
        for (d, q) in p.neighbors(system.dim()) {
            if let Some(edge) = Edge::new(p, q).filter(|e| window.edges.contains(e)) {
                steps.push(MovieStep { edge, from: p, glue: system.glue(t, d).clone() });
            }
        }
    }
    WindowMovie { steps }
}

/// Steps whose edge carries a positive-strength bond in `result`.
pub fn bond_forming_submovie(system: &TileSystem, movie: &WindowMovie, result: &Assembly) -> WindowMovie {
    let bonds = |s: &MovieStep| {
        let q = s.edge.other(s.from);
        match (result.get(s.from), result.get(q), s.from.direction_to(q)) {
            (Some(a), Some(b), Some(d)) => system.glue(a, d) == &s.glue && system.bond(a, d, b) > 0,
            _ => false,
        }
    };
    WindowMovie { steps: movie.steps.iter().filter(|s| bonds(s)).cloned().collect() }
}

fn submovie(system: &TileSystem, seq: &AssemblySequence, window: &Window) -> WindowMovie {
    bond_forming_submovie(system, &window_movie(system, seq, window), &seq.result())
}

/// Which movies must agree for a splice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MovieMatch {
    /// Full window movies must be equal. The merge itself is the same as
    /// under [`MovieMatch::BondForming`].
    Exact,
    /// Only the bond-forming submovies must be equal.
    #[default]
    BondForming,
}

/// Merges `seq_a`, on the seed side of `w`, with `seq_b` translated by
/// `-offset`, on the far side. `w_translated` must equal `w + offset`.
///
/// The result of the returned sequence is `α_L ∪ β'_R` where `β' = β - offset`.
/// Swapping the roles (`splice(b, w + offset, a, w, -offset)`) gives the
/// other composition.
pub fn splice(
    system: &TileSystem,
    seq_a: &AssemblySequence,
    w: &Window,
    seq_b: &AssemblySequence,
    w_translated: &Window,
    offset: Pos,
    mode: MovieMatch,
) -> Result<AssemblySequence, WindowError> {
    if &w.translate(offset) != w_translated {
        return Err(WindowError::NotATranslate);
    }
    let seq_b = seq_b.translate(-offset);
    let (alpha, beta) = (seq_a.result(), seq_b.result());
    let dim = system.dim();
    let sides = Sides::compute(dim, region(dim, &[&alpha, &beta]), w, &seq_a.seed)?;
    if let Some(p) = seq_b.seed.positions().find(|&p| !sides.is_seed_side(p)) {
        return Err(WindowError::FarSeed(p));
    }

    let (full_a, full_b) = (window_movie(system, seq_a, w), window_movie(system, &seq_b, w));
    let movie_a = bond_forming_submovie(system, &full_a, &alpha);
    let movie_b = bond_forming_submovie(system, &full_b, &beta);
    let (left, right) = match mode {
        MovieMatch::Exact => (&full_a, &full_b),
        MovieMatch::BondForming => (&movie_a, &movie_b),
    };
    if let Some(index) = left.first_divergence(right) {
        let show = |m: &WindowMovie| m.steps.get(index).map_or("end of movie".to_string(), |s| s.to_string());
        return Err(WindowError::MovieMismatch { index, left: show(left), right: show(right) });
    }

    let mut gamma = AssemblySequence::new(seq_a.seed.clone());
    let mut placed: HashSet<Pos> = seq_a.seed.positions().collect();
    let (mut i, mut j) = (0, 0);
    let seed_side = |p: Pos| sides.is_seed_side(p);
    let far_side = |p: Pos| sides.is_far_side(p);
    for step in &movie_a.steps {
        let pos = step.from;
        if placed.contains(&pos) {
            continue;
        }
        if seed_side(pos) {
            advance(&seq_a.steps, &mut i, seed_side, Some(pos), &mut gamma, &mut placed);
        } else if far_side(pos) {
            advance(&seq_b.steps, &mut j, far_side, Some(pos), &mut gamma, &mut placed);
        }
        if !placed.contains(&pos) {
            return Err(WindowError::Unplaceable(pos));
        }
    }
    advance(&seq_a.steps, &mut i, seed_side, None, &mut gamma, &mut placed);
    advance(&seq_b.steps, &mut j, far_side, None, &mut gamma, &mut placed);
    Ok(gamma)
}

/// Appends `steps[k..]` that satisfy `keep`, stopping after the step at `until`.
fn advance(
    steps: &[(Pos, TileId)],
    k: &mut usize,
    keep: impl Fn(Pos) -> bool,
    until: Option<Pos>,
    gamma: &mut AssemblySequence,
    placed: &mut HashSet<Pos>,
) {
    while *k < steps.len() {
        let (p, t) = steps[*k];
        *k += 1;
        if keep(p) {
            gamma.push(p, t);
            placed.insert(p);
        }
        if Some(p) == until {
            break;
        }
    }
}

/// The configuration `α_L ∪ β'_R` a successful splice must produce.
pub fn declared_splice_result(
    system: &TileSystem,
    seq_a: &AssemblySequence,
    w: &Window,
    seq_b: &AssemblySequence,
    offset: Pos,
) -> Result<Assembly, WindowError> {
    let seq_b = seq_b.translate(-offset);
    let (alpha, beta) = (seq_a.result(), seq_b.result());
    let dim = system.dim();
    let sides = Sides::compute(dim, region(dim, &[&alpha, &beta]), w, &seq_a.seed)?;
    let left = alpha.filter(|p, _| sides.is_seed_side(p));
    let right = beta.filter(|p, _| !sides.is_seed_side(p));
    Ok(left.union(&right).expect("sides are disjoint"))
}

/// First pair `(i, j)`, `i < j`, of windows that are translates of each other
/// and whose bond-forming submovies of `seq` agree up to that translation.
pub fn find_matching_window_pair(
    system: &TileSystem,
    seq: &AssemblySequence,
    windows: &[Window],
) -> Option<(usize, usize)> {
    let movies: Vec<WindowMovie> = windows.par_iter().map(|w| submovie(system, seq, w)).collect();
    let pairs: Vec<(usize, usize)> =
        (0..windows.len()).flat_map(|i| (i + 1..windows.len()).map(move |j| (i, j))).collect();
    pairs.into_par_iter().find_first(|&(i, j)| {
        windows[i]
            .offset_to(&windows[j])
            .is_some_and(|c| movies[i].translate(c) == movies[j])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Direction;
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

    fn line_seq(n: i32) -> AssemblySequence {
        let s = line();
        let mut seq = AssemblySequence::from_system(&s);
        for x in 1..n {
            seq.push(Pos::xy(x, 0), TileId(1));
        }
        seq
    }

    fn cut_after(x: i32) -> Window {
        Window::vertical(x, -3..=3, 0..=0)
    }

    #[test]
    fn line_cut_sizes() {
        let s = line();
        let c = cut(&s, &line_seq(5).result(), &cut_after(2)).unwrap();
        assert_eq!((c.seed_side.len(), c.far_side.len()), (3, 2));
    }

    #[test]
    fn incomplete_window_does_not_separate() {
        let s = line();
        let w = Window::vertical(2, 1..=3, 0..=0);
        assert_eq!(cut(&s, &line_seq(5).result(), &w), Err(WindowError::NotSeparating));
    }

    #[test]
    fn movie_of_line_cut() {
        let s = line();
        let m = window_movie(&s, &line_seq(3), &cut_after(1));
        let froms: Vec<Pos> = m.steps.iter().map(|s| s.from).collect();
        assert_eq!(froms, vec![Pos::xy(1, 0), Pos::xy(2, 0)]);
        assert_eq!(m.steps[0].glue, Glue::new("a", 1));
        assert_eq!(bond_forming_submovie(&s, &m, &line_seq(3).result()), m);
    }

    #[test]
    fn disjoint_window_has_empty_movie() {
        let s = line();
        assert!(window_movie(&s, &line_seq(3), &Window::vertical(10, 0..=0, 0..=0)).is_empty());
    }

    #[test]
    fn pump_down_and_up() {
        let s = line();
        let (a, b) = (line_seq(5), line_seq(3));
        let (w, w2) = (cut_after(2), cut_after(1));
        let offset = Pos::xy(-1, 0);
        let g = splice(&s, &a, &w, &b, &w2, offset, MovieMatch::BondForming).unwrap();
        assert!(is_valid_sequence(&s, &g).is_valid());
        assert_eq!(g.result(), line_seq(4).result());
        let h = splice(&s, &b, &w2, &a, &w, -offset, MovieMatch::BondForming).unwrap();
        assert!(is_valid_sequence(&s, &h).is_valid());
        assert_eq!(h.result(), line_seq(4).result());
    }

    #[test]
    fn self_splice_is_identity() {
        let s = line();
        let a = line_seq(4);
        let w = cut_after(1);
        let g = splice(&s, &a, &w, &a, &w, Pos::ORIGIN, MovieMatch::Exact).unwrap();
        assert_eq!(g, a);
    }

    #[test]
    fn wrong_offset_is_rejected() {
        let s = line();
        let a = line_seq(4);
        let err = splice(&s, &a, &cut_after(1), &a, &cut_after(1), Pos::xy(1, 0), MovieMatch::Exact);
        assert_eq!(err, Err(WindowError::NotATranslate));
    }

    #[test]
    fn offsets_between_windows() {
        assert_eq!(cut_after(1).offset_to(&cut_after(4)), Some(Pos::xy(3, 0)));
        assert_eq!(cut_after(1).offset_to(&Window::vertical(4, -3..=2, 0..=0)), None);
    }

    #[test]
    fn periodic_line_matches_first_pair() {
        let s = line();
        let ws: Vec<Window> = (1..5).map(cut_after).collect();
        assert_eq!(find_matching_window_pair(&s, &line_seq(7), &ws), Some((0, 1)));
    }
}
