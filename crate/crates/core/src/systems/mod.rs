//! Reference systems and simulation fixtures.

pub mod keystone;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use thiserror::Error;

use crate::assembly::Assembly;
use crate::encoding::BindingRelation;
use crate::geometry::{Dim, Direction, Pos};
use crate::simulation::{BlockRepresentation, SimBound};
use crate::system::TileSystem;
use crate::tile::{TileId, TileType};

pub use keystone::{keystone_system, keystone_terminal, keystone_tiles, KEYSTONE_TILES};

use Direction::{E, N, S, W};

fn planar(name: &str, sides: &[(Direction, &str, u32)]) -> TileType {
    sides
        .iter()
        .fold(TileType::new(name, Dim::Two), |t, &(d, g, s)| t.with(d, g, s))
}

fn build(temperature: u32, tiles: Vec<TileType>) -> TileSystem {
    TileSystem::with_single_seed(Dim::Two, temperature, tiles, "seed").expect("fixture is well formed")
}

/// Temperature 1: a seed and one repeating tile growing east forever.
pub fn line_system() -> TileSystem {
    build(1, vec![planar("seed", &[(E, "a", 1)]), planar("rep", &[(W, "a", 1), (E, "a", 1)])])
}

/// Temperature 1: the seed's east neighbor is either `A` (a dead end) or
/// `B`, which is followed by `C`. Two incomparable terminals.
pub fn branch_system() -> TileSystem {
    build(
        1,
        vec![
            planar("seed", &[(E, "x", 1)]),
            planar("A", &[(W, "x", 1)]),
            planar("B", &[(W, "x", 1), (E, "y", 1)]),
            planar("C", &[(W, "y", 1)]),
        ],
    )
}

/// A simulated system, a candidate simulator, a representation and bounds
/// large enough to settle every check.
#[derive(Clone, Debug)]
pub struct SimFixture {
    pub simulated: TileSystem,
    pub simulator: TileSystem,
    pub rep: BlockRepresentation,
    pub bound: SimBound,
}

fn named_entries(simulator: &TileSystem, simulated: &TileSystem, table: &[(&str, &str)]) -> Vec<(Assembly, TileId)> {
    table
        .iter()
        .map(|&(s, t)| {
            let s = simulator.id(s).expect("simulator tile");
            let t = simulated.id(t).expect("simulated tile");
            (Assembly::single(Pos::ORIGIN, s), t)
        })
        .collect()
}

/// The simulated system grows `seed, X` and then chooses `A` or `B`. The
/// simulator makes that choice already when placing `X`, through two
/// variants `XA` and `XB` that both represent `X`. Productions and dynamics
/// agree step by step, but no simulator assembly representing `seed X`
/// keeps both continuations open.
pub fn committing_simulator_fixture() -> SimFixture {
    let simulated = build(
        1,
        vec![
            planar("seed", &[(E, "x", 1)]),
            planar("X", &[(W, "x", 1), (E, "y", 1)]),
            planar("A", &[(W, "y", 1), (N, "a", 1)]),
            planar("B", &[(W, "y", 1), (S, "b", 1)]),
        ],
    );
    let simulator = build(
        1,
        vec![
            planar("seed", &[(E, "x", 1)]),
            planar("XA", &[(W, "x", 1), (E, "ya", 1)]),
            planar("XB", &[(W, "x", 1), (E, "yb", 1)]),
            planar("A", &[(W, "ya", 1), (N, "a", 1)]),
            planar("B", &[(W, "yb", 1), (S, "b", 1)]),
        ],
    );
    let entries = named_entries(
        &simulator,
        &simulated,
        &[("seed", "seed"), ("XA", "X"), ("XB", "X"), ("A", "A"), ("B", "B")],
    );
    let rep = BlockRepresentation::new(1, Dim::Two, Dim::Two, entries).expect("valid table");
    SimFixture { simulated, simulator, rep, bound: SimBound::new(4, 4) }
}

fn corner_tiles() -> Vec<TileType> {
    vec![
        planar("seed", &[(E, "a", 2), (N, "b", 2)]),
        planar("A", &[(W, "a", 2), (N, "c", 1)]),
        planar("B", &[(S, "b", 2), (E, "d", 1)]),
        planar("K", &[(S, "c", 1), (W, "d", 1)]),
    ]
}

/// At temperature 2 the corner tile `K` needs both `A` and `B`. The
/// simulator is the same tile set at temperature 1, where `K` attaches as
/// soon as one of them is present.
pub fn premature_simulator_fixture() -> SimFixture {
    let simulated = build(2, corner_tiles());
    let simulator = build(1, corner_tiles());
    let rep = BlockRepresentation::identity(&simulator, &simulated).expect("valid table");
    SimFixture { simulated, simulator, rep, bound: SimBound::new(4, 4) }
}

/// The simulated system is a lone seed. The simulator, at scale 2, grows a
/// path of unrepresented tiles from its seed that ends in the block
/// diagonally above-right of the seed block.
pub fn diagonal_fuzz_fixture() -> SimFixture {
    let simulated = build(1, vec![planar("seed", &[])]);
    let simulator = build(
        1,
        vec![
            planar("seed", &[(E, "f1", 1)]),
            planar("F1", &[(W, "f1", 1), (E, "f2", 1)]),
            planar("F2", &[(W, "f2", 1), (N, "f3", 1)]),
            planar("F3", &[(S, "f3", 1), (N, "f4", 1)]),
            planar("F4", &[(S, "f4", 1)]),
        ],
    );
    let entries = named_entries(&simulator, &simulated, &[("seed", "seed")]);
    let rep = BlockRepresentation::new(2, Dim::Two, Dim::Two, entries).expect("valid table");
    SimFixture { simulated, simulator, rep, bound: SimBound::new(1, 5) }
}

/// The identity representation of `system` by itself with every entry
/// redirected to the seed tile.
pub fn corrupted_identity(system: &TileSystem) -> BlockRepresentation {
    let seed = system.seed().iter().next().expect("nonempty seed").1;
    let entries = system.tile_ids().map(|t| (Assembly::single(Pos::ORIGIN, t), seed)).collect();
    BlockRepresentation::new(1, system.dim(), system.dim(), entries).expect("single-tile entries are valid")
}

/// Name of the simulator tile standing for link `k` of the chain carrying
/// glue `label` along `axis` (`'h'` or `'v'`).
fn link_name(axis: char, label: &str, k: u32) -> String {
    format!("link_{axis}_{label}_{k}")
}

fn link_label(axis: char, label: &str, k: u32) -> String {
    format!("{axis}:{label}|{k}")
}

/// Rescales a 2D system by `m`.
///
/// Each tile becomes a core tile at `m` times its position. Each glue `g`
/// becomes a chain of `m - 1` link tiles filling the gap between two cores
/// in the west (or south) block of the pair, with glues `g|1 .. g|m` along
/// the chain. Chains of strong glues grow from either end. A glue weaker
/// than the temperature is used cooperatively; its chain grows only from the
/// tile with a single weak side and binds the cooperating tile (the one with
/// several weak sides) with the original strength.
///
/// Returns the simulator and its representation table: a block stands for
/// the tile whose core sits at its origin.
pub fn scale_up(system: &TileSystem, m: u32) -> (TileSystem, BlockRepresentation) {
    assert!(m >= 1, "scale must be positive");
    assert_eq!(system.dim(), Dim::Two, "only planar systems are rescaled");
    let tau = system.temperature();
    let weak_sides = |t: &TileType| t.sides().filter(|(_, g)| !g.is_null() && g.strength < tau).count();
    let positive = |d: Direction| matches!(d, N | E);
    let axis = |d: Direction| if matches!(d, E | W) { 'h' } else { 'v' };

    // chain index at which each weak glue binds with its own strength
    let mut weak_index: BTreeMap<(char, String), u32> = BTreeMap::new();
    // every glue appearing on a positive side, with its strength
    let mut chains: BTreeMap<(char, String), u32> = BTreeMap::new();
    for t in system.tiles() {
        for (d, g) in t.sides().filter(|(_, g)| !g.is_null()) {
            if g.strength < tau && weak_sides(t) >= 2 {
                weak_index.insert((axis(d), g.label.clone()), if positive(d) { 1 } else { m });
            }
            if positive(d) {
                chains.insert((axis(d), g.label.clone()), g.strength);
            }
        }
    }
    let strength = |ax: char, label: &str, s: u32, k: u32| {
        if s >= tau || weak_index.get(&(ax, label.to_string())) == Some(&k) {
            s
        } else {
            tau
        }
    };

    let mut tiles = Vec::new();
    for t in system.tiles() {
        let mut core = TileType::new(t.name.clone(), Dim::Two);
        for (d, g) in t.sides().filter(|(_, g)| !g.is_null()) {
            let k = if positive(d) { 1 } else { m };
            let ax = axis(d);
            core = core.with(d, link_label(ax, &g.label, k), strength(ax, &g.label, g.strength, k));
        }
        tiles.push(core);
    }
    for ((ax, label), &s) in &chains {
        let (back, fwd) = if *ax == 'h' { (W, E) } else { (S, N) };
        for k in 1..m {
            tiles.push(
                TileType::new(link_name(*ax, label, k), Dim::Two)
                    .with(back, link_label(*ax, label, k), strength(*ax, label, s, k))
                    .with(fwd, link_label(*ax, label, k + 1), strength(*ax, label, s, k + 1)),
            );
        }
    }
    let seed = system
        .seed()
        .iter()
        .map(|(p, t)| (p.scale(m as i32), TileId(t.0)))
        .collect();
    let simulator = TileSystem::new(Dim::Two, tau, tiles, seed).expect("rescaled system is well formed");
    let entries = system
        .tile_ids()
        .map(|t| (Assembly::single(Pos::ORIGIN, simulator.id(system.name(t)).expect("core tile")), t))
        .collect();
    let rep = BlockRepresentation::new(m, Dim::Two, Dim::Two, entries).expect("core entries are disjoint");
    (simulator, rep)
}

/// The keystone system rescaled by `m`, with bounds under which every check
/// is decided: all simulated assemblies up to 14 tiles and all simulator
/// assemblies their minimal representatives need.
pub fn scaled_keystone_fixture(m: u32) -> SimFixture {
    let simulated = keystone_system();
    let (simulator, rep) = scale_up(&simulated, m);
    let t_bound = 14;
    let s_bound = t_bound * m as usize + 2;
    SimFixture { simulated, simulator, rep, bound: SimBound::new(t_bound, s_bound) }
}

/// The five-tile binding relation behind the golden example encoding.
pub fn five_tile_example_relation() -> BindingRelation {
    BindingRelation::from_rows(
        5,
        &[
            (0, N, &[1, 2, 4]),
            (1, N, &[1, 2, 4]),
            (1, E, &[4]),
            (1, S, &[0, 1]),
            (2, E, &[3]),
            (2, S, &[4]),
            (3, S, &[4]),
            (3, W, &[2]),
            (4, N, &[3]),
            (4, S, &[0, 1]),
            (4, W, &[1]),
        ],
    )
    .expect("indices in range")
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("scale must be at least 1")]
pub struct ZeroScale;

/// Horizontal arm length `((g + 1)^(6m) · (6m)! + 1) · 3 + 6` at which a
/// scale-`m` simulator over `g` glues must repeat a window movie along an arm.
pub fn arm_length_bound(glues: u64, m: u32) -> Result<BigUint, ZeroScale> {
    if m == 0 {
        return Err(ZeroScale);
    }
    let k = 6 * m;
    let factorial: BigUint = (1..=k as u64).map(BigUint::from).product();
    let power = BigUint::from(glues + 1).pow(k);
    Ok((power * factorial + 1u32) * 3u32 + 6u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explore::explore;
    use crate::sequence::frontier;

    #[test]
    fn line_frontier_is_one_position() {
        let s = line_system();
        assert_eq!(frontier(&s, s.seed()).len(), 1);
    }

    #[test]
    fn branch_terminals_are_incomparable() {
        let s = branch_system();
        let e = explore(&s, 5, 1000);
        let terms: Vec<&Assembly> = e.terminals().collect();
        assert_eq!(terms.len(), 2);
        assert!(!terms[0].is_subassembly_of(terms[1]) && !terms[1].is_subassembly_of(terms[0]));
    }

    #[test]
    fn arm_bound_small_cases() {
        assert_eq!(arm_length_bound(0, 1).unwrap(), BigUint::from(2169u32));
        assert_eq!(arm_length_bound(1, 1).unwrap(), BigUint::from(138_249u32));
        assert_eq!(arm_length_bound(3, 0), Err(ZeroScale));
    }

    #[test]
    fn scale_one_is_a_relabeling() {
        let t = keystone_system();
        let (s, rep) = scale_up(&t, 1);
        assert_eq!(s.tiles().len(), t.tiles().len());
        let a = keystone_terminal(&t, 2, 2);
        let translated: Assembly = a.iter().map(|(p, id)| (p, TileId(id.0))).collect();
        assert_eq!(rep.represent(&translated), a);
    }

    #[test]
    fn scaled_terminal_represents_the_original() {
        let t = keystone_system();
        let (s, rep) = scale_up(&t, 2);
        let a = keystone_terminal(&t, 1, 1);
        let cores: Assembly = a.iter().map(|(p, id)| (p.scale(2), s.id(t.name(id)).unwrap())).collect();
        assert_eq!(rep.represent(&cores), a);
    }

    mod simulation_checks {
        use super::*;
        use crate::simulation::{check_simulates, Clause, SimContext, Verdict};

        fn run(f: &SimFixture) -> crate::simulation::SimReport {
            check_simulates(&f.simulated, &f.simulator, &f.rep, f.bound)
        }

        #[test]
        fn committing_simulator_fails_models_only() {
            let f = committing_simulator_fixture();
            let ctx = SimContext::new(&f.simulated, &f.simulator, &f.rep, f.bound);
            assert_eq!(ctx.equivalent_productions().verdict(), Verdict::Pass);
            assert_eq!(ctx.follows(16, 1).verdict(), Verdict::Pass);
            let r = ctx.models();
            assert_eq!(r.verdict(), Verdict::Fail);
            assert!(r.fails_clause(Clause::Models));
        }

        #[test]
        fn premature_simulator_fails_follows() {
            let f = premature_simulator_fixture();
            let r = run(&f);
            assert!(r.fails_clause(Clause::Follows));
            let w = r.failures().find(|x| x.clause == Clause::Follows).unwrap();
            assert_eq!(w.simulator.len(), 2);
        }

        #[test]
        fn diagonal_fuzz_fails_clean_mapping() {
            let r = run(&diagonal_fuzz_fixture());
            assert!(r.fails_clause(Clause::CleanMapping));
            assert!(!r.fails_clause(Clause::Productions));
        }

        #[test]
        fn corrupted_table_fails() {
            let s = branch_system();
            let r = check_simulates(&s, &s, &corrupted_identity(&s), SimBound::new(4, 4));
            assert!(r.fails_clause(Clause::Productions));
        }

        #[test]
        fn identity_passes_on_small_systems() {
            for s in [line_system(), branch_system(), keystone_system()] {
                let rep = BlockRepresentation::identity(&s, &s).unwrap();
                let r = check_simulates(&s, &s, &rep, SimBound::new(8, 8));
                assert_eq!(r.verdict(), Verdict::Pass, "{:?}", r.findings.first());
            }
        }

        #[test]
        fn scaled_keystone_passes() {
            let f = scaled_keystone_fixture(2);
            let r = run(&f);
            assert_eq!(r.verdict(), Verdict::Pass, "{:?}", r.findings.first());
        }
    }
}
