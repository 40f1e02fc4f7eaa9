//! The 18-tile temperature-2 keystone system.
//!
//! Layout: seed at the origin; two-tile connectors at `(0, ±1)`, `(0, ±2)`;
//! arms grow east on rows `y = ±2`. Each arm position east of the connector
//! nondeterministically takes a repeater or a branch tile. A branch at column
//! `b` starts a finger: two tiles east along the arm row, then a tip at
//! `(b + 2, ±1)`. The keystone at `(a, 0)` binds with strength 1 to each tip,
//! so it attaches only when both tips sit in column `a`. A flagpole then
//! attaches west of the keystone at `(a - 1, 0)`, and a flag above it.

use crate::assembly::Assembly;
use crate::geometry::{Dim, Direction, Pos};
use crate::system::TileSystem;
use crate::tile::TileType;

use Direction::{E, N, S, W};

/// Names of the 18 tile types, in tile-id order.
pub const KEYSTONE_TILES: [&str; 18] = [
    "seed",
    "arm_top_connector_1",
    "arm_top_connector_2",
    "arm_top_repeater",
    "arm_top_branch",
    "arm_bottom_connector_1",
    "arm_bottom_connector_2",
    "arm_bottom_repeater",
    "arm_bottom_branch",
    "finger_top_1",
    "finger_top_2",
    "finger_top_tip",
    "finger_bottom_1",
    "finger_bottom_2",
    "finger_bottom_tip",
    "keystone",
    "flagpole",
    "flag",
];

/// Strength-1 glues; every other glue has strength 2.
pub const COOPERATIVE_GLUES: [&str; 2] = ["g11", "g14"];

fn strength(label: &str) -> u32 {
    if COOPERATIVE_GLUES.contains(&label) {
        1
    } else {
        2
    }
}

fn tile(name: &str, sides: &[(Direction, &str)]) -> TileType {
    sides
        .iter()
        .fold(TileType::new(name, Dim::Two), |t, &(d, g)| t.with(d, g, strength(g)))
}

pub fn keystone_tiles() -> Vec<TileType> {
    vec![
        tile("seed", &[(N, "g0"), (S, "g6")]),
        tile("arm_top_connector_1", &[(S, "g0"), (N, "g1")]),
        tile("arm_top_connector_2", &[(S, "g1"), (E, "g2")]),
        tile("arm_top_repeater", &[(W, "g2"), (E, "g2")]),
        tile("arm_top_branch", &[(W, "g2"), (E, "g3")]),
        tile("arm_bottom_connector_1", &[(N, "g6"), (S, "g7")]),
        tile("arm_bottom_connector_2", &[(N, "g7"), (E, "g8")]),
        tile("arm_bottom_repeater", &[(W, "g8"), (E, "g8")]),
        tile("arm_bottom_branch", &[(W, "g8"), (E, "g9")]),
        tile("finger_top_1", &[(W, "g3"), (E, "g4")]),
        tile("finger_top_2", &[(W, "g4"), (S, "g5")]),
        tile("finger_top_tip", &[(N, "g5"), (S, "g11")]),
        tile("finger_bottom_1", &[(W, "g9"), (E, "g10")]),
        tile("finger_bottom_2", &[(W, "g10"), (N, "g12")]),
        tile("finger_bottom_tip", &[(S, "g12"), (N, "g14")]),
        tile("keystone", &[(N, "g11"), (S, "g14"), (W, "g13")]),
        tile("flagpole", &[(E, "g13"), (N, "g15")]),
        tile("flag", &[(S, "g15")]),
    ]
}

pub fn keystone_system() -> TileSystem {
    TileSystem::with_single_seed(Dim::Two, 2, keystone_tiles(), "seed").expect("keystone system is well formed")
}

/// Column of the finger tip for an arm whose branch tile is at column `arm`.
pub fn tip_column(arm: i32) -> i32 {
    arm + 2
}

/// Placements of one complete arm with its finger. `sign` is `1` for the top
/// arm and `-1` for the bottom one; `arm >= 1` is the branch column.
pub fn arm_placements(sign: i32, arm: i32) -> Vec<(Pos, String)> {
    assert!(arm >= 1, "arm length must be positive");
    let side = if sign > 0 { "top" } else { "bottom" };
    let arm_tile = |role: &str| format!("arm_{side}_{role}");
    let finger_tile = |role: &str| format!("finger_{side}_{role}");
    let mut out = vec![
        (Pos::xy(0, sign), arm_tile("connector_1")),
        (Pos::xy(0, 2 * sign), arm_tile("connector_2")),
    ];
    for x in 1..arm {
        out.push((Pos::xy(x, 2 * sign), arm_tile("repeater")));
    }
    out.push((Pos::xy(arm, 2 * sign), arm_tile("branch")));
    out.push((Pos::xy(arm + 1, 2 * sign), finger_tile("1")));
    out.push((Pos::xy(arm + 2, 2 * sign), finger_tile("2")));
    out.push((Pos::xy(arm + 2, sign), finger_tile("tip")));
    out
}

/// The terminal assembly with arm lengths `top` and `bottom`.
pub fn keystone_terminal(system: &TileSystem, top: i32, bottom: i32) -> Assembly {
    let mut placements = vec![(Pos::ORIGIN, "seed".to_string())];
    placements.extend(arm_placements(1, top));
    placements.extend(arm_placements(-1, bottom));
    if top == bottom {
        let a = tip_column(top);
        placements.push((Pos::xy(a, 0), "keystone".into()));
        placements.push((Pos::xy(a - 1, 0), "flagpole".into()));
        placements.push((Pos::xy(a - 1, 1), "flag".into()));
    }
    placements
        .into_iter()
        .map(|(p, n)| (p, system.id(&n).expect("keystone tile")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{is_producible, is_terminal};

    #[test]
    fn eighteen_tiles_and_two_weak_glues() {
        let s = keystone_system();
        assert_eq!(s.tiles().len(), 18);
        let mut weak: Vec<&str> = s
            .tiles()
            .iter()
            .flat_map(|t| t.sides().map(|(_, g)| g))
            .filter(|g| g.strength == 1)
            .map(|g| g.label.as_str())
            .collect();
        weak.sort();
        weak.dedup();
        assert_eq!(weak, vec!["g11", "g14"]);
    }

    #[test]
    fn terminals_are_producible_and_terminal() {
        let s = keystone_system();
        for (t, b) in [(1, 1), (1, 2), (3, 2), (2, 2)] {
            let a = keystone_terminal(&s, t, b);
            assert!(is_producible(&s, &a), "{t} {b}");
            assert!(is_terminal(&s, &a), "{t} {b}");
        }
    }
}
