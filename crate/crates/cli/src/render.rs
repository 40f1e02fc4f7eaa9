//! Deterministic SVG drawings of assemblies, one document per z-plane.

use std::fmt::Write as _;

use atam::{Assembly, Dim, Direction, TileSystem};

pub struct RenderOptions {
    /// Side length of one tile in SVG units.
    pub cell: u32,
}

impl Default for RenderOptions {
    fn default() -> RenderOptions {
        RenderOptions { cell: 40 }
    }
}

/// Fill colors by tile-name prefix. More specific prefixes come first.
const ROLES: [(&str, &str, &str); 11] = [
    ("seed", "seed", "#444444"),
    ("arm", "arm", "#4e79a7"),
    ("finger", "finger", "#59a14f"),
    ("keystone", "keystone", "#e15759"),
    ("flagpole", "flagpole", "#9c755f"),
    ("flag", "flag", "#f28e2b"),
    ("link", "link", "#bab0ac"),
    ("write", "writer", "#76b7b2"),
    ("read", "reader", "#edc948"),
    ("READ", "readout", "#b07aa1"),
    ("", "tile", "#d3d3d3"),
];

/// Role class and fill color of a tile.
pub fn role_of(name: &str) -> (&'static str, &'static str) {
    ROLES
        .iter()
        .find(|(prefix, _, _)| name.starts_with(prefix))
        .map(|&(_, role, color)| (role, color))
        .expect("empty prefix matches everything")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders the tiles of `assembly` lying in plane `z`.
pub fn render_plane(system: &TileSystem, assembly: &Assembly, z: i32, opts: &RenderOptions) -> String {
    let c = opts.cell as i32;
    let tiles: Vec<_> = assembly.iter().filter(|(p, _)| p.z == z).collect();
    let (min_x, max_x) = tiles.iter().fold((i32::MAX, i32::MIN), |(lo, hi), (p, _)| (lo.min(p.x), hi.max(p.x)));
    let (min_y, max_y) = tiles.iter().fold((i32::MAX, i32::MIN), |(lo, hi), (p, _)| (lo.min(p.y), hi.max(p.y)));
    let (w, h) = if tiles.is_empty() { (0, 0) } else { ((max_x - min_x + 1) * c, (max_y - min_y + 1) * c) };
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" data-plane="{z}">"#
    )
    .unwrap();
    for (p, t) in &tiles {
        let name = system.name(*t);
        let (role, color) = role_of(name);
        let x = (p.x - min_x) * c;
        let y = (max_y - p.y) * c;
        writeln!(out, r#"<g data-pos="{},{},{}">"#, p.x, p.y, p.z).unwrap();
        writeln!(
            out,
            r##"<rect class="tile {role}" x="{x}" y="{y}" width="{c}" height="{c}" fill="{color}" stroke="#000000" stroke-width="1"/>"##
        )
        .unwrap();
        for (d, g) in system.tile(*t).sides().filter(|(_, g)| !g.is_null()) {
            let m = c / 8;
            let sw = 1 + 2 * g.strength.min(3);
            let line = match d {
                Direction::N => Some((x + m, y + m, x + c - m, y + m)),
                Direction::S => Some((x + m, y + c - m, x + c - m, y + c - m)),
                Direction::W => Some((x + m, y + m, x + m, y + c - m)),
                Direction::E => Some((x + c - m, y + m, x + c - m, y + c - m)),
                _ => None,
            };
            match line {
                Some((x1, y1, x2, y2)) => writeln!(
                    out,
                    r##"<line class="glue" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#000000" stroke-width="{sw}"/>"##
                )
                .unwrap(),
                None => {
                    let cy = if d == Direction::U { y + 2 * m } else { y + c - 2 * m };
                    writeln!(
                        out,
                        r##"<circle class="glue vertical" cx="{}" cy="{cy}" r="{m}" fill="none" stroke="#000000" stroke-width="{sw}"/>"##,
                        x + c - 2 * m
                    )
                    .unwrap()
                }
            }
        }
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="{}" text-anchor="middle" font-family="monospace">{}</text>"#,
            x + c / 2,
            y + c / 2 + c / 10,
            (c / 5).max(4),
            escape(name)
        )
        .unwrap();
        writeln!(out, "</g>").unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// One `(z, document)` pair per occupied plane; 2D assemblies give one.
pub fn render(system: &TileSystem, assembly: &Assembly, opts: &RenderOptions) -> Vec<(i32, String)> {
    let mut planes: Vec<i32> = assembly.positions().map(|p| p.z).collect();
    planes.sort_unstable();
    planes.dedup();
    if planes.is_empty() || system.dim() == Dim::Two {
        planes = vec![0];
    }
    planes.into_iter().map(|z| (z, render_plane(system, assembly, z, opts))).collect()
}
