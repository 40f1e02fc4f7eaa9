//! Side layout of the supertiles used when a 3D temperature-1 system
//! simulates a 2D one.
//!
//! Each supertile side holds, in order: a corner gap, the probe height `h`,
//! the side's own glue list, the full tile-set encoding, centring padding,
//! and the same three regions mirrored, then another corner gap. All widths
//! are in read/write gadget units.

use serde::Serialize;

use crate::encoding::{encoding_length, side_list_length};

/// Width of each corner gap.
pub const CORNER_GAP: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Region {
    Corner,
    ProbeHeight,
    SideGlues,
    TileSet,
    Padding,
}

impl Region {
    pub fn label(self) -> &'static str {
        match self {
            Region::Corner => "corner",
            Region::ProbeHeight => "h",
            Region::SideGlues => "S",
            Region::TileSet => "T",
            Region::Padding => "padding",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupersideLayout {
    pub tile_count: usize,
    /// Probe height before and after accounting for the `h` regions.
    pub h_prime: u64,
    pub h: u64,
    pub regions: Vec<(Region, u64)>,
    pub side_length: u64,
}

impl SupersideLayout {
    pub fn width_of(&self, region: Region) -> u64 {
        self.regions.iter().filter(|(r, _)| *r == region).map(|(_, w)| w).sum()
    }

    /// Distance from the side to the centre of the supertile.
    pub fn centre_distance(&self) -> f64 {
        self.side_length as f64 / 2.0
    }
}

/// `⌈log₂ x⌉` for `x ≥ 1`.
pub fn ceil_log2(x: u64) -> u64 {
    assert!(x >= 1);
    (64 - (x - 1).leading_zeros()) as u64
}

/// Number of binary digits of `x ≥ 1`.
pub fn bit_length(x: u64) -> u64 {
    (64 - x.leading_zeros()) as u64
}

/// `(h', h)` for a side whose tile-set and side-glue regions span `width`:
/// `h' = width / 2`, `h = h' + ⌈log₂ h'⌉`.
pub fn probe_height_from_width(width: u64) -> (u64, u64) {
    let h_prime = (width / 2).max(1);
    (h_prime, h_prime + ceil_log2(h_prime))
}

pub fn probe_height(layout: &SupersideLayout) -> (u64, u64) {
    (layout.h_prime, layout.h)
}

/// Side layout for a simulated tile set of `tile_count` tiles.
///
/// The side length is `2h + 2g + 3` for corner gap `g`, and the padding takes
/// whatever the other regions leave; it is always 1 or 3, so a probe of height
/// `h` grown from the end of a corner gap stops one and a half units short of
/// the centre.
pub fn superside_layout(tile_count: usize) -> SupersideLayout {
    assert!(tile_count >= 1, "a tile set has at least one tile");
    let t = encoding_length(tile_count) as u64;
    let s = side_list_length(tile_count) as u64;
    let (h_prime, h) = probe_height_from_width(2 * t + 2 * s);
    let hw = bit_length(h);
    let side_length = 2 * h + 2 * CORNER_GAP + 3;
    let fixed = 2 * (CORNER_GAP + hw + s + t);
    let padding = side_length - fixed;
    let regions = vec![
        (Region::Corner, CORNER_GAP),
        (Region::ProbeHeight, hw),
        (Region::SideGlues, s),
        (Region::TileSet, t),
        (Region::Padding, padding),
        (Region::TileSet, t),
        (Region::SideGlues, s),
        (Region::ProbeHeight, hw),
        (Region::Corner, CORNER_GAP),
    ];
    SupersideLayout { tile_count, h_prime, h, regions, side_length }
}
