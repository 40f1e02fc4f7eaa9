mod common;

use std::collections::HashSet;

use atam::encoding::SIDES;
use atam::explore::{enumerate_sequences, DEFAULT_NODE_BUDGET};
use atam::gadgets::{build_bit_string_gadget, gadget_terminals, readback, terminal_size};
use atam::layout::{ceil_log2, superside_layout, Region};
use atam::sequence::producing_sequence;
use atam::systems::keystone::{arm_placements, keystone_system, tip_column};
use atam::{attachment_strength, encode_tileset, explore, frontier, Assembly, BindingRelation, EncodingMode, Pos, TileSystem};
use common::{brute_force_min_cut, oracle_encode, oracle_frontier, oracle_valid, random_system};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn frontier_agrees_with_oracle() {
    for sys in 0..30u64 {
        let s = random_system(sys, 6);
        for k in 0..10u64 {
            let seq = atam::random_sequence(&s, 25, k);
            for n in 1..=seq.len() {
                let a = seq.prefix_result(n);
                assert_eq!(frontier(&s, &a), oracle_frontier(&s, &a), "system {sys}, seq {k}, prefix {n}");
            }
            assert!(oracle_valid(&s, &seq));
        }
    }
}

#[test]
fn min_cut_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for sys in 0..40u64 {
        let s = random_system(300 + sys, 6);
        for _ in 0..10 {
            // arbitrary, possibly disconnected, placements in a small box
            let n = rng.gen_range(2..=10);
            let mut a = Assembly::new();
            while a.len() < n {
                let p = Pos::xy(rng.gen_range(0..4), rng.gen_range(0..3));
                let t = atam::TileId(rng.gen_range(0..s.tiles().len() as u32));
                a.insert(p, t);
            }
            let got = a.min_cut_weight(&s).map(|w| w as u32);
            assert_eq!(got, brute_force_min_cut(&s, &a));
        }
        let seq = atam::random_sequence(&s, 12, sys);
        let a = seq.result();
        if a.len() >= 2 {
            let w = brute_force_min_cut(&s, &a).unwrap();
            assert!(w >= s.temperature(), "producible assembly is unstable");
            assert!(a.is_stable(&s));
        }
    }
}

#[test]
fn exploration_is_closed_and_producible() {
    for sys in 0..15u64 {
        let s = random_system(600 + sys, 5);
        let max = 7;
        let e = explore(&s, max, DEFAULT_NODE_BUDGET);
        assert!(e.is_complete());
        let all: HashSet<&Assembly> = e.assemblies.iter().map(|x| &x.assembly).collect();
        let mut reached = HashSet::from([0usize]);
        for (i, x) in e.assemblies.iter().enumerate() {
            assert!(producing_sequence(&s, &x.assembly).is_some_and(|q| oracle_valid(&s, &q)));
            let f = oracle_frontier(&s, &x.assembly);
            assert_eq!(x.terminal, f.is_empty());
            if x.assembly.len() < max {
                for (p, t) in f {
                    assert!(all.contains(&x.assembly.with(p, t)));
                }
            }
            reached.extend(e.successors(i).iter().copied());
        }
        assert_eq!(reached.len(), e.len());
    }
}

fn placed(s: &TileSystem, cells: &[(Pos, String)]) -> Assembly {
    let mut a = s.seed().clone();
    for (p, name) in cells {
        a.insert(*p, s.id(name).unwrap());
    }
    a
}

#[test]
fn keystone_frontier_cases() {
    let s = keystone_system();
    let names: HashSet<&str> = frontier(&s, s.seed()).iter().map(|&(_, t)| s.name(t)).collect();
    assert_eq!(names, HashSet::from(["arm_top_connector_1", "arm_bottom_connector_1"]));

    let key = s.id("keystone").unwrap();
    let top = placed(&s, &arm_placements(1, 2));
    let a = Pos::xy(tip_column(2), 0);
    assert_eq!(attachment_strength(&s, &top, a, key), Ok(1));
    assert!(!frontier(&s, &top).contains(&(a, key)));

    let mut both = top.clone();
    for (p, n) in arm_placements(-1, 2) {
        both.insert(p, s.id(&n).unwrap());
    }
    assert_eq!(attachment_strength(&s, &both, a, key), Ok(2));
    assert!(frontier(&s, &both).contains(&(a, key)));

    let mut skew = top;
    for (p, n) in arm_placements(-1, 3) {
        skew.insert(p, s.id(&n).unwrap());
    }
    assert!(frontier(&s, &skew).iter().all(|&(_, t)| t != key));
}

#[test]
fn encoder_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..60 {
        let n = rng.gen_range(1..=9);
        let mut r = BindingRelation::new(n);
        for i in 0..n {
            for d in SIDES {
                for j in 0..n {
                    if rng.gen_bool(0.3) {
                        r.insert(i, d, j).unwrap();
                    }
                }
            }
        }
        let expected = oracle_encode(n, |i, side, j| r.binds(i, SIDES[side], j));
        assert_eq!(encode_tileset(&r, EncodingMode::Binary), expected);
        assert_eq!(expected.len(), atam::encoding_length(n));
    }
    for sys in 0..10u64 {
        let s = random_system(900 + sys, 6);
        let r = BindingRelation::of_system(&s);
        let expected = oracle_encode(s.tiles().len(), |i, side, j| {
            let d = SIDES[side];
            let (g, h) = (s.tiles()[i].glue(d), s.tiles()[j].glue(d.opposite()));
            g.strength > 0 && g == h
        });
        assert_eq!(encode_tileset(&r, EncodingMode::Binary), expected);
    }
}

fn bit_strings(max_len: usize) -> Vec<Vec<bool>> {
    (0..=max_len)
        .flat_map(|n| (0..1u32 << n).map(move |v| (0..n).map(|i| v >> (n - 1 - i) & 1 == 1).collect()))
        .collect()
}

#[test]
fn gadget_terminals_are_planar_pairs_of_paths() {
    for bits in bit_strings(3) {
        let s = build_bit_string_gadget(&bits).unwrap();
        let t = gadget_terminals(&s, terminal_size(&bits) + 1);
        assert_eq!(t.len(), 1);
        let a = &t[0];
        assert!(a.positions().all(|p| p.z == 0 || p.z == 1));
        // the binding graph is a single simple path from the seed to the readout
        let edges = a.binding_edges(&s);
        assert_eq!(edges.len(), a.len() - 1);
        let mut degree = std::collections::HashMap::<Pos, usize>::new();
        for (p, q, _) in &edges {
            *degree.entry(*p).or_default() += 1;
            *degree.entry(*q).or_default() += 1;
        }
        assert!(degree.values().all(|&d| d <= 2));
        assert!(a.is_connected(s.dim()));
        assert_eq!(degree[&Pos::ORIGIN], 1);
        assert_eq!(readback(&s, a).unwrap(), atam::gadgets::bits_text(&bits));
    }
}

#[test]
fn gadget_writes_before_reading() {
    for bits in bit_strings(2) {
        let s = build_bit_string_gadget(&bits).unwrap();
        let seqs = enumerate_sequences(&s, terminal_size(&bits), 10_000).unwrap();
        for q in &seqs {
            let first_read = q.steps.iter().position(|&(_, t)| s.name(t).starts_with("read")).unwrap();
            let last_write = q.steps.iter().rposition(|&(_, t)| s.name(t).starts_with("write")).unwrap();
            assert!(last_write < first_read);
        }
    }
}

#[test]
fn layout_sweep() {
    for n in 1..=64 {
        let l = superside_layout(n);
        assert_eq!(l.regions.iter().map(|(_, w)| w).sum::<u64>(), l.side_length);
        assert_eq!(l.h, l.h_prime + ceil_log2(l.h_prime));
        assert!([1, 3].contains(&l.width_of(Region::Padding)));
        let t = atam::encoding_length(n) as u64;
        assert_eq!(l.width_of(Region::TileSet), 2 * t);
        assert!(l.side_length as f64 / 2.0 > l.h as f64);
    }
}
