mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use atam::encoding::{encode_tileset, BindingRelation, EncodingMode};
use atam::explore::{explore, random_sequence, DEFAULT_NODE_BUDGET, DEFAULT_RNG_SEED};
use atam::format::{self, ExplorationRecord, SequenceRecord};
use atam::gadgets::{self, DEFAULT_MAX_BITS};
use atam::layout::superside_layout;
use atam::simulation::{SimBound, SimContext, Verdict};
use atam::systems::{self, SimFixture};
use atam::windows::{splice, MovieMatch};
use atam::{Pos, TileSystem};

#[derive(Parser)]
#[command(name = "atam", version, about = "Abstract Tile Assembly Model workbench")]
struct Cli {
    /// Node budget for explorations (falls back to ATAM_BUDGET).
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grow one random assembly sequence.
    Run {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, default_value_t = 100)]
        max_tiles: usize,
        #[arg(long, default_value_t = DEFAULT_RNG_SEED)]
        rng_seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List every producible assembly up to a size bound.
    Explore {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        max_tiles: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Splice two sequences along a window and its translate.
    Splice {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        wa: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        wb: PathBuf,
        /// Translation taking the first window onto the second, as dx,dy[,dz].
        #[arg(long, allow_hyphen_values = true)]
        offset: String,
        /// Require equal full movies instead of equal bond-forming submovies.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check whether one system simulates another up to a bound.
    CheckSim {
        #[arg(long)]
        simulated: PathBuf,
        #[arg(long)]
        simulator: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        /// Size bound for the simulator's exploration.
        #[arg(long)]
        bound: usize,
        /// Size bound for the simulated system (defaults to bound / scale).
        #[arg(long)]
        simulated_bound: Option<usize>,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_RNG_SEED)]
        rng_seed: u64,
    },
    /// Encode a tile set's binding relation as a string.
    Encode {
        #[arg(long, conflicts_with = "fixture", required_unless_present = "fixture")]
        tiles: Option<PathBuf>,
        #[arg(long, value_enum)]
        fixture: Option<EncodeFixture>,
        #[arg(long, value_enum, default_value_t = Mode::Display)]
        mode: Mode,
    },
    /// Build a bit read/write gadget and report what its reader reads.
    Gadget {
        #[arg(long, default_value = "")]
        bits: String,
        #[arg(long, default_value_t = DEFAULT_MAX_BITS)]
        max_bits: usize,
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Also write the terminal assembly.
        #[arg(long)]
        emit_terminal: Option<PathBuf>,
    },
    /// Print the supertile side layout for a tile-set size.
    Layout {
        #[arg(long)]
        tiles: usize,
    },
    /// Draw an assembly as SVG, one file per z-plane.
    Render {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        assembly: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 40)]
        cell: u32,
    },
    /// Write a built-in system or simulation fixture.
    Fixture {
        #[arg(value_enum)]
        name: FixtureName,
        #[arg(long, default_value_t = 2)]
        scale: u32,
        /// Directory for multi-file fixtures; single systems go to stdout.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodeFixture {
    /// The five-tile relation behind the golden example encoding.
    FiveTile,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Binary,
    Display,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureName {
    Keystone,
    Line,
    Branch,
    /// The keystone terminal with arm length 2 on both sides.
    KeystoneTerminal,
    /// Line-system sequences and windows for a pump-down splice.
    LinePump,
    ScaledKeystone,
    CommittingSimulator,
    PrematureSimulator,
    DiagonalFuzz,
}

fn budget(cli: Option<usize>) -> Result<usize> {
    if let Some(b) = cli {
        return Ok(b);
    }
    match std::env::var("ATAM_BUDGET") {
        Ok(v) => v.trim().parse().with_context(|| format!("ATAM_BUDGET is not a number: `{v}`")),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_system(path: &Path) -> Result<TileSystem> {
    format::system_from_json(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn write_file(dir: &Path, name: &str, text: &str) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let p = dir.join(name);
    fs::write(&p, text).with_context(|| format!("cannot write {}", p.display()))
}

fn parse_offset(s: &str) -> Result<Pos> {
    let coords = s
        .split(',')
        .map(|c| c.trim().parse::<i32>())
        .collect::<Result<Vec<_>, _>>()
        .with_context(|| format!("offset `{s}` is not a comma-separated integer list"))?;
    match coords.len() {
        2 | 3 => Ok(Pos::from_coords(&coords).expect("two or three coordinates")),
        _ => bail!("offset `{s}` needs two or three coordinates"),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn write_sim_fixture(f: &SimFixture, dir: &Path) -> Result<()> {
    write_file(dir, "simulated.json", &format::system_to_json(&f.simulated))?;
    write_file(dir, "simulator.json", &format::system_to_json(&f.simulator))?;
    write_file(dir, "rep.json", &format::representation_to_json(&f.rep, &f.simulator, &f.simulated))?;
    let bound = json!({ "simulated": f.bound.simulated, "simulator": f.bound.simulator });
    write_file(dir, "bound.json", &pretty(&bound))
}

fn line_pump(dir: &Path) -> Result<()> {
    let s = systems::line_system();
    let rep = s.id("rep").expect("line tile");
    let seq = |n: i32| {
        let mut q = atam::AssemblySequence::from_system(&s);
        for x in 1..n {
            q.push(Pos::xy(x, 0), rep);
        }
        q
    };
    write_file(dir, "system.json", &format::system_to_json(&s))?;
    write_file(dir, "a.json", &format::sequence_to_json(&s, &seq(5)))?;
    write_file(dir, "b.json", &format::sequence_to_json(&s, &seq(3)))?;
    let w = |x| atam::Window::vertical(x, -3..=3, 0..=0);
    write_file(dir, "wa.json", &format::window_to_json(&w(2), s.dim()))?;
    write_file(dir, "wb.json", &format::window_to_json(&w(1), s.dim()))
}

fn fixture(name: FixtureName, scale: u32, out_dir: Option<&Path>) -> Result<()> {
    let need_dir = || out_dir.context("this fixture has several files; pass --out-dir");
    match name {
        FixtureName::Keystone => emit(None, &format::system_to_json(&systems::keystone_system())),
        FixtureName::Line => emit(None, &format::system_to_json(&systems::line_system())),
        FixtureName::Branch => emit(None, &format::system_to_json(&systems::branch_system())),
        FixtureName::KeystoneTerminal => {
            let s = systems::keystone_system();
            emit(None, &format::assembly_to_json(&s, &systems::keystone_terminal(&s, 2, 2)))
        }
        FixtureName::LinePump => line_pump(need_dir()?),
        FixtureName::ScaledKeystone => {
            if scale == 0 {
                bail!("scale must be at least 1");
            }
            write_sim_fixture(&systems::scaled_keystone_fixture(scale), need_dir()?)
        }
        FixtureName::CommittingSimulator => write_sim_fixture(&systems::committing_simulator_fixture(), need_dir()?),
        FixtureName::PrematureSimulator => write_sim_fixture(&systems::premature_simulator_fixture(), need_dir()?),
        FixtureName::DiagonalFuzz => write_sim_fixture(&systems::diagonal_fuzz_fixture(), need_dir()?),
    }
}

/// Runs a command; `Ok(false)` means it completed with a negative result.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run { system, max_tiles, rng_seed, out } => {
            let s = load_system(&system)?;
            let seq = random_sequence(&s, max_tiles, rng_seed);
            let record = SequenceRecord::of(&s, &seq);
            let mut v = serde_json::to_value(&record)?;
            v["rng_seed"] = json!(rng_seed);
            v["terminal"] = json!(atam::is_terminal(&s, &seq.result()));
            emit(out.as_deref(), &pretty(&v))?;
        }
        Command::Explore { system, max_tiles, out } => {
            let s = load_system(&system)?;
            let e = explore(&s, max_tiles, budget(cli.budget)?);
            emit(out.as_deref(), &pretty(&serde_json::to_value(ExplorationRecord::of(&s, &e))?))?;
        }
        Command::Splice { system, a, wa, b, wb, offset, exact, out } => {
            let s = load_system(&system)?;
            let seq_a = format::sequence_from_json(&s, &read(&a)?).with_context(|| format!("{}", a.display()))?;
            let seq_b = format::sequence_from_json(&s, &read(&b)?).with_context(|| format!("{}", b.display()))?;
            let w = format::window_from_json(&read(&wa)?, s.dim()).with_context(|| format!("{}", wa.display()))?;
            let w2 = format::window_from_json(&read(&wb)?, s.dim()).with_context(|| format!("{}", wb.display()))?;
            let mode = if exact { MovieMatch::Exact } else { MovieMatch::BondForming };
            let gamma = splice(&s, &seq_a, &w, &seq_b, &w2, parse_offset(&offset)?, mode)?;
            emit(out.as_deref(), &format::sequence_to_json(&s, &gamma))?;
        }
        Command::CheckSim { simulated, simulator, rep, bound, simulated_bound, samples, rng_seed } => {
            let t = load_system(&simulated)?;
            let s = load_system(&simulator)?;
            let r = format::representation_from_json(&read(&rep)?, &s, &t).with_context(|| format!("{}", rep.display()))?;
            let tb = simulated_bound.unwrap_or(bound / r.scale() as usize);
            let b = SimBound::new(tb, bound).with_budget(budget(cli.budget)?);
            let ctx = SimContext::new(&t, &s, &r, b);
            let report = ctx
                .equivalent_productions()
                .merge(&ctx.follows(samples, rng_seed))
                .merge(&ctx.models());
            let verdict = report.verdict();
            let findings: Vec<_> = report
                .findings
                .iter()
                .map(|f| {
                    json!({
                        "clause": f.clause,
                        "conclusive": f.conclusive,
                        "message": f.message,
                        "simulator": f.simulator.iter().map(|a| format::AssemblyRecord::of(&s, a)).collect::<Vec<_>>(),
                        "simulated": f.simulated.iter().map(|a| format::AssemblyRecord::of(&t, a)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let v = json!({
                "rng_seed": rng_seed,
                "verdict": verdict,
                "bound": report.bound,
                "explored": report.explored,
                "findings": findings,
            });
            println!("{}", pretty(&v));
            return Ok(verdict != Verdict::Fail);
        }
        Command::Encode { tiles, fixture, mode } => {
            let relation = match (tiles, fixture) {
                (_, Some(EncodeFixture::FiveTile)) => systems::five_tile_example_relation(),
                (Some(path), None) => BindingRelation::of_system(&load_system(&path)?),
                (None, None) => bail!("pass --tiles or --fixture"),
            };
            let mode = match mode {
                Mode::Binary => EncodingMode::Binary,
                Mode::Display => EncodingMode::Display,
            };
            println!("{}", encode_tileset(&relation, mode));
        }
        Command::Gadget { bits, max_bits, emit: out, emit_terminal } => {
            let parsed = gadgets::parse_bits(&bits).with_context(|| format!("bits `{bits}` must be 0s and 1s"))?;
            let s = gadgets::build_bit_string_gadget_bounded(&parsed, max_bits)?;
            if let Some(p) = out {
                emit(Some(&p), &format::system_to_json(&s))?;
            }
            let terminals = gadgets::gadget_terminals(&s, gadgets::terminal_size(&parsed) + 1);
            let reads: Vec<Option<String>> = terminals.iter().map(|a| gadgets::readback(&s, a)).collect();
            if let (Some(p), [a]) = (emit_terminal, terminals.as_slice()) {
                emit(Some(&p), &format::assembly_to_json(&s, a))?;
            }
            let v = json!({
                "written": gadgets::bits_text(&parsed),
                "tile_types": s.tiles().len(),
                "terminals": terminals.len(),
                "read": reads,
            });
            println!("{}", pretty(&v));
            return Ok(reads.len() == 1 && reads[0].as_deref() == Some(gadgets::bits_text(&parsed).as_str()));
        }
        Command::Layout { tiles } => {
            if tiles == 0 {
                bail!("--tiles must be at least 1");
            }
            let l = superside_layout(tiles);
            println!("tiles {}  h' {}  h {}  side {}", l.tile_count, l.h_prime, l.h, l.side_length);
            println!("{:<8} {:>10} {:>10}", "region", "width", "offset");
            let mut offset = 0;
            for (r, w) in &l.regions {
                println!("{:<8} {:>10} {:>10}", r.label(), w, offset);
                offset += w;
            }
        }
        Command::Render { system, assembly, out_dir, cell } => {
            let s = load_system(&system)?;
            let a = format::assembly_from_json(&s, &read(&assembly)?).with_context(|| format!("{}", assembly.display()))?;
            let stem = assembly.file_stem().and_then(|x| x.to_str()).unwrap_or("assembly");
            for (z, svg) in render::render(&s, &a, &render::RenderOptions { cell }) {
                let name = format!("{stem}_z{z}.svg");
                write_file(&out_dir, &name, &svg)?;
                println!("{}", out_dir.join(name).display());
            }
        }
        Command::Fixture { name, scale, out_dir } => fixture(name, scale, out_dir.as_deref())?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_parse() {
        assert_eq!(parse_offset("-1,0").unwrap(), Pos::xy(-1, 0));
        assert_eq!(parse_offset("1, 2, 3").unwrap(), Pos::new(1, 2, 3));
        assert!(parse_offset("1").is_err());
        assert!(parse_offset("a,b").is_err());
    }

    #[test]
    fn render_single_tile() {
        let s = systems::line_system();
        let a = s.seed().clone();
        let docs = render::render(&s, &a, &render::RenderOptions::default());
        assert_eq!(docs.len(), 1);
        assert_eq!(docs[0].1.matches("<rect").count(), 1);
    }

    #[test]
    fn keystone_roles_are_distinct() {
        let s = systems::keystone_system();
        let a = systems::keystone_terminal(&s, 2, 2);
        let svg = &render::render(&s, &a, &render::RenderOptions::default())[0].1;
        assert_eq!(svg.matches("<rect").count(), a.len());
        for role in ["seed", "arm", "finger", "keystone", "flagpole", "flag"] {
            assert!(svg.contains(&format!("class=\"tile {role}\"")), "{role}");
        }
        let colors: std::collections::BTreeSet<&str> = ["seed", "arm_x", "finger_x", "keystone", "flagpole", "flag"]
            .iter()
            .map(|n| render::role_of(n).1)
            .collect();
        assert_eq!(colors.len(), 6);
    }

    #[test]
    fn gadget_renders_two_planes() {
        let s = gadgets::build_bit_gadget(true);
        let t = gadgets::gadget_terminals(&s, 40);
        assert_eq!(render::render(&s, &t[0], &render::RenderOptions::default()).len(), 2);
    }
}
