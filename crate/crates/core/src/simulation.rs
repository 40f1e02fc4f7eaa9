//! Block-rescaled simulation of one tile system by another.
//!
//! A simulator `S` represents a simulated system `T` through a
//! [`BlockRepresentation`]: the lattice of `S` is cut into `m`-blocks and each
//! block is read as one tile of `T` (or empty space). The checks in this
//! module compare bounded explorations of both systems and report a verdict
//! that holds up to the explored sizes.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::assembly::Assembly;
use crate::explore::{explore, Exploration};
use crate::geometry::{Dim, Direction, Pos};
use crate::sequence::{is_producible, is_terminal, reaches};
use crate::system::TileSystem;
use crate::tile::TileId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepresentationError {
    #[error("scale must be positive")]
    ZeroScale,
    #[error("a {simulator} simulator cannot represent a {simulated} system")]
    Dimensions { simulator: Dim, simulated: Dim },
    #[error("entry {0} has an empty block")]
    EmptyBlock(usize),
    #[error("entry {entry} places a tile at {pos}, outside the block")]
    OutsideBlock { entry: usize, pos: Pos },
    #[error("entries {0} and {1} overlap but map to different tiles")]
    Inconsistent(usize, usize),
    #[error("no simulator tile named `{0}`")]
    UnknownTile(String),
}

/// A valid `m`-block supertile representation, given by explicit entries.
///
/// An entry maps a block pattern to a simulated tile; a block represents that
/// tile when it contains the pattern. Construction rejects tables where two
/// compatible patterns map to different tiles, so every block containing
/// some pattern has a single image and larger blocks keep the image of
/// smaller ones.
#[derive(Clone, Debug)]
pub struct BlockRepresentation {
    scale: i32,
    source_dim: Dim,
    target_dim: Dim,
    entries: Vec<(Assembly, TileId)>,
    by_placement: HashMap<(Pos, TileId), Vec<usize>>,
}

impl BlockRepresentation {
    pub fn new(
        scale: u32,
        source_dim: Dim,
        target_dim: Dim,
        entries: Vec<(Assembly, TileId)>,
    ) -> Result<BlockRepresentation, RepresentationError> {
        if scale == 0 {
            return Err(RepresentationError::ZeroScale);
        }
        if target_dim > source_dim {
            return Err(RepresentationError::Dimensions { simulator: source_dim, simulated: target_dim });
        }
        let m = scale as i32;
        let mut by_placement: HashMap<(Pos, TileId), Vec<usize>> = HashMap::new();
        for (i, (block, _)) in entries.iter().enumerate() {
            let Some((first, t)) = block.iter().next() else {
                return Err(RepresentationError::EmptyBlock(i));
            };
            for (p, _) in block.iter() {
                let inside = [p.x, p.y, p.z].iter().all(|c| (0..m).contains(c))
                    && (source_dim == Dim::Three || p.z == 0);
                if !inside {
                    return Err(RepresentationError::OutsideBlock { entry: i, pos: p });
                }
            }
            by_placement.entry((first, t)).or_default().push(i);
        }
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                if entries[i].1 != entries[j].1 && entries[i].0.union(&entries[j].0).is_some() {
                    return Err(RepresentationError::Inconsistent(i, j));
                }
            }
        }
        Ok(BlockRepresentation { scale: m, source_dim, target_dim, entries, by_placement })
    }

    /// Scale 1, each simulator tile standing for the simulated tile with the
    /// same name. Simulator tiles without a namesake represent empty space.
    pub fn identity(simulator: &TileSystem, simulated: &TileSystem) -> Result<BlockRepresentation, RepresentationError> {
        let entries = simulator
            .tile_ids()
            .filter_map(|s| simulated.id(simulator.name(s)).map(|t| (Assembly::single(Pos::ORIGIN, s), t)))
            .collect();
        BlockRepresentation::new(1, simulator.dim(), simulated.dim(), entries)
    }

    pub fn scale(&self) -> u32 {
        self.scale as u32
    }

    pub fn source_dim(&self) -> Dim {
        self.source_dim
    }

    pub fn target_dim(&self) -> Dim {
        self.target_dim
    }

    pub fn entries(&self) -> &[(Assembly, TileId)] {
        &self.entries
    }

    /// The simulated tile a block stands for, if any.
    pub fn lookup(&self, block: &Assembly) -> Option<TileId> {
        block.iter().find_map(|key| {
            self.by_placement
                .get(&key)?
                .iter()
                .find(|&&i| self.entries[i].0.is_subassembly_of(block))
                .map(|&i| self.entries[i].1)
        })
    }

    /// Block containing simulator position `p`.
    pub fn block_index(&self, p: Pos) -> Pos {
        p.div_floor(self.scale)
    }

    /// Restriction of `assembly` to the block at `coords`, in block-local
    /// coordinates.
    pub fn block_at(&self, assembly: &Assembly, coords: Pos) -> Assembly {
        let origin = coords.scale(self.scale);
        let depth = if self.source_dim == Dim::Three { self.scale } else { 1 };
        let mut out = Assembly::new();
        for dz in 0..depth {
            for dy in 0..self.scale {
                for dx in 0..self.scale {
                    let local = Pos::new(dx, dy, dz);
                    if let Some(t) = assembly.get(origin + local) {
                        out.insert(local, t);
                    }
                }
            }
        }
        out
    }

    /// Every nonempty block of `assembly`, with its contents.
    pub fn blocks(&self, assembly: &Assembly) -> HashMap<Pos, Assembly> {
        let mut out: HashMap<Pos, Assembly> = HashMap::new();
        for (p, t) in assembly.iter() {
            out.entry(self.block_index(p)).or_default().insert(p.rem_floor(self.scale), t);
        }
        out
    }

    /// Target lattice point of a block, or `None` for blocks off the
    /// simulated plane when a 3D simulator represents a 2D system.
    fn target_of(&self, block: Pos) -> Option<Pos> {
        if self.source_dim == Dim::Three && self.target_dim == Dim::Two {
            (block.z == 0).then_some(Pos::xy(block.x, block.y))
        } else {
            Some(block)
        }
    }

    /// Projection of a simulator-lattice vector onto the simulated lattice.
    fn flatten(&self, v: Pos) -> Pos {
        if self.target_dim == Dim::Two {
            Pos::xy(v.x, v.y)
        } else {
            v
        }
    }

    /// The represented assembly `R*(assembly)`.
    pub fn represent(&self, assembly: &Assembly) -> Assembly {
        self.blocks(assembly)
            .into_iter()
            .filter_map(|(b, block)| Some((self.target_of(b)?, self.lookup(&block)?)))
            .collect()
    }

    /// Whether every nonempty block represents a tile or sits next to a
    /// represented position (never only diagonally). An assembly with at most
    /// one nonempty block is clean. On failure returns the offending block.
    pub fn maps_cleanly(&self, assembly: &Assembly) -> Result<(), Pos> {
        let blocks = self.blocks(assembly);
        if blocks.len() <= 1 {
            return Ok(());
        }
        let image = self.represent(assembly);
        let mut offsets = vec![Pos::ORIGIN];
        offsets.extend(self.source_dim.directions().iter().map(|d: &Direction| d.unit()));
        let mut keys: Vec<Pos> = blocks.into_keys().collect();
        keys.sort();
        for b in keys {
            let fb = self.flatten(b);
            if !offsets.iter().any(|&u| image.contains(fb + self.flatten(u))) {
                return Err(b);
            }
        }
        Ok(())
    }
}

/// Size bounds for the two explorations a check runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SimBound {
    pub simulated: usize,
    pub simulator: usize,
    pub budget: usize,
}

impl SimBound {
    pub fn new(simulated: usize, simulator: usize) -> SimBound {
        SimBound { simulated, simulator, budget: crate::explore::DEFAULT_NODE_BUDGET }
    }

    pub fn with_budget(self, budget: usize) -> SimBound {
        SimBound { budget, ..self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Clause {
    /// Represented producibles coincide.
    Productions,
    /// Represented terminals coincide.
    Terminals,
    /// Every simulator assembly maps cleanly.
    CleanMapping,
    /// Simulator steps map to simulated reachability.
    Follows,
    /// Every simulated branch stays reachable.
    Models,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Verdict {
    /// No violation within the explored bounds.
    Pass,
    /// A concrete violation was found.
    Fail,
    /// The bounds were too small to decide.
    Inconclusive,
}

/// One violation, or one question the bounds could not settle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Finding {
    pub clause: Clause,
    pub conclusive: bool,
    pub message: String,
    /// Simulator assemblies involved.
    #[serde(skip)]
    pub simulator: Vec<Assembly>,
    /// Simulated assemblies involved.
    #[serde(skip)]
    pub simulated: Vec<Assembly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimReport {
    pub bound: SimBound,
    /// Sizes up to which both explorations were exhaustive.
    pub explored: (usize, usize),
    pub findings: Vec<Finding>,
}

impl SimReport {
    fn new(bound: SimBound, explored: (usize, usize), mut findings: Vec<Finding>) -> SimReport {
        findings.sort();
        findings.dedup();
        SimReport { bound, explored, findings }
    }

    pub fn verdict(&self) -> Verdict {
        if self.findings.iter().any(|f| f.conclusive) {
            Verdict::Fail
        } else if self.findings.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.conclusive)
    }

    pub fn fails_clause(&self, clause: Clause) -> bool {
        self.failures().any(|f| f.clause == clause)
    }

    /// Combines two reports; the result does not depend on argument order.
    pub fn merge(&self, other: &SimReport) -> SimReport {
        let mut findings = self.findings.clone();
        findings.extend(other.findings.iter().cloned());
        let explored = (self.explored.0.min(other.explored.0), self.explored.1.min(other.explored.1));
        SimReport::new(self.bound, explored, findings)
    }
}

/// Explorations of both systems with every simulator assembly's image.
pub struct SimContext<'a> {
    pub simulated: &'a TileSystem,
    pub simulator: &'a TileSystem,
    pub rep: &'a BlockRepresentation,
    pub bound: SimBound,
    pub t: Exploration,
    pub s: Exploration,
    /// `images[i]` is the representation of simulator assembly `i`.
    pub images: Vec<Assembly>,
    /// Simulator assemblies that may have descendants past the bound.
    open: Vec<bool>,
    preimages: HashMap<Assembly, Vec<usize>>,
    t_limit: usize,
    s_limit: usize,
}

impl<'a> SimContext<'a> {
    pub fn new(
        simulated: &'a TileSystem,
        simulator: &'a TileSystem,
        rep: &'a BlockRepresentation,
        bound: SimBound,
    ) -> SimContext<'a> {
        let (t, s) = rayon::join(
            || explore(simulated, bound.simulated, bound.budget),
            || explore(simulator, bound.simulator, bound.budget),
        );
        let (t_limit, s_limit) = (t.complete_up_to(), s.complete_up_to());
        let images: Vec<Assembly> = s.assemblies.par_iter().map(|e| rep.represent(&e.assembly)).collect();
        let mut open = vec![false; s.len()];
        for i in (0..s.len()).rev() {
            let e = &s.assemblies[i];
            open[i] = if e.assembly.len() >= s_limit {
                !e.terminal
            } else {
                s.successors(i).iter().any(|&j| open[j])
            };
        }
        let mut preimages: HashMap<Assembly, Vec<usize>> = HashMap::new();
        for (i, img) in images.iter().enumerate() {
            if s.assemblies[i].assembly.len() <= s_limit {
                preimages.entry(img.clone()).or_default().push(i);
            }
        }
        SimContext { simulated, simulator, rep, bound, t, s, images, open, preimages, t_limit, s_limit }
    }

    fn simulator_indices(&self) -> impl ParallelIterator<Item = usize> + '_ {
        (0..self.s.len()).into_par_iter().filter(|&i| self.s.assemblies[i].assembly.len() <= self.s_limit)
    }

    fn simulated_indices(&self) -> Vec<usize> {
        (0..self.t.len()).filter(|&i| self.t.assemblies[i].assembly.len() <= self.t_limit).collect()
    }

    fn report(&self, findings: Vec<Finding>) -> SimReport {
        SimReport::new(self.bound, (self.t_limit, self.s_limit), findings)
    }

    fn any_open(&self) -> bool {
        self.open.iter().any(|&o| o)
    }

    pub fn equivalent_productions(&self) -> SimReport {
        let mut findings: Vec<Finding> = self
            .simulator_indices()
            .flat_map_iter(|i| {
                let a = &self.s.assemblies[i];
                let img = &self.images[i];
                let mut out = Vec::new();
                if !is_producible(self.simulated, img) {
                    out.push(Finding {
                        clause: Clause::Productions,
                        conclusive: true,
                        message: format!("simulator assembly #{i} represents an assembly the simulated system cannot produce"),
                        simulator: vec![a.assembly.clone()],
                        simulated: vec![img.clone()],
                    });
                } else if a.terminal && !is_terminal(self.simulated, img) {
                    out.push(Finding {
                        clause: Clause::Terminals,
                        conclusive: true,
                        message: format!("terminal simulator assembly #{i} represents a non-terminal assembly"),
                        simulator: vec![a.assembly.clone()],
                        simulated: vec![img.clone()],
                    });
                }
                if let Err(block) = self.rep.maps_cleanly(&a.assembly) {
                    out.push(Finding {
                        clause: Clause::CleanMapping,
                        conclusive: true,
                        message: format!("simulator assembly #{i} has fuzz in block {block} away from every represented tile"),
                        simulator: vec![a.assembly.clone()],
                        simulated: vec![img.clone()],
                    });
                }
                out
            })
            .collect();

        for i in self.simulated_indices() {
            let e = &self.t.assemblies[i];
            let pre = self.preimages.get(&e.assembly).map(Vec::as_slice).unwrap_or(&[]);
            if pre.is_empty() {
                findings.push(Finding {
                    clause: Clause::Productions,
                    conclusive: !self.any_open(),
                    message: format!("simulated assembly #{i} is not represented by any explored simulator assembly"),
                    simulator: vec![],
                    simulated: vec![e.assembly.clone()],
                });
                continue;
            }
            if e.terminal && !pre.iter().any(|&j| self.s.assemblies[j].terminal) {
                findings.push(Finding {
                    clause: Clause::Terminals,
                    conclusive: !pre.iter().any(|&j| self.open[j]),
                    message: format!("terminal simulated assembly #{i} has no terminal representative"),
                    simulator: vec![],
                    simulated: vec![e.assembly.clone()],
                });
            }
        }
        self.report(findings)
    }

    /// Checks every explored simulator step, then `samples` random multi-step
    /// pairs drawn with `rng_seed`.
    pub fn follows(&self, samples: usize, rng_seed: u64) -> SimReport {
        let violation = |i: usize, j: usize| -> Option<Finding> {
            let (a, b) = (&self.images[i], &self.images[j]);
            (a != b && !reaches(self.simulated, a, b)).then(|| Finding {
                clause: Clause::Follows,
                conclusive: true,
                message: format!("simulator assembly #{i} grows into #{j} but their images are not related by growth"),
                simulator: vec![self.s.assemblies[i].assembly.clone(), self.s.assemblies[j].assembly.clone()],
                simulated: vec![a.clone(), b.clone()],
            })
        };
        let mut findings: Vec<Finding> = self
            .simulator_indices()
            .flat_map_iter(|i| self.s.successors(i).iter().filter_map(|&j| violation(i, j)).collect::<Vec<_>>())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let candidates: Vec<usize> = self.simulator_indices().collect();
        for _ in 0..samples {
            if candidates.is_empty() {
                break;
            }
            let start = candidates[rng.gen_range(0..candidates.len())];
            let mut end = start;
            let steps = rng.gen_range(1..=8);
            for _ in 0..steps {
                let next = self.s.successors(end);
                if next.is_empty() {
                    break;
                }
                end = next[rng.gen_range(0..next.len())];
            }
            findings.extend(violation(start, end));
        }
        self.report(findings)
    }

    /// For each simulated assembly `α`, builds the largest family `Π` of its
    /// explored representatives that can reach a representative of every
    /// explored `β ⊒ α`, then checks that every representative of `α` that
    /// grows into a representative of `β` descends from some member of `Π`.
    ///
    /// Representatives whose reachability cannot be settled within the bound
    /// stay in `Π`; if the check relies on one of them the result is
    /// inconclusive.
    pub fn models(&self) -> SimReport {
        let ts = self.simulated_indices();
        let findings: Vec<Finding> = ts
            .par_iter()
            .flat_map_iter(|&ia| {
                let alpha = &self.t.assemblies[ia].assembly;
                let empty = Vec::new();
                let cands = self.preimages.get(alpha).unwrap_or(&empty);
                let betas: Vec<&Assembly> = ts
                    .iter()
                    .map(|&ib| &self.t.assemblies[ib].assembly)
                    .filter(|b| alpha.is_subassembly_of(b))
                    .collect();
                let grows_into = |a: usize, beta: &Assembly| {
                    self.preimages
                        .get(beta)
                        .is_some_and(|bs| bs.iter().any(|&b| self.s.assemblies[a].assembly.is_subassembly_of(&self.s.assemblies[b].assembly)))
                };
                let mut pi: Vec<usize> = Vec::new();
                let mut unverified: HashSet<usize> = HashSet::new();
                for &a in cands {
                    let mut keep = true;
                    for beta in &betas {
                        if !grows_into(a, beta) {
                            if self.open[a] {
                                unverified.insert(a);
                            } else {
                                keep = false;
                                break;
                            }
                        }
                    }
                    if keep {
                        pi.push(a);
                    }
                }
                let mut out = Vec::new();
                for beta in &betas {
                    for &a2 in cands {
                        if !grows_into(a2, beta) {
                            continue;
                        }
                        let a2_asm = &self.s.assemblies[a2].assembly;
                        let covering: Vec<usize> = pi
                            .iter()
                            .copied()
                            .filter(|&a| self.s.assemblies[a].assembly.is_subassembly_of(a2_asm))
                            .collect();
                        if covering.is_empty() {
                            out.push(Finding {
                                clause: Clause::Models,
                                conclusive: true,
                                message: format!(
                                    "simulator assembly #{a2} represents simulated #{ia} and grows toward a represented \
                                     extension, but descends from no representative that keeps every branch open"
                                ),
                                simulator: vec![a2_asm.clone()],
                                simulated: vec![alpha.clone(), (*beta).clone()],
                            });
                        } else if covering.iter().all(|a| unverified.contains(a)) {
                            out.push(Finding {
                                clause: Clause::Models,
                                conclusive: false,
                                message: format!("representatives of simulated #{ia} could not be followed to every extension within the bound"),
                                simulator: vec![a2_asm.clone()],
                                simulated: vec![alpha.clone()],
                            });
                        }
                    }
                }
                out
            })
            .collect();
        self.report(findings)
    }
}

pub fn check_equivalent_productions(
    simulated: &TileSystem,
    simulator: &TileSystem,
    rep: &BlockRepresentation,
    bound: SimBound,
) -> SimReport {
    SimContext::new(simulated, simulator, rep, bound).equivalent_productions()
}

pub fn check_follows(
    simulated: &TileSystem,
    simulator: &TileSystem,
    rep: &BlockRepresentation,
    bound: SimBound,
    samples: usize,
    rng_seed: u64,
) -> SimReport {
    SimContext::new(simulated, simulator, rep, bound).follows(samples, rng_seed)
}

pub fn check_models(
    simulated: &TileSystem,
    simulator: &TileSystem,
    rep: &BlockRepresentation,
    bound: SimBound,
) -> SimReport {
    SimContext::new(simulated, simulator, rep, bound).models()
}

/// All three checks over one pair of explorations.
pub fn check_simulates(
    simulated: &TileSystem,
    simulator: &TileSystem,
    rep: &BlockRepresentation,
    bound: SimBound,
) -> SimReport {
    let ctx = SimContext::new(simulated, simulator, rep, bound);
    let samples = 64;
    ctx.equivalent_productions()
        .merge(&ctx.follows(samples, crate::explore::DEFAULT_RNG_SEED))
        .merge(&ctx.models())
}
