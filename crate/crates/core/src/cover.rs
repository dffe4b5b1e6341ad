//! Verification and search for r-disjoint uniformly bounded covers.
//!
//! A [`CoverSpec`] is a list of block families: within family `i` distinct
//! blocks must be at distance ≥ `rᵢ` under the union metric, every block
//! must have diameter ≤ `bound`, and together the blocks must cover the
//! point set under test. [`verify_cover`] checks all three conditions and
//! reports the first witness of each failure kind.
//!
//! [`search_cover`] decides existence. The exhaustive engine searches over
//! assignments of points to families rather than to individual blocks: if
//! two points of the same family lie at distance < `rᵢ` they are forced
//! into the same block, so a family's blocks are exactly the connected
//! components of its point set under the "distance < rᵢ" relation, and an
//! assignment is feasible iff every component has diameter ≤ `bound`.
//! This makes the search canonical (no block-numbering symmetry) while
//! deciding exactly the same question. A `NoCover` answer from the
//! exhaustive engine is authoritative for the given point set; removing
//! points can only make covering easier, so `NoCover` on a subset is also
//! authoritative for any superset.
//!
//! [`a2_check`] instantiates the dyadic-radii question for one lattice
//! component: radii `2^{k_j+2}`, points `X_τ ∩ [0, 8B]^{m+1}`. It certifies
//! `noCover` by exhausting a monotone ladder of restrictions (coarse
//! sublattice boxes, then full boxes) and stops at the first authoritative
//! `NoCover`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::space::{d_xi, enumerate_x_tau, Label, LatticePoint, SpaceError};

#[derive(Debug, Error)]
pub enum CoverError {
    #[error("at least one family radius is required")]
    EmptyRadii,
    #[error("family radii and bound must be >= 1")]
    ZeroParameter,
    #[error("at most 32 families supported, got {0}")]
    TooManyFamilies(usize),
    #[error("mixed-label exhaustive search capped at {MAX_MIXED_POINTS} points, got {0}")]
    MixedTooLarge(usize),
    #[error("single-label exhaustive search capped at {MAX_SINGLE_LABEL_POINTS} points, got {0}")]
    SingleLabelTooLarge(usize),
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("bound {bound} must exceed 2^(k_m+1) = {min}")]
    BoundTooSmall { bound: u64, min: u64 },
    #[error(transparent)]
    Space(#[from] SpaceError),
}

pub const MAX_MIXED_POINTS: usize = 40;
pub const MAX_SINGLE_LABEL_POINTS: usize = 200_000;
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// One r-disjoint family of blocks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockFamily {
    pub radius: u64,
    pub blocks: Vec<Vec<LatticePoint>>,
}

/// A candidate cover: families with declared radii and a common diameter
/// bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverSpec {
    pub bound: u64,
    pub families: Vec<BlockFamily>,
}

impl CoverSpec {
    pub fn radii(&self) -> Vec<u64> {
        self.families.iter().map(|f| f.radius).collect()
    }

    pub fn block_count(&self) -> usize {
        self.families.iter().map(|f| f.blocks.len()).sum()
    }

    /// True iff some block contains the point.
    pub fn covers(&self, p: &LatticePoint) -> bool {
        self.families
            .iter()
            .any(|f| f.blocks.iter().any(|b| b.contains(p)))
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Disjointness {
        family: usize,
        block_a: usize,
        block_b: usize,
        point_a: LatticePoint,
        point_b: LatticePoint,
        distance: u64,
        radius: u64,
    },
    Diameter {
        family: usize,
        block: usize,
        point_a: LatticePoint,
        point_b: LatticePoint,
        diameter: u64,
        bound: u64,
    },
    Coverage {
        point: LatticePoint,
    },
    EmptyBlock {
        family: usize,
        block: usize,
    },
}

/// Outcome of [`verify_cover`]: empty violation list means the spec is a
/// genuine cover of the point set.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn block_min_dist(a: &[LatticePoint], b: &[LatticePoint]) -> (u64, usize, usize) {
    let mut best = (u64::MAX, 0, 0);
    for (i, p) in a.iter().enumerate() {
        for (j, q) in b.iter().enumerate() {
            let d = d_xi(p, q);
            if d < best.0 {
                best = (d, i, j);
            }
        }
    }
    best
}

fn block_diameter(b: &[LatticePoint]) -> (u64, usize, usize) {
    let mut worst = (0, 0, 0);
    for i in 0..b.len() {
        for j in (i + 1)..b.len() {
            let d = d_xi(&b[i], &b[j]);
            if d > worst.0 {
                worst = (d, i, j);
            }
        }
    }
    worst
}

/// Checks structural validity of the families (disjointness radii, diameter
/// bound) and coverage of `points`. Reports the first witness of each
/// failure kind.
pub fn verify_cover(spec: &CoverSpec, points: &[LatticePoint]) -> Verdict {
    let mut violations = Vec::new();
    violations.extend(structural_violations(spec));
    if let Some(p) = points.iter().find(|p| !spec.covers(p)) {
        violations.push(Violation::Coverage { point: p.clone() });
    }
    Verdict { violations }
}

/// Disjointness and diameter checks only (no coverage requirement).
pub fn structural_violations(spec: &CoverSpec) -> Vec<Violation> {
    let mut violations = Vec::new();
    'disjoint: for (fi, fam) in spec.families.iter().enumerate() {
        for bi in 0..fam.blocks.len() {
            if fam.blocks[bi].is_empty() {
                violations.push(Violation::EmptyBlock {
                    family: fi,
                    block: bi,
                });
                break 'disjoint;
            }
            for bj in (bi + 1)..fam.blocks.len() {
                let (d, i, j) = block_min_dist(&fam.blocks[bi], &fam.blocks[bj]);
                if d < fam.radius {
                    violations.push(Violation::Disjointness {
                        family: fi,
                        block_a: bi,
                        block_b: bj,
                        point_a: fam.blocks[bi][i].clone(),
                        point_b: fam.blocks[bj][j].clone(),
                        distance: d,
                        radius: fam.radius,
                    });
                    break 'disjoint;
                }
            }
        }
    }
    'diam: for (fi, fam) in spec.families.iter().enumerate() {
        for (bi, block) in fam.blocks.iter().enumerate() {
            if block.is_empty() {
                continue;
            }
            let (d, i, j) = block_diameter(block);
            if d > spec.bound {
                violations.push(Violation::Diameter {
                    family: fi,
                    block: bi,
                    point_a: block[i].clone(),
                    point_b: block[j].clone(),
                    diameter: d,
                    bound: spec.bound,
                });
                break 'diam;
            }
        }
    }
    violations
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Greedy { seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Cover {
        spec: CoverSpec,
        nodes: u64,
    },
    /// Exhaustive mode only: no assignment exists. Authoritative for the
    /// searched point set and every superset of it.
    NoCover {
        nodes: u64,
    },
    /// Greedy mode failed to cover; existence remains open.
    Inconclusive {
        uncovered: usize,
    },
}

/// Decides whether `points` admits a cover by `radii.len()` families with
/// the given disjointness radii and diameter bound.
pub fn search_cover(
    points: &[LatticePoint],
    radii: &[u64],
    bound: u64,
    mode: SearchMode,
    node_budget: u64,
) -> Result<SearchOutcome, CoverError> {
    if radii.is_empty() {
        return Err(CoverError::EmptyRadii);
    }
    if radii.len() > 32 {
        return Err(CoverError::TooManyFamilies(radii.len()));
    }
    if bound == 0 || radii.contains(&0) {
        return Err(CoverError::ZeroParameter);
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    match mode {
        SearchMode::Exhaustive => {
            let single = pts.windows(2).all(|w| w[0].label() == w[1].label());
            if single && pts.len() > MAX_SINGLE_LABEL_POINTS {
                return Err(CoverError::SingleLabelTooLarge(pts.len()));
            }
            if !single && pts.len() > MAX_MIXED_POINTS {
                return Err(CoverError::MixedTooLarge(pts.len()));
            }
            let mut engine = Engine::new(&pts, radii, bound, node_budget);
            match engine.run()? {
                true => Ok(SearchOutcome::Cover {
                    spec: engine.extract_spec(),
                    nodes: engine.nodes,
                }),
                false => Ok(SearchOutcome::NoCover {
                    nodes: engine.nodes,
                }),
            }
        }
        SearchMode::Greedy { seed } => {
            let spec = greedy_cover(&pts, radii, bound, seed);
            let uncovered = pts.iter().filter(|p| !spec.covers(p)).count();
            if uncovered == 0 {
                Ok(SearchOutcome::Cover { spec, nodes: 0 })
            } else {
                Ok(SearchOutcome::Inconclusive { uncovered })
            }
        }
    }
}

struct Component {
    members: Vec<u32>,
    active: bool,
    // single-label: exact bounding box; diameter = max axis extent
    lo: Vec<i64>,
    hi: Vec<i64>,
    // mixed-label: exact diameter maintained pairwise
    diam: u64,
}

enum Event {
    Assigned {
        point: u32,
        family: u8,
        absorbed: Vec<u32>,
    },
    DomainRemoved {
        point: u32,
        family: u8,
    },
}

/// Result of a feasible simulated merge.
struct MergePlan {
    absorbed: Vec<u32>,
    lo: Vec<i64>,
    hi: Vec<i64>,
    diam: u64,
}

/// Backtracking engine over point→family assignments with forward
/// checking. A family choice for a point is *viable* when merging the
/// point with every component of that family within its radius stays
/// inside the diameter bound. Components only grow along a branch, so a
/// choice that is non-viable now stays non-viable deeper in the branch;
/// per-point domains of viable families therefore only shrink and their
/// removals are sound prunings. Points whose domain becomes a singleton
/// are assigned immediately (unit propagation); an empty domain forces a
/// backtrack. Branching picks an unassigned point with the smallest
/// domain, ties broken by index, so runs are deterministic.
struct Engine<'a> {
    points: &'a [LatticePoint],
    radii: &'a [u64],
    bound: u64,
    single_label: bool,
    assignment: Vec<Option<u8>>,
    root_of: Vec<u32>,
    comps: Vec<Component>,
    domains: Vec<u32>,
    fam_points: Vec<Vec<u32>>,
    trail: Vec<Event>,
    unassigned: usize,
    nodes: u64,
    budget: u64,
}

impl<'a> Engine<'a> {
    fn new(points: &'a [LatticePoint], radii: &'a [u64], bound: u64, budget: u64) -> Self {
        let single_label = points.windows(2).all(|w| w[0].label() == w[1].label());
        let full_mask = u32::MAX >> (32 - radii.len());
        Engine {
            points,
            radii,
            bound,
            single_label,
            assignment: vec![None; points.len()],
            root_of: vec![u32::MAX; points.len()],
            comps: Vec::new(),
            domains: vec![full_mask; points.len()],
            fam_points: vec![Vec::new(); radii.len()],
            trail: Vec::new(),
            unassigned: points.len(),
            nodes: 0,
            budget,
        }
    }

    fn run(&mut self) -> Result<bool, CoverError> {
        if self.points.is_empty() {
            return Ok(true);
        }
        self.dfs()
    }

    /// Burns one unit of the work budget. Units are branch attempts and
    /// merge previews, so the budget bounds wall time rather than just
    /// tree size.
    fn charge(&mut self) -> Result<(), CoverError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(CoverError::BudgetExceeded { nodes: self.nodes })
        } else {
            Ok(())
        }
    }

    fn dfs(&mut self) -> Result<bool, CoverError> {
        if self.unassigned == 0 {
            return Ok(true);
        }
        // most-constrained unassigned point, smallest index on ties
        let mut pick = u32::MAX;
        let mut best = u32::MAX;
        for (i, d) in self.domains.iter().enumerate() {
            if self.assignment[i].is_none() {
                let size = d.count_ones();
                if size < best {
                    best = size;
                    pick = i as u32;
                    if size <= 1 {
                        break;
                    }
                }
            }
        }
        let p = pick;
        for f in 0..self.radii.len() as u8 {
            if self.domains[p as usize] & (1 << f) == 0 {
                continue;
            }
            self.charge()?;
            let mark = self.trail.len();
            if self.assign_and_propagate(p, f)? && self.dfs()? {
                return Ok(true);
            }
            self.rollback(mark);
        }
        Ok(false)
    }

    /// Simulated merge of `p` into family `f`: the components to absorb
    /// and the resulting diameter, or `None` when it breaks the bound.
    fn merge_preview(&self, p: u32, f: u8) -> Option<MergePlan> {
        let radius = self.radii[f as usize];
        let pt = &self.points[p as usize];
        let mut absorbed: Vec<u32> = Vec::new();
        for &q in &self.fam_points[f as usize] {
            let root = self.root_of[q as usize];
            if absorbed.contains(&root) {
                continue;
            }
            if d_xi(pt, &self.points[q as usize]) < radius {
                absorbed.push(root);
            }
        }
        if self.single_label {
            let dim = pt.coords().len();
            let mut lo = pt.coords().to_vec();
            let mut hi = pt.coords().to_vec();
            for &c in &absorbed {
                for a in 0..dim {
                    lo[a] = lo[a].min(self.comps[c as usize].lo[a]);
                    hi[a] = hi[a].max(self.comps[c as usize].hi[a]);
                }
            }
            let extent = (0..dim).map(|a| hi[a].abs_diff(lo[a])).max().unwrap_or(0);
            if extent > self.bound {
                None
            } else {
                Some(MergePlan {
                    absorbed,
                    lo,
                    hi,
                    diam: extent,
                })
            }
        } else {
            let mut diam = 0u64;
            let mut all: Vec<u32> = vec![p];
            for &c in &absorbed {
                diam = diam.max(self.comps[c as usize].diam);
                all.extend_from_slice(&self.comps[c as usize].members);
            }
            for i in 0..all.len() {
                for j in (i + 1)..all.len() {
                    diam = diam.max(d_xi(
                        &self.points[all[i] as usize],
                        &self.points[all[j] as usize],
                    ));
                }
            }
            if diam > self.bound {
                None
            } else {
                Some(MergePlan {
                    absorbed,
                    lo: Vec::new(),
                    hi: Vec::new(),
                    diam,
                })
            }
        }
    }

    /// Assigns `p` to `f`, then propagates: any unassigned point near the
    /// merged component is rechecked, non-viable families are removed from
    /// its domain, and forced points are assigned in turn. `Ok(false)`
    /// means conflict; the caller rolls the trail back.
    fn assign_and_propagate(&mut self, p: u32, f: u8) -> Result<bool, CoverError> {
        let mut queue: Vec<(u32, u8)> = vec![(p, f)];
        while let Some((q, qf)) = queue.pop() {
            if let Some(cur) = self.assignment[q as usize] {
                if cur == qf {
                    continue;
                }
                return Ok(false);
            }
            self.charge()?;
            let Some(plan) = self.merge_preview(q, qf) else {
                return Ok(false);
            };
            let id = self.commit(q, qf, plan);

            // recheck unassigned points near the merged component
            let radius = self.radii[qf as usize];
            let merged: Vec<u32> = self.comps[id as usize].members.clone();
            for u in 0..self.points.len() as u32 {
                if self.assignment[u as usize].is_some()
                    || self.domains[u as usize] & (1 << qf) == 0
                {
                    continue;
                }
                let near = merged
                    .iter()
                    .any(|&m| d_xi(&self.points[u as usize], &self.points[m as usize]) < radius);
                if !near {
                    continue;
                }
                self.charge()?;
                if self.merge_preview(u, qf).is_none() {
                    self.domains[u as usize] &= !(1 << qf);
                    self.trail.push(Event::DomainRemoved {
                        point: u,
                        family: qf,
                    });
                    let left = self.domains[u as usize];
                    if left == 0 {
                        return Ok(false);
                    }
                    if left.count_ones() == 1 {
                        queue.push((u, left.trailing_zeros() as u8));
                    }
                }
            }
        }
        Ok(true)
    }

    fn commit(&mut self, p: u32, f: u8, plan: MergePlan) -> u32 {
        let MergePlan {
            absorbed,
            lo,
            hi,
            diam,
        } = plan;
        let mut members = vec![p];
        for &c in &absorbed {
            self.comps[c as usize].active = false;
            members.extend_from_slice(&self.comps[c as usize].members);
        }
        let id = self.comps.len() as u32;
        for &m in &members {
            self.root_of[m as usize] = id;
        }
        self.comps.push(Component {
            members,
            active: true,
            lo,
            hi,
            diam,
        });
        self.assignment[p as usize] = Some(f);
        self.fam_points[f as usize].push(p);
        self.unassigned -= 1;
        self.trail.push(Event::Assigned {
            point: p,
            family: f,
            absorbed,
        });
        id
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Event::Assigned {
                    point,
                    family,
                    absorbed,
                } => {
                    let comp = self.comps.pop().expect("component arena out of sync");
                    debug_assert_eq!(comp.members[0], point);
                    self.assignment[point as usize] = None;
                    self.root_of[point as usize] = u32::MAX;
                    let popped = self.fam_points[family as usize].pop();
                    debug_assert_eq!(popped, Some(point));
                    self.unassigned += 1;
                    for &c in &absorbed {
                        self.comps[c as usize].active = true;
                        for mi in 0..self.comps[c as usize].members.len() {
                            let m = self.comps[c as usize].members[mi];
                            self.root_of[m as usize] = c;
                        }
                    }
                }
                Event::DomainRemoved { point, family } => {
                    self.domains[point as usize] |= 1 << family;
                }
            }
        }
    }

    /// Reads the current assignment back as an explicit cover.
    fn extract_spec(&self) -> CoverSpec {
        let mut families: Vec<BlockFamily> = self
            .radii
            .iter()
            .map(|&radius| BlockFamily {
                radius,
                blocks: Vec::new(),
            })
            .collect();
        for comp in self.comps.iter().filter(|c| c.active) {
            let f = self.assignment[comp.members[0] as usize].expect("active component unassigned");
            let mut block: Vec<LatticePoint> = comp
                .members
                .iter()
                .map(|&m| self.points[m as usize].clone())
                .collect();
            block.sort();
            families[f as usize].blocks.push(block);
        }
        for fam in &mut families {
            fam.blocks.sort();
        }
        CoverSpec {
            bound: self.bound,
            families,
        }
    }
}

/// Best-effort cover construction: seeded random point order, first block
/// that accepts each point. The produced families are always structurally
/// valid (r-disjoint, diameter-bounded); coverage may be partial, which
/// [`verify_cover`] reports as a coverage violation.
pub fn greedy_cover(points: &[LatticePoint], radii: &[u64], bound: u64, seed: u64) -> CoverSpec {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.shuffle(&mut rng);

    // per family: blocks as index lists
    let mut blocks: Vec<Vec<Vec<usize>>> = vec![Vec::new(); radii.len()];
    for &pi in &order {
        let p = &points[pi];
        let mut family_order: Vec<usize> = (0..radii.len()).collect();
        if radii.len() > 1 && rng.random::<bool>() {
            family_order.reverse();
        }
        'fam: for &f in &family_order {
            let radius = radii[f];
            // join an existing block when diameter and disjointness allow
            'blk: for bi in 0..blocks[f].len() {
                for &qi in &blocks[f][bi] {
                    if d_xi(p, &points[qi]) > bound {
                        continue 'blk;
                    }
                }
                for (oi, other) in blocks[f].iter().enumerate() {
                    if oi == bi {
                        continue;
                    }
                    if other.iter().any(|&qi| d_xi(p, &points[qi]) < radius) {
                        continue 'blk;
                    }
                }
                blocks[f][bi].push(pi);
                break 'fam;
            }
            // or open a new block if far enough from every existing one
            let clear = blocks[f]
                .iter()
                .all(|b| b.iter().all(|&qi| d_xi(p, &points[qi]) >= radius));
            if clear {
                blocks[f].push(vec![pi]);
                break 'fam;
            }
        }
    }

    CoverSpec {
        bound,
        families: radii
            .iter()
            .zip(blocks)
            .map(|(&radius, bs)| BlockFamily {
                radius,
                blocks: bs
                    .into_iter()
                    .map(|b| {
                        let mut block: Vec<LatticePoint> =
                            b.into_iter().map(|i| points[i].clone()).collect();
                        block.sort();
                        block
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// Which restriction of the full truncation certified a `NoCover`.
#[derive(Debug, Clone, Serialize)]
pub struct A2Certificate {
    pub side: i64,
    pub coarse: bool,
    pub points: usize,
    pub nodes: u64,
    pub radii: Vec<u64>,
    pub bound: u64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum A2Outcome {
    /// The dyadic-radii instance admits no cover; certified on the stated
    /// restriction, hence on the full truncation.
    NoCover(A2Certificate),
    /// The full truncation is covered.
    Cover {
        spec: CoverSpec,
    },
    Inconclusive,
}

/// The dyadic radii `2^{k_j+2}` for a label.
pub fn a2_radii(label: &Label) -> Vec<u64> {
    label.shifts().iter().map(|&k| 1u64 << (k + 2)).collect()
}

/// Decides the dyadic-radii covering question for `X_τ ∩ [0, 8·bound]^{m+1}`.
///
/// Works up a ladder of restrictions of the full point set: boxes
/// `[0, s]^{m+1}` intersected first with the coarse sublattice
/// `(2^{k_m}ℤ)^{m+1}` and then with the full component. A `NoCover` on any
/// restriction is authoritative for the full truncation. Each rung gets the
/// stated node budget; rungs that exceed it are skipped.
pub fn a2_check(label: &Label, bound: u64, node_budget: u64) -> Result<A2Outcome, CoverError> {
    let shifts = label.shifts();
    let km = *shifts.last().unwrap();
    let min_bound = 1u64 << (km + 1);
    if bound <= min_bound {
        return Err(CoverError::BoundTooSmall {
            bound,
            min: min_bound,
        });
    }
    let radii = a2_radii(label);
    let full_side = 8 * bound as i64;
    let dim = label.dim();

    let mut sides: Vec<i64> = [2, 3, 4, 6, 8]
        .iter()
        .map(|&m| m * bound as i64)
        .filter(|&s| s <= full_side)
        .collect();
    if sides.last() != Some(&full_side) {
        sides.push(full_side);
    }

    let coarse_step = 1i64 << km;
    let mut rungs: Vec<(i64, bool)> = Vec::new();
    if dim > 1 {
        for &s in &sides {
            rungs.push((s, true));
        }
    }
    for &s in &sides {
        rungs.push((s, false));
    }

    for (side, coarse) in rungs {
        let bounds = vec![(0i64, side); dim];
        let mut pts = enumerate_x_tau(label, &bounds)?;
        if coarse {
            pts.retain(|p| p.coords().iter().all(|&c| c % coarse_step == 0));
        }
        if pts.len() > MAX_SINGLE_LABEL_POINTS {
            continue;
        }
        match search_cover(&pts, &radii, bound, SearchMode::Exhaustive, node_budget) {
            Ok(SearchOutcome::NoCover { nodes }) => {
                return Ok(A2Outcome::NoCover(A2Certificate {
                    side,
                    coarse,
                    points: pts.len(),
                    nodes,
                    radii,
                    bound,
                }));
            }
            Ok(SearchOutcome::Cover { spec, nodes: _ }) => {
                if side == full_side && !coarse {
                    return Ok(A2Outcome::Cover { spec });
                }
            }
            Ok(SearchOutcome::Inconclusive { .. }) => {}
            Err(CoverError::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(A2Outcome::Inconclusive)
}
