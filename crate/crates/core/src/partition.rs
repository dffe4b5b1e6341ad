//! Discrete ε-partition chains and the skeleton-descent refuter.
//!
//! Everything here runs on integer grids, with one global convention: all
//! coordinates are scaled by 3 internally, so the fractional radii `ε/3`
//! and `4ε/3` become the integers `ε` and `4ε` and the working grid is the
//! input grid refined threefold. Neighborhoods written `N_r` are *open*
//! (strict sup-distance `< r`); this matches their set-theoretic
//! definition and is what keeps the separator nonempty — with closed
//! neighborhoods two admissible blocks at the minimum allowed distance can
//! swallow the gap between the two removed sides, leaving nothing between
//! them. Closed neighborhoods `N̄_r` appear only as virtual inflation of
//! candidate blocks in the refuter, via `d(x, N̄_s(U)) = max(0, d(x,U) − s)`.
//!
//! [`epsilon_partition_chain`] peels one axis per step: blocks of the
//! step's family are split by proximity to the positive face, their open
//! `ε/3`-neighborhoods and the `4ε/3` face collars are removed, and the
//! rest survives to the next level. Under the preconditions (ε < side/6,
//! families ε-disjoint and side/3-bounded) the final level is nonempty;
//! an empty final level is reported as a defect, never returned silently.
//!
//! [`skeleton_refute`] drives the same subtraction inside a shrinking cell
//! complex: at each scale `2^{k_j}` it inflates the candidate's family
//! `j`, removes its neighborhood, snaps the survivor set to the skeletons
//! of the grid cells it meets, and descends one skeleton dimension. After
//! all steps the surviving points carry the full divisibility profile of
//! the component, so any of them is an explicit lattice point missed by
//! every candidate block.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{a2_radii, structural_violations, CoverSpec};
use crate::space::{x_tau_member, Label, LatticePoint};

#[derive(Debug, Error)]
pub enum PartitionError {
    #[error("cube dimension must be 1..=3, got {0}")]
    BadDimension(usize),
    #[error("grid step must be a power of two dividing the side, got step {step} side {side}")]
    BadStep { step: i64, side: i64 },
    #[error("need one family per axis: {need} families, got {got}")]
    FamilyCount { need: usize, got: usize },
    #[error("epsilon {eps} must satisfy 0 < 6*eps < side = {side}")]
    EpsilonTooLarge { eps: i64, side: i64 },
    #[error("family {family} block {block} is empty")]
    EmptyBlock { family: usize, block: usize },
    #[error("family {family} block {block} point {point:?} is off-grid or outside the cube")]
    BadBlockPoint {
        family: usize,
        block: usize,
        point: Vec<i64>,
    },
    #[error(
        "family {family} is not {eps}-disjoint: blocks {block_a} and {block_b} at distance {distance}"
    )]
    NotDisjoint {
        family: usize,
        block_a: usize,
        block_b: usize,
        distance: u64,
        eps: i64,
    },
    #[error("family {family} block {block} has diameter {diameter}, limit side/3 = {limit}")]
    NotBounded {
        family: usize,
        block: usize,
        diameter: u64,
        limit: i64,
    },
    #[error("partition chain collapsed: level {level} is empty (discretization defect)")]
    ChainCollapsed { level: usize },
    #[error("labels of {0} dimensions are beyond the descent budget (max 3)")]
    LabelTooLarge(usize),
    #[error("bound {bound} must exceed 2^(k_m+1) = {min}")]
    BoundTooSmall { bound: u64, min: u64 },
    #[error("candidate radii {got:?} are not the dyadic radii {expected:?} of this label")]
    RadiiMismatch { expected: Vec<u64>, got: Vec<u64> },
    #[error("candidate bound {got} does not match the requested bound {expected}")]
    BoundMismatch { expected: u64, got: u64 },
    #[error("candidate block contains a point with label {0}, expected {1}")]
    WrongLabel(String, String),
    #[error("candidate families are structurally invalid: {0}")]
    CandidateInvalid(String),
    #[error("descent grid of about {0} points exceeds the budget {1}")]
    BudgetExceeded(u128, u128),
    #[error("skeleton descent emptied at step {step} (discretization defect)")]
    DescentCollapsed { step: usize },
    #[error("descent produced a covered witness {0:?} (internal defect)")]
    WitnessCovered(Vec<i64>),
}

/// The grid `(step·ℤ)^dim ∩ [0, side]^dim`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscreteCube {
    pub dim: usize,
    pub side: i64,
    pub step: i64,
}

impl DiscreteCube {
    pub fn validate(&self) -> Result<(), PartitionError> {
        if self.dim == 0 || self.dim > 3 {
            return Err(PartitionError::BadDimension(self.dim));
        }
        let step_ok = self.step > 0
            && self.step.count_ones() == 1
            && self.side > 0
            && self.side % self.step == 0;
        if !step_ok {
            return Err(PartitionError::BadStep {
                step: self.step,
                side: self.side,
            });
        }
        Ok(())
    }
}

/// A family of blocks over a cube grid; each block is a finite set of grid
/// points.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct GridFamily {
    pub blocks: Vec<Vec<Vec<i64>>>,
}

fn sup_dist_vec(a: &[i64], b: &[i64]) -> u64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.abs_diff(*y))
        .max()
        .unwrap_or(0)
}

/// A block in tripled coordinates with its bounding box.
struct ScaledBlock {
    pts: Vec<Vec<i64>>,
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl ScaledBlock {
    fn new(pts: Vec<Vec<i64>>) -> Self {
        let dim = pts[0].len();
        let mut lo = pts[0].clone();
        let mut hi = pts[0].clone();
        for p in &pts {
            for a in 0..dim {
                lo[a] = lo[a].min(p[a]);
                hi[a] = hi[a].max(p[a]);
            }
        }
        ScaledBlock { pts, lo, hi }
    }

    fn from_grid_block(block: &[Vec<i64>]) -> Self {
        Self::new(
            block
                .iter()
                .map(|p| p.iter().map(|c| 3 * c).collect())
                .collect(),
        )
    }

    fn bbox_dist(&self, x: &[i64]) -> u64 {
        let mut d = 0u64;
        for ((&xc, &lo), &hi) in x.iter().zip(&self.lo).zip(&self.hi) {
            let below = (lo - xc).max(0);
            let above = (xc - hi).max(0);
            d = d.max(below.max(above) as u64);
        }
        d
    }

    fn dist(&self, x: &[i64]) -> u64 {
        self.pts.iter().map(|p| sup_dist_vec(p, x)).min().unwrap()
    }

    /// `d(x, N̄_inflation(block)) < threshold`, with a bounding-box reject.
    fn inflated_within(&self, x: &[i64], inflation: u64, threshold: u64) -> bool {
        if self.bbox_dist(x).saturating_sub(inflation) >= threshold {
            return false;
        }
        self.dist(x).saturating_sub(inflation) < threshold
    }

    fn max_coord(&self, axis: usize) -> i64 {
        self.hi[axis]
    }

    fn diameter(&self) -> u64 {
        (0..self.lo.len())
            .map(|a| self.hi[a].abs_diff(self.lo[a]))
            .max()
            .unwrap_or(0)
    }
}

/// Per-step bookkeeping of one subtraction: which blocks were classified
/// near the positive face, and how much was removed.
#[derive(Debug, Clone, Serialize)]
pub struct ChainStep {
    pub axis: usize,
    pub near_plus_blocks: Vec<usize>,
    pub near_minus_blocks: Vec<usize>,
    pub removed_blocks_side: usize,
    pub removed_collars: usize,
    pub sides_disjoint: bool,
}

/// The levels `L_0 ⊇ L_1 ⊇ … ⊇ L_n` in tripled coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct ChainState {
    /// All coordinates in `levels` are multiplied by this factor (always 3).
    pub scale: i64,
    pub levels: Vec<Vec<Vec<i64>>>,
    pub steps: Vec<ChainStep>,
}

impl ChainState {
    pub fn final_level(&self) -> &[Vec<i64>] {
        self.levels.last().unwrap()
    }
}

struct SubtractParams<'a> {
    blocks: &'a [ScaledBlock],
    axis: usize,
    box_hi: i64,
    /// The step's ε in original units. In tripled coordinates the open
    /// neighborhood radius ε/3 becomes `eps`, the face collar 4ε/3
    /// becomes `4·eps`, and the near-face threshold 2ε becomes `6·eps`.
    eps: i64,
    inflation: i64,
}

/// One subtraction step: removes the open neighborhoods of the (virtually
/// inflated) blocks and the face collars along the axis. Coordinates and
/// `inflation` are tripled; `eps` is the original ε.
fn subtract_sides(current: &[Vec<i64>], p: &SubtractParams) -> (Vec<Vec<i64>>, ChainStep) {
    let near_threshold = (6 * p.eps) as u64;
    let mut near_plus = Vec::new();
    let mut near_minus = Vec::new();
    for (i, b) in p.blocks.iter().enumerate() {
        let face_dist = (p.box_hi - b.max_coord(p.axis)).max(0) as u64;
        if face_dist.saturating_sub(p.inflation as u64) <= near_threshold {
            near_plus.push(i);
        } else {
            near_minus.push(i);
        }
    }

    let mut survivors = Vec::new();
    let mut removed_blocks_side = 0usize;
    let mut removed_collars = 0usize;
    let mut plus_count = 0usize;
    let mut minus_count = 0usize;
    let mut overlap = false;
    for x in current {
        let in_plus_collar = p.box_hi - x[p.axis] < 4 * p.eps;
        let in_minus_collar = x[p.axis] < 4 * p.eps;
        let near_block = |ids: &[usize]| {
            ids.iter()
                .any(|&i| p.blocks[i].inflated_within(x, p.inflation as u64, p.eps as u64))
        };
        let plus = in_plus_collar || near_block(&near_plus);
        let minus = in_minus_collar || near_block(&near_minus);
        if plus {
            plus_count += 1;
        }
        if minus {
            minus_count += 1;
        }
        if plus && minus {
            overlap = true;
        }
        if !plus && !minus {
            survivors.push(x.clone());
        } else if in_plus_collar || in_minus_collar {
            removed_collars += 1;
        } else {
            removed_blocks_side += 1;
        }
    }
    let _ = (plus_count, minus_count);
    (
        survivors,
        ChainStep {
            axis: p.axis,
            near_plus_blocks: near_plus,
            near_minus_blocks: near_minus,
            removed_blocks_side,
            removed_collars,
            sides_disjoint: !overlap,
        },
    )
}

fn full_grid(dim: usize, hi: i64, step: i64) -> Vec<Vec<i64>> {
    let axis: Vec<i64> = (0..=(hi / step)).map(|m| m * step).collect();
    let mut out = Vec::with_capacity(axis.len().pow(dim as u32));
    let mut cursor = vec![0usize; dim];
    loop {
        out.push(cursor.iter().map(|&i| axis[i]).collect());
        let mut a = dim;
        loop {
            if a == 0 {
                return out;
            }
            a -= 1;
            cursor[a] += 1;
            if cursor[a] < axis.len() {
                break;
            }
            cursor[a] = 0;
        }
    }
}

fn validate_families(
    cube: &DiscreteCube,
    families: &[GridFamily],
    eps: i64,
) -> Result<Vec<Vec<ScaledBlock>>, PartitionError> {
    let limit = cube.side / 3;
    let mut scaled: Vec<Vec<ScaledBlock>> = Vec::with_capacity(families.len());
    for (fi, fam) in families.iter().enumerate() {
        let mut sb = Vec::with_capacity(fam.blocks.len());
        for (bi, block) in fam.blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(PartitionError::EmptyBlock {
                    family: fi,
                    block: bi,
                });
            }
            for pt in block {
                let ok = pt.len() == cube.dim
                    && pt
                        .iter()
                        .all(|&c| c >= 0 && c <= cube.side && c % cube.step == 0);
                if !ok {
                    return Err(PartitionError::BadBlockPoint {
                        family: fi,
                        block: bi,
                        point: pt.clone(),
                    });
                }
            }
            sb.push(ScaledBlock::from_grid_block(block));
        }
        for bi in 0..sb.len() {
            let diam = sb[bi].diameter() / 3;
            if 3 * diam > cube.side as u64 {
                return Err(PartitionError::NotBounded {
                    family: fi,
                    block: bi,
                    diameter: diam,
                    limit,
                });
            }
            for bj in (bi + 1)..sb.len() {
                let d = sb[bi]
                    .pts
                    .iter()
                    .flat_map(|p| sb[bj].pts.iter().map(move |q| sup_dist_vec(p, q)))
                    .min()
                    .unwrap()
                    / 3;
                if (d as i64) < eps {
                    return Err(PartitionError::NotDisjoint {
                        family: fi,
                        block_a: bi,
                        block_b: bj,
                        distance: d,
                        eps,
                    });
                }
            }
        }
        scaled.push(sb);
    }
    Ok(scaled)
}

/// Builds the full chain `L_0 ⊇ … ⊇ L_n` on the cube, one family per axis.
///
/// Preconditions: `0 < 6ε < side`, each family ε-disjoint and
/// side/3-bounded on the cube grid. Violations are reported with
/// witnesses. An empty final level is a discretization defect and comes
/// back as [`PartitionError::ChainCollapsed`].
pub fn epsilon_partition_chain(
    cube: &DiscreteCube,
    families: &[GridFamily],
    eps: i64,
) -> Result<ChainState, PartitionError> {
    cube.validate()?;
    if families.len() != cube.dim {
        return Err(PartitionError::FamilyCount {
            need: cube.dim,
            got: families.len(),
        });
    }
    if eps <= 0 || 6 * eps >= cube.side {
        return Err(PartitionError::EpsilonTooLarge {
            eps,
            side: cube.side,
        });
    }
    let scaled_families = validate_families(cube, families, eps)?;

    let box_hi = 3 * cube.side;
    let mut levels = vec![full_grid(cube.dim, box_hi, cube.step)];
    let mut steps = Vec::new();
    for (axis, blocks) in scaled_families.iter().enumerate() {
        let params = SubtractParams {
            blocks,
            axis,
            box_hi,
            eps,
            inflation: 0,
        };
        let (next, step) = subtract_sides(levels.last().unwrap(), &params);
        levels.push(next);
        steps.push(step);
    }
    if levels.last().unwrap().is_empty() {
        return Err(PartitionError::ChainCollapsed { level: cube.dim });
    }
    Ok(ChainState {
        scale: 3,
        levels,
        steps,
    })
}

/// Report of one descent produced by [`skeleton_refute`].
#[derive(Debug, Clone, Serialize)]
pub struct RefuteReport {
    pub witness: LatticePoint,
    pub side: i64,
    pub survivors: usize,
    pub steps: Vec<ChainStep>,
}

/// Produces an explicit point of the component missed by every block of
/// `candidate`, by descending through cell skeletons at the scales
/// `2^{k_m}, …, 2^{k_0}`.
///
/// The candidate must use the dyadic radii of the label, match `bound`,
/// and be structurally valid; those are precondition failures. An empty
/// survivor set mid-descent would contradict the separator machinery and
/// is reported as a defect.
pub fn skeleton_refute(
    label: &Label,
    bound: u64,
    candidate: &CoverSpec,
    point_budget: u128,
) -> Result<RefuteReport, PartitionError> {
    let shifts = label.shifts();
    let dim = label.dim();
    if dim > 3 {
        return Err(PartitionError::LabelTooLarge(dim));
    }
    let km = *shifts.last().unwrap();
    let min_bound = 1u64 << (km + 1);
    if bound <= min_bound {
        return Err(PartitionError::BoundTooSmall {
            bound,
            min: min_bound,
        });
    }
    let expected_radii = a2_radii(label);
    let got_radii = candidate.radii();
    if got_radii != expected_radii {
        return Err(PartitionError::RadiiMismatch {
            expected: expected_radii,
            got: got_radii,
        });
    }
    if candidate.bound != bound {
        return Err(PartitionError::BoundMismatch {
            expected: bound,
            got: candidate.bound,
        });
    }
    for fam in &candidate.families {
        for block in &fam.blocks {
            for p in block {
                if p.label() != label {
                    return Err(PartitionError::WrongLabel(
                        p.label().to_string(),
                        label.to_string(),
                    ));
                }
            }
        }
    }
    let structural = structural_violations(candidate);
    if let Some(v) = structural.first() {
        return Err(PartitionError::CandidateInvalid(format!("{v:?}")));
    }

    // pad the box side up to a multiple of 2^{k_m}
    let coarse = 1i64 << km;
    let mut side = 8 * bound as i64;
    if side % coarse != 0 {
        side += coarse - side % coarse;
    }
    let box_hi = 3 * side;
    let grid_points = (box_hi as u128 + 1).pow(dim as u32);
    if grid_points > point_budget {
        return Err(PartitionError::BudgetExceeded(grid_points, point_budget));
    }

    // scaled candidate blocks per family
    let scaled: Vec<Vec<ScaledBlock>> = candidate
        .families
        .iter()
        .map(|fam| {
            fam.blocks
                .iter()
                .map(|b| {
                    ScaledBlock::new(
                        b.iter()
                            .map(|p| p.coords().iter().map(|&c| 3 * c).collect())
                            .collect(),
                    )
                })
                .collect()
        })
        .collect();

    let mut current = full_grid(dim, box_hi, 1);
    let mut steps = Vec::new();
    for t in 1..=dim {
        let j = dim - t; // family and scale index, from k_m down to k_0
        let k = shifts[j];
        let eps = 1i64 << (k + 1);
        let params = SubtractParams {
            blocks: &scaled[j],
            axis: t - 1,
            box_hi,
            eps,
            inflation: 3 * (1i64 << k),
        };
        let (survivors, step) = subtract_sides(&current, &params);
        if survivors.is_empty() {
            return Err(PartitionError::DescentCollapsed { step: t });
        }
        steps.push(step);
        current = snap_to_skeleton(&current, &survivors, 3 * (1i64 << k), t, box_hi);
        if current.is_empty() {
            return Err(PartitionError::DescentCollapsed { step: t });
        }
    }

    // every survivor has all coordinates in 3·2^{k_0}·ℤ
    let witness_scaled = current[0].clone();
    let coords: Vec<i64> = witness_scaled.iter().map(|&c| c / 3).collect();
    debug_assert!(witness_scaled.iter().all(|&c| c % 3 == 0));
    debug_assert!(x_tau_member(label, &coords).unwrap_or(false));
    let witness = LatticePoint::new(label.clone(), coords)
        .map_err(|_| PartitionError::WitnessCovered(witness_scaled.clone()))?;
    if candidate.covers(&witness) {
        return Err(PartitionError::WitnessCovered(witness_scaled));
    }
    Ok(RefuteReport {
        witness,
        side,
        survivors: current.len(),
        steps,
    })
}

/// Keeps the points of `complex` that lie in a cell (side `c3`) meeting
/// `survivors` and sit on the cell skeleton of codimension ≥ `min_fixed`
/// (at least that many coordinates divisible by `c3`).
fn snap_to_skeleton(
    complex: &[Vec<i64>],
    survivors: &[Vec<i64>],
    c3: i64,
    min_fixed: usize,
    box_hi: i64,
) -> Vec<Vec<i64>> {
    use std::collections::HashSet;
    let max_cell = box_hi / c3 - 1;
    let dim = complex.first().map(|p| p.len()).unwrap_or(0);
    let cell_choices = |y: &[i64], choices: &mut Vec<Vec<i64>>| {
        for a in 0..dim {
            choices[a].clear();
            if y[a] % c3 == 0 {
                let v = y[a] / c3;
                if v > 0 {
                    choices[a].push(v - 1);
                }
                if v <= max_cell {
                    choices[a].push(v);
                }
            } else {
                choices[a].push(y[a].div_euclid(c3));
            }
        }
    };

    let mut cells: HashSet<Vec<i64>> = HashSet::new();
    let mut choices: Vec<Vec<i64>> = vec![Vec::new(); dim];
    for y in survivors {
        cell_choices(y, &mut choices);
        let mut idx = vec![0usize; dim];
        loop {
            cells.insert((0..dim).map(|a| choices[a][idx[a]]).collect());
            let mut a = dim;
            let mut done = true;
            loop {
                if a == 0 {
                    break;
                }
                a -= 1;
                idx[a] += 1;
                if idx[a] < choices[a].len() {
                    done = false;
                    break;
                }
                idx[a] = 0;
            }
            if done {
                break;
            }
        }
    }

    let mut out = Vec::new();
    'points: for x in complex {
        let fixed = (0..dim).filter(|&a| x[a] % c3 == 0).count();
        if fixed < min_fixed {
            continue;
        }
        cell_choices(x, &mut choices);
        let mut idx = vec![0usize; dim];
        loop {
            let cell: Vec<i64> = (0..dim).map(|a| choices[a][idx[a]]).collect();
            if cells.contains(&cell) {
                out.push(x.clone());
                continue 'points;
            }
            let mut a = dim;
            let mut done = true;
            loop {
                if a == 0 {
                    break;
                }
                a -= 1;
                idx[a] += 1;
                if idx[a] < choices[a].len() {
                    done = false;
                    break;
                }
                idx[a] = 0;
            }
            if done {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{greedy_cover, verify_cover, Violation};
    use crate::space::enumerate_x_tau;
    use crate::space::tests::label;

    fn line_family(blocks: &[&[i64]]) -> GridFamily {
        GridFamily {
            blocks: blocks
                .iter()
                .map(|b| b.iter().map(|&x| vec![x]).collect())
                .collect(),
        }
    }

    #[test]
    fn chain_1d_single_block() {
        let cube = DiscreteCube {
            dim: 1,
            side: 12,
            step: 1,
        };
        let fam = line_family(&[&[4, 5, 6]]);
        let chain = epsilon_partition_chain(&cube, &[fam], 1).unwrap();
        let last = chain.final_level();
        // exactly [4, 32] minus the scaled block points 12, 15, 18
        let expected: Vec<Vec<i64>> = (4..=32)
            .filter(|x| ![12, 15, 18].contains(x))
            .map(|x| vec![x])
            .collect();
        assert_eq!(last, expected.as_slice());
    }

    #[test]
    fn chain_1d_empty_family_leaves_interior() {
        let cube = DiscreteCube {
            dim: 1,
            side: 12,
            step: 1,
        };
        let chain = epsilon_partition_chain(&cube, &[GridFamily::default()], 1).unwrap();
        let last = chain.final_level();
        assert!(!last.is_empty());
        let min = last.iter().map(|x| x[0]).min().unwrap();
        let max = last.iter().map(|x| x[0]).max().unwrap();
        assert_eq!(min, 4); // first scaled point clear of the 4ε/3 collar
        assert_eq!(max, 32);
    }

    #[test]
    fn chain_2d_two_families() {
        let cube = DiscreteCube {
            dim: 2,
            side: 24,
            step: 1,
        };
        let fam1 = GridFamily {
            blocks: vec![
                (4..=8)
                    .flat_map(|x| (4..=8).map(move |y| vec![x, y]))
                    .collect(),
                (16..=20)
                    .flat_map(|x| (10..=14).map(move |y| vec![x, y]))
                    .collect(),
            ],
        };
        let fam2 = GridFamily {
            blocks: vec![(10..=14)
                .flat_map(|x| (16..=20).map(move |y| vec![x, y]))
                .collect()],
        };
        let chain = epsilon_partition_chain(&cube, &[fam1.clone(), fam2.clone()], 2).unwrap();
        assert!(!chain.final_level().is_empty());
        // nesting
        for w in chain.levels.windows(2) {
            let prev: std::collections::HashSet<&Vec<i64>> = w[0].iter().collect();
            assert!(w[1].iter().all(|x| prev.contains(x)));
        }
        // avoidance: level k+1 keeps strictly away from family k's blocks
        for (k, fam) in [fam1, fam2].iter().enumerate() {
            for x in &chain.levels[k + 1] {
                for block in &fam.blocks {
                    let d = block
                        .iter()
                        .map(|b| {
                            b.iter()
                                .zip(x)
                                .map(|(c, xc)| (3 * c - xc).unsigned_abs())
                                .max()
                                .unwrap()
                        })
                        .min()
                        .unwrap();
                    assert!(d > 0, "level {} point {:?} touches a block", k + 1, x);
                }
            }
        }
        // each step kept the two removed sides disjoint
        assert!(chain.steps.iter().all(|s| s.sides_disjoint));
    }

    #[test]
    fn chain_rejects_bad_instances() {
        let cube = DiscreteCube {
            dim: 1,
            side: 12,
            step: 1,
        };
        assert!(matches!(
            epsilon_partition_chain(&cube, &[GridFamily::default()], 2),
            Err(PartitionError::EpsilonTooLarge { eps: 2, side: 12 })
        ));
        // blocks at distance 1 in a family that claims 2-disjointness
        let fam = line_family(&[&[4], &[5]]);
        let cube = DiscreteCube {
            dim: 1,
            side: 13,
            step: 1,
        };
        assert!(matches!(
            epsilon_partition_chain(&cube, &[fam], 2),
            Err(PartitionError::NotDisjoint { distance: 1, .. })
        ));
        // block too fat
        let fam = line_family(&[&[0, 1, 2, 3, 4, 5, 6]]);
        assert!(matches!(
            epsilon_partition_chain(&cube, &[fam], 2),
            Err(PartitionError::NotBounded { diameter: 6, .. })
        ));
    }

    #[test]
    fn refute_1d_gap_witness() {
        let tau = label(&[2]);
        let pts = enumerate_x_tau(&tau, &[(0, 64)]).unwrap();
        let candidate = greedy_cover(&pts, &[4], 8, 7);
        let report = skeleton_refute(&tau, 8, &candidate, 50_000_000).unwrap();
        let w = &report.witness;
        // cross-check against the exhaustive uncovered scan
        let uncovered: Vec<_> = pts.iter().filter(|p| !candidate.covers(p)).collect();
        assert!(uncovered.contains(&w), "witness {w:?} not in uncovered set");
        // the witness sits at distance >= 1 from every block
        for fam in &candidate.families {
            for block in &fam.blocks {
                for p in block {
                    assert!(crate::space::d_xi(w, p) >= 1);
                }
            }
        }
    }

    #[test]
    fn refute_2d_witness_verifies() {
        let tau = label(&[2, 3]);
        let pts = enumerate_x_tau(&tau, &[(0, 64), (0, 64)]).unwrap();
        for seed in 0..3u64 {
            let candidate = greedy_cover(&pts, &[4, 8], 8, seed);
            let report = skeleton_refute(&tau, 8, &candidate, 50_000_000).unwrap();
            let w = report.witness.clone();
            let verdict = verify_cover(&candidate, std::slice::from_ref(&w));
            assert!(
                verdict
                    .violations
                    .iter()
                    .any(|v| matches!(v, Violation::Coverage { point } if *point == w)),
                "seed {seed}: witness {w:?} is covered"
            );
        }
    }

    #[test]
    fn refute_rejects_relaxed_radii() {
        let tau = label(&[2]);
        let pts = enumerate_x_tau(&tau, &[(0, 64)]).unwrap();
        let relaxed = greedy_cover(&pts, &[1], 8, 0);
        assert!(matches!(
            skeleton_refute(&tau, 8, &relaxed, 50_000_000),
            Err(PartitionError::RadiiMismatch { .. })
        ));
    }
}
