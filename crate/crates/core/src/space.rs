//! Labelled lattice components and their metrics.
//!
//! A [`Label`] is a finite set over the shifted alphabet {3, 4, …}; writing
//! its elements as `k₀+2 < … < k_m+2`, the component `X_τ` consists of the
//! integer vectors `x ∈ (2^{k₀}ℤ)^{m+1}` whose divisibility profile is
//! controlled level by level: for every `p`, at most `p` coordinates may
//! escape `2^{k_p}ℤ`. Each component carries the sup-metric.
//!
//! Points of different components are compared through the embedding into
//! finitely supported integer sequences: the distance is then the maximum
//! of the two label weights `2^{max τ}` and the sup-distance of the
//! embeddings. All arithmetic is exact.

use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finfam::FinSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpaceError {
    #[error("label elements must be >= 2, got {0}")]
    BelowAlphabet(u32),
    #[error("label elements must be <= 62 to keep weights in u64, got {0}")]
    WeightOverflow(u32),
    #[error("coordinate vector has length {got}, label needs {need}")]
    DimensionMismatch { need: usize, got: usize },
    #[error("coordinates {coords:?} violate the divisibility profile of label {label}")]
    NotInComponent { label: String, coords: Vec<i64> },
    #[error("points have different labels {0} and {1}")]
    LabelMismatch(String, String),
    #[error("enumeration box needs {need} axes, got {got}")]
    BoxDimensionMismatch { need: usize, got: usize },
    #[error("enumeration budget exceeded: about {0} candidate points (max {MAX_ENUMERATION})")]
    EnumerationBudget(u128),
    #[error("empty axis interval {lo}:{hi}")]
    EmptyInterval { lo: i64, hi: i64 },
    #[error("malformed point line: {0}")]
    ParsePoint(String),
    #[error("io error: {0}")]
    Io(String),
}

pub const MAX_ENUMERATION: u128 = 10_000_000;

/// Component label: a finite set over {2, …, 62}. Element `k+2` contributes
/// the exponent `k ≥ 0`. Labels drawn from a shifted family additionally
/// have all elements ≥ 3; that stronger check lives in
/// [`crate::sfamily::s_member_shifted`] and is applied when a label is
/// validated against a family, not here.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Label(FinSet);

impl Label {
    pub fn new(elements: FinSet) -> Result<Self, SpaceError> {
        if elements.min_elem() < 2 {
            return Err(SpaceError::BelowAlphabet(elements.min_elem()));
        }
        if elements.max_elem() > 62 {
            return Err(SpaceError::WeightOverflow(elements.max_elem()));
        }
        Ok(Label(elements))
    }

    pub fn from_elements(elements: &[u32]) -> Result<Self, SpaceError> {
        let fs = FinSet::new(elements.to_vec())
            .map_err(|_| SpaceError::BelowAlphabet(elements.first().copied().unwrap_or(0)))?;
        Self::new(fs)
    }

    pub fn as_finset(&self) -> &FinSet {
        &self.0
    }

    /// The exponents `k₀ < … < k_m` (elements shifted down by 2).
    pub fn shifts(&self) -> Vec<u32> {
        self.0.elements().iter().map(|&e| e - 2).collect()
    }

    /// Number of coordinates of the component, `m + 1`.
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Weight `2^{max element}` used by the union metric.
    pub fn weight(&self) -> u64 {
        1u64 << self.0.max_elem()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.elements().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "label[{self}]")
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let fs = FinSet::deserialize(deserializer)?;
        Label::new(fs).map_err(serde::de::Error::custom)
    }
}

/// Whether `coords` satisfies the divisibility profile of `label`:
/// at most `p` coordinates outside `2^{k_p}ℤ` for every `p`.
pub fn x_tau_member(label: &Label, coords: &[i64]) -> Result<bool, SpaceError> {
    if coords.len() != label.dim() {
        return Err(SpaceError::DimensionMismatch {
            need: label.dim(),
            got: coords.len(),
        });
    }
    for (p, k) in label.shifts().into_iter().enumerate() {
        let modulus = 1i64 << k;
        let violations = coords
            .iter()
            .filter(|&&x| x.rem_euclid(modulus) != 0)
            .count();
        if violations > p {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A point of one component: its label plus coordinates. Constructed only
/// through [`LatticePoint::new`], which enforces the divisibility profile.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticePoint {
    label: Label,
    coords: Vec<i64>,
}

impl LatticePoint {
    pub fn new(label: Label, coords: Vec<i64>) -> Result<Self, SpaceError> {
        if !x_tau_member(&label, &coords)? {
            return Err(SpaceError::NotInComponent {
                label: label.to_string(),
                coords,
            });
        }
        Ok(LatticePoint { label, coords })
    }

    pub fn label(&self) -> &Label {
        &self.label
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{:?})", self.label, self.coords)
    }
}

impl<'de> Deserialize<'de> for LatticePoint {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            label: Label,
            coords: Vec<i64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        LatticePoint::new(raw.label, raw.coords).map_err(serde::de::Error::custom)
    }
}

/// Enumerates `X_τ ∩ box` in lexicographic coordinate order. Axis `i` of
/// the box is the inclusive interval `bounds[i] = (lo, hi)`.
pub fn enumerate_x_tau(
    label: &Label,
    bounds: &[(i64, i64)],
) -> Result<Vec<LatticePoint>, SpaceError> {
    if bounds.len() != label.dim() {
        return Err(SpaceError::BoxDimensionMismatch {
            need: label.dim(),
            got: bounds.len(),
        });
    }
    let k0 = label.shifts()[0];
    let base = 1i64 << k0;
    // every coordinate lies in 2^{k0}ℤ, so enumerate multiples per axis
    let mut axes: Vec<Vec<i64>> = Vec::with_capacity(bounds.len());
    let mut budget: u128 = 1;
    for &(lo, hi) in bounds {
        if lo > hi {
            return Err(SpaceError::EmptyInterval { lo, hi });
        }
        let first = lo.div_euclid(base) + i64::from(lo.rem_euclid(base) != 0);
        let last = hi.div_euclid(base);
        let axis: Vec<i64> = (first..=last).map(|m| m * base).collect();
        budget = budget.saturating_mul(axis.len().max(1) as u128);
        if budget > MAX_ENUMERATION {
            return Err(SpaceError::EnumerationBudget(budget));
        }
        axes.push(axis);
    }
    let mut out = Vec::new();
    if axes.iter().any(|a| a.is_empty()) {
        return Ok(out);
    }
    let mut cursor = vec![0usize; axes.len()];
    loop {
        let coords: Vec<i64> = cursor.iter().zip(&axes).map(|(&i, a)| a[i]).collect();
        if x_tau_member(label, &coords)? {
            out.push(LatticePoint {
                label: label.clone(),
                coords,
            });
        }
        // lexicographic increment from the last axis
        let mut axis = axes.len();
        loop {
            if axis == 0 {
                return Ok(out);
            }
            axis -= 1;
            cursor[axis] += 1;
            if cursor[axis] < axes[axis].len() {
                break;
            }
            cursor[axis] = 0;
        }
    }
}

/// Sup-metric within one component.
pub fn sup_dist(a: &LatticePoint, b: &LatticePoint) -> Result<u64, SpaceError> {
    if a.label != b.label {
        return Err(SpaceError::LabelMismatch(
            a.label.to_string(),
            b.label.to_string(),
        ));
    }
    Ok(a.coords
        .iter()
        .zip(&b.coords)
        .map(|(x, y)| x.abs_diff(*y))
        .max()
        .unwrap_or(0))
}

/// A finitely supported integer sequence (trailing zeros trimmed).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SupportedSeq(Vec<i64>);

impl SupportedSeq {
    pub fn new(mut values: Vec<i64>) -> Self {
        while values.last() == Some(&0) {
            values.pop();
        }
        SupportedSeq(values)
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn support_len(&self) -> usize {
        self.0.len()
    }
}

/// Copies the coordinates into positions `0..m` of a supported sequence.
pub fn embed(p: &LatticePoint) -> SupportedSeq {
    SupportedSeq::new(p.coords.clone())
}

/// Sup-metric on supported sequences.
pub fn rho(a: &SupportedSeq, b: &SupportedSeq) -> u64 {
    let n = a.support_len().max(b.support_len());
    (0..n)
        .map(|i| a.get(i).abs_diff(b.get(i)))
        .max()
        .unwrap_or(0)
}

/// The union metric: sup-distance of embeddings within one component,
/// `max{weight(τ₁), weight(τ₂), ρ(embeddings)}` across components.
pub fn d_xi(a: &LatticePoint, b: &LatticePoint) -> u64 {
    let r = rho(&embed(a), &embed(b));
    if a.label == b.label {
        r
    } else {
        r.max(a.label.weight()).max(b.label.weight())
    }
}

// --- point-cloud text format ---------------------------------------------
//
// One point per line: `label;x0;x1;...` with the label written as
// comma-joined elements, e.g. `2,3;0;4`. Lines starting with `#` and blank
// lines are skipped on input.

pub fn format_point(p: &LatticePoint) -> String {
    let mut s = p.label.to_string();
    for c in &p.coords {
        s.push(';');
        s.push_str(&c.to_string());
    }
    s
}

pub fn parse_point(line: &str) -> Result<LatticePoint, SpaceError> {
    let mut parts = line.trim().split(';');
    let label_part = parts
        .next()
        .ok_or_else(|| SpaceError::ParsePoint(line.into()))?;
    let elements: Vec<u32> = label_part
        .split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| SpaceError::ParsePoint(line.into()))?;
    let label = Label::from_elements(&elements)?;
    let coords: Vec<i64> = parts
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| SpaceError::ParsePoint(line.into()))?;
    LatticePoint::new(label, coords)
}

pub fn read_point_cloud<R: BufRead>(reader: R) -> Result<Vec<LatticePoint>, SpaceError> {
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line.map_err(|e| SpaceError::Io(e.to_string()))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        out.push(parse_point(trimmed)?);
    }
    Ok(out)
}

pub fn write_point_cloud<W: Write>(
    mut writer: W,
    points: &[LatticePoint],
) -> Result<(), SpaceError> {
    for p in points {
        writeln!(writer, "{}", format_point(p)).map_err(|e| SpaceError::Io(e.to_string()))?;
    }
    Ok(())
}
