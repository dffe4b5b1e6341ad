//! The ordinal-indexed recursive families `S_ξ` of finite subsets of ℕ.
//!
//! For finite `ξ = n` the family is `{σ : |σ| ≤ n}`. For infinite
//! `ξ = γ + n` (γ a limit) a set `σ = {k₀ < … < k_s}` belongs to `S_ξ` iff
//! its tail `K(σ, n)` past the first `n+1` elements is empty, or lies in
//! `S_{ζ_l(γ)+l}` for some `l ∈ {1, …, i(σ, n)}` where `i(σ, n) = k_min(n,s)`
//! and `ζ` is the fundamental-sequence policy of [`crate::ordinal`].
//!
//! The recursion terminates because every recursive call is at a strictly
//! smaller ordinal (`ζ_l(γ) + l < γ ≤ ξ`). Membership queries are memoized
//! on `(σ, ξ)` pairs; [`truncate`] shares one cache across a whole
//! ground-set enumeration.

use std::collections::HashMap;

use thiserror::Error;

use crate::finfam::{Family, FinSet};
use crate::ordinal::Ordinal;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SFamilyError {
    #[error("truncation bound {0} exceeds the search budget (max 20)")]
    BudgetExceeded(u32),
    #[error("shifted-alphabet sets need all elements >= 3, got {0}")]
    BelowShiftedAlphabet(u32),
}

/// Drops the first `n+1` elements of `τ = {k₀ < … < k_s}`; `None` when
/// `n ≥ s`.
pub fn big_k(tau: &FinSet, n: u64) -> Option<FinSet> {
    let s = tau.len() as u64 - 1;
    if n >= s {
        None
    } else {
        Some(FinSet::new(tau.elements()[(n + 1) as usize..].to_vec()).unwrap())
    }
}

/// `i(τ, n) = k_min(n, s)`: the `(n+1)`-st element of `τ`, or its maximum
/// when `τ` is shorter.
pub fn idx(tau: &FinSet, n: u64) -> u32 {
    let s = tau.len() as u64 - 1;
    tau.elements()[n.min(s) as usize]
}

/// Memoized membership oracle for the families `S_ξ`.
#[derive(Default)]
pub struct SCache {
    memo: HashMap<(FinSet, Ordinal), bool>,
}

impl SCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn member(&mut self, sigma: &FinSet, xi: &Ordinal) -> bool {
        let (gamma, n) = xi.decompose();
        if gamma.is_zero() {
            return sigma.len() as u64 <= n;
        }
        let key = (sigma.clone(), xi.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = match big_k(sigma, n) {
            None => true,
            Some(tail) => {
                let mut found = false;
                for l in 1..=u64::from(idx(sigma, n)) {
                    let stage = gamma.zeta(l).expect("gamma is a limit").add_nat(l);
                    if self.member(&tail, &stage) {
                        found = true;
                        break;
                    }
                }
                found
            }
        };
        self.memo.insert(key, v);
        v
    }
}

/// One-off membership query; allocates a fresh cache.
pub fn s_member(sigma: &FinSet, xi: &Ordinal) -> bool {
    SCache::new().member(sigma, xi)
}

/// Membership in the alphabet-shifted family: `σ` over {3, 4, …} belongs
/// iff its elementwise shift down by 2 belongs to `S_ξ`.
pub fn s_member_shifted(sigma: &FinSet, xi: &Ordinal) -> Result<bool, SFamilyError> {
    if sigma.min_elem() < 3 {
        return Err(SFamilyError::BelowShiftedAlphabet(sigma.min_elem()));
    }
    let shifted = FinSet::new(sigma.elements().iter().map(|&x| x - 2).collect()).unwrap();
    Ok(s_member(&shifted, xi))
}

/// A finite truncation `S_ξ ∩ Fin{1..bound}`.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub xi: Ordinal,
    pub bound: u32,
    pub family: Family,
}

pub const TRUNCATION_BUDGET: u32 = 20;

/// Enumerates all members of `S_ξ` over the ground set `{1..bound}`.
pub fn truncate(xi: &Ordinal, bound: u32) -> Result<Truncation, SFamilyError> {
    if bound == 0 || bound > TRUNCATION_BUDGET {
        return Err(SFamilyError::BudgetExceeded(bound));
    }
    let mut cache = SCache::new();
    let mut family = Family::empty();
    for mask in 1u32..(1 << bound) {
        let sigma = FinSet::new(
            (0..bound)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| i + 1)
                .collect(),
        )
        .unwrap();
        if cache.member(&sigma, xi) {
            family.insert(sigma);
        }
    }
    Ok(Truncation {
        xi: xi.clone(),
        bound,
        family,
    })
}

/// Borst rank of the truncated family.
pub fn ord_truncated(xi: &Ordinal, bound: u32) -> Result<u32, SFamilyError> {
    Ok(truncate(xi, bound)?.family.ord())
}
