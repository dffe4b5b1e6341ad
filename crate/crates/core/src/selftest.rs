//! Runtime acceptance checks, mirrored by the `acceptance` test target.
//!
//! Every check is deterministic given its seed and returns a pass/fail
//! verdict with a short summary. The CLI `selftest` subcommand prints one
//! line per check.

use std::time::Instant;

use rand::prelude::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::cover::{a2_check, greedy_cover, verify_cover, A2Outcome};
use crate::finfam::{Family, FinSet};
use crate::ordinal::Ordinal;
use crate::partition::{epsilon_partition_chain, skeleton_refute, DiscreteCube, GridFamily};
use crate::sfamily::{idx, SCache};
use crate::space::{d_xi, embed, enumerate_x_tau, rho, sup_dist, Label, LatticePoint};

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub millis: u128,
}

fn run_check(
    id: &'static str,
    name: &'static str,
    f: impl FnOnce() -> Result<String, String>,
) -> CheckResult {
    let start = Instant::now();
    let outcome = f();
    let millis = start.elapsed().as_millis();
    match outcome {
        Ok(details) => CheckResult {
            id,
            name,
            passed: true,
            details,
            millis,
        },
        Err(details) => CheckResult {
            id,
            name,
            passed: false,
            details,
            millis,
        },
    }
}

/// Runs all acceptance checks with the given seed for the randomized
/// suites.
pub fn run_all(seed: u64) -> Vec<CheckResult> {
    vec![
        run_check("1", "rank axioms on random explicit families", move || {
            check_rank_axioms(seed)
        }),
        run_check("2", "truncated rank of finite levels", check_trunc_rank),
        run_check("3", "level-omega closed form", check_omega_closed_form),
        run_check("4", "recursive family structural laws", move || {
            check_sfamily_structure(seed)
        }),
        run_check("5", "metric axioms and embedding isometry", move || {
            check_metric_suite(seed)
        }),
        run_check("6", "dyadic cover refutation on the line", check_a2_line),
        run_check("7", "dyadic cover refutation in the plane", check_a2_plane),
        run_check("8", "partition chains stay nonempty", move || {
            check_partition_chain(seed)
        }),
        run_check("9", "fundamental sequence cofinality", move || {
            check_zeta_cofinality(seed)
        }),
    ]
}

fn random_family(rng: &mut ChaCha12Rng, max_ground: u32, max_members: usize) -> Family {
    let count = rng.random_range(0..=max_members);
    let mut fam = Family::empty();
    for _ in 0..count {
        let mut elems: Vec<u32> = (1..=max_ground).filter(|_| rng.random::<bool>()).collect();
        if elems.is_empty() {
            elems.push(rng.random_range(1..=max_ground));
        }
        fam.insert(FinSet::new(elems).unwrap());
    }
    fam
}

fn check_rank_axioms(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut prev: Option<Family> = None;
    for case in 0..500 {
        let m = random_family(&mut rng, 8, 30);
        let ord = m.ord();
        // cardinality characterization
        for n in 0..=9u32 {
            let all_small = m.members().all(|s| s.len() as u32 <= n);
            if (ord <= n) != all_small {
                return Err(format!("case {case}: rank/cardinality mismatch at n={n}"));
            }
        }
        // monotone under subfamilies
        let sub = Family::from_members(m.members().filter(|_| rng.random::<bool>()).cloned());
        if sub.ord() > ord {
            return Err(format!("case {case}: subfamily rank exceeds family rank"));
        }
        // union bound
        if let Some(other) = prev.take() {
            if m.union(&other).ord() > ord.max(other.ord()) {
                return Err(format!("case {case}: union rank above max"));
            }
        }
        prev = Some(m.clone());
        // rank invariant under order-preserving reindexing
        let mut target = Vec::new();
        let mut cur = 0u32;
        for _ in 0..8 {
            cur += rng.random_range(1..4);
            target.push(cur);
        }
        let r = m.reindex(&target).map_err(|e| e.to_string())?;
        if r.ord() != ord {
            return Err(format!("case {case}: reindexing changed the rank"));
        }
    }
    Ok("500 families, 4 laws, zero violations".into())
}

fn check_trunc_rank() -> Result<String, String> {
    for n in 1..=5u64 {
        for bound in 1..=6u32 {
            let got = crate::sfamily::ord_truncated(&Ordinal::from_nat(n), bound)
                .map_err(|e| e.to_string())?;
            let expected = (n as u32).min(bound);
            if got != expected {
                return Err(format!("level {n} bound {bound}: rank {got} != {expected}"));
            }
        }
    }
    Ok("all 30 finite-level truncations match min(n, N)".into())
}

fn check_omega_closed_form() -> Result<String, String> {
    let omega = Ordinal::omega();
    let mut cache = SCache::new();
    let mut cases = 0;
    for mask in 1u32..(1 << 8) {
        let sigma = FinSet::new(
            (0..8u32)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| i + 1)
                .collect(),
        )
        .unwrap();
        let expected = sigma.len() as u32 <= sigma.min_elem() + 1;
        if cache.member(&sigma, &omega) != expected {
            return Err(format!("closed form fails at {sigma:?}"));
        }
        cases += 1;
    }
    Ok(format!("{cases} subsets of {{1..8}}, zero mismatches"))
}

fn random_xi_below_omega3(rng: &mut ChaCha12Rng) -> Ordinal {
    let a = rng.random_range(0..3u64);
    let b = rng.random_range(0..3u64);
    let c = rng.random_range(0..4u64);
    Ordinal::omega_pow_mul(Ordinal::from_nat(2), a)
        .add(&Ordinal::omega_pow_mul(Ordinal::from_nat(1), b))
        .add(&Ordinal::from_nat(c))
}

fn random_sigma(rng: &mut ChaCha12Rng, max_elem: u32, max_len: usize) -> FinSet {
    let len = rng.random_range(1..=max_len);
    let mut elems: Vec<u32> = Vec::new();
    while elems.len() < len {
        let e = rng.random_range(1..=max_elem);
        if !elems.contains(&e) {
            elems.push(e);
        }
    }
    FinSet::from_unsorted(elems).unwrap()
}

fn check_sfamily_structure(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0x5f5f);
    let mut cache = SCache::new();
    for law in 0..6 {
        let mut done = 0;
        let mut tries = 0;
        while done < 300 {
            tries += 1;
            if tries > 200_000 {
                return Err(format!("law {law}: sample starvation"));
            }
            let xi = random_xi_below_omega3(&mut rng);
            let sigma = random_sigma(&mut rng, 9, 5);
            let (gamma, n) = xi.decompose();
            match law {
                // inclusivity
                0 => {
                    if !cache.member(&sigma, &xi) {
                        continue;
                    }
                    for tau in sigma.nonempty_subsets() {
                        if !cache.member(&tau, &xi) {
                            return Err(format!("inclusivity fails: {tau:?} ⊄ level {xi}"));
                        }
                    }
                }
                // small sets belong to infinite levels
                1 => {
                    if gamma.is_zero() || sigma.len() as u64 > n + 1 {
                        continue;
                    }
                    if !cache.member(&sigma, &xi) {
                        return Err(format!("small set {sigma:?} missing from level {xi}"));
                    }
                }
                // prepending below the minimum moves up one level
                2 => {
                    if sigma.min_elem() < 2 || !cache.member(&sigma, &xi) {
                        continue;
                    }
                    let l = rng.random_range(1..sigma.min_elem());
                    let ext = sigma.union(&FinSet::new(vec![l]).unwrap());
                    if !cache.member(&ext, &xi.add_nat(1)) {
                        return Err(format!("prepend {l} to {sigma:?} fails at level {xi}+1"));
                    }
                }
                // nesting along the finite offset above a limit
                3 => {
                    if gamma.is_zero() {
                        continue;
                    }
                    let m = n + rng.random_range(1..4u64);
                    if cache.member(&sigma, &xi) && !cache.member(&sigma, &gamma.add_nat(m)) {
                        return Err(format!("nesting fails: {sigma:?} at {xi} vs +{m}"));
                    }
                }
                // coordinatewise upward closure
                4 => {
                    if !cache.member(&sigma, &xi) {
                        continue;
                    }
                    let mut tau = Vec::new();
                    let mut prevv = 0u32;
                    for &k in sigma.elements() {
                        let t = (k + rng.random_range(0..4)).max(prevv + 1);
                        tau.push(t);
                        prevv = t;
                    }
                    let tau = FinSet::new(tau).unwrap();
                    let dominates = sigma
                        .elements()
                        .iter()
                        .zip(tau.elements())
                        .all(|(a, b)| a <= b);
                    if !dominates {
                        continue;
                    }
                    if !cache.member(&tau, &xi) {
                        return Err(format!(
                            "upward closure fails: {sigma:?} -> {tau:?} at {xi}"
                        ));
                    }
                }
                // members appear at an explicit stage of the sequence
                _ => {
                    if gamma.is_zero() || !cache.member(&sigma, &xi) {
                        continue;
                    }
                    let mut witnessed = false;
                    for l in 1..=u64::from(idx(&sigma, n)) {
                        let stage = gamma
                            .zeta(l)
                            .map_err(|e| e.to_string())?
                            .add_nat(l)
                            .add_nat(n + 1);
                        if cache.member(&sigma, &stage) {
                            witnessed = true;
                            break;
                        }
                    }
                    if !witnessed {
                        return Err(format!("{sigma:?} in level {xi} but at no explicit stage"));
                    }
                }
            }
            done += 1;
        }
    }
    Ok("6 laws x 300 samples, zero violations".into())
}

fn metric_pools(rng: &mut ChaCha12Rng) -> Vec<LatticePoint> {
    let mut pool = Vec::new();
    let specs: [(&[u32], i64); 4] = [(&[3], 32), (&[4], 32), (&[3, 5], 24), (&[4, 6], 24)];
    for (elems, half) in specs {
        let l = Label::from_elements(elems).unwrap();
        let bounds = vec![(-half, half); l.dim()];
        let pts = enumerate_x_tau(&l, &bounds).unwrap();
        for _ in 0..800 {
            pool.push(pts.choose(rng).unwrap().clone());
        }
    }
    pool
}

fn check_metric_suite(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0xa1a1);
    let pool = metric_pools(&mut rng);
    for i in 0..10_000 {
        let a = pool.choose(&mut rng).unwrap();
        let b = pool.choose(&mut rng).unwrap();
        let c = pool.choose(&mut rng).unwrap();
        let dab = d_xi(a, b);
        let dba = d_xi(b, a);
        if dab != dba {
            return Err(format!("triple {i}: asymmetric distance"));
        }
        if (dab == 0) != (a == b) {
            return Err(format!("triple {i}: identity of indiscernibles fails"));
        }
        let dac = d_xi(a, c);
        let dbc = d_xi(b, c);
        if dac > dab + dbc || dab > dac + dbc || dbc > dba + dac {
            return Err(format!("triple {i}: triangle inequality fails"));
        }
    }
    // embedding isometry on same-label pairs
    let l = Label::from_elements(&[3, 5]).unwrap();
    let pts = enumerate_x_tau(&l, &[(-24, 24), (-24, 24)]).unwrap();
    for i in 0..1_000 {
        let a = pts.choose(&mut rng).unwrap();
        let b = pts.choose(&mut rng).unwrap();
        let direct = sup_dist(a, b).map_err(|e| e.to_string())?;
        if rho(&embed(a), &embed(b)) != direct {
            return Err(format!("pair {i}: embedding not isometric"));
        }
    }
    Ok("10000 triples + 1000 pairs, zero violations".into())
}

fn check_a2_line() -> Result<String, String> {
    let l = Label::from_elements(&[2]).unwrap();
    let mut notes = Vec::new();
    for bound in [8u64, 16] {
        match a2_check(&l, bound, 40_000_000).map_err(|e| e.to_string())? {
            A2Outcome::NoCover(cert) => {
                notes.push(format!("B={bound}: noCover on side {}", cert.side))
            }
            other => return Err(format!("B={bound}: expected noCover, got {other:?}")),
        }
    }
    Ok(notes.join("; "))
}

fn check_a2_plane() -> Result<String, String> {
    let l = Label::from_elements(&[2, 3]).unwrap();
    let cert = match a2_check(&l, 8, 40_000_000).map_err(|e| e.to_string())? {
        A2Outcome::NoCover(cert) => cert,
        other => return Err(format!("expected noCover, got {other:?}")),
    };
    let pts = enumerate_x_tau(&l, &[(0, 64), (0, 64)]).map_err(|e| e.to_string())?;
    for seed in 0..20u64 {
        let candidate = greedy_cover(&pts, &[4, 8], 8, seed);
        let report = skeleton_refute(&l, 8, &candidate, 50_000_000)
            .map_err(|e| format!("seed {seed}: {e}"))?;
        let w = report.witness;
        let verdict = verify_cover(&candidate, std::slice::from_ref(&w));
        let missed = verdict
            .violations
            .iter()
            .any(|v| matches!(v, crate::cover::Violation::Coverage { point } if *point == w));
        if !missed {
            return Err(format!("seed {seed}: witness {w:?} is covered"));
        }
    }
    Ok(format!(
        "noCover on side {} ({} pts); 20 greedy candidates refuted with verified witnesses",
        cert.side, cert.points
    ))
}

fn random_chain_instance(rng: &mut ChaCha12Rng) -> (DiscreteCube, Vec<GridFamily>, i64) {
    let dim = rng.random_range(1..=2usize);
    let step = *[1i64, 2, 4].choose(rng).unwrap();
    let side = step * rng.random_range((12 / step).max(7)..=(48 / step));
    let eps = rng.random_range(1..=((side - 1) / 6).max(1));
    let mut families = Vec::new();
    for _ in 0..dim {
        let mut blocks: Vec<Vec<Vec<i64>>> = Vec::new();
        let want = rng.random_range(0..=3usize);
        let mut tries = 0;
        while blocks.len() < want && tries < 60 {
            tries += 1;
            // a random box with extent <= side/3 snapped to the grid
            let mut lo = Vec::new();
            let mut hi = Vec::new();
            for _ in 0..dim {
                let extent = step * rng.random_range(0..=(side / 3 / step));
                let start = step * rng.random_range(0..=((side - extent) / step));
                lo.push(start);
                hi.push(start + extent);
            }
            let mut pts = Vec::new();
            let mut cursor = lo.clone();
            'gen: loop {
                pts.push(cursor.clone());
                let mut a = dim;
                loop {
                    if a == 0 {
                        break 'gen;
                    }
                    a -= 1;
                    cursor[a] += step;
                    if cursor[a] <= hi[a] {
                        break;
                    }
                    cursor[a] = lo[a];
                }
            }
            // keep the family eps-disjoint
            let far = blocks.iter().all(|b: &Vec<Vec<i64>>| {
                b.iter()
                    .flat_map(|p| {
                        pts.iter().map(move |q| {
                            p.iter().zip(q).map(|(x, y)| x.abs_diff(*y)).max().unwrap()
                        })
                    })
                    .min()
                    .unwrap() as i64
                    >= eps
            });
            if far {
                blocks.push(pts);
            }
        }
        families.push(GridFamily { blocks });
    }
    (DiscreteCube { dim, side, step }, families, eps)
}

fn check_partition_chain(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0xc3c3);
    for case in 0..100 {
        let (cube, families, eps) = random_chain_instance(&mut rng);
        let chain = epsilon_partition_chain(&cube, &families, eps)
            .map_err(|e| format!("case {case} ({cube:?}, eps {eps}): {e}"))?;
        if chain.final_level().is_empty() {
            return Err(format!("case {case}: empty final level"));
        }
        // every surviving level avoids its family with the stated margin
        for (k, fam) in families.iter().enumerate() {
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
                    if (d as i64) < eps {
                        return Err(format!("case {case}: level {} too close to a block", k + 1));
                    }
                }
            }
        }
    }
    Ok("100 random instances, final level nonempty, avoidance holds".into())
}

fn random_ordinal_below_omega_omega(rng: &mut ChaCha12Rng) -> Ordinal {
    let mut terms = std::collections::BTreeMap::new();
    for _ in 0..rng.random_range(0..4usize) {
        terms.insert(rng.random_range(0..6u64), rng.random_range(1..5u64));
    }
    let mut o = Ordinal::zero();
    for (e, c) in terms.into_iter().rev() {
        o = o.add(&Ordinal::omega_pow_mul(Ordinal::from_nat(e), c));
    }
    o
}

fn check_zeta_cofinality(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0x7e7e);
    let mut alphas = 0;
    while alphas < 100 {
        let candidate = random_ordinal_below_omega_omega(&mut rng);
        let (gamma, _) = candidate.decompose();
        let alpha = if gamma.is_zero() {
            Ordinal::omega_pow_mul(
                Ordinal::from_nat(rng.random_range(1..5)),
                rng.random_range(1..4),
            )
        } else {
            gamma
        };
        if !alpha.is_limit() {
            continue;
        }
        alphas += 1;
        let mut betas = 0;
        let mut tries = 0;
        while betas < 20 {
            tries += 1;
            if tries > 10_000 {
                return Err(format!("beta starvation below {alpha}"));
            }
            let beta = random_ordinal_below_omega_omega(&mut rng);
            if beta >= alpha {
                continue;
            }
            betas += 1;
            let limit = 10 * (beta.cnf_size() + beta.max_coefficient());
            let mut reached = false;
            for i in 1..=limit {
                let stage = alpha.zeta(i).map_err(|e| e.to_string())?.add_nat(i);
                if stage > beta {
                    reached = true;
                    break;
                }
            }
            if !reached {
                return Err(format!(
                    "stages of {alpha} do not pass {beta} within {limit} steps"
                ));
            }
        }
    }
    Ok("100 limits x 20 targets, all reached within the stated bound".into())
}
