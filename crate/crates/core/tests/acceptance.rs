//! Acceptance suite: one test per criterion, each printing a verdict line.
//!
//! Expected values are either closed forms computed here or properties
//! cross-checked by independent code paths (`verify_cover` for search
//! results, a standalone rank recursion for the Borst rank, explicit
//! distance scans for partition levels).

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::prelude::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use trasdim_core::cover::{a2_check, greedy_cover, verify_cover, A2Outcome, Violation};
use trasdim_core::finfam::{Family, FinSet};
use trasdim_core::ordinal::Ordinal;
use trasdim_core::partition::{epsilon_partition_chain, skeleton_refute, DiscreteCube, GridFamily};
use trasdim_core::sfamily::{idx, ord_truncated, SCache};
use trasdim_core::space::{d_xi, embed, enumerate_x_tau, rho, sup_dist, Label, LatticePoint};

const SEED: u64 = 20240817;

fn pass(criterion: u32, elapsed: Duration, detail: &str) {
    println!("criterion {criterion}: PASS ({elapsed:?}) {detail}");
}

/// Standalone rank recursion, independent of `Family::ord` (no sharing, no
/// memoization): the test-side oracle.
fn brute_ord(members: &BTreeSet<Vec<u32>>) -> u32 {
    if members.is_empty() {
        return 0;
    }
    let ground: BTreeSet<u32> = members.iter().flatten().copied().collect();
    let mut best = 0;
    for a in ground {
        let derived: BTreeSet<Vec<u32>> = members
            .iter()
            .filter(|m| m.contains(&a))
            .map(|m| m.iter().copied().filter(|&x| x != a).collect::<Vec<u32>>())
            .filter(|m| !m.is_empty())
            .collect();
        best = best.max(brute_ord(&derived));
    }
    1 + best
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

#[test]
fn criterion_1_rank_axioms() {
    let start = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(SEED);
    let mut prev: Option<Family> = None;
    for case in 0..500 {
        let m = random_family(&mut rng, 8, 30);
        let ord = m.ord();
        // rank <= n iff every member has at most n elements
        for n in 0..=9u32 {
            let all_small = m.members().all(|s| s.len() as u32 <= n);
            assert_eq!(ord <= n, all_small, "case {case} at n={n}");
        }
        // monotone under subfamilies
        let sub = Family::from_members(m.members().filter(|_| rng.random::<bool>()).cloned());
        assert!(sub.ord() <= ord, "case {case}: subfamily rank grew");
        // union bounded by the max
        if let Some(other) = prev.take() {
            assert!(
                m.union(&other).ord() <= ord.max(other.ord()),
                "case {case}: union rank above max"
            );
        }
        prev = Some(m.clone());
        // invariant under order-preserving reindexing
        let mut target = Vec::new();
        let mut cur = 0u32;
        for _ in 0..8 {
            cur += rng.random_range(1..4);
            target.push(cur);
        }
        assert_eq!(m.reindex(&target).unwrap().ord(), ord, "case {case}");
        // differential check against the standalone recursion
        if case % 25 == 0 && m.len() <= 12 {
            let raw: BTreeSet<Vec<u32>> = m.members().map(|s| s.elements().to_vec()).collect();
            assert_eq!(brute_ord(&raw), ord, "case {case}: oracle disagrees");
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(30),
        "over budget: {elapsed:?}"
    );
    pass(
        1,
        elapsed,
        "500 random families, 4 rank laws, zero violations",
    );
}

#[test]
fn criterion_2_truncated_rank_of_finite_levels() {
    let start = Instant::now();
    let mut cases = 0;
    for n in 1..=5u64 {
        for bound in 1..=6u32 {
            let got = ord_truncated(&Ordinal::from_nat(n), bound).unwrap();
            assert_eq!(got, (n as u32).min(bound), "level {n}, bound {bound}");
            // cross-check with the standalone recursion
            let members: BTreeSet<Vec<u32>> = (1u32..(1 << bound))
                .map(|mask| {
                    (0..bound)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| i + 1)
                        .collect::<Vec<u32>>()
                })
                .filter(|s| s.len() as u64 <= n)
                .collect();
            assert_eq!(brute_ord(&members), (n as u32).min(bound));
            cases += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(10),
        "over budget: {elapsed:?}"
    );
    pass(2, elapsed, &format!("{cases} truncations equal min(n, N)"));
}

#[test]
fn criterion_3_level_omega_closed_form() {
    let start = Instant::now();
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
        let closed_form = sigma.len() as u32 <= sigma.min_elem() + 1;
        assert_eq!(
            cache.member(&sigma, &omega),
            closed_form,
            "mismatch at {sigma:?}"
        );
        cases += 1;
    }
    pass(
        3,
        start.elapsed(),
        &format!("{cases} subsets, zero mismatches"),
    );
}

fn random_xi_below_omega3(rng: &mut ChaCha12Rng) -> Ordinal {
    Ordinal::omega_pow_mul(Ordinal::from_nat(2), rng.random_range(0..3u64))
        .add(&Ordinal::omega_pow_mul(
            Ordinal::from_nat(1),
            rng.random_range(0..3u64),
        ))
        .add(&Ordinal::from_nat(rng.random_range(0..4u64)))
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

#[test]
fn criterion_4_structural_laws() {
    let start = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(SEED ^ 0x41);
    let mut cache = SCache::new();
    for law in 0..6 {
        let mut done = 0;
        while done < 300 {
            let xi = random_xi_below_omega3(&mut rng);
            let sigma = random_sigma(&mut rng, 9, 5);
            let (gamma, n) = xi.decompose();
            match law {
                0 => {
                    if !cache.member(&sigma, &xi) {
                        continue;
                    }
                    for tau in sigma.nonempty_subsets() {
                        assert!(cache.member(&tau, &xi), "inclusivity: {tau:?} at {xi}");
                    }
                }
                1 => {
                    if gamma.is_zero() || sigma.len() as u64 > n + 1 {
                        continue;
                    }
                    assert!(cache.member(&sigma, &xi), "small set {sigma:?} at {xi}");
                }
                2 => {
                    if sigma.min_elem() < 2 || !cache.member(&sigma, &xi) {
                        continue;
                    }
                    let l = rng.random_range(1..sigma.min_elem());
                    let ext = sigma.union(&FinSet::new(vec![l]).unwrap());
                    assert!(
                        cache.member(&ext, &xi.add_nat(1)),
                        "prepend {l} to {sigma:?} at {xi}"
                    );
                }
                3 => {
                    if gamma.is_zero() || !cache.member(&sigma, &xi) {
                        continue;
                    }
                    let m = n + rng.random_range(1..4u64);
                    assert!(
                        cache.member(&sigma, &gamma.add_nat(m)),
                        "nesting {sigma:?} from {xi} to offset {m}"
                    );
                }
                4 => {
                    if !cache.member(&sigma, &xi) {
                        continue;
                    }
                    let mut tau = Vec::new();
                    let mut prev = 0u32;
                    for &k in sigma.elements() {
                        let t = (k + rng.random_range(0..4)).max(prev + 1);
                        tau.push(t);
                        prev = t;
                    }
                    let tau = FinSet::new(tau).unwrap();
                    if !sigma
                        .elements()
                        .iter()
                        .zip(tau.elements())
                        .all(|(a, b)| a <= b)
                    {
                        continue;
                    }
                    assert!(
                        cache.member(&tau, &xi),
                        "upward closure {sigma:?} -> {tau:?} at {xi}"
                    );
                }
                _ => {
                    if gamma.is_zero() || !cache.member(&sigma, &xi) {
                        continue;
                    }
                    let witnessed = (1..=u64::from(idx(&sigma, n))).any(|l| {
                        let stage = gamma.zeta(l).unwrap().add_nat(l).add_nat(n + 1);
                        cache.member(&sigma, &stage)
                    });
                    assert!(witnessed, "{sigma:?} at {xi} has no explicit stage");
                }
            }
            done += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "over budget: {elapsed:?}"
    );
    pass(
        4,
        elapsed,
        "6 structural laws x 300 samples, zero violations",
    );
}

#[test]
fn criterion_5_metric_suite() {
    let start = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(SEED ^ 0x51);
    let mut pool: Vec<LatticePoint> = Vec::new();
    let specs: [(&[u32], i64); 4] = [(&[3], 32), (&[4], 32), (&[3, 5], 24), (&[4, 6], 24)];
    for (elems, half) in specs {
        let l = Label::from_elements(elems).unwrap();
        let pts = enumerate_x_tau(&l, &vec![(-half, half); l.dim()]).unwrap();
        for _ in 0..800 {
            pool.push(pts.choose(&mut rng).unwrap().clone());
        }
    }
    let labels: BTreeSet<String> = pool.iter().map(|p| p.label().to_string()).collect();
    assert!(labels.len() >= 3);
    for i in 0..10_000 {
        let a = pool.choose(&mut rng).unwrap();
        let b = pool.choose(&mut rng).unwrap();
        let c = pool.choose(&mut rng).unwrap();
        assert_eq!(d_xi(a, b), d_xi(b, a), "triple {i}: symmetry");
        assert_eq!(d_xi(a, b) == 0, a == b, "triple {i}: identity");
        assert!(
            d_xi(a, c) <= d_xi(a, b) + d_xi(b, c),
            "triple {i}: triangle"
        );
        assert!(
            d_xi(a, b) <= d_xi(a, c) + d_xi(c, b),
            "triple {i}: triangle"
        );
        assert!(
            d_xi(b, c) <= d_xi(b, a) + d_xi(a, c),
            "triple {i}: triangle"
        );
    }
    let l = Label::from_elements(&[3, 5]).unwrap();
    let pts = enumerate_x_tau(&l, &[(-24, 24), (-24, 24)]).unwrap();
    for i in 0..1_000 {
        let a = pts.choose(&mut rng).unwrap();
        let b = pts.choose(&mut rng).unwrap();
        assert_eq!(
            rho(&embed(a), &embed(b)),
            sup_dist(a, b).unwrap(),
            "pair {i}: embedding isometry"
        );
    }
    pass(
        5,
        start.elapsed(),
        "10^4 triples, 10^3 pairs, zero violations",
    );
}

#[test]
fn criterion_6_line_refutation() {
    let start = Instant::now();
    let l = Label::from_elements(&[2]).unwrap();
    for bound in [8u64, 16] {
        let t = Instant::now();
        match a2_check(&l, bound, 40_000_000).unwrap() {
            A2Outcome::NoCover(cert) => {
                assert_eq!(cert.radii, vec![4]);
                assert!(
                    t.elapsed() < Duration::from_secs(300),
                    "B={bound} over budget"
                );
            }
            other => panic!("B={bound}: expected noCover, got {other:?}"),
        }
    }
    pass(6, start.elapsed(), "B=8 and B=16 refuted exhaustively");
}

#[test]
fn criterion_7_plane_refutation() {
    let start = Instant::now();
    let l = Label::from_elements(&[2, 3]).unwrap();
    let cert = match a2_check(&l, 8, 40_000_000).unwrap() {
        A2Outcome::NoCover(cert) => cert,
        other => panic!("expected noCover, got {other:?}"),
    };
    assert_eq!(cert.radii, vec![4, 8]);
    let pts = enumerate_x_tau(&l, &[(0, 64), (0, 64)]).unwrap();
    for seed in 0..20u64 {
        let candidate = greedy_cover(&pts, &[4, 8], 8, seed);
        let report = skeleton_refute(&l, 8, &candidate, 50_000_000).unwrap();
        let w = report.witness;
        let verdict = verify_cover(&candidate, std::slice::from_ref(&w));
        assert!(
            verdict
                .violations
                .iter()
                .any(|v| matches!(v, Violation::Coverage { point } if *point == w)),
            "seed {seed}: witness {w:?} is covered"
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(600),
        "over budget: {elapsed:?}"
    );
    pass(
        7,
        elapsed,
        "noCover certified; 20 greedy candidates refuted with verified witnesses",
    );
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
            let mut lo = Vec::new();
            let mut hi = Vec::new();
            for _ in 0..dim {
                let extent = step * rng.random_range(0..=(side / 3 / step));
                let startc = step * rng.random_range(0..=((side - extent) / step));
                lo.push(startc);
                hi.push(startc + extent);
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

#[test]
fn criterion_8_partition_chains() {
    let start = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(SEED ^ 0x81);
    for case in 0..100 {
        let (cube, families, eps) = random_chain_instance(&mut rng);
        let chain = epsilon_partition_chain(&cube, &families, eps)
            .unwrap_or_else(|e| panic!("case {case} ({cube:?}, eps {eps}): {e}"));
        assert!(
            !chain.final_level().is_empty(),
            "case {case}: empty final level"
        );
        // independent avoidance scan in tripled coordinates
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
                    assert!(
                        d as i64 >= eps,
                        "case {case}: level {} within {d} of a block (eps {eps})",
                        k + 1
                    );
                }
            }
        }
    }
    pass(
        8,
        start.elapsed(),
        "100 random valid instances, zero violations",
    );
}

#[test]
fn criterion_9_zeta_cofinality() {
    let start = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(SEED ^ 0x91);
    let random_ordinal = |rng: &mut ChaCha12Rng| {
        let mut terms = BTreeSet::new();
        for _ in 0..rng.random_range(0..4usize) {
            terms.insert((rng.random_range(0..6u64), rng.random_range(1..5u64)));
        }
        let mut o = Ordinal::zero();
        for (e, c) in terms.into_iter().rev() {
            o = o.add(&Ordinal::omega_pow_mul(Ordinal::from_nat(e), c));
        }
        o
    };
    let mut alphas = 0;
    while alphas < 100 {
        let candidate = random_ordinal(&mut rng);
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
        while betas < 20 {
            let beta = random_ordinal(&mut rng);
            if beta >= alpha {
                continue;
            }
            betas += 1;
            let limit = 10 * (beta.cnf_size() + beta.max_coefficient());
            let reached = (1..=limit).any(|i| alpha.zeta(i).unwrap().add_nat(i) > beta);
            assert!(
                reached,
                "stages of {alpha} never pass {beta} within {limit}"
            );
        }
    }
    pass(
        9,
        start.elapsed(),
        "100 limits x 20 targets within the index bound",
    );
}
