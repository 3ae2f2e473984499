//! Seeded randomized verification suites. Every suite draws one 64-bit seed
//! per instance from a master SplitMix64 stream, so any failing instance can
//! be regenerated on its own.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{sturm_count, RationalUniPoly};
use crate::diagram1d::{count_cells_1d, nfh_check_1d, reception_intervals, NfhResult};
use crate::error::{Error, Result};
use crate::geometry::{
    construct_omega_n, discrete_wire_interference, hyperbolic_reception_check, max_principle_check,
    two_station_config, wire_interference, Wire,
};
use crate::model::{min_station_distance, transform_network, Network, Point, SimilarityTransform};
use crate::pointloc::{qds_build, CellTag, Scheme};
use crate::rng::SplitMix64;
use crate::sinr::{heard_station, is_heard, sinr, voronoi_owner, weighted_voronoi_owner, ReceptionTag};

pub const SUITES: &[&str] = &[
    "nfh1d",
    "bound2n1",
    "weakest",
    "maxprinciple",
    "hyperbolic",
    "voronoi",
    "transform",
    "wireconv",
    "tagcell",
    "twostation",
    "sturm",
];

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub instance_seed: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub pass: bool,
    pub failures: usize,
    pub instances: Vec<VerificationReport>,
}

fn report(check: &str, instance_seed: u64, witness: Option<Value>) -> VerificationReport {
    VerificationReport { check: check.into(), instance_seed, pass: witness.is_none(), witness }
}

/// Runs `check` on `trials` instances in parallel; instance k gets the k-th
/// output of SplitMix64(seed).
fn run<F>(suite: &str, trials: usize, seed: u64, check: F) -> Result<SuiteReport>
where
    F: Fn(u64) -> Result<VerificationReport> + Sync + Send,
{
    let mut master = SplitMix64::new(seed);
    let seeds: Vec<u64> = (0..trials).map(|_| master.next_u64()).collect();
    let instances = seeds.into_par_iter().map(check).collect::<Result<Vec<_>>>()?;
    let failures = instances.iter().filter(|r| !r.pass).count();
    Ok(SuiteReport { suite: suite.into(), seed, trials, pass: failures == 0, failures, instances })
}

pub fn run_suite(name: &str, trials: usize, seed: u64) -> Result<SuiteReport> {
    match name {
        "nfh1d" => verify_nfh1d(trials, seed),
        "bound2n1" => verify_bound2n1(trials, seed),
        "weakest" => verify_weakest(trials, seed),
        "maxprinciple" => verify_max_principle(trials, seed, 5),
        "hyperbolic" => verify_hyperbolic(trials, seed, 10),
        "voronoi" => verify_voronoi(trials, seed),
        "transform" => verify_transform(trials, seed),
        "wireconv" => verify_wireconv(trials, seed),
        "tagcell" => verify_tagcell(trials, seed, 100),
        "twostation" => verify_two_station(trials, seed, 10_000),
        "sturm" => verify_sturm(trials, seed, 1_000_000),
        _ => Err(Error::Precondition(format!("unknown suite '{name}'; expected one of {}", SUITES.join(", ")))),
    }
}

fn distinct_positions(rng: &mut SplitMix64, n: usize, dim: usize, lo: f64, hi: f64, min_sep: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(n);
    while out.len() < n {
        let p: Vec<f64> = (0..dim).map(|_| rng.dyadic(lo, hi, 4)).collect();
        if out.iter().all(|q| Point(q.clone()).dist(&p) >= min_sep) {
            out.push(p);
        }
    }
    out
}

/// n in [2, 10], alpha = 2, beta in [1, 3], N in {0, 0.1}; dyadic positions
/// in [-10, 10] and powers in [1, 10].
pub fn random_network_1d(rng: &mut SplitMix64) -> Network {
    let n = rng.int_in(2, 10) as usize;
    let beta = rng.dyadic(1.0, 3.0, 4);
    let noise = *rng.pick(&[0.0, 0.1]);
    let pos = distinct_positions(rng, n, 1, -10.0, 10.0, 0.0625);
    let parts: Vec<(Vec<f64>, f64)> = pos.into_iter().map(|p| (p, rng.dyadic(1.0, 10.0, 4))).collect();
    Network::from_parts(1, &parts, noise, beta, 2.0).expect("valid random network")
}

/// Planar network with `n` stations at least 1 apart in [-4, 4]^2 and powers
/// in [0.5, 2].
pub fn random_network_2d(rng: &mut SplitMix64, n: usize, noise: f64, beta: f64, alpha: f64) -> Network {
    random_network(rng, 2, n, noise, beta, alpha)
}

fn random_network(rng: &mut SplitMix64, dim: usize, n: usize, noise: f64, beta: f64, alpha: f64) -> Network {
    let pos = distinct_positions(rng, n, dim, -4.0, 4.0, 1.0);
    let parts: Vec<(Vec<f64>, f64)> = pos.into_iter().map(|p| (p, rng.dyadic(0.5, 2.0, 4))).collect();
    Network::from_parts(dim, &parts, noise, beta, alpha).expect("valid random network")
}

pub fn verify_nfh1d(trials: usize, seed: u64) -> Result<SuiteReport> {
    run("nfh1d", trials, seed, |s| {
        let net = random_network_1d(&mut SplitMix64::new(s));
        for i in 0..net.n() {
            if let NfhResult::Violation { gap } = nfh_check_1d(&net, i)? {
                return Ok(report("nfh1d", s, Some(json!({"station": i, "gap": [gap.0, gap.1]}))));
            }
        }
        Ok(report("nfh1d", s, None))
    })
}

pub fn verify_bound2n1(trials: usize, seed: u64) -> Result<SuiteReport> {
    run("bound2n1", trials, seed, |s| {
        let net = random_network_1d(&mut SplitMix64::new(s));
        let c = count_cells_1d(&net)?;
        let bad = c.total > 2 * net.n() - 1;
        Ok(report("bound2n1", s, bad.then(|| json!({"n": net.n(), "per_station": c.per_station, "total": c.total}))))
    })
}

/// Every station of minimum power has exactly one cell.
pub fn verify_weakest(trials: usize, seed: u64) -> Result<SuiteReport> {
    run("weakest", trials, seed, |s| {
        let net = random_network_1d(&mut SplitMix64::new(s));
        let min = net.stations.iter().map(|t| t.power).fold(f64::INFINITY, f64::min);
        for i in (0..net.n()).filter(|&i| net.power(i) == min) {
            let cells = reception_intervals(&net, i)?.len();
            if cells != 1 {
                return Ok(report("weakest", s, Some(json!({"station": i, "cells": cells}))));
            }
        }
        Ok(report("weakest", s, None))
    })
}

/// Per instance: a 5-station planar network with alpha = 2 and
/// `disks_per_net` random disks free of every non-excluded station.
pub fn verify_max_principle(trials: usize, seed: u64, disks_per_net: usize) -> Result<SuiteReport> {
    run("maxprinciple", trials, seed, |s| {
        let mut rng = SplitMix64::new(s);
        let noise = rng.uniform(0.0, 0.5);
        let net = random_network_2d(&mut rng, 5, noise, 1.0, 2.0);
        for _ in 0..disks_per_net {
            let exclude = rng.int_in(0, 4) as usize;
            let q = [rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)];
            let free = (0..net.n())
                .filter(|&j| j != exclude)
                .map(|j| net.stations[j].pos.dist(&q))
                .fold(f64::INFINITY, f64::min);
            let r = free * rng.uniform(0.1, 0.95);
            let res = max_principle_check(&net, exclude, &q, r, 60)?;
            if !res.pass {
                return Ok(report(
                    "maxprinciple",
                    s,
                    Some(json!({"exclude": exclude, "center": q, "radius": r, "witness": res.witness,
                                "interior_max": res.interior_max, "boundary_max": res.boundary_max})),
                ));
            }
        }
        Ok(report("maxprinciple", s, None))
    })
}

/// Random reception point of station i in the upper half of the (d+1)-map,
/// or s_i itself.
fn reception_point(rng: &mut SplitMix64, up: &Network, i: usize, reach: f64) -> Vec<f64> {
    if rng.next_f64() < 0.2 {
        return up.pos(i).to_vec();
    }
    loop {
        let mut p: Vec<f64> = up.pos(i).iter().map(|c| c + rng.uniform(-reach, reach)).collect();
        // Zones are symmetric about the base hyperplane; stay in the upper half.
        if let Some(h) = p.last_mut() {
            *h = h.abs();
        }
        if is_heard(up, i, &p) {
            return p;
        }
    }
}

/// Per instance: d in {1, 2}, 2 to 5 stations, `pairs` geodesics between
/// reception points of one station in the (d+1)-map. Instance 0 is replaced
/// by the construction with a disconnected planar zone, and instance 1 by a
/// searched 1D network with a disconnected zone.
pub fn verify_hyperbolic(trials: usize, seed: u64, pairs: usize) -> Result<SuiteReport> {
    run("hyperbolic", trials, seed, |s| {
        let mut rng = SplitMix64::new(s);
        let fail = |i: usize, p1: &[f64], p2: &[f64], min: f64, w: Option<Point>| {
            Ok(report("hyperbolic", s, Some(json!({"station": i, "p1": p1, "p2": p2, "min_sinr": min, "witness": w}))))
        };
        let (net, fixed): (Network, Vec<(usize, Vec<f64>, Vec<f64>)>) = match s {
            _ if s == first_seed(seed) => {
                let (net, rep) = construct_omega_n(2, 100, false)?;
                let c = crate::geometry::omega_center(&rep.parameters, 0);
                let c1 = crate::geometry::omega_center(&rep.parameters, 1);
                let pairs = vec![
                    (0, vec![0.0, 0.0, 0.0], vec![c[0], c[1], 0.0]),
                    (0, vec![c[0], c[1], 0.0], vec![c1[0], c1[1], 0.0]),
                    (0, vec![1.0, 2.0, 0.5], vec![c1[0], c1[1], 0.0]),
                ];
                (net, pairs)
            }
            _ if s == second_seed(seed) => {
                let (net, i, a, b) = disconnected_1d(&mut rng)?;
                (net, vec![(i, vec![a, 0.0], vec![b, 0.0]), (i, vec![a, 0.3], vec![b, 0.1])])
            }
            _ => {
                let d = rng.int_in(1, 2) as usize;
                let n = rng.int_in(2, 5) as usize;
                let beta = rng.uniform(1.0, 2.0);
                let noise = rng.uniform(0.0, 0.2);
                (random_network(&mut rng, d, n, noise, beta, 2.0), Vec::new())
            }
        };
        let up = net.embed_up();
        let mut all = fixed;
        for _ in 0..pairs {
            let i = rng.int_in(0, net.n() as i64 - 1) as usize;
            let reach = min_station_distance(&net, i)?;
            let p1 = reception_point(&mut rng, &up, i, reach);
            let p2 = reception_point(&mut rng, &up, i, reach);
            all.push((i, p1, p2));
        }
        for (i, p1, p2) in all {
            if p1 == p2 {
                continue;
            }
            let r = hyperbolic_reception_check(&net, i, &p1, &p2, 1000)?;
            if !r.pass {
                return fail(i, &p1, &p2, r.min_sinr, r.witness);
            }
        }
        Ok(report("hyperbolic", s, None))
    })
}

fn first_seed(seed: u64) -> u64 {
    SplitMix64::new(seed).next_u64()
}

fn second_seed(seed: u64) -> u64 {
    let mut m = SplitMix64::new(seed);
    m.next_u64();
    m.next_u64()
}

/// Searches random 1D networks for a station with two or more cells and
/// returns a point in each of the first two.
pub fn disconnected_1d(rng: &mut SplitMix64) -> Result<(Network, usize, f64, f64)> {
    for _ in 0..100_000 {
        let n = rng.int_in(3, 6) as usize;
        let pos = distinct_positions(rng, n, 1, -8.0, 8.0, 0.5);
        let parts: Vec<(Vec<f64>, f64)> = pos.into_iter().map(|p| (p, rng.dyadic(0.25, 8.0, 2))).collect();
        let net = Network::from_parts(1, &parts, rng.uniform(0.0, 0.05), 1.0, 2.0)?;
        for i in 0..n {
            let set = reception_intervals(&net, i)?;
            if set.len() >= 2 {
                let mid = |k: usize| {
                    let iv = &set.intervals[k];
                    match (iv.lo.approx(), iv.hi.approx()) {
                        (a, b) if a.is_finite() && b.is_finite() => 0.5 * (a + b),
                        (a, _) if a.is_finite() => a + 1.0,
                        (_, b) => b - 1.0,
                    }
                };
                return Ok((net, i, mid(0), mid(1)));
            }
        }
    }
    Err(Error::Infeasible("no disconnected 1D zone found".into()))
}

/// Reception points lie in the owner's weighted Voronoi zone, and for
/// alpha = 64 in its plain Voronoi cell up to the power-spread factor.
pub fn verify_voronoi(trials: usize, seed: u64) -> Result<SuiteReport> {
    run("voronoi", trials, seed, |s| {
        let mut rng = SplitMix64::new(s);
        let n = rng.int_in(2, 6) as usize;
        let beta = rng.uniform(1.0, 3.0);
        for alpha in [2.0, 64.0] {
            let noise = if alpha == 2.0 { rng.uniform(0.0, 0.2) } else { 0.0 };
            let net = random_network_2d(&mut rng, n, noise, beta, alpha);
            let spread = net.stations.iter().map(|s| s.power).fold(0.0, f64::max)
                / net.stations.iter().map(|s| s.power).fold(f64::INFINITY, f64::min);
            for k in 0..400 {
                let p = if k % 2 == 0 {
                    vec![rng.uniform(-6.0, 6.0), rng.uniform(-6.0, 6.0)]
                } else {
                    let j = rng.int_in(0, n as i64 - 1) as usize;
                    let r = rng.uniform(0.0, 0.6);
                    let t = rng.uniform(0.0, 2.0 * PI);
                    vec![net.pos(j)[0] + r * t.cos(), net.pos(j)[1] + r * t.sin()]
                };
                if net.station_at(&p).is_some() {
                    continue;
                }
                let ReceptionTag::Heard(i) = heard_station(&net, &p).tag else { continue };
                let owner = weighted_voronoi_owner(&net, &p)?;
                // At finite alpha the unweighted cell holds Z_i only up to the
                // distance factor (max power / min power)^(1/alpha).
                let near = voronoi_owner(&net, &p);
                let slack = if alpha == 2.0 { 1.0 } else { spread.powf(1.0 / alpha) };
                let far = net.stations[i].pos.dist(&p) > slack * net.stations[near].pos.dist(&p) * (1.0 + 1e-12);
                if owner != i || (alpha != 2.0 && far) {
                    return Ok(report(
                        "voronoi",
                        s,
                        Some(json!({"alpha": alpha, "point": p, "heard": i, "owner": owner, "nearest": near})),
                    ));
                }
            }
        }
        Ok(report("voronoi", s, None))
    })
}

fn random_similarity(rng: &mut SplitMix64, dim: usize) -> SimilarityTransform {
    let linear = if dim == 2 {
        SimilarityTransform::rotation_2d(rng.uniform(0.0, 2.0 * PI))
    } else {
        let u: Vec<f64> = (0..dim).map(|_| rng.uniform(-1.0, 1.0)).collect();
        SimilarityTransform::align_to_e1(&u)
    };
    let t: Vec<f64> = (0..dim).map(|_| rng.uniform(-10.0, 10.0)).collect();
    SimilarityTransform::translation(t)
        .compose(&SimilarityTransform::scaling(dim, rng.uniform(0.25, 4.0)))
        .compose(&linear)
}

/// SINR is unchanged, to 1e-12 relative, under a random similarity.
pub fn verify_transform(trials: usize, seed: u64) -> Result<SuiteReport> {
    run("transform", trials, seed, |s| {
        let mut rng = SplitMix64::new(s);
        let dim = rng.int_in(1, 3) as usize;
        let n = rng.int_in(2, 6) as usize;
        let alpha = rng.uniform(2.0, 4.0);
        let noise = rng.uniform(0.0, 0.5);
        let net = random_network(&mut rng, dim, n, noise, 1.0, alpha);
        let f = if dim == 1 {
            SimilarityTransform {
                rotation: vec![vec![*rng.pick(&[1.0, -1.0])]],
                translation: Point(vec![rng.uniform(-10.0, 10.0)]),
                scale: rng.uniform(0.25, 4.0),
            }
        } else {
            random_similarity(&mut rng, dim)
        };
        let moved = transform_network(&net, &f)?;
        let i = rng.int_in(0, n as i64 - 1) as usize;
        let p: Vec<f64> = (0..dim).map(|_| rng.uniform(-6.0, 6.0)).collect();
        let (a, b) = (sinr(&net, i, &p)?, sinr(&moved, i, &f.apply(&p))?);
        let rel = (a - b).abs() / a.abs().max(f64::MIN_POSITIVE);
        Ok(report("transform", s, (rel > 1e-12).then(|| json!({"point": p, "station": i, "sinr": a, "moved": b}))))
    })
}

/// chi = 10^5 discrete wire against the closed form, for d / r cycling
/// through 0.25, 0.5, 2, 4.
pub fn verify_wireconv(trials: usize, seed: u64) -> Result<SuiteReport> {
    let ratios: Vec<f64> = (0..trials).map(|k| [0.25, 0.5, 2.0, 4.0][k % 4]).collect();
    let mut master = SplitMix64::new(seed);
    let seeds: Vec<u64> = (0..trials).map(|_| master.next_u64()).collect();
    let instances = seeds
        .into_par_iter()
        .zip(ratios)
        .map(|(s, ratio)| {
            let mut rng = SplitMix64::new(s);
            let r = rng.uniform(0.5, 4.0);
            let power = rng.uniform(0.5, 4.0);
            let w = Wire::new(vec![rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)], r, power)?;
            let t = rng.uniform(0.0, 2.0 * PI);
            let k = [w.center[0] + ratio * r * t.cos(), w.center[1] + ratio * r * t.sin()];
            let exact = wire_interference(&w, &k)?;
            let disc = discrete_wire_interference(&w, 100_000, &k)?;
            let rel = (disc - exact).abs() / exact;
            Ok(report(
                "wireconv",
                s,
                (rel >= 1e-4).then(|| json!({"ratio": ratio, "exact": exact, "discrete": disc, "relative": rel})),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let failures = instances.iter().filter(|r| !r.pass).count();
    Ok(SuiteReport { suite: "wireconv".into(), seed, trials, pass: failures == 0, failures, instances })
}

/// Scheme C soundness: `samples` interior points in every cell of the QDS
/// of station 0 on a random network with N in [0.5, 1], stations at least
/// 1.5 apart, station 0 of power 2 and the rest in [0.5, 1].
pub fn verify_tagcell(trials: usize, seed: u64, samples: usize) -> Result<SuiteReport> {
    run("tagcell", trials, seed, |s| {
        let mut rng = SplitMix64::new(s);
        let n = rng.int_in(2, 6) as usize;
        let noise = rng.dyadic(0.5, 1.0, 4);
        let eps = *rng.pick(&[0.05, 0.1]);
        let pos = distinct_positions(&mut rng, n, 2, -4.0, 4.0, 1.5);
        let mut parts: Vec<(Vec<f64>, f64)> = pos.into_iter().map(|p| (p, rng.dyadic(0.5, 1.0, 4))).collect();
        parts[0].1 = 2.0;
        let net = Network::from_parts(2, &parts, noise, 1.0, 2.0)?;
        let q = qds_build(&net, 0, Scheme::C, eps, None)?;
        let beta = net.beta;
        let e = q.epsilon;
        let (lo, hi) = ((1.0 - e).powf(2.0 * net.alpha) * beta, (1.0 + e).powf(2.0 * net.alpha) * beta);
        let bad = (0..q.height).into_par_iter().find_map_any(|cy| {
            let mut r = SplitMix64::new(s ^ (cy as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            for cx in 0..q.width {
                let tag = q.tag(cx, cy);
                let [x0, y0, x1, y1] = q.cell_bounds(cx, cy);
                for _ in 0..samples {
                    let p = [r.uniform(x0, x1), r.uniform(y0, y1)];
                    if p[0] <= x0 || p[1] <= y0 {
                        continue;
                    }
                    let Ok(v) = sinr(&net, 0, &p) else { continue };
                    let ok = match tag {
                        CellTag::Plus => v >= beta,
                        CellTag::Minus => v < beta,
                        CellTag::Question => v >= lo && v <= hi,
                    };
                    if !ok {
                        return Some(json!({"cell": [cx, cy], "tag": tag.name(), "point": p, "sinr": v, "epsilon": e}));
                    }
                }
            }
            None
        });
        Ok(report("tagcell", s, bad))
    })
}

/// Closed-form membership against is_heard on `points` random points per
/// random noise-free pair, away from a 1e-9 band about the boundary.
pub fn verify_two_station(trials: usize, seed: u64, points: usize) -> Result<SuiteReport> {
    run("twostation", trials, seed, |s| {
        let mut rng = SplitMix64::new(s);
        let dim = rng.int_in(1, 3) as usize;
        let a = rng.uniform(0.25, 4.0);
        let pos2: Vec<f64> = {
            let u: Vec<f64> = (0..dim).map(|_| rng.uniform(-1.0, 1.0)).collect();
            let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-3);
            u.iter().map(|x| x / norm * a).collect()
        };
        let p1 = rng.uniform(0.25, 4.0);
        let p2 = if rng.next_f64() < 0.1 { p1 } else { rng.uniform(0.25, 4.0) };
        let beta = if rng.next_f64() < 0.1 { 1.0 } else { rng.uniform(0.5, 3.0) };
        let net = Network::from_parts(dim, &[(vec![0.0; dim], p1), (pos2, p2)], 0.0, beta, 2.0)?;
        let cfg = two_station_config(&net, 0, true)?;
        let span = 4.0 * a;
        for _ in 0..points {
            let p: Vec<f64> = (0..dim).map(|_| rng.uniform(-span, span)).collect();
            if cfg.signed_distance(&p).abs() < 1e-9 {
                continue;
            }
            if cfg.contains(&p) != is_heard(&net, 0, &p) {
                return Ok(report("twostation", s, Some(json!({"point": p, "kind": cfg.kind, "tau": cfg.tau}))));
            }
        }
        Ok(report("twostation", s, None))
    })
}

/// Random integer polynomial of degree 1 to 12 with coefficients in
/// [-1000, 1000], and a dyadic interval (a, b].
pub fn random_sturm_instance(rng: &mut SplitMix64) -> (RationalUniPoly, f64, f64) {
    let deg = rng.int_in(1, 12) as usize;
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.int_in(-1000, 1000)).collect();
    while c[deg] == 0 {
        c[deg] = rng.int_in(-1000, 1000);
    }
    let a = rng.dyadic(-20.0, 0.0, 6);
    let b = a + rng.dyadic(0.5, 20.0, 6);
    (RationalUniPoly::from_i64(&c), a, b)
}

/// Distinct roots in (a, b] by sign scan over `m` uniform steps of the
/// square-free part. Samples too close to zero for f64 are re-signed
/// exactly, and steps around local minima of |f| are rescanned 1000-fold
/// exactly so that close root pairs are not missed.
pub fn scan_root_count(f: &RationalUniPoly, a: f64, b: f64, m: usize) -> usize {
    let g = f.square_free();
    let coeffs: Vec<f64> = g.coeffs().iter().map(rational_f64).collect();
    let scale = coeffs.iter().fold(0.0f64, |s, c| s.max(c.abs()));
    let coeffs: Vec<f64> = coeffs.iter().map(|c| c / scale).collect();
    let xs = |k: usize| if k == m { b } else { a + (b - a) * k as f64 / m as f64 };
    let sign_exact = |x: f64| {
        let v = g.eval(&BigRational::from_float(x).unwrap());
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    };
    let eval = |x: f64| {
        let (mut v, mut bound) = (0.0f64, 0.0f64);
        for c in coeffs.iter().rev() {
            v = v * x + c;
            bound = bound * x.abs() + c.abs();
        }
        (v, bound * 1e-13)
    };
    let mut vals = Vec::with_capacity(m + 1);
    let mut signs = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let x = xs(k);
        let (v, err) = eval(x);
        vals.push(v.abs());
        signs.push(if v.abs() <= err { sign_exact(x) } else if v > 0.0 { 1 } else { -1 });
    }
    let mut points: Vec<(f64, i32)> = (0..=m).map(|k| (xs(k), signs[k])).collect();
    for k in 1..m {
        let local_min = vals[k] <= vals[k - 1] && vals[k] <= vals[k + 1];
        if local_min && signs[k - 1] == signs[k + 1] && signs[k - 1] != 0 {
            let (lo, hi) = (xs(k - 1), xs(k + 1));
            points.extend((1..2000).map(|j| lo + (hi - lo) * j as f64 / 2000.0).map(|x| (x, sign_exact(x))));
        }
    }
    points.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
    points.dedup_by(|p, q| p.0 == q.0);
    let mut count = 0;
    let mut last = points[0].1;
    for &(_, s) in &points[1..] {
        if s == 0 || (last != 0 && s != last) {
            count += 1;
        }
        last = s;
    }
    count
}

fn rational_f64(c: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or_else(|| {
        let n: &BigInt = c.numer();
        let d: &BigInt = c.denom();
        let shift = n.bits().max(d.bits()) as i64 - 1000;
        let (n, d) = if shift > 0 { (n >> shift as usize, d >> shift as usize) } else { (n.clone(), d.clone()) };
        n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0)
    })
}

pub fn verify_sturm(trials: usize, seed: u64, scan: usize) -> Result<SuiteReport> {
    run("sturm", trials, seed, |s| {
        let (f, a, b) = random_sturm_instance(&mut SplitMix64::new(s));
        let exact = sturm_count(&f, &BigRational::from_float(a).unwrap(), &BigRational::from_float(b).unwrap())?;
        let oracle = scan_root_count(&f, a, b, scan);
        Ok(report(
            "sturm",
            s,
            (exact != oracle).then(|| json!({"poly": f.to_string(), "a": a, "b": b, "sturm": exact, "scan": oracle})),
        ))
    })
}
