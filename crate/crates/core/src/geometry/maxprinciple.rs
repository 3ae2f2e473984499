use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::Network;
use crate::sinr::{interference, sinr};

#[derive(Debug, Clone, Serialize)]
pub struct MaxPrincipleResult {
    pub pass: bool,
    pub interior_max: f64,
    pub boundary_max: f64,
    /// Interior point exceeding the boundary maximum, if any.
    pub witness: Option<[f64; 2]>,
}

/// Maximum of `f` over the circle (q, r): dense angular sampling, then
/// golden-section refinement around the best samples.
fn circle_max(f: &dyn Fn(&[f64; 2]) -> f64, q: &[f64], r: f64, samples: usize) -> f64 {
    let m = samples.max(360) * 4;
    let at = |th: f64| f(&[q[0] + r * th.cos(), q[1] + r * th.sin()]);
    let vals: Vec<f64> = (0..m).map(|k| at(2.0 * PI * k as f64 / m as f64)).collect();
    let mut best = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let h = 2.0 * PI / m as f64;
    for k in 0..m {
        let (prev, next) = (vals[(k + m - 1) % m], vals[(k + 1) % m]);
        if vals[k] < prev || vals[k] < next {
            continue;
        }
        let (mut a, mut b) = ((k as f64 - 1.0) * h, (k as f64 + 1.0) * h);
        let g = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..80 {
            let c = b - g * (b - a);
            let d = a + g * (b - a);
            if at(c) > at(d) {
                b = d;
            } else {
                a = c;
            }
        }
        best = best.max(at(0.5 * (a + b)));
    }
    best
}

fn interior_max(f: &dyn Fn(&[f64; 2]) -> f64, q: &[f64], r: f64, samples: usize) -> (f64, [f64; 2]) {
    let m = samples.max(2);
    let mut best = (f64::NEG_INFINITY, [q[0], q[1]]);
    for a in 0..m {
        for b in 0..m {
            let x = -r + 2.0 * r * (a as f64 + 0.5) / m as f64;
            let y = -r + 2.0 * r * (b as f64 + 0.5) / m as f64;
            if x * x + y * y >= r * r {
                continue;
            }
            let p = [q[0] + x, q[1] + y];
            let v = f(&p);
            if v > best.0 {
                best = (v, p);
            }
        }
    }
    best
}

fn check_disk(net: &Network, exclude: usize, q: &[f64], r: f64) -> Result<()> {
    net.check_station(exclude)?;
    net.check_point(q)?;
    if net.dim != 2 || net.alpha != 2.0 {
        return Err(Error::Precondition("the maximum principle check is for alpha = 2 in the plane".into()));
    }
    if !(r > 0.0) {
        return Err(Error::Precondition("disk radius must be positive".into()));
    }
    if let Some(j) = (0..net.n()).find(|&j| j != exclude && net.stations[j].pos.dist(q) <= r) {
        return Err(Error::Precondition(format!("station {} lies in the disk", net.stations[j].id)));
    }
    Ok(())
}

/// Interference of the stations other than `exclude` over the disk (q, r):
/// the interior maximum on a `samples` x `samples` lattice may not exceed
/// the boundary maximum by more than 1e-9.
pub fn max_principle_check(
    net: &Network,
    exclude: usize,
    q: &[f64],
    r: f64,
    samples: usize,
) -> Result<MaxPrincipleResult> {
    check_disk(net, exclude, q, r)?;
    let f = |p: &[f64; 2]| interference(net, exclude, p).unwrap_or(f64::INFINITY);
    let boundary_max = circle_max(&f, q, r, samples);
    let (imax, at) = interior_max(&f, q, r, samples);
    let pass = imax <= boundary_max + 1e-9;
    Ok(MaxPrincipleResult { pass, interior_max: imax, boundary_max, witness: (!pass).then_some(at) })
}

/// The same comparison for SINR(s_i, .) itself. Whether SINR obeys a maximum
/// principle is open; this only reports the two maxima.
pub fn sinr_max_sampler(net: &Network, i: usize, q: &[f64], r: f64, samples: usize) -> Result<(f64, f64)> {
    check_disk(net, i, q, r)?;
    if net.stations[i].pos.dist(q) <= r {
        return Err(Error::Precondition("the disk must avoid every station".into()));
    }
    let f = |p: &[f64; 2]| sinr(net, i, p).unwrap_or(f64::INFINITY);
    Ok((interior_max(&f, q, r, samples).0, circle_max(&f, q, r, samples)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_interferer() {
        let net = Network::from_parts(2, &[(vec![0.0, 0.0], 1.0), (vec![5.0, 0.0], 3.0)], 0.0, 1.0, 2.0).unwrap();
        let r = max_principle_check(&net, 0, &[1.0, 0.0], 2.0, 60).unwrap();
        assert!(r.pass);
        // Nearest boundary point (3, 0) is at distance 2 from the interferer.
        assert!((r.boundary_max - 0.75).abs() < 1e-12);
        assert!(r.interior_max < r.boundary_max);
    }

    #[test]
    fn station_inside_rejected() {
        let net = Network::from_parts(2, &[(vec![0.0, 0.0], 1.0), (vec![5.0, 0.0], 3.0)], 0.0, 1.0, 2.0).unwrap();
        assert!(max_principle_check(&net, 0, &[4.0, 0.0], 2.0, 20).is_err());
        // The excluded station may sit inside.
        assert!(max_principle_check(&net, 0, &[0.5, 0.0], 2.0, 20).is_ok());
    }
}
