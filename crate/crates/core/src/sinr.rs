//! Floating-point energy, interference and SINR evaluation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Network;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReceptionTag {
    Heard(usize),
    Silent,
}

/// Result of [`heard_station`]. `unique` is false only when beta < 1 and
/// several stations clear the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reception {
    pub tag: ReceptionTag,
    pub unique: bool,
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// x2^(alpha/2), i.e. dist^alpha from a squared distance.
pub(crate) fn pow_half(x2: f64, alpha: f64) -> f64 {
    if alpha == 2.0 {
        x2
    } else if alpha.fract() == 0.0 && alpha % 2.0 == 0.0 && alpha <= 64.0 {
        x2.powi((alpha / 2.0) as i32)
    } else {
        x2.powf(alpha / 2.0)
    }
}

fn check(net: &Network, i: usize, p: &[f64]) -> Result<()> {
    net.check_station(i)?;
    net.check_point(p)
}

pub fn energy(net: &Network, i: usize, p: &[f64]) -> Result<f64> {
    check(net, i, p)?;
    let d2 = dist2(net.pos(i), p);
    if d2 == 0.0 {
        return Err(Error::AtStation("energy"));
    }
    Ok(net.power(i) / pow_half(d2, net.alpha))
}

pub fn interference(net: &Network, exclude: usize, p: &[f64]) -> Result<f64> {
    check(net, exclude, p)?;
    let mut total = 0.0;
    for j in (0..net.n()).filter(|&j| j != exclude) {
        let d2 = dist2(net.pos(j), p);
        if d2 == 0.0 {
            return Err(Error::AtStation("interference"));
        }
        total += net.power(j) / pow_half(d2, net.alpha);
    }
    Ok(total)
}

/// 1/SINR, evaluated in the scale-free form
/// sum_j (Psi_j/Psi_i)(d_i/d_j)^alpha + (N/Psi_i) d_i^alpha.
pub fn sinr_reciprocal(net: &Network, i: usize, p: &[f64]) -> Result<f64> {
    check(net, i, p)?;
    if net.station_at(p).is_some() {
        return Err(Error::AtStation("SINR"));
    }
    let di2 = dist2(net.pos(i), p);
    let pi = net.power(i);
    let mut r = net.noise / pi * pow_half(di2, net.alpha);
    for j in (0..net.n()).filter(|&j| j != i) {
        let dj2 = dist2(net.pos(j), p);
        r += net.power(j) / pi * pow_half(di2 / dj2, net.alpha);
    }
    Ok(r)
}

pub fn sinr(net: &Network, i: usize, p: &[f64]) -> Result<f64> {
    Ok(1.0 / sinr_reciprocal(net, i, p)?)
}

/// Reception predicate: SINR >= beta, with Z_i containing s_i itself and no
/// other station position.
pub fn is_heard(net: &Network, i: usize, p: &[f64]) -> bool {
    if i >= net.n() || p.len() != net.dim {
        return false;
    }
    match net.station_at(p) {
        Some(k) => k == i,
        None => sinr(net, i, p).map(|s| s >= net.beta).unwrap_or(false),
    }
}

/// Which station, if any, is heard at `p`. Ties at exact equality go to the
/// lowest index.
pub fn heard_station(net: &Network, p: &[f64]) -> Reception {
    if p.len() != net.dim {
        return Reception { tag: ReceptionTag::Silent, unique: true };
    }
    if let Some(k) = net.station_at(p) {
        return Reception { tag: ReceptionTag::Heard(k), unique: true };
    }
    let mut best: Option<(usize, f64)> = None;
    let mut count = 0;
    for i in 0..net.n() {
        let s = match sinr(net, i, p) {
            Ok(s) => s,
            Err(_) => continue,
        };
        if s >= net.beta {
            count += 1;
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((i, s));
            }
        }
    }
    match best {
        Some((i, _)) => Reception { tag: ReceptionTag::Heard(i), unique: count <= 1 || net.beta >= 1.0 },
        None => Reception { tag: ReceptionTag::Silent, unique: true },
    }
}

/// argmax_i Psi_i^(1/alpha) / dist(s_i, p); lower index wins ties.
pub fn weighted_voronoi_owner(net: &Network, p: &[f64]) -> Result<usize> {
    net.check_point(p)?;
    if let Some(k) = net.station_at(p) {
        return Ok(k);
    }
    let mut best = 0;
    let mut best_key = f64::NEG_INFINITY;
    for i in 0..net.n() {
        let key = net.power(i).ln() / net.alpha - 0.5 * dist2(net.pos(i), p).ln();
        if key > best_key {
            best = i;
            best_key = key;
        }
    }
    Ok(best)
}

/// Owner of `p` in the unweighted Voronoi diagram; lower index wins ties.
pub fn voronoi_owner(net: &Network, p: &[f64]) -> usize {
    let mut best = 0;
    let mut bd = f64::INFINITY;
    for i in 0..net.n() {
        let d = dist2(net.pos(i), p);
        if d < bd {
            best = i;
            bd = d;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym() -> Network {
        Network::from_parts(2, &[(vec![0.0, 0.0], 1.0), (vec![2.0, 0.0], 1.0)], 0.0, 1.0, 2.0).unwrap()
    }

    #[test]
    fn energy_values() {
        let net = Network::from_parts(2, &[(vec![0.0, 0.0], 1.0), (vec![3.0, 0.0], 4.0)], 0.0, 1.0, 2.0).unwrap();
        assert_eq!(energy(&net, 0, &[1.0, 0.0]).unwrap(), 1.0);
        assert_eq!(energy(&net, 1, &[1.0, 0.0]).unwrap(), 1.0);
        assert!(matches!(energy(&net, 0, &[0.0, 0.0]), Err(Error::AtStation(_))));
    }

    #[test]
    fn interference_values() {
        assert_eq!(interference(&sym(), 0, &[1.0, 0.0]).unwrap(), 1.0);
        let three = Network::from_parts(
            2,
            &[(vec![1.0, 0.0], 1.0), (vec![0.0, 1.0], 1.0), (vec![-1.0, 0.0], 1.0)],
            0.0,
            1.0,
            2.0,
        )
        .unwrap();
        assert_eq!(interference(&three, 0, &[0.0, 0.0]).unwrap(), 2.0);
        assert!(interference(&sym(), 0, &[2.0, 0.0]).is_err());
        // The excluded station's own position is fine.
        assert_eq!(interference(&sym(), 0, &[0.0, 0.0]).unwrap(), 0.25);
    }

    #[test]
    fn sinr_values() {
        let net = sym();
        assert_eq!(sinr(&net, 0, &[1.0, 0.0]).unwrap(), 1.0);
        // E = 1/0.25 = 4, I = 1/2.25: 4 * 2.25 = 9.
        assert!((sinr(&net, 0, &[0.5, 0.0]).unwrap() - 9.0).abs() < 1e-14);
        assert!((sinr_reciprocal(&net, 0, &[0.5, 0.0]).unwrap() - 1.0 / 9.0).abs() < 1e-16);
        assert!(sinr(&net, 0, &[2.0, 0.0]).is_err());
        assert!(sinr_reciprocal(&net, 0, &[0.0, 0.0]).is_err());
    }

    #[test]
    fn heard() {
        let net = sym();
        assert!(is_heard(&net, 0, &[0.0, 0.0]));
        assert!(!is_heard(&net, 0, &[2.0, 0.0]));
        assert!(is_heard(&net, 0, &[1.0, 0.0]));
        assert!(!is_heard(&net, 0, &[1.1, 0.0]));
        assert_eq!(heard_station(&net, &[0.2, 0.0]).tag, ReceptionTag::Heard(0));
        assert_eq!(heard_station(&net, &[1.0, 0.0]).tag, ReceptionTag::Heard(0));
        let mut noisy = net.clone();
        noisy.noise = 1.0;
        assert_eq!(heard_station(&noisy, &[50.0, 50.0]).tag, ReceptionTag::Silent);
    }

    #[test]
    fn overlapping_zones_flagged() {
        let mut net = sym();
        net.beta = 0.5;
        let r = heard_station(&net, &[0.9, 0.0]);
        assert_eq!(r.tag, ReceptionTag::Heard(0));
        assert!(!r.unique);
    }

    #[test]
    fn voronoi() {
        let net = Network::from_parts(2, &[(vec![0.0, 0.0], 4.0), (vec![2.0, 0.0], 1.0)], 0.0, 1.0, 2.0).unwrap();
        assert_eq!(weighted_voronoi_owner(&net, &[1.5, 0.0]).unwrap(), 1);
        assert_eq!(weighted_voronoi_owner(&net, &[1.0, 0.0]).unwrap(), 0);
        assert_eq!(weighted_voronoi_owner(&net, &[0.0, 0.0]).unwrap(), 0);
        let eq = sym();
        assert_eq!(weighted_voronoi_owner(&eq, &[0.9, 3.0]).unwrap(), 0);
        assert_eq!(weighted_voronoi_owner(&eq, &[1.1, 3.0]).unwrap(), 1);
        assert_eq!(weighted_voronoi_owner(&eq, &[1.0, 3.0]).unwrap(), 0);
    }
}
