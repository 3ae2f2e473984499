use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::Network;
use crate::pointloc::fatness_bounds;
use crate::sinr::is_heard;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaEstimate {
    pub area: f64,
    /// pi rho_hat^2.
    pub lower_bound: f64,
    /// pi delta_hat^2.
    pub upper_bound: f64,
    pub within_bounds: bool,
    pub step: f64,
}

/// Radius about s_i containing Z_i: delta_hat, tightened by every station j
/// with beta Psi_j > Psi_i, since reception needs ((d + |s_i s_j|) / d)^alpha
/// >= beta Psi_j / Psi_i.
pub fn enclosing_radius(net: &Network, i: usize) -> Result<f64> {
    let mut r = fatness_bounds(net, i)?.delta_hat;
    for j in (0..net.n()).filter(|&j| j != i) {
        let t = (net.beta * net.power(j) / net.power(i)).powf(1.0 / net.alpha);
        if t > 1.0 {
            r = r.min(net.stations[j].pos.dist(net.pos(i)) / (t - 1.0));
        }
    }
    Ok(r)
}

/// Area of Z_i by midpoint counting on a grid of spacing `step` over the
/// square of half-width `enclosing_radius` about s_i.
pub fn area_estimate(net: &Network, i: usize, step: f64) -> Result<AreaEstimate> {
    net.check_station(i)?;
    if net.dim != 2 {
        return Err(Error::Precondition("area estimate needs a planar network".into()));
    }
    if net.noise <= 0.0 {
        return Err(Error::Precondition("area estimate needs N > 0".into()));
    }
    if !(step > 0.0) {
        return Err(Error::Precondition("grid step must be positive".into()));
    }
    let fb = fatness_bounds(net, i)?;
    let r = enclosing_radius(net, i)?;
    let m = (2.0 * r / step).ceil() as usize;
    if (m as u128).pow(2) > 1 << 28 {
        return Err(Error::GridTooLarge { cells: (m as u128).pow(2), limit: 1 << 28 });
    }
    let s = net.pos(i);
    let (x0, y0) = (s[0] - r, s[1] - r);
    let hits: usize = (0..m)
        .into_par_iter()
        .map(|ky| {
            let y = y0 + (ky as f64 + 0.5) * step;
            (0..m).filter(|&kx| is_heard(net, i, &[x0 + (kx as f64 + 0.5) * step, y])).count()
        })
        .sum();
    let area = hits as f64 * step * step;
    let lower_bound = PI * fb.rho_hat * fb.rho_hat;
    let upper_bound = PI * fb.delta_hat * fb.delta_hat;
    Ok(AreaEstimate { area, lower_bound, upper_bound, within_bounds: lower_bound <= area && area <= upper_bound, step })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::two_station_config;

    #[test]
    fn disk_area() {
        let net = Network::from_parts(2, &[(vec![0.0, 0.0], 1.0), (vec![3.0, 0.0], 4.0)], 1e-4, 1.0, 2.0).unwrap();
        assert_eq!(enclosing_radius(&net, 0).unwrap(), 3.0);
        let quiet = Network::from_parts(2, &[(vec![0.0, 0.0], 1.0), (vec![3.0, 0.0], 4.0)], 0.0, 1.0, 2.0).unwrap();
        let c = two_station_config(&quiet, 0, true).unwrap();
        let est = area_estimate(&net, 0, 0.01).unwrap();
        let disk = PI * c.radius.unwrap().powi(2);
        assert!((est.area - disk).abs() / disk < 0.01, "{} vs {}", est.area, disk);
        assert!(est.within_bounds);
    }

    #[test]
    fn noise_required() {
        let net = Network::from_parts(2, &[(vec![0.0, 0.0], 1.0), (vec![3.0, 0.0], 4.0)], 0.0, 1.0, 2.0).unwrap();
        assert!(area_estimate(&net, 0, 0.1).is_err());
    }
}
