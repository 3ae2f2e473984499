use std::f64::consts::PI;

use serde::Serialize;

use crate::error::Result;
use crate::model::{min_station_distance, Network};

/// Radii bounds for Z_i about its station. Powers and noise are normalised
/// by Psi_i, so P_bar = max_{j != i} Psi_j / Psi_i and N' = N / Psi_i.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FatnessBounds {
    /// delta / ((beta (P_bar (n-1) + N' delta^alpha))^(1/alpha) + 1).
    pub rho_hat: f64,
    /// The weaker delta / (P_bar n)^(1/alpha).
    pub rho_hat_simple: f64,
    /// (1 / (beta N'))^(1/alpha); infinite when N = 0.
    pub delta_hat: f64,
    pub phi_hat: f64,
    /// 3 pi delta_hat n^2.
    pub perimeter_bound: f64,
    pub delta: f64,
    pub p_bar: f64,
}

impl FatnessBounds {
    pub fn is_bounded(&self) -> bool {
        self.delta_hat.is_finite()
    }
}

pub fn fatness_bounds(net: &Network, i: usize) -> Result<FatnessBounds> {
    let delta = min_station_distance(net, i)?;
    let n = net.n() as f64;
    let a = net.alpha;
    let pi = net.power(i);
    let p_bar = (0..net.n()).filter(|&j| j != i).map(|j| net.power(j) / pi).fold(0.0, f64::max);
    let noise = net.noise / pi;
    let rho_hat = delta / ((net.beta * (p_bar * (n - 1.0) + noise * delta.powf(a))).powf(1.0 / a) + 1.0);
    let rho_hat_simple = delta / (p_bar * n).powf(1.0 / a);
    let delta_hat = if net.noise > 0.0 { (1.0 / (net.beta * noise)).powf(1.0 / a) } else { f64::INFINITY };
    Ok(FatnessBounds {
        rho_hat,
        rho_hat_simple,
        delta_hat,
        phi_hat: delta_hat / rho_hat,
        perimeter_bound: 3.0 * PI * delta_hat * n * n,
        delta,
        p_bar,
    })
}
