//! Network whose strongest station is heard in n + 1 separate cells.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::Serialize;

use super::cells2d::{count_cells_2d_auto, CellTarget};
use crate::error::{Error, Result};
use crate::model::{Network, Station};
use crate::sinr::sinr;

const SEARCH_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OmegaParameters {
    pub n: usize,
    pub radius: f64,
    pub lower: f64,
    pub upper: f64,
    pub power: f64,
}

/// Smallest integer R >= 2n + 1 with U > L, and P0 = (L + U) / 2.
pub fn omega_parameters(n: usize) -> Result<OmegaParameters> {
    if n < 2 {
        return Err(Error::Precondition("n >= 2 required".into()));
    }
    let m = (n * n - 1) as f64;
    for r in (2 * n as u64 + 1)..SEARCH_CAP {
        let r = r as f64;
        let lower = (5.0 + 4.0 * m / (3.0 * r * r)) * r * r;
        let upper = (5.8 + m / (27.0 * r * r)) * (r - 1.0).powi(2);
        if upper > lower && r * (PI / n as f64).sin() >= 1.0 {
            return Ok(OmegaParameters { n, radius: r, lower, upper, power: 0.5 * (lower + upper) });
        }
    }
    Err(Error::Infeasible(format!("no radius below {SEARCH_CAP} satisfies U > L")))
}

pub fn omega_center(p: &OmegaParameters, k: usize) -> [f64; 2] {
    let t = 2.0 * PI * k as f64 / p.n as f64;
    [p.radius * t.cos(), p.radius * t.sin()]
}

const OFFSETS: [[f64; 2]; 4] = [[-1.0, 1.0], [1.0, 1.0], [1.0, -1.0], [-1.0, -1.0]];

/// s0 at the origin with power P0, then the unit-power square vertices
/// q{k}_{0..4} at C_k + (+-1/sqrt2, +-1/sqrt2). N = 1, beta = 1, alpha = 2.
pub fn omega_network(p: &OmegaParameters) -> Result<Network> {
    let mut stations = vec![Station::new("s0", vec![0.0, 0.0], p.power)];
    for k in 0..p.n {
        let c = omega_center(p, k);
        for (v, o) in OFFSETS.iter().enumerate() {
            let pos = vec![c[0] + o[0] * FRAC_1_SQRT_2, c[1] + o[1] * FRAC_1_SQRT_2];
            stations.push(Station::new(format!("q{k}_{v}"), pos, 1.0));
        }
    }
    Network::new(2, stations, 1.0, 1.0, 2.0)
}

#[derive(Debug, Clone, Serialize)]
pub struct OmegaReport {
    pub parameters: OmegaParameters,
    /// SINR(s0, C_k) for every k.
    pub center_sinr: Vec<f64>,
    pub r1_pass: bool,
    /// Largest SINR(s0, p) over the square boundary samples.
    pub boundary_max_sinr: f64,
    pub boundary_samples_per_square: usize,
    pub r2_pass: bool,
    /// Interference of a square's own four stations at its center.
    pub own_square_interference: f64,
    pub cell_count: Option<usize>,
    pub cell_step: Option<f64>,
    pub pass: bool,
}

/// Builds the network and checks R1 at the centers and R2 on
/// `boundary_samples` points per square. With `count_cells` set, also runs
/// the auto-refined flood fill for s0 starting from step 0.1.
pub fn construct_omega_n(n: usize, boundary_samples: usize, count_cells: bool) -> Result<(Network, OmegaReport)> {
    let p = omega_parameters(n)?;
    let net = omega_network(&p)?;
    let center_sinr: Vec<f64> = (0..n).map(|k| sinr(&net, 0, &omega_center(&p, k))).collect::<Result<_>>()?;
    let r1_pass = center_sinr.iter().all(|&s| s >= 1.0);

    let per_edge = boundary_samples.max(4).div_ceil(4);
    let mut boundary_max_sinr = f64::NEG_INFINITY;
    for k in 0..n {
        let c = omega_center(&p, k);
        for e in 0..4 {
            let a = OFFSETS[e];
            let b = OFFSETS[(e + 1) % 4];
            for j in 0..per_edge {
                let t = (j as f64 + 0.5) / per_edge as f64;
                let q = [
                    c[0] + FRAC_1_SQRT_2 * (a[0] + t * (b[0] - a[0])),
                    c[1] + FRAC_1_SQRT_2 * (a[1] + t * (b[1] - a[1])),
                ];
                boundary_max_sinr = boundary_max_sinr.max(sinr(&net, 0, &q)?);
            }
        }
    }
    let r2_pass = boundary_max_sinr < 1.0;
    // Own-square interference at the center, in the square's local frame.
    let own_square_interference = OFFSETS
        .iter()
        .map(|o| 1.0 / ((o[0] * FRAC_1_SQRT_2).powi(2) + (o[1] * FRAC_1_SQRT_2).powi(2)))
        .sum();

    let (cell_count, cell_step) = if count_cells {
        let r = count_cells_2d_auto(&net, CellTarget::Station(0), 0.1, None, false, 6)?;
        (Some(r.count), Some(r.step))
    } else {
        (None, None)
    };
    let pass = r1_pass && r2_pass && cell_count.is_none_or(|c| c == n + 1);
    let report = OmegaReport {
        parameters: p,
        center_sinr,
        r1_pass,
        boundary_max_sinr,
        boundary_samples_per_square: 4 * per_edge,
        r2_pass,
        own_square_interference,
        cell_count,
        cell_step,
        pass,
    };
    Ok((net, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters() {
        let p = omega_parameters(2).unwrap();
        assert_eq!(p.radius, 15.0);
        assert!((p.power - 1132.95).abs() < 0.01, "{}", p.power);
        assert_eq!(omega_parameters(6).unwrap().radius, 18.0);
        assert!(omega_parameters(1).is_err());
    }

    #[test]
    fn three_squares() {
        let (net, r) = construct_omega_n(3, 100, true).unwrap();
        assert_eq!(net.n(), 13);
        assert!(r.r1_pass && r.r2_pass);
        assert!((r.own_square_interference - 4.0).abs() < 1e-12);
        assert_eq!(r.cell_count, Some(4));
        assert!(r.pass);
    }
}
