use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Network, Point};

/// Continuous circle of weak transmitters with total power `power`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Wire {
    pub center: Point,
    pub radius: f64,
    pub power: f64,
}

impl Wire {
    pub fn new(center: impl Into<Point>, radius: f64, power: f64) -> Result<Self> {
        let center = center.into();
        if center.dim() != 2 {
            return Err(Error::Dimension { expected: 2, got: center.dim() });
        }
        if !(radius > 0.0 && power > 0.0) {
            return Err(Error::Precondition("wire radius and power must be positive".into()));
        }
        Ok(Wire { center, radius, power })
    }
}

/// P / |r^2 - d^2| with d the distance from the wire's center (alpha = 2).
pub fn wire_interference(w: &Wire, k: &[f64]) -> Result<f64> {
    if k.len() != 2 {
        return Err(Error::Dimension { expected: 2, got: k.len() });
    }
    let d2 = w.center.dist2(k);
    let gap = (w.radius * w.radius - d2).abs();
    if gap == 0.0 {
        return Err(Error::AtStation("wire interference"));
    }
    Ok(w.power / gap)
}

/// The same wire as `chi` equally spaced stations of power P / chi.
pub fn discrete_wire_interference(w: &Wire, chi: usize, k: &[f64]) -> Result<f64> {
    if k.len() != 2 {
        return Err(Error::Dimension { expected: 2, got: k.len() });
    }
    if chi == 0 {
        return Err(Error::Precondition("chi must be positive".into()));
    }
    let each = w.power / chi as f64;
    let mut total = 0.0;
    for m in 0..chi {
        let th = 2.0 * PI * m as f64 / chi as f64;
        let x = w.center[0] + w.radius * th.cos() - k[0];
        let y = w.center[1] + w.radius * th.sin() - k[1];
        let d2 = x * x + y * y;
        if d2 == 0.0 {
            return Err(Error::AtStation("discrete wire interference"));
        }
        total += each / d2;
    }
    Ok(total)
}

/// sum over interferers of Psi_j / |d(s_j, q)^2 - r^2|: the interference
/// averaged over the circle (q, r), for alpha = 2 in the plane.
pub fn average_circle_interference(net: &Network, exclude: usize, q: &[f64], r: f64) -> Result<f64> {
    net.check_station(exclude)?;
    net.check_point(q)?;
    if net.dim != 2 || net.alpha != 2.0 {
        return Err(Error::Precondition("average circle interference is defined for alpha = 2 in the plane".into()));
    }
    let mut total = 0.0;
    for j in (0..net.n()).filter(|&j| j != exclude) {
        let gap = (net.stations[j].pos.dist2(q) - r * r).abs();
        if gap == 0.0 {
            return Err(Error::Precondition(format!("station {} lies on the circle", net.stations[j].id)));
        }
        total += net.power(j) / gap;
    }
    Ok(total)
}

/// Station of power P1 at the origin inside unit-power wires of radii 4^i.
#[derive(Debug, Clone, Serialize)]
pub struct LogWires {
    pub power: f64,
    pub wires: Vec<Wire>,
    pub noise: f64,
    pub beta: f64,
}

impl LogWires {
    pub fn interference(&self, p: &[f64]) -> Result<f64> {
        self.wires.iter().map(|w| wire_interference(w, p)).sum()
    }

    pub fn sinr(&self, p: &[f64]) -> Result<f64> {
        let d2 = p[0] * p[0] + p[1] * p[1];
        if d2 == 0.0 {
            return Err(Error::AtStation("SINR"));
        }
        Ok(self.power / d2 / (self.interference(p)? + self.noise))
    }

    pub fn is_heard(&self, p: &[f64]) -> bool {
        if p[0] == 0.0 && p[1] == 0.0 {
            return true;
        }
        self.sinr(p).map(|s| s >= self.beta).unwrap_or(false)
    }

    /// Heard runs along the positive x-axis, sampled every `step` up to `x_max`.
    pub fn cells_along_axis(&self, x_max: f64, step: f64) -> usize {
        let mut cells = 0;
        let mut inside = false;
        let steps = (x_max / step).ceil() as usize;
        for m in 0..=steps {
            let h = self.is_heard(&[m as f64 * step, 0.0]);
            if h && !inside {
                cells += 1;
            }
            inside = h;
        }
        cells
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WireTestPoint {
    pub x: f64,
    pub sinr: f64,
    /// Interference from wires inside / outside the point.
    pub inner: f64,
    pub outer: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WireReport {
    pub rho: usize,
    pub power: f64,
    pub noise: f64,
    pub points: Vec<WireTestPoint>,
    /// 4 * 16^rho * (6 + N): enough for SINR >= 1 at every test point.
    pub sufficient_power: f64,
    pub pass: bool,
}

pub fn construct_log_wires(rho: usize, power: f64, noise: f64) -> Result<(LogWires, WireReport)> {
    if rho == 0 {
        return Err(Error::Precondition("at least one wire is required".into()));
    }
    if !(power > 0.0 && noise >= 0.0) {
        return Err(Error::Precondition("power must be positive and noise non-negative".into()));
    }
    let radius = |i: usize| 4f64.powi(i as i32);
    let wires = (1..=rho)
        .map(|i| Wire::new([0.0, 0.0], radius(i), 1.0))
        .collect::<Result<Vec<_>>>()?;
    let net = LogWires { power, wires, noise, beta: 1.0 };
    let mut points = vec![WireTestPoint { x: 0.0, sinr: f64::INFINITY, inner: 0.0, outer: 0.0, pass: true }];
    for i in 2..=rho + 1 {
        let x = (2.0 * radius(i - 1) + radius(i)) / 3.0;
        let p = [x, 0.0];
        let (mut inner, mut outer) = (0.0, 0.0);
        for w in &net.wires {
            let v = wire_interference(w, &p)?;
            if w.radius < x {
                inner += v;
            } else {
                outer += v;
            }
        }
        let s = net.sinr(&p)?;
        points.push(WireTestPoint { x, sinr: s, inner, outer, pass: s >= net.beta });
    }
    let pass = points.iter().all(|p| p.pass);
    let report = WireReport {
        rho,
        power,
        noise,
        points,
        sufficient_power: 4.0 * 16f64.powi(rho as i32) * (6.0 + noise),
        pass,
    };
    Ok((net, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Wire {
        Wire::new([0.0, 0.0], 1.0, 1.0).unwrap()
    }

    #[test]
    fn continuous() {
        assert_eq!(wire_interference(&unit(), &[0.0, 0.0]).unwrap(), 1.0);
        assert!((wire_interference(&unit(), &[2.0, 0.0]).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(wire_interference(&unit(), &[1.0, 0.0]).is_err());
    }

    #[test]
    fn discrete() {
        let w = Wire::new([1.0, 2.0], 1.5, 2.0).unwrap();
        let k = [4.0, -1.0];
        let single = 2.0 / ((2.5f64 - 4.0).powi(2) + 9.0);
        assert!((discrete_wire_interference(&w, 1, &k).unwrap() - single).abs() < 1e-15);
        assert!((discrete_wire_interference(&unit(), 4, &[0.0, 0.0]).unwrap() - 1.0).abs() < 1e-15);
        let v = discrete_wire_interference(&unit(), 100_000, &[2.0, 0.0]).unwrap();
        assert!((v - 1.0 / 3.0).abs() * 3.0 < 1e-4);
        assert!(discrete_wire_interference(&unit(), 4, &[1.0, 0.0]).is_err());
    }

    #[test]
    fn average_interference() {
        let net = Network::from_parts(2, &[(vec![0.0, 0.0], 1.0), (vec![3.0, 0.0], 2.0)], 0.0, 1.0, 2.0).unwrap();
        let v = average_circle_interference(&net, 0, &[3.0, 0.0], 0.5).unwrap();
        assert!((v - 2.0 / 0.25).abs() < 1e-12);
        let q = [0.5, 0.5];
        let near = average_circle_interference(&net, 0, &q, 1e-7).unwrap();
        let direct = crate::sinr::interference(&net, 0, &q).unwrap();
        assert!((near - direct).abs() / direct < 1e-10);
        assert!(average_circle_interference(&net, 0, &[0.0, 0.0], 3.0).is_err());
    }

    #[test]
    fn log_wires() {
        let (_, r) = construct_log_wires(3, 16.0 * 16.0 * 8.0, 0.0).unwrap();
        assert_eq!(r.points.len(), 4);
        assert!(r.pass);
        for (k, p) in r.points.iter().enumerate().skip(1) {
            assert_eq!(p.x, 2.0 * 4f64.powi(k as i32));
            assert!(p.inner < 1.0 && p.outer < 5.0);
        }
        let (_, noisy) = construct_log_wires(3, 16.0 * 16.0 * 8.0, 1.0).unwrap();
        assert!(!noisy.pass);
        let (_, ok) = construct_log_wires(3, noisy.sufficient_power, 1.0).unwrap();
        assert!(ok.pass);
    }

    #[test]
    fn one_wire_two_cells() {
        let (w, _) = construct_log_wires(1, 4.0 * 16.0 * 6.0, 0.0).unwrap();
        assert_eq!(w.cells_along_axis(64.0, 1e-3), 2);
    }
}
