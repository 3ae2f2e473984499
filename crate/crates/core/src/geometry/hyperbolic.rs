//! Geodesics of the upper half-space model and the reception check along them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Network, Point};
use crate::sinr::{is_heard, sinr};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Geodesic {
    VerticalSegment {
        p1: Point,
        p2: Point,
    },
    /// Points center + radius (cos t u + side sin t e_last), t from theta1 to theta2.
    Arc {
        center: Point,
        radius: f64,
        direction: Vec<f64>,
        side: f64,
        theta1: f64,
        theta2: f64,
        p1: Point,
        p2: Point,
    },
}

impl Geodesic {
    /// `m` points spaced uniformly in the curve parameter, endpoints included.
    pub fn sample(&self, m: usize) -> Vec<Vec<f64>> {
        let m = m.max(2);
        let frac = |k: usize| k as f64 / (m - 1) as f64;
        match self {
            Geodesic::VerticalSegment { p1, p2 } => (0..m)
                .map(|k| p1.iter().zip(p2.iter()).map(|(a, b)| a + frac(k) * (b - a)).collect())
                .collect(),
            Geodesic::Arc { center, radius, direction, side, theta1, theta2, .. } => (0..m)
                .map(|k| {
                    let t = theta1 + frac(k) * (theta2 - theta1);
                    let mut p: Vec<f64> =
                        center.iter().zip(direction).map(|(c, u)| c + radius * t.cos() * u).collect();
                    *p.last_mut().unwrap() += side * radius * t.sin();
                    p
                })
                .collect(),
        }
    }
}

/// Geodesic through p1 and p2, whose last coordinate is the height above the
/// base hyperplane.
pub fn hyperbolic_geodesic(p1: &[f64], p2: &[f64]) -> Result<Geodesic> {
    if p1.len() != p2.len() {
        return Err(Error::Dimension { expected: p1.len(), got: p2.len() });
    }
    if p1.len() < 2 {
        return Err(Error::Precondition("points need a base coordinate and a height".into()));
    }
    let d = p1.len() - 1;
    let (h1, h2) = (p1[d], p2[d]);
    if h1 * h2 < 0.0 {
        return Err(Error::Precondition("endpoints lie on opposite sides of the base hyperplane".into()));
    }
    let diff: Vec<f64> = (0..d).map(|k| p2[k] - p1[k]).collect();
    let l = diff.iter().map(|x| x * x).sum::<f64>().sqrt();
    if l == 0.0 {
        return Ok(Geodesic::VerticalSegment { p1: Point(p1.to_vec()), p2: Point(p2.to_vec()) });
    }
    let mut u: Vec<f64> = diff.iter().map(|x| x / l).collect();
    u.push(0.0);
    let lambda = (l * l + h2 * h2 - h1 * h1) / (2.0 * l);
    let mut center: Vec<f64> = (0..d).map(|k| p1[k] + lambda * u[k]).collect();
    center.push(0.0);
    let radius = lambda.hypot(h1);
    let side = if h1 < 0.0 || h2 < 0.0 { -1.0 } else { 1.0 };
    let theta1 = h1.abs().atan2(-lambda);
    let theta2 = h2.abs().atan2(l - lambda);
    Ok(Geodesic::Arc {
        center: Point(center),
        radius,
        direction: u,
        side,
        theta1,
        theta2,
        p1: Point(p1.to_vec()),
        p2: Point(p2.to_vec()),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct HyperbolicResult {
    pub pass: bool,
    pub min_sinr: f64,
    pub witness: Option<Point>,
}

/// Embeds `net` on x_{d+1} = 0 and checks SINR(s_i, .) >= beta - 1e-9 at
/// `samples` points of the geodesic from p1 to p2 (both in dimension d+1).
pub fn hyperbolic_reception_check(
    net: &Network,
    i: usize,
    p1: &[f64],
    p2: &[f64],
    samples: usize,
) -> Result<HyperbolicResult> {
    net.check_station(i)?;
    let up = net.embed_up();
    up.check_point(p1)?;
    up.check_point(p2)?;
    if !is_heard(&up, i, p1) || !is_heard(&up, i, p2) {
        return Err(Error::Precondition("geodesic endpoints must be reception points".into()));
    }
    let g = hyperbolic_geodesic(p1, p2)?;
    let mut min_sinr = f64::INFINITY;
    let mut witness = None;
    for p in g.sample(samples) {
        let s = match up.station_at(&p) {
            Some(k) if k == i => continue,
            Some(_) => 0.0,
            None => sinr(&up, i, &p).unwrap_or(0.0),
        };
        if s < min_sinr {
            min_sinr = s;
        }
        if s < up.beta - 1e-9 && witness.is_none() {
            witness = Some(Point(p));
        }
    }
    Ok(HyperbolicResult { pass: witness.is_none(), min_sinr, witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geodesic_shapes() {
        let v = hyperbolic_geodesic(&[0.0, 0.0, 1.0], &[0.0, 0.0, 2.0]).unwrap();
        assert!(matches!(v, Geodesic::VerticalSegment { .. }));
        let a = hyperbolic_geodesic(&[0.0, 0.0, 3.0], &[4.0, 0.0, 3.0]).unwrap();
        match &a {
            Geodesic::Arc { center, radius, .. } => {
                assert_eq!(center.0, vec![2.0, 0.0, 0.0]);
                assert!((radius - 13f64.sqrt()).abs() < 1e-15);
            }
            _ => panic!("expected an arc"),
        }
        let pts = a.sample(101);
        assert!((pts[0][0] - 0.0).abs() < 1e-12 && (pts[0][2] - 3.0).abs() < 1e-12);
        assert!((pts[100][0] - 4.0).abs() < 1e-12 && (pts[100][2] - 3.0).abs() < 1e-12);
        assert!((pts[50][2] - 13f64.sqrt()).abs() < 1e-12);
        assert!(hyperbolic_geodesic(&[0.0, 0.0, 1.0], &[1.0, 0.0, -1.0]).is_err());
    }

    #[test]
    fn below_the_plane() {
        let a = hyperbolic_geodesic(&[0.0, -1.0], &[2.0, -1.0]).unwrap();
        for p in a.sample(11) {
            assert!(p[1] <= 0.0);
            assert!(((p[0] - 1.0).powi(2) + p[1] * p[1] - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn star_shaped_from_station() {
        let net = Network::from_parts(1, &[(vec![0.0], 3.0), (vec![1.0], 1.0), (vec![-2.0], 2.0)], 0.05, 1.0, 2.0)
            .unwrap();
        let r = hyperbolic_reception_check(&net, 0, &[0.0, 0.0], &[-0.2, 0.3], 1000).unwrap();
        assert!(r.pass, "{r:?}");
        let v = hyperbolic_reception_check(&net, 0, &[0.1, 0.05], &[0.1, 0.2], 1000).unwrap();
        assert!(v.pass);
        assert!(hyperbolic_reception_check(&net, 0, &[0.0, 0.0], &[1.0, 0.0], 10).is_err());
    }
}
