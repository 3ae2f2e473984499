use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Network, Point, SimilarityTransform};
use crate::sinr::sinr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZoneKind {
    Disk,
    DiskComplement,
    Halfplane,
}

/// Closed form of Z_i in a two-station network without noise. In the
/// canonical frame s_i sits at the origin and the other station at (a, 0, ..).
#[derive(Debug, Clone, Serialize)]
pub struct TwoStationConfig {
    pub station: usize,
    pub kind: ZoneKind,
    /// tau = beta Psi_j / Psi_i.
    pub tau: f64,
    pub separation: f64,
    /// Center in the canonical frame (x coordinate) and in input coordinates.
    pub canonical_center: Option<f64>,
    pub center: Option<Point>,
    pub radius: Option<f64>,
    /// Z_i = {x <= offset} in the canonical frame.
    pub halfplane_offset: Option<f64>,
    pub canonical: SimilarityTransform,
    /// Boundary points found by ray bisection, for noisy networks.
    pub sampled_boundary: Option<Vec<Point>>,
    pub approximate: bool,
}

impl TwoStationConfig {
    /// Signed distance from the zone boundary in the canonical frame,
    /// positive inside Z_i.
    pub fn signed_distance(&self, p: &[f64]) -> f64 {
        let c = self.canonical.apply(p);
        match self.kind {
            ZoneKind::Halfplane => self.halfplane_offset.unwrap_or(0.0) - c[0],
            ZoneKind::Disk | ZoneKind::DiskComplement => {
                let q = self.canonical_center.unwrap_or(0.0);
                let d = (c[0] - q).hypot(c[1..].iter().map(|x| x * x).sum::<f64>().sqrt());
                let r = self.radius.unwrap_or(0.0);
                if self.kind == ZoneKind::Disk {
                    r - d
                } else {
                    d - r
                }
            }
        }
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        self.signed_distance(p) >= 0.0
    }
}

/// Classifies Z_i of a two-station network. With `exact` the network must
/// be noise-free; otherwise noisy networks get a sampled boundary and the
/// noise-free classification, flagged approximate.
pub fn two_station_config(net: &Network, i: usize, exact: bool) -> Result<TwoStationConfig> {
    net.check_station(i)?;
    if net.n() != 2 {
        return Err(Error::Precondition("two-station analysis needs exactly two stations".into()));
    }
    if net.noise > 0.0 && exact {
        return Err(Error::Precondition("the exact two-station form needs N = 0".into()));
    }
    let j = 1 - i;
    let si = net.pos(i);
    let diff: Vec<f64> = net.pos(j).iter().zip(si).map(|(b, a)| b - a).collect();
    let a = diff.iter().map(|x| x * x).sum::<f64>().sqrt();
    let u: Vec<f64> = diff.iter().map(|x| x / a).collect();
    let rot = SimilarityTransform::align_to_e1(&u);
    let shift = SimilarityTransform::translation(si.iter().map(|x| -x).collect());
    let canonical = rot.compose(&shift);
    let back = canonical.inverse();
    let tau = net.beta * net.power(j) / net.power(i);
    let big_a = tau.powf(2.0 / net.alpha);
    let mut cfg = TwoStationConfig {
        station: i,
        kind: ZoneKind::Halfplane,
        tau,
        separation: a,
        canonical_center: None,
        center: None,
        radius: None,
        halfplane_offset: None,
        canonical,
        sampled_boundary: None,
        approximate: net.noise > 0.0,
    };
    if tau == 1.0 {
        cfg.halfplane_offset = Some(a / 2.0);
    } else {
        cfg.kind = if tau > 1.0 { ZoneKind::Disk } else { ZoneKind::DiskComplement };
        let q = a / (1.0 - big_a);
        let mut c = vec![0.0; net.dim];
        c[0] = q;
        cfg.canonical_center = Some(q);
        cfg.center = Some(Point(back.apply(&c)));
        cfg.radius = Some(a * big_a.sqrt() / (1.0 - big_a).abs());
    }
    if net.noise > 0.0 && net.dim == 2 {
        cfg.sampled_boundary = Some(sample_boundary(net, i, 360));
    }
    Ok(cfg)
}

/// First SINR = beta crossing along `rays` rays from s_i.
fn sample_boundary(net: &Network, i: usize, rays: usize) -> Vec<Point> {
    let s = net.pos(i);
    let far = crate::pointloc::fatness_bounds(net, i).map(|f| f.delta_hat).unwrap_or(1e6);
    let heard = |t: f64, d: [f64; 2]| {
        let p = [s[0] + t * d[0], s[1] + t * d[1]];
        sinr(net, i, &p).map(|v| v >= net.beta).unwrap_or(false)
    };
    (0..rays)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / rays as f64;
            let d = [th.cos(), th.sin()];
            let steps = 4096;
            let mut lo = 0.0;
            let mut hi = far;
            for m in 1..=steps {
                let t = far * m as f64 / steps as f64;
                if !heard(t, d) {
                    hi = t;
                    break;
                }
                lo = t;
            }
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if heard(mid, d) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Point(vec![s[0] + lo * d[0], s[1] + lo * d[1]])
        })
        .collect()
}
