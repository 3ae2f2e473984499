//! Networks, stations and similarity transforms.

use std::ops::Deref;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of R^d.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dist2(&self, other: &[f64]) -> f64 {
        self.0.iter().zip(other).map(|(a, b)| (a - b) * (a - b)).sum()
    }

    pub fn dist(&self, other: &[f64]) -> f64 {
        self.dist2(other).sqrt()
    }
}

impl Deref for Point {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Point(v)
    }
}

impl<const D: usize> From<[f64; D]> for Point {
    fn from(v: [f64; D]) -> Self {
        Point(v.to_vec())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Station {
    pub id: String,
    pub pos: Point,
    pub power: f64,
}

impl Station {
    pub fn new(id: impl Into<String>, pos: impl Into<Point>, power: f64) -> Self {
        Station { id: id.into(), pos: pos.into(), power }
    }
}

/// The tuple <d, S, Psi, N, beta, alpha>. Field order matches the JSON format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Network {
    pub dim: usize,
    pub alpha: f64,
    pub beta: f64,
    pub noise: f64,
    pub stations: Vec<Station>,
}

impl Network {
    /// Builds and validates a network.
    pub fn new(dim: usize, stations: Vec<Station>, noise: f64, beta: f64, alpha: f64) -> Result<Self> {
        validate_network(Network { dim, alpha, beta, noise, stations })
    }

    /// Convenience constructor: stations given as (position, power), ids "s0", "s1", ...
    pub fn from_parts(
        dim: usize,
        stations: &[(Vec<f64>, f64)],
        noise: f64,
        beta: f64,
        alpha: f64,
    ) -> Result<Self> {
        let st = stations
            .iter()
            .enumerate()
            .map(|(k, (p, w))| Station::new(format!("s{k}"), p.clone(), *w))
            .collect();
        Self::new(dim, st, noise, beta, alpha)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        validate_network(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("network serialises")
    }

    pub fn n(&self) -> usize {
        self.stations.len()
    }

    pub fn pos(&self, i: usize) -> &[f64] {
        &self.stations[i].pos
    }

    pub fn power(&self, i: usize) -> f64 {
        self.stations[i].power
    }

    /// Zones may overlap when beta < 1; most results assume beta >= 1.
    pub fn zones_may_overlap(&self) -> bool {
        self.beta < 1.0
    }

    pub fn check_station(&self, i: usize) -> Result<()> {
        if i >= self.n() {
            return Err(Error::StationIndex { index: i, n: self.n() });
        }
        Ok(())
    }

    pub fn check_point(&self, p: &[f64]) -> Result<()> {
        if p.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: p.len() });
        }
        Ok(())
    }

    /// Resolves a station given either by id or by decimal index.
    pub fn station_index(&self, key: &str) -> Result<usize> {
        if let Some(k) = self.stations.iter().position(|s| s.id == key) {
            return Ok(k);
        }
        match key.parse::<usize>() {
            Ok(k) if k < self.n() => Ok(k),
            _ => Err(Error::UnknownStation(key.to_string())),
        }
    }

    /// Index of the station located exactly at `p`, if any.
    pub fn station_at(&self, p: &[f64]) -> Option<usize> {
        self.stations.iter().position(|s| s.pos.0.as_slice() == p)
    }

    /// Integer exponent m with alpha = 2m, when alpha is a positive even integer.
    pub fn half_alpha(&self) -> Option<u32> {
        let a = self.alpha;
        if a > 0.0 && a.fract() == 0.0 && a % 2.0 == 0.0 && a <= 1024.0 {
            Some((a / 2.0) as u32)
        } else {
            None
        }
    }

    /// The same network embedded in dimension dim+1 on the hyperplane x_{d+1} = 0.
    pub fn embed_up(&self) -> Network {
        let mut out = self.clone();
        out.dim += 1;
        for s in &mut out.stations {
            s.pos.0.push(0.0);
        }
        out
    }
}

pub fn validate_network(net: Network) -> Result<Network> {
    let bad = |m: String| Err(Error::InvalidNetwork(m));
    if net.dim == 0 {
        return bad("dimension must be positive".into());
    }
    if net.stations.len() < 2 {
        return bad("n ≥ 2 required".into());
    }
    if !(net.alpha.is_finite() && net.alpha > 0.0) {
        return bad("alpha must be a positive real".into());
    }
    if !(net.beta.is_finite() && net.beta > 0.0) {
        return bad("beta must be a positive real".into());
    }
    if !(net.noise.is_finite() && net.noise >= 0.0) {
        return bad("noise must be non-negative".into());
    }
    for s in &net.stations {
        if s.pos.len() != net.dim {
            return Err(Error::Dimension { expected: net.dim, got: s.pos.len() });
        }
        if s.pos.iter().any(|c| !c.is_finite()) {
            return bad(format!("station {} has a non-finite coordinate", s.id));
        }
        if !(s.power.is_finite() && s.power > 0.0) {
            return bad(format!("station {}: power must be positive", s.id));
        }
    }
    for a in 0..net.stations.len() {
        for b in a + 1..net.stations.len() {
            if net.stations[a].pos == net.stations[b].pos {
                return bad(format!(
                    "stations {} and {} are coincident",
                    net.stations[a].id, net.stations[b].id
                ));
            }
        }
    }
    Ok(net)
}

/// f(x) = scale * R x + translation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityTransform {
    pub rotation: Vec<Vec<f64>>,
    pub translation: Point,
    pub scale: f64,
}

impl SimilarityTransform {
    pub fn identity(dim: usize) -> Self {
        let rotation = (0..dim)
            .map(|r| (0..dim).map(|c| if r == c { 1.0 } else { 0.0 }).collect())
            .collect();
        SimilarityTransform { rotation, translation: Point(vec![0.0; dim]), scale: 1.0 }
    }

    pub fn translation(t: Vec<f64>) -> Self {
        let mut f = Self::identity(t.len());
        f.translation = Point(t);
        f
    }

    pub fn scaling(dim: usize, scale: f64) -> Self {
        let mut f = Self::identity(dim);
        f.scale = scale;
        f
    }

    /// Planar rotation by `theta` radians.
    pub fn rotation_2d(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        SimilarityTransform {
            rotation: vec![vec![c, -s], vec![s, c]],
            translation: Point(vec![0.0, 0.0]),
            scale: 1.0,
        }
    }

    /// Orthogonal map sending unit vector `u` to e1 (Householder reflection).
    pub fn align_to_e1(u: &[f64]) -> Self {
        let d = u.len();
        let mut f = Self::identity(d);
        let mut v: Vec<f64> = u.to_vec();
        v[0] -= 1.0;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv > 1e-30 {
            for r in 0..d {
                for c in 0..d {
                    f.rotation[r][c] -= 2.0 * v[r] * v[c] / vv;
                }
            }
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.rotation.len()
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.rotation.len();
        if self.rotation.iter().any(|r| r.len() != d) || self.translation.len() != d {
            return Err(Error::InvalidTransform("rotation must be a square matrix matching the translation".into()));
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::InvalidTransform("scale must be positive".into()));
        }
        for a in 0..d {
            for b in 0..d {
                let dot: f64 = (0..d).map(|k| self.rotation[k][a] * self.rotation[k][b]).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                if (dot - want).abs() > 1e-12 {
                    return Err(Error::InvalidTransform("rotation is not orthogonal".into()));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d)
            .map(|r| {
                let rx: f64 = (0..d).map(|c| self.rotation[r][c] * p[c]).sum();
                self.scale * rx + self.translation[r]
            })
            .collect()
    }

    /// Applies only the linear part (no translation).
    pub fn apply_linear(&self, v: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d)
            .map(|r| self.scale * (0..d).map(|c| self.rotation[r][c] * v[c]).sum::<f64>())
            .collect()
    }

    pub fn inverse(&self) -> Self {
        let d = self.dim();
        let rt: Vec<Vec<f64>> = (0..d).map(|r| (0..d).map(|c| self.rotation[c][r]).collect()).collect();
        let inv_scale = 1.0 / self.scale;
        let translation = (0..d)
            .map(|r| -inv_scale * (0..d).map(|c| rt[r][c] * self.translation[c]).sum::<f64>())
            .collect();
        SimilarityTransform { rotation: rt, translation: Point(translation), scale: inv_scale }
    }

    /// self after other: x -> self(other(x)).
    pub fn compose(&self, other: &Self) -> Self {
        let d = self.dim();
        let rotation = (0..d)
            .map(|r| (0..d).map(|c| (0..d).map(|k| self.rotation[r][k] * other.rotation[k][c]).sum()).collect())
            .collect();
        SimilarityTransform {
            rotation,
            translation: Point(self.apply(&other.translation)),
            scale: self.scale * other.scale,
        }
    }
}

/// Maps every station by `f`; noise becomes N / scale^alpha so SINR is invariant.
pub fn transform_network(net: &Network, f: &SimilarityTransform) -> Result<Network> {
    f.validate()?;
    if f.dim() != net.dim {
        return Err(Error::Dimension { expected: net.dim, got: f.dim() });
    }
    let mut out = net.clone();
    for s in &mut out.stations {
        s.pos = Point(f.apply(&s.pos));
    }
    out.noise = net.noise / f.scale.powf(net.alpha);
    Ok(out)
}

/// delta: distance from station i to its nearest other station.
pub fn min_station_distance(net: &Network, i: usize) -> Result<f64> {
    net.check_station(i)?;
    let si = &net.stations[i].pos;
    Ok(net
        .stations
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i)
        .map(|(_, s)| si.dist(&s.pos))
        .fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym() -> Network {
        Network::from_parts(2, &[(vec![0.0, 0.0], 1.0), (vec![2.0, 0.0], 1.0)], 0.0, 1.0, 2.0).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Network::from_parts(2, &[(vec![0.0, 0.0], 1.0), (vec![2.0, 0.0], 1.0)], 0.0, 1.0, 2.0).is_ok());
        let e = Network::from_parts(2, &[(vec![0.0, 0.0], 1.0)], 0.0, 1.0, 2.0).unwrap_err();
        assert!(e.to_string().contains("n ≥ 2 required"));
        let e = Network::from_parts(2, &[(vec![0.0, 0.0], 0.0), (vec![2.0, 0.0], 1.0)], 0.0, 1.0, 2.0).unwrap_err();
        assert!(e.to_string().contains("power must be positive"));
        assert!(Network::from_parts(2, &[(vec![0.0, 0.0], 1.0), (vec![2.0], 1.0)], 0.0, 1.0, 2.0).is_err());
        assert!(Network::from_parts(1, &[(vec![0.0], 1.0), (vec![0.0], 2.0)], 0.0, 1.0, 2.0).is_err());
        assert!(Network::from_parts(1, &[(vec![0.0], 1.0), (vec![1.0], 2.0)], -1.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn json_field_names() {
        let net = sym();
        let v: serde_json::Value = serde_json::from_str(&net.to_json()).unwrap();
        for k in ["dim", "alpha", "beta", "noise", "stations"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        let s = &v["stations"][0];
        for k in ["id", "pos", "power"] {
            assert!(s.get(k).is_some(), "{k}");
        }
        assert_eq!(Network::from_json(&net.to_json()).unwrap(), net);
    }

    #[test]
    fn identity_and_scaling() {
        let net = sym();
        assert_eq!(transform_network(&net, &SimilarityTransform::identity(2)).unwrap(), net);
        let mut noisy = net.clone();
        noisy.noise = 1.0;
        let t = transform_network(&noisy, &SimilarityTransform::scaling(2, 2.0)).unwrap();
        assert_eq!(t.noise, 0.25);
        assert_eq!(t.stations[1].pos.0, vec![4.0, 0.0]);
    }

    #[test]
    fn non_orthogonal_rejected() {
        let mut f = SimilarityTransform::identity(2);
        f.rotation[0][1] = 0.5;
        assert!(transform_network(&sym(), &f).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let f = SimilarityTransform::rotation_2d(0.7).compose(&SimilarityTransform::translation(vec![3.0, -1.0]));
        let f = SimilarityTransform::scaling(2, 1.7).compose(&f);
        let p = [0.3, -2.5];
        let q = f.inverse().apply(&f.apply(&p));
        assert!((q[0] - p[0]).abs() < 1e-12 && (q[1] - p[1]).abs() < 1e-12);
    }

    #[test]
    fn householder_alignment() {
        let u = [0.6, 0.8, 0.0];
        let f = SimilarityTransform::align_to_e1(&u);
        f.validate().unwrap();
        let e = f.apply(&u);
        assert!((e[0] - 1.0).abs() < 1e-15 && e[1].abs() < 1e-15 && e[2].abs() < 1e-15);
    }

    #[test]
    fn min_distance() {
        let a = Network::from_parts(1, &[(vec![0.0], 1.0), (vec![2.0], 1.0)], 0.0, 1.0, 2.0).unwrap();
        assert_eq!(min_station_distance(&a, 0).unwrap(), 2.0);
        let b = Network::from_parts(
            2,
            &[(vec![0.0, 0.0], 1.0), (vec![1.0, 0.0], 1.0), (vec![5.0, 0.0], 1.0)],
            0.0,
            1.0,
            2.0,
        )
        .unwrap();
        assert_eq!(min_station_distance(&b, 0).unwrap(), 1.0);
        assert!(min_station_distance(&b, 3).is_err());
    }
}
