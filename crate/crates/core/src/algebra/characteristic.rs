//! The characteristic polynomial
//!
//! ```text
//! F = beta (sum_{k != i} Psi_k prod_{l != k} D_l + N prod_k D_k) - Psi_i prod_{k != i} D_k
//! ```
//!
//! with D_l = dist(s_l, p)^alpha.
//! For p off the stations, F <= 0 iff SINR(s_i, p) >= beta; at s_i F < 0 and
//! at any other station F > 0, matching the zone definition exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::RationalUniPoly;
use crate::error::{Error, Result};
use crate::model::Network;

/// Exact conversion of a finite binary64 value.
pub fn to_rational(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::Precondition(format!("{x} is not finite")))
}

pub fn to_rational_point(p: &[f64]) -> Result<Vec<BigRational>> {
    p.iter().map(|&x| to_rational(x)).collect()
}

/// A network with every parameter converted exactly to rationals.
#[derive(Debug, Clone)]
pub struct ExactNetwork {
    pub dim: usize,
    /// alpha / 2.
    pub half_alpha: u32,
    pub beta: BigRational,
    pub noise: BigRational,
    pub positions: Vec<Vec<BigRational>>,
    pub powers: Vec<BigRational>,
}

impl ExactNetwork {
    pub fn new(net: &Network) -> Result<Self> {
        let half_alpha = net.half_alpha().ok_or(Error::UnsupportedAlpha(net.alpha))?;
        Ok(ExactNetwork {
            dim: net.dim,
            half_alpha,
            beta: to_rational(net.beta)?,
            noise: to_rational(net.noise)?,
            positions: net.stations.iter().map(|s| to_rational_point(&s.pos)).collect::<Result<_>>()?,
            powers: net.stations.iter().map(|s| to_rational(s.power)).collect::<Result<_>>()?,
        })
    }

    pub fn n(&self) -> usize {
        self.powers.len()
    }

    fn dist_alpha(&self, l: usize, p: &[BigRational]) -> BigRational {
        let mut d2 = BigRational::zero();
        for (a, b) in self.positions[l].iter().zip(p) {
            let t = a - b;
            d2 += &t * &t;
        }
        num_traits::pow(d2, self.half_alpha as usize)
    }

    /// F evaluated directly at a rational point.
    pub fn characteristic_at(&self, i: usize, p: &[BigRational], beta: &BigRational) -> BigRational {
        let d: Vec<BigRational> = (0..self.n()).map(|l| self.dist_alpha(l, p)).collect();
        let prod_except = |k: Option<usize>| {
            d.iter()
                .enumerate()
                .filter(|(l, _)| Some(*l) != k)
                .fold(BigRational::one(), |acc, (_, x)| acc * x)
        };
        let mut a = &self.noise * prod_except(None);
        for k in (0..self.n()).filter(|&k| k != i) {
            a += &self.powers[k] * prod_except(Some(k));
        }
        beta * a - &self.powers[i] * prod_except(Some(i))
    }

    /// The two parts of F along p(t) = p1 + t v.
    pub fn parts_on_line(&self, i: usize, p1: &[BigRational], v: &[BigRational]) -> CharacteristicParts {
        let n = self.n();
        let vv: BigRational = v.iter().map(|x| x * x).sum();
        let d: Vec<RationalUniPoly> = (0..n)
            .map(|l| {
                let mut lin = BigRational::zero();
                let mut c0 = BigRational::zero();
                for ((pk, sk), vk) in p1.iter().zip(&self.positions[l]).zip(v) {
                    let w = pk - sk;
                    lin += vk * &w;
                    c0 += &w * &w;
                }
                let two = BigRational::from_integer(BigInt::from(2));
                RationalUniPoly::new(vec![c0, two * lin, vv.clone()]).pow(self.half_alpha)
            })
            .collect();
        // prefix[k] = prod_{l<k} D_l, suffix[k] = prod_{l>=k} D_l.
        let mut prefix = vec![RationalUniPoly::one()];
        for dl in &d {
            let next = prefix.last().unwrap() * dl;
            prefix.push(next);
        }
        let mut suffix = vec![RationalUniPoly::one(); n + 1];
        for l in (0..n).rev() {
            suffix[l] = &suffix[l + 1] * &d[l];
        }
        let except = |k: usize| &prefix[k] * &suffix[k + 1];
        let mut interference = prefix[n].scale(&self.noise);
        for k in (0..n).filter(|&k| k != i) {
            interference = &interference + &except(k).scale(&self.powers[k]);
        }
        let signal = except(i).scale(&self.powers[i]);
        CharacteristicParts { interference, signal }
    }
}

/// F_beta = beta * interference - signal. Splitting lets several thresholds
/// share one expansion.
#[derive(Debug, Clone)]
pub struct CharacteristicParts {
    pub interference: RationalUniPoly,
    pub signal: RationalUniPoly,
}

impl CharacteristicParts {
    pub fn at(&self, beta: &BigRational) -> RationalUniPoly {
        &self.interference.scale(beta) - &self.signal
    }
}

/// F^i restricted to p(t) = p1 + t (p2 - p1); F(t) <= 0 iff p(t) is in Z_i.
pub fn restrict_characteristic(
    net: &Network,
    i: usize,
    p1: &[f64],
    p2: &[f64],
    beta_override: Option<f64>,
) -> Result<RationalUniPoly> {
    net.check_station(i)?;
    net.check_point(p1)?;
    net.check_point(p2)?;
    let x = ExactNetwork::new(net)?;
    let beta = match beta_override {
        Some(b) => to_rational(b)?,
        None => x.beta.clone(),
    };
    restrict_characteristic_exact(&x, i, &to_rational_point(p1)?, &to_rational_point(p2)?, &beta)
}

pub fn restrict_characteristic_exact(
    x: &ExactNetwork,
    i: usize,
    p1: &[BigRational],
    p2: &[BigRational],
    beta: &BigRational,
) -> Result<RationalUniPoly> {
    if p1 == p2 {
        return Err(Error::DegenerateSegment);
    }
    let v: Vec<BigRational> = p2.iter().zip(p1).map(|(b, a)| b - a).collect();
    Ok(x.parts_on_line(i, p1, &v).at(beta))
}

/// Noise polynomial -prod_i F^i along the segment; for beta >= 1 it is
/// negative exactly on the part of the segment where no station is heard.
pub fn restrict_noise_polynomial(net: &Network, p1: &[f64], p2: &[f64]) -> Result<RationalUniPoly> {
    net.check_point(p1)?;
    net.check_point(p2)?;
    let x = ExactNetwork::new(net)?;
    let (a, b) = (to_rational_point(p1)?, to_rational_point(p2)?);
    let mut acc = RationalUniPoly::one();
    for i in 0..x.n() {
        acc = &acc * &restrict_characteristic_exact(&x, i, &a, &b, &x.beta)?;
    }
    Ok(-&acc)
}
