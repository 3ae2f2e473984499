//! Exact reception zones on the line.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::zpoly::ZPoly;
use crate::algebra::{
    isolate_all_roots, refine_interval, restrict_noise_polynomial, separate_interval, to_rational_point,
    ExactNetwork, RationalUniPoly, RootInterval,
};
use crate::error::{Error, Result};
use crate::model::Network;

/// Interval endpoint. `Algebraic` holds an isolating interval (lo, hi) of an
/// irrational-or-unknown root of the set's boundary polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    PosInf,
    Exact(BigRational),
    Algebraic(RootInterval),
}

impl Endpoint {
    pub fn approx(&self) -> f64 {
        match self {
            Endpoint::NegInf => f64::NEG_INFINITY,
            Endpoint::PosInf => f64::INFINITY,
            Endpoint::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Endpoint::Algebraic(iv) => iv.midpoint_f64(),
        }
    }

    fn from_root(iv: &RootInterval) -> Self {
        if iv.is_exact() {
            Endpoint::Exact(iv.lo.clone())
        } else {
            Endpoint::Algebraic(iv.clone())
        }
    }

    /// Exact comparison of the endpoint with `q`. Needs the polynomial whose
    /// root this is, to refine algebraic endpoints.
    fn cmp_rational(&self, q: &BigRational, sqf: Option<&ZPoly>) -> Ordering {
        match self {
            Endpoint::NegInf => Ordering::Less,
            Endpoint::PosInf => Ordering::Greater,
            Endpoint::Exact(x) => x.cmp(q),
            Endpoint::Algebraic(iv) => {
                let mut iv = iv.clone();
                if let Some(p) = sqf {
                    separate_interval(p, &mut iv, q);
                }
                if iv.is_exact() {
                    iv.lo.cmp(q)
                } else if &iv.hi <= q {
                    Ordering::Less
                } else if &iv.lo >= q {
                    Ordering::Greater
                } else {
                    // Unreachable once separated; fall back to the midpoint.
                    iv.midpoint_f64().partial_cmp(&q.to_f64().unwrap_or(0.0)).unwrap_or(Ordering::Equal)
                }
            }
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Endpoint::NegInf => json!("-inf"),
            Endpoint::PosInf => json!("inf"),
            e => json!(e.approx()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Endpoint,
    pub hi: Endpoint,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn is_bounded(&self) -> bool {
        !matches!(self.lo, Endpoint::NegInf) && !matches!(self.hi, Endpoint::PosInf)
    }
}

/// Sorted, disjoint, non-adjacent intervals.
#[derive(Debug, Clone)]
pub struct IntervalSet {
    pub intervals: Vec<Interval>,
    boundary: Option<ZPoly>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntervalJson {
    pub lo: Value,
    pub hi: Value,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl IntervalSet {
    /// A set with rational (or infinite) endpoints, e.g. for hypothetical
    /// configurations.
    pub fn from_intervals(intervals: Vec<Interval>) -> Self {
        IntervalSet { intervals, boundary: None }
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Exact membership test.
    pub fn contains(&self, q: &BigRational) -> bool {
        let b = self.boundary.as_ref();
        self.intervals.iter().any(|iv| {
            let lo_ok = match iv.lo.cmp_rational(q, b) {
                Ordering::Less => true,
                Ordering::Equal => iv.lo_closed,
                Ordering::Greater => false,
            };
            let hi_ok = match iv.hi.cmp_rational(q, b) {
                Ordering::Greater => true,
                Ordering::Equal => iv.hi_closed,
                Ordering::Less => false,
            };
            lo_ok && hi_ok
        })
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        BigRational::from_float(x).is_some_and(|q| self.contains(&q))
    }

    pub fn to_json(&self) -> Vec<IntervalJson> {
        self.intervals
            .iter()
            .map(|iv| IntervalJson {
                lo: iv.lo.to_json(),
                hi: iv.hi.to_json(),
                lo_closed: iv.lo_closed,
                hi_closed: iv.hi_closed,
            })
            .collect()
    }
}

fn check_1d(net: &Network) -> Result<ExactNetwork> {
    if net.dim != 1 {
        return Err(Error::Dimension { expected: 1, got: net.dim });
    }
    if net.beta < 1.0 {
        return Err(Error::Precondition("1D zone analysis requires beta >= 1".into()));
    }
    ExactNetwork::new(net)
}

/// {x : g(x) < 0}, plus the roots of g when `with_roots`, as maximal intervals.
/// Root intervals are also separated from every point in `avoid`.
fn sign_set(g: &RationalUniPoly, with_roots: bool, avoid: &[BigRational]) -> Result<IntervalSet> {
    let mut iso = isolate_all_roots(g)?;
    let m = iso.intervals.len();
    for k in 0..m {
        iso.root_f64(k);
        for q in avoid {
            iso.separate(k, q);
        }
    }
    let sqf = iso.sqf().clone();
    let gz = ZPoly::from_rational(g);
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let roots = &iso.intervals;
    let gap_negative = |k: usize| -> bool {
        let t = if m == 0 {
            BigRational::from_integer(0.into())
        } else if k == 0 {
            &roots[0].lo - &one
        } else if k == m {
            &roots[m - 1].hi + &one
        } else {
            (&roots[k - 1].hi + &roots[k].lo) / &two
        };
        gz.sign_at_rational(&t) < 0
    };
    // Walk gap0, root1, gap1, ..., rootm, gapm.
    let mut out = Vec::new();
    let mut open: Option<(Endpoint, bool)> = None;
    for k in 0..=m {
        let gin = gap_negative(k);
        if gin && open.is_none() {
            let start = if k == 0 { Endpoint::NegInf } else { Endpoint::from_root(&roots[k - 1]) };
            open = Some((start, false));
        }
        if !gin {
            if let Some((lo, lc)) = open.take() {
                let (hi, hc) = if k == 0 {
                    unreachable!("an open run cannot end in the first gap")
                } else if with_roots {
                    (Endpoint::from_root(&roots[k - 1]), true)
                } else {
                    (Endpoint::from_root(&roots[k - 1]), false)
                };
                out.push(Interval { lo, hi, lo_closed: lc, hi_closed: hc });
            }
        }
        if k == m {
            break;
        }
        // The root between gap k and gap k+1.
        let r = &roots[k];
        if with_roots {
            if open.is_none() {
                open = Some((Endpoint::from_root(r), true));
            }
        } else if let Some((lo, lc)) = open.take() {
            out.push(Interval { lo, hi: Endpoint::from_root(r), lo_closed: lc, hi_closed: false });
        }
    }
    if let Some((lo, lc)) = open.take() {
        out.push(Interval { lo, hi: Endpoint::PosInf, lo_closed: lc, hi_closed: false });
    }
    Ok(IntervalSet { intervals: out, boundary: Some(sqf) })
}

/// Maximal intervals of Z_i on the line.
pub fn reception_intervals(net: &Network, i: usize) -> Result<IntervalSet> {
    net.check_station(i)?;
    let x = check_1d(net)?;
    let f = x.parts_on_line(i, &[BigRational::from_integer(0.into())], &[BigRational::one()]).at(&x.beta);
    let stations: Vec<BigRational> = x.positions.iter().map(|p| p[0].clone()).collect();
    // F > 0 at every interferer, so no interferer lies in {F <= 0}: no
    // punctures are ever needed.
    sign_set(&f, true, &stations)
}

/// Maximal intervals where no station is heard, from the noise polynomial.
pub fn empty_zone_intervals(net: &Network) -> Result<IntervalSet> {
    let x = check_1d(net)?;
    let g = restrict_noise_polynomial(net, &[0.0], &[1.0])?;
    let stations: Vec<BigRational> = x.positions.iter().map(|p| p[0].clone()).collect();
    sign_set(&g, false, &stations)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellCounts {
    pub per_station: Vec<usize>,
    pub total: usize,
}

pub fn count_cells_1d(net: &Network) -> Result<CellCounts> {
    let per_station = (0..net.n()).map(|i| reception_intervals(net, i).map(|s| s.len())).collect::<Result<Vec<_>>>()?;
    let total = per_station.iter().sum();
    Ok(CellCounts { per_station, total })
}

#[derive(Debug, Clone, PartialEq)]
pub enum NfhResult {
    Pass,
    /// A station-free gap between two consecutive cells.
    Violation { gap: (f64, f64) },
}

impl NfhResult {
    pub fn passed(&self) -> bool {
        matches!(self, NfhResult::Pass)
    }
}

/// No-free-hole test: every gap between consecutive cells must hold a station.
pub fn nfh_check_intervals(set: &IntervalSet, stations: &[BigRational]) -> NfhResult {
    let b = set.boundary.as_ref();
    for w in set.intervals.windows(2) {
        let (left, right) = (&w[0].hi, &w[1].lo);
        let occupied = stations.iter().any(|q| {
            left.cmp_rational(q, b) == Ordering::Less && right.cmp_rational(q, b) == Ordering::Greater
        });
        if !occupied {
            return NfhResult::Violation { gap: (left.approx(), right.approx()) };
        }
    }
    NfhResult::Pass
}

pub fn nfh_check_1d(net: &Network, i: usize) -> Result<NfhResult> {
    let set = reception_intervals(net, i)?;
    let stations: Vec<BigRational> = net
        .stations
        .iter()
        .map(|s| to_rational_point(&s.pos).map(|p| p[0].clone()))
        .collect::<Result<_>>()?;
    Ok(nfh_check_intervals(&set, &stations))
}

/// Refines every algebraic endpoint to absolute width `tol`.
pub fn refine_endpoints(set: &mut IntervalSet, tol: &BigRational) {
    if let Some(b) = set.boundary.clone() {
        for iv in &mut set.intervals {
            for e in [&mut iv.lo, &mut iv.hi] {
                if let Endpoint::Algebraic(r) = e {
                    refine_interval(&b, r, tol);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn line(st: &[(f64, f64)], noise: f64, beta: f64) -> Network {
        let v: Vec<(Vec<f64>, f64)> = st.iter().map(|&(x, w)| (vec![x], w)).collect();
        Network::from_parts(1, &v, noise, beta, 2.0).unwrap()
    }

    #[test]
    fn symmetric_halfline() {
        let z = reception_intervals(&line(&[(0.0, 1.0), (2.0, 1.0)], 0.0, 1.0), 0).unwrap();
        assert_eq!(z.len(), 1);
        let iv = &z.intervals[0];
        assert_eq!(iv.lo, Endpoint::NegInf);
        assert_eq!(iv.hi, Endpoint::Exact(q(1, 1)));
        assert!(iv.hi_closed && !iv.lo_closed);
    }

    #[test]
    fn symmetric_beta_four() {
        // 4 x^2 <= (2 - x)^2  <=>  3x^2 + 4x - 4 <= 0  <=>  x in [-2, 2/3].
        let z = reception_intervals(&line(&[(0.0, 1.0), (2.0, 1.0)], 0.0, 4.0), 0).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z.intervals[0].lo, Endpoint::Exact(q(-2, 1)));
        assert_eq!(z.intervals[0].hi, Endpoint::Exact(q(2, 3)));
        assert!(z.intervals[0].lo_closed && z.intervals[0].hi_closed);
        assert!(z.contains(&q(2, 3)) && !z.contains(&q(2001, 3000)));
    }

    #[test]
    fn noise_bounds_everything() {
        let net = line(&[(0.0, 3.0), (1.0, 1.0), (5.0, 2.0)], 0.1, 1.5);
        for i in 0..3 {
            assert!(reception_intervals(&net, i).unwrap().intervals.iter().all(Interval::is_bounded));
        }
    }

    #[test]
    fn counts_and_bound() {
        let c = count_cells_1d(&line(&[(0.0, 1.0), (2.0, 1.0)], 0.0, 1.0)).unwrap();
        assert_eq!(c.total, 2);
        assert!(c.total <= 3);
    }

    #[test]
    fn strong_station_split_by_weak_interferer() {
        // tau = 0.1 < 1: Z_0 is a disk complement, two cells on the line.
        let net = line(&[(0.0, 10.0), (1.0, 1.0)], 0.0, 1.0);
        let z = reception_intervals(&net, 0).unwrap();
        assert_eq!(z.len(), 2);
        assert!(nfh_check_1d(&net, 0).unwrap().passed());
        assert_eq!(reception_intervals(&net, 1).unwrap().len(), 1);
    }

    #[test]
    fn nfh_on_hypothetical_cells() {
        let cell = |a: i64, b: i64| Interval {
            lo: Endpoint::Exact(q(a, 1)),
            hi: Endpoint::Exact(q(b, 1)),
            lo_closed: true,
            hi_closed: true,
        };
        let two = IntervalSet::from_intervals(vec![cell(0, 1), cell(2, 3)]);
        assert_eq!(nfh_check_intervals(&two, &[q(5, 1)]), NfhResult::Violation { gap: (1.0, 2.0) });
        assert!(nfh_check_intervals(&two, &[q(3, 2)]).passed());
        let one = IntervalSet::from_intervals(vec![cell(0, 1)]);
        assert!(nfh_check_intervals(&one, &[]).passed());
        let mut first = cell(3, 4);
        first.lo_closed = true;
        let with_ray = IntervalSet::from_intervals(vec![
            Interval { lo: Endpoint::NegInf, hi: Endpoint::Exact(q(1, 1)), lo_closed: false, hi_closed: true },
            first,
        ]);
        assert!(nfh_check_intervals(&with_ray, &[q(2, 1)]).passed());
    }

    #[test]
    fn empty_zone() {
        let net = line(&[(0.0, 1.0), (2.0, 1.0)], 0.5, 2.0);
        let e = empty_zone_intervals(&net).unwrap();
        // Unbounded on both sides plus the gap between the zones.
        assert_eq!(e.len(), 3);
        assert!(e.contains(&q(1, 1)) && !e.contains(&q(0, 1)));
    }

    #[test]
    fn rejects_bad_input() {
        let net = Network::from_parts(2, &[(vec![0.0, 0.0], 1.0), (vec![2.0, 0.0], 1.0)], 0.0, 1.0, 2.0).unwrap();
        assert!(reception_intervals(&net, 0).is_err());
        let mut odd = line(&[(0.0, 1.0), (2.0, 1.0)], 0.0, 1.0);
        odd.alpha = 3.0;
        assert!(reception_intervals(&odd, 0).is_err());
    }
}
