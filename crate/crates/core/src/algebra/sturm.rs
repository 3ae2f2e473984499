use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::RationalUniPoly;
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// Sturm chain of the square-free part of a polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<ZPoly>,
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

impl SturmChain {
    pub fn new(f: &RationalUniPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self::from_zpoly(ZPoly::from_rational(f)))
    }

    /// `f` must be nonzero.
    pub(crate) fn from_zpoly(f: ZPoly) -> Self {
        let f = f.primitive();
        if f.degree() == 0 {
            return SturmChain { chain: vec![f] };
        }
        // The remainder sequence of f ends in gcd(f, f'). When that is a
        // constant, f is already square-free and the sequence is the chain.
        let chain = Self::remainder_sequence(f.clone());
        if chain.last().map_or(0, |p| p.degree()) == 0 {
            return SturmChain { chain };
        }
        let p0 = f.square_free();
        if p0.degree() == 0 {
            return SturmChain { chain: vec![p0] };
        }
        SturmChain { chain: Self::remainder_sequence(p0) }
    }

    fn remainder_sequence(p0: ZPoly) -> Vec<ZPoly> {
        let p1 = p0.derivative().primitive();
        let mut chain = vec![p0, p1];
        loop {
            let k = chain.len() - 1;
            let r = chain[k - 1].prem(&chain[k]);
            if r.is_zero() {
                break;
            }
            let delta = chain[k - 1].degree() - chain[k].degree();
            let lc_sign = chain[k].lead_sign();
            let factor_sign = if lc_sign > 0 || (delta + 1) % 2 == 0 { 1 } else { -1 };
            let next = if factor_sign > 0 { r.neg() } else { r };
            chain.push(next.primitive());
        }
        chain
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Number of distinct real roots of the original polynomial, counted on
    /// the square-free part.
    pub fn degree(&self) -> usize {
        self.chain[0].degree()
    }

    pub fn square_free(&self) -> RationalUniPoly {
        self.chain[0].to_rational()
    }

    pub(crate) fn head(&self) -> &ZPoly {
        &self.chain[0]
    }

    pub fn variations(&self, t: &BigRational) -> usize {
        variations(self.chain.iter().map(|p| p.sign_at_rational(t)))
    }

    pub(crate) fn variations_int(&self, n: &BigInt) -> usize {
        variations(self.chain.iter().map(|p| p.sign_at_int(n)))
    }

    pub fn variations_at_inf(&self, positive: bool) -> usize {
        variations(self.chain.iter().map(|p| p.sign_at_inf(positive)))
    }

    /// Distinct roots in the half-open interval (a, b].
    pub fn count(&self, a: &BigRational, b: &BigRational) -> Result<usize> {
        if a >= b {
            return Err(Error::EmptyInterval);
        }
        Ok(self.variations(a) - self.variations(b))
    }

    /// All distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_inf(false) - self.variations_at_inf(true)
    }
}

/// Distinct real roots of `f` in (a, b].
pub fn sturm_count(f: &RationalUniPoly, a: &BigRational, b: &BigRational) -> Result<usize> {
    SturmChain::new(f)?.count(a, b)
}

pub fn eval_poly(f: &RationalUniPoly, t: &BigRational) -> BigRational {
    f.eval(t)
}

/// Either an exact rational root (lo == hi) or an open interval (lo, hi)
/// whose endpoints are not roots and at which the square-free part takes
/// opposite signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }
}

#[derive(Debug, Clone)]
pub struct RootIsolation {
    pub intervals: Vec<RootInterval>,
    /// True when the input polynomial had no repeated roots.
    pub multiplicity_free: bool,
    sqf: ZPoly,
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

impl RootIsolation {
    pub fn square_free(&self) -> RationalUniPoly {
        self.sqf.to_rational()
    }

    pub(crate) fn sqf(&self) -> &ZPoly {
        &self.sqf
    }

    /// Bisects interval k until its width is at most `tol`.
    pub fn refine(&mut self, k: usize, tol: &BigRational) {
        let sqf = &self.sqf;
        refine_interval(sqf, &mut self.intervals[k], tol);
    }

    /// Refines interval k to width <= 2^-53 max(1, |root|) and returns its midpoint.
    pub fn root_f64(&mut self, k: usize) -> f64 {
        loop {
            let iv = &self.intervals[k];
            if iv.is_exact() {
                return iv.lo.to_f64().unwrap_or(f64::NAN);
            }
            let mag = iv.lo.abs().max(iv.hi.abs()).max(BigRational::one());
            let tol = mag * BigRational::new(BigInt::one(), BigInt::one() << 53usize);
            if iv.width() <= tol {
                let c = simplest_rational(&iv.lo, &iv.hi);
                if self.sqf.sign_at_rational(&c) == 0 {
                    self.intervals[k] = RootInterval { lo: c.clone(), hi: c };
                    continue;
                }
                return iv.midpoint_f64();
            }
            let sqf = &self.sqf;
            refine_interval(sqf, &mut self.intervals[k], &tol);
        }
    }

    /// Splits interval k until `q` is not strictly inside it.
    pub fn separate(&mut self, k: usize, q: &BigRational) {
        let sqf = &self.sqf;
        separate_interval(sqf, &mut self.intervals[k], q);
    }
}

/// The rational with the smallest denominator in [lo, hi] (lo <= hi).
pub fn simplest_rational(lo: &BigRational, hi: &BigRational) -> BigRational {
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_rational(&-hi, &-lo);
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl.clone() + BigRational::one() <= *hi {
        return fl + BigRational::one();
    }
    // Same integer part: recurse on reciprocals of the fractional parts.
    let a = &fl;
    let inner = simplest_rational(&(hi - a).recip(), &(lo - a).recip());
    a + inner.recip()
}

pub(crate) fn separate_interval(sqf: &ZPoly, iv: &mut RootInterval, q: &BigRational) {
    while !iv.is_exact() && &iv.lo < q && q < &iv.hi {
        bisect_once(sqf, iv);
    }
}

fn bisect_once(sqf: &ZPoly, iv: &mut RootInterval) {
    let mid = (&iv.lo + &iv.hi) * half();
    let sm = sqf.sign_at_rational(&mid);
    if sm == 0 {
        iv.lo = mid.clone();
        iv.hi = mid;
        return;
    }
    if sm == sqf.sign_at_rational(&iv.lo) {
        iv.lo = mid;
    } else {
        iv.hi = mid;
    }
}

pub(crate) fn refine_interval(sqf: &ZPoly, iv: &mut RootInterval, tol: &BigRational) {
    while !iv.is_exact() && &iv.width() > tol {
        bisect_once(sqf, iv);
    }
}

/// Isolates the distinct real roots of `f` in (a, b].
pub fn isolate_roots(f: &RationalUniPoly, a: &BigRational, b: &BigRational) -> Result<RootIsolation> {
    if a >= b {
        return Err(Error::EmptyInterval);
    }
    let chain = SturmChain::new(f)?;
    let multiplicity_free = chain.degree() == f.degree().unwrap_or(0);
    let sqf = chain.head().clone();
    let mut intervals = Vec::new();
    if sqf.degree() > 0 {
        let va = chain.variations(a);
        let vb = chain.variations(b);
        let mut stack = vec![(a.clone(), b.clone(), va, vb)];
        while let Some((lo, hi, vlo, vhi)) = stack.pop() {
            let c = vlo - vhi;
            if c == 0 {
                continue;
            }
            if c == 1 {
                intervals.push(normalise(&chain, &sqf, lo, hi));
                continue;
            }
            let mid = (&lo + &hi) * half();
            let vm = chain.variations(&mid);
            stack.push((mid.clone(), hi, vm, vhi));
            stack.push((lo, mid, vlo, vm));
        }
        intervals.sort_by(|x, y| x.lo.cmp(&y.lo));
    }
    Ok(RootIsolation { intervals, multiplicity_free, sqf })
}

/// Isolates every distinct real root of `f`.
pub fn isolate_all_roots(f: &RationalUniPoly) -> Result<RootIsolation> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let z = ZPoly::from_rational(f);
    if z.degree() == 0 {
        return isolate_roots(f, &-BigRational::one(), &BigRational::one());
    }
    let m = z.abs_max_ratio_bound();
    isolate_roots(f, &-m.clone(), &m)
}

/// Turns a one-root interval (lo, hi] into a [`RootInterval`].
fn normalise(chain: &SturmChain, sqf: &ZPoly, mut lo: BigRational, mut hi: BigRational) -> RootInterval {
    loop {
        if sqf.sign_at_rational(&hi) == 0 {
            return RootInterval { lo: hi.clone(), hi };
        }
        if sqf.sign_at_rational(&lo) != 0 {
            return RootInterval { lo, hi };
        }
        let mid = (&lo + &hi) * half();
        if chain.variations(&mid) - chain.variations(&hi) == 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn counts() {
        let f = RationalUniPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(sturm_count(&f, &q(0, 1), &q(2, 1)).unwrap(), 1);
        let g = RationalUniPoly::from_i64(&[1, 0, 1]);
        assert_eq!(sturm_count(&g, &q(-10, 1), &q(10, 1)).unwrap(), 0);
        let h = RationalUniPoly::from_roots(&[q(1, 1), q(1, 1), q(3, 1)]);
        assert_eq!(sturm_count(&h, &q(0, 1), &q(4, 1)).unwrap(), 2);
        assert!(matches!(sturm_count(&RationalUniPoly::zero(), &q(0, 1), &q(1, 1)), Err(Error::ZeroPolynomial)));
        assert!(sturm_count(&f, &q(1, 1), &q(1, 1)).is_err());
    }

    #[test]
    fn half_open_convention() {
        let f = RationalUniPoly::from_roots(&[q(1, 1), q(2, 1)]);
        assert_eq!(sturm_count(&f, &q(1, 1), &q(2, 1)).unwrap(), 1);
        assert_eq!(sturm_count(&f, &q(0, 1), &q(1, 1)).unwrap(), 1);
        assert_eq!(sturm_count(&f, &q(2, 1), &q(3, 1)).unwrap(), 0);
        let chain = SturmChain::new(&f).unwrap();
        assert_eq!(chain.count_all(), 2);
    }

    #[test]
    fn isolation() {
        let f = RationalUniPoly::from_i64(&[-2, 0, 1]);
        let mut iso = isolate_roots(&f, &q(0, 1), &q(2, 1)).unwrap();
        assert_eq!(iso.intervals.len(), 1);
        assert!((iso.root_f64(0) - 2f64.sqrt()).abs() < 1e-15);

        let g = RationalUniPoly::from_roots(&[q(1, 1), q(2, 1)]);
        let iso = isolate_roots(&g, &q(0, 1), &q(3, 1)).unwrap();
        assert_eq!(iso.intervals.len(), 2);
        assert!(iso.intervals[0].hi <= iso.intervals[1].lo);

        let c = RationalUniPoly::from_i64(&[5]);
        assert!(isolate_roots(&c, &q(0, 1), &q(1, 1)).unwrap().intervals.is_empty());
    }

    #[test]
    fn isolation_with_root_on_split_point() {
        // Roots at 0, 1/2, 1: the bisection midpoints land on roots.
        let f = RationalUniPoly::from_roots(&[q(0, 1), q(1, 2), q(1, 1), q(3, 4)]);
        let iso = isolate_roots(&f, &q(-1, 1), &q(1, 1)).unwrap();
        assert_eq!(iso.intervals.len(), 4);
        for iv in &iso.intervals {
            if !iv.is_exact() {
                let s = iso.sqf();
                assert_ne!(s.sign_at_rational(&iv.lo), 0);
                assert_eq!(s.sign_at_rational(&iv.lo), -s.sign_at_rational(&iv.hi));
            }
        }
    }

    #[test]
    fn simplest() {
        assert_eq!(simplest_rational(&q(1, 3), &q(1, 2)), q(1, 2));
        assert_eq!(simplest_rational(&q(3, 10), &q(7, 20)), q(1, 3));
        assert_eq!(simplest_rational(&q(-7, 20), &q(-3, 10)), q(-1, 3));
        assert_eq!(simplest_rational(&q(-1, 2), &q(3, 1)), q(0, 1));
        assert_eq!(simplest_rational(&q(5, 2), &q(7, 2)), q(3, 1));
    }

    #[test]
    fn whole_line() {
        let f = RationalUniPoly::from_roots(&[q(-300, 1), q(7, 3), q(1000, 1)]);
        let mut iso = isolate_all_roots(&f).unwrap();
        assert_eq!(iso.intervals.len(), 3);
        assert!((iso.root_f64(1) - 7.0 / 3.0).abs() < 1e-15);
        assert!(iso.multiplicity_free);
        let g = RationalUniPoly::from_roots(&[q(1, 1), q(1, 1)]);
        assert!(!isolate_all_roots(&g).unwrap().multiplicity_free);
    }
}
