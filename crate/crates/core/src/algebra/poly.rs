use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Univariate polynomial over Q, coefficients in ascending degree. The zero
/// polynomial has no coefficients; trailing zeros are always stripped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalUniPoly {
    coeffs: Vec<BigRational>,
}

impl RationalUniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalUniPoly { coeffs }
    }

    pub fn zero() -> Self {
        RationalUniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    /// Monic-free product of linear factors (x - r).
    pub fn from_roots(roots: &[BigRational]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            &acc * &Self::new(vec![-r.clone(), BigRational::one()])
        })
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        use num_traits::ToPrimitive;
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// f / gcd(f, f'): same distinct roots, all simple.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_rem(&g).0
    }
}

impl Add for &RationalUniPoly {
    type Output = RationalUniPoly;
    fn add(self, o: &RationalUniPoly) -> RationalUniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRational::zero();
        RationalUniPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + o.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &RationalUniPoly {
    type Output = RationalUniPoly;
    fn sub(self, o: &RationalUniPoly) -> RationalUniPoly {
        self + &(-o)
    }
}

impl Neg for &RationalUniPoly {
    type Output = RationalUniPoly;
    fn neg(self) -> RationalUniPoly {
        RationalUniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &RationalUniPoly {
    type Output = RationalUniPoly;
    fn mul(self, o: &RationalUniPoly) -> RationalUniPoly {
        if self.is_zero() || o.is_zero() {
            return RationalUniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalUniPoly::new(out)
    }
}

impl fmt::Display for RationalUniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn strips_trailing_zeros() {
        let p = RationalUniPoly::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(RationalUniPoly::from_i64(&[0, 0]).is_zero());
        assert_eq!(RationalUniPoly::zero().degree(), None);
    }

    #[test]
    fn evaluation() {
        let p = RationalUniPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(p.eval(&q(1, 1)), q(-1, 1));
        assert_eq!(RationalUniPoly::zero().eval(&q(7, 3)), q(0, 1));
        assert_eq!(RationalUniPoly::x().eval(&q(1, 3)), q(1, 3));
    }

    #[test]
    fn division_identity() {
        let a = RationalUniPoly::from_i64(&[3, -1, 4, 1, -5, 9]);
        let b = RationalUniPoly::from_i64(&[2, 0, 7]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(&(&qq * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn square_free_part() {
        // (x-1)^2 (x-3)
        let f = RationalUniPoly::from_roots(&[q(1, 1), q(1, 1), q(3, 1)]);
        let s = f.square_free();
        assert_eq!(s.monic(), RationalUniPoly::from_roots(&[q(1, 1), q(3, 1)]));
        assert_eq!(s.gcd(&s.derivative()).degree(), Some(0));
    }

    #[test]
    fn powers() {
        let p = RationalUniPoly::from_i64(&[1, 1]);
        assert_eq!(p.pow(3), RationalUniPoly::from_i64(&[1, 3, 3, 1]));
        assert_eq!(p.pow(0), RationalUniPoly::one());
    }
}
