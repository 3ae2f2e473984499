//! Integer polynomials used internally for Sturm chains. Every conversion
//! scales by a positive factor, so signs are preserved.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::RationalUniPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ZPoly {
    pub c: Vec<BigInt>,
}

pub(crate) fn sign_of(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    /// Positive multiple of `f` with coprime integer coefficients.
    pub fn from_rational(f: &RationalUniPoly) -> Self {
        let mut l = BigInt::one();
        for c in f.coeffs() {
            l = l.lcm(c.denom());
        }
        let c = f.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect();
        ZPoly::new(c).primitive()
    }

    pub fn to_rational(&self) -> RationalUniPoly {
        RationalUniPoly::new(self.c.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead_sign(&self) -> i32 {
        self.c.last().map_or(0, sign_of)
    }

    pub fn primitive(self) -> Self {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                return self;
            }
        }
        if g.is_zero() || g.is_one() {
            return self;
        }
        ZPoly { c: self.c.into_iter().map(|x| x / &g).collect() }
    }

    pub fn derivative(&self) -> Self {
        ZPoly::new(self.c.iter().enumerate().skip(1).map(|(k, x)| x * BigInt::from(k)).collect())
    }

    pub fn neg(self) -> Self {
        ZPoly { c: self.c.into_iter().map(|x| -x).collect() }
    }

    /// Pseudo-remainder: lc(g)^(deg f - deg g + 1) f mod g.
    pub fn prem(&self, g: &ZPoly) -> ZPoly {
        let dg = g.degree();
        let lg = g.c.last().expect("nonzero divisor").clone();
        let mut r = self.c.clone();
        if r.len() <= dg {
            return self.clone();
        }
        let steps = r.len() - dg;
        for k in (0..steps).rev() {
            let top = r[k + dg].clone();
            for x in r.iter_mut() {
                *x *= &lg;
            }
            if !top.is_zero() {
                for (j, gc) in g.c.iter().enumerate() {
                    r[k + j] -= &top * gc;
                }
            }
        }
        r.truncate(dg);
        ZPoly::new(r)
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        let (mut a, mut b) = (self.clone().primitive(), other.clone().primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b).primitive();
            a = b;
            b = r;
        }
        if a.lead_sign() < 0 {
            a = a.neg();
        }
        a
    }

    /// f / gcd(f, f'), scaled positively relative to f's sign pattern.
    pub fn square_free(&self) -> ZPoly {
        if self.degree() == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.clone();
        }
        let (q, _) = self.to_rational().div_rem(&g.to_rational());
        // g has positive leading coefficient, so q's sign pattern matches f/|g|.
        ZPoly::from_rational(&q)
    }

    pub fn sign_at_rational(&self, t: &BigRational) -> i32 {
        self.sign_at_homog(t.numer(), t.denom())
    }

    fn sign_at_homog(&self, n: &BigInt, d: &BigInt) -> i32 {
        if d.is_one() {
            return self.sign_at_int(n);
        }
        // sum_k c_k n^k d^(deg-k) has the sign of f(n/d) since d > 0.
        let deg = self.degree();
        let mut dp = Vec::with_capacity(deg + 1);
        dp.push(BigInt::one());
        for k in 1..=deg {
            let next = &dp[k - 1] * d;
            dp.push(next);
        }
        let mut acc = BigInt::zero();
        for (k, x) in self.c.iter().enumerate().rev() {
            acc = acc * n + x * &dp[deg - k];
        }
        sign_of(&acc)
    }

    pub fn eval_int(&self, n: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for x in self.c.iter().rev() {
            acc = acc * n + x;
        }
        acc
    }

    pub fn sign_at_int(&self, n: &BigInt) -> i32 {
        sign_of(&self.eval_int(n))
    }

    pub fn sign_at_i64(&self, n: i64) -> i32 {
        if n == 0 {
            return self.c.first().map_or(0, sign_of);
        }
        self.sign_at_int(&BigInt::from(n))
    }

    /// Sign at +inf (positive) or -inf (negative).
    pub fn sign_at_inf(&self, positive: bool) -> i32 {
        let s = self.lead_sign();
        if positive || self.degree().is_multiple_of(2) {
            s
        } else {
            -s
        }
    }

    pub fn abs_max_ratio_bound(&self) -> BigRational {
        // Cauchy bound 1 + max |c_k / c_deg|.
        let lead = self.c.last().expect("nonzero").abs();
        let m = self.c[..self.c.len() - 1].iter().map(|x| x.abs()).max().unwrap_or_default();
        BigRational::one() + BigRational::new(m, lead)
    }
}
