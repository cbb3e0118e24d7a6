use super::poly::{gcd, Poly};
use crate::rational::Q;
use num_traits::{One, Zero};
use std::fmt;

/// Quotient of polynomials in lowest terms; the denominator has lex-leading
/// coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let n = num.nvars();
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Poly::one(n),
            };
        }
        let g = gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides");
        let mut den = den.div_exact(&g).expect("gcd divides");
        let lc = den.leading_coefficient();
        if !lc.is_one() {
            let inv = Q::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    /// `num / base^k` in lowest terms; cheaper than [`Self::new`] since only
    /// factors of the small polynomial `base` can cancel.
    pub(crate) fn over_power(num: Poly, base: &Poly, k: u32) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        let mut num = num;
        let mut den = base.pow(k);
        loop {
            let h = gcd(&gcd(&num, base), &den);
            if h.is_constant() {
                break;
            }
            num = num.div_exact(&h).expect("gcd divides");
            den = den.div_exact(&h).expect("gcd divides");
        }
        let inv = Q::one() / den.leading_coefficient();
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RationalFunction { num: p, den: Poly::one(n) }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::from_poly(Poly::constant(nvars, c))
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Poly::zero(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone());
        }
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        Self::new(self.num.mul(p), self.den.clone())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inverse()?))
    }

    pub fn derivative(&self, i: usize) -> Self {
        let n = self.num.derivative(i).mul(&self.den).sub(&self.num.mul(&self.den.derivative(i)));
        Self::new(n, self.den.mul(&self.den))
    }

    /// Value at a point, or `None` on a pole.
    pub fn eval(&self, x: &[Q]) -> Option<Q> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Total degree of numerator minus that of the denominator, when both
    /// are homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        fn hom(p: &Poly) -> Option<i64> {
            let mut ds = p.terms().keys().map(|e| e.iter().sum::<u32>() as i64);
            let d = ds.next()?;
            ds.all(|x| x == d).then_some(d)
        }
        if self.is_zero() {
            return None;
        }
        Some(hom(&self.num)? - hom(&self.den)?)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
