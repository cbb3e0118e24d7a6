use super::order::TermOrder;
use super::poly::{fmt_terms, var_names, Poly};
use super::rational_function::RationalFunction;
use super::{Result, WeylError};
use crate::linalg::{inverse, transpose};
use crate::rational::{binomial, factorial, lcm_denoms, gcd_all, qz, Q, Z};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Element of the Weyl algebra in `m` variables, stored in normal order:
/// the key `(a, b)` of length `2m` stands for `x^a d^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    m: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

/// `d^b x^c` in normal order, one coordinate: sum over k of
/// C(b,k) C(c,k) k! x^(c-k) d^(b-k).
fn leibniz(b: u32, c: u32) -> Vec<(u32, u32, Z)> {
    (0..=b.min(c))
        .map(|k| (c - k, b - k, binomial(b, k) * binomial(c, k) * factorial(k)))
        .collect()
}

impl WeylElement {
    pub fn zero(m: usize) -> Self {
        WeylElement {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: usize, c: Q) -> Self {
        Self::monomial(m, vec![0; 2 * m], c)
    }

    pub fn one(m: usize) -> Self {
        Self::constant(m, Q::one())
    }

    /// `c x^a d^b` given the joint exponent vector.
    pub fn monomial(m: usize, exps: Vec<u32>, c: Q) -> Self {
        assert_eq!(exps.len(), 2 * m);
        let mut w = Self::zero(m);
        if !c.is_zero() {
            w.terms.insert(exps, c);
        }
        w
    }

    pub fn x(m: usize, i: usize) -> Self {
        let mut e = vec![0; 2 * m];
        e[i] = 1;
        Self::monomial(m, e, Q::one())
    }

    pub fn d(m: usize, i: usize) -> Self {
        let mut e = vec![0; 2 * m];
        e[m + i] = 1;
        Self::monomial(m, e, Q::one())
    }

    pub fn from_poly(p: &Poly) -> Self {
        let m = p.nvars();
        let mut w = Self::zero(m);
        for (e, c) in p.terms() {
            let mut k = e.clone();
            k.resize(2 * m, 0);
            w.terms.insert(k, c.clone());
        }
        w
    }

    pub fn from_terms(m: usize, terms: impl IntoIterator<Item = (Vec<u32>, Q)>) -> Self {
        let mut w = Self::zero(m);
        for (e, c) in terms {
            w.add_term(e, c);
        }
        w
    }

    pub(crate) fn add_term(&mut self, e: Vec<u32>, c: Q) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if no derivative occurs.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e[self.m..].iter().all(|&k| k == 0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|e| e[self.m..].iter().sum()).max().unwrap_or(0)
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|e| e[..self.m].iter().sum()).max().unwrap_or(0)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.m != o.m {
            return Err(WeylError::DimensionMismatch {
                expected: self.m,
                found: o.m,
            });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        WeylElement {
            m: self.m,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Product of normal-ordered monomials `(x^a1 d^b1)(x^a2 d^b2)`.
    pub(crate) fn mono_product(m: usize, e1: &[u32], e2: &[u32]) -> Vec<(Vec<u32>, Z)> {
        let mut acc: Vec<(Vec<u32>, Z)> = vec![(
            e1[..m].iter().chain(&e2[m..]).copied().collect(),
            Z::one(),
        )];
        for i in 0..m {
            let (b, c) = (e1[m + i], e2[i]);
            let expansions = leibniz(b, c);
            let mut next = Vec::with_capacity(acc.len() * expansions.len());
            for (e, coef) in &acc {
                for (xc, db, k) in &expansions {
                    let mut f = e.clone();
                    f[i] += xc;
                    f[m + i] += db;
                    next.push((f, coef * k));
                }
            }
            acc = next;
        }
        acc
    }

    pub fn multiply(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul(o))
    }

    /// Product; panics on mismatched variable counts (see [`Self::multiply`]).
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.m, o.m, "variable count mismatch");
        let mut acc: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let c = c1 * c2;
                for (e, k) in Self::mono_product(self.m, e1, e2) {
                    *acc.entry(e).or_insert_with(Q::zero) += &c * qz(&k);
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        WeylElement { m: self.m, terms: acc }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one(self.m);
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    fn map_monomials(&self, f: impl Fn(&[u32], &[u32]) -> (Self, Self, Q)) -> Self {
        let mut r = Self::zero(self.m);
        for (e, c) in &self.terms {
            let (left, right, sign) = f(&e[..self.m], &e[self.m..]);
            r = r.add(&left.mul(&right).scale(&(c * sign)));
        }
        r
    }

    fn d_power(m: usize, a: &[u32]) -> Self {
        let mut e = vec![0; m];
        e.extend_from_slice(a);
        Self::monomial(m, e, Q::one())
    }

    fn x_power(m: usize, b: &[u32]) -> Self {
        let mut e = b.to_vec();
        e.resize(2 * m, 0);
        Self::monomial(m, e, Q::one())
    }

    /// The automorphism `x_i -> d_i, d_i -> -x_i`.
    pub fn fourier(&self) -> Self {
        let m = self.m;
        self.map_monomials(|a, b| {
            let s: u32 = b.iter().sum();
            let sign = if s % 2 == 0 { Q::one() } else { -Q::one() };
            (Self::d_power(m, a), Self::x_power(m, b), sign)
        })
    }

    /// Inverse of [`Self::fourier`]: `x_i -> -d_i, d_i -> x_i`.
    pub fn inverse_fourier(&self) -> Self {
        let m = self.m;
        self.map_monomials(|a, b| {
            let s: u32 = a.iter().sum();
            let sign = if s % 2 == 0 { Q::one() } else { -Q::one() };
            (Self::d_power(m, a), Self::x_power(m, b), sign)
        })
    }

    /// The automorphism induced by the affine change `x -> A x + b`,
    /// `d -> A^{-T} d`.
    pub fn linear_substitution(&self, a: &[Vec<Q>], b: &[Q]) -> Result<Self> {
        let m = self.m;
        if a.len() != m || b.len() != m || a.iter().any(|r| r.len() != m) {
            return Err(WeylError::DimensionMismatch {
                expected: m,
                found: a.len(),
            });
        }
        let inv = inverse(a).ok_or(WeylError::SingularMatrix)?;
        let inv_t = transpose(&inv, m);
        let xs: Vec<Self> = (0..m)
            .map(|i| {
                let mut r = Self::constant(m, b[i].clone());
                for j in 0..m {
                    r = r.add(&Self::x(m, j).scale(&a[i][j]));
                }
                r
            })
            .collect();
        let ds: Vec<Self> = (0..m)
            .map(|i| {
                let mut r = Self::zero(m);
                for j in 0..m {
                    r = r.add(&Self::d(m, j).scale(&inv_t[i][j]));
                }
                r
            })
            .collect();
        let mut cache: HashMap<(bool, usize, u32), Self> = HashMap::new();
        let mut power = |is_d: bool, i: usize, k: u32| -> Self {
            cache
                .entry((is_d, i, k))
                .or_insert_with(|| if is_d { ds[i].pow(k) } else { xs[i].pow(k) })
                .clone()
        };
        let mut r = Self::zero(m);
        for (e, c) in &self.terms {
            let mut t = Self::constant(m, c.clone());
            for i in 0..m {
                if e[i] > 0 {
                    t = t.mul(&power(false, i, e[i]));
                }
            }
            for i in 0..m {
                if e[m + i] > 0 {
                    t = t.mul(&power(true, i, e[m + i]));
                }
            }
            r = r.add(&t);
        }
        Ok(r)
    }

    /// Action on rational functions: `x_i` multiplies, `d_i` differentiates.
    pub fn apply_to_rational(&self, f: &RationalFunction) -> Result<RationalFunction> {
        if f.nvars() != self.m {
            return Err(WeylError::DimensionMismatch {
                expected: self.m,
                found: f.nvars(),
            });
        }
        let m = self.m;
        if self.is_zero() {
            return Ok(RationalFunction::zero(m));
        }
        // d^b (N/D) = N_b / D^(|b|+1), all over the common power D^(k+1)
        let den = f.denominator();
        let mut numers: HashMap<Vec<u32>, Poly> = HashMap::new();
        numers.insert(vec![0; m], f.numerator().mul(den));
        let k = self.order();
        let mut acc = Poly::zero(m);
        for (e, c) in &self.terms {
            let b = &e[m..];
            let nb = derivative_numerator(&mut numers, den, b);
            let ord: u32 = b.iter().sum();
            let t = nb.mul(&den.pow(k - ord)).mul_monomial(&e[..m], c);
            acc = acc.add(&t);
        }
        Ok(RationalFunction::over_power(acc, den, k + 2))
    }

    /// Leading exponent vector and coefficient under `order`.
    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Vec<u32>, &Q)> {
        self.terms.iter().max_by(|a, b| order.cmp_monomials(a.0, b.0))
    }

    /// Terms in decreasing order.
    pub fn sorted_terms(&self, order: &TermOrder) -> Vec<(&Vec<u32>, &Q)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| order.cmp_monomials(b.0, a.0));
        t
    }

    /// Rescaled to integer coefficients with content 1 and positive grevlex-leading coefficient.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = qz(&lcm_denoms(self.terms.values()));
        let nums: Vec<Z> = self.terms.values().map(|c| (c * &l).to_integer()).collect();
        let g = qz(&gcd_all(&nums));
        let mut s = l / g;
        if self.leading_term(&TermOrder::grevlex()).unwrap().1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }
}

/// Numerator `N_b` with `d^b (N/D) = N_b / D^(|b|+2)`, where the cache is
/// seeded with `N_0 = N D`.
fn derivative_numerator(cache: &mut HashMap<Vec<u32>, Poly>, den: &Poly, b: &[u32]) -> Poly {
    if let Some(r) = cache.get(b) {
        return r.clone();
    }
    let i = b.iter().position(|&k| k > 0).expect("nonzero multi-index");
    let mut lower = b.to_vec();
    lower[i] -= 1;
    let n = derivative_numerator(cache, den, &lower);
    let power = Q::from_integer((lower.iter().sum::<u32>() + 2).into());
    let r = n.derivative(i).mul(den).sub(&n.mul(&den.derivative(i)).scale(&power));
    cache.insert(b.to_vec(), r.clone());
    r
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names = var_names("x", self.m);
        names.extend(var_names("d", self.m));
        let order = TermOrder::grevlex();
        fmt_terms(f, &names, self.sorted_terms(&order).into_iter())
    }
}
