use crate::rational::{format_q, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Commutative polynomial over the rationals in `nvars` variables.
/// Exponent vectors compare lexicographically, so the last entry of the map
/// is the lex-leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::monomial(nvars, unit(nvars, i, 1), Q::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Q) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Q)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
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
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.is_zero() {
            return Some(Q::zero());
        }
        self.is_constant().then(|| self.terms.values().next().unwrap().clone())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Lex-leading coefficient.
    pub fn leading_coefficient(&self) -> Q {
        self.terms.values().next_back().cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, e: &[u32], c: &Q) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), v * c))
                .collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Poly) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn mul(&self, other: &Poly) -> Self {
        let mut acc: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(Q::zero) += ca * cb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly {
            nvars: self.nvars,
            terms: acc,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Poly::one(self.nvars);
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut r = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                r.add_term(f, c * Q::from_integer(e[i].into()));
            }
        }
        r
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        let mut s = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            s += t;
        }
        s
    }

    /// Substitutes `x_i -> polys[i]`.
    pub fn compose(&self, polys: &[Poly], nvars: usize) -> Poly {
        let mut r = Poly::zero(nvars);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(nvars, c.clone());
            for (p, &k) in polys.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&p.pow(k));
                }
            }
            r = r.add(&t);
        }
        r
    }

    /// Divides by the lex-leading coefficient.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Q::one() / self.leading_coefficient()))
    }

    /// Coefficients as a polynomial in `x_v`, indexed by degree.
    fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(self.nvars); self.degree_in(v) as usize + 1];
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[v] as usize;
            f[v] = 0;
            out[k].terms.insert(f, c.clone());
        }
        out
    }

    fn lead_in(&self, v: usize) -> Poly {
        self.coeffs_in(v).pop().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    fn content_in(&self, v: usize) -> Poly {
        let mut g = Poly::zero(self.nvars);
        for c in self.coeffs_in(v) {
            g = gcd(&g, &c);
            if g.is_constant() && !g.is_zero() {
                return Poly::one(self.nvars);
            }
        }
        g
    }

    fn pseudo_rem(&self, q: &Poly, v: usize) -> Poly {
        let k = q.degree_in(v);
        let lq = q.lead_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= k {
            let d = r.degree_in(v) - k;
            let lr = r.lead_in(v);
            r = r.mul(&lq).sub(&q.mul(&lr).mul_monomial(&unit(self.nvars, v, d), &Q::one()));
        }
        r
    }

    /// Exact quotient `self / d`, if `d` divides `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (le, lc) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut r = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((e, c)) = r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&le).any(|(a, b)| a < b) {
                return None;
            }
            let shift: Vec<u32> = e.iter().zip(&le).map(|(a, b)| a - b).collect();
            let coef = c / &lc;
            r = r.sub(&d.mul_monomial(&shift, &coef));
            quot.add_term(shift, coef);
        }
        Some(quot)
    }
}

fn unit(n: usize, i: usize, k: u32) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = k;
    e
}

/// Greatest common divisor, normalized to lex-leading coefficient 1
/// (zero only if both inputs are zero).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let n = a.nvars;
    let v = (0..n).rev().find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0);
    let Some(v) = v else { return Poly::one(n) };
    if a.degree_in(v) == 0 {
        return gcd(a, &b.content_in(v));
    }
    if b.degree_in(v) == 0 {
        return gcd(&a.content_in(v), b);
    }
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let c = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides").monic();
    let mut q = b.div_exact(&cb).expect("content divides").monic();
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = p.pseudo_rem(&q, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return c.monic();
        }
        let cr = r.content_in(v);
        p = q;
        q = r.div_exact(&cr).expect("content divides").monic();
    }
    let cq = q.content_in(v);
    let prim = q.div_exact(&cq).expect("content divides");
    c.mul(&prim).monic()
}

pub(crate) fn fmt_monomial(f: &mut fmt::Formatter<'_>, names: &[String], e: &[u32], first: &mut bool) -> fmt::Result {
    for (name, &k) in names.iter().zip(e) {
        if k == 0 {
            continue;
        }
        if !*first {
            write!(f, "*")?;
        }
        *first = false;
        if k == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{k}")?;
        }
    }
    Ok(())
}

pub(crate) fn fmt_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    names: &[String],
    terms: impl Iterator<Item = (&'a Vec<u32>, &'a Q)>,
) -> fmt::Result {
    let mut any = false;
    for (e, c) in terms {
        let neg = c < &Q::zero();
        let a = if neg { -c.clone() } else { c.clone() };
        if any {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        } else if neg {
            write!(f, "-")?;
        }
        any = true;
        let is_one = e.iter().all(|&k| k == 0);
        let mut first = true;
        if is_one || !a.is_one() {
            write!(f, "{}", format_q(&a))?;
            first = false;
        }
        fmt_monomial(f, names, e, &mut first)?;
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

pub(crate) fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &var_names("x", self.nvars), self.terms.iter().rev())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn gcd_of_products() {
        let a = x(0).add(&x(1)); // x+y
        let b = x(0).sub(&x(2)); // x-z
        let c = x(1).mul(&x(2)).add(&Poly::one(3)); // yz+1
        let p = a.mul(&b).mul(&c);
        let r = a.mul(&c).mul(&c);
        let g = gcd(&p, &r);
        assert_eq!(g, a.mul(&c).monic());
        assert_eq!(gcd(&a, &b), Poly::one(3));
        assert_eq!(p.div_exact(&c).unwrap(), a.mul(&b));
        assert!(a.div_exact(&b).is_none());
    }

    #[test]
    fn derivative_and_eval() {
        let p = x(0).pow(3).scale(&q(2)).add(&x(1));
        assert_eq!(p.derivative(0), x(0).pow(2).scale(&q(6)));
        assert_eq!(p.eval(&[q(2), q(1), q(0)]), q(17));
        assert_eq!(format!("{p}"), "2*x1^3 + x2");
    }
}
