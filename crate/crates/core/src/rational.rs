//! Arbitrary-precision rational and integer helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;
pub type Z = BigInt;

pub fn q(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

pub fn qz(n: &Z) -> Q {
    Q::from_integer(n.clone())
}

/// Parses an integer or a fraction `p/q`. A zero denominator is rejected.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Z = n.trim().parse().ok()?;
            let d: Z = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => s.parse::<Z>().ok().map(Q::from_integer),
    }
}

pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a Z>) -> Z {
    xs.into_iter().fold(Z::zero(), |g, x| g.gcd(x))
}

pub fn lcm_denoms<'a>(xs: impl IntoIterator<Item = &'a Q>) -> Z {
    xs.into_iter().fold(Z::one(), |l, x| l.lcm(x.denom()))
}

/// Scales a rational vector by a positive factor to a primitive integer vector.
/// Returns the integer vector and the positive factor used.
pub fn primitive_scaling(v: &[Q]) -> (Vec<Z>, Q) {
    let l = lcm_denoms(v);
    let ints: Vec<Z> = v.iter().map(|x| (x * qz(&l)).to_integer()).collect();
    let g = gcd_all(&ints);
    if g.is_zero() {
        return (ints, Q::one());
    }
    let prim = ints.iter().map(|x| x / &g).collect();
    (prim, Q::new(l, g))
}

pub fn primitive_integer(v: &[Q]) -> Vec<Z> {
    primitive_scaling(v).0
}

pub fn to_q_vec(v: &[Z]) -> Vec<Q> {
    v.iter().map(qz).collect()
}

pub fn dot_q(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_zq(a: &[Z], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + qz(x) * y)
}

pub fn dot_z(a: &[Z], b: &[Z]) -> Z {
    a.iter().zip(b).fold(Z::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn sign(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn factorial(n: u32) -> Z {
    (1..=n).fold(Z::one(), |acc, k| acc * Z::from(k))
}

pub fn binomial(n: u32, k: u32) -> Z {
    if k > n {
        return Z::zero();
    }
    let mut r = Z::one();
    for i in 0..k {
        r = r * Z::from(n - i) / Z::from(i + 1);
    }
    r
}
