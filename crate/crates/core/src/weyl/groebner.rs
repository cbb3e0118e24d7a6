use super::element::WeylElement;
use super::order::{PositionOrder, TermOrder};
use super::{Result, WeylError};
use crate::rational::{qz, Q};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::OnceLock;

/// A vector over the Weyl algebra.
pub type ModuleElement = Vec<WeylElement>;

#[derive(Clone, Debug)]
struct Term {
    pos: usize,
    exp: Vec<u32>,
    coef: Q,
}

/// Module vector as a list of terms sorted in decreasing order.
#[derive(Clone, Debug)]
struct Vector {
    terms: Vec<Term>,
}

struct Engine<'a> {
    m: usize,
    order: &'a TermOrder,
}

impl<'a> Engine<'a> {
    fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.order.cmp_terms((a.pos, &a.exp), (b.pos, &b.exp))
    }

    fn from_map(&self, map: HashMap<(usize, Vec<u32>), Q>) -> Vector {
        let mut terms: Vec<Term> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((pos, exp), coef)| Term { pos, exp, coef })
            .collect();
        terms.sort_by(|a, b| self.cmp(b, a));
        Vector { terms }
    }

    fn import(&self, v: &[WeylElement]) -> Vector {
        let mut map = HashMap::new();
        for (pos, w) in v.iter().enumerate() {
            for (e, c) in w.terms() {
                map.insert((pos, e.clone()), c.clone());
            }
        }
        self.from_map(map)
    }

    fn export(&self, v: &Vector, rank: usize) -> ModuleElement {
        let mut out: Vec<Vec<(Vec<u32>, Q)>> = vec![Vec::new(); rank];
        for t in &v.terms {
            out[t.pos].push((t.exp.clone(), t.coef.clone()));
        }
        out.into_iter().map(|ts| WeylElement::from_terms(self.m, ts)).collect()
    }

    /// `c * x^a d^b * v - w`-style update: returns `v - c * mono * g`.
    fn sub_mul(&self, v: &Vector, c: &Q, mono: &[u32], g: &Vector) -> Vector {
        let mut map: HashMap<(usize, Vec<u32>), Q> = HashMap::with_capacity(v.terms.len() + g.terms.len());
        for t in &v.terms {
            map.insert((t.pos, t.exp.clone()), t.coef.clone());
        }
        for t in &g.terms {
            let k = c * &t.coef;
            for (e, z) in WeylElement::mono_product(self.m, mono, &t.exp) {
                *map.entry((t.pos, e)).or_insert_with(Q::zero) -= &k * qz(&z);
            }
        }
        self.from_map(map)
    }

    fn divides(a: &Term, b: &Term) -> bool {
        a.pos == b.pos && a.exp.iter().zip(&b.exp).all(|(x, y)| x <= y)
    }

    fn quotient(a: &[u32], b: &[u32]) -> Vec<u32> {
        b.iter().zip(a).map(|(y, x)| y - x).collect()
    }

    /// Full normal form modulo `gb`.
    fn reduce(&self, v: &Vector, gb: &[Vector]) -> Vector {
        let mut rest = v.clone();
        let mut done: Vec<Term> = Vec::new();
        while let Some(lt) = rest.terms.first().cloned() {
            match gb.iter().find(|g| Self::divides(&g.terms[0], &lt)) {
                Some(g) => {
                    let lg = &g.terms[0];
                    let mono = Self::quotient(&lg.exp, &lt.exp);
                    let c = &lt.coef / &lg.coef;
                    rest = self.sub_mul(&rest, &c, &mono, g);
                }
                None => {
                    done.push(lt);
                    rest.terms.remove(0);
                }
            }
        }
        Vector { terms: done }
    }

    fn monic(v: &Vector) -> Vector {
        let inv = Q::one() / &v.terms[0].coef;
        Vector {
            terms: v
                .terms
                .iter()
                .map(|t| Term {
                    pos: t.pos,
                    exp: t.exp.clone(),
                    coef: &t.coef * &inv,
                })
                .collect(),
        }
    }

    fn lcm(a: &Term, b: &Term) -> Option<Vec<u32>> {
        (a.pos == b.pos).then(|| a.exp.iter().zip(&b.exp).map(|(x, y)| *x.max(y)).collect())
    }

    fn spoly(&self, f: &Vector, g: &Vector, l: &[u32]) -> Vector {
        let (lf, lg) = (&f.terms[0], &g.terms[0]);
        let zero = Vector { terms: vec![] };
        let a = self.sub_mul(&zero, &-(Q::one() / &lf.coef), &Self::quotient(&lf.exp, l), f);
        self.sub_mul(&a, &(Q::one() / &lg.coef), &Self::quotient(&lg.exp, l), g)
    }

    fn buchberger(&self, gens: Vec<Vector>) -> Vec<Vector> {
        let mut gens: Vec<Vector> = gens.into_iter().filter(|v| !v.terms.is_empty()).collect();
        gens.sort_by(|a, b| self.cmp(&a.terms[0], &b.terms[0]));
        let mut g: Vec<Vector> = Vec::new();
        // pairs (i, j, lcm)
        let mut pairs: Vec<(usize, usize, Vec<u32>, usize)> = Vec::new();
        for f in gens {
            let r = self.reduce(&f, &g);
            if r.terms.is_empty() {
                continue;
            }
            self.insert(&mut g, &mut pairs, Self::monic(&r));
            while !pairs.is_empty() {
                // normal selection: smallest lcm
                let (idx, _) = pairs
                    .iter()
                    .enumerate()
                    .min_by(|(_, a), (_, b)| {
                        let ta = Term { pos: a.3, exp: a.2.clone(), coef: Q::one() };
                        let tb = Term { pos: b.3, exp: b.2.clone(), coef: Q::one() };
                        self.cmp(&ta, &tb)
                    })
                    .unwrap();
                let (i, j, l, _) = pairs.swap_remove(idx);
                let s = self.spoly(&g[i], &g[j], &l);
                let r = self.reduce(&s, &g);
                if !r.terms.is_empty() {
                    self.insert(&mut g, &mut pairs, Self::monic(&r));
                }
            }
        }
        self.interreduce(g)
    }

    /// Adds a new basis element with the Gebauer-Moeller pair update
    /// (chain-criterion parts only; the coprime criterion does not hold here).
    fn insert(&self, g: &mut Vec<Vector>, pairs: &mut Vec<(usize, usize, Vec<u32>, usize)>, h: Vector) {
        let k = g.len();
        let lh = h.terms[0].clone();
        // drop old pairs whose lcm is divisible by LT(h) with both new lcms different
        pairs.retain(|(i, j, l, p)| {
            if *p != lh.pos || !lh.exp.iter().zip(l).all(|(a, b)| a <= b) {
                return true;
            }
            let lih = Self::lcm(&g[*i].terms[0], &lh).unwrap();
            let ljh = Self::lcm(&g[*j].terms[0], &lh).unwrap();
            lih == *l || ljh == *l
        });
        let mut new: Vec<(usize, Vec<u32>)> = g
            .iter()
            .enumerate()
            .filter_map(|(i, gi)| Self::lcm(&gi.terms[0], &lh).map(|l| (i, l)))
            .collect();
        // M: drop (i,k) if some (j,k) has an lcm properly dividing it
        let snapshot = new.clone();
        new.retain(|(_, l)| {
            !snapshot
                .iter()
                .any(|(_, l2)| l2 != l && l2.iter().zip(l).all(|(a, b)| a <= b))
        });
        // F: keep one pair per lcm
        let mut seen: Vec<Vec<u32>> = Vec::new();
        new.retain(|(_, l)| {
            if seen.contains(l) {
                false
            } else {
                seen.push(l.clone());
                true
            }
        });
        for (i, l) in new {
            pairs.push((i, k, l, lh.pos));
        }
        g.push(h);
    }

    fn interreduce(&self, g: Vec<Vector>) -> Vec<Vector> {
        let mut minimal: Vec<Vector> = Vec::new();
        for (i, v) in g.iter().enumerate() {
            let redundant = g.iter().enumerate().any(|(j, w)| {
                j != i
                    && Self::divides(&w.terms[0], &v.terms[0])
                    && (w.terms[0].exp != v.terms[0].exp || j < i)
            });
            if !redundant {
                minimal.push(v.clone());
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<Vector> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
            let head = Vector { terms: vec![minimal[i].terms[0].clone()] };
            let tail = Vector { terms: minimal[i].terms[1..].to_vec() };
            let mut r = self.reduce(&tail, &others);
            let mut terms = head.terms;
            terms.append(&mut r.terms);
            out.push(Self::monic(&Vector { terms }));
        }
        out.sort_by(|a, b| self.cmp(&a.terms[0], &b.terms[0]));
        out
    }
}

fn check_rank(v: &[WeylElement], rank: usize, m: usize) -> Result<()> {
    if v.len() != rank {
        return Err(WeylError::DimensionMismatch { expected: rank, found: v.len() });
    }
    for w in v {
        if w.nvars() != m {
            return Err(WeylError::DimensionMismatch { expected: m, found: w.nvars() });
        }
    }
    Ok(())
}

/// Submodule of the free module of rank `rank` generated by left combinations
/// of the given vectors.
#[derive(Debug)]
pub struct FreeSubmodule {
    m: usize,
    rank: usize,
    generators: Vec<ModuleElement>,
    order: TermOrder,
    gb: OnceLock<Vec<ModuleElement>>,
}

impl Clone for FreeSubmodule {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        FreeSubmodule {
            m: self.m,
            rank: self.rank,
            generators: self.generators.clone(),
            order: self.order.clone(),
            gb,
        }
    }
}

impl FreeSubmodule {
    pub fn new(m: usize, rank: usize, generators: Vec<ModuleElement>, order: TermOrder) -> Result<Self> {
        for g in &generators {
            check_rank(g, rank, m)?;
        }
        Ok(FreeSubmodule {
            m,
            rank,
            generators,
            order,
            gb: OnceLock::new(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[ModuleElement] {
        &self.generators
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    fn engine(&self) -> Engine<'_> {
        Engine { m: self.m, order: &self.order }
    }

    /// Reduced Groebner basis (computed once, then cached).
    pub fn groebner(&self) -> &[ModuleElement] {
        self.gb.get_or_init(|| {
            let e = self.engine();
            let gens = self.generators.iter().map(|g| e.import(g)).collect();
            e.buchberger(gens).iter().map(|v| e.export(v, self.rank)).collect()
        })
    }

    fn gb_vectors(&self) -> Vec<Vector> {
        let e = self.engine();
        self.groebner().iter().map(|g| e.import(g)).collect()
    }

    pub fn reduce(&self, v: &[WeylElement]) -> Result<ModuleElement> {
        check_rank(v, self.rank, self.m)?;
        let e = self.engine();
        Ok(e.export(&e.reduce(&e.import(v), &self.gb_vectors()), self.rank))
    }

    /// Normal form, refusing a different order than the one the basis was built with.
    pub fn reduce_with_order(&self, v: &[WeylElement], order: &TermOrder) -> Result<ModuleElement> {
        if order != &self.order {
            return Err(WeylError::OrderMismatch);
        }
        self.reduce(v)
    }

    pub fn contains(&self, v: &[WeylElement]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|w| w.is_zero()))
    }

    /// Basis elements vanishing outside the given positions.
    pub fn gb_supported_on(&self, positions: &[usize]) -> Vec<ModuleElement> {
        self.groebner()
            .iter()
            .filter(|g| g.iter().enumerate().all(|(p, w)| positions.contains(&p) || w.is_zero()))
            .cloned()
            .collect()
    }
}

/// Left ideal of the Weyl algebra.
#[derive(Clone, Debug)]
pub struct LeftIdeal {
    module: FreeSubmodule,
}

impl LeftIdeal {
    pub fn new(m: usize, generators: Vec<WeylElement>, order: TermOrder) -> Result<Self> {
        let gens = generators.into_iter().map(|g| vec![g]).collect();
        Ok(LeftIdeal {
            module: FreeSubmodule::new(m, 1, gens, order)?,
        })
    }

    pub fn grevlex(m: usize, generators: Vec<WeylElement>) -> Result<Self> {
        Self::new(m, generators, TermOrder::grevlex())
    }

    pub fn nvars(&self) -> usize {
        self.module.m
    }

    pub fn order(&self) -> &TermOrder {
        &self.module.order
    }

    pub fn generators(&self) -> Vec<WeylElement> {
        self.module.generators.iter().map(|g| g[0].clone()).collect()
    }

    pub fn groebner(&self) -> Vec<WeylElement> {
        self.module.groebner().iter().map(|g| g[0].clone()).collect()
    }

    pub fn reduce(&self, p: &WeylElement) -> Result<WeylElement> {
        Ok(self.module.reduce(std::slice::from_ref(p))?.remove(0))
    }

    pub fn reduce_with_order(&self, p: &WeylElement, order: &TermOrder) -> Result<WeylElement> {
        Ok(self.module.reduce_with_order(std::slice::from_ref(p), order)?.remove(0))
    }

    pub fn contains(&self, p: &WeylElement) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    pub fn is_whole_ring(&self) -> bool {
        self.contains(&WeylElement::one(self.nvars())).unwrap_or(false)
    }

    /// Same ideal: compares reduced bases under a common order.
    pub fn same_as(&self, other: &LeftIdeal) -> bool {
        if self.order() == other.order() {
            return self.groebner() == other.groebner();
        }
        self.groebner().iter().all(|g| other.contains(g).unwrap_or(false))
            && other.groebner().iter().all(|g| self.contains(g).unwrap_or(false))
    }

    /// Generators in canonical integer form.
    pub fn canonical_generators(&self) -> Vec<WeylElement> {
        self.groebner().iter().map(|g| g.canonical()).collect()
    }

    /// Drops canonical generators, largest first, while the rest still
    /// generate the ideal. Deterministic but not necessarily of minimum size.
    pub fn pruned_generators(&self) -> Result<Vec<WeylElement>> {
        let mut gens = self.canonical_generators();
        let mut i = gens.len();
        while i > 0 {
            i -= 1;
            if gens.len() == 1 {
                break;
            }
            let mut rest = gens.clone();
            let g = rest.remove(i);
            if LeftIdeal::new(self.nvars(), rest.clone(), self.order().clone())?.contains(&g)? {
                gens = rest;
            }
        }
        Ok(gens)
    }
}

/// Intersection of two left ideals, computed in the free module of rank 2:
/// the submodule generated by `(f, f)` for `f` in `I` and `(0, g)` for `g` in
/// `J` meets `0 + D` exactly in `(I ∩ J)` placed in the first component.
pub fn ideal_intersection(i: &LeftIdeal, j: &LeftIdeal) -> Result<LeftIdeal> {
    let m = i.nvars();
    if j.nvars() != m {
        return Err(WeylError::DimensionMismatch { expected: m, found: j.nvars() });
    }
    let zero = WeylElement::zero(m);
    let mut gens: Vec<ModuleElement> = i.groebner().into_iter().map(|f| vec![f.clone(), f]).collect();
    gens.extend(j.groebner().into_iter().map(|g| vec![zero.clone(), g]));
    let order = TermOrder {
        monomial: i.order().monomial.clone(),
        position: PositionOrder::PositionOverTerm(vec![1, 0]),
    };
    let module = FreeSubmodule::new(m, 2, gens, order)?;
    let inter: Vec<WeylElement> = module.gb_supported_on(&[0]).into_iter().map(|v| v[0].clone()).collect();
    LeftIdeal::new(m, inter, i.order().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::parse_weyl;

    fn w(s: &str, m: usize) -> WeylElement {
        parse_weyl(s, m).unwrap()
    }

    #[test]
    fn small_bases() {
        // d*x - x*d = 1, so x*d and x generate everything
        let i = LeftIdeal::grevlex(1, vec![w("x*dx", 1), w("x", 1)]).unwrap();
        assert_eq!(i.groebner(), vec![WeylElement::one(1)]);
        let i = LeftIdeal::grevlex(1, vec![w("dx", 1)]).unwrap();
        assert_eq!(i.groebner(), vec![w("dx", 1)]);
        let i = LeftIdeal::grevlex(1, vec![w("x*dx", 1)]).unwrap();
        assert!(i.contains(&w("x^2*dx", 1)).unwrap());
        assert!(!i.contains(&w("dx", 1)).unwrap());
        assert_eq!(i.reduce(&w("x*dx", 1)).unwrap(), WeylElement::zero(1));
        let x = LeftIdeal::grevlex(1, vec![w("x", 1)]).unwrap();
        assert_eq!(x.reduce(&WeylElement::one(1)).unwrap(), WeylElement::one(1));
        // x and d generate the unit ideal
        let u = LeftIdeal::grevlex(1, vec![w("x", 1), w("dx", 1)]).unwrap();
        assert!(u.is_whole_ring());
    }

    #[test]
    fn order_mismatch() {
        let i = LeftIdeal::grevlex(1, vec![w("x", 1)]).unwrap();
        let r = i.reduce_with_order(&w("x", 1), &TermOrder::elimination(vec![0]));
        assert_eq!(r, Err(WeylError::OrderMismatch));
    }
}
