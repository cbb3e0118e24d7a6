//! Annihilator ideals of characteristic distributions of polytopes: the closed
//! form for simple cones, the Laplace-transform route for general cones, and
//! intersection over vertex cones.

use crate::charmod::{self, affine_form, directional_derivative, CharmodError};
use crate::geometry::{Cell, CellComplex, Cone, GeometryError, HalfSpace};
use crate::linalg::{inverse, nullspace, rank, transpose};
use crate::rational::{dot_z, qz, to_q_vec, Q};
use crate::weyl::{gcd, ideal_intersection, LeftIdeal, LinearSystem, Poly, RationalFunction, WeylElement, WeylError};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnnihilatorError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Charmod(#[from] CharmodError),
    #[error("cone is not simple: {rays} rays in dimension {dim}")]
    NotSimple { rays: usize, dim: usize },
    #[error("cone is not pointed")]
    NotPointed,
    #[error("cone apex is not the origin")]
    ApexNotAtOrigin,
    #[error("cell {0} has no vertices")]
    NoVertices(String),
    #[error("generator {0} does not annihilate")]
    NotAnnihilating(String),
}

pub type Result<T> = std::result::Result<T, AnnihilatorError>;

/// Degree bounds for the ansatz: total order in `d` and total degree in `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnsatzBounds {
    pub max_order: u32,
    pub max_coeff_degree: u32,
}

impl Default for AnsatzBounds {
    fn default() -> Self {
        AnsatzBounds {
            max_order: 3,
            max_coeff_degree: 3,
        }
    }
}

/// `Exact` when the ideal is known to be the full annihilator; otherwise every
/// generator is verified but the ideal may be smaller.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    Exact,
    VerifiedSubIdeal,
}

#[derive(Clone, Debug)]
pub struct Annihilator {
    pub ideal: LeftIdeal,
    pub completeness: Completeness,
}

/// `<x_1 d_1, ..., x_n d_n>`.
pub fn orthant_annihilator(n: usize) -> LeftIdeal {
    let gens = (0..n).map(|i| WeylElement::x(n, i).mul(&WeylElement::d(n, i))).collect();
    LeftIdeal::grevlex(n, gens).expect("consistent dimensions")
}

/// Clears denominators and content so generators print with integer coefficients.
fn primitive(p: &WeylElement) -> WeylElement {
    let coeffs: Vec<&Q> = p.terms().values().collect();
    if coeffs.is_empty() {
        return p.clone();
    }
    let l = crate::rational::lcm_denoms(coeffs.iter().copied());
    let nums: Vec<crate::rational::Z> = coeffs.iter().map(|c| (*c * qz(&l)).to_integer()).collect();
    let g = crate::rational::gcd_all(&nums);
    p.scale(&(qz(&l) / qz(&g)))
}

/// The orthant ideal transported to a simple cone: one `y_i d_{r_i}` per ray,
/// where `y_i` is the dual affine coordinate, plus the affine equalities of the hull.
pub fn simple_cone_annihilator(c: &Cone) -> Result<LeftIdeal> {
    let m = c.cell.ambient_dim();
    let d = c.cell.dim();
    let rays = c.rays();
    if !c.cell.vrep().lineality.is_empty() {
        return Err(AnnihilatorError::NotPointed);
    }
    if rays.len() != d {
        return Err(AnnihilatorError::NotSimple { rays: rays.len(), dim: d });
    }
    let eqs: Vec<&HalfSpace> = c.cell.eqs().iter().collect();
    let mut cols: Vec<Vec<Q>> = rays.iter().map(|r| to_q_vec(r)).collect();
    cols.extend(eqs.iter().map(|h| to_q_vec(&h.normal)));
    let basis = transpose(&cols, m);
    let dual = inverse(&basis).ok_or(AnnihilatorError::NotSimple { rays: rays.len(), dim: d })?;
    let mut gens = Vec::new();
    for (i, r) in rays.iter().enumerate() {
        let mut y = WeylElement::zero(m);
        let mut shift = Q::zero();
        for (j, a) in dual[i].iter().enumerate() {
            y = y.add(&WeylElement::x(m, j).scale(a));
            shift += a * &c.apex[j];
        }
        let y = y.sub(&WeylElement::constant(m, shift));
        gens.push(primitive(&y.mul(&directional_derivative(m, r))));
    }
    for h in eqs {
        gens.push(affine_form(m, &h.normal, &h.offset));
    }
    Ok(LeftIdeal::grevlex(m, gens)?)
}

/// Laplace transform of `sum delta_s` over the named cells of a cone complex
/// with apex at the origin, from the transformed derivative relations.
pub fn cone_laplace_transform(k: &CellComplex, cells: &[&str]) -> Result<RationalFunction> {
    let m = k.ambient_dim();
    let sub = k.closure_of(cells)?;
    let origin = vec![Q::zero(); m];
    let apex = sub
        .cells()
        .iter()
        .position(|c| c.dim() == 0 && c.point() == origin.as_slice())
        .ok_or(AnnihilatorError::ApexNotAtOrigin)?;
    if sub.cells().iter().any(|c| !c.vrep().lineality.is_empty()) {
        return Err(AnnihilatorError::NotPointed);
    }
    let n = sub.len();
    let zero = RationalFunction::zero(m);
    let one = RationalFunction::constant(m, Q::one());
    let mut sys = LinearSystem::new(n + 1);
    for (i, c) in sub.cells().iter().enumerate() {
        for v in c.direction_lattice() {
            let mut row = vec![zero.clone(); n + 1];
            let mut lin = Poly::zero(m);
            for (j, vj) in v.iter().enumerate() {
                lin = lin.add(&Poly::var(m, j).scale(&qz(vj)));
            }
            row[i] = RationalFunction::from_poly(lin);
            for inc in &sub.facet_incidence()[&c.id] {
                let f = sub.index_of(&inc.facet)?;
                row[f] = RationalFunction::constant(m, qz(&dot_z(&v, &inc.normal.normal)));
            }
            sys.push(row, zero.clone());
        }
    }
    let mut row = vec![zero.clone(); n + 1];
    row[apex] = one.clone();
    sys.push(row, one.clone());
    let mut row = vec![zero.clone(); n + 1];
    row[n] = one.clone();
    for c in cells {
        row[sub.index_of(c)?] = one.neg();
    }
    sys.push(row, zero);
    Ok(crate::weyl::eliminate_linear(&sys, n)?)
}

fn exponents(m: usize, max: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, max, &mut vec![0; m], &mut out);
    out
}

/// All operators `sum c_ab x^a d^b` within the bounds that kill `f`, found as
/// the null space of the linear system obtained by clearing denominators.
pub fn rational_annihilator(f: &RationalFunction, bounds: AnsatzBounds) -> LeftIdeal {
    let m = f.nvars();
    let ds = exponents(m, bounds.max_order);
    let xs = exponents(m, bounds.max_coeff_degree);
    let mut derivs: BTreeMap<Vec<u32>, RationalFunction> = BTreeMap::new();
    derivs.insert(vec![0; m], f.clone());
    for b in &ds {
        if derivs.contains_key(b) {
            continue;
        }
        let i = b.iter().position(|&e| e > 0).expect("nonzero exponent");
        let mut prev = b.clone();
        prev[i] -= 1;
        let g = derivs[&prev].derivative(i);
        derivs.insert(b.clone(), g);
    }
    let mut common = Poly::one(m);
    for g in derivs.values() {
        let d = g.denominator();
        let h = gcd(&common, d);
        common = common.mul(&d.div_exact(&h).expect("gcd divides"));
    }
    let numerators: Vec<Poly> = ds
        .iter()
        .map(|b| {
            let g = &derivs[b];
            g.numerator().mul(&common.div_exact(g.denominator()).expect("common multiple"))
        })
        .collect();
    let mut row_of: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Q)> = Vec::new();
    let mut unknowns: Vec<Vec<u32>> = Vec::new();
    for (bi, b) in ds.iter().enumerate() {
        for a in &xs {
            let col = unknowns.len();
            let mut e = a.clone();
            e.extend(b);
            unknowns.push(e);
            for (mono, c) in numerators[bi].mul_monomial(a, &Q::one()).terms() {
                let n = row_of.len();
                let r = *row_of.entry(mono.clone()).or_insert(n);
                entries.push((r, col, c.clone()));
            }
        }
    }
    let mut rows = vec![vec![Q::zero(); unknowns.len()]; row_of.len()];
    for (r, c, v) in entries {
        rows[r][c] = v;
    }
    let gens: Vec<WeylElement> = nullspace(&rows, unknowns.len())
        .into_iter()
        .map(|v| {
            let terms = unknowns.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e.clone(), c));
            primitive(&WeylElement::from_terms(m, terms))
        })
        .collect();
    for g in &gens {
        debug_assert!(g.apply_to_rational(f).map(|r| r.is_zero()).unwrap_or(false));
    }
    LeftIdeal::grevlex(m, gens).expect("consistent dimensions")
}

/// Checks every generator against the presentation of the closure of `cells`.
fn verify(ideal: &LeftIdeal, k: &CellComplex, cells: &[&str]) -> Result<()> {
    let sub = k.closure_of(cells)?;
    let pres = charmod::presentation(&sub);
    for g in ideal.canonical_generators() {
        let mut v = vec![WeylElement::zero(k.ambient_dim()); sub.len()];
        for c in cells {
            v[pres.position(c)?] = g.clone();
        }
        if !pres.is_zero_in_module(&v)? {
            return Err(AnnihilatorError::NotAnnihilating(g.to_string()));
        }
    }
    Ok(())
}

/// Fourier transform of the bounded-degree annihilator of the Laplace
/// transform, verified against the presentation.
pub fn cone_annihilator(k: &CellComplex, cells: &[&str], bounds: AnsatzBounds) -> Result<Annihilator> {
    let m = k.ambient_dim();
    let f = cone_laplace_transform(k, cells)?;
    let gens = rational_annihilator(&f, bounds).groebner().iter().map(|g| primitive(&g.fourier())).collect();
    let ideal = LeftIdeal::grevlex(m, gens)?;
    verify(&ideal, k, cells)?;
    Ok(Annihilator {
        ideal,
        completeness: Completeness::VerifiedSubIdeal,
    })
}

/// Marks `ann` exact when it agrees with the elimination-based annihilator of `sigma`.
pub fn certify(ann: Annihilator, k: &CellComplex, sigma: &str) -> Result<Annihilator> {
    if ann.completeness == Completeness::Exact {
        return Ok(ann);
    }
    let full = charmod::annihilator_by_elimination(k, sigma)?;
    let completeness = if full.same_as(&ann.ideal) {
        Completeness::Exact
    } else {
        Completeness::VerifiedSubIdeal
    };
    Ok(Annihilator { completeness, ..ann })
}

/// `c + t`.
pub fn translate_cell(c: &Cell, t: &[Q]) -> Result<Cell> {
    let shift = |h: &HalfSpace| HalfSpace {
        normal: h.normal.clone(),
        offset: &h.offset + crate::rational::dot_zq(&h.normal, t),
    };
    Ok(Cell::new(
        c.id.clone(),
        c.ambient_dim(),
        c.ineqs().iter().map(shift).collect(),
        c.eqs().iter().map(shift).collect(),
    )?)
}

fn is_simple(c: &Cone) -> bool {
    let rays = c.rays();
    let rows: Vec<Vec<Q>> = rays.iter().map(|r| to_q_vec(r)).collect();
    c.cell.vrep().lineality.is_empty() && rays.len() == c.cell.dim() && rank(&rows) == rays.len()
}

/// Annihilator of the cone of `sigma` at one of its vertices.
pub fn vertex_cone_annihilator(k: &CellComplex, sigma: &str, vertex: &str, bounds: AnsatzBounds) -> Result<Annihilator> {
    let cone = k.vertex_cone(sigma, vertex)?;
    if is_simple(&cone) {
        return Ok(Annihilator {
            ideal: simple_cone_annihilator(&cone)?,
            completeness: Completeness::Exact,
        });
    }
    let m = k.ambient_dim();
    let neg: Vec<Q> = cone.apex.iter().map(|x| -x).collect();
    let at_origin = translate_cell(&cone.cell, &neg)?;
    let id = at_origin.id.clone();
    let k0 = CellComplex::build(vec![at_origin], true)?;
    let ann = cone_annihilator(&k0, &[&id], bounds)?;
    let ident: Vec<Vec<Q>> = (0..m).map(|i| (0..m).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    let gens = ann
        .ideal
        .groebner()
        .iter()
        .map(|g| g.linear_substitution(&ident, &neg))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Annihilator {
        ideal: LeftIdeal::grevlex(m, gens)?,
        completeness: ann.completeness,
    })
}

/// Intersection of the annihilators of all vertex cones of `sigma`.
pub fn polytope_annihilator(sigma: &Cell, bounds: AnsatzBounds) -> Result<Annihilator> {
    let k = CellComplex::build(vec![sigma.clone()], true)?;
    let vertices: Vec<String> = k.cells().iter().filter(|c| c.dim() == 0).map(|c| c.id.clone()).collect();
    if vertices.is_empty() {
        return Err(AnnihilatorError::NoVertices(sigma.id.clone()));
    }
    let mut acc: Option<Annihilator> = None;
    for v in &vertices {
        let part = vertex_cone_annihilator(&k, &sigma.id, v, bounds)?;
        acc = Some(match acc {
            None => part,
            Some(a) => Annihilator {
                ideal: ideal_intersection(&a.ideal, &part.ideal)?,
                completeness: if a.completeness == Completeness::Exact && part.completeness == Completeness::Exact {
                    Completeness::Exact
                } else {
                    Completeness::VerifiedSubIdeal
                },
            },
        });
    }
    let ann = acc.expect("at least one vertex");
    verify(&ann.ideal, &k, &[&sigma.id])?;
    Ok(ann)
}
