//! The characteristic module of a cell complex: its canonical presentation,
//! skeleton filtration, annihilators by elimination and the facet-extraction
//! operators behind cyclicity.

use crate::geometry::{Cell, CellComplex, GeometryError};
use crate::rational::{dot_z, qz, Q};
use crate::weyl::{FreeSubmodule, LeftIdeal, ModuleElement, TermOrder, WeylElement, WeylError};
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharmodError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error("hull condition violated: affine hull of {0} lies in that of {1}, but {0} is not a face of {1}")]
    HullConditionViolated(String, String),
    #[error("facet extraction for {0} did not finish within the degree bound")]
    ConstructionFailed(String),
    #[error("{0} is not a facet of {1}")]
    NotAFacet(String, String),
    #[error("{0} is not a cell of both presentations")]
    NotASubcomplex(String),
}

pub type Result<T> = std::result::Result<T, CharmodError>;

/// `sum_j v_j d_j`.
pub fn directional_derivative(m: usize, v: &[num_bigint::BigInt]) -> WeylElement {
    let mut r = WeylElement::zero(m);
    for (j, vj) in v.iter().enumerate() {
        r = r.add(&WeylElement::d(m, j).scale(&qz(vj)));
    }
    r
}

/// `<a, x> - b`.
pub fn affine_form(m: usize, a: &[num_bigint::BigInt], b: &Q) -> WeylElement {
    let mut r = WeylElement::constant(m, -b.clone());
    for (j, aj) in a.iter().enumerate() {
        r = r.add(&WeylElement::x(m, j).scale(&qz(aj)));
    }
    r
}

/// The `m` standard relations of every cell: `d_v g_s + sum <v, N_i> g_{s_i}` for
/// `v` in a lattice basis of the direction space, and `(<a, x> - b) g_s` for
/// each defining equality.
pub fn standard_relations(k: &CellComplex) -> Vec<ModuleElement> {
    let m = k.ambient_dim();
    let c = k.len();
    let mut out = Vec::with_capacity(m * c);
    for (i, cell) in k.cells().iter().enumerate() {
        for v in cell.direction_lattice() {
            let mut rel = vec![WeylElement::zero(m); c];
            rel[i] = directional_derivative(m, &v);
            for inc in &k.facet_incidence()[&cell.id] {
                let j = k.index_of(&inc.facet).expect("facet in complex");
                rel[j] = WeylElement::constant(m, qz(&dot_z(&v, &inc.normal.normal)));
            }
            out.push(rel);
        }
        for h in cell.eqs() {
            let mut rel = vec![WeylElement::zero(m); c];
            rel[i] = affine_form(m, &h.normal, &h.offset);
            out.push(rel);
        }
    }
    out
}

/// Generators `g_s` (cells in complex order) with the standard relations.
#[derive(Clone, Debug)]
pub struct Presentation {
    nvars: usize,
    generators: Vec<String>,
    dims: Vec<usize>,
    module: FreeSubmodule,
}

/// Generator sets `{s : dim s <= i}` for `i = 0..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonFiltration {
    pub levels: Vec<Vec<String>>,
}

pub fn presentation(k: &CellComplex) -> Presentation {
    let m = k.ambient_dim();
    Presentation::from_parts(
        m,
        k.cells().iter().map(|c| c.id.clone()).collect(),
        k.cells().iter().map(Cell::dim).collect(),
        standard_relations(k),
    )
}

impl Presentation {
    fn from_parts(m: usize, generators: Vec<String>, dims: Vec<usize>, relations: Vec<ModuleElement>) -> Self {
        let module =
            FreeSubmodule::new(m, generators.len(), relations, TermOrder::grevlex()).expect("relations have full rank");
        Presentation {
            nvars: m,
            generators,
            dims,
            module,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[ModuleElement] {
        self.module.generators()
    }

    pub fn relation_module(&self) -> &FreeSubmodule {
        &self.module
    }

    pub fn position(&self, id: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == id)
            .ok_or_else(|| GeometryError::NotInComplex(id.to_string()).into())
    }

    /// The vector `P g_id`.
    pub fn unit_times(&self, p: &WeylElement, id: &str) -> Result<ModuleElement> {
        let i = self.position(id)?;
        let mut v = vec![WeylElement::zero(self.nvars); self.generators.len()];
        v[i] = p.clone();
        Ok(v)
    }

    /// Normal form modulo the relations.
    pub fn reduce(&self, v: &[WeylElement]) -> Result<ModuleElement> {
        Ok(self.module.reduce(v)?)
    }

    pub fn is_zero_in_module(&self, v: &[WeylElement]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(WeylElement::is_zero))
    }

    pub fn skeleton_filtration(&self) -> SkeletonFiltration {
        let levels = (0..=self.nvars)
            .map(|i| {
                self.generators
                    .iter()
                    .zip(&self.dims)
                    .filter(|(_, &d)| d <= i)
                    .map(|(g, _)| g.clone())
                    .collect()
            })
            .collect();
        SkeletonFiltration { levels }
    }

    /// Relations keyed by generator id, in a canonical order.
    pub fn relation_set(&self) -> BTreeSet<BTreeMap<String, String>> {
        self.relations()
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&self.generators)
                    .filter(|(w, _)| !w.is_zero())
                    .map(|(w, g)| (g.clone(), w.to_string()))
                    .collect()
            })
            .collect()
    }

    /// Equal generator sets and relation sets.
    pub fn same_up_to_order(&self, other: &Presentation) -> bool {
        let a: BTreeSet<&String> = self.generators.iter().collect();
        let b: BTreeSet<&String> = other.generators.iter().collect();
        a == b && self.relation_set() == other.relation_set()
    }

    pub fn to_json(&self) -> Value {
        let rels: Vec<Value> = self
            .relations()
            .iter()
            .map(|r| {
                let mut obj = serde_json::Map::new();
                for (w, g) in r.iter().zip(&self.generators) {
                    if !w.is_zero() {
                        obj.insert(g.clone(), Value::String(w.to_string()));
                    }
                }
                Value::Object(obj)
            })
            .collect();
        json!({
            "ambient_dim": self.nvars,
            "generators": self.generators,
            "relations": rels,
        })
    }
}

/// Glues two presentations along the generators named in `shared`.
pub fn glue(p1: &Presentation, p2: &Presentation, shared: &[&str]) -> Result<Presentation> {
    if p1.nvars != p2.nvars {
        return Err(WeylError::DimensionMismatch {
            expected: p1.nvars,
            found: p2.nvars,
        }
        .into());
    }
    for f in shared {
        if p1.position(f).is_err() || p2.position(f).is_err() {
            return Err(CharmodError::NotASubcomplex(f.to_string()));
        }
    }
    let mut gens: Vec<(usize, String)> = p1.generators.iter().cloned().zip(p1.dims.iter().copied()).map(|(g, d)| (d, g)).collect();
    for (g, &d) in p2.generators.iter().zip(&p2.dims) {
        if !p1.generators.contains(g) {
            gens.push((d, g.clone()));
        }
    }
    gens.sort();
    let ids: Vec<String> = gens.iter().map(|(_, g)| g.clone()).collect();
    let m = p1.nvars;
    let mut seen = BTreeSet::new();
    let mut rels = Vec::new();
    for p in [p1, p2] {
        for r in p.relations() {
            let mut v = vec![WeylElement::zero(m); ids.len()];
            for (w, g) in r.iter().zip(&p.generators) {
                let j = ids.iter().position(|x| x == g).expect("generator present");
                v[j] = w.clone();
            }
            let key: Vec<String> = v.iter().map(|w| w.to_string()).collect();
            if seen.insert(key) {
                rels.push(v);
            }
        }
    }
    Ok(Presentation::from_parts(m, ids, gens.iter().map(|(d, _)| *d).collect(), rels))
}

/// Generators of the annihilator of `g_s`: the relation module of the closure
/// of `s` under a position-over-term order with `g_s` lowest, intersected
/// with the `g_s` component.
pub fn annihilator_by_elimination(k: &CellComplex, sigma: &str) -> Result<LeftIdeal> {
    let sub = k.closure_of(&[sigma])?;
    let p = presentation(&sub);
    let pos = p.position(sigma)?;
    // higher-dimensional faces are eliminated first
    let mut priority: Vec<usize> = (0..p.generators.len()).filter(|&i| i != pos).collect();
    priority.sort_by_key(|&i| std::cmp::Reverse(p.dims[i]));
    priority.push(pos);
    let module = FreeSubmodule::new(p.nvars, p.generators.len(), p.relations().to_vec(), TermOrder::position_over_term(priority))?;
    let gens: Vec<WeylElement> = module.gb_supported_on(&[pos]).into_iter().map(|v| v[pos].clone()).collect();
    Ok(LeftIdeal::grevlex(p.nvars, gens)?)
}

/// Whether `P` kills `sum_s g_s` over the named cells (one cell for `delta_s`).
pub fn is_annihilating(p: &WeylElement, k: &CellComplex, cells: &[&str]) -> Result<bool> {
    let sub = k.closure_of(cells)?;
    let pres = presentation(&sub);
    let mut v = vec![WeylElement::zero(pres.nvars); pres.generators.len()];
    for c in cells {
        v[pres.position(c)?] = p.clone();
    }
    pres.is_zero_in_module(&v)
}

/// Checks that whenever the affine hull of a face lies in that of another,
/// the first is a face of the second.
pub fn check_hull_condition(k: &CellComplex, sigma: &str) -> Result<()> {
    let si = k.index_of(sigma)?;
    let faces = k.faces_of(si);
    for &a in faces {
        for &b in faces {
            if a == b {
                continue;
            }
            let (ca, cb) = (&k.cells()[a], &k.cells()[b]);
            let inside = ca.vertices().iter().all(|v| cb.eqs().iter().all(|h| h.slack(v).is_zero()))
                && ca.vrep().rays.iter().all(|r| cb.eqs().iter().all(|h| h.eval(r).is_zero()))
                && ca.vrep().lineality.iter().all(|r| cb.eqs().iter().all(|h| h.eval(r).is_zero()));
            if inside && !k.faces_of(b).contains(&a) {
                return Err(CharmodError::HullConditionViolated(ca.id.clone(), cb.id.clone()));
            }
        }
    }
    Ok(())
}

fn proportional(a: &[WeylElement], b: &[WeylElement]) -> Option<Q> {
    let (i, wb) = b.iter().enumerate().find(|(_, w)| !w.is_zero())?;
    let (e, cb) = wb.terms().iter().next()?;
    let ca = a[i].terms().get(e)?;
    let c = ca / cb;
    let ok = a.iter().zip(b).all(|(x, y)| *x == y.scale(&c));
    ok.then_some(c)
}

/// An operator `P` and a nonzero `c` with `P g_s = c g_t` for a facet `t` of `s`,
/// following the construction in the proof of cyclicity. Verified by reduction.
pub fn facet_extraction_operator(k: &CellComplex, sigma: &str, tau: &str) -> Result<(WeylElement, Q)> {
    check_hull_condition(k, sigma)?;
    let sub = k.closure_of(&[sigma])?;
    let s = sub.cell(sigma)?;
    let inc = sub
        .facets(sigma)?
        .iter()
        .find(|i| i.facet == tau)
        .ok_or_else(|| CharmodError::NotAFacet(tau.to_string(), sigma.to_string()))?
        .clone();
    let m = sub.ambient_dim();
    let normal = &inc.normal;
    let ell = affine_form(m, &normal.normal, &normal.offset);
    // edge directions of s not parallel to the hyperplane of t
    let si = sub.index_of(sigma)?;
    let mut p = WeylElement::one(m);
    let mut count = 0u32;
    for &f in sub.faces_of(si) {
        let e = &sub.cells()[f];
        if e.dim() != 1 {
            continue;
        }
        let dir = &e.direction_lattice()[0];
        if dot_z(dir, &normal.normal).is_zero() {
            continue;
        }
        p = directional_derivative(m, dir).mul(&p);
        count += 1;
    }
    let mut levels: BTreeSet<Q> = BTreeSet::new();
    for v in s.vertices() {
        let c = -normal.slack(v);
        if !c.is_zero() {
            levels.insert(c);
        }
    }
    for c in &levels {
        let shifted = ell.sub(&WeylElement::constant(m, c.clone()));
        p = shifted.pow(count).mul(&p);
    }
    let pres = presentation(&sub);
    let target = pres.reduce(&pres.unit_times(&WeylElement::one(m), tau)?)?;
    let cap = 4 * count.max(1);
    for _ in 0..=cap {
        let image = pres.reduce(&pres.unit_times(&p, sigma)?)?;
        if image.iter().all(WeylElement::is_zero) {
            break;
        }
        if let Some(c) = proportional(&image, &target) {
            return Ok((p, c));
        }
        p = ell.mul(&p);
    }
    Err(CharmodError::ConstructionFailed(tau.to_string()))
}

/// Composes facet extractions along a maximal chain from `s` down to its face `t`.
pub fn face_extraction_operator(k: &CellComplex, sigma: &str, tau: &str) -> Result<(WeylElement, Q)> {
    let ti = k.index_of(tau)?;
    let mut cur = sigma.to_string();
    let mut p = WeylElement::one(k.ambient_dim());
    let mut c = Q::one();
    if !k.faces_of(k.index_of(sigma)?).contains(&ti) {
        return Err(CharmodError::NotAFacet(tau.to_string(), sigma.to_string()));
    }
    while cur != tau {
        let next = k
            .facets(&cur)?
            .iter()
            .map(|i| i.facet.clone())
            .find(|f| k.faces_of(k.index_of(f).unwrap()).contains(&ti))
            .ok_or_else(|| CharmodError::NotAFacet(tau.to_string(), cur.clone()))?;
        let (q, d) = facet_extraction_operator(k, &cur, &next)?;
        p = q.mul(&p);
        c *= d;
        cur = next;
    }
    Ok((p, c))
}
